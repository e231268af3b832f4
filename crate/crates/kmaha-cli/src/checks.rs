//! The property-check harness behind `kmaha check`.
//!
//! Each check kind turns one element or pair into a `Record` whose verdict
//! map holds pass/fail/unknown per clause. Theorem violations become `fail`
//! verdicts so they reach the report (and exit code 1); infrastructure
//! errors propagate instead of masquerading as results.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use kmaha::weyl::{weyl_from_word, weyl_word_string};
use kmaha::{
    bernstein_to_t, build_datum, check_conjecture_51, hecke_t_mul, hw_mul, hw_string, hw_t,
    inv_intersect, kma_string, length_deficit, length_wt, laurent_specialize_q0, sign_rep_t,
    t_to_bernstein, tbasis_string, triv_rep_t, wp_canonical_string, wp_from, Coweight,
    EngineLimits, Error, LaurentPoly, Result, RootDatum, TBasisElt, WPElt, WitnessBudget,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::enumerate::{enumerate_wt, Bounds};
use crate::report::{summarize, ConfigEcho, Record, Report, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Deficit,
    Support,
    Demazure,
    Characters,
    Roundtrip,
    Golden,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::Deficit => "deficit",
            CheckKind::Support => "support",
            CheckKind::Demazure => "demazure",
            CheckKind::Characters => "characters",
            CheckKind::Roundtrip => "roundtrip",
            CheckKind::Golden => "golden",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckKind> {
        match s {
            "deficit" => Ok(CheckKind::Deficit),
            "support" => Ok(CheckKind::Support),
            "demazure" => Ok(CheckKind::Demazure),
            "characters" => Ok(CheckKind::Characters),
            "roundtrip" => Ok(CheckKind::Roundtrip),
            "golden" => Ok(CheckKind::Golden),
            other => Err(Error::Usage(format!(
                "unknown check kind {:?}: expected deficit, support, demazure, characters, roundtrip, or golden",
                other
            ))),
        }
    }
}

/// One fully resolved `check` invocation.
pub struct CheckRun {
    pub datum: RootDatum,
    /// What the user asked for (name or file path), echoed verbatim.
    pub datum_label: String,
    pub kind: CheckKind,
    pub x: Option<WPElt>,
    pub y: Option<WPElt>,
    pub bounds: Bounds,
    pub budget: WitnessBudget,
    pub jobs: usize,
}

pub fn run_check(run: &CheckRun) -> Result<Report> {
    let datum = &run.datum;
    let limits = EngineLimits::default();
    let records = match run.kind {
        CheckKind::Deficit => map_records(run.jobs, &pairs_for(run)?, |(x, y)| {
            record_deficit(datum, x, y)
        })?,
        CheckKind::Support => map_records(run.jobs, &pairs_for(run)?, |(x, y)| {
            record_support(datum, x, y, &limits, &run.budget)
        })?,
        CheckKind::Demazure => map_records(run.jobs, &pairs_for(run)?, |(x, y)| {
            record_demazure(datum, x, y, &limits)
        })?,
        CheckKind::Characters => map_records(run.jobs, &elements_for(run)?, |x| {
            record_characters(datum, x, &limits)
        })?,
        CheckKind::Roundtrip => map_records(run.jobs, &elements_for(run)?, |x| {
            record_roundtrip(datum, x, &limits)
        })?,
        CheckKind::Golden => {
            if run.x.is_some() || run.y.is_some() {
                return Err(Error::Usage(
                    "check golden runs a fixed suite and takes no --x/--y".into(),
                ));
            }
            golden_records()?
        }
    };
    let summary = summarize(&records);
    Ok(Report {
        config: ConfigEcho {
            tool: "kmaha".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            datum: run.datum_label.clone(),
            check: run.kind.to_string(),
            max_coord: run.bounds.max_coord,
            max_weyl_len: run.bounds.max_weyl_len,
            max_abs_length: run.bounds.max_abs_length,
            witness_depth: run.budget.max_depth,
        },
        summary,
        records,
    })
}

fn pairs_for(run: &CheckRun) -> Result<Vec<(WPElt, WPElt)>> {
    match (&run.x, &run.y) {
        (Some(x), Some(y)) => Ok(vec![(x.clone(), y.clone())]),
        (None, None) => {
            let elts = enumerate_wt(&run.datum, &run.bounds)?;
            let mut pairs = Vec::with_capacity(elts.len() * elts.len());
            for x in &elts {
                for y in &elts {
                    pairs.push((x.clone(), y.clone()));
                }
            }
            Ok(pairs)
        }
        _ => Err(Error::Usage(format!(
            "check {} needs --x and --y together, or neither (to enumerate)",
            run.kind
        ))),
    }
}

fn elements_for(run: &CheckRun) -> Result<Vec<WPElt>> {
    if run.y.is_some() {
        return Err(Error::Usage(format!(
            "check {} is per-element and takes --x only",
            run.kind
        )));
    }
    match &run.x {
        Some(x) => Ok(vec![x.clone()]),
        None => enumerate_wt(&run.datum, &run.bounds),
    }
}

/// Run the record builder over the work items, statically sharded when
/// jobs > 1. Input order is canonical and the indexed collect preserves it,
/// so the merged output is identical at any worker count.
fn map_records<T, F>(jobs: usize, items: &[T], f: F) -> Result<Vec<Record>>
where
    T: Sync,
    F: Fn(&T) -> Result<Record> + Sync,
{
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {} workers: {}", jobs, e)))?;
    pool.install(|| items.par_iter().map(|t| f(t)).collect())
}

/// Expansion terms sorted the same way tbasis_string prints them:
/// by length, then canonically.
fn expansion_terms(datum: &RootDatum, a: &TBasisElt) -> Result<Vec<Term>> {
    let mut keyed: Vec<(i64, &WPElt, &LaurentPoly)> = Vec::new();
    for (z, c) in a.iter() {
        keyed.push((length_wt(datum, z)?.num, z, c));
    }
    keyed.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    Ok(keyed
        .into_iter()
        .map(|(_, z, c)| Term { z: wp_canonical_string(datum, z), coeff: c.to_string() })
        .collect())
}

fn verdict_map<const K: usize>(entries: [(&str, &str); K]) -> BTreeMap<String, String> {
    entries
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn record_deficit(datum: &RootDatum, x: &WPElt, y: &WPElt) -> Result<Record> {
    let inter = inv_intersect(datum, x, y)?;
    let verdict = match length_deficit(datum, x, y) {
        Ok(_) => "pass",
        Err(Error::TheoremViolation(_)) => "fail",
        Err(e) => return Err(e),
    };
    Ok(Record {
        x: wp_canonical_string(datum, x),
        y: wp_canonical_string(datum, y),
        n: inter.len(),
        expansion: Vec::new(),
        verdicts: verdict_map([("deficit", verdict)]),
    })
}

fn record_support(
    datum: &RootDatum,
    x: &WPElt,
    y: &WPElt,
    limits: &EngineLimits,
    budget: &WitnessBudget,
) -> Result<Record> {
    let (n, expansion, verdicts) = match check_conjecture_51(datum, x, y, limits, budget) {
        Ok(rep) => {
            let verdicts = rep
                .clauses()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect();
            (rep.n_deficit, expansion_terms(datum, &rep.expansion)?, verdicts)
        }
        Err(Error::TheoremViolation(_)) => {
            (0, Vec::new(), verdict_map([("theorem", "fail")]))
        }
        Err(e) => return Err(e),
    };
    Ok(Record {
        x: wp_canonical_string(datum, x),
        y: wp_canonical_string(datum, y),
        n,
        expansion,
        verdicts,
    })
}

fn record_demazure(
    datum: &RootDatum,
    x: &WPElt,
    y: &WPElt,
    limits: &EngineLimits,
) -> Result<Record> {
    let inter = inv_intersect(datum, x, y)?;
    let prod = match hecke_t_mul(datum, x, y, limits) {
        Ok(p) => p,
        Err(Error::TheoremViolation(_)) => {
            // A coefficient escaped Z[q]; nothing downstream is meaningful.
            return Ok(Record {
                x: wp_canonical_string(datum, x),
                y: wp_canonical_string(datum, y),
                n: inter.len(),
                expansion: Vec::new(),
                verdicts: verdict_map([
                    ("polynomial", "fail"),
                    ("unique", "unknown"),
                    ("sign", "unknown"),
                ]),
            });
        }
        Err(e) => return Err(e),
    };

    let mut survivors: Vec<(&WPElt, BigInt)> = Vec::new();
    for (z, c) in prod.iter() {
        let v = laurent_specialize_q0(c)?;
        if !v.is_zero() {
            survivors.push((z, v));
        }
    }
    let unique = if survivors.len() == 1 { "pass" } else { "fail" };
    let sign = if survivors.len() == 1 {
        let (z, c) = &survivors[0];
        let e = length_wt(datum, x)?.num + length_wt(datum, y)?.num - length_wt(datum, z)?.num;
        let n = datum.n() as i64;
        if e.rem_euclid(n) != 0 {
            "fail"
        } else {
            let want = if (e / n).rem_euclid(2) == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            if *c == want {
                "pass"
            } else {
                "fail"
            }
        }
    } else {
        "unknown"
    };
    Ok(Record {
        x: wp_canonical_string(datum, x),
        y: wp_canonical_string(datum, y),
        n: inter.len(),
        expansion: expansion_terms(datum, &prod)?,
        verdicts: verdict_map([("polynomial", "pass"), ("unique", unique), ("sign", sign)]),
    })
}

fn record_characters(datum: &RootDatum, x: &WPElt, limits: &EngineLimits) -> Result<Record> {
    let l = length_wt(datum, x)?;
    let t = TBasisElt::t(datum, x)?;
    let triv = triv_rep_t(datum, &t, limits)?;
    let triv_v = if triv == LaurentPoly::q_power(l) { "pass" } else { "fail" };
    let sign = sign_rep_t(datum, &t, limits)?;
    let want_phase = l.num.rem_euclid(2 * datum.n() as i64) as u32;
    let sign_v = if sign.as_unit_phase() == Some(want_phase) { "pass" } else { "fail" };
    Ok(Record {
        x: wp_canonical_string(datum, x),
        y: String::new(),
        n: 0,
        expansion: Vec::new(),
        verdicts: verdict_map([("triv", triv_v), ("sign", sign_v)]),
    })
}

fn record_roundtrip(datum: &RootDatum, x: &WPElt, limits: &EngineLimits) -> Result<Record> {
    let b = t_to_bernstein(datum, x, limits)?;
    let back = bernstein_to_t(datum, &b, limits)?;
    let v = if back == TBasisElt::t(datum, x)? { "pass" } else { "fail" };
    Ok(Record {
        x: wp_canonical_string(datum, x),
        y: String::new(),
        n: 0,
        expansion: Vec::new(),
        verdicts: verdict_map([("roundtrip", v)]),
    })
}

// ---- The golden suite ----

/// The worked examples, pinned byte-exactly: four affine products, two A2
/// products, six lengths, three inversion intersections. Always runs on its
/// own datums regardless of --datum.
fn golden_records() -> Result<Vec<Record>> {
    let d = build_datum("A1aff")?;
    let a2 = build_datum("A2")?;
    let limits = EngineLimits::default();
    let elt = |mu: [i64; 3], word: &[i64]| -> Result<WPElt> {
        Ok(wp_from(&d, Coweight::new(mu.to_vec()), weyl_from_word(&d, word)?))
    };

    let x1 = elt([1, 0, 4], &[])?;
    let y1 = elt([1, -1, 0], &[1, 0])?;
    let x2 = elt([1, 1, -1], &[0])?;
    let y2 = elt([1, 2, -4], &[0, 1, 0])?;
    let x3 = elt([1, 2, 0], &[0, 1])?;
    let y3 = elt([1, -1, 0], &[1, 0, 1, 0, 1])?;
    let x4 = elt([1, 2, 0], &[])?;
    let y4 = elt([1, 1, 0], &[0, 1])?;

    let mut records = Vec::new();

    let products = [
        (&x1, &y1, "+ (1)*T[pi^{2L0-a1+4d}*s1*s0]"),
        (
            &x2,
            &y2,
            "+ (q)*T[pi^{2L0-2d}*s1*s0] + (-1 + q)*T[pi^{2L0+a1-2d}*s0]",
        ),
        (
            &x3,
            &y3,
            "+ (q^2)*T[pi^{2L0+2a1+d}*s1*s0*s1] + (-q + q^2)*T[pi^{2L0+3a1-d}*s0*s1*s0*s1*s0*s1] + (-1 + q)*T[pi^{2L0+5a1-8d}*s0*s1*s0*s1*s0*s1*s0*s1]",
        ),
        (
            &x4,
            &y4,
            "+ (q^2)*T[pi^{2L0+3a1}*s0*s1] + (-q + q^2)*T[pi^{2L0+3a1}*s0] + (-q + q^2)*T[pi^{2L0+4a1-3d}*s0*s1*s0] + (1 - 2q + q^2)*T[pi^{2L0+4a1-3d}*s0*s1*s0*s1]",
        ),
    ];
    for (x, y, expect) in products {
        let prod = hecke_t_mul(&d, x, y, &limits)?;
        let got = tbasis_string(&d, &prod);
        let v = if got == expect { "pass" } else { "fail" };
        records.push(Record {
            x: wp_canonical_string(&d, x),
            y: wp_canonical_string(&d, y),
            n: inv_intersect(&d, x, y)?.len(),
            expansion: expansion_terms(&d, &prod)?,
            verdicts: verdict_map([("product", v)]),
        });
    }

    let a2_products = [
        (
            vec![1, 2],
            vec![2, 1],
            "+ (q^2)*T[e] + (-q + q^2)*T[s1] + (-1 + q)*T[s1*s2*s1]",
        ),
        (
            vec![1, 2],
            vec![1, 2, 1],
            "+ (q^2)*T[s2] + (-q + q^2)*T[s1*s2] + (-q + q^2)*T[s2*s1] + (1 - 2q + q^2)*T[s1*s2*s1]",
        ),
    ];
    for (xw, yw, expect) in a2_products {
        let x = weyl_from_word(&a2, &xw)?;
        let y = weyl_from_word(&a2, &yw)?;
        let prod = hw_mul(&a2, &hw_t(&a2, &x), &hw_t(&a2, &y))?;
        let got = hw_string(&a2, &prod);
        let v = if got == expect { "pass" } else { "fail" };
        records.push(Record {
            x: weyl_word_string(&a2, &x),
            y: weyl_word_string(&a2, &y),
            n: 0,
            expansion: prod
                .iter()
                .map(|(w, c)| Term {
                    z: weyl_word_string(&a2, w),
                    coeff: c.to_string(),
                })
                .collect(),
            verdicts: verdict_map([("product", v)]),
        });
    }

    let lengths = [
        (&x1, "16"),
        (&y1, "2"),
        (&x3, "14"),
        (&y3, "5"),
        (&x4, "16"),
        (&y4, "4"),
    ];
    for (x, expect) in lengths {
        let got = length_wt(&d, x)?.to_string();
        let v = if got == expect { "pass" } else { "fail" };
        records.push(Record {
            x: wp_canonical_string(&d, x),
            y: String::new(),
            n: 0,
            expansion: Vec::new(),
            verdicts: verdict_map([("length", v)]),
        });
    }

    let intersections = [
        (&x2, &y2, "{(2a0+a1)[-1]}"),
        (&x3, &y3, "{a1[-1], a0[0]}"),
        (&x4, &y4, "{(2a0+a1)[0], (3a0+2a1)[0]}"),
    ];
    for (x, y, expect) in intersections {
        let inter = inv_intersect(&d, x, y)?;
        let got = format!(
            "{{{}}}",
            inter
                .iter()
                .map(|b| kma_string(&d, b))
                .collect::<Vec<_>>()
                .join(", ")
        );
        let v = if got == expect { "pass" } else { "fail" };
        records.push(Record {
            x: wp_canonical_string(&d, x),
            y: wp_canonical_string(&d, y),
            n: inter.len(),
            expansion: Vec::new(),
            verdicts: verdict_map([("intersection", v)]),
        });
    }

    Ok(records)
}
