//! The acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with --nocapture). Comparisons are exact; the
//! timed criteria assert their budgets.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use kmaha::weyl::{
    demazure_product_coxeter, real_roots_up_to, weyl_all, weyl_ball, weyl_from_word,
};
use kmaha::{
    build_datum, check_support_theorem, demazure_q0, downset_product_check, hecke_t_mul,
    hw_mul, hw_string, hw_t, inv_intersect, inv_plus_plus, kma_is_positive, kma_normalize,
    kma_string, length_wt, reflection, tbasis_string, wp_act, wp_mul, EngineLimits, KMAffineRoot,
    RootDatum, WPElt,
};
use kmaha_cli::checks::{run_check, CheckKind, CheckRun};
use kmaha_cli::enumerate::{enumerate_wt, Bounds};
use kmaha_cli::expr::parse_element;

fn a1aff() -> RootDatum {
    build_datum("A1aff").unwrap()
}

fn elt(d: &RootDatum, text: &str) -> WPElt {
    parse_element(text, d).unwrap()
}

fn line(criterion: u32, ok: bool, detail: &str) {
    println!(
        "criterion {:02}: {} — {}",
        criterion,
        if ok { "pass" } else { "fail" },
        detail
    );
    assert!(ok, "criterion {:02} failed: {}", criterion, detail);
}

/// The bounds shared by criteria 5-7: coordinate box 2, Weyl length 3, with
/// the |l| cap set so the pair count stays in the hundreds-to-thousands
/// range the deficit sweep is budgeted for.
fn sweep_bounds() -> Bounds {
    Bounds { max_coord: 2, max_weyl_len: 3, max_abs_length: 2 }
}

fn suite_run(kind: CheckKind, bounds: Bounds) -> CheckRun {
    CheckRun {
        datum: a1aff(),
        datum_label: "A1aff".into(),
        kind,
        x: None,
        y: None,
        bounds,
        budget: Default::default(),
        jobs: 1,
    }
}

#[test]
fn criterion_01_affine_golden_products() {
    let d = a1aff();
    let limits = EngineLimits::default();
    let t0 = Instant::now();
    let cases = [
        (
            "pi^{L0+4d}",
            "s1*s0*pi^{L0+d}",
            "+ (1)*T[pi^{2L0-a1+4d}*s1*s0]",
        ),
        (
            "pi^{L0+a1-d}s0",
            "pi^{L0+2a1-4d}s0s1s0",
            "+ (q)*T[pi^{2L0-2d}*s1*s0] + (-1 + q)*T[pi^{2L0+a1-2d}*s0]",
        ),
        (
            "pi^{L0+2a1}s0s1",
            "pi^{L0-a1}s1s0s1s0s1",
            "+ (q^2)*T[pi^{2L0+2a1+d}*s1*s0*s1] + (-q + q^2)*T[pi^{2L0+3a1-d}*s0*s1*s0*s1*s0*s1] + (-1 + q)*T[pi^{2L0+5a1-8d}*s0*s1*s0*s1*s0*s1*s0*s1]",
        ),
        (
            "pi^{L0+2a1}",
            "pi^{L0+a1}s0s1",
            "+ (q^2)*T[pi^{2L0+3a1}*s0*s1] + (-q + q^2)*T[pi^{2L0+3a1}*s0] + (-q + q^2)*T[pi^{2L0+4a1-3d}*s0*s1*s0] + (1 - 2q + q^2)*T[pi^{2L0+4a1-3d}*s0*s1*s0*s1]",
        ),
    ];
    let mut ok = true;
    for (x, y, expect) in cases {
        let prod = hecke_t_mul(&d, &elt(&d, x), &elt(&d, y), &limits).unwrap();
        ok &= tbasis_string(&d, &prod) == expect;
    }
    let dt = t0.elapsed();
    ok &= dt < Duration::from_secs(10);
    line(
        1,
        ok,
        &format!("four A1aff golden products term-for-term in {:.2?}", dt),
    );
}

#[test]
fn criterion_02_coxeter_golden_and_support_theorem() {
    let d = build_datum("A2").unwrap();
    let t0 = Instant::now();
    let w = |labels: &[i64]| weyl_from_word(&d, labels).unwrap();
    let mut ok = true;

    let prod = hw_mul(&d, &hw_t(&d, &w(&[1, 2])), &hw_t(&d, &w(&[2, 1]))).unwrap();
    ok &= hw_string(&d, &prod) == "+ (q^2)*T[e] + (-q + q^2)*T[s1] + (-1 + q)*T[s1*s2*s1]";
    let prod = hw_mul(&d, &hw_t(&d, &w(&[1, 2])), &hw_t(&d, &w(&[1, 2, 1]))).unwrap();
    ok &= hw_string(&d, &prod)
        == "+ (q^2)*T[s2] + (-q + q^2)*T[s1*s2] + (-q + q^2)*T[s2*s1] + (1 - 2q + q^2)*T[s1*s2*s1]";

    let all = weyl_all(&d).unwrap();
    let mut pairs = 0;
    for x in &all {
        for y in &all {
            let r = check_support_theorem(&d, x, y).unwrap();
            ok &= r.part1_bruhat && r.part2_corner && r.part3_size && r.part4_coeffs;
            pairs += 1;
        }
    }
    let dt = t0.elapsed();
    ok &= dt < Duration::from_secs(5);
    line(
        2,
        ok,
        &format!(
            "two A2 golden products and support theorem on {} pairs in {:.2?}",
            pairs, dt
        ),
    );
}

#[test]
fn criterion_03_stated_lengths() {
    let d = a1aff();
    let cases = [
        ("pi^{L0+4d}", "16"),
        ("s1*s0*pi^{L0+d}", "2"),
        ("pi^{L0+2a1}s0s1", "14"),
        ("pi^{L0-a1}s1s0s1s0s1", "5"),
        ("pi^{L0+2a1}", "16"),
        ("pi^{L0+a1}s0s1", "4"),
    ];
    let mut ok = true;
    for (x, expect) in cases {
        ok &= length_wt(&d, &elt(&d, x)).unwrap().to_string() == expect;
    }
    line(3, ok, "six stated lengths match");
}

#[test]
fn criterion_04_inversion_intersections() {
    let d = a1aff();
    // inv_intersect re-runs itself with +5 slack on every bound and errors
    // on any discrepancy, so each call below is also the slack audit.
    let cases = [
        ("pi^{L0+a1-d}s0", "pi^{L0+2a1-4d}s0s1s0", "{(2a0+a1)[-1]}"),
        ("pi^{L0+2a1}s0s1", "pi^{L0-a1}s1s0s1s0s1", "{a1[-1], a0[0]}"),
        ("pi^{L0+2a1}", "pi^{L0+a1}s0s1", "{(2a0+a1)[0], (3a0+2a1)[0]}"),
    ];
    let mut ok = true;
    for (x, y, expect) in cases {
        let inter = inv_intersect(&d, &elt(&d, x), &elt(&d, y)).unwrap();
        let got = format!(
            "{{{}}}",
            inter.iter().map(|b| kma_string(&d, b)).collect::<Vec<_>>().join(", ")
        );
        ok &= got == expect;
    }
    line(4, ok, "three stated inversion intersections, slack audit included");
}

#[test]
fn criterion_05_deficit_sweep() {
    let t0 = Instant::now();
    let report = run_check(&suite_run(CheckKind::Deficit, sweep_bounds())).unwrap();
    let dt = t0.elapsed();
    let ok = report.summary.fail == 0
        && report.summary.unknown == 0
        && report.summary.pairs > 400
        && dt < Duration::from_secs(120);
    line(
        5,
        ok,
        &format!(
            "length deficit law on {} pairs, {} violations, in {:.2?}",
            report.summary.pairs, report.summary.fail, dt
        ),
    );
}

#[test]
fn criterion_06_characters() {
    let report = run_check(&suite_run(CheckKind::Characters, sweep_bounds())).unwrap();
    let ok = report.summary.fail == 0 && report.summary.unknown == 0 && report.summary.pairs > 50;
    line(
        6,
        ok,
        &format!(
            "triv = q^l and sign = eps^(N l) on {} elements, {} violations",
            report.summary.pairs, report.summary.fail
        ),
    );
}

#[test]
fn criterion_07_round_trip() {
    let report = run_check(&suite_run(CheckKind::Roundtrip, sweep_bounds())).unwrap();
    let ok = report.summary.fail == 0 && report.summary.unknown == 0 && report.summary.pairs > 50;
    line(
        7,
        ok,
        &format!(
            "basis round trip is the identity on {} elements",
            report.summary.pairs
        ),
    );
}

#[test]
fn criterion_08_polynomiality_and_q0_uniqueness() {
    let bounds = Bounds { max_coord: 1, max_weyl_len: 2, max_abs_length: 8 };
    let report = run_check(&suite_run(CheckKind::Demazure, bounds)).unwrap();
    let ok = report.summary.fail == 0 && report.summary.unknown == 0 && report.summary.pairs > 1000;
    line(
        8,
        ok,
        &format!(
            "Z[q] coefficients and a unique signed q=0 survivor on {} products",
            report.summary.pairs
        ),
    );
}

#[test]
fn criterion_09_inv_plus_plus_oracle() {
    let d = a1aff();
    let elements = enumerate_wt(&d, &sweep_bounds()).unwrap();
    let mut roots: BTreeSet<KMAffineRoot> = BTreeSet::new();
    for gamma in real_roots_up_to(&d, 2) {
        for m in -2..=2 {
            let b = kma_normalize(&gamma, m);
            if kma_is_positive(&b) {
                roots.insert(b);
            }
        }
    }
    let mut ok = true;
    let mut sampled = 0;
    for u in &elements {
        for b in &roots {
            if !kma_is_positive(&wp_act(&d, u, b)) {
                continue; // not a raise
            }
            let usb = wp_mul(&d, u, &reflection(&d, b));
            if !usb.in_cone() {
                continue;
            }
            let ipp = inv_plus_plus(&d, u, b).unwrap();
            let diff = length_wt(&d, &usb).unwrap().num - length_wt(&d, u).unwrap().num;
            ok &= ipp.len() as i64 * d.n() as i64 == diff;
            sampled += 1;
        }
    }
    ok &= sampled >= 500;
    line(
        9,
        ok,
        &format!("|Inv++| matches the length difference on {} raising pairs", sampled),
    );
}

#[test]
fn criterion_10_coxeter_demazure() {
    let a2 = build_datum("A2").unwrap();
    let d = a1aff();
    let mut ok = true;

    let all = weyl_all(&a2).unwrap();
    for x in &all {
        for y in &all {
            let (z, _) = demazure_q0(&a2, x, y).unwrap();
            ok &= z == demazure_product_coxeter(&a2, x, y);
            ok &= downset_product_check(&a2, x, y).unwrap();
        }
    }

    let ball = weyl_ball(&d, 8);
    let mut affine_pairs = 0;
    for x in &ball {
        for y in &ball {
            let (z, _) = demazure_q0(&d, x, y).unwrap();
            ok &= z == demazure_product_coxeter(&d, x, y);
            affine_pairs += 1;
        }
    }
    line(
        10,
        ok,
        &format!(
            "q=0 product matches the Demazure product on {} A2 pairs (downsets exhaustive) and {} affine Coxeter pairs",
            all.len() * all.len(),
            affine_pairs
        ),
    );
}

#[test]
fn criterion_11_json_determinism() {
    let run = |jobs: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_kmaha"))
            .args([
                "check",
                "deficit",
                "--max-coord",
                "1",
                "--max-weyl-len",
                "2",
                "--format",
                "json",
                "--jobs",
                jobs,
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "check run failed: {:?}", out);
        out.stdout
    };
    let one = run("1");
    let eight = run("8");
    let ok = one == eight && !one.is_empty();
    line(
        11,
        ok,
        &format!("JSON output byte-identical at --jobs 1 and --jobs 8 ({} bytes)", one.len()),
    );
}
