//! The Hecke algebra of the Coxeter Weyl group W: T-basis multiplication by
//! word folding, T-basis inverses, the deficit bijection, the support-theorem
//! checker, and the q = 0 Demazure degeneration.
//!
//! Everything here is the classical (single-affine) story; the Kac-Moody
//! affine algebra lives in `kmhecke`. Coefficients use the datum's exponent
//! denominator so values can be compared across layers, but all exponents
//! appearing here are integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::datum::RootDatum;
use crate::error::{Error, Result};
use crate::ring::{laurent_mul, laurent_specialize_q0, LaurentPoly};
use crate::weyl::{
    bruhat_le_coxeter, demazure_product_coxeter, has_right_descent, weyl_all, weyl_apply_root,
    weyl_inverse, weyl_inversions, weyl_mul, weyl_simple, weyl_word_string, RealRoot, WeylElt,
};

/// Element of H_W: a finite Z[q^(1/N), q^(-1/N)]-combination of T_w. The
/// BTreeMap order on WeylElt is (length, word), which is also the display
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HWElt {
    n: u32,
    terms: BTreeMap<WeylElt, LaurentPoly>,
}

impl HWElt {
    pub fn zero(datum: &RootDatum) -> Self {
        HWElt { n: datum.n(), terms: BTreeMap::new() }
    }

    pub fn one(datum: &RootDatum) -> Self {
        hw_t(datum, &WeylElt::identity(datum))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeylElt, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &WeylElt) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(|| LaurentPoly::zero(self.n))
    }

    pub fn add_term(&mut self, w: &WeylElt, c: &LaurentPoly) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(w) {
            Some(existing) => {
                let sum = existing.add(c)?;
                if sum.is_zero() {
                    self.terms.remove(w);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(w.clone(), c.clone());
            }
        }
        Ok(())
    }
}

pub fn hw_t(datum: &RootDatum, w: &WeylElt) -> HWElt {
    let mut terms = BTreeMap::new();
    terms.insert(w.clone(), LaurentPoly::one(datum.n()));
    HWElt { n: datum.n(), terms }
}

pub fn hw_add(a: &HWElt, b: &HWElt) -> Result<HWElt> {
    let mut out = a.clone();
    for (w, c) in b.iter() {
        out.add_term(w, c)?;
    }
    Ok(out)
}

pub fn hw_scale(a: &HWElt, c: &LaurentPoly) -> Result<HWElt> {
    let mut out = HWElt { n: a.n, terms: BTreeMap::new() };
    for (w, cw) in a.iter() {
        out.add_term(w, &laurent_mul(cw, c)?)?;
    }
    Ok(out)
}

/// Multiply on the right by T_i: T_v T_i = T_{v s_i} if v s_i > v, else
/// (q-1) T_v + q T_{v s_i}.
fn hw_mul_simple(datum: &RootDatum, a: &HWElt, i: usize) -> Result<HWElt> {
    let mut out = HWElt { n: a.n, terms: BTreeMap::new() };
    let q = LaurentPoly::q(a.n);
    let qm1 = LaurentPoly::q_minus_one(a.n);
    for (v, c) in a.iter() {
        let vsi = weyl_mul(datum, v, &weyl_simple(datum, i));
        if has_right_descent(datum, v, i) {
            out.add_term(&vsi, &laurent_mul(c, &q)?)?;
            out.add_term(v, &laurent_mul(c, &qm1)?)?;
        } else {
            out.add_term(&vsi, c)?;
        }
    }
    Ok(out)
}

/// Multiply on the right by T_i^{-1} = q^{-1} T_i + (q^{-1} - 1): T_v T_i^{-1}
/// = T_{v s_i} if v s_i < v, else q^{-1} T_{v s_i} + (q^{-1} - 1) T_v.
fn hw_mul_simple_inverse(datum: &RootDatum, a: &HWElt, i: usize) -> Result<HWElt> {
    let n = a.n;
    let qinv = LaurentPoly::monomial(n, -(n as i64), BigInt::one());
    let qinv_m1 = qinv.sub(&LaurentPoly::one(n))?;
    let mut out = HWElt { n, terms: BTreeMap::new() };
    for (v, c) in a.iter() {
        let vsi = weyl_mul(datum, v, &weyl_simple(datum, i));
        if has_right_descent(datum, v, i) {
            out.add_term(&vsi, c)?;
        } else {
            out.add_term(&vsi, &laurent_mul(c, &qinv)?)?;
            out.add_term(v, &laurent_mul(c, &qinv_m1)?)?;
        }
    }
    Ok(out)
}

/// Bilinear T-basis product, folding the right factor's reduced words.
pub fn hw_mul(datum: &RootDatum, a: &HWElt, b: &HWElt) -> Result<HWElt> {
    let mut out = HWElt { n: a.n, terms: BTreeMap::new() };
    for (w, cw) in b.iter() {
        let mut acc = hw_scale(a, cw)?;
        for &i in w.word_positions() {
            acc = hw_mul_simple(datum, &acc, i)?;
        }
        out = hw_add(&out, &acc)?;
    }
    Ok(out)
}

/// T_w^{-1} in the T-basis, by folding inverse generators.
pub fn hw_t_inverse(datum: &RootDatum, w: &WeylElt) -> Result<HWElt> {
    let mut acc = HWElt::one(datum);
    for &i in w.word_positions().iter().rev() {
        acc = hw_mul_simple_inverse(datum, &acc, i)?;
    }
    Ok(acc)
}

/// Classical inversion-set intersection Inv(x) ∩ Inv(y^{-1}).
pub fn coxeter_inv_intersect(datum: &RootDatum, x: &WeylElt, y: &WeylElt) -> Vec<RealRoot> {
    let yi = weyl_inverse(datum, y);
    let inv_x: BTreeSet<RealRoot> = weyl_inversions(datum, x).into_iter().collect();
    weyl_inversions(datum, &yi)
        .into_iter()
        .filter(|g| inv_x.contains(g))
        .collect()
}

/// The explicit bijection behind the deficit formula: on Inv(x)∖Inv(y^{-1})
/// send beta to -x(beta); on Inv(y^{-1})∖Inv(x) send gamma to x(gamma). The
/// images must exhaust Inv((xy)^{-1}) without repeats.
pub fn deficit_bijection(
    datum: &RootDatum,
    x: &WeylElt,
    y: &WeylElt,
) -> Result<Vec<(RealRoot, RealRoot)>> {
    let yi = weyl_inverse(datum, y);
    let inv_x: BTreeSet<RealRoot> = weyl_inversions(datum, x).into_iter().collect();
    let inv_yi: BTreeSet<RealRoot> = weyl_inversions(datum, &yi).into_iter().collect();
    let mut pairs: Vec<(RealRoot, RealRoot)> = Vec::new();
    for beta in inv_x.difference(&inv_yi) {
        pairs.push((beta.clone(), weyl_apply_root(datum, x, beta).neg()));
    }
    for gamma in inv_yi.difference(&inv_x) {
        pairs.push((gamma.clone(), weyl_apply_root(datum, x, gamma)));
    }
    let xy = weyl_mul(datum, x, y);
    let target: BTreeSet<RealRoot> =
        weyl_inversions(datum, &weyl_inverse(datum, &xy)).into_iter().collect();
    let image: BTreeSet<RealRoot> = pairs.iter().map(|(_, img)| img.clone()).collect();
    if image.len() != pairs.len() || image != target {
        return Err(Error::TheoremViolation(format!(
            "deficit bijection failed for x={}, y={}: {} sources, {} distinct images, target size {}",
            weyl_word_string(datum, x),
            weyl_word_string(datum, y),
            pairs.len(),
            image.len(),
            target.len()
        )));
    }
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(pairs)
}

/// Everything the support theorem asserts about one product T_x T_y,
/// with each part reported separately.
#[derive(Debug, Clone)]
pub struct SupportReport {
    pub x: WeylElt,
    pub y: WeylElt,
    pub n_deficit: usize,
    pub expansion: HWElt,
    /// (1) every support element lies above xy in Bruhat order
    pub part1_bruhat: bool,
    /// (2) c^{xy} = q^N, c^{x s_beta y} != 0 per intersection member, support >= N+1
    pub part2_corner: bool,
    /// (3) support <= 2^N
    pub part3_size: bool,
    /// (4) coefficient degree/sign constraints
    pub part4_coeffs: bool,
    /// Descents along y's reduced word starting from x; must equal N.
    pub descent_count: usize,
}

/// Run T_x T_y through every clause of the support theorem. Any failing part
/// is a theorem violation (these are proved statements for Coxeter groups).
pub fn check_support_theorem(datum: &RootDatum, x: &WeylElt, y: &WeylElt) -> Result<SupportReport> {
    let expansion = hw_mul(datum, &hw_t(datum, x), &hw_t(datum, y))?;
    let inter = coxeter_inv_intersect(datum, x, y);
    let n_def = inter.len();
    let xy = weyl_mul(datum, x, y);

    // Deficit sanity: l(x) + l(y) = l(xy) + 2N.
    if x.len() + y.len() != xy.len() + 2 * n_def {
        return Err(Error::TheoremViolation(format!(
            "deficit {} does not match 2|Inv(x) ∩ Inv(y^-1)| = {}",
            x.len() as i64 + y.len() as i64 - xy.len() as i64,
            2 * n_def
        )));
    }

    let part1_bruhat = expansion.iter().all(|(z, _)| bruhat_le_coxeter(datum, &xy, z));

    let nn = datum.n();
    let corner_ok = expansion.coeff(&xy)
        == LaurentPoly::monomial(nn, n_def as i64 * nn as i64, BigInt::one());
    let reflections_ok = inter.iter().all(|beta| {
        let sb = crate::weyl::reflection_from_root(datum, beta);
        let xsby = weyl_mul(datum, &weyl_mul(datum, x, &sb), y);
        !expansion.coeff(&xsby).is_zero()
    });
    let part2_corner = corner_ok && reflections_ok && expansion.num_terms() >= n_def + 1;

    let part3_size = expansion.num_terms() <= 1usize << n_def;

    let mut part4_coeffs = true;
    for (z, c) in expansion.iter() {
        let poly_ok = crate::ring::laurent_is_polynomial(c);
        let top = c.max_exp().unwrap();
        let deg_ok = top.num <= n_def as i64 * top.n as i64;
        let lead_pos = c.max_coeff().map(|lc| lc.is_positive()).unwrap_or(false);
        let low = c.min_exp().unwrap();
        // lowest degree >= l(xy) + N - l(z), which can be negative
        let low_bound_ok =
            low.num >= (xy.len() as i64 + n_def as i64 - z.len() as i64) * low.n as i64;
        let low_sign = c.min_coeff().unwrap();
        let want_negative = (z.len() + xy.len()) % 2 == 1; // (-1)^{l(z) - l(xy)}
        let low_sign_ok = if want_negative { low_sign.is_negative() } else { low_sign.is_positive() };
        if !(poly_ok && deg_ok && lead_pos && low_bound_ok && low_sign_ok) {
            part4_coeffs = false;
        }
    }

    // Lemma: the number of descents while folding y's word from x equals N.
    let mut descent_count = 0usize;
    let mut cur = x.clone();
    for &i in y.word_positions() {
        if has_right_descent(datum, &cur, i) {
            descent_count += 1;
        }
        cur = weyl_mul(datum, &cur, &weyl_simple(datum, i));
    }
    debug_assert_eq!(cur, xy);

    // Deficit closed forms for N = 0, 1.
    let closed_form_ok = match n_def {
        0 => expansion == hw_t(datum, &xy),
        1 => {
            let sb = crate::weyl::reflection_from_root(datum, &inter[0]);
            let xsby = weyl_mul(datum, &weyl_mul(datum, x, &sb), y);
            let mut expect = hw_scale(&hw_t(datum, &xy), &LaurentPoly::q(nn))?;
            expect.add_term(&xsby, &LaurentPoly::q_minus_one(nn))?;
            expansion == expect
        }
        _ => true,
    };

    let report = SupportReport {
        x: x.clone(),
        y: y.clone(),
        n_deficit: n_def,
        expansion,
        part1_bruhat,
        part2_corner,
        part3_size,
        part4_coeffs,
        descent_count,
    };
    if !(part1_bruhat && part2_corner && part3_size && part4_coeffs) {
        return Err(Error::TheoremViolation(format!(
            "support theorem failed for x={}, y={}: parts (1)={} (2)={} (3)={} (4)={}",
            weyl_word_string(datum, x),
            weyl_word_string(datum, y),
            part1_bruhat,
            part2_corner,
            part3_size,
            part4_coeffs
        )));
    }
    if descent_count != n_def {
        return Err(Error::TheoremViolation(format!(
            "descent count {} along y's word differs from N = {}",
            descent_count, n_def
        )));
    }
    if !closed_form_ok {
        return Err(Error::TheoremViolation(format!(
            "deficit-{} closed form failed for x={}, y={}",
            2 * n_def,
            weyl_word_string(datum, x),
            weyl_word_string(datum, y)
        )));
    }
    Ok(report)
}

/// q = 0 specialization of T_x T_y: exactly one term survives, equal to the
/// Demazure product with sign (-1)^{l(x) + l(y) - l(x*y)}.
pub fn demazure_q0(datum: &RootDatum, x: &WeylElt, y: &WeylElt) -> Result<(WeylElt, i64)> {
    let expansion = hw_mul(datum, &hw_t(datum, x), &hw_t(datum, y))?;
    let mut survivors: Vec<(WeylElt, BigInt)> = Vec::new();
    for (z, c) in expansion.iter() {
        let v = laurent_specialize_q0(c)?;
        if v != BigInt::from(0) {
            survivors.push((z.clone(), v));
        }
    }
    if survivors.len() != 1 {
        return Err(Error::TheoremViolation(format!(
            "q=0 specialization of T_x T_y has {} surviving terms",
            survivors.len()
        )));
    }
    let (z, v) = survivors.pop().unwrap();
    let star = demazure_product_coxeter(datum, x, y);
    if z != star {
        return Err(Error::TheoremViolation(format!(
            "q=0 survivor {} differs from Demazure product {}",
            weyl_word_string(datum, &z),
            weyl_word_string(datum, &star)
        )));
    }
    let sign = if (x.len() + y.len() + z.len()) % 2 == 0 { 1i64 } else { -1 };
    if v != BigInt::from(sign) {
        return Err(Error::TheoremViolation(format!(
            "q=0 coefficient {} differs from (-1)^(l(x)+l(y)-l(x*y)) = {}",
            v, sign
        )));
    }
    Ok((z, sign))
}

/// Down-set law for the Demazure product (finite class): the elementwise
/// product of the Bruhat down sets of x and y equals the down set of x*y.
pub fn downset_product_check(datum: &RootDatum, x: &WeylElt, y: &WeylElt) -> Result<bool> {
    let all = weyl_all(datum)?;
    let down = |w: &WeylElt| -> BTreeSet<WeylElt> {
        all.iter().filter(|u| bruhat_le_coxeter(datum, u, w)).cloned().collect()
    };
    let dx = down(x);
    let dy = down(y);
    let mut product: BTreeSet<WeylElt> = BTreeSet::new();
    for u in &dx {
        for v in &dy {
            product.insert(weyl_mul(datum, u, v));
        }
    }
    let star = demazure_product_coxeter(datum, x, y);
    Ok(product == down(&star))
}

/// Display form: `+ (coeff)*T[word]` per term, sorted by (length, word).
pub fn hw_string(datum: &RootDatum, a: &HWElt) -> String {
    if a.num_terms() == 0 {
        return "0".into();
    }
    a.iter()
        .map(|(w, c)| format!("+ ({})*T[{}]", c, weyl_word_string(datum, w)))
        .collect::<Vec<_>>()
        .join(" ")
}
