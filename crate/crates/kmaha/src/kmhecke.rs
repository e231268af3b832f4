//! The Kac-Moody affine Hecke algebra 𝓗 over ℤ[q^{±1/N}].
//!
//! Two coordinate systems for the same module:
//!
//!   * T-basis: finitely many T_x, x = π^μ w ∈ W ⋉ 𝒯.
//!   * Bernstein basis: finitely many Θ^μ T_w, μ ∈ 𝒯, w ∈ W.
//!
//! Products are computed in the Bernstein basis, where the commutation
//! relation between Θ^μ and the generators T_i closes in finitely many
//! steps; the T-basis conversions on either end use the defining formula
//! for T_{π^μ w} (dominant case) and the Bernstein relation run backwards.
//! The T-basis structure constants that come out are the object of study:
//! they must land in ℤ[q], and `hecke_t_mul` enforces that.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::affine::{
    bruhat_ge_witness, inv_intersect, kma_is_positive, length_deficit, length_wt, reflection, wp_act,
    wp_canonical_string, wp_mul, wp_simple, wp_translation, BruhatVerdict, KMAffineRoot, WPElt,
    WitnessBudget,
};
use crate::datum::{Coweight, RootDatum};
use crate::error::{Error, Result};
use crate::ring::{
    char_mul, laurent_is_polynomial, laurent_mul, laurent_specialize_q0, CharacterValue,
    LaurentPoly, QExponent,
};
use crate::weyl::{
    dominant_conjugate, simple_real_root, tits_cone_contains, weyl_inverse, weyl_mul, weyl_simple,
    WeylElt,
};

// ---- Budgets ----

/// Term-count ceiling for element arithmetic. Products in this algebra are
/// always finite, but intermediate Bernstein expansions can fan out; the
/// ceiling turns a runaway input into `OutOfBudget` instead of an OOM.
#[derive(Debug, Clone, Copy)]
pub struct EngineLimits {
    pub max_terms: usize,
}

impl Default for EngineLimits {
    fn default() -> Self {
        EngineLimits { max_terms: 100_000 }
    }
}

// ---- Elements ----

/// Element in the Bernstein basis: a finite sum Σ c_{μ,w} Θ^μ T_w with
/// μ ∈ 𝒯. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernsteinElt {
    n: u32,
    terms: BTreeMap<(Coweight, WeylElt), LaurentPoly>,
}

impl BernsteinElt {
    pub fn zero(n: u32) -> Self {
        BernsteinElt { n, terms: BTreeMap::new() }
    }

    pub fn one(datum: &RootDatum) -> Self {
        let mut e = BernsteinElt::zero(datum.n());
        e.terms.insert(
            (Coweight::zero(datum.rank()), WeylElt::identity(datum)),
            LaurentPoly::one(datum.n()),
        );
        e
    }

    /// Θ^μ itself. Rejects μ outside the Tits cone.
    pub fn theta(datum: &RootDatum, mu: Coweight) -> Result<Self> {
        if !tits_cone_contains(datum, &mu) {
            return Err(Error::NotInCone(format!(
                "theta exponent {} is outside the Tits cone",
                datum.coweight_string(&mu)
            )));
        }
        let mut e = BernsteinElt::zero(datum.n());
        e.terms
            .insert((mu, WeylElt::identity(datum)), LaurentPoly::one(datum.n()));
        Ok(e)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Coweight, WeylElt), &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &Coweight, w: &WeylElt) -> LaurentPoly {
        self.terms
            .get(&(mu.clone(), w.clone()))
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.n))
    }

    fn add_term(
        &mut self,
        mu: Coweight,
        w: WeylElt,
        c: &LaurentPoly,
        limits: &EngineLimits,
    ) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let key = (mu, w);
        let cur = match self.terms.remove(&key) {
            Some(old) => old.add(c)?,
            None => c.clone(),
        };
        if !cur.is_zero() {
            self.terms.insert(key, cur);
        }
        if self.terms.len() > limits.max_terms {
            return Err(Error::OutOfBudget(format!(
                "Bernstein element exceeded {} terms",
                limits.max_terms
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Result<BernsteinElt> {
        let mut out = BernsteinElt::zero(self.n);
        let limits = EngineLimits::default();
        for (key, v) in &self.terms {
            out.add_term(key.0.clone(), key.1.clone(), &laurent_mul(v, c)?, &limits)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &BernsteinElt) -> Result<BernsteinElt> {
        if self.n != other.n {
            return Err(Error::DatumMismatch(format!(
                "adding Bernstein elements over N={} and N={}",
                self.n, other.n
            )));
        }
        let mut out = self.clone();
        let limits = EngineLimits::default();
        for (key, v) in &other.terms {
            out.add_term(key.0.clone(), key.1.clone(), v, &limits)?;
        }
        Ok(out)
    }
}

/// Element in the T-basis: a finite sum Σ c_x T_x over x ∈ W ⋉ 𝒯.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TBasisElt {
    n: u32,
    terms: BTreeMap<WPElt, LaurentPoly>,
}

impl TBasisElt {
    pub fn zero(n: u32) -> Self {
        TBasisElt { n, terms: BTreeMap::new() }
    }

    /// T_x. Rejects x whose translation part is outside the Tits cone.
    pub fn t(datum: &RootDatum, x: &WPElt) -> Result<Self> {
        if !x.in_cone() {
            return Err(Error::NotInCone(format!(
                "T_x requires x in W ⋉ 𝒯, got {}",
                wp_canonical_string(datum, x)
            )));
        }
        let mut e = TBasisElt::zero(datum.n());
        e.terms.insert(x.clone(), LaurentPoly::one(datum.n()));
        Ok(e)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WPElt, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: &WPElt) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_else(|| LaurentPoly::zero(self.n))
    }

    fn add_term(&mut self, x: WPElt, c: &LaurentPoly, limits: &EngineLimits) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let cur = match self.terms.remove(&x) {
            Some(old) => old.add(c)?,
            None => c.clone(),
        };
        if !cur.is_zero() {
            self.terms.insert(x, cur);
        }
        if self.terms.len() > limits.max_terms {
            return Err(Error::OutOfBudget(format!(
                "T-basis element exceeded {} terms",
                limits.max_terms
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Result<TBasisElt> {
        let mut out = TBasisElt::zero(self.n);
        let limits = EngineLimits::default();
        for (x, v) in &self.terms {
            out.add_term(x.clone(), &laurent_mul(v, c)?, &limits)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &TBasisElt) -> Result<TBasisElt> {
        if self.n != other.n {
            return Err(Error::DatumMismatch(format!(
                "adding T-basis elements over N={} and N={}",
                self.n, other.n
            )));
        }
        let mut out = self.clone();
        let limits = EngineLimits::default();
        for (x, v) in &other.terms {
            out.add_term(x.clone(), v, &limits)?;
        }
        Ok(out)
    }
}

// ---- The Bernstein relation ----

/// Commute one generator past one Θ: expands T_i Θ^μ in the Bernstein basis.
///
/// With L = ⟨α_i, μ⟩:
///   L = 0:  T_i Θ^μ = Θ^μ T_i
///   L > 0:  T_i Θ^μ = Θ^{s_i μ} T_i + (q-1) Σ_{k=0}^{L-1} Θ^{μ - k α_i^∨}
///   L < 0:  T_i Θ^μ = Θ^{s_i μ} T_i - (q-1) Σ_{k=0}^{-L-1} Θ^{s_i μ - k α_i^∨}
///
/// Every exponent on the right lies on the segment [μ, s_i μ] ∩ (μ + ℤα_i^∨),
/// hence in the Tits cone by convexity; that is re-checked, not assumed.
pub fn bernstein_commute(datum: &RootDatum, i: usize, mu: &Coweight) -> Result<BernsteinElt> {
    if !tits_cone_contains(datum, mu) {
        return Err(Error::NotInCone(format!(
            "bernstein_commute needs μ ∈ 𝒯, got {}",
            datum.coweight_string(mu)
        )));
    }
    let limits = EngineLimits::default();
    let n = datum.n();
    let level = datum.pair_simple(i, mu);
    let si_mu = datum.reflect_coweight(i, mu);
    let coroot = Coweight::new(datum.simple_coroot(i).to_vec());
    let mut out = BernsteinElt::zero(n);
    out.add_term(si_mu.clone(), weyl_simple(datum, i), &LaurentPoly::one(n), &limits)?;
    let qm1 = LaurentPoly::q_minus_one(n);
    let (base, count, sign_neg) = if level > 0 {
        (mu.clone(), level, false)
    } else if level < 0 {
        (si_mu, -level, true)
    } else {
        return Ok(out);
    };
    let correction = if sign_neg { qm1.neg() } else { qm1 };
    for k in 0..count {
        let ex = base.sub(&coroot.scale(k));
        if !tits_cone_contains(datum, &ex) {
            return Err(Error::InternalBound(format!(
                "Bernstein correction exponent {} left the Tits cone",
                datum.coweight_string(&ex)
            )));
        }
        out.add_term(ex, WeylElt::identity(datum), &correction, &limits)?;
    }
    Ok(out)
}

// ---- Generator folds ----
//
// Everything below reduces to four one-generator moves. On the Weyl factor
// of a Bernstein term the quadratic relation decides each move by a length
// comparison of canonical words; on a T-basis term the same relation is
// decided by where x sends the simple affine root α_i + 0π.

/// a · T_i in the Bernstein basis.
fn bern_right_t(datum: &RootDatum, a: &BernsteinElt, i: usize, limits: &EngineLimits) -> Result<BernsteinElt> {
    let n = a.n;
    let si = weyl_simple(datum, i);
    let q = LaurentPoly::q(n);
    let qm1 = LaurentPoly::q_minus_one(n);
    let mut out = BernsteinElt::zero(n);
    for ((mu, w), c) in a.iter() {
        let wsi = weyl_mul(datum, w, &si);
        if wsi.len() > w.len() {
            out.add_term(mu.clone(), wsi, c, limits)?;
        } else {
            out.add_term(mu.clone(), w.clone(), &laurent_mul(c, &qm1)?, limits)?;
            out.add_term(mu.clone(), wsi, &laurent_mul(c, &q)?, limits)?;
        }
    }
    Ok(out)
}

/// a · T_i^{-1} in the Bernstein basis, using T_i^{-1} = q^{-1} T_i + (q^{-1}-1).
fn bern_right_t_inverse(
    datum: &RootDatum,
    a: &BernsteinElt,
    i: usize,
    limits: &EngineLimits,
) -> Result<BernsteinElt> {
    let n = a.n;
    let si = weyl_simple(datum, i);
    let qinv = LaurentPoly::monomial(n, -(n as i64), BigInt::one());
    let qinv_m1 = qinv.add(&LaurentPoly::one(n).neg())?;
    let mut out = BernsteinElt::zero(n);
    for ((mu, w), c) in a.iter() {
        let wsi = weyl_mul(datum, w, &si);
        if wsi.len() < w.len() {
            out.add_term(mu.clone(), wsi, c, limits)?;
        } else {
            out.add_term(mu.clone(), wsi, &laurent_mul(c, &qinv)?, limits)?;
            out.add_term(mu.clone(), w.clone(), &laurent_mul(c, &qinv_m1)?, limits)?;
        }
    }
    Ok(out)
}

/// T_i · a in the Bernstein basis: commute T_i past each Θ^μ, then absorb
/// the leftover generator into the Weyl factor.
fn bern_left_t(datum: &RootDatum, i: usize, a: &BernsteinElt, limits: &EngineLimits) -> Result<BernsteinElt> {
    let n = a.n;
    let q = LaurentPoly::q(n);
    let qm1 = LaurentPoly::q_minus_one(n);
    let mut out = BernsteinElt::zero(n);
    for ((mu, w), c) in a.iter() {
        let commuted = bernstein_commute(datum, i, mu)?;
        for ((nu, u), d) in commuted.iter() {
            let cd = laurent_mul(c, d)?;
            if u.is_identity() {
                out.add_term(nu.clone(), w.clone(), &cd, limits)?;
            } else {
                // u = s_i; fold T_i into T_w from the left.
                let siw = weyl_mul(datum, u, w);
                if siw.len() > w.len() {
                    out.add_term(nu.clone(), siw, &cd, limits)?;
                } else {
                    out.add_term(nu.clone(), w.clone(), &laurent_mul(&cd, &qm1)?, limits)?;
                    out.add_term(nu.clone(), siw, &laurent_mul(&cd, &q)?, limits)?;
                }
            }
        }
    }
    Ok(out)
}

/// T_i^{-1} · a = q^{-1} (T_i · a) + (q^{-1} - 1) a.
fn bern_left_t_inverse(
    datum: &RootDatum,
    i: usize,
    a: &BernsteinElt,
    limits: &EngineLimits,
) -> Result<BernsteinElt> {
    let n = a.n;
    let qinv = LaurentPoly::monomial(n, -(n as i64), BigInt::one());
    let qinv_m1 = qinv.add(&LaurentPoly::one(n).neg())?;
    let ta = bern_left_t(datum, i, a, limits)?;
    ta.scale(&qinv)?.add(&a.scale(&qinv_m1)?)
}

/// Θ^λ · a: shift every exponent by λ. Sums of Tits-cone coweights stay in
/// the cone, but the membership is re-checked term by term.
fn theta_shift(datum: &RootDatum, lambda: &Coweight, a: &BernsteinElt, limits: &EngineLimits) -> Result<BernsteinElt> {
    let mut out = BernsteinElt::zero(a.n);
    for ((mu, w), c) in a.iter() {
        let shifted = lambda.add(mu);
        if !tits_cone_contains(datum, &shifted) {
            return Err(Error::InternalBound(format!(
                "theta shift left the Tits cone at {}",
                datum.coweight_string(&shifted)
            )));
        }
        out.add_term(shifted, w.clone(), c, limits)?;
    }
    Ok(out)
}

/// Full product in the Bernstein basis.
///
/// (Θ^{μ1} T_{w1})(Θ^{μ2} T_{w2}): the letters of w1 are pushed into the
/// right factor one at a time (innermost first), then the result is shifted
/// by μ1. Bilinear extension over all term pairs.
pub fn bernstein_mul(
    datum: &RootDatum,
    a: &BernsteinElt,
    b: &BernsteinElt,
    limits: &EngineLimits,
) -> Result<BernsteinElt> {
    if a.n != b.n {
        return Err(Error::DatumMismatch(format!(
            "multiplying Bernstein elements over N={} and N={}",
            a.n, b.n
        )));
    }
    let mut out = BernsteinElt::zero(a.n);
    for ((mu1, w1), c1) in a.iter() {
        let mut cur = b.clone();
        for &i in w1.word_positions().iter().rev() {
            cur = bern_left_t(datum, i, &cur, limits)?;
        }
        cur = theta_shift(datum, mu1, &cur, limits)?;
        for ((mu, w), c) in cur.iter() {
            out.add_term(mu.clone(), w.clone(), &laurent_mul(c1, c)?, limits)?;
        }
    }
    Ok(out)
}

// ---- T-basis folds ----

/// a · T_i in the T-basis, by the generalized quadratic relation:
/// T_x T_i = T_{x s_i} when x(α_i) ∈ Δ̃^+, else (q-1) T_x + q T_{x s_i}.
fn tbasis_right_t(datum: &RootDatum, a: &TBasisElt, i: usize, limits: &EngineLimits) -> Result<TBasisElt> {
    let n = a.n;
    let si = wp_simple(datum, i);
    let alpha = KMAffineRoot { beta: simple_real_root(datum, i), n: 0 };
    let q = LaurentPoly::q(n);
    let qm1 = LaurentPoly::q_minus_one(n);
    let mut out = TBasisElt::zero(n);
    for (x, c) in a.iter() {
        let xsi = wp_mul(datum, x, &si);
        if kma_is_positive(&wp_act(datum, x, &alpha)) {
            out.add_term(xsi, c, limits)?;
        } else {
            out.add_term(x.clone(), &laurent_mul(c, &qm1)?, limits)?;
            out.add_term(xsi, &laurent_mul(c, &q)?, limits)?;
        }
    }
    Ok(out)
}

/// a · T_i^{-1} in the T-basis.
fn tbasis_right_t_inverse(
    datum: &RootDatum,
    a: &TBasisElt,
    i: usize,
    limits: &EngineLimits,
) -> Result<TBasisElt> {
    let n = a.n;
    let si = wp_simple(datum, i);
    let alpha = KMAffineRoot { beta: simple_real_root(datum, i), n: 0 };
    let qinv = LaurentPoly::monomial(n, -(n as i64), BigInt::one());
    let qinv_m1 = qinv.add(&LaurentPoly::one(n).neg())?;
    let mut out = TBasisElt::zero(n);
    for (x, c) in a.iter() {
        let xsi = wp_mul(datum, x, &si);
        if !kma_is_positive(&wp_act(datum, x, &alpha)) {
            out.add_term(xsi, c, limits)?;
        } else {
            out.add_term(xsi, &laurent_mul(c, &qinv)?, limits)?;
            out.add_term(x.clone(), &laurent_mul(c, &qinv_m1)?, limits)?;
        }
    }
    Ok(out)
}

/// T_i · a in the T-basis: T_i T_x = T_{s_i x} when x^{-1}(α_i) ∈ Δ̃^+.
/// Equivalently ℓ(s_i x) > ℓ(x); the length test is what is used.
fn tbasis_left_t(datum: &RootDatum, i: usize, a: &TBasisElt, limits: &EngineLimits) -> Result<TBasisElt> {
    let n = a.n;
    let si = wp_simple(datum, i);
    let q = LaurentPoly::q(n);
    let qm1 = LaurentPoly::q_minus_one(n);
    let mut out = TBasisElt::zero(n);
    for (x, c) in a.iter() {
        let six = wp_mul(datum, &si, x);
        let raise = length_wt(datum, &six)?.num > length_wt(datum, x)?.num;
        if raise {
            out.add_term(six, c, limits)?;
        } else {
            out.add_term(x.clone(), &laurent_mul(c, &qm1)?, limits)?;
            out.add_term(six, &laurent_mul(c, &q)?, limits)?;
        }
    }
    Ok(out)
}

// ---- Basis conversions ----

/// T_x in the Bernstein basis.
///
/// Write x = π^{w(λ)} v with λ dominant. Then
///   T_{π^{w(λ)}} = q^{⟨ρ,λ⟩} T_{w^{-1}}^{-1} Θ^λ T_{w^{-1}}
/// and the Weyl part v is appended one generator at a time: letter i_k of
/// the canonical word of v enters as T_{i_k} if the prefix of x built so far
/// sends α_{i_k} to a positive affine root, as T_{i_k}^{-1} otherwise.
pub fn t_to_bernstein(datum: &RootDatum, x: &WPElt, limits: &EngineLimits) -> Result<BernsteinElt> {
    if !x.in_cone() {
        return Err(Error::NotInCone(format!(
            "t_to_bernstein needs x in W ⋉ 𝒯, got {}",
            wp_canonical_string(datum, x)
        )));
    }
    let (lambda, w) = dominant_conjugate(datum, x.mu())?;
    let w_inv = weyl_inverse(datum, &w);
    let mut acc = BernsteinElt::theta(datum, lambda.clone())?;
    // T_{w^{-1}}^{-1} = T_{j_s}^{-1} ... T_{j_1}^{-1} for w^{-1} = s_{j_1}...s_{j_s}:
    // the j_1 factor is innermost, so it is applied first.
    for &j in w_inv.word_positions() {
        acc = bern_left_t_inverse(datum, j, &acc, limits)?;
    }
    for &j in w_inv.word_positions() {
        acc = bern_right_t(datum, &acc, j, limits)?;
    }
    let mut prefix = wp_translation(datum, x.mu().clone());
    for &i in x.weyl().word_positions() {
        let alpha = KMAffineRoot { beta: simple_real_root(datum, i), n: 0 };
        let positive = kma_is_positive(&wp_act(datum, &prefix, &alpha));
        acc = if positive {
            bern_right_t(datum, &acc, i, limits)?
        } else {
            bern_right_t_inverse(datum, &acc, i, limits)?
        };
        prefix = wp_mul(datum, &prefix, &wp_simple(datum, i));
    }
    let rho = datum.rho_pair(&lambda);
    acc.scale(&LaurentPoly::q_power(rho))
}

/// Θ^μ in the T-basis, by reverse induction toward the dominant chamber:
/// dominant μ gives q^{-⟨ρ,μ⟩} T_{π^μ} outright; otherwise pick the smallest
/// i with M = -⟨α_i, μ⟩ > 0 and ν = s_i μ, and use
///   Θ^μ = (T_i Θ^ν - (q-1) Σ_{k=0}^{M-1} Θ^{ν - k α_i^∨}) T_i^{-1},
/// which is the Bernstein relation solved for the antidominant side.
fn expand_theta(
    datum: &RootDatum,
    mu: &Coweight,
    limits: &EngineLimits,
    memo: &mut HashMap<Coweight, TBasisElt>,
) -> Result<TBasisElt> {
    if let Some(hit) = memo.get(mu) {
        return Ok(hit.clone());
    }
    if !tits_cone_contains(datum, mu) {
        return Err(Error::NotInCone(format!(
            "theta exponent {} is outside the Tits cone",
            datum.coweight_string(mu)
        )));
    }
    let n = datum.n();
    let neg_simple = (0..datum.num_nodes()).find(|&i| datum.pair_simple(i, mu) < 0);
    let result = match neg_simple {
        None => {
            let rho = datum.rho_pair(mu);
            let mut t = TBasisElt::zero(n);
            t.add_term(
                wp_translation(datum, mu.clone()),
                &LaurentPoly::q_power(QExponent::new(-rho.num, rho.n)),
                limits,
            )?;
            t
        }
        Some(i) => {
            let m = -datum.pair_simple(i, mu);
            let nu = datum.reflect_coweight(i, mu);
            let coroot = Coweight::new(datum.simple_coroot(i).to_vec());
            let qm1_neg = LaurentPoly::q_minus_one(n).neg();
            let inner = expand_theta(datum, &nu, limits, memo)?;
            let mut acc = tbasis_left_t(datum, i, &inner, limits)?;
            for k in 0..m {
                let ex = nu.sub(&coroot.scale(k));
                let th = expand_theta(datum, &ex, limits, memo)?;
                for (x, c) in th.iter() {
                    acc.add_term(x.clone(), &laurent_mul(c, &qm1_neg)?, limits)?;
                }
            }
            tbasis_right_t_inverse(datum, &acc, i, limits)?
        }
    };
    memo.insert(mu.clone(), result.clone());
    Ok(result)
}

/// Convert a Bernstein element to the T-basis.
pub fn bernstein_to_t(datum: &RootDatum, a: &BernsteinElt, limits: &EngineLimits) -> Result<TBasisElt> {
    let mut memo: HashMap<Coweight, TBasisElt> = HashMap::new();
    let mut out = TBasisElt::zero(a.n);
    for ((mu, w), c) in a.iter() {
        let mut cur = expand_theta(datum, mu, limits, &mut memo)?;
        for &i in w.word_positions() {
            cur = tbasis_right_t(datum, &cur, i, limits)?;
        }
        for (x, d) in cur.iter() {
            out.add_term(x.clone(), &laurent_mul(c, d)?, limits)?;
        }
    }
    Ok(out)
}

/// T_x T_y expanded in the T-basis, via the Bernstein pipeline. The support
/// theorem puts every structure coefficient in ℤ[q]; a coefficient with a
/// negative or fractional q-power is reported as a `TheoremViolation`.
pub fn hecke_t_mul(datum: &RootDatum, x: &WPElt, y: &WPElt, limits: &EngineLimits) -> Result<TBasisElt> {
    let a = t_to_bernstein(datum, x, limits)?;
    let b = t_to_bernstein(datum, y, limits)?;
    let prod = bernstein_mul(datum, &a, &b, limits)?;
    let t = bernstein_to_t(datum, &prod, limits)?;
    for (z, c) in t.iter() {
        if !laurent_is_polynomial(c) {
            return Err(Error::TheoremViolation(format!(
                "structure coefficient of T[{}] in T[{}]*T[{}] is {}, not in Z[q]",
                wp_canonical_string(datum, z),
                wp_canonical_string(datum, x),
                wp_canonical_string(datum, y),
                c
            )));
        }
    }
    Ok(t)
}

// ---- Characters ----

/// Trivial character on the Bernstein basis: Θ^μ T_w ↦ q^{⟨ρ,μ⟩ + ℓ(w)}.
pub fn triv_rep_bernstein(datum: &RootDatum, a: &BernsteinElt) -> Result<LaurentPoly> {
    let n = datum.n();
    let mut out = LaurentPoly::zero(n);
    for ((mu, w), c) in a.iter() {
        let rho = datum.rho_pair(mu);
        let exp = rho.num + (w.len() as i64) * (n as i64);
        out = out.add(&c.shift(exp)?)?;
    }
    Ok(out)
}

/// Trivial character on the T-basis. Computed through the Bernstein basis,
/// so the identity triv(T_x) = q^{ℓ(x)} is a genuine check, not a definition.
pub fn triv_rep_t(datum: &RootDatum, a: &TBasisElt, limits: &EngineLimits) -> Result<LaurentPoly> {
    let n = datum.n();
    let mut out = LaurentPoly::zero(n);
    for (x, c) in a.iter() {
        let img = triv_rep_bernstein(datum, &t_to_bernstein(datum, x, limits)?)?;
        out = out.add(&laurent_mul(c, &img)?)?;
    }
    Ok(out)
}

/// Sign character on the Bernstein basis:
/// T_i ↦ -1 and Θ^μ ↦ q^{-⟨ρ,μ⟩} ε^{2N⟨ρ,μ⟩}, where ε is a primitive 2N-th
/// root of unity. 2N⟨ρ,μ⟩ is an integer even when ⟨ρ,μ⟩ ∈ (1/N)ℤ is not.
pub fn sign_rep_bernstein(datum: &RootDatum, a: &BernsteinElt) -> Result<CharacterValue> {
    let n = datum.n();
    let mut out = CharacterValue::zero(n);
    for ((mu, w), c) in a.iter() {
        let rho = datum.rho_pair(mu);
        let shifted = c.shift(-rho.num)?;
        let signed = if w.len() % 2 == 1 { shifted.neg() } else { shifted };
        let phase = CharacterValue::monomial(n, 0, 2 * rho.num, BigInt::one());
        out = out.add(&char_mul(&CharacterValue::from_laurent(&signed), &phase)?)?;
    }
    Ok(out)
}

/// Sign character on the T-basis, through the Bernstein basis. On a single
/// T_x the value is the pure phase ε^{N·ℓ(x)} predicted by the length
/// formula; see `as_unit_phase`.
pub fn sign_rep_t(datum: &RootDatum, a: &TBasisElt, limits: &EngineLimits) -> Result<CharacterValue> {
    let n = datum.n();
    let mut out = CharacterValue::zero(n);
    for (x, c) in a.iter() {
        let img = sign_rep_bernstein(datum, &t_to_bernstein(datum, x, limits)?)?;
        out = out.add(&char_mul(&CharacterValue::from_laurent(c), &img)?)?;
    }
    Ok(out)
}

// ---- Demazure candidate ----

/// What survives T_x T_y at q = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DemazureOutcome {
    /// Exactly one term has nonzero constant coefficient.
    Unique { z: WPElt, coeff: BigInt },
    /// More than one survivor (or none): reported, never guessed away.
    Ambiguous { survivors: Vec<(WPElt, BigInt)> },
}

/// Specialize the product expansion at q = 0 and look for a unique
/// surviving term — the Kac-Moody candidate for the Demazure product.
pub fn demazure_candidate(
    datum: &RootDatum,
    x: &WPElt,
    y: &WPElt,
    limits: &EngineLimits,
) -> Result<DemazureOutcome> {
    let prod = hecke_t_mul(datum, x, y, limits)?;
    let mut survivors = Vec::new();
    for (z, c) in prod.iter() {
        let v = laurent_specialize_q0(c)?;
        if !v.is_zero() {
            survivors.push((z.clone(), v));
        }
    }
    if survivors.len() == 1 {
        let (z, coeff) = survivors.pop().expect("len checked");
        Ok(DemazureOutcome::Unique { z, coeff })
    } else {
        Ok(DemazureOutcome::Ambiguous { survivors })
    }
}

// ---- support conjecture report ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Everything checked about one product T_x T_y against the support
/// conjecture. Clause verdicts are independent; `overall` is Fail if any
/// clause failed, else Unknown if any is unresolved, else Pass.
#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub x: WPElt,
    pub y: WPElt,
    /// |Inv(x) ∩ Inv(y^{-1})|.
    pub n_deficit: usize,
    /// ℓ(x) + ℓ(y) - ℓ(xy), as a q-exponent over N.
    pub deficit: QExponent,
    pub expansion: TBasisElt,
    /// c^{xy}_{x,y} = q^N.
    pub corner: Verdict,
    /// c^{x s_b y}_{x,y} ≠ 0 for every b in the intersection.
    pub reflection_terms: Verdict,
    /// N + 1 ≤ #support ≤ 2^N.
    pub support_bounds: Verdict,
    /// Coefficients in ℤ[q], degree ≤ N, positive leading coefficient,
    /// valuation ≥ ℓ(xy) + N - ℓ(z), lowest coefficient of sign (-1)^{ℓ(z)-ℓ(xy)}.
    pub coeff_constraints: Verdict,
    /// Every support element z satisfies z ≥ xy (witnessed search; three-valued).
    pub bruhat: Verdict,
    /// N = 0 forces T_{xy}; N = 1 forces q T_{xy} + (q-1) T_{x s_b y}.
    pub closed_forms: Verdict,
}

impl ConjectureReport {
    pub fn clauses(&self) -> [(&'static str, Verdict); 6] {
        [
            ("corner", self.corner),
            ("reflection_terms", self.reflection_terms),
            ("support_bounds", self.support_bounds),
            ("coeff_constraints", self.coeff_constraints),
            ("bruhat", self.bruhat),
            ("closed_forms", self.closed_forms),
        ]
    }

    pub fn overall(&self) -> Verdict {
        let mut unknown = false;
        for (_, v) in self.clauses() {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Unknown => unknown = true,
                Verdict::Pass => {}
            }
        }
        if unknown {
            Verdict::Unknown
        } else {
            Verdict::Pass
        }
    }
}

/// Check the support conjecture on one pair: compute Inv(x) ∩ Inv(y^{-1}),
/// the length deficit, and the full product, then test the six clauses.
pub fn check_conjecture_51(
    datum: &RootDatum,
    x: &WPElt,
    y: &WPElt,
    limits: &EngineLimits,
    budget: &WitnessBudget,
) -> Result<ConjectureReport> {
    let n = datum.n();
    let inter = inv_intersect(datum, x, y)?;
    let deficit = length_deficit(datum, x, y)?;
    let nn = inter.len();
    let expansion = hecke_t_mul(datum, x, y, limits)?;
    let xy = wp_mul(datum, x, y);
    let len_xy = length_wt(datum, &xy)?;

    let qn = LaurentPoly::monomial(n, (nn as i64) * (n as i64), BigInt::one());
    let corner = if expansion.coeff(&xy) == qn { Verdict::Pass } else { Verdict::Fail };

    let mut reflection_terms = Verdict::Pass;
    for b in &inter {
        let xsby = wp_mul(datum, &wp_mul(datum, x, &reflection(datum, b)), y);
        if expansion.coeff(&xsby).is_zero() {
            reflection_terms = Verdict::Fail;
        }
    }

    let size = expansion.num_terms();
    let support_bounds = if nn < 63 && size >= nn + 1 && size <= (1usize << nn) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    let mut coeff_constraints = Verdict::Pass;
    for (z, c) in expansion.iter() {
        let len_z = length_wt(datum, z)?;
        let ok = (|| {
            if !laurent_is_polynomial(c) {
                return false;
            }
            let max = c.max_exp().expect("nonzero coefficient");
            let min = c.min_exp().expect("nonzero coefficient");
            if max.num > (nn as i64) * (n as i64) {
                return false;
            }
            if c.max_coeff().expect("nonzero coefficient").sign() != num_bigint::Sign::Plus {
                return false;
            }
            // valuation >= l(xy) + N - l(z), as numerators over N
            if min.num < len_xy.num + (nn as i64) * (n as i64) - len_z.num {
                return false;
            }
            // lowest coefficient sign = (-1)^{l(z) - l(xy)}
            let diff = len_z.num - len_xy.num;
            if diff % (n as i64) != 0 {
                return false;
            }
            let want_neg = (diff / (n as i64)).rem_euclid(2) == 1;
            let is_neg = c.min_coeff().expect("nonzero coefficient").sign() == num_bigint::Sign::Minus;
            want_neg == is_neg
        })();
        if !ok {
            coeff_constraints = Verdict::Fail;
        }
    }

    let mut bruhat = Verdict::Pass;
    for (z, _) in expansion.iter() {
        if z == &xy {
            continue;
        }
        match bruhat_ge_witness(datum, z, &xy, budget)? {
            BruhatVerdict::Yes(_) => {}
            BruhatVerdict::No => {
                bruhat = Verdict::Fail;
                break;
            }
            BruhatVerdict::Unknown => {
                if bruhat == Verdict::Pass {
                    bruhat = Verdict::Unknown;
                }
            }
        }
    }

    let closed_forms = match nn {
        0 => {
            let mut want = TBasisElt::zero(n);
            want.add_term(xy.clone(), &LaurentPoly::one(n), limits)?;
            if expansion == want { Verdict::Pass } else { Verdict::Fail }
        }
        1 => {
            let b = &inter[0];
            let xsby = wp_mul(datum, &wp_mul(datum, x, &reflection(datum, b)), y);
            let mut want = TBasisElt::zero(n);
            want.add_term(xy.clone(), &LaurentPoly::q(n), limits)?;
            want.add_term(xsby, &LaurentPoly::q_minus_one(n), limits)?;
            if expansion == want { Verdict::Pass } else { Verdict::Fail }
        }
        _ => Verdict::Pass,
    };

    Ok(ConjectureReport {
        x: x.clone(),
        y: y.clone(),
        n_deficit: nn,
        deficit,
        expansion,
        corner,
        reflection_terms,
        support_bounds,
        coeff_constraints,
        bruhat,
        closed_forms,
    })
}

// ---- Display ----

/// Render a T-basis element with terms sorted by (length, canonical order):
/// `+ (q)*T[pi^{2L0-2d}*s1*s0] + (-1 + q)*T[...]`.
pub fn tbasis_string(datum: &RootDatum, a: &TBasisElt) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut entries: Vec<(&WPElt, &LaurentPoly)> = a.iter().collect();
    entries.sort_by_key(|(x, _)| {
        let l = length_wt(datum, x).expect("T-basis keys lie in W x Tits cone");
        (l.num, (*x).clone())
    });
    entries
        .into_iter()
        .map(|(x, c)| format!("+ ({})*T[{}]", c, wp_canonical_string(datum, x)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Render a Bernstein element: `+ (c)*Th[mu]*T[w]` in key order, with
/// both factors always printed (`Th[0]`, `T[e]` when trivial).
pub fn bernstein_string(datum: &RootDatum, a: &BernsteinElt) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    a.iter()
        .map(|((mu, w), c)| {
            let word = if w.is_identity() {
                "e".to_string()
            } else {
                w.word_labels(datum)
                    .iter()
                    .map(|l| format!("s{}", l))
                    .collect::<Vec<_>>()
                    .join("*")
            };
            format!("+ ({})*Th[{}]*T[{}]", c, datum.coweight_string(mu), word)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{wp_from, wp_from_weyl};
    use crate::coxhecke::{hw_mul, hw_t};
    use crate::datum::build_datum;
    use crate::weyl::{weyl_all, weyl_from_word};

    fn datum() -> RootDatum {
        build_datum("A1aff").unwrap()
    }

    fn cw(coords: [i64; 3]) -> Coweight {
        Coweight::new(coords.to_vec())
    }

    fn elt(d: &RootDatum, mu: [i64; 3], word: &[i64]) -> WPElt {
        let w = weyl_from_word(d, word).unwrap();
        wp_from(d, Coweight::new(mu.to_vec()), w)
    }

    fn lim() -> EngineLimits {
        EngineLimits::default()
    }

    #[test]
    fn commute_matches_bernstein_relation() {
        let d = datum();
        // <alpha_0, L0> = 1: T_0 Th^{L0} = Th^{L0 - a0v} T_0 + (q-1) Th^{L0}.
        let c = bernstein_commute(&d, 0, &cw([1, 0, 0])).unwrap();
        assert_eq!(c.num_terms(), 2);
        let s0 = weyl_from_word(&d, &[0]).unwrap();
        let e = WeylElt::identity(&d);
        assert_eq!(c.coeff(&cw([1, 1, -1]), &s0), LaurentPoly::one(1));
        assert_eq!(c.coeff(&cw([1, 0, 0]), &e), LaurentPoly::q_minus_one(1));
        // <alpha_1, L0> = 0: T_1 commutes with Th^{L0}.
        let c = bernstein_commute(&d, 1, &cw([1, 0, 0])).unwrap();
        assert_eq!(c.num_terms(), 1);
        let s1 = weyl_from_word(&d, &[1]).unwrap();
        assert_eq!(c.coeff(&cw([1, 0, 0]), &s1), LaurentPoly::one(1));
        // <alpha_1, (1,1,-1)> = 2: two correction terms.
        let c = bernstein_commute(&d, 1, &cw([1, 1, -1])).unwrap();
        assert_eq!(c.num_terms(), 3);
        assert_eq!(c.coeff(&cw([1, -1, -1]), &s1), LaurentPoly::one(1));
        assert_eq!(c.coeff(&cw([1, 1, -1]), &e), LaurentPoly::q_minus_one(1));
        assert_eq!(c.coeff(&cw([1, 0, -1]), &e), LaurentPoly::q_minus_one(1));
    }

    #[test]
    fn left_inverse_fold_cancels_exactly() {
        let d = datum();
        // T_1^{-1} Th^{(1,1,-1)} = q^{-1} Th^{(1,-1,-1)} T_1 + q^{-1}(q-1) Th^{(1,0,-1)}:
        // the k=1 correction Th^{(1,1,-1)} cancels against (q^{-1}-1) * input.
        let a = BernsteinElt::theta(&d, cw([1, 1, -1])).unwrap();
        let r = bern_left_t_inverse(&d, 1, &a, &lim()).unwrap();
        assert_eq!(r.num_terms(), 2);
        let s1 = weyl_from_word(&d, &[1]).unwrap();
        let e = WeylElt::identity(&d);
        let qinv = LaurentPoly::monomial(1, -1, BigInt::one());
        assert_eq!(r.coeff(&cw([1, -1, -1]), &s1), qinv);
        let qinv_qm1 = laurent_mul(&qinv, &LaurentPoly::q_minus_one(1)).unwrap();
        assert_eq!(r.coeff(&cw([1, 0, -1]), &e), qinv_qm1);
    }

    #[test]
    fn theta_exponents_add() {
        let d = datum();
        let a = BernsteinElt::theta(&d, cw([1, 2, 0])).unwrap();
        let b = BernsteinElt::theta(&d, cw([2, -1, 3])).unwrap();
        let ab = bernstein_mul(&d, &a, &b, &lim()).unwrap();
        let ba = bernstein_mul(&d, &b, &a, &lim()).unwrap();
        assert_eq!(ab, ba);
        assert_eq!(ab.num_terms(), 1);
        assert_eq!(
            ab.coeff(&cw([3, 1, 3]), &WeylElt::identity(&d)),
            LaurentPoly::one(1)
        );
    }

    #[test]
    fn translation_to_bernstein_dominant_and_reflected() {
        let d = datum();
        // Dominant: T_{pi^{L0+4d}} = q^8 Th^{L0+4d}.
        let b = t_to_bernstein(&d, &elt(&d, [1, 0, 4], &[]), &lim()).unwrap();
        assert_eq!(b.num_terms(), 1);
        assert_eq!(
            b.coeff(&cw([1, 0, 4]), &WeylElt::identity(&d)),
            LaurentPoly::monomial(1, 8, BigInt::one())
        );
        // x = s0 pi^{L0} = pi^{(1,1,-1)} s0, length -1:
        // T_x = q^{-1} Th^{L0 - a0v} T_{s0}.
        let x = elt(&d, [1, 1, -1], &[0]);
        let b = t_to_bernstein(&d, &x, &lim()).unwrap();
        assert_eq!(b.num_terms(), 1);
        let s0 = weyl_from_word(&d, &[0]).unwrap();
        assert_eq!(
            b.coeff(&cw([1, 1, -1]), &s0),
            LaurentPoly::monomial(1, -1, BigInt::one())
        );
        // Identity and pure Weyl generators convert trivially.
        assert_eq!(
            t_to_bernstein(&d, &elt(&d, [0, 0, 0], &[]), &lim()).unwrap(),
            BernsteinElt::one(&d)
        );
        let b = t_to_bernstein(&d, &elt(&d, [0, 0, 0], &[1]), &lim()).unwrap();
        let s1 = weyl_from_word(&d, &[1]).unwrap();
        assert_eq!(b.num_terms(), 1);
        assert_eq!(b.coeff(&cw([0, 0, 0]), &s1), LaurentPoly::one(1));
    }

    #[test]
    fn theta_to_t_at_dominant_and_level_zero() {
        let d = datum();
        // Th^{L0} = q^{0} T_{pi^{L0}}  (<rho, L0> = 0).
        let a = BernsteinElt::theta(&d, cw([1, 0, 0])).unwrap();
        let t = bernstein_to_t(&d, &a, &lim()).unwrap();
        assert_eq!(t.num_terms(), 1);
        assert_eq!(t.coeff(&elt(&d, [1, 0, 0], &[])), LaurentPoly::one(1));
        // Th^{L0+4d}: <rho, mu> = 8.
        let a = BernsteinElt::theta(&d, cw([1, 0, 4])).unwrap();
        let t = bernstein_to_t(&d, &a, &lim()).unwrap();
        assert_eq!(
            t.coeff(&elt(&d, [1, 0, 4], &[])),
            LaurentPoly::monomial(1, -8, BigInt::one())
        );
    }

    #[test]
    fn round_trip_is_identity_on_small_box() {
        let d = datum();
        let mut count = 0;
        for l0 in 0..=1i64 {
            for a1 in -1..=1i64 {
                for dd in -1..=1i64 {
                    let mu = cw([l0, a1, dd]);
                    if !tits_cone_contains(&d, &mu) {
                        continue;
                    }
                    for word in [&[][..], &[0][..], &[1][..], &[0, 1][..], &[1, 0][..]] {
                        let x = elt(&d, [l0, a1, dd], word);
                        let back =
                            bernstein_to_t(&d, &t_to_bernstein(&d, &x, &lim()).unwrap(), &lim())
                                .unwrap();
                        assert_eq!(back, TBasisElt::t(&d, &x).unwrap(), "round trip failed");
                        count += 1;
                    }
                }
            }
        }
        assert!(count > 50);
    }

    #[test]
    fn quadratic_relation_through_pipeline() {
        let d = datum();
        for i in [0usize, 1usize] {
            let x = elt(&d, [0, 0, 0], &[i as i64]);
            let sq = hecke_t_mul(&d, &x, &x, &lim()).unwrap();
            assert_eq!(sq.num_terms(), 2);
            assert_eq!(sq.coeff(&elt(&d, [0, 0, 0], &[])), LaurentPoly::q(1));
            assert_eq!(sq.coeff(&x), LaurentPoly::q_minus_one(1));
        }
    }

    #[test]
    fn finite_class_products_match_coxeter_hecke() {
        let d = build_datum("A2").unwrap();
        let lim = lim();
        for wx in weyl_all(&d).unwrap() {
            for wy in weyl_all(&d).unwrap() {
                let x = wp_from_weyl(&d, wx.clone());
                let y = wp_from_weyl(&d, wy.clone());
                let got = hecke_t_mul(&d, &x, &y, &lim).unwrap();
                let want = hw_mul(&d, &hw_t(&d, &wx), &hw_t(&d, &wy)).unwrap();
                assert_eq!(got.num_terms(), want.num_terms());
                for (wz, c) in want.iter() {
                    assert_eq!(&got.coeff(&wp_from_weyl(&d, wz.clone())), c);
                }
            }
        }
    }

    #[test]
    fn characters_on_generators_and_translations() {
        let d = datum();
        let lim = lim();
        // triv(T_i) = q, sign(T_i) = -1.
        for i in [0i64, 1i64] {
            let t = TBasisElt::t(&d, &elt(&d, [0, 0, 0], &[i])).unwrap();
            assert_eq!(triv_rep_t(&d, &t, &lim).unwrap(), LaurentPoly::q(1));
            let s = sign_rep_t(&d, &t, &lim).unwrap();
            assert_eq!(s.as_unit_phase(), Some(1)); // epsilon^1 = -1 at N=1
        }
        // x = pi^{L0+4d}: l(x) = 16; triv = q^16, sign = +1.
        let t = TBasisElt::t(&d, &elt(&d, [1, 0, 4], &[])).unwrap();
        assert_eq!(
            triv_rep_t(&d, &t, &lim).unwrap(),
            LaurentPoly::monomial(1, 16, BigInt::one())
        );
        assert_eq!(sign_rep_t(&d, &t, &lim).unwrap().as_unit_phase(), Some(0));
        // x = s0 pi^{L0}: l(x) = -1; triv = q^{-1}, sign = epsilon^{-1} = -1.
        let t = TBasisElt::t(&d, &elt(&d, [1, 1, -1], &[0])).unwrap();
        assert_eq!(
            triv_rep_t(&d, &t, &lim).unwrap(),
            LaurentPoly::monomial(1, -1, BigInt::one())
        );
        assert_eq!(sign_rep_t(&d, &t, &lim).unwrap().as_unit_phase(), Some(1));
    }

    #[test]
    fn characters_agree_with_length_exponent() {
        // triv(T_x) = q^{l(x)} and sign(T_x) = eps^{N l(x)} with l computed
        // independently by the length formula.
        let d = datum();
        let lim = lim();
        for l0 in 0..=1i64 {
            for a1 in -2..=2i64 {
                for dd in -2..=2i64 {
                    let mu = cw([l0, a1, dd]);
                    if !tits_cone_contains(&d, &mu) {
                        continue;
                    }
                    for word in [&[][..], &[0][..], &[1][..], &[1, 0, 1][..]] {
                        let x = elt(&d, [l0, a1, dd], word);
                        let l = length_wt(&d, &x).unwrap();
                        let t = TBasisElt::t(&d, &x).unwrap();
                        assert_eq!(
                            triv_rep_t(&d, &t, &lim).unwrap(),
                            LaurentPoly::q_power(l.clone()),
                            "triv != q^l at {}",
                            wp_canonical_string(&d, &x)
                        );
                        let want_phase = (l.num.rem_euclid(2)) as u32;
                        assert_eq!(
                            sign_rep_t(&d, &t, &lim).unwrap().as_unit_phase(),
                            Some(want_phase),
                            "sign != eps^l at {}",
                            wp_canonical_string(&d, &x)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn characters_are_multiplicative_on_products() {
        let d = datum();
        let lim = lim();
        let pairs = [
            (elt(&d, [1, 0, 4], &[]), elt(&d, [1, 0, 1], &[1, 0])),
            (elt(&d, [1, 1, -1], &[0]), elt(&d, [1, 2, -1], &[0, 1, 0])),
            (elt(&d, [1, 2, 0], &[0, 1]), elt(&d, [1, -1, 0], &[1, 0, 1, 0, 1])),
        ];
        for (x, y) in pairs {
            let prod = hecke_t_mul(&d, &x, &y, &lim).unwrap();
            let tx = TBasisElt::t(&d, &x).unwrap();
            let ty = TBasisElt::t(&d, &y).unwrap();
            let lhs = triv_rep_t(&d, &prod, &lim).unwrap();
            let rhs = laurent_mul(
                &triv_rep_t(&d, &tx, &lim).unwrap(),
                &triv_rep_t(&d, &ty, &lim).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs, "triv not multiplicative");
            let lhs = sign_rep_t(&d, &prod, &lim).unwrap();
            let rhs = char_mul(
                &sign_rep_t(&d, &tx, &lim).unwrap(),
                &sign_rep_t(&d, &ty, &lim).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs, "sign not multiplicative");
        }
    }

    #[test]
    fn bernstein_mul_is_associative_on_samples() {
        let d = datum();
        let lim = lim();
        let elts = [
            t_to_bernstein(&d, &elt(&d, [1, 1, -1], &[0]), &lim).unwrap(),
            t_to_bernstein(&d, &elt(&d, [0, 0, 0], &[1]), &lim).unwrap(),
            t_to_bernstein(&d, &elt(&d, [1, 0, 1], &[1, 0]), &lim).unwrap(),
        ];
        for a in &elts {
            for b in &elts {
                for c in &elts {
                    let ab_c =
                        bernstein_mul(&d, &bernstein_mul(&d, a, b, &lim).unwrap(), c, &lim)
                            .unwrap();
                    let a_bc =
                        bernstein_mul(&d, a, &bernstein_mul(&d, b, c, &lim).unwrap(), &lim)
                            .unwrap();
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        let d = datum();
        let x = elt(&d, [1, 1, -1], &[0]);
        let t = TBasisElt::t(&d, &x).unwrap();
        assert_eq!(tbasis_string(&d, &t), "+ (1)*T[pi^{L0+a1-d}*s0]");
        let b = t_to_bernstein(&d, &x, &lim()).unwrap();
        assert_eq!(bernstein_string(&d, &b), "+ (q^-1)*Th[L0+a1-d]*T[s0]");
        assert_eq!(tbasis_string(&d, &TBasisElt::zero(1)), "0");
    }

    #[test]
    fn out_of_cone_inputs_are_rejected() {
        let d = datum();
        assert!(matches!(
            BernsteinElt::theta(&d, cw([-1, 0, 0])),
            Err(Error::NotInCone(_))
        ));
        let w = weyl_from_word(&d, &[0]).unwrap();
        let x = wp_from(&d, cw([-1, 0, 0]), w);
        assert!(matches!(
            t_to_bernstein(&d, &x, &lim()),
            Err(Error::NotInCone(_))
        ));
        assert!(matches!(TBasisElt::t(&d, &x), Err(Error::NotInCone(_))));
    }
}
