//! The semidirect product W_T = W ⋉ T (Weyl group acting on the Tits cone of
//! the coweight lattice), its affinized root system Δ x Zπ, lengths, inversion
//! sets, and the Bruhat order.
//!
//! Elements are pairs x = pi^mu * w in normal form (translation first). The
//! affinized roots are pairs beta + n*pi with beta a real root and n an
//! integer; x acts by pi^mu w (beta + n pi) = w(beta) + (n + <w(beta), mu>) pi.
//! Lengths are exact rationals with denominator N and may be negative.
//!
//! Inversion-set intersections are computed by bounded enumeration: for each
//! real root gamma, the set of m with gamma[m] in Inv(x) is a single integer
//! interval determined by c = <w_x(gamma), mu_x> and the sign of w_x(gamma),
//! and candidates are confined to delta-degree <= K with K derived from the
//! level strips. Every bounded enumeration re-runs with +5 slack on all bounds
//! against the raw membership test and hard-errors if anything new appears.

use std::collections::HashSet;

use crate::datum::{cadd, cmul, dot, Coweight, DatumClass, RootDatum};
use crate::error::{Error, Result};
use crate::ring::QExponent;
use crate::weyl::{
    real_roots_up_to, reflection_from_root, root_string, tits_cone_contains, weyl_apply,
    weyl_apply_root, weyl_inverse, weyl_inversions, weyl_mul, weyl_simple, weyl_word_string,
    RealRoot, WeylElt,
};

// ---- Affinized roots ----

/// An affinized real root beta + n*pi (beta may be negative). The normal form
/// gamma[m] with gamma > 0 corresponds to (gamma, m) for m >= 0 and
/// (-gamma, -m) for m < 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KMAffineRoot {
    pub beta: RealRoot,
    pub n: i64,
}

/// Positive iff (beta > 0 and n >= 0) or (beta < 0 and n > 0).
pub fn kma_is_positive(a: &KMAffineRoot) -> bool {
    if a.beta.is_positive() {
        a.n >= 0
    } else {
        a.n > 0
    }
}

/// Build the positive affinized root gamma[m] from a positive real root.
pub fn kma_normalize(gamma: &RealRoot, m: i64) -> KMAffineRoot {
    assert!(gamma.is_positive(), "kma_normalize takes a positive real root");
    if m >= 0 {
        KMAffineRoot { beta: gamma.clone(), n: m }
    } else {
        KMAffineRoot { beta: gamma.neg(), n: -m }
    }
}

/// Inverse of `kma_normalize` for positive roots: (gamma, m) with gamma > 0.
pub fn kma_normal_pair(a: &KMAffineRoot) -> (RealRoot, i64) {
    if a.beta.is_positive() {
        (a.beta.clone(), a.n)
    } else {
        (a.beta.neg(), -a.n)
    }
}

pub fn kma_neg(a: &KMAffineRoot) -> KMAffineRoot {
    KMAffineRoot { beta: a.beta.neg(), n: -a.n }
}

/// Canonical string, e.g. `a0[0]`, `(2a0+a1)[-1]`, `-a1[2]`.
pub fn kma_string(datum: &RootDatum, a: &KMAffineRoot) -> String {
    if !kma_is_positive(a) {
        return format!("-{}", kma_string(datum, &kma_neg(a)));
    }
    let (gamma, m) = kma_normal_pair(a);
    let s = root_string(datum, &gamma);
    let nonzero = gamma.coords().iter().filter(|c| **c != 0).count();
    let compound = nonzero > 1 || gamma.coords().iter().any(|c| c.abs() > 1);
    if compound {
        format!("({})[{}]", s, m)
    } else {
        format!("{}[{}]", s, m)
    }
}

// ---- Semigroup elements ----

/// Element pi^mu * w of W ⋉ P, with a cached Tits-cone flag for mu. Elements
/// outside W_T are representable (reflections push elements out of the cone);
/// cone membership is a checked flag, not a type constraint.
#[derive(Debug, Clone)]
pub struct WPElt {
    mu: Coweight,
    w: WeylElt,
    in_cone: bool,
}

impl PartialEq for WPElt {
    fn eq(&self, other: &Self) -> bool {
        self.mu == other.mu && self.w == other.w
    }
}
impl Eq for WPElt {}
impl PartialOrd for WPElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for WPElt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.mu.coords, &self.w).cmp(&(&other.mu.coords, &other.w))
    }
}
impl std::hash::Hash for WPElt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mu.coords.hash(state);
        self.w.word_positions().hash(state);
    }
}

impl WPElt {
    pub fn mu(&self) -> &Coweight {
        &self.mu
    }

    pub fn weyl(&self) -> &WeylElt {
        &self.w
    }

    /// Cached Tits-cone membership of the translation part.
    pub fn in_cone(&self) -> bool {
        self.in_cone
    }
}

pub fn wp_from(datum: &RootDatum, mu: Coweight, w: WeylElt) -> WPElt {
    assert_eq!(mu.coords.len(), datum.rank());
    let in_cone = tits_cone_contains(datum, &mu);
    WPElt { mu, w, in_cone }
}

pub fn wp_identity(datum: &RootDatum) -> WPElt {
    wp_from(datum, Coweight::zero(datum.rank()), WeylElt::identity(datum))
}

pub fn wp_translation(datum: &RootDatum, mu: Coweight) -> WPElt {
    wp_from(datum, mu, WeylElt::identity(datum))
}

pub fn wp_simple(datum: &RootDatum, i: usize) -> WPElt {
    wp_from(datum, Coweight::zero(datum.rank()), weyl_simple(datum, i))
}

pub fn wp_from_weyl(datum: &RootDatum, w: WeylElt) -> WPElt {
    wp_from(datum, Coweight::zero(datum.rank()), w)
}

/// (pi^mu v)(pi^nu w) = pi^(mu + v(nu)) (vw).
pub fn wp_mul(datum: &RootDatum, x: &WPElt, y: &WPElt) -> WPElt {
    let mu = x.mu.add(&weyl_apply(datum, &x.w, &y.mu));
    let w = weyl_mul(datum, &x.w, &y.w);
    wp_from(datum, mu, w)
}

pub fn wp_inverse(datum: &RootDatum, x: &WPElt) -> WPElt {
    let wi = weyl_inverse(datum, &x.w);
    let mu = weyl_apply(datum, &wi, &x.mu).neg();
    wp_from(datum, mu, wi)
}

/// The reflection s_{gamma[m]} = pi^{m gamma^vee} s_gamma, from any affinized
/// real root (sign of the input does not matter).
pub fn reflection(datum: &RootDatum, a: &KMAffineRoot) -> WPElt {
    let (gamma, m) = kma_normal_pair(a);
    let s = reflection_from_root(datum, &gamma);
    let mu = Coweight::new(gamma.coroot().to_vec()).scale(m);
    wp_from(datum, mu, s)
}

/// pi^mu w (beta + n pi) = w(beta) + (n + <w(beta), mu>) pi.
pub fn wp_act(datum: &RootDatum, x: &WPElt, a: &KMAffineRoot) -> KMAffineRoot {
    let beta = weyl_apply_root(datum, &x.w, &a.beta);
    let n = cadd(a.n, dot(beta.functional(), &x.mu.coords));
    KMAffineRoot { beta, n }
}

/// Canonical textual form: `pi^{L0+4d}*s1*s0`, `pi^{0}` for the identity,
/// bare word when the translation part vanishes.
pub fn wp_canonical_string(datum: &RootDatum, x: &WPElt) -> String {
    let mu_part = format!("pi^{{{}}}", datum.coweight_string(&x.mu));
    if x.w.is_identity() {
        mu_part
    } else if x.mu.is_zero() {
        weyl_word_string(datum, &x.w)
    } else {
        format!("{}*{}", mu_part, weyl_word_string(datum, &x.w))
    }
}

// ---- Length ----

/// Length of x = pi^mu w in W_T by the four-case sum over positive affinized
/// roots; only eta in Inv(w^{-1}) or with <eta, mu> < 0 contribute. May be a
/// negative rational with denominator N.
pub fn length_wt(datum: &RootDatum, x: &WPElt) -> Result<QExponent> {
    if !x.in_cone {
        return Err(Error::NotInCone(format!(
            "length is defined on W_T only; mu = {}",
            datum.coweight_string(&x.mu)
        )));
    }
    let n = datum.n();
    let mut num = cmul(2, dot(datum.rho_times_n(), &x.mu.coords));
    let wi = weyl_inverse(datum, &x.w);
    let inv_wi = weyl_inversions(datum, &wi);
    let inv_keys: HashSet<&[i64]> = inv_wi.iter().map(|g| g.coords()).collect();

    // The eta with <eta, mu> < 0, as (coords, pairing) pairs.
    let mut negatives: Vec<(Vec<i64>, i64)> = Vec::new();
    match datum.class() {
        DatumClass::Finite => {
            for g in real_roots_up_to(datum, 0) {
                let c = dot(g.functional(), &x.mu.coords);
                if c < 0 {
                    negatives.push((g.coords().to_vec(), c));
                }
            }
        }
        DatumClass::UntwistedAffine => {
            let lvl = datum.level_of(&x.mu);
            debug_assert!(lvl >= 0, "cone membership guarantees nonnegative level");
            if lvl > 0 {
                let marks = datum.marks().unwrap();
                let level = datum.level_functional().unwrap();
                for bf in real_roots_up_to(datum, 0) {
                    let c0 = dot(bf.functional(), &x.mu.coords);
                    for sign in [1i64, -1] {
                        // eta = sign*bf + k*delta, pairing c0*sign + k*lvl < 0.
                        let mut k = if sign > 0 { 0 } else { 1 };
                        loop {
                            let c = cadd(cmul(sign, c0), cmul(k, lvl));
                            if c >= 0 {
                                break;
                            }
                            let coords: Vec<i64> = marks
                                .iter()
                                .zip(bf.coords())
                                .map(|(m, b)| cadd(cmul(k, *m), cmul(sign, *b)))
                                .collect();
                            debug_assert_eq!(
                                c,
                                dot(
                                    &level
                                        .iter()
                                        .zip(bf.functional())
                                        .map(|(l, f)| cadd(cmul(k, *l), cmul(sign, *f)))
                                        .collect::<Vec<_>>(),
                                    &x.mu.coords
                                )
                            );
                            negatives.push((coords, c));
                            k += 1;
                        }
                    }
                }
            }
            // lvl == 0: mu is W-fixed, every pairing is 0, nothing is negative.
        }
    }

    let mut seen_negative: HashSet<&[i64]> = HashSet::new();
    for (coords, c) in &negatives {
        seen_negative.insert(coords);
        let in_inv = inv_keys.contains(&coords[..]);
        // <eta,mu> < 0: contributes -2<eta,mu>, and one less when also an
        // inversion of w^{-1}.
        num = cadd(num, cmul(-2 * c, n as i64));
        if in_inv {
            num = cadd(num, -(n as i64));
        }
    }
    for g in &inv_wi {
        if !seen_negative.contains(g.coords()) {
            // <eta,mu> >= 0 and eta in Inv(w^{-1}): contributes +1.
            num = cadd(num, n as i64);
        }
    }
    Ok(QExponent::new(num, n))
}

// ---- Inversion sets ----

/// Membership of a positive affinized root in Inv(x).
pub fn inv_contains(datum: &RootDatum, x: &WPElt, a: &KMAffineRoot) -> bool {
    assert!(kma_is_positive(a), "inversion sets contain positive roots only");
    !kma_is_positive(&wp_act(datum, x, a))
}

/// For fixed gamma > 0 and z = pi^mu w, the m with gamma[m] in Inv(z) form a
/// single interval determined by c = <w(gamma), mu> and the sign of w(gamma).
fn inv_interval(c: i64, pos: bool) -> Option<(i64, i64)> {
    let hi_nonneg = -c - if pos { 1 } else { 0 };
    if hi_nonneg >= 0 {
        return Some((0, hi_nonneg));
    }
    let lo_neg = -(c - if pos { 0 } else { 1 });
    if lo_neg <= -1 {
        return Some((lo_neg, -1));
    }
    None
}

/// (c, pos) data for gamma against z, feeding `inv_interval`.
fn interval_data(datum: &RootDatum, z: &WPElt, gamma: &RealRoot) -> (i64, bool) {
    let img = weyl_apply_root(datum, &z.w, gamma);
    (dot(img.functional(), &z.mu.coords), img.is_positive())
}

fn isect(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    let (al, ah) = a?;
    let (bl, bh) = b?;
    let lo = al.max(bl);
    let hi = ah.min(bh);
    (lo <= hi).then_some((lo, hi))
}

/// Max |<w_z(beta_f), mu_z>| over the finite positive roots: bounds the
/// intercepts of the pairing strips for z.
fn strip_bound(datum: &RootDatum, z: &WPElt) -> i64 {
    real_roots_up_to(datum, 0)
        .iter()
        .map(|g| interval_data(datum, z, g).0.abs())
        .max()
        .unwrap_or(0)
}

fn max_delta_degree(datum: &RootDatum, roots: &[RealRoot]) -> i64 {
    roots.iter().map(|g| g.delta_degree(datum)).max().unwrap_or(0)
}

/// Inv(x) ∩ Inv(y^{-1}) — finite for x, y in W_T. Bounded enumeration over
/// delta-degree <= K with per-root exact m-intervals, then a +5 slack audit
/// against the raw membership test.
pub fn inv_intersect(datum: &RootDatum, x: &WPElt, y: &WPElt) -> Result<Vec<KMAffineRoot>> {
    if !x.in_cone || !y.in_cone {
        return Err(Error::NotInCone(
            "inv_intersect requires both elements in W_T".into(),
        ));
    }
    let yi = wp_inverse(datum, y);
    let k_bound = match datum.class() {
        DatumClass::Finite => 0,
        DatumClass::UntwistedAffine => {
            let lx = datum.level_of(&x.mu);
            let ly = datum.level_of(&y.mu);
            if lx == 0 {
                // mu_x is W-fixed: Inv(x) = Inv(w_x) at m = 0.
                max_delta_degree(datum, &weyl_inversions(datum, &x.w))
            } else if ly == 0 {
                max_delta_degree(datum, &weyl_inversions(datum, &yi.w))
            } else {
                let bx = strip_bound(datum, x);
                let byi = strip_bound(datum, &yi);
                (bx / lx).max(byi / ly) + 1
            }
        }
    };

    let primary = intersect_by_intervals(datum, x, &yi, k_bound);
    // Slack audit: +5 on the degree bound and +5 around every interval edge,
    // testing raw membership. Any new member means the bounds were wrong.
    let audit = intersect_raw_window(datum, x, &yi, k_bound + 5, 5);
    if primary != audit {
        return Err(Error::InternalBound(format!(
            "inv_intersect slack audit found a discrepancy: {} primary vs {} audited members",
            primary.len(),
            audit.len()
        )));
    }
    Ok(primary)
}

fn intersect_by_intervals(
    datum: &RootDatum,
    a: &WPElt,
    b: &WPElt,
    k_bound: i64,
) -> Vec<KMAffineRoot> {
    let mut out = Vec::new();
    for gamma in real_roots_up_to(datum, k_bound) {
        let (ca, pa) = interval_data(datum, a, &gamma);
        let (cb, pb) = interval_data(datum, b, &gamma);
        if let Some((lo, hi)) = isect(inv_interval(ca, pa), inv_interval(cb, pb)) {
            for m in lo..=hi {
                out.push(kma_normalize(&gamma, m));
            }
        }
    }
    out.sort();
    out
}

fn intersect_raw_window(
    datum: &RootDatum,
    a: &WPElt,
    b: &WPElt,
    k_bound: i64,
    slack: i64,
) -> Vec<KMAffineRoot> {
    let mut out = Vec::new();
    for gamma in real_roots_up_to(datum, k_bound) {
        let (lo, hi) = raw_window(datum, &[a, b], &gamma, slack);
        for m in lo..=hi {
            let cand = kma_normalize(&gamma, m);
            if inv_contains(datum, a, &cand) && inv_contains(datum, b, &cand) {
                out.push(cand);
            }
        }
    }
    out.sort();
    out
}

/// Window of m values covering every element's interval for gamma, extended
/// by `slack` on both sides.
fn raw_window(datum: &RootDatum, elts: &[&WPElt], gamma: &RealRoot, slack: i64) -> (i64, i64) {
    let mut lo = 0i64;
    let mut hi = 0i64;
    for z in elts {
        let (c, pos) = interval_data(datum, z, gamma);
        if let Some((l, h)) = inv_interval(c, pos) {
            lo = lo.min(l);
            hi = hi.max(h);
        }
    }
    (lo - slack, hi + slack)
}

/// Inv++_u(s_b) = { gamma[m] in Inv(s_b) : u(gamma[m]) > 0 and
/// u(-s_b(gamma[m])) > 0 } = Inv(s_b) ∩ Inv(u s_b) \ Inv(u). Cardinality must
/// equal l(u s_b) - l(u); anything else is an internal error.
pub fn inv_plus_plus(datum: &RootDatum, u: &WPElt, b: &KMAffineRoot) -> Result<Vec<KMAffineRoot>> {
    if !kma_is_positive(b) {
        return Err(Error::Usage("inv_plus_plus takes a positive affinized root".into()));
    }
    if !u.in_cone {
        return Err(Error::NotInCone("inv_plus_plus requires u in W_T".into()));
    }
    let sb = reflection(datum, b);
    let usb = wp_mul(datum, u, &sb);
    if !kma_is_positive(&wp_act(datum, u, b)) {
        return Err(Error::NotARaise(format!(
            "u({}) is negative, so u*s_b does not raise u",
            kma_string(datum, b)
        )));
    }
    if !usb.in_cone {
        return Err(Error::NotInCone("u*s_b leaves W_T".into()));
    }

    let k_bound = match datum.class() {
        DatumClass::Finite => 0,
        DatumClass::UntwistedAffine => {
            let lu = datum.level_of(&u.mu);
            if lu == 0 {
                // Cone forces the reflection's translation part to vanish here,
                // so everything sits at m = 0 inside Inv(w of s_b).
                max_delta_degree(datum, &weyl_inversions(datum, &sb.w))
            } else {
                let bs = strip_bound(datum, &sb);
                let bu = strip_bound(datum, u);
                let busb = strip_bound(datum, &usb);
                (busb.max(cadd(cadd(bs, bu), 1)) / lu) + 1
            }
        }
    };

    let mut primary = Vec::new();
    for gamma in real_roots_up_to(datum, k_bound) {
        let (cs, ps) = interval_data(datum, &sb, &gamma);
        let (cv, pv) = interval_data(datum, &usb, &gamma);
        let (cu, pu) = interval_data(datum, u, &gamma);
        let iu = inv_interval(cu, pu);
        if let Some((lo, hi)) = isect(inv_interval(cs, ps), inv_interval(cv, pv)) {
            for m in lo..=hi {
                let in_u = iu.map(|(l, h)| l <= m && m <= h).unwrap_or(false);
                if !in_u {
                    primary.push(kma_normalize(&gamma, m));
                }
            }
        }
    }
    primary.sort();

    // Slack audit straight from the definition.
    let mut audit = Vec::new();
    for gamma in real_roots_up_to(datum, k_bound + 5) {
        let (lo, hi) = raw_window(datum, &[&sb, &usb, u], &gamma, 5);
        for m in lo..=hi {
            let cand = kma_normalize(&gamma, m);
            if inv_contains(datum, &sb, &cand)
                && inv_contains(datum, &usb, &cand)
                && !inv_contains(datum, u, &cand)
            {
                audit.push(cand);
            }
        }
    }
    audit.sort();
    if primary != audit {
        return Err(Error::InternalBound(format!(
            "inv_plus_plus slack audit found a discrepancy: {} primary vs {} audited members",
            primary.len(),
            audit.len()
        )));
    }

    // Cardinality oracle: |Inv++| = l(u s_b) - l(u).
    let lu = length_wt(datum, u)?;
    let lusb = length_wt(datum, &usb)?;
    let diff = cadd(lusb.num, -lu.num);
    let count = cmul(primary.len() as i64, datum.n() as i64);
    if diff != count {
        return Err(Error::InternalBound(format!(
            "inv_plus_plus cardinality {} does not match length difference {}",
            primary.len(),
            QExponent::new(diff, datum.n())
        )));
    }
    Ok(primary)
}

/// l(x) + l(y) - l(xy), checked against 2 |Inv(x) ∩ Inv(y^{-1})|.
pub fn length_deficit(datum: &RootDatum, x: &WPElt, y: &WPElt) -> Result<QExponent> {
    let xy = wp_mul(datum, x, y);
    if !xy.in_cone {
        return Err(Error::NotInCone("xy leaves W_T".into()));
    }
    let lx = length_wt(datum, x)?;
    let ly = length_wt(datum, y)?;
    let lxy = length_wt(datum, &xy)?;
    let num = cadd(cadd(lx.num, ly.num), -lxy.num);
    let deficit = QExponent::new(num, datum.n());
    let inter = inv_intersect(datum, x, y)?;
    let expected = cmul(2 * inter.len() as i64, datum.n() as i64);
    if num != expected {
        return Err(Error::TheoremViolation(format!(
            "length deficit {} differs from 2|Inv(x) ∩ Inv(y^-1)| = {}",
            deficit,
            2 * inter.len()
        )));
    }
    Ok(deficit)
}

// ---- Bruhat order ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One step of a Bruhat chain: multiplying `from` by the reflection of `root`
/// on `side` gives `to`, raising length.
#[derive(Debug, Clone)]
pub struct WitnessStep {
    pub side: Side,
    pub root: KMAffineRoot,
    pub to: WPElt,
}

#[derive(Debug, Clone)]
pub enum BruhatVerdict {
    Yes(Vec<WitnessStep>),
    No,
    Unknown,
}

/// Search limits for bruhat_ge_witness: candidate reflections use roots of
/// delta-degree <= max_delta_deg and |m| <= max_abs_n; chains are capped at
/// max_depth (and always at N * (l(z) - l(base))).
#[derive(Debug, Clone, Copy)]
pub struct WitnessBudget {
    pub max_delta_deg: i64,
    pub max_abs_n: i64,
    pub max_depth: usize,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        WitnessBudget { max_delta_deg: 3, max_abs_n: 3, max_depth: 6 }
    }
}

/// Search for a Bruhat chain base < ... < z by raising reflections on either
/// side. Three-valued: exhausting the budget yields Unknown, never a guess.
pub fn bruhat_ge_witness(
    datum: &RootDatum,
    z: &WPElt,
    base: &WPElt,
    budget: &WitnessBudget,
) -> Result<BruhatVerdict> {
    if z == base {
        return Ok(BruhatVerdict::Yes(Vec::new()));
    }
    let lz = length_wt(datum, z)?;
    let lb = length_wt(datum, base)?;
    if lz.num <= lb.num {
        // Equal length but distinct, or shorter: never >=.
        return Ok(BruhatVerdict::No);
    }
    let gap = (lz.num - lb.num) as usize; // each raise adds at least 1/N
    let depth_cap = budget.max_depth.min(gap);

    // Candidate reflections, deduplicated by the element they induce.
    let mut candidates: Vec<(KMAffineRoot, WPElt)> = Vec::new();
    let mut seen_refl: HashSet<WPElt> = HashSet::new();
    for gamma in real_roots_up_to(datum, budget.max_delta_deg) {
        for m in -budget.max_abs_n..=budget.max_abs_n {
            let a = kma_normalize(&gamma, m);
            let s = reflection(datum, &a);
            if seen_refl.insert(s.clone()) {
                candidates.push((a, s));
            }
        }
    }

    // BFS with parent pointers.
    struct Node {
        elt: WPElt,
        parent: Option<(usize, Side, KMAffineRoot)>,
        len_num: i64,
    }
    let mut nodes = vec![Node { elt: base.clone(), parent: None, len_num: lb.num }];
    let mut visited: HashSet<WPElt> = HashSet::new();
    visited.insert(base.clone());
    let mut frontier = vec![0usize];
    for _depth in 0..depth_cap {
        let mut next = Vec::new();
        for &idx in &frontier {
            let u = nodes[idx].elt.clone();
            let lu = nodes[idx].len_num;
            let ui = wp_inverse(datum, &u);
            for (a, s) in &candidates {
                for side in [Side::Right, Side::Left] {
                    let raises = match side {
                        // u s_a > u iff u(a) > 0; s_a u > u iff u^{-1}(a) > 0.
                        Side::Right => kma_is_positive(&wp_act(datum, &u, a)),
                        Side::Left => kma_is_positive(&wp_act(datum, &ui, a)),
                    };
                    if !raises {
                        continue;
                    }
                    let v = match side {
                        Side::Right => wp_mul(datum, &u, s),
                        Side::Left => wp_mul(datum, s, &u),
                    };
                    if !v.in_cone || visited.contains(&v) {
                        continue;
                    }
                    let lv = length_wt(datum, &v)?;
                    debug_assert!(lv.num > lu, "raising reflection must increase length");
                    if lv.num > lz.num || (lv.num == lz.num && v != *z) {
                        continue;
                    }
                    visited.insert(v.clone());
                    let ni = nodes.len();
                    nodes.push(Node {
                        elt: v.clone(),
                        parent: Some((idx, side, a.clone())),
                        len_num: lv.num,
                    });
                    if v == *z {
                        // Reconstruct the chain.
                        let mut steps = Vec::new();
                        let mut cur = ni;
                        while let Some((p, side, root)) = nodes[cur].parent.clone() {
                            steps.push(WitnessStep {
                                side,
                                root,
                                to: nodes[cur].elt.clone(),
                            });
                            cur = p;
                        }
                        steps.reverse();
                        return Ok(BruhatVerdict::Yes(steps));
                    }
                    next.push(ni);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(BruhatVerdict::Unknown)
}

// ---- Tests ----

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{simple_real_root, weyl_from_word};

    fn a1aff() -> RootDatum {
        RootDatum::a1_affine()
    }

    fn elt(datum: &RootDatum, mu: Vec<i64>, word: &[i64]) -> WPElt {
        wp_from(
            datum,
            Coweight::new(mu),
            weyl_from_word(datum, word).unwrap(),
        )
    }

    #[test]
    fn action_is_compatible_with_multiplication() {
        let d = a1aff();
        let xs = [
            elt(&d, vec![1, 0, 0], &[0]),
            elt(&d, vec![0, 1, -1], &[1]),
            elt(&d, vec![2, -1, 3], &[0, 1]),
            elt(&d, vec![-1, 2, 0], &[1, 0, 1]),
        ];
        let roots: Vec<KMAffineRoot> = real_roots_up_to(&d, 2)
            .iter()
            .flat_map(|g| [-2i64, 0, 3].map(|m| kma_normalize(g, m)))
            .collect();
        for x in &xs {
            for y in &xs {
                let xy = wp_mul(&d, x, y);
                for a in &roots {
                    assert_eq!(
                        wp_act(&d, &xy, a),
                        wp_act(&d, x, &wp_act(&d, y, a)),
                        "action compatibility failed"
                    );
                }
            }
        }
    }

    #[test]
    fn reflections_are_involutions_and_negate_their_root() {
        let d = a1aff();
        for gamma in real_roots_up_to(&d, 2) {
            for m in [-2i64, -1, 0, 1, 3] {
                let a = kma_normalize(&gamma, m);
                let s = reflection(&d, &a);
                assert_eq!(wp_mul(&d, &s, &s), wp_identity(&d));
                assert_eq!(wp_act(&d, &s, &a), kma_neg(&a));
            }
        }
    }

    #[test]
    fn translation_composition() {
        let d = a1aff();
        let l0 = wp_translation(&d, Coweight::new(vec![1, 0, 0]));
        let sq = wp_mul(&d, &l0, &l0);
        assert_eq!(sq, wp_translation(&d, Coweight::new(vec![2, 0, 0])));
    }

    #[test]
    fn normal_form_strings() {
        let d = a1aff();
        let x = elt(&d, vec![1, 0, 4], &[1, 0]);
        assert_eq!(wp_canonical_string(&d, &x), "pi^{L0+4d}*s1*s0");
        assert_eq!(wp_canonical_string(&d, &wp_identity(&d)), "pi^{0}");
        assert_eq!(wp_canonical_string(&d, &wp_simple(&d, 0)), "s0");
        let t = wp_translation(&d, Coweight::new(vec![0, 0, -1]));
        assert_eq!(wp_canonical_string(&d, &t), "pi^{-d}");
    }

    #[test]
    fn golden_lengths() {
        let d = a1aff();
        let n = d.n();
        let cases: Vec<(WPElt, i64)> = vec![
            (wp_translation(&d, Coweight::new(vec![1, 0, 4])), 16),
            (wp_mul(&d, &wp_from_weyl(&d, weyl_from_word(&d, &[1, 0]).unwrap()),
                    &wp_translation(&d, Coweight::new(vec![1, 0, 1]))), 2),
            (wp_mul(&d, &wp_simple(&d, 0), &wp_translation(&d, Coweight::new(vec![1, 0, 0]))), -1),
            (wp_translation(&d, Coweight::new(vec![0, 0, -1])), -4),
            (wp_translation(&d, Coweight::new(vec![1, 0, 0])), 0),
            (wp_identity(&d), 0),
        ];
        for (x, expected) in cases {
            let l = length_wt(&d, &x).unwrap();
            assert_eq!(
                (l.num, l.n),
                (expected * n as i64, n),
                "length of {}",
                wp_canonical_string(&d, &x)
            );
        }
    }

    #[test]
    fn length_rejects_outside_cone() {
        let d = a1aff();
        let x = wp_translation(&d, Coweight::new(vec![-1, 0, 0]));
        assert!(matches!(length_wt(&d, &x), Err(Error::NotInCone(_))));
    }

    #[test]
    fn inv_contains_basics() {
        let d = a1aff();
        let a0 = kma_normalize(&simple_real_root(&d, 0), 0);
        assert!(!inv_contains(&d, &wp_identity(&d), &a0));
        assert!(inv_contains(&d, &wp_simple(&d, 0), &a0));
        // x = s0 pi^{Lambda0} contains (2a0+a1)[-1].
        let x = wp_mul(&d, &wp_simple(&d, 0), &wp_translation(&d, Coweight::new(vec![1, 0, 0])));
        let gamma = real_roots_up_to(&d, 2)
            .into_iter()
            .find(|g| g.coords() == [2, 1])
            .unwrap();
        assert!(inv_contains(&d, &x, &kma_normalize(&gamma, -1)));
    }

    #[test]
    fn inv_intersect_with_identity_is_empty() {
        let d = a1aff();
        let y = elt(&d, vec![1, 0, 1], &[0, 1]);
        assert!(inv_intersect(&d, &wp_identity(&d), &y).unwrap().is_empty());
        assert!(inv_intersect(&d, &y, &wp_identity(&d)).unwrap().is_empty());
    }

    #[test]
    fn same_chamber_translation_pairs_match_closed_form() {
        let d = a1aff();
        // x = pi^lambda, y = pi^mu w with lambda, mu in the same chamber:
        // the intersection is {eta > 0 single-affine : eta in Inv(w^{-1}),
        // <eta,lambda> < 0, <eta,mu> = 0}.
        let lambdas = [vec![1i64, 0, 0], vec![1, 1, -1], vec![2, -1, 0]];
        let mus = [vec![1i64, 0, 2], vec![2, 0, 0], vec![1, 1, -2]];
        let words: Vec<Vec<i64>> = vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0, 1]];
        for lam in &lambdas {
            for mu in &mus {
                let (dl, ul) = crate::weyl::dominant_conjugate(&d, &Coweight::new(lam.clone())).unwrap();
                let (dm, um) = crate::weyl::dominant_conjugate(&d, &Coweight::new(mu.clone())).unwrap();
                let _ = (dl, dm);
                if ul != um {
                    continue; // not the same chamber
                }
                for word in &words {
                    let x = wp_translation(&d, Coweight::new(lam.clone()));
                    let w = weyl_from_word(&d, word).unwrap();
                    let y = wp_from(&d, Coweight::new(mu.clone()), w.clone());
                    let got = inv_intersect(&d, &x, &y).unwrap();
                    let wi = weyl_inverse(&d, &w);
                    let mut expect: Vec<KMAffineRoot> = weyl_inversions(&d, &wi)
                        .iter()
                        .filter(|eta| {
                            dot(eta.functional(), &x.mu().coords) < 0
                                && dot(eta.functional(), &y.mu().coords) == 0
                        })
                        .map(|eta| kma_normalize(eta, 0))
                        .collect();
                    expect.sort();
                    assert_eq!(got, expect, "closed form failed for lam={:?} mu={:?} w={:?}", lam, mu, word);
                    assert!(got.iter().all(|a| a.n == 0), "members must be single-affine");
                }
            }
        }
    }

    #[test]
    fn simple_inv_plus_plus() {
        let d = a1aff();
        for i in 0..2 {
            let b = kma_normalize(&simple_real_root(&d, i), 0);
            let got = inv_plus_plus(&d, &wp_identity(&d), &b).unwrap();
            assert_eq!(got, vec![b.clone()], "Inv++_e(s_b) = {{b}} for simple b");
        }
    }

    #[test]
    fn inv_plus_plus_rejects_non_raises() {
        let d = a1aff();
        let b = kma_normalize(&simple_real_root(&d, 0), 0);
        let u = wp_simple(&d, 0); // u(alpha_0) < 0: not a raise
        assert!(matches!(
            inv_plus_plus(&d, &u, &b),
            Err(Error::NotARaise(_))
        ));
    }

    #[test]
    fn deficit_of_reflection_with_itself() {
        let d = a1aff();
        let s0 = wp_simple(&d, 0);
        let deficit = length_deficit(&d, &s0, &s0).unwrap();
        assert_eq!((deficit.num, deficit.n), (2, 1));
        let inter = inv_intersect(&d, &s0, &s0).unwrap();
        assert_eq!(inter.len(), 1);
        assert_eq!(kma_string(&d, &inter[0]), "a0[0]");
    }

    #[test]
    fn witness_trivial_cases() {
        let d = a1aff();
        let x = elt(&d, vec![1, 0, 1], &[0]);
        match bruhat_ge_witness(&d, &x, &x, &WitnessBudget::default()).unwrap() {
            BruhatVerdict::Yes(chain) => assert!(chain.is_empty()),
            other => panic!("expected yes, got {:?}", other),
        }
        // Shorter element is never >=.
        let id = wp_identity(&d);
        let s0pi = wp_mul(&d, &wp_simple(&d, 0), &wp_translation(&d, Coweight::new(vec![1, 0, 0])));
        // l(s0 pi^{Lambda0}) = -1 < 0 = l(identity).
        match bruhat_ge_witness(&d, &s0pi, &id, &WitnessBudget::default()).unwrap() {
            BruhatVerdict::No => {}
            other => panic!("expected no, got {:?}", other),
        }
    }

    #[test]
    fn witness_finds_single_raise() {
        let d = a1aff();
        let u = wp_translation(&d, Coweight::new(vec![1, 0, 0]));
        let b = kma_normalize(&simple_real_root(&d, 1), 0);
        let s = reflection(&d, &b);
        let v = wp_mul(&d, &u, &s);
        assert!(kma_is_positive(&wp_act(&d, &u, &b)));
        match bruhat_ge_witness(&d, &v, &u, &WitnessBudget::default()).unwrap() {
            BruhatVerdict::Yes(chain) => {
                assert_eq!(chain.len(), 1);
                assert_eq!(chain[0].to, v);
            }
            other => panic!("expected yes, got {:?}", other),
        }
    }
}
