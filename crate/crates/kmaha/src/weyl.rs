//! Weyl group elements, real roots, and the combinatorics over them:
//! inversion sets, Bruhat order, Demazure products, dominant conjugation.
//!
//! A `WeylElt` stores its canonical reduced word (the lexicographically least
//! one, found by repeatedly extracting the smallest left descent) plus the
//! matrices of its action on coweights, so equality and ordering are cheap and
//! deterministic. A `RealRoot` carries simple-root coordinates, its covector,
//! and its coroot together, and all three are transported exactly under
//! simple reflections.

use std::collections::HashSet;

use crate::datum::{cadd, cmul, dot, identity_matrix, mat_apply, mat_mul, Coweight, DatumClass, RootDatum};
use crate::error::{Error, Result};
use crate::ring::QExponent;

// ---- Real roots ----

/// A real root together with its coroot. `coords` are coefficients on the
/// simple roots (every real root has all coordinates of one sign).
#[derive(Debug, Clone)]
pub struct RealRoot {
    coords: Vec<i64>,
    functional: Vec<i64>,
    coroot: Vec<i64>,
}

impl PartialEq for RealRoot {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}
impl Eq for RealRoot {}
impl PartialOrd for RealRoot {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for RealRoot {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}
impl std::hash::Hash for RealRoot {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl RealRoot {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn functional(&self) -> &[i64] {
        &self.functional
    }

    pub fn coroot(&self) -> &[i64] {
        &self.coroot
    }

    /// All coordinates of a real root share one sign; positive means >= 0.
    pub fn is_positive(&self) -> bool {
        debug_assert!(
            self.coords.iter().all(|c| *c >= 0) || self.coords.iter().all(|c| *c <= 0),
            "mixed-sign root coordinates: {:?}",
            self.coords
        );
        self.coords.iter().all(|c| *c >= 0)
    }

    pub fn neg(&self) -> RealRoot {
        RealRoot {
            coords: self.coords.iter().map(|c| -c).collect(),
            functional: self.functional.iter().map(|c| -c).collect(),
            coroot: self.coroot.iter().map(|c| -c).collect(),
        }
    }

    /// Coefficient on the affine simple root (node position 0); 0 in finite class.
    pub fn delta_degree(&self, datum: &RootDatum) -> i64 {
        if datum.is_affine() {
            self.coords[0]
        } else {
            0
        }
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().fold(0, |a, c| cadd(a, *c))
    }

    pub fn is_simple(&self) -> Option<usize> {
        let mut which = None;
        for (i, c) in self.coords.iter().enumerate() {
            match (*c, which) {
                (0, _) => {}
                (1, None) => which = Some(i),
                _ => return None,
            }
        }
        which
    }
}

/// The simple root alpha_i as a RealRoot.
pub fn simple_real_root(datum: &RootDatum, i: usize) -> RealRoot {
    let mut coords = vec![0i64; datum.num_nodes()];
    coords[i] = 1;
    RealRoot {
        coords,
        functional: datum.simple_root_functional(i).to_vec(),
        coroot: datum.simple_coroot(i).to_vec(),
    }
}

/// s_i applied to a real root, transporting coords, covector, and coroot.
pub fn reflect_real_root(datum: &RootDatum, i: usize, g: &RealRoot) -> RealRoot {
    let p = dot(&g.functional, datum.simple_coroot(i));
    let mut coords = g.coords.clone();
    coords[i] = cadd(coords[i], -p);
    let functional = g
        .functional
        .iter()
        .zip(datum.simple_root_functional(i))
        .map(|(x, a)| cadd(*x, -cmul(p, *a)))
        .collect();
    let q = dot(datum.simple_root_functional(i), &g.coroot);
    let coroot = g
        .coroot
        .iter()
        .zip(datum.simple_coroot(i))
        .map(|(x, a)| cadd(*x, -cmul(q, *a)))
        .collect();
    RealRoot { coords, functional, coroot }
}

/// Apply a word s_{w[0]} ... s_{w[last]} to a root (rightmost letter first).
pub fn apply_word_to_root(datum: &RootDatum, word: &[usize], g: &RealRoot) -> RealRoot {
    let mut out = g.clone();
    for &i in word.iter().rev() {
        out = reflect_real_root(datum, i, &out);
    }
    out
}

/// Canonical root string in the simple-root basis, e.g. `a0`, `2a0+a1`, `-a1`.
pub fn root_string(datum: &RootDatum, g: &RealRoot) -> String {
    let mut out = String::new();
    for (c, label) in g.coords.iter().zip(datum.labels()) {
        if *c == 0 {
            continue;
        }
        if out.is_empty() {
            if *c < 0 {
                out.push('-');
            }
        } else if *c < 0 {
            out.push('-');
        } else {
            out.push('+');
        }
        let mag = c.unsigned_abs();
        if mag != 1 {
            out.push_str(&mag.to_string());
        }
        out.push_str(&format!("a{}", label));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

// ---- Weyl group elements ----

/// A Weyl group element: canonical reduced word (node positions) plus the
/// matrix of its action on coweights and the matrix of its inverse. The word
/// is canonical, so word equality coincides with matrix equality.
#[derive(Debug, Clone)]
pub struct WeylElt {
    word: Vec<usize>,
    matrix: Vec<i64>,
    matrix_inv: Vec<i64>,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}
impl Eq for WeylElt {}
impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for WeylElt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}
impl std::hash::Hash for WeylElt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

impl WeylElt {
    pub fn identity(datum: &RootDatum) -> WeylElt {
        WeylElt {
            word: Vec::new(),
            matrix: identity_matrix(datum.rank()),
            matrix_inv: identity_matrix(datum.rank()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Canonical reduced word as node positions.
    pub fn word_positions(&self) -> &[usize] {
        &self.word
    }

    /// Canonical reduced word as node labels.
    pub fn word_labels(&self, datum: &RootDatum) -> Vec<i64> {
        self.word.iter().map(|i| datum.label(*i)).collect()
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }
}

/// Compact word rendering: `s1*s2`, or `e` for the identity.
pub fn weyl_word_string(datum: &RootDatum, w: &WeylElt) -> String {
    if w.is_identity() {
        return "e".to_string();
    }
    w.word
        .iter()
        .map(|i| format!("s{}", datum.label(*i)))
        .collect::<Vec<_>>()
        .join("*")
}

/// Reduce an arbitrary word to the canonical (lex-least) reduced word by
/// repeatedly extracting the smallest left descent; deletions use the strong
/// exchange condition on transported prefix roots.
fn canonical_word(datum: &RootDatum, word: &[usize]) -> Vec<usize> {
    let k = datum.num_nodes();
    let mut rest: Vec<usize> = word.to_vec();
    let mut out = Vec::new();
    'outer: loop {
        // Smallest j with (s_rest)^{-1}(alpha_j) < 0.
        for j in 0..k {
            let mut g = simple_real_root(datum, j);
            for &i in rest.iter() {
                g = reflect_real_root(datum, i, &g);
            }
            if !g.is_positive() {
                // Find the letter to delete: the prefix transport hitting alpha_j.
                let target = simple_real_root(datum, j);
                let mut pos = None;
                for t in 0..rest.len() {
                    let r = apply_word_to_root(datum, &rest[..t], &simple_real_root(datum, rest[t]));
                    if r == target || r == target.neg() {
                        pos = Some(t);
                        break;
                    }
                }
                let t = pos.expect("strong exchange: a deletable letter must exist");
                rest.remove(t);
                out.push(j);
                continue 'outer;
            }
        }
        // No left descent: rest represents the identity.
        return out;
    }
}

/// Build an element from a word of node positions (any word; canonicalized).
pub fn weyl_from_positions(datum: &RootDatum, word: &[usize]) -> WeylElt {
    for &i in word {
        assert!(i < datum.num_nodes(), "node position {} out of range", i);
    }
    let canon = canonical_word(datum, word);
    let r = datum.rank();
    let mut matrix = identity_matrix(r);
    for &i in &canon {
        // w = s_{i1} ... s_{im} acts as M_{i1} ... M_{im}.
        matrix = mat_mul(&matrix, &datum.reflection_matrix(i), r);
    }
    let mut matrix_inv = identity_matrix(r);
    for &i in canon.iter().rev() {
        matrix_inv = mat_mul(&matrix_inv, &datum.reflection_matrix(i), r);
    }
    WeylElt { word: canon, matrix, matrix_inv }
}

/// Build an element from a word of node labels.
pub fn weyl_from_word(datum: &RootDatum, labels: &[i64]) -> Result<WeylElt> {
    let mut word = Vec::with_capacity(labels.len());
    for &l in labels {
        let i = datum
            .node_by_label(l)
            .ok_or_else(|| Error::Usage(format!("no Cartan node labeled {}", l)))?;
        word.push(i);
    }
    Ok(weyl_from_positions(datum, &word))
}

pub fn weyl_simple(datum: &RootDatum, i: usize) -> WeylElt {
    weyl_from_positions(datum, &[i])
}

pub fn weyl_mul(datum: &RootDatum, a: &WeylElt, b: &WeylElt) -> WeylElt {
    let mut word = a.word.clone();
    word.extend_from_slice(&b.word);
    weyl_from_positions(datum, &word)
}

pub fn weyl_inverse(datum: &RootDatum, a: &WeylElt) -> WeylElt {
    let word: Vec<usize> = a.word.iter().rev().copied().collect();
    weyl_from_positions(datum, &word)
}

/// w(mu) on coweights.
pub fn weyl_apply(datum: &RootDatum, w: &WeylElt, mu: &Coweight) -> Coweight {
    Coweight::new(mat_apply(&w.matrix, &mu.coords, datum.rank()))
}

/// w(f) on covectors: <w(f), mu> = <f, w^{-1}(mu)>.
pub fn weyl_apply_functional(datum: &RootDatum, w: &WeylElt, f: &[i64]) -> Vec<i64> {
    let r = datum.rank();
    let mut out = vec![0i64; r];
    for (i, fi) in f.iter().enumerate() {
        if *fi == 0 {
            continue;
        }
        for j in 0..r {
            out[j] = cadd(out[j], cmul(*fi, w.matrix_inv[i * r + j]));
        }
    }
    out
}

/// w(gamma) on real roots, transporting the full triple.
pub fn weyl_apply_root(datum: &RootDatum, w: &WeylElt, g: &RealRoot) -> RealRoot {
    apply_word_to_root(datum, &w.word, g)
}

/// True iff l(w s_i) < l(w), i.e. w(alpha_i) < 0.
pub fn has_right_descent(datum: &RootDatum, w: &WeylElt, i: usize) -> bool {
    !weyl_apply_root(datum, w, &simple_real_root(datum, i)).is_positive()
}

/// Smallest i with l(s_i w) < l(w); None for the identity. For a canonical
/// word this is its first letter.
pub fn left_descent(datum: &RootDatum, w: &WeylElt) -> Option<usize> {
    let _ = datum;
    w.word.first().copied()
}

/// Inversion set Inv(w) = { gamma > 0 : w(gamma) < 0 }, via the telescoping
/// formula on the canonical reduced word. Sorted by root coordinates.
pub fn weyl_inversions(datum: &RootDatum, w: &WeylElt) -> Vec<RealRoot> {
    let m = w.word.len();
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let mut t = simple_real_root(datum, w.word[k]);
        for j in (k + 1)..m {
            t = reflect_real_root(datum, w.word[j], &t);
        }
        debug_assert!(t.is_positive());
        out.push(t);
    }
    out.sort();
    debug_assert!(out.windows(2).all(|p| p[0] != p[1]), "reduced word gave repeated inversion");
    out
}

/// Bruhat order on the Coxeter group, by the standard left-descent recursion.
pub fn bruhat_le_coxeter(datum: &RootDatum, u: &WeylElt, v: &WeylElt) -> bool {
    if u.len() > v.len() {
        return false;
    }
    if u.is_identity() {
        return true;
    }
    let Some(s) = left_descent(datum, v) else {
        return u.is_identity();
    };
    let sv = weyl_mul(datum, &weyl_simple(datum, s), v);
    let su = weyl_mul(datum, &weyl_simple(datum, s), u);
    if su.len() < u.len() {
        bruhat_le_coxeter(datum, &su, &sv)
    } else {
        bruhat_le_coxeter(datum, u, &sv)
    }
}

/// Demazure (star) product: fold v's reduced word onto u, keeping only
/// length-increasing letters.
pub fn demazure_product_coxeter(datum: &RootDatum, u: &WeylElt, v: &WeylElt) -> WeylElt {
    let mut x = u.clone();
    for &i in &v.word {
        if !has_right_descent(datum, &x, i) {
            let mut word = x.word.clone();
            word.push(i);
            x = weyl_from_positions(datum, &word);
        }
    }
    x
}

// ---- Root enumeration ----

/// Positive real roots. Finite class: all of them (`deg_max` ignored).
/// Untwisted-affine: all with delta-degree (coefficient on alpha_0) <= deg_max.
/// Sorted by coordinates.
pub fn real_roots_up_to(datum: &RootDatum, deg_max: i64) -> Vec<RealRoot> {
    match datum.class() {
        DatumClass::Finite => {
            let simples: Vec<usize> = (0..datum.num_nodes()).collect();
            let mut all = positive_closure(datum, &simples);
            all.sort();
            all
        }
        DatumClass::UntwistedAffine => {
            assert!(deg_max >= 0, "delta-degree bound must be nonnegative");
            // Finite subsystem lives on nodes 1.. (node 0 is the affine node).
            let fin_nodes: Vec<usize> = (1..datum.num_nodes()).collect();
            let fin_pos = positive_closure(datum, &fin_nodes);
            let marks = datum.marks().expect("affine datum has marks");
            let level = datum.level_functional().expect("affine datum has level");
            let mut out = Vec::new();
            for k in 0..=deg_max {
                for bf in &fin_pos {
                    for sign in [1i64, -1] {
                        if sign < 0 && k == 0 {
                            continue; // -beta + 0*delta is negative
                        }
                        let coords: Vec<i64> = marks
                            .iter()
                            .zip(&bf.coords)
                            .map(|(m, c)| cadd(cmul(k, *m), cmul(sign, *c)))
                            .collect();
                        let functional: Vec<i64> = level
                            .iter()
                            .zip(&bf.functional)
                            .map(|(l, f)| cadd(cmul(k, *l), cmul(sign, *f)))
                            .collect();
                        out.push(complete_root(datum, coords, functional));
                    }
                }
            }
            out.sort();
            out
        }
    }
}

/// Closure of the simple roots at the given nodes under those nodes'
/// reflections, keeping positive roots. Terminates for finite subsystems.
fn positive_closure(datum: &RootDatum, nodes: &[usize]) -> Vec<RealRoot> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out: Vec<RealRoot> = Vec::new();
    let mut frontier: Vec<RealRoot> = nodes.iter().map(|i| simple_real_root(datum, *i)).collect();
    for g in &frontier {
        seen.insert(g.coords.clone());
    }
    out.extend(frontier.iter().cloned());
    let cap = 1_000_000;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for &i in nodes {
                let h = reflect_real_root(datum, i, g);
                if h.is_positive() && seen.insert(h.coords.clone()) {
                    next.push(h.clone());
                    out.push(h);
                }
            }
        }
        assert!(out.len() <= cap, "positive root closure exceeded cap");
        frontier = next;
    }
    out
}

/// Build the RealRoot for given positive-root coords/functional by descending
/// to a simple root and transporting its coroot back up.
fn complete_root(datum: &RootDatum, coords: Vec<i64>, functional: Vec<i64>) -> RealRoot {
    let mut g = RealRoot { coords, functional, coroot: vec![] };
    let mut word = Vec::new();
    loop {
        if let Some(i) = g.is_simple() {
            let mut coroot = datum.simple_coroot(i).to_vec();
            for &j in word.iter().rev() {
                let q = dot(datum.simple_root_functional(j), &coroot);
                for (x, a) in coroot.iter_mut().zip(datum.simple_coroot(j)) {
                    *x = cadd(*x, -cmul(q, *a));
                }
            }
            // Rebuild the original root data (g was mutated on the way down).
            let mut back = simple_real_root(datum, i);
            for &j in word.iter().rev() {
                back = reflect_real_root(datum, j, &back);
            }
            debug_assert_eq!(back.coroot, coroot);
            return back;
        }
        let j = (0..datum.num_nodes())
            .find(|j| dot(&g.functional, datum.simple_coroot(*j)) > 0)
            .expect("positive real root pairs positively with some simple coroot");
        // s_j lowers height and keeps the root positive (g != alpha_j here).
        let p = dot(&g.functional, datum.simple_coroot(j));
        g.coords[j] = cadd(g.coords[j], -p);
        g.functional = g
            .functional
            .iter()
            .zip(datum.simple_root_functional(j))
            .map(|(x, a)| cadd(*x, -cmul(p, *a)))
            .collect();
        word.push(j);
        debug_assert!(g.coords.iter().all(|c| *c >= 0), "descent left the positive cone");
    }
}

/// The reflection s_gamma in W, for a real root gamma.
pub fn reflection_from_root(datum: &RootDatum, g: &RealRoot) -> WeylElt {
    let gp = if g.is_positive() { g.clone() } else { g.neg() };
    // Descend gp to a simple root alpha_i: gp = s_{j1} ... s_{jt}(alpha_i).
    let mut cur = gp;
    let mut word = Vec::new();
    let i = loop {
        if let Some(i) = cur.is_simple() {
            break i;
        }
        let j = (0..datum.num_nodes())
            .find(|j| dot(&cur.functional, datum.simple_coroot(*j)) > 0)
            .expect("positive real root pairs positively with some simple coroot");
        cur = reflect_real_root(datum, j, &cur);
        word.push(j);
    };
    // s_gamma = (s_{j1}...s_{jt}) s_i (s_{jt}...s_{j1}).
    let mut full = word.clone();
    full.push(i);
    full.extend(word.iter().rev());
    weyl_from_positions(datum, &full)
}

// ---- Enumeration ----

/// All elements of a finite Weyl group, sorted by (length, canonical word).
pub fn weyl_all(datum: &RootDatum) -> Result<Vec<WeylElt>> {
    if datum.class() != DatumClass::Finite {
        return Err(Error::Usage(
            "full Weyl group enumeration requires a finite-class datum".into(),
        ));
    }
    Ok(weyl_ball(datum, usize::MAX))
}

/// Ball of elements with length <= radius, sorted by (length, canonical word).
pub fn weyl_ball(datum: &RootDatum, radius: usize) -> Vec<WeylElt> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = vec![WeylElt::identity(datum)];
    seen.insert(Vec::new());
    let mut frontier = vec![WeylElt::identity(datum)];
    let mut len = 0usize;
    while !frontier.is_empty() && len < radius {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..datum.num_nodes() {
                if !has_right_descent(datum, w, i) {
                    let mut word = w.word.clone();
                    word.push(i);
                    let x = weyl_from_positions(datum, &word);
                    debug_assert_eq!(x.len(), w.len() + 1);
                    if seen.insert(x.word.clone()) {
                        next.push(x.clone());
                        out.push(x);
                    }
                }
            }
        }
        frontier = next;
        len += 1;
    }
    out.sort();
    out
}

// ---- Dominant conjugation and the Tits cone ----

/// Write mu = w(lambda) with lambda dominant and w of minimal length, by the
/// greedy raising walk (repeatedly reflect at the smallest negative simple
/// pairing). Errors with `NotInCone` when no dominant conjugate exists.
pub fn dominant_conjugate(datum: &RootDatum, mu: &Coweight) -> Result<(Coweight, WeylElt)> {
    if datum.is_affine() {
        let lvl = datum.level_of(mu);
        if lvl < 0 {
            return Err(Error::NotInCone(format!(
                "level {} is negative",
                lvl
            )));
        }
        if lvl == 0 {
            let fixed = (0..datum.num_nodes()).all(|i| datum.pair_simple(i, mu) == 0);
            if fixed {
                return Ok((mu.clone(), WeylElt::identity(datum)));
            }
            return Err(Error::NotInCone(
                "level 0 but not W-fixed (not a multiple of delta)".into(),
            ));
        }
    }
    let mut nu = mu.clone();
    let mut letters = Vec::new();
    let cap = 1_000_000usize;
    loop {
        let mut raised = false;
        for i in 0..datum.num_nodes() {
            if datum.pair_simple(i, &nu) < 0 {
                nu = datum.reflect_coweight(i, &nu);
                letters.push(i);
                raised = true;
                break;
            }
        }
        if !raised {
            break;
        }
        if letters.len() > cap {
            return Err(Error::InternalBound(
                "dominant raising walk exceeded its cap".into(),
            ));
        }
    }
    let w = weyl_from_positions(datum, &letters);
    debug_assert_eq!(w.len(), letters.len(), "raising walk word must be reduced");
    debug_assert_eq!(weyl_apply(datum, &w, &nu), *mu);
    Ok((nu, w))
}

/// Membership of mu in the Tits cone: always true for finite class; for
/// untwisted-affine, positive level, or level zero and W-fixed.
pub fn tits_cone_contains(datum: &RootDatum, mu: &Coweight) -> bool {
    match datum.class() {
        DatumClass::Finite => true,
        DatumClass::UntwistedAffine => {
            let lvl = datum.level_of(mu);
            if lvl > 0 {
                true
            } else if lvl < 0 {
                false
            } else {
                (0..datum.num_nodes()).all(|i| datum.pair_simple(i, mu) == 0)
            }
        }
    }
}

/// <rho, mu> as an exact QExponent (delegates to the datum).
pub fn rho_pair(datum: &RootDatum, mu: &Coweight) -> QExponent {
    datum.rho_pair(mu)
}

// ---- Tests ----
