//! Root datum: the lattice, simple roots/coroots, Cartan matrix, and ρ data
//! that everything else is computed against.
//!
//! A datum is either `finite` (Weyl group required finite) or
//! `untwisted-affine` (node 0 is the affine node; the datum carries the
//! imaginary coweight δ and the level covector). Construction runs a
//! validation gauntlet; nothing downstream re-checks these invariants.
//!
//! Conventions: lattice elements ("coweights") are integer coordinate vectors
//! in a fixed basis; roots and other functionals are covectors paired via the
//! standard dot product. The Cartan matrix is `a[i][j] = <alpha_j, alpha_i^vee>`,
//! so `s_i(alpha_j) = alpha_j - a[i][j] alpha_i`.

use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ring::{gcd, QExponent};

// ---- Checked integer helpers ----

pub(crate) fn cadd(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("integer overflow: {} + {}", a, b))
}

pub(crate) fn cmul(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .unwrap_or_else(|| panic!("integer overflow: {} * {}", a, b))
}

/// Dot product of a covector with a lattice vector, overflow-checked.
pub(crate) fn dot(f: &[i64], v: &[i64]) -> i64 {
    assert_eq!(f.len(), v.len(), "covector/vector rank mismatch");
    f.iter().zip(v).fold(0, |acc, (a, b)| cadd(acc, cmul(*a, *b)))
}

// ---- Coweights ----

/// Element of the coweight lattice, as integer coordinates in the datum basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coweight {
    pub coords: Vec<i64>,
}

impl Coweight {
    pub fn new(coords: Vec<i64>) -> Self {
        Coweight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Coweight { coords: vec![0; rank] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == 0)
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| cadd(*a, *b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Coweight {
        Coweight { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: i64) -> Coweight {
        Coweight { coords: self.coords.iter().map(|c| cmul(*c, k)).collect() }
    }
}

// ---- Datum ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatumClass {
    Finite,
    UntwistedAffine,
}

impl fmt::Display for DatumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumClass::Finite => write!(f, "finite"),
            DatumClass::UntwistedAffine => write!(f, "untwisted-affine"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    name: String,
    class: DatumClass,
    labels: Vec<i64>,
    rank: usize,
    basis: Vec<String>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    rho_times_n: Vec<i64>,
    n: u32,
    // Affine-only data.
    delta: Option<Coweight>,
    level: Option<Vec<i64>>,
    marks: Option<Vec<i64>>,
}

/// On-disk datum description. `basis` and `labels` are optional; defaults are
/// e1..er and 0-based (affine) / 1-based (finite) node numbers.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct DatumConfig {
    name: String,
    class: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    rho_times_N: Vec<i64>,
    N: u32,
    labels: Option<Vec<i64>>,
    basis: Option<Vec<String>>,
    delta: Option<Vec<i64>>,
    level: Option<Vec<i64>>,
}

/// Build a datum from a built-in name (`A1`, `A2`, `A1aff`) or, if the
/// argument contains a `=`, from TOML text in the datum config format.
pub fn build_datum(desc: &str) -> Result<RootDatum> {
    if desc.contains('=') {
        let cfg: DatumConfig = toml::from_str(desc)
            .map_err(|e| Error::ConfigRejected(format!("TOML parse error: {}", e)))?;
        RootDatum::from_config(cfg)
    } else {
        match desc {
            "A1" => Ok(RootDatum::a1()),
            "A2" => Ok(RootDatum::a2()),
            "A1aff" => Ok(RootDatum::a1_affine()),
            other => Err(Error::ConfigRejected(format!(
                "unknown built-in datum `{}` (expected A1, A2, A1aff, or TOML text)",
                other
            ))),
        }
    }
}

impl RootDatum {
    // ---- Built-in datums ----

    /// Finite A1 with the full weight lattice P = Z·w1. Here rho = w1/2, so
    /// N = 2 and half-integer powers of q appear.
    pub fn a1() -> RootDatum {
        RootDatum::from_config(DatumConfig {
            name: "A1".into(),
            class: "finite".into(),
            rank: 1,
            cartan: vec![vec![2]],
            roots: vec![vec![1]],
            coroots: vec![vec![2]],
            rho_times_N: vec![1],
            N: 2,
            labels: Some(vec![1]),
            basis: Some(vec!["w1".into()]),
            delta: None,
            level: None,
        })
        .expect("built-in A1 datum is valid")
    }

    /// Finite A2 on the weight lattice with basis the fundamental coweights.
    pub fn a2() -> RootDatum {
        RootDatum::from_config(DatumConfig {
            name: "A2".into(),
            class: "finite".into(),
            rank: 2,
            cartan: vec![vec![2, -1], vec![-1, 2]],
            roots: vec![vec![1, 0], vec![0, 1]],
            coroots: vec![vec![2, -1], vec![-1, 2]],
            rho_times_N: vec![1, 1],
            N: 1,
            labels: Some(vec![1, 2]),
            basis: Some(vec!["w1".into(), "w2".into()]),
            delta: None,
            level: None,
        })
        .expect("built-in A2 datum is valid")
    }

    /// Untwisted affine A1 on the lattice with basis (L0, a1, d): L0 the level-1
    /// fundamental coweight, a1 the finite simple coroot, d the imaginary δ.
    pub fn a1_affine() -> RootDatum {
        RootDatum::from_config(DatumConfig {
            name: "A1aff".into(),
            class: "untwisted-affine".into(),
            rank: 3,
            cartan: vec![vec![2, -2], vec![-2, 2]],
            roots: vec![vec![1, -2, 0], vec![0, 2, 0]],
            coroots: vec![vec![0, -1, 1], vec![0, 1, 0]],
            rho_times_N: vec![0, 1, 2],
            N: 1,
            labels: Some(vec![0, 1]),
            basis: Some(vec!["L0".into(), "a1".into(), "d".into()]),
            delta: Some(vec![0, 0, 1]),
            level: Some(vec![1, 0, 0]),
        })
        .expect("built-in A1aff datum is valid")
    }

    // ---- Construction and validation ----

    fn from_config(cfg: DatumConfig) -> Result<RootDatum> {
        let reject = |check: &str| Err(Error::ConfigRejected(check.to_string()));

        let class = match cfg.class.as_str() {
            "finite" => DatumClass::Finite,
            "untwisted-affine" => DatumClass::UntwistedAffine,
            other => {
                return reject(&format!(
                    "class must be `finite` or `untwisted-affine`, got `{}`",
                    other
                ))
            }
        };
        let k = cfg.cartan.len();
        let rank = cfg.rank;
        if k == 0 {
            return reject("empty Cartan matrix");
        }
        if rank == 0 {
            return reject("rank must be at least 1");
        }
        if cfg.cartan.iter().any(|row| row.len() != k) {
            return reject("Cartan matrix is not square");
        }
        if cfg.roots.len() != k || cfg.coroots.len() != k {
            return reject("need exactly one root and one coroot per Cartan node");
        }
        if cfg.roots.iter().chain(&cfg.coroots).any(|v| v.len() != rank) {
            return reject("root/coroot vectors must have length `rank`");
        }
        if cfg.rho_times_N.len() != rank {
            return reject("rho_times_N must have length `rank`");
        }
        if cfg.N == 0 {
            return reject("N must be at least 1");
        }
        let labels = cfg.labels.unwrap_or_else(|| match class {
            DatumClass::Finite => (1..=k as i64).collect(),
            DatumClass::UntwistedAffine => (0..k as i64).collect(),
        });
        if labels.len() != k {
            return reject("labels must have one entry per Cartan node");
        }
        {
            let mut seen = labels.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != k {
                return reject("node labels must be distinct");
            }
        }
        let basis = cfg
            .basis
            .unwrap_or_else(|| (1..=rank).map(|i| format!("e{}", i)).collect());
        if basis.len() != rank {
            return reject("basis must have one symbol per lattice coordinate");
        }
        {
            let mut seen = basis.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != rank {
                return reject("basis symbols must be distinct");
            }
        }

        // Generalized Cartan matrix shape.
        for i in 0..k {
            if cfg.cartan[i][i] != 2 {
                return reject("Cartan diagonal entries must equal 2");
            }
            for j in 0..k {
                if i != j {
                    if cfg.cartan[i][j] > 0 {
                        return reject("Cartan off-diagonal entries must be <= 0");
                    }
                    if (cfg.cartan[i][j] == 0) != (cfg.cartan[j][i] == 0) {
                        return reject("Cartan zero pattern must be symmetric");
                    }
                }
            }
        }

        // Pairings realize the Cartan matrix: <alpha_j, alpha_i^vee> = a[i][j].
        for i in 0..k {
            for j in 0..k {
                if dot(&cfg.roots[j], &cfg.coroots[i]) != cfg.cartan[i][j] {
                    return reject(&format!(
                        "<alpha_{}, alpha_{}^vee> does not match the Cartan matrix",
                        labels[j], labels[i]
                    ));
                }
            }
        }

        // <rho, alpha_i^vee> = 1 for every i.
        for i in 0..k {
            if dot(&cfg.rho_times_N, &cfg.coroots[i]) != cfg.N as i64 {
                return reject(&format!(
                    "<rho, alpha_{}^vee> must equal 1",
                    labels[i]
                ));
            }
        }

        // N is the minimal denominator for <rho, -> on the lattice.
        let g = cfg
            .rho_times_N
            .iter()
            .fold(cfg.N as u64, |acc, v| gcd(acc, v.unsigned_abs()));
        if g != 1 {
            return reject("N is not minimal for rho (common factor in rho_times_N and N)");
        }

        // Simple roots (and coroots) linearly independent.
        if int_rank(&cfg.roots) != k {
            return reject("simple roots are linearly dependent");
        }
        if int_rank(&cfg.coroots) != k {
            return reject("simple coroots are linearly dependent");
        }

        let mut datum = RootDatum {
            name: cfg.name,
            class,
            labels,
            rank,
            basis,
            cartan: cfg.cartan,
            roots: cfg.roots,
            coroots: cfg.coroots,
            rho_times_n: cfg.rho_times_N,
            n: cfg.N,
            delta: None,
            level: None,
            marks: None,
        };

        match class {
            DatumClass::Finite => {
                if cfg.delta.is_some() || cfg.level.is_some() {
                    return reject("delta/level are only meaningful for untwisted-affine");
                }
                // W must actually be finite: close the reflection matrices.
                // (This also spot-checks faithfulness of the lattice action.)
                let order = datum.faithful_closure(None, 200_000)?;
                if order.is_none() {
                    return reject("class is `finite` but the Weyl group closure exceeded the cap");
                }
            }
            DatumClass::UntwistedAffine => {
                let delta = match cfg.delta {
                    Some(d) => Coweight::new(d),
                    None => return reject("untwisted-affine datum requires `delta`"),
                };
                if delta.coords.len() != rank {
                    return reject("delta must have length `rank`");
                }
                if delta.is_zero() {
                    return reject("delta must be nonzero");
                }
                let dg = delta
                    .coords
                    .iter()
                    .fold(0u64, |acc, v| gcd(acc, v.unsigned_abs()));
                if dg != 1 {
                    return reject("delta must be primitive in the lattice");
                }
                for i in 0..k {
                    if dot(&datum.roots[i], &delta.coords) != 0 {
                        return reject("delta must pair to zero with every simple root");
                    }
                }
                // Marks: primitive positive right kernel of the Cartan matrix,
                // normalized so the affine node (position 0) has mark 1.
                let marks = cartan_null_vector(&datum.cartan)
                    .ok_or_else(|| Error::ConfigRejected("Cartan matrix has no one-dimensional kernel (not affine type)".into()))?;
                if marks.iter().any(|m| *m <= 0) {
                    return reject("Cartan kernel vector is not strictly positive (not affine type)");
                }
                if marks[0] != 1 {
                    return reject("the affine node must be listed first (mark a_0 = 1)");
                }
                let level = match cfg.level {
                    Some(l) => l,
                    None => return reject("untwisted-affine datum requires `level`"),
                };
                if level.len() != rank {
                    return reject("level must have length `rank`");
                }
                // level = sum_i a_i alpha_i as a covector.
                let mut sum = vec![0i64; rank];
                for (i, m) in marks.iter().enumerate() {
                    for (s, r) in sum.iter_mut().zip(&datum.roots[i]) {
                        *s = cadd(*s, cmul(*m, *r));
                    }
                }
                if sum != level {
                    return reject("level covector must equal sum of marks times simple roots");
                }
                for i in 0..k {
                    if dot(&level, &datum.coroots[i]) != 0 {
                        return reject("level covector must be W-invariant");
                    }
                }
                datum.delta = Some(delta);
                datum.level = Some(level);
                datum.marks = Some(marks);
                // Faithfulness spot check on a word ball.
                if datum.faithful_closure(Some(8), 100_000)?.is_none() {
                    return reject("reflection ball exceeded cap during faithfulness check");
                }
            }
        }

        Ok(datum)
    }

    /// BFS closure of the lattice action paired with the geometric (root
    /// coordinate) representation, which is faithful for any Coxeter system.
    /// Two words agreeing on the lattice must agree geometrically, otherwise
    /// the lattice action is not faithful. Returns Some(group order seen) if
    /// the walk closes (or hits `depth`), None if `cap` is exceeded.
    fn faithful_closure(&self, depth: Option<usize>, cap: usize) -> Result<Option<usize>> {
        use std::collections::HashMap;
        let k = self.num_nodes();
        let r = self.rank;
        let lat_gens: Vec<Vec<i64>> = (0..k).map(|i| self.reflection_matrix(i)).collect();
        // Geometric rep on root coordinates: s_i sends e_j to e_j - a[i][j] e_i.
        let geo_gens: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut m = identity_matrix(k);
                for j in 0..k {
                    m[i * k + j] = cadd(m[i * k + j], -self.cartan[i][j]);
                }
                m
            })
            .collect();
        let start = (identity_matrix(r), identity_matrix(k));
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        seen.insert(start.0.clone(), start.1.clone());
        let mut frontier = vec![start];
        let mut level = 0usize;
        while !frontier.is_empty() && depth.map(|d| level < d).unwrap_or(true) {
            let mut next = Vec::new();
            for (lat, geo) in &frontier {
                for (lg, gg) in lat_gens.iter().zip(&geo_gens) {
                    let pl = mat_mul(lg, lat, r);
                    let pg = mat_mul(gg, geo, k);
                    match seen.get(&pl) {
                        Some(existing) => {
                            if *existing != pg {
                                return Err(Error::ConfigRejected(
                                    "reflection action on the lattice is not faithful".into(),
                                ));
                            }
                        }
                        None => {
                            seen.insert(pl.clone(), pg.clone());
                            next.push((pl, pg));
                            if seen.len() > cap {
                                return Ok(None);
                            }
                        }
                    }
                }
            }
            frontier = next;
            level += 1;
        }
        Ok(Some(seen.len()))
    }

    // ---- Accessors ----

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn class(&self) -> DatumClass {
        self.class
    }

    pub fn is_affine(&self) -> bool {
        self.class == DatumClass::UntwistedAffine
    }

    /// Number of Cartan nodes (simple reflections).
    pub fn num_nodes(&self) -> usize {
        self.cartan.len()
    }

    /// Lattice rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> i64 {
        self.labels[i]
    }

    pub fn node_by_label(&self, label: i64) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }

    pub fn basis_symbols(&self) -> &[String] {
        &self.basis
    }

    /// Simple root alpha_i as a covector.
    pub fn simple_root_functional(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    /// Simple coroot alpha_i^vee as a lattice vector.
    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn rho_times_n(&self) -> &[i64] {
        &self.rho_times_n
    }

    /// δ as a coweight (affine only).
    pub fn delta(&self) -> Option<&Coweight> {
        self.delta.as_ref()
    }

    /// Level covector (affine only).
    pub fn level_functional(&self) -> Option<&[i64]> {
        self.level.as_deref()
    }

    pub fn marks(&self) -> Option<&[i64]> {
        self.marks.as_deref()
    }

    /// <f, mu> for a covector f.
    pub fn pair(&self, f: &[i64], mu: &Coweight) -> i64 {
        dot(f, &mu.coords)
    }

    /// <alpha_i, mu>.
    pub fn pair_simple(&self, i: usize, mu: &Coweight) -> i64 {
        dot(&self.roots[i], &mu.coords)
    }

    /// <rho, mu> as an exact exponent (numerator over N).
    pub fn rho_pair(&self, mu: &Coweight) -> QExponent {
        QExponent::new(dot(&self.rho_times_n, &mu.coords), self.n)
    }

    /// Level of a coweight; 0 for finite class (every coweight is "level 0").
    pub fn level_of(&self, mu: &Coweight) -> i64 {
        match &self.level {
            Some(l) => dot(l, &mu.coords),
            None => 0,
        }
    }

    /// s_i acting on a coweight.
    pub fn reflect_coweight(&self, i: usize, mu: &Coweight) -> Coweight {
        let c = self.pair_simple(i, mu);
        let mut coords = mu.coords.clone();
        for (x, a) in coords.iter_mut().zip(&self.coroots[i]) {
            *x = cadd(*x, -cmul(c, *a));
        }
        Coweight { coords }
    }

    /// s_i acting on a covector.
    pub fn reflect_functional(&self, i: usize, f: &[i64]) -> Vec<i64> {
        let c = dot(f, &self.coroots[i]);
        f.iter()
            .zip(&self.roots[i])
            .map(|(x, a)| cadd(*x, -cmul(c, *a)))
            .collect()
    }

    /// Matrix of s_i acting on coweights (row-major rank x rank).
    pub fn reflection_matrix(&self, i: usize) -> Vec<i64> {
        let r = self.rank;
        let mut m = identity_matrix(r);
        for row in 0..r {
            for col in 0..r {
                m[row * r + col] =
                    cadd(m[row * r + col], -cmul(self.coroots[i][row], self.roots[i][col]));
            }
        }
        m
    }

    // ---- Rendering ----

    /// Canonical coweight string, e.g. `L0+4d`, `2L0-2d`, `0`.
    pub fn coweight_string(&self, mu: &Coweight) -> String {
        let mut out = String::new();
        for (c, sym) in mu.coords.iter().zip(&self.basis) {
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
            out.push_str(sym);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

// ---- Small integer linear algebra ----

pub(crate) fn identity_matrix(r: usize) -> Vec<i64> {
    let mut m = vec![0i64; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

/// Row-major product a*b of r x r matrices.
pub(crate) fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0i64; r * r];
    for i in 0..r {
        for k in 0..r {
            let aik = a[i * r + k];
            if aik == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] = cadd(out[i * r + j], cmul(aik, b[k * r + j]));
            }
        }
    }
    out
}

/// Matrix (row-major) applied to a column vector.
pub(crate) fn mat_apply(m: &[i64], v: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0i64; r];
    for i in 0..r {
        out[i] = dot(&m[i * r..(i + 1) * r], v);
    }
    out
}

/// Rank of an integer matrix given as rows, via fraction-free elimination.
fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|x| *x as i128).collect())
        .collect();
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let pivot = (rank..nrows).find(|r| m[*r][col] != 0);
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        for r in (rank + 1)..nrows {
            if m[r][col] == 0 {
                continue;
            }
            let (a, b) = (m[rank][col], m[r][col]);
            for c in col..ncols {
                m[r][c] = m[r][c] * a - m[rank][c] * b;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Determinant by Laplace expansion; fine for the small matrices we see.
fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut det = 0i128;
    for (j, &mj) in m[0].iter().enumerate() {
        if mj == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        det += s * mj * det_i128(&minor);
    }
    det
}

/// Primitive integer vector spanning the kernel of a square corank-1 matrix
/// (columns of the adjugate span the kernel when det = 0). Returns None if the
/// matrix is nonsingular or the kernel is not one-dimensional over the column
/// space we probe.
fn cartan_null_vector(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = a.len();
    let m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|x| *x as i128).collect())
        .collect();
    if det_i128(&m) != 0 {
        return None;
    }
    // adj(A)[i][j] = (-1)^(i+j) * det(minor_{j,i}); A * adj(A) = det(A) I = 0.
    for j in 0..n {
        let mut col = Vec::with_capacity(n);
        for i in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|r| *r != j)
                .map(|r| (0..n).filter(|c| *c != i).map(|c| m[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            col.push(s * det_i128(&minor));
        }
        if col.iter().any(|v| *v != 0) {
            let g = col.iter().fold(0u64, |acc, v| gcd(acc, v.unsigned_abs() as u64));
            let mut out: Vec<i64> = col.iter().map(|v| (*v / g as i128) as i64).collect();
            if out.iter().find(|v| **v != 0).map(|v| *v < 0).unwrap_or(false) {
                for v in &mut out {
                    *v = -*v;
                }
            }
            // Verify it is a genuine kernel vector (guards corank > 1 columns).
            for row in a {
                if dot(row, &out) != 0 {
                    return None;
                }
            }
            return Some(out);
        }
    }
    None
}

// ---- Tests ----
