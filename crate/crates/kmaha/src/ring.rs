//! Exact coefficient arithmetic.
//!
//! `LaurentPoly` is a Laurent polynomial in q^(1/N) with BigInt coefficients;
//! exponents are stored as integer numerators over a fixed denominator N, so
//! q itself has numerator N. `CharacterValue` extends this by a formal unit
//! phase ε with ε^(2N) = 1, used by the sign character. Terms live in ordered
//! maps, so every value has one canonical form and printing is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent of q as a rational with fixed denominator: value = num / n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QExponent {
    pub num: i64,
    pub n: u32,
}

impl QExponent {
    pub fn new(num: i64, n: u32) -> Self {
        assert!(n >= 1, "exponent denominator must be >= 1");
        QExponent { num, n }
    }

    pub fn zero(n: u32) -> Self {
        QExponent::new(0, n)
    }

    pub fn is_integer(&self) -> bool {
        self.num % self.n as i64 == 0
    }

    pub fn checked_add(&self, other: &QExponent) -> Result<QExponent> {
        if self.n != other.n {
            return Err(Error::DatumMismatch(format!(
                "exponent denominators {} vs {}",
                self.n, other.n
            )));
        }
        let num = self
            .num
            .checked_add(other.num)
            .ok_or_else(|| Error::InternalBound("q-exponent overflow in addition".into()))?;
        Ok(QExponent::new(num, self.n))
    }
}

impl fmt::Display for QExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = gcd(self.num.unsigned_abs(), self.n as u64).max(1);
        let num = self.num / g as i64;
        let den = self.n as u64 / g;
        if den == 1 {
            write!(f, "{}", num)
        } else {
            write!(f, "{}/{}", num, den)
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// ---- Laurent polynomials ----

/// Laurent polynomial in q^(1/N) over ℤ. Keys are exponent numerators
/// (denominator N is shared); zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    n: u32,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1);
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: u32) -> Self {
        LaurentPoly::from_int(n, BigInt::one())
    }

    /// The variable q (exponent numerator N).
    pub fn q(n: u32) -> Self {
        LaurentPoly::monomial(n, n as i64, BigInt::one())
    }

    /// q - 1, ubiquitous in Hecke relations.
    pub fn q_minus_one(n: u32) -> Self {
        let mut p = LaurentPoly::q(n);
        p.add_term(0, -BigInt::one());
        p
    }

    pub fn from_int(n: u32, c: BigInt) -> Self {
        LaurentPoly::monomial(n, 0, c)
    }

    /// c * q^(num/N).
    pub fn monomial(n: u32, num: i64, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(num, c);
        }
        LaurentPoly { n, terms }
    }

    pub fn q_power(exp: QExponent) -> Self {
        LaurentPoly::monomial(exp.n, exp.num, BigInt::one())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate (exponent numerator, coefficient) in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, num: i64) -> BigInt {
        self.terms.get(&num).cloned().unwrap_or_else(BigInt::zero)
    }

    /// If this is a single monomial, return (exponent numerator, coefficient).
    pub fn as_monomial(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn min_exp(&self) -> Option<QExponent> {
        self.terms.keys().next().map(|e| QExponent::new(*e, self.n))
    }

    pub fn max_exp(&self) -> Option<QExponent> {
        self.terms.keys().next_back().map(|e| QExponent::new(*e, self.n))
    }

    /// Coefficient of the lowest-exponent term (None for zero).
    pub fn min_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    /// Coefficient of the highest-exponent term (None for zero).
    pub fn max_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub(crate) fn add_term(&mut self, num: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(num) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_n(&self, other: &LaurentPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DatumMismatch(format!(
                "Laurent polynomials over q^(1/{}) vs q^(1/{})",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by the monomial q^(num/N).
    pub fn shift(&self, num: i64) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.n);
        for (e, c) in self.iter() {
            let e2 = e
                .checked_add(num)
                .ok_or_else(|| Error::InternalBound("q-exponent overflow in shift".into()))?;
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }
}

/// Product of two Laurent polynomials (exact, exponentwise checked).
pub fn laurent_mul(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    a.check_same_n(b)?;
    let mut out = LaurentPoly::zero(a.n);
    for (ea, ca) in a.iter() {
        for (eb, cb) in b.iter() {
            let e = ea
                .checked_add(eb)
                .ok_or_else(|| Error::InternalBound("q-exponent overflow in product".into()))?;
            out.add_term(e, ca * cb);
        }
    }
    Ok(out)
}

/// Evaluate at q = 0. Defined only for honest polynomials in q (all exponents
/// integers >= 0); the constant term survives, everything else vanishes.
pub fn laurent_specialize_q0(p: &LaurentPoly) -> Result<BigInt> {
    if !laurent_is_polynomial(p) {
        return Err(Error::NotAPolynomial(format!(
            "cannot set q = 0 in {}",
            p
        )));
    }
    Ok(p.coeff(0))
}

/// True iff every exponent is a nonnegative integer (element of ℤ[q]).
pub fn laurent_is_polynomial(p: &LaurentPoly) -> bool {
    p.iter().all(|(e, _)| e >= 0 && e % p.n as i64 == 0)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let pow = q_power_string(e, self.n);
            match pow {
                None => write!(f, "{}", mag)?,
                Some(p) => {
                    if mag.is_one() {
                        write!(f, "{}", p)?;
                    } else {
                        write!(f, "{}{}", mag, p)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Render q^(num/n): None for exponent 0, "q" for exponent 1, "q^k" for
/// integers, "q^(a/b)" in lowest terms otherwise.
fn q_power_string(num: i64, n: u32) -> Option<String> {
    if num == 0 {
        return None;
    }
    let n = n as i64;
    if num == n {
        return Some("q".to_string());
    }
    if num % n == 0 {
        return Some(format!("q^{}", num / n));
    }
    let g = gcd(num.unsigned_abs(), n as u64) as i64;
    Some(format!("q^({}/{})", num / g, n / g))
}

// ---- Character values ----

/// Element of the character target ring ℤ[q^(±1/N)][ε]/(ε^(2N) - 1).
/// Keys are (q-exponent numerator, phase) with phase reduced mod 2N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterValue {
    n: u32,
    terms: BTreeMap<(i64, u32), BigInt>,
}

impl CharacterValue {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1);
        CharacterValue { n, terms: BTreeMap::new() }
    }

    pub fn one(n: u32) -> Self {
        CharacterValue::monomial(n, 0, 0, BigInt::one())
    }

    /// c * q^(qnum/N) * ε^phase.
    pub fn monomial(n: u32, qnum: i64, phase: i64, c: BigInt) -> Self {
        let mut v = CharacterValue::zero(n);
        v.add_term(qnum, phase, c);
        v
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let mut v = CharacterValue::zero(p.n());
        for (e, c) in p.iter() {
            v.add_term(e, 0, c.clone());
        }
        v
    }

    /// Inverse of `from_laurent`; defined only when every phase is 0.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let mut p = LaurentPoly::zero(self.n);
        for (&(e, phase), c) in &self.terms {
            if phase != 0 {
                return None;
            }
            p.add_term(e, c.clone());
        }
        Some(p)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, u32), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    fn reduce_phase(&self, phase: i64) -> u32 {
        let m = 2 * self.n as i64;
        phase.rem_euclid(m) as u32
    }

    pub(crate) fn add_term(&mut self, qnum: i64, phase: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = (qnum, self.reduce_phase(phase));
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &CharacterValue) -> Result<CharacterValue> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for ((e, ph), c) in other.iter() {
            out.add_term(e, ph as i64, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> CharacterValue {
        CharacterValue {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> CharacterValue {
        if c.is_zero() {
            return CharacterValue::zero(self.n);
        }
        CharacterValue {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    fn check_same_n(&self, other: &CharacterValue) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DatumMismatch(format!(
                "character values with N = {} vs N = {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// If this value is a pure unit ±ε^p (no q dependence), fold the sign into
    /// the phase via ε^N = -1 and return the exponent mod 2N. Used to compare a
    /// formally computed character value with ±1 predicted as a power of ε.
    pub fn as_unit_phase(&self) -> Option<u32> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(qnum, phase), c) = self.terms.iter().next().unwrap();
        if qnum != 0 || !c.abs().is_one() {
            return None;
        }
        let folded = if c.is_negative() {
            phase as i64 + self.n as i64
        } else {
            phase as i64
        };
        Some(self.reduce_phase(folded))
    }
}

/// Product in ℤ[q^(±1/N)][ε]/(ε^(2N) - 1).
pub fn char_mul(a: &CharacterValue, b: &CharacterValue) -> Result<CharacterValue> {
    a.check_same_n(b)?;
    let mut out = CharacterValue::zero(a.n);
    for ((ea, pa), ca) in a.iter() {
        for ((eb, pb), cb) in b.iter() {
            let e = ea
                .checked_add(eb)
                .ok_or_else(|| Error::InternalBound("q-exponent overflow in char product".into()))?;
            out.add_term(e, pa as i64 + pb as i64, ca * cb);
        }
    }
    Ok(out)
}

impl fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((e, phase), c) in self.iter() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            match phase {
                0 => {}
                1 => parts.push("eps".to_string()),
                k => parts.push(format!("eps^{}", k)),
            }
            if let Some(p) = q_power_string(e, self.n) {
                parts.push(p);
            }
            if parts.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, parts.join("*"))?;
            }
        }
        Ok(())
    }
}

// ---- Tests ----
