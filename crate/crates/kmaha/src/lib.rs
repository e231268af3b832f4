//! Exact combinatorics and Hecke-algebra computations for Kac-Moody affine
//! Weyl semigroups: lengths, inversion sets, Bruhat raises, T-basis and
//! Bernstein-basis arithmetic, characters, and the q = 0 degeneration.
//!
//! Everything is exact: BigInt coefficients, rational q-exponents with a fixed
//! denominator N per datum, and overflow-checked lattice arithmetic. There is
//! no floating point anywhere.

pub mod affine;
pub mod coxhecke;
pub mod datum;
pub mod error;
pub mod kmhecke;
pub mod ring;
pub mod weyl;

pub use affine::{
    bruhat_ge_witness, inv_contains, inv_intersect, inv_plus_plus, kma_is_positive, kma_neg,
    kma_normal_pair, kma_normalize, kma_string, length_deficit, length_wt, reflection, wp_act,
    wp_canonical_string, wp_from, wp_from_weyl, wp_identity, wp_inverse, wp_mul, wp_simple,
    wp_translation, BruhatVerdict, KMAffineRoot, Side, WitnessBudget, WitnessStep, WPElt,
};
pub use coxhecke::{
    check_support_theorem, coxeter_inv_intersect, deficit_bijection, demazure_q0,
    downset_product_check, hw_add, hw_mul, hw_scale, hw_string, hw_t, hw_t_inverse, HWElt,
    SupportReport,
};
pub use datum::{build_datum, Coweight, DatumClass, RootDatum};
pub use error::{Error, Result};
pub use kmhecke::{
    bernstein_commute, bernstein_mul, bernstein_string, bernstein_to_t, check_conjecture_51,
    demazure_candidate, hecke_t_mul, sign_rep_bernstein, sign_rep_t, t_to_bernstein,
    tbasis_string, triv_rep_bernstein, triv_rep_t, BernsteinElt, ConjectureReport,
    DemazureOutcome, EngineLimits, TBasisElt, Verdict,
};
pub use ring::{
    char_mul, laurent_is_polynomial, laurent_mul, laurent_specialize_q0, CharacterValue,
    LaurentPoly, QExponent,
};
