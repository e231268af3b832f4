//! Enumeration of W ⋉ 𝒯 inside a coordinate box.
//!
//! The primary bound is a box on coweight coordinates, because ℓ can be
//! negative on W ⋉ 𝒯 and a length ball is not finite there; the |ℓ| bound
//! is a secondary filter.

use kmaha::weyl::{tits_cone_contains, weyl_ball};
use kmaha::{wp_from, Coweight, Error, Result, RootDatum, WPElt};

#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    /// Every coweight coordinate lies in [-max_coord, max_coord].
    pub max_coord: i64,
    /// Weyl factor length cap.
    pub max_weyl_len: usize,
    /// |ℓ(x)| cap (in units of 1, compared against the exact rational).
    pub max_abs_length: i64,
}

/// All π^μ w with μ in the Tits cone inside the box, ℓ(w) ≤ the Weyl cap,
/// and |ℓ(π^μ w)| within the length cap; sorted canonically, no duplicates.
pub fn enumerate_wt(datum: &RootDatum, bounds: &Bounds) -> Result<Vec<WPElt>> {
    if bounds.max_coord < 0 || bounds.max_abs_length < 0 {
        return Err(Error::Usage(format!(
            "enumeration bounds must be nonnegative, got box {} and length cap {}",
            bounds.max_coord, bounds.max_abs_length
        )));
    }
    let words = weyl_ball(datum, bounds.max_weyl_len);
    let n = datum.n() as i64;
    let mut out = Vec::new();
    let rank = datum.rank();
    let side = 2 * bounds.max_coord + 1;
    let mut count = 1i64;
    for _ in 0..rank {
        count = count.saturating_mul(side);
    }
    for idx in 0..count {
        let mut rem = idx;
        let mut coords = vec![0i64; rank];
        for c in coords.iter_mut() {
            *c = rem % side - bounds.max_coord;
            rem /= side;
        }
        let mu = Coweight::new(coords);
        if !tits_cone_contains(datum, &mu) {
            continue;
        }
        for w in &words {
            let x = wp_from(datum, mu.clone(), w.clone());
            let l = kmaha::length_wt(datum, &x)?;
            if l.num.abs() <= bounds.max_abs_length * n {
                out.push(x);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
