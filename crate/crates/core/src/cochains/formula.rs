//! Closed-form dimensions for `s ≥ 3`.
//!
//! Write `n = ms + r` with `0 ≤ r < s`. Everything depends on `r` and on whether
//! the pair `(s, m)` is odd-odd away from characteristic 2.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `s` even, `m` even, or characteristic 2.
    Surviving,
    /// `s` odd, `m` odd, characteristic not 2.
    Vanishing,
}

pub fn regime(m: usize, s: usize, field: FieldSpec) -> Regime {
    if s % 2 == 0 || m % 2 == 0 || field.is_char_two() {
        Regime::Surviving
    } else {
        Regime::Vanishing
    }
}

fn split(n: usize, s: usize) -> Result<(usize, usize)> {
    if s < 3 {
        return Err(Error::FormulaOutOfRange(s));
    }
    Ok((n / s, n % s))
}

/// `dim HHⁿ(Λ_s)`.
pub fn hh_dimension_formula(n: usize, s: usize, field: FieldSpec) -> Result<usize> {
    let (m, r) = split(n, s)?;
    if regime(m, s, field) == Regime::Vanishing {
        return Ok(0);
    }
    Ok(match r {
        0 => m * s + 1,
        1 => 2 * m * s + 4,
        2 => m * s + 3,
        _ => 0,
    })
}

/// `(dim Im ∂̂ⁿ⁺¹, dim Ker ∂̂ⁿ⁺¹)`.
pub fn im_ker_dimension_formula(n: usize, s: usize, field: FieldSpec) -> Result<(usize, usize)> {
    let (m, r) = split(n, s)?;
    let ms = m * s;
    let vanishing = regime(m, s, field) == Regime::Vanishing;
    Ok(match (r, vanishing) {
        (0, true) => (s * (ms + 1), 0),
        (0, false) => ((s - 1) * (ms + 1), ms + 1),
        (1, true) => (s * (ms + 3), s * (ms + 1)),
        (1, false) => ((s - 1) * (ms + 3), (s + 1) * (ms + 1) + 2),
        (2, _) => (0, s * (ms + 3)),
        _ => (0, 0),
    })
}

/// Short description of the case a degree falls into, e.g. `"m=1 r=0 vanishing"`.
pub fn branch_label(n: usize, s: usize, field: FieldSpec) -> Option<String> {
    let (m, r) = split(n, s).ok()?;
    let tag = match regime(m, s, field) {
        Regime::Surviving => "surviving",
        Regime::Vanishing => "vanishing",
    };
    Some(format!("m={m} r={r} {tag}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_s_rejected() {
        assert_eq!(hh_dimension_formula(4, 2, FieldSpec::RATIONALS), Err(Error::FormulaOutOfRange(2)));
        assert!(im_ker_dimension_formula(0, 1, FieldSpec::RATIONALS).is_err());
    }

    #[test]
    fn s3_sequence() {
        let q: Vec<usize> = (0..10).map(|n| hh_dimension_formula(n, 3, FieldSpec::RATIONALS).unwrap()).collect();
        assert_eq!(q, [1, 4, 3, 0, 0, 0, 7, 16, 9, 0]);
        let f2: Vec<usize> = (0..4).map(|n| hh_dimension_formula(n, 3, FieldSpec::prime(2)).unwrap()).collect();
        assert_eq!(f2, [1, 4, 3, 4]);
    }

    #[test]
    fn formulas_are_consistent() {
        // dim HHⁿ = dim Ker ∂̂ⁿ⁺¹ - dim Im ∂̂ⁿ, dim Q̂ⁿ = rank + nullity
        for p in [0, 2, 3] {
            let f = FieldSpec::new(p).unwrap();
            for s in 3..=8 {
                for n in 1..6 * s {
                    let (_, ker) = im_ker_dimension_formula(n, s, f).unwrap();
                    let (im_prev, _) = im_ker_dimension_formula(n - 1, s, f).unwrap();
                    assert_eq!(hh_dimension_formula(n, s, f).unwrap(), ker - im_prev, "s={s} n={n} p={p}");
                    let (im, _) = im_ker_dimension_formula(n, s, f).unwrap();
                    let hom = match n % s {
                        0 | 2 => s * (n + 1),
                        1 => 2 * s * (n + 1),
                        _ => 0,
                    };
                    assert_eq!(im + ker, hom, "s={s} n={n} p={p}");
                }
            }
        }
    }
}
