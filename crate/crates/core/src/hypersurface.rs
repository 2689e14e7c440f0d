//! Invariants of a smooth degree-`d` hypersurface `X_d` in `CP^4`.
//!
//! `x` is the hyperplane class in `H^2(X_d)`, `y` generates `H^4(X_d)` and
//! `x^2 = d y`. Chern data is stored in the `x`-basis; conversion to the
//! `y`-basis multiplies by `d`.

use crate::exactalg::{ExactAlgError, TruncatedSeries};
use serde::Serialize;
use thiserror::Error;

/// Largest supported degree; keeps `d^4` comfortably inside `i64`.
pub const MAX_DEGREE: u32 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypersurfaceError {
    #[error("degree must satisfy 1 <= d <= {MAX_DEGREE}, got {0}")]
    DegreeOutOfRange(i64),
    #[error(transparent)]
    Series(#[from] ExactAlgError),
}

pub(crate) fn check_degree(d: i64) -> Result<i64, HypersurfaceError> {
    if d < 1 || d > MAX_DEGREE as i64 {
        return Err(HypersurfaceError::DegreeOutOfRange(d));
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypersurfaceInvariants {
    pub d: i64,
    /// `(c1, c2, c3)` as coefficients of `x, x^2, x^3`.
    pub chern: [i64; 3],
    pub euler_char: i64,
    pub b3: i64,
    pub g: i64,
    /// Coefficient of `y` in `p1`.
    pub p1_coeff: i64,
    pub spin: bool,
    /// Coefficient of `x^2` in `v4`, mod 2.
    pub v4_coeff_mod2: u8,
}

impl HypersurfaceInvariants {
    /// `c2` as a multiple of `y`.
    pub fn c2_y_basis(&self) -> i64 {
        x_squared_to_y(self.d, self.chern[1])
    }
}

/// Converts a coefficient of `x^2` into a coefficient of `y`.
pub fn x_squared_to_y(d: i64, coeff: i64) -> i64 {
    coeff * d
}

/// Total Chern class `(1+x)^5 / (1+dx)` over `Z`, through `x^max_degree`.
pub fn chern_series(d: i64, max_degree: usize) -> Result<TruncatedSeries, HypersurfaceError> {
    let d = check_degree(d)?;
    let num = TruncatedSeries::linear(0, max_degree, 1)?.pow(5);
    let den = TruncatedSeries::linear(0, max_degree, d)?;
    Ok(num.mul(&den.inv()?)?)
}

/// Total Chern class of the virtual bundle with the opposite sign,
/// `(1+dx) / (1+x)^5`, reduced mod `p` (or over `Z` for `p = 0`).
pub fn minus_theta_chern_series(d: i64, p: u64, max_degree: usize) -> Result<TruncatedSeries, HypersurfaceError> {
    let c = chern_series(d, max_degree)?.inv()?;
    Ok(if p == 0 { c } else { c.reduce(p)? })
}

pub fn compute_invariants(d: i64) -> Result<HypersurfaceInvariants, HypersurfaceError> {
    let c = chern_series(d, 3)?;
    let chern = [c.coeff_i64(1), c.coeff_i64(2), c.coeff_i64(3)];
    // <x^3, [X]> = d
    let euler_char = chern[2] * d;
    let b3 = 4 - euler_char;
    let p1_x2 = chern[0] * chern[0] - 2 * chern[1];
    let w = stiefel_whitney_series(d, 4)?;
    let (w2, w4) = (w.coeff_i64(1), w.coeff_i64(2));
    // w1 = w3 = 0: all classes sit in even degrees
    let v4 = (w4 + w2 * w2) % 2;
    Ok(HypersurfaceInvariants {
        d,
        chern,
        euler_char,
        b3,
        g: b3 / 2,
        p1_coeff: x_squared_to_y(d, p1_x2),
        spin: w2 == 0,
        v4_coeff_mod2: v4 as u8,
    })
}

/// Total Stiefel-Whitney class `(1+x)^5/(1+dx)` mod 2; the coefficient of
/// `x^k` is `w_{2k}`.
pub fn stiefel_whitney_series(d: i64, max_degree: usize) -> Result<TruncatedSeries, HypersurfaceError> {
    Ok(chern_series(d, max_degree)?.reduce(2)?)
}

/// The restriction of the quadratic refinement to the torsion summand
/// `Z/d` of `pi_3`, as a homomorphism to `Z/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EtaRestriction {
    pub d: i64,
    /// Image of the generator.
    pub image_of_generator: u8,
}

impl EtaRestriction {
    pub fn is_zero(&self) -> bool {
        self.image_of_generator == 0
    }

    pub fn is_surjective(&self) -> bool {
        self.image_of_generator == 1
    }

    pub fn apply(&self, a: i64) -> u8 {
        (a.rem_euclid(2) as u8) * self.image_of_generator
    }
}

/// Zero for odd `d` (no nonzero map `Z/d -> Z/2` exists), surjective for even `d`.
pub fn mu_restriction_on_eta(d: i64) -> Result<EtaRestriction, HypersurfaceError> {
    let d = check_degree(d)?;
    Ok(EtaRestriction {
        d,
        image_of_generator: if d % 2 == 0 { 1 } else { 0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_space_case() {
        let h = compute_invariants(1).unwrap();
        assert_eq!(h.chern, [4, 6, 4]);
        assert_eq!((h.euler_char, h.b3, h.g), (4, 0, 0));
    }

    #[test]
    fn quintic_and_cubic() {
        let h = compute_invariants(3).unwrap();
        assert_eq!((h.b3, h.g, h.p1_coeff, h.spin, h.v4_coeff_mod2), (10, 5, -12, true, 0));
        let h = compute_invariants(5).unwrap();
        assert_eq!((h.chern[0], h.euler_char), (0, -200));
        assert_eq!(h.b3, 204);
    }

    #[test]
    fn even_degree_is_not_spin() {
        for d in [2, 4, 6, 100] {
            let h = compute_invariants(d).unwrap();
            assert!(!h.spin);
            assert_eq!(h.v4_coeff_mod2, 1);
        }
        assert!(compute_invariants(0).is_err());
    }

    #[test]
    fn sw_series_even_degree() {
        let w = stiefel_whitney_series(2, 4).unwrap();
        assert_eq!((0..=4).map(|k| w.coeff_i64(k)).collect::<Vec<_>>(), vec![1, 1, 0, 0, 1]);
        let w = stiefel_whitney_series(3, 4).unwrap();
        assert_eq!((0..=4).map(|k| w.coeff_i64(k)).collect::<Vec<_>>(), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn eta_restriction() {
        assert!(mu_restriction_on_eta(3).unwrap().is_zero());
        assert!(mu_restriction_on_eta(1).unwrap().is_zero());
        let m = mu_restriction_on_eta(4).unwrap();
        assert!(m.is_surjective());
        assert_eq!(m.apply(3), 1);
    }
}
