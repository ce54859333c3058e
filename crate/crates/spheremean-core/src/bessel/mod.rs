//! Normalized Bessel functions, their derivatives, and zero sequences.
//!
//! Everything in this crate is driven by
//! `j_nu(z) = Gamma(nu+1) (2/z)^nu J_nu(z)` — an even entire function with
//! `j_nu(0) = 1` — evaluated at real arguments, by the derivative expansion
//!
//! ```text
//! j_nu^{(l)}(z) = sum_{k=ceil(l/2)}^{l} C_{l,k} z^{2k-l} j_{nu+k}(z)
//! ```
//!
//! with exact rational coefficients (see [`deriv_coeffs`]), and by the
//! certified zero sequences `a_m^{(nu,l)}` of `j_nu^{(l)}` ([`find_zeros`]).

mod coeffs;
mod eval;
mod zeros;

pub use coeffs::{deriv_coeffs, CoeffTable};
pub use eval::{
    eval_j, eval_j_asymptotic, eval_j_half_integer, eval_j_series, gamma_nu_plus_one,
};
pub use zeros::{find_zeros, ZeroSequence};

use crate::{Error, Result};

/// Bessel order `nu`, validated to the admissible domain `nu > -1`.
///
/// The operators in this crate only ever produce `nu = n/2 - 1 + k` for
/// `n` in `1..=3` and `k >= 0` (half-integers from `-1/2` up and the
/// non-negative integers), but any real order above `-1` is accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    nu: f64,
}

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= -1.0 {
            return Err(Error::OrderDomain { nu });
        }
        Ok(BesselOrder { nu })
    }

    pub fn get(self) -> f64 {
        self.nu
    }

    /// The shifted order `nu + k` appearing in the derivative expansion.
    pub fn shifted(self, k: u32) -> BesselOrder {
        BesselOrder {
            nu: self.nu + k as f64,
        }
    }
}

impl core::fmt::Display for BesselOrder {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.nu)
    }
}

/// The `l`-th derivative of `j_nu` at `x`, via the coefficient expansion.
///
/// Even in `x` for even `l`, odd for odd `l`; the zeroth derivative is
/// [`eval_j`] itself.
pub fn eval_j_deriv(order: BesselOrder, ell: u32, x: f64) -> f64 {
    if ell == 0 {
        return eval_j(order, x);
    }
    let ax = x.abs();
    let nu = order.get();
    let mut sum = 0.0;
    for k in ell.div_ceil(2)..=ell {
        let coeff = coeffs::coeff_f64(ell, k, nu);
        let power = libm::pow(ax, (2 * k - ell) as f64);
        sum += coeff * power * eval_j(order.shifted(k), ax);
    }
    if x < 0.0 && ell % 2 == 1 {
        -sum
    } else {
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(nu: f64) -> BesselOrder {
        BesselOrder::new(nu).unwrap()
    }

    #[test]
    fn order_domain_is_enforced() {
        assert!(BesselOrder::new(-1.0).is_err());
        assert!(BesselOrder::new(-1.5).is_err());
        assert!(BesselOrder::new(f64::NAN).is_err());
        assert!(BesselOrder::new(-0.999).is_ok());
    }

    #[test]
    fn zeroth_derivative_is_the_function() {
        for x in [0.0, 0.8, 7.7, 31.0] {
            assert_eq!(eval_j_deriv(ord(0.3), 0, x), eval_j(ord(0.3), x));
        }
    }

    #[test]
    fn odd_derivative_vanishes_at_origin() {
        assert_eq!(eval_j_deriv(ord(0.0), 1, 0.0), 0.0);
        assert_eq!(eval_j_deriv(ord(1.5), 3, 0.0), 0.0);
    }

    #[test]
    fn sinc_derivative_closed_form() {
        // d/dx (sin x / x) at pi/2 is -4/pi^2.
        let x = core::f64::consts::FRAC_PI_2;
        let expected = -4.0 / (core::f64::consts::PI * core::f64::consts::PI);
        assert!((eval_j_deriv(ord(0.5), 1, x) - expected).abs() < 1e-14);
    }

    #[test]
    fn parity_in_x() {
        for ell in 1..=4u32 {
            for x in [0.9, 4.2, 17.0] {
                let plus = eval_j_deriv(ord(0.5), ell, x);
                let minus = eval_j_deriv(ord(0.5), ell, -x);
                let expected = if ell % 2 == 0 { plus } else { -plus };
                assert_eq!(minus.to_bits(), expected.to_bits());
            }
        }
    }

    #[test]
    fn first_derivative_identity() {
        // j_nu'(x) = -x j_{nu+1}(x) / (2(nu+1)) on a coarse grid.
        for nu in [-0.5, 0.0, 0.5, 1.0, 1.5] {
            let mut x = 0.0;
            while x <= 100.0 {
                let lhs = eval_j_deriv(ord(nu), 1, x);
                let rhs = -x * eval_j(ord(nu + 1.0), x) / (2.0 * (nu + 1.0));
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * (1.0 + eval_j(ord(nu), x).abs()),
                    "nu={nu} x={x}: {lhs} vs {rhs}"
                );
                x += 0.37;
            }
        }
    }
}
