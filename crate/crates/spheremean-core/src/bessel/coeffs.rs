//! Coefficient tables for the derivative expansion
//!
//! ```text
//! j_nu^{(l)}(z) = sum_{k} C_{l,k} z^{2k-l} j_{nu+k}(z),
//! ```
//!
//! where `k` runs over `ceil(l/2) ..= l`. The constants are computed two
//! independent ways and compared in exact rational arithmetic:
//!
//! * the row recurrence obtained by differentiating the expansion once
//!   (`C_{0,0} = 1` seeds it), with its even/odd row split;
//! * the closed form
//!   `C_{l,k} = (-1)^k (2k-l+1)_{2(l-k)} / (2^l (l-k)! (nu+1)_k)`,
//!   `(a)_p` the rising factorial.
//!
//! Any double-precision order is a dyadic rational, so the comparison is
//! exact for every representable `nu`; a mismatch is an implementation bug
//! and surfaces as [`Error::CoeffMismatch`].

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::BesselOrder;
use crate::{Error, Result};

/// Exact coefficients `C_{l,k}` of the derivative expansion at one order.
#[derive(Debug, Clone)]
pub struct CoeffTable {
    ell: u32,
    nu: f64,
    k_min: u32,
    exact: Vec<BigRational>,
    approx: Vec<f64>,
}

impl CoeffTable {
    /// Derivative order `l`.
    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Bessel order the table was built for.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Smallest expansion index, `ceil(l/2)`.
    pub fn k_min(&self) -> u32 {
        self.k_min
    }

    /// Number of stored entries, `l - ceil(l/2) + 1`.
    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    /// Exact value of `C_{l,k}`; `None` outside `k_min ..= l`.
    pub fn exact(&self, k: u32) -> Option<&BigRational> {
        if k < self.k_min || k > self.ell {
            return None;
        }
        self.exact.get((k - self.k_min) as usize)
    }

    /// `C_{l,k}` rounded to double precision.
    pub fn value(&self, k: u32) -> Option<f64> {
        if k < self.k_min || k > self.ell {
            return None;
        }
        self.approx.get((k - self.k_min) as usize).copied()
    }

    /// The leading constant `C_{l,l}` governing the asymptotic envelope.
    pub fn leading(&self) -> f64 {
        *self.approx.last().expect("table is never empty")
    }

    /// Iterate `(k, C_{l,k})` in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.approx
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.k_min + i as u32, c))
    }
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rising factorial `(a)_p` over the rationals, `(a)_0 = 1`.
fn rising(a: &BigRational, p: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut factor = a.clone();
    for _ in 0..p {
        acc *= &factor;
        factor += BigRational::one();
    }
    acc
}

fn factorial(p: u32) -> BigRational {
    let mut acc = BigInt::one();
    for j in 2..=p {
        acc *= BigInt::from(j);
    }
    BigRational::from_integer(acc)
}

/// Closed form `C_{l,k} = (-1)^k (2k-l+1)_{2(l-k)} / (2^l (l-k)! (nu+1)_k)`.
fn closed_form(ell: u32, k: u32, nu: &BigRational) -> BigRational {
    let base = big(2 * k as i64 - ell as i64 + 1);
    let numer = rising(&base, 2 * (ell - k));
    let two_pow = BigRational::from_integer(BigInt::one() << ell);
    let denom = two_pow * factorial(ell - k) * rising(&(nu + BigRational::one()), k);
    let sign = if k % 2 == 0 { 1 } else { -1 };
    big(sign) * numer / denom
}

/// One full row of the proof's recurrence. Index `i` of the returned vector
/// holds `C_{l, k_min + i}`.
fn recurrence_row(ell: u32, nu: &BigRational) -> Vec<BigRational> {
    let mut row: Vec<BigRational> = alloc::vec![BigRational::one()]; // C_{0,0} = 1
    let mut k_min = 0u32;
    for l in 0..ell {
        let next_k_min = (l + 2) / 2; // ceil((l+1)/2)
        let mut next = alloc::vec![BigRational::zero(); (l + 1 - next_k_min + 1) as usize];
        let get = |k: u32| -> BigRational {
            if k < k_min || k > l {
                BigRational::zero()
            } else {
                row[(k - k_min) as usize].clone()
            }
        };
        // C_{l+1, l+1} = -C_{l,l} / (2 (nu + l + 1))
        let two = big(2);
        next[(l + 1 - next_k_min) as usize] =
            -get(l) / (&two * (nu + big(l as i64 + 1)));
        if l % 2 == 0 {
            // even row: C_{l+1,k} = (2k-l) C_{l,k} - C_{l,k-1} / (2(nu+k))
            for k in (l + 2) / 2..=l {
                let val = big(2 * k as i64 - l as i64) * get(k)
                    - get(k - 1) / (&two * (nu + big(k as i64)));
                next[(k - next_k_min) as usize] = val;
            }
        } else {
            // odd row keeps its lowest entry: C_{l+1,(l+1)/2} = C_{l,(l+1)/2}
            for k in (l + 1) / 2 + 1..=l {
                let val = big(2 * k as i64 - l as i64) * get(k)
                    - get(k - 1) / (&two * (nu + big(k as i64)));
                next[(k - next_k_min) as usize] = val;
            }
            next[0] = get((l + 1) / 2);
        }
        row = next;
        k_min = next_k_min;
    }
    row
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // to_f64 on huge numerator/denominator pairs can overflow to inf even
    // when the ratio is tame, so split off the integer scale first.
    r.to_f64().unwrap_or_else(|| {
        let (trunc, fract) = (r.trunc(), r.fract());
        trunc.numer().to_f64().unwrap_or(f64::MAX)
            + fract.numer().to_f64().unwrap_or(0.0) / fract.denom().to_f64().unwrap_or(1.0)
    })
}

/// Build the coefficient table at derivative order `ell`, verifying the
/// recurrence against the closed form entry by entry (exactly).
pub fn deriv_coeffs(ell: u32, order: BesselOrder) -> Result<CoeffTable> {
    let nu_exact = BigRational::from_float(order.get())
        .expect("finite order is a dyadic rational");
    let k_min = ell.div_ceil(2);
    let rec = recurrence_row(ell, &nu_exact);
    debug_assert_eq!(rec.len(), (ell - k_min + 1) as usize);
    let mut exact = Vec::with_capacity(rec.len());
    let mut approx = Vec::with_capacity(rec.len());
    for (i, from_rec) in rec.into_iter().enumerate() {
        let k = k_min + i as u32;
        let from_closed = closed_form(ell, k, &nu_exact);
        if from_rec != from_closed {
            return Err(Error::CoeffMismatch { ell, k });
        }
        approx.push(rational_to_f64(&from_rec));
        exact.push(from_rec);
    }
    Ok(CoeffTable {
        ell,
        nu: order.get(),
        k_min,
        exact,
        approx,
    })
}

/// Double-precision `C_{l,k}` straight from the closed form, for evaluation
/// paths that do not need the exact table. Integer factors stay exact in
/// `f64` for every order this crate meets.
pub(crate) fn coeff_f64(ell: u32, k: u32, nu: f64) -> f64 {
    let mut numer = 1.0;
    let base = 2.0 * k as f64 - ell as f64 + 1.0;
    for j in 0..2 * (ell - k) {
        numer *= base + j as f64;
    }
    let mut denom = libm::pow(2.0, ell as f64);
    for j in 2..=(ell - k) {
        denom *= j as f64;
    }
    for j in 0..k {
        denom *= nu + 1.0 + j as f64;
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign * numer / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(nu: f64) -> BesselOrder {
        BesselOrder::new(nu).unwrap()
    }

    #[test]
    fn order_zero_is_unit() {
        let t = deriv_coeffs(0, ord(0.7)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.value(0), Some(1.0));
        assert!(t.exact(0).unwrap().is_one());
    }

    #[test]
    fn first_derivative_constant() {
        // C_{1,1} = -1/(2(nu+1))
        for nu in [-0.5, 0.0, 1.0, 2.5] {
            let t = deriv_coeffs(1, ord(nu)).unwrap();
            assert_eq!(t.k_min(), 1);
            assert_eq!(t.value(1), Some(-1.0 / (2.0 * (nu + 1.0))));
        }
    }

    #[test]
    fn second_derivative_at_integer_order() {
        let t = deriv_coeffs(2, ord(0.0)).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.value(1), Some(-0.5));
        assert_eq!(t.value(2), Some(0.125));
    }

    #[test]
    fn entry_count_matches_parity_split() {
        for ell in 0..=12u32 {
            let t = deriv_coeffs(ell, ord(0.5)).unwrap();
            assert_eq!(t.k_min(), ell.div_ceil(2));
            assert_eq!(t.len() as u32, ell - ell.div_ceil(2) + 1);
        }
    }

    #[test]
    fn f64_shortcut_matches_exact_table() {
        for ell in 0..=10u32 {
            for nu in [-0.5, 0.0, 0.5, 1.0] {
                let t = deriv_coeffs(ell, ord(nu)).unwrap();
                for (k, c) in t.iter() {
                    let direct = coeff_f64(ell, k, nu);
                    assert!(
                        (direct - c).abs() <= 1e-15 * c.abs().max(1.0),
                        "ell={ell} k={k} nu={nu}: {direct} vs {c}"
                    );
                }
            }
        }
    }
}
