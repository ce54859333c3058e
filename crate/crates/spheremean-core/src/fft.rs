//! Iterative radix-2 FFT for power-of-two lengths.
//!
//! The grids in this crate are restricted to power-of-two shapes, so a plain
//! Cooley-Tukey butterfly with a precomputed bit-reversal table and twiddle
//! factors covers every transform the field module needs. No normalization
//! is applied here; the field layer owns the Riemann-sum scaling.

use alloc::vec::Vec;

use num_complex::Complex64;

/// Precomputed plan for one transform length.
#[derive(Debug, Clone)]
pub struct Radix2Plan {
    n: usize,
    bitrev: Vec<u32>,
    /// Forward twiddles `exp(-2 pi i j / n)` for `j < n/2`.
    twiddles: Vec<Complex64>,
}

impl Radix2Plan {
    /// Plan a transform of length `n`; panics unless `n` is a power of two.
    pub fn new(n: usize) -> Radix2Plan {
        assert!(n.is_power_of_two(), "radix-2 transform needs a power of two");
        let bits = n.trailing_zeros();
        let bitrev = (0..n as u32)
            .map(|i| i.reverse_bits() >> (32 - bits))
            .collect();
        let twiddles = (0..n / 2)
            .map(|j| {
                let angle = -2.0 * core::f64::consts::PI * j as f64 / n as f64;
                let (s, c) = libm::sincos(angle);
                Complex64::new(c, s)
            })
            .collect();
        Radix2Plan { n, bitrev, twiddles }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// In-place unnormalized DFT: `out_k = sum_m in_m e^{-2 pi i k m / n}`
    /// when `inverse` is false, the conjugate-kernel sum when true.
    pub fn process(&self, data: &mut [Complex64], inverse: bool) {
        assert_eq!(data.len(), self.n);
        for (i, &r) in self.bitrev.iter().enumerate() {
            let r = r as usize;
            if i < r {
                data.swap(i, r);
            }
        }
        let mut len = 2;
        while len <= self.n {
            let half = len / 2;
            let stride = self.n / len;
            for start in (0..self.n).step_by(len) {
                for j in 0..half {
                    let mut w = self.twiddles[j * stride];
                    if inverse {
                        w = w.conj();
                    }
                    let a = data[start + j];
                    let b = data[start + j + half] * w;
                    data[start + j] = a + b;
                    data[start + j + half] = a - b;
                }
            }
            len *= 2;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(input: &[Complex64], inverse: bool) -> Vec<Complex64> {
        let n = input.len();
        let sign = if inverse { 2.0 } else { -2.0 };
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|m| {
                        let angle = sign * core::f64::consts::PI * (k * m) as f64 / n as f64;
                        input[m] * Complex64::new(angle.cos(), angle.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        let n = 32;
        let input: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.1).cos()))
            .collect();
        let plan = Radix2Plan::new(n);
        for inverse in [false, true] {
            let mut data = input.clone();
            plan.process(&mut data, inverse);
            let expected = naive_dft(&input, inverse);
            for (a, b) in data.iter().zip(&expected) {
                assert!((a - b).norm() < 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn forward_then_inverse_scales_by_n() {
        let n = 64;
        let input: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(i as f64, -(i as f64) * 0.5))
            .collect();
        let plan = Radix2Plan::new(n);
        let mut data = input.clone();
        plan.process(&mut data, false);
        plan.process(&mut data, true);
        for (a, b) in data.iter().zip(&input) {
            assert!((a / n as f64 - b).norm() < 1e-12);
        }
    }
}
