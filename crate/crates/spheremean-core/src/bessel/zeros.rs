//! Certified positive zeros of `j_nu^{(l)}`.
//!
//! For large arguments `j_nu^{(l)}(x)` oscillates like
//! `cos(x - pi(nu+l)/2 - pi/4)` under a decaying envelope, so its zeros are
//! asymptotically `pi`-spaced. Candidate brackets are seeded at the
//! asymptotic extremum phases (where the cosine is `+-1` and the sign of the
//! function is locked in), which pairwise bracket exactly one zero apiece.
//! Near the origin the phase prediction is invalid; a fixed-step scan covers
//! that region, and any predicted interval that fails its sign check is
//! rescanned at fine resolution before being declared empty.

use alloc::vec::Vec;

use super::{eval_j_deriv, BesselOrder};
use crate::{Error, Result};

/// Ordered positive zeros of `j_nu^{(l)}` with certified sign-change
/// brackets.
#[derive(Debug, Clone)]
pub struct ZeroSequence {
    nu: f64,
    ell: u32,
    zeros: Vec<f64>,
    brackets: Vec<(f64, f64)>,
}

impl ZeroSequence {
    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Zero estimates (bracket midpoints), strictly increasing.
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// Certified brackets: the function changes sign across each interval.
    pub fn brackets(&self) -> &[(f64, f64)] {
        &self.brackets
    }

    /// The `m`-th zero, 1-based.
    pub fn zero(&self, m: usize) -> f64 {
        self.zeros[m - 1]
    }
}

const BRACKET_WIDTH: f64 = 1e-12;
const COARSE_STEP: f64 = 0.1;
const FINE_STEP: f64 = 0.05;
/// Below this abscissa every predicted interval is fine-scanned instead of
/// trusting endpoint signs; the asymptotic phase is unreliable there.
const TRUST_PHASE_FROM: f64 = 20.0;

struct Search<'a> {
    order: BesselOrder,
    ell: u32,
    brackets: &'a mut Vec<(f64, f64)>,
    m_max: usize,
}

impl Search<'_> {
    fn f(&self, x: f64) -> f64 {
        eval_j_deriv(self.order, self.ell, x)
    }

    fn done(&self) -> bool {
        self.brackets.len() >= self.m_max
    }

    /// Record sign changes of `f` on a fixed-step walk over `(lo, hi]`.
    fn scan(&mut self, lo: f64, hi: f64, step: f64) {
        let mut x = lo;
        let mut fx = self.f(x);
        while x < hi && !self.done() {
            let x2 = (x + step).min(hi);
            let fx2 = self.f(x2);
            if fx == 0.0 {
                // Landed exactly on a zero: certify it with a hair-width
                // bracket around the sample.
                let eps = 1e-13 * x.abs().max(1.0);
                if self.f(x - eps) * self.f(x + eps) < 0.0 {
                    self.brackets.push((x - eps, x + eps));
                }
            } else if fx * fx2 < 0.0 {
                self.brackets.push((x, x2));
            }
            x = x2;
            fx = fx2;
        }
    }
}

/// Locate the first `m_max` positive zeros of `j_nu^{(l)}`, each certified by
/// a sign-change bracket of width at most `1e-12`.
pub fn find_zeros(order: BesselOrder, ell: u32, m_max: usize) -> Result<ZeroSequence> {
    assert!(m_max >= 1, "m_max must be at least 1");
    let nu = order.get();
    let mut brackets = Vec::with_capacity(m_max);
    let mut search = Search {
        order,
        ell,
        brackets: &mut brackets,
        m_max,
    };

    // Extrema of the asymptotic cosine sit at phase0 + m*pi.
    let phase0 = core::f64::consts::PI * (0.5 * (nu + ell as f64) + 0.25);
    let pi = core::f64::consts::PI;
    let mut m0 = libm::floor((0.4 - phase0) / pi) as i64;
    while phase0 + m0 as f64 * pi <= 0.4 {
        m0 += 1;
    }
    let first_seed = phase0 + m0 as f64 * pi;

    // Region below the first usable phase prediction: plain fine scan.
    search.scan(1e-3, first_seed, COARSE_STEP);

    let mut prev = first_seed;
    let mut f_prev = search.f(prev);
    let mut m = m0 + 1;
    while !search.done() {
        let cur = phase0 + m as f64 * pi;
        let f_cur = search.f(cur);
        if prev < TRUST_PHASE_FROM {
            // Close to the origin the extremum prediction can dephase;
            // resolve the interval by scanning.
            search.scan(prev, cur, FINE_STEP);
        } else if f_prev * f_cur < 0.0 {
            search.brackets.push((prev, cur));
        } else if f_prev == 0.0 || f_cur == 0.0 {
            search.scan(prev + 1e-9, cur + 1e-9, FINE_STEP);
        } else {
            // The asymptotic phase promised opposite signs here. Rescan
            // before giving up.
            let before = search.brackets.len();
            search.scan(prev, cur, FINE_STEP);
            if search.brackets.len() == before {
                return Err(Error::ZeroSearch { lo: prev, hi: cur });
            }
        }
        prev = cur;
        f_prev = f_cur;
        m += 1;
    }

    brackets.truncate(m_max);

    // Bisect every bracket down to the certified width.
    let f = |x: f64| eval_j_deriv(order, ell, x);
    let mut zeros = Vec::with_capacity(m_max);
    let mut refined = Vec::with_capacity(m_max);
    for &(mut lo, mut hi) in brackets.iter() {
        let mut f_lo = f(lo);
        while hi - lo > BRACKET_WIDTH {
            let mut mid = 0.5 * (lo + hi);
            let mut f_mid = f(mid);
            if f_mid == 0.0 {
                // Nudge off the exact zero so the sign invariant survives.
                mid += (hi - lo) * 1e-3;
                f_mid = f(mid);
                if f_mid == 0.0 {
                    return Err(Error::ZeroSearch { lo, hi });
                }
            }
            if f_lo * f_mid < 0.0 {
                hi = mid;
            } else {
                lo = mid;
                f_lo = f_mid;
            }
        }
        if !(f(lo) * f(hi) < 0.0) {
            return Err(Error::ZeroSearch { lo, hi });
        }
        zeros.push(0.5 * (lo + hi));
        refined.push((lo, hi));
    }

    debug_assert!(zeros.windows(2).all(|w| w[0] < w[1]));
    Ok(ZeroSequence {
        nu,
        ell,
        zeros,
        brackets: refined,
    })
}
