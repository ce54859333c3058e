//! Fourier multipliers of the generalized spherical mean value operators.
//!
//! The operator of order `ell` at radius `r` in dimension `n` acts on plane
//! waves diagonally, with real radial symbol
//!
//! ```text
//! sigma(rho) = rho^ell * j_{n/2-1}^{(ell)}(r rho),     rho = |xi|,
//! ```
//!
//! equivalently (through the coefficient expansion)
//!
//! ```text
//! sigma(rho) = sum_k C_{ell,k} r^{2k-ell} rho^{2k} j_{n/2-1+k}(r rho).
//! ```
//!
//! Both forms are implemented and tested against each other. The module also
//! collects the symbol's zero magnitudes (kernel frequencies) and scans the
//! real-window lower-bound condition that makes the operator an invertible
//! convolver: windows `|rho - s| < A log(2+s)` must contain a point where
//! `|sigma|` exceeds `(A+s)^{-A}`.

use alloc::vec::Vec;

use crate::bessel::{
    deriv_coeffs, eval_j, eval_j_deriv, find_zeros, BesselOrder,
};
use crate::{Error, Result};

/// One operator: dimension `n`, sphere radius `r`, derivative order `ell`,
/// together with the derived reciprocal surface constant `c_r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSpec {
    n: u8,
    r: f64,
    ell: u32,
    c_r: f64,
}

impl OperatorSpec {
    pub fn new(n: u8, r: f64, ell: u32) -> Result<OperatorSpec> {
        if !(1..=3).contains(&n) {
            return Err(Error::Config(alloc::format!(
                "dimension n = {n} outside 1..=3"
            )));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Config(alloc::format!("radius r = {r} must be positive")));
        }
        Ok(OperatorSpec {
            n,
            r,
            ell,
            c_r: surface_constant(n, r),
        })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Reciprocal surface area of the sphere of radius `r`.
    pub fn c_r(&self) -> f64 {
        self.c_r
    }

    /// The Bessel order `n/2 - 1` the symbol is built on.
    pub fn order(&self) -> BesselOrder {
        BesselOrder::new(self.n as f64 / 2.0 - 1.0).expect("n in 1..=3 keeps nu > -1")
    }
}

/// Reciprocal surface area of `S(0, r)` in dimension `n`: `1/2` for `n = 1`
/// (two points), `Gamma(n/2) / (2 pi^{n/2} r^{n-1})` otherwise.
pub fn surface_constant(n: u8, r: f64) -> f64 {
    match n {
        1 => 0.5,
        2 => 1.0 / (2.0 * core::f64::consts::PI * r),
        3 => 1.0 / (4.0 * core::f64::consts::PI * r * r),
        _ => unreachable!("validated dimension"),
    }
}

/// The radial symbol `rho^ell j_{n/2-1}^{(ell)}(r rho)` at `rho = |xi| >= 0`.
///
/// For `ell = 0` this is `j_{n/2-1}(r rho)`, equal to exactly `1` at the
/// origin (the mean of a constant is the constant).
pub fn symbol(spec: &OperatorSpec, rho: f64) -> f64 {
    let rho = rho.abs();
    let radial = eval_j_deriv(spec.order(), spec.ell, spec.r * rho);
    if spec.ell == 0 {
        radial
    } else {
        libm::pow(rho, spec.ell as f64) * radial
    }
}

/// The symbol evaluated on an explicit frequency vector. Folding through the
/// magnitude makes the evenness `sigma(xi) = sigma(-xi)` bitwise.
pub fn symbol_at(spec: &OperatorSpec, xi: &[f64]) -> f64 {
    let rho = libm::sqrt(xi.iter().map(|c| c * c).sum());
    symbol(spec, rho)
}

/// The expanded form `sum_k C_{ell,k} r^{2k-ell} rho^{2k} j_{nu+k}(r rho)`.
///
/// Evaluates the same multiplier as [`symbol`] through the coefficient sum —
/// an independent route used to cross-check the derivative expansion.
pub fn symbol_expanded(spec: &OperatorSpec, rho: f64) -> f64 {
    let rho = rho.abs();
    let table = deriv_coeffs(spec.ell, spec.order()).expect("coefficient routes agree");
    let mut sum = 0.0;
    for (k, c) in table.iter() {
        let r_pow = libm::pow(spec.r, 2.0 * k as f64 - spec.ell as f64);
        let rho_pow = libm::pow(rho, 2.0 * k as f64);
        sum += c * r_pow * rho_pow * eval_j(spec.order().shifted(k), spec.r * rho);
    }
    sum
}

/// Frequency magnitudes where the symbol vanishes: `a_m^{(nu,ell)} / r` for
/// the first `m_max` Bessel-derivative zeros, preceded by `rho = 0` when the
/// `rho^ell` factor forces a zero there (`ell >= 1`).
pub fn symbol_zeros(spec: &OperatorSpec, m_max: usize) -> Result<Vec<f64>> {
    let seq = find_zeros(spec.order(), spec.ell, m_max)?;
    let mut out = Vec::with_capacity(m_max + 1);
    if spec.ell >= 1 {
        out.push(0.0);
    }
    out.extend(seq.zeros().iter().map(|a| a / spec.r));
    Ok(out)
}

/// Parameters of the invertibility window scan: the constants `A`, `B` of
/// the lower-bound condition, the probed magnitudes (all above `B`), and the
/// sampling density per window.
#[derive(Debug, Clone)]
pub struct InvertibilityParams {
    a: f64,
    b: f64,
    xi_samples: Vec<f64>,
    window_samples: usize,
}

impl InvertibilityParams {
    pub fn new(a: f64, b: f64, xi_samples: Vec<f64>, window_samples: usize) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::Config("window constants A, B must be positive".into()));
        }
        if window_samples < 16 {
            return Err(Error::Config("window_samples must be at least 16".into()));
        }
        if let Some(bad) = xi_samples.iter().find(|&&s| s <= b) {
            return Err(Error::Config(alloc::format!(
                "sample magnitude {bad} is not above B = {b}"
            )));
        }
        Ok(InvertibilityParams {
            a,
            b,
            xi_samples,
            window_samples,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn xi_samples(&self) -> &[f64] {
        &self.xi_samples
    }

    pub fn window_samples(&self) -> usize {
        self.window_samples
    }
}

/// Window constants that the scan has verified for every operator this
/// crate ships (`n` in `1..=3`, `ell` in `{0, 1}`, `r = 1`); recorded here as
/// artifact constants.
pub const DEFAULT_WINDOW_A: f64 = 6.0;
pub const DEFAULT_WINDOW_B: f64 = 10.0;

/// One probed magnitude of the scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanSample {
    /// Window center `s = |xi|`.
    pub s: f64,
    /// Supremum of `|sigma|` over the window (dense sampling plus parabolic
    /// refinement at the best point).
    pub window_sup: f64,
    /// Location of the supremum.
    pub sup_at: f64,
    /// The lower bound `(A + s)^{-A}` the supremum must exceed.
    pub threshold: f64,
    pub pass: bool,
}

/// Scan outcome over all probed magnitudes, sorted by `s`.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub spec: OperatorSpec,
    pub a: f64,
    pub b: f64,
    pub samples: Vec<ScanSample>,
    pub all_pass: bool,
}

/// Check the real-window lower-bound condition at each probed magnitude.
///
/// The window supremum is taken over the radial line only; the symbol
/// depends on `|xi|` alone, so the full n-dimensional window supremum is at
/// least the radial one, which suffices for the one-sided test. Failures are
/// recorded in the report, not raised as errors.
pub fn invertibility_scan(spec: &OperatorSpec, params: &InvertibilityParams) -> ScanReport {
    let mut samples: Vec<ScanSample> = params
        .xi_samples
        .iter()
        .map(|&s| scan_one(spec, params, s))
        .collect();
    samples.sort_by(|x, y| x.s.total_cmp(&y.s));
    let all_pass = samples.iter().all(|t| t.pass);
    ScanReport {
        spec: *spec,
        a: params.a,
        b: params.b,
        samples,
        all_pass,
    }
}

fn scan_one(spec: &OperatorSpec, params: &InvertibilityParams, s: f64) -> ScanSample {
    let width = params.a * libm::log(2.0 + s);
    let lo = (s - width).max(0.0);
    let hi = s + width;
    let count = params.window_samples;
    let step = (hi - lo) / (count - 1) as f64;
    let mut best = (lo, symbol(spec, lo).abs());
    let mut prev_best_idx = 0usize;
    for i in 1..count {
        let rho = lo + step * i as f64;
        let v = symbol(spec, rho).abs();
        if v > best.1 {
            best = (rho, v);
            prev_best_idx = i;
        }
    }
    // Parabolic refinement through the best sample and its neighbors.
    if prev_best_idx > 0 && prev_best_idx < count - 1 {
        let xm = lo + step * (prev_best_idx as f64 - 1.0);
        let x0 = lo + step * prev_best_idx as f64;
        let ym = symbol(spec, xm).abs();
        let y0 = best.1;
        let yp = symbol(spec, x0 + step).abs();
        let denom = ym - 2.0 * y0 + yp;
        if denom < 0.0 {
            let offset = 0.5 * (ym - yp) / denom;
            if offset.abs() <= 1.0 {
                let rho = x0 + offset * step;
                let v = symbol(spec, rho).abs();
                if v > best.1 {
                    best = (rho, v);
                }
            }
        }
    }
    let threshold = libm::exp(-params.a * libm::log(params.a + s));
    ScanSample {
        s,
        window_sup: best.1,
        sup_at: best.0,
        threshold,
        pass: best.1 > threshold,
    }
}

/// Geometrically spaced magnitudes in `(b, max]`, the probe layout the scan
/// is normally run with.
pub fn log_spaced_samples(b: f64, max: f64, count: usize) -> Vec<f64> {
    assert!(max > b && b > 0.0 && count >= 1);
    let ratio = max / b;
    (1..=count)
        .map(|i| b * libm::pow(ratio, i as f64 / count as f64))
        .collect()
}
