//! Range membership and regularized deconvolution for the spherical mean
//! operators, on the periodic lattice.
//!
//! In the continuum a field `w` lies in the operator's range exactly when
//! its transform vanishes wherever the symbol does. On a lattice that
//! becomes a thresholded test: a bin is *degenerate* when `|symbol|` drops
//! below `eps_sym`, and a degenerate bin is an *obstruction* when `w` still
//! carries mass there (`|w_hat| >= eps_data * |w_hat|_inf`). Deconvolution
//! divides the spectrum by the symbol on the regular bins and applies the
//! minimum-norm completion (zero) on the degenerate ones — the preimage is
//! non-unique precisely because the kernel is infinite-dimensional, and the
//! zero completion is the canonical linear choice.
//!
//! The characterization is implemented for `ell = 0` (any `n`) and `ell = 1`
//! with `n >= 2`; other orders are rejected.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::field::{forward_transform, inverse_transform, Field, Grid, Space};
use crate::operator::symbol_table;
use crate::symbol::OperatorSpec;
use crate::{Error, Result};

/// Default data-compatibility threshold.
pub const DEFAULT_EPS_DATA: f64 = 1e-8;

/// Default symbol-degeneracy threshold: `1e-8` of the largest `|symbol|`
/// over the grid's frequency lattice.
pub fn default_eps_sym(spec: &OperatorSpec, grid: &Grid) -> f64 {
    1e-8 * crate::operator::symbol_sup(spec, grid)
}

/// Per-bin classification of the division `w_hat / symbol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinClass {
    /// `|symbol| >= eps_sym`: divide.
    Regular,
    /// Symbol degenerate, but `w` carries no meaningful mass: zero out.
    DegenerateConsistent,
    /// Symbol degenerate with data mass on top: not in the range.
    Obstructed,
}

/// A degenerate bin, for reporting.
#[derive(Debug, Clone)]
pub struct DegenerateBin {
    /// Flat storage index.
    pub flat: usize,
    /// Signed dual multi-index.
    pub k: [i64; 3],
    /// Symbol value at the bin.
    pub symbol: f64,
    /// `|w_hat|` at the bin.
    pub w_hat_mag: f64,
    pub obstructed: bool,
}

/// Outcome of [`range_test`]: the verdict plus per-frequency diagnostics.
#[derive(Debug, Clone)]
pub struct RangeReport {
    pub spec: OperatorSpec,
    pub eps_sym: f64,
    pub eps_data: f64,
    /// Classification of every bin, indexed by flat storage index.
    pub bins: Vec<BinClass>,
    /// The degenerate bins only (both consistent and obstructed).
    pub degenerate: Vec<DegenerateBin>,
    /// l2 mass of `w_hat` over the obstructed bins, summed in index order.
    pub obstruction_mass: f64,
    /// Plain l2 norm of the whole spectrum.
    pub spectrum_l2: f64,
    /// `obstruction_mass <= eps_data * spectrum_l2`.
    pub in_range: bool,
}

impl RangeReport {
    /// Relative obstruction, `obstruction_mass / |w_hat|_2` (zero for the
    /// zero field).
    pub fn relative_obstruction(&self) -> f64 {
        if self.spectrum_l2 == 0.0 {
            0.0
        } else {
            self.obstruction_mass / self.spectrum_l2
        }
    }
}

fn check_supported(spec: &OperatorSpec) -> Result<()> {
    // The ell = 1 characterization needs n >= 2; ell = 0 holds in any
    // dimension. Everything else is out of reach of the range theory.
    let ok = spec.ell() == 0 || (spec.ell() == 1 && spec.n() >= 2);
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder {
            n: spec.n(),
            ell: spec.ell(),
        })
    }
}

fn spectrum_of(w: &Field) -> Result<Field> {
    match w.space() {
        Space::Physical => forward_transform(w),
        Space::Frequency => Ok(w.clone()),
    }
}

/// Classify every frequency bin of `w` against the operator symbol and
/// report whether `w` lies in the operator's range at the given thresholds.
pub fn range_test(
    spec: &OperatorSpec,
    w: &Field,
    eps_sym: f64,
    eps_data: f64,
) -> Result<RangeReport> {
    check_supported(spec)?;
    if spec.n() != w.grid().n() {
        return Err(Error::DimensionMismatch {
            expected: spec.n(),
            got: w.grid().n(),
        });
    }
    let hat = spectrum_of(w)?;
    let table = symbol_table(spec, hat.grid());
    let sup: f64 = hat.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut bins = Vec::with_capacity(table.len());
    let mut degenerate = Vec::new();
    let mut obstruction_sq = 0.0;
    let mut total_sq = 0.0;
    for (flat, (&sym, v)) in table.iter().zip(hat.values()).enumerate() {
        let mag_sq = v.norm_sqr();
        total_sq += mag_sq;
        if sym.abs() >= eps_sym {
            bins.push(BinClass::Regular);
            continue;
        }
        let mag = libm::sqrt(mag_sq);
        let obstructed = mag >= eps_data * sup;
        if obstructed {
            obstruction_sq += mag_sq;
            bins.push(BinClass::Obstructed);
        } else {
            bins.push(BinClass::DegenerateConsistent);
        }
        degenerate.push(DegenerateBin {
            flat,
            k: hat.grid().signed_multi_index(flat),
            symbol: sym,
            w_hat_mag: mag,
            obstructed,
        });
    }
    let obstruction_mass = libm::sqrt(obstruction_sq);
    let spectrum_l2 = libm::sqrt(total_sq);
    Ok(RangeReport {
        spec: *spec,
        eps_sym,
        eps_data,
        bins,
        degenerate,
        obstruction_mass,
        spectrum_l2,
        in_range: obstruction_mass <= eps_data * spectrum_l2,
    })
}

/// Recover a preimage `v` with `apply_spectral(spec, v) ~= w` by thresholded
/// spectral division: `v_hat = w_hat / symbol` on regular bins, zero on
/// degenerate ones. Returns a physical-space field.
///
/// Fails with [`Error::Obstructed`] (carrying the full report) when `w` does
/// not pass [`range_test`] at the same `eps_sym` and the default `eps_data`.
pub fn deconvolve(spec: &OperatorSpec, w: &Field, eps_sym: f64) -> Result<Field> {
    let report = range_test(spec, w, eps_sym, DEFAULT_EPS_DATA)?;
    if !report.in_range {
        return Err(Error::Obstructed(Box::new(report)));
    }
    let mut hat = spectrum_of(w)?;
    let table = symbol_table(spec, hat.grid());
    for (v, (&sym, class)) in hat
        .values_mut()
        .iter_mut()
        .zip(table.iter().zip(&report.bins))
    {
        if *class == BinClass::Regular {
            *v /= sym;
        } else {
            *v = num_complex::Complex64::new(0.0, 0.0);
        }
    }
    inverse_transform(&hat)
}
