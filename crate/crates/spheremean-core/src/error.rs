//! Error type shared across the crate.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::solver::RangeReport;

/// Everything that can go wrong in the numerical core.
///
/// Failures of the invertibility scan and degenerate bins in the range test
/// are *data*, not errors; they are reported through the respective report
/// structures instead.
#[derive(Debug, Clone)]
pub enum Error {
    /// Bessel order out of the admissible domain `nu > -1`.
    OrderDomain { nu: f64 },
    /// The coefficient recurrence and the closed form disagree. This signals
    /// an implementation bug, never a data problem.
    CoeffMismatch { ell: u32, k: u32 },
    /// No sign change found where a zero was predicted.
    ZeroSearch { lo: f64, hi: f64 },
    /// Invalid grid, operator or rule configuration.
    Config(String),
    /// Operand dimensions do not agree.
    DimensionMismatch { expected: u8, got: u8 },
    /// A transform direction was applied to a field in the wrong space.
    SpaceMismatch { expected: &'static str },
    /// No lattice frequency lies within 1% of the requested magnitude.
    GridTooCoarse { target: f64, nearest: f64 },
    /// The range characterization is only available for `ell = 0` and, in
    /// dimension `n >= 2`, for `ell = 1`.
    UnsupportedOrder { n: u8, ell: u32 },
    /// Deconvolution was attempted on a field outside the operator range.
    Obstructed(Box<RangeReport>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OrderDomain { nu } => {
                write!(f, "Bessel order nu = {nu} outside domain nu > -1")
            }
            Error::CoeffMismatch { ell, k } => write!(
                f,
                "coefficient consistency failure at (ell, k) = ({ell}, {k}): \
                 recurrence and closed form disagree"
            ),
            Error::ZeroSearch { lo, hi } => write!(
                f,
                "zero search failed: no certified sign change in [{lo}, {hi}]"
            ),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected n = {expected}, got {got}")
            }
            Error::SpaceMismatch { expected } => {
                write!(f, "field is not in {expected} space")
            }
            Error::GridTooCoarse { target, nearest } => write!(
                f,
                "grid too coarse: no lattice frequency within 1% of {target} \
                 (nearest is {nearest})"
            ),
            Error::UnsupportedOrder { n, ell } => write!(
                f,
                "range characterization unsupported for (n, ell) = ({n}, {ell}); \
                 it holds for ell = 0 and, when n >= 2, ell = 1"
            ),
            Error::Obstructed(report) => write!(
                f,
                "field outside operator range: obstruction mass {} over {} degenerate bins",
                report.obstruction_mass,
                report.degenerate.len()
            ),
        }
    }
}

impl core::error::Error for Error {}
