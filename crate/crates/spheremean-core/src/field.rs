//! Periodic grids, complex fields, and the discrete Fourier transform pair.
//!
//! The transform convention follows the continuous pair the operators are
//! built on: the forward transform is a Riemann sum approximating
//! `u_hat(xi) = integral u(x) e^{-i<x,xi>} dx` (plain DFT scaled by the cell
//! volume), the inverse applies the `(2 pi)^{-n}`-normalized sum over the
//! dual lattice. Symbol values from the `symbol` module therefore apply
//! verbatim as multipliers, with no per-call normalization.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::fft::Radix2Plan;
use crate::{Error, Result};

/// Periodic lattice in `n = 1..3` dimensions: per-axis sample counts
/// (powers of two, at least 16) over a box of per-axis period lengths.
///
/// Row-major storage, last axis contiguous. The dual lattice carries the
/// frequencies `xi_j = 2 pi k_j / L_j` with `k_j` in `-N_j/2 ..= N_j/2 - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    shape: Vec<usize>,
    box_len: Vec<f64>,
}

impl Grid {
    pub fn new(shape: &[usize], box_len: &[f64]) -> Result<Grid> {
        let n = shape.len();
        if n == 0 || n > 3 {
            return Err(Error::Config(
                alloc::format!("unsupported dimension {n}: grids live in 1..=3"),
            ));
        }
        if box_len.len() != n {
            return Err(Error::Config(
                "shape and box must have the same dimension".to_string(),
            ));
        }
        for &s in shape {
            if !s.is_power_of_two() || s < 16 {
                return Err(Error::Config(alloc::format!(
                    "axis length {s} is not a power of two >= 16"
                )));
            }
        }
        for &l in box_len {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::Config(alloc::format!("box length {l} must be positive")));
            }
        }
        Ok(Grid {
            shape: shape.to_vec(),
            box_len: box_len.to_vec(),
        })
    }

    pub fn n(&self) -> u8 {
        self.shape.len() as u8
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn box_len(&self) -> &[f64] {
        &self.box_len
    }

    /// Total sample count.
    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false // validated shapes are never empty
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.box_len[axis] / self.shape[axis] as f64
    }

    /// Volume of one grid cell, the forward-transform Riemann weight.
    pub fn cell_volume(&self) -> f64 {
        (0..self.shape.len()).map(|a| self.spacing(a)).product()
    }

    /// Volume of the periodic box.
    pub fn box_volume(&self) -> f64 {
        self.box_len.iter().product()
    }

    /// Signed dual index for storage index `i` on `axis`:
    /// `0..N/2-1` map to themselves, `N/2..N-1` to `i - N`.
    pub fn signed_index(&self, axis: usize, i: usize) -> i64 {
        let n = self.shape[axis];
        if i < n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        }
    }

    /// Frequency component `2 pi k / L` for storage index `i` on `axis`.
    pub fn freq_component(&self, axis: usize, i: usize) -> f64 {
        2.0 * core::f64::consts::PI * self.signed_index(axis, i) as f64 / self.box_len[axis]
    }

    /// Row-major strides (last axis contiguous).
    pub fn strides(&self) -> [usize; 3] {
        let mut strides = [0usize; 3];
        let n = self.shape.len();
        let mut acc = 1;
        for axis in (0..n).rev() {
            strides[axis] = acc;
            acc *= self.shape[axis];
        }
        strides
    }

    /// Decompose a flat index into per-axis storage indices.
    pub fn multi_index(&self, flat: usize) -> [usize; 3] {
        let mut out = [0usize; 3];
        let mut rest = flat;
        for axis in (0..self.shape.len()).rev() {
            out[axis] = rest % self.shape[axis];
            rest /= self.shape[axis];
        }
        out
    }

    /// Signed dual multi-index of a flat bin.
    pub fn signed_multi_index(&self, flat: usize) -> [i64; 3] {
        let m = self.multi_index(flat);
        let mut out = [0i64; 3];
        for axis in 0..self.shape.len() {
            out[axis] = self.signed_index(axis, m[axis]);
        }
        out
    }

    /// Frequency vector of a flat bin; trailing components are zero.
    pub fn freq_vector(&self, flat: usize) -> [f64; 3] {
        let m = self.multi_index(flat);
        let mut out = [0.0f64; 3];
        for axis in 0..self.shape.len() {
            out[axis] = self.freq_component(axis, m[axis]);
        }
        out
    }

    /// Frequency magnitude `|xi|` of a flat bin.
    pub fn freq_magnitude(&self, flat: usize) -> f64 {
        let v = self.freq_vector(flat);
        libm::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
    }

    /// The representable lattice frequency on `axis` closest to `target`,
    /// as `(signed index, frequency value)`.
    pub fn nearest_freq(&self, axis: usize, target: f64) -> (i64, f64) {
        let n = self.shape[axis] as i64;
        let raw = target * self.box_len[axis] / (2.0 * core::f64::consts::PI);
        let k = libm::round(raw) as i64;
        let k = k.clamp(-n / 2, n / 2 - 1);
        (
            k,
            2.0 * core::f64::consts::PI * k as f64 / self.box_len[axis],
        )
    }

    /// Storage index on `axis` for a signed dual index.
    pub fn storage_index(&self, axis: usize, k: i64) -> usize {
        let n = self.shape[axis] as i64;
        debug_assert!((-n / 2..n / 2).contains(&k));
        k.rem_euclid(n) as usize
    }
}

/// Which side of the transform a field's samples live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Physical,
    Frequency,
}

/// Complex samples over a [`Grid`], tagged with their space.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    space: Space,
    values: Vec<Complex64>,
}

impl Field {
    pub fn zeros(grid: Grid, space: Space) -> Field {
        let len = grid.len();
        Field {
            grid,
            space,
            values: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn constant(grid: Grid, c: Complex64) -> Field {
        let len = grid.len();
        Field {
            grid,
            space: Space::Physical,
            values: vec![c; len],
        }
    }

    pub fn from_values(grid: Grid, space: Space, values: Vec<Complex64>) -> Result<Field> {
        if values.len() != grid.len() {
            return Err(Error::Config(alloc::format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Field { grid, space, values })
    }

    /// Physical-space plane wave `e^{i <xi_k, x>}` at the lattice frequency
    /// with signed dual indices `k`.
    pub fn plane_wave(grid: Grid, k: &[i64]) -> Result<Field> {
        if k.len() != grid.shape.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.n(),
                got: k.len() as u8,
            });
        }
        let mut values = Vec::with_capacity(grid.len());
        for flat in 0..grid.len() {
            let m = grid.multi_index(flat);
            let mut phase = 0.0;
            for axis in 0..k.len() {
                phase += 2.0 * core::f64::consts::PI * k[axis] as f64 * m[axis] as f64
                    / grid.shape[axis] as f64;
            }
            let (s, c) = libm::sincos(phase);
            values.push(Complex64::new(c, s));
        }
        Ok(Field {
            grid,
            space: Space::Physical,
            values,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Plain (unweighted) l2 norm of the samples.
    pub fn l2_norm(&self) -> f64 {
        libm::sqrt(self.values.iter().map(|v| v.norm_sqr()).sum())
    }

    /// Sup norm of the samples.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Relative l2 distance `|a - b|_2 / |b|_2` (plain norms, any space).
pub fn rel_l2_error(a: &Field, b: &Field) -> f64 {
    debug_assert_eq!(a.grid(), b.grid());
    let mut diff = 0.0;
    let mut norm = 0.0;
    for (x, y) in a.values.iter().zip(&b.values) {
        diff += (x - y).norm_sqr();
        norm += y.norm_sqr();
    }
    if norm == 0.0 {
        return libm::sqrt(diff);
    }
    libm::sqrt(diff / norm)
}

fn dft_along_axes(values: &mut [Complex64], grid: &Grid, inverse: bool) {
    let n = grid.shape().len();
    let strides = grid.strides();
    for axis in 0..n {
        let n_ax = grid.shape()[axis];
        let plan = Radix2Plan::new(n_ax);
        let stride = strides[axis];
        if stride == 1 {
            for line in values.chunks_exact_mut(n_ax) {
                plan.process(line, inverse);
            }
        } else {
            let block = n_ax * stride;
            let outer = values.len() / block;
            let mut scratch = vec![Complex64::new(0.0, 0.0); n_ax];
            for o in 0..outer {
                for i in 0..stride {
                    let base = o * block + i;
                    for (k, s) in scratch.iter_mut().enumerate() {
                        *s = values[base + k * stride];
                    }
                    plan.process(&mut scratch, inverse);
                    for (k, s) in scratch.iter().enumerate() {
                        values[base + k * stride] = *s;
                    }
                }
            }
        }
    }
}

/// Forward transform: Riemann-sum approximation of the integral transform
/// with the `e^{-i<x,xi>}` kernel. Input must be in physical space.
pub fn forward_transform(f: &Field) -> Result<Field> {
    if f.space != Space::Physical {
        return Err(Error::SpaceMismatch {
            expected: "physical",
        });
    }
    let mut values = f.values.clone();
    dft_along_axes(&mut values, &f.grid, false);
    let scale = f.grid.cell_volume();
    for v in &mut values {
        *v *= scale;
    }
    Ok(Field {
        grid: f.grid.clone(),
        space: Space::Frequency,
        values,
    })
}

/// Inverse transform, the exact inverse of [`forward_transform`] up to
/// roundoff. Input must be in frequency space.
pub fn inverse_transform(f: &Field) -> Result<Field> {
    if f.space != Space::Frequency {
        return Err(Error::SpaceMismatch {
            expected: "frequency",
        });
    }
    let mut values = f.values.clone();
    dft_along_axes(&mut values, &f.grid, true);
    let scale = 1.0 / f.grid.box_volume();
    for v in &mut values {
        *v *= scale;
    }
    Ok(Field {
        grid: f.grid.clone(),
        space: Space::Physical,
        values,
    })
}
