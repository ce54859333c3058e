//! Quadrature rules on the unit sphere `S(0,1)` in dimensions 1 to 3,
//! against the *normalized* surface measure (weights sum to one, so the
//! rule reproduces the mean of a constant exactly).
//!
//! * `n = 1`: the sphere is the two-point set, and the rule
//!   `(1/2){u(x-r) + u(x+r)}` is exact.
//! * `n = 2`: uniform trapezoid on the circle — spectrally accurate for
//!   smooth periodic integrands.
//! * `n = 3`: Gauss-Legendre in the polar cosine crossed with a uniform
//!   azimuth grid.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Nodes on the unit sphere with normalized weights.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    n: u8,
    nodes: Vec<[f64; 3]>,
    weights: Vec<f64>,
    degree: u32,
}

impl QuadratureRule {
    /// Exact two-point rule for `n = 1`: nodes `+-1`, weights `1/2`.
    pub fn two_point() -> QuadratureRule {
        QuadratureRule {
            n: 1,
            nodes: alloc::vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]],
            weights: alloc::vec![0.5, 0.5],
            degree: u32::MAX, // exact for every integrand
        }
    }

    /// Uniform trapezoid rule on the circle with `q` nodes.
    pub fn circle(q: usize) -> QuadratureRule {
        assert!(q >= 4 && q % 2 == 0, "circle rule wants an even node count");
        let mut nodes = Vec::with_capacity(q);
        for j in 0..q {
            let theta = 2.0 * core::f64::consts::PI * j as f64 / q as f64;
            let (s, c) = libm::sincos(theta);
            nodes.push([c, s, 0.0]);
        }
        QuadratureRule {
            n: 2,
            nodes,
            weights: alloc::vec![1.0 / q as f64; q],
            degree: q as u32 - 1,
        }
    }

    /// Product rule on the 2-sphere: Gauss-Legendre with `n_polar` points in
    /// the polar cosine, uniform azimuth with `n_azimuth` points.
    pub fn sphere_product(n_polar: usize, n_azimuth: usize) -> QuadratureRule {
        assert!(n_polar >= 2 && n_azimuth >= 4 && n_azimuth % 2 == 0);
        let (t, v) = gauss_legendre(n_polar);
        let mut nodes = Vec::with_capacity(n_polar * n_azimuth);
        let mut weights = Vec::with_capacity(n_polar * n_azimuth);
        for (ti, vi) in t.iter().zip(&v) {
            let sin_theta = libm::sqrt((1.0 - ti) * (1.0 + ti));
            for j in 0..n_azimuth {
                let phi = 2.0 * core::f64::consts::PI * j as f64 / n_azimuth as f64;
                let (s, c) = libm::sincos(phi);
                nodes.push([sin_theta * c, sin_theta * s, *ti]);
                // normalized measure: (1/(4 pi)) * v_i dt * (2 pi / n_az) dphi
                weights.push(vi / (2.0 * n_azimuth as f64));
            }
        }
        QuadratureRule {
            n: 3,
            nodes,
            weights,
            degree: (2 * n_polar as u32 - 1).min(n_azimuth as u32 - 1),
        }
    }

    /// The default rule for a dimension: two-point, 64-node trapezoid, or
    /// a 24 x 48 Gauss-Legendre product — exactness degrees far beyond the
    /// band limits used at desk scale.
    pub fn for_dimension(n: u8) -> Result<QuadratureRule> {
        match n {
            1 => Ok(QuadratureRule::two_point()),
            2 => Ok(QuadratureRule::circle(64)),
            3 => Ok(QuadratureRule::sphere_product(24, 48)),
            _ => Err(Error::Config(alloc::format!(
                "no quadrature rule for dimension {n}"
            ))),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Unit vectors on the sphere; trailing components are zero below `n=3`.
    pub fn nodes(&self) -> &[[f64; 3]] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Polynomial exactness degree of the rule.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Mean of `f` over the sphere under the normalized measure.
    pub fn integrate(&self, mut f: impl FnMut(&[f64; 3]) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(node, w)| w * f(node))
            .sum()
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// Legendre recurrence, seeded with the Chebyshev-angle estimate.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}
