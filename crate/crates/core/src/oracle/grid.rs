use ndarray::Array2;
use rayon::prelude::*;
use serde::Serialize;

use super::OracleError;
use crate::{CatConfig, PhasePoint};

/// Default node count per axis.
pub const DEFAULT_NODES: usize = 512;
/// Default number of standard deviations covered beyond the component centers.
pub const DEFAULT_SIGMAS: f64 = 8.0;

/// Rectangular phase-space grid.
///
/// Nodes are uniformly spaced and include both end points:
/// `q_i = q_min + i (q_max − q_min)/(n_q − 1)`, `i = 0..n_q`. Node counts are
/// even and at least 16.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    q_min: f64,
    q_max: f64,
    n_q: usize,
    p_min: f64,
    p_max: f64,
    n_p: usize,
}

fn check_axis(name: &str, lo: f64, hi: f64, n: usize) -> Result<(), OracleError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(OracleError::InvalidGrid(format!(
            "{name} range [{lo}, {hi}] must be finite with min < max"
        )));
    }
    if n < 16 || !n.is_multiple_of(2) {
        return Err(OracleError::InvalidGrid(format!(
            "{name} node count {n} must be even and at least 16"
        )));
    }
    Ok(())
}

fn step(lo: f64, hi: f64, n: usize) -> f64 {
    (hi - lo) / (n - 1) as f64
}

impl GridSpec {
    pub fn new(
        q_min: f64,
        q_max: f64,
        n_q: usize,
        p_min: f64,
        p_max: f64,
        n_p: usize,
    ) -> Result<Self, OracleError> {
        check_axis("q", q_min, q_max, n_q)?;
        check_axis("p", p_min, p_max, n_p)?;
        Ok(Self {
            q_min,
            q_max,
            n_q,
            p_min,
            p_max,
            n_p,
        })
    }

    /// Grid symmetric about the origin with the given half-widths.
    pub fn symmetric(
        q_half: f64,
        n_q: usize,
        p_half: f64,
        n_p: usize,
    ) -> Result<Self, OracleError> {
        Self::new(-q_half, q_half, n_q, -p_half, p_half, n_p)
    }

    /// Default grid for a cat state: half-width `d/2 + 8σ_q` in `q` and
    /// `mωd/2 + 8σ_p` in `p`, 512 nodes per axis, raised as needed until the
    /// interference fringes are resolved.
    pub fn for_cat(cfg: &CatConfig) -> Self {
        let env = cfg.env();
        let m = env.moments();
        let q_half = 0.5 * cfg.d() + DEFAULT_SIGMAS * m.q2.sqrt();
        let p_half =
            0.5 * env.mass() * env.omega() * cfg.d() + DEFAULT_SIGMAS * env.mass() * m.qdot2.sqrt();
        let (q_bound, p_bound) = fringe_spacing_bounds(cfg);
        let needed = |half: f64, bound: f64| -> usize {
            // Strictly below the bound: n − 1 > 2 half / bound.
            let n = (2.0 * half / bound).floor() as usize + 2;
            n + n % 2
        };
        let n_q = DEFAULT_NODES.max(needed(q_half, q_bound));
        let n_p = DEFAULT_NODES.max(needed(p_half, p_bound));
        Self::symmetric(q_half, n_q, p_half, n_p).expect("default grid is valid")
    }

    pub fn q_min(&self) -> f64 {
        self.q_min
    }

    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    pub fn p_min(&self) -> f64 {
        self.p_min
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    pub fn n_q(&self) -> usize {
        self.n_q
    }

    pub fn n_p(&self) -> usize {
        self.n_p
    }

    pub fn dq(&self) -> f64 {
        step(self.q_min, self.q_max, self.n_q)
    }

    pub fn dp(&self) -> f64 {
        step(self.p_min, self.p_max, self.n_p)
    }

    pub fn q(&self, i: usize) -> f64 {
        self.q_min + i as f64 * self.dq()
    }

    pub fn p(&self, j: usize) -> f64 {
        self.p_min + j as f64 * self.dp()
    }

    pub fn q_axis(&self) -> Vec<f64> {
        (0..self.n_q).map(|i| self.q(i)).collect()
    }

    pub fn p_axis(&self) -> Vec<f64> {
        (0..self.n_p).map(|j| self.p(j)).collect()
    }

    /// Same ranges with twice the node count per axis.
    pub fn refined(&self) -> Self {
        Self {
            n_q: 2 * self.n_q,
            n_p: 2 * self.n_p,
            ..*self
        }
    }

    /// Shift the `q` axis by less than one spacing so that a node falls
    /// exactly on `q = 0`. Spacing and node count are unchanged.
    pub fn aligned_to_origin(&self) -> Self {
        let h = self.dq();
        let k = (-self.q_min / h).round();
        let q_min = -k * h;
        Self {
            q_min,
            q_max: q_min + (self.n_q - 1) as f64 * h,
            ..*self
        }
    }

    /// Index of the node sitting exactly at `q = 0`, if any.
    pub fn origin_index(&self) -> Option<usize> {
        (0..self.n_q).find(|&i| self.q(i) == 0.0)
    }

    /// Fringe resolution: the interference term oscillates with wavelength
    /// `2πħ/d` in `p` (and `2πħ/mωd` in `q` once rotated), so the spacings
    /// must stay below an eighth of those wavelengths.
    pub fn check_fringe_resolution(&self, cfg: &CatConfig) -> Result<(), OracleError> {
        let (q_bound, p_bound) = fringe_spacing_bounds(cfg);
        if self.dq() < q_bound && self.dp() < p_bound {
            Ok(())
        } else {
            Err(OracleError::FringeUnderResolved {
                dq: self.dq(),
                dp: self.dp(),
                dq_max: q_bound,
                dp_max: p_bound,
            })
        }
    }
}

/// `(πħ/4mωd, πħ/4d)`; infinite at `d = 0`.
pub fn fringe_spacing_bounds(cfg: &CatConfig) -> (f64, f64) {
    let env = cfg.env();
    let p_bound = std::f64::consts::PI * env.hbar() / (4.0 * cfg.d());
    (p_bound / (env.mass() * env.omega()), p_bound)
}

/// Wigner-function samples on a [`GridSpec`], indexed `[q, p]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Field2D {
    pub spec: GridSpec,
    pub values: Array2<f64>,
}

impl Field2D {
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_diff(&self, other: &Field2D) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Density samples on a uniform axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile1D {
    pub axis: Vec<f64>,
    pub values: Vec<f64>,
    pub step: f64,
}

/// Evaluate `f` at every node of `spec`. Nodes are evaluated in parallel.
pub fn sample_field<F>(f: F, spec: &GridSpec) -> Result<Field2D, OracleError>
where
    F: Fn(PhasePoint) -> f64 + Sync,
{
    let (n_q, n_p) = (spec.n_q, spec.n_p);
    let values: Vec<f64> = (0..n_q * n_p)
        .into_par_iter()
        .map(|k| f(PhasePoint::raw(spec.q(k / n_p), spec.p(k % n_p))))
        .collect();
    if let Some(k) = values.iter().position(|v| !v.is_finite()) {
        let (i, j) = (k / n_p, k % n_p);
        return Err(OracleError::NonFiniteSample {
            i,
            j,
            q: spec.q(i),
            p: spec.p(j),
            value: values[k],
        });
    }
    let values = Array2::from_shape_vec((n_q, n_p), values).expect("shape matches node count");
    Ok(Field2D {
        spec: *spec,
        values,
    })
}
