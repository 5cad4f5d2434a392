//! Direct Wigner transform of the zero-temperature two-Gaussian wavefunction.
//!
//! At `kT = 0` each component is a displaced ground state, so the cat is the
//! pure state `ψ(x) ∝ exp{−(x − d/2)²/4σ²} + exp{−(x + d/2)²/4σ²}` with
//! `σ² = ħ/2mω`. Its Wigner function
//! `W(q,p) = (1/πħ) ∫ ψ*(q+y) ψ(q−y) exp(2ipy/ħ) dy`
//! is computed here by brute-force quadrature, independently of the
//! closed-form phase-space expressions.

use std::f64::consts::PI;

use super::quadrature::trapezoid;
use super::OracleError;
use crate::{PhasePoint, PhysicsError, ThermalOscillator};

/// Nodes per ground-state width in the `y` quadrature.
const NODES_PER_SIGMA: f64 = 64.0;

/// Real and imaginary parts of the transform integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WignerTransform {
    pub re: f64,
    pub im: f64,
}

struct TwoGaussian {
    sigma: f64,
    half: f64,
    norm: f64,
}

impl TwoGaussian {
    fn new(env: &ThermalOscillator, d: f64) -> Self {
        let sigma = (env.hbar() / (2.0 * env.mass() * env.omega())).sqrt();
        let mut psi = Self {
            sigma,
            half: 0.5 * d,
            norm: 1.0,
        };
        // Normalize numerically so the oracle does not borrow the analytic
        // overlap.
        let h = sigma / NODES_PER_SIGMA;
        let reach = psi.half + 12.0 * sigma;
        let k_max = (reach / h).ceil() as i64;
        let density: Vec<f64> = (-k_max..=k_max)
            .map(|k| psi.amplitude(k as f64 * h).powi(2))
            .collect();
        psi.norm = trapezoid(&density, h).sqrt().recip();
        psi
    }

    fn amplitude(&self, x: f64) -> f64 {
        let s2 = 4.0 * self.sigma * self.sigma;
        let a = x - self.half;
        let b = x + self.half;
        self.norm * ((-a * a / s2).exp() + (-b * b / s2).exp())
    }
}

fn check_pure(env: &ThermalOscillator) -> Result<(), OracleError> {
    if env.is_zero_temperature() {
        Ok(())
    } else {
        Err(OracleError::NonZeroTemperature(env.kt()))
    }
}

/// Full complex transform at `pt`; the imaginary part vanishes for the real
/// wavefunction and is returned as a quadrature residual.
pub fn pure_cat_wigner_transform(
    env: &ThermalOscillator,
    d: f64,
    pt: PhasePoint,
) -> Result<WignerTransform, OracleError> {
    check_pure(env)?;
    if !(d.is_finite() && d >= 0.0) {
        return Err(PhysicsError::InvalidParameter {
            name: "d",
            value: d,
        }
        .into());
    }
    let psi = TwoGaussian::new(env, d);
    let hbar = env.hbar();
    // The cross terms peak near |y| = d/2; ±10σ beyond the farthest peak
    // leaves a negligible tail.
    let reach = pt.q.abs() + psi.half + 10.0 * psi.sigma;
    let mut h = psi.sigma / NODES_PER_SIGMA;
    if pt.p != 0.0 {
        h = h.min(PI * hbar / (16.0 * pt.p.abs()));
    }
    let k_max = (reach / h).ceil() as i64;
    let (re, im): (Vec<f64>, Vec<f64>) = (-k_max..=k_max)
        .map(|k| {
            let y = k as f64 * h;
            let product = psi.amplitude(pt.q + y) * psi.amplitude(pt.q - y);
            let (s, c) = (2.0 * pt.p * y / hbar).sin_cos();
            (product * c, product * s)
        })
        .unzip();
    let scale = 1.0 / (PI * hbar);
    Ok(WignerTransform {
        re: scale * trapezoid(&re, h),
        im: scale * trapezoid(&im, h),
    })
}

/// Real part of [`pure_cat_wigner_transform`].
pub fn pure_cat_wigner_numeric(
    env: &ThermalOscillator,
    d: f64,
    pt: PhasePoint,
) -> Result<f64, OracleError> {
    pure_cat_wigner_transform(env, d, pt).map(|w| w.re)
}
