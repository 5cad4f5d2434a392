//! Attenuation coefficients of the interference term.
//!
//! The attenuation is the ratio of the factor multiplying the interference
//! cosine to twice the geometric mean of the two direct terms. In phase space
//! it is a constant; in coordinate space it oscillates with period `π/ω`,
//! reaching unity whenever `cos ωt = 0`.

use crate::marginal::cat_marginal_terms;
use crate::wigner::overlap_exponent;
use crate::{CatConfig, PhysicsError};

/// Attenuation data at one time, together with the marginal terms at the
/// reference point `q = 0` they were extracted from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AttenuationSample {
    pub t: f64,
    pub a: f64,
    pub a_w: f64,
    pub term_left: f64,
    pub term_right: f64,
    pub term_interf: f64,
}

/// Phase-space attenuation `a_w = exp{d²/8⟨q²⟩}`, independent of time.
pub fn attenuation_phase_space(cfg: &CatConfig) -> f64 {
    let d = cfg.d();
    (d * d / (8.0 * cfg.env().moments().q2)).exp()
}

/// Coordinate-space attenuation
/// `a(t) = exp{(d²/8⟨q²⟩ − d²m²⟨q̇²⟩/2ħ²) cos²ωt}`.
///
/// Finite at all temperatures including `kT = 0`, where it is identically 1.
pub fn attenuation_coordinate(cfg: &CatConfig, t: f64) -> Result<f64, PhysicsError> {
    if !t.is_finite() {
        return Err(PhysicsError::NonFiniteTime(t));
    }
    let c = (cfg.env().omega() * t).cos();
    let d = cfg.d();
    let exponent = d * d / (8.0 * cfg.env().moments().q2) - overlap_exponent(cfg);
    Ok((exponent * c * c).exp())
}

/// `mωd² / (2ħ sinh(ħω/kT))`, or `None` at zero temperature.
fn sinh_coefficient(cfg: &CatConfig) -> Option<f64> {
    let env = cfg.env();
    if env.is_zero_temperature() {
        return None;
    }
    let d = cfg.d();
    let sinh = (env.hbar() * env.omega() / env.kt()).sinh();
    Some(env.mass() * env.omega() * d * d / (2.0 * env.hbar() * sinh))
}

/// The hyperbolic-sine form `a(t) = exp{−mωd² cos²ωt / (2ħ sinh(ħω/kT))}`.
///
/// Undefined at `kT = 0`; returns `None` there.
pub fn attenuation_coordinate_sinh(cfg: &CatConfig, t: f64) -> Result<Option<f64>, PhysicsError> {
    if !t.is_finite() {
        return Err(PhysicsError::NonFiniteTime(t));
    }
    let c = (cfg.env().omega() * t).cos();
    Ok(sinh_coefficient(cfg).map(|k| (-k * c * c).exp()))
}

/// `a(t)` taken directly from its definition on the marginal terms at
/// `q = 0`, where the fringe cosine is 1 and the direct terms coincide.
pub fn attenuation_coordinate_definitional(cfg: &CatConfig, t: f64) -> f64 {
    let m = cat_marginal_terms(cfg, 0.0, t);
    m.interf / (2.0 * (m.left * m.right).sqrt())
}

/// Quadratic expansion of `a` just after a maximum:
/// `a(π/2ω + δ) ≈ exp{−mω³d²δ² / (2ħ sinh(ħω/kT))}`.
///
/// Valid for `ωδ ≪ 1`; relative error is `O((ωδ)⁴)`.
pub fn small_time_expansion(cfg: &CatConfig, delta: f64) -> f64 {
    let omega = cfg.env().omega();
    match sinh_coefficient(cfg) {
        Some(k) => (-k * omega * omega * delta * delta).exp(),
        None => 1.0,
    }
}

pub fn attenuation_sample(cfg: &CatConfig, t: f64) -> Result<AttenuationSample, PhysicsError> {
    let a = attenuation_coordinate(cfg, t)?;
    let m = cat_marginal_terms(cfg, 0.0, t);
    Ok(AttenuationSample {
        t,
        a,
        a_w: attenuation_phase_space(cfg),
        term_left: m.left,
        term_right: m.right,
        term_interf: m.interf,
    })
}
