//! Equilibrium and cat-state Wigner functions.

use std::f64::consts::PI;

use crate::{flow, PhasePoint, PhysicsError, ThermalOscillator};

/// Two displaced equilibrium states of `env` separated by `d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatConfig {
    env: ThermalOscillator,
    d: f64,
}

impl CatConfig {
    pub fn new(env: ThermalOscillator, d: f64) -> Result<Self, PhysicsError> {
        if d.is_finite() && d >= 0.0 {
            Ok(Self { env, d })
        } else {
            Err(PhysicsError::InvalidParameter {
                name: "d",
                value: d,
            })
        }
    }

    pub fn env(&self) -> &ThermalOscillator {
        &self.env
    }

    pub fn d(&self) -> f64 {
        self.d
    }
}

/// Thermal equilibrium Wigner function
///
/// `W₀(q,p) = exp{−p²/(2m²⟨q̇²⟩) − q²/(2⟨q²⟩)} / (2πm√(⟨q̇²⟩⟨q²⟩))`.
pub fn equilibrium_wigner(env: &ThermalOscillator, pt: PhasePoint) -> f64 {
    let m = env.moments();
    let mass = env.mass();
    let norm = 1.0 / (2.0 * PI * mass * (m.qdot2 * m.q2).sqrt());
    let exponent = pt.p * pt.p / (2.0 * mass * mass * m.qdot2) + pt.q * pt.q / (2.0 * m.q2);
    norm * (-exponent).exp()
}

/// `W₀(flow(pt, −t)) − W₀(pt)`; zero up to rounding because the flow is a
/// rotation of the equilibrium ellipse onto itself.
pub fn equilibrium_invariance_residual(env: &ThermalOscillator, pt: PhasePoint, t: f64) -> f64 {
    equilibrium_wigner(env, flow(pt, -t, env)) - equilibrium_wigner(env, pt)
}

/// Unnormalized two-component bracket
///
/// `W(q + d/2, p) + W(q − d/2, p) + 2 cos(pd/ħ) W(q, p)`
///
/// for an arbitrary component Wigner function. The normalization depends on
/// the component and is left to the caller.
pub fn superpose<W>(component: W, d: f64, pt: PhasePoint, hbar: f64) -> f64
where
    W: Fn(PhasePoint) -> f64,
{
    let half = 0.5 * d;
    component(PhasePoint::raw(pt.q + half, pt.p))
        + component(PhasePoint::raw(pt.q - half, pt.p))
        + 2.0 * (pt.p * d / hbar).cos() * component(pt)
}

/// `A₀ = (2[1 + exp{−m²⟨q̇²⟩d²/2ħ²}])⁻¹`, in `[1/4, 1/2)`.
pub fn cat_normalization(cfg: &CatConfig) -> f64 {
    0.5 / (1.0 + (-overlap_exponent(cfg)).exp())
}

/// `m²⟨q̇²⟩d²/2ħ²`, the decay exponent of the momentum-space fringe average.
pub(crate) fn overlap_exponent(cfg: &CatConfig) -> f64 {
    let env = cfg.env();
    let mass = env.mass();
    mass * mass * env.moments().qdot2 * cfg.d * cfg.d / (2.0 * env.hbar() * env.hbar())
}

/// Evolved thermal cat Wigner function in closed form:
///
/// `A₀ W₀(q,p) (exp{−[d²/4 + dX]/2⟨q²⟩} + exp{−[d²/4 − dX]/2⟨q²⟩} + 2 cos{(p cos ωt + mωq sin ωt) d/ħ})`
///
/// with `X = q cos ωt − (p/mω) sin ωt`.
///
/// The expression is invariant under `ωt → ωt + π` (the two exponentials
/// swap and the cosine is even), so the phase is reduced modulo `π` first;
/// this makes half-period recurrences reproduce bit-for-bit.
pub fn cat_wigner(cfg: &CatConfig, pt: PhasePoint, t: f64) -> f64 {
    let env = cfg.env();
    let q2 = env.moments().q2;
    let m_omega = env.mass() * env.omega();
    let d = cfg.d;
    let (s, c) = (env.omega() * t).rem_euclid(PI).sin_cos();
    let x = pt.q * c - pt.p / m_omega * s;
    let base = d * d / 4.0;
    let direct = (-(base + d * x) / (2.0 * q2)).exp() + (-(base - d * x) / (2.0 * q2)).exp();
    let fringe = 2.0 * ((pt.p * c + m_omega * pt.q * s) * d / env.hbar()).cos();
    cat_normalization(cfg) * equilibrium_wigner(env, pt) * (direct + fringe)
}

/// The same state built from the general construction: superpose the
/// equilibrium component at `t = 0` and pull the result back along the
/// classical flow, `A₀ · bracket(flow(pt, −t))`.
pub fn cat_wigner_by_superposition(cfg: &CatConfig, pt: PhasePoint, t: f64) -> f64 {
    let env = cfg.env();
    let origin = flow(pt, -t, env);
    cat_normalization(cfg) * superpose(|x| equilibrium_wigner(env, x), cfg.d, origin, env.hbar())
}
