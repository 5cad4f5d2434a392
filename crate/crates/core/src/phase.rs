//! Phase-space points and the exact oscillator flow.

use crate::{PhysicsError, ThermalOscillator};

/// A point `(q, p)` in phase space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    /// Checked constructor; rejects NaN and infinite coordinates.
    pub fn new(q: f64, p: f64) -> Result<Self, PhysicsError> {
        if q.is_finite() && p.is_finite() {
            Ok(Self { q, p })
        } else {
            Err(PhysicsError::NonFinitePoint { q, p })
        }
    }

    pub(crate) const fn raw(q: f64, p: f64) -> Self {
        Self { q, p }
    }

    pub fn mirrored(self) -> Self {
        Self::raw(-self.q, -self.p)
    }
}

/// Classical trajectory of the oscillator through `pt` after time `t`:
///
/// `q(t) = q cos ωt + (p/mω) sin ωt`, `p(t) = p cos ωt − mωq sin ωt`.
///
/// Backward flow is `flow(pt, -t, env)`.
pub fn flow(pt: PhasePoint, t: f64, env: &ThermalOscillator) -> PhasePoint {
    let m_omega = env.mass() * env.omega();
    let (s, c) = (env.omega() * t).sin_cos();
    PhasePoint::raw(pt.q * c + pt.p / m_omega * s, pt.p * c - m_omega * pt.q * s)
}
