use super::{sample_field, Field2D, GridSpec, OracleError};
use crate::{flow, PhasePoint, ThermalOscillator};

/// Exact oscillator evolution by characteristics: every node takes the
/// initial value found at the point the classical flow carries onto it,
/// `W(q, p, t) = W(flow((q, p), −t), 0)`.
///
/// No time stepping and no interpolation are involved.
pub fn evolve_by_characteristics<F>(
    initial: F,
    t: f64,
    env: &ThermalOscillator,
    spec: &GridSpec,
) -> Result<Field2D, OracleError>
where
    F: Fn(PhasePoint) -> f64 + Sync,
{
    sample_field(|pt| initial(flow(pt, -t, env)), spec)
}
