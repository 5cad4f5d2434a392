//! Numerical extraction of the coordinate-space attenuation.
//!
//! The two direct components and the full cat are evolved separately on the
//! grid and marginalized by quadrature. The interference marginal is what is
//! left of the cat after removing the direct components, and its ratio to
//! twice the geometric mean of the direct marginals at `q = 0` is the
//! attenuation. The normalization is also taken from quadrature, so no
//! closed-form marginal or attenuation enters.

use super::{
    evolve_by_characteristics, integrate_profile, marginalize_p, GridSpec, OracleError, Profile1D,
};
use crate::{equilibrium_wigner, superpose, CatConfig, PhasePoint, PhysicsError};

/// Largest acceptable probability mass outside the grid.
pub const TAIL_MASS_LIMIT: f64 = 1e-8;

fn component_marginals(
    cfg: &CatConfig,
    t: f64,
    spec: &GridSpec,
) -> Result<(Profile1D, Profile1D), OracleError> {
    let env = cfg.env();
    let half = 0.5 * cfg.d();
    let left = |pt: PhasePoint| {
        equilibrium_wigner(
            env,
            PhasePoint {
                q: pt.q + half,
                ..pt
            },
        )
    };
    let right = |pt: PhasePoint| {
        equilibrium_wigner(
            env,
            PhasePoint {
                q: pt.q - half,
                ..pt
            },
        )
    };
    let p_left = marginalize_p(&evolve_by_characteristics(left, t, env, spec)?);
    let p_right = marginalize_p(&evolve_by_characteristics(right, t, env, spec)?);
    Ok((p_left, p_right))
}

fn tail_mass(p_left: &Profile1D, p_right: &Profile1D) -> f64 {
    (1.0 - integrate_profile(p_left))
        .abs()
        .max((1.0 - integrate_profile(p_right)).abs())
}

fn too_narrow(cfg: &CatConfig, tail_mass: f64) -> OracleError {
    let wide = GridSpec::for_cat(cfg);
    OracleError::GridTooNarrow {
        tail_mass,
        limit: TAIL_MASS_LIMIT,
        q_half_needed: wide.q_max(),
        p_half_needed: wide.p_max(),
    }
}

/// Larger of the two single-component masses missing from the grid at time
/// `t`, measured by quadrature.
pub fn component_tail_mass(cfg: &CatConfig, t: f64, spec: &GridSpec) -> Result<f64, OracleError> {
    let (p_left, p_right) = component_marginals(cfg, t, spec)?;
    Ok(tail_mass(&p_left, &p_right))
}

/// [`component_tail_mass`], failing with an advisory [`OracleError::GridTooNarrow`]
/// when it exceeds [`TAIL_MASS_LIMIT`].
pub fn check_tail_mass(cfg: &CatConfig, t: f64, spec: &GridSpec) -> Result<f64, OracleError> {
    let tail = component_tail_mass(cfg, t, spec)?;
    if tail > TAIL_MASS_LIMIT {
        Err(too_narrow(cfg, tail))
    } else {
        Ok(tail)
    }
}

/// Attenuation `a(t)` estimated from quadrature marginals on `spec`.
///
/// The grid is shifted by less than one spacing so a node sits on `q = 0`.
/// Fails if the fringes are under-resolved or more than
/// [`TAIL_MASS_LIMIT`] of a component falls outside the grid.
pub fn extract_attenuation_numeric(
    cfg: &CatConfig,
    t: f64,
    spec: &GridSpec,
) -> Result<f64, OracleError> {
    if !t.is_finite() {
        return Err(PhysicsError::NonFiniteTime(t).into());
    }
    spec.check_fringe_resolution(cfg)?;
    let grid = spec.aligned_to_origin();
    let origin = grid
        .origin_index()
        .ok_or_else(|| OracleError::InvalidGrid("q range must contain the origin".into()))?;

    let (p_left, p_right) = component_marginals(cfg, t, &grid)?;
    let tail = tail_mass(&p_left, &p_right);
    if tail > TAIL_MASS_LIMIT {
        return Err(too_narrow(cfg, tail));
    }

    let env = cfg.env();
    let bracket = |pt| superpose(|x| equilibrium_wigner(env, x), cfg.d(), pt, env.hbar());
    let p_bracket = marginalize_p(&evolve_by_characteristics(bracket, t, env, &grid)?);
    let norm = integrate_profile(&p_bracket).recip();

    let total = norm * p_bracket.values[origin];
    let left = norm * p_left.values[origin];
    let right = norm * p_right.values[origin];
    let interf = total - left - right;
    Ok(interf / (2.0 * (left * right).sqrt()))
}
