//! Independent numerical checks of the closed forms.
//!
//! Everything here works on phase-space grids: sampling, trapezoid
//! quadrature, marginals, exact evolution along characteristics, a direct
//! Wigner transform of the zero-temperature wavefunction, and an extraction
//! of the coordinate-space attenuation that never touches its closed form.

mod evolve;
mod extract;
mod grid;
mod pure_state;
mod quadrature;

use thiserror::Error;

use crate::PhysicsError;

pub use evolve::evolve_by_characteristics;
pub use extract::{
    check_tail_mass, component_tail_mass, extract_attenuation_numeric, TAIL_MASS_LIMIT,
};
pub use grid::{
    fringe_spacing_bounds, sample_field, Field2D, GridSpec, Profile1D, DEFAULT_NODES,
    DEFAULT_SIGMAS,
};
pub use pure_state::{pure_cat_wigner_numeric, pure_cat_wigner_transform, WignerTransform};
pub use quadrature::{integrate_2d, integrate_profile, marginalize_p, trapezoid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("non-finite sample {value} at node ({i}, {j}), q = {q}, p = {p}")]
    NonFiniteSample {
        i: usize,
        j: usize,
        q: f64,
        p: f64,
        value: f64,
    },
    #[error(
        "grid too narrow: tail mass {tail_mass:.3e} exceeds {limit:.0e}; widen the grid to at \
         least q in ±{q_half_needed:.4}, p in ±{p_half_needed:.4}"
    )]
    GridTooNarrow {
        tail_mass: f64,
        limit: f64,
        q_half_needed: f64,
        p_half_needed: f64,
    },
    #[error(
        "interference fringes under-resolved: dq = {dq:.4e} (max {dq_max:.4e}), \
         dp = {dp:.4e} (max {dp_max:.4e}); add nodes"
    )]
    FringeUnderResolved {
        dq: f64,
        dp: f64,
        dq_max: f64,
        dp_max: f64,
    },
    #[error("pure-state oracle requires kT = 0, got kT = {0}")]
    NonZeroTemperature(f64),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
}
