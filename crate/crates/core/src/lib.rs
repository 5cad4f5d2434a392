//! Wigner-function description of a Schrödinger-cat superposition of two
//! displaced thermal equilibrium states of a harmonic oscillator.
//!
//! The crate root re-exports the closed-form layer: thermal moments, the
//! exact phase-space flow, the equilibrium and cat Wigner functions, their
//! coordinate marginals and the attenuation coefficients of the interference
//! term. [`oracle`] holds the independent numerical checks (grids,
//! quadrature, characteristics evolution, a pure-state Wigner transform) and
//! [`cli`] the command-line front end.
//!
//! All operations are pure functions of immutable inputs.

mod attenuation;
mod error;
mod marginal;
mod phase;
mod thermal;
mod wigner;

pub mod cli;
pub mod oracle;

pub use attenuation::{
    attenuation_coordinate, attenuation_coordinate_definitional, attenuation_coordinate_sinh,
    attenuation_phase_space, attenuation_sample, small_time_expansion, AttenuationSample,
};
pub use error::PhysicsError;
pub use marginal::{cat_marginal, cat_marginal_terms, equilibrium_marginal, MarginalTerms};
pub use phase::{flow, PhasePoint};
pub use thermal::{thermal_moments, Temperature, ThermalMoments, ThermalOscillator};
pub use wigner::{
    cat_normalization, cat_wigner, cat_wigner_by_superposition, equilibrium_invariance_residual,
    equilibrium_wigner, superpose, CatConfig,
};
