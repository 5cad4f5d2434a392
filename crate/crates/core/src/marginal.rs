//! Coordinate-space marginals of the equilibrium and cat states.

use std::f64::consts::PI;

use crate::wigner::overlap_exponent;
use crate::{cat_normalization, CatConfig, ThermalOscillator};

/// `P₀(q) = (2π⟨q²⟩)^(−1/2) exp{−q²/2⟨q²⟩}`.
///
/// The equilibrium state is stationary, so this is also the marginal at any
/// later time.
pub fn equilibrium_marginal(env: &ThermalOscillator, q: f64) -> f64 {
    let q2 = env.moments().q2;
    (-q * q / (2.0 * q2)).exp() / (2.0 * PI * q2).sqrt()
}

/// The three additive terms of the cat coordinate distribution at `(q, t)`,
/// each carrying the common factor `A₀P₀(q)`.
///
/// `left` comes from the component that starts at `q = −d/2` and `right`
/// from the one at `q = +d/2`; `interf` is the oscillating cross term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarginalTerms {
    pub left: f64,
    pub right: f64,
    pub interf: f64,
}

impl MarginalTerms {
    pub fn total(&self) -> f64 {
        self.left + self.right + self.interf
    }
}

pub fn cat_marginal_terms(cfg: &CatConfig, q: f64, t: f64) -> MarginalTerms {
    let env = cfg.env();
    let q2 = env.moments().q2;
    let d = cfg.d();
    let (s, c) = (env.omega() * t).sin_cos();
    let common = cat_normalization(cfg) * equilibrium_marginal(env, q);
    let base = d * d * c * c / 4.0;
    let shift = q * d * c;
    let left = common * (-(base + shift) / (2.0 * q2)).exp();
    let right = common * (-(base - shift) / (2.0 * q2)).exp();
    let envelope = (-overlap_exponent(cfg) * c * c).exp();
    let phase = d * env.mass() * env.omega() * q * s / env.hbar();
    MarginalTerms {
        left,
        right,
        interf: 2.0 * common * envelope * phase.cos(),
    }
}

/// `P⁽²⁾(q, t)`, the sum of [`cat_marginal_terms`].
pub fn cat_marginal(cfg: &CatConfig, q: f64, t: f64) -> f64 {
    cat_marginal_terms(cfg, q, t).total()
}
