//! Thermal equilibrium state of the oscillator and its second moments.

use crate::PhysicsError;

/// How the temperature of the environment is specified.
///
/// Either form determines the other through `coth(ħω/2kT) = 2N + 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Temperature {
    /// Thermal energy `kT` (energy units).
    Energy(f64),
    /// Mean occupation number `N` (dimensionless).
    Occupation(f64),
}

/// Harmonic oscillator in contact with a heat bath.
///
/// Both `kT` and `N` are stored after conversion. The thermal factor
/// `coth(ħω/2kT) = 2N + 1` is computed once from whichever input was given,
/// so an occupation-number input keeps `2N + 1` exact and `kT = 0` gives a
/// factor of exactly one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalOscillator {
    mass: f64,
    omega: f64,
    hbar: f64,
    kt: f64,
    nbar: f64,
    coth_factor: f64,
}

/// Equilibrium second moments `⟨q²⟩` and `⟨q̇²⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalMoments {
    pub q2: f64,
    pub qdot2: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64, PhysicsError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(PhysicsError::InvalidParameter { name, value })
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<f64, PhysicsError> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(PhysicsError::InvalidParameter { name, value })
    }
}

impl ThermalOscillator {
    pub fn new(
        mass: f64,
        omega: f64,
        hbar: f64,
        temperature: Temperature,
    ) -> Result<Self, PhysicsError> {
        let mass = positive("mass", mass)?;
        let omega = positive("omega", omega)?;
        let hbar = positive("hbar", hbar)?;
        let quantum = hbar * omega;
        let (kt, nbar, coth_factor) = match temperature {
            Temperature::Energy(kt) => {
                let kt = non_negative("kT", kt)?;
                if kt == 0.0 {
                    (0.0, 0.0, 1.0)
                } else {
                    let x = quantum / kt;
                    // N = 1/(e^x - 1); expm1 overflow gives N = 0 as wanted.
                    let nbar = 1.0 / x.exp_m1();
                    (kt, nbar, 1.0 / (0.5 * x).tanh())
                }
            }
            Temperature::Occupation(nbar) => {
                let nbar = non_negative("nbar", nbar)?;
                let kt = if nbar == 0.0 {
                    0.0
                } else {
                    quantum / (1.0 / nbar).ln_1p()
                };
                (kt, nbar, 2.0 * nbar + 1.0)
            }
        };
        Ok(Self {
            mass,
            omega,
            hbar,
            kt,
            nbar,
            coth_factor,
        })
    }

    /// Dimensionless oscillator with `m = ω = ħ = 1`.
    pub fn dimensionless(temperature: Temperature) -> Result<Self, PhysicsError> {
        Self::new(1.0, 1.0, 1.0, temperature)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn kt(&self) -> f64 {
        self.kt
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    /// `coth(ħω/2kT)`, equal to `2N + 1`.
    pub fn coth_factor(&self) -> f64 {
        self.coth_factor
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.kt == 0.0
    }

    pub fn moments(&self) -> ThermalMoments {
        thermal_moments(self)
    }
}

/// `⟨q²⟩ = (ħ/2mω) coth(ħω/2kT)` and `⟨q̇²⟩ = ω²⟨q²⟩`.
pub fn thermal_moments(env: &ThermalOscillator) -> ThermalMoments {
    let q2 = env.hbar / (2.0 * env.mass * env.omega) * env.coth_factor;
    ThermalMoments {
        q2,
        qdot2: env.omega * env.omega * q2,
    }
}
