//! Invariant suite behind `catphase verify`.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::RunConfig;
use crate::oracle::{
    check_tail_mass, evolve_by_characteristics, extract_attenuation_numeric, integrate_2d,
    marginalize_p, pure_cat_wigner_transform, sample_field, trapezoid, GridSpec, OracleError,
};
use crate::{
    attenuation_coordinate, attenuation_coordinate_definitional, attenuation_coordinate_sinh,
    attenuation_phase_space, cat_marginal, cat_marginal_terms, cat_normalization, cat_wigner,
    cat_wigner_by_superposition, equilibrium_invariance_residual, equilibrium_wigner, flow,
    small_time_expansion, CatConfig, PhasePoint, Temperature, ThermalOscillator,
};

/// Agreement between two evaluation paths of the same closed form.
pub const PATH_TOLERANCE: f64 = 1e-12;
pub const NORMALIZATION_2D_TOLERANCE: f64 = 1e-7;
pub const NORMALIZATION_1D_TOLERANCE: f64 = 1e-8;
pub const MARGINAL_TOLERANCE: f64 = 1e-7;
pub const ATTENUATION_TOLERANCE: f64 = 1e-6;
pub const PURE_STATE_TOLERANCE: f64 = 1e-6;
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;
pub const EXPANSION_RATIO_TOLERANCE: f64 = 0.2;

const SEED: u64 = 0x5eed_ca75;
const SAMPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub tolerance: f64,
    /// `None` when the measurement itself failed; see `message`.
    pub residual: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Check {
    fn at_most(id: String, tolerance: f64, residual: f64) -> Self {
        Self {
            id,
            tolerance,
            residual: Some(residual),
            passed: residual <= tolerance,
            message: None,
        }
    }

    fn measured(id: String, tolerance: f64, residual: Result<f64, OracleError>) -> Self {
        match residual {
            Ok(r) => Self::at_most(id, tolerance, r),
            Err(e) => Self {
                id,
                tolerance,
                residual: None,
                passed: false,
                message: Some(e.to_string()),
            },
        }
    }

    fn with_message(mut self, message: impl Into<String>) -> Self {
        self.message = Some(message.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub status: &'static str,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn new(checks: Vec<Check>) -> Self {
        let status = if checks.iter().all(|c| c.passed) {
            "pass"
        } else {
            "fail"
        };
        Self { status, checks }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Parameters one block of checks runs at.
#[derive(Clone, Debug)]
pub struct ParameterSet {
    pub label: String,
    pub cat: CatConfig,
    pub grid: GridSpec,
    pub times: Vec<f64>,
}

/// `m = ω = ħ = 1`, `d = 4` at `kT ∈ {0, ħω, 10ħω}`.
pub fn builtin_sets() -> Vec<ParameterSet> {
    [("kT0", 0.0), ("kT1", 1.0), ("kT10", 10.0)]
        .into_iter()
        .map(|(label, kt)| {
            let env = ThermalOscillator::dimensionless(Temperature::Energy(kt)).expect("valid");
            let cat = CatConfig::new(env, 4.0).expect("valid");
            ParameterSet {
                label: format!("builtin_{label}"),
                grid: GridSpec::for_cat(&cat),
                cat,
                times: vec![0.0, 0.4, FRAC_PI_2],
            }
        })
        .collect()
}

pub fn run_verification(config: &RunConfig) -> VerifyReport {
    let mut sets = vec![ParameterSet {
        label: "configured".into(),
        cat: config.cat,
        grid: config.grid(),
        times: config.times.clone(),
    }];
    sets.extend(builtin_sets());

    let mut checks = vec![form_equivalence_random()];
    for set in &sets {
        checks.extend(closed_form_checks(set));
        checks.extend(oracle_checks(set));
    }
    VerifyReport::new(checks)
}

fn sample_points(cat: &CatConfig, n: usize, seed: u64) -> Vec<(PhasePoint, f64)> {
    let env = cat.env();
    let m = env.moments();
    let q_half = 0.5 * cat.d() + 5.0 * m.q2.sqrt();
    let p_half = 0.5 * env.mass() * env.omega() * cat.d() + 5.0 * env.mass() * m.qdot2.sqrt();
    let period = 2.0 * PI / env.omega();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let pt = PhasePoint {
                q: rng.gen_range(-q_half..=q_half),
                p: rng.gen_range(-p_half..=p_half),
            };
            (pt, rng.gen_range(0.0..period))
        })
        .collect()
}

/// Sum of the magnitudes of the three cat terms at `(pt, t)`: the scale
/// against which rounding in either evaluation path is measured.
pub fn cat_wigner_scale(cat: &CatConfig, pt: PhasePoint, t: f64) -> f64 {
    let env = cat.env();
    let o = flow(pt, -t, env);
    let half = 0.5 * cat.d();
    let w = |q| equilibrium_wigner(env, PhasePoint { q, p: o.p });
    cat_normalization(cat) * (w(o.q + half) + w(o.q - half) + 2.0 * w(o.q))
}

fn relative(a: f64, b: f64, scale: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, f64::max)
}

/// Both printed forms of the coordinate attenuation over random
/// `(kT, d, t)` with `kT > 0`.
pub fn form_equivalence_random() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xf0f0);
    let worst = max_of((0..1000).map(|_| {
        let kt = rng.gen_range(0.05..20.0);
        let d = rng.gen_range(0.0..6.0);
        let t = rng.gen_range(0.0..2.0 * PI);
        let env = ThermalOscillator::dimensionless(Temperature::Energy(kt)).expect("valid");
        let cat = CatConfig::new(env, d).expect("valid");
        let a = attenuation_coordinate(&cat, t).expect("finite t");
        let b = attenuation_coordinate_sinh(&cat, t)
            .expect("finite t")
            .expect("kT > 0");
        relative(a, b, a)
    }));
    Check::at_most("global.form_equivalence".into(), PATH_TOLERANCE, worst)
}

fn closed_form_checks(set: &ParameterSet) -> Vec<Check> {
    let cat = &set.cat;
    let env = cat.env();
    let id = |name: &str| format!("{}.{name}", set.label);
    let samples = sample_points(cat, SAMPLES, SEED);
    let half_period = PI / env.omega();
    let mut checks = Vec::new();

    checks.push(Check::at_most(
        id("path_equivalence"),
        PATH_TOLERANCE,
        max_of(samples.iter().map(|&(pt, t)| {
            relative(
                cat_wigner(cat, pt, t),
                cat_wigner_by_superposition(cat, pt, t),
                cat_wigner_scale(cat, pt, t),
            )
        })),
    ));

    checks.push(Check::at_most(
        id("equilibrium_invariance"),
        PATH_TOLERANCE,
        max_of(samples.iter().map(|&(pt, t)| {
            equilibrium_invariance_residual(env, pt, t).abs() / equilibrium_wigner(env, pt)
        })),
    ));

    checks.push(Check::at_most(
        id("flow_inverse"),
        PATH_TOLERANCE,
        max_of(samples.iter().map(|&(pt, t)| {
            let back = flow(flow(pt, t, env), -t, env);
            ((back.q - pt.q).abs() / (1.0 + pt.q.abs()))
                .max((back.p - pt.p).abs() / (1.0 + pt.p.abs()))
        })),
    ));

    checks.push(Check::at_most(
        id("parity"),
        PATH_TOLERANCE,
        max_of(samples.iter().map(|&(pt, t)| {
            relative(
                cat_wigner(cat, pt, t),
                cat_wigner(cat, pt.mirrored(), t),
                cat_wigner_scale(cat, pt, t),
            )
        })),
    ));

    checks.push(Check::at_most(
        id("half_period_recurrence"),
        PATH_TOLERANCE,
        max_of(samples.iter().take(2000).map(|&(pt, t)| {
            let w = relative(
                cat_wigner(cat, pt, t + half_period),
                cat_wigner(cat, pt, t),
                cat_wigner_scale(cat, pt, t),
            );
            let m = cat_marginal_terms(cat, pt.q, t);
            let p = relative(
                cat_marginal(cat, pt.q, t + half_period),
                m.total(),
                m.left + m.right + m.interf.abs(),
            );
            w.max(p)
        })),
    ));

    let a_w = attenuation_phase_space(cat);
    let scan: Vec<f64> = (0..=200)
        .map(|k| 2.0 * half_period * k as f64 / 200.0)
        .collect();
    let range_violation = max_of(scan.iter().map(|&t| {
        let a = attenuation_coordinate(cat, t).expect("finite t");
        let mut v = (a - 1.0).max(0.0);
        if a <= 0.0 {
            v = v.max(1.0);
        }
        v
    }))
    .max((1.0 - a_w).max(0.0));
    checks.push(Check::at_most(
        id("attenuation_range"),
        0.0,
        range_violation,
    ));

    let a_min = attenuation_coordinate_sinh(cat, 0.0)
        .expect("finite t")
        .unwrap_or(1.0);
    let peak = (attenuation_coordinate(cat, half_period / 2.0).expect("finite t") - 1.0).abs();
    let trough = (0..4)
        .map(|k| {
            relative(
                attenuation_coordinate(cat, k as f64 * half_period).expect("finite t"),
                a_min,
                a_min,
            )
        })
        .fold(0.0, f64::max);
    let floor = scan
        .iter()
        .map(|&t| (a_min - attenuation_coordinate(cat, t).expect("finite t")).max(0.0) / a_min)
        .fold(0.0, f64::max);
    checks.push(
        Check::at_most(
            id("attenuation_persistence"),
            PATH_TOLERANCE,
            peak.max(trough).max(floor),
        )
        .with_message(format!("a ranges over [{a_min:.6e}, 1], a_w = {a_w:.6e}")),
    );

    checks.push(Check::at_most(
        id("definitional_attenuation"),
        PATH_TOLERANCE,
        max_of((0..50).map(|k| {
            let t = 2.0 * half_period * k as f64 / 49.0;
            let a = attenuation_coordinate(cat, t).expect("finite t");
            relative(a, attenuation_coordinate_definitional(cat, t), a)
        })),
    ));

    let monotone_kt = {
        let kt = env.kt();
        let kts = [kt, kt + 0.25, 2.0 * kt + 0.5, 4.0 * kt + 1.0];
        let values: Vec<f64> = kts
            .iter()
            .map(|&kt| {
                let e = ThermalOscillator::new(
                    env.mass(),
                    env.omega(),
                    env.hbar(),
                    Temperature::Energy(kt),
                )
                .expect("valid");
                attenuation_coordinate(
                    &CatConfig::new(e, cat.d().max(1.0)).expect("valid"),
                    0.3 / env.omega(),
                )
                .expect("finite t")
            })
            .collect();
        values.windows(2).filter(|w| w[1] >= w[0]).count()
    };
    let monotone_d = if env.is_zero_temperature() {
        0
    } else {
        let values: Vec<f64> = (1..=12)
            .map(|k| {
                attenuation_coordinate(
                    &CatConfig::new(*env, 0.5 * k as f64).expect("valid"),
                    0.3 / env.omega(),
                )
                .expect("finite t")
            })
            .collect();
        values.windows(2).filter(|w| w[1] >= w[0]).count()
    };
    checks.push(
        Check::at_most(
            id("attenuation_monotonicity"),
            0.0,
            (monotone_kt + monotone_d) as f64,
        )
        .with_message("residual counts non-decreasing steps in kT and (for kT > 0) in d"),
    );

    if !env.is_zero_temperature() && cat.d() > 0.0 {
        checks.push(Check::at_most(
            id("form_equivalence"),
            PATH_TOLERANCE,
            max_of((0..200).map(|k| {
                let t = 2.0 * half_period * k as f64 / 199.0;
                let a = attenuation_coordinate(cat, t).expect("finite t");
                let b = attenuation_coordinate_sinh(cat, t)
                    .expect("finite t")
                    .expect("kT > 0");
                relative(a, b, a)
            })),
        ));
        let err = |delta: f64| {
            let exact = attenuation_coordinate(cat, half_period / 2.0 + delta).expect("finite t");
            (small_time_expansion(cat, delta) - exact).abs() / exact
        };
        let scale = 1.0 / env.omega();
        let ratio = err(0.1 * scale) / err(0.01 * scale);
        checks.push(
            Check::at_most(
                id("small_time_expansion_order"),
                EXPANSION_RATIO_TOLERANCE,
                (ratio / 1e4 - 1.0).abs(),
            )
            .with_message(format!(
                "error ratio between ωδ = 0.1 and 0.01 is {ratio:.4e}"
            )),
        );
    }
    checks
}

fn oracle_checks(set: &ParameterSet) -> Vec<Check> {
    let cat = &set.cat;
    let env = cat.env();
    let grid = &set.grid;
    let id = |name: &str| format!("{}.{name}", set.label);
    let mut checks = Vec::new();

    checks.push(Check::measured(
        id("fringe_resolution"),
        0.0,
        grid.check_fringe_resolution(cat).map(|_| 0.0),
    ));

    checks.push(Check::measured(
        id("grid_tail_mass"),
        crate::oracle::TAIL_MASS_LIMIT,
        set.times
            .iter()
            .map(|&t| check_tail_mass(cat, t, grid))
            .try_fold(0.0, |acc: f64, r| r.map(|v| acc.max(v))),
    ));

    let a0 = cat_normalization(cat);
    let bracket =
        |pt| a0 * crate::superpose(|x| equilibrium_wigner(env, x), cat.d(), pt, env.hbar());
    let mut norm_2d = Ok(0.0f64);
    let mut consistency = Ok(0.0f64);
    let mut exactness = Ok(0.0f64);
    for &t in &set.times {
        let fields = sample_field(|pt| cat_wigner(cat, pt, t), grid).and_then(|closed| {
            let evolved = evolve_by_characteristics(bracket, t, env, grid)?;
            Ok((closed, evolved))
        });
        match fields {
            Ok((closed, evolved)) => {
                let n = (integrate_2d(&closed) - 1.0).abs();
                let profile = marginalize_p(&closed);
                let c = max_of(
                    profile
                        .axis
                        .iter()
                        .zip(&profile.values)
                        .map(|(&q, &v)| (v - cat_marginal(cat, q, t)).abs()),
                );
                let e = evolved.max_abs_diff(&closed);
                norm_2d = norm_2d.map(|v| v.max(n));
                consistency = consistency.map(|v| v.max(c));
                exactness = exactness.map(|v| v.max(e));
            }
            Err(e) => {
                norm_2d = Err(e.clone());
                consistency = Err(e.clone());
                exactness = Err(e);
                break;
            }
        }
    }
    checks.push(Check::measured(
        id("normalization_2d"),
        NORMALIZATION_2D_TOLERANCE,
        norm_2d,
    ));
    checks.push(Check::measured(
        id("marginal_consistency"),
        MARGINAL_TOLERANCE,
        consistency,
    ));
    checks.push(Check::measured(
        id("evolution_exactness"),
        PATH_TOLERANCE,
        exactness,
    ));

    let axis = grid.aligned_to_origin();
    checks.push(Check::at_most(
        id("marginal_normalization"),
        NORMALIZATION_1D_TOLERANCE,
        max_of(set.times.iter().map(|&t| {
            let values: Vec<f64> = axis
                .q_axis()
                .iter()
                .map(|&q| cat_marginal(cat, q, t))
                .collect();
            (trapezoid(&values, axis.dq()) - 1.0).abs()
        })),
    ));

    checks.push(Check::measured(
        id("attenuation_numeric"),
        ATTENUATION_TOLERANCE,
        set.times.iter().try_fold(0.0f64, |acc, &t| {
            let numeric = extract_attenuation_numeric(cat, t, grid)?;
            let closed = attenuation_coordinate(cat, t)?;
            Ok(acc.max((numeric - closed).abs()))
        }),
    ));

    if env.is_zero_temperature() {
        let mut worst_re = 0.0f64;
        let mut worst_im = 0.0f64;
        let mut failure = None;
        let reach = 0.5 * cat.d() + 2.0 * env.moments().q2.sqrt();
        let p_reach = 0.5 * env.mass() * env.omega() * cat.d()
            + 2.0 * env.mass() * env.moments().qdot2.sqrt();
        for i in 0..5 {
            for j in 0..5 {
                let pt = PhasePoint {
                    q: reach * (i as f64 / 2.0 - 1.0),
                    p: p_reach * (j as f64 / 2.0 - 1.0) * 0.9,
                };
                match pure_cat_wigner_transform(env, cat.d(), pt) {
                    Ok(w) => {
                        worst_re = worst_re.max((w.re - cat_wigner(cat, pt, 0.0)).abs());
                        worst_im = worst_im.max(w.im.abs());
                    }
                    Err(e) => failure = Some(e),
                }
            }
        }
        match failure {
            Some(e) => checks.push(Check::measured(
                id("pure_state_oracle"),
                PURE_STATE_TOLERANCE,
                Err(e),
            )),
            None => {
                checks.push(Check::at_most(
                    id("pure_state_oracle"),
                    PURE_STATE_TOLERANCE,
                    worst_re,
                ));
                checks.push(Check::at_most(
                    id("pure_state_imaginary"),
                    IMAGINARY_TOLERANCE,
                    worst_im,
                ));
            }
        }
    }

    let witness = CatConfig::new(*env, 8.0 * env.moments().q2.sqrt()).expect("valid");
    let min = sample_field(
        |pt| cat_wigner(&witness, pt, 0.0),
        &GridSpec::for_cat(&witness),
    )
    .map(|f| f.min());
    checks.push(match min {
        Ok(min) => Check {
            id: id("negativity_witness"),
            tolerance: 0.0,
            residual: Some(min),
            passed: min < 0.0,
            message: Some("minimum of the t = 0 field at d = 8σ must be negative".into()),
        },
        Err(e) => Check::measured(id("negativity_witness"), 0.0, Err(e)),
    });

    checks.push(quadrature_convergence(env, &id("quadrature_convergence")));
    checks
}

/// Error of the equilibrium normalization on `n` and `2n` nodes over ±16σ;
/// a second-order rule must shrink it by at least 4.
fn quadrature_convergence(env: &ThermalOscillator, id: &str) -> Check {
    let m = env.moments();
    let err = |n: usize| -> Result<f64, OracleError> {
        let spec =
            GridSpec::symmetric(16.0 * m.q2.sqrt(), n, 16.0 * env.mass() * m.qdot2.sqrt(), n)?;
        let field = sample_field(|pt| equilibrium_wigner(env, pt), &spec)?;
        Ok((integrate_2d(&field) - 1.0).abs())
    };
    match err(16).and_then(|coarse| Ok((coarse, err(32)?))) {
        Ok((coarse, fine)) => {
            let ratio = coarse / fine.max(f64::MIN_POSITIVE);
            Check {
                id: id.into(),
                tolerance: 4.0,
                residual: Some(ratio),
                passed: ratio >= 4.0,
                message: Some(format!(
                    "errors {coarse:.3e} (16 nodes) and {fine:.3e} (32 nodes)"
                )),
            }
        }
        Err(e) => Check::measured(id.into(), 4.0, Err(e)),
    }
}
