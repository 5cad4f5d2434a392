//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p catphase --test acceptance`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use catphase::cli::verify::cat_wigner_scale;
use catphase::oracle::{
    extract_attenuation_numeric, integrate_2d, marginalize_p, pure_cat_wigner_transform,
    sample_field, trapezoid, GridSpec,
};
use catphase::{
    attenuation_coordinate, attenuation_coordinate_sinh, attenuation_sample, cat_marginal,
    cat_wigner, cat_wigner_by_superposition, equilibrium_invariance_residual, equilibrium_wigner,
    small_time_expansion, CatConfig, PhasePoint, Temperature, ThermalOscillator,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn unit_cat(kt: f64, d: f64) -> CatConfig {
    CatConfig::new(
        ThermalOscillator::dimensionless(Temperature::Energy(kt)).unwrap(),
        d,
    )
    .unwrap()
}

/// The three built-in parameter sets: `m = ω = ħ = 1`, `d = 4`.
fn builtin() -> Vec<CatConfig> {
    [0.0, 1.0, 10.0]
        .iter()
        .map(|&kt| unit_cat(kt, 4.0))
        .collect()
}

fn random_points(cat: &CatConfig, n: usize, rng: &mut ChaCha8Rng) -> Vec<(PhasePoint, f64)> {
    let env = cat.env();
    let m = env.moments();
    let q_half = 0.5 * cat.d() + 5.0 * m.q2.sqrt();
    let p_half = 0.5 * cat.d() + 5.0 * m.qdot2.sqrt();
    (0..n)
        .map(|_| {
            let pt = PhasePoint::new(
                rng.gen_range(-q_half..q_half),
                rng.gen_range(-p_half..p_half),
            )
            .unwrap();
            (pt, rng.gen_range(0.0..2.0 * PI))
        })
        .collect()
}

fn c1_path_equivalence() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sets = builtin();
    let samples: Vec<_> = sets
        .iter()
        .map(|c| random_points(c, 10_000, &mut rng))
        .collect();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (cat, pts) in sets.iter().zip(&samples) {
        for &(pt, t) in pts {
            let a = cat_wigner(cat, pt, t);
            let b = cat_wigner_by_superposition(cat, pt, t);
            worst = worst.max((a - b).abs() / cat_wigner_scale(cat, pt, t));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= TOL && elapsed < Duration::from_secs(1),
        format!("max relative deviation {worst:.3e} (tol {TOL:e}) over 3x10^4 samples in {elapsed:.2?} (limit 1 s)"),
    )
}

fn c2_form_equivalence() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let cat = unit_cat(rng.gen_range(0.01..30.0), rng.gen_range(0.0..8.0));
        let t = rng.gen_range(0.0..2.0 * PI);
        let a = attenuation_coordinate(&cat, t).unwrap();
        let b = attenuation_coordinate_sinh(&cat, t).unwrap().unwrap();
        worst = worst.max((a - b).abs() / a);
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= TOL && elapsed < Duration::from_secs(1),
        format!(
            "max relative deviation {worst:.3e} (tol {TOL:e}) over 10^3 samples in {elapsed:.2?}"
        ),
    )
}

fn c3_equilibrium_invariance() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let env = ThermalOscillator::new(
            rng.gen_range(0.2..5.0),
            rng.gen_range(0.2..5.0),
            rng.gen_range(0.2..2.0),
            Temperature::Energy(rng.gen_range(0.0..20.0)),
        )
        .unwrap();
        let m = env.moments();
        let pt = PhasePoint::new(
            rng.gen_range(-6.0..6.0) * m.q2.sqrt(),
            rng.gen_range(-6.0..6.0) * env.mass() * m.qdot2.sqrt(),
        )
        .unwrap();
        let t = rng.gen_range(-20.0..20.0);
        worst = worst
            .max(equilibrium_invariance_residual(&env, pt, t).abs() / equilibrium_wigner(&env, pt));
    }
    outcome(
        worst <= TOL,
        format!("max relative residual {worst:.3e} (tol {TOL:e}) over 10^4 samples"),
    )
}

fn one_period_times(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

fn c4_normalization_persistence() -> Outcome {
    const TOL_2D: f64 = 1e-7;
    const TOL_1D: f64 = 1e-8;
    let start = Instant::now();
    let mut worst_2d = 0.0f64;
    let mut worst_1d = 0.0f64;
    let mut grid_ok = true;
    for cat in builtin() {
        let grid = GridSpec::for_cat(&cat);
        grid_ok &= grid.n_q() == 512 && grid.n_p() == 512;
        for t in one_period_times(10) {
            let field = sample_field(|pt| cat_wigner(&cat, pt, t), &grid).unwrap();
            worst_2d = worst_2d.max((integrate_2d(&field) - 1.0).abs());
            let marginal: Vec<f64> = grid
                .q_axis()
                .iter()
                .map(|&q| cat_marginal(&cat, q, t))
                .collect();
            worst_1d = worst_1d.max((trapezoid(&marginal, grid.dq()) - 1.0).abs());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        grid_ok && worst_2d <= TOL_2D && worst_1d <= TOL_1D && elapsed < Duration::from_secs(30),
        format!(
            "|∬W − 1| ≤ {worst_2d:.3e} (tol {TOL_2D:e}), |∫P − 1| ≤ {worst_1d:.3e} (tol {TOL_1D:e}), \
             512x512, 10 times x 3 sets in {elapsed:.2?}"
        ),
    )
}

fn c5_marginal_consistency() -> Outcome {
    const TOL: f64 = 1e-7;
    let mut worst = 0.0f64;
    for cat in builtin() {
        let grid = GridSpec::for_cat(&cat);
        for t in one_period_times(10) {
            let field = sample_field(|pt| cat_wigner(&cat, pt, t), &grid).unwrap();
            let profile = marginalize_p(&field);
            for (&q, &v) in profile.axis.iter().zip(&profile.values) {
                worst = worst.max((v - cat_marginal(&cat, q, t)).abs());
            }
        }
    }
    outcome(
        worst <= TOL,
        format!("max nodal deviation {worst:.3e} (tol {TOL:e}), 10 times x 3 sets"),
    )
}

fn c6_attenuation_oracle() -> Outcome {
    const TOL: f64 = 1e-6;
    const TOL_AW: f64 = 1e-12;
    let mut worst = 0.0f64;
    let mut worst_peak = 0.0f64;
    let mut worst_aw = 0.0f64;
    let mut worst_period = 0.0f64;
    let mut peaks_are_maxima = true;
    for &kt in &[1.0, 10.0] {
        let cat = unit_cat(kt, 2.0);
        let grid = GridSpec::for_cat(&cat);
        let expected_aw = (2.0f64 * 2.0 / (8.0 * cat.env().moments().q2)).exp();
        let mut series = Vec::new();
        for k in 0..32 {
            let t = PI * k as f64 / 32.0;
            let numeric = extract_attenuation_numeric(&cat, t, &grid).unwrap();
            let closed = attenuation_coordinate(&cat, t).unwrap();
            worst = worst.max((numeric - closed).abs());
            let shifted = attenuation_coordinate(&cat, t + PI).unwrap();
            worst_period = worst_period.max((shifted - closed).abs());
            let sample = attenuation_sample(&cat, t).unwrap();
            worst_aw = worst_aw.max((sample.a_w - expected_aw).abs() / expected_aw);
            series.push(numeric);
        }
        let argmax = (0..series.len())
            .max_by(|&i, &j| series[i].partial_cmp(&series[j]).unwrap())
            .unwrap();
        peaks_are_maxima &= argmax == 16;
        for k in 0..3 {
            let t = FRAC_PI_2 + PI * k as f64;
            let peak = extract_attenuation_numeric(&cat, t, &grid).unwrap();
            worst_peak = worst_peak.max((peak - 1.0).abs());
        }
    }
    outcome(
        worst <= TOL && worst_peak <= TOL && worst_aw <= TOL_AW && worst_period <= TOL_AW && peaks_are_maxima,
        format!(
            "|a_num − a| ≤ {worst:.3e}, |a(π/2 + kπ) − 1| ≤ {worst_peak:.3e} (tol {TOL:e}), \
             a_w deviation {worst_aw:.3e}, |a(t + π) − a(t)| ≤ {worst_period:.3e} (tol {TOL_AW:e}), maxima at ωt = π/2: {peaks_are_maxima}"
        ),
    )
}

fn c7_pure_state_oracle() -> Outcome {
    const TOL: f64 = 1e-6;
    let cat = unit_cat(0.0, 4.0);
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut worst_im = 0.0f64;
    for &q in &[-3.0, -1.5, 0.0, 0.8, 2.4] {
        for &p in &[-2.0, -0.6, 0.0, 0.45, 1.7] {
            let pt = PhasePoint::new(q, p).unwrap();
            let w = pure_cat_wigner_transform(cat.env(), 4.0, pt).unwrap();
            worst = worst.max((w.re - cat_wigner(&cat, pt, 0.0)).abs());
            worst_im = worst_im.max(w.im.abs());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= TOL && worst_im < 1e-10 && elapsed < Duration::from_secs(10),
        format!("max deviation {worst:.3e} (tol {TOL:e}), imaginary residual {worst_im:.3e}, 25 points in {elapsed:.2?}"),
    )
}

fn c8_small_time_expansion() -> Outcome {
    let cat = unit_cat(1.0, 2.0);
    let err = |delta: f64| {
        let exact = attenuation_coordinate(&cat, FRAC_PI_2 + delta).unwrap();
        (small_time_expansion(&cat, delta) - exact).abs() / exact
    };
    let ratio = err(0.1) / err(0.01);
    outcome(
        (ratio - 1e4).abs() <= 0.2 * 1e4,
        format!("error ratio δ=0.1 / δ=0.01 is {ratio:.1} (target 10^4 ± 20%)"),
    )
}

fn c9_negativity_witness() -> Outcome {
    let env = ThermalOscillator::dimensionless(Temperature::Energy(0.0)).unwrap();
    let cat = CatConfig::new(env, 8.0 * env.moments().q2.sqrt()).unwrap();
    let field = sample_field(|pt| cat_wigner(&cat, pt, 0.0), &GridSpec::for_cat(&cat)).unwrap();
    let min = field.min();
    outcome(
        min < 0.0,
        format!("minimum of the t = 0 field is {min:.6e}"),
    )
}

fn run_cli(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_catphase"))
        .args(args)
        .env_remove("CATPHASE_OUT")
        .output()
        .expect("binary runs")
        .status
        .code()
        .expect("exit code")
}

fn c10_cli_contract() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    let write = |name: &str, body: &str| {
        let path = root.join(name);
        fs::write(&path, body).unwrap();
        path.to_str().unwrap().to_owned()
    };
    let demo = write(
        "demo.json",
        r#"{"mass": 1, "omega": 1, "hbar": 1, "kT": 0, "d": 6}"#,
    );
    let bad = write(
        "bad.json",
        r#"{"kT": 0, "nbar": 1, "d": 6, "colour": "red"}"#,
    );
    let narrow = write(
        "narrow.json",
        r#"{"kT": 1, "d": 2, "grid": {"q_min": -2, "q_max": 2, "n_q": 64, "p_min": -2, "p_max": 2, "n_p": 64}}"#,
    );
    let dir = |name: &str| root.join(name).to_str().unwrap().to_owned();
    let read = |path: &Path| fs::read(path).unwrap();

    let t_shift = format!("{}", 0.5 + PI);
    let codes = [
        run_cli(&[
            "field",
            "--config",
            &demo,
            "--time",
            "0.5",
            "--out",
            &dir("a"),
        ]),
        run_cli(&[
            "field",
            "--config",
            &demo,
            "--time",
            "0.5",
            "--out",
            &dir("b"),
        ]),
        run_cli(&[
            "field",
            "--config",
            &demo,
            "--time",
            &t_shift,
            "--out",
            &dir("b"),
        ]),
    ];
    let first = read(&root.join("a/field_t0_5.csv"));
    let again = read(&root.join("b/field_t0_5.csv"));
    let shifted = read(&root.join(format!("b/field_t{}.csv", t_shift.replace('.', "_"))));
    let deterministic = codes == [0, 0, 0] && first == again && first == shifted;

    let config_error = run_cli(&["field", "--config", &bad, "--out", &dir("c")]);
    let io_error = run_cli(&[
        "field",
        "--config",
        &demo,
        "--out",
        &format!("{demo}/inside"),
    ]);
    let verify_fail = run_cli(&["verify", "--config", &narrow, "--out", &dir("d")]);
    let report_written = root.join("d/verify.json").exists();

    let exit_codes = codes[0] == 0 && config_error == 1 && io_error == 2 && verify_fail == 3;
    outcome(
        deterministic && exit_codes && report_written,
        format!(
            "byte-identical repeats and half-period shift: {deterministic}; exit codes \
             0/1/2/3 -> {}/{config_error}/{io_error}/{verify_fail}; report written on failure: {report_written}",
            codes[0]
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("C1 path equivalence", c1_path_equivalence),
        ("C2 attenuation form equivalence", c2_form_equivalence),
        ("C3 equilibrium invariance", c3_equilibrium_invariance),
        ("C4 normalization persistence", c4_normalization_persistence),
        ("C5 marginal consistency", c5_marginal_consistency),
        ("C6 attenuation oracle", c6_attenuation_oracle),
        (
            "C7 zero-temperature pure-state oracle",
            c7_pure_state_oracle,
        ),
        ("C8 small-time expansion order", c8_small_time_expansion),
        ("C9 negativity witness", c9_negativity_witness),
        ("C10 CLI determinism and exit codes", c10_cli_contract),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let result = criterion();
        let tag = if result.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", result.detail);
        if !result.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
