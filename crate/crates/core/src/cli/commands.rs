use std::fs;
use std::path::{Path, PathBuf};

use super::config::{Format, RunConfig};
use super::output::{time_tag, Table};
use super::verify::{run_verification, VerifyReport};
use super::CliError;
use crate::oracle::{extract_attenuation_numeric, sample_field};
use crate::{attenuation_coordinate, attenuation_phase_space, cat_marginal_terms, cat_wigner};

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

pub fn prepare_output_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))
}

/// `field_t<t>`: the cat Wigner function at every grid node, `q` outer.
pub fn cmd_field(
    config: &RunConfig,
    t: f64,
    dir: &Path,
    format: Format,
) -> Result<PathBuf, CliError> {
    let grid = config.grid();
    let field = sample_field(|pt| cat_wigner(&config.cat, pt, t), &grid)?;
    let mut table = Table::new(vec!["q", "p", "w"]);
    for ((i, j), &w) in field.values.indexed_iter() {
        table.push(vec![grid.q(i), grid.p(j), w]);
    }
    let stem = format!("field_t{}", time_tag(t));
    table.save(dir, &stem, format).map_err(|e| io_error(dir, e))
}

/// `marginal_t<t>`: the coordinate distribution and its three terms on the
/// grid's `q` axis, shifted so that one row sits at `q = 0`.
pub fn cmd_marginal(
    config: &RunConfig,
    t: f64,
    dir: &Path,
    format: Format,
) -> Result<PathBuf, CliError> {
    let axis = config.grid().aligned_to_origin();
    let mut table = Table::new(vec!["q", "p_total", "p_left", "p_right", "p_interf"]);
    for q in axis.q_axis() {
        let m = cat_marginal_terms(&config.cat, q, t);
        table.push(vec![q, m.total(), m.left, m.right, m.interf]);
    }
    let stem = format!("marginal_t{}", time_tag(t));
    table.save(dir, &stem, format).map_err(|e| io_error(dir, e))
}

/// `attenuation`: `a(t)`, `a_w` and, unless `analytic_only`, the numerically
/// extracted `a(t)` for every configured time.
pub fn cmd_attenuation(
    config: &RunConfig,
    times: &[f64],
    analytic_only: bool,
    dir: &Path,
    format: Format,
) -> Result<PathBuf, CliError> {
    let cat = &config.cat;
    let grid = config.grid();
    let a_w = attenuation_phase_space(cat);
    let columns = if analytic_only {
        vec!["t", "a", "a_w"]
    } else {
        vec!["t", "a", "a_w", "a_numeric"]
    };
    let mut table = Table::new(columns);
    for &t in times {
        let a = attenuation_coordinate(cat, t).map_err(|e| CliError::Config(e.to_string()))?;
        let mut row = vec![t, a, a_w];
        if !analytic_only {
            row.push(extract_attenuation_numeric(cat, t, &grid)?);
        }
        table.push(row);
    }
    table
        .save(dir, "attenuation", format)
        .map_err(|e| io_error(dir, e))
}

/// Runs the invariant suite and writes `verify.json`.
pub fn cmd_verify(config: &RunConfig, dir: &Path) -> Result<(VerifyReport, PathBuf), CliError> {
    let report = run_verification(config);
    let path = dir.join("verify.json");
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    fs::write(&path, text).map_err(|e| io_error(&path, e))?;
    Ok((report, path))
}
