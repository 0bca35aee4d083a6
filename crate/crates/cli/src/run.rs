use std::path::PathBuf;

use qthermo::gibbs::{beta_grid, sweep};
use qthermo::priors::{
    marginal_check, prior_normalization_check, prior_pdf, sample_prior, structure_function,
};
use qthermo::qfi::{qfi_closed_form, qfi_determinant, qfi_numeric};
use qthermo::{BlochPoint64, Family, Gibbs64, GibbsParams64, QuadratureSpec64, Quantity};

use crate::config::{CommandKind, Format, RunConfig, DEFAULT_COUNT, DEFAULT_SEED};
use crate::figures;
use crate::table::{Cell, Table};
use crate::CliError;

/// Threshold for the numeric-vs-closed-form QFI check.
pub const QFI_TOLERANCE: f64 = 1e-8;
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;
pub const MARGINAL_TOLERANCE: f64 = 1e-8;

/// An internal assertion attached to a command's output.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Result of a command: text for stdout (or `output_path`) and the internal
/// checks that decide the exit code.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub text: Option<String>,
    pub checks: Vec<Check>,
    /// Files written directly by the command.
    pub files: Vec<PathBuf>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn family(config: &RunConfig) -> Result<Family, CliError> {
    Ok(Family::from_n(config.require_n()?)?)
}

fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

/// Runs one command. `env_tolerance` is the raw value of the tolerance
/// environment variable, if set.
pub fn execute(config: &RunConfig, env_tolerance: Option<&str>) -> Result<Report, CliError> {
    let spec = config.quadrature(env_tolerance)?;
    match config.command {
        CommandKind::Qfi => cmd_qfi(config),
        CommandKind::PriorPdf
        | CommandKind::PriorStructure
        | CommandKind::PriorNormcheck
        | CommandKind::PriorMarginalcheck
        | CommandKind::PriorSample => cmd_prior(config, &spec),
        CommandKind::GibbsPdf
        | CommandKind::GibbsMean
        | CommandKind::GibbsVar
        | CommandKind::GibbsEntropy
        | CommandKind::GibbsFisher
        | CommandKind::GibbsJeffreys
        | CommandKind::GibbsSweep => cmd_gibbs(config, &spec),
        CommandKind::Figures => {
            let dir = config
                .output_path
                .clone()
                .unwrap_or_else(|| PathBuf::from("figures"));
            figures::write_figures(&dir, &spec, config.svg)
        }
    }
}

fn point(config: &RunConfig, fam: Family) -> Result<BlochPoint64, CliError> {
    let coords = config
        .point
        .clone()
        .ok_or_else(|| CliError::Usage("missing required parameter point".into()))?;
    if coords.len() != fam.dim() {
        return Err(CliError::Usage(format!(
            "n = {} needs a {}-coordinate point, got {}",
            fam.n(),
            fam.dim(),
            coords.len()
        )));
    }
    Ok(BlochPoint64::new(coords)?)
}

fn cmd_qfi(config: &RunConfig) -> Result<Report, CliError> {
    let fam = family(config)?;
    let p = point(config, fam)?;
    let closed = qfi_closed_form(&p)?;
    let numeric = qfi_numeric(&p)?;
    let det_formula = qfi_determinant(&p)?;
    let det_closed = closed.determinant();
    let det_numeric = numeric.determinant();
    let deviation = numeric.max_abs_diff(&closed);

    let mut t = Table::new(["quantity", "row", "col", "value"]);
    for (label, m) in [("closed_form", &closed), ("numeric_sld", &numeric)] {
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                t.push(vec![label.into(), i.into(), j.into(), m.get(i, j).into()]);
            }
        }
    }
    let scalar = |t: &mut Table, name: &str, v: f64| {
        t.push(vec![name.into(), Cell::Empty, Cell::Empty, v.into()]);
    };
    scalar(&mut t, "max_deviation", deviation);
    scalar(&mut t, "det", det_formula);
    scalar(&mut t, "det_closed_form", det_closed);
    scalar(&mut t, "det_numeric_sld", det_numeric);

    let det_rel = ((det_numeric - det_formula) / det_formula).abs();
    Ok(Report {
        text: Some(render(&t, config.format)),
        checks: vec![
            Check::new(
                "qfi_numeric_matches_closed_form",
                deviation < QFI_TOLERANCE,
                format!("max deviation {deviation:e}"),
            ),
            Check::new(
                "qfi_determinant_matches_formula",
                det_rel < QFI_TOLERANCE,
                format!("relative deviation {det_rel:e}"),
            ),
            Check::new(
                "qfi_positive_definite",
                numeric.is_positive_definite(),
                "Cholesky",
            ),
        ],
        files: Vec::new(),
    })
}

fn cmd_prior(config: &RunConfig, spec: &QuadratureSpec64) -> Result<Report, CliError> {
    let fam = family(config)?;
    let n = fam.n();
    let mut checks = Vec::new();
    let table = match config.command {
        CommandKind::PriorPdf => {
            let p = point(config, fam)?;
            let mut t = Table::new(["n", "radius", "pdf"]);
            t.push(vec![
                n.into(),
                p.radius().into(),
                prior_pdf(fam, &p)?.into(),
            ]);
            t
        }
        CommandKind::PriorStructure => {
            let z = config
                .z
                .ok_or_else(|| CliError::Usage("missing required parameter z".into()))?;
            let mut t = Table::new(["n", "z", "structure"]);
            t.push(vec![n.into(), z.into(), structure_function(fam, z)?.into()]);
            t
        }
        CommandKind::PriorNormcheck => {
            let r = prior_normalization_check(fam, spec)?;
            let dev = (r.mass - 1.0).abs();
            checks.push(Check::new(
                "prior_mass_is_one",
                dev <= NORMALIZATION_TOLERANCE,
                format!("|mass - 1| = {dev:e}"),
            ));
            let mut t = Table::new(["n", "unnormalized_mass", "mass", "err_est"]);
            t.push(vec![
                n.into(),
                r.unnormalized_mass.into(),
                r.mass.into(),
                r.err_est.into(),
            ]);
            t
        }
        CommandKind::PriorMarginalcheck => {
            let r = marginal_check(fam, spec)?;
            checks.push(Check::new(
                "marginal_is_uniform",
                r.max_deviation < MARGINAL_TOLERANCE,
                format!("max deviation {:e}", r.max_deviation),
            ));
            let mut t = Table::new(["n", "sub_point", "value", "expected", "deviation"]);
            for (s, v) in r.sub_points.iter().zip(&r.values) {
                let coords: Vec<String> = s.iter().map(|c| format!("{c:?}")).collect();
                t.push(vec![
                    n.into(),
                    coords.join(";").into(),
                    (*v).into(),
                    r.expected.into(),
                    (v - r.expected).abs().into(),
                ]);
            }
            t
        }
        CommandKind::PriorSample => {
            let count = config.count.unwrap_or(DEFAULT_COUNT);
            let seed = config.seed.unwrap_or(DEFAULT_SEED);
            let batch = sample_prior::<f64>(fam, count, seed)?;
            let worst = batch
                .points
                .iter()
                .map(|p| p.radius())
                .fold(0.0f64, f64::max);
            checks.push(Check::new(
                "sample_radii_within_ball",
                worst <= 1.0,
                format!("max radius {worst:?}"),
            ));
            let mut cols = vec!["index".to_string()];
            cols.extend(fam.coordinate_names().iter().map(|s| s.to_string()));
            let mut t = Table::new(cols);
            for (i, p) in batch.points.iter().enumerate() {
                let mut row = vec![Cell::from(i)];
                row.extend(p.coords().iter().map(|&c| Cell::from(c)));
                t.push(row);
            }
            t
        }
        _ => unreachable!("dispatched on prior commands"),
    };
    Ok(Report {
        text: Some(render(&table, config.format)),
        checks,
        files: Vec::new(),
    })
}

fn cmd_gibbs(config: &RunConfig, spec: &QuadratureSpec64) -> Result<Report, CliError> {
    let fam = family(config)?;
    let n = fam.n();
    let table = if config.command == CommandKind::GibbsSweep {
        let quantity: Quantity = config
            .quantity
            .as_deref()
            .ok_or_else(|| CliError::Usage("missing required parameter quantity".into()))?
            .parse()?;
        let g = config.require_grid()?;
        let grid = beta_grid(g.min, g.max, g.step)?;
        let curve = sweep(quantity, fam, &grid, spec)?;
        let mut t = Table::new(["beta", quantity.name()]);
        for (b, v) in curve.beta_grid.iter().zip(&curve.values) {
            t.push(vec![(*b).into(), (*v).into()]);
        }
        t
    } else {
        let beta = config.require_beta()?;
        let g = Gibbs64::new(GibbsParams64::new(fam, beta)?, spec)?;
        match config.command {
            CommandKind::GibbsPdf => {
                let z = config
                    .z
                    .ok_or_else(|| CliError::Usage("missing required parameter z".into()))?;
                let mut t = Table::new(["n", "beta", "z", "pdf"]);
                t.push(vec![n.into(), beta.into(), z.into(), g.pdf(z)?.into()]);
                t
            }
            other => {
                let quantity = match other {
                    CommandKind::GibbsMean => Quantity::Mean,
                    CommandKind::GibbsVar => Quantity::Variance,
                    CommandKind::GibbsEntropy => Quantity::RelativeEntropy,
                    CommandKind::GibbsFisher => Quantity::Fisher,
                    CommandKind::GibbsJeffreys => Quantity::Jeffreys,
                    _ => unreachable!("dispatched on gibbs commands"),
                };
                let mut t = Table::new(["n", "beta", quantity.name()]);
                t.push(vec![n.into(), beta.into(), quantity.evaluate(&g)?.into()]);
                t
            }
        }
    };
    Ok(Report {
        text: Some(render(&table, config.format)),
        checks: Vec::new(),
        files: Vec::new(),
    })
}
