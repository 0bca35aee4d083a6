//! Figure-data reproduction: six CSV files, a JSON manifest and optional SVG
//! charts.
//!
//! * `fig1.csv`, `fig2.csv`: columns `z,p_n1,p_n2` on z ∈ [−1, 1] step 0.005,
//!   Gibbs densities at β = −1 and β = 5.
//! * `fig3.csv` … `fig6.csv`: columns `beta,value_n1,value_n2` on
//!   β ∈ [−10, 10] step 0.1 for the mean, variance, relative entropy and
//!   Jeffreys prior.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use qthermo::gibbs::{beta_grid, sweep};
use qthermo::{Family, Gibbs64, GibbsParams64, QuadratureSpec64, Quantity, ThermoCurve64};

use crate::run::{Check, Report};
use crate::svg::{line_chart, Series};
use crate::table::Table;
use crate::CliError;

pub const Z_STEP: f64 = 0.005;
pub const BETA_MIN: f64 = -10.0;
pub const BETA_MAX: f64 = 10.0;
pub const BETA_STEP: f64 = 0.1;
pub const FIG1_BETA: f64 = -1.0;
pub const FIG2_BETA: f64 = 5.0;

/// Symmetry tolerance for odd/even curve checks.
const SYMMETRY_TOL: f64 = 1e-9;

/// One figure's data.
#[derive(Debug, Clone)]
pub struct Figure {
    pub name: &'static str,
    pub title: &'static str,
    pub x_label: &'static str,
    pub table: Table,
    pub x: Vec<f64>,
    pub n1: Vec<f64>,
    pub n2: Vec<f64>,
}

fn density_figure(
    name: &'static str,
    title: &'static str,
    beta: f64,
    spec: &QuadratureSpec64,
) -> Result<Figure, CliError> {
    let z = beta_grid(-1.0, 1.0, Z_STEP)?;
    let g1 = Gibbs64::new(GibbsParams64::new(Family::Complex, beta)?, spec)?;
    let g2 = Gibbs64::new(GibbsParams64::new(Family::Quaternionic, beta)?, spec)?;
    let n1 = z
        .iter()
        .map(|&v| g1.pdf(v))
        .collect::<Result<Vec<_>, _>>()?;
    let n2 = z
        .iter()
        .map(|&v| g2.pdf(v))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(["z", "p_n1", "p_n2"]);
    for i in 0..z.len() {
        table.push(vec![z[i].into(), n1[i].into(), n2[i].into()]);
    }
    Ok(Figure {
        name,
        title,
        x_label: "z",
        table,
        x: z,
        n1,
        n2,
    })
}

fn curve_figure(
    name: &'static str,
    title: &'static str,
    quantity: Quantity,
    spec: &QuadratureSpec64,
) -> Result<(Figure, ThermoCurve64, ThermoCurve64), CliError> {
    let grid = beta_grid(BETA_MIN, BETA_MAX, BETA_STEP)?;
    let c1 = sweep(quantity, Family::Complex, &grid, spec)?;
    let c2 = sweep(quantity, Family::Quaternionic, &grid, spec)?;
    let mut table = Table::new(["beta", "value_n1", "value_n2"]);
    for i in 0..grid.len() {
        table.push(vec![
            grid[i].into(),
            c1.values[i].into(),
            c2.values[i].into(),
        ]);
    }
    let fig = Figure {
        name,
        title,
        x_label: "beta",
        table,
        x: grid,
        n1: c1.values.clone(),
        n2: c2.values.clone(),
    };
    Ok((fig, c1, c2))
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn min_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

fn argmin(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite"))
        .map(|(i, _)| i)
        .expect("non-empty")
}

fn argmax(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite"))
        .map(|(i, _)| i)
        .expect("non-empty")
}

fn symmetry_defect(v: &[f64], odd: bool) -> f64 {
    let k = v.len();
    (0..k)
        .map(|i| {
            let mirror = v[k - 1 - i];
            if odd {
                (v[i] + mirror).abs()
            } else {
                (v[i] - mirror).abs()
            }
        })
        .fold(0.0, f64::max)
}

fn total_variation(v: &[f64]) -> f64 {
    v.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

/// All six figures with the caption-level assertions.
pub struct FigureSet {
    pub figures: Vec<Figure>,
    pub checks: Vec<Check>,
    pub diagnostics: Value,
}

pub fn compute_figures(spec: &QuadratureSpec64) -> Result<FigureSet, CliError> {
    let mut checks = Vec::new();

    let fig1 = density_figure("fig1", "Gibbs densities, beta = -1", FIG1_BETA, spec)?;
    let (p1, p2) = (max_of(&fig1.n1), max_of(&fig1.n2));
    checks.push(Check::new(
        "fig1_quaternionic_peak_higher",
        p2 > p1,
        format!("peak n=1 {p1:?}, n=2 {p2:?}"),
    ));

    let fig2 = density_figure("fig2", "Gibbs densities, beta = 5", FIG2_BETA, spec)?;
    let (p1, p2) = (max_of(&fig2.n1), max_of(&fig2.n2));
    checks.push(Check::new(
        "fig2_complex_peak_higher",
        p1 > p2,
        format!("peak n=1 {p1:?}, n=2 {p2:?}"),
    ));

    let (fig3, m1, m2) = curve_figure("fig3", "Mean of z", Quantity::Mean, spec)?;
    let odd = symmetry_defect(&m1.values, true).max(symmetry_defect(&m2.values, true));
    checks.push(Check::new(
        "fig3_mean_odd",
        odd < SYMMETRY_TOL,
        format!("max |m(b) + m(-b)| = {odd:e}"),
    ));
    let decreasing =
        m1.values.windows(2).all(|w| w[1] < w[0]) && m2.values.windows(2).all(|w| w[1] < w[0]);
    checks.push(Check::new(
        "fig3_mean_strictly_decreasing",
        decreasing,
        "both curves",
    ));
    let flatter = m1
        .values
        .iter()
        .zip(&m2.values)
        .all(|(a, b)| b.abs() <= a.abs());
    checks.push(Check::new(
        "fig3_quaternionic_flatter",
        flatter,
        "|mean n=2| <= |mean n=1| pointwise",
    ));

    let (fig4, v1, v2) = curve_figure("fig4", "Variance of z", Quantity::Variance, spec)?;
    let even = symmetry_defect(&v1.values, false).max(symmetry_defect(&v2.values, false));
    checks.push(Check::new(
        "fig4_variance_even",
        even < SYMMETRY_TOL,
        format!("max |v(b) - v(-b)| = {even:e}"),
    ));
    let (vm1, vm2) = (max_of(&v1.values), max_of(&v2.values));
    checks.push(Check::new(
        "fig4_quaternionic_lower_max",
        vm2 < vm1,
        format!("max n=1 {vm1:?}, n=2 {vm2:?}"),
    ));
    let (tv1, tv2) = (total_variation(&v1.values), total_variation(&v2.values));

    let (fig5, d1, d2) = curve_figure(
        "fig5",
        "Relative entropy to uniform",
        Quantity::RelativeEntropy,
        spec,
    )?;
    let zero = fig5
        .x
        .iter()
        .position(|&b| b == 0.0)
        .expect("grid contains 0");
    let minima_at_zero = argmin(&d1.values) == zero && argmin(&d2.values) == zero;
    checks.push(Check::new(
        "fig5_minima_at_zero",
        minima_at_zero,
        "argmin of both curves is beta = 0",
    ));
    let (dm1, dm2) = (min_of(&d1.values), min_of(&d2.values));
    checks.push(Check::new(
        "fig5_quaternionic_greater_minimum",
        dm2 > dm1,
        format!("min n=1 {dm1:?}, n=2 {dm2:?}"),
    ));

    let (fig6, j1, j2) = curve_figure(
        "fig6",
        "Unnormalized Jeffreys prior over beta",
        Quantity::Jeffreys,
        spec,
    )?;
    let peaks_at_zero = argmax(&j1.values) == zero && argmax(&j2.values) == zero;
    checks.push(Check::new(
        "fig6_peaks_at_zero",
        peaks_at_zero,
        "argmax of both curves is beta = 0",
    ));
    let (jm1, jm2) = (max_of(&j1.values), max_of(&j2.values));
    checks.push(Check::new(
        "fig6_quaternionic_lower_peak",
        jm2 < jm1,
        format!("peak n=1 {jm1:?}, n=2 {jm2:?}"),
    ));

    let diagnostics = json!({
        "fig4_total_variation": {
            "n1": tv1,
            "n2": tv2,
            "quaternionic_smaller": tv2 < tv1,
        },
        "anchors_at_beta_0": {
            "variance_n1": v1.values[zero],
            "variance_n2": v2.values[zero],
            "relative_entropy_n1": d1.values[zero],
            "relative_entropy_n2": d2.values[zero],
            "jeffreys_n1": j1.values[zero],
            "jeffreys_n2": j2.values[zero],
        },
    });

    Ok(FigureSet {
        figures: vec![fig1, fig2, fig3, fig4, fig5, fig6],
        checks,
        diagnostics,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(CliError::Io)
}

/// Writes `fig1.csv` … `fig6.csv` and `manifest.json` into `dir`.
pub fn write_figures(dir: &Path, spec: &QuadratureSpec64, svg: bool) -> Result<Report, CliError> {
    let set = compute_figures(spec)?;
    fs::create_dir_all(dir)?;
    let mut files: Vec<PathBuf> = Vec::new();
    for fig in &set.figures {
        let path = dir.join(format!("{}.csv", fig.name));
        write(&path, &fig.table.to_csv())?;
        files.push(path);
        if svg {
            let path = dir.join(format!("{}.svg", fig.name));
            let chart = line_chart(
                fig.title,
                fig.x_label,
                &fig.x,
                &[
                    Series {
                        label: "n = 1 (complex)",
                        values: &fig.n1,
                        color: "#1f77b4",
                    },
                    Series {
                        label: "n = 2 (quaternionic)",
                        values: &fig.n2,
                        color: "#d62728",
                    },
                ],
            );
            write(&path, &chart)?;
            files.push(path);
        }
    }
    let names: Vec<String> = files
        .iter()
        .filter_map(|p| p.file_name().map(|s| s.to_string_lossy().into_owned()))
        .collect();
    let manifest = json!({
        "files": names,
        "tolerances": {
            "abs_tol": spec.abs_tol,
            "rel_tol": spec.rel_tol,
            "max_subdivisions": spec.max_subdivisions,
            "base_rule_order": spec.base_rule_order,
        },
        "grids": {
            "fig1_fig2_z": { "min": -1.0, "max": 1.0, "step": Z_STEP },
            "fig1_beta": FIG1_BETA,
            "fig2_beta": FIG2_BETA,
            "fig3_to_fig6_beta": { "min": BETA_MIN, "max": BETA_MAX, "step": BETA_STEP },
        },
        "determinism": "No random numbers are used; output depends only on the quadrature policy above and is byte-identical across runs.",
        "assertions": set.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "diagnostics": set.diagnostics,
    });
    let manifest_path = dir.join("manifest.json");
    let mut text = serde_json::to_string_pretty(&manifest).expect("serializable");
    text.push('\n');
    write(&manifest_path, &text)?;
    files.push(manifest_path);

    let mut summary = Table::new(["assertion", "passed", "detail"]);
    for c in &set.checks {
        summary.push(vec![
            c.name.as_str().into(),
            if c.passed { "true" } else { "false" }.into(),
            c.detail.replace(',', ";").into(),
        ]);
    }
    Ok(Report {
        text: Some(summary.to_csv()),
        checks: set.checks,
        files,
    })
}
