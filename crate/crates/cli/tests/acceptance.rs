//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, ExitCode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use qthermo::gibbs::{fisher_beta, variance_z};
use qthermo::priors::{
    marginal_check, prior_normalization_check, sample_prior, structure_cdf, structure_function,
};
use qthermo::qfi::{qfi_closed_form, qfi_determinant, qfi_numeric};
use qthermo::quadrature::integrate;
use qthermo::special::{bessel_i_poisson, bessel_i_series};
use qthermo::{BesselOrder, BlochPoint64, Family, Gibbs64, GibbsParams64, QuadratureSpec64};
use qthermo_cli::figures::compute_figures;

const FAMILIES: [Family; 2] = [Family::Complex, Family::Quaternionic];
const BESSEL_BETAS: [f64; 10] = [-20.0, -10.0, -5.0, -1.0, -0.1, 0.1, 1.0, 5.0, 10.0, 20.0];
const GIBBS_BETAS: [f64; 11] = [
    -20.0, -10.0, -5.0, -1.0, -0.1, 0.0, 0.1, 1.0, 5.0, 10.0, 20.0,
];
const SAMPLE_SEED: u64 = 20_240_601;
const SAMPLE_COUNT: usize = 100_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn spec() -> QuadratureSpec64 {
    QuadratureSpec64::default()
}

fn ensure(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn gibbs(fam: Family, beta: f64) -> Result<Gibbs64, String> {
    let gp = GibbsParams64::new(fam, beta).map_err(|e| e.to_string())?;
    Gibbs64::new(gp, &spec()).map_err(|e| e.to_string())
}

fn random_interior(rng: &mut ChaCha20Rng, d: usize) -> BlochPoint64 {
    loop {
        let c: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let r2: f64 = c.iter().map(|v| v * v).sum();
        if r2 < 0.98 {
            return BlochPoint64::new(c).unwrap();
        }
    }
}

fn qfi_equivalence() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let (mut worst_elem, mut worst_det) = (0.0f64, 0.0f64);
    for fam in FAMILIES {
        for _ in 0..100 {
            let p = random_interior(&mut rng, fam.dim());
            let closed = qfi_closed_form(&p).map_err(|e| e.to_string())?;
            let numeric = qfi_numeric(&p).map_err(|e| e.to_string())?;
            let det = qfi_determinant(&p).map_err(|e| e.to_string())?;
            worst_elem = worst_elem.max(numeric.max_abs_diff(&closed));
            worst_det = worst_det.max(((numeric.determinant() - det) / det).abs());
        }
    }
    ensure(
        worst_elem < 1e-8 && worst_det < 1e-8,
        format!("max elementwise {worst_elem:e}, max det rel {worst_det:e}"),
    )?;
    Ok(format!(
        "200 points, max elementwise {worst_elem:.1e}, max det rel {worst_det:.1e}"
    ))
}

fn normalization() -> Outcome {
    let mut worst = 0.0f64;
    for (fam, unnormalized) in [
        (Family::Complex, PI * PI),
        (Family::Quaternionic, PI.powi(3) / 2.0),
    ] {
        let r = prior_normalization_check(fam, &spec()).map_err(|e| e.to_string())?;
        let dev_u = ((r.unnormalized_mass - unnormalized) / unnormalized).abs();
        let dev_m = (r.mass - 1.0).abs();
        ensure(
            dev_m <= 1e-10 && dev_u <= 1e-10,
            format!(
                "{fam:?}: mass {:?}, unnormalized {:?}",
                r.mass, r.unnormalized_mass
            ),
        )?;
        let s = integrate(
            |z: f64| structure_function(fam, z).unwrap(),
            -1.0,
            1.0,
            &spec(),
        )
        .map_err(|e| e.to_string())?
        .value;
        ensure(
            (s - 1.0).abs() <= 1e-10,
            format!("{fam:?}: structure mass {s:?}"),
        )?;
        worst = worst.max(dev_m).max((s - 1.0).abs());
    }
    Ok(format!(
        "priors and structure functions, max |mass - 1| {worst:.1e}"
    ))
}

fn marginal_uniformity() -> Outcome {
    let mut parts = Vec::new();
    for (fam, expected) in [
        (Family::Complex, 1.0 / PI),
        (Family::Quaternionic, 2.0 / (PI * PI)),
    ] {
        let r = marginal_check(fam, &spec()).map_err(|e| e.to_string())?;
        ensure(
            (r.expected - expected).abs() < 1e-15,
            format!("{fam:?}: expected constant {:?}", r.expected),
        )?;
        ensure(
            r.values.len() >= 5,
            format!("{fam:?}: only {} points", r.values.len()),
        )?;
        ensure(
            r.max_deviation < 1e-8,
            format!("{fam:?}: max deviation {:e}", r.max_deviation),
        )?;
        parts.push(format!(
            "n={} {} pts dev {:.1e}",
            fam.n(),
            r.values.len(),
            r.max_deviation
        ));
    }
    Ok(parts.join(", "))
}

fn bessel() -> Outcome {
    let ord = |n| BesselOrder::new(n).unwrap();
    let (mut agree, mut parity, mut recur) = (0.0f64, 0.0f64, 0.0f64);
    for n in 1..=3 {
        for b in BESSEL_BETAS {
            let p = bessel_i_poisson(ord(n), b, &spec()).map_err(|e| e.to_string())?;
            let s = bessel_i_series(ord(n), b).map_err(|e| e.to_string())?;
            agree = agree.max((p - s).abs() / s.abs().max(1.0));

            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let neg = bessel_i_poisson(ord(n), -b, &spec()).map_err(|e| e.to_string())?;
            parity = parity.max((neg - sign * p).abs() / p.abs().max(1.0));

            let lo = bessel_i_series(ord(n - 1), b).unwrap();
            let hi = bessel_i_series(ord(n + 1), b).unwrap();
            let rhs = 2.0 * n as f64 / b * s;
            recur = recur.max(((lo - hi) - rhs).abs() / rhs.abs().max(1.0));
        }
    }
    ensure(
        agree < 1e-10 && parity < 1e-9 && recur < 1e-9,
        format!("agreement {agree:e}, parity {parity:e}, recurrence {recur:e}"),
    )?;
    Ok(format!(
        "Poisson vs series {agree:.1e}, parity {parity:.1e}, recurrence {recur:.1e}"
    ))
}

fn gibbs_identities() -> Outcome {
    let (mut norm, mut reduce, mut mean, mut fisher) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for fam in FAMILIES {
        for b in GIBBS_BETAS {
            let g = gibbs(fam, b)?;
            let mass = integrate(
                |t: f64| g.pdf(t.sin()).unwrap() * t.cos(),
                -PI / 2.0,
                PI / 2.0,
                &spec(),
            )
            .map_err(|e| e.to_string())?
            .value;
            norm = norm.max((mass - 1.0).abs());

            let quad = integrate(
                |t: f64| {
                    let z = t.sin();
                    z * g.pdf(z).unwrap() * t.cos()
                },
                -PI / 2.0,
                PI / 2.0,
                &spec(),
            )
            .map_err(|e| e.to_string())?
            .value;
            mean = mean.max((quad - g.mean()).abs());

            let gp = g.params();
            let f = fisher_beta(gp).map_err(|e| e.to_string())?;
            let v = variance_z(gp, &spec()).map_err(|e| e.to_string())?;
            fisher = fisher.max((f - v).abs());
        }
        let g0 = gibbs(fam, 0.0)?;
        for i in 0..=200 {
            let z = (-1.0 + i as f64 * 0.01).clamp(-1.0, 1.0);
            let a = g0.pdf(z).unwrap();
            let s = structure_function(fam, z).unwrap();
            reduce = reduce.max((a - s).abs());
        }
    }
    ensure(
        norm <= 1e-10 && reduce <= 1e-12 && mean <= 1e-9 && fisher <= 1e-6,
        format!("norm {norm:e}, beta=0 {reduce:e}, mean {mean:e}, fisher {fisher:e}"),
    )?;
    Ok(format!(
        "norm {norm:.1e}, beta=0 {reduce:.1e}, mean {mean:.1e}, fisher-variance {fisher:.1e}"
    ))
}

fn figures_qualitative() -> Outcome {
    let set = compute_figures(&spec()).map_err(|e| e.to_string())?;
    let failed: Vec<_> = set
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.clone())
        .collect();
    ensure(
        failed.is_empty(),
        format!("failed assertions: {}", failed.join(", ")),
    )?;

    let d1 = (2.0f64).ln() - PI.ln() + 0.5;
    let d2 = (16.0 / (3.0 * PI)).ln() + 1.75 - 3.0 * (2.0f64).ln();
    let g1 = gibbs(Family::Complex, 0.0)?;
    let g2 = gibbs(Family::Quaternionic, 0.0)?;
    let e1 = g1.relative_entropy().map_err(|e| e.to_string())?;
    let e2 = g2.relative_entropy().map_err(|e| e.to_string())?;
    ensure(
        (e1 - d1).abs() <= 1e-5 && (e2 - d2).abs() <= 1e-5,
        format!("entropy at 0: {e1:?} vs {d1:?}, {e2:?} vs {d2:?}"),
    )?;
    let j1 = g1.jeffreys().map_err(|e| e.to_string())?;
    let j2 = g2.jeffreys().map_err(|e| e.to_string())?;
    ensure(
        (j1 - 0.5).abs() <= 1e-7 && (j2 - 0.408_248_3).abs() <= 1e-7 && j2 < j1,
        format!("Jeffreys peaks {j1:?}, {j2:?}"),
    )?;
    let v1 = g1.variance().map_err(|e| e.to_string())?;
    let v2 = g2.variance().map_err(|e| e.to_string())?;
    ensure(
        (v1 - 0.25).abs() < 1e-9 && (v2 - 1.0 / 6.0).abs() < 1e-9,
        format!("variance at 0: {v1:?}, {v2:?}"),
    )?;
    Ok(format!(
        "{} assertions; D(0) {e1:.7}, {e2:.7}; Jeffreys {j1:.7}, {j2:.7}",
        set.checks.len()
    ))
}

fn sampler() -> Outcome {
    let n = SAMPLE_COUNT as f64;
    let critical = 1.628 / n.sqrt();
    let mut parts = Vec::new();
    for (fam, var_expected) in [(Family::Complex, 0.25), (Family::Quaternionic, 1.0 / 6.0)] {
        let batch =
            sample_prior::<f64>(fam, SAMPLE_COUNT, SAMPLE_SEED).map_err(|e| e.to_string())?;
        let mut z = batch.z_values();
        z.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut ks = 0.0f64;
        for (i, &v) in z.iter().enumerate() {
            let f = structure_cdf(fam, v).map_err(|e| e.to_string())?;
            ks = ks
                .max((f - i as f64 / n).abs())
                .max(((i + 1) as f64 / n - f).abs());
        }
        let mean = z.iter().sum::<f64>() / n;
        let m2 = z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let m4 = z.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n;
        let se = ((m4 - m2 * m2) / n).sqrt();
        let zscore = (m2 - var_expected) / se;
        ensure(
            ks < critical && zscore.abs() < 4.0,
            format!(
                "n={}: KS {ks:.5} (crit {critical:.5}), var z-score {zscore:.2}",
                fam.n()
            ),
        )?;
        parts.push(format!("n={} KS {ks:.4} var z {zscore:+.2}", fam.n()));
    }
    Ok(format!(
        "N=1e5 seed {SAMPLE_SEED}, crit {critical:.4}: {}",
        parts.join(", ")
    ))
}

fn run_figures(dir: &Path) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_qthermo"))
        .args(["figures", "--output-dir"])
        .arg(dir)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        status.status.success(),
        format!("figures exited with {:?}", status.status.code()),
    )
}

fn determinism() -> Outcome {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    run_figures(a.path())?;
    run_figures(b.path())?;
    let mut bytes = 0;
    for k in 1..=6 {
        let name = format!("fig{k}.csv");
        let x = std::fs::read(a.path().join(&name)).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.path().join(&name)).map_err(|e| e.to_string())?;
        ensure(x == y, format!("{name} differs between runs"))?;
        bytes += x.len();
    }
    Ok(format!("6 CSVs identical ({bytes} bytes)"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("qfi_equivalence", qfi_equivalence),
        ("normalization", normalization),
        ("marginal_uniformity", marginal_uniformity),
        ("bessel_agreement", bessel),
        ("gibbs_identities", gibbs_identities),
        ("figure_reproduction", figures_qualitative),
        ("sampler_distribution", sampler),
        ("figures_determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
