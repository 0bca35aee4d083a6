//! Bessel, prior and Gibbs identities checked against independent routes.

use std::f64::consts::PI;

use qthermo::gibbs::{beta_grid, fisher_beta, mean_z, sweep, variance_z};
use qthermo::priors::{structure_from_prior, structure_function};
use qthermo::quadrature::{integrate, integrate_gegenbauer};
use qthermo::special::{bessel_i_poisson, bessel_i_reduced, bessel_i_series};
use qthermo::{BesselOrder, Family, Gibbs64, GibbsParams64, QuadratureSpec64, Quantity};

const BETAS: [f64; 10] = [-20.0, -10.0, -5.0, -1.0, -0.1, 0.1, 1.0, 5.0, 10.0, 20.0];

fn ord(n: usize) -> BesselOrder {
    BesselOrder::new(n).unwrap()
}

fn spec() -> QuadratureSpec64 {
    QuadratureSpec64::default()
}

fn gibbs(n: usize, beta: f64) -> Gibbs64 {
    Gibbs64::new(
        GibbsParams64::new(Family::from_n(n).unwrap(), beta).unwrap(),
        &spec(),
    )
    .unwrap()
}

#[test]
fn poisson_matches_series() {
    for n in 1..=3 {
        for b in BETAS {
            let p = bessel_i_poisson(ord(n), b, &spec()).unwrap();
            let s = bessel_i_series(ord(n), b).unwrap();
            assert!((p - s).abs() < 1e-10 * s.abs().max(1.0), "n={n} b={b}");
        }
    }
}

#[test]
fn parity_and_evenness() {
    for n in 1..=3 {
        for b in BETAS.iter().filter(|b| **b > 0.0) {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let pos = bessel_i_poisson(ord(n), *b, &spec()).unwrap();
            let neg = bessel_i_poisson(ord(n), -*b, &spec()).unwrap();
            assert!((neg - sign * pos).abs() <= 1e-12 * pos.abs());
            let rp = bessel_i_reduced(ord(n), *b).unwrap();
            let rn = bessel_i_reduced(ord(n), -*b).unwrap();
            assert!((rp - rn).abs() <= 1e-12 * rp);
        }
    }
}

#[test]
fn three_term_recurrence() {
    for n in 1..=3 {
        for b in BETAS {
            let lo = bessel_i_series(ord(n - 1), b).unwrap();
            let hi = bessel_i_series(ord(n + 1), b).unwrap();
            let mid = bessel_i_series(ord(n), b).unwrap();
            let rhs = 2.0 * n as f64 / b * mid;
            assert!(((lo - hi) - rhs).abs() <= 1e-9 * rhs.abs(), "n={n} b={b}");
        }
    }
}

#[test]
fn structure_functions_integrate_to_one() {
    for fam in [Family::Complex, Family::Quaternionic] {
        let mass = integrate(
            |z: f64| structure_function(fam, z).unwrap(),
            -1.0,
            1.0,
            &spec(),
        )
        .unwrap()
        .value;
        assert!((mass - 1.0).abs() < 1e-10, "{fam:?}: {mass}");
    }
}

#[test]
fn prior_marginalizes_to_structure_function() {
    for fam in [Family::Complex, Family::Quaternionic] {
        for z in [0.0, 0.3, -0.3, 0.9, -0.9] {
            let chain = structure_from_prior(fam, z, &spec()).unwrap();
            let direct = structure_function(fam, z).unwrap();
            assert!((chain - direct).abs() < 1e-8, "{fam:?} z={z}");
        }
    }
}

#[test]
fn gibbs_normalization() {
    for n in [1, 2] {
        for b in [0.0, 1.0, -1.0, 5.0, -5.0, 10.0, -10.0, 50.0, -50.0] {
            let g = gibbs(n, b);
            // Integrate the pdf itself over θ, independent of `expect`.
            let mass = integrate(
                |t: f64| g.pdf(t.sin()).unwrap() * t.cos(),
                -PI / 2.0,
                PI / 2.0,
                &spec(),
            )
            .unwrap()
            .value;
            assert!((mass - 1.0).abs() < 1e-10, "n={n} b={b}: {mass}");
        }
    }
}

#[test]
fn gibbs_reduces_to_structure_function() {
    for n in [1, 2] {
        let fam = Family::from_n(n).unwrap();
        let g = gibbs(n, 0.0);
        for i in 0..=40 {
            let z = -1.0 + i as f64 * 0.05;
            let z = z.clamp(-1.0, 1.0);
            let a = g.pdf(z).unwrap();
            let b = structure_function(fam, z).unwrap();
            assert!((a - b).abs() < 1e-12, "n={n} z={z}");
        }
    }
}

#[test]
fn mean_identity_against_quadrature() {
    for n in [1, 2] {
        for b in [0.0, 1.0, -1.0, 5.0, -5.0, 10.0, -10.0, 50.0, -50.0] {
            let g = gibbs(n, b);
            let quad = integrate(
                |t: f64| {
                    let z = t.sin();
                    z * g.pdf(z).unwrap() * t.cos()
                },
                -PI / 2.0,
                PI / 2.0,
                &spec(),
            )
            .unwrap()
            .value;
            assert!((quad - g.mean()).abs() < 1e-9, "n={n} b={b}");
        }
    }
}

#[test]
fn partition_matches_direct_quadrature() {
    for n in [1, 2] {
        for b in [-7.0, 2.0, 35.0] {
            let g = gibbs(n, b);
            let direct = integrate_gegenbauer(|z: f64| (-b * z).exp(), n, &spec())
                .unwrap()
                .value;
            assert!(((g.partition() - direct) / direct).abs() < 1e-10);
        }
    }
}

#[test]
fn symmetries_in_beta() {
    for n in [1, 2] {
        for b in [0.5, 2.0, 8.0] {
            let (p, m) = (gibbs(n, b), gibbs(n, -b));
            assert!((p.mean() + m.mean()).abs() < 1e-9);
            assert!((p.variance().unwrap() - m.variance().unwrap()).abs() < 1e-9);
            assert!((p.relative_entropy().unwrap() - m.relative_entropy().unwrap()).abs() < 1e-9);
            assert!((p.fisher().unwrap() - m.fisher().unwrap()).abs() < 1e-9);
            assert!((p.jeffreys().unwrap() - m.jeffreys().unwrap()).abs() < 1e-9);
        }
    }
}

#[test]
fn mean_limits_and_monotonicity() {
    let fam = Family::Complex;
    let g50 = mean_z(GibbsParams64::new(fam, 50.0).unwrap()).unwrap();
    assert!(g50 < -0.9);
    let gm50 = mean_z(GibbsParams64::new(fam, -50.0).unwrap()).unwrap();
    assert!(gm50 > 0.9);
    let grid = beta_grid(-50.0, 50.0, 0.5).unwrap();
    for fam in [Family::Complex, Family::Quaternionic] {
        let c = sweep(Quantity::Mean, fam, &grid, &spec()).unwrap();
        assert!(c.values.windows(2).all(|w| w[1] < w[0]));
        assert!(c.values.iter().all(|v| v.abs() < 1.0));
    }
}

#[test]
fn fisher_identity_on_test_set() {
    for n in [1, 2] {
        for b in [-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0] {
            let gp = GibbsParams64::new(Family::from_n(n).unwrap(), b).unwrap();
            let f = fisher_beta(gp).unwrap();
            let v = variance_z(gp, &spec()).unwrap();
            assert!((f - v).abs() < 1e-6);
        }
    }
}

#[test]
fn entropy_minimized_at_zero() {
    for n in [1, 2] {
        let grid = beta_grid(-3.0, 3.0, 0.25).unwrap();
        let c = sweep(
            Quantity::RelativeEntropy,
            Family::from_n(n).unwrap(),
            &grid,
            &spec(),
        )
        .unwrap();
        let (idx, _) = c
            .values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        assert_eq!(grid[idx], 0.0);
        assert!(c.values.iter().all(|&v| v >= 0.0));
    }
}

#[test]
fn single_precision_pipeline() {
    let g = qthermo::Gibbs::<f32>::new(
        qthermo::GibbsParams32::new(Family::Quaternionic, 2.0).unwrap(),
        &qthermo::QuadratureSpec32::default(),
    )
    .unwrap();
    let f = g.fisher().unwrap();
    let v = g.variance().unwrap();
    assert!((f - v).abs() < 1e-4, "{f} vs {v}");
}
