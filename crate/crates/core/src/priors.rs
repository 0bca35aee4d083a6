//! Jeffreys priors over the parameter balls and their marginals.
//!
//! The square root of `det H = 1/(1 − r²)` normalized over the d-ball gives
//!
//! ```text
//! d = 3:  1 / (π² √(1 − r²))        d = 5:  2 / (π³ √(1 − r²))
//! ```
//!
//! Integrating out one coordinate leaves the uniform density on the
//! (d−1)-ball; integrating out all but one leaves the structure function
//! `C_n (1 − z²)^(n − ½)` with `C_n = n! / (√π Γ(n + ½))`.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::scalar::Real;
use crate::special::{factorial, half_integer_gamma_ratio, ratio_to_real};
use crate::state_space::{BlochPoint, Family};

/// Name and version of the generator behind [`sample_prior`].
pub const RNG_ALGORITHM: &str = "ChaCha20 (rand_chacha 0.9.0), seeded via seed_from_u64";

/// Area of the unit sphere `S^(m−1) ⊂ ℝ^m`, `2π^(m/2) / Γ(m/2)`.
pub fn unit_sphere_area<T: Real>(m: usize) -> T {
    assert!(m >= 1);
    let two = T::lit(2.0);
    if m.is_multiple_of(2) {
        let k = m / 2;
        two * T::PI().powi(k as i32) / T::from_u128(factorial(k - 1)).expect("fits")
    } else {
        // Γ(k + ½) = √π · ratio, so 2π^(k+½)/Γ(k+½) = 2π^k / ratio.
        let k = (m - 1) / 2;
        two * T::PI().powi(k as i32) / ratio_to_real::<T>(half_integer_gamma_ratio(k))
    }
}

/// Volume of the unit m-ball.
pub fn unit_ball_volume<T: Real>(m: usize) -> T {
    unit_sphere_area::<T>(m) / T::from_count(m)
}

/// Normalizing constant of the prior: `1/π²` (d = 3) or `2/π³` (d = 5).
pub fn prior_constant<T: Real>(family: Family) -> T {
    match family {
        Family::Complex => T::one() / (T::PI() * T::PI()),
        Family::Quaternionic => T::lit(2.0) / T::PI().powi(3),
    }
}

/// `C_n = n! / (√π Γ(n + ½))` with the rational part exact.
pub fn structure_constant<T: Real>(family: Family) -> T {
    let n = family.n();
    let ratio = half_integer_gamma_ratio(n);
    let rational = ratio.recip() * num_rational::Ratio::from_integer(factorial(n));
    ratio_to_real::<T>(rational) / T::PI()
}

/// Prior density at an interior point.
pub fn prior_pdf<T: Real>(family: Family, p: &BlochPoint<T>) -> Result<T> {
    p.require_family(family)?;
    let r2 = p.radius_sqr();
    if !(r2 < T::one()) {
        return Err(Error::BoundaryPoint {
            radius: p.radius().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(prior_constant::<T>(family) / (T::one() - r2).sqrt())
}

/// Outcome of [`prior_normalization_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationReport<T> {
    /// `∫ 1/√(1 − r²)` over the d-ball.
    pub unnormalized_mass: T,
    /// Mass of the normalized prior; should be 1.
    pub mass: T,
    pub err_est: T,
}

/// Radial reduction `Area(S^(d−1)) ∫₀^(π/2) sin^(d−1) θ dθ` of the prior's
/// total mass (`r = sin θ`).
pub fn prior_normalization_check<T: Real>(
    family: Family,
    spec: &QuadratureSpec<T>,
) -> Result<NormalizationReport<T>> {
    let d = family.dim();
    let radial = integrate(
        |theta: T| theta.sin().powi(d as i32 - 1),
        T::zero(),
        T::FRAC_PI_2(),
        spec,
    )?;
    let area = unit_sphere_area::<T>(d);
    let unnormalized = area * radial.value;
    let c = prior_constant::<T>(family);
    Ok(NormalizationReport {
        unnormalized_mass: unnormalized,
        mass: c * unnormalized,
        err_est: c * area * radial.err_est,
    })
}

/// Structure function `C_n (1 − z²)^(n − ½)` on [−1, 1].
pub fn structure_function<T: Real>(family: Family, z: T) -> Result<T> {
    if !(z.abs() <= T::one()) {
        return Err(Error::DomainExceeded {
            what: "z",
            value: z.to_f64().unwrap_or(f64::NAN),
            domain: "[-1, 1]",
        });
    }
    let w = (T::one() - z * z).max(T::zero());
    let n = family.n();
    Ok(structure_constant::<T>(family) * w.powi(n as i32 - 1) * w.sqrt())
}

/// Closed-form CDF of the structure function.
pub fn structure_cdf<T: Real>(family: Family, z: T) -> Result<T> {
    structure_function(family, z)?;
    let s = (T::one() - z * z).max(T::zero()).sqrt();
    let half = T::lit(0.5);
    let v = match family {
        Family::Complex => (z * s + z.asin()) / T::PI() + half,
        Family::Quaternionic => {
            (T::lit(3.0) * z.asin() + z * s * (T::lit(5.0) - T::lit(2.0) * z * z))
                / (T::lit(3.0) * T::PI())
                + half
        }
    };
    Ok(v.max(T::zero()).min(T::one()))
}

/// Prior marginal obtained by integrating out the last coordinate at the
/// (d−1)-dimensional point `sub_point`.
///
/// With `a = √(1 − |s|²)` and `z = a sin φ` the integrand becomes constant in
/// φ, so the quadrature is exact; the result should equal
/// `1 / Vol(B^(d−1))`.
pub fn marginal_over_last<T: Real>(
    family: Family,
    sub_point: &[T],
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    let d = family.dim();
    if sub_point.len() + 1 != d {
        return Err(Error::DimensionMismatch {
            expected: d - 1,
            got: sub_point.len(),
        });
    }
    let s2 = sub_point.iter().fold(T::zero(), |acc, &c| acc + c * c);
    if !(s2 < T::one()) {
        return Err(Error::BoundaryPoint {
            radius: s2.sqrt().to_f64().unwrap_or(f64::NAN),
        });
    }
    let a = (T::one() - s2).sqrt();
    let c = prior_constant::<T>(family);
    // c / √(a² − z²) dz with z = a sin φ, dz = a cos φ dφ.
    let integrand = |phi: T| {
        let z = a * phi.sin();
        let root = (a * a - z * z).max(T::zero()).sqrt();
        if root > T::zero() {
            c * a * phi.cos() / root
        } else {
            c
        }
    };
    Ok(integrate(integrand, -T::FRAC_PI_2(), T::FRAC_PI_2(), spec)?.value)
}

/// Result of [`marginal_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalReport<T> {
    /// `1 / Vol(B^(d−1))`: `1/π` for d = 3 and `2/π²` for d = 5.
    pub expected: T,
    pub sub_points: Vec<Vec<T>>,
    pub values: Vec<T>,
    pub max_deviation: T,
}

fn marginal_grid<T: Real>(family: Family) -> Vec<Vec<T>> {
    let m = family.dim() - 1;
    let mut grid = vec![vec![T::zero(); m]];
    let radii = [0.3, 0.5, 0.7, 0.9, 0.99];
    for (idx, &r) in radii.iter().enumerate() {
        // Deterministic directions: alternate an axis and a diagonal.
        let mut v = vec![T::zero(); m];
        if idx % 2 == 0 {
            v[idx % m] = T::lit(r);
        } else {
            let comp = T::lit(r) / T::from_count(m).sqrt();
            for (k, slot) in v.iter_mut().enumerate() {
                *slot = if k % 2 == 0 { comp } else { -comp };
            }
        }
        grid.push(v);
    }
    grid
}

/// Evaluates [`marginal_over_last`] at a fixed grid of interior sub-points.
pub fn marginal_check<T: Real>(
    family: Family,
    spec: &QuadratureSpec<T>,
) -> Result<MarginalReport<T>> {
    let expected = T::one() / unit_ball_volume::<T>(family.dim() - 1);
    let sub_points = marginal_grid::<T>(family);
    let values = sub_points
        .iter()
        .map(|s| marginal_over_last(family, s, spec))
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = values
        .iter()
        .fold(T::zero(), |acc, &v| acc.max((v - expected).abs()));
    Ok(MarginalReport {
        expected,
        sub_points,
        values,
        max_deviation,
    })
}

/// z-marginal of the prior by integrating out the other d−1 coordinates:
/// `c · Area(S^(d−2)) · a^(d−2) ∫₀^(π/2) sin^(d−2) φ dφ`, `a = √(1 − z²)`.
pub fn structure_from_prior<T: Real>(family: Family, z: T, spec: &QuadratureSpec<T>) -> Result<T> {
    structure_function(family, z)?;
    let d = family.dim();
    let a = (T::one() - z * z).max(T::zero()).sqrt();
    let angular = integrate(
        |phi: T| phi.sin().powi(d as i32 - 2),
        T::zero(),
        T::FRAC_PI_2(),
        spec,
    )?;
    Ok(prior_constant::<T>(family)
        * unit_sphere_area::<T>(d - 1)
        * a.powi(d as i32 - 2)
        * angular.value)
}

/// Seeded draws from the prior.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch<T> {
    pub family: Family,
    pub points: Vec<BlochPoint<T>>,
    pub seed: u64,
    pub count: usize,
}

impl<T: Real> SampleBatch<T> {
    /// CSV with header `index,<coords>`, LF line endings, shortest
    /// round-trip decimals.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut header = String::from("index");
        for name in self.family.coordinate_names() {
            header.push(',');
            header.push_str(name);
        }
        header.push('\n');
        out.write_all(header.as_bytes())?;
        for (i, p) in self.points.iter().enumerate() {
            let mut line = i.to_string();
            for c in p.coords() {
                line.push(',');
                line.push_str(&format!("{c:?}"));
            }
            line.push('\n');
            out.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    /// Last coordinate (`z`) of every draw.
    pub fn z_values(&self) -> Vec<T> {
        self.points
            .iter()
            .map(|p| *p.coords().last().expect("non-empty"))
            .collect()
    }
}

/// Draws `count` points: a uniform direction from a normalized Gaussian
/// vector and a radius `sin θ` with θ ∝ `sin^(d−1) θ` on [0, π/2] by
/// rejection from the uniform proposal.
pub fn sample_prior<T: Real>(family: Family, count: usize, seed: u64) -> Result<SampleBatch<T>> {
    if count < 1 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    let d = family.dim();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    let mut dir = vec![0.0f64; d];
    while points.len() < count {
        let norm = loop {
            for slot in dir.iter_mut() {
                *slot = rng.sample(StandardNormal);
            }
            let n = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 1e-12 {
                break n;
            }
        };
        let radius = loop {
            let theta = rng.random::<f64>() * std::f64::consts::FRAC_PI_2;
            let u = rng.random::<f64>();
            let s = theta.sin();
            if u < s.powi(d as i32 - 1) {
                break s;
            }
        };
        let coords: Vec<T> = dir.iter().map(|v| T::lit(v / norm * radius)).collect();
        points.push(BlochPoint::new(coords)?);
    }
    Ok(SampleBatch {
        family,
        points,
        seed,
        count,
    })
}
