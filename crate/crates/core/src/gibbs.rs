//! Gibbs family on z ∈ [−1, 1]:
//!
//! ```text
//! p(z | n, β) = e^(−βz) (1 − z²)^(n − ½) / Z_n(β),   Z_n(β) = √π Γ(n + ½) Î_n(β).
//! ```
//!
//! Everything is expressed through the reduced Bessel function `Î_n`, which is
//! finite at β = 0, so no ratio `(β/2)ⁿ / I_n(β)` is ever formed. Since
//! `Î_n' = (β/2) Î_{n+1}`, the log-partition derivatives are
//!
//! ```text
//! ⟨z⟩ = −(β/2) Î_{n+1}/Î_n
//! F(β) = ½ Î_{n+1}/Î_n + (β²/4) Î_{n+2}/Î_n − (β²/4) (Î_{n+1}/Î_n)²
//! ```
//!
//! and `F(β)` is the Fisher information about β, equal to `Var(z)`.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_gegenbauer, QuadratureSpec};
use crate::scalar::Real;
use crate::special::{bessel_i_reduced_with, poisson_normalizer, BesselOrder, MAX_BETA};
use crate::state_space::Family;

/// Largest |β| for the Fisher information and sweeps.
pub const FISHER_MAX_BETA: f64 = 100.0;

/// Member `(n, β)` of the Gibbs family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsParams<T> {
    pub family: Family,
    pub beta: T,
}

impl<T: Real> GibbsParams<T> {
    pub fn new(family: Family, beta: T) -> Result<Self> {
        let b = beta.to_f64().unwrap_or(f64::NAN);
        if !b.is_finite() || b.abs() > MAX_BETA {
            return Err(Error::DomainExceeded {
                what: "beta",
                value: b,
                domain: "|beta| <= 700",
            });
        }
        Ok(Self { family, beta })
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }
}

/// A Gibbs distribution with its reduced Bessel values cached.
#[derive(Debug, Clone)]
pub struct Gibbs<T> {
    params: GibbsParams<T>,
    spec: QuadratureSpec<T>,
    /// Î_n, Î_{n+1}, Î_{n+2} at β.
    reduced: [T; 3],
    log_partition: T,
}

impl<T: Real> Gibbs<T> {
    pub fn new(params: GibbsParams<T>, spec: &QuadratureSpec<T>) -> Result<Self> {
        let n = params.n();
        let mut reduced = [T::zero(); 3];
        for (k, slot) in reduced.iter_mut().enumerate() {
            *slot = bessel_i_reduced_with(BesselOrder::new(n + k)?, params.beta, spec)?;
        }
        let partition = poisson_normalizer::<T>(n) * reduced[0];
        Ok(Self {
            params,
            spec: *spec,
            reduced,
            log_partition: partition.ln(),
        })
    }

    pub fn params(&self) -> GibbsParams<T> {
        self.params
    }

    /// `Z_n(β)`.
    pub fn partition(&self) -> T {
        poisson_normalizer::<T>(self.params.n()) * self.reduced[0]
    }

    pub fn log_partition(&self) -> T {
        self.log_partition
    }

    pub fn pdf(&self, z: T) -> Result<T> {
        if !(z.abs() <= T::one()) {
            return Err(Error::DomainExceeded {
                what: "z",
                value: z.to_f64().unwrap_or(f64::NAN),
                domain: "[-1, 1]",
            });
        }
        let w = (T::one() - z * z).max(T::zero());
        let n = self.params.n() as i32;
        let weight = w.powi(n - 1) * w.sqrt();
        Ok((-self.params.beta * z).exp() * weight / self.partition())
    }

    /// Tilt `e^(−βz) / Z`; the pdf is this times the weight `(1 − z²)^(n−½)`.
    fn tilt(&self, z: T) -> T {
        (-self.params.beta * z - self.log_partition).exp()
    }

    /// `E[g(z)]`.
    pub fn expect<G: Fn(T) -> T>(&self, g: G) -> Result<T> {
        Ok(integrate_gegenbauer(|z| g(z) * self.tilt(z), self.params.n(), &self.spec)?.value)
    }

    /// `⟨z⟩ = −(β/2) Î_{n+1}/Î_n`.
    pub fn mean(&self) -> T {
        -(self.params.beta * T::lit(0.5)) * self.reduced[1] / self.reduced[0]
    }

    /// Variance about the mean by quadrature against the pdf.
    pub fn variance(&self) -> Result<T> {
        let m = self.mean();
        self.expect(|z| (z - m) * (z - m))
    }

    /// Kullback–Leibler divergence (nats) from the uniform density ½.
    ///
    /// Integrated over θ with z = sin θ so that `ln(1 − z²) = 2 ln cos θ` is
    /// evaluated without cancellation; the integrand is 0 where p = 0.
    pub fn relative_entropy(&self) -> Result<T> {
        let n = self.params.n();
        let beta = self.params.beta;
        let ln2 = T::LN_2();
        let log_weight_coeff = T::from_count(2 * n - 1);
        let power = 2 * n as i32;
        let integrand = |theta: T| {
            let c = theta.cos();
            if !(c > T::zero()) {
                return T::zero();
            }
            let z = theta.sin();
            let log_p = -beta * z + log_weight_coeff * c.ln() - self.log_partition;
            c.powi(power) * self.tilt(z) * (ln2 + log_p)
        };
        Ok(integrate(integrand, -T::FRAC_PI_2(), T::FRAC_PI_2(), &self.spec)?.value)
    }

    /// Fisher information about β from the reduced Bessel derivatives.
    pub fn fisher(&self) -> Result<T> {
        check_fisher_beta(self.params.beta)?;
        let [i0, i1, i2] = self.reduced;
        let q = self.params.beta * self.params.beta * T::lit(0.25);
        let r1 = i1 / i0;
        Ok(T::lit(0.5) * r1 + q * (i2 / i0 - r1 * r1))
    }

    /// Unnormalized Jeffreys prior over β, `√F(β)`.
    pub fn jeffreys(&self) -> Result<T> {
        Ok(self.fisher()?.max(T::zero()).sqrt())
    }
}

fn check_fisher_beta<T: Real>(beta: T) -> Result<()> {
    if !(beta.abs() <= T::lit(FISHER_MAX_BETA)) {
        return Err(Error::DomainExceeded {
            what: "beta",
            value: beta.to_f64().unwrap_or(f64::NAN),
            domain: "|beta| <= 100",
        });
    }
    Ok(())
}

pub fn gibbs_pdf<T: Real>(gp: GibbsParams<T>, z: T) -> Result<T> {
    Gibbs::new(gp, &QuadratureSpec::default())?.pdf(z)
}

/// `Z_n(β) = ∫₋₁¹ e^(−βz)(1 − z²)^(n−½) dz`.
pub fn partition_reduced<T: Real>(gp: GibbsParams<T>) -> Result<T> {
    Ok(Gibbs::new(gp, &QuadratureSpec::default())?.partition())
}

pub fn mean_z<T: Real>(gp: GibbsParams<T>) -> Result<T> {
    Ok(Gibbs::new(gp, &QuadratureSpec::default())?.mean())
}

pub fn variance_z<T: Real>(gp: GibbsParams<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    Gibbs::new(gp, spec)?.variance()
}

pub fn relative_entropy<T: Real>(gp: GibbsParams<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    Gibbs::new(gp, spec)?.relative_entropy()
}

pub fn fisher_beta<T: Real>(gp: GibbsParams<T>) -> Result<T> {
    check_fisher_beta(gp.beta)?;
    Gibbs::new(gp, &QuadratureSpec::default())?.fisher()
}

pub fn jeffreys_beta<T: Real>(gp: GibbsParams<T>) -> Result<T> {
    check_fisher_beta(gp.beta)?;
    Gibbs::new(gp, &QuadratureSpec::default())?.jeffreys()
}

/// Diagnostic third route: central difference of `d log Z/dβ = −⟨z⟩`.
pub fn fisher_beta_finite_difference<T: Real>(gp: GibbsParams<T>, step: T) -> Result<T> {
    let spec = QuadratureSpec::default();
    let at = |b: T| -> Result<T> { Ok(Gibbs::new(GibbsParams::new(gp.family, b)?, &spec)?.mean()) };
    Ok((at(gp.beta - step)? - at(gp.beta + step)?) / (T::lit(2.0) * step))
}

/// Quantity plotted against β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Mean,
    Variance,
    RelativeEntropy,
    Fisher,
    Jeffreys,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::Mean,
        Quantity::Variance,
        Quantity::RelativeEntropy,
        Quantity::Fisher,
        Quantity::Jeffreys,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Mean => "mean",
            Quantity::Variance => "variance",
            Quantity::RelativeEntropy => "relative_entropy",
            Quantity::Fisher => "fisher",
            Quantity::Jeffreys => "jeffreys",
        }
    }

    pub fn evaluate<T: Real>(self, g: &Gibbs<T>) -> Result<T> {
        match self {
            Quantity::Mean => Ok(g.mean()),
            Quantity::Variance => g.variance(),
            Quantity::RelativeEntropy => g.relative_entropy(),
            Quantity::Fisher => g.fisher(),
            Quantity::Jeffreys => g.jeffreys(),
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Quantity::Mean),
            "variance" | "var" => Ok(Quantity::Variance),
            "relative_entropy" | "entropy" => Ok(Quantity::RelativeEntropy),
            "fisher" => Ok(Quantity::Fisher),
            "jeffreys" => Ok(Quantity::Jeffreys),
            other => Err(Error::InvalidParameter(format!(
                "unknown quantity {other:?}"
            ))),
        }
    }
}

/// A quantity sampled on a strictly increasing β grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoCurve<T> {
    pub quantity: Quantity,
    pub family: Family,
    pub beta_grid: Vec<T>,
    pub values: Vec<T>,
}

impl<T: Real> ThermoCurve<T> {
    pub fn argmax(&self) -> Option<usize> {
        self.values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
    }

    pub fn max(&self) -> Option<T> {
        self.argmax().map(|i| self.values[i])
    }

    pub fn min(&self) -> Option<T> {
        self.values.iter().copied().reduce(T::min)
    }
}

/// Grid `min, min + step, …, max` of `round((max − min)/step) + 1` points.
///
/// When `1/step` is an integer the points are formed as `k / (1/step)`
/// so decimal steps produce correctly rounded values (−9.7, not
/// −9.700000000000001).
pub fn beta_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !min.is_finite() || !max.is_finite() || !(max >= min) {
        return Err(Error::InvalidParameter(format!(
            "invalid grid: min {min}, max {max}, step {step}"
        )));
    }
    let intervals = (max - min) / step;
    let count = intervals.round();
    if (intervals - count).abs() > 1e-9 * intervals.max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "grid step {step} does not divide [{min}, {max}]"
        )));
    }
    let count = count as usize + 1;
    let inv = 1.0 / step;
    let inv_int = inv.round();
    let start = min / step;
    let grid = if (inv - inv_int).abs() < 1e-9 * inv && (start - start.round()).abs() < 1e-9 {
        let k0 = start.round();
        (0..count).map(|i| (k0 + i as f64) / inv_int).collect()
    } else {
        (0..count).map(|i| min + i as f64 * step).collect()
    };
    Ok(grid)
}

/// Evaluates `quantity` at every grid point, in grid order.
pub fn sweep<T: Real>(
    quantity: Quantity,
    family: Family,
    beta_grid: &[T],
    spec: &QuadratureSpec<T>,
) -> Result<ThermoCurve<T>> {
    if beta_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter(
            "beta grid must be strictly increasing".into(),
        ));
    }
    let values = beta_grid
        .iter()
        .map(|&b| {
            check_fisher_beta(b)?;
            quantity.evaluate(&Gibbs::new(GibbsParams::new(family, b)?, spec)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ThermoCurve {
        quantity,
        family,
        beta_grid: beta_grid.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn gp(n: usize, beta: f64) -> GibbsParams<f64> {
        GibbsParams::new(Family::from_n(n).unwrap(), beta).unwrap()
    }

    fn spec() -> QuadratureSpec<f64> {
        QuadratureSpec::default()
    }

    #[test]
    fn pdf_examples() {
        assert!((gibbs_pdf(gp(1, 0.0), 0.0).unwrap() - 2.0 / PI).abs() < 1e-15);
        for (n, b) in [(1, 2.0), (2, -3.0)] {
            assert_eq!(gibbs_pdf(gp(n, b), 1.0).unwrap(), 0.0);
            assert_eq!(gibbs_pdf(gp(n, b), -1.0).unwrap(), 0.0);
        }
        assert!(gibbs_pdf(gp(1, 0.0), 1.5).is_err());
        let g = Gibbs::new(gp(1, 1.0), &spec()).unwrap();
        let mass = g.expect(|_| 1.0).unwrap();
        assert!((mass - 1.0).abs() < 1e-10);
    }

    #[test]
    fn partition_examples() {
        assert!((partition_reduced(gp(1, 0.0)).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((partition_reduced(gp(2, 0.0)).unwrap() - 3.0 * PI / 8.0).abs() < 1e-15);
        let direct = integrate_gegenbauer(|z: f64| (-2.0 * z).exp(), 1, &spec())
            .unwrap()
            .value;
        let z = partition_reduced(gp(1, 2.0)).unwrap();
        assert!(((z - direct) / direct).abs() < 1e-10);
    }

    #[test]
    fn mean_examples() {
        assert_eq!(mean_z(gp(1, 0.0)).unwrap(), 0.0);
        // −I₂(1)/I₁(1) from 30-digit reference Bessel values.
        let expected = -0.135_747_669_767_038_3 / 0.565_159_103_992_485;
        assert!((mean_z(gp(1, 1.0)).unwrap() - expected).abs() < 1e-14);
        assert!(mean_z(gp(2, 5.0)).unwrap().abs() < mean_z(gp(1, 5.0)).unwrap().abs());
    }

    #[test]
    fn variance_at_zero() {
        assert!((variance_z(gp(1, 0.0), &spec()).unwrap() - 0.25).abs() < 1e-12);
        assert!((variance_z(gp(2, 0.0), &spec()).unwrap() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_at_zero() {
        let d1 = relative_entropy(gp(1, 0.0), &spec()).unwrap();
        let d2 = relative_entropy(gp(2, 0.0), &spec()).unwrap();
        let c1 = 2f64.ln() - PI.ln() + 0.5;
        let c2 = (16.0 / (3.0 * PI)).ln() + 1.75 - 3.0 * 2f64.ln();
        assert!((d1 - c1).abs() < 1e-9, "{d1} vs {c1}");
        assert!((d2 - c2).abs() < 1e-9, "{d2} vs {c2}");
        assert!(d2 > d1);
    }

    #[test]
    fn fisher_and_jeffreys_at_zero() {
        assert!((fisher_beta(gp(1, 0.0)).unwrap() - 0.25).abs() < 1e-15);
        assert!((fisher_beta(gp(2, 0.0)).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((jeffreys_beta(gp(1, 0.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!((jeffreys_beta(gp(2, 0.0)).unwrap() - 0.408_248_290_463_863).abs() < 1e-14);
        assert!(fisher_beta(gp(1, 150.0)).is_err());
    }

    #[test]
    fn fisher_equals_variance() {
        for n in [1, 2] {
            for b in [-8.0, -2.0, -0.5, 0.5, 2.0, 8.0] {
                let f = fisher_beta(gp(n, b)).unwrap();
                let v = variance_z(gp(n, b), &spec()).unwrap();
                assert!((f - v).abs() < 1e-6, "n={n} b={b}: {f} vs {v}");
                let fd = fisher_beta_finite_difference(gp(n, b), 1e-4).unwrap();
                assert!((f - fd).abs() < 1e-7, "finite difference n={n} b={b}");
            }
        }
    }

    #[test]
    fn grids() {
        let g = beta_grid(-10.0, 10.0, 0.1).unwrap();
        assert_eq!(g.len(), 201);
        assert_eq!(g[100], 0.0);
        assert_eq!(g[3], -9.7);
        assert_eq!(g[200], 10.0);
        for i in 0..=200 {
            assert_eq!(g[i], -g[200 - i]);
        }
        let z = beta_grid(-1.0, 1.0, 0.005).unwrap();
        assert_eq!(z.len(), 401);
        assert!(beta_grid(0.0, 1.0, 0.3).is_err());
        assert!(beta_grid(0.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn sweep_properties() {
        let grid = beta_grid(-10.0, 10.0, 0.5).unwrap();
        let s = spec();
        let mean = sweep(Quantity::Mean, Family::Complex, &grid, &s).unwrap();
        let k = grid.len();
        for i in 0..k {
            assert!((mean.values[i] + mean.values[k - 1 - i]).abs() < 1e-12);
        }
        let fisher = sweep(Quantity::Fisher, Family::Quaternionic, &grid, &s).unwrap();
        assert!(fisher.values.iter().all(|&v| v > 0.0));
        let j = sweep(Quantity::Jeffreys, Family::Quaternionic, &grid, &s).unwrap();
        assert_eq!(grid[j.argmax().unwrap()], 0.0);
        assert!(sweep(Quantity::Mean, Family::Complex, &[1.0, 0.0], &s).is_err());
    }
}
