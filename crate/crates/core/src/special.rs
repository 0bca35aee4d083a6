//! Integer-order modified Bessel functions of the first kind.
//!
//! Three routes are provided:
//!
//! * [`bessel_i_poisson`]: the Poisson integral
//!   `I_n(β) = (β/2)ⁿ / (√π Γ(n+½)) · ∫₋₁¹ e^(−βz) (1−z²)^(n−½) dz`;
//! * [`bessel_i_series`]: the power series `Σ_k (β/2)^(n+2k) / (k! (n+k)!)`,
//!   used as an independent oracle for `|β| ≤ 30`;
//! * [`bessel_i_reduced`]: `Î_n(β) = I_n(β) / (β/2)ⁿ`, which is entire, even
//!   and positive, so it stays finite through β = 0.
//!
//! The Poisson kernel is usually quoted for the modified *spherical* Bessel
//! functions; with integer `n` as written here it produces the ordinary
//! integer-order `I_n`, and that is what every function in this module
//! returns.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_gegenbauer, QuadratureSpec};
use crate::scalar::Real;

/// Largest order for which the series has been validated.
pub const MAX_ORDER: usize = 20;
/// Largest |β| accepted by the series route.
pub const SERIES_MAX_BETA: f64 = 30.0;
/// Largest |β| accepted anywhere.
pub const MAX_BETA: f64 = 700.0;

const SERIES_MAX_TERMS: usize = 200;

/// Order `n` of `I_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BesselOrder(usize);

impl BesselOrder {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::DomainExceeded {
                what: "Bessel order n",
                value: n as f64,
                domain: "0..=20",
            });
        }
        Ok(Self(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// `Γ(n + ½) / √π = (2n)! / (4ⁿ n!) = (2n − 1)!! / 2ⁿ`, exactly.
pub fn half_integer_gamma_ratio(n: usize) -> Ratio<u128> {
    (1..=n as u128).fold(Ratio::from_integer(1), |acc, k| {
        acc * Ratio::new(2 * k - 1, 2)
    })
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub(crate) fn ratio_to_real<T: Real>(r: Ratio<u128>) -> T {
    // Numerator and denominator stay below 2^90 for n ≤ 20; the two
    // conversions are each correctly rounded.
    T::from_u128(*r.numer()).expect("numerator representable")
        / T::from_u128(*r.denom()).expect("denominator representable")
}

/// `√π · Γ(n + ½)`, the constant that normalizes the Poisson kernel.
pub fn poisson_normalizer<T: Real>(n: usize) -> T {
    T::PI() * ratio_to_real::<T>(half_integer_gamma_ratio(n))
}

fn check_beta<T: Real>(beta: T, limit: f64) -> Result<()> {
    let b = beta.to_f64().unwrap_or(f64::NAN);
    if !b.is_finite() || b.abs() > limit {
        return Err(Error::DomainExceeded {
            what: "beta",
            value: b,
            domain: if limit == SERIES_MAX_BETA {
                "|beta| <= 30"
            } else {
                "|beta| <= 700"
            },
        });
    }
    Ok(())
}

fn check_overflow<T: Real>(beta: T) -> Result<()> {
    if !beta.abs().exp().is_finite() {
        return Err(Error::Overflow {
            beta: beta.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// `∫₋₁¹ e^(−βz) (1−z²)^(n−½) dz` by quadrature.
pub fn poisson_kernel_integral<T: Real>(
    n: BesselOrder,
    beta: T,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    check_beta(beta, MAX_BETA)?;
    check_overflow(beta)?;
    Ok(integrate_gegenbauer(|z: T| (-beta * z).exp(), n.get(), spec)?.value)
}

/// `I_n(β)` from the Poisson integral.
pub fn bessel_i_poisson<T: Real>(n: BesselOrder, beta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let integral = poisson_kernel_integral(n, beta, spec)?;
    let prefactor = (beta * T::lit(0.5)).powi(n.get() as i32) / poisson_normalizer::<T>(n.get());
    Ok(prefactor * integral)
}

/// `Σ_k (β²/4)^k / (k! (n+k)!)`, the series for `Î_n`.
fn reduced_series<T: Real>(n: usize, beta: T) -> T {
    let q = beta * beta * T::lit(0.25);
    let mut term = T::one() / T::from_u128(factorial(n)).expect("n! representable");
    let mut sum = term;
    let tol = T::lit(T::SERIES_TOL);
    for k in 1..SERIES_MAX_TERMS {
        let kf = T::from_count(k);
        term *= q / (kf * (T::from_count(n) + kf));
        sum += term;
        if term <= tol * sum {
            break;
        }
    }
    sum
}

/// `I_n(β)` from its power series; restricted to `|β| ≤ 30`.
pub fn bessel_i_series<T: Real>(n: BesselOrder, beta: T) -> Result<T> {
    check_beta(beta, SERIES_MAX_BETA)?;
    Ok((beta * T::lit(0.5)).powi(n.get() as i32) * reduced_series(n.get(), beta))
}

/// `Î_n(β) = I_n(β) / (β/2)ⁿ` with the default quadrature policy.
pub fn bessel_i_reduced<T: Real>(n: BesselOrder, beta: T) -> Result<T> {
    bessel_i_reduced_with(n, beta, &QuadratureSpec::default())
}

/// `Î_n(β)`: power series for `|β| ≤ 30`, Poisson quadrature beyond.
pub fn bessel_i_reduced_with<T: Real>(
    n: BesselOrder,
    beta: T,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    check_beta(beta, MAX_BETA)?;
    if beta.abs() <= T::lit(SERIES_MAX_BETA) {
        return Ok(reduced_series(n.get(), beta));
    }
    // Î_n is even; evaluating at |β| keeps the result symmetric bit-for-bit.
    let b = beta.abs();
    let integral = poisson_kernel_integral(n, b, spec)?;
    Ok(integral / poisson_normalizer::<T>(n.get()))
}
