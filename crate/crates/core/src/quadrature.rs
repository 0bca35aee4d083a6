//! Adaptive one-dimensional Gauss–Legendre quadrature.
//!
//! Each panel is integrated with an `m`-point Gauss–Legendre rule and with
//! the same rule on its two halves; the difference is the panel's error
//! estimate and the two-half sum is its value. The panel with the largest
//! estimate is bisected until the summed estimate is within tolerance or the
//! subdivision budget is exhausted.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerance and refinement policy for definite integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_subdivisions: usize,
    /// Number of Gauss–Legendre nodes per panel.
    pub base_rule_order: usize,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(T::QUAD_ABS_TOL),
            rel_tol: T::lit(T::QUAD_REL_TOL),
            max_subdivisions: 200,
            base_rule_order: 20,
        }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > T::zero()) || !(self.rel_tol > T::zero()) {
            return Err(Error::InvalidParameter(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidParameter(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        if !(10..=128).contains(&self.base_rule_order) {
            return Err(Error::InvalidParameter(format!(
                "base_rule_order must lie in 10..=128, got {}",
                self.base_rule_order
            )));
        }
        Ok(())
    }

    pub fn with_abs_tol(mut self, abs_tol: T) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

/// Value of a definite integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub err_est: T,
}

/// Nodes and weights of the `m`-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Newton iteration on `P_m` from the Chebyshev-like initial guesses.
    pub fn new(m: usize) -> Self {
        assert!(m >= 1);
        let mut nodes = vec![T::zero(); m];
        let mut weights = vec![T::zero(); m];
        let mf = T::from_count(m);
        let half = m.div_ceil(2);
        for i in 0..half {
            let guess = (T::PI() * (T::from_count(i) + T::lit(0.75)) / (mf + T::lit(0.5))).cos();
            let mut x = guess;
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= T::epsilon() * T::lit(2.0) {
                    let (_, d) = legendre_with_derivative(m, x);
                    dp = d;
                    break;
                }
            }
            let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = T::zero();
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Fixed-order rule on [a, b].
    pub fn apply<F: Fn(T) -> T>(&self, f: &F, a: T, b: T) -> T {
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        let s = self
            .nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(mid + half * x));
        s * half
    }
}

fn legendre_with_derivative<T: Real>(m: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=m {
        let kf = T::from_count(k);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let mf = T::from_count(m);
    let d = mf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Fixed-order Gauss–Legendre integration of `f` over [a, b].
pub fn gauss_legendre<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, order: usize) -> T {
    GaussLegendre::new(order).apply(&f, a, b)
}

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    err: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<T: Real> Eq for Panel<T> {}
impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

fn make_panel<T: Real, F: Fn(T) -> T>(rule: &GaussLegendre<T>, f: &F, a: T, b: T) -> Panel<T> {
    let mid = (a + b) * T::lit(0.5);
    let whole = rule.apply(f, a, b);
    let halves = rule.apply(f, a, mid) + rule.apply(f, mid, b);
    Panel {
        a,
        b,
        value: halves,
        err: (whole - halves).abs(),
    }
}

/// Adaptive integration of `f` over [a, b].
///
/// Returns [`Error::ToleranceNotReached`] if `max_subdivisions` bisections do
/// not bring the error estimate under `max(abs_tol, rel_tol·|value|)`.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    spec: &QuadratureSpec<T>,
) -> Result<Integral<T>> {
    spec.validate()?;
    if !(a < b) {
        return Err(Error::InvalidParameter(
            "integration bounds must satisfy a < b".into(),
        ));
    }
    let rule = GaussLegendre::new(spec.base_rule_order);
    let mut heap = BinaryHeap::new();
    heap.push(make_panel(&rule, &f, a, b));
    let mut subdivisions = 0;
    loop {
        let (value, err) = heap
            .iter()
            .fold((T::zero(), T::zero()), |(v, e), p| (v + p.value, e + p.err));
        if !value.is_finite() {
            return Err(Error::InvalidParameter(
                "integrand produced a non-finite value".into(),
            ));
        }
        let tolerance = spec.abs_tol.max(spec.rel_tol * value.abs());
        if err <= tolerance {
            return Ok(Integral {
                value,
                err_est: err,
            });
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::ToleranceNotReached {
                err_est: err.to_f64().unwrap_or(f64::NAN),
                tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = (worst.a + worst.b) * T::lit(0.5);
        heap.push(make_panel(&rule, &f, worst.a, mid));
        heap.push(make_panel(&rule, &f, mid, worst.b));
        subdivisions += 1;
    }
}

/// `∫₋₁¹ g(z)·(1 − z²)^(n − ½) dz`, evaluated as
/// `∫ g(sin θ)·cos^(2n) θ dθ` over [−π/2, π/2] so that the weight's
/// endpoint behaviour disappears.
pub fn integrate_gegenbauer<T: Real, G: Fn(T) -> T>(
    g: G,
    n: usize,
    spec: &QuadratureSpec<T>,
) -> Result<Integral<T>> {
    if n > 20 {
        return Err(Error::DomainExceeded {
            what: "weight index n",
            value: n as f64,
            domain: "0..=20",
        });
    }
    let power = 2 * n as i32;
    let half_pi = T::FRAC_PI_2();
    integrate(
        |theta: T| g(theta.sin()) * theta.cos().powi(power),
        -half_pi,
        half_pi,
        spec,
    )
}
