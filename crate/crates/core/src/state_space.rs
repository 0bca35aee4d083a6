//! Quaternions, their complex 2×2 representation, and the density matrices of
//! two-level complex (qubit) and quaternionic systems.
//!
//! A complex two-level state is the familiar Bloch form
//!
//! ```text
//! ρ = ½ [[1 + z, x − iy], [x + iy, 1 − z]],   x² + y² + z² ≤ 1.
//! ```
//!
//! The quaternionic state replaces the off-diagonal entry by the quaternion
//! `q = x + iy + ju + kv` (and its conjugate above the diagonal), with
//! coordinates ordered `(u, v, x, y, z)`. It is realised as a 4×4 complex
//! density matrix by substituting each quaternion entry with its complex 2×2
//! image under [`quat_to_complex`] and halving so that the trace is one.
//!
//! # Embedding convention
//!
//! `Φ(w + x·i + y·j + z·k) = [[w + x·𝑖, y + z·𝑖], [−y + z·𝑖, w − x·𝑖]]`
//! where `𝑖` is the complex unit. This is a real-algebra homomorphism with
//! `Φ(i)Φ(j) = Φ(k)` and `Φ(q̄) = Φ(q)†`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::scalar::Real;

/// Quaternion `w + x·i + y·j + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Quaternion<T> {
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Real> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, q: Self) -> Self {
        quat_mul(self, q)
    }
}

/// Hamilton product with i² = j² = k² = −1, ij = k, jk = i, ki = j.
pub fn quat_mul<T: Real>(p: Quaternion<T>, q: Quaternion<T>) -> Quaternion<T> {
    Quaternion::new(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )
}

/// Complex 2×2 image of a quaternion (see the module docs for the convention).
pub fn quat_to_complex<T: Real>(q: Quaternion<T>) -> ComplexMatrix<T> {
    ComplexMatrix::from_row_major(
        2,
        vec![
            Complex::new(q.w, q.x),
            Complex::new(q.y, q.z),
            Complex::new(-q.y, q.z),
            Complex::new(q.w, -q.x),
        ],
    )
}

/// Which two-level family a point or state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Complex (qubit) states, 3-ball.
    Complex,
    /// Quaternionic states, 5-ball.
    Quaternionic,
}

impl Family {
    /// Structure-function index: 1 for complex, 2 for quaternionic.
    pub fn n(self) -> usize {
        match self {
            Family::Complex => 1,
            Family::Quaternionic => 2,
        }
    }

    /// Dimension of the parameter ball, `2n + 1`.
    pub fn dim(self) -> usize {
        2 * self.n() + 1
    }

    pub fn from_n(n: usize) -> Result<Self> {
        match n {
            1 => Ok(Family::Complex),
            2 => Ok(Family::Quaternionic),
            _ => Err(Error::InvalidParameter(format!(
                "family index n must be 1 or 2, got {n}"
            ))),
        }
    }

    pub fn from_dim(d: usize) -> Result<Self> {
        match d {
            3 => Ok(Family::Complex),
            5 => Ok(Family::Quaternionic),
            _ => Err(Error::InvalidParameter(format!(
                "ball dimension must be 3 or 5, got {d}"
            ))),
        }
    }

    /// Dimension of the complex density matrix.
    pub fn matrix_dim(self) -> usize {
        match self {
            Family::Complex => 2,
            Family::Quaternionic => 4,
        }
    }

    /// Coordinate names in storage order.
    pub fn coordinate_names(self) -> &'static [&'static str] {
        match self {
            Family::Complex => &["x", "y", "z"],
            Family::Quaternionic => &["u", "v", "x", "y", "z"],
        }
    }
}

/// Point of the closed 3-ball `(x, y, z)` or 5-ball `(u, v, x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochPoint<T> {
    coords: Vec<T>,
}

impl<T: Real> BlochPoint<T> {
    /// Accepts any finite 3- or 5-vector with radius ≤ 1.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        Family::from_dim(coords.len())?;
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coordinate".into()));
        }
        let p = Self { coords };
        let r = p.radius();
        // Allow the sphere itself up to rounding of the norm.
        if r > T::one() + T::epsilon() * T::lit(4.0) {
            return Err(Error::RadiusExceeded {
                radius: r.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(p)
    }

    pub fn origin(family: Family) -> Self {
        Self {
            coords: vec![T::zero(); family.dim()],
        }
    }

    /// Unit vector along coordinate `axis`.
    pub fn basis(family: Family, axis: usize) -> Self {
        let mut coords = vec![T::zero(); family.dim()];
        coords[axis] = T::one();
        Self { coords }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn family(&self) -> Family {
        Family::from_dim(self.coords.len()).expect("validated at construction")
    }

    pub fn radius_sqr(&self) -> T {
        self.coords.iter().fold(T::zero(), |acc, &c| acc + c * c)
    }

    pub fn radius(&self) -> T {
        self.radius_sqr().sqrt()
    }

    /// `r < 1 − ε_boundary`.
    pub fn is_interior(&self) -> bool {
        self.radius() < T::one() - T::lit(T::BOUNDARY_EPS)
    }

    pub(crate) fn require_interior(&self) -> Result<()> {
        if self.is_interior() {
            Ok(())
        } else {
            Err(Error::BoundaryPoint {
                radius: self.radius().to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    pub(crate) fn require_family(&self, family: Family) -> Result<()> {
        if self.dim() == family.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: family.dim(),
                got: self.dim(),
            })
        }
    }
}

fn check_radius<T: Real>(p: &BlochPoint<T>) -> Result<()> {
    let r = p.radius();
    if r > T::one() + T::epsilon() * T::lit(4.0) {
        return Err(Error::RadiusExceeded {
            radius: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// `ρ = ½[[1+z, x−iy], [x+iy, 1−z]]` for `p = (x, y, z)`.
pub fn density_complex<T: Real>(p: &BlochPoint<T>) -> Result<HermitianMatrix<T>> {
    p.require_family(Family::Complex)?;
    check_radius(p)?;
    Ok(complex_affine(p.coords()))
}

/// 4×4 complex realisation of the quaternionic state at `p = (u, v, x, y, z)`.
pub fn density_quaternionic<T: Real>(p: &BlochPoint<T>) -> Result<HermitianMatrix<T>> {
    p.require_family(Family::Quaternionic)?;
    check_radius(p)?;
    Ok(quaternionic_affine(p.coords()))
}

/// Density matrix for either family, dispatched on the point's dimension.
pub fn density<T: Real>(p: &BlochPoint<T>) -> Result<HermitianMatrix<T>> {
    match p.family() {
        Family::Complex => density_complex(p),
        Family::Quaternionic => density_quaternionic(p),
    }
}

// The maps below are affine in the coordinates and take raw slices so the
// QFI module can difference them without a radius check.

pub(crate) fn complex_affine<T: Real>(c: &[T]) -> HermitianMatrix<T> {
    let half = T::lit(0.5);
    let (x, y, z) = (c[0], c[1], c[2]);
    let m = ComplexMatrix::from_row_major(
        2,
        vec![
            Complex::new(half * (T::one() + z), T::zero()),
            Complex::new(half * x, -half * y),
            Complex::new(half * x, half * y),
            Complex::new(half * (T::one() - z), T::zero()),
        ],
    );
    HermitianMatrix::new(m).expect("Bloch form is Hermitian")
}

pub(crate) fn quaternionic_affine<T: Real>(c: &[T]) -> HermitianMatrix<T> {
    let (u, v, x, y, z) = (c[0], c[1], c[2], c[3], c[4]);
    let q = Quaternion::new(x, y, u, v);
    let upper = quat_to_complex(q.conj());
    let lower = quat_to_complex(q);
    let top = quat_to_complex(Quaternion::real(T::one() + z));
    let bottom = quat_to_complex(Quaternion::real(T::one() - z));
    let mut m = ComplexMatrix::zeros(4);
    m.set_block(0, 0, &top);
    m.set_block(0, 2, &upper);
    m.set_block(2, 0, &lower);
    m.set_block(2, 2, &bottom);
    // ½ from the quaternionic ρ, ½ from the trace normalization.
    HermitianMatrix::new(m.scale(T::lit(0.25))).expect("embedded quaternionic form is Hermitian")
}
