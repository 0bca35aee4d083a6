//! Bayesian thermostatistics of two-level complex and quaternionic quantum
//! systems.
//!
//! The pipeline runs from density matrices on the 3- and 5-ball
//! ([`state_space`]), through their quantum Fisher information ([`qfi`]) and
//! the Jeffreys priors it induces ([`priors`]), to the Gibbs family obtained
//! by exponentially tilting the prior's one-dimensional marginal
//! ([`gibbs`]). The normalizations are modified Bessel functions
//! ([`special`]) and every definite integral goes through [`quadrature`].
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below are the double-precision instantiations used by the CLI.

pub mod error;
pub mod gibbs;
pub mod linalg;
pub mod priors;
pub mod qfi;
pub mod quadrature;
pub mod scalar;
pub mod special;
pub mod state_space;

pub use error::{Error, Result};
pub use gibbs::{Gibbs, GibbsParams, Quantity, ThermoCurve};
pub use linalg::{ComplexMatrix, HermitianMatrix, RealMatrix};
pub use priors::{MarginalReport, NormalizationReport, SampleBatch};
pub use qfi::QfiMatrix;
pub use quadrature::{Integral, QuadratureSpec};
pub use scalar::Real;
pub use special::BesselOrder;
pub use state_space::{BlochPoint, Family, Quaternion};

/// Structure-function family; `n = 1` complex, `n = 2` quaternionic.
pub type StructureFamily = Family;

pub type Quaternion64 = Quaternion<f64>;
pub type BlochPoint64 = BlochPoint<f64>;
pub type HermitianMatrix64 = HermitianMatrix<f64>;
pub type QfiMatrix64 = QfiMatrix<f64>;
pub type QuadratureSpec64 = QuadratureSpec<f64>;
pub type GibbsParams64 = GibbsParams<f64>;
pub type Gibbs64 = Gibbs<f64>;
pub type ThermoCurve64 = ThermoCurve<f64>;
pub type SampleBatch64 = SampleBatch<f64>;

pub type Quaternion32 = Quaternion<f32>;
pub type BlochPoint32 = BlochPoint<f32>;
pub type QuadratureSpec32 = QuadratureSpec<f32>;
pub type GibbsParams32 = GibbsParams<f32>;
