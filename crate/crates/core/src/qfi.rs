//! Quantum Fisher information of the two-level families.
//!
//! The numeric route solves the symmetrized-logarithmic-derivative equation
//! `ρL + Lρ = 2∂ρ` in the eigenbasis of ρ for each coordinate and forms
//! `H_ab = ½ Tr[ρ(L_a L_b + L_b L_a)]`. The closed form is
//!
//! ```text
//! H_ab = (δ_ab (1 − r² + a²) + (1 − δ_ab) a·b) / (1 − r²),   det H = 1/(1 − r²),
//! ```
//!
//! in both the 3- and 5-dimensional cases.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix, RealMatrix};
use crate::scalar::Real;
use crate::state_space::{complex_affine, quaternionic_affine, BlochPoint, Family};

/// Real symmetric information matrix evaluated at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct QfiMatrix<T> {
    pub matrix: RealMatrix<T>,
    pub at: BlochPoint<T>,
}

impl<T: Real> QfiMatrix<T> {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.matrix[(i, j)]
    }

    pub fn determinant(&self) -> T {
        self.matrix.determinant()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.matrix.cholesky().is_some()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

/// Closed-form QFI at an interior point.
pub fn qfi_closed_form<T: Real>(p: &BlochPoint<T>) -> Result<QfiMatrix<T>> {
    p.require_interior()?;
    let c = p.coords();
    let d = c.len();
    let r2 = p.radius_sqr();
    let inv = T::one() / (T::one() - r2);
    let mut m = RealMatrix::zeros(d);
    for a in 0..d {
        for b in 0..d {
            m[(a, b)] = if a == b {
                (T::one() - (r2 - c[a] * c[a])) * inv
            } else {
                c[a] * c[b] * inv
            };
        }
    }
    Ok(QfiMatrix {
        matrix: m,
        at: p.clone(),
    })
}

/// `det H = 1/(1 − r²)`.
pub fn qfi_determinant<T: Real>(p: &BlochPoint<T>) -> Result<T> {
    p.require_interior()?;
    Ok(T::one() / (T::one() - p.radius_sqr()))
}

/// Solves `ρL + Lρ = 2∂ρ` for the Hermitian `L`.
pub fn sld_solve<T: Real>(
    rho: &HermitianMatrix<T>,
    drho: &HermitianMatrix<T>,
) -> Result<HermitianMatrix<T>> {
    if rho.dim() != drho.dim() {
        return Err(Error::InvalidParameter(
            "rho and drho must have the same dimension".into(),
        ));
    }
    let eig = rho.eigh();
    sld_in_eigenbasis(&eig.values, &eig.vectors, drho)
}

fn sld_in_eigenbasis<T: Real>(
    values: &[T],
    vectors: &ComplexMatrix<T>,
    drho: &HermitianMatrix<T>,
) -> Result<HermitianMatrix<T>> {
    let n = values.len();
    let floor = T::lit(1e-12);
    let vh = vectors.adjoint();
    let d = &(&vh * drho.as_matrix()) * vectors;
    let mut l = ComplexMatrix::zeros(n);
    for a in 0..n {
        for b in 0..n {
            let s = values[a] + values[b];
            if s < floor {
                return Err(Error::SingularState {
                    pair_sum: s.to_f64().unwrap_or(f64::NAN),
                });
            }
            l[(a, b)] = d[(a, b)] * (T::lit(2.0) / s);
        }
    }
    let back = &(vectors * &l) * &vh;
    HermitianMatrix::new(back)
}

/// Exact coordinate derivative `∂ρ/∂θ_a`; the parameterization is affine, so
/// this is `ρ(e_a) − ρ(0)`.
pub fn density_derivative<T: Real>(family: Family, axis: usize) -> HermitianMatrix<T> {
    let d = family.dim();
    assert!(axis < d, "axis out of range");
    let zero = vec![T::zero(); d];
    let mut unit = zero.clone();
    unit[axis] = T::one();
    let (at_unit, at_zero) = match family {
        Family::Complex => (complex_affine(&unit), complex_affine(&zero)),
        Family::Quaternionic => (quaternionic_affine(&unit), quaternionic_affine(&zero)),
    };
    HermitianMatrix::new(at_unit.as_matrix() - at_zero.as_matrix())
        .expect("difference of Hermitian matrices is Hermitian")
}

/// QFI from SLDs. Returns [`Error::BoundaryPoint`] outside the interior and
/// propagates [`Error::SingularState`].
pub fn qfi_numeric<T: Real>(p: &BlochPoint<T>) -> Result<QfiMatrix<T>> {
    p.require_interior()?;
    let family = p.family();
    let rho = crate::state_space::density(p)?;
    let eig = rho.eigh();
    let d = family.dim();
    let slds = (0..d)
        .map(|a| sld_in_eigenbasis(&eig.values, &eig.vectors, &density_derivative(family, a)))
        .collect::<Result<Vec<_>>>()?;
    let rho_m = rho.as_matrix();
    let mut h = RealMatrix::zeros(d);
    for a in 0..d {
        for b in a..d {
            let la = slds[a].as_matrix();
            let lb = slds[b].as_matrix();
            let anti = &(la * lb) + &(lb * la);
            let tr = trace_of_product(rho_m, &anti);
            let v = tr.re * T::lit(0.5);
            h[(a, b)] = v;
            h[(b, a)] = v;
        }
    }
    Ok(QfiMatrix {
        matrix: h,
        at: p.clone(),
    })
}

fn trace_of_product<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Complex<T> {
    let n = a.dim();
    let mut s = Complex::zero();
    for i in 0..n {
        for k in 0..n {
            s += a[(i, k)] * b[(k, i)];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> BlochPoint<f64> {
        BlochPoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let h = qfi_closed_form(&pt(&[0.0, 0.0, 0.0])).unwrap();
        assert_eq!(h.matrix, RealMatrix::identity(3));
        let h = qfi_closed_form(&pt(&[0.0, 0.0, 0.5])).unwrap();
        let expected =
            RealMatrix::from_row_major(3, vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 4.0 / 3.0]);
        assert!(h.matrix.max_abs_diff(&expected) < 1e-15);
        let h = qfi_closed_form(&pt(&[0.0; 5])).unwrap();
        assert_eq!(h.matrix, RealMatrix::identity(5));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(qfi_determinant(&pt(&[0.0, 0.0, 0.0])).unwrap(), 1.0);
        assert!((qfi_determinant(&pt(&[0.6, 0.0, 0.0])).unwrap() - 1.5625).abs() < 1e-15);
    }

    #[test]
    fn boundary_is_rejected() {
        let p = pt(&[0.0, 0.0, 1.0]);
        assert!(matches!(
            qfi_closed_form(&p),
            Err(Error::BoundaryPoint { .. })
        ));
        assert!(matches!(qfi_numeric(&p), Err(Error::BoundaryPoint { .. })));
        assert!(matches!(
            qfi_determinant(&p),
            Err(Error::BoundaryPoint { .. })
        ));
    }

    #[test]
    fn sld_trivial_cases() {
        let rho = HermitianMatrix::<f64>::identity(2).scale(0.5);
        let zero = HermitianMatrix::zeros(2);
        let l = sld_solve(&rho, &zero).unwrap();
        assert!(l.as_matrix().max_abs() < 1e-15);
        let drho = density_derivative::<f64>(Family::Complex, 1);
        let l = sld_solve(&rho, &drho).unwrap();
        let diff = l.as_matrix() - &drho.as_matrix().scale(2.0);
        assert!(diff.max_abs() < 1e-15);
    }

    #[test]
    fn sld_singular_state() {
        let rho = crate::state_space::density(&pt(&[0.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
        let drho = density_derivative::<f64>(Family::Quaternionic, 0);
        assert!(matches!(
            sld_solve(&rho, &drho),
            Err(Error::SingularState { .. })
        ));
    }

    #[test]
    fn numeric_at_origin_is_identity() {
        for fam in [Family::Complex, Family::Quaternionic] {
            let h = qfi_numeric(&BlochPoint::<f64>::origin(fam)).unwrap();
            assert!(h.matrix.max_abs_diff(&RealMatrix::identity(fam.dim())) < 1e-10);
        }
    }

    #[test]
    fn numeric_matches_closed_form_at_fixed_points() {
        for c in [
            vec![0.3, -0.2, 0.5],
            vec![0.0, 0.9, 0.1],
            vec![0.1, 0.2, -0.3, 0.4, 0.5],
            vec![-0.6, 0.0, 0.3, 0.1, -0.5],
        ] {
            let p = pt(&c);
            let num = qfi_numeric(&p).unwrap();
            let closed = qfi_closed_form(&p).unwrap();
            assert!(num.max_abs_diff(&closed) < 1e-10, "{c:?}");
            assert!(num.is_positive_definite());
        }
    }

    #[test]
    fn single_precision_qfi() {
        let p = BlochPoint::<f32>::new(vec![0.1, 0.2, -0.3, 0.2, 0.4]).unwrap();
        let num = qfi_numeric(&p).unwrap();
        let closed = qfi_closed_form(&p).unwrap();
        assert!(num.max_abs_diff(&closed) < 1e-4);
    }
}
