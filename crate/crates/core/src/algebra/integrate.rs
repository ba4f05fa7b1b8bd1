//! Exact integration of closed polynomial 1-forms and of Hessians.

use thiserror::Error;

use super::matrix::PolyMatrix;
use super::poly::Poly;

/// Failure of an exactness test. Indices are zero-based; `Display` shows the
/// corresponding variable names `u1..uN`.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IntegrationError {
    /// `residual = dv_i/du_j - dv_j/du_i` is nonzero.
    #[error("1-form is not closed at (u{}, u{}): residual {residual}", .i + 1, .j + 1)]
    NotClosed { i: usize, j: usize, residual: Poly },
    /// `residual = M_ij - M_ji` is nonzero.
    #[error("matrix is not symmetric at ({}, {}): residual {residual}", .i + 1, .j + 1)]
    NotSymmetric { i: usize, j: usize, residual: Poly },
    /// Column `column` of the matrix is not closed as a 1-form.
    #[error("column {} is not closed at (u{}, u{}): residual {residual}", .column + 1, .i + 1, .j + 1)]
    ColumnNotClosed {
        column: usize,
        i: usize,
        j: usize,
        residual: Poly,
    },
    /// The first-stage potentials do not form a closed 1-form.
    #[error("first-stage potentials are not closed at (u{}, u{}): residual {residual}", .i + 1, .j + 1)]
    PotentialsNotClosed { i: usize, j: usize, residual: Poly },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

fn closedness_defect(v: &[Poly]) -> Option<(usize, usize, Poly)> {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let r = &v[i].d(j) - &v[j].d(i);
            if !r.is_zero() {
                return Some((i, j, r));
            }
        }
    }
    None
}

/// Returns the unique `phi` with `gradient(phi) = v` and `phi(0) = 0`, or the
/// first index pair `i < j` where the closedness test fails.
pub fn integrate_gradient(v: &[Poly]) -> Result<Poly, IntegrationError> {
    let n = v.len();
    if let Some(p) = v.iter().find(|p| p.dim() != n) {
        return Err(IntegrationError::Shape(format!(
            "covector of length {n} has a component of dimension {}",
            p.dim()
        )));
    }
    if let Some((i, j, residual)) = closedness_defect(v) {
        return Err(IntegrationError::NotClosed { i, j, residual });
    }
    // Radial homotopy: phi(u) = sum_i u_i * integral_0^1 v_i(t u) dt.
    let mut acc = Poly::zero(n);
    for (i, vi) in v.iter().enumerate() {
        if !vi.is_zero() {
            acc += &(vi * &Poly::var(n, i));
        }
    }
    let phi = acc.divide_by_degree(0);
    debug_assert_eq!(phi.gradient(), v);
    Ok(phi)
}

/// Returns `h` with `hessian(h) = m` and vanishing constant and linear part.
///
/// Integrates each column to a potential `a_k`, checks that the potentials
/// are themselves closed, and integrates once more.
pub fn integrate_hessian(m: &PolyMatrix) -> Result<Poly, IntegrationError> {
    let n = m.rows();
    if !m.is_square() || m.dim() != n {
        return Err(IntegrationError::Shape(format!(
            "expected a square matrix of size {} over dimension {}, got {}x{}",
            m.dim(),
            m.dim(),
            m.rows(),
            m.cols()
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            let r = m.get(i, j) - m.get(j, i);
            if !r.is_zero() {
                return Err(IntegrationError::NotSymmetric { i, j, residual: r });
            }
        }
    }
    let mut potentials = Vec::with_capacity(n);
    for k in 0..n {
        let a = integrate_gradient(&m.column(k)).map_err(|e| match e {
            IntegrationError::NotClosed { i, j, residual } => IntegrationError::ColumnNotClosed {
                column: k,
                i,
                j,
                residual,
            },
            other => other,
        })?;
        potentials.push(a);
    }
    integrate_gradient(&potentials).map_err(|e| match e {
        IntegrationError::NotClosed { i, j, residual } => {
            IntegrationError::PotentialsNotClosed { i, j, residual }
        }
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, ratio};

    fn u(dim: usize, i: usize) -> Poly {
        Poly::var(dim, i)
    }

    #[test]
    fn gradient_of_product() {
        let got = integrate_gradient(&[u(2, 1), u(2, 0)]).unwrap();
        assert_eq!(got, &u(2, 0) * &u(2, 1));
    }

    #[test]
    fn not_closed_reports_pair_and_residual() {
        let err = integrate_gradient(&[u(2, 1), Poly::zero(2)]).unwrap_err();
        assert_eq!(
            err,
            IntegrationError::NotClosed {
                i: 0,
                j: 1,
                residual: Poly::one(2)
            }
        );
        assert!(err.to_string().contains("(u1, u2)"));
    }

    #[test]
    fn univariate_antiderivative() {
        let v = u(1, 0).pow(4).scale(&ratio(1, 3));
        assert_eq!(
            integrate_gradient(&[v]).unwrap(),
            u(1, 0).pow(5).scale(&ratio(1, 15))
        );
    }

    #[test]
    fn hessian_examples() {
        let id = PolyMatrix::identity(2, 2);
        let want = (u(2, 0).pow(2) + u(2, 1).pow(2)).scale(&ratio(1, 2));
        assert_eq!(integrate_hessian(&id).unwrap(), want);

        let m = PolyMatrix::from_rows(1, vec![vec![u(1, 0).pow(4).scale(&ratio(1, 3))]]).unwrap();
        assert_eq!(
            integrate_hessian(&m).unwrap(),
            u(1, 0).pow(6).scale(&ratio(1, 90))
        );

        let skew = PolyMatrix::from_rows(
            2,
            vec![
                vec![Poly::zero(2), Poly::one(2)],
                vec![Poly::constant(2, int(-1)), Poly::zero(2)],
            ],
        )
        .unwrap();
        assert!(matches!(
            integrate_hessian(&skew),
            Err(IntegrationError::NotSymmetric { i: 0, j: 1, .. })
        ));
    }

    #[test]
    fn hessian_column_not_closed() {
        // symmetric but not a Hessian: [[u2, 0], [0, 0]]
        let m = PolyMatrix::from_rows(
            2,
            vec![
                vec![u(2, 1), Poly::zero(2)],
                vec![Poly::zero(2), Poly::zero(2)],
            ],
        )
        .unwrap();
        assert_eq!(
            integrate_hessian(&m).unwrap_err(),
            IntegrationError::ColumnNotClosed {
                column: 0,
                i: 0,
                j: 1,
                residual: Poly::one(2)
            }
        );
    }
}
