//! Polynomials on the second jet space: variables `u^i`, `u^i_x`, `u^i_xx`.

use std::ops::{Add, Mul, Neg, Sub};

use super::matrix::PolyMatrix;
use super::poly::Poly;
use super::AlgebraError;

/// Highest jet order the arena represents.
pub const MAX_JET_ORDER: u32 = 2;

/// Polynomial in `3N` variables ordered `(u, u_x, u_xx)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetPoly {
    n: usize,
    poly: Poly,
}

impl JetPoly {
    pub fn zero(n: usize) -> Self {
        JetPoly {
            n,
            poly: Poly::zero(3 * n),
        }
    }

    /// Ring embedding of a field polynomial.
    pub fn from_poly(p: &Poly) -> Self {
        let n = p.dim();
        JetPoly {
            n,
            poly: p.embed(3 * n, 0),
        }
    }

    fn var(n: usize, order: usize, i: usize) -> Self {
        assert!(i < n, "field index out of range");
        JetPoly {
            n,
            poly: Poly::var(3 * n, order * n + i),
        }
    }

    pub fn u(n: usize, i: usize) -> Self {
        Self::var(n, 0, i)
    }

    pub fn ux(n: usize, i: usize) -> Self {
        Self::var(n, 1, i)
    }

    pub fn uxx(n: usize, i: usize) -> Self {
        Self::var(n, 2, i)
    }

    pub fn fields(&self) -> usize {
        self.n
    }

    /// Underlying polynomial in `3N` variables.
    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// 0 for a function of `u` only, 1 if some `u_x` occurs, 2 if some `u_xx`.
    pub fn jet_order(&self) -> u32 {
        let n = self.n;
        if (2 * n..3 * n).any(|v| self.poly.depends_on(v)) {
            2
        } else if (n..2 * n).any(|v| self.poly.depends_on(v)) {
            1
        } else {
            0
        }
    }

    /// Partial derivative in `u^i` (order 0), `u^i_x` (1) or `u^i_xx` (2).
    pub fn d(&self, order: usize, i: usize) -> JetPoly {
        JetPoly {
            n: self.n,
            poly: self.poly.d(order * self.n + i),
        }
    }

    /// Total x-derivative of an expression of jet order at most 1.
    pub fn total_x_derivative(&self) -> Result<JetPoly, AlgebraError> {
        let order = self.jet_order();
        if order >= MAX_JET_ORDER {
            return Err(AlgebraError::JetOrderTooHigh {
                order: order + 1,
                max: MAX_JET_ORDER,
            });
        }
        let n = self.n;
        let mut out = JetPoly::zero(n);
        for i in 0..n {
            out = out + &self.d(0, i) * &JetPoly::ux(n, i);
            out = out + &self.d(1, i) * &JetPoly::uxx(n, i);
        }
        Ok(out)
    }
}

/// Right-hand side `(A u_x)^i` of the flow `u_t = A(u) u_x`.
pub fn flow_velocity(flow: &PolyMatrix) -> Result<Vec<JetPoly>, AlgebraError> {
    let n = flow.dim();
    if flow.rows() != n || flow.cols() != n {
        return Err(AlgebraError::DimensionMismatch(format!(
            "flow matrix must be {n}x{n}, got {}x{}",
            flow.rows(),
            flow.cols()
        )));
    }
    Ok((0..n)
        .map(|i| {
            let mut acc = JetPoly::zero(n);
            for j in 0..n {
                let a = flow.get(i, j);
                if !a.is_zero() {
                    acc = acc + &JetPoly::from_poly(a) * &JetPoly::ux(n, j);
                }
            }
            acc
        })
        .collect())
}

/// Derivative of `e` along the evolutionary field of `u_t = A(u) u_x`: every
/// `u^i` contributes `(A u_x)^i` and every `u^i_x` contributes
/// `D_x (A u_x)^i`, by the chain rule.
pub fn evolutionary_derivative(e: &JetPoly, flow: &PolyMatrix) -> Result<JetPoly, AlgebraError> {
    if e.jet_order() > 1 {
        return Err(AlgebraError::JetOrderTooHigh {
            order: e.jet_order() + 1,
            max: MAX_JET_ORDER,
        });
    }
    if flow.dim() != e.fields() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "expression over {} fields, flow over {}",
            e.fields(),
            flow.dim()
        )));
    }
    let velocity = flow_velocity(flow)?;
    let n = e.fields();
    let mut out = JetPoly::zero(n);
    for (i, vel) in velocity.iter().enumerate() {
        let du = e.d(0, i);
        if !du.is_zero() {
            out = out + &du * vel;
        }
        let dux = e.d(1, i);
        if !dux.is_zero() {
            out = out + &dux * &vel.total_x_derivative()?;
        }
    }
    Ok(out)
}

impl<'a> Add<&'a JetPoly> for &'a JetPoly {
    type Output = JetPoly;
    fn add(self, rhs: &'a JetPoly) -> JetPoly {
        assert_eq!(self.n, rhs.n);
        JetPoly {
            n: self.n,
            poly: &self.poly + &rhs.poly,
        }
    }
}

impl Add for JetPoly {
    type Output = JetPoly;
    fn add(self, rhs: JetPoly) -> JetPoly {
        assert_eq!(self.n, rhs.n);
        JetPoly {
            n: self.n,
            poly: self.poly + rhs.poly,
        }
    }
}

impl<'a> Sub<&'a JetPoly> for &'a JetPoly {
    type Output = JetPoly;
    fn sub(self, rhs: &'a JetPoly) -> JetPoly {
        assert_eq!(self.n, rhs.n);
        JetPoly {
            n: self.n,
            poly: &self.poly - &rhs.poly,
        }
    }
}

impl<'a> Mul<&'a JetPoly> for &'a JetPoly {
    type Output = JetPoly;
    fn mul(self, rhs: &'a JetPoly) -> JetPoly {
        assert_eq!(self.n, rhs.n);
        JetPoly {
            n: self.n,
            poly: &self.poly * &rhs.poly,
        }
    }
}

impl Neg for &JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        JetPoly {
            n: self.n,
            poly: -&self.poly,
        }
    }
}
