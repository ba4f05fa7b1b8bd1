//! Associativity equations, Frobenius structure constants and the
//! three-dimensional reduction to a single scalar equation.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::scalar::ratio;
use crate::algebra::{ConstSymMatrix, Poly, PolyMatrix, PolyTensor};
use crate::report::{Check, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WdvvError {
    #[error("metric has size {eta} but the potential has dimension {phi}")]
    DimensionMismatch { eta: usize, phi: usize },
    #[error("f must be a polynomial in u2, u3 over dimension 3")]
    NotReducedPotential,
    #[error("f does not solve the reduced associativity equation: residual {0}")]
    NotASolution(Poly),
}

/// A potential `phi(u)` with a constant metric `eta^{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdvvProblem {
    eta: ConstSymMatrix,
    phi: Poly,
}

impl WdvvProblem {
    pub fn new(eta: ConstSymMatrix, phi: Poly) -> Result<Self, WdvvError> {
        if eta.size() != phi.dim() {
            return Err(WdvvError::DimensionMismatch {
                eta: eta.size(),
                phi: phi.dim(),
            });
        }
        Ok(WdvvProblem { eta, phi })
    }

    /// `phi = 1/2 u1^2 u3 + 1/2 u1 u2^2 + f(u2, u3)` with the antidiagonal
    /// metric, for which `e_1` is the unit of the algebra.
    pub fn three_dim_ansatz(f: &Poly) -> Result<Self, WdvvError> {
        check_reduced(f)?;
        let phi = ansatz_head() + f.clone();
        Self::new(ConstSymMatrix::antidiagonal(3), phi)
    }

    pub fn dim(&self) -> usize {
        self.phi.dim()
    }

    pub fn eta(&self) -> &ConstSymMatrix {
        &self.eta
    }

    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    /// `d phi / d u_n` for every `n`.
    pub fn first_derivatives(&self) -> Vec<Poly> {
        self.phi.gradient()
    }

    /// All third derivatives `phi_{ijk}`, shape `N x N x N`.
    pub fn third_derivatives(&self) -> PolyTensor {
        let n = self.dim();
        let second: Vec<Vec<Poly>> = self
            .phi
            .gradient()
            .iter()
            .map(|g| (0..n).map(|j| g.d(j)).collect())
            .collect();
        PolyTensor::from_fn(&[n, n, n], |idx| second[idx[0]][idx[1]].d(idx[2]))
    }
}

/// `1/2 u1^2 u3 + 1/2 u1 u2^2`.
pub fn ansatz_head() -> Poly {
    let u1 = Poly::var(3, 0);
    let u2 = Poly::var(3, 1);
    let u3 = Poly::var(3, 2);
    ((&u1.pow(2) * &u3) + (&u1 * &u2.pow(2))).scale(&ratio(1, 2))
}

fn check_reduced(f: &Poly) -> Result<(), WdvvError> {
    if f.dim() != 3 || f.depends_on(0) {
        Err(WdvvError::NotReducedPotential)
    } else {
        Ok(())
    }
}

/// `T(i,j | k,l) = sum eta^{mn} phi_{ijm} phi_{nkl}` over a cached third
/// derivative tensor.
fn contract(eta: &ConstSymMatrix, d3: &PolyTensor, i: usize, j: usize, k: usize, l: usize) -> Poly {
    let n = eta.size();
    let mut acc = Poly::zero(d3.get(&[0, 0, 0]).dim());
    for m in 0..n {
        let left = d3.get(&[i, j, m]);
        if left.is_zero() {
            continue;
        }
        for q in 0..n {
            let e = eta.get(m, q);
            if e.is_zero() {
                continue;
            }
            let right = d3.get(&[q, k, l]);
            if !right.is_zero() {
                acc += &(left * right).scale(e);
            }
        }
    }
    acc
}

/// `residual(i,j,k,l) = T(ij|kl) - T(ik|jl)`; the potential solves the
/// associativity equations iff every entry vanishes.
pub fn wdvv_residual(prob: &WdvvProblem) -> PolyTensor {
    let n = prob.dim();
    let d3 = prob.third_derivatives();
    let eta = &prob.eta;
    PolyTensor::from_fn(&[n, n, n, n], |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        if j == k {
            return Poly::zero(n);
        }
        &contract(eta, &d3, i, j, k, l) - &contract(eta, &d3, i, k, j, l)
    })
}

pub fn is_wdvv_solution(prob: &WdvvProblem) -> bool {
    wdvv_residual(prob).is_zero()
}

/// Structure constants `c^k_{ij}` of the multiplication `e_i * e_j = c^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    // c[k][i][j]
    c: PolyTensor,
}

impl StructureConstants {
    pub fn from_tensor(c: PolyTensor) -> Self {
        assert!(c.shape().len() == 3 && c.shape().iter().all(|&s| s == c.shape()[0]));
        StructureConstants { c }
    }

    pub fn dim(&self) -> usize {
        self.c.shape()[0]
    }

    /// `c^k_{ij}`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> &Poly {
        self.c.get(&[k, i, j])
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, p: Poly) {
        self.c.set(&[k, i, j], p);
    }

    pub fn tensor(&self) -> &PolyTensor {
        &self.c
    }
}

/// `c^k_{ij} = eta^{ks} phi_{sij}`.
pub fn structure_constants(prob: &WdvvProblem) -> StructureConstants {
    let n = prob.dim();
    let d3 = prob.third_derivatives();
    let c = PolyTensor::from_fn(&[n, n, n], |x| {
        let (k, i, j) = (x[0], x[1], x[2]);
        let mut acc = Poly::zero(n);
        for s in 0..n {
            let e = prob.eta.get(k, s);
            if !e.is_zero() {
                acc += &d3.get(&[s, i, j]).scale(e);
            }
        }
        acc
    });
    StructureConstants { c }
}

/// Component `l` of `(e_i * e_j) * e_k - e_i * (e_j * e_k)`.
pub fn associativity_residual(c: &StructureConstants) -> PolyTensor {
    let n = c.dim();
    let pd = c.get(0, 0, 0).dim();
    PolyTensor::from_fn(&[n, n, n, n], |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        let mut acc = Poly::zero(pd);
        for m in 0..n {
            let a = c.get(m, i, j);
            let b = c.get(l, m, k);
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
            let a = c.get(m, j, k);
            let b = c.get(l, i, m);
            if !a.is_zero() && !b.is_zero() {
                acc -= &(a * b);
            }
        }
        acc
    })
}

/// `f_333 - f_223^2 + f_222 f_233` for a potential `f(u2, u3)`.
pub fn dubrovin_residual(f: &Poly) -> Result<Poly, WdvvError> {
    check_reduced(f)?;
    let (a, b, c) = abc(f);
    let f333 = f.d(2).d(2).d(2);
    Ok(&(&f333 - &(&b * &b)) + &(&a * &c))
}

fn abc(f: &Poly) -> (Poly, Poly, Poly) {
    let f22 = f.d(1).d(1);
    let f23 = f.d(1).d(2);
    (f22.d(1), f22.d(2), f23.d(2))
}

/// Checks that `a = f_222`, `b = f_223`, `c = f_233` satisfy
///
/// ```text
/// (a, b, c)_{u3} = [[0, 1, 0], [0, 0, 1], [-c, 2b, -a]] (a, b, c)_{u2}
/// ```
///
/// for a solution `f` of the reduced equation.
pub fn abc_flow_check(f: &Poly) -> Result<VerificationReport, WdvvError> {
    let r = dubrovin_residual(f)?;
    if !r.is_zero() {
        return Err(WdvvError::NotASolution(r));
    }
    let (a, b, c) = abc(f);
    let (a2, b2, c2) = (a.d(1), b.d(1), c.d(1));
    let mut check = Check::new("abc-system");
    check.record(&[0], &a.d(2) - &b2);
    check.record(&[1], &b.d(2) - &c2);
    let rhs = &(&(&b * &b2).scale(&crate::algebra::scalar::int(2)) - &(&c * &a2)) - &(&a * &c2);
    check.record(&[2], &c.d(2) - &rhs);
    Ok(VerificationReport {
        checks: vec![check],
    })
}

/// `(w_n)^i_j = eta^{is} phi_{snj}`, one affinor per coordinate direction.
pub fn affinors_from_phi(prob: &WdvvProblem) -> Vec<PolyMatrix> {
    let n = prob.dim();
    let d3 = prob.third_derivatives();
    (0..n)
        .map(|dir| {
            let mut w = PolyMatrix::zero(n, n, n);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Poly::zero(n);
                    for s in 0..n {
                        let e = prob.eta.get(i, s);
                        if !e.is_zero() {
                            acc += &d3.get(&[s, dir, j]).scale(e);
                        }
                    }
                    w.set(i, j, acc);
                }
            }
            w
        })
        .collect()
}

/// Verdict of the associativity test as a report.
pub fn wdvv_check(prob: &WdvvProblem) -> Check {
    Check::from_tensor("associativity", &wdvv_residual(prob))
}
