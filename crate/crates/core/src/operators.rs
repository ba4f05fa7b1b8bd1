//! Hamiltonian-property checks for nonlocal operators of hydrodynamic type.
//!
//! Two data models are supported. [`ConstantFormSpec`] describes an operator
//! in flat coordinates by a constant metric `eta`, a constant form `mu` and
//! potentials `psi_n`, whose Hessians give the affinors. [`GeneralFormSpec`]
//! gives the coefficients `g^{ij}`, `b^{ij}_k`, `(w_n)^i_j` in arbitrary
//! coordinates; every relation is a polynomial identity in those
//! coefficients, so no metric inversion is needed.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{ConstSymMatrix, Poly, PolyMatrix, PolyTensor};
use crate::report::{Check, VerificationReport};
use crate::wdvv::WdvvProblem;

pub const RICCI: &str = "ricci";
pub const GAUSS: &str = "gauss";
pub const METRIC_SYMMETRY: &str = "metric-symmetry";
pub const METRIC_DERIVATIVE: &str = "metric-derivative";
pub const CONNECTION_SYMMETRY: &str = "connection-symmetry";
pub const AFFINOR_SELF_ADJOINT: &str = "affinor-self-adjoint";
pub const AFFINOR_COMMUTATIVITY: &str = "affinor-commutativity";
pub const AFFINOR_DERIVATIVE: &str = "affinor-derivative";
pub const CURVATURE_IDENTITY: &str = "curvature-identity";
pub const FLAT_METRIC: &str = "flat-metric";
pub const AFFINOR_CURVATURE_VANISHES: &str = "affinor-curvature-vanishes";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("invalid operator data: {0}")]
    InvalidSpec(String),
    #[error("precondition failed: {what}")]
    PreconditionFailed {
        what: &'static str,
        report: VerificationReport,
    },
}

/// Operator `eta^{ij} d/dx + sum mu^{mn} w_m u_x (d/dx)^{-1} w_n u_x` in flat
/// coordinates with `w_n = eta * Hess(psi_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantFormSpec {
    eta: ConstSymMatrix,
    mu: ConstSymMatrix,
    psis: Vec<Poly>,
}

impl ConstantFormSpec {
    pub fn new(
        eta: ConstSymMatrix,
        mu: ConstSymMatrix,
        psis: Vec<Poly>,
    ) -> Result<Self, OperatorError> {
        let n = eta.size();
        if n == 0 {
            return Err(OperatorError::InvalidSpec("N must be positive".into()));
        }
        if psis.is_empty() {
            return Err(OperatorError::InvalidSpec("L must be positive".into()));
        }
        if mu.size() != psis.len() {
            return Err(OperatorError::InvalidSpec(format!(
                "mu has size {} but {} potentials were given",
                mu.size(),
                psis.len()
            )));
        }
        if let Some(p) = psis.iter().find(|p| p.dim() != n) {
            return Err(OperatorError::InvalidSpec(format!(
                "potential of dimension {} for N = {n}",
                p.dim()
            )));
        }
        Ok(ConstantFormSpec { eta, mu, psis })
    }

    /// `L = N`, `mu = eta`, `psi_n = d phi / d u_n`.
    pub fn from_wdvv(prob: &WdvvProblem) -> Self {
        ConstantFormSpec {
            eta: prob.eta().clone(),
            mu: prob.eta().clone(),
            psis: prob.first_derivatives(),
        }
    }

    pub fn n(&self) -> usize {
        self.eta.size()
    }

    pub fn l(&self) -> usize {
        self.psis.len()
    }

    pub fn eta(&self) -> &ConstSymMatrix {
        &self.eta
    }

    pub fn mu(&self) -> &ConstSymMatrix {
        &self.mu
    }

    pub fn psis(&self) -> &[Poly] {
        &self.psis
    }

    pub fn psi_hessians(&self) -> Vec<PolyMatrix> {
        self.psis.iter().map(Poly::hessian).collect()
    }

    /// The same operator as general-form data: `g = eta`, `b = 0`, Hessian
    /// affinors.
    pub fn lower(&self) -> GeneralFormSpec {
        let n = self.n();
        GeneralFormSpec {
            g: PolyMatrix::from_const(&self.eta, n),
            b: PolyTensor::zeros(&[n, n, n], n),
            ws: hessian_affinors(self),
            mu: self.mu.clone(),
        }
    }
}

/// Coefficients `g^{ij}`, `b^{ij}_k`, `(w_n)^i_j` and `mu^{mn}` of an operator in
/// arbitrary coordinates. `L = 0` (no affinors, empty `mu`) is the local case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralFormSpec {
    g: PolyMatrix,
    b: PolyTensor,
    ws: Vec<PolyMatrix>,
    mu: ConstSymMatrix,
}

impl GeneralFormSpec {
    /// `b` has shape `N x N x N` with `b[i][j][k] = b^{ij}_k`.
    pub fn new(
        g: PolyMatrix,
        b: PolyTensor,
        ws: Vec<PolyMatrix>,
        mu: ConstSymMatrix,
    ) -> Result<Self, OperatorError> {
        let n = g.dim();
        if n == 0 || g.rows() != n || g.cols() != n {
            return Err(OperatorError::InvalidSpec(format!(
                "metric must be {n}x{n} over dimension {n}"
            )));
        }
        if b.shape() != [n, n, n] || b.get(&[0, 0, 0]).dim() != n {
            return Err(OperatorError::InvalidSpec(
                "b must have shape N x N x N".into(),
            ));
        }
        if ws
            .iter()
            .any(|w| w.rows() != n || w.cols() != n || w.dim() != n)
        {
            return Err(OperatorError::InvalidSpec(
                "affinors must be N x N over dimension N".into(),
            ));
        }
        if mu.size() != ws.len() {
            return Err(OperatorError::InvalidSpec(format!(
                "mu has size {} but {} affinors were given",
                mu.size(),
                ws.len()
            )));
        }
        Ok(GeneralFormSpec { g, b, ws, mu })
    }

    pub fn n(&self) -> usize {
        self.g.dim()
    }

    pub fn l(&self) -> usize {
        self.ws.len()
    }

    pub fn g(&self) -> &PolyMatrix {
        &self.g
    }

    pub fn b(&self) -> &PolyTensor {
        &self.b
    }

    pub fn affinors(&self) -> &[PolyMatrix] {
        &self.ws
    }

    pub fn mu(&self) -> &ConstSymMatrix {
        &self.mu
    }

    fn bb(&self, i: usize, j: usize, k: usize) -> &Poly {
        self.b.get(&[i, j, k])
    }
}

/// `w_n = eta * Hess(psi_n)`.
pub fn hessian_affinors(spec: &ConstantFormSpec) -> Vec<PolyMatrix> {
    spec.psi_hessians()
        .iter()
        .map(|h| PolyMatrix::const_left_mul(&spec.eta, h))
        .collect()
}

/// `Hess(psi_j) eta Hess(psi_k)` must be symmetric in `j, k`. Failures are
/// indexed `[j, k, i, l]` with `j < k`.
pub fn check_ricci(spec: &ConstantFormSpec) -> VerificationReport {
    let hs = spec.psi_hessians();
    let eta = PolyMatrix::from_const(&spec.eta, spec.n());
    let mut check = Check::new(RICCI);
    for j in 0..spec.l() {
        for k in j + 1..spec.l() {
            let jk = &(&hs[j] * &eta) * &hs[k];
            let kj = &(&hs[k] * &eta) * &hs[j];
            let diff = &jk - &kj;
            for i in 0..spec.n() {
                for l in 0..spec.n() {
                    check.record(&[j, k, i, l], diff.get(i, l).clone());
                }
            }
        }
    }
    VerificationReport {
        checks: vec![check],
    }
}

/// `sum mu^{mn} psi_{m,ij} psi_{n,kl}` must be symmetric under `j <-> k`.
/// Failures are indexed `[i, j, k, l]` with `j < k`.
pub fn check_gauss(spec: &ConstantFormSpec) -> VerificationReport {
    let hs = spec.psi_hessians();
    let (n, l) = (spec.n(), spec.l());
    let form = |i: usize, j: usize, k: usize, q: usize| {
        let mut acc = Poly::zero(n);
        for m in 0..l {
            let a = hs[m].get(i, j);
            if a.is_zero() {
                continue;
            }
            for p in 0..l {
                let c = spec.mu.get(m, p);
                if c.is_zero() {
                    continue;
                }
                let b = hs[p].get(k, q);
                if !b.is_zero() {
                    acc += &(a * b).scale(c);
                }
            }
        }
        acc
    };
    let mut check = Check::new(GAUSS);
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                for q in 0..n {
                    check.record(&[i, j, k, q], &form(i, j, k, q) - &form(i, k, j, q));
                }
            }
        }
    }
    VerificationReport {
        checks: vec![check],
    }
}

/// Both flat-coordinate conditions; passing certifies the operator Hamiltonian.
pub fn verify_constant_form(spec: &ConstantFormSpec) -> VerificationReport {
    let mut r = check_ricci(spec);
    r.extend(check_gauss(spec));
    r
}

fn relation_metric_symmetry(spec: &GeneralFormSpec) -> Check {
    let mut c = Check::new(METRIC_SYMMETRY);
    let n = spec.n();
    for i in 0..n {
        for j in i + 1..n {
            c.record(&[i, j], spec.g.get(i, j) - spec.g.get(j, i));
        }
    }
    c
}

fn relation_metric_derivative(spec: &GeneralFormSpec) -> Check {
    let mut c = Check::new(METRIC_DERIVATIVE);
    let n = spec.n();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = &(&spec.g.get(i, j).d(k) - spec.bb(i, j, k)) - spec.bb(j, i, k);
                c.record(&[i, j, k], r);
            }
        }
    }
    c
}

fn relation_connection_symmetry(spec: &GeneralFormSpec) -> Check {
    let mut c = Check::new(CONNECTION_SYMMETRY);
    let n = spec.n();
    let gb = |i: usize, j: usize, k: usize| {
        let mut acc = Poly::zero(n);
        for s in 0..n {
            acc += &(spec.g.get(i, s) * spec.bb(j, k, s));
        }
        acc
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                c.record(&[i, j, k], &gb(i, j, k) - &gb(j, i, k));
            }
        }
    }
    c
}

fn relation_affinor_self_adjoint(spec: &GeneralFormSpec) -> Check {
    let mut c = Check::new(AFFINOR_SELF_ADJOINT);
    let n = spec.n();
    for (idx, w) in spec.ws.iter().enumerate() {
        // (g w^T)^{ij} = g^{is} w^j_s
        let gw = &spec.g * &w.transpose();
        for i in 0..n {
            for j in i + 1..n {
                c.record(&[idx, i, j], gw.get(i, j) - gw.get(j, i));
            }
        }
    }
    c
}

fn relation_affinor_commutativity(spec: &GeneralFormSpec) -> Check {
    let mut c = Check::new(AFFINOR_COMMUTATIVITY);
    let n = spec.n();
    for a in 0..spec.l() {
        for b in a + 1..spec.l() {
            let comm = spec.ws[a]
                .commutator(&spec.ws[b])
                .expect("validated shapes");
            for i in 0..n {
                for j in 0..n {
                    c.record(&[a, b, i, j], comm.get(i, j).clone());
                }
            }
        }
    }
    c
}

/// `g^{is} g^{jr} d_s w^k_r - g^{jr} b^{ik}_s w^s_r` symmetric in `i, j`.
fn relation_affinor_derivative(spec: &GeneralFormSpec) -> Check {
    let mut c = Check::new(AFFINOR_DERIVATIVE);
    let n = spec.n();
    for (idx, w) in spec.ws.iter().enumerate() {
        let dw: Vec<PolyMatrix> = (0..n)
            .map(|s| {
                let mut m = PolyMatrix::zero(n, n, n);
                for k in 0..n {
                    for r in 0..n {
                        m.set(k, r, w.get(k, r).d(s));
                    }
                }
                m
            })
            .collect();
        let term = |i: usize, j: usize, k: usize| {
            let mut acc = Poly::zero(n);
            for r in 0..n {
                let gjr = spec.g.get(j, r);
                if gjr.is_zero() {
                    continue;
                }
                let mut inner = Poly::zero(n);
                for s in 0..n {
                    let gis = spec.g.get(i, s);
                    if !gis.is_zero() {
                        inner += &(gis * dw[s].get(k, r));
                    }
                    let bik = spec.bb(i, k, s);
                    if !bik.is_zero() {
                        inner -= &(bik * w.get(s, r));
                    }
                }
                acc += &(gjr * &inner);
            }
            acc
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    c.record(&[idx, i, j, k], &term(i, j, k) - &term(j, i, k));
                }
            }
        }
    }
    c
}

fn curvature_unchecked(spec: &GeneralFormSpec) -> PolyTensor {
    let n = spec.n();
    PolyTensor::from_fn(&[n, n, n, n], |x| {
        let (i, j, k, r) = (x[0], x[1], x[2], x[3]);
        let mut acc = Poly::zero(n);
        for s in 0..n {
            let gis = spec.g.get(i, s);
            if !gis.is_zero() {
                let db = &spec.bb(j, k, s).d(r) - &spec.bb(j, k, r).d(s);
                acc += &(gis * &db);
            }
            acc += &(spec.bb(i, j, s) * spec.bb(s, k, r));
            acc -= &(spec.bb(i, k, s) * spec.bb(s, j, r));
        }
        acc
    })
}

/// `sum mu^{mn} g^{is} ((w_m)^j_r (w_n)^k_s - (w_m)^j_s (w_n)^k_r)`.
fn affinor_curvature(spec: &GeneralFormSpec) -> PolyTensor {
    let n = spec.n();
    let l = spec.l();
    // v[m][n] entry (j, k, s, r) computed on demand through products
    PolyTensor::from_fn(&[n, n, n, n], |x| {
        let (i, j, k, r) = (x[0], x[1], x[2], x[3]);
        let mut acc = Poly::zero(n);
        for m in 0..l {
            for q in 0..l {
                let c = spec.mu.get(m, q);
                if c.is_zero() {
                    continue;
                }
                let (wm, wq) = (&spec.ws[m], &spec.ws[q]);
                let mut inner = Poly::zero(n);
                for s in 0..n {
                    let gis = spec.g.get(i, s);
                    if gis.is_zero() {
                        continue;
                    }
                    let t = &(wm.get(j, r) * wq.get(k, s)) - &(wm.get(j, s) * wq.get(k, r));
                    if !t.is_zero() {
                        inner += &(gis * &t);
                    }
                }
                acc += &inner.scale(c);
            }
        }
        acc
    })
}

fn relation_curvature_identity(spec: &GeneralFormSpec) -> Check {
    let lhs = curvature_unchecked(spec);
    let rhs = affinor_curvature(spec);
    let n = spec.n();
    let diff = PolyTensor::from_fn(&[n, n, n, n], |x| lhs.get(x) - rhs.get(x));
    Check::from_tensor(CURVATURE_IDENTITY, &diff)
}

/// Every coefficient relation of the Hamiltonian property, one check each.
pub fn verify_general_form(spec: &GeneralFormSpec) -> VerificationReport {
    VerificationReport {
        checks: vec![
            relation_metric_symmetry(spec),
            relation_metric_derivative(spec),
            relation_connection_symmetry(spec),
            relation_affinor_self_adjoint(spec),
            relation_affinor_commutativity(spec),
            relation_affinor_derivative(spec),
            relation_curvature_identity(spec),
        ],
    }
}

/// `R^{ijk}_r = g^{is}(d_r b^{jk}_s - d_s b^{jk}_r) + b^{ij}_s b^{sk}_r - b^{ik}_s b^{sj}_r`,
/// valid once `g` is symmetric and `b` is compatible with it.
pub fn curvature(spec: &GeneralFormSpec) -> Result<PolyTensor, OperatorError> {
    let pre = VerificationReport {
        checks: vec![
            relation_metric_symmetry(spec),
            relation_metric_derivative(spec),
            relation_connection_symmetry(spec),
        ],
    };
    if !pre.passed() {
        return Err(OperatorError::PreconditionFailed {
            what: "metric and connection relations",
            report: pre,
        });
    }
    Ok(curvature_unchecked(spec))
}

/// For a Hamiltonian general-form operator, passes iff the local and nonlocal
/// parts form a compatible pencil: the metric is flat and the affinor side of
/// the curvature identity vanishes.
pub fn check_pencil(spec: &GeneralFormSpec) -> Result<VerificationReport, OperatorError> {
    let full = verify_general_form(spec);
    if !full.passed() {
        return Err(OperatorError::PreconditionFailed {
            what: "operator is not Hamiltonian",
            report: full,
        });
    }
    Ok(VerificationReport {
        checks: vec![
            Check::from_tensor(FLAT_METRIC, &curvature_unchecked(spec)),
            Check::from_tensor(AFFINOR_CURVATURE_VANISHES, &affinor_curvature(spec)),
        ],
    })
}
