//! Structural flows and the local form of the bi-Hamiltonian hierarchy.
//!
//! Starting from `h_1 = 1/2 eta_{ij} u^i u^j`, each step integrates
//!
//! ```text
//! dF_n/du^p      = psi_{n,jp} eta^{jr} h_{s,r}
//! h_{s+1,jk}     = sum mu^{mn} psi_{m,jk} F_n
//! ```
//!
//! and emits the local flow `u^i_t = sum mu^{mn} eta^{ip} F_n psi_{m,pk} u^k_x`,
//! which must coincide with `eta^{ij} h_{s+1,jk} u^k_x`.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::scalar::ratio;
use crate::algebra::{
    evolutionary_derivative, flow_velocity, integrate_gradient, integrate_hessian, AlgebraError,
    ConstSymMatrix, IntegrationError, JetPoly, Poly, PolyMatrix,
};
use crate::operators::{hessian_affinors, verify_constant_form, ConstantFormSpec};
use crate::report::VerificationReport;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HierarchyError {
    /// Cannot happen for an operator that passed verification; signals
    /// corrupted input.
    #[error("step {step}: integration of {what} failed: {source}")]
    IntegrationFailed {
        step: usize,
        what: String,
        #[source]
        source: IntegrationError,
    },
    #[error("step {step}: local flow differs from eta * Hess(h)")]
    FlowMismatch { step: usize, residual: PolyMatrix },
    #[error("operator does not pass verification")]
    PreconditionFailed(VerificationReport),
}

/// The system `u^i_t = A^i_j(u) u^j_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSpec {
    matrix: PolyMatrix,
}

impl FlowSpec {
    pub fn new(matrix: PolyMatrix) -> Result<Self, AlgebraError> {
        let n = matrix.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "flow matrix must be {n}x{n}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(FlowSpec { matrix })
    }

    /// `u_t = u_x`.
    pub fn translation(n: usize) -> Self {
        FlowSpec {
            matrix: PolyMatrix::identity(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Right-hand side `A u_x` as jet polynomials.
    pub fn velocity(&self) -> Vec<JetPoly> {
        flow_velocity(&self.matrix).expect("square by construction")
    }
}

/// `u_{t_n} = eta Hess(psi_n) u_x`, one flow per potential.
pub fn structural_flows(spec: &ConstantFormSpec) -> Vec<FlowSpec> {
    hessian_affinors(spec)
        .into_iter()
        .map(|matrix| FlowSpec { matrix })
        .collect()
}

/// Commutator of two flows: `D_A (B u_x) - D_B (A u_x)`, componentwise. The
/// flows commute iff every component is zero.
pub fn flows_commute(a: &FlowSpec, b: &FlowSpec) -> Result<Vec<JetPoly>, AlgebraError> {
    if a.n() != b.n() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "flows over {} and {} fields",
            a.n(),
            b.n()
        )));
    }
    let va = a.velocity();
    let vb = b.velocity();
    va.iter()
        .zip(&vb)
        .map(|(ai, bi)| {
            let along_a = evolutionary_derivative(bi, &a.matrix)?;
            let along_b = evolutionary_derivative(ai, &b.matrix)?;
            Ok(&along_a - &along_b)
        })
        .collect()
}

/// `F = psi_{,j} u^j - psi`, the potential of `psi_{,js} u^j`.
pub fn f_from_psi(psi: &Poly) -> Poly {
    let n = psi.dim();
    let mut acc = -psi;
    for (j, g) in psi.gradient().iter().enumerate() {
        acc += &(g * &Poly::var(n, j));
    }
    acc
}

/// Data produced by one step of the recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyStep {
    /// `F_1..F_L` for this step.
    pub potentials: Vec<Poly>,
    /// The local flow of this step.
    pub flow: FlowSpec,
}

/// Densities `h_1..h_{S+1}` and the per-step data that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyState {
    spec: ConstantFormSpec,
    eta_lower: ConstSymMatrix,
    densities: Vec<Poly>,
    steps: Vec<HierarchyStep>,
}

impl HierarchyState {
    /// State holding only `h_1 = 1/2 eta_{ij} u^i u^j`.
    pub fn new(spec: ConstantFormSpec) -> Self {
        let eta_lower = spec.eta().inverse();
        let n = spec.n();
        let mut h1 = Poly::zero(n);
        for i in 0..n {
            for j in 0..n {
                let c = eta_lower.get(i, j);
                if !c.is_zero() {
                    h1 += &(&Poly::var(n, i) * &Poly::var(n, j)).scale(c);
                }
            }
        }
        let h1 = h1.scale(&ratio(1, 2));
        HierarchyState {
            spec,
            eta_lower,
            densities: vec![h1],
            steps: Vec::new(),
        }
    }

    pub fn spec(&self) -> &ConstantFormSpec {
        &self.spec
    }

    /// `eta_{ij}`, the inverse of the metric.
    pub fn eta_lower(&self) -> &ConstSymMatrix {
        &self.eta_lower
    }

    /// `h_1, h_2, ...`
    pub fn densities(&self) -> &[Poly] {
        &self.densities
    }

    pub fn steps(&self) -> &[HierarchyStep] {
        &self.steps
    }

    /// Appends `F^{(s)}`, `h_{s+1}` and the step-`s` flow.
    pub fn next_step(mut self) -> Result<Self, HierarchyError> {
        let s = self.densities.len();
        let n = self.spec.n();
        let eta = self.spec.eta();
        let mu = self.spec.mu();
        let hs = self.spec.psi_hessians();
        let h = self.densities.last().expect("h_1 always present");

        // q^j = eta^{jr} h_{,r}
        let grad = h.gradient();
        let q: Vec<Poly> = (0..n)
            .map(|j| {
                let mut acc = Poly::zero(n);
                for (r, g) in grad.iter().enumerate() {
                    let c = eta.get(j, r);
                    if !c.is_zero() {
                        acc += &g.scale(c);
                    }
                }
                acc
            })
            .collect();

        let mut potentials = Vec::with_capacity(self.spec.l());
        for (idx, hess) in hs.iter().enumerate() {
            // symmetric Hessian: psi_{,jp} q^j = (Hess q)_p
            let covector = hess.apply(&q);
            let f = integrate_gradient(&covector).map_err(|source| {
                HierarchyError::IntegrationFailed {
                    step: s,
                    what: format!("F_{}", idx + 1),
                    source,
                }
            })?;
            potentials.push(f);
        }

        let mut m = PolyMatrix::zero(n, n, n);
        for (a, ha) in hs.iter().enumerate() {
            let mut weight = Poly::zero(n);
            for (b, fb) in potentials.iter().enumerate() {
                let c = mu.get(a, b);
                if !c.is_zero() {
                    weight += &fb.scale(c);
                }
            }
            if weight.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let e = ha.get(j, k);
                    if !e.is_zero() {
                        let v = m.get(j, k) + &(e * &weight);
                        m.set(j, k, v);
                    }
                }
            }
        }

        let next = integrate_hessian(&m).map_err(|source| HierarchyError::IntegrationFailed {
            step: s,
            what: format!("h_{}", s + 1),
            source,
        })?;

        let local = PolyMatrix::const_left_mul(eta, &m);
        let hamiltonian = PolyMatrix::const_left_mul(eta, &next.hessian());
        if local != hamiltonian {
            return Err(HierarchyError::FlowMismatch {
                step: s,
                residual: &local - &hamiltonian,
            });
        }

        self.densities.push(next);
        self.steps.push(HierarchyStep {
            potentials,
            flow: FlowSpec { matrix: local },
        });
        Ok(self)
    }
}

/// Runs `steps` steps of the recurrence on a verified operator.
pub fn run_hierarchy(
    spec: &ConstantFormSpec,
    steps: usize,
) -> Result<HierarchyState, HierarchyError> {
    let report = verify_constant_form(spec);
    if !report.passed() {
        return Err(HierarchyError::PreconditionFailed(report));
    }
    let mut state = HierarchyState::new(spec.clone());
    for _ in 0..steps {
        state = state.next_step()?;
    }
    Ok(state)
}

/// Jet-polynomial identity check used by tests and the CLI: are all
/// components zero?
pub fn is_zero_residual(res: &[JetPoly]) -> bool {
    res.iter().all(JetPoly::is_zero)
}
