//! Locality criterion for Hamiltonians of hydrodynamic type, explicit
//! localization of the resulting flow, and involution of integrals.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{
    integrate_gradient, integrate_hessian, ConstSymMatrix, IntegrationError, Poly, PolyMatrix,
    PolyTensor,
};
use crate::hierarchy::FlowSpec;
use crate::operators::{verify_constant_form, ConstantFormSpec};
use crate::report::{Check, VerificationReport};
use crate::wdvv::{wdvv_check, WdvvProblem};

pub const LOCALITY: &str = "locality";
pub const INVOLUTION: &str = "involution";

/// `H = \int h(u) dx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub density: Poly,
}

impl Functional {
    pub fn new(density: Poly) -> Self {
        Functional { density }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LocalityError {
    #[error("density has dimension {got}, operator has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("integration of {what} failed: {source}")]
    IntegrationFailed {
        what: String,
        #[source]
        source: IntegrationError,
    },
    #[error("precondition failed")]
    PreconditionFailed(VerificationReport),
    #[error("local flow differs from eta * Hess(f)")]
    FlowMismatch(PolyMatrix),
}

/// Result of [`localize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localization {
    pub potentials: Vec<Poly>,
    pub f: Poly,
    pub flow: FlowSpec,
}

/// `r[n][s][p] = psi_{n,js} eta^{jr} h_{,rp} - psi_{n,jp} eta^{jr} h_{,rs}`.
pub fn locality_residual(spec: &ConstantFormSpec, h: &Functional) -> PolyTensor {
    let n = spec.n();
    let eta = PolyMatrix::from_const(spec.eta(), n);
    let hh = h.density.hessian();
    let xs: Vec<PolyMatrix> = spec
        .psi_hessians()
        .iter()
        .map(|hp| &(hp * &eta) * &hh)
        .collect();
    PolyTensor::from_fn(&[spec.l(), n, n], |x| {
        let m = &xs[x[0]];
        m.get(x[1], x[2]) - m.get(x[2], x[1])
    })
}

pub fn locality_check(spec: &ConstantFormSpec, h: &Functional) -> Check {
    Check::from_tensor(LOCALITY, &locality_residual(spec, h))
}

/// Potentials `P_n` with `P_{n,s} = psi_{n,js} eta^{jr} h_{,r}`, the local
/// density `f` with `f_{,jk} = mu^{mn} psi_{m,jk} P_n`, and the flow
/// `A^i_k = mu^{mn} eta^{ip} psi_{m,pk} P_n`, checked against `eta Hess(f)`.
pub fn localize(spec: &ConstantFormSpec, h: &Functional) -> Result<Localization, LocalityError> {
    let n = spec.n();
    if h.density.dim() != n {
        return Err(LocalityError::DimensionMismatch {
            expected: n,
            got: h.density.dim(),
        });
    }
    let mut pre = verify_constant_form(spec);
    pre.push(locality_check(spec, h));
    if !pre.passed() {
        return Err(LocalityError::PreconditionFailed(pre));
    }

    let eta = spec.eta();
    let mu = spec.mu();
    let grad = h.density.gradient();
    let hess: Vec<Vec<Vec<Poly>>> = spec
        .psis()
        .iter()
        .map(|psi| {
            let g = psi.gradient();
            g.iter().map(|gj| gj.gradient()).collect()
        })
        .collect();

    let mut potentials = Vec::with_capacity(spec.l());
    for (idx, hn) in hess.iter().enumerate() {
        let covector: Vec<Poly> = (0..n)
            .map(|s| {
                let mut acc = Poly::zero(n);
                for j in 0..n {
                    if hn[j][s].is_zero() {
                        continue;
                    }
                    for r in 0..n {
                        let e = eta.get(j, r);
                        if !e.is_zero() && !grad[r].is_zero() {
                            acc += &(&hn[j][s] * &grad[r]).scale(e);
                        }
                    }
                }
                acc
            })
            .collect();
        let p =
            integrate_gradient(&covector).map_err(|source| LocalityError::IntegrationFailed {
                what: format!("P_{}", idx + 1),
                source,
            })?;
        potentials.push(p);
    }

    let weighted = |j: usize, k: usize, a: &dyn Fn(usize, usize, usize) -> Poly| -> Poly {
        let mut acc = Poly::zero(n);
        for (m, _) in hess.iter().enumerate() {
            for (q, pq) in potentials.iter().enumerate() {
                let c = mu.get(m, q);
                if !c.is_zero() && !pq.is_zero() {
                    let e = a(m, j, k);
                    if !e.is_zero() {
                        acc += &(&e * pq).scale(c);
                    }
                }
            }
        }
        acc
    };

    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        rows.push(
            (0..n)
                .map(|k| weighted(j, k, &|m, j, k| hess[m][j][k].clone()))
                .collect(),
        );
    }
    let target = PolyMatrix::from_rows(n, rows).expect("square");
    let f = integrate_hessian(&target).map_err(|source| LocalityError::IntegrationFailed {
        what: "f".to_string(),
        source,
    })?;

    let mut arows = Vec::with_capacity(n);
    for i in 0..n {
        let lift = |m: usize, _i: usize, k: usize| -> Poly {
            let mut acc = Poly::zero(n);
            for p in 0..n {
                let e = eta.get(i, p);
                if !e.is_zero() {
                    acc += &hess[m][p][k].scale(e);
                }
            }
            acc
        };
        arows.push((0..n).map(|k| weighted(i, k, &lift)).collect());
    }
    let flow = PolyMatrix::from_rows(n, arows).expect("square");
    let hamiltonian = PolyMatrix::const_left_mul(eta, &f.hessian());
    if flow != hamiltonian {
        return Err(LocalityError::FlowMismatch(&flow - &hamiltonian));
    }
    Ok(Localization {
        potentials,
        f,
        flow: FlowSpec::new(flow).expect("square"),
    })
}

/// `r[l][k] = d_l(psi_{a,i} eta^{ij} psi_{b,jk}) - d_k(psi_{a,i} eta^{ij} psi_{b,jl})`.
/// Zero iff the integrals of `psi_a` and `psi_b` are in involution with
/// respect to the constant bracket.
pub fn involution_residual(psi_a: &Poly, psi_b: &Poly, eta: &ConstSymMatrix) -> PolyMatrix {
    let n = psi_a.dim();
    assert_eq!(psi_b.dim(), n, "involution_residual: dimension mismatch");
    assert_eq!(eta.size(), n, "involution_residual: metric size mismatch");
    let ga = psi_a.gradient();
    let hb = psi_b.hessian();
    let raised: Vec<Poly> = (0..n)
        .map(|j| {
            let mut acc = Poly::zero(n);
            for (i, g) in ga.iter().enumerate() {
                let e = eta.get(i, j);
                if !e.is_zero() {
                    acc += &g.scale(e);
                }
            }
            acc
        })
        .collect();
    let form: Vec<Poly> = (0..n)
        .map(|k| {
            let mut acc = Poly::zero(n);
            for (j, r) in raised.iter().enumerate() {
                acc += &(r * hb.get(j, k));
            }
            acc
        })
        .collect();
    let mut out = PolyMatrix::zero(n, n, n);
    for l in 0..n {
        for k in 0..n {
            if l != k {
                out.set(l, k, form[k].d(l) - form[l].d(k));
            }
        }
    }
    out
}

/// Involution of all pairs `d phi / du^n`, `d phi / du^m`, reported next to
/// the associativity check; the two verdicts always agree.
pub fn wdvv_involution_check(prob: &WdvvProblem) -> VerificationReport {
    let psis = prob.first_derivatives();
    let mut inv = Check::new(INVOLUTION);
    for a in 0..psis.len() {
        for b in a + 1..psis.len() {
            let r = involution_residual(&psis[a], &psis[b], prob.eta());
            for l in 0..r.rows() {
                for k in l + 1..r.cols() {
                    inv.record(&[a, b, l, k], r.get(l, k).clone());
                }
            }
        }
    }
    let assoc = wdvv_check(prob);
    assert_eq!(
        inv.passed(),
        assoc.passed(),
        "involution and associativity verdicts disagree"
    );
    let mut report = VerificationReport::new();
    report.push(inv);
    report.push(assoc);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_poly;
    use crate::hierarchy::HierarchyState;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    fn dubrovin1() -> WdvvProblem {
        WdvvProblem::three_dim_ansatz(&p("1/4*u2^2*u3^2 + 1/60*u3^5", 3)).unwrap()
    }

    fn hopf() -> ConstantFormSpec {
        ConstantFormSpec::new(
            ConstSymMatrix::identity(1),
            ConstSymMatrix::identity(1),
            vec![p("1/6*u1^3", 1)],
        )
        .unwrap()
    }

    #[test]
    fn quadratic_metric_density_is_local() {
        let spec = ConstantFormSpec::from_wdvv(&dubrovin1());
        let h1 = HierarchyState::new(spec.clone()).densities()[0].clone();
        assert!(locality_residual(&spec, &Functional::new(h1)).is_zero());
        let lin = Functional::new(p("3*u1 - u3 + 7", 3));
        assert!(locality_residual(&spec, &lin).is_zero());
    }

    #[test]
    fn potential_as_density_is_local() {
        let prob = dubrovin1();
        let spec = ConstantFormSpec::from_wdvv(&prob);
        let psi2 = prob.first_derivatives()[1].clone();
        assert!(locality_residual(&spec, &Functional::new(psi2)).is_zero());
    }

    #[test]
    fn generic_density_is_not_local() {
        let spec = ConstantFormSpec::from_wdvv(&dubrovin1());
        let r = locality_residual(&spec, &Functional::new(p("u1^3", 3)));
        assert!(!r.is_zero());
        assert!(matches!(
            localize(&spec, &Functional::new(p("u1^3", 3))),
            Err(LocalityError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn hopf_localization() {
        let loc = localize(&hopf(), &Functional::new(p("1/2*u1^2", 1))).unwrap();
        assert_eq!(loc.potentials, vec![p("1/3*u1^3", 1)]);
        assert_eq!(loc.f, p("1/90*u1^6", 1));
        assert_eq!(loc.flow.matrix().get(0, 0), &p("1/3*u1^4", 1));
    }

    #[test]
    fn linear_density_localizes() {
        let spec = ConstantFormSpec::from_wdvv(&dubrovin1());
        let loc = localize(&spec, &Functional::new(p("u1", 3))).unwrap();
        // only eta^{31} is nonzero in the first column, so P_n has gradient psi_{n,3s}
        let psis = spec.psis();
        for (pn, psi) in loc.potentials.iter().zip(psis) {
            assert_eq!(pn.gradient(), psi.d(2).gradient());
        }
    }

    #[test]
    fn involution_examples() {
        let eta = ConstSymMatrix::identity(1);
        assert!(involution_residual(&p("u1^5 + u1", 1), &p("u1^3", 1), &eta).is_zero());
        let eta2 = ConstSymMatrix::identity(2);
        let a = p("u1^2*u2 + u2^3", 2);
        assert!(involution_residual(&a, &a, &eta2).is_zero());
        assert!(!involution_residual(&p("u1^3", 2), &p("u1*u2^2", 2), &eta2).is_zero());
    }

    #[test]
    fn wdvv_involution_agrees() {
        assert!(wdvv_involution_check(&dubrovin1()).passed());
        let bad = WdvvProblem::three_dim_ansatz(&p("u3^3", 3)).unwrap();
        let report = wdvv_involution_check(&bad);
        assert!(!report.check(INVOLUTION).unwrap().passed());
        assert!(!report.check("associativity").unwrap().passed());
        let quad = WdvvProblem::new(ConstSymMatrix::identity(2), p("u1^2 + u1*u2", 2)).unwrap();
        assert!(wdvv_involution_check(&quad).passed());
    }
}
