mod common;

use common::strategies::passing_spec;
use flatham_core::algebra::{Poly, PolyMatrix};
use flatham_core::frontend::fixtures::{self, WDVV_SOLUTIONS};
use flatham_core::hierarchy::{
    f_from_psi, flows_commute, run_hierarchy, structural_flows, HierarchyState,
};
use flatham_core::operators::ConstantFormSpec;
use proptest::prelude::*;

fn degree_bound_holds(spec: &ConstantFormSpec, state: &HierarchyState) -> bool {
    let d = spec
        .psis()
        .iter()
        .filter_map(Poly::degree)
        .max()
        .unwrap_or(0) as i64;
    state.densities().windows(2).all(|w| {
        let (prev, next) = (
            w[0].degree().unwrap_or(0) as i64,
            w[1].degree().unwrap_or(0) as i64,
        );
        next <= prev + 2 * (d - 2) + 2
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flows_have_both_forms(spec in passing_spec()) {
        let state = run_hierarchy(&spec, 2).unwrap();
        for (s, step) in state.steps().iter().enumerate() {
            let dual = PolyMatrix::const_left_mul(spec.eta(), &state.densities()[s + 1].hessian());
            prop_assert_eq!(step.flow.matrix(), &dual);
        }
    }

    #[test]
    fn hierarchy_flows_commute(spec in passing_spec()) {
        let state = run_hierarchy(&spec, 2).unwrap();
        let mut flows = structural_flows(&spec);
        flows.extend(state.steps().iter().map(|s| s.flow.clone()));
        for a in &flows {
            for b in &flows {
                prop_assert!(flows_commute(a, b).unwrap().iter().all(|c| c.is_zero()));
            }
        }
    }

    #[test]
    fn first_potentials_match_closed_form(spec in passing_spec()) {
        // F^(1) vanishes at the origin while f_from_psi(psi) has constant -psi(0)
        let state = HierarchyState::new(spec.clone()).next_step().unwrap();
        for (f, psi) in state.steps()[0].potentials.iter().zip(spec.psis()) {
            let expected = &f_from_psi(psi) + &Poly::constant(psi.dim(), psi.constant_term());
            prop_assert_eq!(f, &expected);
        }
    }

    #[test]
    fn density_degrees_are_bounded(spec in passing_spec()) {
        let state = run_hierarchy(&spec, 3).unwrap();
        prop_assert!(degree_bound_holds(&spec, &state));
    }
}

#[test]
fn fixture_degrees_are_bounded() {
    for name in WDVV_SOLUTIONS {
        let spec = fixtures::find(name)
            .unwrap()
            .load()
            .unwrap()
            .problem
            .constant_form()
            .unwrap();
        let state = run_hierarchy(&spec, 3).unwrap();
        assert!(degree_bound_holds(&spec, &state), "{name}");
    }
}
