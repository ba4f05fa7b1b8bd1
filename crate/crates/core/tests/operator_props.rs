mod common;

use common::p;
use common::strategies::{metric, passing_spec, poly, scalar};
use flatham_core::algebra::{ConstSymMatrix, Poly};
use flatham_core::operators::{
    check_pencil, check_ricci, verify_constant_form, verify_general_form, ConstantFormSpec,
    AFFINOR_COMMUTATIVITY, AFFINOR_DERIVATIVE, AFFINOR_SELF_ADJOINT,
};
use proptest::prelude::*;

fn any_spec() -> impl Strategy<Value = ConstantFormSpec> {
    (metric(), prop::collection::vec(poly(2, 4, 3), 1..=3)).prop_map(|(eta, psis)| {
        let mu = ConstSymMatrix::identity(psis.len());
        ConstantFormSpec::new(eta, mu, psis).unwrap()
    })
}

proptest! {
    #[test]
    fn passing_specs_lower_to_passing_general_form(spec in passing_spec()) {
        prop_assert!(verify_constant_form(&spec).passed());
        let general = spec.lower();
        prop_assert!(verify_general_form(&general).passed());
        prop_assert!(check_pencil(&general).unwrap().passed());
    }

    #[test]
    fn hessian_affinors_satisfy_identities(spec in any_spec()) {
        let r = verify_general_form(&spec.lower());
        prop_assert!(r.check(AFFINOR_SELF_ADJOINT).unwrap().passed());
        prop_assert!(r.check(AFFINOR_DERIVATIVE).unwrap().passed());
    }

    #[test]
    fn commutativity_matches_ricci(spec in any_spec()) {
        let r = verify_general_form(&spec.lower());
        prop_assert_eq!(r.check(AFFINOR_COMMUTATIVITY).unwrap().passed(), check_ricci(&spec).passed());
    }

    #[test]
    fn ricci_ignores_affine_terms(spec in any_spec(), c in scalar(), d in scalar()) {
        let shift = &(&p("u1", 2).scale(&c) + &p("u2", 2).scale(&d)) + &p("7/3", 2);
        let psis: Vec<Poly> = spec.psis().iter().map(|q| q + &shift).collect();
        let shifted = ConstantFormSpec::new(spec.eta().clone(), spec.mu().clone(), psis).unwrap();
        prop_assert_eq!(check_ricci(&spec), check_ricci(&shifted));
    }
}
