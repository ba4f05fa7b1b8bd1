mod common;

use common::strategies::{cubic_solution, poly};
use flatham_core::algebra::{ConstSymMatrix, Poly};
use flatham_core::wdvv::{
    affinors_from_phi, associativity_residual, dubrovin_residual, structure_constants,
    wdvv_residual, WdvvProblem,
};
use proptest::prelude::*;

/// `f(u2, u3)` embedded in three fields.
fn reduced_f() -> impl Strategy<Value = Poly> {
    poly(2, 4, 4).prop_map(|q| q.embed(3, 1))
}

fn ansatz_f() -> impl Strategy<Value = Poly> {
    prop_oneof![reduced_f(), cubic_solution()]
}

fn diagonal_problem() -> impl Strategy<Value = WdvvProblem> {
    (prop::collection::vec(1i64..4, 3), poly(3, 4, 3)).prop_map(|(d, phi)| {
        let eta =
            ConstSymMatrix::from_ints(&[&[d[0], 0, 0], &[0, -d[1], 0], &[0, 0, d[2]]]).unwrap();
        WdvvProblem::new(eta, phi).unwrap()
    })
}

proptest! {
    #[test]
    fn residual_is_antisymmetric(prob in diagonal_problem()) {
        let r = wdvv_residual(&prob);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        prop_assert_eq!(r.get(&[i, j, k, l]), &-r.get(&[i, k, j, l]));
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_equation_matches_wdvv(f in ansatz_f()) {
        let prob = WdvvProblem::three_dim_ansatz(&f).unwrap();
        let reduced = dubrovin_residual(&f).unwrap().is_zero();
        prop_assert_eq!(reduced, wdvv_residual(&prob).is_zero());
    }

    #[test]
    fn associativity_matches_wdvv(f in ansatz_f()) {
        let prob = WdvvProblem::three_dim_ansatz(&f).unwrap();
        let assoc = associativity_residual(&structure_constants(&prob)).is_zero();
        prop_assert_eq!(assoc, wdvv_residual(&prob).is_zero());
    }

    #[test]
    fn associativity_matches_wdvv_general_metric(prob in diagonal_problem()) {
        let assoc = associativity_residual(&structure_constants(&prob)).is_zero();
        prop_assert_eq!(assoc, wdvv_residual(&prob).is_zero());
    }

    #[test]
    fn solutions_have_commuting_affinors(f in cubic_solution()) {
        let prob = WdvvProblem::three_dim_ansatz(&f).unwrap();
        prop_assert!(wdvv_residual(&prob).is_zero());
        let ws = affinors_from_phi(&prob);
        for a in &ws {
            for b in &ws {
                prop_assert!(a.commutator(b).unwrap().is_zero());
            }
        }
    }
}
