mod common;

use common::strategies::{jet, poly, scalar};
use common::{eval, p};
use flatham_core::algebra::scalar::{int, ratio};
use flatham_core::algebra::{
    integrate_gradient, integrate_hessian, IntegrationError, JetPoly, Poly, PolyMatrix,
};
use flatham_core::frontend::{parse_poly, print_canonical};
use num_traits::Signed;
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(n, 3, 2), n * n)
        .prop_map(move |e| PolyMatrix::from_entries(n, n, n, e))
}

proptest! {
    #[test]
    fn poly_ring_laws(a in poly(3, 5, 3), b in poly(3, 5, 3), c in poly(3, 5, 3)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Poly::one(3), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn jet_ring_laws(a in jet(2, 4), b in jet(2, 4), c in jet(2, 4)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(2, 5, 3), b in poly(2, 5, 3), x in scalar(), y in scalar()) {
        let pt = [x, y];
        prop_assert_eq!(eval(&(&a * &b), &pt), eval(&a, &pt) * eval(&b, &pt));
        prop_assert_eq!(eval(&(&a - &b), &pt), eval(&a, &pt) - eval(&b, &pt));
    }

    #[test]
    fn mixed_partials_commute(a in poly(3, 6, 4)) {
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(a.d(i).d(j), a.d(j).d(i));
            }
        }
    }

    #[test]
    fn gradient_round_trip(a in poly(3, 6, 4)) {
        let phi = integrate_gradient(&a.gradient()).unwrap();
        prop_assert_eq!(phi, &a - &Poly::constant(3, a.constant_term()));
    }

    #[test]
    fn hessian_round_trip(a in poly(3, 6, 4)) {
        let h = integrate_hessian(&a.hessian()).unwrap();
        let mut affine = Poly::constant(3, a.constant_term());
        for (i, g) in a.gradient().iter().enumerate() {
            affine += &Poly::var(3, i).scale(&g.constant_term());
        }
        prop_assert_eq!(h, &a - &affine);
    }

    #[test]
    fn skewed_forms_are_rejected(a in poly(2, 4, 3)) {
        // adding u1 du2 breaks closedness by exactly 1 at (u1, u2)
        let mut v = a.gradient();
        v[1] += &p("u1", 2);
        match integrate_gradient(&v) {
            Err(IntegrationError::NotClosed { i: 0, j: 1, residual }) => prop_assert_eq!(residual, p("-1", 2)),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn matrix_laws(a in matrix(2), b in matrix(2)) {
        prop_assert_eq!(a.commutator(&b).unwrap(), b.commutator(&a).unwrap().scale(&int(-1)));
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
        prop_assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn parser_round_trip(a in poly(4, 8, 5)) {
        let text = print_canonical(&a);
        prop_assert_eq!(parse_poly(&text, 4).unwrap(), a);
    }

    #[test]
    fn scalars_are_canonical(n in -50i64..50, d in 1i64..50, k in 1i64..10) {
        let s = ratio(n * k, -d * k);
        prop_assert!(s.denom().is_positive());
        prop_assert_eq!(s, ratio(-n, d));
    }
}

#[test]
fn jet_embedding_respects_products() {
    let a = p("u1^2 + u2", 2);
    let b = p("u1 - 3*u2^2", 2);
    assert_eq!(
        JetPoly::from_poly(&(&a * &b)),
        &JetPoly::from_poly(&a) * &JetPoly::from_poly(&b)
    );
}
