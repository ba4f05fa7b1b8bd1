//! Shared helpers for integration tests: seeded random polynomials and a
//! pointwise evaluation oracle.

#![allow(dead_code)]

use flatham_core::algebra::scalar::{int, ratio};
use flatham_core::algebra::{Monomial, Poly, Scalar};
use flatham_core::frontend::parse_poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(src: &str, n: usize) -> Poly {
    parse_poly(src, n).unwrap_or_else(|e| panic!("{src}: {e}"))
}

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=6);
    ratio(num, den)
}

pub fn nonzero_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let c = random_scalar(rng);
        if c != int(0) {
            return c;
        }
    }
}

/// Up to `max_terms` terms with exponents at most `max_exp`.
pub fn random_poly(rng: &mut impl Rng, dim: usize, max_terms: usize, max_exp: u32) -> Poly {
    let terms = rng.gen_range(0..=max_terms);
    let mut acc = Poly::zero(dim);
    for _ in 0..terms {
        let exps = (0..dim).map(|_| rng.gen_range(0..=max_exp)).collect();
        acc += &Poly::monomial(dim, Monomial::new(exps), random_scalar(rng));
    }
    acc
}

pub fn random_point(rng: &mut impl Rng, dim: usize) -> Vec<Scalar> {
    (0..dim).map(|_| random_scalar(rng)).collect()
}

/// Evaluates `p` term by term; independent of the library's arithmetic.
pub fn eval(p: &Poly, x: &[Scalar]) -> Scalar {
    let mut acc = int(0);
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (xi, &e) in x.iter().zip(m.exponents()) {
            for _ in 0..e {
                t *= xi;
            }
        }
        acc += t;
    }
    acc
}

pub mod strategies {
    use flatham_core::algebra::scalar::ratio;
    use flatham_core::algebra::{ConstSymMatrix, JetPoly, Monomial, Poly, Scalar};
    use flatham_core::operators::ConstantFormSpec;
    use flatham_core::wdvv::WdvvProblem;
    use proptest::prelude::*;

    use super::p;

    pub fn scalar() -> impl Strategy<Value = Scalar> {
        (-9i64..=9, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
    }

    pub fn poly(dim: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
        prop::collection::vec(
            (prop::collection::vec(0..=max_exp, dim), scalar()),
            0..=max_terms,
        )
        .prop_map(move |terms| {
            let mut acc = Poly::zero(dim);
            for (exps, c) in terms {
                acc += &Poly::monomial(dim, Monomial::new(exps), c);
            }
            acc
        })
    }

    /// A polynomial with no constant term.
    pub fn poly_vanishing_at_origin(
        dim: usize,
        max_terms: usize,
        max_exp: u32,
    ) -> impl Strategy<Value = Poly> {
        poly(dim, max_terms, max_exp)
            .prop_map(move |p| &p - &Poly::constant(dim, p.constant_term()))
    }

    /// Jet polynomial in `n` fields with jet variables of order at most 2.
    pub fn jet(n: usize, max_terms: usize) -> impl Strategy<Value = JetPoly> {
        prop::collection::vec(
            (prop::collection::vec(0..=2u32, 3 * n), scalar()),
            0..=max_terms,
        )
        .prop_map(move |terms| {
            let mut acc = JetPoly::zero(n);
            for (exps, c) in terms {
                let mut t = JetPoly::from_poly(&Poly::constant(n, c));
                for (v, &e) in exps.iter().enumerate() {
                    let (order, i) = (v / n, v % n);
                    let g = match order {
                        0 => JetPoly::u(n, i),
                        1 => JetPoly::ux(n, i),
                        _ => JetPoly::uxx(n, i),
                    };
                    for _ in 0..e {
                        t = &t * &g;
                    }
                }
                acc = &acc + &t;
            }
            acc
        })
    }

    /// Cubic `f` with constant third derivatives solving the reduced equation.
    pub fn cubic_solution() -> impl Strategy<Value = Poly> {
        (scalar(), scalar(), scalar()).prop_map(|(a, b, c)| cubic_f(&a, &b, &c))
    }

    /// `a u2^3/6 + b u2^2 u3/2 + c u2 u3^2/2 + (b^2 - ac) u3^3/6`.
    pub fn cubic_f(a: &Scalar, b: &Scalar, c: &Scalar) -> Poly {
        let d = &(b * b) - &(a * c);
        let f = &(&p("1/6*u2^3", 3).scale(a) + &p("1/2*u2^2*u3", 3).scale(b))
            + &p("1/2*u2*u3^2", 3).scale(c);
        &f + &p("1/6*u3^3", 3).scale(&d)
    }

    pub fn metric() -> impl Strategy<Value = ConstSymMatrix> {
        prop_oneof![
            Just(ConstSymMatrix::identity(2)),
            Just(ConstSymMatrix::antidiagonal(2)),
            Just(ConstSymMatrix::from_ints(&[&[2, 1], &[1, -1]]).unwrap()),
        ]
    }

    /// Specs known to pass: a single potential whose Hessian has rank one, or a
    /// cubic solution of the three-field associativity equations.
    pub fn passing_spec() -> impl Strategy<Value = ConstantFormSpec> {
        let rank_one = (
            metric(),
            (scalar(), scalar(), scalar()),
            2u32..=5,
            (scalar(), scalar(), scalar()),
        )
            .prop_map(|(eta, (a, b, c), k, (e, f, g))| {
                let lin = &p("u1", 2).scale(&a) + &p("u2", 2).scale(&b);
                let affine =
                    &(&p("u1", 2).scale(&f) + &p("u2", 2).scale(&g)) + &Poly::constant(2, e);
                let psi = &lin.pow(k).scale(&c) + &affine;
                ConstantFormSpec::new(eta, ConstSymMatrix::identity(1), vec![psi]).unwrap()
            });
        let cubic = cubic_solution()
            .prop_map(|f| ConstantFormSpec::from_wdvv(&WdvvProblem::three_dim_ansatz(&f).unwrap()));
        prop_oneof![rank_one, cubic]
    }
}
