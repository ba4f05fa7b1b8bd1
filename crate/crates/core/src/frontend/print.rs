//! Canonical text form of polynomials.
//!
//! Terms appear in descending graded-lex order, coefficients as reduced
//! rationals, factors joined by `*`. The output is accepted by
//! [`parse_poly`](super::parse_poly) and round-trips exactly.

use std::fmt;

use num_traits::{One, Signed};

use crate::algebra::scalar::format_abs;
use crate::algebra::{JetPoly, Monomial, Poly};

/// Canonical text of a polynomial in `u1..uN`.
pub fn print_canonical(p: &Poly) -> String {
    render(p, |v| format!("u{}", v + 1))
}

/// Canonical text of a jet polynomial, with `u1_x`, `u1_xx` for derivatives.
pub fn print_jet(e: &JetPoly) -> String {
    let n = e.fields();
    render(e.as_poly(), |v| {
        let suffix = match v / n {
            0 => "",
            1 => "_x",
            _ => "_xx",
        };
        format!("u{}{}", v % n + 1, suffix)
    })
}

fn render(p: &Poly, name: impl Fn(usize) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let factors = monomial_factors(m, &name);
        if factors.is_empty() {
            out.push_str(&format_abs(c));
        } else {
            if !c.abs().is_one() {
                out.push_str(&format_abs(c));
                out.push('*');
            }
            out.push_str(&factors);
        }
    }
    out
}

fn monomial_factors(m: &Monomial, name: &impl Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(name(v)),
            _ => parts.push(format!("{}^{}", name(v), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_canonical(self))
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_jet(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, ratio};

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(print_canonical(&Poly::zero(3)), "0");
    }

    #[test]
    fn ordering_and_signs() {
        let u1 = Poly::var(3, 0);
        let u2 = Poly::var(3, 1);
        let u3 = Poly::var(3, 2);
        let p = (&u1.pow(2) * &u3).scale(&ratio(1, 2)) + (&u1 * &u2.pow(2)).scale(&ratio(1, 2));
        assert_eq!(print_canonical(&p), "1/2*u1^2*u3 + 1/2*u1*u2^2");
        let q = -&u3 + Poly::constant(3, int(-3)) + u1.pow(2);
        assert_eq!(print_canonical(&q), "u1^2 - u3 - 3");
        assert_eq!(print_canonical(&u2.scale(&int(-1))), "-u2");
        assert_eq!(
            print_canonical(&Poly::var(1, 0).pow(6).scale(&ratio(1, 90))),
            "1/90*u1^6"
        );
    }

    #[test]
    fn jet_names() {
        let e = &JetPoly::u(2, 1) * &JetPoly::ux(2, 0) + JetPoly::uxx(2, 1);
        assert_eq!(print_jet(&e), "u2*u1_x + u2_xx");
    }
}
