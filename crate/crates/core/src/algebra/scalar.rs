//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Scalar`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number in canonical form.
pub type Scalar = BigRational;

/// `n / 1`.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "zero denominator");
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Formats a scalar as `p` or `p/q`.
pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Formats the absolute value; used by the polynomial printer which emits the
/// sign separately.
pub(crate) fn format_abs(c: &Scalar) -> String {
    format_scalar(&c.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let half = ratio(2, 4);
        assert_eq!(half.numer(), &BigInt::from(1));
        assert_eq!(half.denom(), &BigInt::from(2));
        let neg = ratio(3, -6);
        assert_eq!(neg.numer(), &BigInt::from(-1));
        assert_eq!(neg.denom(), &BigInt::from(2));
        let z = ratio(0, -5);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_scalar(&ratio(1, 60)), "1/60");
        assert_eq!(format_scalar(&ratio(-4, 2)), "-2");
        assert_eq!(format_abs(&ratio(-1, 3960)), "1/3960");
    }

    #[test]
    fn field_ops_are_exact() {
        let a = ratio(1, 3);
        let b = ratio(1, 6);
        assert_eq!(&a + &b, ratio(1, 2));
        assert_eq!(&a - &b, ratio(1, 6));
        assert_eq!(&a * &b, ratio(1, 18));
        assert_eq!(&a / &b, int(2));
    }
}
