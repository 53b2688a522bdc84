//! Arbitrary-precision rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`; panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `a` or `a/b` (the input grammar for literals).
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators of a nonempty slice.
pub fn denominator_lcm(values: &[Rat]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| {
        num_integer::lcm(acc, v.denom().clone())
    })
}

/// Greatest common divisor of the numerators after clearing denominators;
/// zero when every value is zero.
pub fn numerator_gcd(values: &[Rat], denom_lcm: &BigInt) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| {
        num_integer::gcd(acc, (v * denom_lcm).numer().abs())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(rat_string(&rat_int(-7)), "-7");
        assert_eq!(rat_string(&rat(2, 4)), "1/2");
        assert_eq!(rat_string(&rat(-2, 4)), "-1/2");
    }

    #[test]
    fn denominator_is_always_positive() {
        let r = rat(1, -2);
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(rat_string(&r), "-1/2");
    }

    #[test]
    fn clearing_denominators_yields_coprime_integers() {
        let values = [rat(1, 2), rat(3, 4), rat(-5, 6)];
        let lcm = denominator_lcm(&values);
        assert_eq!(lcm, BigInt::from(12));
        let gcd = numerator_gcd(&values, &lcm);
        assert_eq!(gcd, BigInt::from(1));
    }
}
