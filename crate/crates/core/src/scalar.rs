//! Scalar trait bound for lattice arithmetic.
//!
//! All lattice math is generic over an exact integer type. `BigInt` is the
//! default (nothing overflows); `i64`/`i128` are available for bounded box
//! scans where the value range is known in advance.

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use std::fmt;
use std::hash::Hash;

/// Exact integer scalar: ring ops, Euclidean gcd, floor sqrt, sign.
pub trait LatticeInt:
    Integer
    + Roots
    + Signed
    + Clone
    + Hash
    + FromPrimitive
    + ToPrimitive
    + fmt::Debug
    + fmt::Display
    + 'static
{
}

impl<T> LatticeInt for T where
    T: Integer
        + Roots
        + Signed
        + Clone
        + Hash
        + FromPrimitive
        + ToPrimitive
        + fmt::Debug
        + fmt::Display
        + 'static
{
}

/// Exact rational over a lattice scalar.
pub type Rational<I> = Ratio<I>;

/// Embed a small literal into any lattice scalar.
pub fn int<I: LatticeInt>(v: i64) -> I {
    FromPrimitive::from_i64(v).expect("i64 embeds in any lattice scalar")
}

/// Rational from an integer.
pub fn ratio<I: LatticeInt>(n: I) -> Rational<I> {
    Ratio::from_integer(n)
}

/// Rational n/d in lowest terms.
pub fn ratio_of<I: LatticeInt>(n: I, d: I) -> Rational<I> {
    Ratio::new(n, d)
}

/// True iff `n` is a perfect square; returns the root.
pub fn perfect_sqrt<I: LatticeInt>(n: &I) -> Option<I> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(r.clone() * r.clone()) == n {
        Some(r)
    } else {
        None
    }
}

/// Floor of sqrt(n) for n >= 0.
pub fn isqrt<I: LatticeInt>(n: &I) -> I {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn perfect_squares() {
        assert_eq!(perfect_sqrt(&BigInt::from(0)), Some(BigInt::from(0)));
        assert_eq!(perfect_sqrt(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(perfect_sqrt(&BigInt::from(50)), None);
        assert_eq!(perfect_sqrt(&BigInt::from(-4)), None);
        assert_eq!(perfect_sqrt(&39601i64), Some(199));
    }
}
