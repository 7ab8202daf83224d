//! Arbitrary-precision rationals.

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Reduced fraction with positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub(crate) fn to_i64(r: &Rat) -> Option<i64> {
    use num_traits::ToPrimitive;
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub(crate) fn is_nonneg_integer(r: &Rat) -> bool {
    is_integer(r) && !r.is_negative()
}
