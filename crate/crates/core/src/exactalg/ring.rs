//! Scalar abstraction for Euclidean elimination. `i64` reports overflow by
//! returning `None`; callers then rerun the computation over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub(crate) trait Scalar: Clone + PartialEq + Debug {
    fn zero_elt() -> Self;
    fn one_elt() -> Self;
    fn is_zero_elt(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn checked_neg(&self) -> Option<Self>;
    fn checked_sub(&self, o: &Self) -> Option<Self>;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    /// Floor division, `o` nonzero.
    fn div_floor(&self, o: &Self) -> Option<Self>;
    /// Remainder of floor division, `o` nonzero.
    fn mod_floor(&self, o: &Self) -> Option<Self>;
    /// `|self| < |o|`.
    fn abs_lt(&self, o: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero_elt() -> Self {
        0
    }
    fn one_elt() -> Self {
        1
    }
    fn is_zero_elt(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        i64::checked_sub(*self, *o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        i64::checked_mul(*self, *o)
    }
    fn div_floor(&self, o: &Self) -> Option<Self> {
        if *self == i64::MIN && *o == -1 {
            return None;
        }
        Some(Integer::div_floor(self, o))
    }
    fn mod_floor(&self, o: &Self) -> Option<Self> {
        if *self == i64::MIN && *o == -1 {
            return Some(0);
        }
        Some(Integer::mod_floor(self, o))
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.unsigned_abs() < o.unsigned_abs()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero_elt() -> Self {
        Zero::zero()
    }
    fn one_elt() -> Self {
        One::one()
    }
    fn is_zero_elt(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_floor(&self, o: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, o))
    }
    fn mod_floor(&self, o: &Self) -> Option<Self> {
        Some(Integer::mod_floor(self, o))
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.magnitude() < o.magnitude()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// `a - q * b`, checked.
pub(crate) fn sub_mul<T: Scalar>(a: &T, q: &T, b: &T) -> Option<T> {
    a.checked_sub(&q.checked_mul(b)?)
}
