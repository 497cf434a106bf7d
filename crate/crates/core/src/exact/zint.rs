//! Integer scalar abstraction so dense elimination can run in `i128` and
//! fall back to `BigInt` when an operation overflows.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub trait Zint: Clone + Eq + Ord + Debug {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Truncated quotient.
    fn quot(&self, o: &Self) -> Option<Self>;
    fn rem_is_zero(&self, o: &Self) -> bool;
    fn abs_lt(&self, o: &Self) -> bool;
    fn is_unit(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Zint for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, o: &Self) -> Option<Self> {
        self.checked_div(*o)
    }
    fn rem_is_zero(&self, o: &Self) -> bool {
        self.checked_rem(*o).map_or(false, |r| r == 0)
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.unsigned_abs() < o.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Zint for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn rem_is_zero(&self, o: &Self) -> bool {
        Zero::is_zero(&(self % o))
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.magnitude() < o.magnitude()
    }
    fn is_unit(&self) -> bool {
        self.magnitude() == &num_bigint::BigUint::from(1u8)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub fn big_to_i128(b: &BigInt) -> Option<i128> {
    use num_traits::ToPrimitive;
    b.to_i128()
}
