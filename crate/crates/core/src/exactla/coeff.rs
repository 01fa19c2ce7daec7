//! Integer coefficient rings used by the elimination kernels.
//!
//! Every algorithm in this module is written once over [`Coeff`]. The `i128`
//! implementation reports overflow by returning `None`, at which point the
//! caller restarts the same computation over [`BigInt`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Nonnegative gcd; `gcd(0, 0) = 0`.
    fn gcd(&self, o: &Self) -> Self;
    /// Exact division; caller guarantees divisibility.
    fn div_exact(&self, o: &Self) -> Self;
    /// Floor division with remainder of the same sign as the divisor.
    fn div_mod_floor(&self, o: &Self) -> Option<(Self, Self)>;
    fn cmp_abs(&self, o: &Self) -> std::cmp::Ordering;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        // Keep a margin so that |x| < 2^126 leaves room for one add.
        let v = b.to_i128()?;
        (v.unsigned_abs() < (1u128 << 126)).then_some(v)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), o.unsigned_abs());
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        // Both operands are below 2^127 in magnitude, so this fits.
        a as i128
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn div_mod_floor(&self, o: &Self) -> Option<(Self, Self)> {
        if *self == i128::MIN {
            return None;
        }
        Some(Integer::div_mod_floor(self, o))
    }
    fn cmp_abs(&self, o: &Self) -> std::cmp::Ordering {
        self.unsigned_abs().cmp(&o.unsigned_abs())
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn div_mod_floor(&self, o: &Self) -> Option<(Self, Self)> {
        Some(Integer::div_mod_floor(self, o))
    }
    fn cmp_abs(&self, o: &Self) -> std::cmp::Ordering {
        self.magnitude().cmp(o.magnitude())
    }
}
