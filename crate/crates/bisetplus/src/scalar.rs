//! Coefficient scalars for linear combinations: exact integers and exact
//! rationals, behind one small trait so the same element types work in both
//! integral and rational mode.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

/// Exact coefficient ring. Implemented for `i64` (integral mode) and
/// [`Rational64`] (rational mode). All arithmetic is exact; overflow panics in
/// debug builds, which is acceptable for the group orders this crate caps at.
pub trait Scalar: Clone + PartialEq + Eq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Exact quotient `self / other`, or `None` when the quotient does not
    /// exist in the ring (non-divisible integers, division by zero).
    fn div_exact(&self, other: &Self) -> Option<Self>;
    /// Render for reports and CLI output (`-3`, `1/2`).
    fn render(&self) -> String;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }

    fn one() -> Self {
        1
    }

    fn from_int(n: i64) -> Self {
        n
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("integer coefficient overflow")
    }

    fn neg(&self) -> Self {
        -*self
    }

    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("integer coefficient overflow")
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        if *other == 0 || self % other != 0 {
            None
        } else {
            Some(self / other)
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Rational64 {
    fn zero() -> Self {
        Rational64::new(0, 1)
    }

    fn one() -> Self {
        Rational64::new(1, 1)
    }

    fn from_int(n: i64) -> Self {
        Rational64::new(n, 1)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else if self.is_negative() {
            format!("-{}/{}", self.numer().abs(), self.denom())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_scalar_arithmetic() {
        assert_eq!(<i64 as Scalar>::zero(), 0);
        assert_eq!(3i64.add(&4), 7);
        assert_eq!(3i64.mul(&-2), -6);
        assert_eq!(Scalar::div_exact(&6i64, &3), Some(2));
        assert_eq!(Scalar::div_exact(&6i64, &4), None);
        assert_eq!(Scalar::div_exact(&6i64, &0), None);
        assert_eq!((-5i64).render(), "-5");
    }

    #[test]
    fn rational_scalar_arithmetic() {
        let half = Rational64::new(1, 2);
        let third = Rational64::new(1, 3);
        assert_eq!(half.add(&third), Rational64::new(5, 6));
        assert_eq!(half.mul(&third), Rational64::new(1, 6));
        assert_eq!(half.div_exact(&third), Some(Rational64::new(3, 2)));
        assert_eq!(half.div_exact(&Rational64::new(0, 1)), None);
        assert_eq!(half.render(), "1/2");
        assert_eq!(Rational64::new(-3, 2).render(), "-3/2");
        assert_eq!(Rational64::new(4, 2).render(), "2");
    }
}
