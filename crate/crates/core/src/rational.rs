//! Exact rational numbers used for matrix entries and edge labels.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Abs, Reciprocal};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_base::num::logic::traits::SignificantBits;
use malachite_q::Rational as Q;

/// An arbitrary-precision rational, always in lowest terms. Printed as
/// `n` or `n/d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Q);

impl Rational {
    pub fn zero() -> Self {
        Self(Q::ZERO)
    }

    pub fn one() -> Self {
        Self(Q::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        Self(Q::from(n))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Q::ZERO
    }

    pub fn is_one(&self) -> bool {
        self.0 == Q::ONE
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Q::ZERO
    }

    /// # Panics
    ///
    /// On zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self((&self.0).reciprocal())
    }

    pub fn abs(&self) -> Self {
        Self((&self.0).abs())
    }

    /// Bits in numerator plus bits in denominator.
    pub fn bit_size(&self) -> u64 {
        self.0.numerator_ref().significant_bits() + self.0.denominator_ref().significant_bits()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{0}`")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Q::from_str(s.trim()).map(Self).map_err(|_| ParseRationalError(s.to_string()))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_printing() {
        let a = Rational::from_int(3);
        let b = Rational::from_int(-6);
        let q = &a / &b;
        assert_eq!(q.to_string(), "-1/2");
        assert_eq!((&q * &b).to_string(), "3");
        assert_eq!((&q + &q).to_string(), "-1");
        assert!((&a - &a).is_zero());
        assert!(q.recip().to_string() == "-2");
        assert!(q.is_negative() && !q.abs().is_negative());
        assert_eq!("-4/6".parse::<Rational>().unwrap(), "-2/3".parse().unwrap());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn division_by_zero_panics() {
        let _ = &Rational::one() / &Rational::zero();
    }
}
