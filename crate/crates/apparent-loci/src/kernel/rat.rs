//! Arbitrary-precision rational scalars.
//!
//! [`Rat`] wraps `num_rational::BigRational` and is the coefficient type for
//! everything in the crate. The wrapper pins down the textual form used by
//! the file formats (`"num/den"`, denominator omitted when 1, denominator
//! always positive, fraction always reduced) and adds the handful of number-
//! theoretic queries the curve machinery needs (exact square roots).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number, always reduced, denominator always positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

// ---- Constructors ----

impl Rat {
    /// Builds `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "Rat::new: zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds `num/den` from big integers. Panics if `den == 0`.
    pub fn from_big(num: BigInt, den: BigInt) -> Rat {
        assert!(!den.is_zero(), "Rat::from_big: zero denominator");
        Rat(BigRational::new(num, den))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(BigRational::from(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Rat {
        Rat(BigRational::from(n))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }
}

// ---- Queries ----

impl Rat {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Exact square root, if this is a square of a rational.
    ///
    /// The result is the non-negative root.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let sn = self.numer().sqrt();
        if &(&sn * &sn) != self.numer() {
            return None;
        }
        let sd = self.denom().sqrt();
        if &(&sd * &sd) != self.denom() {
            return None;
        }
        Some(Rat::from_big(sn, sd))
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero; use on known-nonzero values.
    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "Rat::recip: division by zero");
        Rat(self.0.recip())
    }

    /// Integer power (negative exponents allowed for nonzero values).
    pub fn pow(&self, e: i32) -> Rat {
        if e == 0 {
            return Rat::one();
        }
        let base = if e < 0 { self.recip().0 } else { self.0.clone() };
        let mut acc = BigRational::one();
        for _ in 0..e.unsigned_abs() {
            acc *= &base;
        }
        Rat(acc)
    }
}

// ---- Arithmetic ----

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$method(&rhs)
            }
        }
        impl<'b> $trait<&'b Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl<'a, 'b> Div<&'b Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'b Rat) -> Rat {
        assert!(!rhs.is_zero(), "Rat: division by zero");
        Rat(&self.0 / &rhs.0)
    }
}
impl Div<Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        &self / &rhs
    }
}
impl<'b> Div<&'b Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: &'b Rat) -> Rat {
        &self / rhs
    }
}
impl<'a> Div<Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        self / &rhs
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}
impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

// ---- Text form ----

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Parses `"n"` or `"n/d"` with optional sign and surrounding whitespace.
    fn from_str(s: &str) -> Result<Rat, Error> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse {
            at: 0,
            msg: format!("{msg} in rational '{s}'"),
        };
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num_s.parse().map_err(|_| bad("bad numerator"))?;
        let den: BigInt = match den_s {
            Some(d) => d.parse().map_err(|_| bad("bad denominator"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

/// Sign of the numerator: -1, 0 or 1.
pub fn sign(r: &Rat) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = Rat::new(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = Rat::new(1, 2);
        let b = Rat::new(1, 3);
        // 1/2 + 1/3 = 5/6, (5/6) * (6/5) = 1
        let s = &a + &b;
        assert_eq!(s.to_string(), "5/6");
        assert!((s.recip() * s).is_one());
    }

    #[test]
    fn display_and_parse_are_inverse() {
        for s in ["0", "7", "-3/4", "22/7"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        // un-reduced input still parses, canonically
        let r: Rat = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1/0".parse::<Rat>().is_err());
        assert!("a/b".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(Rat::new(9, 4).sqrt_exact(), Some(Rat::new(3, 2)));
        assert_eq!(Rat::from_int(0).sqrt_exact(), Some(Rat::zero()));
        assert_eq!(Rat::from_int(2).sqrt_exact(), None);
        assert_eq!(Rat::from_int(-9).sqrt_exact(), None);
        // 9/8 is not a square even though the numerator is
        assert_eq!(Rat::new(9, 8).sqrt_exact(), None);
    }

    #[test]
    fn pow_with_negative_exponent() {
        let r = Rat::new(2, 3);
        assert_eq!(r.pow(3), Rat::new(8, 27));
        assert_eq!(r.pow(-2), Rat::new(9, 4));
        assert_eq!(r.pow(0), Rat::one());
    }
}
