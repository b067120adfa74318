//! Rational functions in one variable over Q, kept in lowest terms with a
//! monic denominator so that equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::Poly;
use super::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly, // monic, coprime to num; exactly 1 when num is zero
}

impl RatFunc {
    /// Builds `num/den` and reduces. Panics when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> RatFunc {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g);
        let mut den = den.exact_div(&g);
        let lead = den.lead().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn x() -> RatFunc {
        RatFunc { num: Poly::x(), den: Poly::one() }
    }

    pub fn constant(c: Rat) -> RatFunc {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial this function equals, when it is one.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Degree of num minus degree of den; `None` for the zero function.
    pub fn degree_diff(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.deg() as i64)
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> RatFunc {
        // (n/d)' = (n'd - nd') / d^2
        let n = &self.num.derivative() * &self.den - &self.num * &self.den.derivative();
        RatFunc::new(n, &self.den * &self.den)
    }

    /// Value at `x0`; `None` when `x0` is a pole.
    pub fn eval(&self, x0: &Rat) -> Option<Rat> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x0) / d)
    }

    /// Multiplicity of `x - x0` in num (positive) or den (negative).
    pub fn order_at(&self, x0: &Rat) -> i64 {
        if self.is_zero() {
            panic!("order of the zero function");
        }
        let q = Poly::x_minus(x0);
        self.num.multiplicity_of(&q) as i64 - self.den.multiplicity_of(&q) as i64
    }

    pub fn pow(&self, e: i32) -> RatFunc {
        if e < 0 {
            return self.recip().pow(-e);
        }
        RatFunc::new(self.num.pow(e as u32), self.den.pow(e as u32))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! ratfunc_owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                $trait::$method(self, &rhs)
            }
        }
    )*};
}

ratfunc_owned_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.is_constant() || self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
            format!("{}", self.num)
        } else {
            format!("({})", self.num)
        };
        write!(f, "{num} / ({})", self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn reduction_to_lowest_terms() {
        // (x^2 - 1) / (2x + 2) = (x - 1) / 2 with monic denominator 1
        let r = RatFunc::new(poly(&[-1, 0, 1]), poly(&[2, 2]));
        assert_eq!(r.num(), &poly(&[-1, 1]).scale(&Rat::new(1, 2)));
        assert!(r.is_poly());
    }

    #[test]
    fn monic_denominator_makes_equality_structural() {
        let a = RatFunc::new(poly(&[1]), poly(&[0, 2]));
        let b = RatFunc::new(poly(&[3]), poly(&[0, 6]));
        assert_eq!(a, b);
        assert!(a.den().lead().is_one());
    }

    #[test]
    fn field_ops() {
        let x = RatFunc::x();
        let inv_x = x.recip();
        assert!((&x * &inv_x).is_one());
        let s = &x + &inv_x; // (x^2 + 1)/x
        assert_eq!(s.num(), &poly(&[1, 0, 1]));
        assert_eq!(s.den(), &poly(&[0, 1]));
        let back = &s - &inv_x;
        assert_eq!(back, x);
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let r = RatFunc::x().recip().derivative();
        assert_eq!(r, RatFunc::new(poly(&[-1]), poly(&[0, 0, 1])));
    }

    #[test]
    fn eval_and_poles() {
        let r = RatFunc::new(poly(&[1]), poly(&[0, 1])); // 1/x
        assert_eq!(r.eval(&Rat::from_int(2)), Some(Rat::new(1, 2)));
        assert_eq!(r.eval(&Rat::zero()), None);
    }

    #[test]
    fn order_at_points() {
        // x^2 / (x - 1)
        let r = RatFunc::new(poly(&[0, 0, 1]), poly(&[-1, 1]));
        assert_eq!(r.order_at(&Rat::zero()), 2);
        assert_eq!(r.order_at(&Rat::one()), -1);
        assert_eq!(r.order_at(&Rat::from_int(5)), 0);
    }

    #[test]
    fn integer_powers() {
        let x = RatFunc::x();
        assert_eq!(x.pow(3).num(), &poly(&[0, 0, 0, 1]));
        assert_eq!(x.pow(-2), RatFunc::new(poly(&[1]), poly(&[0, 0, 1])));
        assert_eq!(x.pow(0), RatFunc::one());
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..5, 0..4).prop_map(|c| Poly::from_i64_coeffs(&c))
    }

    fn small_denominator() -> impl Strategy<Value = Poly> {
        small_poly().prop_map(|p| if p.is_zero() { Poly::one() } else { p })
    }

    prop_compose! {
        fn ratfunc()(n in small_poly(), d in small_denominator()) -> RatFunc {
            RatFunc::new(n, d)
        }
    }

    fn canonical(r: &RatFunc) -> bool {
        let monic_den = r.den().lead().is_one();
        let coprime = r.num().gcd(r.den()).deg() == 0;
        let zero_form = !r.num().is_zero() || r.den().is_one();
        monic_den && coprime && zero_form
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn arithmetic_keeps_canonical_form(u in ratfunc(), v in ratfunc()) {
            prop_assert!(canonical(&(&u + &v)));
            prop_assert!(canonical(&(&u - &v)));
            prop_assert!(canonical(&(&u * &v)));
            if !v.is_zero() {
                prop_assert!(canonical(&(&u / &v)));
            }
        }
    }
}
