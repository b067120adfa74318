//! Elements of the function field Q(x)[y] / (y^2 - f(x)).
//!
//! Every element is a + b*y with a, b rational functions of x; this is a
//! basis because y has degree 2 over Q(x). Each element carries a handle to
//! its curve so arithmetic (which needs f for y * y) is self-contained.
//! Multiplying elements from different curves is a programming error and
//! panics.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::curve::CurveRef;
use super::poly::Poly;
use super::rat::Rat;
use super::ratfunc::RatFunc;

#[derive(Debug, Clone)]
pub struct FuncElem {
    curve: CurveRef,
    a: RatFunc,
    b: RatFunc,
}

impl FuncElem {
    pub fn new(curve: CurveRef, a: RatFunc, b: RatFunc) -> FuncElem {
        FuncElem { curve, a, b }
    }

    pub fn zero(curve: CurveRef) -> FuncElem {
        FuncElem::new(curve, RatFunc::zero(), RatFunc::zero())
    }

    pub fn one(curve: CurveRef) -> FuncElem {
        FuncElem::new(curve, RatFunc::one(), RatFunc::zero())
    }

    /// The coordinate function x.
    pub fn x(curve: CurveRef) -> FuncElem {
        FuncElem::new(curve, RatFunc::x(), RatFunc::zero())
    }

    /// The coordinate function y.
    pub fn y(curve: CurveRef) -> FuncElem {
        FuncElem::new(curve, RatFunc::zero(), RatFunc::one())
    }

    pub fn constant(curve: CurveRef, c: Rat) -> FuncElem {
        FuncElem::new(curve, RatFunc::constant(c), RatFunc::zero())
    }

    pub fn from_ratfunc(curve: CurveRef, a: RatFunc) -> FuncElem {
        FuncElem::new(curve, a, RatFunc::zero())
    }

    pub fn from_poly(curve: CurveRef, p: Poly) -> FuncElem {
        FuncElem::from_ratfunc(curve, RatFunc::from_poly(p))
    }

    pub fn curve(&self) -> &CurveRef {
        &self.curve
    }

    /// The y-free part.
    pub fn a(&self) -> &RatFunc {
        &self.a
    }

    /// The coefficient of y.
    pub fn b(&self) -> &RatFunc {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// True when the element lies in Q(x).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The hyperelliptic conjugate a - b*y.
    pub fn conj(&self) -> FuncElem {
        FuncElem::new(self.curve.clone(), self.a.clone(), -&self.b)
    }

    /// Norm to Q(x): (a + by)(a - by) = a^2 - b^2 f.
    pub fn norm(&self) -> RatFunc {
        let f = RatFunc::from_poly(self.curve.f().clone());
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &f)
    }

    /// Multiplicative inverse: conj / norm. Panics on zero.
    pub fn inv(&self) -> FuncElem {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm();
        // the norm of a nonzero element is nonzero because f is squarefree
        // of odd degree, hence not a square in Q(x)
        let c = self.conj();
        FuncElem::new(self.curve.clone(), &c.a / &n, &c.b / &n)
    }

    pub fn pow(&self, e: i32) -> FuncElem {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = FuncElem::one(self.curve.clone());
        let mut base = self.clone();
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at the affine point (x0, y0); `None` when a or b has a pole at
    /// x0. The point is trusted to lie on the curve.
    pub fn eval(&self, x0: &Rat, y0: &Rat) -> Option<Rat> {
        Some(self.a.eval(x0)? + &(self.b.eval(x0)? * y0))
    }

    /// Derivative with respect to x, using y' = f'(x) / (2y):
    /// (a + by)' = a' + (b' + b f' / (2f)) y.
    pub fn derivative(&self) -> FuncElem {
        let f = RatFunc::from_poly(self.curve.f().clone());
        let df = RatFunc::from_poly(self.curve.f().derivative());
        let two = RatFunc::constant(Rat::from_int(2));
        let b_part = &self.b.derivative() + &(&(&self.b * &df) / &(&two * &f));
        FuncElem::new(self.curve.clone(), self.a.derivative(), b_part)
    }

    fn assert_same_curve(&self, rhs: &FuncElem) {
        assert!(
            Arc::ptr_eq(&self.curve, &rhs.curve) || self.curve.f() == rhs.curve.f(),
            "arithmetic between elements of different curves"
        );
    }
}

impl PartialEq for FuncElem {
    fn eq(&self, other: &Self) -> bool {
        self.curve.f() == other.curve.f() && self.a == other.a && self.b == other.b
    }
}

impl Eq for FuncElem {}

impl Add for &FuncElem {
    type Output = FuncElem;
    fn add(self, rhs: &FuncElem) -> FuncElem {
        self.assert_same_curve(rhs);
        FuncElem::new(self.curve.clone(), &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &FuncElem {
    type Output = FuncElem;
    fn sub(self, rhs: &FuncElem) -> FuncElem {
        self.assert_same_curve(rhs);
        FuncElem::new(self.curve.clone(), &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &FuncElem {
    type Output = FuncElem;
    fn mul(self, rhs: &FuncElem) -> FuncElem {
        self.assert_same_curve(rhs);
        let f = RatFunc::from_poly(self.curve.f().clone());
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &f);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        FuncElem::new(self.curve.clone(), a, b)
    }
}

impl Div for &FuncElem {
    type Output = FuncElem;
    fn div(self, rhs: &FuncElem) -> FuncElem {
        self * &rhs.inv()
    }
}

impl Neg for &FuncElem {
    type Output = FuncElem;
    fn neg(self) -> FuncElem {
        FuncElem::new(self.curve.clone(), -&self.a, -&self.b)
    }
}

macro_rules! funcelem_owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for FuncElem {
            type Output = FuncElem;
            fn $method(self, rhs: FuncElem) -> FuncElem {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&FuncElem> for FuncElem {
            type Output = FuncElem;
            fn $method(self, rhs: &FuncElem) -> FuncElem {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<FuncElem> for &FuncElem {
            type Output = FuncElem;
            fn $method(self, rhs: FuncElem) -> FuncElem {
                $trait::$method(self, &rhs)
            }
        }
    )*};
}

funcelem_owned_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for FuncElem {
    type Output = FuncElem;
    fn neg(self) -> FuncElem {
        -&self
    }
}

impl fmt::Display for FuncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "y"),
            (true, false) => write!(f, "({}) * y", self.b),
            (false, false) if self.b.is_one() => write!(f, "{} + y", self.a),
            (false, false) => write!(f, "{} + ({}) * y", self.a, self.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::curve::Curve;

    fn cubic() -> CurveRef {
        Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap() // y^2 = x^3 + 1
    }

    #[test]
    fn y_squared_is_f() {
        let c = cubic();
        let y = FuncElem::y(c.clone());
        let y2 = &y * &y;
        assert!(y2.is_rational());
        assert_eq!(y2.a().num(), c.f());
    }

    #[test]
    fn one_plus_y_times_one_minus_y() {
        let c = cubic();
        let u = &FuncElem::one(c.clone()) + &FuncElem::y(c.clone());
        let prod = &u * &u.conj();
        // (1 + y)(1 - y) = 1 - f = -x^3
        assert!(prod.is_rational());
        assert_eq!(prod.a().num(), &Poly::from_i64_coeffs(&[0, 0, 0, -1]));
        assert_eq!(prod.a(), &u.norm());
    }

    #[test]
    fn inverse_through_the_conjugate() {
        let c = cubic();
        let u = &FuncElem::one(c.clone()) + &FuncElem::y(c.clone());
        let inv = u.inv();
        assert!((&u * &inv).is_one());
        // 1/(1+y) = (1 - y)/(-x^3)
        let minus_x3 = RatFunc::from_poly(Poly::from_i64_coeffs(&[0, 0, 0, -1]));
        assert_eq!(inv.a(), &(&RatFunc::one() / &minus_x3));
        assert_eq!(inv.b(), &(&-&RatFunc::one() / &minus_x3));
    }

    #[test]
    fn derivative_of_y() {
        let c = cubic();
        let dy = FuncElem::y(c.clone()).derivative();
        // y' = 3x^2 / (2y) = (3x^2 / (2(x^3+1))) y
        assert!(dy.a().is_zero());
        let expect = RatFunc::new(
            Poly::from_i64_coeffs(&[0, 0, 3]),
            Poly::from_i64_coeffs(&[2, 0, 0, 2]),
        );
        assert_eq!(dy.b(), &expect);
        // check against implicit differentiation: 2 y y' = f'
        let two_y_dy = &(&FuncElem::y(c.clone()) * &dy) * &FuncElem::constant(c.clone(), Rat::from_int(2));
        assert_eq!(two_y_dy, FuncElem::from_poly(c, Poly::from_i64_coeffs(&[0, 0, 3])));
    }

    #[test]
    fn field_axioms_spot_check() {
        let c = cubic();
        let u = FuncElem::new(
            c.clone(),
            RatFunc::new(Poly::from_i64_coeffs(&[1, 2]), Poly::from_i64_coeffs(&[0, 1])),
            RatFunc::from_poly(Poly::from_i64_coeffs(&[3, 0, 1])),
        );
        let v = &FuncElem::x(c.clone()) - &FuncElem::y(c.clone());
        assert_eq!(&(&u + &v) - &v, u);
        assert_eq!(&(&u * &v) / &v, u);
        let by_hand = &(u.a() * u.a()) - &(&(u.b() * u.b()) * &RatFunc::from_poly(c.f().clone()));
        assert_eq!(u.norm(), by_hand);
    }

    #[test]
    fn eval_at_points() {
        let c = cubic();
        let y = FuncElem::y(c.clone());
        assert_eq!(y.eval(&Rat::from_int(2), &Rat::from_int(3)), Some(Rat::from_int(3)));
        let over_x = FuncElem::new(c, RatFunc::x().recip(), RatFunc::zero());
        assert_eq!(over_x.eval(&Rat::zero(), &Rat::one()), None);
    }

    #[test]
    fn norm_is_multiplicative() {
        let c = cubic();
        let u = &FuncElem::x(c.clone()) + &FuncElem::y(c.clone());
        let v = &FuncElem::from_poly(c.clone(), Poly::from_i64_coeffs(&[5, 1])) - &FuncElem::y(c);
        assert_eq!((&u * &v).norm(), &u.norm() * &v.norm());
    }

    #[test]
    #[should_panic(expected = "different curves")]
    fn cross_curve_arithmetic_panics() {
        let c1 = cubic();
        let c2 = Curve::from_i64_coeffs(&[1, 0, 0, 0, 0, 1]).unwrap();
        let _ = &FuncElem::y(c1) + &FuncElem::y(c2);
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::kernel::curve::Curve;
    use crate::kernel::Poly;

    fn cubic() -> CurveRef {
        Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap()
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..5, 0..4).prop_map(|c| Poly::from_i64_coeffs(&c))
    }

    fn small_denominator() -> impl Strategy<Value = Poly> {
        small_poly().prop_map(|p| if p.is_zero() { Poly::one() } else { p })
    }

    prop_compose! {
        fn elem()(na in small_poly(), da in small_denominator(),
                  nb in small_poly(), db in small_denominator()) -> FuncElem {
            FuncElem::new(cubic(), RatFunc::new(na, da), RatFunc::new(nb, db))
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiplication_associates_and_distributes(u in elem(), v in elem(), w in elem()) {
            prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
            prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
        }

        #[test]
        fn norms_multiply(u in elem(), v in elem()) {
            prop_assert_eq!((&u * &v).norm(), &u.norm() * &v.norm());
        }

        #[test]
        fn inverting_twice_returns_the_element(u in elem()) {
            prop_assume!(!u.is_zero());
            prop_assert_eq!(u.inv().inv(), u);
        }
    }
}
