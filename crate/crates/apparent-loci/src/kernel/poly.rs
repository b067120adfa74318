//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first. The canonical form drops
//! trailing zeros, so the zero polynomial is the empty vector and `degree()`
//! of a nonzero polynomial is `coeffs.len() - 1`. Every operation returns a
//! canonical result.
//!
//! Provided here:
//! * ring arithmetic, exact division, `div_rem`,
//! * gcd (monic remainder sequence) and Yun's squarefree decomposition,
//! * evaluation, formal derivative, Taylor shift `p(x0 + t)`,
//! * conversion to primitive integer coefficients (for factoring).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::Rat;

/// A polynomial in one variable `x` with [`Rat`] coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

// ---- Constructors ----

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Poly {
        Poly {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `x - c`, the minimal polynomial of a rational point.
    pub fn x_minus(c: &Rat) -> Poly {
        Poly {
            coeffs: vec![-c, Rat::one()],
        }
    }

    /// Builds from coefficients, lowest degree first; normalizes.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Poly {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

// ---- Queries ----

impl Poly {
    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as used in valuation arithmetic: `deg 0 = 0`, zero panics.
    pub fn deg(&self) -> usize {
        self.degree().expect("Poly::deg: zero polynomial")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient. Panics on zero.
    pub fn lead(&self) -> &Rat {
        self.coeffs.last().expect("Poly::lead: zero polynomial")
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
}

// ---- Arithmetic ----

impl Poly {
    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Leading coefficient made 1. Panics on zero.
    pub fn monic(&self) -> Poly {
        self.scale(&self.lead().recip())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
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

    /// Euclidean division: returns `(q, r)` with `self = q * div + r` and
    /// `deg r < deg div`. Panics on a zero divisor.
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "Poly::div_rem: division by zero");
        if self.is_zero() || self.coeffs.len() < div.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dlead = div.lead().recip();
        let dd = div.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &dlead;
            for (j, dc) in div.coeffs.iter().enumerate().take(dd) {
                rem[i - dd + j] = &rem[i - dd + j] - &(&q * dc);
            }
            rem[i] = Rat::zero();
            quo[i - dd] = q;
        }
        (Poly::from_coeffs(quo), Poly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, div: &Poly) -> Poly {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "Poly::exact_div: nonzero remainder");
        q
    }

    /// Monic greatest common divisor (gcd of anything with 0 is the other
    /// argument made monic; gcd(0, 0) = 0).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            // keep coefficients small: remainders are normalized to monic
            b = if r.is_zero() { r } else { r.monic() };
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Coefficients of `p(x0 + t)` as a polynomial in `t`.
    pub fn taylor_shift(&self, x0: &Rat) -> Poly {
        if self.is_zero() || x0.is_zero() {
            return self.clone();
        }
        // repeated synthetic division by (x - x0); remainders are the
        // shifted coefficients from the constant term up
        let mut work = self.coeffs.clone();
        let n = work.len();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            // divide work[k..] in place by (x - x0), remainder lands at k
            for i in (k + 1..n).rev() {
                let add = &work[i] * x0;
                work[i - 1] = &work[i - 1] + &add;
            }
            out.push(work[k].clone());
        }
        Poly::from_coeffs(out)
    }

    /// Multiplicity of the irreducible `q` in `self` (0 for coprime).
    /// Panics if `q` is constant or `self` is zero.
    pub fn multiplicity_of(&self, q: &Poly) -> u32 {
        assert!(!self.is_zero(), "Poly::multiplicity_of: zero polynomial");
        assert!(!q.is_constant(), "Poly::multiplicity_of: constant divisor");
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (quo, rem) = cur.div_rem(q);
            if !rem.is_zero() {
                return m;
            }
            m += 1;
            cur = quo;
        }
    }
}

// ---- Squarefree structure ----

impl Poly {
    /// `gcd(f, f')` is constant exactly for squarefree polynomials.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's squarefree decomposition: returns the monic squarefree parts
    /// `a_i` with their multiplicities, so `self = lead * prod a_i^(m_i)`.
    /// Constant input yields an empty list.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        assert!(!self.is_zero(), "squarefree_decomposition of zero");
        if self.is_constant() {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let g = f.gcd(&df);
        if g.is_constant() {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut c = f.exact_div(&g);
        let mut d = &df.exact_div(&g) - &c.derivative();
        let mut i = 1u32;
        while !c.is_constant() {
            let a = c.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            c = c.exact_div(&a);
            d = &d.exact_div(&a) - &c.derivative();
            i += 1;
        }
        out
    }
}

// ---- Integer form (for factoring) ----

impl Poly {
    /// Writes `self = factor * P(x)` with `P` a primitive integer polynomial
    /// with positive leading coefficient. Panics on zero.
    pub fn primitive_integer(&self) -> (Rat, Vec<BigInt>) {
        assert!(!self.is_zero(), "primitive_integer of zero");
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
        (Rat::from_big(content, den), prim)
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
        impl<'b> $trait<&'b Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &'b Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

impl<'a, 'b> Add<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'b Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}
poly_binop!(Add, add);

impl<'a, 'b> Sub<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'b Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}
poly_binop!(Sub, sub);

impl<'a, 'b> Mul<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'b Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}
poly_binop!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

// ---- Ordering and text form ----

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down. Gives divisor maps
    /// and candidate enumerations a stable order.
    fn cmp(&self, other: &Poly) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.coeffs.iter().zip(&other.coeffs).rev() {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_is_one = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 => {
                    if coeff_is_one {
                        write!(f, "x")?
                    } else {
                        write!(f, "{mag}*x")?
                    }
                }
                _ => {
                    if coeff_is_one {
                        write!(f, "x^{i}")?
                    } else {
                        write!(f, "{mag}*x^{i}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_i64_coeffs(coeffs)
    }

    // ---- Canonical form ----

    #[test]
    fn trailing_zeros_are_dropped() {
        let q = Poly::from_coeffs(vec![Rat::from_int(1), Rat::zero(), Rat::zero()]);
        assert_eq!(q.degree(), Some(0));
        assert!(Poly::from_coeffs(vec![Rat::zero(); 4]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    // ---- Arithmetic ----

    #[test]
    fn add_mul_basics() {
        // (x^2 + 1) + (2x + 3) = x^2 + 2x + 4
        assert_eq!(&p(&[1, 0, 1]) + &p(&[3, 2]), p(&[4, 2, 1]));
        // (x + 1)(x - 1) = x^2 - 1
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        // subtraction cancels the top term
        assert_eq!(&p(&[0, 0, 1]) - &p(&[1, 0, 1]), p(&[-1]));
    }

    #[test]
    fn div_rem_invariant() {
        let a = p(&[1, 0, -3, 0, 1]); // x^4 - 3x^2 + 1
        let b = p(&[1, 2]); // 2x + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn div_rem_by_zero_panics() {
        let _ = p(&[1, 1]).div_rem(&Poly::zero());
    }

    #[test]
    #[should_panic(expected = "nonzero remainder")]
    fn exact_div_rejects_inexact() {
        let _ = p(&[1, 1]).exact_div(&p(&[0, 1]));
    }

    #[test]
    fn gcd_of_products() {
        let a = &p(&[1, 1]) * &p(&[-2, 1]); // (x+1)(x-2)
        let b = &p(&[1, 1]) * &p(&[5, 1]); // (x+1)(x+5)
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        // gcd is monic even for scaled inputs
        assert_eq!(a.scale(&Rat::from_int(6)).gcd(&b), p(&[1, 1]));
        assert_eq!(Poly::zero().gcd(&b), b.monic());
    }

    #[test]
    fn eval_and_derivative() {
        let f = p(&[1, 0, 0, 1]); // x^3 + 1
        assert_eq!(f.eval(&Rat::from_int(2)), Rat::from_int(9));
        assert_eq!(f.derivative(), p(&[0, 0, 3]));
    }

    #[test]
    fn taylor_shift_matches_substitution() {
        // p(x) = x^3 + 1 at x0 = 2: p(2 + t) = t^3 + 6t^2 + 12t + 9
        let f = p(&[1, 0, 0, 1]);
        assert_eq!(f.taylor_shift(&Rat::from_int(2)), p(&[9, 12, 6, 1]));
        // shifting back is the identity
        let g = p(&[3, -1, 0, 2, 5]);
        let x0 = Rat::new(-7, 3);
        assert_eq!(g.taylor_shift(&x0).taylor_shift(&-&x0), g);
    }

    #[test]
    fn multiplicity_counting() {
        let f = &p(&[0, 1]).pow(3) * &p(&[-1, 1]); // x^3 (x - 1)
        assert_eq!(f.multiplicity_of(&p(&[0, 1])), 3);
        assert_eq!(f.multiplicity_of(&p(&[-1, 1])), 1);
        assert_eq!(f.multiplicity_of(&p(&[7, 1])), 0);
    }

    // ---- Squarefree structure ----

    #[test]
    fn squarefree_detection() {
        assert!(p(&[1, 0, 0, 1]).is_squarefree()); // x^3 + 1
        assert!(!p(&[1, 2, 1]).is_squarefree()); // (x+1)^2
    }

    #[test]
    fn yun_decomposition() {
        // f = (x+1)^2 (x-2)^3 x
        let f = &(&p(&[1, 1]).pow(2) * &p(&[-2, 1]).pow(3)) * &p(&[0, 1]);
        let parts = f.squarefree_decomposition();
        assert_eq!(
            parts,
            vec![(p(&[0, 1]), 1), (p(&[1, 1]), 2), (p(&[-2, 1]), 3)]
        );
        // multiplying back recovers f (f is monic here)
        let mut back = Poly::one();
        for (a, m) in &parts {
            back = &back * &a.pow(*m);
        }
        assert_eq!(back, f);
    }

    #[test]
    fn primitive_integer_form() {
        // 3/2 x^2 - 9/4  ->  (3/4) * (2x^2 - 3)
        let f = Poly::from_coeffs(vec![Rat::new(-9, 4), Rat::zero(), Rat::new(3, 2)]);
        let (factor, ints) = f.primitive_integer();
        assert_eq!(factor, Rat::new(3, 4));
        assert_eq!(
            ints,
            vec![BigInt::from(-3), BigInt::from(0), BigInt::from(2)]
        );
    }

    #[test]
    fn display_form() {
        assert_eq!(p(&[1, 0, 0, 1]).to_string(), "x^3 + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(
            Poly::from_coeffs(vec![Rat::new(1, 2), Rat::from_int(-2)]).to_string(),
            "-2*x + 1/2"
        );
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
