//! Truncated power series over Q and local expansions of field elements at
//! rational points.
//!
//! A `Series` is a fixed-precision window [t^0, t^prec): all arithmetic here
//! keeps the window size, so precision management reduces to choosing it
//! correctly once per computation. Laurent behavior (negative exponents) is
//! handled by carrying an explicit leading exponent next to a unit-part
//! series rather than inside it.

use crate::error::{Error, Result};
use crate::kernel::{CurveRef, FuncElem, Poly, Rat, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>, // coefficient of t^i at index i; length is the precision
}

impl Series {
    pub fn new(coeffs: Vec<Rat>) -> Series {
        Series { coeffs }
    }

    pub fn zero(prec: usize) -> Series {
        Series { coeffs: vec![Rat::zero(); prec] }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        assert!(i < self.coeffs.len(), "coefficient beyond precision");
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, if any is visible.
    pub fn val(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Truncates (or zero-pads) to a new precision.
    pub fn with_prec(&self, prec: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(prec, Rat::zero());
        Series { coeffs }
    }

    pub fn add(&self, rhs: &Series) -> Series {
        assert_eq!(self.prec(), rhs.prec(), "precision mismatch");
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Series) -> Series {
        assert_eq!(self.prec(), rhs.prec(), "precision mismatch");
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Series) -> Series {
        assert_eq!(self.prec(), rhs.prec(), "precision mismatch");
        let n = self.prec();
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn recip(&self) -> Series {
        assert!(!self.coeffs[0].is_zero(), "reciprocal of a non-unit series");
        let n = self.prec();
        let inv0 = self.coeffs[0].recip();
        let mut out = vec![Rat::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            // coefficient k of (self * out) must vanish
            let mut s = Rat::zero();
            for i in 1..=k {
                s = s + &(&self.coeffs[i] * &out[k - i]);
            }
            out[k] = -&(&s * &inv0);
        }
        Series { coeffs: out }
    }

    /// Square root with prescribed constant term `r0` (so r0^2 must equal the
    /// constant term). The standard recurrence divides by 2 r0 throughout.
    pub fn sqrt_with(&self, r0: &Rat) -> Series {
        assert_eq!(&(r0 * r0), &self.coeffs[0], "wrong square root seed");
        assert!(!r0.is_zero(), "square root at a branch point");
        let n = self.prec();
        let mut out = vec![Rat::zero(); n];
        out[0] = r0.clone();
        let inv_2r0 = (Rat::from_int(2) * r0).recip();
        for k in 1..n {
            let mut s = Rat::zero();
            for i in 1..k {
                s = s + &(&out[i] * &out[k - i]);
            }
            out[k] = &(&self.coeffs[k] - &s) * &inv_2r0;
        }
        Series { coeffs: out }
    }

    /// Drops the first `k` coefficients (division by t^k), shrinking the
    /// window. The dropped coefficients must be zero.
    pub fn div_tpow(&self, k: usize) -> Series {
        assert!(self.coeffs[..k].iter().all(|c| c.is_zero()), "inexact shift");
        Series { coeffs: self.coeffs[k..].to_vec() }
    }
}

/// Exact expansion of `p` around x0: coefficients of (x - x0)^i for i < prec.
pub fn poly_series_at(p: &Poly, x0: &Rat, prec: usize) -> Series {
    let shifted = p.taylor_shift(x0);
    let mut coeffs: Vec<Rat> = (0..prec.min(shifted.coeffs().len()))
        .map(|i| shifted.coeff(i))
        .collect();
    coeffs.resize(prec, Rat::zero());
    Series { coeffs }
}

/// Laurent expansion of a nonzero rational function at x0: the order v and a
/// unit series u with r = t^v * u + O(t^(v + prec)), t = x - x0.
pub fn laurent_ratfunc_at(r: &RatFunc, x0: &Rat, prec: usize) -> (i64, Series) {
    assert!(!r.is_zero(), "expansion of the zero function");
    let prec = prec.max(1);
    let num = r.num().taylor_shift(x0);
    let den = r.den().taylor_shift(x0);
    let vn = num.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let vd = den.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let unit = |p: &Poly, v: usize| {
        let mut coeffs: Vec<Rat> = p.coeffs()[v..].to_vec();
        coeffs.resize(prec, Rat::zero());
        coeffs.truncate(prec);
        Series { coeffs }
    };
    let sn = unit(&num, vn);
    let sd = unit(&den, vd);
    (vn as i64 - vd as i64, sn.mul(&sd.recip()))
}

/// Expansion of y around the unramified rational point (x0, y0): the series
/// with constant term y0 whose square is f(x0 + t).
pub fn y_series_at(curve: &CurveRef, x0: &Rat, y0: &Rat, prec: usize) -> Series {
    let fs = poly_series_at(curve.f(), x0, prec);
    fs.sqrt_with(y0)
}

/// Laurent data of a nonzero element at an unramified rational point: the
/// exact order v and `want` unit-part coefficients.
///
/// The order is provably confined: with m = min(ord a, ord b) at x0 and N the
/// x0-order of the norm, cancellation cannot push the order past N - m, so
/// expanding that window finds the first nonzero coefficient.
pub fn laurent_funcelem_at(
    h: &FuncElem,
    x0: &Rat,
    y0: &Rat,
    want: usize,
) -> Result<(i64, Series)> {
    if h.is_zero() {
        return Err(Error::ZeroElement("local expansion"));
    }
    let want = want.max(1);
    debug_assert!(h.curve().contains(x0, y0) && !y0.is_zero());
    if h.b().is_zero() {
        let (v, s) = laurent_ratfunc_at(h.a(), x0, want);
        return Ok((v, s));
    }
    if h.a().is_zero() {
        let (v, s) = laurent_ratfunc_at(h.b(), x0, want);
        let y = y_series_at(h.curve(), x0, y0, want);
        return Ok((v, s.mul(&y)));
    }
    let va = h.a().order_at(x0);
    let vb = h.b().order_at(x0);
    let m = va.min(vb);
    let vnorm = h.norm().order_at(x0);
    let window = (vnorm - 2 * m) as usize;
    let n = window + want;

    let (_, sa) = laurent_ratfunc_at(h.a(), x0, n);
    let (_, sb) = laurent_ratfunc_at(h.b(), x0, n);
    let y = y_series_at(h.curve(), x0, y0, n);
    let sby = sb.mul(&y);

    // align both parts at the common offset m
    let mut coeffs = vec![Rat::zero(); n];
    for (i, c) in coeffs.iter_mut().enumerate() {
        let idx = i as i64;
        let mut s = Rat::zero();
        if idx >= va - m && ((idx - (va - m)) as usize) < n {
            s = s + sa.coeff((idx - (va - m)) as usize);
        }
        if idx >= vb - m && ((idx - (vb - m)) as usize) < n {
            s = s + sby.coeff((idx - (vb - m)) as usize);
        }
        *c = s;
    }
    let aligned = Series { coeffs };
    let j = aligned
        .val()
        .expect("a nonzero element vanished past its norm bound");
    debug_assert!(j <= window, "order escaped the norm window");
    Ok((m + j as i64, aligned.div_tpow(j).with_prec(want)))
}
