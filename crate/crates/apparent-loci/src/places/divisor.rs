//! Divisors: finite formal Z-combinations of places, with the text format
//! `k*(x0, y0) + m*inf + n*closed[q(x)]` used by the command-line tools.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{parse, CurveRef, Rat};

use super::place::{ClosedKind, Place};

#[derive(Debug, Clone)]
pub struct Divisor {
    curve: CurveRef,
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero(curve: CurveRef) -> Divisor {
        Divisor { curve, coeffs: BTreeMap::new() }
    }

    pub fn single(curve: CurveRef, place: Place, k: i64) -> Divisor {
        let mut d = Divisor::zero(curve);
        d.add_entry(place, k);
        d
    }

    pub fn from_entries(curve: CurveRef, entries: Vec<(Place, i64)>) -> Divisor {
        let mut d = Divisor::zero(curve);
        for (p, k) in entries {
            d.add_entry(p, k);
        }
        d
    }

    pub fn curve(&self) -> &CurveRef {
        &self.curve
    }

    /// Adds `k` to the coefficient at `place`, dropping zero entries.
    pub fn add_entry(&mut self, place: Place, k: i64) {
        if k == 0 {
            return;
        }
        let c = self.coeffs.entry(place.clone()).or_insert(0);
        *c += k;
        if *c == 0 {
            self.coeffs.remove(&place);
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &k)| (p, k))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of coefficients weighted by place degrees.
    pub fn degree(&self) -> i64 {
        self.coeffs.iter().map(|(p, &k)| k * p.degree()).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&k| k >= 0)
    }

    /// The positive part: max(D, 0) coefficient-wise.
    pub fn zeros_part(&self) -> Divisor {
        Divisor {
            curve: self.curve.clone(),
            coeffs: self.coeffs.iter().filter(|(_, &k)| k > 0).map(|(p, &k)| (p.clone(), k)).collect(),
        }
    }

    /// The negated negative part: max(-D, 0), i.e. the pole divisor.
    pub fn poles_part(&self) -> Divisor {
        Divisor {
            curve: self.curve.clone(),
            coeffs: self.coeffs.iter().filter(|(_, &k)| k < 0).map(|(p, &k)| (p.clone(), -k)).collect(),
        }
    }

    /// Coefficient-wise maximum (absent places count as 0).
    pub fn sup(&self, other: &Divisor) -> Divisor {
        self.assert_same_curve(other);
        let mut out = Divisor::zero(self.curve.clone());
        for p in self.support().chain(other.support()) {
            let m = self.coeff(p).max(other.coeff(p));
            if m != 0 {
                out.coeffs.insert(p.clone(), m);
            }
        }
        out
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            curve: self.curve.clone(),
            coeffs: self.coeffs.iter().map(|(p, &k)| (p.clone(), -k)).collect(),
        }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        self.assert_same_curve(other);
        let mut out = self.clone();
        for (p, k) in other.iter() {
            out.add_entry(p.clone(), k);
        }
        out
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero(self.curve.clone());
        }
        Divisor {
            curve: self.curve.clone(),
            coeffs: self.coeffs.iter().map(|(p, &c)| (p.clone(), c * k)).collect(),
        }
    }

    /// True when some entry is a lumped fiber, whose individual places are
    /// not separated; such divisors cannot carry pointwise conditions.
    pub fn has_lumped(&self) -> bool {
        self.coeffs.keys().any(
            |p| matches!(p, Place::Closed { kind: ClosedKind::Lumped, .. }),
        )
    }

    /// `D >= E` coefficient-wise.
    pub fn dominates(&self, other: &Divisor) -> bool {
        self.sub(other).is_effective()
    }

    fn assert_same_curve(&self, other: &Divisor) {
        assert!(
            self.curve.f() == other.curve.f(),
            "divisors on different curves"
        );
    }

    /// Parses the display format back into a divisor; places are validated
    /// against the curve.
    pub fn parse(s: &str, curve: &CurveRef) -> Result<Divisor> {
        let mut d = Divisor::zero(curve.clone());
        let bytes = s.as_bytes();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        let err = |at: usize, msg: &str| Error::Parse { at, msg: msg.to_string() };
        skip_ws(&mut i);
        if i == bytes.len() || s.trim() == "0" {
            return Ok(d); // empty text and "0" are the zero divisor
        }
        let mut first = true;
        while i < bytes.len() {
            // sign
            let mut sign: i64 = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
                skip_ws(&mut i);
            } else if !first {
                return Err(err(i, "expected '+' or '-' between terms"));
            }
            first = false;
            // optional integer coefficient
            let mut k: i64 = 1;
            if i < bytes.len() && bytes[i].is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                k = s[start..i]
                    .parse()
                    .map_err(|_| err(start, "coefficient out of range"))?;
                skip_ws(&mut i);
                if i < bytes.len() && bytes[i] == b'*' {
                    i += 1;
                    skip_ws(&mut i);
                }
            }
            // place atom
            skip_ws(&mut i);
            if i >= bytes.len() {
                return Err(err(i, "expected a place"));
            }
            let place = if bytes[i] == b'(' {
                let close = s[i..]
                    .find(')')
                    .map(|o| i + o)
                    .ok_or(err(i, "unclosed '('"))?;
                let inner = &s[i + 1..close];
                let (xs, ys) = inner
                    .split_once(',')
                    .ok_or(err(i, "point needs two coordinates"))?;
                let x: Rat = parse::parse_rat(xs)?;
                let y: Rat = parse::parse_rat(ys)?;
                i = close + 1;
                Place::affine(curve, x, y)?
            } else if s[i..].starts_with("inf") {
                i += 3;
                Place::Infinity
            } else if s[i..].starts_with("closed[") || s[i..].starts_with("lump[") {
                let lumped = s[i..].starts_with("lump[");
                let open = i + if lumped { 5 } else { 7 };
                let close = s[open..]
                    .find(']')
                    .map(|o| open + o)
                    .ok_or(err(i, "unclosed '['"))?;
                let q = parse::parse_poly(&s[open..close])?;
                i = close + 1;
                if lumped {
                    Place::closed_with_kind(q.monic(), ClosedKind::Lumped)
                } else {
                    Place::closed(curve, q)?
                }
            } else {
                return Err(err(i, "expected '(x, y)', 'inf', 'closed[..]' or 'lump[..]'"));
            };
            d.add_entry(place, sign * k);
            skip_ws(&mut i);
        }
        Ok(d)
    }
}

impl PartialEq for Divisor {
    fn eq(&self, other: &Self) -> bool {
        self.curve.f() == other.curve.f() && self.coeffs == other.coeffs
    }
}

impl Eq for Divisor {}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (p, k)) in self.coeffs.iter().enumerate() {
            let mag = k.abs();
            if idx == 0 {
                if *k < 0 {
                    write!(f, "-")?;
                }
            } else if *k < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{mag}*{p}")?;
            }
        }
        Ok(())
    }
}
