//! Text expressions for polynomials, rational functions, and curve elements.
//!
//! One recursive-descent parser serves all three: `+ - * / ^` with the usual
//! precedence, parentheses, integer literals, the variables x and y, and
//! implicit multiplication by juxtaposition ("2x", "(x+1)(x-1)"). Division is
//! ordinary field division, so "1/2" and "3/x" both mean what they look like;
//! whether the result must be a polynomial is checked at the entry points,
//! not in the grammar.

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::curve::CurveRef;
use super::funcelem::FuncElem;
use super::poly::Poly;
use super::rat::Rat;
use super::ratfunc::RatFunc;

/// Parses a polynomial in x; fails if the expression has a denominator.
pub fn parse_poly(s: &str) -> Result<Poly> {
    let r = parse_ratfunc(s)?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::Parse {
            at: s.len(),
            msg: "expression is a rational function, not a polynomial".into(),
        }),
    }
}

/// Parses a rational function in x (the variable y is rejected).
pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    Parser::new(s, RatFuncCtx)?.run()
}

/// Parses a rational constant such as "-3/2".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let r = parse_ratfunc(s)?;
    match r.as_poly() {
        Some(p) if p.is_constant() => Ok(p.coeff(0)),
        _ => Err(Error::Parse { at: s.len(), msg: "expression is not a constant".into() }),
    }
}

/// Parses an element of the function field of `curve` (x and y allowed).
pub fn parse_funcelem(s: &str, curve: &CurveRef) -> Result<FuncElem> {
    Parser::new(s, FuncElemCtx(curve.clone()))?.run()
}

// ---- value domains ----

trait Context {
    type Value: Clone;
    fn int(&self, n: BigInt) -> Self::Value;
    fn x(&self) -> Self::Value;
    fn y(&self) -> Option<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn is_zero(&self, a: &Self::Value) -> bool;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn pow(&self, a: &Self::Value, e: i32) -> Self::Value;
}

struct RatFuncCtx;

impl Context for RatFuncCtx {
    type Value = RatFunc;
    fn int(&self, n: BigInt) -> RatFunc {
        RatFunc::constant(Rat::from_bigint(n))
    }
    fn x(&self) -> RatFunc {
        RatFunc::x()
    }
    fn y(&self) -> Option<RatFunc> {
        None
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a + b
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a - b
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a * b
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        -a
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn div(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a / b
    }
    fn pow(&self, a: &RatFunc, e: i32) -> RatFunc {
        a.pow(e)
    }
}

struct FuncElemCtx(CurveRef);

impl Context for FuncElemCtx {
    type Value = FuncElem;
    fn int(&self, n: BigInt) -> FuncElem {
        FuncElem::constant(self.0.clone(), Rat::from_bigint(n))
    }
    fn x(&self) -> FuncElem {
        FuncElem::x(self.0.clone())
    }
    fn y(&self) -> Option<FuncElem> {
        Some(FuncElem::y(self.0.clone()))
    }
    fn add(&self, a: &FuncElem, b: &FuncElem) -> FuncElem {
        a + b
    }
    fn sub(&self, a: &FuncElem, b: &FuncElem) -> FuncElem {
        a - b
    }
    fn mul(&self, a: &FuncElem, b: &FuncElem) -> FuncElem {
        a * b
    }
    fn neg(&self, a: &FuncElem) -> FuncElem {
        -a
    }
    fn is_zero(&self, a: &FuncElem) -> bool {
        a.is_zero()
    }
    fn div(&self, a: &FuncElem, b: &FuncElem) -> FuncElem {
        a / b
    }
    fn pow(&self, a: &FuncElem, e: i32) -> FuncElem {
        a.pow(e)
    }
}

// ---- tokens ----

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'x' => Tok::X,
            'y' => Tok::Y,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().unwrap();
                out.push((start, Tok::Int(n)));
                continue;
            }
            other => {
                return Err(Error::Parse { at: i, msg: format!("unexpected character '{other}'") })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

// ---- parser ----

struct Parser<C: Context> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: C,
}

impl<C: Context> Parser<C> {
    fn new(s: &str, ctx: C) -> Result<Parser<C>> {
        Ok(Parser { toks: tokenize(s)?, pos: 0, end: s.len(), ctx })
    }

    fn run(mut self) -> Result<C::Value> {
        let v = self.expr()?;
        match self.toks.get(self.pos) {
            None => Ok(v),
            Some((at, _)) => Err(Error::Parse { at: *at, msg: "trailing input".into() }),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(a, _)| *a).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<C::Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.ctx.add(&acc, &rhs);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.ctx.sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<C::Value> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = self.ctx.mul(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    let at = self.at();
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if self.ctx.is_zero(&rhs) {
                        return Err(Error::Parse { at, msg: "division by zero".into() });
                    }
                    acc = self.ctx.div(&acc, &rhs);
                }
                // juxtaposition: "2x", "x y", "3(x+1)"
                Some(Tok::Int(_) | Tok::X | Tok::Y | Tok::LParen) => {
                    let rhs = self.factor()?;
                    acc = self.ctx.mul(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<C::Value> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            let v = self.factor()?;
            return Ok(self.ctx.neg(&v));
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let at = self.at();
            let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                self.pos += 1;
                true
            } else {
                false
            };
            let Some(Tok::Int(n)) = self.bump() else {
                return Err(Error::Parse { at, msg: "exponent must be an integer".into() });
            };
            let e: i32 = n
                .try_into()
                .map_err(|_| Error::Parse { at, msg: "exponent out of range".into() })?;
            let e = if neg { -e } else { e };
            if e < 0 && self.ctx.is_zero(&base) {
                return Err(Error::Parse { at, msg: "negative power of zero".into() });
            }
            return Ok(self.ctx.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<C::Value> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(self.ctx.int(n)),
            Some(Tok::X) => Ok(self.ctx.x()),
            Some(Tok::Y) => self.ctx.y().ok_or(Error::Parse {
                at,
                msg: "the variable y is not allowed here".into(),
            }),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(Error::Parse { at, msg: "unclosed parenthesis".into() }),
                }
            }
            Some(t) => Err(Error::Parse { at, msg: format!("unexpected token {t:?}") }),
            None => Err(Error::Parse { at, msg: "unexpected end of expression".into() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::curve::Curve;

    #[test]
    fn polynomials_round_trip() {
        for s in ["x^3 + 1", "-2*x + 1/2", "x^5 - 3*x^2 + 7", "0", "5"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn juxtaposition_and_precedence() {
        assert_eq!(parse_poly("2x(x+1)").unwrap(), parse_poly("2*x^2 + 2*x").unwrap());
        assert_eq!(parse_poly("-x^2").unwrap(), parse_poly("-(x^2)").unwrap());
        assert_eq!(parse_poly("2^3 x").unwrap(), parse_poly("8x").unwrap());
        assert_eq!(
            parse_ratfunc("1/2 x").unwrap(),
            parse_ratfunc("x/2").unwrap()
        );
    }

    #[test]
    fn rational_functions() {
        let r = parse_ratfunc("(x+1)^2 / (x-1)").unwrap();
        assert_eq!(r.num(), &parse_poly("x^2 + 2x + 1").unwrap());
        assert_eq!(r.den(), &parse_poly("x - 1").unwrap());
        assert_eq!(parse_ratfunc("x^-2").unwrap(), parse_ratfunc("1/x^2").unwrap());
    }

    #[test]
    fn constants() {
        assert_eq!(parse_rat("-3/2").unwrap(), Rat::new(-3, 2));
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn function_field_elements() {
        let c = Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap();
        let u = parse_funcelem("y^2", &c).unwrap();
        assert!(u.is_rational());
        assert_eq!(u.a().num(), c.f());
        let v = parse_funcelem("(1 + y)/x", &c).unwrap();
        assert_eq!(v.b(), &RatFunc::x().recip());
        let w = parse_funcelem("x y - 3", &c).unwrap();
        assert_eq!(w.b(), &RatFunc::x());
    }

    #[test]
    fn error_positions_and_kinds() {
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("(x").is_err());
        assert!(parse_poly("z").is_err());
        assert!(parse_ratfunc("y").is_err());
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_ratfunc("1/(x - x)").is_err());
        assert!(parse_poly("1/x").is_err());
        assert!(parse_poly("x 5 )").is_err());
    }
}
