//! Text syntax for polynomials, differential operators, and fields.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := primary ('^' nat)*
//! primary:= rational | var | deriv | 'D12' '(' expr ')' | '(' expr ')'
//! var    := 'x' nat          (1-based)
//! deriv  := 'd' nat          (1-based)
//! rational := nat ['/' nat]
//! ```
//!
//! Implicit multiplication is not allowed (`x1*x2`, never `x1x2`), so the
//! token `x12` is unambiguously variable twelve.  Everything parses into a
//! differential operator; [`parse_poly`] and [`parse_field`] then insist on
//! order 0 and order exactly 1 respectively.  The ambient dimension is the
//! largest variable/derivative index seen (overridable), so rendered output
//! of any value in this workspace parses back to an equal value.

use core::fmt;

use ncomm_core::diffop::{d12, DiffOp, VField};
use ncomm_core::poly::{expo_unit, expo_zero, Expo, Poly};
use ncomm_core::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(i64),
    Var(usize),   // 1-based index
    Deriv(usize), // 1-based index
    D12,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos, msg: msg.into() })
    }

    fn nat(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let mut v: i64 = 0;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            let d = (self.src[self.pos] - b'0') as i64;
            v = match v.checked_mul(10).and_then(|x| x.checked_add(d)) {
                Some(x) => x,
                None => return self.err(start, "number too large"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected a number");
        }
        Ok(v)
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let at = self.pos;
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    self.pos += 1;
                }
                b'+' => {
                    out.push((at, Tok::Plus));
                    self.pos += 1;
                }
                b'-' => {
                    out.push((at, Tok::Minus));
                    self.pos += 1;
                }
                b'*' => {
                    out.push((at, Tok::Star));
                    self.pos += 1;
                }
                b'^' => {
                    out.push((at, Tok::Caret));
                    self.pos += 1;
                }
                b'/' => {
                    out.push((at, Tok::Slash));
                    self.pos += 1;
                }
                b'(' => {
                    out.push((at, Tok::LParen));
                    self.pos += 1;
                }
                b')' => {
                    out.push((at, Tok::RParen));
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    let v = self.nat()?;
                    out.push((at, Tok::Nat(v)));
                }
                b'x' => {
                    self.pos += 1;
                    let v = self.nat().map_err(|_| ParseError {
                        pos: at,
                        msg: "expected a variable index after 'x'".into(),
                    })?;
                    if v < 1 {
                        return self.err(at, "variable indices are 1-based");
                    }
                    out.push((at, Tok::Var(v as usize)));
                }
                b'd' => {
                    self.pos += 1;
                    let v = self.nat().map_err(|_| ParseError {
                        pos: at,
                        msg: "expected a derivative index after 'd'".into(),
                    })?;
                    if v < 1 {
                        return self.err(at, "derivative indices are 1-based");
                    }
                    out.push((at, Tok::Deriv(v as usize)));
                }
                b'D' => {
                    if self.src[self.pos..].starts_with(b"D12") {
                        self.pos += 3;
                        out.push((at, Tok::D12));
                    } else {
                        return self.err(at, "unknown name (did you mean 'D12'?)");
                    }
                }
                _ => {
                    return self.err(at, format!("unexpected character '{}'", c as char));
                }
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize, // byte length of the source, for end-of-input errors
    dim: usize,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let pos = self.toks.get(self.idx).map(|t| t.0).unwrap_or(self.end);
        Err(ParseError { pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|t| &t.1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|t| t.1.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.idx += 1;
                Ok(())
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<DiffOp, ParseError> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.idx += 1;
            }
            Some(Tok::Minus) => {
                self.idx += 1;
                neg = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&Rat::int(-1));
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DiffOp, ParseError> {
        // `a*b` applies b to the function first, then a, so that a rendered
        // monomial like `x1^2*d1` parses back to itself.  The library's
        // `compose` takes the first-acting operator on the left, hence the
        // flipped receiver here.
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.idx += 1;
            let f = self.factor()?;
            acc = f.compose(&acc);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<DiffOp, ParseError> {
        let mut base = self.primary()?;
        while matches!(self.peek(), Some(Tok::Caret)) {
            self.idx += 1;
            let e = match self.bump() {
                Some(Tok::Nat(v)) if v >= 0 => v as u32,
                _ => return self.err("expected a natural-number exponent after '^'"),
            };
            let mut acc = DiffOp::unit(self.dim);
            for _ in 0..e {
                acc = acc.compose(&base);
            }
            base = acc;
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<DiffOp, ParseError> {
        match self.bump() {
            Some(Tok::Nat(v)) => {
                // optional '/ nat' for a rational constant
                let mut den = 1i64;
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.idx += 1;
                    match self.bump() {
                        Some(Tok::Nat(d)) if d > 0 => den = d,
                        _ => return self.err("expected a positive denominator"),
                    }
                }
                Ok(DiffOp::term(
                    expo_zero(self.dim),
                    Poly::constant(self.dim, Rat::new(v, den)),
                ))
            }
            Some(Tok::Var(i)) => Ok(DiffOp::term(
                expo_zero(self.dim),
                Poly::var(self.dim, i - 1),
            )),
            Some(Tok::Deriv(i)) => Ok(DiffOp::term(
                expo_unit(self.dim, i - 1),
                Poly::one(self.dim),
            )),
            Some(Tok::D12) => {
                self.expect(Tok::LParen, "'(' after D12")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                if self.dim < 2 {
                    return self.err("D12 needs at least two variables");
                }
                let p = op_as_poly(&inner)
                    .ok_or(())
                    .or_else(|_| self.err("D12 argument must be a polynomial"))?;
                Ok(d12(&widen_poly(&p, self.dim)).as_op())
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => self.err("expected a constant, variable, derivative, or '('"),
        }
    }
}

fn op_as_poly(op: &DiffOp) -> Option<Poly> {
    match op.ord_max() {
        None => Some(Poly::zero(op.dim())),
        Some(0) => Some(op.coeff(&expo_zero(op.dim()))),
        _ => None,
    }
}

fn widen_expo(e: &Expo, dim: usize) -> Expo {
    let mut out = e.clone();
    while out.len() < dim {
        out.push(0);
    }
    out
}

/// Re-embed a polynomial into a (weakly larger) ambient dimension.
pub fn widen_poly(p: &Poly, dim: usize) -> Poly {
    assert!(dim >= p.dim(), "cannot shrink dimension");
    let mut out = Poly::zero(dim);
    for (e, c) in p.terms() {
        out.add_term(widen_expo(e, dim), c.clone());
    }
    out
}

/// Re-embed an operator into a (weakly larger) ambient dimension.
pub fn widen_op(op: &DiffOp, dim: usize) -> DiffOp {
    assert!(dim >= op.dim(), "cannot shrink dimension");
    let mut out = DiffOp::zero(dim);
    for (dexp, u) in op.terms() {
        out.add_term(widen_expo(dexp, dim), widen_poly(u, dim));
    }
    out
}

/// Re-embed a field into a (weakly larger) ambient dimension.
pub fn widen_field(x: &VField, dim: usize) -> VField {
    assert!(dim >= x.dim(), "cannot shrink dimension");
    let mut comps: Vec<Poly> = x.components().iter().map(|u| widen_poly(u, dim)).collect();
    while comps.len() < dim {
        comps.push(Poly::zero(dim));
    }
    VField::new(comps)
}

fn max_index(toks: &[(usize, Tok)]) -> usize {
    let mut m = 0usize;
    for (_, t) in toks {
        match t {
            Tok::Var(i) | Tok::Deriv(i) => m = m.max(*i),
            Tok::D12 => m = m.max(2),
            _ => {}
        }
    }
    m
}

/// Parse a differential operator.  The ambient dimension is `dim` when
/// given (error if some index exceeds it), else the largest index seen
/// (at least 1).
pub fn parse_op(text: &str, dim: Option<usize>) -> Result<DiffOp, ParseError> {
    let toks = Lexer { src: text.as_bytes(), pos: 0 }.tokens()?;
    let seen = max_index(&toks);
    let dim = match dim {
        Some(n) => {
            if seen > n {
                return Err(ParseError {
                    pos: 0,
                    msg: format!("index {seen} exceeds the requested dimension {n}"),
                });
            }
            n
        }
        None => seen.max(1),
    };
    let mut p = Parser { toks, idx: 0, end: text.len(), dim };
    let op = p.expr()?;
    if p.idx != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(op)
}

/// Parse a polynomial (an operator of order 0).
pub fn parse_poly(text: &str, dim: Option<usize>) -> Result<Poly, ParseError> {
    let op = parse_op(text, dim)?;
    op_as_poly(&op).ok_or_else(|| ParseError {
        pos: 0,
        msg: "expected a polynomial, found derivative terms".into(),
    })
}

/// Parse a vector field (an operator of order exactly 1).
pub fn parse_field(text: &str, dim: Option<usize>) -> Result<VField, ParseError> {
    let op = parse_op(text, dim)?;
    VField::from_op(&op).ok_or_else(|| ParseError {
        pos: 0,
        msg: "expected a first-order operator (a vector field)".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_examples() {
        let f = parse_field("x1^2*d1 - 2*x1*x2*d2", None).unwrap();
        assert_eq!(format!("{f}"), "x1^2*d1 - 2*x1*x2*d2");

        let g = parse_field("D12(x1*x2)", None).unwrap();
        assert_eq!(format!("{g}"), "-x1*d1 + x2*d2");

        assert!(parse_op("d1*d1", None).is_ok());
        assert!(parse_field("d1*d1", None).is_err());
    }

    #[test]
    fn rationals_signs_and_powers() {
        let p = parse_poly("3/2*x1^2*x2 - x2", None).unwrap();
        assert_eq!(format!("{p}"), "3/2*x1^2*x2 - x2");
        let q = parse_poly("-x1 + 1/3", None).unwrap();
        assert_eq!(format!("{q}"), "-x1 + 1/3");
        // ^ binds tighter than *
        let r = parse_op("2*d1^2", Some(2)).unwrap();
        assert_eq!(format!("{r}"), "2*d1^2");
    }

    #[test]
    fn dimension_inference_and_override() {
        assert_eq!(parse_poly("x3", None).unwrap().dim(), 3);
        assert_eq!(parse_poly("x1", Some(4)).unwrap().dim(), 4);
        assert!(parse_poly("x3", Some(2)).is_err());
        assert_eq!(parse_poly("7", None).unwrap().dim(), 1);
    }

    #[test]
    fn error_positions_are_reported() {
        let e = parse_op("x1 + % x2", None).unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(parse_op("x1 *", None).is_err());
        assert!(parse_op("(x1", None).is_err());
        assert!(parse_op("x1 x2", None).is_err(), "implicit products rejected");
    }

    #[test]
    fn composition_order_in_products() {
        // d1*x1 applies multiplication-by-x1 first, then differentiates:
        // the product rule leaves the constant term 1 in the difference.
        let a = parse_op("d1*x1 - x1*d1", Some(1)).unwrap();
        assert_eq!(format!("{a}"), "1");
        // x1*d1 is exactly the monomial operator (no correction term).
        let b = parse_op("x1*d1", Some(1)).unwrap();
        assert_eq!(format!("{b}"), "x1*d1");
    }
}
