//! Textual polynomial syntax: rational coefficients, identifiers, `+ - * ^`
//! and parentheses.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::RingRef;
use crate::Rational;

pub fn parse_poly(ring: &RingRef, src: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        src: src.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parses a comma-separated list of polynomials; an empty string gives an
/// empty list.
pub fn parse_poly_list(ring: &RingRef, src: &str) -> Result<Vec<Polynomial>> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in split_top_level(src, b',') {
        out.push(parse_poly(ring, piece).map_err(|e| match e {
            AlgebraError::Parse { col, msg } => AlgebraError::Parse {
                col: col + offset,
                msg,
            },
            other => other,
        })?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Splits on `sep` outside parentheses.
pub fn split_top_level(src: &str, sep: u8) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, b) in src.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ if b == sep && depth == 0 => {
                out.push(&src[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&src[start..]);
    out
}

struct Parser<'a> {
    ring: &'a RingRef,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse {
            col: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&Rational::new(BigInt::one(), d));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent must be a small nonnegative integer"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.index_of(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => {
                        self.pos = start;
                        Err(AlgebraError::Parse {
                            col: start + 1,
                            msg: format!("undeclared variable `{name}`"),
                        })
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BlockRole, Ring};

    #[test]
    fn parses_nested_expressions() {
        let r = Ring::with_names(&["x", "y"], BlockRole::Base);
        let p = parse_poly(&r, "(x+y)^2 - 2*x*y").unwrap();
        assert_eq!(p.to_string(), "x^2 + y^2");
        let q = parse_poly(&r, "-x/2 + 3/4").unwrap();
        assert_eq!(q.to_string(), "-1/2*x + 3/4");
    }

    #[test]
    fn reports_column_of_unknown_variable() {
        let r = Ring::with_names(&["x"], BlockRole::Base);
        match parse_poly(&r, "x + zz") {
            Err(AlgebraError::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn list_parsing() {
        let r = Ring::with_names(&["x", "y"], BlockRole::Base);
        let v = parse_poly_list(&r, "x*y, (x+1)*(y-1), 0").unwrap();
        assert_eq!(v.len(), 3);
        assert!(v[2].is_zero());
        assert!(parse_poly_list(&r, "  ").unwrap().is_empty());
    }
}
