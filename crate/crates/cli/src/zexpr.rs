//! Exact evaluation points written on the command line.
//!
//! Grammar, loosely:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor | factor)*      juxtaposition multiplies
//! factor := number | 'i' | 'zeta(' int ')' ['^' int] | '(' expr ')'
//! number := digits ['.' digits] ['/' digits]
//! ```
//!
//! so `3`, `-5/3`, `0.9`, `2+i`, `1/2 - 3/4i`, `zeta(8)^3` and `1 - 3*zeta(5)`
//! all parse to a [`CycloElem`].

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use qlab_core::{CycloElem, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_z(src: &str) -> Result<CycloElem, ParseError> {
    let mut p = Parser { s: src.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(v)
}

/// A plain decimal or fraction such as `0.25` or `7/8`.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let mut p = Parser { s: src.trim().as_bytes(), pos: 0 };
    let neg = p.eat(b'-');
    let r = p.number()?;
    if p.pos != p.s.len() {
        return p.fail("expected a rational number");
    }
    Ok(if neg { -r } else { r })
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn fail<T>(&self, what: &str) -> Result<T, ParseError> {
        Err(ParseError(format!("{what} at position {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CycloElem, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if neg { -first } else { first };
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycloElem, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let inv = d.try_inv().ok_or_else(|| ParseError("division by zero".into()))?;
                    acc = acc * inv;
                }
                Some(c) if c.is_ascii_digit() || c == b'i' || c == b'z' || c == b'(' => acc = acc * self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CycloElem, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let r = self.number()?;
                Ok(CycloElem::from_rational(&r))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(CycloElem::zeta(4))
            }
            Some(b'z') => {
                if !self.s[self.pos..].starts_with(b"zeta(") {
                    return self.fail("expected `zeta(`");
                }
                self.pos += 5;
                let m = self.integer()?;
                if !self.eat(b')') {
                    return self.fail("expected `)`");
                }
                let m = u32::try_from(m).ok().filter(|&m| m >= 1).ok_or_else(|| ParseError("zeta order must be a positive integer".into()))?;
                let k = if self.eat(b'^') {
                    let neg = self.eat(b'-');
                    let k = i64::try_from(self.integer()?).map_err(|_| ParseError("exponent too large".into()))?;
                    if neg { -k } else { k }
                } else {
                    1
                };
                Ok(CycloElem::zeta_pow(m, k))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.fail("expected `)`");
                }
                Ok(v)
            }
            Some(_) => self.fail("unexpected character"),
            None => self.fail("unexpected end of input"),
        }
    }

    fn digits(&mut self) -> &[u8] {
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        &self.s[start..self.pos]
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let d = self.digits();
        std::str::from_utf8(d).unwrap().parse().map_err(|_| ParseError("expected an integer".into()))
    }

    /// Unsigned decimal, optionally followed by `/denominator`.
    fn number(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let whole = self.digits().to_vec();
        let mut frac = Vec::new();
        if self.s.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac = self.digits().to_vec();
        }
        if whole.is_empty() && frac.is_empty() {
            return self.fail("expected a number");
        }
        let all: String = whole.iter().chain(&frac).map(|&b| b as char).collect();
        let num: BigInt = all.parse().unwrap();
        let mut r = Rational::new(num, BigInt::from(10u32).pow(frac.len() as u32));
        // a slash followed by a digit is a fraction; otherwise it is division
        if self.s.get(self.pos) == Some(&b'/') && self.s.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
            let d = self.integer()?;
            if d.is_zero() {
                return self.fail("zero denominator");
            }
            r /= Rational::from_integer(d.into());
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(n: i64, d: i64) -> CycloElem {
        CycloElem::from_rational(&Rational::new(n.into(), d.into()))
    }

    #[test]
    fn rationals_and_decimals() {
        assert_eq!(parse_z("3").unwrap(), q(3, 1));
        assert_eq!(parse_z("-5/3").unwrap(), q(-5, 3));
        assert_eq!(parse_z("0.9").unwrap(), q(9, 10));
        assert_eq!(parse_z(" 1.25 ").unwrap(), q(5, 4));
        assert_eq!(parse_rational("0.5").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-7/8").unwrap(), Rational::new((-7).into(), 8.into()));
    }

    #[test]
    fn gaussian() {
        let i = CycloElem::zeta(4);
        assert_eq!(parse_z("2+i").unwrap(), q(2, 1) + i.clone());
        assert_eq!(parse_z("1/2 - 3/4i").unwrap(), q(1, 2) - q(3, 4) * i.clone());
        assert_eq!(parse_z("i*i").unwrap(), q(-1, 1));
        assert_eq!(parse_z("-i").unwrap(), -i);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(parse_z("zeta(8)^3").unwrap(), CycloElem::zeta_pow(8, 3));
        assert_eq!(parse_z("zeta(5)^-1").unwrap(), CycloElem::zeta_pow(5, -1));
        assert_eq!(parse_z("1 - 3*zeta(5)").unwrap(), q(1, 1) - q(3, 1) * CycloElem::zeta(5));
        assert_eq!(parse_z("zeta(8)/2").unwrap(), CycloElem::zeta(8) * q(1, 2));
        assert!(parse_z("(1+i)^2").unwrap_err().0.contains("position"));
        assert!(parse_z("2(zeta(3)+1)").unwrap() == q(2, 1) * (CycloElem::zeta(3) + CycloElem::one()));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "2+", "zeta(0)", "zeta(3", "x", "1/0", "3 4 )"] {
            assert!(parse_z(bad).is_err(), "{bad}");
        }
    }
}
