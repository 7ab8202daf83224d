//! Parser for the canonical rational-function text form.

use alloc::string::{String, ToString};

use num_bigint::BigInt;

use super::poly::Poly;
use super::rat::Rat;
use super::ratfun::RatFun;
use crate::error::{Error, Result};

/// Parses expressions over `+ - * / ^ ( )`, integer literals and variables
/// `prefix1 .. prefixN`.
pub fn parse_ratfun(text: &str, prefix: &str, nvars: usize) -> Result<RatFun> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        prefix: prefix.as_bytes(),
        nvars,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    prefix: &'a [u8],
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(alloc::format!("{} at offset {}", what, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).ok_or(Error::DivisionByZero)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits()?;
            let e: u32 = e.parse().map_err(|_| self.err("bad exponent"))?;
            let mut acc = RatFun::one(self.nvars);
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(core::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string())
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RatFun::constant(self.nvars, Rat::from_integer(n)))
            }
            Some(_) if self.s[self.pos..].starts_with(self.prefix) => {
                self.pos += self.prefix.len();
                let d = self.digits()?;
                let i: usize = d.parse().map_err(|_| self.err("bad variable index"))?;
                if i == 0 || i > self.nvars {
                    return Err(self.err("variable index out of range"));
                }
                Ok(RatFun::from_poly(Poly::var(self.nvars, i - 1)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn round_trips_canonical_strings() {
        for s in [
            "0",
            "1",
            "-1/x1",
            "1/(x1+1)",
            "(x1+2)/(x1+1)",
            "(x1^2+2*x1)/(x1^2+2*x1+1)",
            "1/2*x1",
            "-3/4",
        ] {
            assert_eq!(parse_ratfun(s, "x", 1).unwrap().to_string(), s);
        }
        let f = parse_ratfun("(x1*x2-1)/(x2+3)", "x", 2).unwrap();
        assert_eq!(parse_ratfun(&f.to_string(), "x", 2).unwrap(), f);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfun("x3", "x", 2).is_err());
        assert!(parse_ratfun("(x1", "x", 1).is_err());
        assert!(parse_ratfun("1/0", "x", 1).is_err());
        assert!(parse_ratfun("m1", "x", 1).is_err());
    }
}
