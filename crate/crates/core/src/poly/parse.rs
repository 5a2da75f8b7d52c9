//! Text grammar for polynomials:
//!
//! ```text
//! poly   ::= ['+'|'-'] term { ('+'|'-') term }
//! term   ::= coeff [ {'*'} factor { '*' factor } ] | factor { '*' factor }
//! factor ::= var ['^' uint]
//! coeff  ::= uint ['/' uint]
//! ```
//!
//! Whitespace is insignificant. Variable names are mapped positionally.

use num_bigint::BigInt;
use num_traits::One;

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::Field;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an unsigned integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return None,
        }
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

/// Parses `text` as a polynomial in the variables `vars` over `field`.
pub fn parse<S: AsRef<str>>(text: &str, vars: &[S], field: &Field) -> Result<Polynomial> {
    let nvars = vars.len();
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut poly = Polynomial::zero(field, nvars);
    let mut first = true;
    loop {
        let negative = match cur.peek() {
            None if first => return cur.error("empty polynomial"),
            None => break,
            Some(b'-') => {
                cur.pos += 1;
                true
            }
            Some(b'+') => {
                cur.pos += 1;
                false
            }
            Some(_) if first => false,
            Some(c) => return cur.error(format!("expected '+' or '-', found '{}'", c as char)),
        };
        first = false;

        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        let mut has_coeff = false;
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            num = cur.uint()?;
            if cur.eat(b'/') {
                den = cur.uint()?;
            }
            has_coeff = true;
        }
        let mut exps = vec![0u16; nvars];
        let mut factors = 0;
        loop {
            let mut stars = 0;
            while cur.eat(b'*') {
                stars += 1;
            }
            let at = cur.pos;
            match cur.ident() {
                Some(name) => {
                    if factors > 0 && stars == 0 {
                        cur.pos = at;
                        return cur.error("expected '*' between factors");
                    }
                    let idx = vars
                        .iter()
                        .position(|v| v.as_ref() == name)
                        .ok_or(Error::UnknownVariable(name))?;
                    let mut e = 1u32;
                    if cur.eat(b'^') {
                        let v = cur.uint()?;
                        e = u32::try_from(v).or_else(|_| cur.error("exponent too large"))?;
                    }
                    let total = exps[idx] as u32 + e;
                    exps[idx] = u16::try_from(total).or_else(|_| cur.error("exponent too large"))?;
                    factors += 1;
                }
                None if stars > 0 => return cur.error("expected a variable after '*'"),
                None => break,
            }
        }
        if !has_coeff && factors == 0 {
            return cur.error("expected a term");
        }
        let mut c = field.from_fraction(&num, &den).or_else(|_| cur.error("zero denominator"))?;
        if negative {
            c = field.neg(&c);
        }
        poly = &poly + &Polynomial::from_terms(field, nvars, [(Monomial::new(&exps), c)]);
    }
    Ok(poly)
}
