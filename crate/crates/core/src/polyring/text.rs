//! Canonical text form: `x[1,2]*x[2,1]^2 - 3/2*x[1,1] + 5`.
//!
//! Output uses an ascii minus; the parser also accepts U+2212.

use super::{Monomial, MonomialOrder, PolyError, Polynomial, Rational};
use crate::grid::Vertex;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Write;

pub(super) fn format_polynomial(p: &Polynomial, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.sorted_terms(order).into_iter().enumerate() {
        let negative = c.is_negative();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        if m.is_one() {
            let _ = write!(out, "{abs}");
        } else if abs.is_one() {
            let _ = write!(out, "{m}");
        } else {
            let _ = write!(out, "{abs}*{m}");
        }
    }
    out
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or(self.src.len())
    }

    fn err(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn expect(&mut self, want: char) -> Result<(), PolyError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{want}`"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(self.err("expected digits"));
        }
        digits.parse().map_err(|_| self.err("invalid integer"))
    }

    fn rational(&mut self) -> Result<Rational, PolyError> {
        let num = self.integer()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn variable(&mut self) -> Result<(Vertex, u32), PolyError> {
        self.expect('x')?;
        self.expect('[')?;
        let i = self.small()?;
        self.expect(',')?;
        let j = self.small()?;
        self.expect(']')?;
        let e = if self.peek() == Some('^') {
            self.pos += 1;
            self.small()?
        } else {
            1
        };
        if i == 0 || j == 0 {
            return Err(self.err("variable indices must be positive"));
        }
        Ok((Vertex::new(i, j), e))
    }

    fn small(&mut self) -> Result<u32, PolyError> {
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| self.err("index out of range"))
    }

    fn term(&mut self) -> Result<(Monomial, Rational), PolyError> {
        let mut coeff = Rational::one();
        let mut pairs = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.rational()?,
                Some('x') => pairs.push(self.variable()?),
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_pairs(pairs), coeff))
    }

    fn polynomial(&mut self) -> Result<Polynomial, PolyError> {
        let mut p = Polynomial::zero();
        let mut first = true;
        loop {
            let mut sign = Rational::one();
            match self.peek() {
                Some('+') => {
                    self.bump();
                }
                Some('-') | Some('\u{2212}') => {
                    self.bump();
                    sign = -sign;
                }
                None if !first => break,
                _ if first => {}
                _ => return Err(self.err("expected `+` or `-`")),
            }
            let (m, c) = self.term()?;
            p.add_term(m, c * sign);
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(p)
    }
}

/// Parses the canonical text form.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, PolyError> {
    let mut parser = Parser::new(text);
    if parser.peek().is_none() {
        return Err(parser.err("empty input"));
    }
    parser.polynomial()
}
