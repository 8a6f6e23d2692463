//! Parser for the plain-text polynomial syntax used by the CLI.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := coeff ['*' factor ('*' factor)*]
//!         | factor ('*' factor)*
//! factor := var ['^' nat]
//! var    := 'x' '[' nat ',' nat ']' | 't'
//! coeff  := integer ['/' integer]
//! ```
//!
//! A bare `coeff` term covers constants, so printing and parsing round-trip
//! exactly. Errors carry one-based line/column positions.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::vars::{Ambient, VarRef};
use std::collections::BTreeMap;

pub fn parse_polynomial(text: &str, ambient: Ambient) -> Result<Polynomial> {
    let mut p = Parser::new(text, ambient);
    let poly = p.poly()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing input after polynomial"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: u32,
    col: u32,
    ambient: Ambient,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ambient: Ambient) -> Self {
        Parser { src: text.as_bytes(), pos: 0, line: 1, col: 1, ambient }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, message: message.into() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.bump();
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, what: &str) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        if !matches!(self.peek(), Some(b'0'..=b'9')) {
            return Err(self.error("expected a number"));
        }
        let mut v: u64 = 0;
        while let Some(c @ b'0'..=b'9') = self.peek() {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or_else(|| self.error("number too large"))?;
            self.bump();
        }
        Ok(v)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.peek() == Some(b'-');
        if neg {
            self.bump();
        }
        let mag = self.nat()?;
        let mag = i64::try_from(mag).map_err(|_| self.error("number too large"))?;
        Ok(if neg { -mag } else { mag })
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.bump();
            negate = true;
        }
        self.term_into(&mut terms, negate)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    self.term_into(&mut terms, false)?;
                }
                Some(b'-') => {
                    self.bump();
                    self.term_into(&mut terms, true)?;
                }
                _ => break,
            }
        }
        Ok(Polynomial::from_map(self.ambient, terms))
    }

    fn term_into(&mut self, acc: &mut BTreeMap<Monomial, Scalar>, negate: bool) -> Result<()> {
        self.skip_ws();
        let mut coeff = self.ambient.field.one();
        let mut mono = Monomial::one();
        let mut saw_factor = false;

        match self.peek() {
            Some(b'0'..=b'9') => {
                coeff = self.coeff()?;
                saw_factor = true;
                if self.eat(b'*') {
                    mono = mono.mul(&self.factor()?);
                    while self.eat(b'*') {
                        mono = mono.mul(&self.factor()?);
                    }
                }
            }
            Some(b'x') | Some(b't') => {
                mono = mono.mul(&self.factor()?);
                saw_factor = true;
                while self.eat(b'*') {
                    mono = mono.mul(&self.factor()?);
                }
            }
            _ => {}
        }
        if !saw_factor {
            return Err(self.error("expected a term"));
        }
        if negate {
            coeff = coeff.neg();
        }
        if !coeff.is_zero() {
            match acc.get_mut(&mono) {
                Some(slot) => {
                    *slot = slot.add(&coeff);
                    if slot.is_zero() {
                        acc.remove(&mono);
                    }
                }
                None => {
                    acc.insert(mono, coeff);
                }
            }
        }
        Ok(())
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let line = self.line;
        let col = self.col;
        let num = self.integer()?;
        if self.eat(b'/') {
            let den = self.integer()?;
            self.ambient
                .field
                .from_ratio(num, den)
                .map_err(|e| Error::Parse { line, col, message: e.to_string() })
        } else {
            Ok(self.ambient.field.from_i64(num))
        }
    }

    fn factor(&mut self) -> Result<Monomial> {
        let v = self.var()?;
        let exp = if self.eat(b'^') {
            let e = self.nat()?;
            u32::try_from(e).map_err(|_| self.error("exponent too large"))?
        } else {
            1
        };
        Ok(Monomial::from_pairs([(v, exp)]))
    }

    fn var(&mut self) -> Result<VarRef> {
        self.skip_ws();
        match self.peek() {
            Some(b't') => {
                self.bump();
                Ok(VarRef::Elim)
            }
            Some(b'x') => {
                let line = self.line;
                let col = self.col;
                self.bump();
                self.expect(b'[', "'[' after x")?;
                let row = self.nat()?;
                self.expect(b',', "',' between indices")?;
                let col_idx = self.nat()?;
                self.expect(b']', "']' after indices")?;
                let (row, col_idx) = (
                    u16::try_from(row).map_err(|_| self.error("row index too large"))?,
                    u16::try_from(col_idx).map_err(|_| self.error("column index too large"))?,
                );
                let v = VarRef::matrix(row, col_idx);
                v.check_in(self.ambient.shape)
                    .map_err(|e| Error::Parse { line, col, message: e.to_string() })?;
                Ok(v)
            }
            _ => Err(self.error("expected a variable")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::order::TermOrder;
    use crate::vars::Shape;

    fn amb(m: u16, n: u16) -> Ambient {
        Ambient::new(Shape::new(m, n).unwrap(), FieldSpec::Rationals)
    }

    #[test]
    fn test_permanent_round_trip() {
        let a = amb(2, 2);
        let f = parse_polynomial("x[1,1]*x[2,2] + x[2,1]*x[1,2]", a).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.render(TermOrder::DiagLex), "x[1,1]*x[2,2] + x[1,2]*x[2,1]");
    }

    #[test]
    fn test_rational_coefficient_and_power() {
        let a = amb(2, 2);
        let f = parse_polynomial("3/2*x[1,1]^2", a).unwrap();
        assert_eq!(f.render(TermOrder::DiagLex), "3/2*x[1,1]^2");
    }

    #[test]
    fn test_whitespace_and_signs() {
        let a = amb(2, 2);
        let f = parse_polynomial("  - x[1,1]\n + 2 * x[2,2] - 5 ", a).unwrap();
        assert_eq!(f.render(TermOrder::DiagLex), "2*x[2,2] - x[1,1] - 5");
    }

    #[test]
    fn test_constants_and_zero() {
        let a = amb(2, 2);
        assert!(parse_polynomial("0", a).unwrap().is_zero());
        let c = parse_polynomial("-7/3", a).unwrap();
        assert_eq!(c.render(TermOrder::DiagLex), "-7/3");
        let cancelled = parse_polynomial("x[1,1] - x[1,1]", a).unwrap();
        assert!(cancelled.is_zero());
    }

    #[test]
    fn test_index_out_of_range_carries_position() {
        let a = amb(2, 2);
        let err = parse_polynomial("x[1,1] + x[3,1]", a).unwrap_err();
        match err {
            Error::Parse { line, col, message } => {
                assert_eq!(line, 1);
                assert_eq!(col, 10);
                assert!(message.contains("x[3,1]"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn test_syntax_errors() {
        let a = amb(2, 2);
        assert!(matches!(
            parse_polynomial("x[1,1] / 2", a),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_polynomial("x[1 1]", a), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("", a), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x[1,1] +", a), Err(Error::Parse { .. })));
    }

    #[test]
    fn test_elim_variable_parses() {
        let a = amb(2, 2);
        let f = parse_polynomial("1 - t*x[1,1]", a).unwrap();
        assert!(f.uses_elim());
        assert_eq!(f.render(TermOrder::DiagLex.elim_extension()), "-x[1,1]*t + 1");
    }

    #[test]
    fn test_prime_field_coefficients() {
        let a = Ambient::new(Shape::new(2, 2).unwrap(), FieldSpec::prime_field(5).unwrap());
        let f = parse_polynomial("7*x[1,1] + 3/2", a).unwrap();
        // 7 = 2 and 3/2 = 3*3 = 4 mod 5
        assert_eq!(f.render(TermOrder::DiagLex), "2*x[1,1] + 4");
    }

    #[test]
    fn test_repeated_factors_merge() {
        let a = amb(2, 2);
        let f = parse_polynomial("x[1,1]*x[1,1]^2", a).unwrap();
        assert_eq!(f.render(TermOrder::DiagLex), "x[1,1]^3");
    }
}
