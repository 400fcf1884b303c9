//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      division only by constants
//! unary  := '-' unary | power
//! power  := atom ('^' int)*
//! atom   := int | name | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{Polynomial, Ring};
use crate::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                let Some(c) = d.as_constant() else {
                    self.pos = at;
                    return self.err("division by a non-constant");
                };
                if c.is_zero() {
                    self.pos = at;
                    return self.err("division by zero");
                }
                acc = acc.div_constant(&c)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let mut base = self.atom()?;
        while self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let n = self.integer()?;
            let e: u32 = match u32::try_from(&n) {
                Ok(e) if e > 0 => e,
                _ => {
                    self.pos = at;
                    return self.err("exponent must be a positive integer");
                }
            };
            base = base.pow(e);
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
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
                if let Some(i) = self.ring.var_index(name) {
                    return Ok(self.ring.var(i));
                }
                let field = self.ring.field();
                if let Some(k) = field.params().iter().position(|p| p == name) {
                    return Ok(Polynomial::constant(self.ring, field.param(k)?));
                }
                Err(Error::UnknownVariable(name.into()))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into a canonical polynomial of `ring`.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;

    fn ring() -> Ring {
        Ring::grevlex(Field::Rationals, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn cusp_equation() {
        let p = parse_polynomial("y^2 - x^3", &ring()).unwrap();
        assert_eq!(p.to_string(), "-x^3 + y^2");
        assert!(parse_polynomial("0", &ring()).unwrap().is_zero());
    }

    #[test]
    fn binomial() {
        assert_eq!(parse_polynomial("(x + y)^2", &ring()).unwrap().to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_polynomial("1/2*x - 3/4", &ring()).unwrap();
        assert_eq!(p.to_string(), "1/2*x - 3/4");
        assert_eq!(parse_polynomial(&p.to_string(), &ring()).unwrap(), p);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_polynomial("x + w", &ring()), Err(Error::UnknownVariable("w".into())));
        assert!(matches!(parse_polynomial("x +", &ring()), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_polynomial("x^0", &ring()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x/y", &ring()), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_polynomial("x y", &ring()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/0", &ring()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn function_field_round_trip() {
        let k = Field::fractions(Field::Rationals, vec!["s".into(), "u".into()]).unwrap();
        let r = Ring::grevlex(k, &["x", "y"]).unwrap();
        let p = parse_polynomial("(s^2 - u)/(s + 1)*x^2 - u*y + 1/s", &r).unwrap();
        let printed = p.to_string();
        assert_eq!(parse_polynomial(&printed, &r).unwrap(), p, "{printed}");
    }

    fn poly_text() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (0i64..20).prop_map(|n| n.to_string()),
            Just("x".to_string()),
            Just("y".to_string()),
            Just("z".to_string()),
            (1i64..9, 1i64..9).prop_map(|(a, b)| format!("{a}/{b}")),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
                (inner, 1u32..3).prop_map(|(a, e)| format!("({a})^{e}")),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(text in poly_text()) {
            let r = ring();
            let p = parse_polynomial(&text, &r).unwrap();
            prop_assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
        }
    }
}
