//! Recursive-descent parser for field elements written as arithmetic
//! expressions in integers and the generator names of a tower.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Int(lit.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::InvalidInput(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Elem> {
        let k = self.field;
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = k.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = k.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Elem> {
        let k = self.field;
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = k.mul(&acc, &self.unary()?);
            } else if self.eat('/') {
                acc = k.div(&acc, &self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Elem> {
        if self.eat('-') {
            let x = self.unary()?;
            return Ok(self.field.neg(&x));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return Err(Error::InvalidInput("exponent must be an integer".into()));
            };
            self.pos += 1;
            let e: i64 = n.try_into().map_err(|_| Error::InvalidInput("exponent too large".into()))?;
            return self.field.pow(&base, if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Elem> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.field.from_bigint(&n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.field
                    .lookup_name(&name)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown name {name:?} over {}", self.field)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let x = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::InvalidInput("missing ')'".into()));
                }
                Ok(x)
            }
            other => Err(Error::InvalidInput(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an element of `field`; characteristic-p fields reduce integers mod p.
pub fn parse_elem(field: &Field, s: &str) -> Result<Elem> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::InvalidInput("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, field };
    let x = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::InvalidInput(format!("trailing input in {s:?}")));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_powers() {
        let k = Field::rationals();
        assert_eq!(parse_elem(&k, "1 + 2*3^2").unwrap(), k.from_i64(19));
        assert_eq!(parse_elem(&k, "-2^2").unwrap(), k.from_i64(-4));
        assert_eq!(parse_elem(&k, "2^-1").unwrap(), parse_elem(&k, "1/2").unwrap());
        assert!(parse_elem(&k, "1/0").is_err());
        assert!(parse_elem(&k, "x").is_err());
        assert!(parse_elem(&k, "(1").is_err());
    }

    #[test]
    fn reduces_mod_p() {
        let k = Field::prime(7).unwrap();
        assert_eq!(parse_elem(&k, "10").unwrap(), k.from_i64(3));
        assert_eq!(parse_elem(&k, "1/3").unwrap(), k.from_i64(5));
    }
}
