//! Text grammar for polynomials.
//!
//! ```text
//! expr   := [+|-] term ((+|-) term)*
//! term   := factor ([*] factor)*        -- `*` may be omitted between factors
//! factor := [-] atom [^ integer]
//! atom   := integer [/ integer] | identifier | ( expr )
//! ```

use num_bigint::BigInt;

use super::coeff::Coeff;
use super::context::Ring;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str) -> Result<Lexer> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Int(s.parse().unwrap()), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Parse {
                    line: 1,
                    column: col,
                    message: format!("unexpected character `{}`", other),
                })
            }
        };
        toks.push((t, col));
        i += 1;
    }
    Ok(Lexer { toks })
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: 1, column: self.col(), message: message.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                neg = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| Error::Parse {
                        line: 1,
                        column: self.col(),
                        message: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return self.err("expected a nonnegative integer exponent");
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.bump() {
            Some(Tok::Int(n)) => {
                let mut c = Coeff::from_bigint(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) if d != BigInt::from(0) => {
                            c = &c / &Coeff::from_bigint(d);
                        }
                        _ => {
                            self.pos -= 1;
                            return self.err("expected a nonzero integer denominator");
                        }
                    }
                }
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => match self.ring.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => {
                    self.pos -= 1;
                    self.err(format!("unknown variable `{}`", name))
                }
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err("expected a number, variable or `(`")
            }
        }
    }
}

/// Parses `src` as a polynomial in `ring` (degrevlex term order).
pub fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial> {
    let lexer = lex(src)?;
    let mut p = Parser {
        ring,
        toks: lexer.toks,
        pos: 0,
        end_col: src.chars().count() + 1,
    };
    if p.toks.is_empty() {
        return p.err("empty polynomial");
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VariableContext;

    fn ring() -> Ring {
        VariableContext::standard(vec!["X", "Y", "Z", "T1"]).unwrap()
    }

    #[test]
    fn grammar_features() {
        let r = ring();
        let a = parse_polynomial(&r, "X*Y - Z^2").unwrap();
        let b = parse_polynomial(&r, "X Y - Z Z").unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial(&r, "(X+Y)(X-Y)").unwrap();
        assert_eq!(c, parse_polynomial(&r, "X^2 - Y^2").unwrap());
        let d = parse_polynomial(&r, "3/2 X T1 - 1/2*X*T1").unwrap();
        assert_eq!(d, parse_polynomial(&r, "X*T1").unwrap());
        assert_eq!(parse_polynomial(&r, "-(X)^2").unwrap().to_string(), "-X^2");
        assert_eq!(parse_polynomial(&r, "2X*-Y").unwrap().to_string(), "-2*X*Y");
        assert!(parse_polynomial(&r, "0").unwrap().is_zero());
    }

    #[test]
    fn error_positions() {
        let r = ring();
        match parse_polynomial(&r, "X + W") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{:?}", other),
        }
        match parse_polynomial(&r, "X + ") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{:?}", other),
        }
        assert!(parse_polynomial(&r, "X^Y").is_err());
        assert!(parse_polynomial(&r, "(X").is_err());
        assert!(parse_polynomial(&r, "X $ Y").is_err());
        assert!(parse_polynomial(&r, "1/0").is_err());
        assert!(parse_polynomial(&r, "").is_err());
    }
}
