//! Recursive-descent parser for rational-function expressions.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::ratfield::{RatFunc, Rational, Var};

/// Parse failure, with the byte offset of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character '{ch}' at byte {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("unknown variable '{name}' at byte {pos} (expected one of a, b, c, z, n)")]
    UnknownVariable { pos: usize, name: String },
    #[error("expected {expected} at byte {pos}, found {found}")]
    UnexpectedToken { pos: usize, expected: &'static str, found: String },
    #[error("division by zero at byte {pos}")]
    DivisionByZero { pos: usize },
    #[error("exponent at byte {pos} does not fit in 31 bits")]
    ExponentOverflow { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Var(v) => format!("variable '{}'", v.name()),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        match ch {
            c if c.is_whitespace() => {
                it.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        it.next();
                    } else {
                        break;
                    }
                }
                let n = digits.parse::<BigInt>().expect("digit run parses");
                out.push((pos, Tok::Int(n)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        it.next();
                    } else {
                        break;
                    }
                }
                match Var::from_name(&name) {
                    Some(v) => out.push((pos, Tok::Var(v))),
                    None => return Err(ParseError::UnknownVariable { pos, name }),
                }
            }
            '+' => {
                it.next();
                out.push((pos, Tok::Plus));
            }
            '-' => {
                it.next();
                out.push((pos, Tok::Minus));
            }
            '*' => {
                it.next();
                out.push((pos, Tok::Star));
            }
            '/' => {
                it.next();
                out.push((pos, Tok::Slash));
            }
            '^' => {
                it.next();
                out.push((pos, Tok::Caret));
            }
            '(' => {
                it.next();
                out.push((pos, Tok::LParen));
            }
            ')' => {
                it.next();
                out.push((pos, Tok::RParen));
            }
            _ => return Err(ParseError::UnexpectedChar { pos, ch }),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.at)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.at).cloned();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some((pos, tok)) => ParseError::UnexpectedToken {
                pos: *pos,
                expected,
                found: tok.describe(),
            },
            None => ParseError::UnexpectedToken {
                pos: self.end,
                expected,
                found: "end of input".into(),
            },
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.factor()?;
        while let Some((pos, tok)) = self.peek() {
            let pos = *pos;
            match tok {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|_| ParseError::DivisionByZero { pos })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc, ParseError> {
        if let Some((_, Tok::Minus)) = self.peek() {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if let Some((_, Tok::Caret)) = self.peek() {
            let (caret_pos, _) = self.bump().unwrap();
            let negative = matches!(self.peek(), Some((_, Tok::Minus)));
            if negative {
                self.bump();
            }
            let exp = match self.bump() {
                Some((pos, Tok::Int(n))) => n
                    .to_i32()
                    .ok_or(ParseError::ExponentOverflow { pos })?,
                _ => {
                    self.at -= 1;
                    return Err(self.unexpected("integer exponent"));
                }
            };
            let exp = if negative { -exp } else { exp };
            return base
                .pow(exp)
                .map_err(|_| ParseError::DivisionByZero { pos: caret_pos });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Some((_, Tok::Int(_))) => {
                let (_, tok) = self.bump().unwrap();
                match tok {
                    Tok::Int(n) => Ok(RatFunc::from_rational(Rational::from_integer(n))),
                    _ => unreachable!(),
                }
            }
            Some((_, Tok::Var(v))) => {
                let v = *v;
                self.bump();
                Ok(RatFunc::var(v))
            }
            Some((_, Tok::LParen)) => {
                self.bump();
                let inner = self.expr()?;
                match self.peek() {
                    Some((_, Tok::RParen)) => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => Err(self.unexpected("')'")),
                }
            }
            _ => Err(self.unexpected("integer, variable, or '('")),
        }
    }
}

/// Parse a complete expression into a reduced rational function.
pub fn parse_expr(src: &str) -> Result<RatFunc, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let value = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of input"));
    }
    Ok(value)
}
