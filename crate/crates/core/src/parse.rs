//! Expression parsing for polynomial input.
//!
//! Grammar (no implicit multiplication, unary minus only at the head of
//! an expression):
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nonneg-int)?
//! base     := identifier | rational | '(' expr ')'
//! rational := int ('/' posint)?
//! ```
//!
//! The printer in [`crate::ring::Poly`] emits exactly this grammar, so
//! parse-print-parse is a fixed point.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::ring::{Poly, VarTable};

/// Exponents above this bound are rejected at parse time.
const MAX_EXPONENT: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character '{found}' at position {position}")]
    UnexpectedChar { position: usize, found: char },
    #[error("expected {expected} at position {position}, found '{found}'")]
    UnexpectedToken {
        position: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("undeclared identifier '{name}' at position {position}")]
    UndeclaredIdentifier { position: usize, name: String },
    #[error("exponent at position {position} must be a non-negative integer up to {MAX_EXPONENT}")]
    ExponentOutOfRange { position: usize },
    #[error("denominator at position {position} must be a positive integer")]
    ZeroDenominator { position: usize },
    #[error("trailing input at position {position}")]
    TrailingInput { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Int(BigInt),
    Ident(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Int(v) => v.to_string(),
            Tok::Ident(s) => s.clone(),
        }
    }
}

/// Tokens tagged with their 1-based character position.
fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, pos));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, pos));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, pos));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("digit run")), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            }
            other => {
                return Err(ParseError::UnexpectedChar {
                    position: pos,
                    found: other,
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Tok, usize)>,
    cursor: usize,
    table: &'a Arc<VarTable>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.tokens.get(self.cursor)
    }

    fn advance(&mut self) -> Option<(Tok, usize)> {
        let t = self.tokens.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|(t, _)| t == tok).unwrap_or(false) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        match self.advance() {
            Some((t, _)) if t == tok => Ok(()),
            Some((t, pos)) => Err(ParseError::UnexpectedToken {
                position: pos,
                found: t.describe(),
                expected,
            }),
            None => Err(ParseError::UnexpectedEnd { expected }),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let negate = self.eat(&Tok::Minus);
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        match self.advance() {
            Some((Tok::Int(v), pos)) => {
                let e = u64::try_from(&v)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or(ParseError::ExponentOutOfRange { position: pos })?;
                Ok(base.pow(e))
            }
            Some((_, pos)) => Err(ParseError::ExponentOutOfRange { position: pos }),
            None => Err(ParseError::UnexpectedEnd {
                expected: "exponent",
            }),
        }
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.advance() {
            Some((Tok::Ident(name), pos)) => match self.table.resolve(&name) {
                Ok(sym) => Ok(Poly::sym(self.table, sym)),
                Err(_) => Err(ParseError::UndeclaredIdentifier {
                    position: pos,
                    name,
                }),
            },
            Some((Tok::Int(numer), _)) => {
                if self.eat(&Tok::Slash) {
                    match self.advance() {
                        Some((Tok::Int(denom), pos)) => {
                            if denom.is_zero() {
                                return Err(ParseError::ZeroDenominator { position: pos });
                            }
                            Ok(Poly::constant(self.table, BigRational::new(numer, denom)))
                        }
                        Some((t, pos)) => Err(ParseError::UnexpectedToken {
                            position: pos,
                            found: t.describe(),
                            expected: "denominator",
                        }),
                        None => Err(ParseError::UnexpectedEnd {
                            expected: "denominator",
                        }),
                    }
                } else {
                    Ok(Poly::constant(self.table, BigRational::from_integer(numer)))
                }
            }
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            Some((t, pos)) => Err(ParseError::UnexpectedToken {
                position: pos,
                found: t.describe(),
                expected: "identifier, number, or parenthesized expression",
            }),
            None => Err(ParseError::UnexpectedEnd {
                expected: "expression",
            }),
        }
    }
}

/// Parses `src` into a canonical polynomial over `table`.
pub fn parse_expression(src: &str, table: &Arc<VarTable>) -> Result<Poly, ParseError> {
    let tokens = lex(src)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        table,
    };
    let poly = parser.expr()?;
    if let Some((t, pos)) = parser.peek() {
        let _ = t;
        return Err(ParseError::TrailingInput { position: *pos });
    }
    Ok(poly)
}
