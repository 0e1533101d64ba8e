// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! ASCII text notation for ordinals.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := 'w' ['^' factor] ['*' nat] | nat | 'e0'
//! factor := nat | 'w' | '(' expr ')'
//! ```
//!
//! Whitespace between tokens is ignored. Sums need not be canonical: they are
//! evaluated with ordinal addition, so `1 + w` reads as `w` and `w + w` as
//! `w*2`. Rendering always produces the canonical form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::ordinal::{Ordinal, OrdinalError};

const MAX_NESTING: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NotationError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("at byte {position}: {source}")]
    Domain {
        position: usize,
        source: OrdinalError,
    },
}

impl NotationError {
    pub fn position(&self) -> usize {
        match self {
            NotationError::Syntax(e) => e.position,
            NotationError::Domain { position, .. } => *position,
        }
    }
}

pub fn parse(text: &str) -> Result<Ordinal, NotationError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        nesting: 0,
    };
    let value = parser.expr(false)?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.syntax("expected '+' or end of input"));
    }
    Ok(value)
}

pub fn render(a: &Ordinal) -> String {
    a.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nesting: usize,
}

impl Parser<'_> {
    fn syntax(&self, message: impl Into<String>) -> NotationError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
        .into()
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // `nested` is set inside exponents, where e0 cannot appear.
    fn expr(&mut self, nested: bool) -> Result<Ordinal, NotationError> {
        let mut acc = self.term(nested)?;
        while self.eat(b'+') {
            let next = self.term(nested)?;
            acc = &acc + &next;
        }
        Ok(acc)
    }

    fn term(&mut self, nested: bool) -> Result<Ordinal, NotationError> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.syntax("unexpected end of input, expected a term")),
        };
        match self.src[start] {
            b'w' => {
                self.pos += 1;
                let exponent = if self.eat(b'^') {
                    self.factor()?
                } else {
                    Ordinal::one()
                };
                let coefficient = if self.eat(b'*') {
                    self.nat()?
                } else {
                    BigUint::one()
                };
                Ordinal::monomial(exponent, coefficient).map_err(|source| NotationError::Domain {
                    position: start,
                    source,
                })
            }
            b'e' => {
                self.pos += 1;
                if self.src.get(self.pos) != Some(&b'0') {
                    return Err(self.syntax("expected 'e0'"));
                }
                self.pos += 1;
                if nested {
                    return Err(too_large(start, "omega_pow"));
                }
                if self.peek() == Some(b'*') {
                    return Err(too_large(self.pos, "product"));
                }
                Ok(Ordinal::epsilon_zero())
            }
            b'0'..=b'9' => Ok(Ordinal::from_nat(self.nat()?)),
            _ => Err(self.syntax("expected 'w', 'e0' or a numeral")),
        }
    }

    fn factor(&mut self) -> Result<Ordinal, NotationError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(b'0'..=b'9') => Ok(Ordinal::from_nat(self.nat()?)),
            Some(b'(') => {
                if self.nesting == MAX_NESTING {
                    return Err(self.syntax("parentheses nested too deeply"));
                }
                self.pos += 1;
                self.nesting += 1;
                let inner = self.expr(true)?;
                self.nesting -= 1;
                if !self.eat(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'e') => {
                let at = self.pos;
                Err(too_large(at, "omega_pow"))
            }
            _ => Err(self.syntax("expected a numeral, 'w' or '(' after '^'")),
        }
    }

    fn nat(&mut self) -> Result<BigUint, NotationError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a numeral"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty decimal digits"))
    }
}

fn too_large(position: usize, op: &'static str) -> NotationError {
    NotationError::Domain {
        position,
        source: OrdinalError::ArgumentTooLarge { op },
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(terms) = self.terms() else {
            return f.write_str("e0");
        };
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let e = t.exponent();
            if e.is_zero() {
                write!(f, "{}", t.coefficient())?;
                continue;
            }
            f.write_str("w")?;
            if e.is_finite() {
                if !e.to_nat().expect("finite").is_one() {
                    write!(f, "^{e}")?;
                }
            } else if *e == Ordinal::omega() {
                f.write_str("^w")?;
            } else {
                write!(f, "^({e})")?;
            }
            if !t.coefficient().is_one() {
                write!(f, "*{}", t.coefficient())?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = NotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
