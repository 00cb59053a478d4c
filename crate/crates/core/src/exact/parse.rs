//! Text grammar for univariate polynomials:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Rational literals such as `5/7` are ordinary divisions by a nonzero
//! constant. Division by a non-constant polynomial is rejected. All
//! identifiers in one expression must be the same symbol.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ExactError, QPoly, Rat};

/// Parses `text`; `default_var` names the variable when the text contains
/// none.
pub fn parse_poly(text: &str, default_var: &str) -> Result<QPoly, ExactError> {
    let mut parser = Parser {
        chars: text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        pos: 0,
        var: None,
        len: text.len(),
    };
    let poly = parser.expr()?;
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    let var = parser.var.unwrap_or_else(|| default_var.to_string());
    Ok(poly.with_var(var))
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    var: Option<String>,
    len: usize,
}

const PLACEHOLDER: &str = "_";

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(o, _)| o)
    }

    fn error(&self, message: &str) -> ExactError {
        ExactError::Parse {
            offset: self.offset(),
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<QPoly, ExactError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QPoly, ExactError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                if !rhs.is_constant() {
                    return Err(ExactError::Parse {
                        offset: at,
                        message: "division by a non-constant polynomial".into(),
                    });
                }
                let c = rhs.leading().cloned().unwrap_or_else(Rat::zero);
                if c.is_zero() {
                    return Err(ExactError::Parse {
                        offset: at,
                        message: "division by zero".into(),
                    });
                }
                acc = acc.scale(&c.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<QPoly, ExactError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QPoly, ExactError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn atom(&mut self) -> Result<QPoly, ExactError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(QPoly::constant(Rat::from_integer(n), PLACEHOLDER))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.offset();
                let mut name = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
                    name.push(c);
                    self.pos += 1;
                }
                match &self.var {
                    Some(v) if *v != name => Err(ExactError::Parse {
                        offset: start,
                        message: format!("second variable `{name}` (already using `{v}`)"),
                    }),
                    _ => {
                        self.var = Some(name.clone());
                        Ok(QPoly::monomial(Rat::from_integer(1.into()), 1, name))
                    }
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
