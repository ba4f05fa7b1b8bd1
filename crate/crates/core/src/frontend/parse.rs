//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | VAR | '(' expr ')'
//! VAR    := 'u' INT | 'u^' INT
//! ```
//!
//! Juxtaposition is not multiplication: `2u1` is rejected.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Poly, Scalar};

/// Largest exponent accepted in `^`.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
    #[error("implicit multiplication is not allowed; insert '*' before {0}")]
    ImplicitMultiplication(String),
    #[error("variable u{index} is out of range for dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },
    #[error("variables are numbered from u1")]
    ZeroVariableIndex,
    #[error("missing variable index after 'u'")]
    MissingVariableIndex,
    #[error("negative exponents are not allowed")]
    NegativeExponent,
    #[error("exponent must be a non-negative integer literal")]
    NonLiteralExponent,
    #[error("exponent exceeds the maximum of {MAX_EXPONENT}")]
    ExponentTooLarge,
    #[error("chained exponents are ambiguous; use parentheses")]
    ChainedExponent,
    #[error("division by zero in rational literal")]
    ZeroDenominator,
    #[error("'/' is only allowed inside a rational literal p/q")]
    MisplacedSlash,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Var(i) => format!("variable u{i}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut k = 0;
    let err = |line, column, kind| ParseError { line, column, kind };
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            k += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            column += k - start;
            out.push(Spanned {
                tok: Tok::Int(digits.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c == 'u' {
            k += 1;
            column += 1;
            // `u^3` is the superscript spelling of `u3`.
            if k < chars.len()
                && chars[k] == '^'
                && chars.get(k + 1).is_some_and(|d| d.is_ascii_digit())
            {
                k += 1;
                column += 1;
            }
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            if start == k {
                return Err(err(l0, c0, ParseErrorKind::MissingVariableIndex));
            }
            let digits: String = chars[start..k].iter().collect();
            column += k - start;
            let index: usize = digits.parse().map_err(|_| {
                err(
                    l0,
                    c0,
                    ParseErrorKind::VariableOutOfRange {
                        index: usize::MAX,
                        dim: 0,
                    },
                )
            })?;
            if index == 0 {
                return Err(err(l0, c0, ParseErrorKind::ZeroVariableIndex));
            }
            out.push(Spanned {
                tok: Tok::Var(index),
                line: l0,
                column: c0,
            });
            continue;
        }
        return Err(err(l0, c0, ParseErrorKind::UnexpectedChar(c)));
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, at: &Spanned, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            line: at.line,
            column: at.column,
            kind,
        })
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc += &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let next = self.peek().clone();
            match next.tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Int(_) | Tok::Var(_) | Tok::LParen => {
                    return self.fail(
                        &next,
                        ParseErrorKind::ImplicitMultiplication(next.tok.describe()),
                    );
                }
                Tok::Slash => return self.fail(&next, ParseErrorKind::MisplacedSlash),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.bump();
        let e = match at.tok {
            Tok::Int(ref n) => n.clone(),
            Tok::Minus => return self.fail(&at, ParseErrorKind::NegativeExponent),
            _ => return self.fail(&at, ParseErrorKind::NonLiteralExponent),
        };
        match self.peek().tok {
            Tok::Slash => {
                let t = self.peek().clone();
                return self.fail(&t, ParseErrorKind::NonLiteralExponent);
            }
            Tok::Caret => {
                let t = self.peek().clone();
                return self.fail(&t, ParseErrorKind::ChainedExponent);
            }
            _ => {}
        }
        let e: u32 = match u32::try_from(&e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return self.fail(&at, ParseErrorKind::ExponentTooLarge),
        };
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let at = self.bump();
        match at.tok {
            Tok::Int(ref num) => {
                let num = num.clone();
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let dt = self.bump();
                    let Tok::Int(den) = dt.tok.clone() else {
                        return self.fail(
                            &dt,
                            ParseErrorKind::Unexpected {
                                expected: "integer denominator",
                                found: dt.tok.describe(),
                            },
                        );
                    };
                    if den.is_zero() {
                        return self.fail(&dt, ParseErrorKind::ZeroDenominator);
                    }
                    Ok(Poly::constant(self.dim, Scalar::new(num, den)))
                } else {
                    Ok(Poly::constant(self.dim, Scalar::from_integer(num)))
                }
            }
            Tok::Var(index) => {
                if index > self.dim {
                    return self.fail(
                        &at,
                        ParseErrorKind::VariableOutOfRange {
                            index,
                            dim: self.dim,
                        },
                    );
                }
                Ok(Poly::var(self.dim, index - 1))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return self.fail(
                        &close,
                        ParseErrorKind::Unexpected {
                            expected: "')'",
                            found: close.tok.describe(),
                        },
                    );
                }
                Ok(inner)
            }
            ref other => self.fail(
                &at,
                ParseErrorKind::Unexpected {
                    expected: "number, variable or '('",
                    found: other.describe(),
                },
            ),
        }
    }
}

/// Parses a polynomial in `u1..u{dim}`.
pub fn parse_poly(src: &str, dim: usize) -> Result<Poly, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, dim };
    let out = p.expr()?;
    let end = p.peek().clone();
    match end.tok {
        Tok::End => Ok(out),
        Tok::RParen => p.fail(
            &end,
            ParseErrorKind::Unexpected {
                expected: "end of input",
                found: end.tok.describe(),
            },
        ),
        _ => p.fail(
            &end,
            ParseErrorKind::Unexpected {
                expected: "operator",
                found: end.tok.describe(),
            },
        ),
    }
}
