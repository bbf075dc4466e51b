//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := ("+" | "-") unary | power
//! power   := atom ("^" integer)?
//! atom    := integer | identifier | "(" expr ")"
//! ```
//!
//! Division is only by nonzero constants, so that printed rational
//! coefficients such as `1/2*x1` read back unchanged.

use std::fmt;

use coxgit::exact_algebra::{Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    NegativeExponent,
    ExponentTooLarge,
    DivisionByNonConstant,
    DivisionByZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::NegativeExponent => write!(f, "exponents must be non-negative"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
            ParseErrorKind::DivisionByNonConstant => {
                write!(f, "division is only allowed by nonzero constants")
            }
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let j = (i..chars.len()).find(|&j| !chars[j].is_ascii_digit()).unwrap_or(chars.len());
            let s: String = chars[i..j].iter().collect();
            column += j - i;
            i = j;
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let j = (i..chars.len())
                .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                .unwrap_or(chars.len());
            let s: String = chars[i..j].iter().collect();
            column += j - i;
            i = j;
            Tok::Ident(s)
        } else if "+-*/^()".contains(c) {
            column += 1;
            i += 1;
            Tok::Op(c)
        } else {
            return Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
            });
        };
        out.push(Token {
            tok,
            line: start.0,
            column: start.1,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, tok: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: tok.line,
            column: tok.column,
            kind,
        }
    }

    fn unexpected(&self, tok: &Token, wanted: &str) -> ParseError {
        let found = match &tok.tok {
            Tok::End => "end of input".to_string(),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Op(c) => format!("`{c}`"),
        };
        self.err(tok, ParseErrorKind::Syntax(format!("expected {wanted}, found {found}")))
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = self.peek().tok {
            self.bump();
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = self.peek().tok {
            self.bump();
            let at = self.peek().clone();
            let rhs = self.unary()?;
            if c == '*' {
                acc = acc.mul(&rhs);
                continue;
            }
            if rhs.is_zero() {
                return Err(self.err(&at, ParseErrorKind::DivisionByZero));
            }
            if rhs.degree() != Some(0) {
                return Err(self.err(&at, ParseErrorKind::DivisionByNonConstant));
            }
            let c = rhs.leading().map(|(_, c)| c.clone()).expect("nonzero");
            acc = acc.scale(&(Rational::from_integer(1.into()) / c));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().tok {
            Tok::Op('-') => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Tok::Int(ref n) => {
                let e = n.to_u32().ok_or_else(|| self.err(&t, ParseErrorKind::ExponentTooLarge))?;
                Ok(base.pow(e))
            }
            Tok::Op('-') => Err(self.err(&t, ParseErrorKind::NegativeExponent)),
            _ => Err(self.unexpected(&t, "a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(n) => Ok(Polynomial::constant(
                self.nvars(),
                Rational::from_integer(n.clone()),
            )),
            Tok::Ident(s) => match self.names.iter().position(|v| v == s) {
                Some(i) => Ok(Polynomial::var(self.nvars(), i)),
                None => Err(self.err(&t, ParseErrorKind::UnknownVariable(s.clone()))),
            },
            Tok::Op('(') => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::Op(')') {
                    return Err(self.unexpected(&close, "`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected(&t, "a number, variable or `(`")),
        }
    }
}

/// Parses `src` as a polynomial in the named variables.
pub fn parse_poly(src: &str, names: &[String]) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        tokens: tokenize(src)?,
        pos: 0,
        names,
    };
    let out = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.unexpected(&t, "an operator or end of input"));
    }
    Ok(out)
}

/// Prints in the grammar accepted by [`parse_poly`].
pub fn print_poly(p: &Polynomial, names: &[String]) -> String {
    p.render(names)
}

/// Whether `s` is a valid variable identifier.
pub fn is_identifier(s: &str) -> bool {
    let mut it = s.chars();
    matches!(it.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && it.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
