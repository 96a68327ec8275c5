//! Surface syntax for ring elements: a small recursive-descent parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers are resolved against a presentation only when the expression
//! is evaluated. Division is only allowed by nonzero rational constants.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, ParseError, Position, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    Integer(BigInt),
    Ident(String),
    Neg(Box<Expression>),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Pow(Box<Expression>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Integer(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Integer(i) => format!("integer `{i}`"),
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

fn tokenize(text: &str, start: Position) -> Result<Vec<(Token, Position)>, ParseError> {
    let mut out = Vec::new();
    let mut line = start.line;
    let mut col = start.column;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Position::new(line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Token::Integer(s.parse().unwrap()), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Token::Ident(s), pos));
            continue;
        }
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => {
                return Err(
                    ParseError::new(pos, format!("unexpected character `{other}`"))
                        .expected("a number, identifier, operator or parenthesis"),
                )
            }
        };
        chars.next();
        col += 1;
        out.push((tok, pos));
    }
    out.push((Token::Eof, Position::new(line, col)));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, Position)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Position {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].0.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::new(self.pos(), format!("unexpected {}", self.peek().describe()))
            .expected(expected)
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    lhs = Expression::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = Expression::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    lhs = Expression::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Slash => {
                    self.bump();
                    lhs = Expression::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expression, ParseError> {
        match self.peek() {
            Token::Minus => {
                self.bump();
                Ok(Expression::Neg(Box::new(self.unary()?)))
            }
            Token::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expression, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Token::Integer(i) => {
                let e = i
                    .to_u32()
                    .ok_or_else(|| ParseError::new(pos, format!("exponent {i} is too large")))?;
                Ok(Expression::Pow(Box::new(base), e))
            }
            other => Err(
                ParseError::new(pos, format!("unexpected {}", other.describe()))
                    .expected("a nonnegative integer exponent"),
            ),
        }
    }

    fn atom(&mut self) -> Result<Expression, ParseError> {
        match self.peek().clone() {
            Token::Integer(i) => {
                self.bump();
                Ok(Expression::Integer(i))
            }
            Token::Ident(s) => {
                self.bump();
                Ok(Expression::Ident(s))
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, identifier or `(`")),
        }
    }
}

impl Expression {
    pub fn parse(text: &str) -> Result<Expression, ParseError> {
        Self::parse_at(text, Position::new(1, 1))
    }

    /// Parses text that starts at `start` inside a larger document, so that
    /// diagnostics carry document coordinates.
    pub fn parse_at(text: &str, start: Position) -> Result<Expression, ParseError> {
        let tokens = tokenize(text, start)?;
        let mut p = Parser { tokens, at: 0 };
        let e = p.expr()?;
        if *p.peek() != Token::Eof {
            return Err(p.unexpected("an operator or end of input"));
        }
        Ok(e)
    }

    /// Reads a product of identifiers with exponents (or `1`) as a monomial.
    pub fn as_monomial(&self) -> Option<Vec<(String, u32)>> {
        match self {
            Expression::Integer(i) if *i == BigInt::from(1) => Some(Vec::new()),
            Expression::Ident(s) => Some(vec![(s.clone(), 1)]),
            Expression::Pow(b, e) => match b.as_ref() {
                Expression::Ident(s) => Some(vec![(s.clone(), *e)]),
                _ => None,
            },
            Expression::Mul(a, b) => {
                let mut out = a.as_monomial()?;
                out.extend(b.as_monomial()?);
                Some(out)
            }
            _ => None,
        }
    }

    pub fn evaluate<A: Algebra>(&self, alg: &A) -> Result<A::Value> {
        Ok(match self {
            Expression::Integer(i) => alg.constant(BigRational::from_integer(i.clone())),
            Expression::Ident(s) => alg.ident(s)?,
            Expression::Neg(a) => alg.neg(&a.evaluate(alg)?),
            Expression::Add(a, b) => alg.add(&a.evaluate(alg)?, &b.evaluate(alg)?)?,
            Expression::Sub(a, b) => {
                let nb = alg.neg(&b.evaluate(alg)?);
                alg.add(&a.evaluate(alg)?, &nb)?
            }
            Expression::Mul(a, b) => alg.mul(&a.evaluate(alg)?, &b.evaluate(alg)?)?,
            Expression::Div(a, b) => {
                let d = b.evaluate(alg)?;
                let q = alg
                    .as_constant(&d)
                    .ok_or_else(|| Error::NotConstant(format!("divisor `{b}`")))?;
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                alg.mul(&a.evaluate(alg)?, &alg.constant(q.recip()))?
            }
            Expression::Pow(a, e) => {
                let base = a.evaluate(alg)?;
                let mut acc = alg.constant(BigRational::from_integer(1.into()));
                for _ in 0..*e {
                    acc = alg.mul(&acc, &base)?;
                }
                acc
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expression::Add(..) | Expression::Sub(..) => 1,
            Expression::Mul(..) | Expression::Div(..) => 2,
            Expression::Neg(..) => 3,
            Expression::Pow(..) => 4,
            Expression::Integer(_) | Expression::Ident(_) => 5,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Minimal parenthesisation; parsing the output gives back the same tree.
impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Integer(i) => write!(f, "{i}"),
            Expression::Ident(s) => write!(f, "{s}"),
            Expression::Neg(a) => {
                write!(f, "-")?;
                a.write_child(f, 3)
            }
            Expression::Add(a, b) => {
                a.write_child(f, 1)?;
                write!(f, " + ")?;
                b.write_child(f, 2)
            }
            Expression::Sub(a, b) => {
                a.write_child(f, 1)?;
                write!(f, " - ")?;
                b.write_child(f, 2)
            }
            Expression::Mul(a, b) => {
                a.write_child(f, 2)?;
                write!(f, "*")?;
                b.write_child(f, 3)
            }
            Expression::Div(a, b) => {
                a.write_child(f, 2)?;
                write!(f, "/")?;
                b.write_child(f, 3)
            }
            Expression::Pow(a, e) => {
                a.write_child(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Target of expression evaluation.
pub trait Algebra {
    type Value;

    fn constant(&self, q: BigRational) -> Self::Value;
    fn ident(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn as_constant(&self, a: &Self::Value) -> Option<BigRational>;
}

/// Evaluates to a `ParamScalar` over the listed parameters.
pub struct ScalarAlgebra<'a> {
    pub params: &'a [String],
}

impl Algebra for ScalarAlgebra<'_> {
    type Value = crate::scalar::ParamScalar;

    fn constant(&self, q: BigRational) -> Self::Value {
        q.into()
    }

    fn ident(&self, name: &str) -> Result<Self::Value> {
        if self.params.iter().any(|p| p == name) {
            Ok(crate::scalar::ParamScalar::param(name))
        } else {
            Err(Error::UnknownIdentifier(name.to_string()))
        }
    }

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        Ok(a + b)
    }

    fn neg(&self, a: &Self::Value) -> Self::Value {
        -a
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        Ok(a * b)
    }

    fn as_constant(&self, a: &Self::Value) -> Option<BigRational> {
        a.as_constant()
    }
}

pub fn parse_expression(text: &str) -> Result<Expression, ParseError> {
    Expression::parse(text)
}
