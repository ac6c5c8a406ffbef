//! Surface syntax for algebra elements.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := postfix ('^' '-'? INT)?
//! postfix := atom '\''*
//! atom    := IDENT | NUMBER | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! Identifiers: `x y z w u ud ap am eps i R`. `R` is the central parameter
//! of the algebra the expression is evaluated in.

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::epsring::{parse_decimal, EpsScalar};
use crate::ncalgebra::{AlgebraContext, AlgebraError, Generator, NormalForm};

pub const IDENTIFIERS: [&str; 11] = ["x", "y", "z", "w", "u", "ud", "ap", "am", "eps", "i", "R"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: expected {}", self.offset, self.expected.join(" | "))?;
        match &self.found {
            Some(tok) => write!(f, ", found `{tok}`"),
            None => write!(f, ", found end of input"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("negative power at offset {0} of an element that is not invertible")]
    NotInvertible(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Ident(String),
    Number(BigRational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Base, exponent and the offset of the `^` token.
    Pow(Box<Expr>, i64, usize),
    Commutator(Box<Expr>, Box<Expr>),
    Adjoint(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => s.clone(),
            Tok::Sym(c) => c.to_string(),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            out.push((start, Tok::Number(src[start..i].to_string())));
        } else if "+-*^'[](),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap_or(c);
            return Err(ParseError { offset: i, expected: vec!["token".into()], found: Some(ch.to_string()) });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

const OPERAND: [&str; 5] = ["identifier", "number", "(", "[", "-"];

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().map(Tok::describe),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&c.to_string()]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.postfix()?;
        let at = self.offset();
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        match self.peek() {
            Some(Tok::Number(s)) if s.chars().all(|c| c.is_ascii_digit()) => {
                let Ok(e) = s.parse::<i64>() else { return Err(self.error(&["integer exponent"])) };
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }, at))
            }
            _ => Err(self.error(&["integer exponent"])),
        }
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.atom()?;
        while self.eat('\'') {
            e = Expr::Adjoint(Box::new(e));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                if !IDENTIFIERS.contains(&name.as_str()) {
                    return Err(self.error(&IDENTIFIERS));
                }
                self.pos += 1;
                Ok(Expr::Ident(name))
            }
            Some(Tok::Number(s)) => match parse_decimal(&s) {
                Some(v) => {
                    self.pos += 1;
                    Ok(Expr::Number(v))
                }
                None => Err(self.error(&["number"])),
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let f = self.expr()?;
                self.expect(',')?;
                let g = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Commutator(Box::new(f), Box::new(g)))
            }
            _ => Err(self.error(&OPERAND)),
        }
    }
}

pub fn parse_ast(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error(&["+", "-", "*", "^", "'", "end of input"]));
    }
    Ok(e)
}

fn invert(f: &NormalForm, at: usize) -> Result<NormalForm, ExprError> {
    let mut terms = f.terms().iter();
    match (terms.next(), terms.next()) {
        (Some((&(0, s), c)), None) => {
            let inv = c.try_inverse().ok_or(ExprError::NotInvertible(at))?;
            Ok(NormalForm::monomial(f.context(), 0, -s, inv))
        }
        _ => Err(ExprError::NotInvertible(at)),
    }
}

pub fn eval_ast(e: &Expr, ctx: &AlgebraContext) -> Result<NormalForm, ExprError> {
    Ok(match e {
        Expr::Ident(name) => match name.as_str() {
            "i" => NormalForm::scalar(ctx, EpsScalar::i()),
            "R" => NormalForm::scalar(ctx, EpsScalar::from_rational(ctx.r().clone())),
            other => NormalForm::from_generator(other.parse::<Generator>()?, ctx),
        },
        Expr::Number(v) => NormalForm::scalar(ctx, EpsScalar::from_rational(v.clone())),
        Expr::Neg(a) => -&eval_ast(a, ctx)?,
        Expr::Add(a, b) => eval_ast(a, ctx)?.checked_add(&eval_ast(b, ctx)?)?,
        Expr::Sub(a, b) => eval_ast(a, ctx)?.checked_sub(&eval_ast(b, ctx)?)?,
        Expr::Mul(a, b) => eval_ast(a, ctx)?.checked_mul(&eval_ast(b, ctx)?)?,
        Expr::Pow(a, exp, at) => {
            let base = eval_ast(a, ctx)?;
            if *exp >= 0 {
                base.pow(*exp as u32)
            } else {
                invert(&base, *at)?.pow(exp.unsigned_abs() as u32)
            }
        }
        Expr::Commutator(a, b) => eval_ast(a, ctx)?.commutator(&eval_ast(b, ctx)?)?,
        Expr::Adjoint(a) => eval_ast(a, ctx)?.adjoint(),
    })
}

pub fn parse_expr(src: &str, ctx: &AlgebraContext) -> Result<NormalForm, ExprError> {
    eval_ast(&parse_ast(src)?, ctx)
}
