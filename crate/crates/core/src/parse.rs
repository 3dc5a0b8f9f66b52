//! Recursive-descent parser for polynomials written as text.
//!
//! Accepts forms like `"(1-2i) z1^2 z2 + 3"`, `"z1*z2 - 1"`, `"(z1+z2)^3/6"`
//! or `"1/2 - 0.25 z"`. Variables are `z1, z2, ...`; a bare `z` means `z1`.
//! `i` is the imaginary unit. Juxtaposition multiplies.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(GaussianRational),
    /// 0-based variable index.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Number of variables referenced (highest index + 1).
    pub fn var_count(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => i + 1,
            Expr::Neg(e) | Expr::Pow(e, _) => e.var_count(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.var_count().max(b.var_count())
            }
        }
    }

    pub fn to_poly(&self, n: usize) -> Result<MultiPoly> {
        if self.var_count() > n {
            return Err(Error::InvalidInput(format!(
                "polynomial uses z{} but only {n} variables are declared",
                self.var_count()
            )));
        }
        self.eval(n)
    }

    fn eval(&self, n: usize) -> Result<MultiPoly> {
        Ok(match self {
            Expr::Const(c) => MultiPoly::constant(n, c.clone()),
            Expr::Var(i) => MultiPoly::var(n, *i),
            Expr::Neg(e) => -e.eval(n)?,
            Expr::Add(a, b) => a.eval(n)? + b.eval(n)?,
            Expr::Sub(a, b) => a.eval(n)? - b.eval(n)?,
            Expr::Mul(a, b) => a.eval(n)? * b.eval(n)?,
            Expr::Div(a, b) => {
                let d = b.eval(n)?.as_constant().ok_or_else(|| {
                    Error::InvalidInput("division by a non-constant polynomial".into())
                })?;
                a.eval(n)?.scale(&d.inv()?)
            }
            Expr::Pow(e, k) => e.eval(n)?.pow(*k),
        })
    }
}

/// Parses `text` into an expression tree.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(e)
}

/// Parses `text` as a polynomial in `n` variables.
pub fn parse_poly(text: &str, n: usize) -> Result<MultiPoly> {
    parse_expr(text)?.to_poly(n)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Some('-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                Some('/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
                }
                Some(c) if c.is_ascii_digit() || c == '(' || c == 'z' || c == 'i' || c == '.' => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a non-negative integer exponent"));
            }
            let k: u32 = digits
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('i') => {
                self.pos += 1;
                Ok(Expr::Const(GaussianRational::i()))
            }
            Some('z') => {
                self.pos += 1;
                let digits = self.digits();
                if digits.is_empty() {
                    return Ok(Expr::Var(0));
                }
                let idx: usize = digits
                    .parse()
                    .map_err(|_| self.error("variable index too large"))?;
                if idx == 0 {
                    return Err(self.error("variables are numbered from z1"));
                }
                Ok(Expr::Var(idx - 1))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let int_part = self.digits();
        let mut value = if int_part.is_empty() {
            Rational::zero()
        } else {
            Rational::from_integer(
                int_part
                    .parse::<BigInt>()
                    .map_err(|_| self.error("bad number"))?,
            )
        };
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            let frac = self.digits();
            if frac.is_empty() && int_part.is_empty() {
                return Err(self.error("bad number"));
            }
            if !frac.is_empty() {
                let num: BigInt = frac.parse().map_err(|_| self.error("bad number"))?;
                let den = num_traits::pow(BigInt::from(10), frac.len());
                value += Rational::new(num, den);
            }
        }
        if self.chars.get(self.pos) == Some(&'i') {
            self.pos += 1;
            return Ok(Expr::Const(GaussianRational::new(Rational::zero(), value)));
        }
        debug_assert!(!value.denom().is_zero() && value.denom() >= &BigInt::one());
        Ok(Expr::Const(GaussianRational::from_rational(value)))
    }
}
