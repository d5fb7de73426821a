//! Recursive-descent parser for polynomial and rational-function
//! expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | factor
//! factor := atom ('^' integer)?
//! atom   := integer | 'x' integer | '(' expr ')'
//! ```
//!
//! Variables are `x1..xd` (1-based). In polynomial context, `/` is accepted
//! only when the divisor evaluates to a nonzero constant (so `1/2*x2` and
//! `x2/2` both work); in rational-function context `/` is unrestricted except
//! for division by the zero function. Errors carry the byte offset at which
//! they were detected.

use alloc::boxed::Box;
use alloc::format;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ratfun::RationalFunction;
use crate::rational::Rat;

enum Ast {
    Num(Rat),
    Var(u32),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    dim: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, dim: usize) -> Self {
        Parser { bytes: text.as_bytes(), pos: 0, dim }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Ast::Div(Box::new(lhs), Box::new(rhs), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let exp = self.integer_u32("exponent")?;
            return Ok(Ast::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(self.error("expected ')'"))
                }
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                let var = self.integer_u32("variable index")?;
                if var == 0 || var as usize > self.dim {
                    return Err(Error::VarOutOfRange { var, dim: self.dim, pos: at });
                }
                Ok(Ast::Var(var))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer_big()?;
                Ok(Ast::Num(Rat::from_integer(n)))
            }
            Some(_) => Err(self.error("expected a number, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digit_run(&mut self) -> Result<&'a [u8]> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(&self.bytes[start..self.pos])
    }

    fn integer_big(&mut self) -> Result<BigInt> {
        let digits = self.digit_run()?;
        Ok(BigInt::parse_bytes(digits, 10).expect("digit run is valid base-10"))
    }

    fn integer_u32(&mut self, what: &str) -> Result<u32> {
        self.skip_ws();
        let at = self.pos;
        let digits = self.digit_run()?;
        core::str::from_utf8(digits)
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or(Error::Parse { pos: at, msg: format!("{what} too large") })
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.error("trailing input after expression"))
        } else {
            Ok(())
        }
    }
}

fn parse_ast(text: &str, dim: usize) -> Result<Ast> {
    let mut p = Parser::new(text, dim);
    let ast = p.expr()?;
    p.finish()?;
    Ok(ast)
}

fn eval_poly(ast: &Ast, dim: usize) -> Result<Polynomial> {
    Ok(match ast {
        Ast::Num(c) => Polynomial::constant(dim, c.clone()),
        Ast::Var(v) => Polynomial::var(dim, *v),
        Ast::Add(a, b) => &eval_poly(a, dim)? + &eval_poly(b, dim)?,
        Ast::Sub(a, b) => &eval_poly(a, dim)? - &eval_poly(b, dim)?,
        Ast::Mul(a, b) => &eval_poly(a, dim)? * &eval_poly(b, dim)?,
        Ast::Div(a, b, at) => {
            let num = eval_poly(a, dim)?;
            let den = eval_poly(b, dim)?;
            if !den.is_constant() {
                return Err(Error::Parse {
                    pos: *at,
                    msg: "division by a non-constant is not a polynomial".into(),
                });
            }
            let c = den.constant_term();
            if c.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            num.scale(&c.recip())
        }
        Ast::Neg(a) => -&eval_poly(a, dim)?,
        Ast::Pow(a, n) => eval_poly(a, dim)?.pow(*n),
    })
}

fn eval_ratfun(ast: &Ast, dim: usize) -> Result<RationalFunction> {
    Ok(match ast {
        Ast::Num(c) => RationalFunction::constant(dim, c.clone()),
        Ast::Var(v) => RationalFunction::from_polynomial(Polynomial::var(dim, *v)),
        Ast::Add(a, b) => &eval_ratfun(a, dim)? + &eval_ratfun(b, dim)?,
        Ast::Sub(a, b) => &eval_ratfun(a, dim)? - &eval_ratfun(b, dim)?,
        Ast::Mul(a, b) => &eval_ratfun(a, dim)? * &eval_ratfun(b, dim)?,
        Ast::Div(a, b, _) => eval_ratfun(a, dim)?.div(&eval_ratfun(b, dim)?)?,
        Ast::Neg(a) => -&eval_ratfun(a, dim)?,
        Ast::Pow(a, n) => eval_ratfun(a, dim)?.pow(*n),
    })
}

/// Parses a polynomial expression over `Q[x1..xd]`.
///
/// # Examples
///
/// ```
/// use starq_core::parse_poly;
/// let p = parse_poly("x1^2 - 1/2*x2", 2).unwrap();
/// assert_eq!(p.to_string(), "x1^2 - 1/2*x2");
/// ```
pub fn parse_poly(text: &str, dim: usize) -> Result<Polynomial> {
    let ast = parse_ast(text, dim)?;
    eval_poly(&ast, dim)
}

/// Parses a rational-function expression; `/` may divide by arbitrary
/// nonzero polynomials.
pub fn parse_ratfun(text: &str, dim: usize) -> Result<RationalFunction> {
    let ast = parse_ast(text, dim)?;
    eval_ratfun(&ast, dim)
}

