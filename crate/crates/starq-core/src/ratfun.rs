//! Rational functions: formal quotients of multivariate polynomials.
//!
//! No multivariate gcd reduction is attempted; equality is decided exactly by
//! cross-multiplication, which is all the factorization and separated-
//! condition checks require.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{MultiIndex, Polynomial};
use crate::rational::Rat;

/// A quotient `num/den` of polynomials with `den ≠ 0`.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds `num/den`; fails if `den` is the zero polynomial.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.dim() != den.dim() {
            return Err(Error::DimMismatch { expected: num.dim(), found: den.dim() });
        }
        Ok(RationalFunction { num, den })
    }

    /// Embeds a polynomial as `p/1`.
    pub fn from_polynomial(p: Polynomial) -> Self {
        let den = Polynomial::one(p.dim());
        RationalFunction { num: p, den }
    }

    /// The constant function `c`.
    pub fn constant(dim: usize, c: Rat) -> Self {
        RationalFunction {
            num: Polynomial::constant(dim, c),
            den: Polynomial::one(dim),
        }
    }

    /// The zero function.
    pub fn zero(dim: usize) -> Self {
        Self::constant(dim, Rat::zero())
    }

    /// The constant function `1`.
    pub fn one(dim: usize) -> Self {
        Self::from_polynomial(Polynomial::one(dim))
    }

    /// Numerator.
    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// Denominator.
    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    /// Ambient ring dimension.
    pub fn dim(&self) -> usize {
        self.num.dim()
    }

    /// Whether the function is identically zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// If the denominator is a nonzero constant, returns the function as a
    /// polynomial.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        if self.den.is_constant() {
            let c = self.den.constant_term();
            Some(self.num.scale(&c.recip()))
        } else {
            None
        }
    }

    /// Quotient-rule derivative with respect to `x_var`.
    pub fn derivative(&self, var: u32) -> RationalFunction {
        let num =
            &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        let den = &self.den * &self.den;
        RationalFunction { num, den }
    }

    /// Whether the function genuinely depends on `x_var` (decided via the
    /// derivative, so representation artifacts like `x1*x2/x1` do not count).
    pub fn depends_on(&self, var: u32) -> bool {
        !self.derivative(var).is_zero()
    }

    /// Multiplicative inverse; fails on the zero function.
    pub fn recip(&self) -> Result<RationalFunction> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunction { num: self.den.clone(), den: self.num.clone() })
    }

    /// Division; fails when `rhs` is the zero function.
    pub fn div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        Ok(self * &rhs.recip()?)
    }

    /// `self^n` (with `n = 0` giving `1`).
    pub fn pow(&self, n: u32) -> RationalFunction {
        let mut acc = RationalFunction::one(self.dim());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x_var = 0`; fails if the denominator vanishes there.
    pub fn substitute_zero(&self, var: u32) -> Result<RationalFunction> {
        let den = self.den.substitute_zero(var);
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunction { num: self.num.substitute_zero(var), den })
    }

    /// An equal function with a cheaper representation when exact division
    /// finds one: `p·q / q` collapses to `p`, `q / p·q` to `1/p`, and a
    /// common monomial factor is cancelled.  No polynomial gcd is computed;
    /// when none of the cheap reductions apply the function is returned
    /// unchanged.
    pub fn reduced(&self) -> RationalFunction {
        if self.num.is_zero() {
            return Self::zero(self.dim());
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            return Self::from_polynomial(q);
        }
        if let Some(q) = self.den.div_exact(&self.num) {
            return RationalFunction { num: Polynomial::one(self.dim()), den: q }.normal_sign();
        }
        let common = MultiIndex::from_exps(
            &monomial_content(&self.num)
                .exps()
                .iter()
                .zip(monomial_content(&self.den).exps())
                .map(|(a, &b)| (*a).min(b))
                .collect::<Vec<_>>(),
        );
        if common.is_zero() {
            return self.clone().normal_sign();
        }
        let m = Polynomial::monomial(self.dim(), common, Rat::one());
        let num = self.num.div_exact(&m).expect("content divides every term");
        let den = self.den.div_exact(&m).expect("content divides every term");
        RationalFunction { num, den }.normal_sign()
    }

    /// Flips both signs when the denominator's leading coefficient is
    /// negative, so reduced output never shows `p/(-q)`.
    fn normal_sign(self) -> RationalFunction {
        match self.den.terms().last() {
            Some((_, c)) if c.is_negative() => {
                RationalFunction { num: -&self.num, den: -&self.den }
            }
            _ => self,
        }
    }
}

/// Componentwise minimum exponent vector over the terms of a nonzero
/// polynomial: the largest monomial dividing every term.
fn monomial_content(p: &Polynomial) -> MultiIndex {
    let mut mins = vec![u32::MAX; p.dim()];
    for (k, _) in p.terms() {
        for (m, &e) in mins.iter_mut().zip(k.exps()) {
            *m = (*m).min(e);
        }
    }
    MultiIndex::from_exps(&mins)
}

impl PartialEq for RationalFunction {
    /// Exact equality by cross-multiplication.
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.to_polynomial() {
            write!(f, "{p}")
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
