//! Formal power series truncated at a total degree.
//!
//! A [`TruncatedSeries`] of order `N` stores the terms of total degree `≤ N`
//! of a formal power series; every operation discards higher terms, so the
//! ring axioms hold modulo degree `N + 1`. "Equal modulo degree `m`" always
//! means: all terms of total degree `< m` agree.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{factorial, Rat};

/// A multivariate formal power series known through total degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: u32,
    poly: Polynomial,
}

impl TruncatedSeries {
    /// Truncates a polynomial to a series of the given order.
    pub fn new(order: u32, poly: &Polynomial) -> Self {
        TruncatedSeries { order, poly: poly.reduce_mod_degree(order + 1) }
    }

    /// The zero series.
    pub fn zero(dim: usize, order: u32) -> Self {
        TruncatedSeries { order, poly: Polynomial::zero(dim) }
    }

    /// The constant series `1`.
    pub fn one(dim: usize, order: u32) -> Self {
        TruncatedSeries { order, poly: Polynomial::one(dim) }
    }

    /// Truncation order `N`: terms of total degree `≤ N` are significant.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The stored polynomial part.
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    /// Whether all significant terms vanish.
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Whether all terms of total degree `< bound` vanish.
    pub fn is_zero_mod_degree(&self, bound: u32) -> bool {
        self.poly.reduce_mod_degree(bound).is_zero()
    }

    /// Re-truncates to a (usually smaller) order.
    pub fn truncate(&self, order: u32) -> TruncatedSeries {
        TruncatedSeries::new(order, &self.poly)
    }

    /// Termwise derivative (order drops by one degree of knowledge but the
    /// stored order is kept, matching the "one degree is lost" convention of
    /// the antiderivative).
    pub fn derivative(&self, var: u32) -> TruncatedSeries {
        TruncatedSeries { order: self.order, poly: self.poly.derivative(var) }
    }

    /// The antiderivative in `x_var` whose `x_var`-free part is zero.
    ///
    /// The result `t` satisfies `∂_var t = self` modulo degree `N`; terms of
    /// the integrand at degree `N` would leave the truncation window and are
    /// dropped. Requires `N ≥ 1`.
    pub fn antiderivative(&self, var: u32) -> Result<TruncatedSeries> {
        if self.order < 1 {
            return Err(Error::TruncationTooSmall { needed: 1, available: self.order });
        }
        let anti = self.poly.antiderivative(var);
        Ok(TruncatedSeries::new(self.order, &anti))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> TruncatedSeries {
        TruncatedSeries { order: self.order, poly: self.poly.scale(c) }
    }

    /// The exponential `Σ selfⁿ/n!`, truncated at the series order.
    ///
    /// Requires a zero constant term (otherwise the sum does not make sense
    /// over the rationals); then the sum is finite because each power raises
    /// the minimal degree.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if !self.poly.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = TruncatedSeries::one(self.dim(), self.order);
        let mut power = TruncatedSeries::one(self.dim(), self.order);
        for n in 1..=self.order {
            power = &power * self;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power.scale(&factorial(n).recip());
        }
        Ok(acc)
    }

    fn joint_order(&self, rhs: &TruncatedSeries) -> u32 {
        self.order.min(rhs.order)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(self.joint_order(rhs), &(&self.poly + &rhs.poly))
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(self.joint_order(rhs), &(&self.poly - &rhs.poly))
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(self.joint_order(rhs), &(&self.poly * &rhs.poly))
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { order: self.order, poly: -&self.poly }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg {})", self.poly, self.order + 1)
    }
}
