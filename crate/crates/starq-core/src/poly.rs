//! Sparse multivariate polynomials over exact rationals.
//!
//! Provides:
//! - [`MultiIndex`]: exponent vectors with the graded-lexicographic order;
//! - [`Polynomial`]: the commutative algebra `Q[x1..xd]`, with formal
//!   derivatives, antiderivatives, evaluation and substitution.
//!
//! Terms are stored sparsely in a `BTreeMap` keyed by [`MultiIndex`]; the
//! canonical (degree-descending) printing order makes `Display` output
//! byte-stable, and printing round-trips through the expression parser.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{binomial, Rat};

// ---------------------------------------------------------------------------
// Multi-indices
// ---------------------------------------------------------------------------

/// An exponent vector `(α1, …, αd)`, also used as a derivative multi-index
/// `∂^α = ∂1^{α1} ⋯ ∂d^{αd}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    exps: Vec<u32>,
}

impl MultiIndex {
    /// The zero multi-index in `dim` variables (the constant monomial `1`,
    /// or the identity operator `∂^0`).
    pub fn zero(dim: usize) -> Self {
        MultiIndex { exps: vec![0; dim] }
    }

    /// Builds a multi-index from an explicit exponent slice.
    pub fn from_exps(exps: &[u32]) -> Self {
        MultiIndex { exps: exps.to_vec() }
    }

    /// The unit multi-index `e_var` (1-based variable numbering).
    ///
    /// # Panics
    ///
    /// Panics if `var` is not in `1..=dim`.
    pub fn unit(dim: usize, var: u32) -> Self {
        assert!(
            var >= 1 && (var as usize) <= dim,
            "variable x{var} out of range for dimension {dim}"
        );
        let mut exps = vec![0; dim];
        exps[var as usize - 1] = 1;
        MultiIndex { exps }
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    /// Total degree `|α| = Σ αi`.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// The exponent of variable `var` (1-based).
    pub fn exp(&self, var: u32) -> u32 {
        self.exps[var as usize - 1]
    }

    /// The raw exponent slice.
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Whether this is the zero multi-index.
    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Componentwise sum.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        MultiIndex { exps }
    }

    /// Componentwise difference, or `None` if any component would go
    /// negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), other.dim());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex { exps })
    }

    /// If the multi-index is a single first-order derivative `e_i`, returns
    /// the (1-based) variable `i`.
    pub fn single_var(&self) -> Option<u32> {
        if self.degree() != 1 {
            return None;
        }
        self.exps
            .iter()
            .position(|&e| e == 1)
            .map(|p| (p + 1) as u32)
    }

    /// All multi-indices `β` with `0 ≤ β ≤ α` componentwise, in graded-lex
    /// order of enumeration is not guaranteed; callers treat the result as a
    /// set.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(self.dim())];
        for (pos, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for base in &out {
                for k in 0..=e {
                    let mut b = base.clone();
                    b.exps[pos] = k;
                    next.push(b);
                }
            }
            out = next;
        }
        out
    }

    /// Product of componentwise binomial coefficients `Π C(αi, βi)`; the
    /// multiplicity with which `∂^β ⊗ ∂^{α−β}` appears in the Leibniz
    /// expansion of `∂^α` on a product.
    pub fn leibniz_coeff(&self, lower: &MultiIndex) -> Rat {
        let mut acc = Rat::one();
        for (a, b) in self.exps.iter().zip(&lower.exps) {
            if b > a {
                return Rat::zero();
            }
            acc *= binomial(*a, *b);
        }
        acc
    }
}

impl Ord for MultiIndex {
    /// Graded-lexicographic: compare total degree first, then exponent
    /// vectors lexicographically (`x1` weighs heaviest).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        for (pos, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", pos + 1)?;
            } else {
                write!(f, "x{}^{}", pos + 1, e)?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// A sparse multivariate polynomial with rational coefficients.
///
/// Invariants: no zero coefficients are stored, and every key has length
/// equal to the ring dimension, so structural equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl Polynomial {
    /// The zero polynomial in `dim` variables.
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new() }
    }

    /// The constant polynomial `1`.
    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rat::one())
    }

    /// A constant polynomial.
    pub fn constant(dim: usize, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(MultiIndex::zero(dim), c);
        }
        Polynomial { dim, terms }
    }

    /// The coordinate polynomial `x_var` (1-based).
    ///
    /// # Panics
    ///
    /// Panics if `var` is not in `1..=dim`.
    pub fn var(dim: usize, var: u32) -> Self {
        Self::monomial(dim, MultiIndex::unit(dim, var), Rat::one())
    }

    /// A single monomial `c·x^α`.
    pub fn monomial(dim: usize, index: MultiIndex, c: Rat) -> Self {
        assert_eq!(index.dim(), dim, "monomial index length must equal dimension");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(index, c);
        }
        Polynomial { dim, terms }
    }

    /// Number of variables of the ambient ring.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.is_zero())
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&MultiIndex::zero(self.dim))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// The coefficient of `x^index`.
    pub fn coeff(&self, index: &MultiIndex) -> Rat {
        self.terms.get(index).cloned().unwrap_or_else(Rat::zero)
    }

    /// Iterator over `(multi-index, coefficient)` pairs in ascending
    /// graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `0` for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// Degree in the single variable `var` (1-based).
    pub fn degree_in(&self, var: u32) -> u32 {
        self.terms.keys().map(|k| k.exp(var)).max().unwrap_or(0)
    }

    /// Whether the polynomial mentions `var` at all.
    pub fn depends_on(&self, var: u32) -> bool {
        self.terms.keys().any(|k| k.exp(var) > 0)
    }

    fn insert_term(&mut self, index: MultiIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Scalar multiple `c·self`.
    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), v * c))
            .collect();
        Polynomial { dim: self.dim, terms }
    }

    /// `self^n` by repeated multiplication (`n = 0` gives `1`).
    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.dim);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division: the quotient `q` with `self = divisor · q` when it
    /// exists in the polynomial ring, `None` otherwise.
    ///
    /// Leading-term division in the graded-lexicographic monomial order:
    /// the leading monomial of a product is the product of the leading
    /// monomials, so a step that cannot cancel the remainder's leading term
    /// proves indivisibility.
    ///
    /// # Panics
    ///
    /// Panics if `divisor` is zero or from a ring of another dimension.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.assert_same_dim(divisor);
        let (lead_k, lead_c) = divisor
            .terms
            .last_key_value()
            .expect("division by the zero polynomial");
        let lead_inv = lead_c.recip();
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(self.dim);
        while let Some((k, c)) = rem.terms.last_key_value() {
            let step = Polynomial::monomial(self.dim, k.checked_sub(lead_k)?, c * &lead_inv);
            rem = &rem - &(divisor * &step);
            quotient += &step;
        }
        Some(quotient)
    }

    /// Formal partial derivative with respect to `x_var` (1-based).
    ///
    /// # Panics
    ///
    /// Panics if `var` is not in `1..=dim`.
    pub fn derivative(&self, var: u32) -> Polynomial {
        assert!(
            var >= 1 && (var as usize) <= self.dim,
            "variable x{var} out of range for dimension {}",
            self.dim
        );
        let pos = var as usize - 1;
        let mut out = Polynomial::zero(self.dim);
        for (k, c) in &self.terms {
            let e = k.exps[pos];
            if e == 0 {
                continue;
            }
            let mut nk = k.clone();
            nk.exps[pos] = e - 1;
            out.insert_term(nk, c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Iterated derivative `∂^α self`.
    pub fn derivative_multi(&self, alpha: &MultiIndex) -> Polynomial {
        let mut out = self.clone();
        for (pos, &e) in alpha.exps.iter().enumerate() {
            for _ in 0..e {
                out = out.derivative((pos + 1) as u32);
            }
        }
        out
    }

    /// The antiderivative in `x_var` whose `x_var`-free part is zero; exact
    /// on polynomials (`x^k ↦ x^{k+1}/(k+1)`).
    pub fn antiderivative(&self, var: u32) -> Polynomial {
        assert!(
            var >= 1 && (var as usize) <= self.dim,
            "variable x{var} out of range for dimension {}",
            self.dim
        );
        let pos = var as usize - 1;
        let mut out = Polynomial::zero(self.dim);
        for (k, c) in &self.terms {
            let mut nk = k.clone();
            nk.exps[pos] += 1;
            let divisor = Rat::from_integer(nk.exps[pos].into());
            out.insert_term(nk, c / divisor);
        }
        out
    }

    /// Evaluates at a rational point (`point.len() == dim`).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.dim, "evaluation point has wrong length");
        let mut acc = Rat::zero();
        for (k, c) in &self.terms {
            let mut m = c.clone();
            for (pos, &e) in k.exps.iter().enumerate() {
                for _ in 0..e {
                    m *= &point[pos];
                }
            }
            acc += m;
        }
        acc
    }

    /// Sets `x_var = 0`.
    pub fn substitute_zero(&self, var: u32) -> Polynomial {
        let pos = var as usize - 1;
        let mut out = Polynomial::zero(self.dim);
        for (k, c) in &self.terms {
            if k.exps[pos] == 0 {
                out.insert_term(k.clone(), c.clone());
            }
        }
        out
    }

    /// Discards every term of total degree `≥ bound` (reduction modulo the
    /// ideal of high-degree terms).
    pub fn reduce_mod_degree(&self, bound: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (k, c) in &self.terms {
            if k.degree() < bound {
                out.insert_term(k.clone(), c.clone());
            }
        }
        out
    }

    fn assert_same_dim(&self, other: &Polynomial) {
        assert_eq!(
            self.dim, other.dim,
            "polynomials from rings of different dimension"
        );
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_dim(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_dim(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_term(k.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_dim(rhs);
        let mut out = Polynomial::zero(self.dim);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.insert_term(ka.add(kb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), -v.clone()))
            .collect();
        Polynomial { dim: self.dim, terms }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.assert_same_dim(rhs);
        for (k, c) in &rhs.terms {
            self.insert_term(k.clone(), c.clone());
        }
    }
}

/// Formats a rational without surrounding context: `3`, `-1/2`.
pub(crate) fn fmt_rat(c: &Rat) -> String {
    use alloc::format;
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms in descending graded-lex order, `-` folded into
    /// the coefficient, `1*` elided. The output parses back to an equal
    /// polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k.is_zero() {
                write!(f, "{}", fmt_rat(&mag))?;
            } else if mag.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{}*{k}", fmt_rat(&mag))?;
            }
        }
        Ok(())
    }
}
