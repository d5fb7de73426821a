//! Differential operators with polynomial coefficients.
//!
//! [`DiffOp`] is the basic symbol `a(x)·∂^α`; [`Derivation`] is a first-order
//! operator `Σ c_i(x)·∂_i` without constant term — the infinitesimal motions
//! out of which the deformation formulas are built.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::{MultiIndex, Polynomial};

// ---------------------------------------------------------------------------
// Simple operators
// ---------------------------------------------------------------------------

/// A single differential symbol `coeff·∂^index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOp {
    coeff: Polynomial,
    index: MultiIndex,
}

impl DiffOp {
    /// Builds `coeff·∂^index`.
    pub fn new(coeff: Polynomial, index: MultiIndex) -> Self {
        assert_eq!(coeff.dim(), index.dim(), "coefficient and index dimension differ");
        DiffOp { coeff, index }
    }

    /// The coefficient polynomial.
    pub fn coeff(&self) -> &Polynomial {
        &self.coeff
    }

    /// The derivative multi-index.
    pub fn index(&self) -> &MultiIndex {
        &self.index
    }

    /// Differential order `|α|`.
    pub fn order(&self) -> u32 {
        self.index.degree()
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        &self.coeff * &p.derivative_multi(&self.index)
    }

    /// Operator composition `self ∘ rhs`, expanded by the Leibniz rule into
    /// a finite sum of simple symbols:
    /// `a∂^α ∘ b∂^β = Σ_{γ≤α} C(α,γ) a·(∂^γ b)·∂^{α−γ+β}`.
    pub fn compose(&self, rhs: &DiffOp) -> Vec<DiffOp> {
        let mut out = Vec::new();
        for gamma in self.index.sub_indices() {
            let c = self.index.leibniz_coeff(&gamma);
            let coeff = &self.coeff * &rhs.coeff.derivative_multi(&gamma).scale(&c);
            if coeff.is_zero() {
                continue;
            }
            let rem = self
                .index
                .checked_sub(&gamma)
                .expect("gamma ≤ alpha by construction");
            out.push(DiffOp::new(coeff, rem.add(&rhs.index)));
        }
        out
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*d^[{}]", self.coeff, self.index)
    }
}

// ---------------------------------------------------------------------------
// Derivations
// ---------------------------------------------------------------------------

/// A derivation `D = Σ_i c_i(x)·∂_i` of the polynomial algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    dim: usize,
    coeffs: Vec<Polynomial>,
}

impl Derivation {
    /// Builds `Σ coeffs[i]·∂_{i+1}`; one coefficient per variable.
    pub fn new(dim: usize, coeffs: Vec<Polynomial>) -> Self {
        assert_eq!(coeffs.len(), dim, "one coefficient per variable required");
        for c in &coeffs {
            assert_eq!(c.dim(), dim, "coefficient from a ring of different dimension");
        }
        Derivation { dim, coeffs }
    }

    /// The zero derivation.
    pub fn zero(dim: usize) -> Self {
        Derivation { dim, coeffs: vec![Polynomial::zero(dim); dim] }
    }

    /// The coordinate derivation `∂_var`.
    pub fn partial(dim: usize, var: u32) -> Self {
        Self::coordinate(dim, var, Polynomial::one(dim))
    }

    /// The single-direction derivation `coeff·∂_var`.
    ///
    /// # Panics
    ///
    /// Panics if `var` is not in `1..=dim`.
    pub fn coordinate(dim: usize, var: u32, coeff: Polynomial) -> Self {
        assert!(var >= 1 && (var as usize) <= dim, "variable x{var} out of range");
        let mut coeffs = vec![Polynomial::zero(dim); dim];
        coeffs[var as usize - 1] = coeff;
        Derivation::new(dim, coeffs)
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `∂_var`.
    pub fn coeff(&self, var: u32) -> &Polynomial {
        &self.coeffs[var as usize - 1]
    }

    /// Whether this is the zero derivation.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Applies the derivation to a polynomial.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (pos, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out += &(c * &p.derivative((pos + 1) as u32));
        }
        out
    }

    /// Applies the derivation `n` times.
    pub fn apply_iter(&self, n: u32, p: &Polynomial) -> Polynomial {
        let mut out = p.clone();
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = self.apply(&out);
        }
        out
    }

    /// The commutator `[self, rhs]`, again a derivation: its `∂_j`
    /// coefficient is `self(rhs_j) − rhs(self_j)`.
    pub fn commutator(&self, rhs: &Derivation) -> Derivation {
        assert_eq!(self.dim, rhs.dim, "derivations on rings of different dimension");
        let coeffs = (0..self.dim)
            .map(|j| &self.apply(&rhs.coeffs[j]) - &rhs.apply(&self.coeffs[j]))
            .collect();
        Derivation::new(self.dim, coeffs)
    }

    /// Whether `[self, rhs] = 0`.
    pub fn commutes_with(&self, rhs: &Derivation) -> bool {
        self.commutator(rhs).is_zero()
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (pos, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*d{}", c, pos + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
