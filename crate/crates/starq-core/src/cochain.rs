//! Multilinear differential cochains on a polynomial algebra.
//!
//! A [`Cochain`] of arity `n` is a finite sum of terms
//! `s(x)·(∂^{α₁} ⊗ … ⊗ ∂^{αₙ})`, acting on an `n`-tuple of polynomials as
//! `(a₁,…,aₙ) ↦ s·∂^{α₁}a₁ ⋯ ∂^{αₙ}aₙ`.  The module provides the cup
//! product, the Hochschild coboundary `δ`, Gerstenhaber-style insertion
//! compositions, the normal product of first-order 2-cochains, the skew/
//! coboundary splitting of a 2-cochain, and the canonical reduction of
//! first-order 3-cochains modulo coboundaries (with an explicit certificate).
//!
//! Cochain literals use a compact slot syntax: `(1|2)` is `∂₁ ⊗ ∂₂`,
//! `x3*(1 1|2)` is `x₃·∂₁² ⊗ ∂₂`, `()` is the identity operator, and a
//! multi-term coefficient is bracketed, as in `[x1 + 1]*(1|2)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Neg;

use crate::diffop::{Derivation, DiffOp};
use crate::error::{Error, Result};
use crate::poly::{fmt_rat, MultiIndex, Polynomial};
use crate::rational::{rat, rat_int, Rat};
use num_traits::{One, Zero};

// ---------------------------------------------------------------------------
// Core type
// ---------------------------------------------------------------------------

/// A multilinear differential operator in `arity` polynomial arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    dim: usize,
    arity: usize,
    terms: BTreeMap<Vec<MultiIndex>, Polynomial>,
}

impl Cochain {
    /// The zero cochain of the given arity.
    pub fn zero(dim: usize, arity: usize) -> Self {
        Cochain { dim, arity, terms: BTreeMap::new() }
    }

    /// The multiplication 2-cochain `(a,b) ↦ ab`.
    pub fn multiplication(dim: usize) -> Self {
        Self::from_term(
            Polynomial::one(dim),
            vec![MultiIndex::zero(dim), MultiIndex::zero(dim)],
        )
    }

    /// The identity 1-cochain `a ↦ a`.
    pub fn identity_op(dim: usize) -> Self {
        Self::from_term(Polynomial::one(dim), vec![MultiIndex::zero(dim)])
    }

    /// A single term `scalar·∂^{factors[0]} ⊗ … ⊗ ∂^{factors[n−1]}`.
    pub fn from_term(scalar: Polynomial, factors: Vec<MultiIndex>) -> Self {
        let dim = scalar.dim();
        for fac in &factors {
            assert_eq!(fac.dim(), dim, "factor from a ring of different dimension");
        }
        let arity = factors.len();
        let mut c = Cochain::zero(dim, arity);
        c.insert_term(factors, scalar);
        c
    }

    /// The elementary 2-cochain `∂_i ⊗ ∂_j`.
    ///
    /// # Panics
    ///
    /// Panics if `i` or `j` is not in `1..=dim`.
    pub fn pair(dim: usize, i: u32, j: u32) -> Self {
        Self::from_term(
            Polynomial::one(dim),
            vec![MultiIndex::unit(dim, i), MultiIndex::unit(dim, j)],
        )
    }

    /// A derivation viewed as a 1-cochain.
    pub fn from_derivation(d: &Derivation) -> Self {
        let dim = d.dim();
        let mut c = Cochain::zero(dim, 1);
        for var in 1..=dim as u32 {
            let coeff = d.coeff(var);
            if !coeff.is_zero() {
                c.insert_term(vec![MultiIndex::unit(dim, var)], coeff.clone());
            }
        }
        c
    }

    /// A simple differential symbol viewed as a 1-cochain.
    pub fn from_diffop(op: &DiffOp) -> Self {
        Self::from_term(op.coeff().clone(), vec![op.index().clone()])
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of arguments.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Whether this is the zero cochain.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `(factors, scalar)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[MultiIndex], &Polynomial)> {
        self.terms.iter().map(|(f, s)| (f.as_slice(), s))
    }

    fn insert_term(&mut self, factors: Vec<MultiIndex>, scalar: Polynomial) {
        if scalar.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(factors)
            .or_insert_with(|| Polynomial::zero(self.dim));
        *entry += &scalar;
        if entry.is_zero() {
            // Re-borrow immutably to find and drop the cancelled key.
            let key: Vec<MultiIndex> = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    /// Multiplies every scalar by the rational `c`.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Cochain::zero(self.dim, self.arity);
        }
        let terms = self
            .terms
            .iter()
            .map(|(f, s)| (f.clone(), s.scale(c)))
            .collect();
        Cochain { dim: self.dim, arity: self.arity, terms }
    }

    /// Multiplies every scalar by the polynomial `b`.
    pub fn scale_poly(&self, b: &Polynomial) -> Self {
        assert_eq!(b.dim(), self.dim, "scalar from a ring of different dimension");
        let mut out = Cochain::zero(self.dim, self.arity);
        for (f, s) in &self.terms {
            out.insert_term(f.clone(), b * s);
        }
        out
    }

    // -----------------------------------------------------------------------
    // Evaluation and elementary products
    // -----------------------------------------------------------------------

    /// Applies the cochain to `arity` polynomial arguments.
    pub fn apply(&self, args: &[Polynomial]) -> Result<Polynomial> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: args.len() });
        }
        for a in args {
            if a.dim() != self.dim {
                return Err(Error::DimMismatch { expected: self.dim, found: a.dim() });
            }
        }
        let mut out = Polynomial::zero(self.dim);
        for (factors, scalar) in &self.terms {
            let mut prod = scalar.clone();
            for (fac, arg) in factors.iter().zip(args) {
                if prod.is_zero() {
                    break;
                }
                prod = &prod * &arg.derivative_multi(fac);
            }
            out += &prod;
        }
        Ok(out)
    }

    /// Cup product: `(F⌣G)(a₁,…,a_{m+n}) = F(a₁,…,a_m)·G(a_{m+1},…,a_{m+n})`.
    pub fn cup(&self, rhs: &Cochain) -> Cochain {
        assert_eq!(self.dim, rhs.dim, "cochains on rings of different dimension");
        let mut out = Cochain::zero(self.dim, self.arity + rhs.arity);
        for (f1, s1) in &self.terms {
            for (f2, s2) in &rhs.terms {
                let mut factors = f1.clone();
                factors.extend_from_slice(f2);
                out.insert_term(factors, s1 * s2);
            }
        }
        out
    }

    /// Sum of cochains of equal dimension and arity.
    pub fn add(&self, rhs: &Cochain) -> Cochain {
        assert_eq!(self.dim, rhs.dim, "cochains on rings of different dimension");
        assert_eq!(self.arity, rhs.arity, "cochains of different arity");
        let mut out = self.clone();
        for (f, s) in &rhs.terms {
            out.insert_term(f.clone(), s.clone());
        }
        out
    }

    /// Difference of cochains of equal dimension and arity.
    pub fn sub(&self, rhs: &Cochain) -> Cochain {
        self.add(&rhs.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Cochain {
        self.scale(&rat_int(-1))
    }

    // -----------------------------------------------------------------------
    // Coboundary
    // -----------------------------------------------------------------------

    /// The Hochschild coboundary `δF` of an `n`-cochain, an `(n+1)`-cochain:
    ///
    /// ```text
    /// (δF)(a₀,…,aₙ) = a₀·F(a₁,…,aₙ)
    ///               + Σ_{i=1}^{n} (−1)^i F(a₀,…,a_{i−1}aᵢ,…,aₙ)
    ///               + (−1)^{n+1} F(a₀,…,a_{n−1})·aₙ
    /// ```
    ///
    /// Products inside an argument slot are expanded by the Leibniz rule, so
    /// the result is again a finite differential cochain.  `δ∘δ = 0`.
    pub fn coboundary(&self) -> Cochain {
        let n = self.arity;
        let mut out = Cochain::zero(self.dim, n + 1);
        for (factors, scalar) in &self.terms {
            // Front term: multiplication by the fresh first argument.
            let mut front = vec![MultiIndex::zero(self.dim)];
            front.extend_from_slice(factors);
            out.insert_term(front, scalar.clone());

            // Interior terms: slot i of F receives a product of two arguments.
            for i in 1..=n {
                let alpha = &factors[i - 1];
                let sign = if i % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                for beta in alpha.sub_indices() {
                    let c = alpha.leibniz_coeff(&beta) * &sign;
                    let rest = alpha.checked_sub(&beta).expect("beta ≤ alpha");
                    let mut fac = Vec::with_capacity(n + 1);
                    fac.extend_from_slice(&factors[..i - 1]);
                    fac.push(beta);
                    fac.push(rest);
                    fac.extend_from_slice(&factors[i..]);
                    out.insert_term(fac, scalar.scale(&c));
                }
            }

            // Back term: multiplication by the fresh last argument.
            let sign = if (n + 1) % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            let mut back = factors.clone();
            back.push(MultiIndex::zero(self.dim));
            out.insert_term(back, scalar.scale(&sign));
        }
        out
    }

    // -----------------------------------------------------------------------
    // Insertion compositions
    // -----------------------------------------------------------------------

    /// Inserts `rhs` (arity `n`) into argument slot `slot` (1-based) of
    /// `self` (arity `m`), producing an arity `m+n−1` cochain:
    /// `(F∘_i G)(a₁,…) = F(a₁,…,G(a_i,…,a_{i+n−1}),…)`.  The derivative
    /// `∂^{α_i}` carried by the slot distributes over the scalar and factors
    /// of `rhs` by the Leibniz rule.
    pub fn comp_at(&self, slot: usize, rhs: &Cochain) -> Result<Cochain> {
        if self.dim != rhs.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: rhs.dim });
        }
        if slot == 0 || slot > self.arity {
            return Err(Error::InvalidSlot { slot, arity: self.arity });
        }
        let n = rhs.arity;
        let mut out = Cochain::zero(self.dim, self.arity + n - 1);
        for (f_factors, f_scalar) in &self.terms {
            let alpha = &f_factors[slot - 1];
            for (g_factors, g_scalar) in &rhs.terms {
                for beta0 in alpha.sub_indices() {
                    let c0 = alpha.leibniz_coeff(&beta0);
                    let hit = g_scalar.derivative_multi(&beta0);
                    if hit.is_zero() {
                        continue;
                    }
                    let rem = alpha.checked_sub(&beta0).expect("beta0 ≤ alpha");
                    for (betas, c) in leibniz_splits(&rem, n) {
                        let scalar = f_scalar * &hit.scale(&(&c0 * &c));
                        let mut fac = Vec::with_capacity(self.arity + n - 1);
                        fac.extend_from_slice(&f_factors[..slot - 1]);
                        for (g_fac, b) in g_factors.iter().zip(&betas) {
                            fac.push(g_fac.add(b));
                        }
                        fac.extend_from_slice(&f_factors[slot..]);
                        out.insert_term(fac, scalar);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The alternating-sum composition
    /// `F∘G = Σ_{i=1}^{m} (−1)^{(i−1)(n−1)} F∘_i G`.
    ///
    /// For 2-cochains this is `F∘₁G − F∘₂G`, the combination whose
    /// symmetrisation controls associativity defects:
    /// `Σ_{i+j=n, i,j≥1} F_i∘F_j = δF_n` makes level `n` of a star product
    /// associative.
    pub fn comp(&self, rhs: &Cochain) -> Result<Cochain> {
        let n = rhs.arity;
        let mut out = Cochain::zero(self.dim, self.arity + n - 1);
        for i in 1..=self.arity {
            let piece = self.comp_at(i, rhs)?;
            if (i - 1) * (n.wrapping_sub(1)) % 2 == 0 {
                out = out.add(&piece);
            } else {
                out = out.sub(&piece);
            }
        }
        Ok(out)
    }

    // -----------------------------------------------------------------------
    // First-order 2-cochains: products, splitting
    // -----------------------------------------------------------------------

    /// Whether every factor of every term has differential order exactly 1.
    pub fn is_first_order(&self) -> bool {
        self.terms
            .keys()
            .all(|f| f.iter().all(|m| m.degree() == 1))
    }

    /// The sub-sum of terms whose factors all have differential order 1.
    pub fn first_order_part(&self) -> Cochain {
        let terms = self
            .terms
            .iter()
            .filter(|(f, _)| f.iter().all(|m| m.degree() == 1))
            .map(|(f, s)| (f.clone(), s.clone()))
            .collect();
        Cochain { dim: self.dim, arity: self.arity, terms }
    }

    /// Pointwise product of two first-order 2-cochains, reduced to the span
    /// of `b(x)·∂^α ⊗ ∂^β` terms.  For single terms `a·∂_i⊗∂_j` and
    /// `b·∂_k⊗∂_l` the product is `ab·(ik|jl)` plus Leibniz corrections
    /// whenever a slot repeats a direction: `a∂_i b·(i|jl)` when `i=k`,
    /// `a∂_j b·(ik|j)` when `j=l`, and, when both repeat, the fully reduced
    /// term `∂_i a·∂_j b·(i|j)` with one derivative on each coefficient.
    ///
    /// # Errors
    ///
    /// [`Error::NotFirstOrder`] if either operand has a factor of
    /// differential order ≠ 1; [`Error::ArityMismatch`] if either operand is
    /// not a 2-cochain.
    pub fn product_normal2(&self, rhs: &Cochain) -> Result<Cochain> {
        assert_eq!(self.dim, rhs.dim, "cochains on rings of different dimension");
        for side in [self, rhs] {
            if side.arity != 2 {
                return Err(Error::ArityMismatch { expected: 2, found: side.arity });
            }
            if !side.is_first_order() {
                return Err(Error::NotFirstOrder);
            }
        }
        let mut out = Cochain::zero(self.dim, 2);
        for (f1, a) in &self.terms {
            let (i, j) = (
                f1[0].single_var().expect("first order"),
                f1[1].single_var().expect("first order"),
            );
            for (f2, b) in &rhs.terms {
                let (k, l) = (
                    f2[0].single_var().expect("first order"),
                    f2[1].single_var().expect("first order"),
                );
                let e1_opts: &[bool] = if i == k { &[false, true] } else { &[false] };
                let e2_opts: &[bool] = if j == l { &[false, true] } else { &[false] };
                for &e1 in e1_opts {
                    for &e2 in e2_opts {
                        let coeff = match (e1, e2) {
                            (false, false) => a * b,
                            (true, false) => a * &b.derivative(i),
                            (false, true) => a * &b.derivative(j),
                            // both slots repeat: one derivative falls on each
                            // coefficient
                            (true, true) => &a.derivative(i) * &b.derivative(j),
                        };
                        let mut s1 = MultiIndex::unit(self.dim, i);
                        if !e1 {
                            s1 = s1.add(&MultiIndex::unit(self.dim, k));
                        }
                        let mut s2 = MultiIndex::unit(self.dim, j);
                        if !e2 {
                            s2 = s2.add(&MultiIndex::unit(self.dim, l));
                        }
                        out.insert_term(vec![s1, s2], coeff);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Splits a first-order 2-cochain as `self = skew + δ(witness)` with
    /// `skew` antisymmetric in its two slots and `witness` a 1-cochain.
    ///
    /// The symmetric part of a first-order 2-cochain is always a coboundary:
    /// `s·(∂_i⊗∂_j + ∂_j⊗∂_i) = δ(−s·∂_i∂_j)` and `s·∂_i⊗∂_i = δ(−s/2·∂_i²)`.
    ///
    /// # Errors
    ///
    /// [`Error::NotFirstOrder`] / [`Error::ArityMismatch`] as for
    /// [`Cochain::product_normal2`].
    pub fn skew_form(&self) -> Result<SkewForm> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: self.arity });
        }
        if !self.is_first_order() {
            return Err(Error::NotFirstOrder);
        }
        let mut skew = Cochain::zero(self.dim, 2);
        let mut witness = Cochain::zero(self.dim, 1);
        let half = rat(1, 2);
        for (f, s) in &self.terms {
            let i = f[0].single_var().expect("first order");
            let j = f[1].single_var().expect("first order");
            if i == j {
                // Diagonal term: purely symmetric.
                witness.insert_term(
                    vec![MultiIndex::unit(self.dim, i).add(&MultiIndex::unit(self.dim, i))],
                    s.scale(&-half.clone()),
                );
                continue;
            }
            let half_s = s.scale(&half);
            skew.insert_term(f.clone(), half_s.clone());
            skew.insert_term(vec![f[1].clone(), f[0].clone()], half_s.clone().neg());
            witness.insert_term(vec![f[0].add(&f[1])], half_s.neg());
        }
        Ok(SkewForm { skew, witness })
    }

    // -----------------------------------------------------------------------
    // Canonical form of first-order 3-cochains
    // -----------------------------------------------------------------------

    /// Reduces a first-order 3-cochain modulo coboundaries to the canonical
    /// basis `{∂_i⊗∂_j⊗∂_k : i < j < k}`, returning the coefficients and a
    /// 2-cochain certificate with `self = Σ coeffs·(i|j|k) + δ(certificate)`.
    ///
    /// The rewriting uses the exact relations
    /// `δ(∂_p∂_q ⊗ ∂_r) = −(p|q|r) − (q|p|r)` and
    /// `δ(∂_p ⊗ ∂_q∂_r) = (p|q|r) + (p|r|q)`, which sort the three slot
    /// directions and cancel any term with a repeated direction.
    ///
    /// # Errors
    ///
    /// [`Error::NotFirstOrder`] if some factor has order ≠ 1;
    /// [`Error::ArityMismatch`] if the arity is not 3.
    pub fn normal_form3(&self) -> Result<NormalForm3> {
        if self.arity != 3 {
            return Err(Error::ArityMismatch { expected: 3, found: self.arity });
        }
        if !self.is_first_order() {
            return Err(Error::NotFirstOrder);
        }
        let dim = self.dim;
        let mut coeffs: BTreeMap<(u32, u32, u32), Polynomial> = BTreeMap::new();
        let mut certificate = Cochain::zero(dim, 2);
        let mut queue: Vec<([u32; 3], Polynomial)> = self
            .terms
            .iter()
            .map(|(f, s)| {
                (
                    [
                        f[0].single_var().expect("first order"),
                        f[1].single_var().expect("first order"),
                        f[2].single_var().expect("first order"),
                    ],
                    s.clone(),
                )
            })
            .collect();
        let unit = |v: u32| MultiIndex::unit(dim, v);
        let half = rat(1, 2);
        while let Some(([p, q, r], b)) = queue.pop() {
            if b.is_zero() {
                continue;
            }
            if p > q {
                // b(p|q|r) = −b(q|p|r) + δ(−b·∂_p∂_q⊗∂_r)
                certificate.insert_term(vec![unit(p).add(&unit(q)), unit(r)], b.clone().neg());
                queue.push(([q, p, r], b.neg()));
            } else if q > r {
                // b(p|q|r) = −b(p|r|q) + δ(b·∂_p⊗∂_q∂_r)
                certificate.insert_term(vec![unit(p), unit(q).add(&unit(r))], b.clone());
                queue.push(([p, r, q], b.neg()));
            } else if p == q && q == r {
                // b(p|p|p) = δ(−b/2·∂_p²⊗∂_p)
                certificate
                    .insert_term(vec![unit(p).add(&unit(p)), unit(p)], b.scale(&-half.clone()));
            } else if p == q {
                // b(p|p|r) = δ(−b/2·∂_p²⊗∂_r)
                certificate
                    .insert_term(vec![unit(p).add(&unit(p)), unit(r)], b.scale(&-half.clone()));
            } else if q == r {
                // b(p|q|q) = δ(b/2·∂_p⊗∂_q²)
                certificate
                    .insert_term(vec![unit(p), unit(q).add(&unit(q))], b.scale(&half));
            } else {
                let entry = coeffs
                    .entry((p, q, r))
                    .or_insert_with(|| Polynomial::zero(dim));
                *entry += &b;
                if entry.is_zero() {
                    coeffs.remove(&(p, q, r));
                }
            }
        }
        Ok(NormalForm3 { dim, coeffs, certificate })
    }

    // -----------------------------------------------------------------------
    // Auxiliary transforms
    // -----------------------------------------------------------------------

    /// Permutes argument slots: `result(a₁,…,aₙ) = self(a_{perm[0]+1},…)`.
    /// `perm` must be a permutation of `0..arity`.
    pub fn permute_args(&self, perm: &[usize]) -> Cochain {
        assert_eq!(perm.len(), self.arity, "permutation length must equal arity");
        let mut out = Cochain::zero(self.dim, self.arity);
        for (f, s) in &self.terms {
            let factors: Vec<MultiIndex> = perm.iter().map(|&k| f[k].clone()).collect();
            out.insert_term(factors, s.clone());
        }
        out
    }

    /// The transpose of a 2-cochain: `(a,b) ↦ self(b,a)`.
    pub fn transpose2(&self) -> Cochain {
        assert_eq!(self.arity, 2, "transpose is defined for 2-cochains");
        self.permute_args(&[1, 0])
    }

    // -----------------------------------------------------------------------
    // Literal syntax
    // -----------------------------------------------------------------------

    /// Parses a cochain literal such as `x3*(1 1|2) - (1|2|3) + [x1 + 1]*(2|3)`.
    ///
    /// Each term is an optional coefficient (a polynomial without
    /// parentheses, or any polynomial in `[…]` brackets), a `*`, and a
    /// parenthesised slot list: slots are separated by `|`, each slot lists
    /// the differentiated directions (repetition gives higher order), and an
    /// empty slot is the identity.
    pub fn parse(text: &str, dim: usize) -> Result<Cochain> {
        let chunks = split_terms(text)?;
        if chunks.is_empty() {
            return Err(Error::Parse { pos: 0, msg: String::from("empty cochain literal") });
        }
        let mut out: Option<Cochain> = None;
        for (sign, chunk, offset) in chunks {
            let (coeff_text, slots_text) = split_term(chunk, offset)?;
            let mut coeff = if coeff_text.trim().is_empty() {
                Polynomial::one(dim)
            } else {
                crate::parse::parse_poly(coeff_text, dim)?
            };
            if sign < 0 {
                coeff = coeff.neg();
            }
            let mut factors = Vec::new();
            for slot in slots_text.split('|') {
                let mut m = MultiIndex::zero(dim);
                for token in slot.split_whitespace() {
                    let var: u32 = token.parse().map_err(|_| Error::Parse {
                        pos: offset,
                        msg: format!("invalid slot direction `{token}`"),
                    })?;
                    if var == 0 || var as usize > dim {
                        return Err(Error::VarOutOfRange { var, dim, pos: offset });
                    }
                    m = m.add(&MultiIndex::unit(dim, var));
                }
                factors.push(m);
            }
            let term = Cochain::from_term(coeff, factors);
            out = Some(match out {
                None => term,
                Some(acc) => {
                    if acc.arity() != term.arity() {
                        return Err(Error::ArityMismatch {
                            expected: acc.arity(),
                            found: term.arity(),
                        });
                    }
                    acc.add(&term)
                }
            });
        }
        Ok(out.expect("at least one chunk"))
    }
}

/// Splits `text` into signed top-level term chunks `(sign, chunk, offset)`.
fn split_terms(text: &str) -> Result<Vec<(i32, &str, usize)>> {
    let bytes = text.as_bytes();
    let mut chunks = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut sign = 1i32;
    let mut seen_content = false;
    for (pos, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse { pos, msg: String::from("unbalanced parentheses") });
                }
            }
            b'+' | b'-' if depth == 0 => {
                if seen_content {
                    chunks.push((sign, text[start..pos].trim(), start));
                    seen_content = false;
                }
                sign = if b == b'-' { -1 } else { 1 };
                start = pos + 1;
                continue;
            }
            _ => {}
        }
        if !b.is_ascii_whitespace() {
            seen_content = true;
        }
    }
    if depth != 0 {
        return Err(Error::Parse { pos: bytes.len(), msg: String::from("unbalanced parentheses") });
    }
    if seen_content {
        chunks.push((sign, text[start..].trim(), start));
    }
    Ok(chunks)
}

/// Splits one term chunk into coefficient text and slot-list text.
fn split_term(chunk: &str, offset: usize) -> Result<(&str, &str)> {
    let open = chunk.find('(').ok_or(Error::Parse {
        pos: offset,
        msg: String::from("term is missing a parenthesised slot list"),
    })?;
    let close = chunk.rfind(')').ok_or(Error::Parse {
        pos: offset + open,
        msg: String::from("unterminated slot list"),
    })?;
    if !chunk[close + 1..].trim().is_empty() {
        return Err(Error::Parse {
            pos: offset + close,
            msg: String::from("unexpected input after slot list"),
        });
    }
    let mut coeff = chunk[..open].trim();
    if let Some(stripped) = coeff.strip_suffix('*') {
        coeff = stripped.trim();
    }
    if let Some(inner) = coeff.strip_prefix('[') {
        coeff = inner
            .strip_suffix(']')
            .ok_or(Error::Parse { pos: offset, msg: String::from("unterminated `[` bracket") })?
            .trim();
    }
    Ok((coeff, &chunk[open + 1..close]))
}

fn fmt_factor(m: &MultiIndex) -> String {
    let mut parts: Vec<String> = Vec::new();
    for var in 1..=m.dim() as u32 {
        for _ in 0..m.exp(var) {
            parts.push(format!("{var}"));
        }
    }
    parts.join(" ")
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (factors, scalar) in &self.terms {
            let slots: Vec<String> = factors.iter().map(fmt_factor).collect();
            let slot_text = format!("({})", slots.join("|"));
            if scalar.num_terms() > 1 {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "[{scalar}]*{slot_text}")?;
            } else {
                let (m, c) = scalar.terms().next().expect("nonzero scalar");
                let negative = c < &Rat::zero();
                let mag = if negative { -c.clone() } else { c.clone() };
                if first {
                    if negative {
                        write!(f, "-")?;
                    }
                } else if negative {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                if m.is_zero() {
                    if mag.is_one() {
                        write!(f, "{slot_text}")?;
                    } else {
                        write!(f, "{}*{slot_text}", fmt_rat(&mag))?;
                    }
                } else if mag.is_one() {
                    write!(f, "{m}*{slot_text}")?;
                } else {
                    write!(f, "{}*{m}*{slot_text}", fmt_rat(&mag))?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Derived structures
// ---------------------------------------------------------------------------

/// Result of [`Cochain::skew_form`]: `original = skew + δ(witness)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewForm {
    /// The antisymmetric part.
    pub skew: Cochain,
    /// A 1-cochain whose coboundary is the symmetric part.
    pub witness: Cochain,
}

/// Result of [`Cochain::normal_form3`]: canonical coefficients on the basis
/// `{∂_i⊗∂_j⊗∂_k : i<j<k}` plus a coboundary certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm3 {
    dim: usize,
    /// Coefficient of `∂_i⊗∂_j⊗∂_k` keyed by `(i,j,k)` with `i<j<k`.
    pub coeffs: BTreeMap<(u32, u32, u32), Polynomial>,
    /// 2-cochain with `input = canonical + δ(certificate)`.
    pub certificate: Cochain,
}

impl NormalForm3 {
    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether every canonical coefficient vanishes.
    pub fn is_canonically_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The canonical part `Σ coeffs_{ijk}·∂_i⊗∂_j⊗∂_k` as a cochain.
    pub fn canonical_cochain(&self) -> Cochain {
        let mut out = Cochain::zero(self.dim, 3);
        for (&(i, j, k), c) in &self.coeffs {
            out = out.add(&Cochain::from_term(
                c.clone(),
                vec![
                    MultiIndex::unit(self.dim, i),
                    MultiIndex::unit(self.dim, j),
                    MultiIndex::unit(self.dim, k),
                ],
            ));
        }
        out
    }

    /// Reconstructs `canonical + δ(certificate)`; equals the reduced input.
    pub fn reconstruct(&self) -> Cochain {
        self.canonical_cochain().add(&self.certificate.coboundary())
    }
}

// ---------------------------------------------------------------------------
// Leibniz splitting helper
// ---------------------------------------------------------------------------

/// All ways to write `rem = β₁ + … + β_parts`, with multinomial weights.
fn leibniz_splits(rem: &MultiIndex, parts: usize) -> Vec<(Vec<MultiIndex>, Rat)> {
    if parts == 0 {
        return if rem.is_zero() { vec![(Vec::new(), rat_int(1))] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![(vec![rem.clone()], rat_int(1))];
    }
    let mut out = Vec::new();
    for beta in rem.sub_indices() {
        let c = rem.leibniz_coeff(&beta);
        let rest = rem.checked_sub(&beta).expect("beta ≤ rem");
        for (mut tail, tc) in leibniz_splits(&rest, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(beta.clone());
            v.append(&mut tail);
            out.push((v, &c * &tc));
        }
    }
    out
}
