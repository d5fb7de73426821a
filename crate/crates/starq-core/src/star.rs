//! Star products on polynomial algebras, truncated at a fixed order in the
//! formal parameter `h`.
//!
//! A star product is described by its sequence of bidifferential levels
//! `F₀, F₁, F₂, …` (2-cochains, `F₀` = multiplication):
//! `a ⋆ b = Σₙ hⁿ·Fₙ(a,b)`.  Provided constructors:
//!
//! * [`StarSeries::basic`] — `Fₙ = (1/n!)·D₁ⁿ ⊗ D₂ⁿ` for a commuting pair of
//!   derivations (the exponential formula `μ∘exp(h·D₁⊗D₂)`);
//! * [`StarSeries::multi`] — the same exponential for a weighted sum
//!   `Σ cₖ·D₁ₖ⊗D₂ₖ` over pairwise commuting derivations;
//! * [`StarSeries::cgg`] — the variant for a pair with `[D₁,D₂] = D₁`, where
//!   the right leg uses falling-factorial powers `[D₂]ₙ = D₂(D₂−1)⋯(D₂−n+1)`;
//! * [`StarSeries::weyl`], [`StarSeries::quantum_plane`] — classic instances;
//! * [`StarSeries::trivial`] — the undeformed product;
//! * [`StarSeries::from_levels`] — explicitly given levels.
//!
//! [`StarSeries::commutator`] additionally searches for a termination
//! certificate: a level from which on every `Fₙ` annihilates the given
//! argument pair, so that the commutator series is in fact a (Laurent-free)
//! polynomial in `h` rather than merely formal.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;



use crate::cochain::Cochain;
use crate::diffop::Derivation;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{factorial, rat_int, Rat};

// ---------------------------------------------------------------------------
// Truncated series in the deformation parameter
// ---------------------------------------------------------------------------

/// A polynomial-coefficient series `Σ_{n=0}^{order} coeffs[n]·hⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HbarSeries {
    dim: usize,
    coeffs: Vec<Polynomial>,
}

impl HbarSeries {
    /// Builds a series from its coefficient list (`coeffs[n]` is the `hⁿ`
    /// coefficient; the truncation order is `coeffs.len() − 1`).
    pub fn new(dim: usize, coeffs: Vec<Polynomial>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the h^0 coefficient");
        for c in &coeffs {
            assert_eq!(c.dim(), dim, "coefficient from a ring of different dimension");
        }
        HbarSeries { dim, coeffs }
    }

    /// The zero series at the given truncation order.
    pub fn zero(dim: usize, order: u32) -> Self {
        HbarSeries { dim, coeffs: vec![Polynomial::zero(dim); order as usize + 1] }
    }

    /// A plain polynomial viewed as a series (all higher coefficients zero).
    pub fn constant(p: &Polynomial, order: u32) -> Self {
        let mut coeffs = vec![Polynomial::zero(p.dim()); order as usize + 1];
        coeffs[0] = p.clone();
        HbarSeries { dim: p.dim(), coeffs }
    }

    /// The exponential series `exp(h) = Σ hⁿ/n!` with constant coefficients.
    pub fn exp_hbar(dim: usize, order: u32) -> Self {
        let coeffs = (0..=order)
            .map(|n| Polynomial::constant(dim, factorial(n).recip()))
            .collect();
        HbarSeries { dim, coeffs }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Truncation order.
    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// The `hⁿ` coefficient.
    ///
    /// # Panics
    ///
    /// Panics if `n` exceeds the truncation order.
    pub fn coeff(&self, n: u32) -> &Polynomial {
        &self.coeffs[n as usize]
    }

    /// Whether every stored coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Termwise sum, truncated to the smaller order.
    pub fn add(&self, rhs: &HbarSeries) -> HbarSeries {
        self.zip(rhs, |a, b| a + b)
    }

    /// Termwise difference, truncated to the smaller order.
    pub fn sub(&self, rhs: &HbarSeries) -> HbarSeries {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(
        &self,
        rhs: &HbarSeries,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> HbarSeries {
        assert_eq!(self.dim, rhs.dim, "series over rings of different dimension");
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f(&self.coeffs[i], &rhs.coeffs[i])).collect();
        HbarSeries { dim: self.dim, coeffs }
    }

    /// Negation.
    pub fn neg(&self) -> HbarSeries {
        self.scale(&rat_int(-1))
    }

    /// Scales every coefficient by a rational.
    pub fn scale(&self, c: &Rat) -> HbarSeries {
        HbarSeries {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, rhs: &HbarSeries) -> HbarSeries {
        assert_eq!(self.dim, rhs.dim, "series over rings of different dimension");
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![Polynomial::zero(self.dim); n];
        for i in 0..n {
            for j in 0..n - i {
                if self.coeffs[i].is_zero() || rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        HbarSeries { dim: self.dim, coeffs }
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*h")?,
                _ => write!(f, "({c})*h^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Star product kinds
// ---------------------------------------------------------------------------

/// The construction recipe behind a [`StarSeries`].
#[derive(Debug, Clone)]
pub enum StarKind {
    /// `Fₙ = (1/n!)·D₁ⁿ ⊗ D₂ⁿ` for commuting `D₁, D₂`.
    Basic {
        /// Left-leg derivation.
        d1: Derivation,
        /// Right-leg derivation.
        d2: Derivation,
    },
    /// Exponential of `Σ cₖ·D₁ₖ ⊗ D₂ₖ` over pairwise commuting derivations.
    Multi {
        /// Weighted derivation pairs `(cₖ, D₁ₖ, D₂ₖ)`.
        pairs: Vec<(Rat, Derivation, Derivation)>,
    },
    /// `Fₙ = (1/n!)·D₁ⁿ ⊗ [D₂]ₙ` for a pair with `[D₁,D₂] = D₁`, where
    /// `[D₂]ₙ = D₂(D₂−1)⋯(D₂−n+1)`.
    Cgg {
        /// Left-leg derivation (the commutator value).
        d1: Derivation,
        /// Right-leg derivation, used through falling-factorial powers.
        d2: Derivation,
    },
    /// Explicit levels `F₁, F₂, …` (level 0 is always multiplication).
    Custom {
        /// The levels above 0, in order.
        higher_levels: Vec<Cochain>,
    },
}

/// Whether a star commutator is certified to be polynomial in `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Termination {
    /// Every level `Fₙ` with `n ≥ level` annihilates both argument orders.
    Terminated {
        /// The first level from which on everything vanishes.
        level: u32,
    },
    /// No termination certificate was found; the series is formal and the
    /// reported coefficients are exact only up to the truncation order.
    Formal,
}

/// A star commutator `a⋆b − b⋆a` together with its termination status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCommutator {
    /// The commutator series.
    pub series: HbarSeries,
    /// Certificate that the series terminates, if one was found.
    pub termination: Termination,
}

// ---------------------------------------------------------------------------
// Star series
// ---------------------------------------------------------------------------

/// A star product with levels precomputed through a fixed truncation order.
#[derive(Debug, Clone)]
pub struct StarSeries {
    dim: usize,
    order: u32,
    kind: StarKind,
    levels: Vec<Cochain>,
}

impl StarSeries {
    /// The exponential star product of a commuting derivation pair.
    ///
    /// # Errors
    ///
    /// [`Error::NotCommuting`] if `[d1, d2] ≠ 0`; [`Error::DimMismatch`] if
    /// the derivations live in different dimensions.
    pub fn basic(d1: Derivation, d2: Derivation, order: u32) -> Result<Self> {
        if d1.dim() != d2.dim() {
            return Err(Error::DimMismatch { expected: d1.dim(), found: d2.dim() });
        }
        if !d1.commutes_with(&d2) {
            return Err(Error::NotCommuting);
        }
        let dim = d1.dim();
        let pow1 = operator_powers(&d1, order);
        let pow2 = operator_powers(&d2, order);
        let levels = (0..=order as usize)
            .map(|n| pow1[n].cup(&pow2[n]).scale(&factorial(n as u32).recip()))
            .collect();
        Ok(StarSeries { dim, order, kind: StarKind::Basic { d1, d2 }, levels })
    }

    /// The undeformed star product: `F₀` = multiplication, `Fₙ = 0` above.
    pub fn trivial(dim: usize, order: u32) -> Self {
        let mut levels = vec![Cochain::multiplication(dim)];
        levels.extend((0..order).map(|_| Cochain::zero(dim, 2)));
        StarSeries { dim, order, kind: StarKind::Multi { pairs: Vec::new() }, levels }
    }

    /// The exponential star product of a weighted sum `Σ cₖ·D₁ₖ⊗D₂ₖ`.
    /// All listed derivations must pairwise commute.  An empty list yields
    /// the trivial deformation; since no pair then constrains the ambient
    /// dimension, it defaults to 1 (see [`StarSeries::trivial`] to pick it).
    ///
    /// # Errors
    ///
    /// [`Error::NotCommuting`] if any two of the derivations fail to
    /// commute; [`Error::DimMismatch`] on mixed dimensions.
    pub fn multi(pairs: Vec<(Rat, Derivation, Derivation)>, order: u32) -> Result<Self> {
        if pairs.is_empty() {
            return Ok(Self::trivial(1, order));
        }
        let dim = pairs[0].1.dim();
        let mut all: Vec<&Derivation> = Vec::new();
        for (_, a, b) in &pairs {
            all.push(a);
            all.push(b);
        }
        for d in &all {
            if d.dim() != dim {
                return Err(Error::DimMismatch { expected: dim, found: d.dim() });
            }
        }
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if !all[i].commutes_with(all[j]) {
                    return Err(Error::NotCommuting);
                }
            }
        }
        let m = pairs.len();
        let pow1: Vec<Vec<Cochain>> =
            pairs.iter().map(|(_, a, _)| operator_powers(a, order)).collect();
        let pow2: Vec<Vec<Cochain>> =
            pairs.iter().map(|(_, _, b)| operator_powers(b, order)).collect();
        let mut levels = Vec::with_capacity(order as usize + 1);
        for n in 0..=order {
            let mut level = Cochain::zero(dim, 2);
            for combo in compositions(n, m) {
                let mut weight = rat_int(1);
                let mut left = Cochain::identity_op(dim);
                let mut right = Cochain::identity_op(dim);
                for (k, &e) in combo.iter().enumerate() {
                    let c = &pairs[k].0;
                    let mut ck = rat_int(1);
                    for _ in 0..e {
                        ck = &ck * c;
                    }
                    weight = &weight * &(&ck * &factorial(e).recip());
                    left = left.comp_at(1, &pow1[k][e as usize]).expect("slot 1 of a 1-cochain");
                    right = right.comp_at(1, &pow2[k][e as usize]).expect("slot 1 of a 1-cochain");
                }
                level = level.add(&left.cup(&right).scale(&weight));
            }
            levels.push(level);
        }
        Ok(StarSeries { dim, order, kind: StarKind::Multi { pairs }, levels })
    }

    /// The star product for a derivation pair with `[d1, d2] = d1`, using
    /// falling-factorial powers of `d2` on the right leg.
    ///
    /// # Errors
    ///
    /// [`Error::WrongCommutator`] unless `[d1, d2] = d1` exactly;
    /// [`Error::DimMismatch`] on mixed dimensions.
    pub fn cgg(d1: Derivation, d2: Derivation, order: u32) -> Result<Self> {
        if d1.dim() != d2.dim() {
            return Err(Error::DimMismatch { expected: d1.dim(), found: d2.dim() });
        }
        if d1.commutator(&d2) != d1 {
            return Err(Error::WrongCommutator);
        }
        let dim = d1.dim();
        let pow1 = operator_powers(&d1, order);
        let desc = falling_factorial_powers(&d2, order);
        let levels = (0..=order as usize)
            .map(|n| pow1[n].cup(&desc[n]).scale(&factorial(n as u32).recip()))
            .collect();
        Ok(StarSeries { dim, order, kind: StarKind::Cgg { d1, d2 }, levels })
    }

    /// The Weyl star product on 2 variables: `D₁ = ∂₁`, `D₂ = ∂₂`.
    pub fn weyl(order: u32) -> Self {
        Self::basic(Derivation::partial(2, 1), Derivation::partial(2, 2), order)
            .expect("coordinate partials commute")
    }

    /// The quantum-plane star product on 2 variables:
    /// `D₁ = x₁∂₁`, `D₂ = x₂∂₂` (Euler scalings, which commute).
    pub fn quantum_plane(order: u32) -> Self {
        let d1 = Derivation::coordinate(2, 1, Polynomial::var(2, 1));
        let d2 = Derivation::coordinate(2, 2, Polynomial::var(2, 2));
        Self::basic(d1, d2, order).expect("Euler scalings commute")
    }

    /// A star product from explicitly given levels `F₁, F₂, …` (`F₀` is
    /// always multiplication).  The truncation order is `higher_levels.len()`.
    ///
    /// # Errors
    ///
    /// [`Error::ArityMismatch`] if some level is not a 2-cochain;
    /// [`Error::DimMismatch`] on mixed dimensions.
    pub fn from_levels(dim: usize, higher_levels: Vec<Cochain>) -> Result<Self> {
        for lvl in &higher_levels {
            if lvl.arity() != 2 {
                return Err(Error::ArityMismatch { expected: 2, found: lvl.arity() });
            }
            if lvl.dim() != dim {
                return Err(Error::DimMismatch { expected: dim, found: lvl.dim() });
            }
        }
        let order = higher_levels.len() as u32;
        let mut levels = vec![Cochain::multiplication(dim)];
        levels.extend(higher_levels.iter().cloned());
        Ok(StarSeries { dim, order, kind: StarKind::Custom { higher_levels }, levels })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Truncation order.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The construction recipe.
    pub fn kind(&self) -> &StarKind {
        &self.kind
    }

    /// The level-`n` bidifferential cochain `Fₙ`.
    ///
    /// # Errors
    ///
    /// [`Error::TruncationTooSmall`] if `n` exceeds the truncation order.
    pub fn level(&self, n: u32) -> Result<&Cochain> {
        self.levels
            .get(n as usize)
            .ok_or(Error::TruncationTooSmall { needed: n, available: self.order })
    }

    /// The star product `a ⋆ b` as a truncated series.
    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<HbarSeries> {
        let coeffs = self
            .levels
            .iter()
            .map(|f| f.apply(&[a.clone(), b.clone()]))
            .collect::<Result<Vec<_>>>()?;
        Ok(HbarSeries::new(self.dim, coeffs))
    }

    /// The star product extended bilinearly to series arguments; the result
    /// is exact through the smallest truncation order involved.
    pub fn mul_series(&self, a: &HbarSeries, b: &HbarSeries) -> Result<HbarSeries> {
        if a.dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: a.dim() });
        }
        if b.dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: b.dim() });
        }
        let order = self.order.min(a.order()).min(b.order());
        let mut coeffs = vec![Polynomial::zero(self.dim); order as usize + 1];
        for n in 0..=order {
            for i in 0..=n {
                for j in 0..=n - i {
                    let k = n - i - j;
                    let ai = a.coeff(i);
                    let bj = b.coeff(j);
                    if ai.is_zero() || bj.is_zero() {
                        continue;
                    }
                    let val = self.levels[k as usize].apply(&[ai.clone(), bj.clone()])?;
                    coeffs[n as usize] += &val;
                }
            }
        }
        Ok(HbarSeries::new(self.dim, coeffs))
    }

    /// The associator `(a⋆b)⋆c − a⋆(b⋆c)`, exact through the truncation
    /// order; identically zero for an associative star product.
    pub fn associator(
        &self,
        a: &Polynomial,
        b: &Polynomial,
        c: &Polynomial,
    ) -> Result<HbarSeries> {
        let ab = self.mul(a, b)?;
        let bc = self.mul(b, c)?;
        let left = self.mul_series(&ab, &HbarSeries::constant(c, self.order))?;
        let right = self.mul_series(&HbarSeries::constant(a, self.order), &bc)?;
        Ok(left.sub(&right))
    }

    /// The level-`n` associativity defect cochain
    /// `Σ_{i+j=n} Fᵢ∘Fⱼ` (insertion composition with alternating signs);
    /// identically zero for every `n` exactly when the star is associative.
    ///
    /// # Errors
    ///
    /// [`Error::TruncationTooSmall`] if `n` exceeds the truncation order.
    pub fn assoc_defect(&self, n: u32) -> Result<Cochain> {
        let mut out = Cochain::zero(self.dim, 3);
        for i in 0..=n {
            let fi = self.level(i)?;
            let fj = self.level(n - i)?;
            out = out.add(&fi.comp(fj)?);
        }
        Ok(out)
    }

    /// The star commutator `a⋆b − b⋆a`, with a termination certificate when
    /// one can be found.
    ///
    /// # Errors
    ///
    /// [`Error::TruncationTooSmall`] if a certificate proves nonzero levels
    /// above the truncation order exist (the stored coefficients could not
    /// represent the full polynomial in `h`).
    pub fn commutator(&self, a: &Polynomial, b: &Polynomial) -> Result<StarCommutator> {
        let series = self.mul(a, b)?.sub(&self.mul(b, a)?);
        let fwd = self.termination_level(a, b);
        let bwd = self.termination_level(b, a);
        let termination = match (fwd, bwd) {
            (Some(k1), Some(k2)) => {
                let level = k1.max(k2);
                if level > 0 && level - 1 > self.order {
                    return Err(Error::TruncationTooSmall {
                        needed: level - 1,
                        available: self.order,
                    });
                }
                Termination::Terminated { level }
            }
            _ => Termination::Formal,
        };
        Ok(StarCommutator { series, termination })
    }

    /// Searches for the smallest `k` such that every level `Fₙ` with `n ≥ k`
    /// provably annihilates the pair `(a, b)` — because the left legs kill
    /// `a` or the right legs kill `b` from that power on.  Returns `None`
    /// when no certificate exists within the search budget (e.g. for Euler
    /// scalings, whose powers never annihilate a variable).
    pub fn termination_level(&self, a: &Polynomial, b: &Polynomial) -> Option<u32> {
        let budget = self.order + a.total_degree() + b.total_degree() + 2;
        match &self.kind {
            StarKind::Basic { d1, d2 } => {
                for k in 0..=budget {
                    if d1.apply_iter(k, a).is_zero() || d2.apply_iter(k, b).is_zero() {
                        return Some(k);
                    }
                }
                None
            }
            StarKind::Multi { pairs } => {
                let left: Vec<&Derivation> = pairs.iter().map(|(_, d, _)| d).collect();
                let right: Vec<&Derivation> = pairs.iter().map(|(_, _, d)| d).collect();
                let la = products_vanish_level(&left, a, budget);
                let rb = products_vanish_level(&right, b, budget);
                match (la, rb) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                }
            }
            StarKind::Cgg { d1, d2 } => {
                let mut g = b.clone();
                for k in 0..=budget {
                    if d1.apply_iter(k, a).is_zero() || g.is_zero() {
                        return Some(k);
                    }
                    // [D₂]_{k+1} = (D₂ − k)∘[D₂]_k, all factors commute.
                    g = &d2.apply(&g) - &g.scale(&rat_int(k as i64));
                }
                None
            }
            StarKind::Custom { .. } => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Internal helpers
// ---------------------------------------------------------------------------

/// Operator powers `D⁰ = id, D¹, …, D^order` as 1-cochains.
fn operator_powers(d: &Derivation, order: u32) -> Vec<Cochain> {
    let base = Cochain::from_derivation(d);
    let mut out = vec![Cochain::identity_op(d.dim())];
    for _ in 0..order {
        let next = base
            .comp_at(1, out.last().expect("nonempty"))
            .expect("slot 1 of a 1-cochain");
        out.push(next);
    }
    out
}

/// Falling-factorial powers `[D]₀ = id`, `[D]ₙ₊₁ = (D − n)∘[D]ₙ`.
fn falling_factorial_powers(d: &Derivation, order: u32) -> Vec<Cochain> {
    let base = Cochain::from_derivation(d);
    let mut out = vec![Cochain::identity_op(d.dim())];
    for n in 0..order {
        let prev = out.last().expect("nonempty");
        let next = base
            .comp_at(1, prev)
            .expect("slot 1 of a 1-cochain")
            .sub(&prev.scale(&rat_int(n as i64)));
        out.push(next);
    }
    out
}

/// Weak compositions of `n` into `m` parts.
fn compositions(n: u32, m: usize) -> Vec<Vec<u32>> {
    if m == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if m == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut tail in compositions(n - first, m - 1) {
            let mut v = Vec::with_capacity(m);
            v.push(first);
            v.append(&mut tail);
            out.push(v);
        }
    }
    out
}

/// Smallest `k ≤ budget` such that every product of `k` factors drawn from
/// `ops` annihilates `p`; monotone in `k` since longer products factor
/// through shorter ones.
fn products_vanish_level(ops: &[&Derivation], p: &Polynomial, budget: u32) -> Option<u32> {
    let mut layer: Vec<Polynomial> = if p.is_zero() { Vec::new() } else { vec![p.clone()] };
    for k in 0..=budget {
        if layer.is_empty() {
            return Some(k);
        }
        let mut next = Vec::new();
        for q in &layer {
            for d in ops {
                let r = d.apply(q);
                if !r.is_zero() {
                    next.push(r);
                }
            }
        }
        layer = next;
    }
    None
}
