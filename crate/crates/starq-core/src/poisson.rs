//! Bivectors, brackets, and the dimension-d obstruction equations.
//!
//! A [`Bivector`] stores the strict upper-triangular coefficients `a_ij`
//! (`i < j`) of an infinitesimal `F₁ = Σ a_ij·∂_i⊗∂_j`; the implied skew
//! form `Σ (a_ij/2)(∂_i⊗∂_j − ∂_j⊗∂_i)` is the candidate Poisson bracket.
//! Provided here:
//!
//! * the linear-coefficient bivector induced by Lie structure constants
//!   ([`kks_bivector`]) and the Jacobiator test;
//! * the primary obstruction: [`obstruction_coeffs`] reduces `F₁∘F₁` modulo
//!   coboundaries to its canonical coefficients on `∂_i⊗∂_j⊗∂_k`, `i<j<k`;
//!   [`obs3_lhs`] is the explicit six-term dimension-3 left-hand side;
//! * the quadratic scaling identity in dimension 3
//!   ([`varphi_scale_check`]) and the bounded search for its failure in
//!   dimension 4 ([`d4_scale_counterexample_search`]);
//! * solvers: [`reduced_solve_d3`] for the reduced dimension-3 obstruction
//!   equation and [`genode_solve`] for the first-order linear series ODE
//!   `y′ + p·y = q`;
//! * [`quasibasic_factor`], the constructive factorization `a_ij = φ·f_i·f_j`
//!   under the separated ratio conditions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use core::fmt;
use core::ops::Neg;

use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::poly::{MultiIndex, Polynomial};
use crate::ratfun::RationalFunction;
use crate::rational::{rat, Rat};
use crate::series::TruncatedSeries;

// ---------------------------------------------------------------------------
// Coefficient rings
// ---------------------------------------------------------------------------

/// Commutative coefficient rings with partial derivatives — implemented by
/// [`Polynomial`] and [`RationalFunction`] so the obstruction expressions can
/// be evaluated over either.
pub trait DiffRing: Clone + PartialEq + fmt::Display {
    /// Ambient dimension (number of variables).
    fn ring_dim(&self) -> usize;
    /// The zero element.
    fn ring_zero(dim: usize) -> Self;
    /// Whether this is zero.
    fn ring_is_zero(&self) -> bool;
    /// Sum.
    fn ring_add(&self, rhs: &Self) -> Self;
    /// Difference.
    fn ring_sub(&self, rhs: &Self) -> Self;
    /// Product.
    fn ring_mul(&self, rhs: &Self) -> Self;
    /// Partial derivative in direction `var` (1-based).
    fn ring_derivative(&self, var: u32) -> Self;
    /// Negation.
    fn ring_neg(&self) -> Self {
        Self::ring_zero(self.ring_dim()).ring_sub(self)
    }
}

impl DiffRing for Polynomial {
    fn ring_dim(&self) -> usize {
        self.dim()
    }
    fn ring_zero(dim: usize) -> Self {
        Polynomial::zero(dim)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_derivative(&self, var: u32) -> Self {
        self.derivative(var)
    }
}

impl DiffRing for RationalFunction {
    fn ring_dim(&self) -> usize {
        self.dim()
    }
    fn ring_zero(dim: usize) -> Self {
        RationalFunction::zero(dim)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_derivative(&self, var: u32) -> Self {
        self.derivative(var)
    }
}

// ---------------------------------------------------------------------------
// Bivectors
// ---------------------------------------------------------------------------

/// Strict upper-triangular coefficients `a_ij`, `1 ≤ i < j ≤ d`, of an
/// antisymmetric bidirectional field; `a_ji = −a_ij` is implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivector<C> {
    dim: usize,
    entries: BTreeMap<(u32, u32), C>,
}

impl<C: DiffRing> Bivector<C> {
    /// The zero bivector in dimension `dim`.
    pub fn new(dim: usize) -> Self {
        Bivector { dim, entries: BTreeMap::new() }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets the stored coefficient `a_ij`.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] unless `i < j`; [`Error::VarOutOfRange`] if an
    /// index exceeds the dimension; [`Error::DimMismatch`] if the value lives
    /// in a different polynomial ring.
    pub fn set(&mut self, i: u32, j: u32, value: C) -> Result<()> {
        if i >= j {
            return Err(Error::InvalidInput(format!(
                "bivector entries are stored with i < j; got ({i},{j})"
            )));
        }
        if i == 0 || j as usize > self.dim {
            return Err(Error::VarOutOfRange { var: j, dim: self.dim, pos: 0 });
        }
        if value.ring_dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: value.ring_dim() });
        }
        if value.ring_is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
        Ok(())
    }

    /// The coefficient `a_ij` for any `i ≠ j`, using `a_ji = −a_ij`;
    /// `a_ii = 0`.
    pub fn entry(&self, i: u32, j: u32) -> C {
        if i == j {
            return C::ring_zero(self.dim);
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.entries.get(&key) {
            None => C::ring_zero(self.dim),
            Some(v) => {
                if flip {
                    v.ring_neg()
                } else {
                    v.clone()
                }
            }
        }
    }

    /// Iterates over the stored nonzero upper-triangular entries.
    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.entries.iter()
    }

    /// Whether every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Multiplies every coefficient by `f`.
    pub fn scale_by(&self, f: &C) -> Bivector<C> {
        let mut out = Bivector::new(self.dim);
        for (&(i, j), v) in &self.entries {
            let w = f.ring_mul(v);
            if !w.ring_is_zero() {
                out.entries.insert((i, j), w);
            }
        }
        out
    }
}

impl Bivector<Polynomial> {
    /// The normal-form 2-cochain `Σ_{i<j} a_ij·∂_i⊗∂_j`.
    pub fn normal_cochain(&self) -> Cochain {
        let mut out = Cochain::zero(self.dim, 2);
        for (&(i, j), a) in &self.entries {
            out = out.add(&Cochain::pair(self.dim, i, j).scale_poly(a));
        }
        out
    }

    /// The skew 2-cochain `Σ_{i<j} (a_ij/2)·(∂_i⊗∂_j − ∂_j⊗∂_i)`, the
    /// candidate Poisson bracket.
    pub fn skew_cochain(&self) -> Cochain {
        let mut out = Cochain::zero(self.dim, 2);
        let half = rat(1, 2);
        for (&(i, j), a) in &self.entries {
            let sym = Cochain::pair(self.dim, i, j).sub(&Cochain::pair(self.dim, j, i));
            out = out.add(&sym.scale_poly(&a.scale(&half)));
        }
        out
    }

    /// The bracket `{u, v}` defined by the skew form.
    pub fn bracket(&self, u: &Polynomial, v: &Polynomial) -> Result<Polynomial> {
        self.skew_cochain().apply(&[u.clone(), v.clone()])
    }

    /// The Jacobiator `{{a,b},c} + {{b,c},a} + {{c,a},b}`; identically zero
    /// exactly when the bracket is Poisson.
    pub fn jacobiator(&self, a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Result<Polynomial> {
        let ab_c = self.bracket(&self.bracket(a, b)?, c)?;
        let bc_a = self.bracket(&self.bracket(b, c)?, a)?;
        let ca_b = self.bracket(&self.bracket(c, a)?, b)?;
        Ok(&(&ab_c + &bc_a) + &ca_b)
    }

    /// Whether the Jacobi identity holds.  Because the bracket is a
    /// biderivation with first-order coefficients, its Jacobiator is a
    /// trivector field, so vanishing on all coordinate triples is decisive.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim as u32;
        for i in 1..=d {
            for j in i + 1..=d {
                for k in j + 1..=d {
                    let xi = Polynomial::var(self.dim, i);
                    let xj = Polynomial::var(self.dim, j);
                    let xk = Polynomial::var(self.dim, k);
                    let jac = self
                        .jacobiator(&xi, &xj, &xk)
                        .expect("coordinate polynomials share the bivector's ring");
                    if !jac.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Views the coefficients as rational functions (for the solver and
    /// factorization paths).
    pub fn to_rational(&self) -> Bivector<RationalFunction> {
        let mut out = Bivector::new(self.dim);
        for (&(i, j), a) in &self.entries {
            out.entries.insert((i, j), RationalFunction::from_polynomial(a.clone()));
        }
        out
    }
}

/// Builds a basic bivector `a_ij = c_ij·f_i(x_i)·f_j(x_j)` from weights and
/// single-variable polynomials (`singles[i]` must depend only on `x_{i+1}`).
///
/// # Errors
///
/// [`Error::InvalidInput`] if some `singles[i]` depends on a foreign
/// variable or a weight index is out of order/range.
pub fn basic_bivector(
    weights: &[(u32, u32, Rat)],
    singles: &[Polynomial],
) -> Result<Bivector<Polynomial>> {
    let dim = singles.len();
    for (pos, f) in singles.iter().enumerate() {
        if f.dim() != dim {
            return Err(Error::DimMismatch { expected: dim, found: f.dim() });
        }
        for var in 1..=dim as u32 {
            if var as usize != pos + 1 && f.depends_on(var) {
                return Err(Error::InvalidInput(format!(
                    "factor {} of a basic bivector must depend only on x{}",
                    pos + 1,
                    pos + 1
                )));
            }
        }
    }
    let mut out = Bivector::new(dim);
    for &(i, j, ref c) in weights {
        if i >= j || i == 0 || j as usize > dim {
            return Err(Error::InvalidInput(format!(
                "basic bivector weight index ({i},{j}) out of order or range"
            )));
        }
        let prod = &singles[i as usize - 1].scale(c) * &singles[j as usize - 1];
        let total = &out.entry(i, j) + &prod;
        out.set(i, j, total)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Lie structures and their linear bivectors
// ---------------------------------------------------------------------------

/// Antisymmetric structure constants `c_ij^k` of a candidate Lie bracket
/// `[x_i, x_j] = Σ_k c_ij^k·x_k` (Jacobi is not assumed — it is tested).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieStructure {
    dim: usize,
    c: BTreeMap<(u32, u32, u32), Rat>,
}

impl LieStructure {
    /// The zero (abelian) structure in dimension `dim`.
    pub fn new(dim: usize) -> Self {
        LieStructure { dim, c: BTreeMap::new() }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `c_ij^k` (requires `i < j`, all indices in range).
    pub fn set(&mut self, i: u32, j: u32, k: u32, value: Rat) -> Result<()> {
        if i >= j {
            return Err(Error::InvalidInput(format!(
                "structure constants are stored with i < j; got ({i},{j})"
            )));
        }
        if i == 0 || j as usize > self.dim || k == 0 || k as usize > self.dim {
            return Err(Error::VarOutOfRange { var: k.max(j), dim: self.dim, pos: 0 });
        }
        use num_traits::Zero;
        if value.is_zero() {
            self.c.remove(&(i, j, k));
        } else {
            self.c.insert((i, j, k), value);
        }
        Ok(())
    }

    /// The constant `c_ij^k` for any `i ≠ j` (antisymmetric in `i,j`).
    pub fn structure_const(&self, i: u32, j: u32, k: u32) -> Rat {
        use num_traits::Zero;
        if i == j {
            return Rat::zero();
        }
        if i < j {
            self.c.get(&(i, j, k)).cloned().unwrap_or_else(Rat::zero)
        } else {
            -self.c.get(&(j, i, k)).cloned().unwrap_or_else(Rat::zero)
        }
    }

    /// Iterates over the stored nonzero constants.
    pub fn constants(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rat)> {
        self.c.iter()
    }

    /// Whether the Jacobi identity
    /// `Σ_m (c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l) = 0` holds for
    /// all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        use num_traits::Zero;
        let d = self.dim as u32;
        for i in 1..=d {
            for j in i + 1..=d {
                for k in j + 1..=d {
                    for l in 1..=d {
                        let mut sum = Rat::zero();
                        for m in 1..=d {
                            sum += self.structure_const(i, j, m) * self.structure_const(m, k, l);
                            sum += self.structure_const(j, k, m) * self.structure_const(m, i, l);
                            sum += self.structure_const(k, i, m) * self.structure_const(m, j, l);
                        }
                        if !sum.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The linear-coefficient bivector `a_ij = Σ_k c_ij^k·x_k` induced by a
/// structure-constant table on the dual space.
pub fn kks_bivector(l: &LieStructure) -> Bivector<Polynomial> {
    let dim = l.dim();
    let mut out = Bivector::new(dim);
    let mut sums: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
    for (&(i, j, k), c) in l.constants() {
        let term = Polynomial::var(dim, k).scale(c);
        let entry = sums.entry((i, j)).or_insert_with(|| Polynomial::zero(dim));
        *entry += &term;
    }
    for ((i, j), p) in sums {
        out.set(i, j, p).expect("indices validated on insertion");
    }
    out
}

// ---------------------------------------------------------------------------
// Primary obstruction
// ---------------------------------------------------------------------------

/// The canonical coefficients of the primary obstruction `F₁∘F₁` on the
/// basis `∂_i⊗∂_j⊗∂_k`, `i<j<k` — one polynomial per triple (all `(d choose
/// 3)` keys are present, zero polynomials included).  The infinitesimal
/// extends one more order exactly when every coefficient vanishes.
///
/// `F₁∘F₁` splits as a coboundary (the terms with a repeated or second-order
/// factor) plus a first-order residual; the residual is reduced to canonical
/// form, which drops its own coboundary content with a certificate.  For
/// `d < 3` the map is empty: no such cocycles exist.
pub fn obstruction_coeffs(
    b: &Bivector<Polynomial>,
) -> Result<BTreeMap<(u32, u32, u32), Polynomial>> {
    let dim = b.dim();
    let mut out = BTreeMap::new();
    let d = dim as u32;
    for i in 1..=d {
        for j in i + 1..=d {
            for k in j + 1..=d {
                out.insert((i, j, k), Polynomial::zero(dim));
            }
        }
    }
    if dim < 3 {
        return Ok(out);
    }
    let f1 = b.normal_cochain();
    let square = f1.comp(&f1)?;
    let nf = square.first_order_part().normal_form3()?;
    for (key, value) in nf.coeffs {
        out.insert(key, value);
    }
    Ok(out)
}

/// Whether every primary-obstruction coefficient vanishes.
pub fn obstruction_vanishes(b: &Bivector<Polynomial>) -> Result<bool> {
    Ok(obstruction_coeffs(b)?.values().all(Polynomial::is_zero))
}

/// The explicit dimension-3 obstruction left-hand side
/// `−a₁₂∂₁a₁₃ + a₁₃∂₁a₁₂ − a₁₂∂₂a₂₃ + a₂₃∂₂a₁₂ − a₁₃∂₃a₂₃ + a₂₃∂₃a₁₃`,
/// over either polynomial or rational-function coefficients.  For
/// polynomial inputs it equals `obstruction_coeffs[(1,2,3)]` exactly.
pub fn obs3_lhs<C: DiffRing>(a12: &C, a13: &C, a23: &C) -> C {
    let t1 = a12.ring_mul(&a13.ring_derivative(1)).ring_neg();
    let t2 = a13.ring_mul(&a12.ring_derivative(1));
    let t3 = a12.ring_mul(&a23.ring_derivative(2)).ring_neg();
    let t4 = a23.ring_mul(&a12.ring_derivative(2));
    let t5 = a13.ring_mul(&a23.ring_derivative(3)).ring_neg();
    let t6 = a23.ring_mul(&a13.ring_derivative(3));
    t1.ring_add(&t2).ring_add(&t3).ring_add(&t4).ring_add(&t5).ring_add(&t6)
}

// ---------------------------------------------------------------------------
// Quadratic scaling
// ---------------------------------------------------------------------------

/// Result of [`varphi_scale_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarphiScaleReport {
    /// The base obstruction left-hand side for `B`.
    pub base: Polynomial,
    /// The obstruction left-hand side for `φ·B`.
    pub scaled: Polynomial,
    /// Whether `scaled = φ²·base` holds exactly (it always does in d=3).
    pub identity_holds: bool,
}

/// Verifies the dimension-3 identity `obs(φa₁₂, φa₁₃, φa₂₃) = φ²·obs(a₁₂,
/// a₁₃, a₂₃)`: scaling an infinitesimal by a function multiplies the
/// obstruction by its square, so vanishing is preserved.
///
/// # Errors
///
/// [`Error::DimMismatch`] unless `B` and `φ` live in dimension 3.
pub fn varphi_scale_check(b: &Bivector<Polynomial>, phi: &Polynomial) -> Result<VarphiScaleReport> {
    if b.dim() != 3 {
        return Err(Error::DimMismatch { expected: 3, found: b.dim() });
    }
    if phi.dim() != 3 {
        return Err(Error::DimMismatch { expected: 3, found: phi.dim() });
    }
    let (a12, a13, a23) = (b.entry(1, 2), b.entry(1, 3), b.entry(2, 3));
    let base = obs3_lhs(&a12, &a13, &a23);
    let scaled = obs3_lhs(&(phi * &a12), &(phi * &a13), &(phi * &a23));
    let identity_holds = scaled == &(phi * phi) * &base;
    Ok(VarphiScaleReport { base, scaled, identity_holds })
}

/// A witness that quadratic scaling fails in dimension 4: an
/// obstruction-free `B` and a factor `φ` for which `φ·B` is obstructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D4ScaleWitness {
    /// Index of the witness in the candidate list.
    pub index: usize,
    /// The triple whose coefficient breaks.
    pub triple: (u32, u32, u32),
    /// The nonzero obstruction coefficient of `φ·B`.
    pub coefficient: Polynomial,
}

/// Outcome of [`d4_scale_counterexample_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum D4ScaleSearch {
    /// A scaling-break witness was found.
    Witness(D4ScaleWitness),
    /// Every admissible candidate kept a vanishing obstruction.
    Exhausted {
        /// Candidates whose base bivector was obstruction-free.
        admissible: usize,
        /// Candidates skipped because the base was already obstructed.
        skipped: usize,
    },
}

/// Scans `(B, φ)` candidates in dimension 4 for the first admissible pair
/// (base `B` obstruction-free) whose scaled bivector `φ·B` has a nonzero
/// obstruction coefficient — the failure of quadratic scaling beyond
/// dimension 3.
///
/// # Errors
///
/// [`Error::DimMismatch`] if a candidate is not 4-dimensional.
pub fn d4_scale_counterexample_search(
    candidates: &[(Bivector<Polynomial>, Polynomial)],
) -> Result<D4ScaleSearch> {
    let mut admissible = 0usize;
    let mut skipped = 0usize;
    for (index, (b, phi)) in candidates.iter().enumerate() {
        if b.dim() != 4 {
            return Err(Error::DimMismatch { expected: 4, found: b.dim() });
        }
        if phi.dim() != 4 {
            return Err(Error::DimMismatch { expected: 4, found: phi.dim() });
        }
        if !obstruction_vanishes(b)? {
            skipped += 1;
            continue;
        }
        admissible += 1;
        let scaled = b.scale_by(phi);
        let coeffs = obstruction_coeffs(&scaled)?;
        if let Some((&triple, coefficient)) = coeffs.iter().find(|(_, v)| !v.is_zero()) {
            return Ok(D4ScaleSearch::Witness(D4ScaleWitness {
                index,
                triple,
                coefficient: coefficient.clone(),
            }));
        }
    }
    Ok(D4ScaleSearch::Exhausted { admissible, skipped })
}

// ---------------------------------------------------------------------------
// Poisson agreement
// ---------------------------------------------------------------------------

/// Result of [`poisson_equiv_check`]: the obstruction verdict and the
/// Jacobi verdict, which must agree — the primary obstruction of a skew
/// bivector vanishes exactly when its bracket is Poisson.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonEquivReport {
    /// All canonical obstruction coefficients.
    pub obstruction_coeffs: BTreeMap<(u32, u32, u32), Polynomial>,
    /// Whether every obstruction coefficient vanishes.
    pub obstruction_vanishes: bool,
    /// Whether the Jacobiator vanishes (coordinate triples are decisive;
    /// fixed probe triples are rechecked for good measure).
    pub jacobi_vanishes: bool,
    /// Whether the two verdicts agree.
    pub verdicts_agree: bool,
}

/// Computes both the obstruction coefficients and the Jacobi verdict and
/// reports whether the two vanishing verdicts agree (they always must; a
/// disagreement indicates an engine bug).
pub fn poisson_equiv_check(b: &Bivector<Polynomial>) -> Result<PoissonEquivReport> {
    let coeffs = obstruction_coeffs(b)?;
    let obstruction_vanishes = coeffs.values().all(Polynomial::is_zero);
    let mut jacobi_vanishes = b.jacobi_holds();
    if jacobi_vanishes {
        // Probe triples beyond coordinates; cannot overturn the coordinate
        // verdict mathematically, but guards the implementation.
        let dim = b.dim();
        let sum_vars = (1..=dim as u32)
            .map(|v| Polynomial::var(dim, v))
            .fold(Polynomial::zero(dim), |acc, p| &acc + &p);
        let sum_squares = (1..=dim as u32)
            .map(|v| Polynomial::var(dim, v).pow(2))
            .fold(Polynomial::zero(dim), |acc, p| &acc + &p);
        let mixed = if dim >= 2 {
            &Polynomial::var(dim, 1) * &Polynomial::var(dim, dim as u32)
        } else {
            Polynomial::one(dim)
        };
        jacobi_vanishes = b.jacobiator(&sum_vars, &sum_squares, &mixed)?.is_zero();
    }
    Ok(PoissonEquivReport {
        obstruction_vanishes,
        jacobi_vanishes,
        verdicts_agree: obstruction_vanishes == jacobi_vanishes,
        obstruction_coeffs: coeffs,
    })
}

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

/// Solves the reduced dimension-3 obstruction equation
/// `(∂₂ + a₁₃∂₃)a₂₃ − (∂₃a₁₃)·a₂₃ = −∂₁a₁₃` for `a₂₃`, with `a₁₂ = 1` and
/// `a₁₃` independent of `x₃`, order by order in `x₂`-degree.  All free
/// integration constants (the `x₂`-free parts) are set to zero; the result
/// is exact whenever the iteration stabilizes (always, for `x₃`-free data).
///
/// # Errors
///
/// [`Error::InvalidInput`] if `a₁₃` depends on `x₃`;
/// [`Error::DimMismatch`] unless `a₁₃` is 3-dimensional;
/// [`Error::TruncationTooSmall`] if the iteration fails to stabilize within
/// the degree budget.
pub fn reduced_solve_d3(a13: &Polynomial, n: u32) -> Result<TruncatedSeries> {
    if a13.dim() != 3 {
        return Err(Error::DimMismatch { expected: 3, found: a13.dim() });
    }
    if a13.depends_on(3) {
        return Err(Error::InvalidInput(
            "the reduced equation needs a13 to depend only on x1 and x2".into(),
        ));
    }
    let rhs_base = a13.derivative(1).neg();
    let mut y = Polynomial::zero(3);
    for _ in 0..=n + 1 {
        let rhs = &rhs_base - &(a13 * &y.derivative(3));
        let next = rhs.antiderivative(2).reduce_mod_degree(n + 1);
        if next == y {
            return Ok(TruncatedSeries::new(n, &y));
        }
        y = next;
    }
    Err(Error::TruncationTooSmall { needed: n + 1, available: n })
}

/// Solution of the linear series ODE `y′ + p·y = q` in one variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOdeSolution {
    /// The particular solution with `y(0) = 0`:
    /// `y = exp(−P)·∫(exp(P)·q)` where `P = ∫p`.
    pub particular: TruncatedSeries,
    /// The homogeneous generator `exp(−P)`; all solutions are
    /// `particular + c·homogeneous`.
    pub homogeneous: TruncatedSeries,
}

/// Solves `y′ + p·y = q` for truncated one-variable series by the integrating
/// factor `exp(P)`, `P = ∫p` (constant term zero).
///
/// # Errors
///
/// [`Error::DimMismatch`] unless `p` and `q` are one-variable series;
/// [`Error::TruncationTooSmall`] if either input carries fewer terms than
/// the requested working order `n`.
pub fn genode_solve(p: &TruncatedSeries, q: &TruncatedSeries, n: u32) -> Result<GenOdeSolution> {
    for s in [p, q] {
        if s.dim() != 1 {
            return Err(Error::DimMismatch { expected: 1, found: s.dim() });
        }
        if s.order() < n {
            return Err(Error::TruncationTooSmall { needed: n, available: s.order() });
        }
    }
    let p = p.truncate(n);
    let q = q.truncate(n);
    let big_p = p.antiderivative(1)?;
    let exp_p = big_p.exp()?;
    let exp_neg_p = big_p.neg().exp()?;
    let particular = &exp_neg_p * &(&exp_p * &q).antiderivative(1)?;
    Ok(GenOdeSolution { particular, homogeneous: exp_neg_p })
}

// ---------------------------------------------------------------------------
// Quasibasic factorization
// ---------------------------------------------------------------------------

/// Outcome of [`quasibasic_factor`].
#[derive(Debug, Clone, PartialEq)]
pub enum QuasibasicOutcome {
    /// The inputs factor as `a₁₂ = φf₁f₂, a₁₃ = φf₁f₃, a₂₃ = φf₂f₃`
    /// (verified exactly).
    Factored {
        /// The common scalar factor.
        phi: RationalFunction,
        /// Single-direction factor attached to `x₁`-slots.
        f1: RationalFunction,
        /// Single-direction factor attached to `x₂`-slots.
        f2: RationalFunction,
        /// Single-direction factor attached to `x₃`-slots.
        f3: RationalFunction,
    },
    /// A separated ratio condition fails; the field names it.
    Rejected {
        /// Human-readable description of the violated condition.
        condition: String,
    },
    /// The constructive recipe hit a degeneracy (e.g. a denominator zero at
    /// the substitution point `x₃ = 0`); no verdict.
    Inconclusive {
        /// What went wrong.
        reason: String,
    },
}

/// Checks the separated ratio conditions for the triple of directions
/// `(i, j, k)`: `∂_i(a_ij/a_ik) = 0`, `∂_k(a_ik/a_jk) = 0`,
/// `∂_j(a_jk/a_ij) = 0`.  Returns the first violated condition by name, or
/// `None` when all hold.
///
/// # Errors
///
/// [`Error::ZeroDenominator`] if a ratio divides by the zero function.
pub fn separated_conditions(
    aij: &RationalFunction,
    aik: &RationalFunction,
    ajk: &RationalFunction,
    i: u32,
    j: u32,
    k: u32,
) -> Result<Option<String>> {
    if !aij.div(aik)?.derivative(i).is_zero() {
        return Ok(Some(format!("d/dx{i} (a{i}{j}/a{i}{k}) != 0")));
    }
    if !aik.div(ajk)?.derivative(k).is_zero() {
        return Ok(Some(format!("d/dx{k} (a{i}{k}/a{j}{k}) != 0")));
    }
    if !ajk.div(aij)?.derivative(j).is_zero() {
        return Ok(Some(format!("d/dx{j} (a{j}{k}/a{i}{j}) != 0")));
    }
    Ok(None)
}

/// Factors a dimension-3 triple `(a₁₂, a₁₃, a₂₃)` as `a_ij = φ·f_i·f_j`
/// whenever the separated ratio conditions hold, following the
/// constructive recipe: read `f₂, f₁` off the ratios `a₁₃/a₁₂, a₂₃/a₁₂` at
/// `x₃ = 0` and recover `f₃` from the normalization `f₃(0) = 1`.  The
/// products are re-verified exactly before reporting success.
///
/// # Errors
///
/// [`Error::InvalidInput`] if any coefficient is zero;
/// [`Error::DimMismatch`] unless all inputs are 3-dimensional.
pub fn quasibasic_factor(
    a12: &RationalFunction,
    a13: &RationalFunction,
    a23: &RationalFunction,
) -> Result<QuasibasicOutcome> {
    for a in [a12, a13, a23] {
        if a.dim() != 3 {
            return Err(Error::DimMismatch { expected: 3, found: a.dim() });
        }
        if a.is_zero() {
            return Err(Error::InvalidInput(
                "quasibasic factorization needs all three coefficients nonzero".into(),
            ));
        }
    }
    if let Some(condition) = separated_conditions(a12, a13, a23, 1, 2, 3)? {
        return Ok(QuasibasicOutcome::Rejected { condition });
    }
    let b13 = a13.div(a12)?;
    let b23 = a23.div(a12)?;
    let b13_at0 = match b13.substitute_zero(3) {
        Ok(v) => v,
        Err(Error::ZeroDenominator) => {
            return Ok(QuasibasicOutcome::Inconclusive {
                reason: "a13/a12 has a denominator zero at x3 = 0".into(),
            })
        }
        Err(e) => return Err(e),
    };
    let b23_at0 = match b23.substitute_zero(3) {
        Ok(v) => v,
        Err(Error::ZeroDenominator) => {
            return Ok(QuasibasicOutcome::Inconclusive {
                reason: "a23/a12 has a denominator zero at x3 = 0".into(),
            })
        }
        Err(e) => return Err(e),
    };
    if b13_at0.is_zero() || b23_at0.is_zero() {
        return Ok(QuasibasicOutcome::Inconclusive {
            reason: "a coefficient ratio vanishes at x3 = 0".into(),
        });
    }
    let f2 = b13_at0.recip()?;
    let f1 = b23_at0.recip()?;
    let f3 = &b13 * &f2;
    let phi = a12.div(&(&f1 * &f2))?;
    let ok12 = &(&phi * &f1) * &f2 == *a12;
    let ok13 = &(&phi * &f1) * &f3 == *a13;
    let ok23 = &(&phi * &f2) * &f3 == *a23;
    if !(ok12 && ok13 && ok23) {
        return Ok(QuasibasicOutcome::Inconclusive {
            reason: "recovered factors do not reproduce the inputs".into(),
        });
    }
    Ok(QuasibasicOutcome::Factored { phi, f1, f2, f3 })
}

// ---------------------------------------------------------------------------
// Small helpers shared with tests
// ---------------------------------------------------------------------------

/// The elementary 3-cochain `∂_i⊗∂_j⊗∂_k`.
pub fn triple_cochain(dim: usize, i: u32, j: u32, k: u32) -> Cochain {
    Cochain::from_term(
        Polynomial::one(dim),
        vec![
            MultiIndex::unit(dim, i),
            MultiIndex::unit(dim, j),
            MultiIndex::unit(dim, k),
        ],
    )
}
