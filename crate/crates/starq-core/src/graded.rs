//! A small exterior (Grassmann) algebra with odd derivations, and its
//! two-term deformation into a Clifford algebra.
//!
//! Basis elements are products of anticommuting generators `g1 < g2 < …`,
//! encoded as bitmasks. Multiplication follows the Koszul rule of signs; the
//! odd partial derivative `∂_g` removes a generator with the sign of the
//! transpositions needed to move it to the front.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::poly::fmt_rat;
use crate::rational::Rat;

/// An element of the exterior algebra on `gens` anticommuting generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    gens: usize,
    terms: BTreeMap<u32, Rat>,
}

impl GradedElement {
    /// The zero element.
    pub fn zero(gens: usize) -> Self {
        assert!(gens <= 32, "at most 32 generators supported");
        GradedElement { gens, terms: BTreeMap::new() }
    }

    /// The unit `1` (empty product).
    pub fn one(gens: usize) -> Self {
        GradedElement::zero(gens).with_term(0, Rat::one())
    }

    /// The generator `g` (1-based).
    ///
    /// # Panics
    ///
    /// Panics if `g` is not in `1..=gens`.
    pub fn generator(gens: usize, g: u32) -> Self {
        assert!(g >= 1 && (g as usize) <= gens, "generator g{g} out of range");
        GradedElement::zero(gens).with_term(1 << (g - 1), Rat::one())
    }

    /// A single basis term `c · g_{i1}∧…∧g_{ik}` given as a bitmask.
    pub fn with_term(mut self, mask: u32, c: Rat) -> Self {
        self.insert(mask, c);
        self
    }

    fn insert(&mut self, mask: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    /// Number of generators of the ambient algebra.
    pub fn generators(&self) -> usize {
        self.gens
    }

    /// Whether the element is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterator over `(mask, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Rat)> {
        self.terms.iter()
    }

    /// Whether every term has the same parity `deg mod 2`; returns it.
    pub fn homogeneous_parity(&self) -> Option<u32> {
        let mut parity = None;
        for mask in self.terms.keys() {
            let p = mask.count_ones() % 2;
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        parity
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> GradedElement {
        let mut out = GradedElement::zero(self.gens);
        for (m, v) in &self.terms {
            out.insert(*m, v * c);
        }
        out
    }

    /// The odd partial derivative `∂_g` (degree −1, square zero): on a basis
    /// term containing `g` it removes `g` with sign `(−1)^p`, where `p` is
    /// the number of generators smaller than `g` in the term.
    pub fn odd_derivative(&self, g: u32) -> GradedElement {
        let bit = 1u32 << (g - 1);
        let below = bit - 1;
        let mut out = GradedElement::zero(self.gens);
        for (m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let p = (m & below).count_ones();
            let sign = if p % 2 == 0 { c.clone() } else { -c.clone() };
            out.insert(m & !bit, sign);
        }
        out
    }

    /// The right-acting odd derivative `a·∂⃖_g`: removes `g` with sign
    /// `(−1)^q`, `q` the number of generators larger than `g` in the term.
    /// This is the partner of [`odd_derivative`](Self::odd_derivative) under
    /// the Koszul rule: on a homogeneous `a` it equals
    /// `(−1)^{|a|+1}·∂_g a`.
    pub fn odd_derivative_right(&self, g: u32) -> GradedElement {
        let bit = 1u32 << (g - 1);
        let mut out = GradedElement::zero(self.gens);
        for (m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let q = (m & !(bit | (bit - 1))).count_ones();
            let sign = if q % 2 == 0 { c.clone() } else { -c.clone() };
            out.insert(m & !bit, sign);
        }
        out
    }

    /// The deformed product `a⋆b = a∧b + ħ·(a∂⃖_{g1})∧(∂_{g2}b)` on the
    /// 2-generator algebra, returned as the pair of ħ-coefficients.  The
    /// left factor is differentiated from the right, so the rule of signs
    /// makes the product associative; on generators it gives
    /// `x⋆y = x∧y + ħ` and `y⋆x = y∧x`.
    pub fn star(&self, rhs: &GradedElement) -> (GradedElement, GradedElement) {
        let level0 = self * rhs;
        let level1 = &self.odd_derivative_right(1) * &rhs.odd_derivative(2);
        (level0, level1)
    }

    /// The deformed product specialized at `ħ = 1` (the Clifford product);
    /// exact because the deformation has only two terms.
    pub fn star_at_one(&self, rhs: &GradedElement) -> GradedElement {
        let (a, b) = self.star(rhs);
        &a + &b
    }
}

/// Parity of the permutation merging mask `a` before mask `b`: the number of
/// pairs `(s, t)` with `s ∈ a`, `t ∈ b`, `s > t`.
fn merge_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0u32;
    let mut t = b;
    while t != 0 {
        let bit = t & t.wrapping_neg();
        let above = !(bit | (bit - 1));
        inversions += (a & above).count_ones();
        t &= t - 1;
    }
    inversions % 2 == 1
}

impl Mul for &GradedElement {
    type Output = GradedElement;
    /// Exterior product with Koszul signs; terms with a repeated generator
    /// vanish.
    fn mul(self, rhs: &GradedElement) -> GradedElement {
        assert_eq!(self.gens, rhs.gens, "mismatched generator counts");
        let mut out = GradedElement::zero(self.gens);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if ma & mb != 0 {
                    continue;
                }
                let c = ca * cb;
                out.insert(ma | mb, if merge_sign(*ma, *mb) { -c } else { c });
            }
        }
        out
    }
}

impl Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        assert_eq!(self.gens, rhs.gens, "mismatched generator counts");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, c.clone());
        }
        out
    }
}

impl Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        self + &(-rhs)
    }
}

impl Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        self.scale(&-Rat::one())
    }
}

fn fmt_mask(mask: u32) -> String {
    use alloc::format;
    if mask == 0 {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    for g in 0..32 {
        if mask & (1 << g) != 0 {
            parts.push(format!("g{}", g + 1));
        }
    }
    parts.join("^")
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms.iter().enumerate() {
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
            if *m == 0 {
                write!(f, "{}", fmt_rat(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", fmt_mask(*m))?;
            } else {
                write!(f, "{}*{}", fmt_rat(&mag), fmt_mask(*m))?;
            }
        }
        Ok(())
    }
}
