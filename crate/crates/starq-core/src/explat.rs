//! The exponential-lattice algebra: finite sums of symbols
//! `c · exp(r·ħ) · E(λ,μ)`, where `E(λ,μ)` stands for the exponential
//! `e^{λx+μy}` with rational frequencies.
//!
//! The undeformed product adds frequencies; the deformed (star) product also
//! picks up the scalar tag `exp(ħ·λ1·μ2)`. Tags are kept as exact rational
//! exponents and never expanded, so associativity checks are exact exponent
//! bookkeeping.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::poly::fmt_rat;
use crate::rational::Rat;

/// Key of one basis symbol: frequencies `(λ, μ)` and the accumulated
/// `exp(r·ħ)` tag exponent `r`.
pub type ExpKey = (Rat, Rat, Rat);

/// A finite rational combination of tagged lattice exponentials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpLatticeElement {
    terms: BTreeMap<ExpKey, Rat>,
}

impl ExpLatticeElement {
    /// The zero element.
    pub fn zero() -> Self {
        ExpLatticeElement { terms: BTreeMap::new() }
    }

    /// The unit `E(0,0)`.
    pub fn one() -> Self {
        Self::exp_term(Rat::zero(), Rat::zero())
    }

    /// The basis exponential `E(λ,μ)` with tag `exp(0·ħ)`.
    pub fn exp_term(lambda: Rat, mu: Rat) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((lambda, mu, Rat::zero()), Rat::one());
        ExpLatticeElement { terms }
    }

    /// A single symbol `c · exp(r·ħ) · E(λ,μ)`.
    pub fn tagged_term(lambda: Rat, mu: Rat, tag: Rat, c: Rat) -> Self {
        let mut out = ExpLatticeElement::zero();
        out.insert((lambda, mu, tag), c);
        out
    }

    fn insert(&mut self, key: ExpKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Whether the element is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterator over `(key, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpKey, &Rat)> {
        self.terms.iter()
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> ExpLatticeElement {
        let mut out = ExpLatticeElement::zero();
        for (k, v) in &self.terms {
            out.insert(k.clone(), v * c);
        }
        out
    }

    /// The deformed product: termwise
    /// `(λ1,μ1,r1)⋆(λ2,μ2,r2) = (λ1+λ2, μ1+μ2, r1+r2+λ1·μ2)`,
    /// with coefficients multiplying.
    pub fn star(&self, rhs: &ExpLatticeElement) -> ExpLatticeElement {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &ExpLatticeElement, deformed: bool) -> ExpLatticeElement {
        let mut out = ExpLatticeElement::zero();
        for ((l1, m1, r1), c1) in &self.terms {
            for ((l2, m2, r2), c2) in &rhs.terms {
                let mut tag = r1 + r2;
                if deformed {
                    tag += l1 * m2;
                }
                out.insert((l1 + l2, m1 + m2, tag), c1 * c2);
            }
        }
        out
    }
}

impl Mul for &ExpLatticeElement {
    type Output = ExpLatticeElement;
    /// The undeformed product: frequencies and tags add, coefficients
    /// multiply.
    fn mul(self, rhs: &ExpLatticeElement) -> ExpLatticeElement {
        self.combine(rhs, false)
    }
}

impl Add for &ExpLatticeElement {
    type Output = ExpLatticeElement;
    fn add(self, rhs: &ExpLatticeElement) -> ExpLatticeElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ExpLatticeElement {
    type Output = ExpLatticeElement;
    fn sub(self, rhs: &ExpLatticeElement) -> ExpLatticeElement {
        self + &(-rhs)
    }
}

impl Neg for &ExpLatticeElement {
    type Output = ExpLatticeElement;
    fn neg(self) -> ExpLatticeElement {
        self.scale(&-Rat::one())
    }
}

fn fmt_key(key: &ExpKey) -> String {
    let (l, m, r) = key;
    let freq = format!("E({},{})", fmt_rat(l), fmt_rat(m));
    if r.is_zero() {
        freq
    } else if r.is_one() {
        format!("exp(ħ)*{freq}")
    } else {
        format!("exp({}ħ)*{freq}", fmt_rat(r))
    }
}

impl fmt::Display for ExpLatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (k, c)) in self.terms.iter().enumerate() {
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
            if mag.is_one() {
                write!(f, "{}", fmt_key(k))?;
            } else {
                write!(f, "{}*{}", fmt_rat(&mag), fmt_key(k))?;
            }
        }
        Ok(())
    }
}
