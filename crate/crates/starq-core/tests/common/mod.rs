//! Shared helpers for the integration tests: a small deterministic RNG,
//! random generators for the core algebraic types, and brute-force
//! evaluation oracles that recompute operations from their defining
//! formulas rather than through the symbolic engine.

#![allow(dead_code)]

use starq_core::{
    rational::{factorial, rat, rat_int},
    Bivector, Cochain, Derivation, HbarSeries, MultiIndex, Polynomial, Rat, RationalFunction,
};

// ---------------------------------------------------------------------------
// Deterministic RNG (SplitMix64)
// ---------------------------------------------------------------------------

/// SplitMix64 pseudo-random generator: tiny, seedable, reproducible.
pub struct Rng {
    state: u64,
}

impl Rng {
    /// New generator from a fixed seed.
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    /// Next raw 64-bit value.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n` (n > 0).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Small nonzero rational with numerator in -6..=6 and denominator 1..=3.
    pub fn coeff(&mut self) -> Rat {
        let mut num = self.int_in(-6, 6);
        if num == 0 {
            num = 1;
        }
        rat(num, self.int_in(1, 3))
    }
}

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

/// Random polynomial in `dim` variables with up to `n_terms` monomials of
/// total degree at most `max_deg`.
pub fn rand_poly(rng: &mut Rng, dim: usize, max_deg: u32, n_terms: usize) -> Polynomial {
    rand_poly_avoiding(rng, dim, max_deg, n_terms, &[])
}

/// Like [`rand_poly`] but never uses any variable listed in `avoid`
/// (1-based indices).  Useful for building commuting derivation pairs.
pub fn rand_poly_avoiding(
    rng: &mut Rng,
    dim: usize,
    max_deg: u32,
    n_terms: usize,
    avoid: &[u32],
) -> Polynomial {
    let allowed: Vec<u32> = (1..=dim as u32).filter(|v| !avoid.contains(v)).collect();
    let mut p = Polynomial::zero(dim);
    for _ in 0..n_terms {
        let mut exps = vec![0u32; dim];
        let deg = rng.below(u64::from(max_deg) + 1) as u32;
        if !allowed.is_empty() {
            for _ in 0..deg {
                let v = allowed[rng.below(allowed.len() as u64) as usize];
                exps[(v - 1) as usize] += 1;
            }
        }
        p = &p + &Polynomial::monomial(dim, MultiIndex::from_exps(&exps), rng.coeff());
    }
    p
}

/// Random polynomial guaranteed to be nonzero.
pub fn rand_poly_nonzero(rng: &mut Rng, dim: usize, max_deg: u32, n_terms: usize) -> Polynomial {
    let p = rand_poly(rng, dim, max_deg, n_terms);
    if p.is_zero() {
        Polynomial::one(dim)
    } else {
        p
    }
}

/// Random multi-index of total order in `min_order..=max_order`.
pub fn rand_multi_index(rng: &mut Rng, dim: usize, min_order: u32, max_order: u32) -> MultiIndex {
    let mut exps = vec![0u32; dim];
    let order = rng.int_in(i64::from(min_order), i64::from(max_order)) as u32;
    for _ in 0..order {
        let v = rng.below(dim as u64) as usize;
        exps[v] += 1;
    }
    MultiIndex::from_exps(&exps)
}

/// Random multidifferential operator of the given arity with `n_terms`
/// terms.  Each slot carries a derivative order between `min_order` and
/// `max_order`; set `min_order = 0` to allow identity slots.
pub fn rand_cochain(
    rng: &mut Rng,
    dim: usize,
    arity: usize,
    min_order: u32,
    max_order: u32,
    n_terms: usize,
) -> Cochain {
    let mut c = Cochain::zero(dim, arity);
    for _ in 0..n_terms {
        let scalar = rand_poly_nonzero(rng, dim, 2, 2);
        let factors: Vec<MultiIndex> = (0..arity)
            .map(|_| rand_multi_index(rng, dim, min_order, max_order))
            .collect();
        c = c.add(&Cochain::from_term(scalar, factors));
    }
    c
}

/// Random polynomial-entry bivector with entries of degree at most `max_deg`.
pub fn rand_bivector(rng: &mut Rng, dim: usize, max_deg: u32) -> Bivector<Polynomial> {
    let mut b = Bivector::new(dim);
    for i in 1..=dim as u32 {
        for j in (i + 1)..=dim as u32 {
            let p = rand_poly(rng, dim, max_deg, 2);
            b.set(i, j, p).unwrap();
        }
    }
    b
}

/// Random pair of commuting coordinate derivations `a(x) d/dx_i`,
/// `b(x) d/dx_j` with `i != j`, where `a` does not involve `x_j` and `b`
/// does not involve `x_i` (this makes the commutator vanish identically).
pub fn commuting_pair(rng: &mut Rng, dim: usize) -> (Derivation, Derivation) {
    assert!(dim >= 2);
    let i = rng.below(dim as u64) as u32 + 1;
    let mut j = rng.below(dim as u64) as u32 + 1;
    while j == i {
        j = rng.below(dim as u64) as u32 + 1;
    }
    let a = rand_poly_avoiding(rng, dim, 2, 2, &[j]);
    let b = rand_poly_avoiding(rng, dim, 2, 2, &[i]);
    let a = if a.is_zero() { Polynomial::one(dim) } else { a };
    let b = if b.is_zero() { Polynomial::one(dim) } else { b };
    (
        Derivation::coordinate(dim, i, a),
        Derivation::coordinate(dim, j, b),
    )
}

/// Random pair of constant-coefficient derivations (these always commute
/// and may point in several coordinate directions at once).
pub fn constant_pair(rng: &mut Rng, dim: usize) -> (Derivation, Derivation) {
    let consts = |rng: &mut Rng| {
        (0..dim)
            .map(|_| {
                if rng.below(2) == 0 {
                    Polynomial::zero(dim)
                } else {
                    Polynomial::constant(dim, rng.coeff())
                }
            })
            .collect::<Vec<_>>()
    };
    let mut c1 = consts(rng);
    if c1.iter().all(Polynomial::is_zero) {
        c1[0] = Polynomial::one(dim);
    }
    let mut c2 = consts(rng);
    if c2.iter().all(Polynomial::is_zero) {
        c2[dim - 1] = Polynomial::one(dim);
    }
    (Derivation::new(dim, c1), Derivation::new(dim, c2))
}

/// Random rational function with nonzero denominator of degree at most 2.
pub fn rand_ratfun(rng: &mut Rng, dim: usize) -> RationalFunction {
    let num = rand_poly(rng, dim, 2, 2);
    let mut den = rand_poly(rng, dim, 2, 2);
    if den.is_zero() {
        den = Polynomial::one(dim);
    }
    RationalFunction::new(num, den).unwrap()
}

// ---------------------------------------------------------------------------
// Brute-force evaluation oracles
// ---------------------------------------------------------------------------

/// Evaluate the Hochschild coboundary of `f` on `args` straight from the
/// defining alternating sum, without going through the symbolic
/// `coboundary` routine.
pub fn coboundary_eval(f: &Cochain, args: &[Polynomial]) -> Polynomial {
    let n = f.arity();
    assert_eq!(args.len(), n + 1);
    let mut out = &args[0] * &f.apply(&args[1..]).unwrap();
    for i in 1..=n {
        let mut merged: Vec<Polynomial> = Vec::with_capacity(n);
        merged.extend_from_slice(&args[..i - 1]);
        merged.push(&args[i - 1] * &args[i]);
        merged.extend_from_slice(&args[i + 1..]);
        let v = f.apply(&merged).unwrap();
        out = if i % 2 == 0 { &out + &v } else { &out - &v };
    }
    let back = &f.apply(&args[..n]).unwrap() * &args[n];
    if (n + 1) % 2 == 0 {
        &out + &back
    } else {
        &out - &back
    }
}

/// Evaluate the Gerstenhaber composition `comp(f, g)` on `args` by nested
/// application: insert `g`'s value into each argument slot of `f` with the
/// alternating sign `(-1)^{(i-1)(n-1)}`.
pub fn comp_eval(f: &Cochain, g: &Cochain, args: &[Polynomial]) -> Polynomial {
    let m = f.arity();
    let n = g.arity();
    assert!(m >= 1 && n >= 1);
    assert_eq!(args.len(), m + n - 1);
    let mut out = Polynomial::zero(f.dim());
    for i in 1..=m {
        let inner = g.apply(&args[i - 1..i - 1 + n]).unwrap();
        let mut outer: Vec<Polynomial> = Vec::with_capacity(m);
        outer.extend_from_slice(&args[..i - 1]);
        outer.push(inner);
        outer.extend_from_slice(&args[i - 1 + n..]);
        let v = f.apply(&outer).unwrap();
        out = if ((i - 1) * (n - 1)) % 2 == 0 {
            &out + &v
        } else {
            &out - &v
        };
    }
    out
}

/// Evaluate the one-pair exponential star product `a * b` directly:
/// level `n` is `(D1^n a)(D2^n b) / n!`, computed by iterated application
/// of the derivations to the arguments.
pub fn basic_star_eval(
    d1: &Derivation,
    d2: &Derivation,
    a: &Polynomial,
    b: &Polynomial,
    order: u32,
) -> HbarSeries {
    let dim = d1.dim();
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    for k in 0..=order {
        let left = d1.apply_iter(k, a);
        let right = d2.apply_iter(k, b);
        coeffs.push((&left * &right).scale(&(rat_int(1) / factorial(k))));
    }
    HbarSeries::new(dim, coeffs)
}

/// Check a polynomial identity `lhs == rhs` and panic with both sides
/// printed when it fails.
pub fn assert_poly_eq(lhs: &Polynomial, rhs: &Polynomial, what: &str) {
    assert_eq!(lhs, rhs, "{what}: {lhs} != {rhs}");
}

/// Shorthand: parse a polynomial literal in `dim` variables.
pub fn p(text: &str, dim: usize) -> Polynomial {
    starq_core::parse_poly(text, dim).unwrap()
}
