//! Built-in demonstrations: small, fully determined computations whose
//! expected outcomes are frozen here, each reported as a list of
//! relation checks.
//!
//! Provided items: [`DEMO_NAMES`], [`RelationCheck`], [`DemoRun`], and the
//! dispatcher [`run_demo`].

use starq_core::rational::{factorial, rat, rat_int};
use starq_core::{
    parse_poly, Derivation, ExpLatticeElement, GradedElement, HbarSeries, Polynomial, Rat,
    StarSeries, Termination,
};

use crate::report::RelationReport;

/// The demo names accepted by `run_demo`, in display order.
pub const DEMO_NAMES: &[&str] = &["weyl", "clifford", "quantum-plane", "cgg", "explat"];

/// One relation verified by a demo.
#[derive(Debug, Clone)]
pub struct RelationCheck {
    /// The relation, in display form.
    pub relation: String,
    /// Whether the engine reproduced it.
    pub passed: bool,
    /// Supporting output (shown in verbose mode).
    pub detail: String,
}

/// The outcome of one demo: a list of relation checks.
#[derive(Debug, Clone)]
pub struct DemoRun {
    /// Demo name.
    pub name: &'static str,
    /// Truncation order the demo ran at.
    pub order: u32,
    /// The verified relations, in display order.
    pub checks: Vec<RelationCheck>,
}

impl DemoRun {
    fn new(name: &'static str, order: u32) -> Self {
        DemoRun { name, order, checks: Vec::new() }
    }

    fn check(&mut self, relation: impl Into<String>, passed: bool, detail: String) {
        self.checks.push(RelationCheck { relation: relation.into(), passed, detail });
    }

    /// `true` when every relation held.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The machine-readable form of the run.
    pub fn reports(&self) -> Vec<RelationReport> {
        self.checks
            .iter()
            .map(|c| RelationReport {
                demo: self.name.to_string(),
                relation: c.relation.clone(),
                order: self.order,
                status: if c.passed { "PASS" } else { "FAIL" }.to_string(),
            })
            .collect()
    }
}

/// Runs the named demo at the given truncation order; `None` for an unknown
/// name (see [`DEMO_NAMES`]).
pub fn run_demo(name: &str, order: u32) -> Option<DemoRun> {
    match name {
        "weyl" => Some(weyl_demo(order)),
        "clifford" => Some(clifford_demo(order)),
        "quantum-plane" => Some(quantum_plane_demo(order)),
        "cgg" => Some(cgg_demo(order)),
        "explat" => Some(explat_demo(order)),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

/// A series over `dim` variables with the given `(power of h, coefficient)`
/// entries and zeros elsewhere, truncated at `order`.
fn series(dim: usize, order: u32, entries: &[(u32, Polynomial)]) -> HbarSeries {
    let mut coeffs = vec![Polynomial::zero(dim); order as usize + 1];
    for (n, p) in entries {
        if *n <= order {
            coeffs[*n as usize] = p.clone();
        }
    }
    HbarSeries::new(dim, coeffs)
}

/// Deterministic split-mix generator for the randomized demo checks.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }

    /// A small rational with numerator in `lo..=hi` and denominator 1 or 2.
    fn rational(&mut self, lo: i64, hi: i64) -> Rat {
        rat(self.int_in(lo, hi), self.int_in(1, 2))
    }
}

// ---------------------------------------------------------------------------
// The demos
// ---------------------------------------------------------------------------

/// The constant-coefficient star product on two variables: the canonical
/// commutation relation with a termination certificate, plus an
/// associativity sweep.
fn weyl_demo(order: u32) -> DemoRun {
    let mut run = DemoRun::new("weyl", order);
    let st = StarSeries::weyl(order);
    let x1 = parse_poly("x1", 2).expect("fixed input");
    let x2 = parse_poly("x2", 2).expect("fixed input");
    let one = Polynomial::one(2);

    let product = st.mul(&x1, &x2).expect("dimension is fixed");
    let expected = series(2, order, &[(0, &x1 * &x2), (1, one.clone())]);
    run.check(
        "x1 * x2 = x1*x2 + h",
        product == expected,
        format!("computed: {product}"),
    );

    let comm = st.commutator(&x1, &x2).expect("order >= 1");
    let expected = series(2, order, &[(1, one)]);
    run.check(
        "x1 * x2 - x2 * x1 = h",
        comm.series == expected,
        format!("computed: {}", comm.series),
    );
    run.check(
        "the commutator terminates: levels >= 2 vanish on (x1, x2)",
        comm.termination == Termination::Terminated { level: 2 },
        format!("certificate: {:?}", comm.termination),
    );

    let mut defects = Vec::new();
    let ok = (1..=order).all(|n| {
        let d = st.assoc_defect(n).expect("level within order");
        let zero = d.is_zero();
        if !zero {
            defects.push(format!("level {n}: {d}"));
        }
        zero
    });
    run.check(
        format!("the associativity defect vanishes at every level 1..={order}"),
        ok,
        if defects.is_empty() { "all defect cochains are zero".into() } else { defects.join("; ") },
    );
    run
}

/// The two-generator graded algebra whose one-step deformation, evaluated at
/// `h = 1`, is a Clifford algebra: anticommutation relations plus exhaustive
/// associativity over the basis.
fn clifford_demo(order: u32) -> DemoRun {
    let mut run = DemoRun::new("clifford", order);
    let x = GradedElement::generator(2, 1);
    let y = GradedElement::generator(2, 2);
    let one = GradedElement::one(2);

    let anti = &x.star_at_one(&y) + &y.star_at_one(&x);
    run.check("x * y + y * x = 1", anti == one, format!("computed: {anti}"));

    let plus = &x + &y;
    let sq_plus = plus.star_at_one(&plus);
    run.check("(x + y) * (x + y) = 1", sq_plus == one, format!("computed: {sq_plus}"));

    let minus = &x - &y;
    let sq_minus = minus.star_at_one(&minus);
    run.check(
        "(x - y) * (x - y) = -1",
        sq_minus == one.scale(&rat_int(-1)),
        format!("computed: {sq_minus}"),
    );

    let xx = x.star_at_one(&x);
    let yy = y.star_at_one(&y);
    run.check(
        "x * x = 0 and y * y = 0",
        xx.is_zero() && yy.is_zero(),
        format!("computed: {xx} and {yy}"),
    );

    let basis: Vec<GradedElement> = (0u32..4)
        .map(|mask| GradedElement::zero(2).with_term(mask, rat_int(1)))
        .collect();
    let mut assoc = true;
    for a in &basis {
        for b in &basis {
            for c in &basis {
                let left = a.star_at_one(b).star_at_one(c);
                let right = a.star_at_one(&b.star_at_one(c));
                assoc &= left == right;
            }
        }
    }
    run.check(
        "(a * b) * c = a * (b * c) on all 64 basis triples",
        assoc,
        "the product is exact, so this is full associativity".into(),
    );
    run
}

/// The exchange-relation star product: `x1 * x2 = exp(h) * (x2 * x1)` as an
/// identity of truncated series, with a genuinely formal commutator.
fn quantum_plane_demo(order: u32) -> DemoRun {
    let mut run = DemoRun::new("quantum-plane", order);
    let st = StarSeries::quantum_plane(order);
    let x1 = parse_poly("x1", 2).expect("fixed input");
    let x2 = parse_poly("x2", 2).expect("fixed input");
    let x1x2 = &x1 * &x2;

    let fwd = st.mul(&x1, &x2).expect("dimension is fixed");
    let entries: Vec<(u32, Polynomial)> =
        (0..=order).map(|n| (n, x1x2.scale(&factorial(n).recip()))).collect();
    run.check(
        "x1 * x2 = sum_n (x1*x2/n!)*h^n",
        fwd == series(2, order, &entries),
        format!("computed: {fwd}"),
    );

    let bwd = st.mul(&x2, &x1).expect("dimension is fixed");
    run.check(
        "x2 * x1 = x2*x1 (undeformed)",
        bwd == series(2, order, &[(0, x1x2)]),
        format!("computed: {bwd}"),
    );

    let relation = fwd.sub(&HbarSeries::exp_hbar(2, order).mul(&bwd));
    run.check(
        format!("x1 * x2 - exp(h)*(x2 * x1) = 0 through h^{order}"),
        relation.is_zero(),
        format!("difference: {relation}"),
    );

    let comm = st.commutator(&x1, &x2).expect("dimension is fixed");
    run.check(
        "the commutator is a formal series (no termination certificate)",
        comm.termination == Termination::Formal,
        format!("series: {}", comm.series),
    );
    run
}

/// The one-variable star product built from the pair `(d/dx, x·d/dx)`:
/// falling-factorial level action on monomials and a vanishing defect.
fn cgg_demo(order: u32) -> DemoRun {
    let mut run = DemoRun::new("cgg", order);
    let d1 = Derivation::partial(1, 1);
    let x = parse_poly("x1", 1).expect("fixed input");
    let d2 = Derivation::coordinate(1, 1, x.clone());
    let st = StarSeries::cgg(d1, d2, order).expect("the pair satisfies [D1,D2] = D1");

    let xx = st.mul(&x, &x).expect("dimension is fixed");
    run.check(
        "x * x = x^2 + h*x",
        xx == series(1, order, &[(0, &x * &x), (1, x.clone())]),
        format!("computed: {xx}"),
    );

    let xone = st.mul(&x, &Polynomial::one(1)).expect("dimension is fixed");
    run.check(
        "x * 1 = x",
        xone == series(1, order, &[(0, x.clone())]),
        format!("computed: {xone}"),
    );

    let max_n = order.min(8);
    let mut bad = Vec::new();
    for n in 1..=max_n {
        let level = st.level(n).expect("level within order");
        for k in 0..=8u32 {
            let xk = x.pow(k);
            let got = level.apply(&[x.pow(n), xk.clone()]).expect("arity 2");
            let falling = (0..n).fold(rat_int(1), |acc, i| acc * rat_int(k as i64 - i as i64));
            if got != xk.scale(&falling) {
                bad.push(format!("n={n}, k={k}: {got}"));
            }
        }
    }
    run.check(
        format!("F_n(x^n, x^k) = k*(k-1)*...*(k-n+1)*x^k for n <= {max_n}, k <= 8"),
        bad.is_empty(),
        if bad.is_empty() { "every level acts by a falling factorial".into() } else { bad.join("; ") },
    );

    let max_level = order.min(5);
    let ok = (1..=max_level)
        .all(|n| st.assoc_defect(n).expect("level within order").is_zero());
    run.check(
        format!("the associativity defect vanishes at every level 1..={max_level}"),
        ok,
        "defect cochains computed symbolically".into(),
    );
    run
}

/// The exponential-lattice module: an exact (untruncated) product whose
/// exchange relation carries a frequency tag, checked against 200 random
/// associativity instances.
fn explat_demo(order: u32) -> DemoRun {
    let mut run = DemoRun::new("explat", order);
    let u = ExpLatticeElement::exp_term(rat_int(1), rat_int(0));
    let v = ExpLatticeElement::exp_term(rat_int(0), rat_int(1));

    let uv = u.star(&v);
    let vu = v.star(&u);
    let tagged = ExpLatticeElement::tagged_term(rat_int(1), rat_int(1), rat_int(1), rat_int(1));
    let plain = ExpLatticeElement::exp_term(rat_int(1), rat_int(1));
    run.check(
        "E(1,0) * E(0,1) = exp(h)*E(1,1) while E(0,1) * E(1,0) = E(1,1)",
        uv == tagged && vu == plain,
        format!("forward: {uv}; backward: {vu}"),
    );

    let one = ExpLatticeElement::one();
    run.check(
        "E(0,0) is a two-sided unit",
        one.star(&u) == u && u.star(&one) == u && one.star(&v) == v && v.star(&one) == v,
        "checked on both frequency generators".into(),
    );

    let mut rng = Rng(0x5EED_1E55_C0FF_EE00);
    let random = |rng: &mut Rng| {
        let mut out = ExpLatticeElement::zero();
        for _ in 0..rng.int_in(1, 3) {
            let term = ExpLatticeElement::tagged_term(
                rng.rational(-2, 2),
                rng.rational(-2, 2),
                rng.rational(-2, 2),
                rng.rational(-3, 3),
            );
            out = &out + &term;
        }
        out
    };
    let mut failures = 0usize;
    for _ in 0..200 {
        let a = random(&mut rng);
        let b = random(&mut rng);
        let c = random(&mut rng);
        if a.star(&b).star(&c) != a.star(&b.star(&c)) {
            failures += 1;
        }
    }
    run.check(
        "(a * b) * c = a * (b * c) for 200 random elements (exact)",
        failures == 0,
        format!("{failures} failures out of 200 random triples"),
    );
    run
}
