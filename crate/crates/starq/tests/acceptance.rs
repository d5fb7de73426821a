//! Acceptance gate: fifteen end-to-end criteria covering the whole engine,
//! each with a wall-clock budget.  Every test prints exactly one
//! `criterion NN (...): PASS` line (visible with `--nocapture`); a failed
//! assertion or a blown budget fails the corresponding test.

use std::process::Command;
use std::time::Instant;

use starq::demos::run_demo;
use starq_core::rational::rat_int;
use starq_core::{
    basic_bivector, d4_scale_counterexample_search, genode_solve, kks_bivector, obs3_lhs,
    obstruction_coeffs, obstruction_vanishes, poisson_equiv_check, quasibasic_factor,
    reduced_solve_d3, separated_conditions, varphi_scale_check, Bivector, Cochain, D4ScaleSearch,
    Derivation, HbarSeries, LieStructure, Polynomial, QuasibasicOutcome, RationalFunction,
    StarSeries, Termination, TruncatedSeries,
};

#[path = "../../starq-core/tests/common/mod.rs"]
mod common;
use common::{p, rand_bivector, rand_cochain, rand_poly, Rng};

/// Runs `body` and enforces the criterion's wall-clock budget.
fn criterion(number: u32, label: &str, budget_ms: u128, body: impl FnOnce()) {
    let start = Instant::now();
    body();
    let elapsed = start.elapsed().as_millis();
    println!("criterion {number:02} ({label}): PASS in {elapsed} ms (budget {budget_ms} ms)");
    assert!(
        elapsed <= budget_ms,
        "criterion {number:02} ({label}) exceeded its budget: {elapsed} ms > {budget_ms} ms"
    );
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

// ---------------------------------------------------------------------------
// 1-2: binary demos with exact relations
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_weyl_commutation_with_certificate() {
    criterion(1, "weyl commutation relation via the demo binary", 1_000, || {
        let out = Command::new(env!("CARGO_BIN_EXE_starq"))
            .args(["demo", "weyl"])
            .output()
            .expect("binary should spawn");
        let text = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{text}");
        assert!(text.contains("x1 * x2 - x2 * x1 = h: PASS"), "{text}");
        assert!(text.contains("the commutator terminates"), "{text}");
        assert!(!text.contains("FAIL"), "{text}");
    });
}

#[test]
fn criterion_02_clifford_relations_exact() {
    criterion(2, "three Clifford relations, exact", 1_000, || {
        let run = run_demo("clifford", 6).unwrap();
        for relation in ["x * y + y * x = 1", "(x + y) * (x + y) = 1", "(x - y) * (x - y) = -1"]
        {
            let check = run
                .checks
                .iter()
                .find(|c| c.relation == relation)
                .unwrap_or_else(|| panic!("missing relation {relation}"));
            assert!(check.passed, "{relation}");
        }
        assert!(run.all_passed());
    });
}

// ---------------------------------------------------------------------------
// 3-5: associativity of the deformation families
// ---------------------------------------------------------------------------

/// One random monomial of degree at most 2 (avoiding `x_avoid`) plus a
/// constant.  Richer coefficients make the order-8 level cochains explode
/// combinatorially without strengthening the check.
fn star_coefficient(rng: &mut Rng, dim: usize, avoid: u32) -> Polynomial {
    let mono = common::rand_poly_avoiding(rng, dim, 2, 1, &[avoid]);
    let mono = if mono.is_zero() { Polynomial::one(dim) } else { mono };
    &mono + &Polynomial::constant(dim, rng.coeff())
}

/// Random commuting pair `a(x) d/dx_i`, `b(x) d/dx_j` with `i != j`, where
/// `a` avoids `x_j` and `b` avoids `x_i`.
fn commuting_coordinate_pair(rng: &mut Rng, dim: usize) -> (Derivation, Derivation) {
    let i = rng.below(dim as u64) as u32 + 1;
    let mut j = rng.below(dim as u64) as u32 + 1;
    while j == i {
        j = rng.below(dim as u64) as u32 + 1;
    }
    let a = star_coefficient(rng, dim, j);
    let b = star_coefficient(rng, dim, i);
    (Derivation::coordinate(dim, i, a), Derivation::coordinate(dim, j, b))
}

#[test]
fn criterion_03_one_pair_stars_are_associative() {
    criterion(3, "one-pair stars: defect cochains and random evaluations", 60_000, || {
        let mut rng = Rng::new(0xACC3);
        for trial in 0..20usize {
            let dim = 2 + (trial % 3);
            let (d1, d2) = commuting_coordinate_pair(&mut rng, dim);
            let star = StarSeries::basic(d1, d2, 8).expect("pair commutes by construction");
            for n in 1..=8 {
                assert!(
                    star.assoc_defect(n).unwrap().is_zero(),
                    "defect level {n} on star {trial}"
                );
            }
            for _ in 0..50 {
                let a = rand_poly(&mut rng, dim, 4, 3);
                let b = rand_poly(&mut rng, dim, 4, 3);
                let c = rand_poly(&mut rng, dim, 4, 3);
                assert!(
                    star.associator(&a, &b, &c).unwrap().is_zero(),
                    "associator on star {trial}"
                );
            }
        }
    });
}

#[test]
fn criterion_04_two_pair_star_is_associative() {
    criterion(4, "two-pair exponential star in dimension 4", 30_000, || {
        let pairs = vec![
            (rat_int(1), Derivation::partial(4, 1), Derivation::partial(4, 2)),
            (
                starq_core::rational::rat(3, 2),
                Derivation::partial(4, 3),
                Derivation::partial(4, 4),
            ),
        ];
        let star = StarSeries::multi(pairs, 6).unwrap();
        for n in 1..=6 {
            assert!(star.assoc_defect(n).unwrap().is_zero(), "defect level {n}");
        }
    });
}

#[test]
fn criterion_05_shift_scale_star_levels_and_defect() {
    criterion(5, "shift/scale star: falling-factorial levels, vanishing defect", 10_000, || {
        let x = p("x1", 1);
        let star = StarSeries::cgg(
            Derivation::partial(1, 1),
            Derivation::coordinate(1, 1, x.clone()),
            8,
        )
        .unwrap();
        for n in 1..=5 {
            assert!(star.assoc_defect(n).unwrap().is_zero(), "defect level {n}");
        }
        for n in 1..=8u32 {
            let level = star.level(n).unwrap();
            for k in 0..=8u32 {
                let falling =
                    (0..n).fold(rat_int(1), |acc, i| acc * rat_int(i64::from(k) - i64::from(i)));
                let got = level.apply(&[x.pow(n), x.pow(k)]).unwrap();
                assert_eq!(got, x.pow(k).scale(&falling), "level {n} on x^{k}");
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 6-7: exact module products
// ---------------------------------------------------------------------------

#[test]
fn criterion_06_exponential_lattice_associativity() {
    criterion(6, "exponential-lattice star: 200 exact random triples", 5_000, || {
        let run = run_demo("explat", 6).unwrap();
        let random = run
            .checks
            .iter()
            .find(|c| c.relation.contains("200 random elements"))
            .expect("the demo runs the 200-triple sweep");
        assert!(random.passed, "{}", random.detail);
        assert!(run.all_passed());
    });
}

#[test]
fn criterion_07_quantum_plane_exchange_relation() {
    criterion(7, "exchange relation through h^8", 1_000, || {
        let star = StarSeries::quantum_plane(8);
        let x1 = p("x1", 2);
        let x2 = p("x2", 2);
        let fwd = star.mul(&x1, &x2).unwrap();
        let bwd = star.mul(&x2, &x1).unwrap();
        let relation = fwd.sub(&HbarSeries::exp_hbar(2, 8).mul(&bwd));
        assert!(relation.is_zero(), "difference: {relation}");
    });
}

// ---------------------------------------------------------------------------
// 8: cochain calculus identities
// ---------------------------------------------------------------------------

/// Left-nested composition `D_1 ∘ (D_2 ∘ (… ∘ D_k))` as a 1-cochain.
fn derivation_product(ds: &[&Derivation]) -> Cochain {
    let mut it = ds.iter().rev();
    let mut acc = Cochain::from_derivation(it.next().unwrap());
    for d in it {
        acc = Cochain::from_derivation(d).comp_at(1, &acc).unwrap();
    }
    acc
}

#[test]
fn criterion_08_coboundary_calculus_identities() {
    criterion(8, "coboundary squares to zero; product and skew identities", 30_000, || {
        let mut rng = Rng::new(0xACC8);

        // The coboundary operator squares to zero.
        for trial in 0..200usize {
            let arity = 1 + (trial % 3);
            let dim = 2 + (trial % 2);
            let f = rand_cochain(&mut rng, dim, arity, 0, 2, 2);
            assert!(f.coboundary().coboundary().is_zero(), "trial {trial}");
        }

        // Coboundary of a two-factor derivation product.
        for _ in 0..10 {
            let mk = |rng: &mut Rng| {
                Derivation::new(2, vec![rand_poly(rng, 2, 2, 2), rand_poly(rng, 2, 2, 2)])
            };
            let d1 = mk(&mut rng);
            let d2 = mk(&mut rng);
            let lhs = derivation_product(&[&d1, &d2]).coboundary();
            let c1 = Cochain::from_derivation(&d1);
            let c2 = Cochain::from_derivation(&d2);
            assert_eq!(lhs, c1.cup(&c2).add(&c2.cup(&c1)).neg());
        }

        // Coboundary of a three-factor derivation product: the ordered
        // proper splits appear with an overall minus sign.
        for _ in 0..8 {
            let mk = |rng: &mut Rng| {
                Derivation::new(2, vec![rand_poly(rng, 2, 2, 1), rand_poly(rng, 2, 2, 1)])
            };
            let d1 = mk(&mut rng);
            let d2 = mk(&mut rng);
            let d3 = mk(&mut rng);
            let lhs = derivation_product(&[&d1, &d2, &d3]).coboundary();
            let splits: [(&[&Derivation], &[&Derivation]); 6] = [
                (&[&d1], &[&d2, &d3]),
                (&[&d2], &[&d1, &d3]),
                (&[&d3], &[&d1, &d2]),
                (&[&d1, &d2], &[&d3]),
                (&[&d1, &d3], &[&d2]),
                (&[&d2, &d3], &[&d1]),
            ];
            let mut rhs = Cochain::zero(2, 2);
            for (left, right) in splits {
                rhs = rhs.add(&derivation_product(left).cup(&derivation_product(right)));
            }
            assert_eq!(lhs, rhs.neg());
        }

        // Skew 2-cochain identity:
        // (df)(a,b,c) + (df)(c,a,b) - (df)(a,c,b)
        //   = 2*[a f(b,c) - f(ab,c) + b f(a,c)].
        for trial in 0..100 {
            let g = rand_cochain(&mut rng, 2, 2, 0, 2, 2);
            let f = g.sub(&g.transpose2());
            let df = f.coboundary();
            let a = rand_poly(&mut rng, 2, 3, 2);
            let b = rand_poly(&mut rng, 2, 3, 2);
            let c = rand_poly(&mut rng, 2, 3, 2);
            let abc = df.apply(&[a.clone(), b.clone(), c.clone()]).unwrap();
            let cab = df.apply(&[c.clone(), a.clone(), b.clone()]).unwrap();
            let acb = df.apply(&[a.clone(), c.clone(), b.clone()]).unwrap();
            let lhs = &(&abc + &cab) - &acb;
            let t1 = &a * &f.apply(&[b.clone(), c.clone()]).unwrap();
            let t2 = f.apply(&[&a * &b, c.clone()]).unwrap();
            let t3 = &b * &f.apply(&[a.clone(), c.clone()]).unwrap();
            let rhs = (&(&t1 - &t2) + &t3).scale(&rat_int(2));
            assert_eq!(lhs, rhs, "trial {trial}");
        }
    });
}

// ---------------------------------------------------------------------------
// 9-12: obstruction equations
// ---------------------------------------------------------------------------

fn so3() -> LieStructure {
    let mut l = LieStructure::new(3);
    l.set(1, 2, 3, rat_int(1)).unwrap();
    l.set(2, 3, 1, rat_int(1)).unwrap();
    l.set(1, 3, 2, rat_int(-1)).unwrap();
    l
}

fn biv3(a12: &str, a13: &str, a23: &str) -> Bivector<Polynomial> {
    let mut b = Bivector::new(3);
    b.set(1, 2, p(a12, 3)).unwrap();
    b.set(1, 3, p(a13, 3)).unwrap();
    b.set(2, 3, p(a23, 3)).unwrap();
    b
}

/// Random nonzero polynomial in the single variable `x_var`.
fn rand_single(rng: &mut Rng, dim: usize, var: u32, max_deg: u32) -> Polynomial {
    let mut f = Polynomial::zero(dim);
    for e in 0..=max_deg {
        if rng.below(2) == 0 {
            f = &f + &Polynomial::var(dim, var).pow(e).scale(&rng.coeff());
        }
    }
    if f.is_zero() {
        f = Polynomial::one(dim);
    }
    f
}

/// Random basic bivector with every pair weighted.
fn rand_basic_full(rng: &mut Rng, dim: usize) -> Bivector<Polynomial> {
    let singles: Vec<Polynomial> =
        (1..=dim as u32).map(|v| rand_single(rng, dim, v, 2)).collect();
    let mut weights = Vec::new();
    for i in 1..=dim as u32 {
        for j in i + 1..=dim as u32 {
            weights.push((i, j, rng.coeff()));
        }
    }
    basic_bivector(&weights, &singles).unwrap()
}

#[test]
fn criterion_09_obstruction_verdict_equals_jacobi_verdict() {
    criterion(9, "obstruction vanishing agrees with Jacobi on a 20-instance corpus", 60_000, || {
        let mut rng = Rng::new(0xACC9);
        let mut corpus: Vec<Bivector<Polynomial>> = Vec::new();
        corpus.push(kks_bivector(&so3()));
        let mut heis = LieStructure::new(3);
        heis.set(1, 2, 3, rat_int(1)).unwrap();
        corpus.push(kks_bivector(&heis));
        let mut broken = so3();
        broken.set(1, 3, 1, rat_int(-1)).unwrap();
        broken.set(1, 3, 2, rat_int(0)).unwrap();
        corpus.push(kks_bivector(&broken));
        corpus.push(Bivector::new(3));
        corpus.push(biv3("1", "x1", "0"));
        corpus.push(biv3("1", "x3", "0"));
        for _ in 0..4 {
            corpus.push(rand_basic_full(&mut rng, 3));
        }
        for _ in 0..10 {
            corpus.push(rand_bivector(&mut rng, 3, 2));
        }
        assert_eq!(corpus.len(), 20);
        for (idx, b) in corpus.iter().enumerate() {
            let report = poisson_equiv_check(b).unwrap();
            assert!(report.verdicts_agree, "verdict disagreement on instance {idx}");
        }
    });
}

#[test]
fn criterion_10_canonical_coefficient_matches_six_term_form() {
    criterion(10, "canonical obstruction coefficient equals the six-term form", 30_000, || {
        let mut rng = Rng::new(0xACCA);
        for trial in 0..50 {
            let b = rand_bivector(&mut rng, 3, 3);
            let coeff = obstruction_coeffs(&b).unwrap()[&(1, 2, 3)].clone();
            let direct = obs3_lhs(&b.entry(1, 2), &b.entry(1, 3), &b.entry(2, 3));
            assert_eq!(coeff, direct, "trial {trial}: pinned proportionality constant is 1");
        }
    });
}

#[test]
fn criterion_11_quadratic_scaling_identity_in_d3() {
    criterion(11, "coefficient of a scaled bivector is the square-scaled coefficient", 30_000, || {
        let mut rng = Rng::new(0xACCB);
        for trial in 0..50 {
            let b = rand_bivector(&mut rng, 3, 2);
            let phi = rand_poly(&mut rng, 3, 2, 2);
            let report = varphi_scale_check(&b, &phi).unwrap();
            assert!(report.identity_holds, "trial {trial}");
        }
    });
}

#[test]
fn criterion_12_basic_bivectors_unobstructed_and_separated() {
    criterion(12, "constructed basic bivectors: zero obstruction, separated equations", 30_000, || {
        let mut rng = Rng::new(0xACCC);
        for dim in [3usize, 4] {
            for trial in 0..10 {
                let b = rand_basic_full(&mut rng, dim);
                assert!(
                    obstruction_vanishes(&b).unwrap(),
                    "dim {dim}, trial {trial}: obstructed"
                );
                let rational = b.to_rational();
                for i in 1..=dim as u32 {
                    for j in i + 1..=dim as u32 {
                        for k in j + 1..=dim as u32 {
                            let verdict = separated_conditions(
                                &rational.entry(i, j),
                                &rational.entry(i, k),
                                &rational.entry(j, k),
                                i,
                                j,
                                k,
                            )
                            .unwrap();
                            assert_eq!(verdict, None, "triple ({i},{j},{k})");
                        }
                    }
                }
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 13-15: solvers, factorization, and the dimension-4 search
// ---------------------------------------------------------------------------

#[test]
fn criterion_13_solvers_satisfy_their_equations() {
    criterion(13, "reduced d=3 solver and series ODE solver residuals", 30_000, || {
        let mut rng = Rng::new(0xACCD);

        // Hand-derived cases, exact.
        let sol = reduced_solve_d3(&p("x1", 3), 10).unwrap();
        assert_eq!(sol.poly(), &p("-x2", 3));
        let n = 12;
        let one = TruncatedSeries::one(1, n);
        let sol = genode_solve(&one, &one, n).unwrap();
        let exp_neg_x = TruncatedSeries::new(n, &p("-x1", 1)).exp().unwrap();
        assert_eq!(sol.particular, &one - &exp_neg_x, "y = 1 - exp(-x)");

        // Reduced solver: residual vanishes below the truncation degree.
        for trial in 0..20 {
            let a13 = common::rand_poly_avoiding(&mut rng, 3, 3, 3, &[3]);
            let y = reduced_solve_d3(&a13, 10).unwrap();
            let residual = obs3_lhs(&Polynomial::one(3), &a13, y.poly());
            assert!(
                residual.reduce_mod_degree(10).is_zero(),
                "trial {trial}: residual {residual}"
            );
        }

        // Series ODE: y' + p y = q for the particular solution and
        // y' + p y = 0 for the homogeneous one.
        for trial in 0..100 {
            let ps = TruncatedSeries::new(n, &rand_poly(&mut rng, 1, 4, 3));
            let qs = TruncatedSeries::new(n, &rand_poly(&mut rng, 1, 4, 3));
            let sol = genode_solve(&ps, &qs, n).unwrap();
            let y = sol.particular.poly();
            let residual = &(&y.derivative(1) + &(ps.poly() * y)) - qs.poly();
            assert!(residual.reduce_mod_degree(n).is_zero(), "trial {trial}");
            let h = sol.homogeneous.poly();
            let hres = &h.derivative(1) + &(ps.poly() * h);
            assert!(hres.reduce_mod_degree(n).is_zero(), "trial {trial} homogeneous");
        }
    });
}

#[test]
fn criterion_14_quasibasic_round_trip_and_rejections() {
    criterion(14, "factorization round trips; violators rejected by name", 10_000, || {
        let mut rng = Rng::new(0xACCE);

        // Twenty constructed quasibasic triples, factored exactly.
        for trial in 0..20 {
            let mk = |rng: &mut Rng, var: u32| {
                let mut f = rand_single(rng, 3, var, 2);
                if f.substitute_zero(var).is_zero() {
                    f = &f + &Polynomial::one(3);
                }
                RationalFunction::from_polynomial(f)
            };
            let f1 = mk(&mut rng, 1);
            let f2 = mk(&mut rng, 2);
            let f3 = mk(&mut rng, 3);
            let mut phi_num = rand_poly(&mut rng, 3, 2, 3);
            if phi_num.substitute_zero(3).is_zero() {
                phi_num = &phi_num + &Polynomial::one(3);
            }
            let phi = RationalFunction::from_polynomial(phi_num);
            let a12 = &(&phi * &f1) * &f2;
            let a13 = &(&phi * &f1) * &f3;
            let a23 = &(&phi * &f2) * &f3;
            match quasibasic_factor(&a12, &a13, &a23).unwrap() {
                QuasibasicOutcome::Factored { phi, f1, f2, f3 } => {
                    assert_eq!(&(&(&phi * &f1) * &f2), &a12, "trial {trial}: a12");
                    assert_eq!(&(&(&phi * &f1) * &f3), &a13, "trial {trial}: a13");
                    assert_eq!(&(&(&phi * &f2) * &f3), &a23, "trial {trial}: a23");
                }
                other => panic!("trial {trial}: expected a factorization, got {other:?}"),
            }
        }

        // Ten violators, each rejected with the violated condition named.
        let rf = |text: &str| RationalFunction::from_polynomial(p(text, 3));
        let violators: [(&str, &str, &str, Option<&str>); 10] = [
            ("1", "x1", "1", Some("d/dx1 (a12/a13) != 0")),
            ("1", "x3", "1", Some("d/dx3 (a13/a23) != 0")),
            ("1", "1", "x2", Some("d/dx2 (a23/a12) != 0")),
            ("1", "x1^2", "1", Some("d/dx1 (a12/a13) != 0")),
            ("1", "x3^2 + x3", "1", Some("d/dx3 (a13/a23) != 0")),
            ("1", "1", "x2^2", Some("d/dx2 (a23/a12) != 0")),
            ("x2", "x1*x2", "x2", Some("d/dx1 (a12/a13) != 0")),
            ("x1", "x1", "x1*x3", Some("d/dx3 (a13/a23) != 0")),
            ("1 + x2", "1", "1", Some("d/dx2 (a23/a12) != 0")),
            ("x1 + x2", "x2", "x2*x3", None),
        ];
        for (a12, a13, a23, expected) in violators {
            match quasibasic_factor(&rf(a12), &rf(a13), &rf(a23)).unwrap() {
                QuasibasicOutcome::Rejected { condition } => {
                    if let Some(expected) = expected {
                        assert_eq!(condition, expected, "violator ({a12}, {a13}, {a23})");
                    } else {
                        assert!(condition.contains("d/dx"), "unnamed condition: {condition}");
                    }
                }
                other => {
                    panic!("violator ({a12}, {a13}, {a23}): expected rejection, got {other:?}")
                }
            }
        }
    });
}

#[test]
fn criterion_15_dimension_four_scaling_witness() {
    criterion(15, "dimension-4 search freezes a quadratic-scaling witness", 300_000, || {
        let text = std::fs::read_to_string(fixture("family_witness.fam")).unwrap();
        let family = starq::formats::parse_family_file(&text).unwrap();
        match d4_scale_counterexample_search(&family).unwrap() {
            D4ScaleSearch::Witness(w) => {
                assert_eq!(w.index, 0);
                assert_eq!(w.triple, (1, 2, 3));
                assert_eq!(w.coefficient, p("-x4", 4));
            }
            D4ScaleSearch::Exhausted { .. } => {
                panic!("the frozen family contains a witness; exhaustion indicates regression")
            }
        }
    });
}

// ---------------------------------------------------------------------------
// Termination certificate cross-check (supports criterion 1)
// ---------------------------------------------------------------------------

#[test]
fn weyl_commutator_certificate_from_the_library() {
    let star = StarSeries::weyl(6);
    let comm = star.commutator(&p("x1", 2), &p("x2", 2)).unwrap();
    assert_eq!(comm.termination, Termination::Terminated { level: 2 });
    assert_eq!(comm.series.coeff(1), &Polynomial::one(2));
    assert!(comm.series.coeff(0).is_zero());
    for n in 2..=6 {
        assert!(comm.series.coeff(n).is_zero());
    }
}
