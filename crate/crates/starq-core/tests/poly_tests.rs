//! Polynomial ring and multi-index tests: ring axioms as property tests,
//! calculus rules (Leibniz, mixed partials, exact antiderivatives), and
//! parser/printer round-trips.

mod common;

use common::{p, rand_poly, Rng};
use proptest::prelude::*;
use starq_core::{
    parse_poly,
    rational::{rat, rat_int},
    MultiIndex, Polynomial,
};

fn poly_strategy(dim: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0u32..3, dim), -9i64..10, 1i64..4),
        0..5,
    )
    .prop_map(move |terms| {
        let mut out = Polynomial::zero(dim);
        for (exps, num, den) in terms {
            out = &out + &Polynomial::monomial(dim, MultiIndex::from_exps(&exps), rat(num, den));
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_commutes(a in poly_strategy(3), b in poly_strategy(3)) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn addition_associates(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_commutes(a in poly_strategy(3), b in poly_strategy(3)) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_associates(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributive_law(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn additive_inverse(a in poly_strategy(3)) {
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn units_behave(a in poly_strategy(3)) {
        prop_assert_eq!(&a + &Polynomial::zero(3), a.clone());
        prop_assert_eq!(&a * &Polynomial::one(3), a.clone());
        prop_assert!((&a * &Polynomial::zero(3)).is_zero());
    }

    #[test]
    fn derivative_is_linear(a in poly_strategy(3), b in poly_strategy(3)) {
        let lhs = (&a + &b).derivative(2);
        let rhs = &a.derivative(2) + &b.derivative(2);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_leibniz(a in poly_strategy(3), b in poly_strategy(3)) {
        let lhs = (&a * &b).derivative(1);
        let rhs = &(&a.derivative(1) * &b) + &(&a * &b.derivative(1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_partials_commute(a in poly_strategy(3)) {
        prop_assert_eq!(a.derivative(1).derivative(3), a.derivative(3).derivative(1));
    }

    #[test]
    fn display_parse_round_trip(a in poly_strategy(3)) {
        let text = a.to_string();
        let back = parse_poly(&text, 3).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn antiderivative_inverts_derivative(a in poly_strategy(3)) {
        let anti = a.antiderivative(2);
        prop_assert_eq!(anti.derivative(2), a.clone());
    }
}

// ---------------------------------------------------------------------------
// Multi-index behaviour
// ---------------------------------------------------------------------------

#[test]
fn graded_lex_order_degree_first() {
    let lo = MultiIndex::from_exps(&[0, 0, 1]);
    let hi = MultiIndex::from_exps(&[2, 0, 0]);
    assert!(lo < hi, "degree dominates the order");
    let a = MultiIndex::from_exps(&[1, 0, 0]);
    let b = MultiIndex::from_exps(&[0, 1, 0]);
    assert!(a > b, "ties break lexicographically with x1 heaviest");
}

#[test]
fn multi_index_arithmetic() {
    let a = MultiIndex::from_exps(&[2, 1, 0]);
    let b = MultiIndex::from_exps(&[1, 0, 0]);
    assert_eq!(a.add(&b), MultiIndex::from_exps(&[3, 1, 0]));
    assert_eq!(a.checked_sub(&b), Some(MultiIndex::from_exps(&[1, 1, 0])));
    assert_eq!(b.checked_sub(&a), None);
    assert_eq!(a.degree(), 3);
    assert_eq!(MultiIndex::unit(3, 2), MultiIndex::from_exps(&[0, 1, 0]));
}

#[test]
fn single_var_detection() {
    assert_eq!(MultiIndex::from_exps(&[0, 1, 0]).single_var(), Some(2));
    assert_eq!(MultiIndex::from_exps(&[0, 3, 0]).single_var(), None);
    assert_eq!(MultiIndex::from_exps(&[1, 1, 0]).single_var(), None);
    assert_eq!(MultiIndex::from_exps(&[0, 0, 0]).single_var(), None);
}

#[test]
fn sub_indices_enumerates_the_box() {
    let a = MultiIndex::from_exps(&[1, 2]);
    let subs = a.sub_indices();
    assert_eq!(subs.len(), 6, "(1+1)*(2+1) lattice points");
    assert!(subs.contains(&MultiIndex::from_exps(&[0, 0])));
    assert!(subs.contains(&MultiIndex::from_exps(&[1, 2])));
    assert!(subs.contains(&MultiIndex::from_exps(&[0, 2])));
}

#[test]
fn leibniz_coeff_is_product_of_binomials() {
    let a = MultiIndex::from_exps(&[3, 2]);
    let b = MultiIndex::from_exps(&[1, 1]);
    // C(3,1) * C(2,1) = 6
    assert_eq!(a.leibniz_coeff(&b), rat_int(6));
}

// ---------------------------------------------------------------------------
// Polynomial calculus and queries
// ---------------------------------------------------------------------------

#[test]
fn derivative_frozen_example() {
    let f = p("x1^3*x2 + 2*x2^2 - 5", 2);
    assert_eq!(f.derivative(1), p("3*x1^2*x2", 2));
    assert_eq!(f.derivative(2), p("x1^3 + 4*x2", 2));
}

#[test]
fn derivative_multi_applies_each_variable() {
    let f = p("x1^2*x2^3", 2);
    let d = f.derivative_multi(&MultiIndex::from_exps(&[1, 2]));
    assert_eq!(d, p("12*x1*x2", 2));
}

#[test]
fn antiderivative_frozen_example() {
    let f = p("3*x1^2 + x2", 2);
    assert_eq!(f.antiderivative(1), p("x1^3 + x1*x2", 2));
}

#[test]
fn eval_at_rational_point() {
    let f = p("x1^2 - x2/2", 2);
    let v = f.eval(&[rat_int(3), rat_int(4)]);
    assert_eq!(v, rat_int(7));
}

#[test]
fn substitute_zero_kills_variable() {
    let f = p("x1*x2 + x2^2 + x1 + 7", 2);
    assert_eq!(f.substitute_zero(2), p("x1 + 7", 2));
    assert!(!f.substitute_zero(2).depends_on(2));
}

#[test]
fn degree_queries() {
    let f = p("x1^2*x2 + x3^4", 3);
    assert_eq!(f.total_degree(), 4);
    assert_eq!(f.degree_in(1), 2);
    assert_eq!(f.degree_in(2), 1);
    assert_eq!(f.degree_in(3), 4);
    assert_eq!(Polynomial::zero(3).total_degree(), 0);
    assert!(f.depends_on(3));
    assert!(!p("x1", 3).depends_on(2));
}

#[test]
fn reduce_mod_degree_drops_high_terms() {
    let f = p("x1^3 + x1*x2 + x1 + 1", 2);
    assert_eq!(f.reduce_mod_degree(3), p("x1*x2 + x1 + 1", 2));
    assert_eq!(f.reduce_mod_degree(1), p("1", 2));
    assert!(f.reduce_mod_degree(0).is_zero());
}

#[test]
fn pow_matches_repeated_multiplication() {
    let f = p("x1 + x2", 2);
    assert_eq!(f.pow(3), &(&f * &f) * &f);
    assert_eq!(f.pow(0), Polynomial::one(2));
}

#[test]
fn display_is_descending_graded_lex() {
    let f = p("x2 + x1^2 + 1 + x1*x2", 2);
    assert_eq!(f.to_string(), "x1^2 + x1*x2 + x2 + 1");
}

#[test]
fn display_handles_signs_and_fractions() {
    let f = p("-x1/2 + x2 - 3", 2);
    assert_eq!(f.to_string(), "-1/2*x1 + x2 - 3");
    assert_eq!(Polynomial::zero(2).to_string(), "0");
}

// ---------------------------------------------------------------------------
// Parser behaviour
// ---------------------------------------------------------------------------

#[test]
fn parser_accepts_standard_forms() {
    assert_eq!(p("(x1 + x2)^2", 2), p("x1^2 + 2*x1*x2 + x2^2", 2));
    assert_eq!(p("x1+x2", 2), p(" x1  +  x2 ", 2), "whitespace insignificant");
    assert_eq!(p("-(x1 - x2)", 2), p("x2 - x1", 2));
    assert_eq!(p("3/2*x1", 2), p("x1 + x1/2", 2));
    assert_eq!(p("2*(x1 - 1)^3", 1), p("2*x1^3 - 6*x1^2 + 6*x1 - 2", 1));
}

#[test]
fn parser_rejects_out_of_range_variable() {
    let err = parse_poly("x4 + 1", 3).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("x4"), "error should name the variable: {msg}");
}

#[test]
fn parser_rejects_garbage() {
    assert!(parse_poly("x1 * * x2", 3).is_err());
    assert!(parse_poly("x1 * (x2", 3).is_err());
    assert!(parse_poly("x1 +", 3).is_err());
    assert!(parse_poly("", 3).is_err());
    assert!(parse_poly("x1 x2", 3).is_err(), "no implicit multiplication");
}

#[test]
fn parser_rejects_division_by_polynomial() {
    assert!(parse_poly("x1 / x2", 2).is_err());
    assert!(parse_poly("x1 / 0", 2).is_err());
}

// ---------------------------------------------------------------------------
// Random stress: evaluation is a ring homomorphism
// ---------------------------------------------------------------------------

#[test]
fn evaluation_is_ring_homomorphism() {
    let mut rng = Rng::new(0xB40E);
    for _ in 0..100 {
        let a = rand_poly(&mut rng, 3, 3, 3);
        let b = rand_poly(&mut rng, 3, 3, 3);
        let pt = [rng.coeff(), rng.coeff(), rng.coeff()];
        assert_eq!((&a * &b).eval(&pt), a.eval(&pt) * b.eval(&pt));
        assert_eq!((&a + &b).eval(&pt), a.eval(&pt) + b.eval(&pt));
    }
}
