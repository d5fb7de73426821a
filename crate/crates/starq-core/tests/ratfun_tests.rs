//! Rational functions: field arithmetic, cross-multiplied equality,
//! quotient-rule derivatives, and specialization at zero.

mod common;

use common::{p, rand_ratfun, Rng};
use starq_core::{rational::rat_int, Polynomial, RationalFunction};

fn rf(num: &str, den: &str, dim: usize) -> RationalFunction {
    RationalFunction::new(p(num, dim), p(den, dim)).unwrap()
}

#[test]
fn constructor_rejects_zero_denominator() {
    assert!(RationalFunction::new(p("x1", 1), Polynomial::zero(1)).is_err());
}

#[test]
fn equality_is_cross_multiplied() {
    let a = rf("x1", "x2", 2);
    let b = rf("x1^2", "x1*x2", 2);
    assert_eq!(a, b, "x1/x2 = x1^2/(x1*x2) as rational functions");
    assert_ne!(a, rf("x2", "x1", 2));
}

#[test]
fn field_axioms_on_random_elements() {
    let mut rng = Rng::new(0xF1E1D);
    for _ in 0..60 {
        let a = rand_ratfun(&mut rng, 2);
        let b = rand_ratfun(&mut rng, 2);
        let c = rand_ratfun(&mut rng, 2);
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert!((&a - &a).is_zero());
        if !a.is_zero() {
            let inv = a.recip().unwrap();
            assert_eq!(&a * &inv, RationalFunction::one(2));
        }
    }
}

#[test]
fn division_and_reciprocal() {
    let a = rf("x1", "x2", 2);
    let b = rf("x1", "1", 2);
    assert_eq!(a.div(&b).unwrap(), rf("1", "x2", 2));
    assert!(RationalFunction::zero(2).recip().is_err());
    assert!(a.div(&RationalFunction::zero(2)).is_err());
}

#[test]
fn derivative_quotient_rule_frozen() {
    // d/dx (x1 / x2) in x1 is 1/x2; in x2 is -x1/x2^2
    let a = rf("x1", "x2", 2);
    assert_eq!(a.derivative(1), rf("1", "x2", 2));
    assert_eq!(a.derivative(2), rf("-x1", "x2^2", 2));
}

#[test]
fn derivative_leibniz_random() {
    let mut rng = Rng::new(0xD1FF);
    for _ in 0..40 {
        let a = rand_ratfun(&mut rng, 2);
        let b = rand_ratfun(&mut rng, 2);
        let lhs = (&a * &b).derivative(1);
        let rhs = &(&a.derivative(1) * &b) + &(&a * &b.derivative(1));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn depends_on_sees_through_cancellation() {
    // (x1*x2)/x2 does not truly depend on x2
    let a = rf("x1*x2", "x2", 2);
    assert!(!a.depends_on(2));
    assert!(a.depends_on(1));
    let b = rf("x1 + x2", "x1", 2);
    assert!(b.depends_on(2));
}

#[test]
fn substitute_zero_behaviour() {
    let a = rf("x1 + x2", "1 + x2", 2);
    assert_eq!(a.substitute_zero(2).unwrap(), rf("x1", "1", 2));
    // denominator vanishing at the specialization is an error
    let b = rf("1", "x2", 2);
    assert!(b.substitute_zero(2).is_err());
}

#[test]
fn to_polynomial_round_trip() {
    // constant denominators fold into the coefficients
    let a = rf("3*x1 + 6", "3", 1);
    assert_eq!(a.to_polynomial().unwrap(), p("x1 + 2", 1));
    let lifted = RationalFunction::from_polynomial(p("x1^2 - 1", 1));
    assert_eq!(lifted.to_polynomial().unwrap(), p("x1^2 - 1", 1));
    // no polynomial-division normalization is promised
    let b = rf("x1", "x2", 2);
    assert!(b.to_polynomial().is_none());
}

#[test]
fn pow_matches_repeated_multiplication() {
    let a = rf("x1", "1 + x2", 2);
    assert_eq!(a.pow(3), &(&a * &a) * &a);
    assert_eq!(a.pow(0), RationalFunction::one(2));
}

#[test]
fn constants_and_display() {
    let c = RationalFunction::constant(2, rat_int(3));
    assert_eq!(&c + &RationalFunction::one(2), RationalFunction::constant(2, rat_int(4)));
    let a = rf("x1", "x2", 2);
    let text = a.to_string();
    assert!(text.contains("x1") && text.contains("x2"), "display shows both parts: {text}");
}
