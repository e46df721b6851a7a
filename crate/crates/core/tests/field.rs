use std::cmp::Ordering;

use nagraph::field::{parse_literal, FieldError, Polynomial};
use nagraph::{FieldElement, Rational};

fn lit(s: &str) -> FieldElement {
    parse_literal(s).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn arithmetic() {
    assert_eq!(&lit("t") + &lit("t"), lit("2*t"));
    assert_eq!(
        &(&FieldElement::one() + &lit("t")) * &(&FieldElement::one() - &lit("t")),
        lit("1-t^2")
    );
    let x = &lit("t^-1") + &FieldElement::one();
    assert_eq!(x.denom(), 1);
    assert_eq!(x.numerator(), &Polynomial::from_coeffs(vec![q(1, 1), q(1, 1)]));
    assert_eq!(x.denominator(), &Polynomial::monomial(q(1, 1), 1));
}

#[test]
fn orders() {
    assert_eq!(lit("t").ord(), Some(q(1, 1)));
    assert_eq!(lit("t^-1+1").ord(), Some(q(-1, 1)));
    assert_eq!(lit("(2*t+3*t^2)/(5*t)").ord(), Some(q(0, 1)));
    assert_eq!(lit("t^(1/2)").ord(), Some(q(1, 2)));
    assert_eq!(FieldElement::zero().ord(), None);
}

#[test]
fn comparisons() {
    assert_eq!(lit("t").cmp(&lit("1/1000")), Ordering::Less);
    assert_eq!(lit("t^-1").cmp(&lit("1000000")), Ordering::Greater);
    assert_eq!(lit("1-t").signum(), 1);
    assert_eq!(lit("t-t^(1/2)").signum(), -1);
}

#[test]
fn relations() {
    assert!(FieldElement::rel_ll(&lit("t^2"), &lit("t")).unwrap());
    assert!(FieldElement::rel_simeq(&lit("2+t"), &lit("3")).unwrap());
    assert!(!FieldElement::rel_lesssim(&lit("t^-1"), &lit("1")).unwrap());
}

#[test]
fn real_part() {
    assert_eq!(lit("t").rho().unwrap(), q(0, 1));
    assert_eq!(lit("(2+3*t)/(1+t)").rho().unwrap(), q(2, 1));
    assert!(matches!(lit("t^-1").rho(), Err(FieldError::InfinitelyLarge(_))));
}

#[test]
fn powers_of_tau() {
    assert!(FieldElement::tau_pow(&q(0, 1)).is_one());
    assert_eq!(FieldElement::tau_pow(&q(-1, 1)), FieldElement::big_n());
    assert!(FieldElement::big_n().rho().is_err());
}
