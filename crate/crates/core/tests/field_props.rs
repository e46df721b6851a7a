use nagraph::field::{parse_literal, Polynomial};
use nagraph::{FieldElement, Rational};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Sum of up to four monomials `c·τ^(e/d)`, `d ∈ {1, 2, 3}`.
fn sum_of_monomials(d: i64) -> impl Strategy<Value = FieldElement> {
    prop::collection::vec((coeff(), -3i64 * d..=3 * d), 1..=4).prop_map(move |terms| {
        let parts: Vec<FieldElement> = terms
            .into_iter()
            .map(|(c, e)| FieldElement::monomial(c, &Rational::new(e.into(), d.into())))
            .collect();
        FieldElement::sum(&parts)
    })
}

fn element() -> impl Strategy<Value = FieldElement> {
    (1i64..=3)
        .prop_flat_map(|d| (sum_of_monomials(d), sum_of_monomials(d)))
        .prop_map(|(n, m)| if m.is_zero() { n } else { n.checked_div(&m).unwrap() })
}

fn finite_element() -> impl Strategy<Value = FieldElement> {
    element().prop_filter("at most finite", FieldElement::is_at_most_finite)
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(coeff(), 1..=5).prop_map(Polynomial::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&(&a - &b) + &b) == a);
    }

    #[test]
    fn inverses(a in element()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.recip().unwrap()).is_one());
    }

    #[test]
    fn order_compatibility(a in element(), b in element(), c in element()) {
        if a > b {
            prop_assert!(&a + &c > &b + &c);
        }
        if a.is_positive() && b.is_positive() {
            prop_assert!((&a * &b).is_positive());
        }
    }

    #[test]
    fn ord_is_a_valuation(a in element(), b in element()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((&a * &b).ord().unwrap(), a.ord().unwrap() + b.ord().unwrap());
        if let Some(o) = (&a + &b).ord() {
            prop_assert!(o >= a.ord().unwrap().min(b.ord().unwrap()));
        }
    }

    #[test]
    fn rho_is_an_order_preserving_morphism(a in finite_element(), b in finite_element()) {
        let (ra, rb) = (a.rho().unwrap(), b.rho().unwrap());
        prop_assert_eq!((&a + &b).rho().unwrap(), &ra + &rb);
        prop_assert_eq!((&a * &b).rho().unwrap(), &ra * &rb);
        if a >= b {
            prop_assert!(ra >= rb);
        }
        if ra < rb {
            prop_assert!(a < b);
        }
        if ra != Rational::from_integer(0.into()) {
            prop_assert_eq!(a.recip().unwrap().rho().unwrap(), ra.recip());
        }
        let rest = &a - &FieldElement::from_rational(ra);
        prop_assert!(rest.is_zero() || rest.is_infinitesimal());
    }

    #[test]
    fn display_round_trips(a in element()) {
        prop_assert_eq!(parse_literal(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn gcd_divides_and_is_maximal(f in poly(), g in poly(), h in poly()) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let (a, b) = (&f * &h, &g * &h);
        let d = Polynomial::gcd(&a, &b);
        prop_assert!(a.rem(&d).is_zero());
        prop_assert!(b.rem(&d).is_zero());
        prop_assert!(d.rem(&h.monic()).is_zero());
        prop_assert_eq!(d.lead_coeff().cloned(), Some(Rational::from_integer(1.into())));
    }
}
