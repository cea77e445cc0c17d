//! Property tests for the form DSL: canonical printing round-trips exactly,
//! and no input string can crash the parser.

use chen_core::formdsl::{format_form, parse_form};
use chen_core::forms::{Form, Polynomial, Rational};
use proptest::prelude::*;

/// Strategy for a random form on ℝⁿ (including zero forms of any legal degree).
fn arb_form(n: usize) -> impl Strategy<Value = Form> {
    let key = proptest::collection::btree_set(1..=n, 0..=n);
    let monomial = (proptest::collection::vec(0u32..3, n), -9i64..=9, 1i64..=4);
    (key, proptest::collection::vec(monomial, 0..4)).prop_map(move |(key, monos)| {
        let key: Vec<usize> = key.into_iter().collect();
        let mut poly = Polynomial::zero(n);
        for (exps, num, den) in monos {
            let c = Rational::new(num.into(), den.into());
            poly = poly.add(&Polynomial::monomial(n, exps, c));
        }
        Form::zero(n, key.len()).with_term(&key, poly).unwrap()
    })
}

proptest! {
    #[test]
    fn print_parse_round_trips(f in (1usize..=4).prop_flat_map(arb_form)) {
        let n = f.dimension();
        let text = format_form(&f);
        let back = parse_form(&text, n).unwrap_or_else(|e| {
            panic!("canonical text {text:?} failed to parse: {e}")
        });
        prop_assert_eq!(&back, &f, "round-trip through {:?}", text);
        // canonical text is a fixed point
        prop_assert_eq!(format_form(&back), text);
    }

    #[test]
    fn sums_of_terms_round_trip(
        forms in proptest::collection::vec(arb_form(3), 1..4),
    ) {
        // same-degree sums accumulate; print and reparse the accumulated form
        let degree = forms[0].degree();
        let mut acc = Form::zero(3, degree);
        for f in forms.iter().filter(|f| f.degree() == degree) {
            acc = acc.add(f);
        }
        let text = format_form(&acc);
        prop_assert_eq!(parse_form(&text, 3).unwrap(), acc);
    }

    #[test]
    fn parser_never_panics(text in ".{0,60}") {
        let _ = parse_form(&text, 3);
    }

    #[test]
    fn parser_never_panics_on_dsl_like_input(
        text in "[-+*^/ dx0-9]{0,40}",
    ) {
        let _ = parse_form(&text, 2);
    }
}
