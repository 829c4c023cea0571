use linkinv::algebra::{rint, LaurentPolynomial, TruncatedSeries};
use proptest::prelude::*;

const XS: [&str; 3] = ["x1", "x2", "x3"];

fn poly() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec(((-3i32..=3, -3i32..=3, -3i32..=3), -5i64..=5), 0..8).prop_map(|terms| {
        terms.into_iter().fold(LaurentPolynomial::zero(&XS), |acc, ((a, b, c), k)| {
            &acc + &LaurentPolynomial::monomial(&XS, &[a, b, c], rint(k))
        })
    })
}

proptest! {
    #[test]
    fn bar_is_an_involution(p in poly()) {
        prop_assert_eq!(p.bar().bar(), p);
    }

    #[test]
    fn bar_is_multiplicative(p in poly(), q in poly()) {
        prop_assert_eq!((&p * &q).bar(), &p.bar() * &q.bar());
    }

    #[test]
    fn brace_is_bar_invariant(p in poly()) {
        let b = p.brace();
        prop_assert_eq!(b.bar(), b);
        prop_assert_eq!(p.bracket().bar(), -&p.bracket());
    }

    #[test]
    fn series_inverse(c0 in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
                      rest in prop::collection::vec(-4i64..=4, 0..8),
                      cap in 1u32..10) {
        let mut coeffs = vec![rint(c0)];
        coeffs.extend(rest.into_iter().map(rint));
        let s = TruncatedSeries::from_coeffs("z", cap, &coeffs);
        let inv = s.invert().unwrap();
        prop_assert_eq!(&s * &inv, TruncatedSeries::one(&["z"], cap));
        prop_assert_eq!(inv.invert().unwrap(), s.truncate(cap));
    }
}

#[test]
fn series_without_constant_term_is_not_invertible() {
    let z = TruncatedSeries::var(&["z"], 6, "z");
    assert!(z.invert().is_err());
}

#[test]
fn exact_division() {
    let x = LaurentPolynomial::var(&["x"], "x");
    let one = LaurentPolynomial::one(&["x"]);
    let a = &x - &one;
    let b = &(&x * &x) - &one;
    assert_eq!(b.exact_div(&a).unwrap(), &x + &one);
    assert!(a.exact_div(&b).is_err());
}
