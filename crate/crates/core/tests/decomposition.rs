use linkinv::algebra::{rint, LaurentPolynomial};
use linkinv::transforms::{decompose_poly, nabla_bold, reconstruct};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn xvars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{}", i)).collect()
}

/// Random bar-invariant polynomial in `n` variables with total degree at
/// most `deg`, built as a sum of `c {M}`.
fn bar_invariant(n: usize, deg: i32) -> impl Strategy<Value = LaurentPolynomial> {
    let vars = xvars(n);
    prop::collection::vec((prop::collection::vec(-deg..=deg, n), -4i64..=4), 0..6).prop_map(move |terms| {
        terms.into_iter().fold(LaurentPolynomial::zero(&vars), |acc, (e, c)| {
            let total: i32 = e.iter().map(|k| k.abs()).sum();
            if total > deg {
                return acc;
            }
            &acc + &LaurentPolynomial::monomial(&vars, &e, rint(c)).brace()
        })
    })
}

#[test]
fn random_round_trips() {
    let mut runner = TestRunner::new(Config { cases: 200, ..Config::default() });
    let strategy = (1usize..=3).prop_flat_map(|n| (Just(n), bar_invariant(n, 6)));
    runner
        .run(&strategy, |(n, omega)| {
            let dec = decompose_poly(&omega, n).unwrap();
            prop_assert!(dec.is_half_integral());
            prop_assert_eq!(reconstruct(&dec), &LaurentPolynomial::zero(&xvars(n)) + &omega);
            let again = decompose_poly(&reconstruct(&dec), n).unwrap();
            prop_assert_eq!(&again, &dec);
            prop_assert_eq!(nabla_bold(&again), nabla_bold(&dec));
            Ok(())
        })
        .unwrap();
}

#[test]
fn zero_decomposes_to_zero() {
    for n in 1..=4 {
        let dec = decompose_poly(&LaurentPolynomial::zero(&xvars(n)), n).unwrap();
        assert_eq!(dec.n, n);
        assert_eq!(dec.parts.len(), 1 << (n - 1));
        assert!(dec.parts.values().all(|p| p.is_zero()));
    }
}

#[test]
fn rejects_non_invariant_input() {
    let x = LaurentPolynomial::var(&["x1", "x2"], "x1");
    assert!(decompose_poly(&x, 2).is_err());
}
