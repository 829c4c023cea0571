use std::sync::Arc;

use linkinv::algebra::rint;
use linkinv::corpus::{Corpus, FamilyKind};
use linkinv::finitetype::{alpha2_jump_witness, extend, leibniz_restrict, type_falsify, InvariantFunction};
use linkinv::invariants::Engines;
use num_rational::BigRational;

#[test]
fn alpha2_jumps_match_the_formula() {
    let engines = Arc::new(Engines::default());
    let a2 = InvariantFunction::alpha(2, engines);
    for (a, b, c, d) in [(1, 2, -3, 0), (2, 1, -3, 0), (-1, -2, 3, 0), (1, 1, 0, -1), (2, 0, 0, -1), (1, 2, -1, -1)] {
        let (s, want) = alpha2_jump_witness(a, b, c, d).unwrap();
        assert_eq!(s.points().len(), 3);
        assert_eq!(extend(&a2, &s).unwrap(), BigRational::from_integer(want), "({},{},{},{})", a, b, c, d);
    }
}

#[test]
fn conway_coefficients_vanish_above_their_degree() {
    // on self-crossing points, c_k has type m - 1 + 2k
    let engines = Arc::new(Engines::default());
    let corpus = Corpus::bundled();
    let mut checked = 0;
    for e in corpus.families(FamilyKind::Kl) {
        let s = e.singular().unwrap();
        let r = s.points().len();
        let m = s.base().component_count();
        for k in (0..).take_while(|k| m - 1 + 2 * k < r) {
            let c = InvariantFunction::conway_coeff(k, engines.clone());
            assert!(type_falsify(&c, &[s.clone()], r - 1).unwrap().is_empty(), "c{} on {}", k, e.name);
            checked += 1;
        }
    }
    assert!(checked >= 6);
}

#[test]
fn linking_number_is_type_one() {
    let corpus = Corpus::bundled();
    let lk = InvariantFunction::linking_number();
    for e in corpus.families(FamilyKind::Mono) {
        let s = e.singular().unwrap();
        if s.points().len() >= 2 {
            assert_eq!(extend(&lk, &s).unwrap(), rint(0), "{}", e.name);
        }
    }
}

#[test]
fn product_rule() {
    let engines = Arc::new(Engines::default());
    let corpus = Corpus::bundled();
    let a = InvariantFunction::conway_coeff(2, engines.clone());
    let b = InvariantFunction::lk_parity();
    for name in ["mono-hopf", "kl-whitehead", "kl-trefoil-clasp"] {
        let s = corpus.get(name).unwrap().singular().unwrap();
        assert!(leibniz_restrict(&a, &b, &s).unwrap(), "{}", name);
    }
}
