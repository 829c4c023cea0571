use linkinv::corpus::Corpus;
use linkinv::skein::{SkeinEngine, SkeinKind};
use linkinv::Error;

const LINKS: [&str; 7] = ["trefoil-right", "figure-eight", "whitehead", "borromean", "solomon", "hopf-chain3", "trefoil-clasp"];

#[test]
fn descent_order_does_not_matter() {
    let corpus = Corpus::bundled();
    for kind in [SkeinKind::Conway, SkeinKind::Homfly, SkeinKind::Dubrovnik] {
        let reference = SkeinEngine::new(kind);
        for name in LINKS {
            let d = corpus.get(name).unwrap().diagram().unwrap();
            let want = reference.evaluate(&d).unwrap();
            for seed in 0..10 {
                let got = SkeinEngine::new(kind).with_seed(seed).evaluate(&d).unwrap();
                assert_eq!(got, want, "{:?} on {} with seed {}", kind, name, seed);
            }
        }
    }
}

#[test]
fn budget_is_enforced() {
    let d = Corpus::bundled().get("borromean").unwrap().diagram().unwrap();
    let e = SkeinEngine::new(SkeinKind::Conway).with_budget(2);
    assert_eq!(e.evaluate(&d), Err(Error::BudgetExceeded(2)));
}

#[test]
fn mirror_image_conway() {
    let corpus = Corpus::bundled();
    for name in LINKS {
        let d = corpus.get(name).unwrap().diagram().unwrap();
        let a = linkinv::skein::conway(&d).unwrap();
        let b = linkinv::skein::conway(&d.mirror()).unwrap();
        let sign = if d.component_count() % 2 == 0 { -1 } else { 1 };
        assert_eq!(b, a.scale(&linkinv::algebra::rint(sign)), "{}", name);
    }
}
