use linkinv::diagram::{braid_closure, canonical_code, parse_diagram, parse_pd, BraidWord};
use linkinv::Error;
use proptest::prelude::*;

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|n| {
        let g = n as i32 - 1;
        prop::collection::vec(prop::sample::select((1..=g).chain(-g..=-1).collect::<Vec<_>>()), 1..9)
            .prop_map(move |w| BraidWord::new(n, w).unwrap())
    })
}

proptest! {
    #[test]
    fn pd_round_trip(b in braid()) {
        let d = braid_closure(&b, None).unwrap();
        let text = d.render_pd();
        let back = parse_pd(&text).unwrap();
        prop_assert_eq!(back.render_pd(), text);
        prop_assert_eq!(canonical_code(&back, true), canonical_code(&d, true));
        prop_assert_eq!(back.linking_matrix(), d.linking_matrix());
        prop_assert_eq!(back.writhe(), d.writhe());
    }

    #[test]
    fn mirror_negates_writhe(b in braid()) {
        let d = braid_closure(&b, None).unwrap();
        prop_assert_eq!(d.mirror().writhe(), -d.writhe());
        prop_assert_eq!(d.mirror().mirror().render_pd(), d.render_pd());
    }
}

#[test]
fn braid_syntax() {
    let d = parse_diagram("braid(3): s1 -s2 s1 -s2 colors: [1]").unwrap();
    assert_eq!(d.component_count(), 1);
    assert_eq!(d.crossing_count(), 4);
    assert_eq!(d.writhe(), 0);
}

#[test]
fn malformed_input_reports_a_position() {
    match parse_pd("X[1,2,3") {
        Err(Error::Parse { .. }) => {}
        other => panic!("expected a parse error, got {:?}", other.map(|d| d.render_pd())),
    }
    assert!(parse_pd("X[1,2,3,4]").is_err());
}

#[test]
fn coloring_arity_is_checked() {
    let d = parse_diagram("braid(2): s1 s1").unwrap();
    assert_eq!(d.recolor(&[1]).err(), Some(Error::ColoringArity { expected: 2, got: 1 }));
    assert_eq!(d.recolor(&[1, 2]).unwrap().color_count(), 2);
}
