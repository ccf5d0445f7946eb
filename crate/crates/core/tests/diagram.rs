use jonescope_core::corpus;
use jonescope_core::diagram::{parse_morse, parse_pd, pd_to_morse, MorseTangle, PdCode};
use jonescope_core::Error;

#[test]
fn corpus_shapes() {
    let expect = [
        ("0_1", 0usize, 0i64, 0usize),
        ("0_1_kink_pos", 1, 1, 0),
        ("0_1_kink_neg", 1, -1, 0),
        ("3_1", 3, -3, 1),
        ("4_1", 4, 0, 2),
        ("5_2", 5, -5, 3),
        ("6_1", 6, -2, 4),
    ];
    let names: Vec<&str> = corpus::names().collect();
    assert_eq!(names, expect.iter().map(|e| e.0).collect::<Vec<_>>());
    for (name, count, writhe, c) in expect {
        let s = corpus::knot(name).unwrap().stats();
        assert_eq!(s.crossing_count, count, "{name}");
        assert_eq!(s.writhe.abs(), writhe.abs(), "{name}");
        assert_eq!(s.c, c, "{name}");
    }
    assert_eq!(corpus::knot("unknot").unwrap(), corpus::knot("0_1").unwrap());
    assert!(corpus::knot("8_19").is_err());
    assert!(corpus::pd("0_1_kink_pos").is_err());
}

#[test]
fn empty_inputs() {
    let t = parse_morse("").unwrap();
    assert_eq!(t, MorseTangle::unknot());
    assert_eq!(t.stats().crossing_count, 0);
    let pd = parse_pd("").unwrap();
    assert_eq!(pd, PdCode::unknot());
    assert_eq!(pd_to_morse(&pd).unwrap().crossing_count(), 0);
}

#[test]
fn text_round_trips() {
    for name in corpus::names() {
        let t = corpus::knot(name).unwrap();
        assert_eq!(parse_morse(&t.to_text()).unwrap(), t, "{name}");
        if let Ok(pd) = corpus::pd(name) {
            assert_eq!(parse_pd(&pd.to_text()).unwrap(), pd, "{name}");
            assert_eq!(pd.writhe(), t.writhe(), "{name}");
        }
    }
}

#[test]
fn mirror_flips_writhe() {
    for name in corpus::names() {
        let t = corpus::knot(name).unwrap();
        assert_eq!(t.mirror().writhe(), -t.writhe());
        assert_eq!(t.mirror().mirror(), t);
    }
}

#[test]
fn malformed_inputs() {
    assert!(matches!(parse_pd("X[1,2,3,4]"), Err(Error::Parse { .. })));
    assert!(parse_pd("X[1,4,2,5]\nX[3,6,4,1]\nX[5,2,6,7]").is_err());
    assert!(parse_morse("cup 0\nx+ 5\ncap 0").is_err());
    assert!(parse_morse("frob 1").is_err());
}
