use jonescope_core::corpus;
use jonescope_core::diagram::{parse_morse, parse_pd, pd_to_morse, MorseTangle};
use jonescope_core::statesum::{
    alexander_poly, bracket_oracle, cabling_oracle, check_bounds, colored_jones, colored_jones_transfer, r_minus,
    r_plus,
};
use jonescope_core::{ev_n, qint, QLaurent};
use num_bigint::BigInt;

/// `Σ_k Π_{j≤k} {n+j}{n-j}`, a closed form for the figure-eight knot.
fn figure_eight(n: usize) -> QLaurent {
    let n = n as i64;
    let mut sum = QLaurent::zero();
    let mut term = QLaurent::one();
    for k in 0..n {
        if k > 0 {
            term = &term * &(&qint(n + k) * &qint(n - k));
        }
        sum += &term;
    }
    sum
}

#[test]
fn unknot_diagrams() {
    for name in corpus::UNKNOTS {
        let t = corpus::knot(name).unwrap();
        for n in 1..=10 {
            assert!(colored_jones(&t, n).unwrap().is_one(), "{name} n={n}");
        }
    }
    assert!(colored_jones(&MorseTangle::unknot(), 4).unwrap().is_one());
}

#[test]
fn first_color_is_trivial() {
    for name in corpus::KNOTS {
        assert!(colored_jones(&corpus::knot(name).unwrap(), 1).unwrap().is_one(), "{name}");
    }
}

#[test]
fn bracket_and_cabling_oracles() {
    for name in ["3_1", "4_1", "5_2", "6_1"] {
        let t = corpus::knot(name).unwrap();
        let pd = corpus::pd(name).unwrap();
        assert_eq!(colored_jones(&t, 2).unwrap(), bracket_oracle(&pd).unwrap(), "{name}");
    }
    for name in ["3_1", "4_1"] {
        let t = corpus::knot(name).unwrap();
        let pd = corpus::pd(name).unwrap();
        assert_eq!(colored_jones(&t, 3).unwrap(), cabling_oracle(&pd, 3).unwrap(), "{name}");
    }
    let j = bracket_oracle(&corpus::pd("3_1").unwrap()).unwrap();
    assert_eq!(j.len(), 3);
    assert_eq!(j.l1(), BigInt::from(3));
    let f8 = bracket_oracle(&corpus::pd("4_1").unwrap()).unwrap();
    assert_eq!(f8.mirror(), f8);
    assert!(bracket_oracle(&corpus::pd("0_1").unwrap()).unwrap().is_one());
}

#[test]
fn figure_eight_closed_form() {
    let t = corpus::knot("4_1").unwrap();
    for n in 1..=9 {
        assert_eq!(colored_jones(&t, n).unwrap(), figure_eight(n), "n={n}");
    }
}

#[test]
fn engines_agree() {
    for name in corpus::KNOTS {
        let t = corpus::knot(name).unwrap();
        for n in 1..=6 {
            assert_eq!(colored_jones(&t, n).unwrap(), colored_jones_transfer(&t, n).unwrap(), "{name} n={n}");
        }
    }
}

#[test]
fn mirror_and_integrality() {
    for name in corpus::KNOTS {
        let t = corpus::knot(name).unwrap();
        let m = t.mirror();
        for n in 1..=6 {
            let j = colored_jones(&t, n).unwrap();
            assert!(j.is_whole(), "{name} n={n}: {j}");
            assert_eq!(j.at_one(), BigInt::from(1));
            assert_eq!(colored_jones(&m, n).unwrap(), j.mirror(), "{name} n={n}");
        }
    }
}

#[test]
fn pd_route_matches_morse_route() {
    for name in corpus::KNOTS {
        let pd = parse_pd(corpus::pd_text(name).unwrap()).unwrap();
        let via_pd = pd_to_morse(&pd).unwrap();
        let direct = parse_morse(corpus::morse_text(name).unwrap()).unwrap();
        for n in 1..=4 {
            assert_eq!(colored_jones(&via_pd, n).unwrap(), colored_jones(&direct, n).unwrap(), "{name} n={n}");
        }
    }
}

#[test]
fn alexander_polynomials() {
    let t = |e: i64| 4 * e;
    assert!(alexander_poly(&corpus::pd("0_1").unwrap()).unwrap().is_one());
    assert_eq!(
        alexander_poly(&corpus::pd("3_1").unwrap()).unwrap(),
        QLaurent::from_terms([(t(1), 1i64), (0, -1), (t(-1), 1)])
    );
    assert_eq!(
        alexander_poly(&corpus::pd("4_1").unwrap()).unwrap(),
        QLaurent::from_terms([(t(1), -1i64), (0, 3), (t(-1), -1)])
    );
}

#[test]
fn crossing_weights() {
    for n in 1..=8usize {
        for a in 0..n {
            for b in 0..n {
                let unit = r_plus(n, a, b, 0).unwrap();
                assert_eq!(unit.len(), 1);
                assert_eq!(unit.l1(), BigInt::from(1));
                for k in 0..=a.min(n - 1 - b) {
                    assert!(r_plus(n, a, b, k).unwrap().l1() <= BigInt::from(4).pow(n as u32));
                }
            }
        }
    }
    for n in 1..=12usize {
        for a in 0..n {
            for b in 0..n {
                for k in 0..=b.min(n - 1 - a) {
                    let m = ev_n(&r_minus(n, a, b, k).unwrap(), n as u64).norm();
                    let p = ev_n(&r_plus(n, b, a, k).unwrap(), n as u64).norm();
                    assert!((m - p).abs() <= 1e-9 * p.max(1.0));
                }
            }
        }
    }
    assert!(r_plus(3, 0, 0, 1).is_err());
}

#[test]
fn norm_and_degree_bounds() {
    for name in corpus::names() {
        let r = check_bounds(&corpus::knot(name).unwrap(), 10).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.failures);
    }
    let r = check_bounds(&corpus::knot("3_1").unwrap(), 12).unwrap();
    for row in &r.rows {
        let n = row.n as u32;
        assert!(row.l1 <= BigInt::from(row.n) * BigInt::from(4).pow(n));
    }
    // deg_+ J_{4_1,n} = n(n-1) from the closed form; leading coefficient (c+2)/4 = 1
    let r = check_bounds(&corpus::knot("4_1").unwrap(), 12).unwrap();
    for row in &r.rows {
        let n = row.n as i64;
        assert_eq!(row.deg_plus, 4 * n * (n - 1), "n={n}");
    }
}
