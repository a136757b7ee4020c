mod common;

use common::{expected_dim, gauss, REFERENCE};
use kepler_core::ideals::{fundamental_vanishing_check, ideal_contains, ideal_truncation, rectangular_decomposition};
use kepler_core::ktype::{ktype_sum, Partition};
use kepler_core::poly::count_homogeneous;
use kepler_core::report::Status;
use kepler_core::sample::Sampler;
use kepler_core::{parse_triple, Error, Poly};
use proptest::prelude::*;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn empty_partition_gives_everything() {
    for name in REFERENCE {
        let t = parse_triple(name).unwrap();
        let j = ideal_truncation(&t, &Partition::empty(), 3).unwrap();
        let full: Vec<usize> = (0..=3).map(|m| count_homogeneous(t.dim(), m)).collect();
        assert_eq!(j.dims(), full, "{name}");
    }
}

#[test]
fn single_box_gives_positive_degrees() {
    for name in REFERENCE {
        let t = parse_triple(name).unwrap();
        let j = ideal_truncation(&t, &p("1"), 3).unwrap();
        let dims = j.dims();
        assert_eq!(dims[0], 0);
        for m in 1..=3 {
            assert_eq!(dims[m], count_homogeneous(t.dim(), m), "{name} degree {m}");
        }
    }
}

#[test]
fn known_piece_dimensions() {
    let t = parse_triple("matrix:2x3").unwrap();
    assert_eq!(ideal_truncation(&t, &p("1,1"), 3).unwrap().dims()[3], 16);
    let t = parse_triple("matrix:2x2").unwrap();
    assert_eq!(ideal_truncation(&t, &p("1,1"), 4).unwrap().dims()[4], 10);
}

#[test]
fn degree_below_size_is_reported() {
    let t = parse_triple("matrix:2x2").unwrap();
    assert!(matches!(ideal_truncation(&t, &p("2,1"), 2), Err(Error::DegreeTooSmall { .. })));
}

/// `dim J^λ ∩ P^m = Σ_{μ ⊇ λ, |μ| = m} d_μ`, with `d_μ` from the Weyl formula.
#[test]
fn pieces_are_sums_of_types() {
    for name in REFERENCE {
        let t = parse_triple(name).unwrap();
        for lambda in Partition::up_to(2, t.rank()) {
            let j = ideal_truncation(&t, &lambda, 4).unwrap();
            for m in lambda.size()..=4 {
                let expect: usize = Partition::of_size(m, t.rank())
                    .iter()
                    .filter(|mu| mu.contains(&lambda))
                    .map(|mu| expected_dim(t.family(), mu))
                    .sum();
                assert_eq!(j.dims()[m], expect, "{name} {lambda} degree {m}");
                let sum = ktype_sum(&t, m, |mu| mu.contains(&lambda)).unwrap();
                assert_eq!(j.piece(m).unwrap(), &sum);
            }
        }
    }
}

#[test]
fn containment_follows_diagram_order() {
    for name in ["matrix:2x2", "spin:3", "sym:2"] {
        let t = parse_triple(name).unwrap();
        let all = Partition::up_to(3, t.rank());
        for l in &all {
            for m in &all {
                assert_eq!(ideal_contains(&t, l, m, 3).unwrap(), m.contains(l), "{name} {l} {m}");
            }
        }
    }
}

#[test]
fn rectangles_cover_the_diagram() {
    for s in ["1", "2,2", "3,1", "3,2,2,1", "4,4,1"] {
        let l = p(s);
        let rects = rectangular_decomposition(&l);
        for (n, k) in &rects {
            assert!(l.contains(&Partition::rectangle(*n, *k)));
        }
        let cols: Vec<usize> = (1..=l.len()).map(|i| rects.iter().filter(|(_, k)| *k >= i).map(|r| r.0).max().unwrap()).collect();
        assert_eq!(cols, l.parts());
    }
}

#[test]
fn fundamental_ideals_vanish_on_low_rank() {
    let mut s = Sampler::new(5);
    for name in REFERENCE {
        let t = parse_triple(name).unwrap();
        for m in 1..=t.rank() {
            let points: Vec<_> = (0..m).map(|l| s.rank_point(&t, l).unwrap()).collect();
            let c = fundamental_vanishing_check(&t, m, m + 1, &points).unwrap();
            assert_eq!(c.status, Status::Pass, "{name} m={m}");
        }
        let top = s.rank_point(&t, t.rank()).unwrap();
        assert!(fundamental_vanishing_check(&t, t.rank(), t.rank() + 1, &[top]).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ideal_absorbs_products(idx in 0usize..3, coeffs in prop::collection::vec(gauss(), 4), which in 0usize..8) {
        let t = parse_triple("matrix:2x2").unwrap();
        let lambda = [p("1"), p("1,1"), p("2")][idx].clone();
        let j = ideal_truncation(&t, &lambda, 4).unwrap();
        let piece = j.piece(lambda.size()).unwrap().polys();
        let f = &piece[which % piece.len()];
        let g = Poly::linear(&coeffs);
        let fg = f * &g;
        prop_assert!(j.contains(&fg));
        prop_assert!(j.contains(&(&fg * &g)));
    }
}
