mod common;

use common::{expected_dim, homogeneous, REFERENCE};
use kepler_core::ktype::{decompose, dims_report, ktype_project, ktype_space, spherical, Partition};
use kepler_core::poly::count_homogeneous;
use kepler_core::{parse_triple, Poly};
use proptest::prelude::*;

#[test]
fn dimensions_match_weyl_formula() {
    for name in REFERENCE {
        let t = parse_triple(name).unwrap();
        for n in 0..=4 {
            let rows = dims_report(&t, n).unwrap();
            let total: usize = rows.iter().map(|r| r.1).sum();
            assert_eq!(total, count_homogeneous(t.dim(), n), "{name} degree {n}");
            for (l, dim) in rows {
                assert_eq!(dim, expected_dim(t.family(), &l), "{name} {l}");
            }
        }
    }
}

#[test]
fn distinct_types_are_orthogonal() {
    for name in REFERENCE {
        let t = parse_triple(name).unwrap();
        for n in 1..=3 {
            let types = Partition::of_size(n, t.rank());
            for (i, l) in types.iter().enumerate() {
                for m in &types[i + 1..] {
                    for p in ktype_space(&t, l).unwrap().basis() {
                        for q in ktype_space(&t, m).unwrap().basis() {
                            assert!(t.fock().inner(&p, &q).unwrap().is_zero(), "{name} {l} {m}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn spaces_are_k_invariant() {
    for name in REFERENCE {
        let t = parse_triple(name).unwrap();
        for l in Partition::of_size(2, t.rank()) {
            let k = ktype_space(&t, &l).unwrap();
            for g in t.k_generators() {
                for p in k.basis() {
                    assert!(k.space.contains(&p.compose_linear(&g).unwrap()), "{name} {l}");
                }
            }
        }
    }
}

#[test]
fn lowest_types() {
    let t = parse_triple("matrix:2x2").unwrap();
    let det = ktype_space(&t, &Partition::new(&[1, 1]).unwrap()).unwrap();
    assert_eq!(det.dim(), 1);
    assert!(det.space.contains(t.minor_poly(2).unwrap()));
    let phi = spherical(&t, &Partition::new(&[1]).unwrap()).unwrap();
    assert_eq!(phi.eval(&t.unit()).unwrap(), 1.into());
}

#[test]
fn too_many_parts_is_rejected() {
    let t = parse_triple("spin:3").unwrap();
    assert!(ktype_space(&t, &Partition::new(&[1, 1, 1]).unwrap()).is_err());
}

fn reference() -> impl Strategy<Value = (&'static str, Poly)> {
    prop::sample::select(REFERENCE.to_vec())
        .prop_flat_map(|name| (Just(name), (0usize..=3).prop_flat_map(move |n| homogeneous(parse_triple(name).unwrap().dim(), n, 5))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompose_roundtrip((name, f) in reference()) {
        let t = parse_triple(name).unwrap();
        let parts = decompose(&t, &f).unwrap();
        let mut sum = Poly::zero(t.dim());
        for (l, c) in &parts {
            prop_assert!(ktype_space(&t, l).unwrap().space.contains(c));
            prop_assert_eq!(&ktype_project(&t, c, l).unwrap(), c);
            sum = &sum + c;
        }
        prop_assert_eq!(sum, f);
    }
}
