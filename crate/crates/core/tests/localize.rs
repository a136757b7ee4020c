use kepler_core::ideals::ideal_truncation;
use kepler_core::ktype::{ktype_space, Partition};
use kepler_core::localize::{
    fiber, lowest_type_projection, maximal_ideal_truncation, stratum_homogeneity_check, theorem_r_check,
    theorem_w_check, Stratum,
};
use kepler_core::poly::MonomialBasis;
use kepler_core::report::Status;
use kepler_core::sample::Sampler;
use kepler_core::{parse_triple, Error, ExactScalar, Monomial, Poly, PolySubspace};
use proptest::prelude::*;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn maximal_ideal_has_codimension_one() {
    let mut s = Sampler::new(2);
    for d in 1..=3 {
        for zeta in [vec![ExactScalar::zero(); d], s.vector(d)] {
            let m = maximal_ideal_truncation(&zeta, 3).unwrap();
            let full = PolySubspace::full(MonomialBasis::up_to(d, 3));
            assert_eq!(full.quotient_dim(&m).unwrap(), 1);
            assert!(!m.contains(&Poly::one(d)));
        }
    }
    let origin = maximal_ideal_truncation(&vec![ExactScalar::zero(); 3], 2).unwrap();
    for m in MonomialBasis::up_to(3, 2).monomials().iter().filter(|m| m.degree() > 0) {
        assert!(origin.contains(&Poly::monomial(m.clone(), ExactScalar::one())));
    }
    let e1 = [ExactScalar::one(), ExactScalar::zero()];
    let m = maximal_ideal_truncation(&e1, 2).unwrap();
    assert!(m.contains(&Poly::parse("z0 - 1", 2).unwrap()));
}

#[test]
fn maximal_fiber_is_the_whole_type() {
    for name in ["matrix:2x2", "matrix:2x3", "sym:2", "spin:4"] {
        let t = parse_triple(name).unwrap();
        for lambda in [p("1"), p("1,1"), p("2,1")] {
            let f = fiber(&t, &lambda, &vec![ExactScalar::zero(); t.dim()], lambda.size() + 2).unwrap();
            assert_eq!(f.fiber_dim, Some(ktype_space(&t, &lambda).unwrap().dim()), "{name} {lambda}");
        }
    }
}

#[test]
fn known_fibers() {
    let t = parse_triple("matrix:2x3").unwrap();
    let f = fiber(&t, &p("1,1"), &t.frame_sum(1), 5).unwrap();
    assert_eq!(f.fiber_dim, Some(2));
    let t = parse_triple("matrix:2x2").unwrap();
    let f = fiber(&t, &p("1,1"), &t.frame_sum(2), 4).unwrap();
    assert_eq!(f.fiber_dim, Some(1));
}

#[test]
fn fibers_across_strata() {
    let cases = [("matrix:2x3", "2,1", [16, 2, 1]), ("spin:4", "1,1", [1, 1, 1])];
    for (name, l, expect) in cases {
        let t = parse_triple(name).unwrap();
        let lambda = p(l);
        for (ell, want) in expect.iter().enumerate() {
            let f = fiber(&t, &lambda, &t.frame_sum(ell), lambda.size() + 2).unwrap();
            assert_eq!(f.fiber_dim, Some(*want), "{name} {l} stratum {ell}");
            let st = Stratum::new(&t, &lambda, ell).unwrap();
            assert_eq!(ktype_space(st.w(), &st.lambda_star).unwrap().dim(), *want);
        }
    }
}

#[test]
fn short_truncation_asks_for_more() {
    let t = parse_triple("matrix:2x3").unwrap();
    let f = fiber(&t, &p("2,1"), &t.frame_sum(1), 3).unwrap();
    assert!(!f.stabilized);
    assert_eq!(f.status(), Status::NeedsHigherDegree);
    assert_eq!(f.fiber_dim, None);
}

#[test]
fn minor_projects_to_a_coordinate() {
    let t = parse_triple("matrix:2x3").unwrap();
    let minor = Poly::parse("z0*z4 - z1*z3", 6).unwrap();
    let got = lowest_type_projection(&t, &p("1,1"), 1, &minor).unwrap();
    let st = Stratum::new(&t, &p("1,1"), 1).unwrap();
    let k = (0..st.w().dim()).find(|&k| st.sub.embed[(4, k)].is_one()).expect("z22 lies in W");
    assert_eq!(got, Poly::var(st.w().dim(), k));
}

#[test]
fn relations_project_to_zero() {
    let t = parse_triple("matrix:2x3").unwrap();
    let lambda = p("1,1");
    for l in 0..=2 {
        let c = t.frame_sum(l);
        let j = ideal_truncation(&t, &lambda, 3).unwrap();
        for g in j.piece(2).unwrap().polys() {
            for i in 0..t.dim() {
                let rel = &g.mul_monomial(&Monomial::var(t.dim(), i)) - &g.scale(&c[i]);
                assert!(lowest_type_projection(&t, &lambda, l, &rel).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn regular_stratum_gives_constants() {
    let t = parse_triple("matrix:2x2").unwrap();
    let lambda = p("1,1");
    let j = ideal_truncation(&t, &lambda, 2).unwrap();
    let images: Vec<Poly> = j.piece(2).unwrap().polys().iter().map(|f| lowest_type_projection(&t, &lambda, 2, f).unwrap()).collect();
    assert!(images.iter().all(|g| g.degree().unwrap_or(0) == 0));
    assert!(images.iter().any(|g| !g.is_zero()));
}

#[test]
fn theorems_hold_on_examples() {
    let cases = [("matrix:2x3", "1,1"), ("matrix:2x3", "2,1"), ("spin:4", "1,1"), ("sym:2", "2,1")];
    for (name, l) in cases {
        let t = parse_triple(name).unwrap();
        let lambda = p(l);
        for ell in 0..=t.rank() {
            let n = lambda.size() + 2;
            assert_eq!(theorem_r_check(&t, &lambda, ell, n).unwrap().status, Status::Pass, "r {name} {l} {ell}");
            assert_eq!(theorem_w_check(&t, &lambda, ell, n).unwrap().status, Status::Pass, "w {name} {l} {ell}");
        }
    }
}

#[test]
fn fundamental_projections_vanish_on_low_rank() {
    let t = parse_triple("matrix:2x3").unwrap();
    let mut s = Sampler::new(9);
    let lambda = Partition::fundamental(2);
    let j = ideal_truncation(&t, &lambda, 3).unwrap();
    for l in 0..2 {
        let st = Stratum::new(&t, &lambda, l).unwrap();
        let w = st.w().clone();
        let points: Vec<_> = (0..2 - l).map(|k| s.rank_point(&w, k).unwrap()).collect();
        for f in j.pieces().iter().flat_map(|p| p.polys()) {
            let g = st.normal_project(&f).unwrap();
            for z in &points {
                assert!(g.eval(z).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn homogeneity_along_strata() {
    let t = parse_triple("matrix:2x2").unwrap();
    let lambda = p("1,1");
    let mut s = Sampler::new(4);
    let e1 = t.frame_sum(1);
    let twice: Vec<ExactScalar> = e1.iter().map(|x| x * &ExactScalar::from(2)).collect();
    let moved = s.rank_point(&t, 1).unwrap();
    let c = stratum_homogeneity_check(&t, &lambda, 1, &[e1.clone(), twice, moved], 4).unwrap();
    assert_eq!(c.status, Status::Pass);
    let c = stratum_homogeneity_check(&t, &lambda, 0, &[vec![ExactScalar::zero(); 4]], 4).unwrap();
    assert_eq!(c.status, Status::Pass);
    let full: Vec<_> = (0..3).map(|_| s.rank_point(&t, 2).unwrap()).collect();
    let c = stratum_homogeneity_check(&t, &lambda, 2, &full, 4).unwrap();
    assert_eq!(c.status, Status::Pass);
    for z in &full {
        assert_eq!(fiber(&t, &lambda, z, 4).unwrap().fiber_dim, Some(1));
    }
    let err = stratum_homogeneity_check(&t, &lambda, 2, &[e1], 4).unwrap_err();
    assert!(matches!(err, Error::RankMismatch { expected: 2, found: 1 }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fibers_are_bounded_and_traces_settle(
        name in prop::sample::select(vec!["matrix:2x2", "spin:3", "sym:2"]),
        idx in 0usize..3,
        l in 0usize..=2,
        seed in 0u64..1000,
    ) {
        let t = parse_triple(name).unwrap();
        let lambda = [p("1"), p("1,1"), p("2,1")][idx].clone();
        let z = Sampler::new(seed).rank_point(&t, l).unwrap();
        let f = fiber(&t, &lambda, &z, lambda.size() + 2).unwrap();
        let trace = f.trace();
        prop_assert!(trace.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(trace[0] <= ktype_space(&t, &lambda).unwrap().dim());
        if let Some(dim) = f.fiber_dim {
            prop_assert!(dim <= ktype_space(&t, &lambda).unwrap().dim());
        }
    }
}
