mod common;

use common::{vector, REFERENCE};
use kepler_core::kernels::{
    binomial_check, delta_kernel, delta_power_series, pieri_check, pieri_coefficient, pochhammer, wallach_data,
};
use kepler_core::ktype::{spherical, Partition};
use kepler_core::report::Status;
use kepler_core::{parse_triple, Error, ExactScalar, Poly, Rat, SesquiPoly};
use proptest::prelude::*;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn q(a: i64, b: i64) -> Rat {
    Rat::new(a, b)
}

#[test]
fn two_by_two_closed_form() {
    let t = parse_triple("matrix:2x2").unwrap();
    let det = Poly::parse("z0*z3 - z1*z2", 4).unwrap();
    let mut expect = SesquiPoly::one(4).add(&SesquiPoly::outer(&det, &det).unwrap()).unwrap();
    for i in 0..4 {
        let zi = Poly::var(4, i);
        expect = expect.sub(&SesquiPoly::outer(&zi, &zi).unwrap()).unwrap();
    }
    assert_eq!(delta_kernel(&t).unwrap().kernel, expect);
}

#[test]
fn delta_basics() {
    for name in REFERENCE {
        let t = parse_triple(name).unwrap();
        let delta = delta_kernel(&t).unwrap();
        assert!(delta.kernel.is_hermitian(), "{name}");
        let zero = vec![ExactScalar::zero(); t.dim()];
        let z: Vec<ExactScalar> = (0..t.dim()).map(|i| ExactScalar::frac(i as i64 + 1, 7)).collect();
        assert!(delta.eval(&z, &zero).unwrap().is_one());
        let zeta = t.frame_point(&[ExactScalar::frac(1, 2), ExactScalar::frac(1, 3)]);
        assert_eq!(delta.eval(&zeta, &zeta).unwrap(), ExactScalar::frac(2, 3), "{name}");
    }
}

#[test]
fn higher_rank_antisymmetric_is_unsupported() {
    let t = parse_triple("asym:6").unwrap();
    assert!(matches!(delta_kernel(&t), Err(Error::Unsupported(_))));
    assert_eq!(binomial_check(&t, &q(1, 2), 2).unwrap().status, Status::Skipped);
}

#[test]
fn pochhammer_symbols() {
    for a in 1..=4 {
        for s in [q(1, 2), q(2, 1), q(-3, 4)] {
            assert_eq!(pochhammer(&s, &Partition::empty(), a), Rat::from_int(1));
            for l in Partition::up_to(3, 3) {
                for i in 1..=3 {
                    let Some(next) = l.add_box(i, 3) else { continue };
                    let step = &(&s - &Rat::new(((i - 1) * a) as i64, 2)) + &Rat::from_int(l.part(i) as i64);
                    assert_eq!(pochhammer(&s, &next, a), &pochhammer(&s, &l, a) * &step);
                }
            }
        }
    }
    assert_eq!(pochhammer(&q(2, 1), &p("1,1"), 2), Rat::from_int(2));
    assert_eq!(pochhammer(&q(5, 3), &p("1"), 2), q(5, 3));
}

#[test]
fn binomial_expansion() {
    for name in REFERENCE {
        let t = parse_triple(name).unwrap();
        for s in [q(1, 2), q(2, 1), q(-1, 1), q(3, 2)] {
            let c = binomial_check(&t, &s, 3).unwrap();
            assert_eq!(c.status, Status::Pass, "{name} s={s}");
        }
    }
}

#[test]
fn binomial_low_order_terms() {
    let t = parse_triple("matrix:2x3").unwrap();
    let delta = delta_kernel(&t).unwrap().kernel;
    assert_eq!(delta_power_series(&delta, &Rat::from_int(0), 3).unwrap(), SesquiPoly::one(t.dim()));
    let s = q(5, 2);
    let series = delta_power_series(&delta, &s, 3).unwrap();
    let pairing = SesquiPoly::pairing(t.metric()).scale(&ExactScalar::real(s));
    assert_eq!(series.bihomogeneous_part(1), pairing);
}

#[test]
fn pieri_two_by_two() {
    assert_eq!(pieri_coefficient(&p("1"), 1, 2, 2), q(3, 2));
    assert_eq!(pieri_coefficient(&p("1"), 2, 2, 2), q(1, 2));
    assert_eq!(pieri_coefficient(&p("1"), 1, 2, 1), q(4, 3));
    assert_eq!(pieri_coefficient(&p("1"), 2, 2, 1), q(2, 3));
}

#[test]
fn pieri_on_tube_triples() {
    for name in ["matrix:2x2", "sym:2", "spin:3", "spin:4", "asym:4"] {
        let t = parse_triple(name).unwrap();
        let (r, a) = (t.rank(), t.multiplicities().0);
        for mu in Partition::up_to(2, r) {
            assert_eq!(pieri_check(&t, &mu).unwrap().status, Status::Pass, "{name} {mu}");
            let e = t.unit();
            let mut sum = Rat::from_int(0);
            for i in 1..=r {
                if let Some(nu) = mu.add_box(i, r) {
                    let c = pieri_coefficient(&mu, i, r, a);
                    assert!(c > Rat::from_int(0));
                    let phi = spherical(&t, &nu).unwrap().eval(&e).unwrap();
                    sum = &sum + &(&c * phi.re());
                }
            }
            assert_eq!(sum, Rat::from_int(r as i64), "{name} {mu}");
        }
    }
    let t = parse_triple("matrix:2x3").unwrap();
    assert!(pieri_check(&t, &p("1")).is_err());
}

#[test]
fn wallach_parameters() {
    let w = wallach_data(&parse_triple("matrix:2x3").unwrap());
    assert_eq!(w.continuous_bound, Rat::from_int(1));
    assert_eq!(w.bergman, Rat::from_int(5));
    assert_eq!(w.hardy.last().unwrap(), &(2, Rat::from_int(3)));
    let w = wallach_data(&parse_triple("matrix:2x2").unwrap());
    assert_eq!(w.discrete, vec![Rat::from_int(0), Rat::from_int(1)]);
    assert_eq!(wallach_data(&parse_triple("spin:4").unwrap()).bergman, Rat::from_int(4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delta_is_k_invariant(name in prop::sample::select(REFERENCE.to_vec()), z in vector(6), w in vector(6), g in 0usize..32) {
        let t = parse_triple(name).unwrap();
        let d = t.dim();
        let (z, w) = (&z[..d], &w[..d]);
        let gens = t.k_generators();
        let k = &gens[g % gens.len()];
        let delta = delta_kernel(&t).unwrap();
        let moved = delta.eval(&k.mul_vec(z).unwrap(), &k.mul_vec(w).unwrap()).unwrap();
        prop_assert_eq!(moved, delta.eval(z, w).unwrap());
        prop_assert_eq!(delta.eval(w, z).unwrap(), delta.eval(z, w).unwrap().conj());
    }
}
