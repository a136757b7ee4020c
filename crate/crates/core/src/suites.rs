//! Verification suites, grouped the way the command line exposes them.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{unit_vec, ExactScalar, Rat};
use crate::ideals::{containment_check, fundamental_vanishing_check, intersection_check, theorem_i_check};
use crate::jordan::{Frame, JordanTriple, PeirceDecomposition, Tripotent};
use crate::kernels::{binomial_check, delta_kernel, pieri_check, wallach_report};
use crate::ktype::{dims_report, ktype_space, Partition};
use crate::localize::{
    cross_section_check, fiber, stratum_homogeneity_check, theorem_r_check, theorem_w_check, Stratum,
};
use crate::report::{Check, Status};
use crate::sample::Sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Jordan,
    Ktype,
    Ideals,
    Localize,
    Kernels,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Jordan, Suite::Ktype, Suite::Ideals, Suite::Localize, Suite::Kernels];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jordan => "jordan",
            Suite::Ktype => "ktype",
            Suite::Ideals => "ideals",
            Suite::Localize => "localize",
            Suite::Kernels => "kernels",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "jordan" => Suite::Jordan,
            "ktype" => Suite::Ktype,
            "ideals" => Suite::Ideals,
            "localize" => Suite::Localize,
            "kernels" => Suite::Kernels,
            "all" => Suite::All,
            _ => return Err(Error::InvalidParams(format!("unknown suite '{s}'"))),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Restricts partition-driven checks to this partition.
    pub partition: Option<Partition>,
    /// Truncation degree; defaults to `|λ| + 3`.
    pub degree: Option<usize>,
    pub seed: u64,
}

impl SuiteOptions {
    fn degree_for(&self, lambda: &Partition) -> usize {
        self.degree.unwrap_or(lambda.size() + 3)
    }

    fn partitions(&self, t: &JordanTriple) -> Vec<Partition> {
        match &self.partition {
            Some(p) => vec![p.clone()],
            None => default_partitions(t),
        }
    }
}

/// Partitions exercised by default: `(1), (1,1), (2), (2,1)`, cut to the rank.
pub fn default_partitions(t: &JordanTriple) -> Vec<Partition> {
    let all: &[&[usize]] = if t.descriptor() == "sym:2" { &[&[1, 1], &[2, 1]] } else { &[&[1], &[1, 1], &[2], &[2, 1]] };
    all.iter().filter(|p| p.len() <= t.rank()).map(|p| Partition::new(p).expect("valid partition")).collect()
}

pub fn run_suite(t: &JordanTriple, suite: Suite, opts: &SuiteOptions) -> Vec<Check> {
    match suite {
        Suite::Jordan => jordan_suite(t, opts),
        Suite::Ktype => ktype_suite(t, opts),
        Suite::Ideals => ideals_suite(t, opts),
        Suite::Localize => localize_suite(t, opts),
        Suite::Kernels => kernels_suite(t, opts),
        Suite::All => Suite::ALL.iter().flat_map(|s| run_suite(t, *s, opts)).collect(),
    }
}

/// Turns an error into a failing check, or a degree shortfall into `needs-higher-degree`.
fn settle(name: &str, t: &JordanTriple, r: Result<Check>) -> Check {
    match r {
        Ok(c) => c,
        Err(Error::DegreeTooSmall { bound, needed }) => Check::new(name, Status::NeedsHigherDegree)
            .param("triple", t.descriptor())
            .details(json!({ "degree": bound, "needed": needed })),
        Err(e) => Check::from_error(name, &e).param("triple", t.descriptor()),
    }
}

fn unit_check(name: &str, t: &JordanTriple, r: Result<()>) -> Check {
    match r {
        Ok(()) => Check::new(name, Status::Pass).param("triple", t.descriptor()),
        Err(e) => Check::from_error(name, &e).param("triple", t.descriptor()),
    }
}

pub fn jordan_suite(t: &JordanTriple, opts: &SuiteOptions) -> Vec<Check> {
    let mut out = vec![unit_check("axioms", t, t.verify())];
    for l in 0..=t.rank() {
        let r = Tripotent::new(t, t.frame_sum(l)).and_then(|c| PeirceDecomposition::new(t, &c)?.verify(t));
        out.push(unit_check("peirce", t, r).param("l", l));
    }
    out.push(unit_check("frame", t, Frame::standard(t).and_then(|f| f.verify(t))));
    out.push(settle("k_generators", t, k_generators_check(t)));
    out.push(settle("compression", t, compression_check(t, 20, opts.seed)));
    out.push(settle("cramer", t, cramer_check(t, 20, opts.seed)));
    out
}

/// Sampled `K`-generators preserve the metric and the triple product.
pub fn k_generators_check(t: &JordanTriple) -> Result<Check> {
    let n = t.dim();
    let gens = t.k_generators();
    let mut ok = true;
    for k in &gens {
        ok &= (&(&k.adjoint() * t.metric()) * k) == *t.metric();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let (bi, bj, bl) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, l));
                    let lhs = k.mul_vec(&t.triple(&bi, &bj, &bl)?)?;
                    let rhs = t.triple(&k.mul_vec(&bi)?, &k.mul_vec(&bj)?, &k.mul_vec(&bl)?)?;
                    ok &= lhs == rhs;
                }
            }
        }
    }
    Ok(Check::new("k_generators", Status::from_bool(ok))
        .param("triple", t.descriptor())
        .details(json!({ "generators": gens.len() })))
}

/// `N_m(z) = Δ_c(u)·N^W_{m−ℓ}(ω(z))` at random points, for all `ℓ < m ≤ r`.
pub fn compression_check(t: &JordanTriple, points: usize, seed: u64) -> Result<Check> {
    let mut s = Sampler::new(seed);
    let mut pairs = Vec::new();
    let mut bad = None;
    for l in 1..t.rank() {
        let sub = t.subtriple(l)?;
        for m in l + 1..=t.rank() {
            let mut done = 0;
            while done < points {
                let z = s.vector(t.dim());
                let dc = t.minor(l, &z)?;
                if dc.is_zero() {
                    continue;
                }
                let rhs = &dc * &sub.w.minor(m - l, &sub.omega(t, &z)?)?;
                if t.minor(m, &z)? != rhs && bad.is_none() {
                    bad = Some(json!({ "l": l, "m": m, "z": z.iter().map(|x| x.to_string()).collect::<Vec<_>>() }));
                }
                done += 1;
            }
            pairs.push(json!([l, m]));
        }
    }
    Ok(Check::new("compression", Status::from_bool(bad.is_none()))
        .param("triple", t.descriptor())
        .details(json!({ "pairs": pairs, "points_per_pair": points, "counterexample": bad })))
}

/// `Δ'(z)v = Δ(z)·(v|z^{-*})` at random invertible points (tube type).
pub fn cramer_check(t: &JordanTriple, points: usize, seed: u64) -> Result<Check> {
    let base = Check::new("cramer", Status::Pass).param("triple", t.descriptor());
    if !t.is_tube() {
        return Ok(Check { status: Status::Skipped, ..base }.details(json!({ "reason": "not of tube type" })));
    }
    let mut s = Sampler::new(seed);
    let r = t.rank();
    let mut done = 0;
    let mut bad = None;
    while done < points {
        let z = s.vector(t.dim());
        let det = t.determinant(&z)?;
        if det.is_zero() {
            continue;
        }
        let v = s.vector(t.dim());
        let lhs = t.minor_derivative(r, &z, &v)?;
        let rhs = &det * &t.inner(&v, &t.inverse_star(&z)?)?;
        if lhs != rhs && bad.is_none() {
            bad = Some(z.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        }
        done += 1;
    }
    Ok(Check { status: Status::from_bool(bad.is_none()), ..base }.details(json!({ "points": points, "counterexample": bad })))
}

pub fn ktype_suite(t: &JordanTriple, opts: &SuiteOptions) -> Vec<Check> {
    let top = opts.degree.unwrap_or(3);
    let mut out = Vec::new();
    for n in 0..=top {
        out.push(settle("ktype_dims", t, ktype_dims_check(t, n)).param("degree", n));
        out.push(settle("fock_orthogonality", t, orthogonality_check(t, n)).param("degree", n));
    }
    for n in 0..=top.min(2) {
        out.push(settle("k_invariance", t, k_invariance_check(t, n, opts.seed)).param("degree", n));
    }
    out
}

/// `Σ_{|λ|=n} dim P^λ = dim P^n`.
pub fn ktype_dims_check(t: &JordanTriple, n: usize) -> Result<Check> {
    let (status, rows) = match dims_report(t, n) {
        Ok(rows) => (Status::Pass, rows),
        Err(Error::IdentityViolated { .. }) => (
            Status::Fail,
            Partition::of_size(n, t.rank())
                .into_iter()
                .map(|l| Ok((l.clone(), ktype_space(t, &l)?.dim())))
                .collect::<Result<_>>()?,
        ),
        Err(e) => return Err(e),
    };
    let dims: serde_json::Map<String, serde_json::Value> = rows.iter().map(|(l, d)| (l.to_string(), json!(d))).collect();
    Ok(Check::new("ktype_dims", status)
        .param("triple", t.descriptor())
        .details(json!({ "dims": dims, "total": crate::poly::count_homogeneous(t.dim(), n) })))
}

/// Distinct K-types of degree `n` are Fock-orthogonal.
pub fn orthogonality_check(t: &JordanTriple, n: usize) -> Result<Check> {
    let parts = Partition::of_size(n, t.rank());
    let bases: Vec<Vec<crate::Poly>> = parts.iter().map(|l| Ok(ktype_space(t, l)?.basis())).collect::<Result<_>>()?;
    let mut bad = None;
    'outer: for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            for p in &bases[i] {
                for q in &bases[j] {
                    if !t.fock().inner(p, q)?.is_zero() {
                        bad = Some(json!([parts[i].to_string(), parts[j].to_string()]));
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(Check::new("fock_orthogonality", Status::from_bool(bad.is_none()))
        .param("triple", t.descriptor())
        .details(json!({ "types": parts.len(), "counterexample": bad })))
}

/// `f ∘ k ∈ P^λ` for `f ∈ P^λ` and sampled `k ∈ K`.
pub fn k_invariance_check(t: &JordanTriple, n: usize, seed: u64) -> Result<Check> {
    let mut s = Sampler::new(seed);
    let ks: Vec<_> = (0..3).map(|_| s.k_element(t)).collect();
    let mut bad = None;
    for l in Partition::of_size(n, t.rank()) {
        let space = ktype_space(t, &l)?;
        for f in space.basis() {
            for k in &ks {
                if !space.space.contains(&f.compose_linear(k)?) {
                    bad.get_or_insert(l.to_string());
                }
            }
        }
    }
    Ok(Check::new("k_invariance", Status::from_bool(bad.is_none()))
        .param("triple", t.descriptor())
        .details(json!({ "samples": ks.len(), "counterexample": bad })))
}

pub fn ideals_suite(t: &JordanTriple, opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    for lambda in opts.partitions(t) {
        let n = opts.degree_for(&lambda);
        out.push(settle("theorem_i", t, theorem_i_check(t, &lambda, n)).param("lambda", &lambda));
        if lambda.len() > 1 {
            out.push(settle("rectangular_intersection", t, intersection_check(t, &lambda, n)).param("lambda", &lambda));
        }
    }
    if opts.partition.is_none() {
        let small = Partition::up_to(3, t.rank());
        let n = opts.degree.unwrap_or(3);
        for lambda in &small {
            for mu in &small {
                if lambda != mu {
                    out.push(settle("containment", t, containment_check(t, lambda, mu, n)).param("lambda", lambda).param("mu", mu));
                }
            }
        }
        if t.rank() >= 2 {
            let l31 = Partition::new(&[3, 1]).expect("valid");
            out.push(settle("rectangular_intersection", t, intersection_check(t, &l31, opts.degree.unwrap_or(6))).param("lambda", &l31));
        }
    }
    let mut s = Sampler::new(opts.seed);
    for m in 1..=t.rank() {
        let pts: Result<Vec<Vec<ExactScalar>>> = (0..3).map(|i| if i == 0 { Ok(s.frame_point(t, m - 1)) } else { s.rank_point(t, m - 1) }).collect();
        let r = pts.and_then(|p| fundamental_vanishing_check(t, m, opts.degree.unwrap_or(m + 2).max(m), &p));
        out.push(settle("fundamental_vanishing", t, r).param("m", m));
    }
    out
}

pub fn localize_suite(t: &JordanTriple, opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let mut s = Sampler::new(opts.seed);
    for lambda in opts.partitions(t) {
        let n = opts.degree_for(&lambda);
        for l in 0..=t.rank() {
            out.push(settle("theorem_r", t, theorem_r_check(t, &lambda, l, n)).param("lambda", &lambda).param("l", l));
            out.push(settle("theorem_w", t, theorem_w_check(t, &lambda, l, n)).param("lambda", &lambda).param("l", l));
            let pts: Result<Vec<Vec<ExactScalar>>> = if l == 0 {
                Ok(vec![vec![ExactScalar::zero(); t.dim()]])
            } else {
                let mut v = vec![t.frame_sum(l), s.frame_point(t, l)];
                s.rank_point(t, l).map(|p| {
                    v.push(p);
                    v
                })
            };
            let r = pts.and_then(|p| stratum_homogeneity_check(t, &lambda, l, &p, n));
            out.push(settle("stratum_homogeneity", t, r).param("lambda", &lambda).param("l", l));
        }
        out.push(settle("maximal_fiber", t, maximal_fiber_check(t, &lambda, n)).param("lambda", &lambda));
        out.push(settle("regular_fiber", t, regular_fiber_check(t, &lambda, n, &mut s)).param("lambda", &lambda));
        for l in 0..=t.rank() {
            out.push(settle("cross_section", t, cross_section_check(t, &lambda, l, opts.seed)).param("lambda", &lambda).param("l", l));
        }
    }
    out
}

/// Fiber at `0` has dimension `dim P^λ`.
pub fn maximal_fiber_check(t: &JordanTriple, lambda: &Partition, n: usize) -> Result<Check> {
    let f = fiber(t, lambda, &vec![ExactScalar::zero(); t.dim()], n)?;
    let expected = ktype_space(t, lambda)?.dim();
    let status = match f.fiber_dim {
        None => Status::NeedsHigherDegree,
        Some(k) => Status::from_bool(k == expected),
    };
    Ok(Check::new("maximal_fiber", status)
        .param("triple", t.descriptor())
        .param("degree", n)
        .details(json!({ "trace": f.trace(), "expected": expected })))
}

/// Fiber is one-dimensional at three random full-rank points.
pub fn regular_fiber_check(t: &JordanTriple, lambda: &Partition, n: usize, s: &mut Sampler) -> Result<Check> {
    let mut traces = Vec::new();
    let mut status = Status::Pass;
    let mut found = 0;
    let mut tries = 0;
    while found < 3 {
        tries += 1;
        if tries > 64 {
            return Err(Error::SamplingExhausted(64));
        }
        let z = s.vector(t.dim());
        if t.rank_of(&z)? != t.rank() {
            continue;
        }
        found += 1;
        let f = fiber(t, lambda, &z, n)?;
        status = status.and(match f.fiber_dim {
            None => Status::NeedsHigherDegree,
            Some(k) => Status::from_bool(k == 1),
        });
        traces.push(f.trace());
    }
    Ok(Check::new("regular_fiber", status)
        .param("triple", t.descriptor())
        .param("degree", n)
        .details(json!({ "traces": traces })))
}

pub fn kernels_suite(t: &JordanTriple, opts: &SuiteOptions) -> Vec<Check> {
    let mut out = vec![settle("delta_kernel", t, delta_check(t, opts.seed)), wallach_report(t)];
    let n = opts.degree.unwrap_or(3);
    for s in [Rat::new(1, 2), Rat::from_int(2)] {
        out.push(settle("binomial", t, binomial_check(t, &s, n)).param("s", &s));
    }
    if t.is_tube() {
        let mus: Vec<Partition> = match &opts.partition {
            Some(p) => vec![p.clone()],
            None => Partition::up_to(2, t.rank()).into_iter().filter(|p| !p.is_empty()).collect(),
        };
        for mu in mus {
            out.push(settle("pieri", t, pieri_check(t, &mu)).param("mu", &mu));
        }
    }
    out
}

/// `Δ` is hermitian, `Δ(z,0) = 1`, `Δ(ζ,ζ) = Π(1 − q_j²)` on frame points and `Δ(kz,kζ) = Δ(z,ζ)`.
pub fn delta_check(t: &JordanTriple, seed: u64) -> Result<Check> {
    let base = Check::new("delta_kernel", Status::Pass).param("triple", t.descriptor());
    let dk = match delta_kernel(t) {
        Ok(d) => d,
        Err(Error::Unsupported(msg)) => return Ok(Check { status: Status::Skipped, ..base }.details(json!({ "reason": msg }))),
        Err(e) => return Err(e),
    };
    let mut s = Sampler::new(seed);
    let zero = vec![ExactScalar::zero(); t.dim()];
    let hermitian = dk.kernel.is_hermitian();
    let mut at_zero = true;
    let mut diagonal = true;
    let mut invariant = true;
    for _ in 0..3 {
        let z = s.vector(t.dim());
        let w = s.vector(t.dim());
        at_zero &= dk.eval(&z, &zero)?.is_one();
        let q: Vec<ExactScalar> = (0..t.rank()).map(|_| ExactScalar::real(s.rat())).collect();
        let zeta = t.frame_point(&q);
        let mut prod = ExactScalar::one();
        for qj in &q {
            prod = &prod * &(&ExactScalar::one() - &(qj * qj));
        }
        diagonal &= dk.eval(&zeta, &zeta)? == prod;
        let k = s.k_element(t);
        invariant &= dk.eval(&k.mul_vec(&z)?, &k.mul_vec(&w)?)? == dk.eval(&z, &w)?;
    }
    let ok = hermitian && at_zero && diagonal && invariant;
    Ok(Check { status: Status::from_bool(ok), ..base }.details(json!({
        "hermitian": hermitian,
        "normalized": at_zero,
        "diagonal": diagonal,
        "k_invariant": invariant,
        "terms": dk.kernel.terms().len(),
    })))
}

/// One row of the fiber table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberRow {
    pub l: usize,
    pub point: Vec<ExactScalar>,
    pub tripotent: bool,
    pub trace: Vec<usize>,
    pub fiber_dim: Option<usize>,
    pub expected: usize,
}

impl FiberRow {
    pub fn status(&self) -> Status {
        match self.fiber_dim {
            None => Status::NeedsHigherDegree,
            Some(k) => Status::from_bool(k == self.expected),
        }
    }
}

/// Fibers at `e_{[ℓ]}` for every `ℓ`, and at one sampled non-tripotent rank-`ℓ` point per `ℓ ≥ 1`.
pub fn fiber_table(t: &JordanTriple, lambda: &Partition, n: usize, seed: u64) -> Result<Vec<FiberRow>> {
    let mut s = Sampler::new(seed);
    let mut rows = Vec::new();
    for l in 0..=t.rank() {
        let expected = ktype_space(Stratum::new(t, lambda, l)?.w(), &Stratum::new(t, lambda, l)?.lambda_star)?.dim();
        let mut pts = vec![(t.frame_sum(l), true)];
        if l > 0 {
            pts.push((s.rank_point(t, l)?, false));
        }
        for (z, tripotent) in pts {
            let f = fiber(t, lambda, &z, n)?;
            rows.push(FiberRow { l, point: z, tripotent, trace: f.trace(), fiber_dim: f.fiber_dim, expected });
        }
    }
    Ok(rows)
}

pub fn fiber_checks(t: &JordanTriple, lambda: &Partition, n: usize, seed: u64) -> Result<Vec<Check>> {
    Ok(fiber_table(t, lambda, n, seed)?
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            Check::new("fiber", row.status())
                .param("triple", t.descriptor())
                .param("lambda", lambda)
                .param("l", row.l)
                .param("row", i)
                .details(json!({
                    "point": row.point.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "tripotent": row.tripotent,
                    "trace": row.trace,
                    "fiber_dim": row.fiber_dim,
                    "expected": row.expected,
                }))
        })
        .collect())
}

/// K-type decomposition of a polynomial with zero residual.
pub fn decompose_checks(t: &JordanTriple, f: &crate::Poly) -> Result<Vec<Check>> {
    let parts = crate::ktype::decompose(t, f)?;
    let mut residual = f.clone();
    let mut out = Vec::new();
    for (lambda, p) in &parts {
        residual = &residual - p;
        out.push(
            Check::new("component", Status::Pass)
                .param("triple", t.descriptor())
                .param("lambda", lambda)
                .details(json!({ "degree": lambda.size(), "poly": p.to_string() })),
        );
    }
    out.push(
        Check::new("residual", Status::from_bool(residual.is_zero()))
            .param("triple", t.descriptor())
            .details(json!({ "poly": residual.to_string() })),
    );
    Ok(out)
}
