//! Named check suites over generated families and curated corpora.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::check::{CheckResult, Side};
use super::{
    blowup_euler_check, class_fiber_sum_check, commutator_cube, commutator_order_three, corpus, crosscheck_abelian,
    pseudo_reflection_certificate, trichotomy_scan, type22_terminal_check,
};
use crate::error::{Error, Result};
use crate::group::named::scalar_root;
use crate::group::{coordinate_line, projective_fixed_euler_of, DiagSpec, GroupSpec, MatrixGroup, DEFAULT_MAX_ORDER};
use crate::linalg::FieldMatrix;
use crate::specfile::GroupSpecFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Abelian,
    Blowup,
    EulerProj,
    CclassSum,
    Type22,
    Trichotomy,
    Claims,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Abelian,
        Suite::Blowup,
        Suite::EulerProj,
        Suite::CclassSum,
        Suite::Type22,
        Suite::Trichotomy,
        Suite::Claims,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Abelian => "abelian",
            Suite::Blowup => "blowup",
            Suite::EulerProj => "euler-proj",
            Suite::CclassSum => "cclass-sum",
            Suite::Type22 => "type22",
            Suite::Trichotomy => "trichotomy",
            Suite::Claims => "claims",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Suite::ALL.iter().map(Suite::as_str).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .find(|x| x.as_str() == s)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown suite '{s}'; valid suites: {}", Suite::names().join(", "))))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Overrides every denominator bound of the suite.
    pub max_d: Option<u64>,
    /// Directory with `<suite>/*.json`; the built-in corpus otherwise.
    pub corpus: Option<PathBuf>,
    pub max_order: usize,
    pub workers: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_d: None,
            corpus: None,
            max_order: DEFAULT_MAX_ORDER,
            workers: 1,
        }
    }
}

pub const SL3_MAX_D: u64 = 25;
pub const SL4_MAX_D: u64 = 16;
pub const CLAIMS_MAX_D: u64 = 30;
pub const TYPE22_MAX_D: u64 = 20;
pub const EULER_PROJ_CASES: usize = 200;
pub const EULER_PROJ_SEED: u64 = 0x5eed_0001;
pub const BLOWUP_MAX_ORDER: usize = 200;
/// Denominator bounds of the single diagonal generator adjoined to Z_n, n = 2, 3, 4.
pub const BLOWUP_MAX_D: [u64; 3] = [200, 36, 12];

/// Exponent tuples in [0, d)^n with Σ ≡ 0 (mod d), lexicographic.
pub fn sl_tuples(n: usize, d: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut v = vec![0u64; n];
    loop {
        if v.iter().sum::<u64>() % d == 0 {
            out.push(v.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            v[k] += 1;
            if v[k] < d {
                break;
            }
            v[k] = 0;
        }
    }
}

/// Every cyclic SL(n) spec 1/d(a…) with d ≤ max_d.
pub fn cyclic_specs(n: usize, max_d: u64) -> Vec<DiagSpec> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        for a in sl_tuples(n, d) {
            out.push(DiagSpec {
                d,
                exponents: a,
            });
        }
    }
    out
}

enum Job {
    Abelian(GroupSpec),
    Blowup(GroupSpec),
    EulerProj { label: String, dim: usize, gens: Vec<FieldMatrix> },
    Fibers(GroupSpecFile),
    Type22(GroupSpec),
    Trichotomy(GroupSpecFile),
    OrderThree(u64),
    Cube(u64),
}

impl Job {
    fn label(&self) -> String {
        match self {
            Job::Abelian(s) | Job::Blowup(s) | Job::Type22(s) => s.name.clone(),
            Job::EulerProj { label, .. } => label.clone(),
            Job::Fibers(f) | Job::Trichotomy(f) => f.spec.name.clone(),
            Job::OrderThree(d) | Job::Cube(d) => format!("d={d}"),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Job::Abelian(_) => "abelian",
            Job::Blowup(_) => "blowup",
            Job::EulerProj { .. } => "euler-proj",
            Job::Fibers(_) => "cclass-sum",
            Job::Type22(_) => "type22",
            Job::Trichotomy(_) => "trichotomy",
            Job::OrderThree(_) => "claims/order-three",
            Job::Cube(_) => "claims/cube",
        }
    }

    fn run(&self, max_order: usize) -> Vec<CheckResult> {
        let out: Result<Vec<CheckResult>> = match self {
            Job::Abelian(s) => crosscheck_abelian(s, max_order).map(|c| vec![c]),
            Job::Blowup(s) => MatrixGroup::closure(s, max_order).and_then(|g| {
                Ok(vec![blowup_euler_check(&g)?, pseudo_reflection_certificate(&g)?])
            }),
            Job::EulerProj { label, dim, gens } => projective_fixed_euler_of(gens, max_order as u64).map(|chi| {
                vec![CheckResult::new(
                    "euler-proj",
                    label.clone(),
                    Side::int(chi),
                    Side::int(*dim),
                    json!({ "generators": gens.len() }),
                )]
            }),
            Job::Fibers(f) => MatrixGroup::closure(&f.spec, max_order).and_then(|g| {
                let line = f.line.map(|k| coordinate_line(g.dim(), k, g.conductor()));
                Ok(vec![class_fiber_sum_check(&g, line.as_ref())?])
            }),
            Job::Type22(s) => MatrixGroup::closure(s, max_order).and_then(|g| Ok(vec![type22_terminal_check(&g)?])),
            Job::Trichotomy(f) => match &f.extension {
                Some(x) => trichotomy_scan(&f.spec, x, max_order).map(|c| vec![c]),
                None => Err(Error::input("trichotomy entry has no extension")),
            },
            Job::OrderThree(d) => commutator_order_three(*d).map(|c| vec![c]),
            Job::Cube(d) => commutator_cube(*d).map(|c| vec![c]),
        };
        out.unwrap_or_else(|e| {
            vec![CheckResult::new(
                self.name(),
                self.label(),
                Side::int(0),
                Side::int(1),
                json!({ "error": e.to_string() }),
            )]
        })
    }
}

/// Digit runs compare numerically, everything else bytewise.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return Ordering::Equal,
            (None, _) => return Ordering::Less,
            (_, None) => return Ordering::Greater,
            (Some(c), Some(e)) if c.is_ascii_digit() && e.is_ascii_digit() => {
                let i = x.iter().position(|c| !c.is_ascii_digit()).unwrap_or(x.len());
                let j = y.iter().position(|c| !c.is_ascii_digit()).unwrap_or(y.len());
                let (p, q) = (&x[..i], &y[..j]);
                let p = &p[p.iter().position(|&c| c != b'0').unwrap_or(p.len())..];
                let q = &q[q.iter().position(|&c| c != b'0').unwrap_or(q.len())..];
                let o = p.len().cmp(&q.len()).then_with(|| p.cmp(q)).then_with(|| i.cmp(&j));
                if o != Ordering::Equal {
                    return o;
                }
                x = &x[i..];
                y = &y[j..];
            }
            (Some(c), Some(e)) => {
                if c != e {
                    return c.cmp(e);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

/// Canonical report order: by check name, then input.
pub fn sort_results(results: &mut [CheckResult]) {
    results.sort_by(|a, b| natural_cmp(&a.name, &b.name).then_with(|| natural_cmp(&a.input, &b.input)));
}

fn corpus_for(suite: &str, opts: &SuiteOptions) -> Result<Vec<GroupSpecFile>> {
    match &opts.corpus {
        Some(dir) => corpus::load(dir, suite),
        None => corpus::builtin(suite),
    }
}

/// Group generated by Z_n and 1/d(a…), as exponent vectors over a common
/// denominator, canonical up to permuting coordinates.
fn diagonal_group_key(n: usize, d: u64, a: &[u64]) -> (u64, Vec<Vec<u64>>) {
    let l = d.lcm(&(n as u64));
    let mut elems = HashSet::new();
    for k in 0..n as u64 {
        for j in 0..d {
            let v: Vec<u64> = a.iter().map(|&x| (k * (l / n as u64) + j * (l / d) * x) % l).collect();
            elems.insert(v);
        }
    }
    // shrink to the exponent of the group
    let g = elems.iter().flatten().fold(l, |g, &x| g.gcd(&x));
    let e = l / g;
    let elems: Vec<Vec<u64>> = elems.into_iter().map(|v| v.into_iter().map(|x| x / g).collect()).collect();
    let mut best: Option<Vec<Vec<u64>>> = None;
    for p in permutations(n) {
        let mut s: Vec<Vec<u64>> = elems.iter().map(|v| p.iter().map(|&i| v[i]).collect()).collect();
        s.sort_unstable();
        if best.as_ref().map_or(true, |b| s < *b) {
            best = Some(s);
        }
    }
    (e, best.expect("at least one permutation"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// ⟨ζ_n·I, 1/d(a…)⟩ ⊂ SL(n) for n = 2, 3, 4, of order at most
/// [`BLOWUP_MAX_ORDER`], one per group up to coordinate permutation.
pub fn blowup_family(max_d: Option<u64>) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for (n, &bound) in [2usize, 3, 4].iter().zip(&BLOWUP_MAX_D) {
        let bound = max_d.unwrap_or(bound);
        let mut seen = HashSet::new();
        for d in 1..=bound {
            for a in sl_tuples(*n, d) {
                let key = diagonal_group_key(*n, d, &a);
                if key.1.len() > BLOWUP_MAX_ORDER || !seen.insert(key) {
                    continue;
                }
                let diag = DiagSpec { d, exponents: a };
                let name = format!("Z{n}+{diag}");
                let spec = GroupSpec::new(name, vec![scalar_root(*n, *n as u64), diag.matrix()]).expect("same size");
                out.push(spec);
            }
        }
    }
    out
}

/// P·x·P⁻¹ for a random unimodular P built from elementary row operations.
fn random_conjugator(rng: &mut ChaCha8Rng, n: usize) -> (FieldMatrix, FieldMatrix) {
    let mut p = vec![vec![0i64; n]; n];
    let mut q = vec![vec![0i64; n]; n];
    for i in 0..n {
        p[i][i] = 1;
        q[i][i] = 1;
    }
    if n > 1 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            // p ← E·p with E = I + c·e_i e_jᵀ; q ← q·E⁻¹
            for k in 0..n {
                p[i][k] += c * p[j][k];
            }
            for row in q.iter_mut() {
                row[j] -= c * row[i];
            }
        }
    }
    (FieldMatrix::from_i64(&p, 1), FieldMatrix::from_i64(&q, 1))
}

/// Seeded random diagonal abelian actions on C^{n+1}, n ≤ 6; odd-numbered
/// cases are conjugated by a unimodular integer matrix.
pub fn euler_proj_cases(count: usize, seed: u64) -> Vec<(String, usize, Vec<FieldMatrix>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let n = rng.gen_range(1..=6usize);
        let dim = n + 1;
        let k = rng.gen_range(1..=3usize);
        let mut specs = Vec::with_capacity(k);
        for _ in 0..k {
            let d = rng.gen_range(1..=12u64);
            let a: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..d as i64)).collect();
            specs.push(DiagSpec::new(d as i64, &a).expect("positive denominator"));
        }
        let conj = i % 2 == 1;
        let mut gens: Vec<FieldMatrix> = specs.iter().map(DiagSpec::matrix).collect();
        if conj {
            let (p, q) = random_conjugator(&mut rng, dim);
            gens = gens.iter().map(|g| p.mul_sq(g).mul_sq(&q)).collect();
        }
        let names: Vec<String> = specs.iter().map(DiagSpec::to_string).collect();
        let label = format!("case {i:03} P^{n} {}{}", names.join(" "), if conj { " conjugated" } else { "" });
        out.push((label, dim, gens));
    }
    out
}

fn jobs(suite: Suite, opts: &SuiteOptions) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    match suite {
        Suite::Abelian => {
            for (n, bound) in [(3, SL3_MAX_D), (4, SL4_MAX_D)] {
                for spec in cyclic_specs(n, opts.max_d.unwrap_or(bound)) {
                    jobs.push(Job::Abelian(GroupSpec::from_diag(&spec)));
                }
            }
        }
        Suite::Blowup => {
            jobs.extend(blowup_family(opts.max_d).into_iter().map(Job::Blowup));
            jobs.extend(corpus_for("blowup", opts)?.into_iter().map(|f| Job::Blowup(f.spec)));
        }
        Suite::EulerProj => {
            for (label, dim, gens) in euler_proj_cases(EULER_PROJ_CASES, EULER_PROJ_SEED) {
                jobs.push(Job::EulerProj { label, dim, gens });
            }
        }
        Suite::CclassSum => jobs.extend(corpus_for("cclass-sum", opts)?.into_iter().map(Job::Fibers)),
        Suite::Type22 => {
            let bound = opts.max_d.unwrap_or(TYPE22_MAX_D);
            for d in 1..=bound as i64 {
                for a in 0..d.max(1) {
                    if a.gcd(&d) == 1 {
                        jobs.push(Job::Type22(GroupSpec::from_diag(&DiagSpec::new(d, &[1, -1, a, -a])?)));
                    }
                }
                if d > 1 {
                    jobs.push(Job::Type22(GroupSpec::from_diag(&DiagSpec::new(d, &[1, -1, 0, 0])?)));
                }
            }
            jobs.extend(corpus_for("type22", opts)?.into_iter().map(|f| Job::Type22(f.spec)));
        }
        Suite::Trichotomy => jobs.extend(corpus_for("trichotomy", opts)?.into_iter().map(Job::Trichotomy)),
        Suite::Claims => {
            for d in 1..=opts.max_d.unwrap_or(CLAIMS_MAX_D) {
                jobs.push(Job::OrderThree(d));
                jobs.push(Job::Cube(d));
            }
        }
    }
    Ok(jobs)
}

/// Run a suite on `opts.workers` threads; the result does not depend on
/// the worker count.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let jobs = jobs(suite, opts)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))?;
    let max_order = opts.max_order;
    let mut results: Vec<CheckResult> = pool.install(|| jobs.par_iter().flat_map(|j| j.run(max_order)).collect());
    sort_results(&mut results);
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_counts() {
        assert_eq!(sl_tuples(3, 1).len(), 1);
        assert_eq!(sl_tuples(3, 5).len(), 25);
        assert_eq!(sl_tuples(4, 3).len(), 27);
        assert_eq!(cyclic_specs(3, 3).len(), 1 + 4 + 9);
    }

    #[test]
    fn natural_order() {
        let mut v = vec!["d=10", "d=2", "d=1"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, vec!["d=1", "d=2", "d=10"]);
        assert_eq!(natural_cmp("1/10(1)", "1/9(1)"), Ordering::Greater);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        let e = "bogus".parse::<Suite>().unwrap_err().to_string();
        assert!(e.contains("abelian") && e.contains("claims"));
    }

    #[test]
    fn group_keys_identify_equal_groups() {
        assert_eq!(diagonal_group_key(2, 4, &[1, 3]), diagonal_group_key(2, 4, &[3, 1]));
        assert_eq!(diagonal_group_key(2, 2, &[1, 1]), diagonal_group_key(2, 1, &[0, 0]));
        assert_eq!(diagonal_group_key(3, 3, &[1, 1, 1]).1.len(), 3);
        assert_eq!(diagonal_group_key(3, 3, &[0, 1, 2]).1.len(), 9);
    }

    #[test]
    fn conjugator_is_inverse_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..6 {
            let (p, q) = random_conjugator(&mut rng, n);
            assert!(p.mul_sq(&q).is_identity());
        }
    }

    #[test]
    fn small_claims_suite_is_deterministic() {
        let opts = SuiteOptions {
            max_d: Some(6),
            ..SuiteOptions::default()
        };
        let a = run_suite(Suite::Claims, &opts).unwrap();
        let b = run_suite(Suite::Claims, &SuiteOptions { workers: 3, ..opts }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 12);
        assert!(a.iter().all(CheckResult::passed));
    }
}
