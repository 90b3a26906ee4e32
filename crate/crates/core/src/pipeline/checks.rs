//! Exact self-checks: the `K_{5,5}` determinant, uniqueness and balance of
//! the `K_{5,5}` stress at regular points, and small circuit oracles.

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley_menger::{
    build_bordered_matrix, check_automorphism_action, check_support_structure, evaluate, expand_determinant, gradient,
    induced_variable_map, leibniz_expansion, CmError, SparsePolynomial, VariableId,
};
use crate::graph::{enumerate_small, is_connected, EnumerationFilter, Graph};
use crate::linalg::{Field, PrimeField, Rationals};
use crate::rigidity::{
    in_affine_general_position, is_circuit, lies_on_quadric, measurement, random_integer_configuration, stress_basis,
    stress_sum, vertex_stress_sums, CertificateLevel, Configuration,
};

use super::RATIONAL_BOUND;

/// Regular samples needed for the gradient check.
pub const GRADIENT_SAMPLES: usize = 5;
pub const VANISHING_SAMPLES: usize = 100;
pub const NONVANISHING_SAMPLES: usize = 10;
pub const LEMMA_BR_SAMPLES: usize = 10;
/// Draws allowed per wanted regular configuration before giving up.
pub const MAX_RESAMPLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub report: &'static str,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<&'static str>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn is_regular(p: &Configuration<BigRational>) -> bool {
    in_affine_general_position(&Rationals, p).unwrap_or(false) && !lies_on_quadric(&Rationals, p).unwrap_or(true)
}

/// Draws rational 3D configurations until one is regular, up to `MAX_RESAMPLES` draws.
fn regular_sample(rng: &mut ChaCha8Rng) -> Option<(Configuration<BigRational>, usize)> {
    (0..MAX_RESAMPLES).find_map(|attempt| {
        let p = random_integer_configuration(10, 3, RATIONAL_BOUND, rng);
        is_regular(&p).then_some((p, attempt))
    })
}

/// `v` is a nonzero multiple of the nonzero vector `w`.
fn proportional(q: &Rationals, v: &[BigRational], w: &[BigRational]) -> bool {
    let Some(i) = w.iter().position(|x| !x.is_zero()) else { return false };
    let Some(lambda) = q.div(&v[i], &w[i]) else { return false };
    !lambda.is_zero() && v.iter().zip(w).all(|(a, b)| *a == q.mul(&lambda, b))
}

fn random_k55_automorphism(rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut left: Vec<usize> = (0..5).collect();
    let mut right: Vec<usize> = (5..10).collect();
    left.shuffle(rng);
    right.shuffle(rng);
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut left, &mut right);
    }
    left.into_iter().chain(right).collect()
}

/// Checks on `f = det(M)` for the bordered `K_{5,5}` Cayley-Menger matrix.
pub fn prop1_checks(seed: u64) -> Report {
    let m = build_bordered_matrix();
    let f = expand_determinant(&m);
    let mut checks = Vec::new();

    let oracle = leibniz_expansion(&m);
    checks.push(CheckResult::new(
        "cofactor-matches-leibniz",
        f == oracle,
        format!("{} monomials by cofactors, {} by permutations", f.len(), oracle.len()),
    ));

    let degree4 = f.terms().all(|(mono, _)| mono.degree() == 4);
    checks.push(CheckResult::new("degree-4", degree4 && !f.is_empty(), format!("{} monomials", f.len())));
    checks.push(CheckResult::new(
        "support-structure",
        check_support_structure(&f),
        "every monomial uses four distinct left and four distinct right indices",
    ));

    let k55 = Graph::k55();
    let q = Rationals;
    let mut r3 = rng(seed, 1);
    let vanishing = (0..VANISHING_SAMPLES)
        .filter(|_| {
            let p = random_integer_configuration(10, 3, RATIONAL_BOUND, &mut r3);
            let d = measurement(&q, &k55, &p).expect("ten points");
            evaluate(&q, &f, d.as_slice()).map(|x| x.is_zero()).unwrap_or(false)
        })
        .count();
    checks.push(CheckResult::new(
        "vanishes-on-3d-measurements",
        vanishing == VANISHING_SAMPLES,
        format!("{vanishing}/{VANISHING_SAMPLES} zero"),
    ));

    let mut r4 = rng(seed, 2);
    let nonzero = (0..NONVANISHING_SAMPLES)
        .filter(|_| {
            let p = random_integer_configuration(10, 4, RATIONAL_BOUND, &mut r4);
            let d = measurement(&q, &k55, &p).expect("ten points");
            evaluate(&q, &f, d.as_slice()).map(|x| !x.is_zero()).unwrap_or(false)
        })
        .count();
    checks.push(CheckResult::new(
        "nonzero-on-4d-measurements",
        nonzero == NONVANISHING_SAMPLES,
        format!("{nonzero}/{NONVANISHING_SAMPLES} nonzero"),
    ));

    checks.push(gradient_check(&f, seed));
    checks.push(automorphism_check(&f, seed));
    checks.push(star_breaking_check(&f));

    Report { report: "prop1", seed, checks, assumptions: vec!["f is irreducible (not checked here)"] }
}

fn gradient_check(f: &SparsePolynomial, seed: u64) -> CheckResult {
    let q = Rationals;
    let k55 = Graph::k55();
    let mut r = rng(seed, 3);
    let mut ok = 0;
    for _ in 0..GRADIENT_SAMPLES {
        let Some((p, _)) = regular_sample(&mut r) else { break };
        let basis = stress_basis(&q, &k55, &p).expect("ten points");
        let d = measurement(&q, &k55, &p).expect("ten points");
        let grad = gradient(&q, f, d.as_slice()).expect("25 variables");
        if basis.len() == 1 && proportional(&q, &grad, basis[0].values()) {
            ok += 1;
        }
    }
    CheckResult::new(
        "gradient-proportional-to-stress",
        ok == GRADIENT_SAMPLES,
        format!("{ok}/{GRADIENT_SAMPLES} regular points"),
    )
}

fn automorphism_check(f: &SparsePolynomial, seed: u64) -> CheckResult {
    let mut r = rng(seed, 4);
    let mut perms: Vec<Vec<usize>> = vec![
        (0..10).collect(),
        vec![1, 0, 2, 3, 4, 5, 6, 7, 8, 9],
        vec![5, 6, 7, 8, 9, 0, 1, 2, 3, 4],
    ];
    perms.extend((0..20).map(|_| random_k55_automorphism(&mut r)));
    let preserved = perms.iter().filter(|p| check_automorphism_action(f, p) == Ok(true)).count();
    let rejects = check_automorphism_action(f, &[0, 1, 2, 3, 5, 4, 6, 7, 8, 9]) == Err(CmError::NotAutomorphism);
    let swap_negates = induced_variable_map(&perms[1]).map(|phi| f.map_variables(phi) == f.neg()).unwrap_or(false);
    CheckResult::new(
        "automorphism-action",
        preserved == perms.len() && rejects && swap_negates,
        format!("{preserved}/{} automorphisms map f to +-f", perms.len()),
    )
}

/// A variable transposition that sends a star pair to a non-star pair moves `f` off `+-f`.
fn star_breaking_check(f: &SparsePolynomial) -> CheckResult {
    let a = VariableId::new(0, 6).expect("valid");
    let b = VariableId::new(1, 5).expect("valid");
    let image = f.map_variables(|x| if x == a { b } else if x == b { a } else { x });
    CheckResult::new("non-star-map-breaks-f", image != *f && image != f.neg(), "d06 <-> d15")
}

/// Exact checks that the `K_{5,5}` stress at regular points is unique and balanced.
pub fn lemma_br_checks(seed: u64) -> Report {
    let q = Rationals;
    let k55 = Graph::k55();
    let mut r = rng(seed, 5);
    let mut checks = Vec::new();
    for i in 0..LEMMA_BR_SAMPLES {
        let name = format!("sample-{i}");
        let Some((p, resampled)) = regular_sample(&mut r) else {
            checks.push(CheckResult::new(name, false, format!("no regular configuration in {MAX_RESAMPLES} draws")));
            continue;
        };
        let basis = stress_basis(&q, &k55, &p).expect("ten points");
        let (vertex_ok, total_ok) = match basis.as_slice() {
            [w] => (
                vertex_stress_sums(&q, &k55, w).expect("edge-indexed").iter().all(Zero::is_zero),
                stress_sum(&q, w).is_zero(),
            ),
            _ => (false, false),
        };
        checks.push(CheckResult::new(
            name,
            basis.len() == 1 && vertex_ok && total_ok,
            format!(
                "stress space dim {}, vertex sums zero: {vertex_ok}, total zero: {total_ok}, resampled {resampled}",
                basis.len()
            ),
        ));
    }

    let mut base = random_integer_configuration(10, 3, RATIONAL_BOUND, &mut r).points().to_vec();
    for pt in base.iter_mut().take(4) {
        pt[2] = BigRational::from_integer(7.into());
    }
    let coplanar = Configuration::new(3, base).expect("3D points");
    checks.push(CheckResult::new(
        "coplanar-sample-rejected",
        !is_regular(&coplanar),
        "four points with equal z fail affine general position",
    ));

    let sphere: Vec<Vec<BigRational>> = (0..10i64)
        .map(|i| {
            let (s, t) = (i - 4, (3 * i) % 7 - 3);
            let den = s * s + t * t + 1;
            let r = |n: i64| BigRational::new(n.into(), den.into());
            vec![r(2 * s), r(2 * t), r(s * s + t * t - 1)]
        })
        .collect();
    let sphere = Configuration::new(3, sphere).expect("3D points");
    checks.push(CheckResult::new(
        "sphere-sample-rejected",
        lies_on_quadric(&q, &sphere).unwrap_or(false) && !is_regular(&sphere),
        "ten points on the unit sphere lie on a quadric",
    ));

    Report { report: "lemma-br", seed, checks, assumptions: Vec::new() }
}

/// Non-isolated vertices all have degree 2 and form one connected piece.
pub fn is_cycle(g: &Graph) -> bool {
    let used: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    if used.len() < 3 || used.iter().any(|&v| g.degree(v) != 2) {
        return false;
    }
    let index = |v: usize| used.iter().position(|&x| x == v).expect("endpoint has positive degree");
    let h = Graph::new(used.len(), g.edges().iter().map(|&(a, b)| (index(a), index(b)))).expect("relabeled edges");
    is_connected(&h)
}

/// `is_circuit(g, 1)` agrees with [`is_cycle`] on every graph with at most `max_n` vertices.
pub fn cycle_oracle_check(max_n: usize, field: &PrimeField, seed: u64, trials: usize) -> CheckResult {
    let mut classes = 0;
    let mut cycles = 0;
    let mut mismatches = Vec::new();
    for n in 1..=max_n {
        let Ok(graphs) = enumerate_small(n, EnumerationFilter::default()) else {
            return CheckResult::new("d1-cycle-oracle", false, format!("cannot enumerate n = {n}"));
        };
        for g in graphs {
            classes += 1;
            let expect = is_cycle(&g);
            cycles += usize::from(expect);
            let got = is_circuit(&g, 1, field, seed, trials);
            if got.is_circuit != expect || (expect && got.level != CertificateLevel::Certified) {
                mismatches.push(format!("{g:?}"));
            }
        }
    }
    CheckResult::new(
        "d1-cycle-oracle",
        mismatches.is_empty() && classes > 0,
        format!("{classes} classes on <= {max_n} vertices, {cycles} cycles, {} mismatches {:?}", mismatches.len(), mismatches),
    )
}

/// Circuit status of the standard examples, each required to be certified.
pub fn known_circuit_checks(field: &PrimeField, seed: u64, trials: usize) -> Vec<CheckResult> {
    let cases: Vec<(&str, Graph, usize, bool)> = vec![
        ("K4 in the plane", Graph::complete(4), 2, true),
        ("K5 in space", Graph::complete(5), 3, true),
        ("wheel with 4 rim vertices in the plane", Graph::wheel(4), 2, true),
        ("wheel with 5 rim vertices in the plane", Graph::wheel(5), 2, true),
        ("wheel with 6 rim vertices in the plane", Graph::wheel(6), 2, true),
        ("K5,5 in space", Graph::k55(), 3, true),
        ("K5 minus an edge in space", Graph::complete(5).without_edge(0), 3, false),
        ("K5,5 minus an edge in space", Graph::k55().without_edge(0), 3, false),
    ];
    cases
        .into_iter()
        .map(|(name, g, d, expect)| {
            let r = is_circuit(&g, d, field, seed, trials);
            CheckResult::new(
                name,
                r.is_circuit == expect && r.level == CertificateLevel::Certified,
                format!("circuit: {}, rank {}, {:?}", r.is_circuit, r.rank, r.level),
            )
        })
        .collect()
}
