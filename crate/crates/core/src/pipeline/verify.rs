//! Independent re-validation of verdict records.
//!
//! Nothing computed by the pipelines is trusted: graphs are re-decoded,
//! witness configurations are regenerated from their seeds, and ranks,
//! stresses and subgraph counts are recomputed.

use std::collections::BTreeSet;

use super::prop2::{rank_and_stresses, FULL_RANK, VERTICES};
use super::prop3::ORDERS;
use super::{
    bipartition, prime_config_seed, prime_configuration, rational_config_seed, rational_configuration, Certificate,
    SkipReason, Verdict, VerdictRecord, WitnessField, EDGES, MIN_DEGREE,
};
use crate::graph::{graph6_decode, induced_edge_count, is_connected, is_isomorphic_to, is_k_connected, min_degree, Graph};
use crate::linalg::{format_rational, parse_rational, rank, Field, PrimeField, Rationals};
use crate::rigidity::rigidity_matrix;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn vertex_set(g: &Graph, vs: &[usize], size: Option<usize>) -> Result<u64, String> {
    let distinct: BTreeSet<usize> = vs.iter().copied().collect();
    ensure(distinct.len() == vs.len(), "repeated vertex in certificate")?;
    ensure(vs.iter().all(|&v| v < g.n()), "certificate vertex out of range")?;
    if let Some(k) = size {
        ensure(vs.len() == k, format!("expected {k} vertices, got {}", vs.len()))?;
    }
    Ok(vs.iter().fold(0, |m, &v| m | 1 << v))
}

fn field_of(rec: &VerdictRecord) -> Result<PrimeField, String> {
    PrimeField::new(rec.prime).map_err(|e| e.to_string())
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T, String> {
    v.clone().ok_or_else(|| format!("certificate lacks {name}"))
}

fn check_skip(line: &str, c: &Certificate) -> Result<(), String> {
    let reason = need(&c.reason, "reason")?;
    let g = match graph6_decode(line) {
        Ok(g) => g,
        Err(_) => return ensure(reason == SkipReason::ParseError, "graph6 decodes but skip says parse-error"),
    };
    match reason {
        SkipReason::ParseError => Err("graph6 decodes".into()),
        SkipReason::VertexCount => {
            let expected = need(&c.expected_vertices, "expected_vertices")?;
            ensure(expected == [VERTICES] || expected == ORDERS, "unknown expected vertex counts")?;
            ensure(!expected.contains(&g.n()), "vertex count is acceptable")
        }
        SkipReason::EdgeCount => ensure(g.edge_count() != EDGES, "edge count is 25"),
        SkipReason::MinDegree => ensure(min_degree(&g) < MIN_DEGREE, "minimum degree is at least 4"),
        SkipReason::NotConnected => ensure(!is_connected(&g), "graph is connected"),
        SkipReason::Not2Connected => ensure(!is_k_connected(&g, 2).unwrap_or(true), "graph is 2-connected"),
    }
}

/// Checks the input conditions every certificate relies on. Biconnectivity
/// only narrows the candidate set and no certificate depends on it.
fn valid_input(g: &Graph) -> Result<(), String> {
    ensure(g.n() == VERTICES || ORDERS.contains(&g.n()), "vertex count outside both pipelines")?;
    ensure(g.edge_count() == EDGES, "edge count is not 25")?;
    ensure(min_degree(g) >= MIN_DEGREE, "minimum degree below 4")?;
    ensure(is_connected(g), "graph is not connected")
}

fn check_k5(g: &Graph, c: &Certificate) -> Result<(), String> {
    let mask = vertex_set(g, &need(&c.vertices, "vertices")?, Some(5))?;
    ensure(induced_edge_count(g, mask) == 10, "vertices do not span a K5")?;
    ensure(g.edge_count() > 10, "K5 is not a proper subgraph")
}

fn check_cut(g: &Graph, c: &Certificate) -> Result<(), String> {
    let cut = need(&c.cut, "cut")?;
    let mask = vertex_set(g, &cut, None)?;
    ensure(cut.len() < 3, "cut has three or more vertices")?;
    let rest: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 0).collect();
    ensure(rest.len() >= 2, "cut leaves fewer than two vertices")?;
    let index = |v: usize| rest.iter().position(|&x| x == v);
    let edges = g.edges().iter().filter_map(|&(u, v)| Some((index(u)?, index(v)?)));
    let h = Graph::new(rest.len(), edges).map_err(|e| e.to_string())?;
    ensure(!is_connected(&h), "removing the cut leaves the graph connected")
}

fn check_dense(g: &Graph, c: &Certificate) -> Result<(), String> {
    let k = need(&c.k, "k")?;
    let mask = vertex_set(g, &need(&c.vertices, "vertices")?, Some(k))?;
    let e = induced_edge_count(g, mask);
    ensure(Some(e) == c.edges, "recorded edge count differs")?;
    ensure(k >= 4 && e + 5 >= 3 * k, format!("{e} edges on {k} vertices is not above 3k - 6"))?;
    ensure(e < g.edge_count(), "dense subgraph is not proper")
}

fn check_stress_free(rec: &VerdictRecord, g: &Graph) -> Result<(), String> {
    let f = field_of(rec)?;
    ensure(rec.certificate.field == Some(WitnessField::Prime), "stress-free witness must be a prime-field point")?;
    let p = prime_configuration(&f, g.n(), need(&rec.certificate.config_seed, "config_seed")?);
    let m = rigidity_matrix(&f, g, &p).map_err(|e| e.to_string())?;
    ensure(rank(&f, &m) == g.edge_count(), "rigidity matrix is not of full row rank at the witness")
}

/// Stress sum at the rational configuration from `config_seed`, when the rank there is 24.
fn rational_sum(g: &Graph, config_seed: u64) -> Option<String> {
    let q = Rationals;
    let (r, basis) = rank_and_stresses(&q, g, &rational_configuration(g.n(), config_seed));
    (r == FULL_RANK).then(|| format_rational(&q.sum(&basis[0])))
}

fn check_unbalanced(rec: &VerdictRecord, g: &Graph) -> Result<(), String> {
    ensure(g.n() == VERTICES, "stress verdicts apply to ten-vertex graphs")?;
    let c = &rec.certificate;
    let seed = need(&c.config_seed, "config_seed")?;
    let claimed = need(&c.stress_sum, "stress_sum")?;
    match need(&c.field, "field")? {
        WitnessField::Prime => {
            let f = field_of(rec)?;
            let (r, basis) = rank_and_stresses(&f, g, &prime_configuration(&f, VERTICES, seed));
            ensure(r == FULL_RANK, format!("rank at witness is {r}, not 24"))?;
            let sum = f.sum(&basis[0]);
            ensure(!f.is_zero(&sum), "stress sum is zero")?;
            ensure(sum.to_string() == claimed, "recorded stress sum differs")?;
            // The rational recomputation must agree that the sum is nonzero.
            if let Some(q) = rational_sum(g, rational_config_seed(rec.seed, &rec.graph6, 0)) {
                ensure(q != "0", "prime-field sum is nonzero but the rational sum is zero")?;
            }
            Ok(())
        }
        WitnessField::Rational => {
            let q = rational_sum(g, seed).ok_or("rational witness does not have rank 24")?;
            ensure(q != "0", "rational stress sum is zero")?;
            let parsed = parse_rational(&claimed).ok_or("stress_sum is not a rational")?;
            ensure(format_rational(&parsed) == q, "recorded stress sum differs")
        }
    }
}

fn check_k55(rec: &VerdictRecord, g: &Graph) -> Result<(), String> {
    let c = &rec.certificate;
    ensure(is_isomorphic_to(g, &Graph::k55()).map_err(|e| e.to_string())?, "graph is not isomorphic to K5,5")?;
    let left = need(&c.left_part, "left_part")?;
    let mask = vertex_set(g, &left, Some(5))?;
    ensure(g.edges().iter().all(|&(u, v)| (mask >> u & 1) != (mask >> v & 1)), "left_part is not a side of the bipartition")?;
    ensure(bipartition(g).is_some(), "graph is not bipartite")?;
    ensure(c.field == Some(WitnessField::Rational), "balance must be confirmed over the rationals")?;
    let q = rational_sum(g, need(&c.config_seed, "config_seed")?).ok_or("rational witness does not have rank 24")?;
    ensure(q == "0" && c.stress_sum.as_deref() == Some("0"), "stress sum is not zero")?;
    // The prime-field run at the shared configuration must agree.
    let f = field_of(rec)?;
    let (r, basis) = rank_and_stresses(&f, g, &prime_configuration(&f, VERTICES, prime_config_seed(rec.seed, &rec.graph6, 0)));
    if r == FULL_RANK {
        ensure(f.is_zero(&f.sum(&basis[0])), "prime-field stress sum is nonzero")?;
    }
    Ok(())
}

/// Re-validates one record. Verdicts that do not certify anything fail.
pub fn verify_record(rec: &VerdictRecord) -> Result<(), String> {
    if rec.verdict == Verdict::Skipped {
        return check_skip(&rec.graph6, &rec.certificate);
    }
    let g = graph6_decode(&rec.graph6).map_err(|e| format!("graph6: {e}"))?;
    valid_input(&g)?;
    match rec.verdict {
        Verdict::HasK5 => check_k5(&g, &rec.certificate),
        Verdict::NotThreeConnected => check_cut(&g, &rec.certificate),
        Verdict::DenseSubgraph => check_dense(&g, &rec.certificate),
        Verdict::StressFreeCertified => check_stress_free(rec, &g),
        Verdict::UnbalancedStress => check_unbalanced(rec, &g),
        Verdict::IsomorphicToK55 => check_k55(rec, &g),
        v => Err(format!("verdict {} carries no certificate", v.name())),
    }
}

/// Parses and re-validates one JSONL line.
pub fn verify_line(line: &str) -> Result<(), String> {
    let rec: VerdictRecord = serde_json::from_str(line).map_err(|e| format!("bad record: {e}"))?;
    verify_record(&rec)
}
