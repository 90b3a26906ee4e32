//! Certificate pipelines over streams of graph6 lines.
//!
//! Every input line yields exactly one JSONL record: a verdict with a
//! certificate that [`verify_record`] can re-check from scratch, or a skip
//! record explaining which input precondition failed. Configurations are
//! never stored; a certificate names the seed that regenerates them.

mod checks;
mod prop2;
mod prop3;
mod runner;
mod source;
mod verify;

pub use checks::{cycle_oracle_check, known_circuit_checks, lemma_br_checks, prop1_checks, CheckResult, Report};
pub use prop2::{prop2_pipeline, prop2_record, Prop2Summary};
pub use prop3::{prop3_pipeline, prop3_record, Prop3Summary};
pub use runner::run_ordered;
pub use source::{open_files, run_geng, GengQuery, LineStream};
pub use verify::{verify_line, verify_record};

use std::path::PathBuf;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{graph6_decode, is_connected, is_k_connected, min_degree, Graph};
use crate::linalg::{FieldError, PrimeField};
use crate::rigidity::{random_integer_configuration, random_prime_configuration, Configuration};

/// Coordinates of rational witness configurations lie in `[-RATIONAL_BOUND, RATIONAL_BOUND]`.
pub const RATIONAL_BOUND: i64 = 1000;
pub const PIPELINE_DIM: usize = 3;
pub const EDGES: usize = 25;
pub const MIN_DEGREE: usize = 4;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("no graph source: pass --input <graph6 file> or --geng-path <geng binary> (nauty's geng generates the candidate stream)")]
    NoSource,
    #[error("cannot run {path}: {source}")]
    Spawn { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Open { path: PathBuf, source: std::io::Error },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("pipelines work in dimension 3, got {0}")]
    Dimension(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Connectivity required of input graphs (and requested from `geng`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputConnectivity {
    Connected,
    #[default]
    Biconnected,
}

impl std::str::FromStr for InputConnectivity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "connected" => Ok(InputConnectivity::Connected),
            "biconnected" | "2-connected" => Ok(InputConnectivity::Biconnected),
            other => Err(format!("unknown connectivity {other:?} (use connected or biconnected)")),
        }
    }
}

/// Run parameters shared by both pipelines.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub field: PrimeField,
    pub seed: u64,
    pub trials: usize,
    pub limit: Option<usize>,
    pub jobs: usize,
    pub connectivity: InputConnectivity,
}

impl PipelineConfig {
    pub fn new(dim: usize, prime: u64, seed: u64, trials: usize) -> Result<Self, PipelineError> {
        if dim != PIPELINE_DIM {
            return Err(PipelineError::Dimension(dim));
        }
        Ok(PipelineConfig {
            field: PrimeField::new(prime)?,
            seed,
            trials: trials.max(1),
            limit: None,
            jobs: 1,
            connectivity: InputConnectivity::default(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "rank24-circuit-candidate")]
    Rank24CircuitCandidate,
    #[serde(rename = "not-3-connected")]
    NotThreeConnected,
    #[serde(rename = "has-K5")]
    HasK5,
    #[serde(rename = "dense-subgraph")]
    DenseSubgraph,
    #[serde(rename = "stress-free-certified")]
    StressFreeCertified,
    #[serde(rename = "unbalanced-stress")]
    UnbalancedStress,
    #[serde(rename = "balanced-stress")]
    BalancedStress,
    #[serde(rename = "isomorphic-to-K55")]
    IsomorphicToK55,
    #[serde(rename = "rank-anomaly")]
    RankAnomaly,
    #[serde(rename = "unresolved")]
    Unresolved,
    #[serde(rename = "skipped")]
    Skipped,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Rank24CircuitCandidate => "rank24-circuit-candidate",
            Verdict::NotThreeConnected => "not-3-connected",
            Verdict::HasK5 => "has-K5",
            Verdict::DenseSubgraph => "dense-subgraph",
            Verdict::StressFreeCertified => "stress-free-certified",
            Verdict::UnbalancedStress => "unbalanced-stress",
            Verdict::BalancedStress => "balanced-stress",
            Verdict::IsomorphicToK55 => "isomorphic-to-K55",
            Verdict::RankAnomaly => "rank-anomaly",
            Verdict::Unresolved => "unresolved",
            Verdict::Skipped => "skipped",
        }
    }

    /// Verdicts that leave the pipeline's claim unproven for this graph.
    pub fn is_open(self) -> bool {
        matches!(
            self,
            Verdict::Unresolved | Verdict::Rank24CircuitCandidate | Verdict::RankAnomaly | Verdict::BalancedStress
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Input,
    RankFilter,
    Combinatorial,
    PrimeStress,
    ExactStress,
    StressFree,
    K5,
    DenseSubgraph,
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessField {
    Prime,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    ParseError,
    VertexCount,
    EdgeCount,
    MinDegree,
    NotConnected,
    Not2Connected,
}

/// Certificate payload. Which fields are present depends on the verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<WitnessField>,
    /// Seed that regenerates the witness configuration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Stress-vector entry sum, as a residue or `p/q` string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stress_sum: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_part: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<SkipReason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_vertices: Option<Vec<usize>>,
}

/// One JSONL output line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictRecord {
    pub graph6: String,
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub stage: Stage,
    pub seed: u64,
    pub prime: u64,
}

impl VerdictRecord {
    pub(crate) fn new(cfg: &PipelineConfig, graph6: &str, verdict: Verdict, stage: Stage, certificate: Certificate) -> Self {
        VerdictRecord {
            graph6: graph6.to_string(),
            verdict,
            certificate,
            stage,
            seed: cfg.seed,
            prime: cfg.field.modulus(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

fn fnv1a(tag: u8, seed: u64, graph6: &str, trial: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let bytes = std::iter::once(tag)
        .chain(seed.to_le_bytes())
        .chain(graph6.bytes())
        .chain(trial.to_le_bytes());
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Seed of the `trial`-th prime-field configuration tried for `graph6`.
/// Trial 0 is the run's shared configuration.
pub fn prime_config_seed(seed: u64, graph6: &str, trial: usize) -> u64 {
    if trial == 0 {
        seed
    } else {
        fnv1a(b'p', seed, graph6, trial as u64)
    }
}

/// Seed of the `trial`-th rational configuration tried for `graph6`.
pub fn rational_config_seed(seed: u64, graph6: &str, trial: usize) -> u64 {
    fnv1a(b'q', seed, graph6, trial as u64)
}

/// The first `n` points of the prime-field configuration drawn from `config_seed`.
pub fn prime_configuration(field: &PrimeField, n: usize, config_seed: u64) -> Configuration<u64> {
    random_prime_configuration(field, n, PIPELINE_DIM, &mut ChaCha8Rng::seed_from_u64(config_seed))
}

pub fn rational_configuration(n: usize, config_seed: u64) -> Configuration<BigRational> {
    random_integer_configuration(n, PIPELINE_DIM, RATIONAL_BOUND, &mut ChaCha8Rng::seed_from_u64(config_seed))
}

/// Shared input precondition: `orders` vertices, 25 edges, minimum degree 4,
/// and the configured connectivity.
pub(crate) fn check_input(line: &str, orders: &[usize], connectivity: InputConnectivity) -> Result<Graph, Certificate> {
    let skip = |reason| Certificate { reason: Some(reason), ..Certificate::default() };
    let g = graph6_decode(line).map_err(|_| skip(SkipReason::ParseError))?;
    if !orders.contains(&g.n()) {
        return Err(Certificate { expected_vertices: Some(orders.to_vec()), ..skip(SkipReason::VertexCount) });
    }
    if g.edge_count() != EDGES {
        return Err(skip(SkipReason::EdgeCount));
    }
    if min_degree(&g) < MIN_DEGREE {
        return Err(skip(SkipReason::MinDegree));
    }
    if !is_connected(&g) {
        return Err(skip(SkipReason::NotConnected));
    }
    if connectivity == InputConnectivity::Biconnected && !is_k_connected(&g, 2).unwrap_or(false) {
        return Err(skip(SkipReason::Not2Connected));
    }
    Ok(g)
}

/// The color class of vertex 0 in a proper 2-coloring, if `g` is bipartite and connected.
pub(crate) fn bipartition(g: &Graph) -> Option<Vec<usize>> {
    let mut color = vec![None; g.n()];
    let mut stack = vec![0usize];
    color[0] = Some(false);
    while let Some(u) = stack.pop() {
        let cu = color[u].expect("colored before push");
        for v in (0..g.n()).filter(|&v| g.has_edge(u, v)) {
            match color[v] {
                None => {
                    color[v] = Some(!cu);
                    stack.push(v);
                }
                Some(cv) if cv == cu => return None,
                Some(_) => {}
            }
        }
    }
    if color.iter().any(Option::is_none) {
        return None;
    }
    Some((0..g.n()).filter(|&v| color[v] == Some(false)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_json_shape() {
        let cfg = PipelineConfig::new(3, 2305843009213693951, 7, 3).unwrap();
        let rec = VerdictRecord::new(
            &cfg,
            "I~~",
            Verdict::HasK5,
            Stage::Combinatorial,
            Certificate { vertices: Some(vec![0, 1, 2, 3, 4]), ..Certificate::default() },
        );
        let line = rec.to_json_line();
        assert_eq!(
            line,
            r#"{"graph6":"I~~","verdict":"has-K5","certificate":{"vertices":[0,1,2,3,4]},"stage":"combinatorial","seed":7,"prime":2305843009213693951}"#
        );
        let back: VerdictRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn verdict_names_match_serde() {
        for v in [
            Verdict::Rank24CircuitCandidate,
            Verdict::NotThreeConnected,
            Verdict::HasK5,
            Verdict::DenseSubgraph,
            Verdict::StressFreeCertified,
            Verdict::UnbalancedStress,
            Verdict::BalancedStress,
            Verdict::IsomorphicToK55,
            Verdict::RankAnomaly,
            Verdict::Unresolved,
            Verdict::Skipped,
        ] {
            assert_eq!(serde_json::to_string(&v).unwrap(), format!("\"{}\"", v.name()));
        }
    }

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(prime_config_seed(5, "I~~", 0), 5);
        assert_ne!(prime_config_seed(5, "I~~", 1), prime_config_seed(5, "I~~", 2));
        assert_ne!(prime_config_seed(5, "I~~", 1), rational_config_seed(5, "I~~", 1));
        assert_eq!(rational_config_seed(5, "I~~", 0), rational_config_seed(5, "I~~", 0));
    }

    #[test]
    fn shared_configuration_is_a_prefix() {
        let f = PrimeField::default();
        let big = prime_configuration(&f, 12, 99);
        assert_eq!(prime_configuration(&f, 10, 99), big.prefix(10));
    }

    #[test]
    fn dimension_is_fixed() {
        assert!(matches!(PipelineConfig::new(2, 2305843009213693951, 0, 3), Err(PipelineError::Dimension(2))));
        assert!(PipelineConfig::new(3, 15, 0, 3).is_err());
    }

    #[test]
    fn k55_bipartition() {
        assert_eq!(bipartition(&Graph::k55()), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(bipartition(&Graph::complete(3)), None);
    }

    #[test]
    fn input_checks() {
        let k55 = crate::graph::graph6_encode(&Graph::k55()).unwrap();
        assert!(check_input(&k55, &[10], InputConnectivity::Biconnected).is_ok());
        assert_eq!(check_input(&k55, &[11, 12], InputConnectivity::Biconnected).unwrap_err().reason, Some(SkipReason::VertexCount));
        assert_eq!(check_input("!!", &[10], InputConnectivity::Biconnected).unwrap_err().reason, Some(SkipReason::ParseError));
        let k5 = crate::graph::graph6_encode(&Graph::complete(5)).unwrap();
        assert_eq!(check_input(&k5, &[5], InputConnectivity::Biconnected).unwrap_err().reason, Some(SkipReason::EdgeCount));
        // K5 on 0..5 and K6 minus a matching on 5..11, joined only through vertex 0.
        let mut edges: Vec<(usize, usize)> = Graph::complete(5).edges().to_vec();
        edges.extend(
            Graph::complete(6).edges().iter().filter(|&&e| e != (0, 1) && e != (2, 3)).map(|&(a, b)| (a + 5, b + 5)),
        );
        edges.extend([(0, 9), (0, 10)]);
        let g = Graph::new(11, edges).unwrap();
        assert_eq!(g.edge_count(), 25);
        let line = crate::graph::graph6_encode(&g).unwrap();
        assert_eq!(check_input(&line, &[11], InputConnectivity::Biconnected).unwrap_err().reason, Some(SkipReason::Not2Connected));
        assert!(check_input(&line, &[11], InputConnectivity::Connected).is_ok());
    }
}
