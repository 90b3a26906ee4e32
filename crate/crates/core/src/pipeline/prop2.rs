//! Ten-vertex, 25-edge candidates: rank filter, combinatorial certificates
//! for graphs outside the rank-24 set, and the stress-sum test inside it.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::{
    bipartition, check_input, prime_config_seed, prime_configuration, rational_config_seed, rational_configuration,
    run_ordered, Certificate, LineStream, PipelineConfig, PipelineError, Stage, Verdict, VerdictRecord, WitnessField,
};
use crate::graph::{find_k5_subgraph, find_small_cut, is_isomorphic_to, Graph};
use crate::linalg::{format_rational, left_nullspace, Field, Rationals};
use crate::rigidity::{rigidity_matrix, Configuration};

pub const VERTICES: usize = 10;
/// `3 * 10 - 6`, the largest possible rank on ten vertices.
pub const FULL_RANK: usize = 24;

/// Rank and left-kernel basis of the rigidity matrix at `p`.
pub(crate) fn rank_and_stresses<F: Field>(f: &F, g: &Graph, p: &Configuration<F::Elem>) -> (usize, Vec<Vec<F::Elem>>) {
    let m = rigidity_matrix(f, g, p).expect("configuration covers the graph");
    let basis = left_nullspace(f, &m);
    (g.edge_count() - basis.len(), basis)
}

pub fn prop2_record(cfg: &PipelineConfig, line: &str) -> VerdictRecord {
    let record = |verdict, stage, certificate| VerdictRecord::new(cfg, line, verdict, stage, certificate);
    let g = match check_input(line, &[VERTICES], cfg.connectivity) {
        Ok(g) => g,
        Err(c) => return record(Verdict::Skipped, Stage::Input, c),
    };
    let f = &cfg.field;

    let mut best = 0;
    for trial in 0..cfg.trials {
        let config_seed = prime_config_seed(cfg.seed, line, trial);
        let (r, basis) = rank_and_stresses(f, &g, &prime_configuration(f, VERTICES, config_seed));
        best = best.max(r);
        if r > FULL_RANK {
            let c = Certificate { field: Some(WitnessField::Prime), config_seed: Some(config_seed), rank: Some(r), ..Certificate::default() };
            return record(Verdict::RankAnomaly, Stage::RankFilter, c);
        }
        if r < FULL_RANK {
            continue;
        }
        let sum = f.sum(&basis[0]);
        if !f.is_zero(&sum) {
            let c = Certificate {
                field: Some(WitnessField::Prime),
                config_seed: Some(config_seed),
                rank: Some(r),
                stress_sum: Some(sum.to_string()),
                ..Certificate::default()
            };
            return record(Verdict::UnbalancedStress, Stage::PrimeStress, c);
        }
        return exact_stress(cfg, line, &g, record);
    }

    if let Some(k5) = find_k5_subgraph(&g) {
        let c = Certificate { vertices: Some(k5.to_vec()), ..Certificate::default() };
        return record(Verdict::HasK5, Stage::Combinatorial, c);
    }
    if let Ok(Some(cut)) = find_small_cut(&g, 3) {
        let c = Certificate { cut: Some(cut), ..Certificate::default() };
        return record(Verdict::NotThreeConnected, Stage::Combinatorial, c);
    }
    let c = Certificate { rank: Some(best), ..Certificate::default() };
    record(Verdict::Unresolved, Stage::Exhausted, c)
}

/// A zero stress sum modulo the prime is only a hint; redo it over the rationals.
fn exact_stress(
    cfg: &PipelineConfig,
    line: &str,
    g: &Graph,
    record: impl Fn(Verdict, Stage, Certificate) -> VerdictRecord,
) -> VerdictRecord {
    let q = Rationals;
    for trial in 0..cfg.trials {
        let config_seed = rational_config_seed(cfg.seed, line, trial);
        let (r, basis) = rank_and_stresses(&q, g, &rational_configuration(VERTICES, config_seed));
        if r != FULL_RANK {
            continue;
        }
        let sum = q.sum(&basis[0]);
        let mut c = Certificate {
            field: Some(WitnessField::Rational),
            config_seed: Some(config_seed),
            rank: Some(r),
            stress_sum: Some(format_rational(&sum)),
            ..Certificate::default()
        };
        if !q.is_zero(&sum) {
            return record(Verdict::UnbalancedStress, Stage::ExactStress, c);
        }
        if is_isomorphic_to(g, &Graph::k55()).unwrap_or(false) {
            c.left_part = bipartition(g);
            return record(Verdict::IsomorphicToK55, Stage::ExactStress, c);
        }
        return record(Verdict::BalancedStress, Stage::ExactStress, c);
    }
    let c = Certificate { rank: Some(FULL_RANK), ..Certificate::default() };
    record(Verdict::Rank24CircuitCandidate, Stage::ExactStress, c)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Prop2Summary {
    pub pipeline: &'static str,
    pub seed: u64,
    pub prime: u64,
    pub input_lines: usize,
    pub skipped: usize,
    pub valid: usize,
    /// Graphs reaching rank 24 at some trial configuration.
    pub rank_24: usize,
    pub outside_rank_24: usize,
    /// Balanced stresses confirmed over the rationals, K5,5 included.
    pub balanced: usize,
    pub open: usize,
    pub verdicts: BTreeMap<&'static str, usize>,
}

impl Prop2Summary {
    /// No open verdicts, and every balanced graph is `K_{5,5}`.
    pub fn ok(&self) -> bool {
        self.open == 0 && self.balanced == self.verdicts.get("isomorphic-to-K55").copied().unwrap_or(0)
    }

    fn tally(&mut self, r: &VerdictRecord) {
        *self.verdicts.entry(r.verdict.name()).or_default() += 1;
        match r.verdict {
            Verdict::Skipped => self.skipped += 1,
            Verdict::UnbalancedStress | Verdict::Rank24CircuitCandidate => self.rank_24 += 1,
            Verdict::BalancedStress | Verdict::IsomorphicToK55 => {
                self.rank_24 += 1;
                self.balanced += 1;
            }
            Verdict::HasK5 | Verdict::NotThreeConnected | Verdict::Unresolved => self.outside_rank_24 += 1,
            _ => {}
        }
        if r.verdict != Verdict::Skipped {
            self.valid += 1;
        }
        if r.verdict.is_open() {
            self.open += 1;
        }
    }
}

/// Runs the ten-vertex pipeline over `lines`, writing one JSONL record per line to `out`.
pub fn prop2_pipeline(cfg: &PipelineConfig, lines: LineStream, out: &mut dyn Write) -> Result<Prop2Summary, PipelineError> {
    let mut summary =
        Prop2Summary { pipeline: "prop2", seed: cfg.seed, prime: cfg.field.modulus(), ..Prop2Summary::default() };
    summary.input_lines = run_ordered(lines, cfg.limit, cfg.jobs, |l| prop2_record(cfg, l), |r| {
        summary.tally(r);
        writeln!(out, "{}", r.to_json_line())
    })?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph6_encode;
    use crate::pipeline::SkipReason;

    fn cfg() -> PipelineConfig {
        PipelineConfig::new(3, 2305843009213693951, 20240601, 3).unwrap()
    }

    #[test]
    fn k55_is_balanced() {
        let line = graph6_encode(&Graph::k55()).unwrap();
        let r = prop2_record(&cfg(), &line);
        assert_eq!(r.verdict, Verdict::IsomorphicToK55);
        assert_eq!(r.certificate.stress_sum.as_deref(), Some("0"));
        assert_eq!(r.certificate.left_part, Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn relabeled_k55_is_recognized() {
        let g = Graph::k55().relabel(&[3, 9, 0, 6, 1, 2, 8, 4, 7, 5]).unwrap();
        let r = prop2_record(&cfg(), &graph6_encode(&g).unwrap());
        assert_eq!(r.verdict, Verdict::IsomorphicToK55);
    }

    #[test]
    fn k5_plus_dense_rest_gets_k5_certificate() {
        // K5 on 0..5, a 5-cycle with chords on 5..10 and a matching between them:
        // 10 + 10 + 5 = 25 edges, min degree 4, 2-connected.
        let mut edges: Vec<(usize, usize)> = Graph::complete(5).edges().to_vec();
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 1) % 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        edges.extend((0..5).map(|i| (i, 5 + i)));
        let g = Graph::new(10, edges).unwrap();
        let r = prop2_record(&cfg(), &graph6_encode(&g).unwrap());
        assert_eq!(r.verdict, Verdict::HasK5, "{r:?}");
        assert_eq!(r.stage, Stage::Combinatorial);
    }

    #[test]
    fn wrong_size_is_skipped() {
        let r = prop2_record(&cfg(), &graph6_encode(&Graph::complete(6)).unwrap());
        assert_eq!(r.verdict, Verdict::Skipped);
        assert_eq!(r.certificate.reason, Some(SkipReason::VertexCount));
    }
}
