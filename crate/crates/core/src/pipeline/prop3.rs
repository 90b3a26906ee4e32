//! Eleven- and twelve-vertex, 25-edge candidates: stress-free at a witness
//! point, then containing `K5`, then containing a dense 6-vertex subgraph.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::{
    check_input, prime_config_seed, prime_configuration, run_ordered, Certificate, LineStream, PipelineConfig,
    PipelineError, Stage, Verdict, VerdictRecord, WitnessField,
};
use crate::graph::{dense_subgraph_witness, find_k5_subgraph, induced_edge_count};
use crate::linalg::rank;
use crate::rigidity::rigidity_matrix;

pub const ORDERS: [usize; 2] = [11, 12];
/// Subgraph order used by the final counting stage.
pub const DENSE_K: usize = 6;

pub fn prop3_record(cfg: &PipelineConfig, line: &str) -> VerdictRecord {
    let record = |verdict, stage, certificate| VerdictRecord::new(cfg, line, verdict, stage, certificate);
    let g = match check_input(line, &ORDERS, cfg.connectivity) {
        Ok(g) => g,
        Err(c) => return record(Verdict::Skipped, Stage::Input, c),
    };
    let f = &cfg.field;

    let mut best = 0;
    for trial in 0..cfg.trials {
        let config_seed = prime_config_seed(cfg.seed, line, trial);
        let m = rigidity_matrix(f, &g, &prime_configuration(f, g.n(), config_seed)).expect("configuration covers the graph");
        let r = rank(f, &m);
        best = best.max(r);
        if r == g.edge_count() {
            let c = Certificate { field: Some(WitnessField::Prime), config_seed: Some(config_seed), rank: Some(r), ..Certificate::default() };
            return record(Verdict::StressFreeCertified, Stage::StressFree, c);
        }
    }

    if let Some(k5) = find_k5_subgraph(&g) {
        let c = Certificate { vertices: Some(k5.to_vec()), ..Certificate::default() };
        return record(Verdict::HasK5, Stage::K5, c);
    }
    if let Some(vertices) = dense_subgraph_witness(&g, DENSE_K) {
        let mask = vertices.iter().fold(0u64, |m, &v| m | 1 << v);
        let c = Certificate {
            edges: Some(induced_edge_count(&g, mask)),
            k: Some(DENSE_K),
            vertices: Some(vertices),
            ..Certificate::default()
        };
        return record(Verdict::DenseSubgraph, Stage::DenseSubgraph, c);
    }
    let c = Certificate { rank: Some(best), ..Certificate::default() };
    record(Verdict::Unresolved, Stage::Exhausted, c)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Prop3Summary {
    pub pipeline: &'static str,
    pub seed: u64,
    pub prime: u64,
    pub input_lines: usize,
    pub skipped: usize,
    pub valid: usize,
    /// Graphs not certified stress-free.
    pub stage1_survivors: usize,
    /// Of those, graphs without a `K5`.
    pub stage2_survivors: usize,
    /// Of those, graphs without a dense 6-vertex subgraph.
    pub stage3_survivors: usize,
    pub verdicts: BTreeMap<&'static str, usize>,
}

impl Prop3Summary {
    pub fn ok(&self) -> bool {
        self.stage3_survivors == 0
    }

    fn tally(&mut self, r: &VerdictRecord) {
        *self.verdicts.entry(r.verdict.name()).or_default() += 1;
        if r.verdict == Verdict::Skipped {
            self.skipped += 1;
            return;
        }
        self.valid += 1;
        let rank = match r.verdict {
            Verdict::StressFreeCertified => 0,
            Verdict::HasK5 => 1,
            Verdict::DenseSubgraph => 2,
            _ => 3,
        };
        self.stage1_survivors += usize::from(rank >= 1);
        self.stage2_survivors += usize::from(rank >= 2);
        self.stage3_survivors += usize::from(rank >= 3);
    }
}

/// Runs the eleven/twelve-vertex pipeline over `lines`, writing JSONL to `out`.
pub fn prop3_pipeline(cfg: &PipelineConfig, lines: LineStream, out: &mut dyn Write) -> Result<Prop3Summary, PipelineError> {
    let mut summary =
        Prop3Summary { pipeline: "prop3", seed: cfg.seed, prime: cfg.field.modulus(), ..Prop3Summary::default() };
    summary.input_lines = run_ordered(lines, cfg.limit, cfg.jobs, |l| prop3_record(cfg, l), |r| {
        summary.tally(r);
        writeln!(out, "{}", r.to_json_line())
    })?;
    Ok(summary)
}
