use std::io;

use rayon::prelude::*;

use super::{PipelineError, VerdictRecord};

const CHUNK: usize = 2048;

/// Maps `process` over `lines` on `jobs` threads and hands the records to
/// `sink` in input order, so output does not depend on the thread count.
/// Stops after `limit` lines.
pub fn run_ordered<I, P, S>(lines: I, limit: Option<usize>, jobs: usize, process: P, mut sink: S) -> Result<usize, PipelineError>
where
    I: Iterator<Item = io::Result<String>>,
    P: Fn(&str) -> VerdictRecord + Sync,
    S: FnMut(&VerdictRecord) -> io::Result<()>,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| PipelineError::Pool(e.to_string()))?;
    let mut lines = lines.take(limit.unwrap_or(usize::MAX));
    let mut total = 0;
    loop {
        let chunk: Vec<String> = lines.by_ref().take(CHUNK).collect::<io::Result<_>>()?;
        if chunk.is_empty() {
            return Ok(total);
        }
        total += chunk.len();
        let records: Vec<VerdictRecord> = pool.install(|| chunk.par_iter().map(|l| process(l)).collect());
        for r in &records {
            sink(r)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{Certificate, PipelineConfig, Stage, Verdict};

    #[test]
    fn order_and_limit() {
        let cfg = PipelineConfig::new(3, 2305843009213693951, 0, 1).unwrap();
        let lines: Vec<io::Result<String>> = (0..5000).map(|i| Ok(format!("x{i}"))).collect();
        let mut seen = Vec::new();
        let n = run_ordered(
            lines.into_iter(),
            Some(4100),
            4,
            |l| VerdictRecord::new(&cfg, l, Verdict::Skipped, Stage::Input, Certificate::default()),
            |r| {
                seen.push(r.graph6.clone());
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(n, 4100);
        assert_eq!(seen, (0..4100).map(|i| format!("x{i}")).collect::<Vec<_>>());
    }
}
