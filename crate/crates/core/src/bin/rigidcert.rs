use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use rigidcert::cayley_menger::{build_bordered_matrix, expand_determinant};
use rigidcert::graph::{graph6_decode, graph6_encode, Graph};
use rigidcert::linalg::{format_rational, Field, PrimeField, Rationals, MERSENNE_61};
use rigidcert::pipeline::{
    cycle_oracle_check, known_circuit_checks, lemma_br_checks, open_files, prop1_checks, prop2_pipeline,
    prop2_record, prop3_pipeline, run_geng, verify_line, verify_record,
    CheckResult, GengQuery, InputConnectivity, LineStream, PipelineConfig, PipelineError, Report, EDGES, MIN_DEGREE,
};
use rigidcert::rigidity::{
    generic_rank, is_circuit, max_rigid_rank, random_integer_configuration, random_prime_configuration, stress_basis,
    stress_sum,
};

#[derive(Parser)]
#[command(name = "rigidcert", version, about = "Exact rigidity-matroid computations and certificate pipelines")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Ambient dimension.
    #[arg(long, global = true, default_value_t = 3)]
    dim: usize,
    /// Prime modulus for randomized rank tests.
    #[arg(long, global = true, default_value_t = MERSENNE_61)]
    prime: u64,
    /// RNG seed; required by the pipelines.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random configurations per rank test.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    /// graph6 (or JSONL, for verify) input file; repeatable.
    #[arg(long, global = true)]
    input: Vec<PathBuf>,
    /// Path to nauty's geng, used when no --input is given.
    #[arg(long, global = true)]
    geng_path: Option<PathBuf>,
    /// Stop after this many input lines.
    #[arg(long, global = true)]
    limit: Option<usize>,
    /// Output file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Connectivity required of pipeline inputs: biconnected or connected.
    #[arg(long, global = true, default_value = "biconnected")]
    connectivity: InputConnectivity,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Generic rank of a graph's rigidity matrix.
    Rank { graph6: String },
    /// Whether a graph is a circuit of the rigidity matroid.
    Circuit { graph6: String },
    /// Stress space of a graph at a seeded random configuration.
    Stress {
        graph6: String,
        /// Use a rational configuration and exact rational arithmetic.
        #[arg(long)]
        exact: bool,
    },
    /// Dump the expanded K5,5 Cayley-Menger determinant as JSON.
    CmPoly,
    /// Checks on the K5,5 Cayley-Menger determinant.
    Prop1,
    /// Uniqueness and balance of the K5,5 stress at regular points.
    LemmaBr,
    /// Ten-vertex pipeline.
    Prop2,
    /// Eleven- and twelve-vertex pipeline.
    Prop3,
    /// Re-validate verdict lines (positional, or from --input files).
    Verify {
        lines: Vec<String>,
        /// Check a seeded random sample of this many lines.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Quick end-to-end checks.
    Selftest,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn decode(graph6: &str) -> Result<Graph, CliError> {
    graph6_decode(graph6).map_err(|e| CliError::Usage(format!("graph6: {e}")))
}

fn field(c: &Common) -> Result<PrimeField, CliError> {
    PrimeField::new(c.prime).map_err(|e| CliError::Usage(e.to_string()))
}

fn pipeline_config(c: &Common) -> Result<PipelineConfig, CliError> {
    let seed = c.seed.ok_or_else(|| CliError::Usage("--seed is required for pipelines".into()))?;
    let mut cfg = PipelineConfig::new(c.dim, c.prime, seed, c.trials)?;
    cfg.limit = c.limit;
    cfg.connectivity = c.connectivity;
    cfg.jobs = if c.jobs == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { c.jobs };
    Ok(cfg)
}

fn source(c: &Common, orders: &[usize]) -> Result<LineStream, CliError> {
    if !c.input.is_empty() {
        return Ok(open_files(&c.input)?);
    }
    let geng = c.geng_path.as_ref().ok_or(PipelineError::NoSource)?;
    let queries: Vec<GengQuery> = orders
        .iter()
        .map(|&n| GengQuery { vertices: n, edges: EDGES, min_degree: MIN_DEGREE, connectivity: c.connectivity })
        .collect();
    Ok(run_geng(geng, &queries)?)
}

fn print_json(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(io::Error::from)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn report(c: &Common, r: &Report) -> Result<bool, CliError> {
    print_json(&mut *output(&c.out)?, r)?;
    Ok(r.passed())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let c = &cli.common;
    let seed = c.seed.unwrap_or(0);
    match &cli.command {
        Command::Rank { graph6 } => {
            let g = decode(graph6)?;
            let r = generic_rank(&g, c.dim, &field(c)?, seed, c.trials);
            let v = json!({
                "graph6": graph6, "dim": c.dim, "rank": r, "edges": g.edge_count(),
                "max_rank": max_rigid_rank(g.n(), c.dim), "seed": seed, "prime": c.prime, "trials": c.trials,
            });
            print_json(&mut *output(&c.out)?, &v)?;
            Ok(true)
        }
        Command::Circuit { graph6 } => {
            let g = decode(graph6)?;
            let r = is_circuit(&g, c.dim, &field(c)?, seed, c.trials);
            let v = json!({
                "graph6": graph6, "dim": c.dim, "is_circuit": r.is_circuit, "rank": r.rank,
                "certified": r.level == rigidcert::rigidity::CertificateLevel::Certified,
                "seed": seed, "prime": c.prime,
            });
            print_json(&mut *output(&c.out)?, &v)?;
            Ok(true)
        }
        Command::Stress { graph6, exact } => {
            let g = decode(graph6)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = if *exact {
                let q = Rationals;
                let p = random_integer_configuration(g.n(), c.dim, 1000, &mut rng);
                let basis = stress_basis(&q, &g, &p).map_err(|e| CliError::Usage(e.to_string()))?;
                json!({
                    "graph6": graph6, "field": "rational", "dim": c.dim, "seed": seed,
                    "stress_space_dim": basis.len(),
                    "stresses": basis.iter().map(|w| w.values().iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "stress_sums": basis.iter().map(|w| format_rational(&stress_sum(&q, w))).collect::<Vec<_>>(),
                })
            } else {
                let f = field(c)?;
                let p = random_prime_configuration(&f, g.n(), c.dim, &mut rng);
                let basis = stress_basis(&f, &g, &p).map_err(|e| CliError::Usage(e.to_string()))?;
                json!({
                    "graph6": graph6, "field": "prime", "prime": c.prime, "dim": c.dim, "seed": seed,
                    "stress_space_dim": basis.len(),
                    "stresses": basis.iter().map(|w| w.values().to_vec()).collect::<Vec<_>>(),
                    "stress_sums": basis.iter().map(|w| f.sum(w.values())).collect::<Vec<_>>(),
                })
            };
            print_json(&mut *output(&c.out)?, &v)?;
            Ok(true)
        }
        Command::CmPoly => {
            let f = expand_determinant(&build_bordered_matrix());
            print_json(&mut *output(&c.out)?, &f.to_json())?;
            Ok(true)
        }
        Command::Prop1 => report(c, &prop1_checks(seed)),
        Command::LemmaBr => report(c, &lemma_br_checks(seed)),
        Command::Prop2 => {
            let cfg = pipeline_config(c)?;
            let lines = source(c, &[10])?;
            let mut out = output(&c.out)?;
            let summary = prop2_pipeline(&cfg, lines, &mut *out)?;
            out.flush()?;
            eprintln!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            Ok(summary.ok())
        }
        Command::Prop3 => {
            let cfg = pipeline_config(c)?;
            let lines = source(c, &[11, 12])?;
            let mut out = output(&c.out)?;
            let summary = prop3_pipeline(&cfg, lines, &mut *out)?;
            out.flush()?;
            eprintln!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            Ok(summary.ok())
        }
        Command::Verify { lines, sample: n } => verify(c, lines, *n, seed),
        Command::Selftest => selftest(c, seed),
    }
}

fn verify(c: &Common, positional: &[String], n: Option<usize>, seed: u64) -> Result<bool, CliError> {
    let mut lines: Vec<String> = positional.to_vec();
    for path in &c.input {
        let reader = BufReader::new(File::open(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?);
        for l in reader.lines() {
            let l = l?;
            if !l.trim().is_empty() {
                lines.push(l);
            }
        }
    }
    if lines.is_empty() {
        return Err(CliError::Usage("nothing to verify: pass lines or --input <jsonl>".into()));
    }
    let total = lines.len();
    if let Some(n) = n.filter(|&n| n < total) {
        let mut picked = sample(&mut ChaCha8Rng::seed_from_u64(seed), total, n).into_vec();
        picked.sort_unstable();
        lines = picked.into_iter().map(|i| std::mem::take(&mut lines[i])).collect();
    }
    let mut failures = 0;
    for (i, line) in lines.iter().enumerate() {
        if let Err(e) = verify_line(line) {
            failures += 1;
            eprintln!("line {}: {e}: {line}", i + 1);
        }
    }
    let v = json!({ "available": total, "checked": lines.len(), "failures": failures });
    print_json(&mut *output(&c.out)?, &v)?;
    Ok(failures == 0)
}

fn selftest(c: &Common, seed: u64) -> Result<bool, CliError> {
    let f = field(c)?;
    let mut results: Vec<CheckResult> = vec![cycle_oracle_check(6, &f, seed, c.trials)];
    results.extend(known_circuit_checks(&f, seed, c.trials));
    results.extend(prop1_checks(seed).checks.into_iter().map(|r| CheckResult { name: format!("prop1 {}", r.name), ..r }));
    results.extend(lemma_br_checks(seed).checks.into_iter().map(|r| CheckResult { name: format!("lemma-br {}", r.name), ..r }));
    let cfg = PipelineConfig::new(3, c.prime, seed, c.trials)?;
    let k55 = graph6_encode(&Graph::k55()).expect("ten vertices");
    let rec = prop2_record(&cfg, &k55);
    let ok = rec.verdict.name() == "isomorphic-to-K55" && verify_record(&rec).is_ok();
    results.push(CheckResult { name: "prop2 K5,5 record".into(), passed: ok, detail: rec.to_json_line() });

    let mut out = output(&c.out)?;
    for r in &results {
        writeln!(out, "{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail)?;
    }
    out.flush()?;
    Ok(results.iter().all(|r| r.passed))
}
