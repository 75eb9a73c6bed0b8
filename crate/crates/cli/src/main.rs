use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mislab::harness::{self, CampaignConfig, ReportFormat};
use mislab::io;
use mislab::oracle::ALPHA_LIMIT;
use mislab::{golden, random_gnp, solve_mmis, SolverConfig, TraceLevel};

#[derive(Parser)]
#[command(name = "mislab", version, about = "Layered-orientation MIS solver and counterexample hunter")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Edges,
    Dimacs,
}

#[derive(Subcommand)]
enum Commands {
    /// Write a seeded G(n, p) instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
    },
    /// Solve one graph (DIMACS or edge list).
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Stop early when a chain partition certifies optimality.
        #[arg(long)]
        fast_path: bool,
    },
    /// Run solver against the oracle over a grid of random instances.
    Hunt {
        #[arg(long, default_value_t = 6)]
        n_min: usize,
        #[arg(long, default_value_t = 18)]
        n_max: usize,
        #[arg(long, default_value = "0.1,0.3,0.5,0.7,0.9")]
        p: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        oracle_limit: usize,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Replay a stored trial record.
    Verify {
        #[arg(long)]
        record: PathBuf,
    },
    /// Replay the worked examples.
    Fixtures,
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .with_context(|| format!("bad probability {t:?}"))
        })
        .collect()
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Commands::Gen {
            n,
            p,
            seed,
            out,
            format,
        } => {
            let g = random_gnp(n, p, seed)?;
            let text = match format {
                GraphFormat::Edges => io::to_edge_list(&g),
                GraphFormat::Dimacs => io::to_dimacs(&g),
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
        Commands::Solve {
            input,
            trace,
            json,
            fast_path,
        } => {
            let g = io::read_graph(&input).with_context(|| format!("reading {}", input.display()))?;
            let mut cfg = SolverConfig {
                clique_fast_path: fast_path,
                ..SolverConfig::quiet()
            };
            if trace.is_some() {
                cfg.trace = TraceLevel::Full;
                cfg.saturator.trace = TraceLevel::Cuts;
            }
            let start = Instant::now();
            let r = solve_mmis(&g, &cfg)?;
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            if let Some(path) = trace {
                std::fs::write(&path, r.trace.join("\n") + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let status = match r.status {
                mislab::solver::SolveStatus::Completed => "completed",
                mislab::solver::SolveStatus::CapExceeded => "cap-exceeded",
            };
            if json {
                let v = json!({
                    "instance_hash": g.instance_hash(),
                    "size": r.size(),
                    "members": r.claimed_mmis.labels(),
                    "rounds": r.rounds,
                    "status": status,
                    "wall_ms": wall_ms,
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("size {} ({status}, {} rounds)", r.size(), r.rounds);
                println!("{}", r.claimed_mmis);
            }
        }
        Commands::Hunt {
            n_min,
            n_max,
            p,
            trials,
            seed,
            oracle_limit,
            out_dir,
            format,
        } => {
            let format: ReportFormat = format.parse()?;
            if oracle_limit > ALPHA_LIMIT {
                bail!("--oracle-limit may not exceed {ALPHA_LIMIT}");
            }
            let cfg = CampaignConfig {
                n_min,
                n_max,
                p_grid: parse_grid(&p)?,
                trials_per_cell: trials,
                base_seed: seed,
                oracle_limit,
                solver: SolverConfig::quiet(),
                threads: None,
            };
            let mut campaign = harness::run_campaign(&cfg)?;
            if let Some(dir) = out_dir {
                harness::write_campaign(&mut campaign, &dir, &cfg.solver)?;
            }
            print!("{}", harness::emit_report(&campaign.report, format)?);
            if !campaign.report.errors.is_empty() {
                return Ok(ExitCode::from(1));
            }
        }
        Commands::Verify { record } => {
            let r = harness::read_record(&record)
                .with_context(|| format!("reading {}", record.display()))?;
            let mismatches = harness::record_mismatches(&r, &SolverConfig::quiet())?;
            if mismatches.is_empty() {
                println!(
                    "ok: {} verdict {:?}, solver {} oracle {:?}",
                    r.instance_hash, r.verdict, r.solver_size, r.oracle_size
                );
            } else {
                for m in &mismatches {
                    println!("mismatch: {m}");
                }
                return Ok(ExitCode::from(1));
            }
        }
        Commands::Fixtures => {
            let checks = golden::run_golden();
            let mut failed = 0;
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                println!("{tag} {}: {}", c.name, c.detail);
                failed += usize::from(!c.passed);
            }
            if failed > 0 {
                println!("{failed} of {} checks failed", checks.len());
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
