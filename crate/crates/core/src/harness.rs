//! Campaigns of solver-vs-oracle trials on G(n, p) instances, their reports
//! and replayable records.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fixtures;
use crate::graph::{random_gnp, GraphError, UndirectedGraph};
use crate::oracle::{brute_force_alpha, ALPHA_LIMIT};
use crate::saturator::TraceLevel;
use crate::solver::{solve_mmis, verify_result, MmisResult, SolverConfig, SolverError, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid campaign: {0}")]
    Config(String),
    #[error("unknown report format {0:?} (expected json, csv or text)")]
    UnknownFormat(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub p_grid: Vec<f64>,
    pub trials_per_cell: usize,
    pub base_seed: u64,
    pub oracle_limit: usize,
    #[serde(default)]
    pub solver: SolverConfig,
    /// Worker threads; `None` reads `MISLAB_THREADS`, then uses all cores.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n_min > self.n_max {
            return Err(HarnessError::Config(format!(
                "n_min {} exceeds n_max {}",
                self.n_min, self.n_max
            )));
        }
        if self.trials_per_cell == 0 {
            return Err(HarnessError::Config("trials_per_cell must be at least 1".into()));
        }
        if self.p_grid.is_empty() {
            return Err(HarnessError::Config("empty probability grid".into()));
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(HarnessError::Config(format!("probability {p} outside [0, 1]")));
        }
        if self.oracle_limit > ALPHA_LIMIT {
            return Err(HarnessError::Config(format!(
                "oracle_limit {} exceeds {ALPHA_LIMIT}",
                self.oracle_limit
            )));
        }
        Ok(())
    }

    fn thread_count(&self) -> Option<usize> {
        self.threads.or_else(|| {
            std::env::var("MISLAB_THREADS")
                .ok()
                .and_then(|s| s.trim().parse().ok())
                .filter(|&k| k > 0)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    /// Named fixture instead of a G(n, p) draw; `p` and `seed` are unused then.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    pub instance_hash: String,
    pub solver_size: usize,
    pub oracle_size: Option<usize>,
    pub verdict: Verdict,
    pub rounds: usize,
    #[serde(skip)]
    pub wall_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_path: Option<String>,
}

impl TrialRecord {
    pub fn instance(&self) -> Result<UndirectedGraph, HarnessError> {
        match &self.fixture {
            Some(name) => fixtures::named(name).ok_or_else(|| HarnessError::UnknownFixture(name.clone())),
            None => Ok(random_gnp(self.n, self.p, self.seed)?),
        }
    }
}

fn run_trial(
    g: &UndirectedGraph,
    oracle_limit: usize,
    solver: &SolverConfig,
) -> Result<(MmisResult, Option<usize>, Verdict, f64), HarnessError> {
    let start = Instant::now();
    let r = solve_mmis(g, solver)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let (oracle, verdict) = if g.n() <= oracle_limit {
        let alpha = brute_force_alpha(g, oracle_limit).expect("within limit").0;
        (Some(alpha), verify_result(g, &r, alpha)?)
    } else {
        (None, Verdict::Unverified)
    };
    Ok((r, oracle, verdict, wall_ms))
}

/// One trial of a G(n, p) instance.
pub fn trial(
    n: usize,
    p: f64,
    seed: u64,
    oracle_limit: usize,
    solver: &SolverConfig,
) -> Result<TrialRecord, HarnessError> {
    let g = random_gnp(n, p, seed)?;
    record_for(&g, None, p, seed, oracle_limit, solver)
}

/// A record for a named fixture graph.
pub fn fixture_record(name: &str, solver: &SolverConfig) -> Result<TrialRecord, HarnessError> {
    let g = fixtures::named(name).ok_or_else(|| HarnessError::UnknownFixture(name.into()))?;
    record_for(&g, Some(name.to_string()), 0.0, 0, ALPHA_LIMIT, solver)
}

fn record_for(
    g: &UndirectedGraph,
    fixture: Option<String>,
    p: f64,
    seed: u64,
    oracle_limit: usize,
    solver: &SolverConfig,
) -> Result<TrialRecord, HarnessError> {
    let (r, oracle_size, verdict, wall_ms) = run_trial(g, oracle_limit, solver)?;
    Ok(TrialRecord {
        n: g.n(),
        p,
        seed,
        fixture,
        instance_hash: g.instance_hash(),
        solver_size: r.size(),
        oracle_size,
        verdict,
        rounds: r.rounds,
        wall_ms,
        trace_path: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub confirmed: usize,
    pub counterexample_size: usize,
    pub counterexample_nontermination: usize,
    pub unverified: usize,
    pub errors: usize,
    pub mean_rounds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialError {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: CampaignConfig,
    pub cells: Vec<CellSummary>,
    pub total_trials: usize,
    pub total_confirmed: usize,
    /// Every trial whose verdict is not `confirmed`.
    pub records: Vec<TrialRecord>,
    pub errors: Vec<TrialError>,
}

impl Report {
    pub fn empty(config: CampaignConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            config,
            cells: Vec::new(),
            total_trials: 0,
            total_confirmed: 0,
            records: Vec::new(),
            errors: Vec::new(),
        }
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records.iter().filter(|r| {
            matches!(
                r.verdict,
                Verdict::CounterexampleSize | Verdict::CounterexampleNontermination
            )
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellTiming {
    pub n: usize,
    pub p: f64,
    pub p50_ms: f64,
    pub p90_ms: f64,
    pub max_ms: f64,
}

/// Wall-clock data, kept out of the report so reruns compare byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub cells: Vec<CellTiming>,
    pub total_ms: f64,
}

#[derive(Debug, Clone)]
pub struct Campaign {
    pub report: Report,
    pub timing: Timing,
    /// All records, confirmed ones included, in (n, p, seed) order.
    pub all_records: Vec<TrialRecord>,
}

fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}

/// Key that orders cells by `n`, then by position in the probability grid.
type CellKey = (usize, usize);

pub fn run_campaign(cfg: &CampaignConfig) -> Result<Campaign, HarnessError> {
    cfg.validate()?;
    let start = Instant::now();
    let mut tasks = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        for (pi, &p) in cfg.p_grid.iter().enumerate() {
            for t in 0..cfg.trials_per_cell {
                tasks.push((n, pi, p, cfg.base_seed.wrapping_add(t as u64)));
            }
        }
    }
    let work = || -> Vec<(CellKey, u64, Result<TrialRecord, String>)> {
        tasks
            .par_iter()
            .map(|&(n, pi, p, seed)| {
                let rec = trial(n, p, seed, cfg.oracle_limit, &cfg.solver).map_err(|e| e.to_string());
                ((n, pi), seed, rec)
            })
            .collect()
    };
    let results = match cfg.thread_count() {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| HarnessError::Pool(e.to_string()))?
            .install(work),
        None => work(),
    };
    Ok(assemble(cfg, results, start.elapsed().as_secs_f64() * 1e3))
}

/// Aggregates trial results; the outcome does not depend on their order.
fn assemble(
    cfg: &CampaignConfig,
    mut results: Vec<(CellKey, u64, Result<TrialRecord, String>)>,
    total_ms: f64,
) -> Campaign {
    results.sort_by_key(|(key, seed, _)| (*key, *seed));
    let mut cells: BTreeMap<CellKey, (CellSummary, Vec<f64>)> = BTreeMap::new();
    // thread count is an execution detail, not part of the result
    let mut report = Report::empty(CampaignConfig {
        threads: None,
        ..cfg.clone()
    });
    let mut all_records = Vec::new();
    for ((n, pi), seed, rec) in results {
        let p = cfg.p_grid[pi];
        let (cell, times) = cells.entry((n, pi)).or_insert_with(|| {
            (
                CellSummary {
                    n,
                    p,
                    trials: 0,
                    confirmed: 0,
                    counterexample_size: 0,
                    counterexample_nontermination: 0,
                    unverified: 0,
                    errors: 0,
                    mean_rounds: 0.0,
                },
                Vec::new(),
            )
        });
        cell.trials += 1;
        report.total_trials += 1;
        match rec {
            Ok(r) => {
                match r.verdict {
                    Verdict::Confirmed => {
                        cell.confirmed += 1;
                        report.total_confirmed += 1;
                    }
                    Verdict::CounterexampleSize => cell.counterexample_size += 1,
                    Verdict::CounterexampleNontermination => cell.counterexample_nontermination += 1,
                    Verdict::Unverified => cell.unverified += 1,
                }
                cell.mean_rounds += r.rounds as f64;
                times.push(r.wall_ms);
                if r.verdict != Verdict::Confirmed {
                    report.records.push(r.clone());
                }
                all_records.push(r);
            }
            Err(message) => {
                cell.errors += 1;
                report.errors.push(TrialError { n, p, seed, message });
            }
        }
    }
    let mut timing = Timing {
        cells: Vec::new(),
        total_ms,
    };
    for (_, (mut cell, mut times)) in cells {
        let done = cell.trials - cell.errors;
        if done > 0 {
            cell.mean_rounds /= done as f64;
        }
        times.sort_by(f64::total_cmp);
        timing.cells.push(CellTiming {
            n: cell.n,
            p: cell.p,
            p50_ms: percentile(&times, 0.5),
            p90_ms: percentile(&times, 0.9),
            max_ms: times.last().copied().unwrap_or(0.0),
        });
        report.cells.push(cell);
    }
    Campaign {
        report,
        timing,
        all_records,
    }
}

/// Differences between a stored record and a fresh replay; empty when the
/// record reproduces exactly.
pub fn record_mismatches(
    r: &TrialRecord,
    solver: &SolverConfig,
) -> Result<Vec<String>, HarnessError> {
    let g = r.instance()?;
    let mut out = Vec::new();
    if g.n() != r.n {
        out.push(format!("n: stored {}, instance has {}", r.n, g.n()));
    }
    let hash = g.instance_hash();
    if hash != r.instance_hash {
        out.push(format!("instance_hash: stored {}, replay {hash}", r.instance_hash));
    }
    // replay the oracle exactly when the original trial ran it
    let limit = if r.oracle_size.is_some() {
        ALPHA_LIMIT
    } else {
        g.n().saturating_sub(1)
    };
    let (res, oracle, verdict, _) = run_trial(&g, limit, solver)?;
    if res.size() != r.solver_size {
        out.push(format!("solver_size: stored {}, replay {}", r.solver_size, res.size()));
    }
    if oracle != r.oracle_size {
        out.push(format!("oracle_size: stored {:?}, replay {oracle:?}", r.oracle_size));
    }
    if verdict != r.verdict {
        out.push(format!("verdict: stored {:?}, replay {verdict:?}", r.verdict));
    }
    if res.rounds != r.rounds {
        out.push(format!("rounds: stored {}, replay {}", r.rounds, res.rounds));
    }
    Ok(out)
}

/// Regenerates the instance and re-runs solver and oracle; `true` when every
/// stored field is reproduced.
pub fn verify_record(r: &TrialRecord, solver: &SolverConfig) -> Result<bool, HarnessError> {
    Ok(record_mismatches(r, solver)?.is_empty())
}

/// Solver trace of a record's instance, ending with the final initiating set.
pub fn replay_trace(r: &TrialRecord, solver: &SolverConfig) -> Result<Vec<String>, HarnessError> {
    let g = r.instance()?;
    let mut cfg = solver.clone();
    cfg.trace = TraceLevel::Full;
    cfg.saturator.trace = TraceLevel::Cuts;
    Ok(solve_mmis(&g, &cfg)?.trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => Err(HarnessError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn emit_report(report: &Report, format: ReportFormat) -> Result<String, HarnessError> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for cell in &report.cells {
                w.serialize(cell)?;
            }
            if report.cells.is_empty() {
                w.write_record([
                    "n",
                    "p",
                    "trials",
                    "confirmed",
                    "counterexample_size",
                    "counterexample_nontermination",
                    "unverified",
                    "errors",
                    "mean_rounds",
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| HarnessError::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{:>4} {:>5} {:>10} {:>7} {:>7}", "n", "p", "confirmed", "cx", "rounds");
            for c in &report.cells {
                let _ = writeln!(
                    out,
                    "{:>4} {:>5.2} {:>4}/{:<5} {:>7} {:>7.2}",
                    c.n,
                    c.p,
                    c.confirmed,
                    c.trials,
                    c.counterexample_size + c.counterexample_nontermination,
                    c.mean_rounds
                );
            }
            let _ = writeln!(
                out,
                "total: {}/{} confirmed, {} non-confirmed records, {} errors",
                report.total_confirmed,
                report.total_trials,
                report.records.len(),
                report.errors.len()
            );
            Ok(out)
        }
    }
}

pub fn parse_report(json: &str) -> Result<Report, HarnessError> {
    Ok(serde_json::from_str(json)?)
}

fn record_stem(r: &TrialRecord) -> String {
    match &r.fixture {
        Some(name) => format!("{name}-{}", r.instance_hash),
        None => format!("n{}-p{}-s{}-{}", r.n, r.p, r.seed, r.instance_hash),
    }
}

/// Writes `report.json`, `report.csv`, `report.txt`, `timing.json`, and one
/// JSON file plus solver trace per non-confirmed record.
pub fn write_campaign(
    campaign: &mut Campaign,
    dir: &Path,
    solver: &SolverConfig,
) -> Result<(), HarnessError> {
    std::fs::create_dir_all(dir.join("records"))?;
    std::fs::create_dir_all(dir.join("traces"))?;
    for r in &mut campaign.report.records {
        let stem = record_stem(r);
        let trace = replay_trace(r, solver)?;
        let trace_rel = format!("traces/{stem}.log");
        std::fs::write(dir.join(&trace_rel), trace.join("\n") + "\n")?;
        r.trace_path = Some(trace_rel);
        std::fs::write(
            dir.join("records").join(format!("{stem}.json")),
            serde_json::to_string_pretty(r)? + "\n",
        )?;
    }
    let report = &campaign.report;
    std::fs::write(dir.join("report.json"), emit_report(report, ReportFormat::Json)?)?;
    std::fs::write(dir.join("report.csv"), emit_report(report, ReportFormat::Csv)?)?;
    std::fs::write(dir.join("report.txt"), emit_report(report, ReportFormat::Text)?)?;
    std::fs::write(
        dir.join("timing.json"),
        serde_json::to_string_pretty(&campaign.timing)? + "\n",
    )?;
    Ok(())
}

pub fn read_record(path: &Path) -> Result<TrialRecord, HarnessError> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n_min: usize, n_max: usize, p_grid: Vec<f64>, trials: usize) -> CampaignConfig {
        CampaignConfig {
            n_min,
            n_max,
            p_grid,
            trials_per_cell: trials,
            base_seed: 1,
            oracle_limit: 20,
            solver: SolverConfig::quiet(),
            threads: Some(2),
        }
    }

    #[test]
    fn single_vertex_campaign_confirms() {
        let c = run_campaign(&config(1, 1, vec![0.3, 0.9], 5)).unwrap();
        assert_eq!(c.report.total_trials, 10);
        assert_eq!(c.report.total_confirmed, 10);
        assert!(c.report.records.is_empty());
    }

    #[test]
    fn edgeless_cells_confirm_with_full_size() {
        let c = run_campaign(&config(3, 6, vec![0.0], 3)).unwrap();
        assert!(c.all_records.iter().all(|r| r.solver_size == r.n && r.oracle_size == Some(r.n)));
        assert_eq!(c.report.total_confirmed, 12);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(run_campaign(&config(5, 4, vec![0.5], 1)).is_err());
        assert!(run_campaign(&config(4, 5, vec![0.5], 0)).is_err());
        assert!(run_campaign(&config(4, 5, vec![1.5], 1)).is_err());
        assert!(run_campaign(&config(4, 5, vec![], 1)).is_err());
    }

    #[test]
    fn above_oracle_limit_is_unverified() {
        let mut cfg = config(8, 8, vec![0.5], 2);
        cfg.oracle_limit = 7;
        let c = run_campaign(&cfg).unwrap();
        assert!(c.report.records.iter().all(|r| r.verdict == Verdict::Unverified));
        assert_eq!(c.report.records.len(), 2);
    }

    #[test]
    fn aggregation_is_order_independent() {
        let cfg = config(4, 6, vec![0.2, 0.6], 4);
        let c = run_campaign(&cfg).unwrap();
        let results: Vec<_> = c
            .all_records
            .iter()
            .map(|r| {
                let pi = cfg.p_grid.iter().position(|&p| p == r.p).unwrap();
                ((r.n, pi), r.seed, Ok(r.clone()))
            })
            .collect();
        let mut reversed = results.clone();
        reversed.reverse();
        let a = assemble(&cfg, results, 0.0).report;
        let b = assemble(&cfg, reversed, 0.0).report;
        assert_eq!(a, b);
    }

    #[test]
    fn records_replay_and_detect_tampering() {
        let r = trial(9, 0.4, 7, 20, &SolverConfig::quiet()).unwrap();
        assert!(verify_record(&r, &SolverConfig::quiet()).unwrap());
        let mut bad = r.clone();
        bad.solver_size += 1;
        assert!(!verify_record(&bad, &SolverConfig::quiet()).unwrap());
        let mut bad = r;
        bad.instance_hash = "0000000000000000".into();
        assert!(!verify_record(&bad, &SolverConfig::quiet()).unwrap());
    }

    #[test]
    fn g10_fixture_record() {
        let r = fixture_record("g10", &SolverConfig::quiet()).unwrap();
        assert_eq!((r.solver_size, r.oracle_size), (4, Some(4)));
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert!(verify_record(&r, &SolverConfig::quiet()).unwrap());
        assert!(fixture_record("nope", &SolverConfig::quiet()).is_err());
    }

    #[test]
    fn report_formats() {
        let empty = Report::empty(config(1, 1, vec![0.5], 1));
        let json = emit_report(&empty, ReportFormat::Json).unwrap();
        assert_eq!(parse_report(&json).unwrap(), empty);
        assert_eq!(emit_report(&empty, ReportFormat::Csv).unwrap().lines().count(), 1);

        let c = run_campaign(&config(2, 2, vec![0.5], 1)).unwrap();
        let csv = emit_report(&c.report, ReportFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.starts_with("n,p,trials,confirmed"));
        let text = emit_report(&c.report, ReportFormat::Text).unwrap();
        assert!(text.contains("1/1"));
        let json = emit_report(&c.report, ReportFormat::Json).unwrap();
        assert!(json.contains("\"schema_version\": 1"));
        assert!(!json.contains("wall_ms"));
        assert_eq!(parse_report(&json).unwrap(), c.report);
        assert!(matches!("xml".parse::<ReportFormat>(), Err(HarnessError::UnknownFormat(_))));
    }

    #[test]
    fn replay_trace_ends_with_final_v0() {
        let r = trial(10, 0.3, 3, 20, &SolverConfig::quiet()).unwrap();
        let trace = replay_trace(&r, &SolverConfig::quiet()).unwrap();
        let last = trace.last().unwrap();
        assert!(last.starts_with("final V0"));
        assert!(last.ends_with(&format!("size {}", r.solver_size)));
    }
}
