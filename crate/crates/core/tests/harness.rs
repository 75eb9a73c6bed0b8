use mislab::harness::{
    emit_report, parse_report, read_record, record_mismatches, replay_trace, run_campaign,
    verify_record, write_campaign, CampaignConfig, ReportFormat,
};
use mislab::saturator::SaturatorCaps;
use mislab::solver::{SolverConfig, Verdict};

fn config(solver: SolverConfig) -> CampaignConfig {
    CampaignConfig {
        n_min: 6,
        n_max: 10,
        p_grid: vec![0.2, 0.5, 0.8],
        trials_per_cell: 6,
        base_seed: 11,
        oracle_limit: 20,
        solver,
        threads: Some(3),
    }
}

#[test]
fn written_campaign_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(SolverConfig::quiet());
    let mut c = run_campaign(&cfg).unwrap();
    write_campaign(&mut c, dir.path(), &cfg.solver).unwrap();
    let json = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert_eq!(parse_report(&json).unwrap(), c.report);
    assert!(dir.path().join("timing.json").exists());
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 5 * 3);
}

#[test]
fn capped_runs_produce_replayable_records() {
    // one cut per saturation is too few for most graphs
    let solver = SolverConfig {
        saturator: SaturatorCaps {
            max_cuts: Some(1),
            ..SolverConfig::quiet().saturator
        },
        ..SolverConfig::quiet()
    };
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(solver.clone());
    let mut c = run_campaign(&cfg).unwrap();
    assert!(c.report.errors.is_empty());
    let capped: Vec<_> = c.report.counterexamples().cloned().collect();
    assert!(!capped.is_empty());
    assert!(capped.iter().all(|r| r.verdict == Verdict::CounterexampleNontermination));
    write_campaign(&mut c, dir.path(), &solver).unwrap();
    for entry in std::fs::read_dir(dir.path().join("records")).unwrap() {
        let r = read_record(&entry.unwrap().path()).unwrap();
        assert!(verify_record(&r, &solver).unwrap());
        let trace = std::fs::read_to_string(dir.path().join(r.trace_path.as_ref().unwrap())).unwrap();
        assert!(trace.trim_end().ends_with(&format!("size {}", r.solver_size)));
        // under the default caps the same instance replays differently
        assert!(!record_mismatches(&r, &SolverConfig::quiet()).unwrap().is_empty());
    }
    let first = &capped[0];
    assert_eq!(replay_trace(first, &solver).unwrap().last().unwrap().split(' ').next_back().unwrap(), first.solver_size.to_string());
}

#[test]
fn reruns_are_byte_identical() {
    let cfg = config(SolverConfig::quiet());
    let a = emit_report(&run_campaign(&cfg).unwrap().report, ReportFormat::Json).unwrap();
    let mut single = cfg.clone();
    single.threads = Some(1);
    let b = emit_report(&run_campaign(&single).unwrap().report, ReportFormat::Json).unwrap();
    assert_eq!(a, b);
}
