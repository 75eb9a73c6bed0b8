//! The maximum independent set search: saturate, then try every fictitious
//! arc of the closure; an arc whose closed-neighbourhood removal leaves a
//! remainder with a large enough initiating set yields a bigger independent
//! set, which is cut into the digraph before starting over.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{clique_cover_check, solve_table, ChainError, ChoicePolicy, FfOutcome};
use crate::dag::{initial_layering, orient_by_layering, DagError, OrientedDag};
use crate::graph::{UndirectedGraph, VertexSet};
use crate::saturator::{saturate, SaturateError, SaturatorCaps, TraceLevel};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("improvement set {0} is not independent")]
    NotIndependent(VertexSet),
    #[error("solver claims {claimed} but the oracle says alpha = {alpha}")]
    ExceedsOracle { claimed: usize, alpha: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Improvement rounds before giving up; `None` means `n + 1`.
    pub max_outer_rounds: Option<usize>,
    pub saturator: SaturatorCaps,
    pub trace: TraceLevel,
    /// Stop as soon as a minimum chain partition has no marked vertices.
    pub clique_fast_path: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_outer_rounds: None,
            saturator: SaturatorCaps::default(),
            trace: TraceLevel::Cuts,
            clique_fast_path: false,
        }
    }
}

impl SolverConfig {
    /// No trace lines beyond the final one; the harness default.
    pub fn quiet() -> Self {
        Self {
            saturator: SaturatorCaps {
                trace: TraceLevel::Off,
                ..SaturatorCaps::default()
            },
            trace: TraceLevel::Off,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Completed,
    CapExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    CounterexampleSize,
    CounterexampleNontermination,
    Unverified,
}

#[derive(Debug, Clone)]
pub struct MmisResult {
    pub claimed_mmis: VertexSet,
    pub rounds: usize,
    pub fictitious_arcs_examined: usize,
    pub status: SolveStatus,
    /// The final initiating set was not maximal and was greedily extended.
    pub completed_from_v0: bool,
    pub trace: Vec<String>,
}

impl MmisResult {
    pub fn size(&self) -> usize {
        self.claimed_mmis.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Improved(VertexSet),
    Rejected { z_size: usize },
    EmptyRemainder,
}

/// Tests one fictitious arc `(i, j)` of a saturated digraph.
pub fn conjecture_step(
    d: &OrientedDag,
    i: usize,
    j: usize,
    caps: &SaturatorCaps,
) -> Result<StepOutcome, StepError> {
    let v0 = d.initiating_set().len();
    let remainder = d.remove_closed_neighborhoods(i, j)?;
    let z0 = if remainder.vertex_count() == 0 {
        if v0 > 1 {
            return Ok(StepOutcome::EmptyRemainder);
        }
        VertexSet::empty(d.base().n())
    } else {
        saturate(&remainder, caps)?.0.initiating_set()
    };
    if z0.len() + 1 < v0 {
        return Ok(StepOutcome::Rejected { z_size: z0.len() });
    }
    let mut w = z0;
    w.insert(i);
    w.insert(j);
    if !d.base().is_independent(&w) {
        return Err(StepError::Solver(SolverError::NotIndependent(w)));
    }
    assert!(w.len() > v0, "improvement must grow the initiating set");
    Ok(StepOutcome::Improved(w))
}

#[derive(Debug, Error)]
pub enum StepError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Saturate(#[from] SaturateError),
}

impl From<DagError> for StepError {
    fn from(e: DagError) -> Self {
        StepError::Solver(e.into())
    }
}

struct Run<'a> {
    g: &'a UndirectedGraph,
    cfg: &'a SolverConfig,
    trace: Vec<String>,
    rounds: usize,
    examined: usize,
}

enum Stop {
    Done(VertexSet),
    Cap(VertexSet),
}

impl Run<'_> {
    fn log(&mut self, line: impl FnOnce() -> String) {
        if self.cfg.trace != TraceLevel::Off {
            self.trace.push(line());
        }
    }

    fn saturate(&mut self, d: &OrientedDag) -> Result<Result<OrientedDag, VertexSet>, SolverError> {
        match saturate(d, &self.cfg.saturator) {
            Ok((out, vs)) => {
                if self.cfg.trace != TraceLevel::Off {
                    self.trace.extend(vs.lines());
                }
                Ok(Ok(out))
            }
            Err(SaturateError::NonTerminationSuspect { cuts, trace }) => {
                self.log(|| format!("saturate cap hit after {cuts} cuts"));
                let last = trace
                    .final_dag
                    .as_ref()
                    .map(|d| d.initiating_set())
                    .unwrap_or_else(|| d.initiating_set());
                Ok(Err(last))
            }
            Err(SaturateError::Dag(e)) => Err(e.into()),
            Err(SaturateError::Chain(e)) => Err(e.into()),
        }
    }

    fn clique_cover(&mut self, d: &OrientedDag) -> Result<Option<VertexSet>, SolverError> {
        let c = d.transitive_closure();
        let (mut table, outcome) = solve_table(&c, ChoicePolicy::EssentialOnly);
        if outcome == FfOutcome::ClosureDeficit {
            table = solve_table(&c, ChoicePolicy::AllComparable).0;
        }
        let p = table.chains()?;
        let cert = clique_cover_check(&p, &c, self.g)?;
        if let Some(cert) = &cert {
            let size = cert.mmis.len();
            self.log(|| format!("clique_cover certificate: {} cliques, MMIS size {size}", cert.cliques.len()));
        }
        Ok(cert.map(|c| c.mmis))
    }

    fn go(&mut self) -> Result<Stop, SolverError> {
        let n = self.g.n();
        let cap = self.cfg.max_outer_rounds.unwrap_or(n + 1);
        let mut d = orient_by_layering(self.g, &initial_layering(self.g))?;
        loop {
            d = match self.saturate(&d)? {
                Ok(d) => d,
                Err(partial) => return Ok(Stop::Cap(partial)),
            };
            let v0 = d.initiating_set();
            let round = self.rounds;
            self.log(|| format!("round {round} saturated, V0 = {v0}"));
            if self.cfg.clique_fast_path {
                if let Some(mmis) = self.clique_cover(&d)? {
                    return Ok(Stop::Done(mmis));
                }
            }
            let mut improved = None;
            for (i, j) in d.transitive_closure().fictitious_cells() {
                self.examined += 1;
                match conjecture_step(&d, i, j, &self.cfg.saturator) {
                    Ok(StepOutcome::Improved(w)) => {
                        self.log(|| format!("arc ({},{}) improves: W = {w}", i + 1, j + 1));
                        improved = Some(w);
                        break;
                    }
                    Ok(StepOutcome::Rejected { z_size }) => {
                        self.log(|| format!("arc ({},{}) rejected: |Z0| = {z_size}", i + 1, j + 1));
                    }
                    Ok(StepOutcome::EmptyRemainder) => {
                        self.log(|| format!("arc ({},{}) rejected: empty remainder", i + 1, j + 1));
                    }
                    Err(StepError::Saturate(SaturateError::NonTerminationSuspect { cuts, .. })) => {
                        self.log(|| format!("arc ({},{}): saturate cap hit after {cuts} cuts", i + 1, j + 1));
                        return Ok(Stop::Cap(v0));
                    }
                    Err(StepError::Saturate(SaturateError::Dag(e))) => return Err(e.into()),
                    Err(StepError::Saturate(SaturateError::Chain(e))) => return Err(e.into()),
                    Err(StepError::Solver(e)) => return Err(e),
                }
            }
            let Some(w) = improved else {
                return Ok(Stop::Done(v0));
            };
            d = d.cut(&w)?;
            let grown = d.initiating_set();
            assert!(grown.len() > v0.len(), "initiating set did not grow");
            self.rounds += 1;
            if self.rounds >= cap {
                self.log(|| format!("outer round cap {cap} reached"));
                return Ok(Stop::Cap(grown));
            }
        }
    }
}

/// Runs the full search on `g`. The claimed set is always a maximal
/// independent set of `g`.
pub fn solve_mmis(g: &UndirectedGraph, cfg: &SolverConfig) -> Result<MmisResult, SolverError> {
    let mut run = Run {
        g,
        cfg,
        trace: Vec::new(),
        rounds: 0,
        examined: 0,
    };
    let (set, status) = match run.go()? {
        Stop::Done(s) => (s, SolveStatus::Completed),
        Stop::Cap(s) => (s, SolveStatus::CapExceeded),
    };
    let completed_from_v0 = !g.is_mis(&set);
    let claimed = if completed_from_v0 {
        g.greedy_complete_to_mis(&set)
            .map_err(|_| SolverError::NotIndependent(set.clone()))?
    } else {
        set
    };
    assert!(g.is_mis(&claimed), "claimed set is not a maximal independent set");
    if completed_from_v0 {
        run.trace.push("V0 not maximal, completed greedily".to_string());
    }
    run.trace.push(format!("final V0 = {claimed} size {}", claimed.len()));
    Ok(MmisResult {
        claimed_mmis: claimed,
        rounds: run.rounds,
        fictitious_arcs_examined: run.examined,
        status,
        completed_from_v0,
        trace: run.trace,
    })
}

/// Compares a result against the exact independence number.
pub fn verify_result(
    g: &UndirectedGraph,
    r: &MmisResult,
    oracle_alpha: usize,
) -> Result<Verdict, SolverError> {
    debug_assert!(g.is_mis(&r.claimed_mmis));
    let size = r.size();
    if size > oracle_alpha {
        return Err(SolverError::ExceedsOracle {
            claimed: size,
            alpha: oracle_alpha,
        });
    }
    Ok(match r.status {
        SolveStatus::CapExceeded => Verdict::CounterexampleNontermination,
        SolveStatus::Completed if size == oracle_alpha => Verdict::Confirmed,
        SolveStatus::Completed => Verdict::CounterexampleSize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::random_gnp;
    use crate::oracle::{brute_force_alpha, ALPHA_LIMIT};

    fn caps() -> SaturatorCaps {
        SaturatorCaps::default()
    }

    #[test]
    fn g10_is_solved() {
        let r = solve_mmis(&fixtures::g10(), &SolverConfig::default()).unwrap();
        assert_eq!(r.claimed_mmis.labels(), vec![1, 2, 3, 4]);
        assert_eq!(r.status, SolveStatus::Completed);
        assert!(r.trace.last().unwrap().starts_with("final V0"));
        assert_eq!(verify_result(&fixtures::g10(), &r, 4).unwrap(), Verdict::Confirmed);
    }

    #[test]
    fn trivial_graphs() {
        let r = solve_mmis(&UndirectedGraph::edgeless(6), &SolverConfig::default()).unwrap();
        assert_eq!(r.size(), 6);
        assert_eq!(r.rounds, 0);
        let k5 = UndirectedGraph::complete(5);
        let r = solve_mmis(&k5, &SolverConfig::default()).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(verify_result(&k5, &r, 1).unwrap(), Verdict::Confirmed);
        let r = solve_mmis(&UndirectedGraph::edgeless(0), &SolverConfig::default()).unwrap();
        assert_eq!(r.size(), 0);
    }

    #[test]
    fn conjecture_step_rejections_on_vs_digraph() {
        let d = fixtures::d10_saturated();
        assert_eq!(
            conjecture_step(&d, 0, 5, &caps()).unwrap(),
            StepOutcome::Rejected { z_size: 2 }
        );
        assert_eq!(
            conjecture_step(&d, 3, 8, &caps()).unwrap(),
            StepOutcome::Rejected { z_size: 2 }
        );
        assert!(matches!(
            conjecture_step(&d, 0, 4, &caps()),
            Err(StepError::Solver(SolverError::Dag(DagError::NotFictitious(0, 4))))
        ));
    }

    #[test]
    fn conjecture_step_on_short_paths() {
        // a→b→c with V0 = {a}: empty remainder still clears |V0| − 1 = 0
        let d = OrientedDag::from_digraph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            conjecture_step(&d, 0, 2, &caps()).unwrap(),
            StepOutcome::Improved(VertexSet::from_members(3, [0, 2]))
        );
        // a→b→c plus d→b: V0 = {a, d}, removing N[a] ∪ N[c] leaves only d
        let d = OrientedDag::from_digraph(4, &[(0, 1), (1, 2), (3, 1)]).unwrap();
        assert_eq!(
            conjecture_step(&d, 0, 2, &caps()).unwrap(),
            StepOutcome::Improved(VertexSet::from_members(4, [0, 2, 3]))
        );
        // a→b→c plus d→c: V0 = {a, d}, removal of N[a] ∪ N[c] leaves nothing
        let d = OrientedDag::from_digraph(4, &[(0, 1), (1, 2), (3, 2)]).unwrap();
        assert_eq!(conjecture_step(&d, 0, 2, &caps()).unwrap(), StepOutcome::EmptyRemainder);
    }

    #[test]
    fn verdicts() {
        let g = fixtures::g10();
        let mut r = solve_mmis(&g, &SolverConfig::default()).unwrap();
        assert_eq!(verify_result(&g, &r, 5).unwrap(), Verdict::CounterexampleSize);
        assert!(matches!(
            verify_result(&g, &r, 3),
            Err(SolverError::ExceedsOracle { claimed: 4, alpha: 3 })
        ));
        r.status = SolveStatus::CapExceeded;
        assert_eq!(verify_result(&g, &r, 4).unwrap(), Verdict::CounterexampleNontermination);
    }

    #[test]
    fn round_cap_yields_partial_mis() {
        let cfg = SolverConfig {
            max_outer_rounds: Some(0),
            ..SolverConfig::default()
        };
        for seed in 0..40 {
            let g = random_gnp(10, 0.3, seed).unwrap();
            let r = solve_mmis(&g, &cfg).unwrap();
            assert!(g.is_mis(&r.claimed_mmis));
            if r.rounds > 0 {
                assert_eq!(r.status, SolveStatus::CapExceeded);
            }
        }
    }

    #[test]
    fn clique_fast_path_agrees_on_small_graphs() {
        let fast = SolverConfig {
            clique_fast_path: true,
            ..SolverConfig::default()
        };
        for seed in 0..40 {
            let g = random_gnp(9, 0.4, seed).unwrap();
            let a = brute_force_alpha(&g, ALPHA_LIMIT).unwrap().0;
            let r = solve_mmis(&g, &fast).unwrap();
            assert!(g.is_mis(&r.claimed_mmis));
            assert!(r.size() <= a);
        }
        let r = solve_mmis(&fixtures::six_graph(), &fast).unwrap();
        assert_eq!(r.size(), 2);
    }

    #[test]
    fn solver_is_safe_and_deterministic() {
        for seed in 0..60 {
            let g = random_gnp(12, [0.2, 0.5, 0.8][seed as usize % 3], seed).unwrap();
            let r = solve_mmis(&g, &SolverConfig::default()).unwrap();
            let again = solve_mmis(&g, &SolverConfig::default()).unwrap();
            assert_eq!(r.claimed_mmis, again.claimed_mmis);
            assert_eq!(r.trace, again.trace);
            let a = brute_force_alpha(&g, ALPHA_LIMIT).unwrap().0;
            assert!(verify_result(&g, &r, a).is_ok());
        }
    }
}
