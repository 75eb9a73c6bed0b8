//! Vertex saturation: every layer-induced sub-digraph must have all its
//! per-vertex maximum antichains equal to maximal independent sets of the
//! initiating-set size. Unsaturated layers are repaired by cutting with an
//! enlarged independent set.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{solve_table, ChainError, ChoicePolicy, FfOutcome, WorkTable};
use crate::dag::{DagError, OrientedDag, TransitiveClosure};
use crate::graph::VertexSet;

#[derive(Debug, Error)]
pub enum SaturateError {
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("non-termination suspect: {cuts} cuts applied without reaching saturation")]
    NonTerminationSuspect { cuts: usize, trace: Box<VsTrace> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TraceLevel {
    Off,
    /// Cuts and deficit events only.
    #[default]
    Cuts,
    /// Every per-vertex test.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturatorCaps {
    /// Cut applications per call; `None` means `10·n²`.
    pub max_cuts: Option<usize>,
    pub trace: TraceLevel,
}

impl Default for SaturatorCaps {
    fn default() -> Self {
        Self {
            max_cuts: None,
            trace: TraceLevel::Cuts,
        }
    }
}

impl SaturatorCaps {
    fn cut_limit(&self, n: usize) -> usize {
        self.max_cuts.unwrap_or(10 * n.max(1) * n.max(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VsAction {
    Accepted,
    CutApplied,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VsEntry {
    pub layer: usize,
    /// 1-based.
    pub vertex: usize,
    /// 1-based members of the antichain tested (the completed set on a cut).
    pub antichain: Vec<usize>,
    pub action: VsAction,
    /// `|V^0|` of the full digraph after the entry.
    pub initiating_size: usize,
}

#[derive(Debug, Clone, Default)]
pub struct VsTrace {
    pub entries: Vec<VsEntry>,
    /// Outer passes started because the previous one applied a cut.
    pub restart_count: usize,
    pub cuts: usize,
    /// Layers whose essential-only table could not reach a closure-maximum
    /// matching and were rebuilt over all comparable cells.
    pub deficit_events: Vec<usize>,
    pub final_dag: Option<OrientedDag>,
}

impl VsTrace {
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                let action = match e.action {
                    VsAction::Accepted => "accepted",
                    VsAction::CutApplied => "cut-applied",
                };
                format!(
                    "vs k={} v={} U={{{}}} {} |V0|={}",
                    e.layer,
                    e.vertex,
                    join(&e.antichain),
                    action,
                    e.initiating_size
                )
            })
            .collect();
        for k in &self.deficit_events {
            out.push(format!("vs saturation-deficit k={k}"));
        }
        out.push(format!(
            "vs done cuts={} restarts={}",
            self.cuts, self.restart_count
        ));
        out
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Result of a saturation test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Saturation {
    Saturated,
    /// First per-vertex antichain that is not an MIS of the initiating-set size.
    Witness { vertex: usize, antichain: VertexSet },
}

impl fmt::Display for Saturation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Saturation::Saturated => f.write_str("saturated"),
            Saturation::Witness { vertex, antichain } => {
                write!(f, "witness U({}) = {}", vertex + 1, antichain)
            }
        }
    }
}

/// Sub-digraph induced on layers `k..=m`; its initiating set is `V^k`.
pub fn layer_subdigraph(d: &OrientedDag, k: usize) -> Result<OrientedDag, DagError> {
    let layers = d.layers();
    if k >= layers.len() {
        return Err(DagError::LayerOutOfRange {
            k,
            layers: layers.len(),
        });
    }
    if k == 0 {
        return Ok(d.clone());
    }
    let mut keep = VertexSet::empty(d.base().n());
    for layer in &layers[k..] {
        keep = keep.union(layer);
    }
    Ok(d.induced(&keep))
}

/// Completed work table for per-vertex antichains, falling back to all
/// comparable cells when arcs alone cannot carry a minimum chain partition.
fn antichain_table(c: &TransitiveClosure) -> (WorkTable, bool) {
    let (t, outcome) = solve_table(c, ChoicePolicy::EssentialOnly);
    match outcome {
        FfOutcome::Maximum => (t, false),
        FfOutcome::ClosureDeficit => (solve_table(c, ChoicePolicy::AllComparable).0, true),
    }
}

struct Check {
    result: Saturation,
    accepted: Vec<(usize, VertexSet)>,
    deficit: bool,
}

fn check(d: &OrientedDag, record: bool) -> Result<Check, ChainError> {
    let c = d.transitive_closure();
    let (table, deficit) = antichain_table(&c);
    let target = d.initiating_set().len();
    let mut accepted = Vec::new();
    for layer in d.layers() {
        for v in layer.iter() {
            let Some(u) = table.antichain_for_vertex(v)? else {
                continue;
            };
            let u = u.into_set();
            if u.len() != target || !d.base().is_mis_within(&u, d.vertices()) {
                return Ok(Check {
                    result: Saturation::Witness {
                        vertex: v,
                        antichain: u,
                    },
                    accepted,
                    deficit,
                });
            }
            if record {
                accepted.push((v, u));
            }
        }
    }
    Ok(Check {
        result: Saturation::Saturated,
        accepted,
        deficit,
    })
}

/// Saturation of `d` with respect to its own initiating set. Vertices are
/// tested by ascending layer, then ascending index.
pub fn is_saturated(d: &OrientedDag) -> Result<Saturation, ChainError> {
    Ok(check(d, false)?.result)
}

/// Algorithm VS: walk the layers bottom-up; at the first per-vertex antichain
/// that fails, complete it greedily to an MIS `W` of the layer sub-digraph,
/// cut that sub-digraph by `W`, splice it back and re-examine the same layer.
/// A pass that applied any cut is followed by another full pass.
pub fn saturate(
    d: &OrientedDag,
    caps: &SaturatorCaps,
) -> Result<(OrientedDag, VsTrace), SaturateError> {
    let limit = caps.cut_limit(d.vertex_count());
    let record = caps.trace == TraceLevel::Full;
    let log = caps.trace != TraceLevel::Off;
    let mut trace = VsTrace::default();
    let mut d = d.clone();
    loop {
        let mut alpha = false;
        let mut k = 0;
        while k + 1 < d.layer_count() {
            let sub = layer_subdigraph(&d, k)?;
            let outcome = check(&sub, record)?;
            if outcome.deficit && log && trace.deficit_events.last() != Some(&k) {
                trace.deficit_events.push(k);
            }
            for (v, u) in outcome.accepted {
                trace.entries.push(VsEntry {
                    layer: k,
                    vertex: v + 1,
                    antichain: u.labels(),
                    action: VsAction::Accepted,
                    initiating_size: d.initiating_set().len(),
                });
            }
            match outcome.result {
                Saturation::Saturated => k += 1,
                Saturation::Witness { vertex, antichain } => {
                    let w = d
                        .base()
                        .greedy_complete_within(&antichain, sub.vertices())
                        .expect("antichains of an orientation are independent");
                    let cut = sub.cut(&w)?;
                    d = d.splice(&cut)?;
                    alpha = true;
                    trace.cuts += 1;
                    if log {
                        trace.entries.push(VsEntry {
                            layer: k,
                            vertex: vertex + 1,
                            antichain: w.labels(),
                            action: VsAction::CutApplied,
                            initiating_size: d.initiating_set().len(),
                        });
                    }
                    if trace.cuts >= limit {
                        trace.final_dag = Some(d);
                        return Err(SaturateError::NonTerminationSuspect {
                            cuts: trace.cuts,
                            trace: Box::new(trace),
                        });
                    }
                }
            }
        }
        if !alpha {
            break;
        }
        trace.restart_count += 1;
    }
    trace.final_dag = Some(d.clone());
    Ok((d, trace))
}

/// An antichain `U ⊆ Y_k \ V^k` with fewer predecessors in `V^k` than members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallViolation {
    pub layer: usize,
    pub antichain: VertexSet,
    pub predecessors: VertexSet,
}

/// Vertices of rank `k` or more.
fn upper_set(d: &OrientedDag, k: usize) -> VertexSet {
    let mut out = VertexSet::empty(d.base().n());
    for layer in d.layers().iter().skip(k) {
        out = out.union(layer);
    }
    out
}

/// The matching condition for a single antichain `u` above layer `k`:
/// `|V^k ∩ pred(U)| ≥ |U|`.
pub fn hall_holds_for(
    d: &OrientedDag,
    c: &TransitiveClosure,
    k: usize,
    u: &VertexSet,
) -> Result<(), HallViolation> {
    let vk = &d.layers()[k];
    let predecessors = c.predecessors_of(u).intersection(vk);
    if predecessors.len() >= u.len() {
        Ok(())
    } else {
        Err(HallViolation {
            layer: k,
            antichain: u.clone(),
            predecessors,
        })
    }
}

const EXHAUSTIVE_LIMIT: usize = 16;
const SAMPLES: usize = 4096;

/// Checks the matching condition on every layer: exhaustively over all
/// antichains when the upper set has at most 16 vertices, otherwise on 4096
/// seeded random antichains. Returns the first violation.
pub fn hall_check(d: &OrientedDag, c: &TransitiveClosure) -> Option<HallViolation> {
    for k in 0..d.layer_count() {
        let y = upper_set(d, k);
        let candidates = y.difference(&d.layers()[k]).to_vec();
        if candidates.is_empty() {
            continue;
        }
        let found = if y.len() <= EXHAUSTIVE_LIMIT {
            let mut current = VertexSet::empty(d.base().n());
            exhaustive(d, c, k, &candidates, 0, &mut current)
        } else {
            sampled(d, c, k, &candidates)
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

fn exhaustive(
    d: &OrientedDag,
    c: &TransitiveClosure,
    k: usize,
    candidates: &[usize],
    from: usize,
    current: &mut VertexSet,
) -> Option<HallViolation> {
    for idx in from..candidates.len() {
        let v = candidates[idx];
        if current.iter().any(|x| c.comparable(x, v)) {
            continue;
        }
        current.insert(v);
        if let Err(violation) = hall_holds_for(d, c, k, current) {
            return Some(violation);
        }
        if let Some(violation) = exhaustive(d, c, k, candidates, idx + 1, current) {
            return Some(violation);
        }
        current.remove(v);
    }
    None
}

fn sampled(
    d: &OrientedDag,
    c: &TransitiveClosure,
    k: usize,
    candidates: &[usize],
) -> Option<HallViolation> {
    let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
    let mut order = candidates.to_vec();
    for _ in 0..SAMPLES {
        order.shuffle(&mut rng);
        let mut u = VertexSet::empty(d.base().n());
        for &v in &order {
            if rng.gen_bool(0.5) && u.iter().all(|x| !c.comparable(x, v)) {
                u.insert(v);
            }
        }
        if u.is_empty() {
            continue;
        }
        if let Err(violation) = hall_holds_for(d, c, k, &u) {
            return Some(violation);
        }
    }
    None
}

/// A minimum chain partition made of arcs alone exists, and every chain
/// starts in the initiating set.
pub fn essential_mcp_exists(d: &OrientedDag) -> bool {
    let c = d.transitive_closure();
    let (essential, outcome) = solve_table(&c, ChoicePolicy::EssentialOnly);
    if outcome == FfOutcome::ClosureDeficit {
        return false;
    }
    let (full, _) = solve_table(&c, ChoicePolicy::AllComparable);
    let (Ok(chains), Ok(full_chains)) = (essential.chains(), full.chains()) else {
        return false;
    };
    let v0 = d.initiating_set();
    chains.len() == full_chains.len() && chains.chains.iter().all(|ch| v0.contains(ch[0]))
}
