//! Layered acyclic orientations, vertex saturation and a maximum independent
//! set search driven by chain partitions, with brute-force oracles and a
//! counterexample-hunting harness.

pub mod chain;
pub mod dag;
pub mod fixtures;
pub mod golden;
pub mod graph;
pub mod harness;
pub mod io;
pub mod oracle;
pub mod saturator;
pub mod solver;

pub use chain::{Antichain, ChainError, ChainPartition, ChoicePolicy, FfOutcome, Mark, WorkTable};
pub use dag::{DagError, OrientedDag, TransitiveClosure};
pub use graph::{random_gnp, GraphError, UndirectedGraph, VertexSet};
pub use harness::{CampaignConfig, Report, TrialRecord};
pub use saturator::{saturate, SaturatorCaps, TraceLevel, VsTrace};
pub use solver::{solve_mmis, MmisResult, SolverConfig, Verdict};
