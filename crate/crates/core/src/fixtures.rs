//! Small worked instances with known answers, in 1-based labels.

use crate::dag::OrientedDag;
use crate::graph::{UndirectedGraph, VertexSet};

/// Edges of the 10-vertex worked example.
pub const G10_EDGES: [(usize, usize); 14] = [
    (1, 5),
    (1, 8),
    (2, 5),
    (2, 6),
    (2, 9),
    (2, 10),
    (3, 7),
    (3, 9),
    (4, 7),
    (4, 10),
    (6, 8),
    (6, 9),
    (6, 10),
    (9, 10),
];

/// Orientation of [`G10_EDGES`] produced by greedy layering.
pub const D10_ARCS: [(usize, usize); 14] = G10_EDGES;

/// The vertex-saturated re-orientation of the 10-vertex example.
pub const D10_SATURATED_ARCS: [(usize, usize); 14] = [
    (1, 5),
    (1, 8),
    (2, 5),
    (2, 6),
    (2, 9),
    (2, 10),
    (3, 7),
    (3, 9),
    (4, 7),
    (4, 10),
    (6, 9),
    (8, 6),
    (10, 6),
    (10, 9),
];

/// The five-element poset `a1..a5`.
pub const P5_RELATION: [(usize, usize); 5] = [(1, 2), (1, 3), (1, 5), (4, 2), (5, 2)];

/// Six-vertex graph with two different minimum chain partitions.
pub const SIX_EDGES: [(usize, usize); 8] = [
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 6),
    (3, 5),
    (4, 6),
];

/// Partition whose chains jump over fictitious arcs: marked vertices {5, 6}.
pub const SIX_P1: [&[usize]; 2] = [&[2, 3, 5], &[1, 4, 6]];
/// Partition made of cliques: no marked vertices.
pub const SIX_P2: [&[usize]; 2] = [&[1, 3, 5], &[2, 4, 6]];

fn zero_based(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect()
}

pub fn g10() -> UndirectedGraph {
    UndirectedGraph::from_labeled_edges(10, &G10_EDGES).expect("fixture is valid")
}

pub fn d10() -> OrientedDag {
    OrientedDag::from_arcs(&g10(), &VertexSet::full(10), &zero_based(&D10_ARCS))
        .expect("fixture is valid")
}

pub fn d10_saturated() -> OrientedDag {
    OrientedDag::from_arcs(&g10(), &VertexSet::full(10), &zero_based(&D10_SATURATED_ARCS))
        .expect("fixture is valid")
}

pub fn p5() -> OrientedDag {
    OrientedDag::from_digraph(5, &zero_based(&P5_RELATION)).expect("fixture is valid")
}

pub fn six_graph() -> UndirectedGraph {
    UndirectedGraph::from_labeled_edges(6, &SIX_EDGES).expect("fixture is valid")
}

/// The six-vertex graph oriented bottom-up: `{1,2}` below `{3,4}` below `{5,6}`.
pub fn six_dag() -> OrientedDag {
    let g = six_graph();
    let layers = [vec![1, 2], vec![3, 4], vec![5, 6]]
        .into_iter()
        .map(|l| VertexSet::from_labels(6, l))
        .collect::<Vec<_>>();
    crate::dag::orient_by_layering(&g, &layers).expect("fixture is valid")
}

/// A named fixture graph, for records that do not come from G(n, p).
pub fn named(name: &str) -> Option<UndirectedGraph> {
    match name {
        "g10" => Some(g10()),
        "six" => Some(six_graph()),
        _ => None,
    }
}
