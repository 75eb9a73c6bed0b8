//! Layered acyclic orientations of an undirected graph, their ranks and
//! layers, the transitive closure with essential/fictitious cells, and the
//! operations that rewrite an orientation (cutting, closed-neighbourhood
//! removal, splicing a re-oriented sub-digraph back in).
//!
//! An [`OrientedDag`] may cover only part of its base graph: sub-digraphs keep
//! the original vertex numbering and carry an active vertex set.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{UndirectedGraph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DagError {
    #[error("orientation contains a directed cycle")]
    Cycle,
    #[error("layering is not a partition of the vertex set")]
    NotPartition,
    #[error("layer {0} is not an independent set")]
    LayerNotIndependent(usize),
    #[error("vertex set is not independent ({0}-{1} is an edge)")]
    NotIndependent(usize, usize),
    #[error("({0},{1}) is not a fictitious cell of the closure")]
    NotFictitious(usize, usize),
    #[error("arc ({0},{1}) does not correspond to an edge between active vertices")]
    ArcNotEdge(usize, usize),
    #[error("edge {0}-{1} is not oriented exactly once")]
    EdgeNotOriented(usize, usize),
    #[error("vertex {0} is not part of this digraph")]
    InactiveVertex(usize),
    #[error("layer index {k} out of range (digraph has {layers} layers)")]
    LayerOutOfRange { k: usize, layers: usize },
}

/// Longest-path ranks over the active vertices and the layers they induce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    /// `None` for vertices outside the digraph.
    pub rank: Vec<Option<usize>>,
    pub layers: Vec<VertexSet>,
}

/// Ranks every active vertex by the longest directed path reaching it from a
/// source. Fails on a directed cycle.
pub fn compute_ranks(vertices: &VertexSet, succ: &[FixedBitSet]) -> Result<Ranking, DagError> {
    let n = vertices.universe();
    let mut indeg = vec![0usize; n];
    for u in vertices.iter() {
        for v in succ[u].ones() {
            indeg[v] += 1;
        }
    }
    let mut rank: Vec<Option<usize>> = vec![None; n];
    let mut queue: VecDeque<usize> = vertices.iter().filter(|&v| indeg[v] == 0).collect();
    for &v in &queue {
        rank[v] = Some(0);
    }
    let mut seen = 0;
    while let Some(u) = queue.pop_front() {
        seen += 1;
        let ru = rank[u].expect("queued vertices are ranked");
        for v in succ[u].ones() {
            rank[v] = Some(rank[v].map_or(ru + 1, |r| r.max(ru + 1)));
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if seen != vertices.len() {
        return Err(DagError::Cycle);
    }
    let depth = rank.iter().flatten().max().map_or(0, |m| m + 1);
    let mut layers = vec![VertexSet::empty(n); depth];
    for v in vertices.iter() {
        layers[rank[v].unwrap()].insert(v);
    }
    Ok(Ranking { rank, layers })
}

/// Peels greedy ascending-order MISes off the graph until every vertex is
/// assigned: `V^k` is a MIS of the subgraph left after removing `V^0..V^{k-1}`.
pub fn initial_layering(g: &UndirectedGraph) -> Vec<VertexSet> {
    let n = g.n();
    let mut remaining = VertexSet::full(n);
    let mut layers = Vec::new();
    while !remaining.is_empty() {
        let layer = g
            .greedy_complete_within(&VertexSet::empty(n), &remaining)
            .expect("empty set is independent");
        remaining = remaining.difference(&layer);
        layers.push(layer);
    }
    layers
}

/// Orients every edge from the lower layer index to the higher one.
pub fn orient_by_layering(
    g: &UndirectedGraph,
    layering: &[VertexSet],
) -> Result<OrientedDag, DagError> {
    let n = g.n();
    let mut layer_of = vec![usize::MAX; n];
    for (k, layer) in layering.iter().enumerate() {
        if layer.universe() != n {
            return Err(DagError::NotPartition);
        }
        for v in layer.iter() {
            if layer_of[v] != usize::MAX {
                return Err(DagError::NotPartition);
            }
            layer_of[v] = k;
        }
        if !g.is_independent(layer) {
            return Err(DagError::LayerNotIndependent(k));
        }
    }
    if layer_of.contains(&usize::MAX) {
        return Err(DagError::NotPartition);
    }
    let arcs: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(i, j)| if layer_of[i] < layer_of[j] { (i, j) } else { (j, i) })
        .collect();
    OrientedDag::from_arcs(g, &VertexSet::full(n), &arcs)
}

/// An acyclic orientation of (an induced part of) an undirected graph.
///
/// Ranks and layers are recomputed on every construction; they are never
/// carried over from a previous orientation.
#[derive(Clone)]
pub struct OrientedDag {
    base: Arc<UndirectedGraph>,
    vertices: VertexSet,
    succ: Vec<FixedBitSet>,
    pred: Vec<FixedBitSet>,
    ranking: Ranking,
}

impl PartialEq for OrientedDag {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.succ == other.succ && *self.base == *other.base
    }
}

impl Eq for OrientedDag {}

impl std::fmt::Debug for OrientedDag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.dump())
    }
}

impl OrientedDag {
    /// Validates that `arcs` orient every edge of `base` among `vertices`
    /// exactly once and nothing else, then ranks the result.
    pub fn from_arcs(
        base: &UndirectedGraph,
        vertices: &VertexSet,
        arcs: &[(usize, usize)],
    ) -> Result<Self, DagError> {
        Self::from_arcs_shared(Arc::new(base.clone()), vertices.clone(), arcs)
    }

    fn from_arcs_shared(
        base: Arc<UndirectedGraph>,
        vertices: VertexSet,
        arcs: &[(usize, usize)],
    ) -> Result<Self, DagError> {
        let n = base.n();
        let mut succ = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in arcs {
            if u >= n || v >= n || !vertices.contains(u) || !vertices.contains(v) {
                return Err(DagError::ArcNotEdge(u, v));
            }
            if !base.has_edge(u, v) {
                return Err(DagError::ArcNotEdge(u, v));
            }
            if succ[v].contains(u) || succ[u].contains(v) {
                return Err(DagError::EdgeNotOriented(u.min(v), u.max(v)));
            }
            succ[u].insert(v);
        }
        for u in vertices.iter() {
            for v in base.neighbors(u).filter(|&v| v > u && vertices.contains(v)) {
                if !succ[u].contains(v) && !succ[v].contains(u) {
                    return Err(DagError::EdgeNotOriented(u, v));
                }
            }
        }
        Self::from_parts(base, vertices, succ)
    }

    /// A digraph given only by its arcs; the base graph is their underlying
    /// undirected graph. Used for plain posets.
    pub fn from_digraph(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DagError> {
        let mut g = UndirectedGraph::edgeless(n);
        for &(u, v) in arcs {
            g.add_edge(u, v).map_err(|_| DagError::ArcNotEdge(u, v))?;
        }
        Self::from_arcs(&g, &VertexSet::full(n), arcs)
    }

    fn from_parts(
        base: Arc<UndirectedGraph>,
        vertices: VertexSet,
        succ: Vec<FixedBitSet>,
    ) -> Result<Self, DagError> {
        let n = base.n();
        let mut pred = vec![FixedBitSet::with_capacity(n); n];
        for (u, row) in succ.iter().enumerate() {
            for v in row.ones() {
                pred[v].insert(u);
            }
        }
        let ranking = compute_ranks(&vertices, &succ)?;
        Ok(Self {
            base,
            vertices,
            succ,
            pred,
            ranking,
        })
    }

    pub fn base(&self) -> &UndirectedGraph {
        &self.base
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.succ[u].contains(v)
    }

    /// All arcs, lexicographic by (tail, head).
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.vertices.iter() {
            out.extend(self.succ[u].ones().map(|v| (u, v)));
        }
        out
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[v].ones()
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.pred[v].ones()
    }

    pub fn rank(&self, v: usize) -> Option<usize> {
        self.ranking.rank[v]
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn layers(&self) -> &[VertexSet] {
        &self.ranking.layers
    }

    pub fn layer_count(&self) -> usize {
        self.ranking.layers.len()
    }

    /// The rank-0 layer `V^0`.
    pub fn initiating_set(&self) -> VertexSet {
        self.ranking
            .layers
            .first()
            .cloned()
            .unwrap_or_else(|| VertexSet::empty(self.base.n()))
    }

    /// Vertices with an arc into some member of `w` (the inverse image of `w`).
    pub fn in_neighbors_of(&self, w: &VertexSet) -> VertexSet {
        let mut bits = FixedBitSet::with_capacity(self.base.n());
        for v in w.iter() {
            bits.union_with(&self.pred[v]);
        }
        VertexSet::from_bits(bits)
    }

    pub fn transitive_closure(&self) -> TransitiveClosure {
        let n = self.base.n();
        let mut reach = vec![FixedBitSet::with_capacity(n); n];
        let mut order: Vec<usize> = self.vertices.to_vec();
        order.sort_by_key(|&v| std::cmp::Reverse(self.ranking.rank[v]));
        for u in order {
            let mut row = self.succ[u].clone();
            for v in self.succ[u].ones() {
                row.union_with(&reach[v]);
            }
            reach[u] = row;
        }
        TransitiveClosure {
            vertices: self.vertices.clone(),
            reach,
            essential: self.succ.clone(),
        }
    }

    /// Reverses every arc whose head lies in the independent set `w`.
    ///
    /// The result's initiating set is `(V^0 \ in_neighbors(w)) ∪ w`.
    pub fn cut(&self, w: &VertexSet) -> Result<Self, DagError> {
        if let Some(v) = w.iter().find(|&v| !self.vertices.contains(v)) {
            return Err(DagError::InactiveVertex(v));
        }
        if let Some((a, b)) = self.base.first_conflict(w) {
            return Err(DagError::NotIndependent(a, b));
        }
        let n = self.base.n();
        let mut succ = self.succ.clone();
        for h in w.iter() {
            for t in self.pred[h].ones() {
                succ[t].set(h, false);
                succ[h].insert(t);
            }
        }
        let out = Self::from_parts(self.base.clone(), self.vertices.clone(), succ)?;
        let expected = self
            .initiating_set()
            .difference(&self.in_neighbors_of(w))
            .union(w);
        assert_eq!(
            out.initiating_set(),
            expected,
            "cut initiating set disagrees with (V0 \\ pred(W)) ∪ W"
        );
        debug_assert_eq!(out.base.n(), n);
        Ok(out)
    }

    /// Induced sub-digraph on `keep ∩ vertices`, original labels kept.
    pub fn induced(&self, keep: &VertexSet) -> Self {
        let vertices = self.vertices.intersection(keep);
        let mut succ = self.succ.clone();
        for (u, row) in succ.iter_mut().enumerate() {
            if vertices.contains(u) {
                row.intersect_with(vertices.bits());
            } else {
                row.clear();
            }
        }
        Self::from_parts(self.base.clone(), vertices, succ).expect("sub-digraph of a DAG is acyclic")
    }

    /// Deletes `i`, `j` and all their neighbours, given that `(i, j)` is a
    /// fictitious cell of the closure.
    pub fn remove_closed_neighborhoods(&self, i: usize, j: usize) -> Result<Self, DagError> {
        let closure = self.transitive_closure();
        if !closure.is_fictitious(i, j) {
            return Err(DagError::NotFictitious(i, j));
        }
        let n = self.base.n();
        let mut removed = VertexSet::from_members(n, [i, j]);
        removed = removed
            .union(&self.base.neighborhood(i))
            .union(&self.base.neighborhood(j));
        let keep = self.vertices.difference(&removed);
        let out = self.induced(&keep);
        let pred_ij = self.in_neighbors_of(&VertexSet::from_members(n, [i, j]));
        let surviving = self
            .initiating_set()
            .difference(&pred_ij)
            .intersection(&keep);
        assert!(
            surviving.is_subset(&out.initiating_set()),
            "removal lost an initiating vertex"
        );
        Ok(out)
    }

    /// Replaces the orientation of every arc between vertices of `sub` with
    /// the orientation `sub` gives it.
    pub fn splice(&self, sub: &OrientedDag) -> Result<Self, DagError> {
        let scope = sub.vertices();
        let mut succ = self.succ.clone();
        for u in scope.iter() {
            let mut keep_out = succ[u].clone();
            keep_out.difference_with(scope.bits());
            keep_out.union_with(&sub.succ[u]);
            succ[u] = keep_out;
        }
        Self::from_parts(self.base.clone(), self.vertices.clone(), succ)
    }

    /// `u > v` per arc, then `layer k: {…}` per layer; 1-based labels.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.arcs() {
            let _ = writeln!(out, "{} > {}", u + 1, v + 1);
        }
        for (k, layer) in self.layers().iter().enumerate() {
            let _ = writeln!(out, "layer {k}: {layer}");
        }
        out
    }
}

/// Reachability over an [`OrientedDag`], each reachable pair flagged as an
/// essential (an arc of the digraph) or fictitious (path-only) cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitiveClosure {
    vertices: VertexSet,
    reach: Vec<FixedBitSet>,
    essential: Vec<FixedBitSet>,
}

impl TransitiveClosure {
    pub fn n(&self) -> usize {
        self.vertices.universe()
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn reaches(&self, i: usize, j: usize) -> bool {
        self.reach[i].contains(j)
    }

    pub fn is_essential(&self, i: usize, j: usize) -> bool {
        self.essential[i].contains(j)
    }

    pub fn is_fictitious(&self, i: usize, j: usize) -> bool {
        self.reaches(i, j) && !self.is_essential(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.reaches(i, j) || self.reaches(j, i)
    }

    pub(crate) fn reach_row(&self, i: usize) -> &FixedBitSet {
        &self.reach[i]
    }

    pub(crate) fn essential_row(&self, i: usize) -> &FixedBitSet {
        &self.essential[i]
    }

    /// Fictitious cells, lexicographic.
    pub fn fictitious_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in self.vertices.iter() {
            let mut row = self.reach[i].clone();
            row.difference_with(&self.essential[i]);
            out.extend(row.ones().map(|j| (i, j)));
        }
        out
    }

    /// Members pairwise unreachable.
    pub fn is_antichain(&self, s: &VertexSet) -> bool {
        s.iter()
            .all(|v| self.reach[v].intersection(s.bits()).next().is_none())
    }

    /// Vertices that reach some member of `u`.
    pub fn predecessors_of(&self, u: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n());
        for x in self.vertices.iter() {
            if self.reach[x].intersection(u.bits()).next().is_some() {
                out.insert(x);
            }
        }
        out
    }
}
