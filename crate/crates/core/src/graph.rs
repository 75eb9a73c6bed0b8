//! Undirected simple graphs, vertex sets, and the independence predicates
//! everything else is checked against.
//!
//! Vertices are `0..n`. Fixtures and file formats use 1-based labels and are
//! translated at the boundary (see [`crate::io`] and [`crate::fixtures`]).

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("vertex set is not independent ({0}-{1} is an edge)")]
    NotIndependent(usize, usize),
}

/// A set of vertices of an `n`-vertex graph, iterated in ascending order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Self { bits }
    }

    /// Builds a set from members; panics if a member is `>= n`.
    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut s = Self::empty(n);
        for v in members {
            assert!(v < n, "vertex {v} out of range for n={n}");
            s.bits.insert(v);
        }
        s
    }

    /// Builds a set from 1-based labels.
    pub fn from_labels<I: IntoIterator<Item = usize>>(n: usize, labels: I) -> Self {
        Self::from_members(n, labels.into_iter().map(|l| l - 1))
    }

    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        Self { bits }
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    /// Size of the owning vertex universe.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Members as 1-based labels.
    pub fn labels(&self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Renders as 1-based labels, e.g. `{1,2,3,4}`.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

/// Loop-free simple graph stored as bit-packed symmetric adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

impl UndirectedGraph {
    pub fn edgeless(n: usize) -> Self {
        Self {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::edgeless(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.add_edge_unchecked(i, j);
            }
        }
        g
    }

    /// Builds a graph from unordered 0-based pairs; duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::edgeless(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Same as [`from_edges`](Self::from_edges) with 1-based endpoints.
    pub fn from_labeled_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::edgeless(n);
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            g.add_edge(i - 1, j - 1)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<(), GraphError> {
        for v in [i, j] {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if i == j {
            return Err(GraphError::LoopEdge(i));
        }
        self.add_edge_unchecked(i, j);
        Ok(())
    }

    fn add_edge_unchecked(&mut self, i: usize, j: usize) {
        self.adj[i].insert(j);
        self.adj[j].insert(i);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[v].clone())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Edges `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in self.adj[i].ones().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::edgeless(self.n);
        for i in 0..self.n {
            let mut row = self.adj[i].clone();
            row.toggle_range(..);
            row.set(i, false);
            g.adj[i] = row;
        }
        g
    }

    /// No edge joins two members of `s`.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        self.first_conflict(s).is_none()
    }

    pub(crate) fn first_conflict(&self, s: &VertexSet) -> Option<(usize, usize)> {
        for v in s.iter() {
            if let Some(u) = self.adj[v].intersection(s.bits()).find(|&u| u > v) {
                return Some((v, u));
            }
        }
        None
    }

    /// Independent, and every vertex outside `s` has a neighbour in `s`.
    pub fn is_mis(&self, s: &VertexSet) -> bool {
        self.is_mis_within(s, &VertexSet::full(self.n))
    }

    /// MIS test on the subgraph induced by `scope` (`s` must lie inside it).
    pub fn is_mis_within(&self, s: &VertexSet, scope: &VertexSet) -> bool {
        if !s.is_subset(scope) || !self.is_independent(s) {
            return false;
        }
        scope
            .iter()
            .filter(|v| !s.contains(*v))
            .all(|v| self.adj[v].intersection(s.bits()).next().is_some())
    }

    /// Completes an independent set to a MIS by scanning vertices in ascending
    /// order and adding each one that keeps the set independent.
    pub fn greedy_complete_to_mis(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        self.greedy_complete_within(s, &VertexSet::full(self.n))
    }

    /// Greedy ascending completion restricted to the subgraph induced by `scope`.
    pub fn greedy_complete_within(
        &self,
        s: &VertexSet,
        scope: &VertexSet,
    ) -> Result<VertexSet, GraphError> {
        if let Some((a, b)) = self.first_conflict(s) {
            return Err(GraphError::NotIndependent(a, b));
        }
        let mut out = s.clone();
        let mut blocked = FixedBitSet::with_capacity(self.n);
        for v in s.iter() {
            blocked.union_with(&self.adj[v]);
        }
        for v in scope.iter() {
            if !out.contains(v) && !blocked.contains(v) {
                out.insert(v);
                blocked.union_with(&self.adj[v]);
            }
        }
        Ok(out)
    }

    /// Induced subgraph on `keep`, renumbered to `0..keep.len()` in ascending order.
    pub fn induced(&self, keep: &VertexSet) -> Self {
        let verts = keep.to_vec();
        let mut g = Self::edgeless(verts.len());
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge_unchecked(a, b);
                }
            }
        }
        g
    }

    /// Short content hash of the canonical edge list.
    pub fn instance_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}\n", self.n));
        for (i, j) in self.edges() {
            h.update(format!("{} {}\n", i + 1, j + 1));
        }
        hex::encode(&h.finalize()[..8])
    }
}

impl fmt::Debug for UndirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UndirectedGraph")
            .field("n", &self.n)
            .field(
                "edges",
                &self
                    .edges()
                    .into_iter()
                    .map(|(i, j)| (i + 1, j + 1))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// G(n, p) with every unordered pair drawn independently, pairs visited in
/// lexicographic order from a ChaCha8 stream seeded with `seed`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<UndirectedGraph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = UndirectedGraph::edgeless(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < p {
                g.add_edge_unchecked(i, j);
            }
        }
    }
    Ok(g)
}
