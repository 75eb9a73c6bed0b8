//! Chain partitions and maximum antichains of a finite strict order by the
//! marking method on an adjacency working table.
//!
//! Rows and columns of a [`WorkTable`] are the elements of the order; a cell
//! `(i, j)` is admissible when `i` precedes `j`. Chosen cells are pairwise
//! row- and column-disjoint and form the successor links of the chains. The
//! search scans rows top to bottom and cells left to right, so every mark and
//! every choice is reproducible.
//!
//! Two masks are kept. `choosable` restricts which cells may be chosen
//! (essential arcs only, when chains must follow arcs of the digraph);
//! `admissible` is the full closure and drives the marking that extracts
//! antichains.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::dag::TransitiveClosure;
use crate::graph::{UndirectedGraph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("table has not been optimized")]
    NotOptimized,
    #[error("a free column is reachable from a free row: the matching over the closure is not maximum")]
    ClosureMatchingNotMaximum,
    #[error("chosen cells form a cycle")]
    ChosenCycle,
    #[error("vertex {0} is not a row of this table")]
    UnknownVertex(usize),
    #[error("no marked vertices but chain {chain:?} is not a clique")]
    ChainNotClique { chain: Vec<usize> },
}

/// Which cells of the closure may be chosen as chain links.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChoicePolicy {
    /// Every comparable pair (plain poset chain partition).
    AllComparable,
    /// Arcs of the digraph only.
    EssentialOnly,
}

/// Row or column mark. `From(v)` stores the vertex whose column (for a row
/// mark) or row (for a column mark) caused it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mark {
    Star,
    From(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfOutcome {
    /// Matching is maximum over choosable cells and no augmenting path exists
    /// through the full closure either.
    Maximum,
    /// Maximum over choosable cells, but the closure admits a larger matching.
    ClosureDeficit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Via {
    Choosable,
    Admissible,
}

/// Marks in local (row/column) indices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Marks {
    rows: Vec<Option<Mark>>,
    cols: Vec<Option<Mark>>,
}

impl Marks {
    fn new(n: usize) -> Self {
        Self {
            rows: vec![None; n],
            cols: vec![None; n],
        }
    }
}

/// A set of pairwise incomparable vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain {
    members: VertexSet,
}

impl Antichain {
    /// Wraps `members` if they are pairwise incomparable in `c`.
    pub fn new(members: VertexSet, c: &TransitiveClosure) -> Option<Self> {
        c.is_antichain(&members).then_some(Self { members })
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn into_set(self) -> VertexSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    pub fn labels(&self) -> Vec<usize> {
        self.members.labels()
    }
}

/// Chains listed by ascending first vertex; each chain in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPartition {
    pub chains: Vec<Vec<usize>>,
}

impl ChainPartition {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Chains in 1-based labels.
    pub fn labels(&self) -> Vec<Vec<usize>> {
        self.chains
            .iter()
            .map(|c| c.iter().map(|v| v + 1).collect())
            .collect()
    }

    pub fn from_labels(chains: &[&[usize]]) -> Self {
        Self {
            chains: chains
                .iter()
                .map(|c| c.iter().map(|v| v - 1).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct WorkTable {
    labels: Vec<usize>,
    universe: usize,
    admissible: Vec<FixedBitSet>,
    choosable: Vec<FixedBitSet>,
    essential: Vec<FixedBitSet>,
    row_choice: Vec<Option<usize>>,
    col_choice: Vec<Option<usize>>,
    marks: Marks,
    optimized: bool,
    deficit: bool,
}

impl WorkTable {
    /// Table over the vertices of `c`, in ascending order.
    pub fn from_closure(c: &TransitiveClosure, policy: ChoicePolicy) -> Self {
        let labels = c.vertices().to_vec();
        let mut index = vec![usize::MAX; c.n()];
        for (k, &v) in labels.iter().enumerate() {
            index[v] = k;
        }
        let local = |row: &FixedBitSet| {
            let mut out = FixedBitSet::with_capacity(labels.len());
            for v in row.ones() {
                if index[v] != usize::MAX {
                    out.insert(index[v]);
                }
            }
            out
        };
        let admissible: Vec<FixedBitSet> = labels.iter().map(|&v| local(c.reach_row(v))).collect();
        let essential: Vec<FixedBitSet> =
            labels.iter().map(|&v| local(c.essential_row(v))).collect();
        let choosable = match policy {
            ChoicePolicy::AllComparable => admissible.clone(),
            ChoicePolicy::EssentialOnly => essential.clone(),
        };
        Self::assemble(labels, c.n(), admissible, choosable, essential)
    }

    /// Table over `0..n` with the given admissible cells, all choosable.
    /// The cells are taken as given (no closure is formed).
    pub fn from_cells(n: usize, cells: &[(usize, usize)]) -> Self {
        let mut admissible = vec![FixedBitSet::with_capacity(n); n];
        for &(i, j) in cells {
            admissible[i].insert(j);
        }
        Self::assemble(
            (0..n).collect(),
            n,
            admissible.clone(),
            admissible.clone(),
            admissible,
        )
    }

    fn assemble(
        labels: Vec<usize>,
        universe: usize,
        admissible: Vec<FixedBitSet>,
        choosable: Vec<FixedBitSet>,
        essential: Vec<FixedBitSet>,
    ) -> Self {
        let n = labels.len();
        Self {
            labels,
            universe,
            admissible,
            choosable,
            essential,
            row_choice: vec![None; n],
            col_choice: vec![None; n],
            marks: Marks::new(n),
            optimized: false,
            deficit: false,
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    fn local(&self, v: usize) -> Result<usize, ChainError> {
        self.labels
            .binary_search(&v)
            .map_err(|_| ChainError::UnknownVertex(v))
    }

    fn vertex_set(&self, locals: impl Iterator<Item = usize>) -> VertexSet {
        VertexSet::from_members(self.universe, locals.map(|k| self.labels[k]))
    }

    fn choose(&mut self, i: usize, j: usize) {
        self.row_choice[i] = Some(j);
        self.col_choice[j] = Some(i);
    }

    /// Chosen cells as vertex pairs, by row.
    pub fn chosen_cells(&self) -> Vec<(usize, usize)> {
        self.row_choice
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|j| (self.labels[i], self.labels[j])))
            .collect()
    }

    pub fn matching_size(&self) -> usize {
        self.row_choice.iter().flatten().count()
    }

    pub fn closure_deficit(&self) -> bool {
        self.deficit
    }

    fn public_mark(&self, m: Option<Mark>) -> Option<Mark> {
        m.map(|m| match m {
            Mark::Star => Mark::Star,
            Mark::From(k) => Mark::From(self.labels[k]),
        })
    }

    pub fn row_mark(&self, v: usize) -> Option<Mark> {
        self.local(v)
            .ok()
            .and_then(|k| self.public_mark(self.marks.rows[k]))
    }

    pub fn col_mark(&self, v: usize) -> Option<Mark> {
        self.local(v)
            .ok()
            .and_then(|k| self.public_mark(self.marks.cols[k]))
    }

    /// `U_r`, the marked rows.
    pub fn marked_rows(&self) -> VertexSet {
        self.vertex_set((0..self.size()).filter(|&k| self.marks.rows[k].is_some()))
    }

    /// `U_c`, the marked columns.
    pub fn marked_cols(&self) -> VertexSet {
        self.vertex_set((0..self.size()).filter(|&k| self.marks.cols[k].is_some()))
    }

    /// Scans rows top to bottom and chooses, in each, the leftmost choosable
    /// cell whose column holds no chosen cell yet.
    pub fn initial_partition(&mut self) {
        for i in 0..self.size() {
            if self.row_choice[i].is_some() {
                continue;
            }
            let pick = self.choosable[i]
                .ones()
                .find(|&j| self.col_choice[j].is_none());
            if let Some(j) = pick {
                self.choose(i, j);
            }
        }
    }

    /// One marking cycle from `frontier`. Newly marked rows mark, left to
    /// right, every unmarked column holding an unchosen cell of theirs (the
    /// `seed` row also through its chosen cell); newly marked columns, in
    /// ascending order, mark the row of their chosen cell. Returns the first
    /// column reached that holds no chosen cell.
    fn propagate(
        &self,
        marks: &mut Marks,
        mut rows: Vec<usize>,
        via: Via,
        seed: Option<usize>,
    ) -> Option<usize> {
        while !rows.is_empty() {
            let mut new_cols = Vec::new();
            for &r in &rows {
                let mask = match via {
                    Via::Choosable => &self.choosable[r],
                    Via::Admissible => &self.admissible[r],
                };
                for c in mask.ones() {
                    if marks.cols[c].is_none()
                        && (self.row_choice[r] != Some(c) || seed == Some(r))
                    {
                        marks.cols[c] = Some(Mark::From(r));
                        new_cols.push(c);
                    }
                }
            }
            new_cols.sort_unstable();
            let mut new_rows = Vec::new();
            for c in new_cols {
                match self.col_choice[c] {
                    Some(r) => {
                        if marks.rows[r].is_none() {
                            marks.rows[r] = Some(Mark::From(c));
                            new_rows.push(r);
                        }
                    }
                    None => return Some(c),
                }
            }
            new_rows.sort_unstable();
            rows = new_rows;
        }
        None
    }

    fn star_free_rows(&self) -> (Marks, Vec<usize>) {
        let mut marks = Marks::new(self.size());
        let free: Vec<usize> = (0..self.size())
            .filter(|&i| self.row_choice[i].is_none())
            .collect();
        for &i in &free {
            marks.rows[i] = Some(Mark::Star);
        }
        (marks, free)
    }

    /// Rebuilds the chosen collection along the marks, ending at column `j`:
    /// choose `(m(j), j)`, then replace `(i, m(i))` by `(m(m(i)), m(i))`
    /// until a starred row is reached.
    fn augment(&mut self, marks: &Marks, mut j: usize) {
        loop {
            let i = match marks.cols[j] {
                Some(Mark::From(i)) => i,
                _ => unreachable!("breakthrough column is marked by a row"),
            };
            let next = match marks.rows[i] {
                Some(Mark::Star) => None,
                Some(Mark::From(c)) => Some(c),
                None => unreachable!("rows on an alternating path are marked"),
            };
            self.choose(i, j);
            match next {
                None => break,
                Some(c) => j = c,
            }
        }
    }

    /// Improves the chosen collection until no marking cycle reaches a free
    /// column, leaving the final marks in place.
    pub fn ff_optimize(&mut self) -> FfOutcome {
        loop {
            let (mut marks, free) = self.star_free_rows();
            match self.propagate(&mut marks, free, Via::Choosable, None) {
                Some(col) => self.augment(&marks, col),
                None => {
                    self.marks = marks;
                    break;
                }
            }
        }
        self.deficit = false;
        if self.choosable != self.admissible {
            let (mut marks, free) = self.star_free_rows();
            self.deficit = self
                .propagate(&mut marks, free, Via::Admissible, None)
                .is_some();
            self.marks = marks;
        }
        self.optimized = true;
        if self.deficit {
            FfOutcome::ClosureDeficit
        } else {
            FfOutcome::Maximum
        }
    }

    fn ready(&self) -> Result<(), ChainError> {
        if !self.optimized {
            return Err(ChainError::NotOptimized);
        }
        if self.deficit {
            return Err(ChainError::ClosureMatchingNotMaximum);
        }
        Ok(())
    }

    fn antichain_from(&self, marks: &Marks) -> VertexSet {
        self.vertex_set(
            (0..self.size()).filter(|&k| marks.rows[k].is_some() && marks.cols[k].is_none()),
        )
    }

    /// `U_r \ U_c` of the completed table: the maximum antichain preceded by
    /// every other maximum antichain.
    pub fn general_antichain(&self) -> Result<Antichain, ChainError> {
        self.ready()?;
        let members = self.antichain_from(&self.marks);
        debug_assert_eq!(members.len(), self.size() - self.matching_size());
        Ok(Antichain { members })
    }

    /// Maximum antichain through `v` that every other maximum antichain
    /// through `v` precedes, or `None` when no maximum antichain contains `v`.
    ///
    /// Row `v` is added to the starred rows of the completed table and one
    /// more marking cycle runs over the full closure.
    pub fn antichain_for_vertex(&self, v: usize) -> Result<Option<Antichain>, ChainError> {
        self.ready()?;
        let k = self.local(v)?;
        let mut marks = self.marks.clone();
        if marks.rows[k].is_none() {
            marks.rows[k] = Some(Mark::Star);
            if let Some(col) = self.propagate(&mut marks, vec![k], Via::Admissible, Some(k)) {
                return if self.path_root(&marks, col) == k {
                    Ok(None)
                } else {
                    Err(ChainError::ClosureMatchingNotMaximum)
                };
            }
        }
        if marks.cols[k].is_some() {
            return Ok(None);
        }
        Ok(Some(Antichain {
            members: self.antichain_from(&marks),
        }))
    }

    /// Starred row at the origin of the alternating path ending at column `j`.
    fn path_root(&self, marks: &Marks, mut j: usize) -> usize {
        loop {
            let Some(Mark::From(i)) = marks.cols[j] else {
                unreachable!("marked column has a row source")
            };
            match marks.rows[i] {
                Some(Mark::From(c)) => j = c,
                _ => return i,
            }
        }
    }

    /// Follows chosen cells as successor links from every column that holds
    /// no chosen cell.
    pub fn chains(&self) -> Result<ChainPartition, ChainError> {
        let n = self.size();
        let mut chains = Vec::new();
        let mut visited = 0;
        for start in (0..n).filter(|&k| self.col_choice[k].is_none()) {
            let mut chain = vec![self.labels[start]];
            let mut cur = start;
            visited += 1;
            while let Some(next) = self.row_choice[cur] {
                chain.push(self.labels[next]);
                cur = next;
                visited += 1;
                if visited > n {
                    return Err(ChainError::ChosenCycle);
                }
            }
            chains.push(chain);
        }
        if visited != n {
            return Err(ChainError::ChosenCycle);
        }
        Ok(ChainPartition { chains })
    }

    /// Matrix dump: `(1)` chosen, `1` essential, `f` fictitious, `.` empty;
    /// row marks in the right margin, column marks in the bottom row.
    pub fn render(&self) -> String {
        let n = self.size();
        let w = self
            .labels
            .iter()
            .map(|v| (v + 1).to_string().len())
            .max()
            .unwrap_or(1)
            .max(3);
        let mark_str = |m: Option<Mark>| match m {
            None => String::new(),
            Some(Mark::Star) => "*".to_string(),
            Some(Mark::From(k)) => (self.labels[k] + 1).to_string(),
        };
        let mut out = String::new();
        let _ = write!(out, "{:>w$}", "");
        for &v in &self.labels {
            let _ = write!(out, " {:>w$}", v + 1);
        }
        out.push('\n');
        for i in 0..n {
            let _ = write!(out, "{:>w$}", self.labels[i] + 1);
            for j in 0..n {
                let cell = if self.row_choice[i] == Some(j) {
                    "(1)"
                } else if self.essential[i].contains(j) {
                    "1"
                } else if self.admissible[i].contains(j) {
                    "f"
                } else {
                    "."
                };
                let _ = write!(out, " {:>w$}", cell);
            }
            let m = mark_str(self.marks.rows[i]);
            if !m.is_empty() {
                let _ = write!(out, " {m}");
            }
            out.push('\n');
        }
        let _ = write!(out, "{:>w$}", "");
        for j in 0..n {
            let _ = write!(out, " {:>w$}", mark_str(self.marks.cols[j]));
        }
        out.push('\n');
        out
    }
}

/// Heads `j` of fictitious cells `(i, j)` whose endpoints share a chain.
pub fn marked_vertices(p: &ChainPartition, c: &TransitiveClosure) -> VertexSet {
    let mut out = VertexSet::empty(c.n());
    for chain in &p.chains {
        for (a, &i) in chain.iter().enumerate() {
            for &j in &chain[a + 1..] {
                if c.is_fictitious(i, j) {
                    out.insert(j);
                }
            }
        }
    }
    out
}

/// `u1 ≺ u2`: every `x ∈ u1 \ u2` lies below some `y ∈ u2 \ u1`.
pub fn precedes(u1: &Antichain, u2: &Antichain, c: &TransitiveClosure) -> bool {
    let only1 = u1.members().difference(u2.members());
    let only2 = u2.members().difference(u1.members());
    let ok = only1.iter().all(|x| only2.iter().any(|y| c.reaches(x, y)));
    ok
}

/// Clique-partition certificate: a maximum antichain that is a maximum
/// independent set, and chains that are cliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCertificate {
    pub mmis: VertexSet,
    pub cliques: Vec<Vec<usize>>,
}

/// When `p` has no marked vertices, every chain is a clique of `g` and the
/// maximum antichain of `c` is a maximum independent set of `g`.
pub fn clique_cover_check(
    p: &ChainPartition,
    c: &TransitiveClosure,
    g: &UndirectedGraph,
) -> Result<Option<CliqueCertificate>, ChainError> {
    if !marked_vertices(p, c).is_empty() {
        return Ok(None);
    }
    for chain in &p.chains {
        let clique = chain
            .iter()
            .enumerate()
            .all(|(a, &u)| chain[a + 1..].iter().all(|&v| g.has_edge(u, v)));
        if !clique {
            return Err(ChainError::ChainNotClique {
                chain: chain.iter().map(|v| v + 1).collect(),
            });
        }
    }
    let mut table = WorkTable::from_closure(c, ChoicePolicy::AllComparable);
    table.initial_partition();
    table.ff_optimize();
    let mmis = table.general_antichain()?.into_set();
    Ok(Some(CliqueCertificate {
        mmis,
        cliques: p.chains.clone(),
    }))
}

/// Initial partition + optimization in one call.
pub fn solve_table(c: &TransitiveClosure, policy: ChoicePolicy) -> (WorkTable, FfOutcome) {
    let mut t = WorkTable::from_closure(c, policy);
    t.initial_partition();
    let outcome = t.ff_optimize();
    (t, outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(n: usize, labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(n, labels.iter().copied())
    }

    fn p5_table() -> WorkTable {
        WorkTable::from_closure(&fixtures::p5().transitive_closure(), ChoicePolicy::AllComparable)
    }

    fn to_labels(cells: &[(usize, usize)]) -> Vec<(usize, usize)> {
        cells.iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    }

    #[test]
    fn initial_partition_cases() {
        let mut t = p5_table();
        t.initial_partition();
        assert_eq!(to_labels(&t.chosen_cells()), vec![(1, 2)]);

        let mut empty = WorkTable::from_cells(4, &[]);
        empty.initial_partition();
        assert!(empty.chosen_cells().is_empty());

        let mut tri = WorkTable::from_cells(3, &[(0, 1), (0, 2), (1, 2)]);
        tri.initial_partition();
        assert_eq!(to_labels(&tri.chosen_cells()), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn ff_on_p5_matches_worked_table() {
        let mut t = p5_table();
        t.initial_partition();
        assert_eq!(t.ff_optimize(), FfOutcome::Maximum);
        assert_eq!(to_labels(&t.chosen_cells()), vec![(1, 3), (4, 2)]);
        assert_eq!(t.marked_rows(), set(5, &[2, 3, 4, 5]));
        assert_eq!(t.marked_cols(), set(5, &[2]));
        assert_eq!(t.row_mark(3), Some(Mark::From(1)));
        assert_eq!(t.col_mark(1), Some(Mark::From(4)));
        assert_eq!(t.general_antichain().unwrap().labels(), vec![3, 4, 5]);
        assert_eq!(t.chains().unwrap().labels(), vec![vec![1, 3], vec![4, 2], vec![5]]);
    }

    #[test]
    fn ff_on_d10_matches_worked_table() {
        let c = fixtures::d10().transitive_closure();
        let (t, outcome) = solve_table(&c, ChoicePolicy::EssentialOnly);
        assert_eq!(outcome, FfOutcome::Maximum);
        assert_eq!(
            to_labels(&t.chosen_cells()),
            vec![(1, 5), (2, 6), (3, 9), (4, 7), (6, 8), (9, 10)]
        );
        assert_eq!(t.general_antichain().unwrap().labels(), vec![5, 7, 8, 10]);
        assert!(t.marked_cols().is_empty());
        assert_eq!(
            t.chains().unwrap().labels(),
            vec![vec![1, 5], vec![2, 6, 8], vec![3, 9, 10], vec![4, 7]]
        );
    }

    #[test]
    fn empty_table_stars_every_row() {
        let mut t = WorkTable::from_cells(3, &[]);
        t.initial_partition();
        t.ff_optimize();
        assert!(t.chosen_cells().is_empty());
        assert!((0..3).all(|v| t.row_mark(v) == Some(Mark::Star)));
        assert_eq!(t.chains().unwrap().len(), 3);
        assert_eq!(t.general_antichain().unwrap().len(), 3);
    }

    #[test]
    fn single_vertex_poset() {
        let mut t = WorkTable::from_cells(1, &[]);
        t.initial_partition();
        t.ff_optimize();
        assert_eq!(t.general_antichain().unwrap().labels(), vec![1]);
    }

    #[test]
    fn per_vertex_antichains_on_d10() {
        let c = fixtures::d10().transitive_closure();
        let (t, _) = solve_table(&c, ChoicePolicy::EssentialOnly);
        let u = |v: usize| t.antichain_for_vertex(v - 1).unwrap().map(|a| a.labels());
        assert_eq!(u(1), Some(vec![1, 3, 4, 6]));
        assert_eq!(u(2), Some(vec![1, 2, 3, 4]));
        assert_eq!(u(3), Some(vec![3, 4, 5, 8]));
        assert_eq!(u(4), Some(vec![4, 5, 8, 9]));
        assert_eq!(u(6), Some(vec![3, 4, 5, 6]));
        for v in [5, 7, 8, 10] {
            assert_eq!(u(v), Some(vec![5, 7, 8, 10]));
        }
    }

    #[test]
    fn per_vertex_marks_match_worked_panel_b() {
        let c = fixtures::d10().transitive_closure();
        let (t, _) = solve_table(&c, ChoicePolicy::EssentialOnly);
        let mut marks = t.marks.clone();
        marks.rows[0] = Some(Mark::Star);
        assert_eq!(t.propagate(&mut marks, vec![0], Via::Admissible, Some(0)), None);
        let rows: Vec<Option<Mark>> = marks.rows.clone();
        let from = |l: usize| Some(Mark::From(l - 1));
        assert_eq!(
            rows,
            vec![
                Some(Mark::Star),
                None,
                from(9),
                from(7),
                Some(Mark::Star),
                from(8),
                Some(Mark::Star),
                Some(Mark::Star),
                from(10),
                Some(Mark::Star)
            ]
        );
        assert_eq!(
            marks.cols,
            vec![None, None, None, None, from(1), None, from(3), from(1), from(6), from(6)]
        );
    }

    #[test]
    fn p5_has_no_antichain_through_a1_or_a2() {
        let mut t = p5_table();
        t.initial_partition();
        t.ff_optimize();
        assert_eq!(t.antichain_for_vertex(0).unwrap(), None);
        assert_eq!(t.antichain_for_vertex(1).unwrap(), None);
        for v in [2, 3, 4] {
            assert_eq!(
                t.antichain_for_vertex(v).unwrap().unwrap().labels(),
                vec![3, 4, 5]
            );
        }
    }

    #[test]
    fn closure_deficit_is_reported() {
        // a→c, b→c, c→d, c→e: paths need 3, chains need 2
        let d = crate::dag::OrientedDag::from_digraph(5, &[(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap();
        let c = d.transitive_closure();
        let (t, outcome) = solve_table(&c, ChoicePolicy::EssentialOnly);
        assert_eq!(outcome, FfOutcome::ClosureDeficit);
        assert_eq!(t.matching_size(), 2);
        assert_eq!(t.general_antichain(), Err(ChainError::ClosureMatchingNotMaximum));
        let (full, outcome) = solve_table(&c, ChoicePolicy::AllComparable);
        assert_eq!(outcome, FfOutcome::Maximum);
        assert_eq!(full.chains().unwrap().len(), 2);
    }

    #[test]
    fn not_optimized_is_an_error() {
        let t = p5_table();
        assert_eq!(t.general_antichain(), Err(ChainError::NotOptimized));
    }

    #[test]
    fn marked_vertex_cases() {
        let c = fixtures::d10_saturated().transitive_closure();
        let p = ChainPartition::from_labels(&[&[1, 8, 6, 9], &[2, 5], &[3, 7], &[4, 10]]);
        assert_eq!(marked_vertices(&p, &c).labels(), vec![6, 9]);
        let singles = ChainPartition {
            chains: (0..10).map(|v| vec![v]).collect(),
        };
        assert!(marked_vertices(&singles, &c).is_empty());
        let c1 = fixtures::six_dag().transitive_closure();
        assert_eq!(
            marked_vertices(&ChainPartition::from_labels(&fixtures::SIX_P1), &c1).labels(),
            vec![5, 6]
        );
        assert!(marked_vertices(&ChainPartition::from_labels(&fixtures::SIX_P2), &c1).is_empty());
    }

    #[test]
    fn precedence_cases() {
        let c = fixtures::d10().transitive_closure();
        let a = |l: &[usize]| Antichain::new(set(10, l), &c).unwrap();
        let v0 = a(&[1, 2, 3, 4]);
        let general = a(&[5, 7, 8, 10]);
        assert!(precedes(&v0, &v0, &c));
        assert!(precedes(&v0, &general, &c));
        assert!(!precedes(&general, &v0, &c));
        let chain = crate::dag::OrientedDag::from_digraph(2, &[(0, 1)]).unwrap();
        let cc = chain.transitive_closure();
        let lo = Antichain::new(VertexSet::from_members(2, [0]), &cc).unwrap();
        let hi = Antichain::new(VertexSet::from_members(2, [1]), &cc).unwrap();
        assert!(precedes(&lo, &hi, &cc));
        assert!(!precedes(&hi, &lo, &cc));
    }

    #[test]
    fn clique_cover_cases() {
        let g = fixtures::six_graph();
        let c = fixtures::six_dag().transitive_closure();
        let cert = clique_cover_check(&ChainPartition::from_labels(&fixtures::SIX_P2), &c, &g)
            .unwrap()
            .unwrap();
        assert_eq!(cert.mmis.len(), 2);
        assert_eq!(cert.cliques.len(), 2);
        assert!(g.is_independent(&cert.mmis));
        assert_eq!(
            clique_cover_check(&ChainPartition::from_labels(&fixtures::SIX_P1), &c, &g).unwrap(),
            None
        );

        let cp = fixtures::d10_saturated().transitive_closure();
        let p = ChainPartition::from_labels(&[&[1, 8, 6, 9], &[2, 5], &[3, 7], &[4, 10]]);
        assert_eq!(clique_cover_check(&p, &cp, &fixtures::g10()).unwrap(), None);

        let single = crate::dag::OrientedDag::from_digraph(1, &[]).unwrap();
        let cert = clique_cover_check(
            &ChainPartition { chains: vec![vec![0]] },
            &single.transitive_closure(),
            single.base(),
        )
        .unwrap()
        .unwrap();
        assert_eq!(cert.mmis.labels(), vec![1]);
        assert_eq!(cert.cliques, vec![vec![0]]);
    }

    #[test]
    fn clique_cover_flags_non_clique_chain() {
        // a path-only jump inside a chain marks its head, so the check backs off
        let d = crate::dag::OrientedDag::from_digraph(3, &[(0, 1), (1, 2)]).unwrap();
        let c = d.transitive_closure();
        let p = ChainPartition { chains: vec![vec![0, 1, 2]] };
        assert_eq!(clique_cover_check(&p, &c, d.base()).unwrap(), None);

        // a "chain" of incomparable vertices has no marks but is no clique
        let d = crate::dag::OrientedDag::from_digraph(3, &[(0, 1)]).unwrap();
        let c = d.transitive_closure();
        let p = ChainPartition { chains: vec![vec![0, 1], vec![2]] };
        assert!(clique_cover_check(&p, &c, d.base()).is_ok());
        let p = ChainPartition { chains: vec![vec![0, 2], vec![1]] };
        assert_eq!(
            clique_cover_check(&p, &c, d.base()),
            Err(ChainError::ChainNotClique { chain: vec![1, 3] })
        );
    }

    #[test]
    fn render_shows_cells_and_marks() {
        let mut t = p5_table();
        t.initial_partition();
        t.ff_optimize();
        let text = t.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines[1].contains("(1)"));
        assert!(lines[2].trim_end().ends_with('*'));
        assert!(lines[4].trim_end().ends_with('2'));
    }
}
