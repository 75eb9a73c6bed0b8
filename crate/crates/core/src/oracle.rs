//! Exponential ground truth for small instances: independence number,
//! maximum antichains and closure matchings.

use thiserror::Error;

use crate::chain::Antichain;
use crate::dag::TransitiveClosure;
use crate::graph::{UndirectedGraph, VertexSet};

pub const ALPHA_LIMIT: usize = 26;
pub const ANTICHAIN_LIMIT: usize = 16;
pub const ENUMERATE_LIMIT: usize = 12;
const SCAN_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },
}

fn check_limit(n: usize, limit: usize, hard: usize) -> Result<(), OracleError> {
    let limit = limit.min(hard);
    if n > limit {
        Err(OracleError::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

fn masks(g: &UndirectedGraph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u64, |m, u| m | 1 << u))
        .collect()
}

fn to_set(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_members(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

struct Search<'a> {
    adj: &'a [u64],
    best: u32,
    best_set: u64,
}

impl Search<'_> {
    fn run(&mut self, mut cand: u64, mut cur: u64) {
        // vertices with at most one neighbour left can always be taken
        loop {
            let mut forced = None;
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (self.adj[v] & cand).count_ones() <= 1 {
                    forced = Some(v);
                    break;
                }
            }
            match forced {
                Some(v) => {
                    cur |= 1 << v;
                    cand &= !(self.adj[v] | 1 << v);
                }
                None => break,
            }
        }
        let size = cur.count_ones();
        if cand == 0 {
            if size > self.best {
                self.best = size;
                self.best_set = cur;
            }
            return;
        }
        if size + cand.count_ones() <= self.best {
            return;
        }
        let mut v = 0;
        let mut deg = 0;
        let mut rest = cand;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[u] & cand).count_ones();
            if d > deg {
                deg = d;
                v = u;
            }
        }
        self.run(cand & !(self.adj[v] | 1 << v), cur | 1 << v);
        self.run(cand & !(1 << v), cur);
    }
}

fn greedy_lower_bound(adj: &[u64], n: usize) -> u64 {
    let mut cand: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut set = 0;
    while cand != 0 {
        let mut v = cand.trailing_zeros() as usize;
        let mut deg = u32::MAX;
        let mut rest = cand;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (adj[u] & cand).count_ones();
            if d < deg {
                deg = d;
                v = u;
            }
        }
        set |= 1 << v;
        cand &= !(adj[v] | 1 << v);
    }
    set
}

/// Exact `α(G)` with one maximum independent set, by branch and bound on the
/// highest-degree vertex.
pub fn brute_force_alpha(
    g: &UndirectedGraph,
    limit: usize,
) -> Result<(usize, VertexSet), OracleError> {
    let n = g.n();
    check_limit(n, limit, 63)?;
    let adj = masks(g);
    let seed = greedy_lower_bound(&adj, n);
    let mut search = Search {
        adj: &adj,
        best: seed.count_ones(),
        best_set: seed,
    };
    let all = if n == 0 { 0 } else { (1u64 << n) - 1 };
    search.run(all, 0);
    let witness = to_set(n, search.best_set);
    assert!(g.is_independent(&witness), "oracle witness is not independent");
    Ok((witness.len(), witness))
}

/// Plain scan over all `2^n` subsets; the cross-check for
/// [`brute_force_alpha`].
pub fn exhaustive_alpha(g: &UndirectedGraph) -> Result<usize, OracleError> {
    let n = g.n();
    check_limit(n, SCAN_LIMIT, SCAN_LIMIT)?;
    let adj = masks(g);
    let mut best = 0;
    for s in 0u64..1 << n {
        let ones = s.count_ones();
        if ones <= best {
            continue;
        }
        let mut rest = s;
        let mut ok = true;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            if adj[v as usize] & s != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            best = ones;
        }
    }
    Ok(best as usize)
}

/// Local comparability masks over the closure's vertices.
fn comparability(c: &TransitiveClosure) -> (Vec<usize>, Vec<u64>) {
    let verts = c.vertices().to_vec();
    let comp = verts
        .iter()
        .map(|&x| {
            verts
                .iter()
                .enumerate()
                .filter(|&(_, &y)| c.comparable(x, y))
                .fold(0u64, |m, (k, _)| m | 1 << k)
        })
        .collect();
    (verts, comp)
}

fn antichains_dfs(
    comp: &[u64],
    from: usize,
    cur: u64,
    allowed: u64,
    visit: &mut dyn FnMut(u64),
) {
    visit(cur);
    for k in from..comp.len() {
        if allowed >> k & 1 == 1 {
            antichains_dfs(comp, k + 1, cur | 1 << k, allowed & !comp[k] & !(1 << k), visit);
        }
    }
}

/// Size of a largest set of pairwise unreachable vertices.
pub fn brute_force_max_antichain(c: &TransitiveClosure, limit: usize) -> Result<usize, OracleError> {
    check_limit(c.vertices().len(), limit, 63)?;
    let (_, comp) = comparability(c);
    let mut best = 0;
    let all = (0..comp.len()).fold(0u64, |m, k| m | 1 << k);
    antichains_dfs(&comp, 0, 0, all, &mut |s| best = best.max(s.count_ones()));
    Ok(best as usize)
}

/// Every maximum antichain, in lexicographic order of member lists.
pub fn enumerate_max_antichains(
    c: &TransitiveClosure,
    limit: usize,
) -> Result<Vec<Antichain>, OracleError> {
    check_limit(c.vertices().len(), limit, 63)?;
    let (verts, comp) = comparability(c);
    let all = (0..comp.len()).fold(0u64, |m, k| m | 1 << k);
    let mut found: Vec<u64> = Vec::new();
    let mut best = 0;
    antichains_dfs(&comp, 0, 0, all, &mut |s| {
        let size = s.count_ones();
        if size > best {
            best = size;
            found.clear();
        }
        if size == best {
            found.push(s);
        }
    });
    let mut out: Vec<Antichain> = found
        .into_iter()
        .map(|s| {
            let members = VertexSet::from_members(
                c.n(),
                (0..verts.len()).filter(|&k| s >> k & 1 == 1).map(|k| verts[k]),
            );
            Antichain::new(members, c).expect("enumerated sets are antichains")
        })
        .collect();
    out.sort_by_key(|a| a.members().to_vec());
    out.dedup();
    Ok(out)
}

/// Maximum matching of the closure's bipartite (row, column) graph by
/// simple augmenting paths; equals `n` minus the minimum chain count.
pub fn closure_matching_size(c: &TransitiveClosure) -> usize {
    let verts = c.vertices().to_vec();
    let n = c.n();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn try_row(
        c: &TransitiveClosure,
        verts: &[usize],
        r: usize,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &col in verts {
            if c.reaches(r, col) && !seen[col] {
                seen[col] = true;
                if owner[col].is_none_or(|o| try_row(c, verts, o, seen, owner)) {
                    owner[col] = Some(r);
                    return true;
                }
            }
        }
        false
    }
    let mut size = 0;
    for &r in &verts {
        let mut seen = vec![false; n];
        if try_row(c, &verts, r, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}
