#![allow(dead_code)]

use mislab::dag::{initial_layering, orient_by_layering};
use mislab::{random_gnp, OrientedDag, UndirectedGraph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// G(n, p) oriented along a seeded random vertex order.
pub fn random_dag(n: usize, p: f64, seed: u64) -> OrientedDag {
    let g = random_gnp(n, p, seed).unwrap();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9));
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let arcs: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| if pos[u] < pos[v] { (u, v) } else { (v, u) })
        .collect();
    OrientedDag::from_arcs(&g, &VertexSet::full(n), &arcs).unwrap()
}

pub fn layered(g: &UndirectedGraph) -> OrientedDag {
    orient_by_layering(g, &initial_layering(g)).unwrap()
}

/// A random independent set of `d`'s vertices.
pub fn random_independent(d: &OrientedDag, seed: u64) -> VertexSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = VertexSet::empty(d.base().n());
    for v in d.vertices().iter() {
        if rng.gen_bool(0.4) && w.iter().all(|u| !d.base().has_edge(u, v)) {
            w.insert(v);
        }
    }
    w
}
