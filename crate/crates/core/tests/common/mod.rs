#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;
use tuza_core::graph::{EdgeWeights, Graph};

/// Connected multigraph: a random spanning tree plus extra edges, some of them parallel.
pub fn random_connected_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(2..=max_vertices);
    let mut pairs = Vec::new();
    for v in 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    let extra = rng.gen_range(0..=max_edges.saturating_sub(pairs.len()));
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n);
        while v == u {
            v = rng.gen_range(0..n);
        }
        pairs.push((u, v));
    }
    pairs.shuffle(rng);
    Graph::from_pairs(n, &pairs).unwrap()
}

pub fn random_weights<R: Rng>(rng: &mut R, g: &Graph, max: u64) -> EdgeWeights {
    g.edge_ids().into_iter().map(|e| (e, rng.gen_range(0..=max))).collect()
}

/// Random linear 3-uniform hypergraph in which every non-isolated vertex has
/// degree at least two; isolated vertices are dropped.
pub fn random_min_degree_two_linear<R: Rng>(rng: &mut R) -> Vec<[usize; 3]> {
    loop {
        let n = rng.gen_range(6..=18);
        let target = rng.gen_range(n / 2..=2 * n);
        let mut edges: Vec<[usize; 3]> = Vec::new();
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for _ in 0..target * 4 {
            if edges.len() == target {
                break;
            }
            let mut e = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
            e.sort_unstable();
            if e[0] == e[1] || e[1] == e[2] {
                continue;
            }
            let ps = [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])];
            if ps.iter().any(|p| pairs.contains(p)) {
                continue;
            }
            pairs.extend(ps);
            edges.push(e);
        }
        // peel edges through degree-one vertices
        loop {
            let mut deg = vec![0usize; n];
            for e in &edges {
                for &v in e {
                    deg[v] += 1;
                }
            }
            let before = edges.len();
            edges.retain(|e| e.iter().all(|&v| deg[v] != 1));
            if edges.len() == before {
                break;
            }
        }
        if edges.is_empty() {
            continue;
        }
        let mut used: Vec<usize> = edges.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        return edges.into_iter().map(|e| e.map(|v| used.binary_search(&v).unwrap())).collect();
    }
}
