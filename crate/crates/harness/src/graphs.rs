//! Graph sources for cographic campaigns: isomorph-free simple graphs and
//! seeded random weighted multigraphs.

use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;
use tuza_core::graph::{EdgeWeights, Graph};

pub const MAX_ENUMERATION_VERTICES: usize = 8;

/// A simple graph on `n <= 8` vertices; bit `pair_index(i, j)` marks edge `ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SmallGraph {
    pub n: usize,
    pub mask: u32,
}

/// Position of the pair `i < j` in the order 01, 02, 12, 03, 13, 23, ...
pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    j * (j - 1) / 2 + i
}

impl SmallGraph {
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.mask >> pair_index(i, j) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn neighbours(&self, v: usize) -> u32 {
        (0..self.n).filter(|&u| u != v && self.has_edge(u, v)).fold(0, |a, u| a | 1 << u)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.neighbours(v) & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen.count_ones() as usize == self.n
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_pairs(self.n, &self.pairs()).expect("simple graph is valid")
    }

    /// Least relabelled mask over orderings that sort vertices by an
    /// isomorphism invariant (degree, then neighbour degrees).
    pub fn canonical(&self) -> SmallGraph {
        let n = self.n;
        let deg: Vec<u32> = (0..n).map(|v| self.neighbours(v).count_ones()).collect();
        let inv: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nd: Vec<u32> = (0..n).filter(|&u| u != v && self.has_edge(u, v)).map(|u| deg[u]).collect();
                nd.sort_unstable();
                (deg[v], nd)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
        // positions `cells[p].0..cells[p].1` share the invariant of position p
        let mut cells = vec![(0, 0); n];
        for p in 0..n {
            let start = if p > 0 && inv[order[p]] == inv[order[p - 1]] { cells[p - 1].0 } else { p };
            let end = (p..n).take_while(|&q| inv[order[q]] == inv[order[p]]).last().unwrap_or(p) + 1;
            cells[p] = (start, end);
        }
        let mut best = u32::MAX;
        let mut label = vec![usize::MAX; n];
        self.place(0, &order, &cells, &mut label, &mut best);
        SmallGraph { n, mask: best }
    }

    fn place(&self, pos: usize, order: &[usize], cells: &[(usize, usize)], label: &mut [usize], best: &mut u32) {
        if pos == self.n {
            let mut mask = 0u32;
            for (i, j) in self.pairs() {
                mask |= 1 << pair_index(label[i], label[j]);
            }
            *best = (*best).min(mask);
            return;
        }
        let (start, end) = cells[pos];
        for &v in &order[start..end] {
            if label[v] == usize::MAX {
                label[v] = pos;
                self.place(pos + 1, order, cells, label, best);
                label[v] = usize::MAX;
            }
        }
    }
}

/// All graphs on exactly `n` vertices up to isomorphism, by edge augmentation.
pub fn all_graphs(n: usize) -> Vec<SmallGraph> {
    assert!(n <= MAX_ENUMERATION_VERTICES, "enumeration supports at most {MAX_ENUMERATION_VERTICES} vertices");
    let slots = n * n.saturating_sub(1) / 2;
    let mut level: BTreeSet<SmallGraph> = BTreeSet::from([SmallGraph { n, mask: 0 }]);
    let mut all: Vec<SmallGraph> = level.iter().copied().collect();
    for _ in 0..slots {
        let mut next = BTreeSet::new();
        for g in &level {
            for b in 0..slots {
                if g.mask >> b & 1 == 0 {
                    next.insert(SmallGraph { n, mask: g.mask | 1 << b }.canonical());
                }
            }
        }
        all.extend(next.iter().copied());
        level = next;
    }
    all
}

/// Connected graphs on `1..=max_vertices` vertices up to isomorphism, ordered
/// by vertex count, then edge count, then mask.
pub fn connected_graphs(max_vertices: usize) -> Vec<SmallGraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let mut graphs: Vec<SmallGraph> = all_graphs(n).into_iter().filter(SmallGraph::is_connected).collect();
        graphs.sort_by_key(|g| (g.edge_count(), g.mask));
        out.extend(graphs);
    }
    out
}

/// Connected multigraph on `2..=max_vertices` vertices: a random spanning tree
/// plus up to `max_edges` edges in total, parallels allowed.
pub fn random_connected_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let extra = rng.gen_range(0..=max_edges.saturating_sub(pairs.len()));
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = (u + rng.gen_range(1..n)) % n;
        pairs.push((u, v));
    }
    pairs.shuffle(rng);
    Graph::from_pairs(n, &pairs).expect("random graph is valid")
}

pub fn random_weights<R: Rng>(rng: &mut R, g: &Graph, max: u64) -> EdgeWeights {
    g.edge_ids().into_iter().map(|e| (e, rng.gen_range(0..=max))).collect()
}
