//! The 3-uniform hypergraph of triangles, with linear cycles and crowns.
//!
//! Vertices are indices `0..n` carrying a `u32` label (a point mask for
//! matroids, an edge id for graphs). Two distinct triangles of a simple
//! binary matroid share at most one point, so hypergraphs built from a
//! matroid are always linear.

use crate::error::{Error, Result};
use crate::matroid::BinaryMatroid;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleHypergraph {
    labels: Vec<u32>,
    edges: Vec<[usize; 3]>,
    incidence: Vec<Vec<usize>>,
    linear: bool,
}

impl TriangleHypergraph {
    /// Vertices `0..vertex_count` labelled by their index.
    pub fn new(vertex_count: usize, edges: Vec<[usize; 3]>) -> Result<Self> {
        Self::with_labels((0..vertex_count as u32).collect(), edges)
    }

    pub fn with_labels(labels: Vec<u32>, edges: Vec<[usize; 3]>) -> Result<Self> {
        let n = labels.len();
        let mut incidence = vec![Vec::new(); n];
        let mut sorted_edges = Vec::with_capacity(edges.len());
        for (i, e) in edges.into_iter().enumerate() {
            let mut e = e;
            e.sort_unstable();
            if e[2] >= n || e[0] == e[1] || e[1] == e[2] {
                return Err(Error::Invalid(format!("hyperedge {i} is not a 3-set of vertices: {e:?}")));
            }
            for &v in &e {
                incidence[v].push(i);
            }
            sorted_edges.push(e);
        }
        let mut seen = sorted_edges.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("repeated hyperedge".into()));
        }
        let linear = (0..sorted_edges.len()).all(|i| {
            (i + 1..sorted_edges.len()).all(|j| shared(&sorted_edges[i], &sorted_edges[j]) <= 1)
        });
        Ok(TriangleHypergraph { labels, edges: sorted_edges, incidence, linear })
    }

    /// Vertices are the points of `E`, hyperedges its triangles.
    pub fn from_matroid(m: &BinaryMatroid) -> Self {
        let edges = m
            .triangles()
            .iter()
            .map(|t| t.points().map(|p| m.index_of(p).expect("triangle points lie in E")))
            .collect();
        Self::with_labels(m.points().to_vec(), edges).expect("triangles of a simple matroid form a linear hypergraph")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> [usize; 3] {
        self.edges[i]
    }

    /// Hyperedges through vertex `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    /// Degrees keyed by vertex label.
    pub fn degree_map(&self) -> BTreeMap<u32, usize> {
        self.labels.iter().copied().zip(self.degrees()).collect()
    }

    /// Finds a linear cycle if one exists.
    ///
    /// When every non-isolated vertex has degree at least two, the cycle is
    /// built the classical way: grow a linear path until no edge can be put
    /// in front of it, leave the front edge through a vertex `v` not shared
    /// with the second edge, and close at the first later edge the new edge
    /// meets. Otherwise a shortest cycle of the vertex/edge incidence graph
    /// is used, which is always a linear cycle in a linear hypergraph.
    pub fn find_linear_cycle(&self) -> Option<LinearCycle> {
        if self.edges.is_empty() {
            return None;
        }
        let cycle = if !self.linear {
            self.linear_cycle_exhaustive()
        } else if self.incidence.iter().all(|inc| inc.len() != 1) {
            Some(self.linear_cycle_from_maximal_path(0))
        } else {
            self.shortest_incidence_cycle()
        };
        debug_assert!(cycle.as_ref().is_none_or(|c| c.is_valid(self)));
        cycle
    }

    fn linear_cycle_from_maximal_path(&self, start: usize) -> LinearCycle {
        let mut path: VecDeque<usize> = VecDeque::from([start]);
        let mut on_path = vec![0u8; self.vertex_count()];
        for &v in &self.edges[start] {
            on_path[v] += 1;
        }
        'grow: loop {
            let front = path[0];
            for v in self.front_vertices(&path) {
                for &cand in &self.incidence[v] {
                    if cand == front || path.contains(&cand) {
                        continue;
                    }
                    // cand meets the path only at v
                    if self.edges[cand].iter().all(|&u| u == v || on_path[u] == 0) {
                        for &u in &self.edges[cand] {
                            on_path[u] += 1;
                        }
                        path.push_front(cand);
                        continue 'grow;
                    }
                }
            }
            break;
        }
        // path is maximal at the front: any other edge through v meets a later edge
        let v = self.front_vertices(&path)[0];
        let front = path[0];
        let closing = self.incidence[v]
            .iter()
            .copied()
            .find(|&e| e != front)
            .expect("front vertex has degree at least two");
        let j = (1..path.len())
            .find(|&j| shared(&self.edges[closing], &self.edges[path[j]]) > 0)
            .expect("maximal path forces the closing edge to meet a later edge");
        let mut edges = vec![closing];
        edges.extend(path.iter().take(j + 1));
        LinearCycle { edges }
    }

    /// Vertices of the front edge not shared with the second edge.
    fn front_vertices(&self, path: &VecDeque<usize>) -> Vec<usize> {
        let front = &self.edges[path[0]];
        match path.get(1) {
            None => front.to_vec(),
            Some(&second) => front.iter().copied().filter(|v| !self.edges[second].contains(v)).collect(),
        }
    }

    /// Shortest cycle in the bipartite incidence graph, as a hyperedge sequence.
    fn shortest_incidence_cycle(&self) -> Option<LinearCycle> {
        let nv = self.vertex_count();
        let total = nv + self.edges.len();
        // incidence graph nodes: vertices 0..nv, hyperedges nv..
        let neighbours = |x: usize| -> Vec<usize> {
            if x < nv {
                self.incidence[x].iter().map(|&e| nv + e).collect()
            } else {
                self.edges[x - nv].to_vec()
            }
        };
        let mut best: Option<Vec<usize>> = None;
        for root in nv..total {
            let mut dist = vec![usize::MAX; total];
            let mut parent = vec![usize::MAX; total];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            'bfs: while let Some(x) = queue.pop_front() {
                for y in neighbours(x) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y && y != x {
                        let len = dist[x] + dist[y] + 1;
                        if best.as_ref().is_some_and(|b| b.len() <= len) {
                            break 'bfs;
                        }
                        let up = |mut z: usize| {
                            let mut p = vec![z];
                            while z != root {
                                z = parent[z];
                                p.push(z);
                            }
                            p
                        };
                        let a = up(x);
                        let b = up(y);
                        let a_set: std::collections::HashSet<usize> = a[..a.len() - 1].iter().copied().collect();
                        if b[..b.len() - 1].iter().any(|z| a_set.contains(z)) {
                            continue;
                        }
                        // cycle: root .. x, y .. root
                        let mut cyc: Vec<usize> = a.into_iter().rev().collect();
                        cyc.extend(b.into_iter().take_while(|&z| z != root));
                        best = Some(cyc);
                        break 'bfs;
                    }
                }
            }
        }
        let cyc = best?;
        let edges: Vec<usize> = cyc.into_iter().filter(|&z| z >= nv).map(|z| z - nv).collect();
        let c = LinearCycle { edges };
        c.is_valid(self).then_some(c)
    }

    /// Depth-first search over hyperedge sequences; only used for non-linear inputs.
    fn linear_cycle_exhaustive(&self) -> Option<LinearCycle> {
        fn extend(h: &TriangleHypergraph, path: &mut Vec<usize>) -> Option<LinearCycle> {
            if path.len() >= 3 {
                let c = LinearCycle { edges: path.clone() };
                if c.is_valid(h) {
                    return Some(c);
                }
            }
            let last = *path.last()?;
            for &v in &h.edges[last] {
                for &next in &h.incidence[v] {
                    if next <= path[0] || path.contains(&next) {
                        continue;
                    }
                    path.push(next);
                    let open = LinearCycle { edges: path.clone() };
                    if open.is_linear_path(h) {
                        if let Some(c) = extend(h, path) {
                            return Some(c);
                        }
                    }
                    path.pop();
                }
            }
            None
        }
        (0..self.edges.len()).find_map(|s| extend(self, &mut vec![s]))
    }

    /// Finds a crown: a linear cycle whose shared vertices all have degree exactly two.
    ///
    /// Crowns correspond to cycles in the graph whose nodes are hyperedges and
    /// whose links are degree-two vertices; the search walks those cycles
    /// depth-first from each starting hyperedge and returns the first one
    /// whose third vertices are pairwise distinct.
    pub fn find_crown(&self) -> Option<Crown> {
        let m = self.edges.len();
        let mut links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
        for (v, inc) in self.incidence.iter().enumerate() {
            if let [a, b] = inc[..] {
                links[a].push((b, v));
                links[b].push((a, v));
            }
        }
        for start in 0..m {
            let mut nodes = vec![start];
            let mut spines = Vec::new();
            if let Some(c) = self.crown_dfs(&links, &mut nodes, &mut spines) {
                return Some(c);
            }
        }
        None
    }

    fn crown_dfs(
        &self,
        links: &[Vec<(usize, usize)>],
        nodes: &mut Vec<usize>,
        spines: &mut Vec<usize>,
    ) -> Option<Crown> {
        let start = nodes[0];
        let here = *nodes.last().expect("path is never empty");
        for &(next, v) in &links[here] {
            if spines.contains(&v) {
                continue;
            }
            if next == start && nodes.len() >= 2 {
                // spine e_1 closes the cycle; hyperedge i holds e_i and e_{i+1}
                let mut spine = vec![v];
                spine.extend(spines.iter().copied());
                if let Some(c) = Crown::from_cycle(self, nodes, &spine) {
                    return Some(c);
                }
                continue;
            }
            if next <= start || nodes.contains(&next) {
                continue;
            }
            nodes.push(next);
            spines.push(v);
            if let Some(c) = self.crown_dfs(links, nodes, spines) {
                return Some(c);
            }
            nodes.pop();
            spines.pop();
        }
        None
    }
}

fn shared(a: &[usize; 3], b: &[usize; 3]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

/// A cyclic sequence of hyperedges: consecutive ones share exactly one vertex,
/// the shared vertices are distinct and non-consecutive hyperedges are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCycle {
    pub edges: Vec<usize>,
}

impl LinearCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_valid(&self, h: &TriangleHypergraph) -> bool {
        let k = self.edges.len();
        if k < 3 || self.edges.iter().any(|&e| e >= h.edges.len()) {
            return false;
        }
        let mut sharing = Vec::with_capacity(k);
        for i in 0..k {
            for j in i + 1..k {
                let s = shared(&h.edges[self.edges[i]], &h.edges[self.edges[j]]);
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if consecutive != (s == 1) || s > 1 {
                    return false;
                }
            }
            let a = &h.edges[self.edges[i]];
            let b = &h.edges[self.edges[(i + 1) % k]];
            sharing.push(*a.iter().find(|v| b.contains(v)).expect("checked above"));
        }
        sharing.sort_unstable();
        sharing.windows(2).all(|w| w[0] != w[1])
    }

    fn is_linear_path(&self, h: &TriangleHypergraph) -> bool {
        let k = self.edges.len();
        let mut sharing = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let s = shared(&h.edges[self.edges[i]], &h.edges[self.edges[j]]);
                if (j == i + 1) != (s == 1) || s > 1 {
                    return false;
                }
            }
            if i + 1 < k {
                let a = &h.edges[self.edges[i]];
                let b = &h.edges[self.edges[i + 1]];
                sharing.push(*a.iter().find(|v| b.contains(v)).expect("checked above"));
            }
        }
        sharing.sort_unstable();
        sharing.windows(2).all(|w| w[0] != w[1])
    }
}

/// A crown of size `k`: hyperedges `{e_i, f_i, e_{i+1}}` (indices mod `k`)
/// on `2k` distinct vertices, where each spine vertex `e_i` lies in no other
/// hyperedge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crown {
    pub spine: Vec<usize>,
    pub jewels: Vec<usize>,
    /// Hyperedge `i` is `{spine[i], jewels[i], spine[i + 1]}`.
    pub edges: Vec<usize>,
}

impl Crown {
    /// Builds from hyperedge indices and the spine vertices, `spine[i]` shared by
    /// `edges[i - 1]` and `edges[i]`.
    pub fn from_cycle(h: &TriangleHypergraph, edges: &[usize], spine: &[usize]) -> Option<Crown> {
        let k = edges.len();
        if spine.len() != k {
            return None;
        }
        let mut jewels = Vec::with_capacity(k);
        for i in 0..k {
            let e = h.edges.get(edges[i])?;
            let (a, b) = (spine[i], spine[(i + 1) % k]);
            let rest: Vec<usize> = e.iter().copied().filter(|&v| v != a && v != b).collect();
            if rest.len() != 1 {
                return None;
            }
            jewels.push(rest[0]);
        }
        let c = Crown { spine: spine.to_vec(), jewels, edges: edges.to_vec() };
        c.is_valid(h).then_some(c)
    }

    pub fn size(&self) -> usize {
        self.spine.len()
    }

    pub fn is_valid(&self, h: &TriangleHypergraph) -> bool {
        let k = self.spine.len();
        if k < 2 || self.jewels.len() != k || self.edges.len() != k {
            return false;
        }
        let mut all: Vec<usize> = self.spine.iter().chain(&self.jewels).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) || all.last().is_some_and(|&v| v >= h.vertex_count()) {
            return false;
        }
        for i in 0..k {
            let Some(e) = h.edges.get(self.edges[i]) else {
                return false;
            };
            let mut want = [self.spine[i], self.jewels[i], self.spine[(i + 1) % k]];
            want.sort_unstable();
            if *e != want {
                return false;
            }
        }
        self.spine.iter().all(|&s| h.degree(s) == 2)
    }
}
