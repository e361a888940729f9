//! Multigraphs with stable edge ids, their cycle and cocycle matroids, and triads.
//!
//! A triad is a bond (minimal edge cut) with exactly three edges; the triads
//! of `G` are precisely the triangles of the cocycle matroid `M*(G)`.

use crate::error::{Error, Result};
use crate::matroid::BinaryMatroid;
use crate::projective::check_dim;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub type EdgeId = u32;

/// Edge weights keyed by edge id.
pub type EdgeWeights = BTreeMap<EdgeId, u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// An undirected multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertex_count: usize,
    /// Sorted by id.
    edges: Vec<Edge>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (EdgeId, usize, usize)>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(id, u, v)| Edge { id, u, v }).collect();
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::Invalid(format!("duplicate edge id {}", w[0].id)));
            }
        }
        if let Some(e) = edges.iter().find(|e| e.u >= vertex_count || e.v >= vertex_count) {
            return Err(Error::Invalid(format!("edge {} has an endpoint outside 0..{vertex_count}", e.id)));
        }
        Ok(Graph { vertex_count, edges })
    }

    /// Edges numbered `0..` in the order given.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(vertex_count, pairs.iter().enumerate().map(|(i, &(u, v))| (i as EdgeId, u, v)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn edge(&self, id: EdgeId) -> Option<Edge> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok().map(|i| self.edges[i])
    }

    pub fn has_edge(&self, id: EdgeId) -> bool {
        self.edge(id).is_some()
    }

    /// Ids of non-loop edges at `v`, in increasing order.
    pub fn star(&self, v: usize) -> Vec<EdgeId> {
        self.edges.iter().filter(|e| !e.is_loop() && (e.u == v || e.v == v)).map(|e| e.id).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.u == v) as usize + (e.v == v) as usize).sum()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.u].push((e.v, e.id));
            if !e.is_loop() {
                adj[e.v].push((e.u, e.id));
            }
        }
        adj
    }

    /// Component label of each vertex with the edges in `removed` deleted, and the count.
    pub fn components_without(&self, removed: &[EdgeId]) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.vertex_count);
        let mut count = self.vertex_count;
        for e in &self.edges {
            if !removed.contains(&e.id) && uf.union(e.u, e.v) {
                count -= 1;
            }
        }
        let labels = (0..self.vertex_count).map(|v| uf.find(v)).collect();
        (count, labels)
    }

    pub fn component_count(&self) -> usize {
        self.components_without(&[]).0
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Contracts edge `id`; a loop is simply deleted. The merged vertex keeps the
    /// smaller label and higher labels shift down by one.
    pub fn contract(&self, id: EdgeId) -> Result<Graph> {
        let e = self.edge(id).ok_or_else(|| Error::Invalid(format!("no edge {id}")))?;
        if e.is_loop() {
            return self.delete(id);
        }
        let (keep, gone) = (e.u.min(e.v), e.u.max(e.v));
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .filter(|f| f.id != id)
            .map(|f| Edge { id: f.id, u: relabel(f.u), v: relabel(f.v) })
            .collect();
        Ok(Graph { vertex_count: self.vertex_count - 1, edges })
    }

    pub fn delete(&self, id: EdgeId) -> Result<Graph> {
        if !self.has_edge(id) {
            return Err(Error::Invalid(format!("no edge {id}")));
        }
        let edges = self.edges.iter().copied().filter(|f| f.id != id).collect();
        Ok(Graph { vertex_count: self.vertex_count, edges })
    }

    /// Subgraph on `vertices` (relabelled `0..` in the given order) with the listed edges.
    pub fn subgraph(&self, vertices: &[usize], edge_ids: &[EdgeId]) -> Result<Graph> {
        let mut index = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            index.insert(v, i);
        }
        let mut edges = Vec::with_capacity(edge_ids.len());
        for &id in edge_ids {
            let e = self.edge(id).ok_or_else(|| Error::Invalid(format!("no edge {id}")))?;
            match (index.get(&e.u), index.get(&e.v)) {
                (Some(&u), Some(&v)) => edges.push(Edge { id, u, v }),
                _ => return Err(Error::Invalid(format!("edge {id} leaves the vertex set"))),
            }
        }
        edges.sort_unstable();
        Ok(Graph { vertex_count: vertices.len(), edges })
    }

    /// Subgraph spanned by the given edges, vertices in increasing original order.
    pub fn edge_induced(&self, edge_ids: &[EdgeId]) -> Result<Graph> {
        let mut vs = BTreeSet::new();
        for &id in edge_ids {
            let e = self.edge(id).ok_or_else(|| Error::Invalid(format!("no edge {id}")))?;
            vs.insert(e.u);
            vs.insert(e.v);
        }
        self.subgraph(&vs.into_iter().collect::<Vec<_>>(), edge_ids)
    }

    /// If `cut` is a bond, the two vertex sides it separates (the side holding
    /// the smaller vertex first).
    pub fn bond_sides(&self, cut: &[EdgeId]) -> Option<(Vec<usize>, Vec<usize>)> {
        if cut.is_empty() {
            return None;
        }
        let (before, _) = self.components_without(&[]);
        let (after, labels) = self.components_without(cut);
        if after != before + 1 {
            return None;
        }
        let mut sides = BTreeSet::new();
        for &id in cut {
            let e = self.edge(id)?;
            let (a, b) = (labels[e.u], labels[e.v]);
            if a == b {
                return None;
            }
            sides.insert(a);
            sides.insert(b);
        }
        if sides.len() != 2 {
            return None;
        }
        let mut it = sides.into_iter();
        let (a, b) = (it.next()?, it.next()?);
        let side = |c: usize| (0..self.vertex_count).filter(|&v| labels[v] == c).collect::<Vec<_>>();
        let (sa, sb) = (side(a), side(b));
        if sa[0] < sb[0] {
            Some((sa, sb))
        } else {
            Some((sb, sa))
        }
    }

    pub fn is_bond(&self, cut: &[EdgeId]) -> bool {
        let mut c = cut.to_vec();
        c.sort_unstable();
        c.dedup();
        c.len() == cut.len() && self.bond_sides(cut).is_some()
    }

    /// All bonds with exactly three edges, in lexicographic order of edge ids.
    pub fn triads(&self) -> Vec<Bond> {
        let cand: Vec<EdgeId> = self.edges.iter().filter(|e| !e.is_loop()).map(|e| e.id).collect();
        let (base, _) = self.components_without(&[]);
        let mut out = Vec::new();
        for i in 0..cand.len() {
            for j in i + 1..cand.len() {
                // a bond never contains a smaller cut
                if self.components_without(&[cand[i], cand[j]]).0 > base {
                    continue;
                }
                for k in j + 1..cand.len() {
                    let cut = [cand[i], cand[j], cand[k]];
                    if let Some((a, b)) = self.bond_sides(&cut) {
                        out.push(Bond { edges: cut, side_a: a, side_b: b });
                    }
                }
            }
        }
        out
    }

    /// Edge-id triples of all triads.
    pub fn triad_sets(&self) -> Vec<[EdgeId; 3]> {
        self.triads().into_iter().map(|b| b.edges).collect()
    }

    /// Blocks (maximal 2-connected pieces, bridges, loops) with original edge ids.
    ///
    /// Each block is relabelled onto its own vertices; blocks come in order of
    /// their smallest edge id.
    pub fn blocks(&self) -> Vec<Graph> {
        let adj = self.adjacency();
        let n = self.vertex_count;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut stack: Vec<EdgeId> = Vec::new();
        let mut groups: Vec<Vec<EdgeId>> = Vec::new();

        for e in self.edges.iter().filter(|e| e.is_loop()) {
            groups.push(vec![e.id]);
        }
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            // frames: (vertex, parent edge, next adjacency index)
            let mut frames: Vec<(usize, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            while let Some(&mut (v, pe, ref mut idx)) = frames.last_mut() {
                if *idx < adj[v].len() {
                    let (w, id) = adj[v][*idx];
                    *idx += 1;
                    if Some(id) == pe || w == v {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        stack.push(id);
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        frames.push((w, Some(id), 0));
                    } else if disc[w] < disc[v] {
                        stack.push(id);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    frames.pop();
                    if let Some(&(parent, _, _)) = frames.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] >= disc[parent] {
                            let pe = pe.expect("non-root frame has a parent edge");
                            let mut group = Vec::new();
                            while let Some(id) = stack.pop() {
                                group.push(id);
                                if id == pe {
                                    break;
                                }
                            }
                            groups.push(group);
                        }
                    }
                }
            }
        }
        for g in groups.iter_mut() {
            g.sort_unstable();
        }
        groups.sort_unstable();
        groups
            .iter()
            .map(|g| self.edge_induced(g).expect("block edges belong to the graph"))
            .collect()
    }

    /// The two sides of `G - T` for a bond `T` of a connected graph, smaller
    /// edge count first; ties go to the side holding the smallest edge id, then
    /// the smallest vertex.
    pub fn components_after_removal(&self, cut: &[EdgeId]) -> Result<(Side, Side)> {
        if !self.is_connected() {
            return Err(Error::Precondition("graph must be connected".into()));
        }
        let (va, vb) = self.bond_sides(cut).ok_or_else(|| Error::NotABond(cut.to_vec()))?;
        let side = |vs: Vec<usize>| {
            let set: BTreeSet<usize> = vs.iter().copied().collect();
            let edges = self
                .edges
                .iter()
                .filter(|e| !cut.contains(&e.id) && set.contains(&e.u))
                .map(|e| e.id)
                .collect();
            Side { vertices: vs, edges }
        };
        let (a, b) = (side(va), side(vb));
        let key = |s: &Side| (s.edges.len(), s.edges.first().copied().unwrap_or(EdgeId::MAX), s.vertices[0]);
        if key(&a) <= key(&b) {
            Ok((a, b))
        } else {
            Ok((b, a))
        }
    }

    /// A shortest cycle as (vertices in order, edge ids in order).
    ///
    /// Roots are scanned in increasing order and neighbours in edge-id order,
    /// so ties resolve deterministically. Loops count as cycles of length one.
    pub fn shortest_cycle(&self) -> Option<(Vec<usize>, Vec<EdgeId>)> {
        if let Some(l) = self.edges.iter().find(|e| e.is_loop()) {
            return Some((vec![l.u], vec![l.id]));
        }
        let adj = self.adjacency();
        let mut best: Option<(Vec<usize>, Vec<EdgeId>)> = None;
        for root in 0..self.vertex_count {
            let mut dist = vec![usize::MAX; self.vertex_count];
            let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; self.vertex_count];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            'bfs: while let Some(x) = queue.pop_front() {
                for &(y, id) in &adj[x] {
                    if parent[x].map(|p| p.1) == Some(id) {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = Some((x, id));
                        queue.push_back(y);
                        continue;
                    }
                    let len = dist[x] + dist[y] + 1;
                    if best.as_ref().is_some_and(|b| b.1.len() <= len) {
                        break 'bfs;
                    }
                    let trail = |mut z: usize| {
                        let mut vs = vec![z];
                        let mut es = Vec::new();
                        while let Some((p, id)) = parent[z] {
                            es.push(id);
                            vs.push(p);
                            z = p;
                        }
                        (vs, es)
                    };
                    let (vx, ex) = trail(x);
                    let (vy, ey) = trail(y);
                    let sx: BTreeSet<usize> = vx[..vx.len() - 1].iter().copied().collect();
                    if vy[..vy.len() - 1].iter().any(|v| sx.contains(v)) {
                        continue;
                    }
                    // root -> .. -> x -(id)-> y -> .. -> root
                    let mut vertices: Vec<usize> = vx.into_iter().rev().collect();
                    vertices.extend(vy[..vy.len() - 1].iter().copied());
                    let mut edges: Vec<EdgeId> = ex.into_iter().rev().collect();
                    edges.push(id);
                    edges.extend(ey);
                    best = Some((vertices, edges));
                    break 'bfs;
                }
            }
        }
        best
    }
}

/// One side of a graph split by a bond: its vertices and the edges among them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
}

impl Side {
    pub fn graph(&self, g: &Graph) -> Result<Graph> {
        g.subgraph(&self.vertices, &self.edges)
    }
}

/// A minimal edge cut of size three together with the vertex sides it separates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bond {
    pub edges: [EdgeId; 3],
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

/// The cocycle matroid of a graph: each edge is sent to its column in a
/// basis of the cycle space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CographicEncoding {
    pub graph: Graph,
    pub points: BTreeMap<EdgeId, u32>,
    pub ambient_dim: usize,
}

impl CographicEncoding {
    /// Edge-id triples whose points are distinct, nonzero and sum to zero.
    pub fn triangles(&self) -> Vec<[EdgeId; 3]> {
        let items: Vec<(EdgeId, u32)> = self.points.iter().map(|(&k, &v)| (k, v)).filter(|&(_, p)| p != 0).collect();
        let mut out = Vec::new();
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                if items[i].1 == items[j].1 {
                    continue;
                }
                for k in j + 1..items.len() {
                    let c = items[k].1;
                    if c != items[i].1 && c != items[j].1 && items[i].1 ^ items[j].1 ^ c == 0 {
                        out.push([items[i].0, items[j].0, items[k].0]);
                    }
                }
            }
        }
        out
    }

    /// True when no edge maps to zero and no two edges share a point.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.points.values().all(|&p| p != 0 && seen.insert(p))
    }

    /// The simple binary matroid; requires [`is_simple`](Self::is_simple) and dimension <= 16.
    pub fn matroid(&self) -> Result<BinaryMatroid> {
        if !self.is_simple() {
            return Err(Error::Precondition("cocycle matroid has loops or parallel pairs; cosimplify first".into()));
        }
        let dim = check_dim(self.ambient_dim)?;
        BinaryMatroid::new(dim, self.points.values().copied())
    }
}

/// The cycle matroid `M(G)`: edge `uv` becomes `e_u + e_v` after dropping one
/// root vertex per component. Parallel edges give equal points, which the
/// returned map keeps while the matroid holds each point once.
pub fn cycle_matroid(g: &Graph) -> Result<(BinaryMatroid, BTreeMap<EdgeId, u32>)> {
    if let Some(e) = g.edges.iter().find(|e| e.is_loop()) {
        return Err(Error::LoopEdge(e.id));
    }
    let (_, labels) = g.components_without(&[]);
    let mut coord = vec![None; g.vertex_count];
    let mut next = 0u32;
    for v in 0..g.vertex_count {
        // the smallest vertex of each component is its own label
        if labels[v] != v {
            coord[v] = Some(next);
            next += 1;
        }
    }
    let dim = check_dim(next as usize)?;
    let bit = |v: usize| coord[v].map_or(0, |c| 1u32 << c);
    let map: BTreeMap<EdgeId, u32> = g.edges.iter().map(|e| (e.id, bit(e.u) ^ bit(e.v))).collect();
    let m = BinaryMatroid::from_point_set(dim, map.values().copied())?;
    Ok((m, map))
}

/// The cocycle matroid `M*(G)` from the fundamental cycles of a spanning
/// forest grown in edge-id order. Bridges map to zero, edges of a 2-cut to
/// equal points.
pub fn cocycle_matroid(g: &Graph) -> Result<CographicEncoding> {
    let mut uf = UnionFind::new(g.vertex_count);
    let mut tree = Vec::new();
    let mut chords = Vec::new();
    for e in &g.edges {
        if uf.union(e.u, e.v) {
            tree.push(*e);
        } else {
            chords.push(*e);
        }
    }
    if chords.len() > 32 {
        return Err(Error::DimensionOutOfRange(chords.len()));
    }
    // root the forest to read off tree paths
    let mut tree_adj = vec![Vec::new(); g.vertex_count];
    for e in &tree {
        tree_adj[e.u].push((e.v, e.id));
        tree_adj[e.v].push((e.u, e.id));
    }
    let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; g.vertex_count];
    let mut depth = vec![usize::MAX; g.vertex_count];
    for root in 0..g.vertex_count {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, id) in &tree_adj[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some((x, id));
                    queue.push_back(y);
                }
            }
        }
    }
    let mut points: BTreeMap<EdgeId, u32> = g.edges.iter().map(|e| (e.id, 0)).collect();
    for (j, c) in chords.iter().enumerate() {
        let bit = 1u32 << j;
        *points.get_mut(&c.id).expect("chord is an edge") |= bit;
        let (mut a, mut b) = (c.u, c.v);
        while a != b {
            let x = if depth[a] >= depth[b] { &mut a } else { &mut b };
            let (p, id) = parent[*x].expect("non-root vertex has a parent");
            *points.get_mut(&id).expect("tree edge is an edge") ^= bit;
            *x = p;
        }
    }
    Ok(CographicEncoding { graph: g.clone(), points, ambient_dim: chords.len() })
}

/// One step of cosimplification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CosimplifyStep {
    /// A loop of `G`; it lies in no cut.
    LoopDeleted { edge: EdgeId },
    /// A bridge of `G` (a loop of `M*(G)`), contracted.
    BridgeContracted { edge: EdgeId },
    /// A 2-edge cut `{kept, absorbed}`: `absorbed` is contracted and its weight
    /// moves onto `kept`, whose weight before the merge is recorded.
    SeriesMerged { kept: EdgeId, absorbed: EdgeId, kept_weight: u64, absorbed_weight: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cosimplified {
    pub graph: Graph,
    pub weights: EdgeWeights,
    pub trace: Vec<CosimplifyStep>,
}

/// Deletes loops, contracts bridges and merges 2-edge cuts until every cut
/// has at least three edges (or no edges remain). Missing weights count as 1.
pub fn cosimplify(g: &Graph, w: &EdgeWeights) -> Cosimplified {
    let mut graph = g.clone();
    let mut weights: EdgeWeights = g.edges.iter().map(|e| (e.id, w.get(&e.id).copied().unwrap_or(1))).collect();
    let mut trace = Vec::new();
    loop {
        if let Some(e) = graph.edges.iter().find(|e| e.is_loop()) {
            let id = e.id;
            graph = graph.delete(id).expect("edge exists");
            weights.remove(&id);
            trace.push(CosimplifyStep::LoopDeleted { edge: id });
            continue;
        }
        let base = graph.component_count();
        let ids = graph.edge_ids();
        if let Some(&id) = ids.iter().find(|&&id| graph.components_without(&[id]).0 > base) {
            graph = graph.contract(id).expect("edge exists");
            weights.remove(&id);
            trace.push(CosimplifyStep::BridgeContracted { edge: id });
            continue;
        }
        let pair = ids.iter().enumerate().find_map(|(i, &a)| {
            ids[i + 1..]
                .iter()
                .find(|&&b| graph.components_without(&[a, b]).0 > base)
                .map(|&b| (a, b))
        });
        if let Some((kept, absorbed)) = pair {
            let kept_weight = weights[&kept];
            let absorbed_weight = weights.remove(&absorbed).expect("weight present");
            *weights.get_mut(&kept).expect("weight present") += absorbed_weight;
            graph = graph.contract(absorbed).expect("edge exists");
            trace.push(CosimplifyStep::SeriesMerged { kept, absorbed, kept_weight, absorbed_weight });
            continue;
        }
        break;
    }
    Cosimplified { graph, weights, trace }
}

impl Cosimplified {
    /// Maps a hitting set on the cosimplified graph back to original edges.
    pub fn lift_hitting(&self, hitting: &[EdgeId]) -> Vec<EdgeId> {
        let mut set: BTreeSet<EdgeId> = hitting.iter().copied().collect();
        for step in self.trace.iter().rev() {
            if let CosimplifyStep::SeriesMerged { kept, absorbed, .. } = *step {
                if set.contains(&kept) {
                    set.insert(absorbed);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Maps a packing (triads, repeated by multiplicity) back to original
    /// edges: the first `kept_weight` uses of a merged edge stay on it, the
    /// rest move to the absorbed edge.
    pub fn lift_packing(&self, packing: &[[EdgeId; 3]]) -> Vec<[EdgeId; 3]> {
        let mut out: Vec<[EdgeId; 3]> = packing.to_vec();
        for step in self.trace.iter().rev() {
            if let CosimplifyStep::SeriesMerged { kept, absorbed, kept_weight, .. } = *step {
                let mut used = 0u64;
                for t in out.iter_mut() {
                    if let Some(slot) = t.iter_mut().find(|x| **x == kept) {
                        used += 1;
                        if used > kept_weight {
                            *slot = absorbed;
                        }
                    }
                }
            }
        }
        for t in out.iter_mut() {
            t.sort_unstable();
        }
        out
    }
}
