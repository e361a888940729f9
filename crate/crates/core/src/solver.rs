//! Exact weighted packing (`nu_w`) and hitting (`tau_w`) numbers.
//!
//! Both solvers are depth-first branch and bound over a [`TriangleSystem`]:
//! a set of named, weighted elements and a list of 3-element triangles.
//! Brute-force oracles for small systems live alongside for cross-checking.

use crate::error::{Error, Result};
use crate::graph::{CographicEncoding, EdgeWeights};
use crate::matroid::{BinaryMatroid, WeightedMatroid};
use crate::projective::XorBasis;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Largest accepted element weight.
pub const MAX_WEIGHT: u64 = 1 << 31;

/// Weighted elements and the triangles among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleSystem {
    ids: Vec<u32>,
    weights: Vec<u64>,
    /// Index triples, each sorted, the list sorted.
    triangles: Vec<[usize; 3]>,
    /// GF(2) coordinates of the elements when known; triangles sum to zero.
    vectors: Option<Vec<u32>>,
    simple: bool,
}

impl TriangleSystem {
    /// `ids` must be distinct; triangles are given by id.
    pub fn new(ids: Vec<u32>, weights: Vec<u64>, triangles: &[[u32; 3]]) -> Result<Self> {
        if ids.len() != weights.len() {
            return Err(Error::Invalid(format!("{} weights for {} elements", weights.len(), ids.len())));
        }
        let index: BTreeMap<u32, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        if index.len() != ids.len() {
            return Err(Error::Invalid("element ids are not distinct".into()));
        }
        let mut tris = Vec::with_capacity(triangles.len());
        for t in triangles {
            let mut idx = [0usize; 3];
            for (slot, id) in idx.iter_mut().zip(t) {
                *slot = *index.get(id).ok_or_else(|| Error::Invalid(format!("triangle names unknown element {id}")))?;
            }
            idx.sort_unstable();
            if idx[0] == idx[1] || idx[1] == idx[2] {
                return Err(Error::Invalid(format!("triangle {t:?} repeats an element")));
            }
            tris.push(idx);
        }
        tris.sort_unstable();
        tris.dedup();
        Ok(TriangleSystem { ids, weights, triangles: tris, vectors: None, simple: false })
    }

    pub fn from_matroid(mw: &WeightedMatroid) -> Self {
        let m = mw.matroid();
        let ids = m.points().to_vec();
        let triangles: Vec<[u32; 3]> = m.triangles().iter().map(|t| t.points()).collect();
        let sys = TriangleSystem::new(ids.clone(), mw.weights().to_vec(), &triangles).expect("matroid triangles are well formed");
        sys.with_vectors(ids).expect("points are nonzero")
    }

    /// Triads of the encoded graph as triangles on edge ids; missing weights count as 1.
    pub fn from_cographic(enc: &CographicEncoding, w: &EdgeWeights) -> Self {
        let ids: Vec<u32> = enc.points.keys().copied().collect();
        let weights = ids.iter().map(|id| w.get(id).copied().unwrap_or(1)).collect();
        let vectors = enc.points.values().copied().collect();
        TriangleSystem::new(ids, weights, &enc.triangles())
            .expect("triads are well formed")
            .with_vectors(vectors)
            .expect("one vector per edge")
    }

    /// Attaches GF(2) coordinates, which must sum to zero on every triangle.
    pub fn with_vectors(mut self, vectors: Vec<u32>) -> Result<Self> {
        if vectors.len() != self.ids.len() {
            return Err(Error::Invalid("one vector per element required".into()));
        }
        if let Some(t) = self.triangles.iter().find(|t| vectors[t[0]] ^ vectors[t[1]] ^ vectors[t[2]] != 0) {
            return Err(Error::Invalid(format!("triangle {t:?} does not sum to zero")));
        }
        let mut sorted = vectors.clone();
        sorted.sort_unstable();
        sorted.dedup();
        self.simple = sorted.len() == vectors.len() && !sorted.contains(&0);
        self.vectors = Some(vectors);
        Ok(self)
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn triangle_ids(&self, t: usize) -> [u32; 3] {
        self.triangles[t].map(|i| self.ids[i])
    }

    fn index_of(&self, id: u32) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.ids.len()];
        for (t, tri) in self.triangles.iter().enumerate() {
            for &p in tri {
                inc[p].push(t);
            }
        }
        inc
    }

    fn check_weights(&self) -> Result<()> {
        match self.weights.iter().find(|&&w| w > MAX_WEIGHT) {
            Some(w) => Err(Error::Precondition(format!("weight {w} exceeds 2^31"))),
            None => Ok(()),
        }
    }

    /// Every triangle contains an element of `hitting`.
    pub fn verify_hitting(&self, hitting: &[u32]) -> bool {
        let mut inside = vec![false; self.ids.len()];
        for &id in hitting {
            match self.index_of(id) {
                Some(i) => inside[i] = true,
                None => return false,
            }
        }
        self.triangles.iter().all(|t| t.iter().any(|&p| inside[p]))
    }

    /// Every listed triangle belongs to the system and no element is used
    /// more often than its weight.
    pub fn verify_packing(&self, packing: &PackingSolution) -> bool {
        let mut used = vec![0u64; self.ids.len()];
        let mut size = 0u64;
        for entry in &packing.triangles {
            let mut idx = [0usize; 3];
            for (slot, &id) in idx.iter_mut().zip(&entry.triangle) {
                match self.index_of(id) {
                    Some(i) => *slot = i,
                    None => return false,
                }
            }
            idx.sort_unstable();
            if self.triangles.binary_search(&idx).is_err() {
                return false;
            }
            for p in idx {
                used[p] += entry.multiplicity;
            }
            size += entry.multiplicity;
        }
        size == packing.size && used.iter().zip(&self.weights).all(|(u, w)| u <= w)
    }

    pub fn hitting_weight(&self, hitting: &[u32]) -> u64 {
        hitting.iter().filter_map(|&id| self.index_of(id)).map(|i| self.weights[i]).sum()
    }

    fn packing_from_indices(&self, chosen: &[usize]) -> PackingSolution {
        let mut counts: BTreeMap<[u32; 3], u64> = BTreeMap::new();
        for &t in chosen {
            *counts.entry(self.triangle_ids(t)).or_default() += 1;
        }
        let size = chosen.len() as u64;
        let triangles = counts.into_iter().map(|(triangle, multiplicity)| PackedTriangle { triangle, multiplicity }).collect();
        PackingSolution { triangles, size }
    }

    fn hitting_from_indices(&self, set: &[usize]) -> HittingSolution {
        let mut points: Vec<u32> = set.iter().map(|&i| self.ids[i]).collect();
        points.sort_unstable();
        let weight = set.iter().map(|&i| self.weights[i]).sum();
        HittingSolution { points, weight }
    }
}

/// Element set meeting every triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingSolution {
    pub points: Vec<u32>,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackedTriangle {
    pub triangle: [u32; 3],
    pub multiplicity: u64,
}

/// Triangles with multiplicities; `size` is the total multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PackingSolution {
    pub triangles: Vec<PackedTriangle>,
    pub size: u64,
}

impl PackingSolution {
    /// Each triangle repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<[u32; 3]> {
        self.triangles
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.triangle, e.multiplicity as usize))
            .collect()
    }

    pub fn from_list(list: &[[u32; 3]]) -> Self {
        let mut counts: BTreeMap<[u32; 3], u64> = BTreeMap::new();
        for t in list {
            let mut t = *t;
            t.sort_unstable();
            *counts.entry(t).or_default() += 1;
        }
        PackingSolution {
            size: list.len() as u64,
            triangles: counts.into_iter().map(|(triangle, multiplicity)| PackedTriangle { triangle, multiplicity }).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Optimal,
    Unsolved,
}

/// A bound or incumbent change during the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailEntry {
    pub node: u64,
    pub kind: String,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport<S> {
    /// `None` unless the search finished.
    pub optimum: Option<u64>,
    pub solution: S,
    pub nodes: u64,
    pub status: SolveStatus,
    pub bound_trail: Vec<TrailEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Systems with more triangles are reported unsolved without searching.
    pub triangle_cap: usize,
    pub node_limit: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { triangle_cap: 4096, node_limit: None }
    }
}

fn unsolved<S>(solution: S, nodes: u64, bound_trail: Vec<TrailEntry>) -> SolveReport<S> {
    SolveReport { optimum: None, solution, nodes, status: SolveStatus::Unsolved, bound_trail }
}

struct Packer<'a> {
    sys: &'a TriangleSystem,
    inc: Vec<Vec<usize>>,
    cap: Vec<u64>,
    thr: Vec<usize>,
    chosen: Vec<usize>,
    best: u64,
    best_chosen: Vec<usize>,
    nodes: u64,
    limit: Option<u64>,
    aborted: bool,
    trail: Vec<TrailEntry>,
}

impl Packer<'_> {
    fn available(&self, t: usize) -> bool {
        self.sys.triangles[t].iter().all(|&q| self.cap[q] > 0 && t >= self.thr[q])
    }

    fn record(&mut self) {
        if self.chosen.len() as u64 > self.best {
            self.best = self.chosen.len() as u64;
            self.best_chosen = self.chosen.clone();
            self.trail.push(TrailEntry { node: self.nodes, kind: "incumbent".into(), value: self.best });
        }
    }

    /// Upper bound on the number of further triangles.
    fn bound(&self, avail: &[usize]) -> u64 {
        let n = self.cap.len();
        let mut reach = vec![0u64; n];
        for &t in avail {
            let tri = self.sys.triangles[t];
            let m = tri.iter().map(|&q| self.cap[q]).min().unwrap_or(0);
            for q in tri {
                reach[q] += m;
            }
        }
        let usable: u64 = (0..n).map(|q| self.cap[q].min(reach[q])).sum();
        let mut a = usable / 3;
        if a > 0 {
            a = a.min(self.cover_bound(avail));
        }
        self.parity_adjust(a)
    }

    /// Weight of a greedy hitting set of the available triangles under the
    /// residual capacities; by weak duality no packing exceeds it.
    fn cover_bound(&self, avail: &[usize]) -> u64 {
        let n = self.cap.len();
        let mut hit = vec![false; self.sys.triangles.len()];
        let mut left = avail.len();
        let mut total = 0u64;
        let mut taken = vec![false; n];
        while left > 0 {
            let mut best: Option<(usize, u64)> = None;
            for (q, &done) in taken.iter().enumerate() {
                if done {
                    continue;
                }
                let c = self.inc[q].iter().filter(|&&t| !hit[t] && avail.binary_search(&t).is_ok()).count() as u64;
                if c == 0 {
                    continue;
                }
                // maximise c / cap, i.e. hits per unit of weight
                let better = match best {
                    None => true,
                    Some((b, bc)) => c * self.cap[b] > bc * self.cap[q],
                };
                if better {
                    best = Some((q, c));
                }
            }
            let Some((q, _)) = best else { break };
            taken[q] = true;
            total += self.cap[q];
            for &t in &self.inc[q] {
                if !hit[t] && avail.binary_search(&t).is_ok() {
                    hit[t] = true;
                    left -= 1;
                }
            }
        }
        total
    }

    /// Every triangle sums to zero, so the elements of odd residual capacity
    /// always sum to the same vector. A final residual of total 0 or 1 must
    /// match that sum.
    fn parity_adjust(&self, a: u64) -> u64 {
        let Some(vec) = &self.sys.vectors else { return a };
        if a == 0 {
            return a;
        }
        let total: u64 = self.cap.iter().sum();
        let rho = total - 3 * a;
        let s = (0..self.cap.len()).filter(|&q| self.cap[q] % 2 == 1).fold(0u32, |acc, q| acc ^ vec[q]);
        let feasible = match rho {
            0 => s == 0,
            1 => s != 0 && (0..self.cap.len()).any(|q| vec[q] == s && self.cap[q] > 0),
            _ => true,
        };
        if feasible {
            a
        } else {
            a - 1
        }
    }

    fn search(&mut self) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            self.aborted = true;
            return;
        }
        self.record();
        let avail: Vec<usize> = (0..self.sys.triangles.len()).filter(|&t| self.available(t)).collect();
        if avail.is_empty() {
            return;
        }
        let count = self.chosen.len() as u64;
        if count + self.bound(&avail) <= self.best {
            return;
        }
        let mut degree = vec![0usize; self.cap.len()];
        for &t in &avail {
            for q in self.sys.triangles[t] {
                degree[q] += 1;
            }
        }
        let p = (0..degree.len()).max_by_key(|&q| (degree[q], std::cmp::Reverse(q))).expect("nonempty");
        let through: Vec<usize> = self.inc[p].iter().copied().filter(|t| avail.binary_search(t).is_ok()).collect();
        let old = self.thr[p];
        for t in through {
            let tri = self.sys.triangles[t];
            for q in tri {
                self.cap[q] -= 1;
            }
            self.thr[p] = t;
            self.chosen.push(t);
            self.search();
            self.chosen.pop();
            for q in tri {
                self.cap[q] += 1;
            }
            self.thr[p] = old;
            if self.aborted {
                return;
            }
        }
        self.thr[p] = usize::MAX;
        self.search();
        self.thr[p] = old;
    }
}

/// Maximum weighted packing.
pub fn solve_nu(sys: &TriangleSystem, config: &SolverConfig) -> Result<SolveReport<PackingSolution>> {
    sys.check_weights()?;
    if sys.triangles.len() > config.triangle_cap {
        return Ok(unsolved(PackingSolution::default(), 0, Vec::new()));
    }
    let mut packer = Packer {
        sys,
        inc: sys.incidence(),
        cap: sys.weights.clone(),
        thr: vec![0; sys.len()],
        chosen: Vec::new(),
        best: 0,
        best_chosen: Vec::new(),
        nodes: 0,
        limit: config.node_limit,
        aborted: false,
        trail: Vec::new(),
    };
    // greedy start: each triangle in order as often as it fits
    for (t, tri) in sys.triangles.iter().enumerate() {
        let m = tri.iter().map(|&q| packer.cap[q]).min().unwrap_or(0);
        for q in tri {
            packer.cap[*q] -= m;
        }
        packer.chosen.extend(std::iter::repeat_n(t, m as usize));
    }
    packer.record();
    packer.chosen.clear();
    packer.cap = sys.weights.clone();
    let all: Vec<usize> = (0..sys.triangles.len()).collect();
    let root = packer.bound(&all);
    packer.trail.push(TrailEntry { node: 0, kind: "root-bound".into(), value: root });
    if packer.best < root {
        packer.search();
    }
    let solution = sys.packing_from_indices(&packer.best_chosen);
    if packer.aborted {
        return Ok(unsolved(solution, packer.nodes, packer.trail));
    }
    Ok(SolveReport { optimum: Some(solution.size), solution, nodes: packer.nodes, status: SolveStatus::Optimal, bound_trail: packer.trail })
}

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

struct Hitter<'a> {
    sys: &'a TriangleSystem,
    state: Vec<u8>,
    cost: u64,
    best: u64,
    best_set: Vec<usize>,
    nodes: u64,
    limit: Option<u64>,
    aborted: bool,
    trail: Vec<TrailEntry>,
}

impl Hitter<'_> {
    fn is_hit(&self, t: usize) -> bool {
        self.sys.triangles[t].iter().any(|&q| self.state[q] == IN)
    }

    fn set(&mut self, q: usize, s: u8, changed: &mut Vec<usize>) {
        self.state[q] = s;
        if s == IN {
            self.cost += self.sys.weights[q];
        }
        changed.push(q);
    }

    fn undo(&mut self, changed: &[usize]) {
        for &q in changed {
            if self.state[q] == IN {
                self.cost -= self.sys.weights[q];
            }
            self.state[q] = UNDECIDED;
        }
    }

    /// Forces the last free element of unhit triangles; `false` on a dead end.
    fn propagate(&mut self, changed: &mut Vec<usize>) -> bool {
        loop {
            let mut progress = false;
            for t in 0..self.sys.triangles.len() {
                if self.is_hit(t) {
                    continue;
                }
                let free: Vec<usize> = self.sys.triangles[t].iter().copied().filter(|&q| self.state[q] == UNDECIDED).collect();
                match free.len() {
                    0 => return false,
                    1 => {
                        self.set(free[0], IN, changed);
                        progress = true;
                    }
                    _ => {}
                }
            }
            if !progress {
                return true;
            }
        }
    }

    fn lower_bound(&self, unhit: &[usize]) -> u64 {
        let n = self.state.len();
        let mut residual: Vec<u64> = self.sys.weights.clone();
        let mut dual = 0u64;
        for &t in unhit {
            let free = self.sys.triangles[t].iter().filter(|&&q| self.state[q] == UNDECIDED);
            let m = free.clone().map(|&q| residual[q]).min().unwrap_or(0);
            dual += m;
            for &q in free {
                residual[q] -= m;
            }
        }
        let mut bound = dual;
        if let (true, Some(vec)) = (self.sys.simple, &self.sys.vectors) {
            // the complement of a hitting set is triangle-free, so it has at
            // most 2^(r-1) elements in a rank-r span
            let mut basis = XorBasis::new();
            let mut useful = vec![false; n];
            for &t in unhit {
                for q in self.sys.triangles[t] {
                    if self.state[q] == UNDECIDED {
                        useful[q] = true;
                    }
                }
            }
            let mut fixed_out = 0usize;
            for q in 0..n {
                if self.state[q] != IN {
                    basis.insert(vec[q]);
                    if !useful[q] {
                        fixed_out += 1;
                    }
                }
            }
            let r = basis.rank();
            let room = if r == 0 { 0 } else { (1usize << (r - 1)).saturating_sub(fixed_out) };
            let mut ws: Vec<u64> = (0..n).filter(|&q| useful[q]).map(|q| self.sys.weights[q]).collect();
            ws.sort_unstable_by(|a, b| b.cmp(a));
            let geometric: u64 = ws.iter().skip(room).sum();
            bound = bound.max(geometric);
        }
        self.cost + bound
    }

    fn search(&mut self) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            self.aborted = true;
            return;
        }
        let mut changed = Vec::new();
        if !self.propagate(&mut changed) || self.cost >= self.best {
            self.undo(&changed);
            return;
        }
        let unhit: Vec<usize> = (0..self.sys.triangles.len()).filter(|&t| !self.is_hit(t)).collect();
        if unhit.is_empty() {
            self.best = self.cost;
            self.best_set = (0..self.state.len()).filter(|&q| self.state[q] == IN).collect();
            self.trail.push(TrailEntry { node: self.nodes, kind: "incumbent".into(), value: self.best });
            self.undo(&changed);
            return;
        }
        if self.lower_bound(&unhit) >= self.best {
            self.undo(&changed);
            return;
        }
        let free: Vec<usize> = self.sys.triangles[unhit[0]].iter().copied().filter(|&q| self.state[q] == UNDECIDED).collect();
        for i in 0..free.len() {
            let mut local = Vec::new();
            for &q in &free[..i] {
                self.set(q, OUT, &mut local);
            }
            self.set(free[i], IN, &mut local);
            self.search();
            self.undo(&local);
            if self.aborted {
                break;
            }
        }
        self.undo(&changed);
    }
}

/// Greedy hitting set followed by removal of redundant elements.
fn greedy_hitting(sys: &TriangleSystem, inc: &[Vec<usize>]) -> Vec<usize> {
    let n = sys.len();
    let mut hit = vec![0usize; sys.triangles.len()];
    let mut inside = vec![false; n];
    let mut left = sys.triangles.len();
    while left > 0 {
        let mut best: Option<(usize, u64)> = None;
        for q in 0..n {
            if inside[q] {
                continue;
            }
            let c = inc[q].iter().filter(|&&t| hit[t] == 0).count() as u64;
            if c == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((b, bc)) => c * sys.weights[b] > bc * sys.weights[q],
            };
            if better {
                best = Some((q, c));
            }
        }
        let (q, _) = best.expect("an unhit triangle has a free element");
        inside[q] = true;
        for &t in &inc[q] {
            if hit[t] == 0 {
                left -= 1;
            }
            hit[t] += 1;
        }
    }
    for q in (0..n).rev() {
        if inside[q] && inc[q].iter().all(|&t| hit[t] >= 2) {
            inside[q] = false;
            for &t in &inc[q] {
                hit[t] -= 1;
            }
        }
    }
    (0..n).filter(|&q| inside[q]).collect()
}

/// Minimum-weight hitting set; a 0/1 choice per element suffices.
pub fn solve_tau(sys: &TriangleSystem, config: &SolverConfig) -> Result<SolveReport<HittingSolution>> {
    sys.check_weights()?;
    let inc = sys.incidence();
    let start = greedy_hitting(sys, &inc);
    if sys.triangles.len() > config.triangle_cap {
        return Ok(unsolved(sys.hitting_from_indices(&start), 0, Vec::new()));
    }
    let best = start.iter().map(|&q| sys.weights[q]).sum();
    let mut hitter = Hitter {
        sys,
        state: vec![UNDECIDED; sys.len()],
        cost: 0,
        best,
        best_set: start,
        nodes: 0,
        limit: config.node_limit,
        aborted: false,
        trail: vec![TrailEntry { node: 0, kind: "incumbent".into(), value: best }],
    };
    let all: Vec<usize> = (0..sys.triangles.len()).collect();
    let root = hitter.lower_bound(&all);
    hitter.trail.push(TrailEntry { node: 0, kind: "root-bound".into(), value: root });
    if root < hitter.best {
        hitter.search();
    }
    let solution = sys.hitting_from_indices(&hitter.best_set);
    if hitter.aborted {
        return Ok(unsolved(solution, hitter.nodes, hitter.trail));
    }
    Ok(SolveReport { optimum: Some(solution.weight), solution, nodes: hitter.nodes, status: SolveStatus::Optimal, bound_trail: hitter.trail })
}

pub fn nu(mw: &WeightedMatroid) -> Result<SolveReport<PackingSolution>> {
    solve_nu(&TriangleSystem::from_matroid(mw), &SolverConfig::default())
}

pub fn tau(mw: &WeightedMatroid) -> Result<SolveReport<HittingSolution>> {
    solve_tau(&TriangleSystem::from_matroid(mw), &SolverConfig::default())
}

/// Largest system the oracles accept.
pub const ORACLE_MAX_TRIANGLES: usize = 12;

/// Exhaustive packing number over all multiplicity vectors.
pub fn nu_oracle(sys: &TriangleSystem) -> Result<u64> {
    if sys.triangles.len() > ORACLE_MAX_TRIANGLES {
        return Err(Error::TooLarge(format!("{} triangles exceed the oracle limit", sys.triangles.len())));
    }
    fn go(sys: &TriangleSystem, t: usize, cap: &mut [u64]) -> u64 {
        if t == sys.triangles.len() {
            return 0;
        }
        let tri = sys.triangles[t];
        let most = tri.iter().map(|&q| cap[q]).min().unwrap_or(0);
        let mut best = 0;
        for x in 0..=most {
            for &q in &tri {
                cap[q] -= x;
            }
            best = best.max(x + go(sys, t + 1, cap));
            for &q in &tri {
                cap[q] += x;
            }
        }
        best
    }
    Ok(go(sys, 0, &mut sys.weights.clone()))
}

/// Exhaustive hitting number over all subsets of the elements lying on triangles.
pub fn tau_oracle(sys: &TriangleSystem) -> Result<u64> {
    if sys.triangles.len() > ORACLE_MAX_TRIANGLES {
        return Err(Error::TooLarge(format!("{} triangles exceed the oracle limit", sys.triangles.len())));
    }
    let mut involved: Vec<usize> = sys.triangles.iter().flatten().copied().collect();
    involved.sort_unstable();
    involved.dedup();
    let pos = |q: usize| involved.binary_search(&q).expect("involved");
    let masks: Vec<u32> = sys.triangles.iter().map(|t| t.iter().fold(0u32, |m, &q| m | 1 << pos(q))).collect();
    let weights: Vec<u64> = involved.iter().map(|&q| sys.weights[q]).collect();
    let mut best = u64::MAX;
    for set in 0u32..(1u32 << involved.len()) {
        if masks.iter().all(|&m| m & set != 0) {
            let w = (0..involved.len()).filter(|&i| set >> i & 1 == 1).map(|i| weights[i]).sum();
            best = best.min(w);
        }
    }
    Ok(best)
}

/// Every triangle of `m` contains a point of `hitting`.
pub fn verify_hitting(m: &BinaryMatroid, hitting: &[u32]) -> bool {
    hitting.iter().all(|&p| m.contains(p)) && m.triangles().iter().all(|t| t.points().iter().any(|p| hitting.contains(p)))
}

/// The packing uses triangles of the matroid within the point weights.
pub fn verify_packing(mw: &WeightedMatroid, packing: &PackingSolution) -> bool {
    TriangleSystem::from_matroid(mw).verify_packing(packing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::fano;

    fn full(n: u8) -> WeightedMatroid {
        WeightedMatroid::unit(BinaryMatroid::full(n).unwrap())
    }

    #[test]
    fn fano_numbers() {
        let f = WeightedMatroid::unit(fano());
        assert_eq!(nu(&f).unwrap().optimum, Some(1));
        let t = tau(&f).unwrap();
        assert_eq!(t.optimum, Some(3));
        assert!(verify_hitting(f.matroid(), &t.solution.points));
    }

    #[test]
    fn pg3_numbers() {
        let pg = full(4);
        let n = nu(&pg).unwrap();
        assert_eq!(n.optimum, Some(5));
        assert!(verify_packing(&pg, &n.solution));
        assert_eq!(tau(&pg).unwrap().optimum, Some(7));
    }

    #[test]
    fn trivial_systems() {
        let empty = TriangleSystem::new(vec![], vec![], &[]).unwrap();
        assert_eq!(nu_oracle(&empty).unwrap(), 0);
        assert_eq!(tau_oracle(&empty).unwrap(), 0);
        assert_eq!(solve_nu(&empty, &SolverConfig::default()).unwrap().optimum, Some(0));
        assert_eq!(solve_tau(&empty, &SolverConfig::default()).unwrap().optimum, Some(0));

        let one = WeightedMatroid::unit(BinaryMatroid::full(2).unwrap());
        let sys = TriangleSystem::from_matroid(&one);
        assert_eq!((nu_oracle(&sys).unwrap(), tau_oracle(&sys).unwrap()), (1, 1));
        assert_eq!(nu(&one).unwrap().optimum, Some(1));
        assert_eq!(tau(&one).unwrap().optimum, Some(1));
    }

    #[test]
    fn fano_minus_a_point() {
        let m = WeightedMatroid::unit(fano().without(1));
        let sys = TriangleSystem::from_matroid(&m);
        assert_eq!(sys.triangles().len(), 4);
        assert_eq!(nu_oracle(&sys).unwrap(), 1);
        assert_eq!(tau_oracle(&sys).unwrap(), 2);
        assert_eq!(nu(&m).unwrap().optimum, Some(1));
        assert_eq!(tau(&m).unwrap().optimum, Some(2));
    }

    #[test]
    fn verify_examples() {
        let f = fano();
        assert!(verify_hitting(&f, f.points()));
        let fw = WeightedMatroid::unit(f.clone());
        assert!(verify_packing(&fw, &PackingSolution::default()));
        // lines of the Fano plane pairwise meet, so any line is a hitting set
        assert!(verify_hitting(&f, &[1, 2, 3]));
        assert!(!verify_hitting(&f, &[1, 2]));
        let two = PackingSolution::from_list(&[[1, 2, 3], [1, 4, 5]]);
        assert!(!verify_packing(&fw, &two));
        let wrong = PackingSolution::from_list(&[[1, 2, 4]]);
        assert!(!verify_packing(&fw, &wrong));
    }

    #[test]
    fn weighted_triangle() {
        let m = BinaryMatroid::full(2).unwrap();
        let mw = WeightedMatroid::new(m, vec![2, 3, 5]).unwrap();
        assert_eq!(nu(&mw).unwrap().optimum, Some(2));
        let t = tau(&mw).unwrap();
        assert_eq!(t.optimum, Some(2));
        assert_eq!(t.solution.points, vec![1]);
    }

    #[test]
    fn parity_bound_closes_pg4_packing() {
        let pg = full(5);
        let sys = TriangleSystem::from_matroid(&pg);
        let r = solve_nu(&sys, &SolverConfig::default()).unwrap();
        assert_eq!(r.optimum, Some(9));
        assert!(r.bound_trail.iter().any(|e| e.kind == "root-bound" && e.value == 9));
    }

    #[test]
    fn caps_give_unsolved() {
        let sys = TriangleSystem::from_matroid(&full(4));
        let cfg = SolverConfig { triangle_cap: 3, node_limit: None };
        let r = solve_nu(&sys, &cfg).unwrap();
        assert_eq!(r.status, SolveStatus::Unsolved);
        assert_eq!(r.optimum, None);
        let r = solve_tau(&sys, &cfg).unwrap();
        assert_eq!(r.status, SolveStatus::Unsolved);
        assert!(sys.verify_hitting(&r.solution.points));
    }

    #[test]
    fn overweight_rejected() {
        let mw = WeightedMatroid::new(BinaryMatroid::full(2).unwrap(), vec![1, 1, MAX_WEIGHT + 1]).unwrap();
        assert!(matches!(nu(&mw), Err(Error::Precondition(_))));
    }

    #[test]
    fn report_json_shape() {
        let r = tau(&WeightedMatroid::unit(fano())).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["optimum"], 3);
        assert_eq!(v["status"], "optimal");
        assert!(v["solution"]["points"].is_array());
        assert!(v["nodes"].is_u64());
    }
}
