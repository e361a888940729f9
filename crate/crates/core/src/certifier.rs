//! Certificates of `tau_w <= 2 nu_w` for cographic matroids.
//!
//! The instance is a weighted graph `G`; the matroid is `M*(G)`, whose
//! triangles are the triads of `G`. After cosimplification four reduction
//! rules run until no edge is left:
//!
//! * R1: an edge of weight 0 or in no triad is removed (contracted in `G`).
//! * R2: an edge in exactly one triad `T`: every weight on `T` drops by one.
//! * R3: an edge `e` of weight >= 2 in exactly two triads: `e` drops by two
//!   and the other four edges by one.
//! * R4: a crown with unit spine weights: alternate spine and jewel weights drop by one.
//!
//! Unwinding the rules builds a hitting set `R` and a packing `Pi`; each rule
//! adds at most twice as much weight to `R` as it adds triangles to `Pi`.

use crate::error::{Error, Result};
use crate::graph::{cosimplify, CosimplifyStep, EdgeId, EdgeWeights, Graph};
use crate::hypergraph::TriangleHypergraph;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "R1-delete")]
    R1Delete,
    #[serde(rename = "R2-single-triangle")]
    R2SingleTriangle,
    #[serde(rename = "R3-two-triangles")]
    R3TwoTriangles,
    #[serde(rename = "R4-crown-even")]
    R4CrownEven,
    #[serde(rename = "R4-crown-odd")]
    R4CrownOdd,
}

/// How a crown was located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrownSource {
    /// Every triad of the block is a vertex star; the crown is a linear cycle.
    LinearCycle,
    /// Stars along a shortest cycle on the small side of a non-vertex triad.
    StarCycle,
    /// Exhaustive crown search.
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrownRecord {
    pub spine: Vec<EdgeId>,
    /// Triangle `i` is `{spine[i], jewels[i], spine[i + 1]}`.
    pub jewels: Vec<EdgeId>,
    pub source: CrownSource,
}

impl CrownRecord {
    fn triangle(&self, i: usize) -> [EdgeId; 3] {
        let k = self.spine.len();
        sorted3([self.spine[i], self.jewels[i], self.spine[(i + 1) % k]])
    }

    /// Elements whose weight drops and the triangles packed.
    fn plan(&self) -> (Vec<EdgeId>, Vec<[EdgeId; 3]>) {
        let k = self.spine.len();
        let q = k / 2;
        let mut x: Vec<EdgeId> = (0..q).map(|i| self.spine[2 * i]).collect();
        if k % 2 == 1 {
            x.push(self.spine[2 * q]);
        }
        x.extend((0..q).map(|i| self.jewels[2 * i]));
        x.sort_unstable();
        let packed = (0..q).map(|i| self.triangle(2 * i)).collect();
        (x, packed)
    }
}

/// One rule application in the forward run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: Rule,
    /// The edge `e` the rule is about; for crowns the first spine edge.
    pub element: EdgeId,
    /// R1: triads through a zero-weight edge; R2/R3: the triads of `e`;
    /// R4: the crown triangles added to the packing.
    pub triangles: Vec<[EdgeId; 3]>,
    /// Weight decrements, by edge.
    pub decrements: Vec<(EdgeId, u64)>,
    pub crown: Option<CrownRecord>,
    /// `|E| + w(E)` before the application.
    pub measure: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guarantee {
    #[serde(rename = "wR")]
    pub w_r: u64,
    #[serde(rename = "twoNu")]
    pub two_nu: u64,
}

/// A hitting set and a packing on the original edges with `w(R) <= 2 |Pi|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuzaCertificate {
    pub hitting: Vec<EdgeId>,
    /// Triads, repeated by multiplicity, sorted.
    pub packing: Vec<[EdgeId; 3]>,
    pub guarantee: Guarantee,
    pub preprocessing: Vec<CosimplifyStep>,
    pub trace: Vec<RuleApplication>,
}

impl TuzaCertificate {
    /// Checks feasibility and the guarantee against the original instance.
    pub fn verify(&self, g: &Graph, w: &EdgeWeights) -> bool {
        let triads = g.triad_sets();
        let hit: BTreeSet<EdgeId> = self.hitting.iter().copied().collect();
        let hits = triads.iter().all(|t| t.iter().any(|e| hit.contains(e)));
        let known: BTreeSet<[EdgeId; 3]> = triads.iter().copied().collect();
        let mut used: BTreeMap<EdgeId, u64> = BTreeMap::new();
        for t in &self.packing {
            for &e in t {
                *used.entry(e).or_default() += 1;
            }
        }
        let packs = self.packing.iter().all(|t| known.contains(t))
            && used.iter().all(|(e, &u)| u <= weight(w, *e));
        let w_r: u64 = self.hitting.iter().map(|&e| weight(w, e)).sum();
        hits && packs
            && hit.iter().all(|&e| g.has_edge(e))
            && w_r == self.guarantee.w_r
            && self.guarantee.two_nu == 2 * self.packing.len() as u64
            && w_r <= self.guarantee.two_nu
    }
}

fn weight(w: &EdgeWeights, e: EdgeId) -> u64 {
    w.get(&e).copied().unwrap_or(1)
}

fn sorted3(mut t: [EdgeId; 3]) -> [EdgeId; 3] {
    t.sort_unstable();
    t
}

struct State {
    graph: Graph,
    weights: EdgeWeights,
}

impl State {
    fn measure(&self) -> u64 {
        self.graph.edge_count() as u64 + self.weights.values().sum::<u64>()
    }
}

/// Triads of the current graph and the triads through each edge.
struct Triads {
    all: Vec<[EdgeId; 3]>,
    of: BTreeMap<EdgeId, Vec<[EdgeId; 3]>>,
}

impl Triads {
    fn of(g: &Graph) -> Self {
        let all = g.triad_sets();
        let mut of: BTreeMap<EdgeId, Vec<[EdgeId; 3]>> = g.edge_ids().into_iter().map(|e| (e, Vec::new())).collect();
        for t in &all {
            for e in t {
                of.get_mut(e).expect("triad edge belongs to the graph").push(*t);
            }
        }
        Triads { all, of }
    }

    fn through(&self, e: EdgeId) -> &[[EdgeId; 3]] {
        self.of.get(&e).map_or(&[], |v| v.as_slice())
    }
}

/// Produces a certificate for `(M*(G), w)`; missing weights count as 1.
pub fn certify(g: &Graph, w: &EdgeWeights) -> Result<TuzaCertificate> {
    run(g, w, None)
}

/// Re-runs a recorded trace from the original instance, checking every step.
pub fn replay(g: &Graph, w: &EdgeWeights, trace: &[RuleApplication]) -> Result<TuzaCertificate> {
    run(g, w, Some(trace))
}

fn run(g: &Graph, w: &EdgeWeights, recorded: Option<&[RuleApplication]>) -> Result<TuzaCertificate> {
    let cs = cosimplify(g, w);
    let mut state = State { graph: cs.graph.clone(), weights: cs.weights.clone() };
    let mut trace: Vec<RuleApplication> = Vec::new();
    while state.graph.edge_count() > 0 {
        let triads = Triads::of(&state.graph);
        let app = match recorded {
            Some(r) => r
                .get(trace.len())
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("trace ends after {} steps with edges left", trace.len())))?,
            None => choose(&state, &triads).map_err(|e| with_trace(e, &trace))?,
        };
        check(&state, &triads, &app).map_err(|e| with_trace(e, &trace))?;
        let before = state.measure();
        apply(&mut state, &app)?;
        if state.measure() >= before {
            return Err(with_trace(Error::Internal("measure did not decrease".into()), &trace));
        }
        trace.push(app);
    }
    if let Some(r) = recorded {
        if r.len() != trace.len() {
            return Err(Error::Invalid(format!("trace has {} steps, run needed {}", r.len(), trace.len())));
        }
    }

    let (hitting, packing) = lift(&trace);
    let hitting = cs.lift_hitting(&hitting);
    let mut packing = cs.lift_packing(&packing);
    packing.sort_unstable();
    let hitting = prune(g, hitting);
    let w_r = hitting.iter().map(|&e| weight(w, e)).sum();
    let cert = TuzaCertificate {
        hitting,
        guarantee: Guarantee { w_r, two_nu: 2 * packing.len() as u64 },
        packing,
        preprocessing: cs.trace,
        trace,
    };
    if !cert.verify(g, w) {
        return Err(Error::Internal(format!("certificate failed verification: {:?}", cert.guarantee)));
    }
    Ok(cert)
}

fn with_trace(e: Error, trace: &[RuleApplication]) -> Error {
    match e {
        Error::Internal(msg) => Error::Internal(format!(
            "{msg}; trace so far: {}",
            serde_json::to_string(trace).unwrap_or_default()
        )),
        other => other,
    }
}

/// First applicable rule: R1, R2, R3 in increasing edge order, then a crown.
fn choose(state: &State, triads: &Triads) -> Result<RuleApplication> {
    let measure = state.measure();
    let ids = state.graph.edge_ids();
    let w = |e: EdgeId| state.weights[&e];
    if let Some(&e) = ids.iter().find(|&&e| w(e) == 0 || triads.through(e).is_empty()) {
        let triangles = if w(e) == 0 { triads.through(e).to_vec() } else { Vec::new() };
        return Ok(RuleApplication { rule: Rule::R1Delete, element: e, triangles, decrements: Vec::new(), crown: None, measure });
    }
    if let Some(&e) = ids.iter().find(|&&e| triads.through(e).len() == 1) {
        let t = triads.through(e)[0];
        let decrements = t.iter().map(|&x| (x, 1)).collect();
        return Ok(RuleApplication { rule: Rule::R2SingleTriangle, element: e, triangles: vec![t], decrements, crown: None, measure });
    }
    if let Some(&e) = ids.iter().find(|&&e| triads.through(e).len() == 2 && w(e) >= 2) {
        let ts = triads.through(e).to_vec();
        let mut dec: BTreeMap<EdgeId, u64> = BTreeMap::new();
        for t in &ts {
            for &x in t {
                *dec.entry(x).or_default() += 1;
            }
        }
        let decrements = dec.into_iter().collect();
        return Ok(RuleApplication { rule: Rule::R3TwoTriangles, element: e, triangles: ts, decrements, crown: None, measure });
    }
    let crown = find_reduction(&state.graph, triads)?;
    let (x, packed) = crown.plan();
    let rule = if crown.spine.len() % 2 == 0 { Rule::R4CrownEven } else { Rule::R4CrownOdd };
    Ok(RuleApplication {
        rule,
        element: crown.spine[0],
        triangles: packed,
        decrements: x.into_iter().map(|e| (e, 1)).collect(),
        crown: Some(crown),
        measure,
    })
}

/// Locates a crown once R1-R3 no longer apply, block by block.
///
/// If every triad of a block is a vertex star, each edge lies in exactly two
/// triads and any linear cycle is a crown. Otherwise take the non-vertex triad
/// `T` whose smaller side `G1(T)` has fewest edges; the stars along a
/// shortest cycle of `G1(T)` form a crown.
pub fn find_reduction_crown(g: &Graph) -> Result<CrownRecord> {
    find_reduction(g, &Triads::of(g))
}

fn find_reduction(g: &Graph, triads: &Triads) -> Result<CrownRecord> {
    for block in g.blocks() {
        let ids = block.edge_ids();
        let inside: BTreeSet<EdgeId> = ids.iter().copied().collect();
        let bt: Vec<[EdgeId; 3]> = triads.all.iter().copied().filter(|t| t.iter().all(|e| inside.contains(e))).collect();
        if bt.is_empty() {
            continue;
        }
        let pos = |e: EdgeId| ids.binary_search(&e).expect("block edge");
        let h = TriangleHypergraph::with_labels(ids.clone(), bt.iter().map(|t| t.map(pos)).collect())?;
        let stars: BTreeSet<Vec<EdgeId>> = (0..block.vertex_count()).map(|v| block.star(v)).collect();
        let non_vertex: Vec<[EdgeId; 3]> = bt.iter().copied().filter(|t| !stars.contains(t.as_slice())).collect();

        let found = if non_vertex.is_empty() {
            h.find_linear_cycle().and_then(|c| {
                let k = c.edges.len();
                let spine: Vec<usize> = (0..k)
                    .map(|i| {
                        let a = h.edge(c.edges[(i + k - 1) % k]);
                        let b = h.edge(c.edges[i]);
                        *a.iter().find(|v| b.contains(v)).expect("consecutive edges meet")
                    })
                    .collect();
                crate::hypergraph::Crown::from_cycle(&h, &c.edges, &spine)
            })
            .map(|c| (c, CrownSource::LinearCycle))
        } else {
            star_crown(&block, &h, &bt, &non_vertex).map(|c| (c, CrownSource::StarCycle))
        };
        let found = found.or_else(|| h.find_crown().map(|c| (c, CrownSource::Search)));
        if let Some((c, source)) = found {
            return Ok(CrownRecord {
                spine: c.spine.iter().map(|&i| ids[i]).collect(),
                jewels: c.jewels.iter().map(|&i| ids[i]).collect(),
                source,
            });
        }
    }
    Err(Error::Internal("no reduction rule applies".into()))
}

fn star_crown(
    block: &Graph,
    h: &TriangleHypergraph,
    bt: &[[EdgeId; 3]],
    non_vertex: &[[EdgeId; 3]],
) -> Option<crate::hypergraph::Crown> {
    let mut best: Option<(usize, crate::graph::Side)> = None;
    for t in non_vertex {
        let (small, _) = block.components_after_removal(t).ok()?;
        if best.as_ref().is_none_or(|(n, _)| small.edges.len() < *n) {
            best = Some((small.edges.len(), small));
        }
    }
    let (_, side) = best?;
    let g1 = side.graph(block).ok()?;
    let (vs, es) = g1.shortest_cycle()?;
    let p = vs.len();
    let index_of = |t: &[EdgeId]| bt.iter().position(|b| b.as_slice() == t);
    let mut edges = Vec::with_capacity(p);
    for i in 0..p {
        let v = side.vertices[vs[(i + 1) % p]];
        edges.push(index_of(&block.star(v))?);
    }
    let ids = h.labels();
    let spine: Vec<usize> = es.iter().map(|e| ids.binary_search(e).expect("cycle edge in block")).collect();
    crate::hypergraph::Crown::from_cycle(h, &edges, &spine)
}

/// Validates an application against the current state.
fn check(state: &State, triads: &Triads, app: &RuleApplication) -> Result<()> {
    let bad = |msg: &str| Err(Error::Internal(format!("{:?} on edge {}: {msg}", app.rule, app.element)));
    let w = |e: EdgeId| state.weights.get(&e).copied();
    let e = app.element;
    let Some(we) = w(e) else { return bad("edge not present") };
    if app.measure != state.measure() {
        return bad("recorded measure differs");
    }
    let expected_dec = |ts: &[[EdgeId; 3]]| {
        let mut dec: BTreeMap<EdgeId, u64> = BTreeMap::new();
        for t in ts {
            for &x in t {
                *dec.entry(x).or_default() += 1;
            }
        }
        dec.into_iter().collect::<Vec<_>>()
    };
    let through = triads.through(e);
    match app.rule {
        Rule::R1Delete => {
            if we != 0 && !through.is_empty() {
                return bad("edge has weight and lies in a triad");
            }
            let want: Vec<[EdgeId; 3]> = if we == 0 { through.to_vec() } else { Vec::new() };
            if app.triangles != want || !app.decrements.is_empty() || app.crown.is_some() {
                return bad("recorded data does not match");
            }
        }
        Rule::R2SingleTriangle => {
            if through.len() != 1 || app.triangles != through || app.decrements != expected_dec(through) {
                return bad("edge is not in exactly the recorded single triad");
            }
        }
        Rule::R3TwoTriangles => {
            if through.len() != 2 || we < 2 || app.triangles != through || app.decrements != expected_dec(through) {
                return bad("edge is not a weight >= 2 edge in exactly two triads");
            }
        }
        Rule::R4CrownEven | Rule::R4CrownOdd => {
            let Some(c) = &app.crown else { return bad("crown missing") };
            let k = c.spine.len();
            if k < 2 || c.jewels.len() != k || (k % 2 == 0) != (app.rule == Rule::R4CrownEven) || c.spine[0] != e {
                return bad("crown shape does not match the rule");
            }
            let mut all: Vec<EdgeId> = c.spine.iter().chain(&c.jewels).copied().collect();
            all.sort_unstable();
            if all.windows(2).any(|p| p[0] == p[1]) {
                return bad("crown elements repeat");
            }
            for i in 0..k {
                let t = c.triangle(i);
                if !triads.all.contains(&t) {
                    return bad("crown triangle is not a triad");
                }
                if triads.through(c.spine[i]).len() != 2 || w(c.spine[i]) != Some(1) {
                    return bad("spine edge must have degree 2 and weight 1");
                }
            }
            let (x, packed) = c.plan();
            let dec: Vec<(EdgeId, u64)> = x.into_iter().map(|e| (e, 1)).collect();
            if app.triangles != packed || app.decrements != dec {
                return bad("recorded data does not match the crown");
            }
        }
    }
    for &(x, d) in &app.decrements {
        if w(x).is_none_or(|wx| wx < d) {
            return bad("decrement exceeds weight");
        }
    }
    Ok(())
}

fn apply(state: &mut State, app: &RuleApplication) -> Result<()> {
    if app.rule == Rule::R1Delete {
        state.graph = state.graph.contract(app.element)?;
        state.weights.remove(&app.element);
    } else {
        for &(x, d) in &app.decrements {
            *state.weights.get_mut(&x).expect("checked") -= d;
        }
    }
    Ok(())
}

/// Unwinds the trace into a hitting set and packing on the cosimplified graph.
fn lift(trace: &[RuleApplication]) -> (Vec<EdgeId>, Vec<[EdgeId; 3]>) {
    let mut r: BTreeSet<EdgeId> = BTreeSet::new();
    let mut pi: Vec<[EdgeId; 3]> = Vec::new();
    for app in trace.iter().rev() {
        let e = app.element;
        match app.rule {
            Rule::R1Delete => {
                if app.triangles.iter().any(|t| !t.iter().any(|x| r.contains(x))) {
                    r.insert(e);
                }
            }
            Rule::R2SingleTriangle => {
                let t = app.triangles[0];
                pi.push(t);
                if t.iter().all(|x| r.contains(x)) {
                    r.remove(&e);
                }
            }
            Rule::R3TwoTriangles => {
                pi.extend(app.triangles.iter().copied());
                let pair_hit = |t: &[EdgeId; 3]| t.iter().any(|&x| x != e && r.contains(&x));
                if app.triangles.iter().all(pair_hit) {
                    r.remove(&e);
                }
            }
            Rule::R4CrownEven => pi.extend(app.triangles.iter().copied()),
            Rule::R4CrownOdd => {
                pi.extend(app.triangles.iter().copied());
                if app.decrements.iter().all(|(x, _)| r.contains(x)) {
                    r.remove(&e);
                }
            }
        }
    }
    (r.into_iter().collect(), pi)
}

/// Drops hitting-set edges, largest id first, whose triads are all hit by others.
fn prune(g: &Graph, hitting: Vec<EdgeId>) -> Vec<EdgeId> {
    let triads = g.triad_sets();
    let mut r: BTreeSet<EdgeId> = hitting.into_iter().collect();
    let candidates: Vec<EdgeId> = r.iter().rev().copied().collect();
    for e in candidates {
        let redundant = triads
            .iter()
            .filter(|t| t.contains(&e))
            .all(|t| t.iter().any(|&x| x != e && r.contains(&x)));
        if redundant {
            r.remove(&e);
        }
    }
    r.into_iter().collect()
}
