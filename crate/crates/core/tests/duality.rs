mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use tuza_core::graph::{cocycle_matroid, cosimplify, cycle_matroid, EdgeId, Graph};

/// Oracle: 3-edge cuts `delta(S)` of a connected graph with both sides connected.
fn bonds_by_bipartition(g: &Graph) -> BTreeSet<[EdgeId; 3]> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << (n - 1)) {
        let inside = |v: usize| v < n - 1 && mask >> v & 1 == 1;
        let cut: Vec<EdgeId> = g.edges().iter().filter(|e| inside(e.u) != inside(e.v)).map(|e| e.id).collect();
        if cut.len() == 3 && g.components_without(&cut).0 == 2 {
            out.insert([cut[0], cut[1], cut[2]]);
        }
    }
    out
}

#[test]
fn triads_are_cographic_triangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let g = common::random_connected_graph(&mut rng, 9, 16);
        let triads: BTreeSet<[EdgeId; 3]> = g.triad_sets().into_iter().collect();
        assert_eq!(triads, bonds_by_bipartition(&g), "graph {g:?}");
        let enc = cocycle_matroid(&g).unwrap();
        assert_eq!(enc.ambient_dim, g.edge_count() + 1 - g.vertex_count());
        let tri: BTreeSet<[EdgeId; 3]> = enc.triangles().into_iter().collect();
        assert_eq!(tri, triads);
        for &id in &g.edge_ids() {
            let bridge = g.components_without(&[id]).0 > 1;
            assert_eq!(enc.points[&id] == 0, bridge);
        }
    }
}

#[test]
fn cycle_matroid_triangles_are_graph_triangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let g = common::random_connected_graph(&mut rng, 8, 16);
        let loopless = g.edges().iter().all(|e| !e.is_loop());
        assert!(loopless);
        let (m, map) = cycle_matroid(&g).unwrap();
        assert_eq!(m.rank(), g.vertex_count() - 1);
        // edge triples forming a 3-cycle, parallel edges counted separately
        let es = g.edges();
        let mut cycles = 0;
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                for k in j + 1..es.len() {
                    let mut deg = vec![0; g.vertex_count()];
                    for e in [es[i], es[j], es[k]] {
                        deg[e.u] += 1;
                        deg[e.v] += 1;
                    }
                    let pairs = [(es[i].u.min(es[i].v), es[i].u.max(es[i].v)), (es[j].u.min(es[j].v), es[j].u.max(es[j].v)), (es[k].u.min(es[k].v), es[k].u.max(es[k].v))];
                    let distinct = pairs[0] != pairs[1] && pairs[1] != pairs[2] && pairs[0] != pairs[2];
                    if distinct && deg.iter().all(|&d| d == 0 || d == 2) {
                        cycles += 1;
                    }
                }
            }
        }
        let mut via_points = 0;
        let ids = g.edge_ids();
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                for k in j + 1..ids.len() {
                    let (a, b, c) = (map[&ids[i]], map[&ids[j]], map[&ids[k]]);
                    if a != b && b != c && a != c && a ^ b ^ c == 0 {
                        via_points += 1;
                    }
                }
            }
        }
        assert_eq!(cycles, via_points);
    }
}

#[test]
fn cosimplified_graphs_have_simple_cocycle_matroids() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let g = common::random_connected_graph(&mut rng, 9, 18);
        let w = common::random_weights(&mut rng, &g, 3);
        let cs = cosimplify(&g, &w);
        let enc = cocycle_matroid(&cs.graph).unwrap();
        assert!(enc.is_simple());
        let total: u64 = g.edge_ids().iter().map(|e| w[e]).sum::<u64>();
        let kept: u64 = cs.weights.values().sum();
        assert!(kept <= total);
        // triads on the small graph are triads of the original once lifted
        let original: BTreeSet<[EdgeId; 3]> = g.triad_sets().into_iter().collect();
        for t in cs.graph.triad_sets() {
            assert!(original.contains(&t));
        }
        if !cs.graph.edges().is_empty() && enc.ambient_dim <= 16 {
            enc.matroid().unwrap();
        }
    }
}
