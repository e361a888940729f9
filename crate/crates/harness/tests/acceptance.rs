//! Acceptance run: one line per criterion, nonzero exit if any fails.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};
use tuza_core::constructions::{
    bb_hitting_set, bb_packing_lower_bound, bose_burton_triangle_partition, build_bose_burton, build_pg, build_spread,
    is_rainbow, rainbow_coloring,
};
use tuza_core::graph::{cocycle_matroid, EdgeId, Graph};
use tuza_core::hypergraph::TriangleHypergraph;
use tuza_core::matroid::fano;
use tuza_core::solver::{
    nu, nu_oracle, solve_nu, solve_tau, tau, tau_oracle, verify_hitting, verify_packing, PackingSolution, SolveStatus,
    SolverConfig, TriangleSystem, ORACLE_MAX_TRIANGLES,
};
use tuza_core::{BinaryMatroid, WeightedMatroid};
use tuza_harness::campaign::{cographic_campaign, enumerate_rank4_campaign, sample_rank5_campaign, GraphSource};
use tuza_harness::graphs::random_connected_graph;
use tuza_harness::report::CampaignReport;
use tuza_harness::HAXELL;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn unit(m: BinaryMatroid) -> WeightedMatroid {
    WeightedMatroid::unit(m)
}

fn exact_nu(mw: &WeightedMatroid) -> Result<u64, String> {
    let r = nu(mw).map_err(|e| e.to_string())?;
    ensure(r.status == SolveStatus::Optimal && verify_packing(mw, &r.solution), "nu not proved optimal")?;
    r.optimum.ok_or_else(|| "nu unsolved".into())
}

fn exact_tau(mw: &WeightedMatroid) -> Result<u64, String> {
    let r = tau(mw).map_err(|e| e.to_string())?;
    ensure(r.status == SolveStatus::Optimal && verify_hitting(mw.matroid(), &r.solution.points), "tau not proved optimal")?;
    r.optimum.ok_or_else(|| "tau unsolved".into())
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:?}, limit {limit:?}"))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let f = unit(fano());
    let (n, t) = (exact_nu(&f)?, exact_tau(&f)?);
    ensure((n, t) == (1, 3), format!("nu {n}, tau {t}"))?;
    within(start, Duration::from_secs(1), "Fano")?;
    Ok(format!("nu(F7) = 1, tau(F7) = 3 in {:?}", start.elapsed()))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut notes = Vec::new();
    for n in [4usize, 5] {
        let t = exact_tau(&unit(build_pg(n).map_err(|e| e.to_string())?))?;
        ensure(t == (1 << (n - 1)) - 1, format!("tau(PG({},2)) = {t}", n - 1))?;
        notes.push(format!("tau(PG({},2))={t}", n - 1));
    }
    // n = 6: a hyperplane hits every triangle, and its complement, an affine
    // space, is triangle-free, so nothing smaller works there either
    let pg6 = build_pg(6).map_err(|e| e.to_string())?;
    let hyperplane = bb_hitting_set(&build_bose_burton(6, 6).map_err(|e| e.to_string())?);
    ensure(hyperplane.weight == 31 && verify_hitting(&pg6, &hyperplane.points), "PG(5,2) hyperplane does not hit")?;
    let affine = pg6.restrict(|p| !hyperplane.points.contains(&p));
    ensure(affine.len() == 32 && affine.triangles().is_empty(), "PG(5,2) affine part has triangles")?;
    let solved = exact_tau(&unit(pg6.clone()))?;
    ensure(solved == 31, format!("solver gives tau(PG(5,2)) = {solved}"))?;
    notes.push("tau(PG(5,2))=31".into());
    for n in [4usize, 6] {
        let spread = build_spread(n, 2).map_err(|e| e.to_string())?;
        spread.validate().map_err(|e| e.to_string())?;
        let list: Vec<[u32; 3]> = spread.triangles().iter().map(|t| t.points()).collect();
        let mw = unit(build_pg(n).map_err(|e| e.to_string())?);
        ensure(verify_packing(&mw, &PackingSolution::from_list(&list)), "spread is not a packing")?;
        let bound = ((1u64 << n) - 1) / 3;
        ensure(list.len() as u64 == bound, format!("spread of PG({},2) has {} lines", n - 1, list.len()))?;
        notes.push(format!("nu(PG({},2))={bound}", n - 1));
    }
    let nu5 = exact_nu(&unit(build_pg(5).map_err(|e| e.to_string())?))?;
    ensure(nu5 == 9, format!("nu(PG(4,2)) = {nu5}"))?;
    notes.push("nu(PG(4,2))=9".into());
    within(start, Duration::from_secs(600), "projective formulas")?;
    Ok(format!("{} in {:?}", notes.join(", "), start.elapsed()))
}

fn criterion_3() -> Check {
    let limit = Duration::from_secs(60);
    let start = Instant::now();
    let b = unit(build_bose_burton(4, 2).map_err(|e| e.to_string())?.matroid);
    let (t, n) = (exact_tau(&b)?, exact_nu(&b)?);
    ensure((t, n) == (4, 4), format!("BB(4,2,2): tau {t}, nu {n}"))?;
    within(start, limit, "BB(4,2,2)")?;
    let start = Instant::now();
    let bb = build_bose_burton(5, 3).map_err(|e| e.to_string())?;
    let mw = unit(bb.matroid.clone());
    let t = exact_tau(&mw)?;
    ensure(t == 12, format!("tau(BB(5,3,2)) = {t}"))?;
    let pb = bb_packing_lower_bound(5, 3).map_err(|e| e.to_string())?;
    let list: Vec<[u32; 3]> = pb.triangles.iter().map(|t| t.points()).collect();
    ensure(verify_packing(&mw, &PackingSolution::from_list(&list)), "BB(5,3,2) packing invalid")?;
    ensure(pb.value >= 8 && pb.value == list.len() as u64, format!("packing {}", pb.value))?;
    let n = exact_nu(&mw)?;
    ensure(n >= pb.value, "solver below construction")?;
    within(start, limit, "BB(5,3,2)")?;
    Ok(format!("BB(4,2,2) tau=nu=4; BB(5,3,2) tau=12, packing {} (solver nu {n})", pb.value))
}

fn criterion_4() -> Check {
    let bb = build_bose_burton(3, 2).map_err(|e| e.to_string())?;
    let sys = TriangleSystem::from_matroid(&unit(bb.matroid.clone()));
    let n = nu_oracle(&sys).map_err(|e| e.to_string())?;
    let t = tau_oracle(&sys).map_err(|e| e.to_string())?;
    ensure(n == 1, format!("oracle nu(BB(3,2,2)) = {n}"))?;
    ensure(bose_burton_triangle_partition(&bb).is_err(), "BB(3,2,2) partition should be refused")?;
    let pb = bb_packing_lower_bound(3, 2).map_err(|e| e.to_string())?;
    ensure(pb.adjusted && pb.value == 1 && pb.formula == 2, "discrepancy flag not recorded")?;
    ensure(t == 2 && t <= 2 * n, format!("tau {t}"))?;
    Ok(format!("nu(BB(3,2,2)) = {n} (formula {}, flagged), tau = {t} <= 2 nu", pb.formula))
}

fn clean(r: &CampaignReport) -> Result<(), String> {
    let c = &r.canonical;
    ensure(c.violations.is_empty(), format!("{} violations in {}: {:?}", c.violations.len(), c.campaign, c.violations.first()))?;
    ensure(c.counts.unsolved == 0, format!("{} unsolved in {}", c.counts.unsolved, c.campaign))
}

fn criterion_5(reports: &mut Vec<CampaignReport>) -> Check {
    let start = Instant::now();
    let config = SolverConfig::default();
    let all = cographic_campaign(&GraphSource::Exhaustive { max_vertices: 6 }, &config);
    clean(&all)?;
    ensure(all.canonical.counts.instances == 143, "expected 143 connected graphs on at most 6 vertices")?;
    let random = cographic_campaign(
        &GraphSource::Random { count: 500, seed: 1, max_vertices: 12, max_edges: 24, max_weight: 3 },
        &config,
    );
    clean(&random)?;
    ensure(random.canonical.counts.instances == 500, "expected 500 random graphs")?;
    for r in [&all, &random] {
        for c in &r.canonical.classes {
            let cert = c.certificate.as_ref().ok_or("missing certificate")?;
            ensure(cert.valid && cert.w_r <= 2 * cert.packed, format!("certificate at {}", c.key))?;
            if let (Some(n), Some(t)) = (c.nu, c.tau) {
                ensure(t <= 2 * n, format!("tau > 2 nu at {}", c.key))?;
            }
        }
    }
    within(start, Duration::from_secs(900), "cographic sweep")?;
    let msg = format!(
        "{} graphs (<= 6 vertices) and 500 random weighted graphs certified, {} with triads, in {:?}",
        all.canonical.counts.instances,
        all.canonical.classes.len() + random.canonical.classes.len(),
        start.elapsed()
    );
    reports.push(all);
    reports.push(random);
    Ok(msg)
}

fn criterion_6(reports: &mut Vec<CampaignReport>) -> Check {
    let config = SolverConfig::default();
    let start = Instant::now();
    let r4 = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?
        .install(|| enumerate_rank4_campaign(&config));
    let r4_time = start.elapsed();
    clean(&r4)?;
    ensure(r4.canonical.counts.instances == 1 << 15, "rank-4 campaign did not see every subset")?;
    let total: u64 = r4.canonical.classes.iter().map(|c| c.multiplicity).sum();
    ensure(total == 1 << 15, "class multiplicities do not add up")?;
    within(start, Duration::from_secs(3600), "rank-4 campaign")?;
    let r5 = sample_rank5_campaign(1000, 1, &config);
    clean(&r5)?;
    let msg = format!(
        "rank 4: {} classes, 0 violations in {:?} on one thread; rank 5: 1000 samples, {} classes, 0 violations",
        r4.canonical.counts.classes, r4_time, r5.canonical.counts.classes
    );
    reports.push(r4);
    reports.push(r5);
    Ok(msg)
}

fn criterion_7(reports: &[CampaignReport]) -> Check {
    let mut checked = 0;
    for r in reports {
        let weighted = r.canonical.parameters.get("source").map(String::as_str) == Some("random");
        for c in &r.canonical.classes {
            if !c.fano_free || weighted {
                continue;
            }
            let (Some(n), Some(t)) = (c.nu, c.tau) else { continue };
            ensure(23 * t <= 66 * n, format!("{}: tau {t} > 66/23 nu {n}", c.key))?;
            ensure(HAXELL.admits(t, n), "constant disagrees with direct comparison")?;
            checked += 1;
        }
    }
    ensure(checked > 0, "no Fano-free instances seen")?;
    Ok(format!("{checked} Fano-free classes satisfy 23 tau <= 66 nu"))
}

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

fn random_min_degree_two_linear(rng: &mut ChaCha8Rng) -> Vec<[usize; 3]> {
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
        if !edges.is_empty() {
            return edges;
        }
    }
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..200 {
        let g = random_connected_graph(&mut rng, 9, 16);
        let triads: BTreeSet<[EdgeId; 3]> = g.triad_sets().into_iter().collect();
        let cographic: BTreeSet<[EdgeId; 3]> =
            cocycle_matroid(&g).map_err(|e| e.to_string())?.triangles().into_iter().collect();
        ensure(triads == cographic && triads == bonds_by_bipartition(&g), format!("duality fails on graph {i}"))?;
    }
    for i in 0..500 {
        let edges = random_min_degree_two_linear(&mut rng);
        let vertices = edges.iter().flatten().max().map_or(0, |v| v + 1);
        let h = TriangleHypergraph::new(vertices, edges.clone()).map_err(|e| e.to_string())?;
        let cycle = h.find_linear_cycle().ok_or(format!("no linear cycle in hypergraph {i}"))?;
        let k = cycle.edges.len();
        ensure(k >= 3, "cycle too short")?;
        for a in 0..k {
            for b in a + 1..k {
                let (x, y) = (edges[cycle.edges[a]], edges[cycle.edges[b]]);
                let shared = x.iter().filter(|v| y.contains(v)).count();
                let adjacent = b == a + 1 || (a == 0 && b == k - 1);
                ensure(shared == usize::from(adjacent), format!("hypergraph {i}: bad cycle"))?;
            }
        }
    }
    let mut compared = 0;
    while compared < 300 {
        let dim = rng.gen_range(3..=5u8);
        let size = rng.gen_range(0..=12usize.min((1 << dim) - 1));
        let points: Vec<u32> = rand::seq::index::sample(&mut rng, (1 << dim) - 1, size).iter().map(|i| i as u32 + 1).collect();
        let m = BinaryMatroid::new(dim, points).map_err(|e| e.to_string())?;
        if m.triangles().len() > ORACLE_MAX_TRIANGLES {
            continue;
        }
        let w = (0..m.len()).map(|_| rng.gen_range(0..=3)).collect();
        let mw = WeightedMatroid::new(m, w).map_err(|e| e.to_string())?;
        let sys = TriangleSystem::from_matroid(&mw);
        let cfg = SolverConfig::default();
        let n = solve_nu(&sys, &cfg).map_err(|e| e.to_string())?.optimum;
        let t = solve_tau(&sys, &cfg).map_err(|e| e.to_string())?.optimum;
        ensure(n == nu_oracle(&sys).ok() && t == tau_oracle(&sys).ok(), format!("solver disagrees with oracle on {mw:?}"))?;
        compared += 1;
    }
    let mut rainbow = 0;
    for dim in 1..=4u8 {
        for mask in 0u64..1 << ((1 << dim) - 1) {
            let m = BinaryMatroid::from_subset_mask(dim, mask).map_err(|e| e.to_string())?;
            if m.critical_number().map_err(|e| e.to_string())? <= 2 {
                let colors = rainbow_coloring(&m).map_err(|e| e.to_string())?;
                ensure(is_rainbow(&m, &colors), format!("colouring fails on {mask:#x}"))?;
                rainbow += 1;
            }
        }
    }
    Ok(format!(
        "duality on 200 graphs, linear cycles in 500 hypergraphs, 300 solver/oracle comparisons, {rainbow} rainbow colourings"
    ))
}

fn main() {
    let mut reports = Vec::new();
    let results: Vec<(&str, Check)> = vec![
        ("1 Fano numbers", criterion_1()),
        ("2 projective formulas", criterion_2()),
        ("3 Bose-Burton", criterion_3()),
        ("4 BB(3,2,2) edge case", criterion_4()),
        ("5 cographic certifier", criterion_5(&mut reports)),
        ("6 small matroid search", criterion_6(&mut reports)),
        ("7 Haxell bound", criterion_7(&reports)),
        ("8 property suites", criterion_8()),
    ];
    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
