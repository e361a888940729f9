//! Verification campaigns over small binary matroids and graphs.

use crate::graphs::{connected_graphs, random_connected_graph, random_weights, MAX_ENUMERATION_VERTICES};
use crate::ratio::{check_pair, ratio, ratio_check, Failure, RatioRecord};
use crate::report::{CampaignReport, CertificateSummary, ClassResult, RuntimeStats};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::time::Instant;
use tuza_core::certifier::certify;
use tuza_core::graph::{cocycle_matroid, EdgeWeights, Graph};
use tuza_core::solver::{solve_nu, solve_tau, SolveStatus, SolverConfig, TriangleSystem};
use tuza_core::BinaryMatroid;

pub const RANK5_MAX_SIZE: usize = 14;

fn runtime(start: Instant) -> RuntimeStats {
    RuntimeStats { wall_ms: start.elapsed().as_millis(), jobs: rayon::current_num_threads() }
}

fn class_from_record(key: String, multiplicity: u64, r: &RatioRecord) -> ClassResult {
    ClassResult {
        key,
        multiplicity,
        size: r.size,
        triangles: r.triangles,
        nu: r.nu,
        tau: r.tau,
        ratio: r.ratio().map(|x| x.to_string()),
        fano_free: r.fano_free,
        chi: r.chi,
        certificate: None,
    }
}

/// Solves one representative per class and gathers the predicate failures.
fn matroid_classes(
    dim: u8,
    keys: &BTreeMap<u64, u64>,
    config: &SolverConfig,
) -> (Vec<ClassResult>, Vec<(String, Failure)>) {
    let entries: Vec<(u64, u64)> = keys.iter().map(|(&k, &c)| (k, c)).collect();
    let records: Vec<(String, u64, RatioRecord)> = entries
        .par_iter()
        .map(|&(key, count)| {
            let m = BinaryMatroid::from_subset_mask(dim, key).expect("canonical key is a subset");
            let name = m.canonical_form().expect("dimension at most 5");
            (name, count, ratio_check(&m, config))
        })
        .collect();
    let mut classes = Vec::with_capacity(records.len());
    let mut failures = Vec::new();
    for (name, count, r) in records {
        failures.extend(r.failures.iter().cloned().map(|f| (name.clone(), f)));
        classes.push(class_from_record(name, count, &r));
    }
    (classes, failures)
}

/// Every subset of PG(3, 2), reduced to isomorphism classes.
///
/// Subsets are sharded by their least point (shard 0 is the empty set) and
/// the per-shard class counts merged in shard order.
pub fn enumerate_rank4_campaign(config: &SolverConfig) -> CampaignReport {
    let start = Instant::now();
    let shards: Vec<BTreeMap<u64, u64>> = (0..=15u32)
        .into_par_iter()
        .map(|lead| {
            let mut counts = BTreeMap::new();
            let masks: Box<dyn Iterator<Item = u64>> = if lead == 0 {
                Box::new(std::iter::once(0))
            } else {
                let low = 1u64 << (lead - 1);
                Box::new((0..1u64 << (15 - lead)).map(move |hi| low | hi << lead))
            };
            for mask in masks {
                let m = BinaryMatroid::from_subset_mask(4, mask).expect("mask within PG(3,2)");
                *counts.entry(m.canonical_key().expect("dimension 4")).or_insert(0) += 1;
            }
            counts
        })
        .collect();
    let mut keys = BTreeMap::new();
    for shard in shards {
        for (k, c) in shard {
            *keys.entry(k).or_insert(0) += c;
        }
    }
    let (classes, failures) = matroid_classes(4, &keys, config);
    let params = BTreeMap::from([("ambient_rank".to_string(), "4".to_string()), ("subsets".to_string(), "32768".to_string())]);
    CampaignReport::new("rank4", params, classes, 0, failures, runtime(start))
}

/// The seeded sample: a size uniform in `0..=14`, then a uniform subset of
/// that size of PG(4, 2), as subset masks.
pub fn rank5_samples(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(0..=RANK5_MAX_SIZE);
            rand::seq::index::sample(&mut rng, 31, size).iter().fold(0u64, |m, i| m | 1 << i)
        })
        .collect()
}

/// `count` seeded random subsets of PG(4, 2) with at most 14 points.
pub fn sample_rank5_campaign(count: usize, seed: u64, config: &SolverConfig) -> CampaignReport {
    let start = Instant::now();
    let samples = rank5_samples(count, seed);
    let canon: Vec<u64> = samples
        .par_iter()
        .map(|&mask| BinaryMatroid::from_subset_mask(5, mask).and_then(|m| m.canonical_key()).expect("dimension 5"))
        .collect();
    let mut keys = BTreeMap::new();
    for k in canon {
        *keys.entry(k).or_insert(0) += 1;
    }
    let (classes, failures) = matroid_classes(5, &keys, config);
    let params = BTreeMap::from([
        ("ambient_rank".to_string(), "5".to_string()),
        ("count".to_string(), count.to_string()),
        ("seed".to_string(), seed.to_string()),
        ("max_size".to_string(), RANK5_MAX_SIZE.to_string()),
    ]);
    CampaignReport::new("rank5", params, classes, 0, failures, runtime(start))
}

/// Where a cographic campaign takes its graphs from.
#[derive(Debug, Clone)]
pub enum GraphSource {
    /// Connected simple graphs on at most `max_vertices <= 8` vertices, unit weights.
    Exhaustive { max_vertices: usize },
    /// Seeded random connected multigraphs with weights in `0..=max_weight`.
    Random { count: usize, seed: u64, max_vertices: usize, max_edges: usize, max_weight: u64 },
    /// Named graphs, for example read from files.
    Given(Vec<(String, Graph, EdgeWeights)>),
}

impl GraphSource {
    fn describe(&self) -> BTreeMap<String, String> {
        let pairs: Vec<(&str, String)> = match self {
            GraphSource::Exhaustive { max_vertices } => vec![("source", "exhaustive".into()), ("max_vertices", max_vertices.to_string())],
            GraphSource::Random { count, seed, max_vertices, max_edges, max_weight } => vec![
                ("source", "random".into()),
                ("count", count.to_string()),
                ("seed", seed.to_string()),
                ("max_vertices", max_vertices.to_string()),
                ("max_edges", max_edges.to_string()),
                ("max_weight", max_weight.to_string()),
            ],
            GraphSource::Given(list) => vec![("source", "given".into()), ("count", list.len().to_string())],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    /// The instances with unit weights flagged.
    pub fn instances(&self) -> Vec<(String, Graph, EdgeWeights, bool)> {
        match self {
            GraphSource::Exhaustive { max_vertices } => {
                assert!(*max_vertices <= MAX_ENUMERATION_VERTICES, "exhaustive mode supports at most 8 vertices");
                connected_graphs(*max_vertices)
                    .into_iter()
                    .map(|s| {
                        let g = s.to_graph();
                        let w = g.edge_ids().into_iter().map(|e| (e, 1)).collect();
                        (format!("n{}:{:x}", s.n, s.mask), g, w, true)
                    })
                    .collect()
            }
            GraphSource::Random { count, seed, max_vertices, max_edges, max_weight } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|i| {
                        let g = random_connected_graph(&mut rng, *max_vertices, *max_edges);
                        let w = random_weights(&mut rng, &g, *max_weight);
                        (format!("r{i}"), g, w, false)
                    })
                    .collect()
            }
            GraphSource::Given(list) => list
                .iter()
                .map(|(name, g, w)| {
                    let full: EdgeWeights = g.edge_ids().into_iter().map(|e| (e, w.get(&e).copied().unwrap_or(1))).collect();
                    let unit = full.values().all(|&x| x == 1);
                    (name.clone(), g.clone(), full, unit)
                })
                .collect(),
        }
    }
}

enum GraphOutcome {
    Skipped,
    Checked(ClassResult, Vec<Failure>),
}

fn check_graph(key: &str, g: &Graph, w: &EdgeWeights, unit: bool, config: &SolverConfig) -> GraphOutcome {
    let triads = g.triad_sets();
    if triads.is_empty() {
        return GraphOutcome::Skipped;
    }
    let mut failures = Vec::new();
    let fail = |predicate: &'static str, detail: String| Failure { predicate, detail };
    let summary = match certify(g, w) {
        Ok(cert) => {
            let valid = cert.verify(g, w);
            if !valid {
                failures.push(fail("certificate-valid", format!("{key}: certificate does not verify")));
            }
            CertificateSummary { w_r: cert.guarantee.w_r, packed: cert.packing.len() as u64, valid }
        }
        Err(e) => {
            failures.push(fail("certificate-valid", format!("certify failed: {e}")));
            CertificateSummary { w_r: 0, packed: 0, valid: false }
        }
    };
    let (nu, tau) = match cocycle_matroid(g) {
        Ok(enc) => {
            let sys = TriangleSystem::from_cographic(&enc, w);
            let optimum = |status, value: Option<u64>| (status == SolveStatus::Optimal).then_some(value).flatten();
            let nu = solve_nu(&sys, config).ok().and_then(|r| optimum(r.status, r.optimum));
            let tau = solve_tau(&sys, config).ok().and_then(|r| optimum(r.status, r.optimum));
            (nu, tau)
        }
        Err(_) => (None, None),
    };
    if let (Some(n), Some(t)) = (nu, tau) {
        failures.extend(check_pair(n, t, true, unit));
        if summary.valid && (summary.packed > n || t > summary.w_r) {
            failures.push(fail("certificate-sandwich", format!("packed {} nu {n} tau {t} wR {}", summary.packed, summary.w_r)));
        }
    }
    let class = ClassResult {
        key: key.to_string(),
        multiplicity: 1,
        size: g.edge_count(),
        triangles: triads.len(),
        nu,
        tau,
        ratio: nu.zip(tau).and_then(|(n, t)| ratio(t, n)).map(|r| r.to_string()),
        fano_free: true,
        chi: None,
        certificate: Some(summary),
    };
    GraphOutcome::Checked(class, failures)
}

/// Certifies every graph, solves it exactly where the solver finishes, and
/// checks `tau <= 2 nu` together with the certificate guarantee.
pub fn cographic_campaign(source: &GraphSource, config: &SolverConfig) -> CampaignReport {
    let start = Instant::now();
    let instances = source.instances();
    let outcomes: Vec<(String, GraphOutcome)> = instances
        .par_iter()
        .map(|(key, g, w, unit)| (key.clone(), check_graph(key, g, w, *unit, config)))
        .collect();
    let mut classes = Vec::new();
    let mut failures = Vec::new();
    let mut skipped = 0;
    for (key, outcome) in outcomes {
        match outcome {
            GraphOutcome::Skipped => skipped += 1,
            GraphOutcome::Checked(class, fs) => {
                failures.extend(fs.into_iter().map(|f| (key.clone(), f)));
                classes.push(class);
            }
        }
    }
    CampaignReport::new("cographic", source.describe(), classes, skipped, failures, runtime(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank5_samples_are_deterministic() {
        assert_eq!(rank5_samples(20, 4), rank5_samples(20, 4));
        assert_ne!(rank5_samples(20, 4), rank5_samples(20, 5));
        assert!(rank5_samples(200, 1).iter().all(|m| m.count_ones() as usize <= RANK5_MAX_SIZE && *m >> 31 == 0));
    }

    #[test]
    fn empty_rank5_campaign() {
        let r = sample_rank5_campaign(0, 1, &SolverConfig::default());
        assert_eq!(r.canonical.counts.instances, 0);
        assert!(r.canonical.classes.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn k4_and_trees() {
        let k4 = Graph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let path = Graph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let unit = |g: &Graph| g.edge_ids().into_iter().map(|e| (e, 1)).collect::<EdgeWeights>();
        let src = GraphSource::Given(vec![("k4".into(), k4.clone(), unit(&k4)), ("path".into(), path.clone(), unit(&path))]);
        let r = cographic_campaign(&src, &SolverConfig::default());
        assert_eq!(r.canonical.counts.skipped, 1);
        let c = &r.canonical.classes[0];
        assert_eq!((c.nu, c.tau), (Some(1), Some(2)));
        assert_eq!(r.exit_code(), 0);
    }
}
