//! Extremal objects: projective geometries, spreads, partial spreads,
//! Bose-Burton geometries with their hitting sets and triangle partitions,
//! and the rainbow colouring of matroids with critical number at most 2.

use crate::error::{Error, Result};
use crate::matroid::{BinaryMatroid, Triangle};
use crate::projective::{check_dim, field_table, hyperplanes_through, point_count, Flat};
use crate::solver::HittingSolution;
use serde::Serialize;
use std::collections::BTreeMap;

/// The full geometry PG(n-1, 2) as a rank-`n` matroid.
pub fn build_pg(n: usize) -> Result<BinaryMatroid> {
    if !(1..=12).contains(&n) {
        return Err(Error::DimensionOutOfRange(n));
    }
    BinaryMatroid::full(n as u8)
}

/// A partition of the nonzero points of PG(n-1, 2) into rank-`d` flats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spread {
    pub n: usize,
    pub d: usize,
    pub members: Vec<Flat>,
}

impl Spread {
    pub fn validate(&self) -> Result<()> {
        let total = point_count(self.n as u8) as usize;
        let mut seen = vec![false; total + 1];
        for f in &self.members {
            if f.rank() != self.d {
                return Err(Error::Internal(format!("spread member of rank {} instead of {}", f.rank(), self.d)));
            }
            for p in f.points() {
                if std::mem::replace(&mut seen[p as usize], true) {
                    return Err(Error::Internal(format!("point {p:#x} covered twice")));
                }
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Internal("spread misses a point".into()));
        }
        let expected = total / ((1 << self.d) - 1);
        if self.members.len() != expected {
            return Err(Error::Internal(format!("{} members, expected {expected}", self.members.len())));
        }
        Ok(())
    }

    /// Members of rank 2 as triangles.
    pub fn triangles(&self) -> Vec<Triangle> {
        self.members
            .iter()
            .filter(|f| f.rank() == 2)
            .map(|f| {
                let p = f.points();
                Triangle::new(p[0], p[1], p[2]).expect("rank-2 flat is a triangle")
            })
            .collect()
    }
}

/// Spread of PG(n-1, 2) by rank-`d` flats: identify points with the nonzero
/// elements of GF(2^n); the members are the cosets of the multiplicative
/// group of the subfield GF(2^d).
pub fn build_spread(n: usize, d: usize) -> Result<Spread> {
    let dim = check_dim(n)?;
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::Precondition(format!("no spread of PG({},2) by rank-{d} flats: {d} does not divide {n}", n - 1)));
    }
    let field = field_table(n as u32)?;
    let order = field.order();
    let step = order / ((1u32 << d) - 1);
    let members = (0..step)
        .map(|i| {
            let coset = (0..(1u32 << d) - 1).map(|j| field.antilog(i + j * step));
            Flat::from_masks(dim, coset)
        })
        .collect();
    let spread = Spread { n, d, members };
    spread.validate()?;
    Ok(spread)
}

/// Disjoint triangles of PG(n-1, 2) plus the uncovered points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSpread {
    pub n: usize,
    pub triangles: Vec<Triangle>,
    pub leftover: Vec<u32>,
}

impl PartialSpread {
    pub fn validate(&self) -> Result<()> {
        let total = point_count(self.n as u8) as usize;
        let mut seen = vec![false; total + 1];
        let all = self.triangles.iter().flat_map(|t| t.points()).chain(self.leftover.iter().copied());
        for p in all {
            if p == 0 || p as usize > total || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::Internal(format!("point {p:#x} repeated or out of range")));
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Internal("partial spread misses a point".into()));
        }
        match self.leftover.len() {
            0 => Ok(()),
            4 if is_four_circuit(&self.leftover) => Ok(()),
            _ => Err(Error::Internal(format!("leftover {:?} is neither empty nor a 4-circuit", self.leftover))),
        }
    }
}

/// Four points with zero sum, any three independent.
pub fn is_four_circuit(points: &[u32]) -> bool {
    if points.len() != 4 || points.iter().fold(0, |a, &p| a ^ p) != 0 {
        return false;
    }
    (0..4).all(|skip| {
        let three: Vec<u32> = (0..4).filter(|&i| i != skip).map(|i| points[i]).collect();
        crate::projective::rank_of_masks(three) == 3
    })
}

/// Triangles of PG(n-1, 2) covering all points (`n` even) or all but a
/// 4-circuit (`n` odd).
pub fn build_partial_spread(n: usize) -> Result<PartialSpread> {
    if !(2..=16).contains(&n) {
        return Err(Error::DimensionOutOfRange(n));
    }
    let ps = if n.is_multiple_of(2) {
        PartialSpread { n, triangles: build_spread(n, 2)?.triangles(), leftover: Vec::new() }
    } else {
        // PG(m-1,2) splits into BB(m,2,2) on the top two coordinates and
        // PG(m-3,2) on the rest, down to the plane
        let mut triangles = Vec::new();
        let mut m = n;
        while m > 3 {
            triangles.extend(bb2_partition(m)?);
            m -= 2;
        }
        triangles.push(Triangle([1, 2, 3]));
        PartialSpread { n, triangles, leftover: vec![4, 5, 6, 7] }
    };
    ps.validate()?;
    Ok(ps)
}

/// The Bose-Burton geometry BB(n, k, 2): PG(n-1, 2) minus a rank-`(n-k)` flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoseBurton {
    pub n: usize,
    pub k: usize,
    /// Spanned by the first `n - k` unit vectors.
    pub q: Flat,
    pub matroid: BinaryMatroid,
}

pub fn build_bose_burton(n: usize, k: usize) -> Result<BoseBurton> {
    let dim = check_dim(n)?;
    if k > n {
        return Err(Error::Precondition(format!("k = {k} exceeds n = {n}")));
    }
    let q = Flat::from_masks(dim, (0..n - k).map(|i| 1u32 << i));
    let low = (1u32 << (n - k)) - 1;
    let matroid = BinaryMatroid::full(dim)?.restrict(|p| p & !low != 0);
    Ok(BoseBurton { n, k, q, matroid })
}

/// The points of a hyperplane through `Q` (top coordinate zero) outside `Q`;
/// empty when `k < 2`.
pub fn bb_hitting_set(b: &BoseBurton) -> HittingSolution {
    if b.k < 2 {
        return HittingSolution { points: Vec::new(), weight: 0 };
    }
    let top = 1u32 << (b.n - 1);
    let points: Vec<u32> = b.matroid.points().iter().copied().filter(|p| p & top == 0).collect();
    HittingSolution { weight: points.len() as u64, points }
}

/// Partition of BB(m, 2, 2) (low `m` coordinates) into `2^(m-2)` triangles.
fn bb2_partition(m: usize) -> Result<Vec<Triangle>> {
    match m {
        2 => return Ok(vec![Triangle([1, 2, 3])]),
        3 => {
            return Err(Error::Unsupported(
                "BB(3,2,2) has no triangle partition: its packing number is 1, not 2".into(),
            ))
        }
        _ if !(2..=16).contains(&m) => return Err(Error::DimensionOutOfRange(m)),
        _ => {}
    }
    let field = field_table(m as u32 - 2)?;
    let lambda = field.generator();
    let alpha = 1u32 << (m - 2);
    let beta = 1u32 << (m - 1);
    let out: Vec<Triangle> = (0..1u32 << (m - 2))
        .map(|q| {
            let lq = field.mul(lambda, q);
            Triangle::new(alpha ^ q, beta ^ lq, alpha ^ beta ^ q ^ lq).expect("coset triple sums to zero")
        })
        .collect();
    check_partition(&out, m)?;
    Ok(out)
}

fn check_partition(tris: &[Triangle], m: usize) -> Result<()> {
    let low = (1u32 << (m - 2)) - 1;
    let mut seen = vec![false; 1 << m];
    for t in tris {
        for p in t.points() {
            if p & !low == 0 || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::Internal(format!("triangle partition reuses or misplaces {p:#x}")));
            }
        }
    }
    if tris.len() * 3 != (1 << m) - (1 << (m - 2)) {
        return Err(Error::Internal("triangle partition does not cover".into()));
    }
    Ok(())
}

/// Disjoint triangles covering BB(n, 2, 2).
pub fn bose_burton_triangle_partition(b: &BoseBurton) -> Result<Vec<Triangle>> {
    if b.k != 2 {
        return Err(Error::Precondition(format!("triangle partition needs k = 2, got {}", b.k)));
    }
    bb2_partition(b.n)
}

/// A packing of BB(n, k, 2) built by peeling off BB(m, 2, 2) layers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingBound {
    pub n: usize,
    pub k: usize,
    /// Number of triangles actually packed.
    pub value: u64,
    /// `2^n (1 - 4^-floor(k/2)) / 3`.
    pub formula: u64,
    /// Set when a layer fell on the plane, where only one triangle fits.
    pub adjusted: bool,
    pub triangles: Vec<Triangle>,
}

pub fn bb_packing_lower_bound(n: usize, k: usize) -> Result<PackingBound> {
    if !(2..=n).contains(&k) || n > 16 {
        return Err(Error::Precondition(format!("need 2 <= k <= n <= 16, got n = {n}, k = {k}")));
    }
    let j = k / 2;
    let formula = ((1u64 << (2 * j)) - 1) / 3 * (1u64 << (n - 2 * j));
    let mut triangles = Vec::new();
    let mut adjusted = false;
    let (mut m, mut kk) = (n, k);
    while kk >= 2 {
        if m == 3 {
            // BB(3,2,2): Fano minus a point, packing number 1
            triangles.push(Triangle([2, 4, 6]));
            adjusted = true;
        } else {
            triangles.extend(bb2_partition(m)?);
        }
        m -= 2;
        kk -= 2;
    }
    Ok(PackingBound { n, k, value: triangles.len() as u64, formula, adjusted, triangles })
}

/// Colours in {1, 2, 3} by which of the three hyperplanes through an avoiding
/// rank-`(n-2)` flat holds each point; every triangle becomes rainbow.
pub fn rainbow_coloring(m: &BinaryMatroid) -> Result<BTreeMap<u32, u8>> {
    let n = m.ambient_dim() as usize;
    if n < 2 {
        return Ok(m.points().iter().map(|&p| (p, 1)).collect());
    }
    let q = m
        .avoiding_flat(n - 2)
        .ok_or_else(|| Error::Precondition("critical number exceeds 2".into()))?;
    let hs = hyperplanes_through(&q);
    debug_assert_eq!(hs.len(), 3);
    let mut colors = BTreeMap::new();
    for &p in m.points() {
        let c = hs.iter().position(|h| h.contains(p)).expect("a point off Q lies on a hyperplane through Q");
        colors.insert(p, c as u8 + 1);
    }
    if !is_rainbow(m, &colors) {
        return Err(Error::Internal("colouring is not rainbow".into()));
    }
    Ok(colors)
}

/// Every triangle sees three distinct colours.
pub fn is_rainbow(m: &BinaryMatroid, colors: &BTreeMap<u32, u8>) -> bool {
    m.triangles().iter().all(|t| {
        let [a, b, c] = t.points().map(|p| colors.get(&p).copied());
        a.is_some() && a != b && b != c && a != c
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::verify_hitting;

    #[test]
    fn pg_sizes() {
        assert_eq!(build_pg(2).unwrap().len(), 3);
        assert_eq!(build_pg(3).unwrap(), crate::matroid::fano());
        assert_eq!(build_pg(4).unwrap().len(), 15);
        assert!(build_pg(0).is_err());
        assert!(build_pg(13).is_err());
    }

    #[test]
    fn spreads() {
        let s = build_spread(4, 2).unwrap();
        assert_eq!(s.members.len(), 5);
        assert_eq!(s.triangles().len(), 5);
        assert_eq!(build_spread(5, 5).unwrap().members.len(), 1);
        let s63 = build_spread(6, 3).unwrap();
        assert_eq!(s63.members.len(), 9);
        assert!(s63.members.iter().all(|f| f.rank() == 3));
        assert_eq!(build_spread(6, 2).unwrap().members.len(), 21);
        assert!(build_spread(5, 2).is_err());
        assert!(build_spread(6, 4).is_err());
        for n in 1..=12 {
            for d in 1..=n {
                if n % d == 0 {
                    build_spread(n, d).unwrap();
                }
            }
        }
    }

    #[test]
    fn partial_spreads() {
        for n in 2..=11 {
            let ps = build_partial_spread(n).unwrap();
            let expected = if n % 2 == 0 { ((1 << n) - 1) / 3 } else { ((1 << n) - 5) / 3 };
            assert_eq!(ps.triangles.len(), expected, "n = {n}");
            assert_eq!(ps.leftover.len(), if n % 2 == 0 { 0 } else { 4 });
        }
        let p3 = build_partial_spread(3).unwrap();
        assert_eq!(p3.triangles.len(), 1);
        assert!(is_four_circuit(&p3.leftover));
        assert!(!is_four_circuit(&[1, 2, 3, 0]));
    }

    #[test]
    fn bose_burton_sizes() {
        assert!(build_bose_burton(4, 0).unwrap().matroid.is_empty());
        assert_eq!(build_bose_burton(3, 2).unwrap().matroid.len(), 6);
        assert_eq!(build_bose_burton(4, 2).unwrap().matroid.len(), 12);
        assert!(build_bose_burton(4, 1).unwrap().matroid.triangles().is_empty());
        for n in 1..=8 {
            for k in 0..=n {
                let b = build_bose_burton(n, k).unwrap();
                assert_eq!(b.matroid.len(), (1 << n) - (1 << (n - k)));
                assert_eq!(b.q.rank(), n - k);
                assert!(b.matroid.points().iter().all(|&p| !b.q.contains(p)));
            }
        }
    }

    #[test]
    fn bb_hitting_sets() {
        for (n, k, size) in [(4, 2, 4), (5, 3, 12), (4, 4, 7), (6, 3, 24)] {
            let b = build_bose_burton(n, k).unwrap();
            let h = bb_hitting_set(&b);
            assert_eq!(h.points.len(), size);
            assert_eq!(size, (1 << (n - 1)) - (1 << (n - k)));
            assert!(verify_hitting(&b.matroid, &h.points));
        }
        assert!(bb_hitting_set(&build_bose_burton(4, 1).unwrap()).points.is_empty());
    }

    #[test]
    fn triangle_partitions() {
        let two = bose_burton_triangle_partition(&build_bose_burton(2, 2).unwrap()).unwrap();
        assert_eq!(two, vec![Triangle([1, 2, 3])]);
        for n in 4..=10 {
            let b = build_bose_burton(n, 2).unwrap();
            let t = bose_burton_triangle_partition(&b).unwrap();
            assert_eq!(t.len(), 1 << (n - 2));
            let mut pts: Vec<u32> = t.iter().flat_map(|t| t.points()).collect();
            pts.sort_unstable();
            assert_eq!(pts, b.matroid.points());
        }
        let e = bose_burton_triangle_partition(&build_bose_burton(3, 2).unwrap()).unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)));
        assert!(bose_burton_triangle_partition(&build_bose_burton(5, 3).unwrap()).is_err());
    }

    #[test]
    fn packing_bounds() {
        let b = bb_packing_lower_bound(5, 3).unwrap();
        assert_eq!((b.value, b.formula, b.adjusted), (8, 8, false));
        assert_eq!(bb_packing_lower_bound(4, 2).unwrap().value, 4);
        let b = bb_packing_lower_bound(6, 4).unwrap();
        assert_eq!((b.value, b.formula), (20, 20));
        // falls on the plane: only one triangle instead of two
        let b = bb_packing_lower_bound(5, 4).unwrap();
        assert_eq!((b.value, b.formula, b.adjusted), (9, 10, true));
        let b = bb_packing_lower_bound(3, 2).unwrap();
        assert_eq!((b.value, b.formula, b.adjusted), (1, 2, true));

        for n in 2..=9 {
            for k in 2..=n {
                let b = bb_packing_lower_bound(n, k).unwrap();
                let bb = build_bose_burton(n, k).unwrap();
                let mut pts: Vec<u32> = b.triangles.iter().flat_map(|t| t.points()).collect();
                let len = pts.len();
                pts.sort_unstable();
                pts.dedup();
                assert_eq!(pts.len(), len, "disjoint for ({n},{k})");
                assert!(pts.iter().all(|&p| bb.matroid.contains(p)));
                assert!(b.value == b.formula || b.adjusted);
            }
        }
    }

    #[test]
    fn rainbow_examples() {
        let bb = build_bose_burton(4, 2).unwrap();
        let c = rainbow_coloring(&bb.matroid).unwrap();
        let mut sizes = [0; 3];
        for &v in c.values() {
            sizes[v as usize - 1] += 1;
        }
        assert_eq!(sizes, [4, 4, 4]);
        assert_eq!(bb.matroid.triangles().len(), 16);
        assert!(is_rainbow(&bb.matroid, &c));

        let single = BinaryMatroid::full(2).unwrap();
        let c = rainbow_coloring(&single).unwrap();
        let mut v: Vec<u8> = c.values().copied().collect();
        v.sort_unstable();
        assert_eq!(v, vec![1, 2, 3]);

        let affine = build_bose_burton(4, 1).unwrap().matroid;
        assert!(rainbow_coloring(&affine).is_ok());
        assert!(matches!(rainbow_coloring(&crate::matroid::fano()), Err(Error::Precondition(_))));
    }
}
