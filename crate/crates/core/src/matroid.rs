//! Simple binary matroids `(E, PG(n-1, 2))`.

use crate::error::{Error, Result};
use crate::projective::{check_dim, parity, point_count, Flat, LinearMap, Point, XorBasis};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A set of distinct nonzero points of PG(n-1, 2), kept in increasing numeric order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatroid {
    dim: u8,
    ground: Vec<u32>,
    member: Vec<u64>,
}

impl BinaryMatroid {
    pub fn new(dim: u8, points: impl IntoIterator<Item = u32>) -> Result<Self> {
        let dim = check_dim(dim as usize)?;
        let mut ground: Vec<u32> = points.into_iter().collect();
        ground.sort_unstable();
        for w in ground.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePoint(w[0]));
            }
        }
        if let Some(&bad) = ground.iter().find(|&&p| p == 0 || p > point_count(dim)) {
            return Err(Error::InvalidPoint { point: bad, dim });
        }
        Ok(Self::from_sorted(dim, ground))
    }

    fn from_sorted(dim: u8, ground: Vec<u32>) -> Self {
        let mut member = vec![0u64; (1usize << dim).div_ceil(64)];
        for &p in &ground {
            member[(p >> 6) as usize] |= 1 << (p & 63);
        }
        BinaryMatroid { dim, ground, member }
    }

    /// Builds from points; duplicates are collapsed.
    pub fn from_point_set(dim: u8, points: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut v: Vec<u32> = points.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self::new(dim, v)
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Invalid("empty point list has no ambient dimension".into()));
        };
        let dim = first.ambient_dim();
        if let Some(p) = points.iter().find(|p| p.ambient_dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.ambient_dim() });
        }
        Self::new(dim, points.iter().map(|p| p.bits()))
    }

    pub fn empty(dim: u8) -> Result<Self> {
        Self::new(dim, [])
    }

    /// The whole geometry PG(dim-1, 2).
    pub fn full(dim: u8) -> Result<Self> {
        let dim = check_dim(dim as usize)?;
        Ok(Self::from_sorted(dim, (1..=point_count(dim)).collect()))
    }

    /// Ground set from the bits of `mask`, bit `p - 1` standing for point `p`.
    pub fn from_subset_mask(dim: u8, mask: u64) -> Result<Self> {
        let dim = check_dim(dim as usize)?;
        if dim > 6 {
            return Err(Error::Unsupported(format!("subset masks cover dimension <= 6, got {dim}")));
        }
        let ground = (1..=point_count(dim)).filter(|&p| mask >> (p - 1) & 1 == 1).collect();
        Ok(Self::from_sorted(dim, ground))
    }

    pub fn ambient_dim(&self) -> u8 {
        self.dim
    }

    pub fn points(&self) -> &[u32] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    #[inline]
    pub fn contains(&self, p: u32) -> bool {
        p != 0 && p <= point_count(self.dim) && self.member[(p >> 6) as usize] >> (p & 63) & 1 == 1
    }

    pub fn index_of(&self, p: u32) -> Option<usize> {
        self.ground.binary_search(&p).ok()
    }

    /// GF(2) rank of the ground set.
    pub fn rank(&self) -> usize {
        crate::projective::rank_of_masks(self.ground.iter().copied())
    }

    pub fn restrict(&self, keep: impl Fn(u32) -> bool) -> Self {
        Self::from_sorted(self.dim, self.ground.iter().copied().filter(|&p| keep(p)).collect())
    }

    pub fn without(&self, p: u32) -> Self {
        self.restrict(|x| x != p)
    }

    /// Image under a linear bijection of the ambient space.
    pub fn map(&self, phi: &LinearMap) -> Result<Self> {
        if phi.source_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: phi.source_dim() });
        }
        let mut pts = Vec::with_capacity(self.len());
        for &p in &self.ground {
            match phi.apply_mask(p) {
                0 => return Err(Error::NotInjective(p)),
                q => pts.push(q),
            }
        }
        Self::new(phi.target_dim(), pts)
    }

    /// Characteristic bitmask, bit `p - 1` for point `p`. Only meaningful for dimension <= 6.
    pub fn subset_mask(&self) -> u64 {
        debug_assert!(self.dim <= 6);
        self.ground.iter().fold(0, |acc, &p| acc | 1 << (p - 1))
    }

    /// All triangles, each listed once, in lexicographic order.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for (i, &a) in self.ground.iter().enumerate() {
            for &b in &self.ground[i + 1..] {
                let c = a ^ b;
                if c > b && self.contains(c) {
                    out.push(Triangle([a, b, c]));
                }
            }
        }
        out
    }

    /// Number of triangles through each point, aligned with [`points`](Self::points).
    pub fn triangle_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.len()];
        for (i, &a) in self.ground.iter().enumerate() {
            for &b in &self.ground {
                if b != a && self.contains(a ^ b) {
                    deg[i] += 1;
                }
            }
            deg[i] /= 2;
        }
        deg
    }

    /// Finds a restriction isomorphic to the Fano plane.
    ///
    /// The embedding sends the unit vectors of PG(2, 2) to three independent
    /// points `a < b < c` whose whole span lies in `E`.
    pub fn contains_fano(&self) -> Option<Embedding> {
        if self.len() < 7 {
            return None;
        }
        for (i, &a) in self.ground.iter().enumerate() {
            for (j, &b) in self.ground.iter().enumerate().skip(i + 1) {
                if !self.contains(a ^ b) {
                    continue;
                }
                for &c in &self.ground[j + 1..] {
                    if c == a ^ b {
                        continue;
                    }
                    if self.contains(a ^ c) && self.contains(b ^ c) && self.contains(a ^ b ^ c) {
                        let map = LinearMap::new(vec![a, b, c], self.dim).ok()?;
                        return Some(Embedding {
                            map,
                            source: fano(),
                            target: self.clone(),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_fano_free(&self) -> bool {
        self.contains_fano().is_none()
    }

    /// Canonical form under the general linear group of the ambient space.
    ///
    /// Character `p - 1` of a characteristic string is `'1'` when point `p`
    /// is in the image `phi(E)`. The result is the lexicographically least
    /// such string when `E` holds at least half the points and the greatest
    /// one otherwise. Two matroids of the same ambient dimension get the same
    /// string exactly when they are isomorphic.
    pub fn canonical_form(&self) -> Result<String> {
        let key = self.canonical_key()?;
        let len = point_count(self.dim) as usize;
        Ok((0..len).map(|i| if key >> i & 1 == 1 { '1' } else { '0' }).collect())
    }

    /// [`canonical_form`](Self::canonical_form) packed as a subset mask (bit `p - 1` for point `p`).
    pub fn canonical_key(&self) -> Result<u64> {
        if self.dim > 5 {
            return Err(Error::Unsupported(format!(
                "canonical form needs ambient dimension <= 5, got {}",
                self.dim
            )));
        }
        let total = point_count(self.dim) as usize;
        if self.is_empty() || self.len() == total {
            return Ok(self.subset_mask());
        }
        // the greatest string of E is the complement of the least string of its complement
        let dense = 2 * self.len() >= total;
        let complement = BinaryMatroid::full(self.dim)?.restrict(|p| !self.contains(p));
        let (target, other) = if dense { (self, &complement) } else { (&complement, self) };
        let mut search = MinImage {
            m: target,
            outside: other.points(),
            images: vec![0; self.dim as usize],
            best: vec![None; self.dim as usize],
        };
        search.descend(0, &mut XorBasis::new());
        let mut key = 0u64;
        for (level, seg) in search.best.iter().enumerate() {
            let width = 1u32 << level;
            let seg = seg.expect("search always completes a full basis");
            // segment bit (width - 1 - t) holds point 2^level + t
            for t in 0..width {
                if seg >> (width - 1 - t) & 1 == 1 {
                    key |= 1 << ((1u64 << level) + t as u64 - 1);
                }
            }
        }
        Ok(if dense { key } else { !key & ((1u64 << total) - 1) })
    }

    /// Some flat of rank exactly `rank` whose nonzero points avoid `E`.
    pub fn avoiding_flat(&self, rank: usize) -> Option<Flat> {
        let n = self.dim as usize;
        if rank > n {
            return None;
        }
        let k = n - rank;
        let mut chosen = Vec::with_capacity(k);
        if cover_by_functionals(self, k, &mut chosen, &mut XorBasis::new()) {
            Some(Flat::from_masks(self.dim, chosen).annihilator())
        } else {
            None
        }
    }

    /// The critical number: least `k` such that some rank-`(n - k)` flat avoids `E`.
    pub fn critical_number(&self) -> Result<usize> {
        if self.dim > 12 {
            return Err(Error::Unsupported(format!(
                "critical number needs ambient dimension <= 12, got {}",
                self.dim
            )));
        }
        let n = self.dim as usize;
        for k in 0..n {
            if self.avoiding_flat(n - k).is_some() {
                return Ok(k);
            }
        }
        Ok(n)
    }
}

/// Depth-first min-image search; level `j` fixes the preimage of unit vector `j`
/// and thereby the membership of target points `2^j .. 2^(j+1) - 1`.
struct MinImage<'a> {
    m: &'a BinaryMatroid,
    /// Points not in `m`.
    outside: &'a [u32],
    images: Vec<u32>,
    best: Vec<Option<u32>>,
}

impl MinImage<'_> {
    fn descend(&mut self, level: usize, basis: &mut XorBasis) {
        let n = self.m.dim as usize;
        if level == n {
            return;
        }
        if self.outside.iter().all(|&p| basis.contains(p)) {
            // every later point lies in `m`, so all completions give all-ones segments
            for (l, slot) in self.best.iter_mut().enumerate().skip(level) {
                *slot = Some(((1u64 << (1u32 << l)) - 1) as u32);
            }
            return;
        }
        let top = point_count(self.m.dim);
        for v in 1..=top {
            if basis.contains(v) {
                continue;
            }
            self.images[level] = v;
            let width = 1u32 << level;
            let mut seg = 0u32;
            for t in 0..width {
                let pre = v ^ self.image_of(t);
                seg = (seg << 1) | self.m.contains(pre) as u32;
            }
            match self.best[level] {
                Some(b) if seg > b => continue,
                Some(b) if seg == b => {}
                _ => {
                    self.best[level] = Some(seg);
                    for later in self.best[level + 1..].iter_mut() {
                        *later = None;
                    }
                }
            }
            let mut next = basis.clone();
            next.insert(v);
            self.descend(level + 1, &mut next);
        }
    }

    #[inline]
    fn image_of(&self, mut t: u32) -> u32 {
        let mut out = 0;
        while t != 0 {
            out ^= self.images[t.trailing_zeros() as usize];
            t &= t - 1;
        }
        out
    }
}

/// Chooses `k` independent functionals so that every point of `E` is nonzero
/// under at least one of them.
fn cover_by_functionals(
    m: &BinaryMatroid,
    k: usize,
    chosen: &mut Vec<u32>,
    basis: &mut XorBasis,
) -> bool {
    let uncovered = m
        .points()
        .iter()
        .copied()
        .find(|&e| chosen.iter().all(|&f| !parity(f & e)));
    let Some(e) = uncovered else {
        // pad with arbitrary independent functionals
        let mut b = basis.clone();
        let mut extra = Vec::new();
        for f in 1..=point_count(m.dim) {
            if chosen.len() + extra.len() == k {
                break;
            }
            if b.insert(f) {
                extra.push(f);
            }
        }
        if chosen.len() + extra.len() == k {
            chosen.extend(extra);
            return true;
        }
        return false;
    };
    if chosen.len() == k {
        return false;
    }
    for f in 1..=point_count(m.dim) {
        if !parity(f & e) || basis.reduce(f) != f {
            continue;
        }
        let mut next = basis.clone();
        next.insert(f);
        chosen.push(f);
        if cover_by_functionals(m, k, chosen, &mut next) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// PG(2, 2) as a matroid.
pub fn fano() -> BinaryMatroid {
    BinaryMatroid::full(3).expect("dimension 3 is valid")
}

/// Three distinct points with zero sum, stored in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle(pub [u32; 3]);

impl Triangle {
    pub fn new(a: u32, b: u32, c: u32) -> Option<Self> {
        let mut p = [a, b, c];
        p.sort_unstable();
        if p[0] == 0 || p[0] == p[1] || p[1] == p[2] || a ^ b ^ c != 0 {
            return None;
        }
        Some(Triangle(p))
    }

    pub fn points(&self) -> [u32; 3] {
        self.0
    }

    pub fn contains(&self, p: u32) -> bool {
        self.0.contains(&p)
    }

    pub fn meets(&self, other: &Triangle) -> bool {
        self.0.iter().any(|&p| other.contains(p))
    }
}

/// A linear injection witnessing that `source` is a restriction of `target`.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub map: LinearMap,
    pub source: BinaryMatroid,
    pub target: BinaryMatroid,
}

impl Embedding {
    pub fn is_valid(&self) -> bool {
        self.map.source_dim() == self.source.ambient_dim()
            && self.map.target_dim() == self.target.ambient_dim()
            && self.map.is_injective()
            && self.source.points().iter().all(|&p| self.target.contains(self.map.apply_mask(p)))
    }
}

/// A binary matroid with nonnegative integer weights on its points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMatroid {
    matroid: BinaryMatroid,
    weights: Vec<u64>,
}

impl WeightedMatroid {
    /// `weights` is aligned with `matroid.points()`.
    pub fn new(matroid: BinaryMatroid, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != matroid.len() {
            return Err(Error::Invalid(format!(
                "{} weights for {} points",
                weights.len(),
                matroid.len()
            )));
        }
        Ok(WeightedMatroid { matroid, weights })
    }

    pub fn unit(matroid: BinaryMatroid) -> Self {
        let weights = vec![1; matroid.len()];
        WeightedMatroid { matroid, weights }
    }

    /// Weights given per point; points not mentioned default to 1.
    pub fn from_map(matroid: BinaryMatroid, w: &BTreeMap<u32, u64>) -> Result<Self> {
        if let Some(p) = w.keys().find(|&&p| !matroid.contains(p)) {
            return Err(Error::Invalid(format!("weight given for point {p:#x} outside the ground set")));
        }
        let weights = matroid.points().iter().map(|p| w.get(p).copied().unwrap_or(1)).collect();
        Ok(WeightedMatroid { matroid, weights })
    }

    pub fn matroid(&self) -> &BinaryMatroid {
        &self.matroid
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, p: u32) -> u64 {
        self.matroid.index_of(p).map_or(0, |i| self.weights[i])
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Extends to the whole geometry, giving new points weight zero.
    pub fn embed_weighted(&self) -> WeightedMatroid {
        let full = BinaryMatroid::full(self.matroid.dim).expect("dimension already validated");
        let weights = full.points().iter().map(|&p| self.weight(p)).collect();
        WeightedMatroid { matroid: full, weights }
    }
}
