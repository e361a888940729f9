//! Linear algebra over GF(2) for the points of PG(n-1, 2).
//!
//! Points are nonzero bitmasks of at most [`MAX_DIM`] bits. Flats keep a
//! reduced row-echelon basis, so two flats compare equal exactly when they
//! span the same subspace.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest supported ambient dimension.
pub const MAX_DIM: u8 = 16;

pub(crate) fn check_dim(dim: usize) -> Result<u8> {
    if (1..=MAX_DIM as usize).contains(&dim) {
        Ok(dim as u8)
    } else {
        Err(Error::DimensionOutOfRange(dim))
    }
}

/// Number of nonzero points of PG(dim-1, 2).
#[inline]
pub fn point_count(dim: u8) -> u32 {
    (1u32 << dim) - 1
}

#[inline]
pub(crate) fn parity(x: u32) -> bool {
    x.count_ones() & 1 == 1
}

#[inline]
fn pivot(x: u32) -> u32 {
    31 - x.leading_zeros()
}

/// A point of PG(n-1, 2): a nonzero vector of `F_2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    dim: u8,
    bits: u32,
}

impl Point {
    pub fn new(bits: u32, dim: u8) -> Result<Self> {
        let dim = check_dim(dim as usize)?;
        if bits == 0 || bits > point_count(dim) {
            return Err(Error::InvalidPoint { point: bits, dim });
        }
        Ok(Point { dim, bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn ambient_dim(self) -> u8 {
        self.dim
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

fn shared_dim(points: &[Point]) -> Result<Option<u8>> {
    let Some(first) = points.first() else {
        return Ok(None);
    };
    for p in points {
        if p.dim != first.dim {
            return Err(Error::DimensionMismatch {
                expected: first.dim,
                found: p.dim,
            });
        }
    }
    Ok(Some(first.dim))
}

/// Incremental XOR basis keyed by leading bit.
#[derive(Debug, Clone, Default)]
pub struct XorBasis {
    rows: [u32; 32],
    rank: usize,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reduce(&self, mut x: u32) -> u32 {
        while x != 0 {
            let p = pivot(x) as usize;
            if self.rows[p] == 0 {
                break;
            }
            x ^= self.rows[p];
        }
        x
    }

    /// Inserts `x`; returns false when `x` was already in the span.
    pub fn insert(&mut self, x: u32) -> bool {
        let r = self.reduce(x);
        if r == 0 {
            return false;
        }
        self.rows[pivot(r) as usize] = r;
        self.rank += 1;
        true
    }

    pub fn contains(&self, x: u32) -> bool {
        self.reduce(x) == 0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// GF(2) rank of a set of raw masks.
pub fn rank_of_masks(masks: impl IntoIterator<Item = u32>) -> usize {
    let mut basis = XorBasis::new();
    for m in masks {
        basis.insert(m);
    }
    basis.rank()
}

/// GF(2) rank of a set of points sharing one ambient dimension.
pub fn rank(points: &[Point]) -> Result<usize> {
    shared_dim(points)?;
    Ok(rank_of_masks(points.iter().map(|p| p.bits)))
}

/// A linear subspace of `F_2^n`, viewed as a flat (subgeometry) of PG(n-1, 2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flat {
    dim: u8,
    /// Reduced row-echelon basis, pivots strictly decreasing.
    basis: Vec<u32>,
}

impl Flat {
    /// The zero subspace (no points).
    pub fn empty(dim: u8) -> Self {
        Flat { dim, basis: Vec::new() }
    }

    pub fn full(dim: u8) -> Self {
        Flat::from_masks(dim, (0..dim).map(|i| 1u32 << i))
    }

    /// Span of raw masks; the caller guarantees they fit in `dim` bits.
    pub fn from_masks(dim: u8, masks: impl IntoIterator<Item = u32>) -> Self {
        let mut rows: Vec<u32> = Vec::new();
        for m in masks {
            let mut v = m;
            for &r in &rows {
                if v & (1 << pivot(r)) != 0 {
                    v ^= r;
                }
            }
            if v == 0 {
                continue;
            }
            let p = 1 << pivot(v);
            for r in rows.iter_mut() {
                if *r & p != 0 {
                    *r ^= v;
                }
            }
            rows.push(v);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
        Flat { dim, basis: rows }
    }

    pub fn ambient_dim(&self) -> u8 {
        self.dim
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Number of nonzero points, `2^rank - 1`.
    pub fn point_count(&self) -> u32 {
        (1u32 << self.rank()) - 1
    }

    pub fn contains(&self, x: u32) -> bool {
        let mut v = x;
        for &r in &self.basis {
            if v & (1 << pivot(r)) != 0 {
                v ^= r;
            }
        }
        v == 0
    }

    pub fn contains_flat(&self, other: &Flat) -> bool {
        other.basis.iter().all(|&b| self.contains(b))
    }

    /// All nonzero points in increasing numeric order.
    pub fn points(&self) -> Vec<u32> {
        let r = self.rank();
        let mut out = Vec::with_capacity((1usize << r) - 1);
        let mut acc = 0u32;
        // Gray-code walk over all combinations of basis rows.
        for i in 1u32..(1u32 << r) {
            acc ^= self.basis[i.trailing_zeros() as usize];
            out.push(acc);
        }
        out.sort_unstable();
        out
    }

    /// The subspace of functionals vanishing on this flat.
    pub fn annihilator(&self) -> Flat {
        let pivots: u32 = self.basis.iter().fold(0, |acc, &r| acc | (1 << pivot(r)));
        let mut rows = Vec::new();
        for j in 0..self.dim {
            if pivots & (1 << j) != 0 {
                continue;
            }
            let mut f = 1u32 << j;
            for &r in &self.basis {
                if r & (1 << j) != 0 {
                    f |= 1 << pivot(r);
                }
            }
            rows.push(f);
        }
        Flat::from_masks(self.dim, rows)
    }

    pub fn intersect(&self, other: &Flat) -> Flat {
        let mut fs = self.annihilator().basis;
        fs.extend_from_slice(&other.annihilator().basis);
        Flat::from_masks(self.dim, fs).annihilator()
    }
}

/// Span of a set of points as a canonical flat.
pub fn span_flat(points: &[Point]) -> Result<Flat> {
    match shared_dim(points)? {
        None => Err(Error::Invalid("cannot infer ambient dimension of an empty point set".into())),
        Some(dim) => Ok(Flat::from_masks(dim, points.iter().map(|p| p.bits))),
    }
}

/// A hyperplane stored as its defining functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub dim: u8,
    pub functional: u32,
}

impl Hyperplane {
    pub fn contains(&self, x: u32) -> bool {
        !parity(x & self.functional)
    }

    pub fn to_flat(&self) -> Flat {
        Flat::from_masks(self.dim, [self.functional]).annihilator()
    }
}

/// Every hyperplane containing `q`, ordered by functional.
///
/// There are `2^(n - rank q) - 1` of them; a full-rank `q` has none.
pub fn hyperplanes_through(q: &Flat) -> Vec<Hyperplane> {
    q.annihilator()
        .points()
        .into_iter()
        .map(|functional| Hyperplane { dim: q.dim, functional })
        .collect()
}

pub fn hyperplanes_containing(q: &Flat) -> Vec<Flat> {
    hyperplanes_through(q).iter().map(Hyperplane::to_flat).collect()
}

/// A linear map `F_2^source -> F_2^target` given by the images of the unit vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearMap {
    images: Vec<u32>,
    source_dim: u8,
    target_dim: u8,
}

impl LinearMap {
    pub fn new(images: Vec<u32>, target_dim: u8) -> Result<Self> {
        let source_dim = check_dim(images.len())?;
        let target_dim = check_dim(target_dim as usize)?;
        if let Some(&bad) = images.iter().find(|&&m| m > point_count(target_dim)) {
            return Err(Error::InvalidPoint { point: bad, dim: target_dim });
        }
        Ok(LinearMap { images, source_dim, target_dim })
    }

    pub fn identity(dim: u8) -> Self {
        LinearMap {
            images: (0..dim).map(|i| 1 << i).collect(),
            source_dim: dim,
            target_dim: dim,
        }
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn source_dim(&self) -> u8 {
        self.source_dim
    }

    pub fn target_dim(&self) -> u8 {
        self.target_dim
    }

    #[inline]
    pub fn apply_mask(&self, mut x: u32) -> u32 {
        let mut out = 0;
        while x != 0 {
            out ^= self.images[x.trailing_zeros() as usize];
            x &= x - 1;
        }
        out
    }

    pub fn apply(&self, p: Point) -> Result<Point> {
        if p.dim != self.source_dim {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim,
                found: p.dim,
            });
        }
        match self.apply_mask(p.bits) {
            0 => Err(Error::NotInjective(p.bits)),
            bits => Ok(Point { dim: self.target_dim, bits }),
        }
    }

    pub fn rank(&self) -> usize {
        rank_of_masks(self.images.iter().copied())
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim as usize
    }
}

/// Primitive polynomials over GF(2), indexed by degree, with the leading term.
const PRIMITIVE_POLYS: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// Log / antilog tables for GF(2^d).
#[derive(Debug, Clone)]
pub struct FieldTable {
    degree: u32,
    poly: u32,
    antilog: Vec<u32>,
    log: Vec<u32>,
}

impl FieldTable {
    pub fn new(degree: u32) -> Result<Self> {
        if !(1..=16).contains(&degree) {
            return Err(Error::FieldDegreeOutOfRange(degree));
        }
        let poly = PRIMITIVE_POLYS[degree as usize];
        let order = (1u32 << degree) - 1;
        let top = 1u32 << degree;
        let mut antilog = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; top as usize];
        let mut x = 1u32;
        for i in 0..order {
            if log[x as usize] != u32::MAX {
                return Err(Error::Internal(format!("polynomial {poly:#x} is not primitive")));
            }
            antilog.push(x);
            log[x as usize] = i;
            x <<= 1;
            if x & top != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::Internal(format!("polynomial {poly:#x} is not primitive")));
        }
        Ok(FieldTable { degree, poly, antilog, log })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn polynomial(&self) -> u32 {
        self.poly
    }

    /// Size of the multiplicative group.
    pub fn order(&self) -> u32 {
        self.antilog.len() as u32
    }

    /// The fixed primitive element (the class of `x`).
    pub fn generator(&self) -> u32 {
        self.antilog[1 % self.antilog.len()]
    }

    pub fn antilog(&self, i: u32) -> u32 {
        self.antilog[(i % self.order()) as usize]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, x: u32) -> u32 {
        debug_assert!(x != 0);
        self.log[x as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.antilog[(s % self.order() as u64) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let order = self.order();
        self.antilog[((order - self.log[a as usize]) % order) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let s = self.log[a as usize] as u64 * e;
        self.antilog[(s % self.order() as u64) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> u32 {
        let order = self.order();
        let l = self.log(a);
        order / gcd(order, l)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn field_table(degree: u32) -> Result<FieldTable> {
    FieldTable::new(degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(dim: u8, bits: &[u32]) -> Vec<Point> {
        bits.iter().map(|&b| Point::new(b, dim).unwrap()).collect()
    }

    /// Brute-force rank: size of the generated subgroup is 2^rank.
    fn rank_by_closure(masks: &[u32]) -> usize {
        let mut seen = std::collections::BTreeSet::from([0u32]);
        for &m in masks {
            let cur: Vec<u32> = seen.iter().copied().collect();
            for c in cur {
                seen.insert(c ^ m);
            }
        }
        seen.len().trailing_zeros() as usize
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[]).unwrap(), 0);
        assert_eq!(rank(&pts(3, &[0b001, 0b010, 0b011])).unwrap(), 2);
        assert_eq!(rank(&pts(4, &[0b0101, 0b1100, 0b1001])).unwrap(), 2);
    }

    #[test]
    fn rank_rejects_mixed_dims() {
        let a = Point::new(1, 3).unwrap();
        let b = Point::new(1, 4).unwrap();
        assert_eq!(
            rank(&[a, b]),
            Err(Error::DimensionMismatch { expected: 3, found: 4 })
        );
    }

    #[test]
    fn point_validation() {
        assert!(Point::new(0, 3).is_err());
        assert!(Point::new(8, 3).is_err());
        assert!(Point::new(7, 3).is_ok());
        assert!(Point::new(1, 17).is_err());
    }

    #[test]
    fn rank_matches_closure_oracle() {
        let mut state = 0x9e3779b9u32;
        for _ in 0..500 {
            let len = (state % 7) as usize;
            let mut masks = Vec::new();
            for _ in 0..len {
                state ^= state << 13;
                state ^= state >> 17;
                state ^= state << 5;
                masks.push((state % 63) + 1);
            }
            assert_eq!(rank_of_masks(masks.iter().copied()), rank_by_closure(&masks));
        }
    }

    #[test]
    fn span_examples() {
        let f = span_flat(&pts(3, &[0b100])).unwrap();
        assert_eq!(f.basis(), &[0b100]);
        assert_eq!(f.points(), vec![0b100]);

        let line = span_flat(&pts(3, &[0b001, 0b010])).unwrap();
        assert_eq!(line.points(), vec![1, 2, 3]);

        let all = span_flat(&pts(4, &[1, 2, 4, 8])).unwrap();
        assert_eq!(all.points(), (1..16).collect::<Vec<_>>());
    }

    #[test]
    fn equal_spans_are_structurally_equal() {
        let a = Flat::from_masks(4, [0b0011, 0b0101]);
        let b = Flat::from_masks(4, [0b0110, 0b0011, 0b0101]);
        assert_eq!(a, b);
        assert_eq!(a.point_count(), 3);
    }

    #[test]
    fn hyperplane_counts() {
        // rank-1 flat in PG(2,2): three hyperplanes (lines) through a point
        let q = Flat::from_masks(3, [0b001]);
        let hs = hyperplanes_containing(&q);
        assert_eq!(hs.len(), 3);
        assert!(hs.iter().all(|h| h.rank() == 2 && h.contains(0b001)));

        assert_eq!(hyperplanes_containing(&Flat::empty(2)).len(), 3);
        assert!(hyperplanes_containing(&Flat::full(3)).is_empty());
    }

    #[test]
    fn codim_two_hyperplanes_cover_and_meet_in_q() {
        // count 2^(4-2)-1 by enumerating all functionals vanishing on q
        let q = Flat::from_masks(4, [0b0011, 0b0100]);
        let brute: Vec<u32> = (1u32..16)
            .filter(|f| q.basis().iter().all(|&b| (b & f).count_ones() % 2 == 0))
            .collect();
        assert_eq!(brute.len(), 3);
        let hs = hyperplanes_containing(&q);
        assert_eq!(hs.len(), 3);
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(hs[i].intersect(&hs[j]), q);
            }
        }
        for x in 1u32..16 {
            assert!(hs.iter().any(|h| h.contains(x)));
        }
    }

    #[test]
    fn annihilator_is_orthogonal() {
        for masks in [vec![], vec![5], vec![3, 12], vec![1, 2, 4, 8], vec![7, 9, 14]] {
            let f = Flat::from_masks(4, masks);
            let ann = f.annihilator();
            assert_eq!(f.rank() + ann.rank(), 4);
            for &a in ann.basis() {
                for &b in f.basis() {
                    assert!(!parity(a & b));
                }
            }
            assert_eq!(ann.annihilator(), f);
        }
    }

    #[test]
    fn apply_map_examples() {
        let id = LinearMap::identity(3);
        let p = Point::new(0b101, 3).unwrap();
        assert_eq!(id.apply(p).unwrap(), p);

        let swap = LinearMap::new(vec![0b010, 0b001, 0b100], 3).unwrap();
        assert_eq!(swap.apply(Point::new(0b011, 3).unwrap()).unwrap().bits(), 0b011);
        assert_eq!(swap.apply(Point::new(0b001, 3).unwrap()).unwrap().bits(), 0b010);

        // 0b011 ^ 0b010 = 0b001
        let phi = LinearMap::new(vec![0b011, 0b010], 2).unwrap();
        assert_eq!(phi.apply(Point::new(0b11, 2).unwrap()).unwrap().bits(), 0b001);
    }

    #[test]
    fn apply_map_detects_kernel() {
        let phi = LinearMap::new(vec![0b01, 0b01], 2).unwrap();
        assert!(!phi.is_injective());
        assert_eq!(phi.apply(Point::new(0b11, 2).unwrap()), Err(Error::NotInjective(0b11)));
    }

    #[test]
    fn small_fields() {
        let f1 = field_table(1).unwrap();
        assert_eq!(f1.order(), 1);
        assert_eq!(f1.antilog(0), 1);

        let f2 = field_table(2).unwrap();
        let g = f2.generator();
        assert_eq!(f2.mul(g, f2.mul(g, g)), 1);
        assert_ne!(f2.mul(g, g), 1);
        assert_eq!(f2.element_order(g), 3);

        let f4 = field_table(4).unwrap();
        assert_eq!(f4.element_order(f4.generator()), 15);
        for x in 1..16 {
            assert_eq!(f4.mul(x, f4.inv(x)), 1);
        }
        assert!(field_table(0).is_err());
        assert!(field_table(17).is_err());
    }

    #[test]
    fn every_table_is_a_full_cycle() {
        for d in 1..=16 {
            let t = field_table(d).unwrap();
            assert_eq!(t.order(), (1 << d) - 1);
            for x in [1u32, t.generator(), (1 << d) - 1] {
                assert_eq!(t.antilog(t.log(x)), x);
            }
        }
    }

    fn clmul_mod(a: u32, b: u32, poly: u32, degree: u32) -> u32 {
        let mut acc: u64 = 0;
        for i in 0..degree {
            if b & (1 << i) != 0 {
                acc ^= (a as u64) << i;
            }
        }
        for bit in (degree..2 * degree).rev() {
            if acc & (1 << bit) != 0 {
                acc ^= (poly as u64) << (bit - degree);
            }
        }
        acc as u32
    }

    #[test]
    fn log_multiplication_matches_carryless_product() {
        for d in 1..=8 {
            let t = field_table(d).unwrap();
            for a in 0..(1u32 << d) {
                for b in 0..(1u32 << d) {
                    assert_eq!(t.mul(a, b), clmul_mod(a, b, t.polynomial(), d), "d={d} {a}*{b}");
                }
            }
        }
    }
}
