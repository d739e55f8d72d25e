//! Exact linear algebra and projective-space enumeration.
//!
//! Points are normalized so the leftmost nonzero coordinate is 1. The
//! canonical order of points (and of hyperplanes via their dual points) is
//! increasing `Σ c_i Q^i`, the vector read as a little-endian base-Q
//! integer. For Q = 2 this is the familiar binary counting order of simplex
//! generator matrices.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfield::{Elem, Field};
use crate::mat::Mat;

/// Default cap on the number of objects any enumeration may produce.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 22;

/// Caps protecting exhaustive scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub enumeration: u64,
    pub hyperplanes: u64,
    pub codewords: u64,
    pub subsets: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: DEFAULT_ENUM_CAP,
            hyperplanes: DEFAULT_ENUM_CAP,
            codewords: DEFAULT_ENUM_CAP,
            subsets: 1 << 26,
        }
    }
}

pub(crate) fn check_cap(what: &'static str, needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::CapExceeded {
            what,
            needed,
            cap: cap as u128,
        })
    } else {
        Ok(())
    }
}

/// Reduced row-echelon form and rank. Zero rows are kept at the bottom.
pub fn rref(f: &Field, m: &Mat) -> (Mat, usize) {
    let mut a = m.clone();
    let rank = rref_in_place(f, &mut a);
    (a, rank)
}

pub fn rref_in_place(f: &Field, a: &mut Mat) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        a.swap_rows(r, piv);
        let inv = f.inv(a.get(r, c));
        if inv != 1 {
            f.scale(a.row_mut(r), inv);
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..rows {
            if i != r {
                let x = a.get(i, c);
                if x != 0 {
                    f.axpy(a.row_mut(i), f.neg(x), &pivot_row);
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rank(f: &Field, m: &Mat) -> usize {
    rank_of_rows(f, m.row_iter(), m.cols())
}

/// Rank of a sequence of row vectors by incremental elimination.
pub fn rank_of_rows<'a, I>(f: &Field, rows: I, cols: usize) -> usize
where
    I: IntoIterator<Item = &'a [Elem]>,
{
    let mut basis = EchelonBasis::new(cols);
    for r in rows {
        basis.insert(f, r);
        if basis.rank() == cols {
            break;
        }
    }
    basis.rank()
}

/// Incrementally maintained echelon basis (each stored row has a pivot
/// normalized to 1, and later rows are reduced against earlier pivots).
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    cols: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        EchelonBasis {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residue.
    pub fn reduce(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                f.axpy(&mut v, f.neg(c), row);
            }
        }
        v
    }

    /// Adds `v` if independent; returns whether the rank grew.
    pub fn insert(&mut self, f: &Field, v: &[Elem]) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let mut v = self.reduce(f, v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]);
        f.scale(&mut v, inv);
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }
}

/// Right null space: basis (in RREF) of {x : M x^T = 0}.
pub fn kernel(f: &Field, m: &Mat) -> Mat {
    let cols = m.cols();
    let (r, rank) = rref(f, m);
    let mut pivot_cols = Vec::with_capacity(rank);
    for i in 0..rank {
        pivot_cols.push(r.row(i).iter().position(|&x| x != 0).unwrap());
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Mat::zeros(free.len(), cols);
    for (bi, &fc) in free.iter().enumerate() {
        basis.set(bi, fc, 1);
        for (i, &pc) in pivot_cols.iter().enumerate() {
            let x = r.get(i, fc);
            if x != 0 {
                basis.set(bi, pc, f.neg(x));
            }
        }
    }
    let (b, _) = rref(f, &basis);
    b
}

/// Normalized homogeneous coordinates (leftmost nonzero entry equal to 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint(Vec<Elem>);

impl ProjPoint {
    /// Normalizes a nonzero vector; None for the zero vector.
    pub fn normalize(f: &Field, v: &[Elem]) -> Option<ProjPoint> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let mut out = v.to_vec();
        if lead != 1 {
            f.scale(&mut out, f.inv(lead));
        }
        Some(ProjPoint(out))
    }

    /// Wraps coordinates that are already normalized.
    pub fn from_normalized(v: Vec<Elem>) -> ProjPoint {
        debug_assert!(v.iter().find(|&&x| x != 0) == Some(&1));
        ProjPoint(v)
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Elem> {
        self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Little-endian base-Q value; the canonical sort key.
    pub fn key(&self, q: u32) -> u64 {
        pack(&self.0, q)
    }
}

/// Little-endian base-Q packing of a vector.
pub fn pack(v: &[Elem], q: u32) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

pub fn unpack(mut x: u64, q: u32, k: usize) -> Vec<Elem> {
    let mut v = vec![0; k];
    for c in v.iter_mut() {
        *c = (x % q as u64) as Elem;
        x /= q as u64;
    }
    v
}

/// Number of points of PG(k-1, Q).
pub fn point_count(k: usize, q: u32) -> u128 {
    if k == 0 {
        return 0;
    }
    ((q as u128).pow(k as u32) - 1) / (q as u128 - 1)
}

pub fn is_normalized_key(mut x: u64, q: u32) -> bool {
    if x == 0 {
        return false;
    }
    while x.is_multiple_of(q as u64) {
        x /= q as u64;
    }
    x % q as u64 == 1
}

/// Iterator over the points of PG(k-1, Q) in canonical order.
pub struct PointIter {
    q: u32,
    k: usize,
    next: u64,
    end: u64,
}

impl Iterator for PointIter {
    type Item = ProjPoint;

    fn next(&mut self) -> Option<ProjPoint> {
        while self.next < self.end {
            let x = self.next;
            self.next += 1;
            if is_normalized_key(x, self.q) {
                return Some(ProjPoint(unpack(x, self.q, self.k)));
            }
        }
        None
    }
}

pub fn enumerate_points(k: usize, f: &Field, cap: u64) -> Result<PointIter> {
    let q = f.size();
    check_cap("projective points", point_count(k, q), cap)?;
    Ok(PointIter {
        q,
        k,
        next: 1,
        end: (q as u64).pow(k as u32),
    })
}

/// A projective subspace stored as the RREF of a basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    k: usize,
    basis: Mat,
}

impl Subspace {
    /// Row space of `m`, canonicalized.
    pub fn row_space(f: &Field, m: &Mat) -> Subspace {
        let (r, rank) = rref(f, m);
        let basis = r.select_rows(&(0..rank).collect::<Vec<_>>());
        Subspace { k: m.cols(), basis }
    }

    pub fn zero(k: usize) -> Subspace {
        Subspace {
            k,
            basis: Mat::zeros(0, k),
        }
    }

    pub fn whole(k: usize) -> Subspace {
        Subspace {
            k,
            basis: Mat::identity(k),
        }
    }

    pub fn span_of_points(f: &Field, k: usize, pts: &[ProjPoint]) -> Subspace {
        let rows: Vec<&[Elem]> = pts.iter().map(|p| p.coords()).collect();
        Subspace::row_space(f, &Mat::from_rows(&rows, k))
    }

    /// v^⊥ for a nonzero v.
    pub fn orthogonal(f: &Field, v: &[Elem]) -> Subspace {
        let k = v.len();
        Subspace {
            k,
            basis: kernel(f, &Mat::from_rows(&[v], k)),
        }
    }

    pub fn ambient(&self) -> usize {
        self.k
    }

    /// Vector dimension (projective dimension + 1).
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        let mut m = self.basis.clone();
        m = m.vstack(&Mat::from_rows(&[v], self.k));
        rank(f, &m) == self.dim()
    }

    /// All points of the subspace: y·B for y over PG(dim-1, Q) in canonical
    /// order, each normalized.
    pub fn points(&self, f: &Field) -> Vec<ProjPoint> {
        if self.dim() == 0 {
            return Vec::new();
        }
        let it = enumerate_points(self.dim(), f, u64::MAX).expect("uncapped");
        it.map(|y| ProjPoint::normalize(f, &self.basis.vec_mul(f, y.coords())).unwrap())
            .collect()
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Result<Subspace> {
        if self.k != other.k {
            return Err(Error::AmbientMismatch(self.k, other.k));
        }
        Ok(Subspace::row_space(f, &self.basis.vstack(&other.basis)))
    }
}

/// Iterator over hyperplanes as (dual point v, v^⊥) in canonical dual order.
pub fn enumerate_hyperplanes(
    k: usize,
    f: &Field,
    cap: u64,
) -> Result<impl Iterator<Item = (ProjPoint, Subspace)> + '_> {
    let pts = enumerate_points(k, f, cap)?;
    Ok(pts.map(move |v| {
        let h = Subspace::orthogonal(f, v.coords());
        (v, h)
    }))
}

/// Gaussian binomial as u128 (used only for small counts).
pub fn gauss_count(n: usize, k: usize, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num.saturating_mul(q.pow((n - i) as u32) - 1);
        den = den.saturating_mul(q.pow((k - i) as u32) - 1);
    }
    num / den
}

/// All subspaces of vector dimension k-2, each once, as intersections of
/// pairs of distinct hyperplanes. Deduplicated on the canonical RREF of
/// the pair of dual vectors, in order of first appearance over pairs (i<j).
pub fn enumerate_codim2(k: usize, f: &Field, cap: u64) -> Result<Vec<Subspace>> {
    let q = f.size();
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "codimension-2 subspaces need k >= 2 (k = {k})"
        )));
    }
    check_cap("codimension-2 subspaces", gauss_count(k, 2, q), cap)?;
    check_cap("hyperplane pairs", point_count(k, q).pow(2) / 2, cap.saturating_mul(64))?;
    if k == 2 {
        return Ok(vec![Subspace::zero(2)]);
    }
    let duals: Vec<ProjPoint> = enumerate_points(k, f, cap)?.collect();
    let mut seen: HashSet<Mat> = HashSet::new();
    let mut out = Vec::new();
    for i in 0..duals.len() {
        for j in i + 1..duals.len() {
            let pair = Mat::from_rows(&[duals[i].coords(), duals[j].coords()], k);
            let (key, _) = rref(f, &pair);
            if seen.insert(key.clone()) {
                out.push(Subspace {
                    k,
                    basis: kernel(f, &key),
                });
            }
        }
    }
    Ok(out)
}

/// Rank of a list of points (0 for the empty list).
pub fn span_rank(f: &Field, points: &[ProjPoint]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Ok(0);
    };
    let k = first.k();
    if let Some(bad) = points.iter().find(|p| p.k() != k) {
        return Err(Error::AmbientMismatch(k, bad.k()));
    }
    Ok(rank_of_rows(f, points.iter().map(|p| p.coords()), k))
}

/// U ∩ W via the left kernel of the stacked bases.
pub fn subspace_meet(f: &Field, u: &Subspace, w: &Subspace) -> Result<Subspace> {
    if u.k != w.k {
        return Err(Error::AmbientMismatch(u.k, w.k));
    }
    let (a, b) = (u.dim(), w.dim());
    if a == 0 || b == 0 {
        return Ok(Subspace::zero(u.k));
    }
    // (x | y) with x·U + y·W = 0  ⇔  [U; W]^T (x|y)^T = 0
    let stacked = u.basis.vstack(&w.basis);
    let ker = kernel(f, &stacked.transpose());
    let mut rows = Vec::with_capacity(ker.rows());
    for r in ker.row_iter() {
        rows.push(u.basis.vec_mul(f, &r[..a]));
    }
    Ok(Subspace::row_space(f, &Mat::from_rows(&rows, u.k)))
}

/// Lookup table from packed vectors to canonical point indices in PG(k-1, Q).
pub struct PointIndex {
    q: u32,
    k: usize,
    table: Vec<u32>,
    count: usize,
}

impl PointIndex {
    pub fn new(k: usize, f: &Field, cap: u64) -> Result<PointIndex> {
        let q = f.size();
        let total = (q as u128).pow(k as u32);
        check_cap("point index table", total, cap.saturating_mul(q as u64))?;
        let mut table = vec![u32::MAX; total as usize];
        let mut count = 0;
        for x in 1..total as u64 {
            if is_normalized_key(x, q) {
                table[x as usize] = count;
                count += 1;
            }
        }
        Ok(PointIndex {
            q,
            k,
            table,
            count: count as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Index of a normalized point.
    pub fn index(&self, p: &ProjPoint) -> usize {
        self.table[pack(p.coords(), self.q) as usize] as usize
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of_vector(&self, f: &Field, v: &[Elem]) -> Option<usize> {
        let p = ProjPoint::normalize(f, v)?;
        Some(self.index(&p))
    }
}

/// Ordered multiset of points of PG(k-1, F): the geometric face of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjSystem {
    field: Arc<Field>,
    k: usize,
    points: Vec<ProjPoint>,
}

impl ProjSystem {
    pub fn new(field: Arc<Field>, k: usize, points: Vec<ProjPoint>) -> Result<ProjSystem> {
        if let Some(bad) = points.iter().find(|p| p.k() != k) {
            return Err(Error::AmbientMismatch(k, bad.k()));
        }
        if let Some(p) = points.iter().find(|p| p.coords().iter().any(|&c| c >= field.size())) {
            let v = p.coords().iter().copied().max().unwrap();
            return Err(Error::ElementOutOfRange {
                value: v as u64,
                size: field.size(),
            });
        }
        Ok(ProjSystem { field, k, points })
    }

    /// Normalizes arbitrary nonzero vectors into a system.
    pub fn from_vectors(field: Arc<Field>, k: usize, vecs: &[Vec<Elem>]) -> Result<ProjSystem> {
        let mut pts = Vec::with_capacity(vecs.len());
        for v in vecs {
            if v.len() != k {
                return Err(Error::AmbientMismatch(k, v.len()));
            }
            pts.push(
                ProjPoint::normalize(&field, v)
                    .ok_or_else(|| Error::InvalidParameter("zero vector is not a projective point".into()))?,
            );
        }
        ProjSystem::new(field, k, pts)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.field, self.points.iter().map(|p| p.coords()), self.k)
    }

    pub fn is_spanning(&self) -> bool {
        self.rank() == self.k
    }

    pub fn push(&mut self, p: ProjPoint) {
        assert_eq!(p.k(), self.k);
        self.points.push(p);
    }

    /// Removes repeated points, keeping first occurrences.
    pub fn dedup(&self) -> ProjSystem {
        let mut seen = HashSet::new();
        let pts = self
            .points
            .iter()
            .filter(|p| seen.insert((*p).clone()))
            .cloned()
            .collect();
        ProjSystem {
            field: self.field.clone(),
            k: self.k,
            points: pts,
        }
    }

    /// Points sorted into canonical order.
    pub fn sorted(&self) -> ProjSystem {
        let q = self.field.size();
        let mut pts = self.points.clone();
        pts.sort_by_key(|p| p.key(q));
        ProjSystem {
            field: self.field.clone(),
            k: self.k,
            points: pts,
        }
    }

    pub fn has_duplicates(&self) -> bool {
        self.dedup().len() != self.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfield::make_tower;

    fn f2() -> Arc<Field> {
        make_tower(2, 1, 1).unwrap().base().clone()
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        let id = Mat::identity(3);
        assert_eq!(rref(&f, &id), (id.clone(), 3));
        let z = Mat::zeros(2, 3);
        assert_eq!(rref(&f, &z), (z.clone(), 0));
        let m = Mat::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]], 3);
        assert_eq!(rref(&f, &m).1, 2);
    }

    #[test]
    fn point_counts() {
        let f = f2();
        let pts: Vec<_> = enumerate_points(2, &f, 100).unwrap().collect();
        assert_eq!(pts.len(), 3);
        assert_eq!(
            pts.iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>(),
            vec![vec![1, 0], vec![0, 1], vec![1, 1]]
        );
        assert_eq!(enumerate_points(3, &f, 100).unwrap().count(), 7);
        let f4 = make_tower(2, 1, 2).unwrap().top().clone();
        assert_eq!(enumerate_points(2, &f4, 100).unwrap().count(), 5);
        assert!(matches!(enumerate_points(10, &f4, 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn hyperplane_counts() {
        let f = f2();
        assert_eq!(enumerate_hyperplanes(3, &f, 100).unwrap().count(), 7);
        assert_eq!(enumerate_hyperplanes(4, &f, 100).unwrap().count(), 15);
        let f3 = make_tower(3, 1, 1).unwrap().base().clone();
        let hs: Vec<_> = enumerate_hyperplanes(2, &f3, 100).unwrap().collect();
        assert_eq!(hs.len(), 4);
        assert!(hs.iter().all(|(_, h)| h.dim() == 1));
    }

    #[test]
    fn codim2_counts() {
        let f = f2();
        assert_eq!(enumerate_codim2(3, &f, 1000).unwrap().len(), 7);
        let lines = enumerate_codim2(4, &f, 1000).unwrap();
        assert_eq!(lines.len(), 35);
        assert!(lines.iter().all(|l| l.dim() == 2));
        let z = enumerate_codim2(2, &f, 1000).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].dim(), 0);
        let f3 = make_tower(3, 1, 1).unwrap().base().clone();
        assert_eq!(
            enumerate_codim2(4, &f3, 10_000).unwrap().len() as u128,
            gauss_count(4, 2, 3)
        );
    }

    #[test]
    fn span_rank_examples() {
        let f = f2();
        assert_eq!(span_rank(&f, &[]).unwrap(), 0);
        let all: Vec<_> = enumerate_points(3, &f, 100).unwrap().collect();
        assert_eq!(span_rank(&f, &all).unwrap(), 3);
        let p = all[2].clone();
        assert_eq!(span_rank(&f, &[p.clone(), p]).unwrap(), 1);
        assert!(span_rank(&f, &[all[0].clone(), ProjPoint(vec![1, 0])]).is_err());
    }

    #[test]
    fn meet_examples() {
        let f = f2();
        let u = Subspace::row_space(&f, &Mat::from_rows(&[[1, 0, 0], [0, 1, 0]], 3));
        assert_eq!(subspace_meet(&f, &u, &u).unwrap(), u);
        let w = Subspace::row_space(&f, &Mat::from_rows(&[[0, 1, 0], [0, 0, 1]], 3));
        assert_eq!(subspace_meet(&f, &u, &w).unwrap().dim(), 1);
        let c = Subspace::row_space(&f, &Mat::from_rows(&[[0, 0, 1]], 3));
        assert_eq!(subspace_meet(&f, &u, &c).unwrap().dim(), 0);
    }

    #[test]
    fn distinct_hyperplanes_meet_in_codim2() {
        let f3 = make_tower(3, 1, 1).unwrap().base().clone();
        let hs: Vec<_> = enumerate_hyperplanes(3, &f3, 100).unwrap().map(|(_, h)| h).collect();
        for i in 0..hs.len() {
            for j in i + 1..hs.len() {
                let m = subspace_meet(&f3, &hs[i], &hs[j]).unwrap();
                assert_eq!(m.dim(), 1);
                let s = hs[i].sum(&f3, &hs[j]).unwrap();
                assert_eq!(m.dim() + s.dim(), hs[i].dim() + hs[j].dim());
            }
        }
    }

    #[test]
    fn point_index_matches_enumeration() {
        let f9 = make_tower(3, 1, 2).unwrap().top().clone();
        let idx = PointIndex::new(3, &f9, 1 << 20).unwrap();
        for (i, p) in enumerate_points(3, &f9, 1000).unwrap().enumerate() {
            assert_eq!(idx.index(&p), i);
            let mut v = p.coords().to_vec();
            f9.scale(&mut v, 5);
            assert_eq!(idx.index_of_vector(&f9, &v), Some(i));
        }
        assert_eq!(idx.len() as u128, point_count(3, 9));
    }

    #[test]
    fn subspace_points_are_in_subspace() {
        let f = make_tower(3, 1, 1).unwrap().base().clone();
        let s = Subspace::row_space(&f, &Mat::from_rows(&[[1, 2, 0, 1], [0, 1, 1, 2]], 4));
        let pts = s.points(&f);
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|p| s.contains(&f, p.coords())));
    }
}
