use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gfield::{Elem, FieldTower};
use crate::linpro::{check_cap, rank, ProjPoint};
use crate::mat::Mat;

/// A Hermitian K×K matrix over F_{q^2} and its rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianSpec {
    pub matrix: Mat,
    pub rank: usize,
}

/// First hits of the exhaustive scan.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HermitianScan {
    /// First matrix of rank 1 or 2 whose variety contains all points.
    pub first: Option<HermitianSpec>,
    pub rank1: Option<HermitianSpec>,
    pub rank2: Option<HermitianSpec>,
}

/// x H σ(x)^T.
pub fn hermitian_form(t: &FieldTower, h: &Mat, x: &[Elem]) -> Elem {
    let f = t.top();
    let sx: Vec<Elem> = x.iter().map(|&a| t.frobenius(a)).collect();
    let hx = h.vec_mul(f, x);
    f.dot(&hx, &sx)
}

/// Is `h` Hermitian (equal to its conjugate transpose)?
pub fn is_hermitian(t: &FieldTower, h: &Mat) -> bool {
    h.rows() == h.cols() && (0..h.rows()).all(|i| (0..h.cols()).all(|j| h.get(j, i) == t.frobenius(h.get(i, j))))
}

/// The matrix with index `x` in the scan order: upper-triangle positions in
/// row-major order, first position least significant, diagonal digits in
/// F_q and the others in F_{q^2}.
pub fn hermitian_from_index(t: &FieldTower, k: usize, mut x: u64) -> Mat {
    let q = t.q() as u64;
    let mut m = Mat::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let radix = if i == j { q } else { q * q };
            let d = (x % radix) as Elem;
            x /= radix;
            m.set(i, j, d);
            if i != j {
                m.set(j, i, t.frobenius(d));
            }
        }
    }
    m
}

/// Exhaustive scan of Hermitian matrices of rank 1 and 2 whose varieties
/// contain every point.
pub fn hermitian_rank2_containment(t: &FieldTower, pts: &[ProjPoint], cap: u64) -> Result<HermitianScan> {
    if t.h() != 2 {
        return Err(Error::WrongTowerDegree {
            expected: 2,
            found: t.h(),
        });
    }
    let Some(k) = pts.first().map(|p| p.k()) else {
        return Err(Error::InvalidParameter("no points given".into()));
    };
    let total = (t.q() as u128).pow((k * k) as u32);
    check_cap("Hermitian matrices", total, cap)?;
    let f = t.top();
    let find = |want: usize| {
        (1..total as u64).into_par_iter().find_map_first(|x| {
            let h = hermitian_from_index(t, k, x);
            if !pts.iter().all(|p| hermitian_form(t, &h, p.coords()) == 0) {
                return None;
            }
            let r = rank(f, &h);
            (r == want).then_some(HermitianSpec { matrix: h, rank: r })
        })
    };
    let rank1 = find(1);
    let rank2 = find(2);
    let first = match (&rank1, &rank2) {
        (Some(a), Some(b)) => {
            let ia = index_of(t, &a.matrix);
            let ib = index_of(t, &b.matrix);
            Some(if ia < ib { a.clone() } else { b.clone() })
        }
        (a, b) => a.clone().or_else(|| b.clone()),
    };
    Ok(HermitianScan { first, rank1, rank2 })
}

/// Inverse of [`hermitian_from_index`].
pub fn index_of(t: &FieldTower, h: &Mat) -> u64 {
    let q = t.q() as u64;
    let k = h.rows();
    let mut x = 0u64;
    let mut scale = 1u64;
    for i in 0..k {
        for j in i..k {
            let radix = if i == j { q } else { q * q };
            x += h.get(i, j) as u64 * scale;
            scale *= radix;
        }
    }
    x
}
