//! Concatenation of an outer code over F_{q^h} with inner codes over F_q,
//! and field reduction of points, systems and codes.

use crate::codes::{code_to_system, simplex, system_to_code, LinearCode};
use crate::error::{Error, Result};
use crate::gfield::{Elem, FieldTower};
use crate::linpro::{rref, ProjPoint, ProjSystem, Subspace};
use crate::mat::Mat;

fn check_level(t: &FieldTower, c: &LinearCode, top: bool) -> Result<()> {
    let want = if top { t.top() } else { t.base() };
    if c.field().as_ref() != want.as_ref() {
        return Err(Error::InvalidParameter(format!(
            "code is over a field of size {}, expected {}",
            c.field().size(),
            want.size()
        )));
    }
    Ok(())
}

/// Generator matrix with block (i, j) = A(α_ij)·G_j, blocks in outer
/// column order.
pub fn concatenate(t: &FieldTower, outer: &LinearCode, inners: &[LinearCode]) -> Result<LinearCode> {
    check_level(t, outer, true)?;
    if inners.len() != outer.n() {
        return Err(Error::LengthMismatch {
            expected: outer.n(),
            found: inners.len(),
        });
    }
    let h = t.h() as usize;
    for inner in inners {
        check_level(t, inner, false)?;
        if inner.k() != h {
            return Err(Error::DimensionMismatch {
                expected: h,
                found: inner.k(),
            });
        }
    }
    let base = t.base();
    let kk = outer.k();
    let total: usize = inners.iter().map(|c| c.n()).sum();
    let mut g = Mat::zeros(kk * h, total);
    let mut col0 = 0;
    for (j, inner) in inners.iter().enumerate() {
        for i in 0..kk {
            let block = t.alpha_matrix(outer.generator().get(i, j)).mul(base, inner.generator());
            for r in 0..h {
                for c in 0..inner.n() {
                    g.set(i * h + r, col0 + c, block.get(r, c));
                }
            }
        }
        col0 += inner.n();
    }
    LinearCode::new(base.clone(), g)
}

/// The h×Kh matrix [A(α_1)^T | … | A(α_K)^T] for the normalized point.
fn reduction_matrix(t: &FieldTower, p: &ProjPoint) -> Mat {
    let h = t.h() as usize;
    let mut x = Mat::zeros(h, p.k() * h);
    for (i, &a) in p.coords().iter().enumerate() {
        let m = t.alpha_matrix(a);
        for r in 0..h {
            for c in 0..h {
                x.set(r, i * h + c, m.get(c, r));
            }
        }
    }
    x
}

/// The (h-1)-dimensional subspace of PG(Kh-1, q) of vectors
/// (expand(α_1 y), …, expand(α_K y)), y ∈ F_{q^h}.
pub fn field_reduce_point(t: &FieldTower, p: &ProjPoint) -> Subspace {
    Subspace::row_space(t.base(), &reduction_matrix(t, p))
}

/// Union of the reduced subspaces, block by block, each block in canonical
/// point order.
pub fn field_reduce_system(t: &FieldTower, p: &ProjSystem) -> Result<ProjSystem> {
    if p.field().as_ref() != t.top().as_ref() {
        return Err(Error::InvalidParameter("system is not over the top field".into()));
    }
    let q = t.q();
    let mut pts = Vec::new();
    for point in p.points() {
        let mut block = field_reduce_point(t, point).points(t.base());
        block.sort_by_key(|x| x.key(q));
        pts.extend(block);
    }
    ProjSystem::new(t.base().clone(), p.k() * t.h() as usize, pts)
}

/// S_q(h) □ C.
pub fn field_reduce_code(t: &FieldTower, c: &LinearCode) -> Result<LinearCode> {
    if let Some(j) = c.zero_column() {
        return Err(Error::DegenerateCode(j));
    }
    let s = simplex(t.h() as usize, t.base(), u64::MAX)?;
    concatenate(t, c, &vec![s; c.n()])
}

/// The same code reached through projective systems.
pub fn field_reduce_code_geometric(t: &FieldTower, c: &LinearCode) -> Result<LinearCode> {
    system_to_code(&field_reduce_system(t, &code_to_system(c)?)?)
}

/// Columns normalized and sorted canonically, then row-reduced. Two codes
/// with the same column multiset up to scaling have equal forms.
pub fn canonical_form(c: &LinearCode) -> Result<Mat> {
    let f = c.field();
    let q = f.size();
    let g = c.generator();
    let mut cols: Vec<ProjPoint> = (0..c.n())
        .map(|j| ProjPoint::normalize(f, &g.column(j)).ok_or(Error::DegenerateCode(j)))
        .collect::<Result<_>>()?;
    cols.sort_by_key(|p| p.key(q));
    let cols: Vec<&[Elem]> = cols.iter().map(|p| p.coords()).collect();
    Ok(rref(f, &Mat::from_columns(&cols, c.k())).0)
}

/// Both field-reduction paths in canonical form: (algebraic, geometric).
pub fn reduction_paths(t: &FieldTower, c: &LinearCode) -> Result<(Mat, Mat)> {
    let a = canonical_form(&field_reduce_code(t, c)?)?;
    let g = canonical_form(&field_reduce_code_geometric(t, c)?)?;
    Ok((a, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfield::make_tower;
    use crate::linpro::{enumerate_points, subspace_meet};

    #[test]
    fn reduce_frame_points() {
        let t = make_tower(2, 1, 2).unwrap();
        let b = t.base();
        let e = field_reduce_point(&t, &ProjPoint::from_normalized(vec![1, 0]));
        assert_eq!(e.basis().to_rows(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let d = field_reduce_point(&t, &ProjPoint::from_normalized(vec![1, 1]));
        assert_eq!(d.basis().to_rows(), vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        assert_eq!(d.points(b).len(), 3);
    }

    #[test]
    fn spread_property() {
        for (p, m, h, k) in [(2, 1, 2, 2), (2, 1, 2, 3), (3, 1, 2, 2), (2, 1, 3, 2)] {
            let t = make_tower(p, m, h).unwrap();
            let pts: Vec<_> = enumerate_points(k, t.top(), 1000).unwrap().collect();
            let subs: Vec<_> = pts.iter().map(|x| field_reduce_point(&t, x)).collect();
            for s in &subs {
                assert_eq!(s.dim(), h as usize);
            }
            for i in 0..subs.len() {
                for j in i + 1..subs.len() {
                    assert_eq!(subspace_meet(t.base(), &subs[i], &subs[j]).unwrap().dim(), 0);
                }
            }
        }
    }

    #[test]
    fn single_point_reduces_to_whole_space() {
        let t = make_tower(2, 1, 3).unwrap();
        let p = ProjSystem::new(t.top().clone(), 1, vec![ProjPoint::from_normalized(vec![1])]).unwrap();
        let r = field_reduce_system(&t, &p).unwrap();
        assert_eq!(r.len(), 7);
        let c = LinearCode::new(t.top().clone(), Mat::from_rows(&[[1]], 1)).unwrap();
        assert_eq!(field_reduce_code(&t, &c).unwrap(), simplex(3, t.base(), 100).unwrap());
    }

    #[test]
    fn trivial_tower_is_identity() {
        let t = make_tower(3, 1, 1).unwrap();
        let g = Mat::from_rows(&[[1, 0, 2], [0, 1, 1]], 3);
        let c = LinearCode::new(t.top().clone(), g).unwrap();
        assert_eq!(field_reduce_code(&t, &c).unwrap().generator(), c.generator());
        let id = LinearCode::new(t.base().clone(), Mat::identity(1)).unwrap();
        let cc = concatenate(&t, &c, &[id.clone(), id.clone(), id]).unwrap();
        assert_eq!(cc.generator(), c.generator());
    }

    #[test]
    fn concatenate_checks_shapes() {
        let t = make_tower(2, 1, 2).unwrap();
        let c = LinearCode::new(t.top().clone(), Mat::identity(2)).unwrap();
        let s = simplex(2, t.base(), 100).unwrap();
        assert!(matches!(
            concatenate(&t, &c, std::slice::from_ref(&s)),
            Err(Error::LengthMismatch { expected: 2, found: 1 })
        ));
        let s3 = simplex(3, t.base(), 100).unwrap();
        assert!(matches!(
            concatenate(&t, &c, &[s, s3]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn paths_agree_on_small_code() {
        let t = make_tower(2, 1, 2).unwrap();
        let g = Mat::from_rows(&[[1, 0, 1, 1], [0, 1, 1, 2]], 4);
        let c = LinearCode::new(t.top().clone(), g).unwrap();
        let (a, b) = reduction_paths(&t, &c).unwrap();
        assert_eq!(a, b);
    }
}
