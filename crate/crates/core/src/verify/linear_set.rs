use std::time::Instant;

use rayon::prelude::*;

use crate::concat::field_reduce_point;
use crate::error::{Error, Result};
use crate::gfield::{Elem, FieldTower};
use crate::linpro::{enumerate_codim2, kernel, rank, Caps, ProjPoint, ProjSystem};
use crate::mat::Mat;
use crate::report::{VerificationReport, Witness};
use crate::verify::sbs::canonical_index;

/// An F_q-subspace V of F_{q^h}^K, stored in expanded coordinates as a
/// (rank)×(Kh) matrix over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSetSpec {
    k: usize,
    v: Mat,
}

impl LinearSetSpec {
    pub fn new(t: &FieldTower, k: usize, v: Mat) -> Result<Self> {
        let h = t.h() as usize;
        if v.cols() != k * h {
            return Err(Error::DimensionMismatch {
                expected: k * h,
                found: v.cols(),
            });
        }
        let r = rank(t.base(), &v);
        if r != v.rows() {
            return Err(Error::RankDeficient {
                rank: r,
                rows: v.rows(),
            });
        }
        Ok(LinearSetSpec { k, v })
    }

    /// Spanned over F_q by the expansions of the given vectors over F_{q^h}.
    pub fn from_top_vectors(t: &FieldTower, k: usize, vecs: &[Vec<Elem>]) -> Result<Self> {
        let rows: Vec<Vec<Elem>> = vecs.iter().map(|v| expand_vec(t, v)).collect();
        let m = Mat::from_rows(&rows, k * t.h() as usize);
        let (r, rk) = crate::linpro::rref(t.base(), &m);
        LinearSetSpec::new(t, k, r.select_rows(&(0..rk).collect::<Vec<_>>()))
    }

    pub fn rank(&self) -> usize {
        self.v.rows()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &Mat {
        &self.v
    }

    /// Whether V spans F_{q^h}^K over F_{q^h}.
    pub fn is_q_system(&self, t: &FieldTower) -> bool {
        let h = t.h() as usize;
        let rows: Vec<Vec<Elem>> = self
            .v
            .row_iter()
            .map(|r| r.chunks(h).map(|c| t.compose(c)).collect())
            .collect();
        rank(t.top(), &Mat::from_rows(&rows, self.k)) == self.k
    }
}

/// Concatenated expansions of the coordinates.
pub fn expand_vec(t: &FieldTower, v: &[Elem]) -> Vec<Elem> {
    v.iter().flat_map(|&a| t.expand(a)).collect()
}

/// wt_V(P) = dim_{F_q}(V ∩ ⟨u⟩_{F_{q^h}}).
pub fn linear_set_weight(t: &FieldTower, v: &LinearSetSpec, p: &ProjPoint) -> Result<usize> {
    if p.k() != v.k {
        return Err(Error::AmbientMismatch(v.k, p.k()));
    }
    let u = field_reduce_point(t, p);
    let both = v.v.vstack(u.basis());
    Ok(v.rank() + u.dim() - rank(t.base(), &both))
}

/// First F_q-subspace of rank Kh-2 (codimension-2 enumeration order) that
/// is a q-system and has weight at least h-1 at every point. Together with
/// spanning, its absence is equivalent to avoidance of the reduced points.
pub fn first_heavy_q_system(t: &FieldTower, pts: &[ProjPoint], cap: u64) -> Result<Option<(usize, LinearSetSpec)>> {
    let Some(k) = pts.first().map(|p| p.k()) else {
        return Err(Error::InvalidParameter("no points given".into()));
    };
    let h = t.h() as usize;
    let reduced: Vec<_> = pts.iter().map(|p| field_reduce_point(t, p)).collect();
    let spaces = enumerate_codim2(k * h, t.base(), cap)?;
    let hit = spaces.par_iter().enumerate().find_map_first(|(i, s)| {
        let v = LinearSetSpec {
            k,
            v: s.basis().clone(),
        };
        let heavy = reduced
            .iter()
            .all(|u| v.rank() + h - rank(t.base(), &v.v.vstack(u.basis())) + 1 >= h);
        (heavy && v.is_q_system(t)).then_some((i, v))
    });
    Ok(hit)
}

/// Avoidance decided through linear sets.
pub fn linear_set_avoidance(t: &FieldTower, p: &ProjSystem, caps: &Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let w = if p.is_spanning() {
        first_heavy_q_system(t, p.points(), caps.enumeration)?.map(|(index, v)| Witness::Codim2 {
            index,
            basis: v.basis().to_rows(),
        })
    } else {
        let f = p.field();
        let rows: Vec<&[Elem]> = p.points().iter().map(|x| x.coords()).collect();
        let ker = kernel(f, &Mat::from_rows(&rows, p.k()));
        let dual = ProjPoint::normalize(f, ker.row(0)).expect("kernel rows are nonzero");
        Some(Witness::Hyperplane {
            index: canonical_index(dual.key(f.size()), f.size()),
            dual: dual.into_coords(),
            rank: p.rank(),
        })
    };
    Ok(VerificationReport::new("avoidance", "linear-set", w, started))
}
