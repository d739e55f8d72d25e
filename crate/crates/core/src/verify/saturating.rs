use std::time::Instant;

use crate::error::Result;
use crate::gfield::Field;
use crate::linpro::{check_cap, point_count, Caps, PointIndex, ProjPoint, ProjSystem, Subspace};
use crate::report::{VerificationReport, Witness};

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Advances `idx` to the next k-subset of 0..n in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// First point of the ambient space (canonical order) outside every span of
/// rho+1 points of `pts`.
pub fn first_uncovered(
    f: &Field,
    k: usize,
    pts: &[ProjPoint],
    rho: usize,
    cap: u64,
) -> Result<Option<(u64, ProjPoint)>> {
    let mut distinct = pts.to_vec();
    distinct.sort();
    distinct.dedup();
    let n = distinct.len();
    let size = (rho + 1).min(n);
    let total = point_count(k, f.size());
    check_cap("saturation subsets", binomial(n, size).saturating_mul(total), cap)?;
    let index = PointIndex::new(k, f, cap)?;
    let mut covered = vec![false; index.len()];
    let mut remaining = index.len();
    if size > 0 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let chosen: Vec<ProjPoint> = idx.iter().map(|&i| distinct[i].clone()).collect();
            for p in Subspace::span_of_points(f, k, &chosen).points(f) {
                let i = index.index(&p);
                if !covered[i] {
                    covered[i] = true;
                    remaining -= 1;
                }
            }
            if remaining == 0 || !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    if remaining == 0 {
        return Ok(None);
    }
    let first = covered.iter().position(|&c| !c).unwrap();
    let p = crate::linpro::enumerate_points(k, f, u64::MAX)?
        .nth(first)
        .expect("index within range");
    Ok(Some((first as u64, p)))
}

/// rho-saturation: every point lies in the span of rho+1 points of the set,
/// and (with `minimality`) rho is the least such value.
pub fn is_saturating(p: &ProjSystem, rho: usize, minimality: bool, caps: &Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let f = p.field();
    let mut w =
        first_uncovered(f, p.k(), p.points(), rho, caps.subsets)?.map(|(index, point)| Witness::UncoveredPoint {
            index,
            point: point.into_coords(),
            rho,
        });
    if w.is_none() && minimality && rho > 0 && first_uncovered(f, p.k(), p.points(), rho - 1, caps.subsets)?.is_none() {
        w = Some(Witness::SmallerRho { rho: rho - 1 });
    }
    let engine = if minimality {
        "subset-spans"
    } else {
        "subset-spans-no-minimality"
    };
    Ok(VerificationReport::new("saturating", engine, w, started))
}

/// Checks that `point` lies in no span of rho+1 points of `p`.
pub fn replay_uncovered(p: &ProjSystem, rho: usize, point: &[crate::gfield::Elem]) -> bool {
    let f = p.field();
    let Some(x) = ProjPoint::normalize(f, point) else {
        return false;
    };
    if x.k() != p.k() {
        return false;
    }
    let mut distinct = p.points().to_vec();
    distinct.sort();
    distinct.dedup();
    let n = distinct.len();
    let size = (rho + 1).min(n);
    if size == 0 {
        return true;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let chosen: Vec<ProjPoint> = idx.iter().map(|&i| distinct[i].clone()).collect();
        if Subspace::span_of_points(f, p.k(), &chosen).contains(f, x.coords()) {
            return false;
        }
        if !next_combination(&mut idx, n) {
            return true;
        }
    }
}
