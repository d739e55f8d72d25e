use std::time::Instant;

use rayon::prelude::*;

use crate::error::Result;
use crate::gfield::{Elem, Field};
use crate::linpro::{check_cap, is_normalized_key, point_count, unpack, Caps, EchelonBasis, ProjPoint, ProjSystem};
use crate::report::{VerificationReport, Witness};

/// Rank of the points of `pts` lying on the hyperplane `dual^⊥`, stopping
/// early once it reaches k-1.
pub fn hyperplane_rank(f: &Field, dual: &[Elem], pts: &[ProjPoint]) -> usize {
    let k = dual.len();
    let target = k.saturating_sub(1);
    let mut basis = EchelonBasis::new(k);
    for p in pts {
        if basis.rank() == target {
            break;
        }
        if f.dot(dual, p.coords()) == 0 {
            basis.insert(f, p.coords());
        }
    }
    basis.rank()
}

/// Position of the normalized vector with key `x` in canonical order.
pub fn canonical_index(x: u64, q: u32) -> u64 {
    (1..x).filter(|&y| is_normalized_key(y, q)).count() as u64
}

/// First hyperplane (canonical order) not spanned by its points of `pts`.
pub fn first_failing_hyperplane(f: &Field, k: usize, pts: &[ProjPoint], cap: u64) -> Result<Option<Witness>> {
    let q = f.size();
    check_cap("hyperplanes", point_count(k, q), cap)?;
    let mut distinct = pts.to_vec();
    distinct.sort();
    distinct.dedup();
    let total = (q as u64).pow(k as u32);
    let hit = (1..total)
        .into_par_iter()
        .filter(|&x| is_normalized_key(x, q))
        .find_map_first(|x| {
            let v = unpack(x, q, k);
            let r = hyperplane_rank(f, &v, &distinct);
            (r + 1 < k).then_some((x, v, r))
        });
    Ok(hit.map(|(x, dual, rank)| Witness::Hyperplane {
        index: canonical_index(x, q),
        dual,
        rank,
    }))
}

/// Strong blocking set test: every hyperplane meets the set in a spanning
/// set of the hyperplane.
pub fn is_sbs(p: &ProjSystem, caps: &Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let w = first_failing_hyperplane(p.field(), p.k(), p.points(), caps.hyperplanes)?;
    Ok(VerificationReport::new("sbs", "hyperplane-scan", w, started))
}

/// Checks that a hyperplane witness really fails for `p`.
pub fn replay_hyperplane(p: &ProjSystem, dual: &[Elem]) -> bool {
    dual.len() == p.k() && dual.iter().any(|&x| x != 0) && hyperplane_rank(p.field(), dual, p.points()) + 1 < p.k()
}
