use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gfield::Field;
use crate::linpro::{enumerate_codim2, subspace_meet, Caps, ProjPoint, ProjSystem, Subspace};
use crate::report::{VerificationReport, Witness};

/// Subspaces U_1, …, U_N of a common PG(k-1, q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceCollection {
    field: Arc<Field>,
    k: usize,
    members: Vec<Subspace>,
}

impl SubspaceCollection {
    pub fn new(field: Arc<Field>, members: Vec<Subspace>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::InvalidParameter("empty subspace collection".into()));
        };
        let k = first.ambient();
        if let Some(bad) = members.iter().find(|m| m.ambient() != k) {
            return Err(Error::AmbientMismatch(k, bad.ambient()));
        }
        Ok(SubspaceCollection { field, k, members })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// All points of all members, duplicates removed, in member order.
    pub fn union(&self) -> ProjSystem {
        let mut pts: Vec<ProjPoint> = Vec::new();
        for m in &self.members {
            pts.extend(m.points(&self.field));
        }
        ProjSystem::new(self.field.clone(), self.k, pts)
            .expect("members share the ambient space")
            .dedup()
    }
}

/// Λ meets every member U_i in vector dimension at least dim U_i - 1.
pub fn violates_avoidance(f: &Field, lambda: &Subspace, members: &[Subspace]) -> bool {
    members.iter().all(|u| {
        let need = u.dim().saturating_sub(1);
        need == 0 || subspace_meet(f, lambda, u).expect("same ambient").dim() >= need
    })
}

/// True iff no codimension-2 subspace violates avoidance. The witness is the
/// first violating one in enumeration order.
pub fn avoidance_property(u: &SubspaceCollection, caps: &Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let f = u.field.as_ref();
    let spaces = enumerate_codim2(u.k, f, caps.enumeration)?;
    let hit = spaces
        .par_iter()
        .enumerate()
        .find_map_first(|(i, l)| violates_avoidance(f, l, &u.members).then_some(i));
    let w = hit.map(|i| Witness::Codim2 {
        index: i,
        basis: spaces[i].basis().to_rows(),
    });
    Ok(VerificationReport::new("avoidance", "codim2-scan", w, started))
}
