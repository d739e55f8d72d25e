use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfield::{Elem, FieldTower};
use crate::linpro::{span_rank, ProjPoint};

/// The subfield over which a subline is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SublineField {
    /// F_{q^d}, an intermediate field of the tower.
    Relative(u32),
    /// F_{p^e}, any subfield of the top field.
    Absolute(u32),
}

/// Coefficients (x, y) with v = x·a + y·b, assuming v ∈ ⟨a, b⟩ and a, b
/// independent.
fn coords_on_line(t: &FieldTower, a: &[Elem], b: &[Elem], v: &[Elem]) -> (Elem, Elem) {
    let f = t.top();
    let k = a.len();
    for i in 0..k {
        for j in i + 1..k {
            let det = f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
            if det != 0 {
                let x = f.div(f.sub(f.mul(v[i], b[j]), f.mul(v[j], b[i])), det);
                let y = f.div(f.sub(f.mul(a[i], v[j]), f.mul(a[j], v[i])), det);
                return (x, y);
            }
        }
    }
    unreachable!("a and b are independent")
}

/// The cross-ratio-like invariant y/x of P4 in the frame (P1, P2; P3).
pub fn frame_ratio(t: &FieldTower, pts: &[ProjPoint; 4]) -> Result<Elem> {
    let f = t.top();
    let r = span_rank(f, pts)?;
    let mut sorted = pts.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() < 4 {
        return Err(Error::NotDistinct);
    }
    if r != 2 {
        return Err(Error::NotCollinear);
    }
    let (a, b) = (pts[0].coords(), pts[1].coords());
    let (x1, x2) = coords_on_line(t, a, b, pts[2].coords());
    // With P1' = x1 P1, P2' = x2 P2 we have P3 = P1' + P2'.
    let (x, y) = coords_on_line(t, a, b, pts[3].coords());
    let x = f.div(x, x1);
    let y = f.div(y, x2);
    Ok(f.div(y, x))
}

fn in_field(t: &FieldTower, a: Elem, sub: SublineField) -> bool {
    match sub {
        SublineField::Relative(d) => t.in_subfield(a, d),
        SublineField::Absolute(e) => t.in_absolute_subfield(a, e),
    }
}

/// Whether P4 lies on the unique subline over the given subfield through
/// P1, P2, P3.
pub fn points_on_common_subline(t: &FieldTower, pts: &[ProjPoint; 4], sub: SublineField) -> Result<bool> {
    let ok = match sub {
        SublineField::Relative(d) => d >= 1 && t.h().is_multiple_of(d),
        SublineField::Absolute(e) => e >= 1 && (t.m() * t.h()).is_multiple_of(e),
    };
    if !ok {
        return Err(Error::InvalidParameter(format!(
            "{sub:?} is not a subfield of the top field"
        )));
    }
    Ok(in_field(t, frame_ratio(t, pts)?, sub))
}

/// Smallest proper subfield degree admitting a common subline, if any.
/// Relative degrees d | h, d < h by default; absolute degrees e | mh,
/// e < mh when `absolute` is set.
pub fn on_any_proper_subline(t: &FieldTower, pts: &[ProjPoint; 4], absolute: bool) -> Result<Option<u32>> {
    let r = frame_ratio(t, pts)?;
    if absolute {
        let n = t.m() * t.h();
        Ok((1..n)
            .filter(|e| n.is_multiple_of(*e))
            .find(|&e| in_field(t, r, SublineField::Absolute(e))))
    } else {
        Ok(t.proper_subfield_member(r))
    }
}
