//! Explicit constructions: tetrahedra, diverted-tangent sets, four points per
//! line, embedded copies and the iterated super construction.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::concat::field_reduce_point;
use crate::error::{Error, Result};
use crate::gfield::{make_tower, prime_power, Elem, Field, FieldTower};
use crate::linpro::{check_cap, enumerate_points, point_count, Caps, ProjPoint, ProjSystem, Subspace};
use crate::report::Witness;
use crate::verify::{first_failing_hyperplane, on_any_proper_subline};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertStatus {
    Verified,
    Failed,
    Unverified,
}

/// Outcome of the check run after a construction. No timings, so equal
/// inputs give equal certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub status: CertStatus,
    pub points: usize,
    pub k: usize,
    pub field_size: u32,
    pub hyperplanes: Option<u128>,
    pub distinct: bool,
    pub witness: Option<Witness>,
}

impl Certificate {
    /// Strong blocking set check when the hyperplane count fits the cap.
    pub fn sbs(claim: &str, p: &ProjSystem, verify: bool, caps: &Caps) -> Result<Certificate> {
        let total = point_count(p.k(), p.field().size());
        let mut c = Certificate {
            claim: claim.to_string(),
            status: CertStatus::Unverified,
            points: p.len(),
            k: p.k(),
            field_size: p.field().size(),
            hyperplanes: None,
            distinct: !p.has_duplicates(),
            witness: None,
        };
        if verify && total <= caps.hyperplanes as u128 {
            let w = first_failing_hyperplane(p.field(), p.k(), p.points(), caps.hyperplanes)?;
            c.hyperplanes = Some(total);
            c.status = if w.is_none() {
                CertStatus::Verified
            } else {
                CertStatus::Failed
            };
            c.witness = w;
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Union of the lines joining pairs of standard frame points, in canonical
/// order.
pub fn tetrahedron(k: usize, field: &Arc<Field>) -> Result<ProjSystem> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("tetrahedron needs k >= 2 (k = {k})")));
    }
    let mut pts = Vec::new();
    for i in 0..k {
        let mut e = vec![0; k];
        e[i] = 1;
        pts.push(ProjPoint::from_normalized(e));
        for j in i + 1..k {
            for lambda in 1..field.size() {
                let mut v = vec![0; k];
                v[i] = 1;
                v[j] = lambda;
                pts.push(ProjPoint::from_normalized(v));
            }
        }
    }
    let q = field.size();
    pts.sort_by_key(|p| p.key(q));
    ProjSystem::new(field.clone(), k, pts)
}

/// Lines of a diverted-tangent set with their union and certificate.
#[derive(Clone, Debug)]
pub struct TangentSet {
    pub lines: Vec<(ProjPoint, ProjPoint)>,
    pub subspaces: Vec<Subspace>,
    pub union: ProjSystem,
    pub certificate: Certificate,
}

/// The parameters 0, 1, ω, ω², … (first `count`).
pub fn parameter_set(field: &Field, count: usize) -> Vec<Elem> {
    (0..count)
        .map(|r| if r == 0 { 0 } else { field.exp(r as u64 - 1) })
        .collect()
}

/// φ(0) = 0, φ(r) = ω^{r-1}.
fn phi(field: &Field, r: usize) -> Elem {
    if r == 0 {
        0
    } else {
        field.exp(r as u64 - 1)
    }
}

/// a(λ) = (1, λ, …, λ^{K-1}) and b(λ) = (0, 1, φ(2)λ, …, φ(K-1)λ^{K-2}).
pub fn tangent_pair(field: &Field, k: usize, lambda: Elem) -> (Vec<Elem>, Vec<Elem>) {
    let a: Vec<Elem> = (0..k).map(|i| field.pow(lambda, i as u64)).collect();
    let mut b = vec![0; k];
    if k > 1 {
        b[1] = 1;
    }
    for (r, slot) in b.iter_mut().enumerate().skip(2) {
        *slot = field.mul(phi(field, r), field.pow(lambda, r as u64 - 1));
    }
    (a, b)
}

/// 2K-3 diverted tangent lines in PG(K-1, Q), followed by a strong blocking
/// set check of their union when feasible.
pub fn diverted_tangent_set(k: usize, field: &Arc<Field>, verify: bool, caps: &Caps) -> Result<TangentSet> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("need K >= 2 (K = {k})")));
    }
    let count = 2 * k - 3;
    if count > field.size() as usize {
        return Err(Error::TooFewParameters {
            needed: count,
            available: field.size() as usize,
        });
    }
    let mut lines = Vec::with_capacity(count);
    let mut subspaces = Vec::with_capacity(count);
    let mut pts = Vec::new();
    for lambda in parameter_set(field, count) {
        let (a, b) = tangent_pair(field, k, lambda);
        let s = Subspace::span_of_points(
            field,
            k,
            &[
                ProjPoint::from_normalized(a.clone()),
                ProjPoint::from_normalized(b.clone()),
            ],
        );
        pts.extend(s.points(field));
        lines.push((ProjPoint::from_normalized(a), ProjPoint::from_normalized(b)));
        subspaces.push(s);
    }
    let union = ProjSystem::new(field.clone(), k, pts)?.dedup();
    let certificate = Certificate::sbs("rational-normal-tangent-set", &union, verify, caps)?;
    Ok(TangentSet {
        lines,
        subspaces,
        union,
        certificate,
    })
}

/// [a], [b], [a+b], [a+ωb] on every line, refusing any quadruple on a
/// proper subline.
pub fn four_point_selection(t: &FieldTower, lines: &[(ProjPoint, ProjPoint)]) -> Result<ProjSystem> {
    if t.h() < 2 {
        return Err(Error::InvalidH(t.h()));
    }
    let f = t.top();
    let k = lines.first().map(|l| l.0.k()).unwrap_or(0);
    let mut pts = Vec::with_capacity(4 * lines.len());
    for (i, (a, b)) in lines.iter().enumerate() {
        let (a, b) = (a.coords(), b.coords());
        let mut s = a.to_vec();
        f.axpy(&mut s, 1, b);
        let mut w = a.to_vec();
        f.axpy(&mut w, t.omega(), b);
        let four = [
            ProjPoint::normalize(f, a).ok_or(Error::ZeroCodeword)?,
            ProjPoint::normalize(f, b).ok_or(Error::ZeroCodeword)?,
            ProjPoint::normalize(f, &s).ok_or(Error::NotDistinct)?,
            ProjPoint::normalize(f, &w).ok_or(Error::NotDistinct)?,
        ];
        if let Some(d) = on_any_proper_subline(t, &four, false)? {
            return Err(Error::SublineViolation { line: i, degree: d });
        }
        pts.extend(four);
    }
    ProjSystem::new(f.clone(), k, pts)
}

/// Image of `model` under the map sending the standard basis to the basis
/// rows of `target`.
pub fn embed_sbs(f: &Field, target: &Subspace, model: &ProjSystem) -> Result<ProjSystem> {
    if target.dim() != model.k() {
        return Err(Error::DimensionMismatch {
            expected: target.dim(),
            found: model.k(),
        });
    }
    let rank = model.rank();
    if rank < model.k() {
        return Err(Error::NonSpanningSystem { rank, k: model.k() });
    }
    let pts = model
        .points()
        .iter()
        .map(|p| ProjPoint::normalize(f, &target.basis().vec_mul(f, p.coords())).expect("injective"))
        .collect();
    ProjSystem::new(model.field().clone(), target.ambient(), pts)
}

/// k_{j+1} = k_j (q^{k_j} + c) / 2 with c = 3 for odd q and 2 for even q.
fn next_k(q: u32, k: &BigUint) -> BigUint {
    let c = if q % 2 == 1 { 3u32 } else { 2 };
    let pow = match k.to_u32() {
        Some(e) => BigUint::from(q).pow(e),
        None => panic!("dimension too large to exponentiate"),
    };
    k * (pow + c) / 2u32
}

/// k_0, …, k_i of the super construction.
pub fn super_dimensions(q: u32, i: usize) -> Vec<BigUint> {
    let mut ks = vec![BigUint::from(2u32)];
    for _ in 0..i {
        let last = ks.last().unwrap();
        if last.bits() > 32 {
            break;
        }
        let next = next_k(q, last);
        ks.push(next);
    }
    ks
}

/// Sizes n_0 = q+1, n_{j+1} = 4·(2k_{j+1}/k_j - 3)·n_j.
pub fn super_sizes(q: u32, i: usize) -> Vec<BigUint> {
    let ks = super_dimensions(q, i);
    let mut ns = vec![BigUint::from(q + 1)];
    for w in ks.windows(2) {
        let lines = BigUint::from(2u32) * &w[1] / &w[0] - 3u32;
        let next = BigUint::from(4u32) * lines * ns.last().unwrap();
        ns.push(next);
    }
    ns
}

/// Smallest t with n <= ^t q (tetration, ^0 q = 1).
pub fn log_star(q: u32, n: &BigUint) -> u32 {
    let mut t = 0;
    let mut tower = BigUint::one();
    while &tower < n {
        t += 1;
        // q^tower exceeds n as soon as tower > bits(n)
        if tower > BigUint::from(n.bits()) {
            break;
        }
        tower = BigUint::from(q).pow(tower.to_u32().expect("bounded by bit length"));
    }
    t
}

/// Size bounds for B_i: ⌈(q+1)/2 · 8^i · k_i⌉ and ⌈8^{log*} /2 · k_i (q+1)⌉.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperBound {
    pub k: BigUint,
    pub rate_bound: BigUint,
    pub log_star: u32,
    pub log_star_bound: BigUint,
}

pub fn super_size_bound(q: u32, i: usize) -> SuperBound {
    let ks = super_dimensions(q, i);
    let k = ks.last().unwrap().clone();
    let i = (ks.len() - 1) as u32;
    let eight_i = BigUint::from(8u32).pow(i);
    let num = BigUint::from(q + 1) * &eight_i * &k;
    let rate_bound = num.div_ceil(&BigUint::from(2u32));
    let ls = log_star(q, &k);
    let num = BigUint::from(8u32).pow(ls) * &k * (q + 1);
    SuperBound {
        k: k.clone(),
        rate_bound,
        log_star: ls,
        log_star_bound: num.div_ceil(&BigUint::from(2u32)),
    }
}

#[derive(Clone, Debug)]
pub struct SuperConstruction {
    pub points: ProjSystem,
    pub k: usize,
    pub certificate: SuperCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperCertificate {
    pub q: u32,
    pub i: usize,
    pub k: usize,
    pub size: usize,
    pub expected_size: String,
    pub size_law: bool,
    pub bound: String,
    pub within_bound: bool,
    pub steps: Vec<Certificate>,
    pub sbs: Certificate,
}

impl SuperCertificate {
    pub fn holds(&self) -> bool {
        self.size_law
            && self.within_bound
            && self.sbs.distinct
            && self.sbs.status != CertStatus::Failed
            && self.steps.iter().all(|s| s.status != CertStatus::Failed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// B_0 = PG(1, q); each step reduces four points per diverted tangent line
/// of PG(K-1, q^{k_j}) and places a copy of B_j in every reduced subspace.
pub fn super_construction(q: u32, i: usize, verify: bool, caps: &Caps) -> Result<SuperConstruction> {
    let (p, m) = prime_power(q as u64).ok_or(Error::NonPrime(q as u64))?;
    let base = make_tower(p, m, 1)?.base().clone();
    let dims = super_dimensions(q, i);
    let sizes = super_sizes(q, i);
    if dims.len() <= i {
        return Err(Error::CapExceeded {
            what: "super construction dimension",
            needed: u128::MAX,
            cap: u32::MAX as u128,
        });
    }
    let target = sizes[i].to_u128().unwrap_or(u128::MAX);
    check_cap("super construction points", target, caps.enumeration)?;
    let mut current = ProjSystem::new(base.clone(), 2, enumerate_points(2, &base, u64::MAX)?.collect())?;
    let mut steps = Vec::new();
    for j in 0..i {
        let kj = dims[j].to_u32().unwrap();
        let kk = (dims[j + 1].clone() / &dims[j]).to_usize().unwrap();
        let t = make_tower(p, m, kj)?;
        let rnt = diverted_tangent_set(kk, t.top(), verify, caps)?;
        let x = four_point_selection(&t, &rnt.lines)?;
        steps.push(rnt.certificate);
        let mut pts = Vec::with_capacity(x.len() * current.len());
        for point in x.points() {
            let sub = field_reduce_point(&t, point);
            pts.extend(embed_sbs(&base, &sub, &current)?.points().iter().cloned());
        }
        current = ProjSystem::new(base.clone(), kk * kj as usize, pts)?;
    }
    let k = current.k();
    let bound = super_size_bound(q, i).rate_bound;
    let size = current.len();
    let sbs = Certificate::sbs("strong-blocking-set", &current, verify, caps)?;
    let certificate = SuperCertificate {
        q,
        i,
        k,
        size,
        expected_size: sizes[i].to_string(),
        size_law: BigUint::from(size) == sizes[i],
        within_bound: BigUint::from(size) <= bound,
        bound: bound.to_string(),
        steps,
        sbs,
    };
    Ok(SuperConstruction {
        points: current,
        k,
        certificate,
    })
}
