use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{self, code_to_system, weight_range, Codeword, LinearCode, MinimalityEngine, Support};
use crate::concat::{field_reduce_code, field_reduce_system};
use crate::error::{Error, Result};
use crate::gfield::{Elem, FieldTower};
use crate::linpro::{Caps, ProjPoint, ProjSystem};
use crate::report::{VerificationReport, Witness};
use crate::verify::sbs::first_failing_hyperplane;

/// Strong blocking set test on the field reduction of `p`. The witness is a
/// hyperplane of PG(Kh-1, q).
pub fn is_outer_sbs(t: &FieldTower, p: &ProjSystem, caps: &Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let r = field_reduce_system(t, p)?;
    let w = first_failing_hyperplane(r.field(), r.k(), r.points(), caps.hyperplanes)?;
    Ok(VerificationReport::new(
        "outer-sbs",
        "reduced-hyperplane-scan",
        w,
        started,
    ))
}

/// Some c' ≠ λc (λ ∈ F_q) with c'_i = λ_i c_i, λ_i ∈ F_q, on σ(c) and zero
/// elsewhere.
fn violates(t: &FieldTower, c: &[Elem], s: &Support, other: &[Elem], other_s: &Support) -> bool {
    if !other_s.is_subset_of(s) {
        return false;
    }
    let top = t.top();
    let mut common: Option<Elem> = None;
    let mut proportional = true;
    for (&a, &b) in c.iter().zip(other) {
        if a == 0 {
            continue;
        }
        let r = top.div(b, a);
        if !t.in_subfield(r, 1) {
            return false;
        }
        match common {
            None => common = Some(r),
            Some(x) if x != r => proportional = false,
            _ => {}
        }
    }
    !proportional
}

fn first_violation(t: &FieldTower, cw: &Codeword, all: &[(Codeword, Support)]) -> Option<usize> {
    let s = Support::of(&cw.word);
    all.iter().position(|(o, os)| violates(t, &cw.word, &s, &o.word, os))
}

fn check_top(t: &FieldTower, c: &LinearCode) -> Result<()> {
    if c.field().as_ref() != t.top().as_ref() {
        return Err(Error::InvalidParameter("code is not over the top field".into()));
    }
    Ok(())
}

fn all_with_supports(c: &LinearCode, cap: u64) -> Result<Vec<(Codeword, Support)>> {
    Ok(c.codewords(cap)?
        .into_par_iter()
        .map(|w| {
            let s = Support::of(&w.word);
            (w, s)
        })
        .collect())
}

/// Exhaustive test of the outer minimality of one codeword.
pub fn codeword_is_outer_minimal(t: &FieldTower, c: &LinearCode, cw: &Codeword, cap: u64) -> Result<bool> {
    check_top(t, c)?;
    if cw.message.iter().all(|&x| x == 0) {
        return Err(Error::ZeroCodeword);
    }
    let all = all_with_supports(c, cap)?;
    Ok(first_violation(t, cw, &all).is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OuterEngine {
    /// Outer minimality of every codeword.
    CodewordScan,
    /// Minimality of S_q(h) □ C.
    Reduced,
    /// Outer strong blocking set test on the projective system.
    Geometric,
}

impl OuterEngine {
    pub const ALL: [OuterEngine; 3] = [OuterEngine::CodewordScan, OuterEngine::Reduced, OuterEngine::Geometric];
}

pub fn outer_minimal_engine(
    t: &FieldTower,
    c: &LinearCode,
    engine: OuterEngine,
    caps: &Caps,
) -> Result<VerificationReport> {
    check_top(t, c)?;
    let started = Instant::now();
    match engine {
        OuterEngine::CodewordScan => {
            let all = all_with_supports(c, caps.codewords)?;
            let reps = c.projective_codewords(caps.codewords)?;
            let hit = reps
                .par_iter()
                .find_map_first(|cw| first_violation(t, cw, &all).map(|j| (cw.clone(), j)));
            let w = hit.map(|(cw, j)| Witness::CodewordPair {
                message: cw.message,
                word: cw.word,
                other_message: all[j].0.message.clone(),
                other_word: all[j].0.word.clone(),
            });
            Ok(VerificationReport::new("outer-minimal", "codeword-scan", w, started))
        }
        OuterEngine::Reduced => {
            let r = field_reduce_code(t, c)?;
            let mut rep = codes::code_is_minimal(&r, MinimalityEngine::Pairwise, caps)?;
            rep.check = "outer-minimal".into();
            rep.engine = "reduced-pairwise".into();
            rep.elapsed_ms = started.elapsed().as_millis() as u64;
            Ok(rep)
        }
        OuterEngine::Geometric => {
            let mut rep = is_outer_sbs(t, &code_to_system(c)?, caps)?;
            rep.check = "outer-minimal".into();
            rep.engine = "outer-sbs".into();
            rep.elapsed_ms = started.elapsed().as_millis() as u64;
            Ok(rep)
        }
    }
}

/// Runs all three engines. The verdict is their conjunction; the witness
/// comes from the first failing engine.
pub fn code_is_outer_minimal(t: &FieldTower, c: &LinearCode, caps: &Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut engines = Vec::new();
    for e in OuterEngine::ALL {
        engines.push(outer_minimal_engine(t, c, e, caps)?.engine_verdict());
    }
    let witness = engines.iter().find(|e| !e.verdict).and_then(|e| e.witness.clone());
    let mut rep = VerificationReport::new("outer-minimal", "all", witness, started);
    rep.verdict = engines.iter().all(|e| e.verdict);
    rep.engines = engines;
    Ok(rep)
}

/// Whether the engines of a combined report agree.
pub fn engines_agree(r: &VerificationReport) -> bool {
    r.engines.windows(2).all(|w| w[0].verdict == w[1].verdict)
}

/// W/D < q/(q-1) with q the base field of the tower.
pub fn outer_ab(t: &FieldTower, c: &LinearCode, cap: u64) -> Result<(usize, usize, bool)> {
    check_top(t, c)?;
    let (w, d) = weight_range(c, cap)?;
    let q = t.q() as u128;
    Ok((w, d, (w as u128) * (q - 1) < (d as u128) * q))
}

/// Checks that a codeword pair refutes outer minimality.
pub fn replay_outer_pair(t: &FieldTower, c: &LinearCode, message: &[Elem], other: &[Elem]) -> bool {
    if message.len() != c.k() || other.len() != c.k() || ProjPoint::normalize(c.field(), message).is_none() {
        return false;
    }
    let a = c.encode(message);
    let b = c.encode(other);
    violates(t, &a, &Support::of(&a), &b, &Support::of(&b))
}
