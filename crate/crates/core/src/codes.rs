//! Linear codes over a single field: weights, distance, minimality and the
//! correspondence with projective systems.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfield::{Elem, Field};
use crate::linpro::{self, check_cap, enumerate_points, unpack, Caps, ProjPoint, ProjSystem};
use crate::mat::Mat;
use crate::report::{VerificationReport, Witness};
use crate::verify;

/// A k×n generator matrix of full row rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Arc<Field>,
    g: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Codeword {
    pub message: Vec<Elem>,
    pub word: Vec<Elem>,
}

/// Support of a word as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Support {
    bits: Vec<u64>,
    weight: usize,
}

impl Support {
    pub fn of(word: &[Elem]) -> Support {
        let mut bits = vec![0u64; word.len().div_ceil(64)];
        let mut weight = 0;
        for (i, &x) in word.iter().enumerate() {
            if x != 0 {
                bits[i / 64] |= 1 << (i % 64);
                weight += 1;
            }
        }
        Support { bits, weight }
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn is_subset_of(&self, other: &Support) -> bool {
        self.weight <= other.weight && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Hamming weight and support positions of a word.
pub fn weight_support(word: &[Elem]) -> (usize, Vec<usize>) {
    let s: Vec<usize> = word
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, _)| i)
        .collect();
    (s.len(), s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimalityEngine {
    /// Exhaustive comparison of codeword supports.
    Pairwise,
    /// Strong blocking set test on the associated projective system.
    Geometric,
}

impl LinearCode {
    pub fn new(field: Arc<Field>, g: Mat) -> Result<LinearCode> {
        if g.rows() == 0 {
            return Err(Error::InvalidParameter("a code needs k >= 1".into()));
        }
        if let Some(&v) = g.data().iter().find(|&&x| x >= field.size()) {
            return Err(Error::ElementOutOfRange {
                value: v as u64,
                size: field.size(),
            });
        }
        let r = linpro::rank(&field, &g);
        if r < g.rows() {
            return Err(Error::RankDeficient {
                rank: r,
                rows: g.rows(),
            });
        }
        Ok(LinearCode { field, g })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn generator(&self) -> &Mat {
        &self.g
    }

    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        self.g.vec_mul(&self.field, message)
    }

    pub fn codeword(&self, message: &[Elem]) -> Codeword {
        Codeword {
            message: message.to_vec(),
            word: self.encode(message),
        }
    }

    /// Q^k.
    pub fn size(&self) -> u128 {
        (self.field.size() as u128).pow(self.k() as u32)
    }

    /// All codewords in message-key order (including zero).
    pub fn codewords(&self, cap: u64) -> Result<Vec<Codeword>> {
        check_cap("codewords", self.size(), cap)?;
        let q = self.field.size();
        Ok((0..self.size() as u64)
            .into_par_iter()
            .map(|x| self.codeword(&unpack(x, q, self.k())))
            .collect())
    }

    /// One codeword per one-dimensional subcode, messages normalized and in
    /// canonical order.
    pub fn projective_codewords(&self, cap: u64) -> Result<Vec<Codeword>> {
        check_cap("codewords", self.size(), cap)?;
        let msgs: Vec<ProjPoint> = enumerate_points(self.k(), &self.field, u64::MAX)?.collect();
        Ok(msgs.par_iter().map(|m| self.codeword(m.coords())).collect())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero_column().is_none()
    }

    pub fn zero_column(&self) -> Option<usize> {
        (0..self.n()).find(|&j| (0..self.k()).all(|i| self.g.get(i, j) == 0))
    }

    /// No zero column and no two proportional columns.
    pub fn is_projective(&self) -> bool {
        if !self.is_nondegenerate() {
            return false;
        }
        let cols: Vec<ProjPoint> = (0..self.n())
            .map(|j| ProjPoint::normalize(&self.field, &self.g.column(j)).unwrap())
            .collect();
        let mut sorted = cols.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == cols.len()
    }
}

/// (maximum weight, minimum distance) over nonzero codewords.
pub fn weight_range(c: &LinearCode, cap: u64) -> Result<(usize, usize)> {
    let words = c.projective_codewords(cap)?;
    let (w, d) = words
        .par_iter()
        .map(|cw| {
            let wt = cw.word.iter().filter(|&&x| x != 0).count();
            (wt, wt)
        })
        .reduce(|| (0, usize::MAX), |a, b| (a.0.max(b.0), a.1.min(b.1)));
    Ok((w, d))
}

pub fn min_distance(c: &LinearCode, cap: u64) -> Result<usize> {
    Ok(weight_range(c, cap)?.1)
}

pub fn max_weight(c: &LinearCode, cap: u64) -> Result<usize> {
    Ok(weight_range(c, cap)?.0)
}

/// Columns of G as normalized points, in column order.
pub fn code_to_system(c: &LinearCode) -> Result<ProjSystem> {
    if let Some(j) = c.zero_column() {
        return Err(Error::DegenerateCode(j));
    }
    let pts = (0..c.n())
        .map(|j| ProjPoint::normalize(&c.field, &c.g.column(j)).unwrap())
        .collect();
    ProjSystem::new(c.field.clone(), c.k(), pts)
}

/// The code whose generator columns are the points of `p`.
pub fn system_to_code(p: &ProjSystem) -> Result<LinearCode> {
    let rank = p.rank();
    if rank < p.k() {
        return Err(Error::NonSpanningSystem { rank, k: p.k() });
    }
    let cols: Vec<&[Elem]> = p.points().iter().map(|x| x.coords()).collect();
    LinearCode::new(p.field().clone(), Mat::from_columns(&cols, p.k()))
}

/// Simplex code: generator columns are all points of PG(k-1, Q).
pub fn simplex(k: usize, field: &Arc<Field>, cap: u64) -> Result<LinearCode> {
    if k == 0 {
        return Err(Error::InvalidParameter("simplex code needs k >= 1".into()));
    }
    let pts: Vec<ProjPoint> = enumerate_points(k, field, cap)?.collect();
    let cols: Vec<&[Elem]> = pts.iter().map(|p| p.coords()).collect();
    LinearCode::new(field.clone(), Mat::from_columns(&cols, k))
}

/// Every codeword whose support lies in σ(c) is a multiple of c.
pub fn codeword_is_minimal(c: &LinearCode, cw: &Codeword, cap: u64) -> Result<bool> {
    let Some(own) = ProjPoint::normalize(&c.field, &cw.message) else {
        return Err(Error::ZeroCodeword);
    };
    let s = Support::of(&cw.word);
    let words = c.projective_codewords(cap)?;
    let violation = words
        .par_iter()
        .any(|other| other.message != own.coords() && Support::of(&other.word).is_subset_of(&s));
    Ok(!violation)
}

/// First (canonical order) pair (i, j), i ≠ j, with σ(words[j]) ⊆ σ(words[i]).
pub(crate) fn first_support_containment(supports: &[Support]) -> Option<(usize, usize)> {
    (0..supports.len()).into_par_iter().find_map_first(|i| {
        let si = &supports[i];
        (0..supports.len())
            .find(|&j| j != i && supports[j].is_subset_of(si))
            .map(|j| (i, j))
    })
}

fn pair_witness(a: &Codeword, b: &Codeword) -> Witness {
    Witness::CodewordPair {
        message: a.message.clone(),
        word: a.word.clone(),
        other_message: b.message.clone(),
        other_word: b.word.clone(),
    }
}

pub fn code_is_minimal(c: &LinearCode, engine: MinimalityEngine, caps: &Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    match engine {
        MinimalityEngine::Pairwise => {
            let words = c.projective_codewords(caps.codewords)?;
            let supports: Vec<Support> = words.par_iter().map(|w| Support::of(&w.word)).collect();
            let w = first_support_containment(&supports).map(|(i, j)| pair_witness(&words[i], &words[j]));
            Ok(VerificationReport::new("minimal", "pairwise", w, started))
        }
        MinimalityEngine::Geometric => {
            let p = code_to_system(c)?;
            let w = verify::first_failing_hyperplane(p.field(), p.k(), p.points(), caps.hyperplanes)?;
            Ok(VerificationReport::new("minimal", "geometric", w, started))
        }
    }
}

/// Checks that a codeword-pair witness exhibits a non-minimal codeword.
pub fn replay_pair(c: &LinearCode, message: &[Elem], other: &[Elem]) -> bool {
    let f = &c.field;
    if message.len() != c.k() || other.len() != c.k() {
        return false;
    }
    let (Some(a), Some(b)) = (ProjPoint::normalize(f, message), ProjPoint::normalize(f, other)) else {
        return false;
    };
    a != b && Support::of(&c.encode(other)).is_subset_of(&Support::of(&c.encode(message)))
}

/// w/d < q/(q-1), decided as w(q-1) < dq.
pub fn ab_condition(c: &LinearCode, cap: u64) -> Result<(usize, usize, bool)> {
    let (w, d) = weight_range(c, cap)?;
    let q = c.field.size() as u128;
    Ok((w, d, (w as u128) * (q - 1) < (d as u128) * q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfield::make_tower;

    fn f2() -> Arc<Field> {
        make_tower(2, 1, 1).unwrap().base().clone()
    }

    #[test]
    fn weight_support_examples() {
        assert_eq!(weight_support(&[0, 0, 0]), (0, vec![]));
        assert_eq!(weight_support(&[1; 7]), (7, (0..7).collect()));
    }

    #[test]
    fn simplex_shapes() {
        let f = f2();
        let s2 = simplex(2, &f, 100).unwrap();
        assert_eq!(s2.generator().to_rows(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        let s3 = simplex(3, &f, 100).unwrap();
        assert_eq!((s3.k(), s3.n()), (3, 7));
        for cw in s3.projective_codewords(100).unwrap() {
            assert_eq!(weight_support(&cw.word).0, 4);
        }
        let s1 = simplex(1, &f, 100).unwrap();
        assert_eq!(s1.generator().to_rows(), vec![vec![1]]);
    }

    #[test]
    fn distance_examples() {
        let f = f2();
        assert_eq!(min_distance(&simplex(3, &f, 100).unwrap(), 100).unwrap(), 4);
        let id = LinearCode::new(f.clone(), Mat::identity(3)).unwrap();
        assert_eq!(min_distance(&id, 100).unwrap(), 1);
    }

    #[test]
    fn rejects_rank_deficient() {
        let f = f2();
        let g = Mat::from_rows(&[[1, 1], [1, 1]], 2);
        assert!(matches!(
            LinearCode::new(f, g),
            Err(Error::RankDeficient { rank: 1, rows: 2 })
        ));
    }

    #[test]
    fn projective_and_degenerate() {
        let f = f2();
        assert!(simplex(3, &f, 100).unwrap().is_projective());
        let dup = LinearCode::new(f.clone(), Mat::from_rows(&[[1, 1, 0], [0, 0, 1]], 3)).unwrap();
        assert!(dup.is_nondegenerate() && !dup.is_projective());
        let zero = LinearCode::new(f.clone(), Mat::from_rows(&[[1, 0, 0], [0, 0, 1]], 3)).unwrap();
        assert!(!zero.is_nondegenerate());
        assert!(matches!(code_to_system(&zero), Err(Error::DegenerateCode(1))));
    }

    #[test]
    fn system_round_trip() {
        let f = f2();
        let s = simplex(3, &f, 100).unwrap();
        let p = code_to_system(&s).unwrap();
        let all: Vec<_> = enumerate_points(3, &f, 100).unwrap().collect();
        assert_eq!(p.points(), &all[..]);
        assert_eq!(system_to_code(&p).unwrap(), s);
        let id = LinearCode::new(f.clone(), Mat::identity(3)).unwrap();
        let frame = code_to_system(&id).unwrap();
        assert_eq!(frame.points()[1].coords(), &[0, 1, 0]);
        let flat = ProjSystem::new(f, 3, all[..3].to_vec()).unwrap();
        assert!(matches!(
            system_to_code(&flat),
            Err(Error::NonSpanningSystem { rank: 2, k: 3 })
        ));
    }

    #[test]
    fn minimal_codewords_of_full_space() {
        let f = f2();
        let c = LinearCode::new(f, Mat::identity(2)).unwrap();
        assert!(codeword_is_minimal(&c, &c.codeword(&[1, 0]), 100).unwrap());
        assert!(!codeword_is_minimal(&c, &c.codeword(&[1, 1]), 100).unwrap());
        assert!(matches!(
            codeword_is_minimal(&c, &c.codeword(&[0, 0]), 100),
            Err(Error::ZeroCodeword)
        ));
        let r = code_is_minimal(&c, MinimalityEngine::Pairwise, &Caps::default()).unwrap();
        assert!(!r.verdict);
        assert_eq!(
            r.witness,
            Some(Witness::CodewordPair {
                message: vec![1, 1],
                word: vec![1, 1],
                other_message: vec![1, 0],
                other_word: vec![1, 0],
            })
        );
        let g = code_is_minimal(&c, MinimalityEngine::Geometric, &Caps::default()).unwrap();
        assert!(!g.verdict);
    }

    #[test]
    fn simplex_is_minimal_both_ways() {
        let f = f2();
        let s = simplex(3, &f, 100).unwrap();
        for e in [MinimalityEngine::Pairwise, MinimalityEngine::Geometric] {
            assert!(code_is_minimal(&s, e, &Caps::default()).unwrap().verdict);
        }
        for cw in s.projective_codewords(100).unwrap() {
            assert!(codeword_is_minimal(&s, &cw, 100).unwrap());
        }
    }

    #[test]
    fn ab_examples() {
        let f = f2();
        assert_eq!(ab_condition(&simplex(3, &f, 100).unwrap(), 100).unwrap(), (4, 4, true));
        let full = LinearCode::new(f.clone(), Mat::identity(2)).unwrap();
        assert_eq!(ab_condition(&full, 100).unwrap(), (2, 1, false));
        let rep = LinearCode::new(f, Mat::from_rows(&[[1, 1, 1]], 3)).unwrap();
        assert_eq!(ab_condition(&rep, 100).unwrap(), (3, 3, true));
    }

    #[test]
    fn codeword_cap_is_enforced() {
        let f = f2();
        let s = simplex(4, &f, 100).unwrap();
        assert!(matches!(min_distance(&s, 8), Err(Error::CapExceeded { .. })));
    }
}
