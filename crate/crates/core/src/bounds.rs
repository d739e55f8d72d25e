//! Closed-form bounds and counting inequalities, evaluated exactly.
//!
//! Ceilings of the form ⌈c·K⌉ with c a ratio of logarithms are computed as
//! the least integer satisfying a cross-multiplied power comparison. The one
//! bound with a genuinely transcendental constant (ln q) goes through
//! rational interval arithmetic.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Gaussian binomial coefficient [n, k]_Q.
pub fn gauss_binom(n: u64, k: u64, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let qq = big(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= qq.pow((n - i) as u32) - 1u32;
        den *= qq.pow((k - i) as u32) - 1u32;
    }
    num / den
}

fn binom(n: u64, k: u64) -> BigUint {
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * big(n - i) / big(i + 1);
    }
    r
}

/// (q+1)(k-1).
pub fn sbs_lower(k: u64, q: u64) -> u64 {
    (q + 1) * (k - 1)
}

/// Least N ≥ 0 with pred(N), scanning upward from `start`.
fn least(start: u64, mut pred: impl FnMut(u64) -> bool) -> u64 {
    let mut n = start;
    while !pred(n) {
        n += 1;
    }
    n
}

/// Closed interval [lo, hi] of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn scale(&self, c: &BigRational) -> Interval {
        debug_assert!(!c.is_negative());
        Interval {
            lo: &self.lo * c,
            hi: &self.hi * c,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// 2·atanh(z) for 0 ≤ z < 1, using `terms` terms of the series.
fn two_atanh(z: &BigRational, terms: u32) -> Interval {
    let z2 = z * z;
    let mut pow = z.clone();
    let mut sum = BigRational::zero();
    for j in 0..terms {
        sum += &pow / rat(2 * j as u64 + 1);
        pow = &pow * &z2;
    }
    // pow is now z^(2m+1); tail ≤ z^(2m+1) / ((2m+1)(1-z²))
    let tail = &pow / (rat(2 * terms as u64 + 1) * (BigRational::one() - &z2));
    Interval {
        lo: &sum * rat(2),
        hi: (sum + tail) * rat(2),
    }
}

/// Enclosure of ln x for a positive rational x.
pub fn ln_interval(x: &BigRational, terms: u32) -> Interval {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    let two = rat(2);
    let mut r = x.clone();
    let mut e: i64 = 0;
    while r >= two {
        r /= &two;
        e += 1;
    }
    while r < BigRational::one() {
        r *= &two;
        e -= 1;
    }
    let one = BigRational::one();
    let lnr = two_atanh(&((&r - &one) / (&r + &one)), terms);
    if e == 0 {
        return lnr;
    }
    let ln2 = two_atanh(&BigRational::new(1.into(), 3.into()), terms);
    let scaled = if e > 0 {
        ln2.scale(&rat(e as u64))
    } else {
        let m = rat((-e) as u64);
        Interval {
            lo: -(&ln2.hi * &m),
            hi: -(&ln2.lo * &m),
        }
    };
    scaled.add(&lnr)
}

fn ceil_rat(x: &BigRational) -> BigUint {
    x.ceil().to_integer().to_biguint().expect("nonnegative")
}

/// Upper bound on m(k, q) from the probabilistic argument of Héger and Nagy.
/// The q = 2 branch is rounded up; the other branch uses an enclosure of
/// ln q and reports the upper ceiling if the enclosure straddles an integer.
pub fn heger_nagy_upper(k: u64, q: u64) -> BigUint {
    assert!(k >= 2);
    if q == 2 {
        // least N with N·log2(4/3) ≥ 2k-1
        let target = big(2).pow((2 * k - 1) as u32);
        let n = least(0, |n| big(4).pow(n as u32) >= &target * big(3).pow(n as u32));
        return big(n);
    }
    let c = (q + 1) * (q + 1);
    let value = |l: &BigRational| {
        // 2(k-1) / (1 + 1/(c·l)) = 2(k-1)·c·l / (c·l + 1)
        let cl = rat(c) * l;
        rat(2 * (k - 1)) * &cl / (cl + BigRational::one())
    };
    let lnq = rat(q);
    let mut terms = 16;
    loop {
        let l = ln_interval(&lnq, terms);
        let lo = ceil_rat(&value(&l.lo));
        let hi = ceil_rat(&value(&l.hi));
        if lo == hi || terms >= 512 {
            return hi * big(q + 1);
        }
        terms *= 2;
    }
}

/// max{min{2K + ⌊(K-2)/(h-1)⌋, q+1}, 2K-1}.
pub fn outer_length_lower(kk: u64, h: u64, q: u64) -> Result<u64> {
    if h < 2 {
        return Err(Error::InvalidH(h as u32));
    }
    let a = (2 * kk + (kk.saturating_sub(2)) / (h - 1)).min(q + 1);
    Ok(a.max(2 * kk - 1))
}

/// ⌈((q-1)(Kh-1)+1) / ((q-1)(h-1)+1)⌉.
pub fn outer_mindist_lower(kk: u64, h: u64, q: u64) -> u64 {
    let num = (q - 1) * (kk * h - 1) + 1;
    let den = (q - 1) * (h - 1) + 1;
    num.div_ceil(den)
}

/// Both sides of the counting inequality for [N, K] codes over F_{q^h}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExistenceCheck {
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub holds: bool,
}

pub fn existence_inequality(n: u64, kk: u64, q: u64, h: u64) -> Result<ExistenceCheck> {
    if kk < 2 || n < kk {
        return Err(Error::InvalidParameter(format!("need 2 ≤ K ≤ N, got K={kk}, N={n}")));
    }
    let qh = q.pow(h as u32);
    let mut b = BigUint::zero();
    for i in 1..=n {
        b += binom(n, i) * big(qh - 1).pow(i as u32) * (big(q).pow(i as u32) - big(q));
    }
    let lhs = gauss_binom(n - 2, kk - 2, qh) * b;
    let rhs = gauss_binom(n, kk, qh);
    let holds = lhs < rhs;
    Ok(ExistenceCheck { lhs, rhs, holds })
}

/// Least N for which the counting inequality holds, scanning from 2K-1.
pub fn existence_threshold(kk: u64, q: u64, h: u64) -> Result<u64> {
    let mut n = (2 * kk - 1).max(kk);
    loop {
        if existence_inequality(n, kk, q, h)?.holds {
            return Ok(n);
        }
        n += 1;
    }
}

/// ⌈2K / log_{q^h}(q^{2h} / (q^{h+1}-q+1))⌉, as the least N with
/// q^{2hN} ≥ q^{2hK}·(q^{h+1}-q+1)^N.
pub fn existence_n_bound(kk: u64, q: u64, h: u64) -> u64 {
    let qh = big(q).pow(h as u32);
    let d = big(q).pow(h as u32 + 1) - big(q) + 1u32;
    let base = qh.pow(2 * kk as u32);
    least(0, |n| qh.pow(2 * n as u32) >= &base * d.pow(n as u32))
}

/// Upper bound on m(k, q) through quadratic extensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MUpper {
    pub value: u64,
    /// Odd k: the bound is evaluated at k+1.
    pub odd_adjusted: bool,
}

pub fn m_upper(k: u64, q: u64) -> MUpper {
    let odd = k.is_odd();
    let even_k = if odd { k + 1 } else { k };
    MUpper {
        value: existence_n_bound(even_k / 2, q, 2) * (q + 1),
        odd_adjusted: odd,
    }
}

/// Upper bound on the smallest (k-2)-saturating set in PG(k-1, q).
pub fn saturating_upper(k: u64, q: u64) -> u64 {
    let j = k % 2;
    existence_n_bound((k + j) / 2, q, 2) * (q + 1)
}

/// Lower bounds on the number of (h-1)-spaces whose union is an SBS in
/// PG(k-1, q): the general one and the one for a partition of a spread.
pub fn subspace_count_lowers(k: u64, h: u64, q: u64) -> Result<(u64, u64)> {
    if h < 2 {
        return Err(Error::InvalidH(h as u32));
    }
    let a = ((k - 1) / h + (k - 2) / (h - 1) + 1).min(q + 1);
    let b = (k - 1) / h + k.div_ceil(h);
    Ok((a, b))
}

/// Checks 1/(q+1)² < ln(q³/(q³-q+1)) with an interval enclosure. Returns
/// `None` if the enclosure is too wide to decide.
pub fn log_inequality_holds(q: u64) -> Option<bool> {
    let c = rat((q + 1) * (q + 1)).recip();
    let x = BigRational::new(big(q.pow(3)).into(), big(q.pow(3) - q + 1).into());
    let l = ln_interval(&x, 64);
    if l.lo > c {
        Some(true)
    } else if l.hi <= c {
        Some(false)
    } else {
        None
    }
}

/// Floating-point evaluations of the same ceilings, for cross-checking.
pub mod float {
    pub fn existence_n_bound(kk: u64, q: u64, h: u64) -> u64 {
        let qh = (q as f64).powi(h as i32);
        let x = qh * qh / ((q as f64).powi(h as i32 + 1) - q as f64 + 1.0);
        (2.0 * kk as f64 * qh.ln() / x.ln()).ceil() as u64
    }

    pub fn m_upper(k: u64, q: u64) -> u64 {
        existence_n_bound(k.div_ceil(2), q, 2) * (q + 1)
    }

    pub fn heger_nagy_upper(k: u64, q: u64) -> u64 {
        if q == 2 {
            return ((2 * k - 1) as f64 / (4.0f64 / 3.0).log2()).ceil() as u64;
        }
        let c = ((q + 1) * (q + 1)) as f64 * (q as f64).ln();
        (2.0 * (k - 1) as f64 / (1.0 + 1.0 / c)).ceil() as u64 * (q + 1)
    }
}

/// Midpoint of an interval as f64, for display.
pub fn approx(i: &Interval) -> f64 {
    ((&i.lo + &i.hi) / rat(2)).to_f64().unwrap_or(f64::NAN)
}

/// One row of the bounds table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub k: u64,
    pub q: u64,
    pub h: u64,
    pub sbs_lower: u64,
    pub heger_nagy: BigUint,
    pub m_upper: u64,
    pub outer_len_lower: u64,
    pub existence_n: u64,
    pub saturating_upper: u64,
}

impl BoundsRow {
    /// Outer bounds are for K = k with the given h.
    pub fn new(k: u64, q: u64, h: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
        }
        Ok(BoundsRow {
            k,
            q,
            h,
            sbs_lower: sbs_lower(k, q),
            heger_nagy: heger_nagy_upper(k, q),
            m_upper: m_upper(k, q).value,
            outer_len_lower: outer_length_lower(k, h, q)?,
            existence_n: existence_n_bound(k, q, h),
            saturating_upper: saturating_upper(k, q),
        })
    }

    pub const HEADER: &'static str = "k,q,h,sbs_lower,heger_nagy,m_upper,outer_len_lower,existence_N,saturating_upper";

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.k,
            self.q,
            self.h,
            self.sbs_lower,
            self.heger_nagy,
            self.m_upper,
            self.outer_len_lower,
            self.existence_n,
            self.saturating_upper
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gauss_binom(5, 0, 7), big(1));
        assert_eq!(gauss_binom(2, 1, 2), big(3));
        assert_eq!(gauss_binom(4, 2, 2), big(35));
        assert_eq!(gauss_binom(3, 1, 4), big(21));
    }

    #[test]
    fn simple_formulas() {
        assert_eq!(sbs_lower(4, 2), 9);
        assert_eq!(sbs_lower(2, 5), 6);
        assert_eq!(sbs_lower(3, 3), 8);
        assert_eq!(outer_length_lower(2, 2, 3).unwrap(), 4);
        assert_eq!(outer_length_lower(2, 5, 2).unwrap(), 3);
        assert_eq!(outer_length_lower(3, 2, 2).unwrap(), 5);
        assert!(matches!(outer_length_lower(3, 1, 2), Err(Error::InvalidH(1))));
        assert_eq!(outer_mindist_lower(2, 3, 2), 2);
        assert_eq!(outer_mindist_lower(2, 3, 7), 3);
        assert_eq!(outer_mindist_lower(3, 2, 5), 5);
        assert_eq!(outer_mindist_lower(3, 2, 3), 4);
        assert_eq!(outer_mindist_lower(3, 2, 2), 3);
        assert_eq!(subspace_count_lowers(4, 2, 3).unwrap(), (4, 3));
        assert_eq!(subspace_count_lowers(6, 2, 2).unwrap(), (3, 5));
        assert!(subspace_count_lowers(4, 1, 3).is_err());
    }

    #[test]
    fn existence_bounds() {
        assert_eq!(existence_n_bound(2, 2, 2), 7);
        assert_eq!(
            m_upper(4, 2),
            MUpper {
                value: 21,
                odd_adjusted: false
            }
        );
        assert_eq!(m_upper(5, 2).value, m_upper(6, 2).value);
        assert!(m_upper(5, 2).odd_adjusted);
        assert_eq!(saturating_upper(4, 2), 21);
        assert_eq!(saturating_upper(5, 2), m_upper(6, 2).value);
        let e = existence_inequality(4, 2, 2, 2).unwrap();
        assert_eq!(
            e.lhs,
            gauss_binom(2, 0, 4) * (big(6 * 9 * 2) + big(4 * 27 * 6) + big(81 * 14))
        );
    }

    #[test]
    fn ln_enclosures() {
        for (x, want) in [(2u64, std::f64::consts::LN_2), (3, 3f64.ln()), (32, 32f64.ln())] {
            let i = ln_interval(&rat(x), 40);
            assert!(i.lo <= i.hi);
            assert!((approx(&i) - want).abs() < 1e-12);
            assert!(i.width() < BigRational::new(1.into(), big(1u64 << 50).into()));
        }
        let half = BigRational::new(1.into(), 2.into());
        assert!((approx(&ln_interval(&half, 40)) + std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn heger_nagy_small() {
        for k in 2..20 {
            for q in [2, 3, 4, 5, 7] {
                assert!(heger_nagy_upper(k, q) >= big(q + 1));
                assert_eq!(heger_nagy_upper(k, q), big(float::heger_nagy_upper(k, q)));
            }
        }
    }
}
