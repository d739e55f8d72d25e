//! Finite-field towers F_p ⊆ F_q ⊆ F_{q^h}.
//!
//! Every field is stored as a simple extension of the field below it by a
//! primitive polynomial, so the class of `x` generates the multiplicative
//! group. Elements are plain integers: an element `Σ a_i ω^i` with `a_i` in
//! the subfield is encoded as `Σ enc(a_i) · |sub|^i`, which unrolls to the
//! base-p little-endian value of the full coefficient expansion. The prime
//! field and every constant therefore share their encoding across levels.
//!
//! Fields up to [`TABLE_LIMIT`] elements carry exp/log tables and Zech
//! logarithms; larger fields fall back to polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::Mat;

/// Canonical integer encoding of a field element.
pub type Elem = u32;

/// Largest field the tower constructor accepts.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;
/// Fields up to this size get log/antilog tables.
pub const TABLE_LIMIT: u32 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

struct Tables {
    /// exp[i] = g^i for i in 0..2(Q-1), doubled so sums of logs need no reduction.
    exp: Vec<Elem>,
    /// log[a] for a != 0.
    log: Vec<u32>,
    /// zech[n] = log(1 + g^n), or NO_LOG when 1 + g^n = 0. Odd characteristic only.
    zech: Vec<u32>,
}

pub struct Field {
    p: u32,
    size: u32,
    sub: Option<Arc<Field>>,
    degree: u32,
    modulus: Vec<Elem>,
    generator: Elem,
    minus_one: Elem,
    tables: Option<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("size", &self.size)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.modulus == other.modulus
            && match (&self.sub, &other.sub) {
                (None, None) => true,
                (Some(a), Some(b)) => a == b,
                _ => false,
            }
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// If `n = p^e` for a prime p, returns `(p, e)`.
pub fn prime_power(n: u64) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let f = prime_factors(n);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut e = 0;
    let mut v = n;
    while v > 1 {
        v /= p;
        e += 1;
    }
    Some((p as u32, e))
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        let mut f = Field {
            p,
            size: p,
            sub: None,
            degree: 1,
            modulus: Vec::new(),
            generator: 1,
            minus_one: p - 1,
            tables: None,
        };
        let factors = prime_factors(p as u64 - 1);
        f.generator = (1..p)
            .find(|&g| factors.iter().all(|&r| f.pow_slow(g, (p as u64 - 1) / r) != 1))
            .expect("every prime field has a primitive root");
        f.build_tables();
        Ok(f)
    }

    /// `sub[x]/(modulus)`; the modulus must be monic, low-degree-first and
    /// primitive so that x generates the multiplicative group.
    pub fn extension(sub: Arc<Field>, modulus: Vec<Elem>) -> Result<Field> {
        let degree = modulus.len().saturating_sub(1) as u32;
        if degree == 0 || *modulus.last().unwrap() != 1 {
            return Err(Error::NotPrimitive(modulus));
        }
        if modulus.iter().any(|&c| c >= sub.size) {
            return Err(Error::NotPrimitive(modulus));
        }
        let size = (sub.size as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(Error::CapExceeded {
                what: "field size",
                needed: size as u128,
                cap: MAX_FIELD_SIZE as u128,
            });
        }
        if !is_primitive_poly(&sub, &modulus) {
            return Err(Error::NotPrimitive(modulus));
        }
        let p = sub.p;
        let mut f = Field {
            p,
            size: size as u32,
            sub: Some(sub),
            degree,
            modulus,
            generator: 0,
            minus_one: 0,
            tables: None,
        };
        f.minus_one = f.neg_digits(1);
        // class of x
        f.generator = if degree == 1 {
            let s = f.sub.as_ref().unwrap();
            s.neg(f.modulus[0])
        } else {
            f.sub.as_ref().unwrap().size
        };
        f.build_tables();
        Ok(f)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Degree over the field this one is built on (1 for a prime field).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn subfield(&self) -> Option<&Arc<Field>> {
        self.sub.as_ref()
    }

    /// Defining polynomial over the subfield, monic, low-degree-first.
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    /// The fixed primitive element (class of x for extensions).
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Number of base-p digits of an encoding.
    pub fn prime_degree(&self) -> u32 {
        let mut e = 0;
        let mut s = 1u64;
        while s < self.size as u64 {
            s *= self.p as u64;
            e += 1;
        }
        e
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.size as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        match &self.tables {
            Some(t) if !t.zech.is_empty() => {
                let la = t.log[a as usize];
                let lb = t.log[b as usize];
                let n = self.size - 1;
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = t.zech[d as usize];
                if z == NO_LOG {
                    0
                } else {
                    t.exp[(la + z) as usize]
                }
            }
            _ => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a == 0 {
            return a;
        }
        self.mul(a, self.minus_one)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.mul_slow(a, b),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        match &self.tables {
            Some(t) => {
                let l = t.log[a as usize];
                t.exp[((self.size - 1 - l) % (self.size - 1)) as usize]
            }
            None => self.pow(a, self.size as u64 - 2),
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let n = (self.size - 1) as u64;
                let l = (t.log[a as usize] as u64 * (e % n)) % n;
                t.exp[l as usize]
            }
            None => self.pow_slow(a, e),
        }
    }

    /// Discrete logarithm to the base of [`Field::generator`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[a as usize]),
            None => {
                let mut x = 1;
                for r in 0..self.size - 1 {
                    if x == a {
                        return Some(r);
                    }
                    x = self.mul_slow(x, self.generator);
                }
                None
            }
        }
    }

    /// generator^r.
    pub fn exp(&self, r: u64) -> Elem {
        match &self.tables {
            Some(t) => t.exp[(r % (self.size as u64 - 1)) as usize],
            None => self.pow_slow(self.generator, r),
        }
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        match &self.sub {
            None => ((a as u64 * b as u64) % self.p as u64) as Elem,
            Some(sub) => {
                let d = self.degree as usize;
                let da = digits(a, sub.size, d);
                let db = digits(b, sub.size, d);
                let mut prod = vec![0; 2 * d - 1];
                for (i, &x) in da.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in db.iter().enumerate() {
                        if y != 0 {
                            prod[i + j] = sub.add(prod[i + j], sub.mul(x, y));
                        }
                    }
                }
                reduce_poly(sub, &mut prod, &self.modulus);
                undigits(&prod[..d], sub.size)
            }
        }
    }

    fn add_digits(&self, mut a: Elem, mut b: Elem) -> Elem {
        let p = self.p;
        let mut out = 0u64;
        let mut pw = 1u64;
        while a > 0 || b > 0 {
            out += (((a % p) + (b % p)) % p) as u64 * pw;
            a /= p;
            b /= p;
            pw *= p as u64;
        }
        out as Elem
    }

    fn neg_digits(&self, mut a: Elem) -> Elem {
        let p = self.p;
        let mut out = 0u64;
        let mut pw = 1u64;
        while a > 0 {
            out += ((p - a % p) % p) as u64 * pw;
            a /= p;
            pw *= p as u64;
        }
        out as Elem
    }

    fn build_tables(&mut self) {
        if self.size > TABLE_LIMIT {
            return;
        }
        let n = (self.size - 1) as usize;
        let mut exp = vec![0; 2 * n.max(1)];
        let mut log = vec![NO_LOG; self.size as usize];
        let mut x: Elem = 1;
        for (i, slot) in exp.iter_mut().take(n).enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, self.generator);
        }
        debug_assert_eq!(x, 1, "generator order is not Q-1");
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        let mut zech = Vec::new();
        if self.p != 2 {
            zech = (0..n)
                .map(|i| {
                    let s = self.add_digits(1, exp[i]);
                    if s == 0 {
                        NO_LOG
                    } else {
                        log[s as usize]
                    }
                })
                .collect();
        }
        self.tables = Some(Tables { exp, log, zech });
    }

    /// Dot product of two equal-length vectors.
    #[inline]
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        let mut acc = 0;
        for (&x, &y) in a.iter().zip(b) {
            if x != 0 && y != 0 {
                acc = self.add(acc, self.mul(x, y));
            }
        }
        acc
    }

    /// a + c·b, coordinate-wise, in place.
    #[inline]
    pub fn axpy(&self, a: &mut [Elem], c: Elem, b: &[Elem]) {
        if c == 0 {
            return;
        }
        for (x, &y) in a.iter_mut().zip(b) {
            if y != 0 {
                *x = self.add(*x, self.mul(c, y));
            }
        }
    }

    pub fn scale(&self, v: &mut [Elem], c: Elem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }
}

fn digits(mut a: Elem, base: u32, len: usize) -> Vec<Elem> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = a % base;
        a /= base;
    }
    out
}

fn undigits(d: &[Elem], base: u32) -> Elem {
    d.iter().rev().fold(0u64, |acc, &x| acc * base as u64 + x as u64) as Elem
}

/// Reduces `poly` in place modulo the monic `modulus`; afterwards only the
/// low `deg(modulus)` coefficients are meaningful.
fn reduce_poly(sub: &Field, poly: &mut [Elem], modulus: &[Elem]) {
    let d = modulus.len() - 1;
    for i in (d..poly.len()).rev() {
        let c = poly[i];
        if c == 0 {
            continue;
        }
        poly[i] = 0;
        let nc = sub.neg(c);
        for j in 0..d {
            if modulus[j] != 0 {
                poly[i - d + j] = sub.add(poly[i - d + j], sub.mul(nc, modulus[j]));
            }
        }
    }
}

fn poly_mulmod(sub: &Field, a: &[Elem], b: &[Elem], modulus: &[Elem]) -> Vec<Elem> {
    let d = modulus.len() - 1;
    let mut prod = vec![0; 2 * d - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = sub.add(prod[i + j], sub.mul(x, y));
            }
        }
    }
    reduce_poly(sub, &mut prod, modulus);
    prod.truncate(d);
    prod
}

fn x_pow_mod(sub: &Field, mut e: u64, modulus: &[Elem]) -> Vec<Elem> {
    let d = modulus.len() - 1;
    let mut base = vec![0; d];
    if d == 1 {
        base[0] = sub.neg(modulus[0]);
    } else {
        base[1] = 1;
    }
    let mut acc = vec![0; d];
    acc[0] = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(sub, &acc, &base, modulus);
        }
        base = poly_mulmod(sub, &base, &base, modulus);
        e >>= 1;
    }
    acc
}

/// True iff x has multiplicative order |sub|^deg - 1 modulo `modulus`.
/// That order is only reachable when the quotient ring is a field, so this
/// also certifies irreducibility.
pub fn is_primitive_poly(sub: &Field, modulus: &[Elem]) -> bool {
    let d = modulus.len() - 1;
    if d == 0 || modulus[0] == 0 {
        return false;
    }
    let order = (sub.size() as u64).pow(d as u32) - 1;
    let mut one = vec![0; d];
    one[0] = 1;
    if x_pow_mod(sub, order, modulus) != one {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| x_pow_mod(sub, order / r, modulus) != one)
}

/// Smallest monic primitive polynomial of the given degree, ordered by the
/// integer `Σ enc(c_i)·|sub|^i` (low-degree coefficient least significant).
pub fn smallest_primitive_poly(sub: &Field, degree: u32) -> Vec<Elem> {
    let s = sub.size() as u64;
    let count = s.pow(degree);
    for v in 0..count {
        let mut poly = Vec::with_capacity(degree as usize + 1);
        let mut x = v;
        for _ in 0..degree {
            poly.push((x % s) as Elem);
            x /= s;
        }
        poly.push(1);
        if is_primitive_poly(sub, &poly) {
            return poly;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Base,
    Top,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Base => write!(f, "base"),
            Level::Top => write!(f, "top"),
        }
    }
}

/// F_p ⊆ F_q ⊆ F_{q^h} with q = p^m.
#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u32,
    m: u32,
    h: u32,
    prime: Arc<Field>,
    base: Arc<Field>,
    top: Arc<Field>,
    companion: Mat,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.h == other.h && self.top == other.top
    }
}

/// Tower with the canonical (smallest primitive) polynomials at both levels.
pub fn make_tower(p: u32, m: u32, h: u32) -> Result<FieldTower> {
    FieldTower::with_polys(p, m, h, None, None)
}

impl FieldTower {
    pub fn new(p: u32, m: u32, h: u32) -> Result<Self> {
        make_tower(p, m, h)
    }

    /// Tower over F_q with h = 1 (base and top coincide).
    pub fn flat(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q as u64).ok_or(Error::NonPrime(q as u64))?;
        make_tower(p, m, 1)
    }

    pub fn with_polys(
        p: u32,
        m: u32,
        h: u32,
        base_poly: Option<Vec<Elem>>,
        top_poly: Option<Vec<Elem>>,
    ) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if m == 0 || h == 0 {
            return Err(Error::InvalidParameter(format!(
                "extension degrees must be >= 1 (m = {m}, h = {h})"
            )));
        }
        let total = (p as u128).checked_pow(m * h).unwrap_or(u128::MAX);
        if total > MAX_FIELD_SIZE as u128 {
            return Err(Error::CapExceeded {
                what: "field size",
                needed: total,
                cap: MAX_FIELD_SIZE as u128,
            });
        }
        let prime = Arc::new(Field::prime(p)?);
        let base_poly = base_poly.unwrap_or_else(|| smallest_primitive_poly(&prime, m));
        if base_poly.len() != m as usize + 1 {
            return Err(Error::NotPrimitive(base_poly));
        }
        let base = Arc::new(Field::extension(prime.clone(), base_poly)?);
        let top_poly = top_poly.unwrap_or_else(|| smallest_primitive_poly(&base, h));
        if top_poly.len() != h as usize + 1 {
            return Err(Error::NotPrimitive(top_poly));
        }
        let top = Arc::new(Field::extension(base.clone(), top_poly)?);
        let mut tower = FieldTower {
            p,
            m,
            h,
            prime,
            base,
            top,
            companion: Mat::zeros(0, 0),
        };
        tower.companion = tower.alpha_matrix(tower.omega());
        Ok(tower)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// q = |base|.
    pub fn q(&self) -> u32 {
        self.base.size()
    }

    /// q^h = |top|.
    pub fn top_size(&self) -> u32 {
        self.top.size()
    }

    pub fn prime_field(&self) -> &Arc<Field> {
        &self.prime
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn top(&self) -> &Arc<Field> {
        &self.top
    }

    pub fn field(&self, level: Level) -> &Arc<Field> {
        match level {
            Level::Base => &self.base,
            Level::Top => &self.top,
        }
    }

    pub fn base_poly(&self) -> &[Elem] {
        self.base.modulus()
    }

    pub fn top_poly(&self) -> &[Elem] {
        self.top.modulus()
    }

    /// The primitive element ω of the top field.
    pub fn omega(&self) -> Elem {
        self.top.generator()
    }

    /// Companion matrix of the minimal polynomial of ω: sub-diagonal ones,
    /// last column the negated coefficients. Equals `alpha_matrix(ω)`.
    pub fn companion(&self) -> &Mat {
        &self.companion
    }

    /// Coefficients of α in the power basis {1, ω, …, ω^{h-1}} over F_q.
    pub fn expand(&self, a: Elem) -> Vec<Elem> {
        digits(a, self.q(), self.h as usize)
    }

    /// Inverse of [`FieldTower::expand`].
    pub fn compose(&self, coeffs: &[Elem]) -> Elem {
        assert_eq!(coeffs.len(), self.h as usize);
        undigits(coeffs, self.q())
    }

    /// The h×h matrix A(α) over F_q: A^r when α = ω^r, zero when α = 0.
    ///
    /// Built directly as `A(α)[i][j] = coeff_i(ω^j α)`, so that A(β) acting
    /// on the column vector of α gives the column vector of αβ.
    pub fn alpha_matrix(&self, a: Elem) -> Mat {
        let h = self.h as usize;
        let mut out = Mat::zeros(h, h);
        if a == 0 {
            return out;
        }
        let mut x = a;
        for j in 0..h {
            for (i, c) in self.expand(x).into_iter().enumerate() {
                out.set(i, j, c);
            }
            x = self.top.mul(x, self.omega());
        }
        out
    }

    /// α ∈ F_q (constants of the power basis).
    pub fn in_base(&self, a: Elem) -> bool {
        a < self.q()
    }

    /// α ∈ F_{q^d}, tested as α^{q^d} = α.
    pub fn in_subfield(&self, a: Elem, d: u32) -> bool {
        let e = (self.q() as u64).pow(d);
        self.top.pow(a, e) == a
    }

    /// α ∈ F_{p^e} as an absolute subfield of the top field.
    pub fn in_absolute_subfield(&self, a: Elem, e: u32) -> bool {
        let x = (self.p as u64).pow(e);
        self.top.pow(a, x) == a
    }

    /// Smallest d | h, d < h, with α ∈ F_{q^d}; None if α generates the
    /// whole top field over F_q.
    pub fn proper_subfield_member(&self, a: Elem) -> Option<u32> {
        (1..self.h)
            .filter(|d| self.h.is_multiple_of(*d))
            .find(|&d| self.in_subfield(a, d))
    }

    /// α ↦ α^q.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.top.pow(a, self.q() as u64)
    }

    /// Proper divisors d of h (the degrees of intermediate fields F_{q^d}).
    pub fn proper_divisors(&self) -> Vec<u32> {
        (1..self.h).filter(|d| self.h.is_multiple_of(*d)).collect()
    }

    pub fn header(&self) -> String {
        format!("field p={} m={} h={}", self.p, self.m, self.h)
    }
}
