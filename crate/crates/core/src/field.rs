//! Exact arithmetic in GF(p^r).
//!
//! Elements are coefficient vectors over F_p in the powers of a root `a` of the
//! modulus, low degree first. Every element also carries its integer tag
//! `sum coeffs[i] * p^i`, which is the representation used for tables and I/O.
//! For GF(8) under `x^3 + x + 1` the tags `0..8` name
//! `0, 1, a, a+1, a^2, a^2+1, a^2+a, a^2+a+1` in that order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge { p: u64, r: u32 },
    #[error("modulus must be monic of degree {degree} with coefficients in [0, {p})")]
    BadModulus { degree: u32, p: u64 },
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("no generator of the multiplicative group found")]
    NoGenerator,
    #[error("element with tag {0} does not generate the multiplicative group")]
    NotGenerator(u64),
    #[error("tag {tag} is out of range for a field of order {q}")]
    TagOutOfRange { tag: u64, q: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroElement,
}

/// An element of GF(p^r).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    coeffs: Vec<u64>,
    tag: u64,
}

impl FieldElem {
    /// Coefficients over F_p, lowest power first. Always of length `r`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn index(&self) -> usize {
        self.tag as usize
    }

    pub fn is_zero(&self) -> bool {
        self.tag == 0
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tag.cmp(&other.tag)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.tag)
    }
}

/// The field GF(p^r) together with its modulus and a chosen generator `beta`
/// of the multiplicative group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    r: u32,
    q: u64,
    modulus: Vec<u64>,
    beta: FieldElem,
    /// Distinct primes dividing q - 1.
    order_factors: Vec<u64>,
}

#[derive(Serialize)]
struct FieldCtxRepr<'a> {
    p: u64,
    r: u32,
    modulus: &'a [u64],
    beta: u64,
}

impl Serialize for FieldCtx {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FieldCtxRepr {
            p: self.p,
            r: self.r,
            modulus: &self.modulus,
            beta: self.beta.tag,
        }
        .serialize(serializer)
    }
}

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

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

fn digits(mut value: u64, base: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = value % base;
        value /= base;
    }
    out
}

/// Remainder of `f` modulo the monic polynomial `g` over F_p.
fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut rem = f.to_vec();
    if rem.len() <= dg {
        return rem;
    }
    for top in (dg..rem.len()).rev() {
        let lead = rem[top];
        if lead == 0 {
            continue;
        }
        let shift = top - dg;
        for (i, &gi) in g.iter().enumerate() {
            rem[shift + i] = (rem[shift + i] + p - (lead * gi) % p) % p;
        }
    }
    rem.truncate(dg);
    rem
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let r = f.len() - 1;
    for d in 1..=r / 2 {
        for t in 0..p.pow(d as u32) {
            let mut g = digits(t, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// Builds GF(p^r). Without an explicit modulus the monic irreducible of
    /// degree `r` with the smallest integer encoding `sum c_i p^i` is used
    /// (so GF(8) gets `x^3 + x + 1`). `beta` is the smallest-tag generator.
    pub fn new(p: u64, r: u32, modulus: Option<&[u64]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::TooLarge { p, r })?;

        let modulus = match modulus {
            Some(m) => {
                let well_formed =
                    m.len() == r as usize + 1 && m[r as usize] == 1 && m.iter().all(|&c| c < p);
                if !well_formed {
                    return Err(FieldError::BadModulus { degree: r, p });
                }
                if !is_irreducible(m, p) {
                    return Err(FieldError::ReducibleModulus);
                }
                m.to_vec()
            }
            None => (0..q)
                .map(|t| {
                    let mut f = digits(t, p, r as usize);
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible(f, p))
                .ok_or(FieldError::ReducibleModulus)?,
        };

        let mut ctx = FieldCtx {
            p,
            r,
            q,
            modulus,
            beta: FieldElem {
                coeffs: vec![0; r as usize],
                tag: 0,
            },
            order_factors: prime_factors(q - 1),
        };
        ctx.beta = (1..q)
            .map(|t| ctx.elem_unchecked(t))
            .find(|x| ctx.is_generator(x))
            .ok_or(FieldError::NoGenerator)?;
        Ok(ctx)
    }

    /// Replaces the generator with the element of the given tag.
    pub fn with_beta(mut self, tag: u64) -> Result<Self, FieldError> {
        let beta = self.elem(tag)?;
        if !self.is_generator(&beta) {
            return Err(FieldError::NotGenerator(tag));
        }
        self.beta = beta;
        Ok(self)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus, coefficients low degree first (length `r + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn beta(&self) -> &FieldElem {
        &self.beta
    }

    pub fn elem(&self, tag: u64) -> Result<FieldElem, FieldError> {
        if tag >= self.q {
            return Err(FieldError::TagOutOfRange { tag, q: self.q });
        }
        Ok(self.elem_unchecked(tag))
    }

    fn elem_unchecked(&self, tag: u64) -> FieldElem {
        FieldElem {
            coeffs: digits(tag, self.p, self.r as usize),
            tag,
        }
    }

    /// Element from coefficients (low degree first); extra high-degree
    /// coefficients are reduced by the modulus, values are reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElem {
        let reduced: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        let mut rem = poly_rem(&reduced, &self.modulus, self.p);
        rem.resize(self.r as usize, 0);
        self.pack(rem)
    }

    fn pack(&self, coeffs: Vec<u64>) -> FieldElem {
        let tag = coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c);
        FieldElem { coeffs, tag }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, value: i64) -> FieldElem {
        let c = value.rem_euclid(self.p as i64) as u64;
        let mut coeffs = vec![0; self.r as usize];
        coeffs[0] = c;
        self.pack(coeffs)
    }

    pub fn zero(&self) -> FieldElem {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// All elements in ascending tag order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |t| self.elem_unchecked(t))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        self.pack(coeffs)
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let coeffs = a.coeffs.iter().map(|x| (self.p - x) % self.p).collect();
        self.pack(coeffs)
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let r = self.r as usize;
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut rem = poly_rem(&prod, &self.modulus, self.p);
        rem.resize(r, 0);
        self.pack(rem)
    }

    pub fn pow_u(&self, x: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `x^e` for any integer `e`; negative exponents go through [`Self::inv`].
    pub fn pow(&self, x: &FieldElem, e: i64) -> Result<FieldElem, FieldError> {
        if e >= 0 {
            Ok(self.pow_u(x, e as u64))
        } else {
            Ok(self.pow_u(&self.inv(x)?, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, x: &FieldElem) -> Result<FieldElem, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow_u(x, self.q - 2))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Multiplicative order; divides `q - 1`.
    pub fn element_order(&self, x: &FieldElem) -> Result<u64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        let one = self.one();
        let mut order = self.q - 1;
        for &l in &self.order_factors {
            while order.is_multiple_of(l) && self.pow_u(x, order / l) == one {
                order /= l;
            }
        }
        Ok(order)
    }

    pub fn is_generator(&self, x: &FieldElem) -> bool {
        self.element_order(x) == Ok(self.q - 1)
    }

    /// Horner evaluation of `sum coeffs[i] x^i`.
    pub fn poly_eval(&self, coeffs: &[FieldElem], x: &FieldElem) -> FieldElem {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// Rank by Gaussian elimination, taking the first nonzero entry of each
    /// column as pivot.
    pub fn rank(&self, matrix: &[Vec<FieldElem>]) -> usize {
        let mut rows: Vec<Vec<FieldElem>> = matrix.to_vec();
        let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inv(&rows[rank][col]).expect("pivot is nonzero");
            let pivot_row: Vec<FieldElem> = rows[rank].iter().map(|e| self.mul(e, &inv)).collect();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (entry, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *entry = self.sub(entry, &self.mul(&factor, pv));
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}
