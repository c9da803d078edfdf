//! Simplicity, affineness, polynomial completeness and related invariants.

use serde::Serialize;
use thiserror::Error;

use crate::construction::ConstructionParams;
use crate::field::{gcd, mod_inverse};
use crate::subq::closure;
use crate::table::{Permutation, QTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertyError {
    #[error("a congruence needs two distinct generating elements")]
    EqualPair,
    #[error("exponents must be coprime to q - 1 = {0}")]
    NotCoprime(u64),
    #[error("internal cross-check failed: {0}")]
    CrossCheckMismatch(String),
}

/// A partition of `0..n` into classes, each sorted, classes ordered by their
/// smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn is_full(&self) -> bool {
        self.classes.len() <= 1
    }

    pub fn class_of(&self) -> Vec<usize> {
        let n = self.classes.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (c, class) in self.classes.iter().enumerate() {
            for &x in class {
                out[x] = c;
            }
        }
        out
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let root = self.find(x);
            classes[root].push(x);
        }
        classes.retain(|c| !c.is_empty());
        Partition { classes }
    }
}

/// The smallest congruence identifying `pair.0` and `pair.1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceClosure {
    pub partition: Partition,
    pub pair: (usize, usize),
}

/// Union-find closure: each merged pair `(x, y)` forces `(x*t, y*t)` and
/// `(t*x, t*y)` for every `t`. Translations of a finite quasigroup have
/// finite order, so the result is also stable under both divisions.
pub fn principal_congruence(
    q: &QTable,
    a: usize,
    b: usize,
) -> Result<CongruenceClosure, PropertyError> {
    if a == b {
        return Err(PropertyError::EqualPair);
    }
    let n = q.order();
    let mut sets = DisjointSets::new(n);
    let mut work = vec![(a, b)];
    sets.union(a, b);
    while let Some((x, y)) = work.pop() {
        for t in 0..n {
            for (u, v) in [(q.mul(x, t), q.mul(y, t)), (q.mul(t, x), q.mul(t, y))] {
                if sets.union(u, v) {
                    work.push((u, v));
                }
            }
        }
    }
    Ok(CongruenceClosure {
        partition: sets.into_partition(),
        pair: (a, b),
    })
}

/// True when every principal congruence is the one-class partition. Orders
/// 1 and 2 are simple since they carry no other equivalences.
pub fn is_simple(q: &QTable) -> bool {
    let n = q.order();
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            principal_congruence(q, a, b)
                .map(|c| c.partition.is_full())
                .unwrap_or(false)
        })
    })
}

/// An abelian group `(Q, ⊕)` with automorphisms `alpha`, `beta` and a
/// constant such that `x*y = alpha(x) ⊕ beta(y) ⊕ constant`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffinityWitness {
    pub order: usize,
    /// Row-major table of `⊕`.
    pub sum: Vec<usize>,
    pub zero: usize,
    pub alpha: Permutation,
    pub beta: Permutation,
    pub constant: usize,
}

impl AffinityWitness {
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.sum[x * self.order + y]
    }

    /// Rechecks every claim of the witness against `q`.
    pub fn verify(&self, q: &QTable) -> bool {
        let n = self.order;
        if q.order() != n {
            return false;
        }
        let group = SumTable { n, sum: &self.sum };
        group.is_abelian_group(self.zero)
            && group.is_automorphism(&self.alpha)
            && group.is_automorphism(&self.beta)
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    q.mul(x, y)
                        == self.add(
                            self.add(self.alpha.apply(x), self.beta.apply(y)),
                            self.constant,
                        )
                })
            })
    }
}

struct SumTable<'a> {
    n: usize,
    sum: &'a [usize],
}

impl SumTable<'_> {
    fn add(&self, x: usize, y: usize) -> usize {
        self.sum[x * self.n + y]
    }

    fn is_abelian_group(&self, zero: usize) -> bool {
        let n = self.n;
        let commutative = (0..n).all(|x| (x + 1..n).all(|y| self.add(x, y) == self.add(y, x)));
        let identity = (0..n).all(|x| self.add(zero, x) == x);
        let inverses = (0..n).all(|x| (0..n).any(|y| self.add(x, y) == zero));
        commutative
            && identity
            && inverses
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    let xy = self.add(x, y);
                    (0..n).all(|z| self.add(xy, z) == self.add(x, self.add(y, z)))
                })
            })
    }

    fn is_automorphism(&self, f: &Permutation) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| f.apply(self.add(x, y)) == self.add(f.apply(x), f.apply(y)))
        })
    }
}

/// Decides affineness through the principal isotope at `u = v = 0`,
/// `x ⊕ y = (x / v) * (u \ y)`, for which `x*y = (x*v) ⊕ (u*y)`. If `Q` is
/// affine over some abelian group, `⊕` is that group with its zero moved to
/// `u*v`, and `x ↦ x*v`, `y ↦ u*y` are affine maps of it; so this single
/// isotope decides the question.
pub fn affine_witness(q: &QTable) -> Option<AffinityWitness> {
    let n = q.order();
    let (u, v) = (0, 0);
    let sum: Vec<usize> = (0..n)
        .flat_map(|x| (0..n).map(move |y| q.mul(q.rdiv(x, v), q.ldiv(u, y))))
        .collect();
    let zero = q.mul(u, v);
    let group = SumTable { n, sum: &sum };
    if !group.is_abelian_group(zero) {
        return None;
    }
    let neg = |x: usize| {
        (0..n)
            .find(|&y| group.add(x, y) == zero)
            .expect("group has inverses")
    };
    let left = |x: usize| q.mul(x, v);
    let right = |y: usize| q.mul(u, y);
    let (left0, right0) = (left(zero), right(zero));
    let alpha = Permutation::new((0..n).map(|x| group.add(left(x), neg(left0))).collect()).ok()?;
    let beta = Permutation::new((0..n).map(|y| group.add(right(y), neg(right0))).collect()).ok()?;
    if !group.is_automorphism(&alpha) || !group.is_automorphism(&beta) {
        return None;
    }
    let constant = group.add(left0, right0);
    Some(AffinityWitness {
        order: n,
        sum,
        zero,
        alpha,
        beta,
        constant,
    })
}

pub fn is_affine(q: &QTable) -> bool {
    affine_witness(q).is_some()
}

/// Whether `m d⁻¹ mod (q-1)` is a power of `p`. For `x*y = α x^m + β y^d + c`
/// over GF(p^r) this is necessary for affineness, and sufficient when `d`
/// itself is a power of `p` (then `x ↦ x^d` is additive). For other `d` it is
/// not sufficient: `m = d = 3` over GF(5) satisfies it, yet the table is not
/// medial, which at prime order rules out affineness.
pub fn affine_criterion(m: u64, d: u64, p: u64, r: u32) -> Result<bool, PropertyError> {
    let modulus = p.pow(r) - 1;
    if gcd(m, modulus) != 1 || gcd(d, modulus) != 1 {
        return Err(PropertyError::NotCoprime(modulus));
    }
    if modulus == 1 {
        return Ok(true);
    }
    let ratio = (m % modulus) * mod_inverse(d, modulus).expect("d is coprime") % modulus;
    Ok(is_power_of(ratio, p, modulus))
}

/// Simple and not affine. With construction parameters the verdict is also
/// checked against the exponent criterion (as far as it is valid, see
/// [`affine_criterion`]) and, when `beta` generates the multiplicative group,
/// against the guaranteed simplicity.
pub fn is_polynomially_complete(
    q: &QTable,
    params: Option<&ConstructionParams>,
) -> Result<bool, PropertyError> {
    let simple = is_simple(q);
    let affine = is_affine(q);
    if let Some(params) = params {
        let field = params.field();
        let predicted = affine_criterion(params.m(), params.d(), field.p(), field.r())?;
        let exact = is_power_of(params.d(), field.p(), field.q() - 1);
        if (affine && !predicted) || (exact && predicted != affine) {
            return Err(PropertyError::CrossCheckMismatch(format!(
                "exponent criterion says affine = {predicted}, table says {affine}"
            )));
        }
        if field.is_generator(params.beta()) && !simple {
            return Err(PropertyError::CrossCheckMismatch(
                "beta generates F_q* but the table is not simple".into(),
            ));
        }
    }
    Ok(simple && !affine)
}

/// `e ≡ p^i (mod modulus)` for some `i ≥ 0`.
pub fn is_power_of(e: u64, p: u64, modulus: u64) -> bool {
    if modulus == 1 {
        return true;
    }
    let target = e % modulus;
    let mut power = 1 % modulus;
    for _ in 0..modulus {
        if power == target {
            return true;
        }
        power = power * p % modulus;
        if power == 1 {
            break;
        }
    }
    false
}

pub fn count_associative_triples(q: &QTable) -> u64 {
    let n = q.order();
    let mut count = 0;
    for x in 0..n {
        for y in 0..n {
            let xy = q.mul(x, y);
            count += (0..n)
                .filter(|&z| q.mul(xy, z) == q.mul(x, q.mul(y, z)))
                .count() as u64;
        }
    }
    count
}

/// Every pair of distinct elements generates `Q`.
pub fn two_generation_check(q: &QTable) -> bool {
    let n = q.order();
    (0..n).all(|a| (a + 1..n).all(|b| closure(q, &[a, b]).result.len() == n))
}
