//! Quasigroups `x*y = α x^m + β y^d + c` over GF(p^r).
//!
//! With `β` a generator of F_q*, `d = 1` and `α = 1 - β` the table is simple,
//! any two distinct elements generate it, and its only proper subquasigroups
//! are the singletons `{x}` with `x^m - x + c/(1-β) = 0`. Choosing `c` so that
//! this equation has no root, and `m` not a power of `p` modulo `q - 1`,
//! yields a polynomially complete quasigroup with no proper subquasigroup.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::field::{gcd, mod_inverse, FieldCtx, FieldElem, FieldError};
use crate::table::QTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("field order {0} is too small; need q > 2")]
    QTooSmall(u64),
    #[error("no valid exponent m for q = {q}: every 1 < m < q-1 is a power of p or shares a factor with q-1")]
    NoValidM { q: u64 },
    #[error("exponent m = {m} is not valid for q = {q}")]
    InvalidExponent { m: u64, q: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("gamma must be nonzero")]
    ZeroGamma,
    #[error("no constant c avoids idempotents")]
    NoSuitableC,
    #[error("circulant rank predicts {predicted} roots but evaluation finds {found}")]
    RootCountMismatch { predicted: u64, found: u64 },
    #[error("rank and range strategies disagree on c ({rank:?} vs {range:?})")]
    StrategyMismatch {
        rank: Option<u64>,
        range: Option<u64>,
    },
}

/// Parameters of `x*y = α x^m + β y^d + c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    field: FieldCtx,
    m: u64,
    d: u64,
    alpha: FieldElem,
    beta: FieldElem,
    c: FieldElem,
}

impl ConstructionParams {
    /// General form. Requires `q > 2`, `α, β ≠ 0` and `m, d ≥ 1` coprime to `q - 1`.
    pub fn general(
        field: FieldCtx,
        m: u64,
        d: u64,
        alpha: FieldElem,
        beta: FieldElem,
        c: FieldElem,
    ) -> Result<Self, ConstructionError> {
        let q = field.q();
        if q <= 2 {
            return Err(ConstructionError::QTooSmall(q));
        }
        for (name, e) in [("m", m), ("d", d)] {
            if e == 0 || gcd(e, q - 1) != 1 {
                return Err(ConstructionError::InvalidParams(format!(
                    "{name} = {e} must be positive and coprime to {}",
                    q - 1
                )));
            }
        }
        if alpha.is_zero() || beta.is_zero() {
            return Err(ConstructionError::InvalidParams(
                "alpha and beta must be nonzero".into(),
            ));
        }
        if [&alpha, &beta, &c].iter().any(|e| e.tag() >= q) {
            return Err(ConstructionError::InvalidParams(
                "element does not belong to the field".into(),
            ));
        }
        Ok(ConstructionParams {
            field,
            m,
            d,
            alpha,
            beta,
            c,
        })
    }

    /// `x*y = (1-β) x^m + β y + c` with the field's generator `β` and `c ≠ 0`.
    pub fn standard(field: FieldCtx, m: u64, c: FieldElem) -> Result<Self, ConstructionError> {
        if c.is_zero() {
            return Err(ConstructionError::InvalidParams("c must be nonzero".into()));
        }
        let beta = field.beta().clone();
        let alpha = field.sub(&field.one(), &beta);
        ConstructionParams::general(field, m, 1, alpha, beta, c)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn alpha(&self) -> &FieldElem {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElem {
        &self.beta
    }

    pub fn c(&self) -> &FieldElem {
        &self.c
    }

    /// `c / (1 - β)`; undefined when `β = 1`.
    pub fn gamma(&self) -> Result<FieldElem, FieldError> {
        let f = &self.field;
        f.div(&self.c, &f.sub(&f.one(), &self.beta))
    }

    pub fn multiply(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let f = &self.field;
        let left = f.mul(&self.alpha, &f.pow_u(x, self.m));
        let right = f.mul(&self.beta, &f.pow_u(y, self.d));
        f.add(&f.add(&left, &right), &self.c)
    }

    /// `m d⁻¹ mod (q - 1)`.
    fn reduced_exponent(&self) -> u64 {
        let order = self.field.q() - 1;
        let d_inv = mod_inverse(self.d, order).expect("d is coprime to q - 1");
        (self.m % order) * d_inv % order
    }

    /// `x ⊙ y = α x^{m d⁻¹} + β y + c`, so that `x*y = x^d ⊙ y^d`.
    pub fn odot(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let f = &self.field;
        let left = f.mul(&self.alpha, &f.pow_u(x, self.reduced_exponent()));
        f.add(&f.add(&left, &f.mul(&self.beta, y)), &self.c)
    }

    /// k-fold left multiplication by `x` under `⊙` in closed form:
    /// `α (1-β^k)/(1-β) x^{m d⁻¹} + (1-β^k)/(1-β) c + β^k y`.
    pub fn iterated_left_mul_closed_form(
        &self,
        x: &FieldElem,
        y: &FieldElem,
        k: u64,
    ) -> Result<FieldElem, FieldError> {
        let f = &self.field;
        let beta_k = f.pow_u(&self.beta, k);
        let ratio = f.div(&f.sub(&f.one(), &beta_k), &f.sub(&f.one(), &self.beta))?;
        let xm = f.pow_u(x, self.reduced_exponent());
        let first = f.mul(&f.mul(&self.alpha, &ratio), &xm);
        let second = f.mul(&ratio, &self.c);
        Ok(f.add(&f.add(&first, &second), &f.mul(&beta_k, y)))
    }
}

/// The multiplication table indexed by element tags.
pub fn build_table(params: &ConstructionParams) -> QTable {
    let f = params.field();
    let elems: Vec<FieldElem> = f.elements().collect();
    let left: Vec<FieldElem> = elems
        .iter()
        .map(|x| f.add(&f.mul(params.alpha(), &f.pow_u(x, params.m())), params.c()))
        .collect();
    let right: Vec<FieldElem> = elems
        .iter()
        .map(|y| f.mul(params.beta(), &f.pow_u(y, params.d())))
        .collect();
    QTable::from_fn(elems.len(), |i, j| f.add(&left[i], &right[j]).index())
        .expect("coprime exponents give a Latin square")
}

/// Roots of `x^m - x + γ`, counted from the circulant rank and by evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootCount {
    pub gamma: FieldElem,
    pub rank: usize,
    pub count: u64,
    pub roots: Vec<FieldElem>,
}

/// Coefficients of `x^m - x + γ` folded onto `0..q-1` (valid for nonzero `x`,
/// where `x^{q-1} = 1`).
fn folded_coefficients(field: &FieldCtx, m: u64, gamma: &FieldElem) -> Vec<FieldElem> {
    let size = (field.q() - 1) as usize;
    let mut row = vec![field.zero(); size];
    row[0] = gamma.clone();
    row[1 % size] = field.sub(&row[1 % size], &field.one());
    let slot = (m % size as u64) as usize;
    row[slot] = field.add(&row[slot], &field.one());
    row
}

/// Left circulant matrix of `x^m - x + γ`: row 0 holds `γ` at position 0,
/// `-1` at position 1 and `1` at position `m`; row `i` is row 0 rotated left
/// by `i`.
pub fn circulant(field: &FieldCtx, m: u64, gamma: &FieldElem) -> Vec<Vec<FieldElem>> {
    let first = folded_coefficients(field, m, gamma);
    let size = first.len();
    (0..size)
        .map(|i| (0..size).map(|j| first[(i + j) % size].clone()).collect())
        .collect()
}

/// Roots of `x^m - x + γ` by evaluating at every element.
pub fn roots_by_evaluation(field: &FieldCtx, m: u64, gamma: &FieldElem) -> Vec<FieldElem> {
    field
        .elements()
        .filter(|x| {
            let value = field.add(&field.sub(&field.pow_u(x, m), x), gamma);
            value.is_zero()
        })
        .collect()
}

/// Number of roots of `x^m - x + γ` as `q - 1 - rank` of its circulant,
/// cross-checked by direct evaluation. `γ ≠ 0` keeps `0` from being a root.
pub fn konig_rados_count(
    field: &FieldCtx,
    m: u64,
    gamma: &FieldElem,
) -> Result<RootCount, ConstructionError> {
    if gamma.is_zero() {
        return Err(ConstructionError::ZeroGamma);
    }
    let rank = field.rank(&circulant(field, m, gamma));
    let predicted = field.q() - 1 - rank as u64;
    let roots = roots_by_evaluation(field, m, gamma);
    if roots.len() as u64 != predicted {
        return Err(ConstructionError::RootCountMismatch {
            predicted,
            found: roots.len() as u64,
        });
    }
    Ok(RootCount {
        gamma: gamma.clone(),
        rank,
        count: predicted,
        roots,
    })
}

/// `{x^m - x : x ∈ F_q}`, sorted by tag. Never all of F_q since `0` and `1`
/// both map to `0`.
pub fn range_of_f(field: &FieldCtx, m: u64) -> Vec<FieldElem> {
    let tags: BTreeSet<u64> = field
        .elements()
        .map(|x| field.sub(&field.pow_u(&x, m), &x).tag())
        .collect();
    tags.into_iter()
        .map(|t| field.elem(t).expect("tag in range"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CStrategy {
    /// Full rank of the circulant matrix.
    Rank,
    /// `c/(β-1)` outside the range of `x ↦ x^m - x`.
    Range,
}

fn first_c(field: &FieldCtx, m: u64, strategy: CStrategy) -> Result<Option<u64>, FieldError> {
    let one_minus_beta = field.sub(&field.one(), field.beta());
    let range: BTreeSet<u64> = match strategy {
        CStrategy::Range => range_of_f(field, m).iter().map(FieldElem::tag).collect(),
        CStrategy::Rank => BTreeSet::new(),
    };
    for c in field.elements().skip(1) {
        let gamma = field.div(&c, &one_minus_beta)?;
        let suitable = match strategy {
            CStrategy::Rank => field.rank(&circulant(field, m, &gamma)) as u64 == field.q() - 1,
            // x^m - x + γ = 0 has a root iff -γ lies in the range
            CStrategy::Range => !range.contains(&field.neg(&gamma).tag()),
        };
        if suitable {
            return Ok(Some(c.tag()));
        }
    }
    Ok(None)
}

/// Smallest nonzero `c` for which `x^m - x + c/(1-β)` has no root. In debug
/// builds both strategies run and must agree.
pub fn choose_c(
    field: &FieldCtx,
    m: u64,
    strategy: CStrategy,
) -> Result<FieldElem, ConstructionError> {
    let chosen = first_c(field, m, strategy)?;
    if cfg!(debug_assertions) {
        let other = match strategy {
            CStrategy::Rank => CStrategy::Range,
            CStrategy::Range => CStrategy::Rank,
        };
        let alt = first_c(field, m, other)?;
        if alt != chosen {
            let (rank, range) = match strategy {
                CStrategy::Rank => (chosen, alt),
                CStrategy::Range => (alt, chosen),
            };
            return Err(ConstructionError::StrategyMismatch { rank, range });
        }
    }
    let tag = chosen.ok_or(ConstructionError::NoSuitableC)?;
    Ok(field.elem(tag)?)
}

/// `1 < m < q-1`, coprime to `q-1`, and not a power of `p` modulo `q-1`.
pub fn is_valid_m(field: &FieldCtx, m: u64) -> bool {
    let order = field.q() - 1;
    if m <= 1 || m >= order || gcd(m, order) != 1 {
        return false;
    }
    let mut power = 1 % order;
    for _ in 0..field.r() {
        if power == m {
            return false;
        }
        power = power * field.p() % order;
    }
    true
}

pub fn valid_exponents(field: &FieldCtx) -> Vec<u64> {
    (2..field.q().saturating_sub(1))
        .filter(|&m| is_valid_m(field, m))
        .collect()
}

/// Output of [`construct_suitable`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub params: ConstructionParams,
    pub table: QTable,
    pub root_count: RootCount,
}

/// Builds `x*y = (1-β) x^m + β y + c`. Without overrides `m` is the smallest
/// valid exponent and `c` the smallest constant leaving no idempotent, which
/// makes the result polynomially complete with no proper subquasigroup.
/// A caller-supplied `c` is used as given; its roots are reported.
pub fn construct_suitable(
    field: &FieldCtx,
    m: Option<u64>,
    c: Option<&FieldElem>,
) -> Result<Construction, ConstructionError> {
    let q = field.q();
    if q <= 2 {
        return Err(ConstructionError::QTooSmall(q));
    }
    let m = match m {
        Some(m) if is_valid_m(field, m) => m,
        Some(m) => return Err(ConstructionError::InvalidExponent { m, q }),
        None => *valid_exponents(field)
            .first()
            .ok_or(ConstructionError::NoValidM { q })?,
    };
    let c = match c {
        Some(c) => field.elem(c.tag())?,
        None => choose_c(field, m, CStrategy::Range)?,
    };
    let params = ConstructionParams::standard(field.clone(), m, c)?;
    let gamma = params.gamma()?;
    let root_count = konig_rados_count(field, m, &gamma)?;
    let table = build_table(&params);
    Ok(Construction {
        params,
        table,
        root_count,
    })
}

/// [`construct_suitable`] over the default field GF(p^r) with `c` given by tag.
pub fn construct(
    p: u64,
    r: u32,
    m: Option<u64>,
    c: Option<u64>,
) -> Result<Construction, ConstructionError> {
    let field = FieldCtx::new(p, r, None)?;
    let c = c.map(|t| field.elem(t)).transpose()?;
    construct_suitable(&field, m, c.as_ref())
}
