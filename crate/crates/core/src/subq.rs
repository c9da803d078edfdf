//! Subquasigroup enumeration and generation.
//!
//! In a finite quasigroup a subset closed under multiplication is already a
//! subquasigroup, and a proper subquasigroup has at most `n/2` elements. A
//! subquasigroup `W` containing `i` is a union of cycles of the row
//! translation `σ_i`, which is what [`find_all_subquasigroups`] exploits: the
//! candidates for row `i` are the cycle of `σ_i` through `i` joined with
//! subsets of the remaining admissible cycles.

use serde::Serialize;
use thiserror::Error;

use crate::properties;
use crate::table::QTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubqError {
    #[error("subset must be nonempty")]
    EmptySet,
    #[error("element {0} is out of range")]
    OutOfRange(usize),
    #[error("expected a quasigroup of order 4, got order {0}")]
    WrongOrder(usize),
    #[error("internal cross-check failed: {0}")]
    CrossCheckMismatch(String),
}

/// All proper subquasigroups, each sorted, ordered by (size, lexicographic).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubqReport {
    pub subquasigroups: Vec<Vec<usize>>,
}

impl SubqReport {
    pub fn is_empty(&self) -> bool {
        self.subquasigroups.is_empty()
    }
}

/// The chain `A_0 ⊂ A_1 ⊂ …` built while generating from a seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationTrace {
    pub chain: Vec<Vec<usize>>,
    pub result: Vec<usize>,
    /// The last chain set exceeded `n/2`, so the result was set to `Q`.
    pub early_exit: bool,
}

pub fn is_closed(q: &QTable, w: &[usize]) -> Result<bool, SubqError> {
    if w.is_empty() {
        return Err(SubqError::EmptySet);
    }
    let n = q.order();
    if let Some(&x) = w.iter().find(|&&x| x >= n) {
        return Err(SubqError::OutOfRange(x));
    }
    let mut member = vec![false; n];
    for &x in w {
        member[x] = true;
    }
    Ok(closed_under_mul(q, w, &member))
}

fn closed_under_mul(q: &QTable, w: &[usize], member: &[bool]) -> bool {
    w.iter().all(|&a| w.iter().all(|&b| member[q.mul(a, b)]))
}

/// Closure of `seeds` under multiplication, expanding only products that
/// involve the newest elements. Stops early with `Q` once the set is larger
/// than `n/2`.
pub fn closure(q: &QTable, seeds: &[usize]) -> GenerationTrace {
    let n = q.order();
    let mut member = vec![false; n];
    let mut current: Vec<usize> = Vec::new();
    for &s in seeds {
        if !member[s] {
            member[s] = true;
            current.push(s);
        }
    }
    current.sort_unstable();
    let mut chain = vec![current.clone()];
    let mut older: Vec<usize> = Vec::new();
    let mut frontier = current.clone();

    loop {
        let mut fresh = Vec::new();
        let mut visit = |x: usize, fresh: &mut Vec<usize>| {
            if !member[x] {
                member[x] = true;
                fresh.push(x);
            }
        };
        for &a in &frontier {
            for &b in &frontier {
                visit(q.mul(a, b), &mut fresh);
            }
            for &b in &older {
                visit(q.mul(a, b), &mut fresh);
                visit(q.mul(b, a), &mut fresh);
            }
        }
        if fresh.is_empty() {
            let result = chain.last().cloned().unwrap_or_default();
            return GenerationTrace {
                chain,
                result,
                early_exit: false,
            };
        }
        older.extend_from_slice(&frontier);
        current.extend_from_slice(&fresh);
        current.sort_unstable();
        chain.push(current.clone());
        if 2 * current.len() > n {
            return GenerationTrace {
                chain,
                result: (0..n).collect(),
                early_exit: true,
            };
        }
        frontier = fresh;
    }
}

/// Subquasigroup generated by a single element.
pub fn generated_by(q: &QTable, a: usize) -> GenerationTrace {
    closure(q, &[a])
}

/// Fixed point of `D_1 = {x*x}`, `D_{k+1} = {x*x : x ∈ D_k}`. The sets
/// only shrink (`D_1 ⊆ Q` gives `D_{k+1} ⊆ D_k`), so the loop terminates.
pub fn diagonal_core(q: &QTable) -> Vec<usize> {
    let square_all = |set: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| q.mul(x, x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let mut current = square_all(&(0..q.order()).collect::<Vec<_>>());
    loop {
        let next = square_all(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// `Q` has no proper subquasigroup iff every element of the diagonal core
/// generates `Q`.
pub fn no_proper_subq_via_diagonal(q: &QTable) -> bool {
    let n = q.order();
    diagonal_core(q)
        .into_iter()
        .all(|a| generated_by(q, a).result.len() == n)
}

/// Candidate search for one row: every union of `base` with a subset of
/// `others` of total size at most `limit`, closure-tested. Branches where a
/// product already escapes every still-undecided cycle are cut.
struct UnionSearch<'a> {
    q: &'a QTable,
    others: &'a [Vec<usize>],
    /// Index into `others` of the cycle holding each element, if any.
    cycle_of: Vec<Option<usize>>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl<'a> UnionSearch<'a> {
    fn new(q: &'a QTable, others: &'a [Vec<usize>], limit: usize) -> Self {
        let mut cycle_of = vec![None; q.order()];
        for (idx, cycle) in others.iter().enumerate() {
            for &x in cycle {
                cycle_of[x] = Some(idx);
            }
        }
        UnionSearch {
            q,
            others,
            cycle_of,
            limit,
            found: Vec::new(),
        }
    }

    fn run(mut self, base: &[usize]) -> Vec<Vec<usize>> {
        let mut member = vec![false; self.q.order()];
        for &x in base {
            member[x] = true;
        }
        let mut w = base.to_vec();
        self.descend(0, &mut w, &mut member);
        self.found
    }

    fn dead_end(&self, next: usize, w: &[usize], member: &[bool]) -> bool {
        w.iter().any(|&a| {
            w.iter().any(|&b| {
                let x = self.q.mul(a, b);
                !member[x] && self.cycle_of[x].is_none_or(|c| c < next)
            })
        })
    }

    fn descend(&mut self, next: usize, w: &mut Vec<usize>, member: &mut [bool]) {
        if self.dead_end(next, w, member) {
            return;
        }
        if next == self.others.len() {
            if closed_under_mul(self.q, w, member) {
                let mut set = w.clone();
                set.sort_unstable();
                self.found.push(set);
            }
            return;
        }
        let cycle = &self.others[next];
        if w.len() + cycle.len() <= self.limit {
            for &x in cycle {
                member[x] = true;
            }
            w.extend_from_slice(cycle);
            self.descend(next + 1, w, member);
            w.truncate(w.len() - cycle.len());
            for &x in cycle {
                member[x] = false;
            }
        }
        self.descend(next + 1, w, member);
    }
}

/// Closed unions of cycles of `σ_row` that contain the cycle through `row`
/// and otherwise use only cycles lying inside `allowed`.
fn row_candidates(q: &QTable, row: usize, allowed: &[bool]) -> Vec<Vec<usize>> {
    let limit = q.order() / 2;
    let cycles = q.row_perm(row).cycles().cycles;
    let k = cycles
        .iter()
        .position(|c| c.contains(&row))
        .expect("every element lies on a cycle");
    let base = &cycles[k];
    if base.len() > limit || !base.iter().all(|&x| allowed[x]) {
        return Vec::new();
    }
    let others: Vec<Vec<usize>> = cycles
        .iter()
        .enumerate()
        .filter(|&(j, c)| j != k && c.len() + base.len() <= limit && c.iter().all(|&x| allowed[x]))
        .map(|(_, c)| c.clone())
        .collect();
    UnionSearch::new(q, &others, limit).run(base)
}

/// Every proper subquasigroup of `q`, including idempotent singletons.
///
/// Rows are visited in the order `i = min(Q \ Σ)`. For a fresh row `i` the
/// candidates avoid `Σ'`, the set of rows that already started a pass. After
/// each fresh row the elements of the found subquasigroups that have not been
/// visited yet (`S`) are processed in turn, again with candidates avoiding
/// `Σ'`. Confining those candidates to `S` instead would lose a
/// subquasigroup through `j ∈ S` that reaches outside `S`, since `j` is never
/// revisited. With `Σ'` as the only exclusion, the first visited member of
/// any subquasigroup `W` sees `W ∩ Σ' = ∅` and so finds `W`.
pub fn find_all_subquasigroups(q: &QTable) -> SubqReport {
    let n = q.order();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut visited = vec![false; n]; // Σ
    let mut restarted = vec![false; n]; // Σ'
    let mut i = 0;
    while i < n {
        visited[i] = true;
        let allowed: Vec<bool> = restarted.iter().map(|&r| !r).collect();
        found.extend(row_candidates(q, i, &allowed));

        let mut pending = vec![false; n]; // S
        for &x in found.iter().flatten() {
            pending[x] = !visited[x];
        }
        while let Some(j) = pending.iter().position(|&s| s) {
            visited[j] = true;
            found.extend(row_candidates(q, j, &allowed));
            pending[j] = false;
        }

        restarted[i] = true;
        i = visited.iter().position(|&v| !v).unwrap_or(n);
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found.dedup();
    SubqReport {
        subquasigroups: found,
    }
}

/// For order 4: a 2-element subquasigroup exists exactly when `Q` is not
/// simple. Both sides are computed independently and must agree.
pub fn order4_simplicity(q: &QTable) -> Result<bool, SubqError> {
    if q.order() != 4 {
        return Err(SubqError::WrongOrder(q.order()));
    }
    let has_pair = find_all_subquasigroups(q)
        .subquasigroups
        .iter()
        .any(|w| w.len() == 2);
    let simple = properties::is_simple(q);
    if has_pair == simple {
        return Err(SubqError::CrossCheckMismatch(format!(
            "size-2 subquasigroup present: {has_pair}, simple: {simple}"
        )));
    }
    Ok(simple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::cyclic_group;

    fn example1() -> QTable {
        QTable::from_one_based(&[
            vec![2, 1, 4, 3, 5, 6, 7, 8],
            vec![1, 3, 2, 4, 6, 7, 8, 5],
            vec![4, 2, 3, 1, 7, 8, 5, 6],
            vec![3, 4, 1, 2, 8, 5, 6, 7],
            vec![5, 6, 7, 8, 1, 2, 3, 4],
            vec![6, 7, 8, 5, 2, 3, 4, 1],
            vec![7, 8, 5, 6, 3, 4, 1, 2],
            vec![8, 5, 6, 7, 4, 1, 2, 3],
        ])
        .unwrap()
    }

    fn example2() -> QTable {
        QTable::from_one_based(&[
            vec![2, 3, 1, 4, 5],
            vec![4, 5, 3, 1, 2],
            vec![5, 1, 4, 2, 3],
            vec![1, 2, 5, 3, 4],
            vec![3, 4, 2, 5, 1],
        ])
        .unwrap()
    }

    fn example3() -> QTable {
        QTable::from_one_based(&[
            vec![2, 5, 8, 3, 7, 6, 4, 1],
            vec![3, 1, 6, 2, 4, 8, 7, 5],
            vec![4, 6, 1, 7, 3, 5, 2, 8],
            vec![8, 7, 2, 6, 5, 3, 1, 4],
            vec![6, 4, 3, 8, 1, 2, 5, 7],
            vec![5, 2, 7, 1, 8, 4, 6, 3],
            vec![7, 8, 5, 4, 2, 1, 3, 6],
            vec![1, 3, 4, 5, 6, 7, 8, 2],
        ])
        .unwrap()
    }

    #[test]
    fn closure_examples() {
        let q = example1();
        assert_eq!(is_closed(&q, &[0, 1, 2, 3]), Ok(true));
        assert_eq!(is_closed(&q, &[0, 1]), Ok(false));
        assert_eq!(is_closed(&q, &(0..8).collect::<Vec<_>>()), Ok(true));
        assert_eq!(is_closed(&q, &[]), Err(SubqError::EmptySet));
        assert_eq!(is_closed(&q, &[9]), Err(SubqError::OutOfRange(9)));
    }

    #[test]
    fn example1_subquasigroups() {
        let report = find_all_subquasigroups(&example1());
        assert_eq!(
            report.subquasigroups,
            vec![vec![2], vec![1, 2], vec![0, 1, 2, 3]]
        );
    }

    #[test]
    fn example3_has_none() {
        assert!(find_all_subquasigroups(&example3()).is_empty());
        assert!(no_proper_subq_via_diagonal(&example3()));
        assert_eq!(diagonal_core(&example3()), vec![0, 1, 3, 5]);
    }

    #[test]
    fn example2_generation() {
        let q = example2();
        assert_eq!(diagonal_core(&q), vec![0, 1, 2, 3, 4]);
        let trace = generated_by(&q, 1);
        assert_eq!(trace.result, vec![0, 1, 2, 3, 4]);
        assert_eq!(trace.chain[0], vec![1]);
        assert_eq!(trace.chain[1], vec![1, 4]);
    }

    #[test]
    fn example1_generation() {
        let q = example1();
        assert_eq!(generated_by(&q, 2).result, vec![2]);
        assert_eq!(generated_by(&q, 2).chain, vec![vec![2]]);
        let from_one = generated_by(&q, 0);
        assert_eq!(from_one.result, vec![0, 1, 2, 3]);
        assert!(!from_one.early_exit);
        assert_eq!(diagonal_core(&q), vec![2]);
        assert!(!no_proper_subq_via_diagonal(&q));
    }

    #[test]
    fn chain_strictly_grows() {
        let q = example3();
        for a in 0..8 {
            let t = generated_by(&q, a);
            for pair in t.chain.windows(2) {
                assert!(pair[0].len() < pair[1].len());
                assert!(pair[0].iter().all(|x| pair[1].contains(x)));
            }
        }
    }

    #[test]
    fn trivial_orders() {
        let one = cyclic_group(1);
        assert!(find_all_subquasigroups(&one).is_empty());
        assert!(no_proper_subq_via_diagonal(&one));
        assert_eq!(
            find_all_subquasigroups(&cyclic_group(2)).subquasigroups,
            vec![vec![0]]
        );
    }

    #[test]
    fn idempotent_table_core_is_everything() {
        // x * y = 2x + 2y mod 3 is idempotent
        let q = QTable::from_fn(3, |x, y| (2 * x + 2 * y) % 3).unwrap();
        assert_eq!(diagonal_core(&q), vec![0, 1, 2]);
    }

    #[test]
    fn order4_checks() {
        assert_eq!(order4_simplicity(&cyclic_group(4)), Ok(false));
        let klein = QTable::from_fn(4, |x, y| x ^ y).unwrap();
        assert_eq!(order4_simplicity(&klein), Ok(false));
        assert_eq!(
            order4_simplicity(&cyclic_group(5)),
            Err(SubqError::WrongOrder(5))
        );
    }
}
