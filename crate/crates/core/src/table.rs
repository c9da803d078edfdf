//! Latin-square quasigroups: validation, divisions, translations and isotopes.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table is not square or has entries out of range")]
    BadShape,
    #[error("row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation")]
    ColNotPermutation(usize),
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A permutation of `0..n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, TableError> {
        if is_permutation(&images) {
            Ok(Permutation(images))
        } else {
            Err(TableError::NotPermutation(images.len()))
        }
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn cycles(&self) -> CycleDecomposition {
        cycle_decomposition(self)
    }
}

fn is_permutation(images: &[usize]) -> bool {
    let mut seen = vec![false; images.len()];
    for &x in images {
        if x >= images.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Disjoint cycles of a permutation. Each cycle starts at its smallest
/// element and the cycles are ordered by that element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    /// Index of the cycle containing `x`.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.cycles.iter().position(|c| c.contains(&x))
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            let parts: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

pub fn cycle_decomposition(perm: &Permutation) -> CycleDecomposition {
    let n = perm.len();
    let mut visited = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !visited[x] {
            visited[x] = true;
            cycle.push(x);
            x = perm.apply(x);
        }
        cycles.push(cycle);
    }
    CycleDecomposition { cycles }
}

/// A finite quasigroup given by its Latin square; `cells[i][j] = i * j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTable {
    n: usize,
    cells: Vec<usize>,
    // ldiv[a][b] = x with a*x = b; rdiv[a][b] = y with y*a = b.
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    n: usize,
    cells: Vec<Vec<usize>>,
}

impl QTable {
    /// Validates both Latin conditions.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TableError> {
        let n = rows.len();
        if rows
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(TableError::BadShape);
        }
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for (i, row) in rows.iter().enumerate() {
            let mut seen = vec![false; n];
            for (j, &x) in row.iter().enumerate() {
                if seen[x] {
                    return Err(TableError::RowNotPermutation(i));
                }
                seen[x] = true;
                ldiv[i * n + x] = j;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for (i, row) in rows.iter().enumerate() {
                let x = row[j];
                if seen[x] {
                    return Err(TableError::ColNotPermutation(j));
                }
                seen[x] = true;
                rdiv[j * n + x] = i;
            }
        }
        Ok(QTable {
            n,
            cells: rows.into_iter().flatten().collect(),
            ldiv,
            rdiv,
        })
    }

    /// Builds a table from `f(i, j)`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, TableError> {
        QTable::new((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
    }

    /// Convenience for 1-based tables: subtracts 1 from every entry.
    pub fn from_one_based(rows: &[Vec<usize>]) -> Result<Self, TableError> {
        let shifted = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| x.checked_sub(1).ok_or(TableError::BadShape))
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        QTable::new(shifted)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    /// `a \ b`: the `x` with `a * x = b`.
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.n + b]
    }

    /// `b / a`: the `y` with `y * a = b`.
    pub fn rdiv(&self, b: usize, a: usize) -> usize {
        self.rdiv[a * self.n + b]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.cells[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.n.max(1))
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Left translation `y ↦ i * y`.
    pub fn row_perm(&self, i: usize) -> Permutation {
        Permutation(self.row(i).to_vec())
    }

    /// Right translation `x ↦ x * j`.
    pub fn col_perm(&self, j: usize) -> Permutation {
        Permutation((0..self.n).map(|x| self.mul(x, j)).collect())
    }

    /// `x * y = pi(pi1⁻¹(x) · pi2⁻¹(y))`.
    pub fn isotope(
        &self,
        pi: &Permutation,
        pi1: &Permutation,
        pi2: &Permutation,
    ) -> Result<QTable, TableError> {
        if [pi, pi1, pi2].iter().any(|p| p.len() != self.n) {
            return Err(TableError::NotPermutation(self.n));
        }
        let (inv1, inv2) = (pi1.inverse(), pi2.inverse());
        QTable::from_fn(self.n, |i, j| {
            pi.apply(self.mul(inv1.apply(i), inv2.apply(j)))
        })
    }

    /// Size of the orbit of the ordered pair `(0, 1)` under the group
    /// generated by all row and column translations. Equals `n(n-1)` exactly
    /// when that group is doubly transitive.
    pub fn mult_group_orbit_pairs(&self) -> usize {
        let n = self.n;
        if n < 2 {
            return 0;
        }
        let gens: Vec<Permutation> = (0..n)
            .map(|i| self.row_perm(i))
            .chain((0..n).map(|j| self.col_perm(j)))
            .collect();
        let mut seen = vec![false; n * n];
        let mut queue = VecDeque::from([(0usize, 1usize)]);
        seen[1] = true;
        let mut count = 1;
        while let Some((x, y)) = queue.pop_front() {
            for g in &gens {
                let (gx, gy) = (g.apply(x), g.apply(y));
                if !seen[gx * n + gy] {
                    seen[gx * n + gy] = true;
                    count += 1;
                    queue.push_back((gx, gy));
                }
            }
        }
        count
    }

    /// Generators `σ_i σ_j⁻¹` and `τ_i τ_j⁻¹` of the displacement group,
    /// deduplicated and sorted.
    pub fn displacement_generators(&self) -> Vec<Permutation> {
        let rows: Vec<Permutation> = (0..self.n).map(|i| self.row_perm(i)).collect();
        let cols: Vec<Permutation> = (0..self.n).map(|j| self.col_perm(j)).collect();
        let mut gens = Vec::new();
        for family in [&rows, &cols] {
            let inverses: Vec<Permutation> = family.iter().map(Permutation::inverse).collect();
            for a in family.iter() {
                for b in &inverses {
                    gens.push(a.compose(b));
                }
            }
        }
        gens.sort();
        gens.dedup();
        gens
    }

    /// Text form: `n` on the first line, then `n` rows of space-separated entries.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(usize::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, TableError> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| TableError::Parse(format!("invalid integer {t:?}")))
        });
        let n = tokens
            .next()
            .ok_or_else(|| TableError::Parse("empty input".into()))??;
        let values = tokens.collect::<Result<Vec<usize>, _>>()?;
        if values.len() != n * n {
            return Err(TableError::Parse(format!(
                "expected {} entries, found {}",
                n * n,
                values.len()
            )));
        }
        QTable::new(values.chunks(n.max(1)).map(<[usize]>::to_vec).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableRepr {
            n: self.n,
            cells: self.rows(),
        })
        .expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let repr: TableRepr =
            serde_json::from_str(text).map_err(|e| TableError::Parse(e.to_string()))?;
        if repr.cells.len() != repr.n {
            return Err(TableError::BadShape);
        }
        QTable::new(repr.cells)
    }

    /// Accepts either format; JSON is recognised by a leading `{`.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        if text.trim_start().starts_with('{') {
            QTable::from_json(text)
        } else {
            QTable::from_text(text)
        }
    }
}

impl Serialize for QTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TableRepr {
            n: self.n,
            cells: self.rows(),
        }
        .serialize(serializer)
    }
}

/// Cayley table of the cyclic group `Z_n`.
pub fn cyclic_group(n: usize) -> QTable {
    QTable::from_fn(n, |i, j| (i + j) % n).expect("Z_n is a Latin square")
}
