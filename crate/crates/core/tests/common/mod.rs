//! Test corpus and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use quasigroup::{Permutation, QTable};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn example1() -> QTable {
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

/// Order-5 table generated by each of its diagonal elements. Row 2 is
/// `4 5 3 1 2`; the variant ending `2 1` is not a Latin square.
pub fn example2() -> QTable {
    QTable::from_one_based(&[
        vec![2, 3, 1, 4, 5],
        vec![4, 5, 3, 1, 2],
        vec![5, 1, 4, 2, 3],
        vec![1, 2, 5, 3, 4],
        vec![3, 4, 2, 5, 1],
    ])
    .unwrap()
}

pub fn example3() -> QTable {
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

/// Reference table for m = 3, c = 1, β = a over GF(8) (tags, 0-based).
pub const EXAMPLE4_ROWS: [[usize; 8]; 8] = [
    [1, 3, 5, 7, 2, 0, 6, 4],
    [2, 0, 6, 4, 1, 3, 5, 7],
    [4, 6, 0, 2, 7, 5, 3, 1],
    [6, 4, 2, 0, 5, 7, 1, 3],
    [5, 7, 1, 3, 6, 4, 2, 0],
    [0, 2, 4, 6, 3, 1, 7, 5],
    [3, 1, 7, 5, 0, 2, 4, 6],
    [7, 5, 3, 1, 4, 6, 0, 2],
];

/// Reference table for m = 5, c = a², β = a over GF(8).
pub const EXAMPLE5_ROWS: [[usize; 8]; 8] = [
    [4, 6, 0, 2, 7, 5, 3, 1],
    [7, 5, 3, 1, 4, 6, 0, 2],
    [6, 4, 2, 0, 5, 7, 1, 3],
    [2, 0, 6, 4, 1, 3, 5, 7],
    [1, 3, 5, 7, 2, 0, 6, 4],
    [3, 1, 7, 5, 0, 2, 4, 6],
    [0, 2, 4, 6, 3, 1, 7, 5],
    [5, 7, 1, 3, 6, 4, 2, 0],
];

pub fn table_from(rows: &[[usize; 8]; 8]) -> QTable {
    QTable::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn cyclic(n: usize) -> QTable {
    QTable::from_fn(n, |i, j| (i + j) % n).unwrap()
}

pub fn product(a: &QTable, b: &QTable) -> QTable {
    let (n, m) = (a.order(), b.order());
    QTable::from_fn(n * m, |x, y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).unwrap()
}

/// Group of permutations closed under composition, given by generators.
pub fn permutation_group(gens: &[Vec<usize>]) -> QTable {
    let degree = gens[0].len();
    let mut elems: Vec<Vec<usize>> = vec![(0..degree).collect()];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let composed: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
            if !elems.contains(&composed) {
                elems.push(composed);
            }
        }
        i += 1;
    }
    let n = elems.len();
    QTable::from_fn(n, |a, b| {
        let composed: Vec<usize> = elems[b].iter().map(|&x| elems[a][x]).collect();
        elems.iter().position(|e| *e == composed).unwrap()
    })
    .unwrap()
}

pub fn dihedral(k: usize) -> QTable {
    let rot: Vec<usize> = (0..k).map(|x| (x + 1) % k).collect();
    let refl: Vec<usize> = (0..k).map(|x| (k - x) % k).collect();
    permutation_group(&[rot, refl])
}

pub fn quaternion() -> QTable {
    // Q8 acting on itself: i and j as permutations of the regular representation
    // elements ordered 1, -1, i, -i, j, -j, k, -k
    let i = vec![2, 3, 1, 0, 6, 7, 5, 4];
    let j = vec![4, 5, 7, 6, 1, 0, 2, 3];
    permutation_group(&[i, j])
}

pub fn alternating4() -> QTable {
    permutation_group(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

pub fn symmetric3() -> QTable {
    permutation_group(&[vec![1, 0, 2], vec![1, 2, 0]])
}

/// Groups of every order up to 12, abelian and not.
pub fn groups() -> Vec<QTable> {
    let mut out: Vec<QTable> = (1..=12).map(cyclic).collect();
    let z2 = cyclic(2);
    let z3 = cyclic(3);
    out.push(product(&z2, &z2));
    out.push(product(&z2, &cyclic(4)));
    out.push(product(&product(&z2, &z2), &z2));
    out.push(product(&z3, &z3));
    out.push(product(&z2, &cyclic(6)));
    out.push(product(&z2, &product(&z2, &z3)));
    out.push(symmetric3());
    for k in 4..=6 {
        out.push(dihedral(k));
    }
    out.push(quaternion());
    out.push(alternating4());
    out.push(product(&z2, &symmetric3()));
    out
}

/// Groups plus the fixed example tables.
pub fn base_tables() -> Vec<QTable> {
    let mut out = groups();
    out.push(example1());
    out.push(example2());
    out.push(example3());
    out.push(table_from(&EXAMPLE4_ROWS));
    out.push(table_from(&EXAMPLE5_ROWS));
    out
}

pub fn random_perm(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

pub fn random_isotope(q: &QTable, rng: &mut impl Rng) -> QTable {
    let n = q.order();
    let (a, b, c) = (
        random_perm(n, rng),
        random_perm(n, rng),
        random_perm(n, rng),
    );
    q.isotope(&a, &b, &c).unwrap()
}

/// Isomorphic copy: the same permutation relabels rows, columns and symbols.
pub fn random_relabel(q: &QTable, rng: &mut impl Rng) -> QTable {
    let s = random_perm(q.order(), rng);
    q.isotope(&s, &s, &s).unwrap()
}

/// Uniform-ish random Latin square by randomized backtracking.
pub fn random_latin(n: usize, rng: &mut impl Rng) -> QTable {
    fn fill(cells: &mut Vec<usize>, n: usize, pos: usize, rng: &mut impl Rng) -> bool {
        if pos == n * n {
            return true;
        }
        let (i, j) = (pos / n, pos % n);
        let mut symbols: Vec<usize> = (0..n).collect();
        symbols.shuffle(rng);
        for s in symbols {
            let clash =
                (0..j).any(|c| cells[i * n + c] == s) || (0..i).any(|r| cells[r * n + j] == s);
            if !clash {
                cells[pos] = s;
                if fill(cells, n, pos + 1, rng) {
                    return true;
                }
            }
        }
        false
    }
    let mut cells = vec![0; n * n];
    assert!(fill(&mut cells, n, 0, rng));
    QTable::new(cells.chunks(n).map(<[usize]>::to_vec).collect()).unwrap()
}

/// At least 200 tables of order at most 12: the base corpus, random isotopes
/// and relabellings of it, products of small random quasigroups, and random
/// Latin squares.
pub fn oracle_corpus() -> Vec<QTable> {
    let mut rng = rng(0x5eed);
    let base = base_tables();
    let mut out = base.clone();
    for q in &base {
        out.push(random_isotope(q, &mut rng));
        out.push(random_relabel(q, &mut rng));
    }
    for _ in 0..40 {
        let a = random_latin(rng.random_range(2..=4), &mut rng);
        let b = random_latin(rng.random_range(2..=3), &mut rng);
        out.push(random_relabel(&product(&a, &b), &mut rng));
    }
    for _ in 0..80 {
        let n = rng.random_range(3..=9);
        out.push(random_latin(n, &mut rng));
    }
    out
}

/// Every closed subset of size at most n/2, by enumerating all subsets.
pub fn brute_force_subquasigroups(q: &QTable) -> Vec<Vec<usize>> {
    let n = q.order();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if 2 * size > n {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| mask >> q.mul(a, b) & 1 == 1));
        if closed {
            out.push(members);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Intersection of all closed subsets containing `seeds`.
pub fn brute_force_generated(q: &QTable, seeds: &[usize]) -> Vec<usize> {
    let n = q.order();
    let seed_mask: u32 = seeds.iter().map(|&s| 1u32 << s).fold(0, |a, b| a | b);
    let mut acc: u32 = (1u32 << n) - 1;
    for mask in 1u32..(1 << n) {
        if mask & seed_mask != seed_mask {
            continue;
        }
        let closed = (0..n).filter(|&a| mask >> a & 1 == 1).all(|a| {
            (0..n)
                .filter(|&b| mask >> b & 1 == 1)
                .all(|b| mask >> q.mul(a, b) & 1 == 1)
        });
        if closed {
            acc &= mask;
        }
    }
    (0..n).filter(|&x| acc >> x & 1 == 1).collect()
}

/// All 576 Latin squares of order 4.
pub fn all_order4() -> Vec<QTable> {
    let perms: Vec<Vec<usize>> = {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let v = vec![a, b, c, d];
                        let mut s = v.clone();
                        s.sort();
                        s.dedup();
                        if s.len() == 4 {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    };
    let mut out = Vec::new();
    let mut rows: Vec<&Vec<usize>> = Vec::new();
    fn rec<'a>(perms: &'a [Vec<usize>], rows: &mut Vec<&'a Vec<usize>>, out: &mut Vec<QTable>) {
        if rows.len() == 4 {
            out.push(QTable::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap());
            return;
        }
        for p in perms {
            if rows.iter().all(|r| (0..4).all(|c| r[c] != p[c])) {
                rows.push(p);
                rec(perms, rows, out);
                rows.pop();
            }
        }
    }
    rec(&perms, &mut rows, &mut out);
    out
}
