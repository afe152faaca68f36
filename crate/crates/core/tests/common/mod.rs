//! Reference implementations shared by the integration tests. They work on
//! plain exponent vectors and index lists and share no code with the
//! library beyond parsing.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use morse_res::{parse_ideal, random_squarefree_ideal, Cell, MonomialIdeal};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const RUN4: &str = "vars: w x y z\ngens: y*z x*y w*x w*z";
pub const TRI: &str = "vars: x y z\ngens: x*y y*z x*z";
pub const EX56: &str = "vars: x1 x2 x3 x4 x5 x6 x7 x8\n\
                        gens: x7*x8 x2*x3*x8 x1*x2*x7 x1*x2*x5 x2*x3*x5*x6 x1*x2*x3*x4";

pub fn ideal(text: &str) -> MonomialIdeal {
    parse_ideal(text).unwrap().ideal
}

/// 100 seeded random square-free ideals with at most 6 variables and 6
/// generators.
pub fn corpus() -> Vec<MonomialIdeal> {
    (0..100u64)
        .map(|i| {
            let nvars = 3 + (i % 4) as usize;
            let ngens = 2 + ((i / 4) % 5) as usize;
            random_squarefree_ideal(1000 + i, nvars, ngens).unwrap()
        })
        .collect()
}

/// Cell of the generators named in `names`.
pub fn cell(ideal: &MonomialIdeal, names: &[&str]) -> Cell {
    Cell::from_indices(names.iter().map(|n| {
        ideal
            .generators()
            .iter()
            .position(|g| g.to_string() == *n)
            .unwrap_or_else(|| panic!("no generator {n}"))
    }))
}

pub fn name_set(ideal: &MonomialIdeal, c: Cell) -> BTreeSet<String> {
    c.names(ideal).into_iter().collect()
}

/// Independent Barile-Macchia and Lyubeznik constructions over index lists.
pub struct Reference {
    exps: Vec<Vec<u32>>,
}

pub type Edge = (Vec<usize>, Vec<usize>);

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort_by_key(|s| s.iter().map(|&i| 1u32 << i).sum::<u32>());
    out
}

impl Reference {
    pub fn new(ideal: &MonomialIdeal) -> Self {
        Self {
            exps: ideal
                .generators()
                .iter()
                .map(|g| g.exponents().to_vec())
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn lcm(&self, cell: &[usize]) -> Vec<u32> {
        let nv = self.exps.first().map_or(0, Vec::len);
        (0..nv)
            .map(|v| cell.iter().map(|&g| self.exps[g][v]).max().unwrap_or(0))
            .collect()
    }

    fn divides(a: &[u32], b: &[u32]) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }

    fn without(cell: &[usize], g: usize) -> Vec<usize> {
        cell.iter().copied().filter(|&h| h != g).collect()
    }

    /// `(position, source, target)` in processing order, with `rank[g]`
    /// the position of generator `g`.
    pub fn possible_edges(&self, rank: &[usize]) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
        let n = self.n();
        let mut removed: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for k in (3..=n).rev() {
            for s in subsets(n, k) {
                if removed.contains(&s) {
                    continue;
                }
                let l = self.lcm(&s);
                let sbridge = s
                    .iter()
                    .copied()
                    .filter(|&g| self.lcm(&Self::without(&s, g)) == l)
                    .min_by_key(|&g| rank[g]);
                if let Some(b) = sbridge {
                    let t = Self::without(&s, b);
                    removed.insert(t.clone());
                    out.push((rank[b], s, t));
                }
            }
        }
        out
    }

    pub fn bm(&self, rank: &[usize]) -> BTreeSet<Edge> {
        let mut best: BTreeMap<Vec<usize>, (usize, Vec<usize>)> = BTreeMap::new();
        for (p, s, t) in self.possible_edges(rank) {
            match best.get(&t) {
                Some((q, _)) if *q <= p => {}
                _ => {
                    best.insert(t, (p, s));
                }
            }
        }
        best.into_iter().map(|(t, (_, s))| (s, t)).collect()
    }

    /// Generators of `cell` ordered largest first, then the Lyubeznik
    /// depth and the least generator dividing that prefix's lcm.
    pub fn lyubeznik_pair(&self, cell: &[usize], rank: &[usize]) -> Option<(usize, usize)> {
        let mut desc = cell.to_vec();
        desc.sort_by_key(|&g| std::cmp::Reverse(rank[g]));
        let n = self.n();
        (1..=desc.len()).rev().find_map(|k| {
            let l = self.lcm(&desc[..k]);
            let mk = rank[desc[k - 1]];
            let ok = (0..n).any(|g| rank[g] < mk && Self::divides(&self.exps[g], &l));
            ok.then(|| {
                let ml = (0..n)
                    .filter(|&g| Self::divides(&self.exps[g], &l))
                    .min_by_key(|&g| rank[g])
                    .unwrap();
                (k, ml)
            })
        })
    }

    pub fn lyubeznik(&self, rank: &[usize]) -> BTreeSet<Edge> {
        let n = self.n();
        let mut out = BTreeSet::new();
        for k in 1..=n {
            for s in subsets(n, k) {
                if let Some((_, ml)) = self.lyubeznik_pair(&s, rank) {
                    if s.contains(&ml) {
                        out.insert((s.clone(), Self::without(&s, ml)));
                    } else {
                        let mut up = s.clone();
                        up.push(ml);
                        up.sort_unstable();
                        out.insert((up, s));
                    }
                }
            }
        }
        out
    }
}

pub fn edge_indices(e: &morse_res::MatchingEdge) -> Edge {
    (e.source.indices().collect(), e.target.indices().collect())
}

/// Rank by Gaussian elimination over the rationals.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        let inv = BigRational::one() / &pivot[c];
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] * &inv;
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
