//! Exact Betti numbers of `R/I` over a field of characteristic zero.
//!
//! Tensoring the Taylor resolution with the residue field kills every entry
//! whose monomial factor is not 1, so the tensored complex splits into one
//! small block per lcm. Ranks are computed by fraction-free elimination.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Monomial;
use crate::error::Result;
use crate::morse::MorseComplex;
use crate::taylor::{sign_of_removal, Cell, TaylorComplex};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }
}

/// Rank over the rationals by Bareiss elimination. Every intermediate entry
/// is a minor of the input, so the divisions are exact.
pub fn exact_rank(m: &IntegerMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..cols).map(|c| BigInt::from(m.get(r, c))).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let v = (&row[j] * pivot - &lead * &pivot_row[j]) / &prev;
                row[j] = v;
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Total and multigraded Betti numbers of `R/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    /// `totals[i]` for `i = 0..=n`.
    pub totals: Vec<usize>,
    /// Non-zero rows `(multidegree, per-degree counts)`, sorted by total
    /// degree and then exponent vector.
    pub multigraded: Vec<(Monomial, Vec<usize>)>,
}

impl BettiTable {
    /// Totals with trailing zeros removed, e.g. `1 4 4 1`.
    pub fn trimmed_totals(&self) -> &[usize] {
        let end = self
            .totals
            .iter()
            .rposition(|&b| b != 0)
            .map_or(0, |i| i + 1);
        &self.totals[..end]
    }
}

/// Homology dimensions from chain dimensions and boundary ranks.
fn homology_from_ranks(dims: &[usize], boundary_ranks: &[usize]) -> Vec<usize> {
    // boundary_ranks[i] = rank of the map from degree i to i - 1 (index 0 unused).
    (0..dims.len())
        .map(|i| {
            let out = boundary_ranks.get(i).copied().unwrap_or(0);
            let inc = boundary_ranks.get(i + 1).copied().unwrap_or(0);
            dims[i] - out - inc
        })
        .collect()
}

pub fn betti_numbers(tc: &TaylorComplex) -> Result<BettiTable> {
    let n = tc.num_generators();
    let (class_of, count) = tc.lcm_classes();
    let mut members: Vec<Vec<Cell>> = vec![Vec::new(); count];
    for (c, &k) in class_of.iter().enumerate() {
        members[k as usize].push(Cell::from_mask(c as u32));
    }

    let mut totals = vec![0usize; n + 1];
    let mut multigraded = Vec::new();
    for cells in &members {
        let mut by_degree: Vec<Vec<Cell>> = vec![Vec::new(); n + 1];
        for &c in cells {
            by_degree[c.len()].push(c);
        }
        let dims: Vec<usize> = by_degree.iter().map(Vec::len).collect();
        let mut boundary_ranks = vec![0usize; n + 2];
        for i in 1..=n {
            let (lower, upper) = (&by_degree[i - 1], &by_degree[i]);
            if lower.is_empty() || upper.is_empty() {
                continue;
            }
            let row_of: HashMap<Cell, usize> =
                lower.iter().enumerate().map(|(r, &c)| (c, r)).collect();
            let mut m = IntegerMatrix::zeros(lower.len(), upper.len());
            for (col, &sigma) in upper.iter().enumerate() {
                for (j, facet) in sigma.facets() {
                    if let Some(&row) = row_of.get(&facet) {
                        m.set(row, col, sign_of_removal(sigma, j));
                    }
                }
            }
            boundary_ranks[i] = exact_rank(&m);
        }
        let betti = homology_from_ranks(&dims, &boundary_ranks);
        if betti.iter().any(|&b| b != 0) {
            for (t, b) in totals.iter_mut().zip(&betti) {
                *t += b;
            }
            multigraded.push((tc.lcm(cells[0]), betti));
        }
    }
    multigraded
        .sort_by(|a, b| (a.0.degree(), a.0.exponents()).cmp(&(b.0.degree(), b.0.exponents())));
    Ok(BettiTable {
        totals,
        multigraded,
    })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Homology dimensions of `mc` tensored with the residue field: only
/// entries with monomial factor 1 survive. The surviving matrix is split
/// into connected blocks before elimination.
pub fn homology_ranks(mc: &MorseComplex) -> Vec<usize> {
    let dims: Vec<usize> = mc.basis.iter().map(Vec::len).collect();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total: usize = dims.iter().sum();
    let mut parent: Vec<usize> = (0..total).collect();

    let unit = |degree: usize| {
        mc.differential(degree)
            .into_iter()
            .flat_map(|d| &d.entries)
            .filter(|e| e.factor.is_one() && e.coefficient != 0)
    };
    for degree in 1..dims.len() {
        for e in unit(degree) {
            let a = find(&mut parent, offsets[degree] + e.col);
            let b = find(&mut parent, offsets[degree - 1] + e.row);
            parent[a] = b;
        }
    }

    let mut boundary_ranks = vec![0usize; dims.len() + 1];
    for degree in 1..dims.len() {
        // Group surviving entries by block.
        let mut blocks: HashMap<usize, Vec<(usize, usize, i64)>> = HashMap::new();
        for e in unit(degree) {
            let root = find(&mut parent, offsets[degree] + e.col);
            blocks
                .entry(root)
                .or_default()
                .push((e.row, e.col, e.coefficient));
        }
        for entries in blocks.values() {
            let mut rows: Vec<usize> = entries.iter().map(|e| e.0).collect();
            let mut cols: Vec<usize> = entries.iter().map(|e| e.1).collect();
            rows.sort_unstable();
            rows.dedup();
            cols.sort_unstable();
            cols.dedup();
            let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
            for &(r, c, v) in entries {
                let r = rows.binary_search(&r).expect("row collected above");
                let c = cols.binary_search(&c).expect("col collected above");
                m.set(r, c, m.get(r, c) + v);
            }
            boundary_ranks[degree] += exact_rank(&m);
        }
    }
    homology_from_ranks(&dims, &boundary_ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ideal;
    use crate::families::cycle_edge_ideal;
    use crate::taylor::build_taylor;
    use num_rational::BigRational;

    /// Plain Gaussian elimination over the rationals.
    fn rational_rank(m: &IntegerMatrix) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..m.rows())
            .map(|r| {
                (0..m.cols())
                    .map(|c| BigRational::from_integer(BigInt::from(m.get(r, c))))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..m.rows()).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let f = &row[col] / &pivot[col];
                    for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                        *x -= &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(exact_rank(&IntegerMatrix::identity(3)), 3);
        assert_eq!(exact_rank(&IntegerMatrix::zeros(3, 4)), 0);
        assert_eq!(
            exact_rank(&IntegerMatrix::from_rows(&[vec![1, 1], vec![1, 1]])),
            1
        );
        assert_eq!(exact_rank(&IntegerMatrix::zeros(0, 0)), 0);
        assert_eq!(
            exact_rank(&IntegerMatrix::from_rows(&[
                vec![0, 2, 4],
                vec![0, 1, 2],
                vec![3, 0, 1]
            ])),
            2
        );
    }

    #[test]
    fn rank_growth_does_not_overflow() {
        // Hilbert-like integer matrix with large entries; full rank.
        let rows: Vec<Vec<i64>> = (0..12)
            .map(|i| {
                (0..12)
                    .map(|j| ((i + 1) as i64).pow(j as u32).min(i64::MAX / 4))
                    .collect()
            })
            .collect();
        let m = IntegerMatrix::from_rows(&rows);
        assert_eq!(exact_rank(&m), rational_rank(&m));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bareiss_matches_rational_elimination(
                rows in 1usize..=8,
                cols in 1usize..=8,
                seed in prop::collection::vec(-3i64..=3, 64),
            ) {
                let data: Vec<Vec<i64>> = (0..rows)
                    .map(|r| (0..cols).map(|c| seed[r * 8 + c]).collect())
                    .collect();
                let m = IntegerMatrix::from_rows(&data);
                prop_assert_eq!(exact_rank(&m), rational_rank(&m));
            }
        }
    }

    #[test]
    fn betti_examples() {
        let tc = build_taylor(
            &parse_ideal("vars: w x y z\ngens: y*z x*y w*x w*z")
                .unwrap()
                .ideal,
        )
        .unwrap();
        let b = betti_numbers(&tc).unwrap();
        assert_eq!(b.totals, [1, 4, 4, 1, 0]);
        assert_eq!(b.trimmed_totals(), [1, 4, 4, 1]);
        for i in 0..b.totals.len() {
            let s: usize = b.multigraded.iter().map(|(_, v)| v[i]).sum();
            assert_eq!(s, b.totals[i]);
        }
        assert!(b.multigraded[0].0.is_one());

        let tc = build_taylor(&parse_ideal("vars: x y\ngens: x^2*y").unwrap().ideal).unwrap();
        assert_eq!(betti_numbers(&tc).unwrap().totals, [1, 1]);

        let tc =
            build_taylor(&parse_ideal("vars: x y z\ngens: x*y y*z x*z").unwrap().ideal).unwrap();
        assert_eq!(betti_numbers(&tc).unwrap().totals, [1, 3, 2, 0]);
    }

    #[test]
    fn nine_cycle_betti() {
        let tc = build_taylor(&cycle_edge_ideal(9).unwrap()).unwrap();
        let b = betti_numbers(&tc).unwrap();
        assert_eq!(b.totals, [1, 9, 27, 39, 27, 9, 2, 0, 0, 0]);
    }

    #[test]
    fn homology_of_taylor_equals_betti() {
        let tc = build_taylor(
            &parse_ideal("vars: w x y z\ngens: y*z x*y w*x w*z")
                .unwrap()
                .ideal,
        )
        .unwrap();
        let t = MorseComplex::taylor(&tc).unwrap();
        assert_eq!(homology_ranks(&t), [1, 4, 4, 1, 0]);
    }
}
