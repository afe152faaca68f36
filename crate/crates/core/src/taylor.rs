//! The Taylor complex: every subset of the generators is a cell labelled by
//! the lcm of its members.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{Monomial, MonomialIdeal};
use crate::error::{Error, Result};
use crate::morse::{DifferentialEntry, DifferentialMatrix};

/// Default cap on the number of generators; the lcm table has `2^n` rows.
pub const DEFAULT_MAX_GENERATORS: usize = 24;

/// A subset of generator indices, stored as a bitmask (bit `i` = generator
/// at position `i`).
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell(u32);

impl Cell {
    pub const EMPTY: Cell = Cell(0);

    pub const fn from_mask(mask: u32) -> Self {
        Cell(mask)
    }

    pub fn single(i: usize) -> Self {
        Cell(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Cell(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub const fn without(self, i: usize) -> Self {
        Cell(self.0 & !(1 << i))
    }

    pub const fn with(self, i: usize) -> Self {
        Cell(self.0 | (1 << i))
    }

    pub const fn is_subset_of(self, other: Cell) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> + Clone {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    /// Codimension-one faces `(removed index, facet)`, ascending by index.
    pub fn facets(self) -> impl Iterator<Item = (usize, Cell)> + Clone {
        self.indices().map(move |i| (i, self.without(i)))
    }

    /// Cells of cardinality `k` in `{0..n}`, ascending by mask.
    pub fn all_of_cardinality(n: usize, k: usize) -> Vec<Cell> {
        if k > n {
            return Vec::new();
        }
        if k == 0 {
            return vec![Cell::EMPTY];
        }
        let limit = 1u64 << n;
        let mut out = Vec::new();
        let mut v: u64 = (1 << k) - 1;
        while v < limit {
            out.push(Cell(v as u32));
            // Gosper's hack: next larger integer with the same popcount.
            let t = v | (v - 1);
            v = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
        }
        out
    }

    /// Renders the members as generator strings, e.g. `{y*z, x*y, w*x}`.
    pub fn display<'a>(self, ideal: &'a MonomialIdeal) -> CellDisplay<'a> {
        CellDisplay { cell: self, ideal }
    }

    pub fn names(self, ideal: &MonomialIdeal) -> Vec<String> {
        self.indices()
            .map(|i| ideal.generators()[i].to_string())
            .collect()
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

pub struct CellDisplay<'a> {
    cell: Cell,
    ideal: &'a MonomialIdeal,
}

impl fmt::Display for CellDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.cell.indices().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.ideal.generators()[i])?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone)]
enum LcmTable {
    /// Support masks; used when every generator is square-free and N <= 64.
    Squarefree(Vec<u64>),
    /// Row-major exponent vectors, `nvars` per cell.
    Dense { nvars: usize, exps: Vec<u32> },
}

/// The Taylor complex of an ideal with its full lcm table.
#[derive(Debug, Clone)]
pub struct TaylorComplex {
    ideal: MonomialIdeal,
    lcms: LcmTable,
}

pub fn build_taylor(ideal: &MonomialIdeal) -> Result<TaylorComplex> {
    TaylorComplex::with_cap(ideal, DEFAULT_MAX_GENERATORS)
}

impl TaylorComplex {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        build_taylor(ideal)
    }

    pub fn with_cap(ideal: &MonomialIdeal, cap: usize) -> Result<Self> {
        let n = ideal.len();
        if n > cap || n > 31 {
            return Err(Error::TooManyGenerators {
                n,
                cap: cap.min(31),
            });
        }
        let size = 1usize << n;
        let masks: Option<Vec<u64>> = ideal
            .generators()
            .iter()
            .map(Monomial::support_mask)
            .collect();
        let lcms = match masks {
            Some(gens) => {
                let mut table = vec![0u64; size];
                for c in 1..size {
                    let top = usize::BITS - 1 - c.leading_zeros();
                    table[c] = table[c & !(1 << top)] | gens[top as usize];
                }
                LcmTable::Squarefree(table)
            }
            None => {
                let nvars = ideal.context().len();
                let mut exps = vec![0u32; size * nvars];
                for c in 1..size {
                    let top = (usize::BITS - 1 - c.leading_zeros()) as usize;
                    let rest = c & !(1 << top);
                    let g = ideal.generators()[top].exponents();
                    for v in 0..nvars {
                        exps[c * nvars + v] = exps[rest * nvars + v].max(g[v]);
                    }
                }
                LcmTable::Dense { nvars, exps }
            }
        };
        Ok(Self {
            ideal: ideal.clone(),
            lcms,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn num_generators(&self) -> usize {
        self.ideal.len()
    }

    pub fn num_cells(&self) -> usize {
        1 << self.ideal.len()
    }

    pub fn full_cell(&self) -> Cell {
        Cell(((1u64 << self.num_generators()) - 1) as u32)
    }

    pub fn check_cell(&self, cell: Cell) -> Result<()> {
        if (cell.mask() as u64) >> self.num_generators() != 0 {
            Err(Error::InvalidCell(cell.mask()))
        } else {
            Ok(())
        }
    }

    /// The lcm of the members of `cell` (1 for the empty cell).
    pub fn lcm(&self, cell: Cell) -> Monomial {
        let ctx = self.ideal.context().clone();
        match &self.lcms {
            LcmTable::Squarefree(t) => {
                let mask = t[cell.mask() as usize];
                let exps = (0..ctx.len()).map(|i| ((mask >> i) & 1) as u32).collect();
                Monomial::from_raw(ctx, exps)
            }
            LcmTable::Dense { nvars, exps } => {
                let at = cell.mask() as usize * nvars;
                Monomial::from_raw(ctx, exps[at..at + nvars].into())
            }
        }
    }

    pub fn lcm_eq(&self, a: Cell, b: Cell) -> bool {
        match &self.lcms {
            LcmTable::Squarefree(t) => t[a.mask() as usize] == t[b.mask() as usize],
            LcmTable::Dense { nvars, exps } => {
                let (a, b) = (a.mask() as usize * nvars, b.mask() as usize * nvars);
                exps[a..a + nvars] == exps[b..b + nvars]
            }
        }
    }

    /// True iff lcm(a) divides lcm(b).
    pub fn lcm_divides(&self, a: Cell, b: Cell) -> bool {
        match &self.lcms {
            LcmTable::Squarefree(t) => t[a.mask() as usize] & !t[b.mask() as usize] == 0,
            LcmTable::Dense { nvars, exps } => {
                let (a, b) = (a.mask() as usize * nvars, b.mask() as usize * nvars);
                exps[a..a + nvars]
                    .iter()
                    .zip(&exps[b..b + nvars])
                    .all(|(x, y)| x <= y)
            }
        }
    }

    /// Assigns each cell an lcm-class id; cells share an id iff their lcms
    /// are equal. Returns `(class_of_cell, number_of_classes)`.
    pub fn lcm_classes(&self) -> (Vec<u32>, usize) {
        let mut ids = Vec::with_capacity(self.num_cells());
        match &self.lcms {
            LcmTable::Squarefree(t) => {
                let mut seen: HashMap<u64, u32> = HashMap::new();
                for &m in t {
                    let next = seen.len() as u32;
                    ids.push(*seen.entry(m).or_insert(next));
                }
                (ids, seen.len())
            }
            LcmTable::Dense { nvars, exps } => {
                let mut seen: HashMap<&[u32], u32> = HashMap::new();
                for row in exps.chunks(*nvars) {
                    let next = seen.len() as u32;
                    ids.push(*seen.entry(row).or_insert(next));
                }
                (ids, seen.len())
            }
        }
    }

    /// Bitmask of the bridges of `cell`: members `i` with
    /// lcm(cell \ i) = lcm(cell).
    pub fn bridge_mask(&self, cell: Cell) -> u32 {
        cell.facets()
            .filter(|&(_, f)| self.lcm_eq(f, cell))
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Ascending list of bridge indices.
    pub fn bridges(&self, cell: Cell) -> Vec<usize> {
        Cell(self.bridge_mask(cell)).indices().collect()
    }

    /// The bridge at the smallest position in the generator sequence.
    pub fn smallest_bridge(&self, cell: Cell) -> Option<usize> {
        let m = self.bridge_mask(cell);
        (m != 0).then(|| m.trailing_zeros() as usize)
    }

    pub fn taylor_differential(&self, degree: usize) -> Result<DifferentialMatrix> {
        taylor_differential(self, degree)
    }
}

/// `(-1)^j` where `j` is the rank of the removed index among the members of
/// `sigma` listed in ascending order.
pub fn incidence_sign(sigma: Cell, facet: Cell) -> Result<i64> {
    if !facet.is_subset_of(sigma) || facet.len() + 1 != sigma.len() {
        return Err(Error::NotAFacet {
            cell: format!("{sigma:?}"),
            target: format!("{facet:?}"),
        });
    }
    let removed = (sigma.mask() & !facet.mask()).trailing_zeros();
    Ok(sign_of_removal(sigma, removed as usize))
}

/// Sign of the facet `sigma \ i` for `i` in `sigma`.
pub(crate) fn sign_of_removal(sigma: Cell, i: usize) -> i64 {
    let below = (sigma.mask() & ((1u32 << i) - 1)).count_ones();
    if below.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Taylor differential from cardinality-`degree` cells (columns) to
/// cardinality-`degree - 1` cells (rows), both ascending by mask.
pub fn taylor_differential(tc: &TaylorComplex, degree: usize) -> Result<DifferentialMatrix> {
    let n = tc.num_generators();
    if degree == 0 || degree > n {
        return Err(Error::DegreeOutOfRange { degree, max: n });
    }
    let rows = Cell::all_of_cardinality(n, degree - 1);
    let cols = Cell::all_of_cardinality(n, degree);
    let row_index: HashMap<Cell, usize> = rows.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut entries = Vec::new();
    for (col, &sigma) in cols.iter().enumerate() {
        let big = tc.lcm(sigma);
        for (i, facet) in sigma.facets() {
            let factor = big
                .quotient(&tc.lcm(facet))?
                .expect("lcm of a face divides lcm of the cell");
            entries.push(DifferentialEntry {
                row: row_index[&facet],
                col,
                coefficient: sign_of_removal(sigma, i),
                factor,
            });
        }
    }
    entries.sort_by_key(|e| (e.col, e.row));
    Ok(DifferentialMatrix {
        rows: rows.len(),
        cols: cols.len(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ideal;

    fn running() -> TaylorComplex {
        let p = parse_ideal("vars: w x y z\ngens: y*z x*y w*x w*z").unwrap();
        build_taylor(&p.ideal).unwrap()
    }

    #[test]
    fn gosper_enumeration() {
        let cells = Cell::all_of_cardinality(4, 2);
        let masks: Vec<u32> = cells.iter().map(|c| c.mask()).collect();
        assert_eq!(masks, [3, 5, 6, 9, 10, 12]);
        assert_eq!(Cell::all_of_cardinality(3, 0), [Cell::EMPTY]);
        assert!(Cell::all_of_cardinality(3, 4).is_empty());
        for n in 0..8 {
            for k in 0..=n {
                let brute: Vec<Cell> = (0..1u32 << n)
                    .filter(|m| m.count_ones() as usize == k)
                    .map(Cell::from_mask)
                    .collect();
                assert_eq!(Cell::all_of_cardinality(n, k), brute);
            }
        }
    }

    #[test]
    fn lcm_table() {
        let tc = running();
        assert_eq!(tc.num_cells(), 16);
        assert_eq!(tc.lcm(tc.full_cell()).to_string(), "w*x*y*z");
        assert!(tc.lcm(Cell::EMPTY).is_one());

        let ctx = crate::algebra::VariableContext::new(["x", "y"]).unwrap();
        let zero = MonomialIdeal::zero(&ctx);
        let tc = build_taylor(&zero).unwrap();
        assert_eq!(tc.num_cells(), 1);
        assert!(tc.lcm(Cell::EMPTY).is_one());

        let p = parse_ideal("vars: x y\ngens: x^2*y").unwrap();
        let tc = build_taylor(&p.ideal).unwrap();
        assert_eq!(tc.num_cells(), 2);
        assert_eq!(tc.lcm(Cell::single(0)).to_string(), "x^2*y");
    }

    #[test]
    fn cap_is_enforced() {
        let p = parse_ideal("vars: a b c d\ngens: a b c d").unwrap();
        assert_eq!(
            TaylorComplex::with_cap(&p.ideal, 3).unwrap_err(),
            Error::TooManyGenerators { n: 4, cap: 3 }
        );
    }

    #[test]
    fn bridges_running_example() {
        let tc = running();
        assert_eq!(tc.bridges(tc.full_cell()), [0, 1, 2, 3]);
        assert_eq!(tc.bridges(Cell::from_indices([0, 1, 2])), [1]);
        assert_eq!(tc.smallest_bridge(tc.full_cell()), Some(0));
        assert_eq!(tc.smallest_bridge(Cell::from_indices([0, 2, 3])), Some(3));
        assert_eq!(tc.smallest_bridge(Cell::from_indices([0, 1])), None);
        for c in 0..16u32 {
            let cell = Cell::from_mask(c);
            if cell.len() <= 2 {
                assert!(tc.bridges(cell).is_empty());
            }
        }
    }

    #[test]
    fn signs() {
        let s = Cell::from_indices([1, 3, 4]);
        assert_eq!(incidence_sign(s, s.without(1)).unwrap(), 1);
        assert_eq!(incidence_sign(s, s.without(3)).unwrap(), -1);
        assert_eq!(incidence_sign(s, s.without(4)).unwrap(), 1);
        assert!(incidence_sign(s, Cell::from_indices([1])).is_err());
        assert!(incidence_sign(s, Cell::from_indices([0, 1])).is_err());
    }

    #[test]
    fn first_differential() {
        let tc = running();
        let d1 = taylor_differential(&tc, 1).unwrap();
        assert_eq!((d1.rows, d1.cols), (1, 4));
        let factors: Vec<(i64, String)> = d1
            .entries
            .iter()
            .map(|e| (e.coefficient, e.factor.to_string()))
            .collect();
        assert_eq!(
            factors,
            [
                (1, "y*z".into()),
                (1, "x*y".into()),
                (1, "w*x".into()),
                (1, "w*z".into())
            ]
        );
        assert!(taylor_differential(&tc, 0).is_err());
        assert!(taylor_differential(&tc, 5).is_err());

        let p = parse_ideal("vars: x y\ngens: x^3").unwrap();
        let tc = build_taylor(&p.ideal).unwrap();
        let d1 = taylor_differential(&tc, 1).unwrap();
        assert_eq!(d1.entries.len(), 1);
        assert_eq!(d1.entries[0].coefficient, 1);
        assert_eq!(d1.entries[0].factor.to_string(), "x^3");
    }

    #[test]
    fn dense_and_squarefree_tables_agree() {
        let p = parse_ideal("vars: a b c d\ngens: a*b b*c c*d a*d").unwrap();
        let sq = build_taylor(&p.ideal).unwrap();
        let q = parse_ideal("vars: a b c d\ngens: a*b^2 b^2*c c*d a*d").unwrap();
        let dense = build_taylor(&q.ideal).unwrap();
        assert!(matches!(sq.lcms, LcmTable::Squarefree(_)));
        assert!(matches!(dense.lcms, LcmTable::Dense { .. }));
        for a in 0..16 {
            for b in 0..16 {
                let (a, b) = (Cell::from_mask(a), Cell::from_mask(b));
                assert_eq!(sq.lcm_eq(a, b), dense.lcm_eq(a, b));
                assert_eq!(sq.lcm_divides(a, b), dense.lcm_divides(a, b));
            }
        }
    }
}
