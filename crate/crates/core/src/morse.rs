//! The Morse complex induced by a homogeneous acyclic matching.
//!
//! The differential of a critical cell `σ` is obtained by pushing each facet
//! of `σ` down to critical cells along gradient paths. A gradient path step
//! up a reversed matched edge `(c, τ)` weighs `-[c:τ]`, a step down from `c`
//! to another facet `τ'` weighs `[c:τ']`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::matching::{CellSet, MatchIndex, Matching, Partner};
use crate::taylor::{sign_of_removal, taylor_differential, Cell, TaylorComplex};

/// One non-zero entry `coefficient * factor` of a differential matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialEntry {
    pub row: usize,
    pub col: usize,
    pub coefficient: i64,
    pub factor: Monomial,
}

/// Sparse matrix of a differential; entries sorted by `(col, row)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<DifferentialEntry>,
}

/// A free chain complex on critical cells. `basis[i]` lists the cells of
/// cardinality `i` (ascending by mask); `differentials[i - 1]` maps degree
/// `i` to degree `i - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseComplex {
    pub basis: Vec<Vec<Cell>>,
    pub differentials: Vec<DifferentialMatrix>,
}

impl MorseComplex {
    /// The Taylor resolution itself.
    pub fn taylor(tc: &TaylorComplex) -> Result<Self> {
        let n = tc.num_generators();
        let basis = (0..=n).map(|k| Cell::all_of_cardinality(n, k)).collect();
        let differentials = (1..=n)
            .map(|i| taylor_differential(tc, i))
            .collect::<Result<_>>()?;
        Ok(Self {
            basis,
            differentials,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len().saturating_sub(1)
    }

    pub fn differential(&self, degree: usize) -> Option<&DifferentialMatrix> {
        degree
            .checked_sub(1)
            .and_then(|i| self.differentials.get(i))
    }
}

type Combination = Rc<Vec<(Cell, i64)>>;

struct Flow<'a> {
    tc: &'a TaylorComplex,
    index: MatchIndex,
    family: Option<&'a CellSet>,
    memo: HashMap<Cell, Combination>,
    active: HashSet<Cell>,
}

impl<'a> Flow<'a> {
    fn new(tc: &'a TaylorComplex, matching: &Matching, family: Option<&'a CellSet>) -> Self {
        Self {
            tc,
            index: matching.index(),
            family,
            memo: HashMap::new(),
            active: HashSet::new(),
        }
    }

    fn in_family(&self, cell: Cell) -> bool {
        self.family.is_none_or(|f| f.contains(cell))
    }

    fn push(&mut self, tau: Cell) -> Result<Combination> {
        if let Some(done) = self.memo.get(&tau) {
            return Ok(done.clone());
        }
        let result = match self.index.partner(tau) {
            None => vec![(tau, 1)],
            Some(Partner::Down(_)) => Vec::new(),
            Some(Partner::Up(c)) => {
                if !self.active.insert(tau) {
                    return Err(Error::NotAcyclic(tau.display(self.tc.ideal()).to_string()));
                }
                let removed = (c.mask() & !tau.mask()).trailing_zeros() as usize;
                let up = -sign_of_removal(c, removed);
                let mut acc: BTreeMap<Cell, i64> = BTreeMap::new();
                for (i, facet) in c.facets() {
                    if facet == tau || !self.in_family(facet) {
                        continue;
                    }
                    let weight = up * sign_of_removal(c, i);
                    for &(target, w) in self.push(facet)?.iter() {
                        let slot = acc.entry(target).or_insert(0);
                        *slot = w
                            .checked_mul(weight)
                            .and_then(|x| slot.checked_add(x))
                            .ok_or(Error::Overflow)?;
                    }
                }
                self.active.remove(&tau);
                acc.into_iter().filter(|&(_, w)| w != 0).collect()
            }
        };
        let result = Rc::new(result);
        self.memo.insert(tau, result.clone());
        Ok(result)
    }
}

/// Integer combination of critical cells reached from `tau` by gradient
/// paths, sorted by cell.
pub fn transfer(tc: &TaylorComplex, matching: &Matching, tau: Cell) -> Result<Vec<(Cell, i64)>> {
    transfer_in(tc, matching, None, tau)
}

pub fn transfer_in(
    tc: &TaylorComplex,
    matching: &Matching,
    family: Option<&CellSet>,
    tau: Cell,
) -> Result<Vec<(Cell, i64)>> {
    tc.check_cell(tau)?;
    let mut flow = Flow::new(tc, matching, family);
    Ok(flow.push(tau)?.as_ref().clone())
}

/// Morse complex of `matching` on the full Taylor complex.
pub fn morse_differential(tc: &TaylorComplex, matching: &Matching) -> Result<MorseComplex> {
    morse_differential_in(tc, matching, None)
}

/// Morse complex of `matching` on the subcomplex `family` (a simplicial
/// complex of cells with the restricted Taylor differential), or on the
/// whole Taylor complex when `family` is `None`.
pub fn morse_differential_in(
    tc: &TaylorComplex,
    matching: &Matching,
    family: Option<&CellSet>,
) -> Result<MorseComplex> {
    let n = tc.num_generators();
    let mut flow = Flow::new(tc, matching, family);
    let basis: Vec<Vec<Cell>> = (0..=n)
        .map(|k| {
            Cell::all_of_cardinality(n, k)
                .into_iter()
                .filter(|&c| flow.in_family(c) && flow.index.is_critical(c))
                .collect()
        })
        .collect();
    let positions: HashMap<Cell, usize> = basis
        .iter()
        .flat_map(|level| level.iter().enumerate().map(|(i, &c)| (c, i)))
        .collect();

    let mut differentials = Vec::with_capacity(n);
    for degree in 1..=n {
        let mut entries = Vec::new();
        for (col, &sigma) in basis[degree].iter().enumerate() {
            let mut acc: BTreeMap<Cell, i64> = BTreeMap::new();
            for (i, facet) in sigma.facets() {
                if !flow.in_family(facet) {
                    continue;
                }
                let sign = sign_of_removal(sigma, i);
                for &(target, w) in flow.push(facet)?.iter() {
                    let slot = acc.entry(target).or_insert(0);
                    *slot = slot.checked_add(sign * w).ok_or(Error::Overflow)?;
                }
            }
            let big = tc.lcm(sigma);
            for (target, coefficient) in acc {
                if coefficient == 0 {
                    continue;
                }
                let factor = big.quotient(&tc.lcm(target))?.ok_or_else(|| {
                    Error::InvalidMatching(format!(
                        "gradient path from a facet of {sigma:?} reaches {target:?} whose lcm does not divide"
                    ))
                })?;
                entries.push(DifferentialEntry {
                    row: positions[&target],
                    col,
                    coefficient,
                    factor,
                });
            }
        }
        differentials.push(DifferentialMatrix {
            rows: basis[degree - 1].len(),
            cols: basis[degree].len(),
            entries,
        });
    }
    Ok(MorseComplex {
        basis,
        differentials,
    })
}

/// True iff every composite of consecutive differentials vanishes when
/// entries are expanded as `coefficient * monomial`.
pub fn verify_complex(mc: &MorseComplex) -> bool {
    for pair in mc.differentials.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        if lower.cols != upper.rows {
            return false;
        }
        let mut by_col: HashMap<usize, Vec<&DifferentialEntry>> = HashMap::new();
        for e in &lower.entries {
            by_col.entry(e.col).or_default().push(e);
        }
        let mut acc: HashMap<(usize, usize, Vec<u32>), i128> = HashMap::new();
        for u in &upper.entries {
            for l in by_col.get(&u.row).into_iter().flatten() {
                let Ok(m) = u.factor.mul(&l.factor) else {
                    return false;
                };
                *acc.entry((l.row, u.col, m.exponents().to_vec()))
                    .or_insert(0) += u.coefficient as i128 * l.coefficient as i128;
            }
        }
        if acc.values().any(|&v| v != 0) {
            return false;
        }
    }
    true
}

/// Basis sizes per homological degree `0..=n`.
pub fn ranks(mc: &MorseComplex) -> Vec<usize> {
    mc.basis.iter().map(Vec::len).collect()
}

/// True iff no differential entry is a unit (monomial factor 1).
pub fn is_minimal(mc: &MorseComplex) -> bool {
    mc.differentials
        .iter()
        .flat_map(|d| &d.entries)
        .all(|e| !e.factor.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ideal;
    use crate::matching::{bm_matching, lyubeznik_matching, MatchingEdge};
    use crate::taylor::build_taylor;

    fn tc(text: &str) -> TaylorComplex {
        build_taylor(&parse_ideal(text).unwrap().ideal).unwrap()
    }

    fn running() -> TaylorComplex {
        tc("vars: w x y z\ngens: y*z x*y w*x w*z")
    }

    /// Explicit enumeration of gradient paths, independent of the memoised
    /// recursion: every path is walked to its end and its weight summed.
    fn enumerate_paths(tc: &TaylorComplex, m: &Matching, tau: Cell) -> BTreeMap<Cell, i64> {
        let up: HashMap<Cell, Cell> = m.edges().iter().map(|e| (e.target, e.source)).collect();
        let down: HashSet<Cell> = m.edges().iter().map(|e| e.source).collect();
        let mut out = BTreeMap::new();
        let mut stack = vec![(tau, 1i64)];
        while let Some((cell, w)) = stack.pop() {
            if down.contains(&cell) {
                continue;
            }
            let Some(&c) = up.get(&cell) else {
                *out.entry(cell).or_insert(0) += w;
                continue;
            };
            let s_up = crate::taylor::incidence_sign(c, cell).unwrap();
            for (_, f) in c.facets() {
                if f != cell {
                    let s_down = crate::taylor::incidence_sign(c, f).unwrap();
                    stack.push((f, -w * s_up * s_down));
                }
            }
        }
        let _ = tc;
        out.retain(|_, w| *w != 0);
        out
    }

    #[test]
    fn transfer_agrees_with_path_enumeration() {
        let tc = running();
        for m in [
            bm_matching(&tc, None).unwrap(),
            lyubeznik_matching(&tc).unwrap(),
        ] {
            for c in 0..16 {
                let tau = Cell::from_mask(c);
                let fast: BTreeMap<Cell, i64> =
                    transfer(&tc, &m, tau).unwrap().into_iter().collect();
                assert_eq!(fast, enumerate_paths(&tc, &m, tau), "cell {tau:?}");
            }
        }
    }

    #[test]
    fn transfer_basic_cases() {
        let tc = running();
        let bm = bm_matching(&tc, None).unwrap();
        let crit = Cell::from_indices([0, 1]);
        assert_eq!(transfer(&tc, &bm, crit).unwrap(), [(crit, 1)]);
        let source = Cell::from_indices([0, 1, 2]);
        assert!(transfer(&tc, &bm, source).unwrap().is_empty());
        // {yz, wx} is matched up to {yz, xy, wx}; its other facets {yz, xy}
        // and {xy, wx} are both critical.
        let target = Cell::from_indices([0, 2]);
        let got = transfer(&tc, &bm, target).unwrap();
        let cells: Vec<Cell> = got.iter().map(|&(c, _)| c).collect();
        assert_eq!(
            cells,
            [Cell::from_indices([0, 1]), Cell::from_indices([1, 2])]
        );
        assert!(got.iter().all(|&(_, w)| w.abs() == 1));
    }

    #[test]
    fn cyclic_matching_is_rejected() {
        let tc = tc("vars: a b c\ngens: a b c");
        let m = Matching::new(vec![
            MatchingEdge::new(Cell::from_indices([0, 1]), Cell::from_indices([0])).unwrap(),
            MatchingEdge::new(Cell::from_indices([1, 2]), Cell::from_indices([1])).unwrap(),
            MatchingEdge::new(Cell::from_indices([0, 2]), Cell::from_indices([2])).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            transfer(&tc, &m, Cell::single(0)),
            Err(Error::NotAcyclic(_))
        ));
    }

    #[test]
    fn empty_matching_reproduces_taylor() {
        for text in [
            "vars: w x y z\ngens: y*z x*y w*x w*z",
            "vars: x y z\ngens: x^2*y y^2*z x*z^3 x*y*z",
        ] {
            let tc = tc(text);
            let morse = morse_differential(&tc, &Matching::empty()).unwrap();
            assert_eq!(morse, MorseComplex::taylor(&tc).unwrap());
            assert!(verify_complex(&morse));
        }
    }

    #[test]
    fn running_example_complexes() {
        let tc = running();
        let bm = morse_differential(&tc, &bm_matching(&tc, None).unwrap()).unwrap();
        assert_eq!(ranks(&bm), [1, 4, 4, 1, 0]);
        assert!(verify_complex(&bm));
        assert!(is_minimal(&bm));

        let lyu = morse_differential(&tc, &lyubeznik_matching(&tc).unwrap()).unwrap();
        assert_eq!(ranks(&lyu), [1, 4, 5, 2, 0]);
        assert!(verify_complex(&lyu));
        assert!(!is_minimal(&lyu));
    }

    #[test]
    fn taylor_of_triangle_is_not_minimal() {
        let t = MorseComplex::taylor(&tc("vars: x y z\ngens: x*y y*z x*z")).unwrap();
        assert!(verify_complex(&t));
        assert!(!is_minimal(&t));
    }

    #[test]
    fn flipped_sign_breaks_the_complex() {
        let tc = running();
        let mut t = MorseComplex::taylor(&tc).unwrap();
        t.differentials[1].entries[0].coefficient *= -1;
        assert!(!verify_complex(&t));
    }
}
