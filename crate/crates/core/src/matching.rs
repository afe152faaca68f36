//! Barile-Macchia, Lyubeznik and trimmed Lyubeznik matchings on the Taylor
//! complex, the matching validators, and critical cells.

use std::collections::{HashMap, HashSet};

use crate::algebra::check_permutation;
use crate::error::{Error, Result};
use crate::taylor::{Cell, TaylorComplex};

/// A total order on the generators, stored as the rank of each generator
/// index (rank 0 is the smallest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    rank: Vec<usize>,
}

impl Order {
    pub fn identity(n: usize) -> Self {
        Self {
            rank: (0..n).collect(),
        }
    }

    /// `sequence[p]` is the generator index at position `p`, smallest first.
    pub fn from_sequence(sequence: &[usize]) -> Result<Self> {
        check_permutation(sequence, sequence.len())?;
        let mut rank = vec![0; sequence.len()];
        for (pos, &g) in sequence.iter().enumerate() {
            rank[g] = pos;
        }
        Ok(Self { rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, generator: usize) -> usize {
        self.rank[generator]
    }

    /// Generator indices listed smallest-first.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.rank.len()];
        for (g, &r) in self.rank.iter().enumerate() {
            seq[r] = g;
        }
        seq
    }

    /// Member of `mask` with minimum rank.
    pub fn min_of(&self, mask: u32) -> Option<usize> {
        Cell::from_mask(mask)
            .indices()
            .min_by_key(|&i| self.rank[i])
    }
}

/// A set of cells of a complex on `n` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSet {
    bits: Vec<u64>,
}

impl CellSet {
    pub fn empty(n: usize) -> Self {
        Self {
            bits: vec![0; (1usize << n).div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for c in 0..1u32 << n {
            s.insert(Cell::from_mask(c));
        }
        s
    }

    pub fn contains(&self, cell: Cell) -> bool {
        let c = cell.mask() as usize;
        self.bits
            .get(c / 64)
            .is_some_and(|w| w >> (c % 64) & 1 == 1)
    }

    pub fn insert(&mut self, cell: Cell) {
        let c = cell.mask() as usize;
        self.bits[c / 64] |= 1 << (c % 64);
    }

    pub fn remove(&mut self, cell: Cell) {
        let c = cell.mask() as usize;
        self.bits[c / 64] &= !(1 << (c % 64));
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Closed under taking faces.
    pub fn is_simplicial(&self) -> bool {
        self.iter()
            .all(|c| c.facets().all(|(_, f)| self.contains(f)))
    }

    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let i = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(Cell::from_mask((w * 64 + i) as u32))
            })
        })
    }
}

fn in_family(family: Option<&CellSet>, cell: Cell) -> bool {
    family.is_none_or(|f| f.contains(cell))
}

/// A directed edge `(source, target)` with `target` a facet of `source`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchingEdge {
    pub source: Cell,
    pub target: Cell,
}

impl MatchingEdge {
    pub fn new(source: Cell, target: Cell) -> Result<Self> {
        if !target.is_subset_of(source) || target.len() + 1 != source.len() {
            return Err(Error::NotAFacet {
                cell: format!("{source:?}"),
                target: format!("{target:?}"),
            });
        }
        Ok(Self { source, target })
    }

    /// The generator removed from the source.
    pub fn removed(&self) -> usize {
        (self.source.mask() & !self.target.mask()).trailing_zeros() as usize
    }
}

fn canonical_key(e: &MatchingEdge) -> (std::cmp::Reverse<usize>, Cell, Cell) {
    (std::cmp::Reverse(e.source.len()), e.source, e.target)
}

/// Vertex-disjoint set of edges, kept sorted by descending source
/// cardinality, then ascending source mask.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    edges: Vec<MatchingEdge>,
}

impl Matching {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut edges: Vec<MatchingEdge>) -> Result<Self> {
        edges.sort_by_key(canonical_key);
        edges.dedup();
        let mut seen = HashSet::new();
        for e in &edges {
            for c in [e.source, e.target] {
                if !seen.insert(c) {
                    return Err(Error::InvalidMatching(format!(
                        "cell {c:?} appears in more than one edge"
                    )));
                }
            }
        }
        Ok(Self { edges })
    }

    pub fn edges(&self) -> &[MatchingEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Disjoint union with another matching.
    pub fn union(&self, other: &Matching) -> Result<Matching> {
        Matching::new(self.edges.iter().chain(&other.edges).copied().collect())
    }

    pub fn index(&self) -> MatchIndex {
        let mut partner = HashMap::with_capacity(self.edges.len() * 2);
        for e in &self.edges {
            partner.insert(e.source, Partner::Down(e.target));
            partner.insert(e.target, Partner::Up(e.source));
        }
        MatchIndex { partner }
    }
}

/// How a cell is matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partner {
    /// The cell is the source; its partner is the facet below.
    Down(Cell),
    /// The cell is the target; its partner is the cell above.
    Up(Cell),
}

#[derive(Debug, Clone)]
pub struct MatchIndex {
    partner: HashMap<Cell, Partner>,
}

impl MatchIndex {
    pub fn partner(&self, cell: Cell) -> Option<Partner> {
        self.partner.get(&cell).copied()
    }

    pub fn is_critical(&self, cell: Cell) -> bool {
        !self.partner.contains_key(&cell)
    }
}

/// A candidate edge found by the first pass of the Barile-Macchia algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PossibleEdge {
    /// Position of the smallest bridge in the order used.
    pub sbridge_position: usize,
    /// Generator index of the smallest bridge.
    pub sbridge: usize,
    pub source: Cell,
    pub target: Cell,
}

impl PossibleEdge {
    pub fn edge(&self) -> MatchingEdge {
        MatchingEdge {
            source: self.source,
            target: self.target,
        }
    }
}

/// Possible edges under the ideal's own order over all Taylor cells.
pub fn possible_edges_with_positions(
    tc: &TaylorComplex,
    family: Option<&CellSet>,
) -> Result<Vec<PossibleEdge>> {
    possible_edges_under(tc, &Order::identity(tc.num_generators()), family)
}

pub fn possible_edges(tc: &TaylorComplex, family: Option<&CellSet>) -> Result<Vec<MatchingEdge>> {
    Ok(possible_edges_with_positions(tc, family)?
        .iter()
        .map(PossibleEdge::edge)
        .collect())
}

/// First pass: walk cells of cardinality >= 3 from the largest
/// cardinality down, removing each picked cell's target from the pool.
/// Within a level the visiting order cannot matter, since picks only remove
/// cells one level lower.
pub fn possible_edges_under(
    tc: &TaylorComplex,
    order: &Order,
    family: Option<&CellSet>,
) -> Result<Vec<PossibleEdge>> {
    possible_edges_visiting(tc, order, family, |cells| cells)
}

/// As [`possible_edges_under`], visiting each cardinality level in the
/// order produced by `arrange`. The result does not depend on `arrange`.
pub fn possible_edges_visiting(
    tc: &TaylorComplex,
    order: &Order,
    family: Option<&CellSet>,
    mut arrange: impl FnMut(Vec<Cell>) -> Vec<Cell>,
) -> Result<Vec<PossibleEdge>> {
    let n = tc.num_generators();
    if order.len() != n {
        return Err(Error::InvalidOrder(format!(
            "order has {} entries for {n} generators",
            order.len()
        )));
    }
    let mut removed = CellSet::empty(n);
    let mut out = Vec::new();
    for card in (3..=n).rev() {
        let mut level = Vec::new();
        for cell in arrange(Cell::all_of_cardinality(n, card)) {
            if !in_family(family, cell) || removed.contains(cell) {
                continue;
            }
            let Some(b) = order.min_of(tc.bridge_mask(cell)) else {
                continue;
            };
            let target = cell.without(b);
            if !in_family(family, target) {
                return Err(Error::FamilyNotClosed(cell.display(tc.ideal()).to_string()));
            }
            removed.insert(target);
            level.push(PossibleEdge {
                sbridge_position: order.rank(b),
                sbridge: b,
                source: cell,
                target,
            });
        }
        level.sort_by_key(|e| e.source);
        out.extend(level);
    }
    Ok(out)
}

/// Second pass: among possible edges sharing a target keep only the one whose
/// smallest bridge is smallest in the order.
pub fn resolve_possible_edges(possible: &[PossibleEdge]) -> Result<Matching> {
    let mut best: HashMap<Cell, &PossibleEdge> = HashMap::new();
    for e in possible {
        match best.get(&e.target) {
            Some(kept) if kept.sbridge_position == e.sbridge_position => {
                return Err(Error::InvalidMatching(format!(
                    "two possible edges into {:?} share smallest-bridge position {}",
                    e.target, e.sbridge_position
                )));
            }
            Some(kept) if kept.sbridge_position < e.sbridge_position => {}
            _ => {
                best.insert(e.target, e);
            }
        }
    }
    Matching::new(best.values().map(|e| e.edge()).collect())
}

fn ensure_valid(
    tc: &TaylorComplex,
    m: &Matching,
    family: Option<&CellSet>,
    what: &str,
) -> Result<()> {
    let report = validate_matching(tc, m.edges(), family);
    if report.all() {
        Ok(())
    } else {
        Err(Error::InvalidMatching(format!(
            "{what} failed validation: {report:?}"
        )))
    }
}

/// The Barile-Macchia matching under the ideal's own order.
pub fn bm_matching(tc: &TaylorComplex, family: Option<&CellSet>) -> Result<Matching> {
    bm_matching_under(tc, &Order::identity(tc.num_generators()), family)
}

pub fn bm_matching_under(
    tc: &TaylorComplex,
    order: &Order,
    family: Option<&CellSet>,
) -> Result<Matching> {
    let possible = possible_edges_under(tc, order, family)?;
    let m = resolve_possible_edges(&possible)?;
    ensure_valid(tc, &m, family, "Barile-Macchia matching")?;
    Ok(m)
}

/// True iff no possible edge is discarded by the second pass.
pub fn is_bridge_friendly(tc: &TaylorComplex) -> Result<bool> {
    is_bridge_friendly_under(tc, &Order::identity(tc.num_generators()))
}

pub fn is_bridge_friendly_under(tc: &TaylorComplex, order: &Order) -> Result<bool> {
    let possible = possible_edges_under(tc, order, None)?;
    let m = resolve_possible_edges(&possible)?;
    Ok(m.len() == possible.len())
}

/// Members of `cell` listed from largest to smallest in `order`.
fn descending(cell: Cell, order: &Order) -> Vec<usize> {
    let mut members: Vec<usize> = cell.indices().collect();
    members.sort_by_key(|&i| std::cmp::Reverse(order.rank(i)));
    members
}

/// `v_L(σ)`: the largest `k` such that some generator smaller than the
/// `k`-th largest member of `σ` divides the lcm of the `k` largest members.
/// `None` stands for minus infinity.
pub fn lyu_value(tc: &TaylorComplex, cell: Cell) -> Option<usize> {
    lyu_value_under(tc, &Order::identity(tc.num_generators()), cell)
}

pub fn lyu_value_under(tc: &TaylorComplex, order: &Order, cell: Cell) -> Option<usize> {
    let members = descending(cell, order);
    let n = tc.num_generators();
    let mut prefix = Cell::EMPTY;
    let prefixes: Vec<Cell> = members
        .iter()
        .map(|&m| {
            prefix = prefix.with(m);
            prefix
        })
        .collect();
    (1..=members.len()).rev().find(|&k| {
        let threshold = order.rank(members[k - 1]);
        (0..n)
            .any(|g| order.rank(g) < threshold && tc.lcm_divides(Cell::single(g), prefixes[k - 1]))
    })
}

/// `m_L(σ)`: the smallest generator dividing the lcm of the first `v_L(σ)`
/// members (largest first).
pub fn lyu_min(tc: &TaylorComplex, cell: Cell) -> Result<usize> {
    lyu_min_under(tc, &Order::identity(tc.num_generators()), cell)
}

pub fn lyu_min_under(tc: &TaylorComplex, order: &Order, cell: Cell) -> Result<usize> {
    let k = lyu_value_under(tc, order, cell)
        .ok_or_else(|| Error::LyubeznikUndefined(cell.display(tc.ideal()).to_string()))?;
    let prefix = Cell::from_indices(descending(cell, order).into_iter().take(k));
    (0..tc.num_generators())
        .filter(|&g| tc.lcm_divides(Cell::single(g), prefix))
        .min_by_key(|&g| order.rank(g))
        .ok_or_else(|| Error::LyubeznikUndefined(cell.display(tc.ideal()).to_string()))
}

/// The Lyubeznik matching under the ideal's own order.
pub fn lyubeznik_matching(tc: &TaylorComplex) -> Result<Matching> {
    lyubeznik_matching_under(tc, &Order::identity(tc.num_generators()))
}

pub fn lyubeznik_matching_under(tc: &TaylorComplex, order: &Order) -> Result<Matching> {
    let mut edges = HashSet::new();
    for c in 1..tc.num_cells() as u32 {
        let cell = Cell::from_mask(c);
        if lyu_value_under(tc, order, cell).is_none() {
            continue;
        }
        let m = lyu_min_under(tc, order, cell)?;
        edges.insert(MatchingEdge {
            source: cell.with(m),
            target: cell.without(m),
        });
    }
    let m = Matching::new(edges.into_iter().collect())?;
    ensure_valid(tc, &m, None, "Lyubeznik matching")?;
    Ok(m)
}

/// Cells left unmatched by `matching` (the empty cell included), restricted
/// to `family` when given.
pub fn critical_set(tc: &TaylorComplex, matching: &Matching, family: Option<&CellSet>) -> CellSet {
    let mut set = match family {
        Some(f) => f.clone(),
        None => CellSet::full(tc.num_generators()),
    };
    for e in matching.edges() {
        set.remove(e.source);
        set.remove(e.target);
    }
    set
}

/// The Lyubeznik matching together with its critical cells, which form the
/// simplicial complex supporting the Lyubeznik resolution.
pub fn lyubeznik_family(tc: &TaylorComplex) -> Result<(Matching, CellSet)> {
    let lyu = lyubeznik_matching(tc)?;
    let family = critical_set(tc, &lyu, None);
    Ok((lyu, family))
}

/// Barile-Macchia algorithm on the Lyubeznik-critical cells (computed with
/// the ideal's own order), with smallest bridges taken in `order2`.
pub fn trimmed_matching(tc: &TaylorComplex, order2: &Order) -> Result<Matching> {
    let (_, family) = lyubeznik_family(tc)?;
    trimmed_matching_in(tc, order2, &family)
}

pub fn trimmed_matching_in(
    tc: &TaylorComplex,
    order2: &Order,
    family: &CellSet,
) -> Result<Matching> {
    let possible = possible_edges_under(tc, order2, Some(family))?;
    let m = resolve_possible_edges(&possible)?;
    ensure_valid(tc, &m, Some(family), "trimmed matching")?;
    Ok(m)
}

/// The matchings this crate constructs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatchingKind {
    BarileMacchia,
    Lyubeznik,
    /// Barile-Macchia on the Lyubeznik-critical cells.
    Trimmed,
    /// No edges: the Taylor complex itself.
    Empty,
}

/// Builds a matching of `kind` under the ideal's order, together with the
/// cell family it lives on (`None` = all Taylor cells). `order2` is the
/// second-pass order for [`MatchingKind::Trimmed`] and defaults to the
/// ideal's order.
pub fn construct(
    tc: &TaylorComplex,
    kind: MatchingKind,
    order2: Option<&Order>,
) -> Result<(Matching, Option<CellSet>)> {
    Ok(match kind {
        MatchingKind::BarileMacchia => (bm_matching(tc, None)?, None),
        MatchingKind::Lyubeznik => (lyubeznik_matching(tc)?, None),
        MatchingKind::Empty => (Matching::empty(), None),
        MatchingKind::Trimmed => {
            let (_, family) = lyubeznik_family(tc)?;
            let identity = Order::identity(tc.num_generators());
            let m = trimmed_matching_in(tc, order2.unwrap_or(&identity), &family)?;
            (m, Some(family))
        }
    })
}

/// Critical cells grouped by cardinality from `n` down to 1; the empty cell
/// is always critical in degree 0 and not listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalCells {
    pub groups: Vec<Vec<Cell>>,
}

impl CriticalCells {
    pub fn of_cardinality(&self, c: usize) -> &[Cell] {
        let n = self.groups.len();
        if c == 0 || c > n {
            &[]
        } else {
            &self.groups[n - c]
        }
    }

    /// Counts per homological degree `0..=n`, with 1 in degree 0.
    pub fn ranks(&self) -> Vec<usize> {
        let n = self.groups.len();
        std::iter::once(1)
            .chain((1..=n).map(|c| self.of_cardinality(c).len()))
            .collect()
    }
}

pub fn critical_cells(
    tc: &TaylorComplex,
    matching: &Matching,
    family: Option<&CellSet>,
) -> CriticalCells {
    let n = tc.num_generators();
    let set = critical_set(tc, matching, family);
    let groups = (1..=n)
        .rev()
        .map(|c| {
            Cell::all_of_cardinality(n, c)
                .into_iter()
                .filter(|&cell| set.contains(cell))
                .collect()
        })
        .collect();
    CriticalCells { groups }
}

/// Outcome of [`validate_matching`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchingReport {
    pub is_matching: bool,
    pub is_homogeneous: bool,
    pub is_acyclic: bool,
}

impl MatchingReport {
    pub fn all(&self) -> bool {
        self.is_matching && self.is_homogeneous && self.is_acyclic
    }
}

/// Checks vertex-disjointness, homogeneity and acyclicity of `edges` in the
/// face graph of the Taylor complex (or of the subcomplex `family`).
pub fn validate_matching(
    tc: &TaylorComplex,
    edges: &[MatchingEdge],
    family: Option<&CellSet>,
) -> MatchingReport {
    let mut seen = HashSet::new();
    let mut is_matching = true;
    for e in edges {
        let proper = e.target.is_subset_of(e.source)
            && e.target.len() + 1 == e.source.len()
            && tc.check_cell(e.source).is_ok()
            && in_family(family, e.source)
            && in_family(family, e.target);
        if !proper || !seen.insert(e.source) || !seen.insert(e.target) {
            is_matching = false;
        }
    }
    let is_homogeneous = edges.iter().all(|e| tc.lcm_eq(e.source, e.target));
    let is_acyclic = if is_matching {
        acyclic_alternating(edges, family)
    } else {
        acyclic_general(tc, edges, family)
    };
    MatchingReport {
        is_matching,
        is_homogeneous,
        is_acyclic,
    }
}

/// For a genuine matching every directed cycle in the reversed graph
/// alternates between two adjacent levels (two up-steps can never follow
/// each other), so it suffices to look for cycles among matched targets:
/// `τ -> τ'` when `τ'` is another facet of the cell `τ` is matched to and
/// `τ'` is itself a matched target.
fn acyclic_alternating(edges: &[MatchingEdge], family: Option<&CellSet>) -> bool {
    let up: HashMap<Cell, Cell> = edges.iter().map(|e| (e.target, e.source)).collect();
    let succ = |t: Cell| -> Vec<Cell> {
        let c = up[&t];
        c.facets()
            .map(|(_, f)| f)
            .filter(|&f| f != t && in_family(family, f) && up.contains_key(&f))
            .collect()
    };
    let nodes: Vec<Cell> = edges.iter().map(|e| e.target).collect();
    has_no_cycle(&nodes, succ)
}

fn acyclic_general(tc: &TaylorComplex, edges: &[MatchingEdge], family: Option<&CellSet>) -> bool {
    let matched: HashSet<(Cell, Cell)> = edges.iter().map(|e| (e.source, e.target)).collect();
    let mut ups: HashMap<Cell, Vec<Cell>> = HashMap::new();
    for e in edges {
        ups.entry(e.target).or_default().push(e.source);
    }
    let succ = |c: Cell| -> Vec<Cell> {
        let mut out: Vec<Cell> = c
            .facets()
            .map(|(_, f)| f)
            .filter(|&f| in_family(family, f) && !matched.contains(&(c, f)))
            .collect();
        if let Some(u) = ups.get(&c) {
            out.extend(u);
        }
        out
    };
    let nodes: Vec<Cell> = (0..tc.num_cells() as u32)
        .map(Cell::from_mask)
        .filter(|&c| in_family(family, c))
        .collect();
    has_no_cycle(&nodes, succ)
}

/// Iterative three-colour depth-first search.
fn has_no_cycle(nodes: &[Cell], succ: impl Fn(Cell) -> Vec<Cell>) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Colour {
        Grey,
        Black,
    }
    let mut colour: HashMap<Cell, Colour> = HashMap::new();
    for &root in nodes {
        if colour.contains_key(&root) {
            continue;
        }
        colour.insert(root, Colour::Grey);
        let mut stack = vec![(root, succ(root), 0usize)];
        while let Some((node, next, i)) = stack.last_mut() {
            if *i == next.len() {
                colour.insert(*node, Colour::Black);
                stack.pop();
                continue;
            }
            let child = next[*i];
            *i += 1;
            match colour.get(&child) {
                Some(Colour::Grey) => return false,
                Some(Colour::Black) => {}
                None => {
                    colour.insert(child, Colour::Grey);
                    let s = succ(child);
                    stack.push((child, s, 0));
                }
            }
        }
    }
    true
}
