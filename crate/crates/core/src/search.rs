//! Searches over all `n!` total orders of the generators.
//!
//! Orders are enumerated lexicographically as permutations of the original
//! generator sequence (`perm[p]` = original index placed at position `p`).
//! Work is split into contiguous chunks of that enumeration; results are
//! merged by chunk index so the output never depends on the worker count.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::algebra::MonomialIdeal;
use crate::error::{Error, Result};
use crate::homology::betti_numbers;
use crate::matching::{bm_matching_under, Matching, MatchingEdge, Order};
use crate::taylor::{build_taylor, Cell, TaylorComplex};

/// Default cap on `n` for `n!` searches.
pub const SEARCH_GUARD: usize = 10;
/// `20!` is the largest factorial that fits in 64 bits.
const HARD_LIMIT: usize = 20;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Next permutation in lexicographic order, in place. Returns `false` after
/// the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("p[i] qualifies");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The permutation at lexicographic `index` (factorial number system).
pub fn nth_permutation(n: usize, mut index: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k);
        let q = (index / f) as usize;
        index %= f;
        out.push(pool.remove(q));
    }
    out
}

/// Lexicographic stream of the permutations with indices in
/// `start..start + len`.
pub fn enumerate_orders_range(n: usize, start: u64, len: u64) -> impl Iterator<Item = Vec<usize>> {
    let mut current = (start < factorial(n)).then(|| nth_permutation(n, start));
    let mut left = len.min(factorial(n).saturating_sub(start));
    std::iter::from_fn(move || {
        if left == 0 {
            return None;
        }
        left -= 1;
        let out = current.clone()?;
        if let Some(c) = current.as_mut() {
            if !next_permutation(c) {
                current = None;
            }
        }
        Some(out)
    })
}

/// All permutations of `0..n` in lexicographic order.
pub fn enumerate_orders(n: usize) -> impl Iterator<Item = Vec<usize>> {
    enumerate_orders_range(n, 0, factorial(n))
}

/// Splits `0..n!` into at most `chunks` contiguous `(start, len)` ranges.
pub fn order_chunks(n: usize, chunks: usize) -> Vec<(u64, u64)> {
    let total = factorial(n);
    let k = (chunks.max(1) as u64).min(total);
    (0..k)
        .map(|i| {
            let lo = total * i / k;
            let hi = total * (i + 1) / k;
            (lo, hi - lo)
        })
        .collect()
}

#[derive(Clone, Copy)]
pub struct SearchOptions<'a> {
    pub workers: usize,
    pub force: bool,
    /// Called with `(tried, total)` as chunks finish.
    pub progress: Option<&'a (dyn Fn(u64, u64) + Sync)>,
}

impl Default for SearchOptions<'_> {
    fn default() -> Self {
        Self {
            workers: 1,
            force: false,
            progress: None,
        }
    }
}

impl std::fmt::Debug for SearchOptions<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SearchOptions")
            .field("workers", &self.workers)
            .field("force", &self.force)
            .finish_non_exhaustive()
    }
}

fn check_guard(n: usize, force: bool) -> Result<()> {
    if n > HARD_LIMIT || (n > SEARCH_GUARD && !force) {
        let guard = if force { HARD_LIMIT } else { SEARCH_GUARD };
        return Err(Error::SearchGuard { n, guard });
    }
    Ok(())
}

/// Barile-Macchia statistics for one order, computed without materialising
/// the matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderStats {
    pub possible_edges: usize,
    pub matched_edges: usize,
    /// Ranks of the Barile-Macchia resolution, degrees `0..=n`.
    pub ranks: Vec<usize>,
}

impl OrderStats {
    pub fn bridge_friendly(&self) -> bool {
        self.possible_edges == self.matched_edges
    }
}

/// Per-ideal tables shared by every order: bridge masks (bridges do not
/// depend on the order) and the cells of cardinality >= 3 by level.
pub struct PreparedSearch {
    n: usize,
    bridges: Vec<u32>,
    levels: Vec<Vec<u32>>,
    binomials: Vec<usize>,
}

/// Reusable per-worker buffers; stamps avoid clearing between orders.
pub struct Scratch {
    epoch: u32,
    removed: Vec<u32>,
    best_stamp: Vec<u32>,
    best_rank: Vec<u8>,
}

impl PreparedSearch {
    pub fn new(tc: &TaylorComplex) -> Self {
        let n = tc.num_generators();
        let bridges = (0..tc.num_cells() as u32)
            .map(|c| tc.bridge_mask(Cell::from_mask(c)))
            .collect();
        let levels = (3..=n)
            .rev()
            .map(|k| {
                Cell::all_of_cardinality(n, k)
                    .into_iter()
                    .map(Cell::mask)
                    .collect()
            })
            .collect();
        let binomials = (0..=n)
            .map(|k| Cell::all_of_cardinality(n, k).len())
            .collect();
        Self {
            n,
            bridges,
            levels,
            binomials,
        }
    }

    pub fn scratch(&self) -> Scratch {
        let size = 1usize << self.n;
        Scratch {
            epoch: 0,
            removed: vec![0; size],
            best_stamp: vec![0; size],
            best_rank: vec![0; size],
        }
    }

    /// Evaluates the order whose smallest-first sequence is `perm`.
    pub fn evaluate(&self, perm: &[usize], s: &mut Scratch) -> OrderStats {
        let n = self.n;
        let mut rank = [0u8; 32];
        for (pos, &g) in perm.iter().enumerate() {
            rank[g] = pos as u8;
        }
        s.epoch = s.epoch.wrapping_add(1);
        if s.epoch == 0 {
            s.removed.fill(0);
            s.best_stamp.fill(0);
            s.epoch = 1;
        }
        let epoch = s.epoch;
        let mut possible = 0;
        let mut targets_by_card = vec![0usize; n + 1];
        for level in &self.levels {
            for &cell in level {
                if s.removed[cell as usize] == epoch {
                    continue;
                }
                let mut m = self.bridges[cell as usize];
                if m == 0 {
                    continue;
                }
                let mut b = m.trailing_zeros();
                let mut br = rank[b as usize];
                m &= m - 1;
                while m != 0 {
                    let i = m.trailing_zeros();
                    if rank[i as usize] < br {
                        b = i;
                        br = rank[i as usize];
                    }
                    m &= m - 1;
                }
                let target = (cell & !(1 << b)) as usize;
                s.removed[target] = epoch;
                possible += 1;
                if s.best_stamp[target] == epoch {
                    if br < s.best_rank[target] {
                        s.best_rank[target] = br;
                    }
                } else {
                    s.best_stamp[target] = epoch;
                    s.best_rank[target] = br;
                    targets_by_card[target.count_ones() as usize] += 1;
                }
            }
        }
        let matched: usize = targets_by_card.iter().sum();
        let ranks = (0..=n)
            .map(|c| {
                let below = targets_by_card[c];
                let above = if c > 0 { targets_by_card[c - 1] } else { 0 };
                self.binomials[c] - below - above
            })
            .collect();
        OrderStats {
            possible_edges: possible,
            matched_edges: matched,
            ranks,
        }
    }
}

/// Runs `visit` over every chunk in parallel. `visit` returns the chunk's
/// result and whether the remaining chunks after it may be skipped.
fn run_chunks<T: Send>(
    n: usize,
    opts: &SearchOptions<'_>,
    visit: impl Fn(u64, u64, &AtomicU64) -> T + Sync,
) -> Vec<T> {
    let workers = opts.workers.max(1);
    let chunks = order_chunks(n, workers * 16);
    let total = factorial(n);
    let next = AtomicUsize::new(0);
    let tried = AtomicU64::new(0);
    let stop_at = AtomicU64::new(u64::MAX);
    let results: Mutex<Vec<Option<T>>> = Mutex::new((0..chunks.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers.min(chunks.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(start, len)) = chunks.get(i) else {
                    break;
                };
                if start >= stop_at.load(Ordering::Acquire) {
                    continue;
                }
                let r = visit(start, len, &stop_at);
                results.lock().expect("worker panicked")[i] = Some(r);
                let done = tried.fetch_add(len, Ordering::Relaxed) + len;
                if let Some(p) = opts.progress {
                    p(done.min(total), total);
                }
            });
        }
    });
    results
        .into_inner()
        .expect("worker panicked")
        .into_iter()
        .flatten()
        .collect()
}

/// A bridge-friendly order and its Barile-Macchia matching, with cells
/// expressed in positions of the reordered ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendlyOrder {
    pub order: Vec<usize>,
    pub matching: Matching,
}

fn remap(cell: Cell, order: &Order) -> Cell {
    Cell::from_indices(cell.indices().map(|i| order.rank(i)))
}

/// Re-expresses a matching computed on the original indices in the
/// positions of the reordered ideal.
pub fn matching_in_reordered(m: &Matching, order: &Order) -> Result<Matching> {
    let edges = m
        .edges()
        .iter()
        .map(|e| MatchingEdge::new(remap(e.source, order), remap(e.target, order)))
        .collect::<Result<_>>()?;
    Matching::new(edges)
}

/// Every order under which the ideal is bridge-friendly, in lexicographic
/// order of permutations.
pub fn bridge_friendly_list(
    ideal: &MonomialIdeal,
    opts: &SearchOptions<'_>,
) -> Result<Vec<FriendlyOrder>> {
    let n = ideal.len();
    check_guard(n, opts.force)?;
    let tc = build_taylor(ideal)?;
    let prepared = PreparedSearch::new(&tc);
    let hits: Vec<Vec<Vec<usize>>> = run_chunks(n, opts, |start, len, _| {
        let mut s = prepared.scratch();
        enumerate_orders_range(n, start, len)
            .filter(|p| prepared.evaluate(p, &mut s).bridge_friendly())
            .collect()
    });
    hits.into_iter()
        .flatten()
        .map(|perm| {
            let order = Order::from_sequence(&perm)?;
            let m = bm_matching_under(&tc, &order, None)?;
            Ok(FriendlyOrder {
                matching: matching_in_reordered(&m, &order)?,
                order: perm,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    FirstHit,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalSearch {
    /// Betti totals, degrees `0..=n`.
    pub betti: Vec<usize>,
    /// Lexicographically least order whose Barile-Macchia ranks equal the
    /// Betti numbers, with those ranks.
    pub witness: Option<Vec<usize>>,
    /// Orders evaluated (all `n!` unless first-hit stopped early).
    pub tried: u64,
    /// Number of minimal orders found (every one in exhaustive mode).
    pub hits: u64,
    /// Every evaluated order had ranks >= Betti numbers in each degree.
    pub ranks_dominate_betti: bool,
}

/// Looks for an order whose Barile-Macchia resolution is minimal.
pub fn bridge_minimal_search(
    ideal: &MonomialIdeal,
    mode: SearchMode,
    opts: &SearchOptions<'_>,
) -> Result<MinimalSearch> {
    let n = ideal.len();
    check_guard(n, opts.force)?;
    let tc = build_taylor(ideal)?;
    let betti = betti_numbers(&tc)?.totals;
    let prepared = PreparedSearch::new(&tc);

    struct Chunk {
        first: Option<(u64, Vec<usize>)>,
        hits: u64,
        tried: u64,
        dominated: bool,
    }
    let chunks = run_chunks(n, opts, |start, len, stop_at| {
        let mut s = prepared.scratch();
        let mut out = Chunk {
            first: None,
            hits: 0,
            tried: 0,
            dominated: true,
        };
        for (k, perm) in enumerate_orders_range(n, start, len).enumerate() {
            let index = start + k as u64;
            if mode == SearchMode::FirstHit && index >= stop_at.load(Ordering::Acquire) {
                break;
            }
            let stats = prepared.evaluate(&perm, &mut s);
            out.tried += 1;
            out.dominated &= stats.ranks.iter().zip(&betti).all(|(r, b)| r >= b);
            if stats.ranks == betti {
                out.hits += 1;
                if out.first.is_none() {
                    out.first = Some((index, perm));
                }
                if mode == SearchMode::FirstHit {
                    stop_at.fetch_min(index, Ordering::AcqRel);
                    break;
                }
            }
        }
        out
    });

    let witness = chunks
        .iter()
        .filter_map(|c| c.first.as_ref())
        .min_by_key(|(i, _)| *i)
        .map(|(_, p)| p.clone());
    let (tried, hits, dominated) = match mode {
        SearchMode::Exhaustive => (
            chunks.iter().map(|c| c.tried).sum(),
            chunks.iter().map(|c| c.hits).sum(),
            chunks.iter().all(|c| c.dominated),
        ),
        // Workers may over-search past the witness; report the canonical
        // prefix only.
        SearchMode::FirstHit => match &witness {
            Some(_) => (
                chunks
                    .iter()
                    .filter_map(|c| c.first.as_ref().map(|f| f.0))
                    .min()
                    .map_or(0, |i| i + 1),
                1,
                chunks.iter().all(|c| c.dominated),
            ),
            None => (
                chunks.iter().map(|c| c.tried).sum(),
                0,
                chunks.iter().all(|c| c.dominated),
            ),
        },
    };
    Ok(MinimalSearch {
        betti,
        witness,
        tried,
        hits,
        ranks_dominate_betti: dominated,
    })
}
