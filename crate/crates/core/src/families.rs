//! Test-corpus ideals: edge ideals of graphs and seeded random square-free
//! ideals.

use std::collections::BTreeSet;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::algebra::{Monomial, MonomialIdeal, VariableContext};
use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: usize,
    /// `(u, v)` with `u < v`, in insertion order.
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", u + 1)));
            }
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) outside 1..={vertices}",
                    u + 1,
                    v + 1
                )));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    u + 1,
                    v + 1
                )));
            }
            list.push(e);
        }
        Ok(Self {
            vertices,
            edges: list,
        })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// Edges `(u, v)` with `u < v`, in the order given.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Parses `V E` followed by `E` lines `u v` with 1-based vertices.
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize)> {
            let nums: Vec<&str> = l.split_whitespace().collect();
            let bad = || Error::Parse {
                line,
                message: format!("expected two integers, got `{l}`"),
            };
            if nums.len() != 2 {
                return Err(bad());
            }
            Ok((
                nums[0].parse().map_err(|_| bad())?,
                nums[1].parse().map_err(|_| bad())?,
            ))
        };
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "empty graph file".into(),
        })?;
        let (v, e) = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(e);
        for (line, l) in lines {
            let (a, b) = parse_pair(line, l)?;
            if a == 0 || b == 0 {
                return Err(Error::Parse {
                    line,
                    message: "vertices are 1-based".into(),
                });
            }
            edges.push((a - 1, b - 1));
        }
        if edges.len() != e {
            return Err(Error::InvalidGraph(format!(
                "header announces {e} edges, found {}",
                edges.len()
            )));
        }
        Self::new(v, edges)
    }
}

/// Edge ideal: one generator `x_u x_v` per edge, in edge order.
/// Variables default to `x1..xV`.
pub fn edge_ideal(graph: &SimpleGraph, names: Option<Vec<String>>) -> Result<MonomialIdeal> {
    let ctx = match names {
        Some(names) => {
            if names.len() != graph.vertices() {
                return Err(Error::InvalidGraph(format!(
                    "{} names for {} vertices",
                    names.len(),
                    graph.vertices()
                )));
            }
            VariableContext::new(names)?
        }
        None => VariableContext::indexed("x", graph.vertices())?,
    };
    let gens = graph
        .edges()
        .map(|(u, v)| Monomial::from_support(&ctx, (1 << u) | (1 << v)))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(&ctx, gens)
}

/// `(x1x2, x2x3, ..., x_{n-1}x_n, x1x_n)` in that order.
pub fn cycle_edge_ideal(n: usize) -> Result<MonomialIdeal> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let ctx = VariableContext::indexed("x", n)?;
    let gens = (0..n - 1)
        .map(|i| (1u64 << i) | (1 << (i + 1)))
        .chain(std::iter::once(1 | (1 << (n - 1))))
        .map(|mask| Monomial::from_support(&ctx, mask))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(&ctx, gens)
}

pub const MAX_RANDOM_VARIABLES: usize = 12;
pub const MAX_RANDOM_GENERATORS: usize = 10;
const RANDOM_ATTEMPTS: usize = 1000;

/// Seeded random square-free ideal in variables `x1..xN`.
///
/// The generator is SplitMix64 with its 64-bit state initialised to `seed`
/// (no seed scrambling). Each draw takes one output `r` for the support size
/// `2 + r % (N - 1)`, then picks that many distinct variables by a partial
/// Fisher-Yates shuffle of `[0, N)`, drawing `r % (N - i)` for step `i`. A
/// draw divisible by a kept generator is discarded; otherwise it replaces
/// every kept generator it divides. Drawing stops once `n` generators are
/// kept or after 1000 draws.
pub fn random_squarefree_ideal(seed: u64, nvars: usize, ngens: usize) -> Result<MonomialIdeal> {
    if !(2..=MAX_RANDOM_VARIABLES).contains(&nvars) {
        return Err(Error::Invalid(format!(
            "random ideals need 2..={MAX_RANDOM_VARIABLES} variables, got {nvars}"
        )));
    }
    if !(1..=MAX_RANDOM_GENERATORS).contains(&ngens) {
        return Err(Error::Invalid(format!(
            "random ideals need 1..={MAX_RANDOM_GENERATORS} generators, got {ngens}"
        )));
    }
    let ctx = VariableContext::indexed("x", nvars)?;
    let mut rng = SplitMix64::from_seed(seed.to_le_bytes());
    let mut kept: Vec<u64> = Vec::new();
    for _ in 0..RANDOM_ATTEMPTS {
        if kept.len() == ngens {
            break;
        }
        let size = 2 + (rng.next_u64() % (nvars as u64 - 1)) as usize;
        let mut pool: Vec<usize> = (0..nvars).collect();
        let mut mask = 0u64;
        for i in 0..size {
            let j = i + (rng.next_u64() % (nvars - i) as u64) as usize;
            pool.swap(i, j);
            mask |= 1 << pool[i];
        }
        if kept.iter().any(|&g| g & !mask == 0) {
            continue;
        }
        kept.retain(|&g| mask & !g != 0);
        kept.push(mask);
    }
    let gens = kept
        .into_iter()
        .map(|m| Monomial::from_support(&ctx, m))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(&ctx, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(i: &MonomialIdeal) -> Vec<String> {
        i.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn cycles() {
        assert_eq!(
            names(&cycle_edge_ideal(3).unwrap()),
            ["x1*x2", "x2*x3", "x1*x3"]
        );
        assert_eq!(
            names(&cycle_edge_ideal(9).unwrap()),
            ["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x5*x6", "x6*x7", "x7*x8", "x8*x9", "x1*x9"]
        );
        assert!(cycle_edge_ideal(2).is_err());
    }

    #[test]
    fn cycle_is_rotation_invariant() {
        for n in 3..=10 {
            let ideal = cycle_edge_ideal(n).unwrap();
            assert_eq!(ideal.len(), n);
            let masks: BTreeSet<u64> = ideal
                .generators()
                .iter()
                .map(|g| g.support_mask().unwrap())
                .collect();
            assert!(masks.iter().all(|m| m.count_ones() == 2));
            let rotated: BTreeSet<u64> = masks
                .iter()
                .map(|&m| {
                    (0..n)
                        .filter(|i| m >> i & 1 == 1)
                        .fold(0, |r, i| r | 1 << ((i + 1) % n))
                })
                .collect();
            assert_eq!(masks, rotated);
        }
    }

    #[test]
    fn four_cycle_matches_running_example_up_to_renaming() {
        // w -> x1, x -> x2, y -> x3, z -> x4: running generators become
        // x3x4, x2x3, x1x2, x1x4, the same set as the 4-cycle.
        let c4: BTreeSet<String> = names(&cycle_edge_ideal(4).unwrap()).into_iter().collect();
        let renamed: BTreeSet<String> = ["x3*x4", "x2*x3", "x1*x2", "x1*x4"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(c4, renamed);
    }

    #[test]
    fn edge_ideals() {
        let path = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(names(&edge_ideal(&path, None).unwrap()), ["x1*x2", "x2*x3"]);

        let c5 = edge_ideal(&SimpleGraph::cycle(5).unwrap(), None).unwrap();
        let a: BTreeSet<String> = names(&c5).into_iter().collect();
        let b: BTreeSet<String> = names(&cycle_edge_ideal(5).unwrap()).into_iter().collect();
        assert_eq!(a, b);

        let empty = SimpleGraph::new(3, []).unwrap();
        assert!(edge_ideal(&empty, None).unwrap().is_empty());

        let named = edge_ideal(&path, Some(vec!["a".into(), "b".into(), "c".into()])).unwrap();
        assert_eq!(names(&named), ["a*b", "b*c"]);
    }

    #[test]
    fn graph_validation_and_parsing() {
        assert!(SimpleGraph::new(3, [(0, 0)]).is_err());
        assert!(SimpleGraph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::new(3, [(0, 3)]).is_err());

        let g = SimpleGraph::parse("# square\n4 4\n1 2\n2 3\n3 4\n4 1\n").unwrap();
        assert_eq!(g, SimpleGraph::cycle(4).unwrap());
        assert!(SimpleGraph::parse("3 2\n1 2\n").is_err());
        assert!(SimpleGraph::parse("3 1\n0 2\n").is_err());
        assert!(SimpleGraph::parse("3 1\n1 x\n").is_err());
    }

    #[test]
    fn random_is_reproducible_and_minimal() {
        let a = random_squarefree_ideal(42, 6, 6).unwrap();
        let b = random_squarefree_ideal(42, 6, 6).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
        for seed in 0..50 {
            let i = random_squarefree_ideal(seed, 5, 5).unwrap();
            assert!(MonomialIdeal::new(i.context(), i.generators().to_vec()).is_ok());
            assert!(i
                .generators()
                .iter()
                .all(|g| g.is_squarefree() && g.degree() >= 2));
        }
    }

    #[test]
    fn random_pinned_output() {
        // SplitMix64 from state 0 starts with 0xe220a8397b1dcdaf; frozen so
        // the corpus stays identical across platforms.
        let mut rng = SplitMix64::from_seed(0u64.to_le_bytes());
        assert_eq!(rng.next_u64(), 0xe220a8397b1dcdaf);
        let i = random_squarefree_ideal(7, 6, 4).unwrap();
        assert_eq!(
            i.to_file_string(),
            random_squarefree_ideal(7, 6, 4).unwrap().to_file_string()
        );
    }

    #[test]
    fn two_variables_give_at_most_two_generators() {
        for seed in 0..20 {
            let i = random_squarefree_ideal(seed, 2, 3).unwrap();
            assert!(!i.is_empty() && i.len() <= 2);
        }
    }

    #[test]
    fn random_guards() {
        assert!(random_squarefree_ideal(0, 13, 3).is_err());
        assert!(random_squarefree_ideal(0, 1, 3).is_err());
        assert!(random_squarefree_ideal(0, 6, 11).is_err());
    }
}
