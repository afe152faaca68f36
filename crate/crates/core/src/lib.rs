//! Morse resolutions of monomial ideals.
//!
//! Starting from the Taylor complex of a monomial ideal, an acyclic matching
//! on its cells collapses it to a smaller free resolution whose basis is the
//! set of critical cells. This crate builds Barile-Macchia, Lyubeznik and
//! trimmed Lyubeznik matchings, computes the resulting Morse differentials,
//! decides minimality, and compares ranks against exact Betti numbers.
//!
//! ```
//! use morse_res::{parse_ideal, build_taylor, bm_matching, morse_differential, ranks, is_minimal};
//!
//! let ideal = parse_ideal("vars: w x y z\ngens: y*z x*y w*x w*z").unwrap().ideal;
//! let tc = build_taylor(&ideal).unwrap();
//! let m = bm_matching(&tc, None).unwrap();
//! let mc = morse_differential(&tc, &m).unwrap();
//! assert_eq!(ranks(&mc), [1, 4, 4, 1, 0]);
//! assert!(is_minimal(&mc));
//! ```

pub mod algebra;
pub mod cli;
pub mod error;
pub mod families;
pub mod homology;
pub mod matching;
pub mod morse;
pub mod render;
pub mod search;
pub mod taylor;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;

pub use algebra::{parse_ideal, Monomial, MonomialIdeal, ParsedIdeal, VariableContext};
pub use error::{Error, Result};
pub use families::{cycle_edge_ideal, edge_ideal, random_squarefree_ideal, SimpleGraph};
pub use homology::{betti_numbers, exact_rank, homology_ranks, BettiTable, IntegerMatrix};
pub use matching::{
    bm_matching, bm_matching_under, construct, critical_cells, is_bridge_friendly,
    is_bridge_friendly_under, lyubeznik_family, lyubeznik_matching, possible_edges,
    possible_edges_with_positions, trimmed_matching, validate_matching, CellSet, CriticalCells,
    Matching, MatchingEdge, MatchingKind, MatchingReport, Order, PossibleEdge,
};
pub use morse::{
    is_minimal, morse_differential, morse_differential_in, ranks, transfer, verify_complex,
    DifferentialEntry, DifferentialMatrix, MorseComplex,
};
pub use search::{
    bridge_friendly_list, bridge_minimal_search, enumerate_orders, FriendlyOrder, MinimalSearch,
    SearchMode, SearchOptions,
};
pub use taylor::{build_taylor, incidence_sign, taylor_differential, Cell, TaylorComplex};
