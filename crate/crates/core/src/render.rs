//! Plain-text and JSON renderings of results.
//!
//! Plain output writes cells as `{g1, g2}` with generators in ascending
//! position order and puts one list item per line. JSON output is compact
//! and follows the serde types below. All output is byte-stable for fixed
//! inputs and ends with a newline.

use serde::{Deserialize, Serialize};

use crate::algebra::MonomialIdeal;
use crate::homology::BettiTable;
use crate::matching::{CriticalCells, Matching, PossibleEdge};
use crate::morse::MorseComplex;
use crate::search::{FriendlyOrder, MinimalSearch};
use crate::taylor::Cell;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Plain,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PossibleEdgeJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub sbridge_position: usize,
    pub sbridge: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub totals: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multigraded: Option<std::collections::BTreeMap<String, Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FriendlyJson {
    pub order: Vec<String>,
    pub matching: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialJson {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, coefficient, monomial)`.
    pub entries: Vec<(usize, usize, i64, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub basis: Vec<Vec<Vec<String>>>,
    pub differentials: Vec<DifferentialJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub order: Vec<String>,
    pub ranks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalSearchJson {
    pub betti: Vec<usize>,
    pub tried: u64,
    pub hits: u64,
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub gens: Vec<String>,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("render types always serialize");
    s.push('\n');
    s
}

fn lines(items: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&item);
        out.push('\n');
    }
    if out.is_empty() {
        out.push_str("{}\n");
    }
    out
}

fn cell_text(ideal: &MonomialIdeal, cell: Cell) -> String {
    cell.display(ideal).to_string()
}

fn edge_text(ideal: &MonomialIdeal, source: Cell, target: Cell) -> String {
    format!(
        "({}, {})",
        cell_text(ideal, source),
        cell_text(ideal, target)
    )
}

pub fn edge_json(ideal: &MonomialIdeal, source: Cell, target: Cell) -> EdgeJson {
    EdgeJson {
        source: source.names(ideal),
        target: target.names(ideal),
    }
}

fn order_names(ideal: &MonomialIdeal, order: &[usize]) -> Vec<String> {
    order
        .iter()
        .map(|&g| ideal.generators()[g].to_string())
        .collect()
}

pub fn matching(ideal: &MonomialIdeal, m: &Matching, format: Format) -> String {
    match format {
        Format::Plain => lines(
            m.edges()
                .iter()
                .map(|e| edge_text(ideal, e.source, e.target)),
        ),
        Format::Json => json(
            &m.edges()
                .iter()
                .map(|e| edge_json(ideal, e.source, e.target))
                .collect::<Vec<_>>(),
        ),
    }
}

/// Lines `(position, source, target)` in processing order.
pub fn possible_edges(ideal: &MonomialIdeal, edges: &[PossibleEdge], format: Format) -> String {
    match format {
        Format::Plain => lines(edges.iter().map(|e| {
            format!(
                "({}, {}, {})",
                e.sbridge_position,
                cell_text(ideal, e.source),
                cell_text(ideal, e.target)
            )
        })),
        Format::Json => json(
            &edges
                .iter()
                .map(|e| PossibleEdgeJson {
                    source: e.source.names(ideal),
                    target: e.target.names(ideal),
                    sbridge_position: e.sbridge_position,
                    sbridge: ideal.generators()[e.sbridge].to_string(),
                })
                .collect::<Vec<_>>(),
        ),
    }
}

/// One group per line, largest cardinality first; an empty group is `{}`.
pub fn critical(ideal: &MonomialIdeal, cells: &CriticalCells, format: Format) -> String {
    match format {
        Format::Plain => {
            let mut out = String::new();
            for group in &cells.groups {
                let inner: Vec<String> = group.iter().map(|&c| cell_text(ideal, c)).collect();
                out.push('{');
                out.push_str(&inner.join(", "));
                out.push_str("}\n");
            }
            out
        }
        Format::Json => json(
            &cells
                .groups
                .iter()
                .map(|g| g.iter().map(|c| c.names(ideal)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        ),
    }
}

pub fn rank_list(ranks: &[usize], format: Format) -> String {
    match format {
        Format::Plain => {
            let words: Vec<String> = ranks.iter().map(usize::to_string).collect();
            format!("{}\n", words.join(" "))
        }
        Format::Json => json(&ranks),
    }
}

pub fn boolean(value: bool, format: Format) -> String {
    match format {
        Format::Plain => format!("{value}\n"),
        Format::Json => json(&value),
    }
}

/// Totals; with `multigraded`, one extra line per multidegree.
pub fn betti(table: &BettiTable, multigraded: bool, format: Format) -> String {
    match format {
        Format::Plain => {
            let mut out = rank_list(&table.totals, Format::Plain);
            if multigraded {
                for (m, row) in &table.multigraded {
                    out.push_str(&format!("{m}: {}", rank_list(row, Format::Plain)));
                }
            }
            out
        }
        Format::Json => json(&BettiJson {
            totals: table.totals.clone(),
            multigraded: multigraded.then(|| {
                table
                    .multigraded
                    .iter()
                    .map(|(m, row)| (m.to_string(), row.clone()))
                    .collect()
            }),
        }),
    }
}

/// `ideal` is the original ideal; each order and matching is printed in the
/// reordered ideal's positions.
pub fn friendly_list(ideal: &MonomialIdeal, list: &[FriendlyOrder], format: Format) -> String {
    let entries = list.iter().map(|f| {
        let reordered = ideal
            .reordered(&f.order)
            .expect("search returns permutations");
        (reordered, f)
    });
    match format {
        Format::Plain => lines(entries.map(|(r, f)| {
            let all = Cell::from_indices(0..r.len());
            let edges: Vec<String> = f
                .matching
                .edges()
                .iter()
                .map(|e| edge_text(&r, e.source, e.target))
                .collect();
            format!("{{{}, {{{}}}}}", cell_text(&r, all), edges.join(", "))
        })),
        Format::Json => json(
            &entries
                .map(|(r, f)| FriendlyJson {
                    order: order_names(ideal, &f.order),
                    matching: f
                        .matching
                        .edges()
                        .iter()
                        .map(|e| edge_json(&r, e.source, e.target))
                        .collect(),
                })
                .collect::<Vec<_>>(),
        ),
    }
}

pub fn minimal_search(ideal: &MonomialIdeal, result: &MinimalSearch, format: Format) -> String {
    match format {
        Format::Plain => {
            let mut out = format!("betti: {}", rank_list(&result.betti, Format::Plain));
            out.push_str(&format!("orders tried: {}\n", result.tried));
            match &result.witness {
                Some(order) => {
                    let names = order_names(ideal, order);
                    out.push_str(&format!("witness: {{{}}}\n", names.join(", ")));
                }
                None => out.push_str("witness: none\n"),
            }
            out
        }
        Format::Json => json(&MinimalSearchJson {
            betti: result.betti.clone(),
            tried: result.tried,
            hits: result.hits,
            witness: result.witness.as_ref().map(|order| WitnessJson {
                order: order_names(ideal, order),
                ranks: result.betti.clone(),
            }),
        }),
    }
}

pub fn morse_complex(ideal: &MonomialIdeal, mc: &MorseComplex, format: Format) -> String {
    match format {
        Format::Plain => {
            let mut out = String::new();
            for (k, cells) in mc.basis.iter().enumerate() {
                let inner: Vec<String> = cells.iter().map(|&c| cell_text(ideal, c)).collect();
                out.push_str(&format!("F{k}: {}\n", inner.join(" ")));
            }
            for (k, d) in mc.differentials.iter().enumerate() {
                for e in &d.entries {
                    out.push_str(&format!(
                        "d{} {} {} {} {}\n",
                        k + 1,
                        e.row,
                        e.col,
                        e.coefficient,
                        e.factor
                    ));
                }
            }
            out
        }
        Format::Json => json(&ComplexJson {
            basis: mc
                .basis
                .iter()
                .map(|cells| cells.iter().map(|c| c.names(ideal)).collect())
                .collect(),
            differentials: mc
                .differentials
                .iter()
                .enumerate()
                .map(|(k, d)| DifferentialJson {
                    degree: k + 1,
                    rows: d.rows,
                    cols: d.cols,
                    entries: d
                        .entries
                        .iter()
                        .map(|e| (e.row, e.col, e.coefficient, e.factor.to_string()))
                        .collect(),
                })
                .collect(),
        }),
    }
}

pub fn ideal(ideal: &MonomialIdeal, format: Format) -> String {
    match format {
        Format::Plain => ideal.to_file_string(),
        Format::Json => json(&IdealJson {
            vars: ideal.context().names().to_vec(),
            gens: ideal.generators().iter().map(ToString::to_string).collect(),
        }),
    }
}
