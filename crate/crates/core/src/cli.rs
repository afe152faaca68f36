//! The `morseres` command line.
//!
//! Exit codes: 0 success, 1 domain error or failed check, 2 usage error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{parse_ideal, MonomialIdeal};
use crate::error::{Error, Result};
use crate::families::{cycle_edge_ideal, edge_ideal, random_squarefree_ideal, SimpleGraph};
use crate::homology::{betti_numbers, homology_ranks};
use crate::matching::{
    construct, critical_cells, is_bridge_friendly, possible_edges_with_positions,
    validate_matching, CellSet, Matching, MatchingKind, Order,
};
use crate::morse::{is_minimal, morse_differential_in, ranks, verify_complex};
use crate::render::{self, Format};
use crate::search::{bridge_friendly_list, bridge_minimal_search, SearchMode, SearchOptions};
use crate::taylor::{build_taylor, TaylorComplex};

#[derive(Parser, Debug)]
#[command(
    name = "morseres",
    version,
    about = "Morse resolutions of monomial ideals",
    after_help = "Ideal files:\n  vars: w x y z\n  gens: y*z x*y w*x w*z\n\
                  Generators are listed smallest first. Lines starting with # are comments."
)]
pub struct Cli {
    /// Emit compact JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Barile-Macchia matching under the ideal's order.
    Bm {
        #[arg(value_enum)]
        action: BmAction,
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Lyubeznik matching under the ideal's order.
    Lyu {
        #[arg(value_enum)]
        action: Action,
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Barile-Macchia matching on the Lyubeznik-critical cells.
    Trim {
        #[arg(value_enum)]
        action: Action,
        #[command(flatten)]
        ideal: IdealArgs,
        /// Order for the second pass, smallest first (defaults to the ideal's order).
        #[arg(long, value_name = "GENS")]
        order2: Option<String>,
    },
    /// Exact Betti numbers over the rationals.
    Betti {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Also list the non-zero multigraded Betti numbers.
        #[arg(long)]
        multigraded: bool,
    },
    /// Validate a matching, check d^2 = 0 and compare homology with the Betti numbers.
    Check {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, value_enum, default_value_t = Kind::Bm)]
        matching: Kind,
        /// Second order for `--matching trim`.
        #[arg(long, value_name = "GENS")]
        order2: Option<String>,
    },
    /// Whether the ideal is bridge-friendly under its order.
    Friendly {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Every bridge-friendly order with its matching.
    FriendlyList {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Look for an order with a minimal Barile-Macchia resolution.
    MinimalSearch {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Evaluate all n! orders instead of stopping at the first witness.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Print an ideal file for a built-in family.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Edge ideal of the n-cycle.
    Cycle { n: usize },
    /// Edge ideal of a graph file (`V E` then E lines of 1-based vertex pairs).
    Graph { file: PathBuf },
    /// Seeded random square-free ideal.
    Random {
        seed: u64,
        n_vars: usize,
        n_gens: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BmAction {
    Matching,
    PossibleEdges,
    Critical,
    Ranks,
    Complex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Action {
    Matching,
    Critical,
    Ranks,
    Complex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Bm,
    Lyu,
    Trim,
    Empty,
}

#[derive(Args, Debug)]
struct IdealArgs {
    #[command(flatten)]
    source: Source,
    /// Generator order, smallest first, comma separated (e.g. "y*z,x*y,w*x,w*z").
    #[arg(long, value_name = "GENS")]
    order: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Ideal file, or `-` for standard input.
    #[arg(short = 'i', long = "input", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Edge ideal of the n-cycle.
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, value_name = "K")]
    workers: Option<usize>,
    /// Allow more than 10 generators.
    #[arg(long)]
    force: bool,
    /// Suppress progress on standard error.
    #[arg(long)]
    quiet: bool,
}

fn read_text(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load(args: &IdealArgs, err: &mut dyn Write) -> Result<MonomialIdeal> {
    let ideal = match (&args.source.input, args.source.cycle) {
        (Some(path), _) => {
            let parsed = parse_ideal(&read_text(path)?)?;
            for m in &parsed.removed {
                let _ = writeln!(err, "warning: dropped non-minimal generator {m}");
            }
            parsed.ideal
        }
        (None, Some(n)) => cycle_edge_ideal(n)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    match &args.order {
        Some(names) => {
            let perm = ideal.order_from_names(names)?;
            ideal.reordered(&perm)
        }
        None => Ok(ideal),
    }
}

fn order2(ideal: &MonomialIdeal, names: Option<&str>) -> Result<Order> {
    match names {
        Some(names) => Order::from_sequence(&ideal.order_from_names(names)?),
        None => Ok(Order::identity(ideal.len())),
    }
}

/// A matching together with the cell family it lives on.
fn build(
    tc: &TaylorComplex,
    kind: Kind,
    names2: Option<&str>,
) -> Result<(Matching, Option<CellSet>)> {
    let kind = match kind {
        Kind::Bm => MatchingKind::BarileMacchia,
        Kind::Lyu => MatchingKind::Lyubeznik,
        Kind::Trim => MatchingKind::Trimmed,
        Kind::Empty => MatchingKind::Empty,
    };
    construct(tc, kind, Some(&order2(tc.ideal(), names2)?))
}

fn action_output(
    tc: &TaylorComplex,
    kind: Kind,
    action: Action,
    names2: Option<&str>,
    f: Format,
) -> Result<String> {
    let ideal = tc.ideal();
    let (m, family) = build(tc, kind, names2)?;
    Ok(match action {
        Action::Matching => render::matching(ideal, &m, f),
        Action::Critical => render::critical(ideal, &critical_cells(tc, &m, family.as_ref()), f),
        Action::Ranks => render::rank_list(&critical_cells(tc, &m, family.as_ref()).ranks(), f),
        Action::Complex => {
            render::morse_complex(ideal, &morse_differential_in(tc, &m, family.as_ref())?, f)
        }
    })
}

fn search_options(args: &SearchArgs) -> SearchOptions<'static> {
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    SearchOptions {
        workers,
        force: args.force,
        progress: None,
    }
}

/// Prints `tried/total` to standard error at most once per 10%.
fn progress_printer() -> impl Fn(u64, u64) + Sync {
    let last = std::sync::atomic::AtomicU64::new(u64::MAX);
    move |tried, total| {
        let pct = tried * 10 / total.max(1);
        if last.swap(pct, std::sync::atomic::Ordering::Relaxed) != pct {
            eprintln!("progress: {tried}/{total}");
        }
    }
}

/// Outcome of a command: output text and whether every check passed.
fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(String, bool)> {
    let f = if cli.json {
        Format::Json
    } else {
        Format::Plain
    };
    let out = match &cli.command {
        Command::Bm { action, ideal } => {
            let tc = build_taylor(&load(ideal, err)?)?;
            match action {
                BmAction::PossibleEdges => render::possible_edges(
                    tc.ideal(),
                    &possible_edges_with_positions(&tc, None)?,
                    f,
                ),
                BmAction::Matching => action_output(&tc, Kind::Bm, Action::Matching, None, f)?,
                BmAction::Critical => action_output(&tc, Kind::Bm, Action::Critical, None, f)?,
                BmAction::Ranks => action_output(&tc, Kind::Bm, Action::Ranks, None, f)?,
                BmAction::Complex => action_output(&tc, Kind::Bm, Action::Complex, None, f)?,
            }
        }
        Command::Lyu { action, ideal } => {
            let tc = build_taylor(&load(ideal, err)?)?;
            action_output(&tc, Kind::Lyu, *action, None, f)?
        }
        Command::Trim {
            action,
            ideal,
            order2,
        } => {
            let tc = build_taylor(&load(ideal, err)?)?;
            action_output(&tc, Kind::Trim, *action, order2.as_deref(), f)?
        }
        Command::Betti { ideal, multigraded } => {
            let tc = build_taylor(&load(ideal, err)?)?;
            render::betti(&betti_numbers(&tc)?, *multigraded, f)
        }
        Command::Check {
            ideal,
            matching,
            order2,
        } => return check(&load(ideal, err)?, *matching, order2.as_deref(), f),
        Command::Friendly { ideal } => {
            let tc = build_taylor(&load(ideal, err)?)?;
            render::boolean(is_bridge_friendly(&tc)?, f)
        }
        Command::FriendlyList { ideal, search } => {
            let ideal = load(ideal, err)?;
            let printer = progress_printer();
            let mut opts = search_options(search);
            if !search.quiet {
                opts.progress = Some(&printer);
            }
            render::friendly_list(&ideal, &bridge_friendly_list(&ideal, &opts)?, f)
        }
        Command::MinimalSearch {
            ideal,
            search,
            exhaustive,
        } => {
            let ideal = load(ideal, err)?;
            let printer = progress_printer();
            let mut opts = search_options(search);
            if !search.quiet {
                opts.progress = Some(&printer);
            }
            let mode = if *exhaustive {
                SearchMode::Exhaustive
            } else {
                SearchMode::FirstHit
            };
            render::minimal_search(&ideal, &bridge_minimal_search(&ideal, mode, &opts)?, f)
        }
        Command::Gen { family } => {
            let ideal = match family {
                Family::Cycle { n } => cycle_edge_ideal(*n)?,
                Family::Graph { file } => {
                    edge_ideal(&SimpleGraph::parse(&read_text(file)?)?, None)?
                }
                Family::Random {
                    seed,
                    n_vars,
                    n_gens,
                } => random_squarefree_ideal(*seed, *n_vars, *n_gens)?,
            };
            render::ideal(&ideal, f)
        }
    };
    Ok((out, true))
}

#[derive(serde::Serialize)]
struct CheckReport {
    is_matching: bool,
    is_homogeneous: bool,
    is_acyclic: bool,
    d_squared_zero: bool,
    homology_matches_betti: bool,
    minimal: bool,
    ranks: Vec<usize>,
    betti: Vec<usize>,
}

fn check(
    ideal: &MonomialIdeal,
    kind: Kind,
    names2: Option<&str>,
    f: Format,
) -> Result<(String, bool)> {
    let tc = build_taylor(ideal)?;
    let (m, family) = build(&tc, kind, names2)?;
    let report = validate_matching(&tc, m.edges(), family.as_ref());
    let betti = betti_numbers(&tc)?.totals;
    let (d2, homology, minimal, rk) = if report.all() {
        let mc = morse_differential_in(&tc, &m, family.as_ref())?;
        (
            verify_complex(&mc),
            homology_ranks(&mc) == betti,
            is_minimal(&mc),
            ranks(&mc),
        )
    } else {
        (false, false, false, Vec::new())
    };
    let r = CheckReport {
        is_matching: report.is_matching,
        is_homogeneous: report.is_homogeneous,
        is_acyclic: report.is_acyclic,
        d_squared_zero: d2,
        homology_matches_betti: homology,
        minimal,
        ranks: rk,
        betti,
    };
    let ok = report.all() && d2 && homology && minimal == (r.ranks == r.betti);
    let out = match f {
        Format::Json => format!("{}\n", serde_json::to_string(&r).expect("serializable")),
        Format::Plain => format!(
            "is_matching: {}\nis_homogeneous: {}\nis_acyclic: {}\nd_squared_zero: {}\n\
             homology_matches_betti: {}\nminimal: {}\nranks: {}betti: {}",
            r.is_matching,
            r.is_homogeneous,
            r.is_acyclic,
            r.d_squared_zero,
            r.homology_matches_betti,
            r.minimal,
            render::rank_list(&r.ranks, Format::Plain),
            render::rank_list(&r.betti, Format::Plain),
        ),
    };
    Ok((out, ok))
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, err) {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
