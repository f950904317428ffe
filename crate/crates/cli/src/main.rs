//! `kary`: generate, solve, certify, and probe k-ary spanning trees in
//! tournaments from the command line.
//!
//! Exit codes: 0 = affirmative/success, 1 = proven-negative,
//! 2 = budget/indeterminate, 3 = usage or data error. For `solve` the
//! codes map one-to-one onto Found / ProvenNone / BudgetExceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kary_core::catalog;
use kary_core::constructive::{solve_k4_constructive, ConstructError};
use kary_core::domination::{domination_growth_experiment, domination_number, greedy_dominating_set};
use kary_core::solver::{
    find_kary_spanning_tree, hamiltonian_path, obstruction_check, probe_counterexample, ProbeMode,
    SolveOutcome,
};
use kary_core::tournament::{parse_tournament, serialize_tournament, Tournament};
use kary_core::tree::{parse_tree, serialize_tree, validate_kary_spanning};
use kary_core::SeedSpec;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "kary", version, about = "k-ary spanning trees in tournaments")]
struct Cli {
    /// Stable line-oriented output instead of prose.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a tournament in the canonical text format.
    Gen {
        #[command(subcommand)]
        what: GenKind,
    },
    /// Decide k-ary spanning tree existence for a tournament file.
    Solve {
        #[arg(long)]
        k: usize,
        #[arg(long = "in")]
        input: PathBuf,
        /// Node cap for the search; exhaustion exits 2.
        #[arg(long)]
        budget: Option<u64>,
        /// Where to write the tree when one is found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a tree file against a tournament file.
    Validate {
        #[arg(long)]
        k: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        tree: PathBuf,
    },
    /// Run the pairwise out-neighborhood nonexistence test.
    Obstruction {
        #[arg(long)]
        k: usize,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exact domination number (or greedy upper bound).
    Domination {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        greedy: bool,
    },
    /// Hamiltonian path (a 1-ary spanning tree); always succeeds.
    Hampath {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search order-n tournaments for one with no k-ary spanning tree.
    Probe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Enumerate all labeled tournaments instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        /// Lift the default order cap on exhaustive enumeration.
        #[arg(long)]
        allow_large: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a 4-ary spanning tree constructively (order >= 10).
    ConstructK4 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the reduction log (`step v a b c d` lines).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Seeded table of domination-number growth across orders.
    ExperimentDomination(ExperimentArgs),
    /// Confirm the shipped extremal tournaments by both certificates.
    VerifyCatalog,
}

#[derive(Subcommand)]
enum GenKind {
    /// Uniform random tournament from an explicit seed.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Circulant tournament from a difference set.
    Circulant {
        #[arg(long)]
        n: usize,
        /// Comma-separated residues, e.g. 1,2,3,5
        #[arg(long)]
        diffs: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The transitive tournament on n vertices.
    Transitive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a shipped tournament: t9, t12, or paley7.
    Catalog {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// Comma-separated orders, e.g. 16,32,64
    #[arg(long)]
    orders: String,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Fall back to the greedy bound above the exact-order cap.
    #[arg(long)]
    allow_greedy: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's help/version output is not an error
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_ERROR);
            }
            print!("{e}");
            return ExitCode::from(EXIT_OK);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let machine = cli.machine;
    match cli.command {
        Command::Gen { what } => gen(what),
        Command::Solve {
            k,
            input,
            budget,
            out,
        } => solve(k, &input, budget, out.as_deref(), machine),
        Command::Validate { k, input, tree } => validate(k, &input, &tree),
        Command::Obstruction { k, input } => obstruction(k, &input),
        Command::Domination { input, greedy } => domination(&input, greedy),
        Command::Hampath { input, out } => hampath(&input, out.as_deref()),
        Command::Probe {
            n,
            k,
            exhaustive,
            allow_large,
            seed,
            trials,
            jobs,
            out,
        } => probe(n, k, exhaustive, allow_large, seed, trials, jobs, out.as_deref()),
        Command::ConstructK4 { input, out, trace } => {
            construct_k4(&input, out.as_deref(), trace.as_deref())
        }
        Command::ExperimentDomination(args) => experiment_domination(args, machine),
        Command::VerifyCatalog => verify_catalog(machine),
    }
}

fn read_tournament(path: &std::path::Path) -> Result<Tournament, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_tournament(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: Option<&std::path::Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(kind: GenKind) -> Result<u8, String> {
    let (t, out) = match kind {
        GenKind::Random {
            n,
            seed,
            stream,
            out,
        } => {
            if n == 0 {
                return Err("order must be at least 1".into());
            }
            (Tournament::random(n, SeedSpec::new(seed, stream)), out)
        }
        GenKind::Circulant { n, diffs, out } => {
            let parsed: Result<Vec<usize>, _> =
                diffs.split(',').map(|s| s.trim().parse::<usize>()).collect();
            let diffs = parsed.map_err(|e| format!("bad difference set: {e}"))?;
            (
                Tournament::circulant(n, &diffs).map_err(|e| e.to_string())?,
                out,
            )
        }
        GenKind::Transitive { n, out } => {
            if n == 0 {
                return Err("order must be at least 1".into());
            }
            (Tournament::transitive(n), out)
        }
        GenKind::Catalog { name, out } => (
            catalog::by_name(&name).ok_or(format!("unknown catalog entry '{name}'"))?,
            out,
        ),
    };
    emit(out.as_deref(), &serialize_tournament(&t))?;
    Ok(EXIT_OK)
}

fn solve(
    k: usize,
    input: &std::path::Path,
    budget: Option<u64>,
    out: Option<&std::path::Path>,
    machine: bool,
) -> Result<u8, String> {
    if k == 0 {
        return Err("--k must be at least 1".into());
    }
    let t = read_tournament(input)?;
    let res = find_kary_spanning_tree(&t, k, budget);
    match res.outcome {
        SolveOutcome::Found(tree) => {
            if machine {
                println!("Found nodes={}", res.nodes_explored);
            } else {
                println!(
                    "Found nodes={} elapsed={:?}",
                    res.nodes_explored, res.elapsed
                );
            }
            let text = serialize_tree(&tree);
            match out {
                Some(path) => emit(Some(path), &text)?,
                None => print!("{text}"),
            }
            Ok(EXIT_OK)
        }
        SolveOutcome::ProvenNone => {
            if machine {
                println!("ProvenNone nodes={}", res.nodes_explored);
            } else {
                println!(
                    "ProvenNone nodes={} elapsed={:?}",
                    res.nodes_explored, res.elapsed
                );
            }
            Ok(EXIT_NEGATIVE)
        }
        SolveOutcome::BudgetExceeded => {
            if machine {
                println!("BudgetExceeded nodes={}", res.nodes_explored);
            } else {
                println!(
                    "BudgetExceeded nodes={} elapsed={:?}",
                    res.nodes_explored, res.elapsed
                );
            }
            Ok(EXIT_INDETERMINATE)
        }
    }
}

fn validate(k: usize, input: &std::path::Path, tree_path: &std::path::Path) -> Result<u8, String> {
    if k == 0 {
        return Err("--k must be at least 1".into());
    }
    let t = read_tournament(input)?;
    let text =
        fs::read_to_string(tree_path).map_err(|e| format!("{}: {e}", tree_path.display()))?;
    let tree = parse_tree(&text).map_err(|e| format!("{}: {e}", tree_path.display()))?;
    let report = validate_kary_spanning(&tree, &t, k).map_err(|e| e.to_string())?;
    if report.valid {
        println!("valid k={k} full={}", report.full);
        Ok(EXIT_OK)
    } else {
        let reason = report
            .failure_reason
            .map(|r| r.to_string())
            .unwrap_or_else(|| "unknown".into());
        println!("invalid reason={reason}");
        Ok(EXIT_NEGATIVE)
    }
}

fn obstruction(k: usize, input: &std::path::Path) -> Result<u8, String> {
    if k == 0 {
        return Err("--k must be at least 1".into());
    }
    let t = read_tournament(input)?;
    match obstruction_check(&t, k) {
        Some(w) => {
            match w.attaining_pair {
                Some((u, v)) => println!(
                    "witness k={k} tsize={} max_pair_union={} pair={u},{v}",
                    w.t_geq_k.len(),
                    w.max_pair_union
                ),
                None => println!("witness k={k} tsize={} vacuous", w.t_geq_k.len()),
            }
            Ok(EXIT_OK)
        }
        None => {
            println!("no-witness");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn domination(input: &std::path::Path, greedy: bool) -> Result<u8, String> {
    let t = read_tournament(input)?;
    let rep = if greedy {
        greedy_dominating_set(&t)
    } else {
        domination_number(&t)
    };
    let witness: Vec<String> = rep.witness.iter().map(|v| v.to_string()).collect();
    println!(
        "mu={} method={} witness={}",
        rep.mu,
        rep.method,
        witness.join(",")
    );
    Ok(EXIT_OK)
}

fn hampath(input: &std::path::Path, out: Option<&std::path::Path>) -> Result<u8, String> {
    let t = read_tournament(input)?;
    let tree = hamiltonian_path(&t);
    emit(out, &serialize_tree(&tree))?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn probe(
    n: usize,
    k: usize,
    exhaustive: bool,
    allow_large: bool,
    seed: Option<u64>,
    trials: Option<u64>,
    jobs: usize,
    out: Option<&std::path::Path>,
) -> Result<u8, String> {
    if n == 0 || k == 0 {
        return Err("--n and --k must be at least 1".into());
    }
    let mode = if exhaustive {
        ProbeMode::Exhaustive { allow_large }
    } else {
        let seed = seed.ok_or("random probing requires an explicit --seed")?;
        let trials = trials.ok_or("random probing requires --trials")?;
        ProbeMode::Random { seed, trials }
    };
    let hit = probe_counterexample(n, k, mode, jobs).map_err(|e| e.to_string())?;
    match hit {
        Some(t) => {
            println!("counterexample n={n} k={k}");
            emit(out, &serialize_tournament(&t))?;
            Ok(EXIT_OK)
        }
        None => {
            if exhaustive {
                println!("none-exhaustive");
                Ok(EXIT_NEGATIVE)
            } else {
                println!("none-random trials={}", trials.unwrap());
                Ok(EXIT_INDETERMINATE)
            }
        }
    }
}

fn construct_k4(
    input: &std::path::Path,
    out: Option<&std::path::Path>,
    trace_path: Option<&std::path::Path>,
) -> Result<u8, String> {
    let t = read_tournament(input)?;
    let (tree, trace) = match solve_k4_constructive(&t) {
        Ok(pair) => pair,
        Err(e @ ConstructError::OrderTooSmall(_)) => return Err(e.to_string()),
        Err(e) => return Err(e.to_string()),
    };
    println!(
        "constructed n={} base={} steps={}",
        t.order(),
        trace.base_order,
        trace.steps.len()
    );
    if let Some(path) = trace_path {
        fs::write(path, trace.to_log()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    emit(out, &serialize_tree(&tree))?;
    Ok(EXIT_OK)
}

fn experiment_domination(args: ExperimentArgs, machine: bool) -> Result<u8, String> {
    let orders: Result<Vec<usize>, _> = args
        .orders
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect();
    let orders = orders.map_err(|e| format!("bad orders list: {e}"))?;
    if orders.is_empty() || args.samples == 0 {
        return Err("need at least one order and one sample".into());
    }
    let rows = domination_growth_experiment(
        &orders,
        args.samples,
        args.seed,
        args.allow_greedy,
        args.jobs,
    )
    .map_err(|e| e.to_string())?;
    if !machine {
        println!("# n\tsamples\tmu_min\tmu_mean\tmu_max\tseed");
    }
    for row in &rows {
        println!("{}", row.to_tsv());
    }
    Ok(EXIT_OK)
}

fn verify_catalog(machine: bool) -> Result<u8, String> {
    let outcome = catalog::verify_catalog();
    let report = match &outcome {
        Ok(report) => report,
        Err(catalog::CatalogError::VerificationFailed(report)) => report,
    };
    for e in &report.entries {
        let obstruction = if e.witness.is_some() {
            "witness"
        } else {
            "absent"
        };
        let search = if e.search_proven_none {
            "ProvenNone"
        } else {
            "diverged"
        };
        if machine {
            println!(
                "{} k={} obstruction={} search={} nodes={} bound={}",
                e.name,
                e.claimed_k,
                obstruction,
                search,
                e.search_nodes,
                e.implied_bound().replace(' ', "")
            );
        } else {
            println!(
                "{}: order {} has no {}-ary spanning tree (obstruction: {}, search: {} in {} nodes) => {}",
                e.name, e.order, e.claimed_k, obstruction, search, e.search_nodes,
                e.implied_bound()
            );
        }
    }
    if report.all_confirmed() {
        println!("all-confirmed");
        Ok(EXIT_OK)
    } else {
        println!("verification-failed");
        Ok(EXIT_NEGATIVE)
    }
}
