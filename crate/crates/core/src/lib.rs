//! k-ary spanning trees in tournaments.
//!
//! A tournament is a complete graph with every edge directed; a k-ary tree
//! is a rooted tree in which every non-leaf vertex has exactly k children,
//! except that at most one non-leaf may have between 1 and k-1. This crate
//! decides whether a tournament contains a k-ary spanning tree (with a
//! tree or an exhausted search as the certificate), checks the two
//! nonexistence tests that certify the shipped extremal tournaments,
//! builds 4-ary spanning trees constructively for every order >= 10, and
//! computes exact domination numbers for the counting bound.

mod bits;

pub mod catalog;
pub mod constructive;
pub mod domination;
pub mod rng;
pub mod solver;
pub mod tournament;
pub mod tree;

pub use constructive::{
    claim1_construct, lemma1_extend, solve_k4_constructive, ConstructError, ReductionStep,
    ReductionTrace,
};
pub use domination::{
    dominates, domination_growth_experiment, domination_number, erdos_probe,
    greedy_dominating_set, DominationError, DominationMethod, DominationReport, GrowthRow,
};
pub use rng::{SeedSpec, SplitMix64};
pub use solver::{
    brute_force_oracle, domination_bound_check, find_kary_spanning_tree,
    find_kary_spanning_tree_with, hamiltonian_path, obstruction_check, probe_counterexample,
    ObstructionWitness, ProbeMode, SolveOptions, SolveOutcome, SolveResult, SolverError,
};
pub use tournament::{parse_tournament, serialize_tournament, Tournament, TournamentError};
pub use tree::{
    parse_tree, serialize_tree, tree_stats, validate_kary_in, validate_kary_spanning, KaryFailure,
    KaryReport, RootedTree, TreeError, TreeStats,
};
