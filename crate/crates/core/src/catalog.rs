//! The extremal tournaments shipped with the crate and the one-shot
//! verification that both certify their nonexistence claims: T_9 has no
//! 4-ary spanning tree (so every-order solvability can start no lower
//! than 10) and T_12 has no 5-ary spanning tree (so no lower than 13).

use crate::solver::{
    find_kary_spanning_tree_with, obstruction_check, ObstructionWitness, SolveOptions,
    SolveOutcome,
};
use crate::tournament::Tournament;

/// T_12 exactly as printed in its source: 66 arcs, one per pair.
/// Stored literally rather than re-derived so any transcription error
/// surfaces as an arc-list validation failure.
const T12_ARCS: [(usize, usize); 66] = [
    (0, 3),
    (0, 5),
    (0, 9),
    (0, 10),
    (0, 11),
    (1, 0),
    (1, 4),
    (1, 6),
    (1, 8),
    (1, 9),
    (1, 11),
    (2, 0),
    (2, 1),
    (2, 7),
    (2, 8),
    (2, 10),
    (2, 11),
    (3, 1),
    (3, 2),
    (3, 6),
    (3, 9),
    (3, 10),
    (4, 0),
    (4, 2),
    (4, 3),
    (4, 7),
    (4, 9),
    (5, 1),
    (5, 2),
    (5, 3),
    (5, 4),
    (5, 8),
    (5, 11),
    (6, 0),
    (6, 2),
    (6, 4),
    (6, 5),
    (6, 10),
    (7, 0),
    (7, 1),
    (7, 3),
    (7, 5),
    (7, 6),
    (8, 0),
    (8, 3),
    (8, 4),
    (8, 6),
    (8, 7),
    (9, 2),
    (9, 5),
    (9, 6),
    (9, 7),
    (9, 8),
    (9, 11),
    (10, 1),
    (10, 4),
    (10, 5),
    (10, 7),
    (10, 8),
    (10, 9),
    (11, 3),
    (11, 4),
    (11, 6),
    (11, 7),
    (11, 8),
    (11, 10),
];

/// The 4-regular circulant 9-tournament with difference set {1,2,3,5}.
/// Contains no 4-ary spanning tree.
pub fn t9() -> Tournament {
    Tournament::circulant(9, &[1, 2, 3, 5]).expect("difference set covers every residue pair")
}

/// The 12-tournament given by an explicit 66-arc list. Contains no 5-ary
/// spanning tree; its minimum out-degree is 5, so every vertex lies in
/// T_{>=5}.
pub fn t12() -> Tournament {
    Tournament::from_arc_list(12, &T12_ARCS).expect("printed arc list covers each pair once")
}

/// The quadratic-residue tournament on 7 vertices (difference set
/// {1,2,4}); 3-regular with domination number 3. Not part of the
/// nonexistence catalog, but the standard small instance for the
/// counting bound.
pub fn paley7() -> Tournament {
    Tournament::circulant(7, &[1, 2, 4]).expect("quadratic residues mod 7")
}

/// One catalog tournament with its nonexistence claim.
pub struct CatalogEntry {
    pub name: &'static str,
    pub tournament: Tournament,
    /// Arity for which no k-ary spanning tree exists.
    pub claimed_k: usize,
    pub source: &'static str,
}

/// The tournaments whose claims [`verify_catalog`] confirms.
pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "t9",
            tournament: t9(),
            claimed_k: 4,
            source: "circulant on Z_9 with difference set {1,2,3,5}",
        },
        CatalogEntry {
            name: "t12",
            tournament: t12(),
            claimed_k: 5,
            source: "explicit 66-arc list",
        },
    ]
}

/// Looks up any shipped tournament by name (`t9`, `t12`, `paley7`).
pub fn by_name(name: &str) -> Option<Tournament> {
    match name {
        "t9" => Some(t9()),
        "t12" => Some(t12()),
        "paley7" => Some(paley7()),
        _ => None,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog verification failed: {0:?}")]
    VerificationFailed(Box<CatalogReport>),
}

/// Outcome of checking one catalog entry by both certificate kinds.
#[derive(Debug, Clone)]
pub struct EntryVerification {
    pub name: &'static str,
    pub claimed_k: usize,
    pub order: usize,
    pub witness: Option<ObstructionWitness>,
    pub search_proven_none: bool,
    pub search_nodes: u64,
    pub confirmed: bool,
}

impl EntryVerification {
    /// The bound the confirmed claim implies: a k-tree-free n-tournament
    /// pushes the least always-solvable order past n.
    pub fn implied_bound(&self) -> String {
        format!("h({}) >= {}", self.claimed_k, self.order + 1)
    }
}

#[derive(Debug, Clone)]
pub struct CatalogReport {
    pub entries: Vec<EntryVerification>,
}

impl CatalogReport {
    pub fn all_confirmed(&self) -> bool {
        self.entries.iter().all(|e| e.confirmed)
    }
}

/// Confirms every catalog claim twice over: once by the pairwise
/// out-neighborhood witness and once by exhaustive search with the
/// certificate pre-check disabled, so the two confirmations share no
/// pruning logic.
pub fn verify_catalog() -> Result<CatalogReport, CatalogError> {
    let mut report = CatalogReport {
        entries: Vec::new(),
    };
    for entry in entries() {
        let witness = obstruction_check(&entry.tournament, entry.claimed_k);
        let search = find_kary_spanning_tree_with(
            &entry.tournament,
            entry.claimed_k,
            SolveOptions {
                budget: None,
                obstruction_precheck: false,
            },
        );
        let search_proven_none = matches!(search.outcome, SolveOutcome::ProvenNone);
        report.entries.push(EntryVerification {
            name: entry.name,
            claimed_k: entry.claimed_k,
            order: entry.tournament.order(),
            confirmed: witness.is_some() && search_proven_none,
            witness,
            search_proven_none,
            search_nodes: search.nodes_explored,
        });
    }
    if report.all_confirmed() {
        Ok(report)
    } else {
        Err(CatalogError::VerificationFailed(Box::new(report)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::find_kary_spanning_tree;

    #[test]
    fn t9_degrees_and_neighborhood_property() {
        let t = t9();
        for v in 0..9 {
            assert_eq!(t.out_degree(v), 4);
        }
        // every out-neighbor shares an out-neighbor with its dominator
        for i in 0..9 {
            for j in t.out_neighbors(i) {
                let shared = t
                    .out_neighbors(j)
                    .into_iter()
                    .any(|x| t.beats(i, x));
                assert!(shared, "N+({j}) and N+({i}) must intersect");
            }
        }
    }

    #[test]
    fn t12_arc_count_and_degrees() {
        let t = t12();
        let total: usize = t.vertices().map(|v| t.out_degree(v)).sum();
        assert_eq!(total, 66);
        assert_eq!(t.out_neighbors(0), vec![3, 5, 9, 10, 11]);
        let min_deg = t.vertices().map(|v| t.out_degree(v)).min().unwrap();
        assert_eq!(min_deg, 5);
    }

    #[test]
    fn paley7_is_3_regular() {
        let t = paley7();
        for v in 0..7 {
            assert_eq!(t.out_degree(v), 3);
        }
    }

    #[test]
    fn verify_catalog_confirms_both_entries() {
        let report = verify_catalog().expect("catalog claims hold");
        assert_eq!(report.entries.len(), 2);
        assert_eq!(report.entries[0].implied_bound(), "h(4) >= 10");
        assert_eq!(report.entries[1].implied_bound(), "h(5) >= 13");
        for e in &report.entries {
            assert!(e.confirmed);
            assert!(e.search_nodes > 0, "search arm must actually search");
        }
    }

    #[test]
    fn corrupted_t12_diverges_from_catalog_claims() {
        // flip one arc of T_12 and re-check both certificates
        let mut arcs: Vec<(usize, usize)> = T12_ARCS.to_vec();
        arcs[0] = (T12_ARCS[0].1, T12_ARCS[0].0);
        let mutant = Tournament::from_arc_list(12, &arcs).unwrap();
        let witness = obstruction_check(&mutant, 5);
        let search = find_kary_spanning_tree(&mutant, 5, None);
        let still_counterexample = witness.is_some() && search.proven_none();
        assert!(
            !still_counterexample,
            "flipping (0,3) must break at least one certificate"
        );
    }

    #[test]
    fn by_name_lookup() {
        assert!(by_name("t9").is_some());
        assert!(by_name("t12").is_some());
        assert!(by_name("paley7").is_some());
        assert!(by_name("nope").is_none());
    }
}
