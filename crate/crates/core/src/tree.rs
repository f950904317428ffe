//! Rooted-tree certificates and the validator that a tree is a k-ary
//! spanning tree of a given tournament.

use std::collections::BTreeMap;

use crate::tournament::Tournament;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("star root appears among the leaves")]
    RootInLeaves,
    #[error("star needs at least one leaf")]
    EmptyLeaves,
    #[error("tree has {tree} vertices but the tournament has {tournament}")]
    SizeMismatch { tree: usize, tournament: usize },
    #[error("syntax error on line {line}: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("parent map is not a tree: {0}")]
    MalformedTree(String),
}

/// A rooted tree given by its parent map. Vertex labels are arbitrary
/// `usize` values (they live in the label space of whatever tournament
/// the tree is checked against), so a tree may cover only a subset of a
/// tournament's vertices while it is being grown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: BTreeMap<usize, usize>,
}

impl RootedTree {
    /// A single-vertex tree.
    pub fn singleton(root: usize) -> Self {
        RootedTree {
            root,
            parent: BTreeMap::new(),
        }
    }

    /// Builds a tree from explicit `(child, parent)` entries. The entries
    /// must connect every non-root vertex to the root acyclically.
    pub fn from_parent_entries(
        root: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, TreeError> {
        let mut parent = BTreeMap::new();
        for (child, par) in entries {
            if child == root {
                return Err(TreeError::MalformedTree("root listed as a child".into()));
            }
            if parent.insert(child, par).is_some() {
                return Err(TreeError::MalformedTree(format!(
                    "vertex {child} has two parents"
                )));
            }
        }
        let tree = RootedTree { root, parent };
        if tree.find_cycle_or_dangling() {
            return Err(TreeError::MalformedTree(
                "parent chain does not reach the root".into(),
            ));
        }
        Ok(tree)
    }

    /// A directed path `seq[0] -> seq[1] -> ...` as a rooted tree.
    pub fn path(seq: &[usize]) -> Self {
        assert!(!seq.is_empty());
        let mut parent = BTreeMap::new();
        for w in seq.windows(2) {
            parent.insert(w[1], w[0]);
        }
        RootedTree {
            root: seq[0],
            parent,
        }
    }

    /// Star of depth 1: `root` with the given leaves as children.
    pub fn star(root: usize, leaves: &[usize]) -> Result<Self, TreeError> {
        if leaves.is_empty() {
            return Err(TreeError::EmptyLeaves);
        }
        if leaves.contains(&root) {
            return Err(TreeError::RootInLeaves);
        }
        let mut parent = BTreeMap::new();
        for &l in leaves {
            parent.insert(l, root);
        }
        if parent.len() != leaves.len() {
            return Err(TreeError::MalformedTree("duplicate leaf".into()));
        }
        Ok(RootedTree { root, parent })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len() + 1
    }

    pub fn contains(&self, v: usize) -> bool {
        v == self.root || self.parent.contains_key(&v)
    }

    pub fn parent_of(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied()
    }

    /// All tree vertices, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.parent.keys().copied().collect();
        vs.push(self.root);
        vs.sort_unstable();
        vs
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().map(|(&child, &par)| (par, child))
    }

    /// Child count per vertex (vertices with no children are absent).
    pub fn child_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for &p in self.parent.values() {
            *counts.entry(p).or_insert(0) += 1;
        }
        counts
    }

    pub fn children_of(&self, v: usize) -> Vec<usize> {
        self.parent
            .iter()
            .filter(|&(_, &p)| p == v)
            .map(|(&c, _)| c)
            .collect()
    }

    /// True if some parent chain fails to reach the root (cycle among
    /// non-root vertices or a parent outside the tree).
    fn find_cycle_or_dangling(&self) -> bool {
        let n = self.vertex_count();
        for &start in self.parent.keys() {
            let mut cur = start;
            let mut steps = 0;
            while cur != self.root {
                match self.parent.get(&cur) {
                    Some(&p) => cur = p,
                    None => return true,
                }
                steps += 1;
                if steps > n {
                    return true;
                }
            }
        }
        false
    }

    /// Grafts: returns a copy with `child`'s parent set (or inserted).
    pub(crate) fn with_parent(&self, child: usize, parent: usize) -> Self {
        let mut t = self.clone();
        t.parent.insert(child, parent);
        t
    }

    pub(crate) fn with_root(&self, root: usize) -> Self {
        let mut t = self.clone();
        t.root = root;
        t
    }
}

/// Why a candidate tree failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KaryFailure {
    /// Some parent->child pair is not an arc of the tournament.
    NonArcEdge,
    /// Two non-leaf vertices have fewer than k children.
    TwoDeficient,
    /// Some vertex has more than k children.
    OverArity,
    /// The tree does not cover exactly the tournament's vertex set.
    NotSpanning,
    /// The parent map contains a cycle.
    CyclicParent,
}

impl std::fmt::Display for KaryFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            KaryFailure::NonArcEdge => "NonArcEdge",
            KaryFailure::TwoDeficient => "TwoDeficient",
            KaryFailure::OverArity => "OverArity",
            KaryFailure::NotSpanning => "NotSpanning",
            KaryFailure::CyclicParent => "CyclicParent",
        };
        f.write_str(s)
    }
}

/// Validation outcome for one `(tree, tournament, k)` triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaryReport {
    pub valid: bool,
    pub k: usize,
    /// No deficient vertex: every non-leaf has exactly k children.
    pub full: bool,
    pub deficient_vertex: Option<usize>,
    pub failure_reason: Option<KaryFailure>,
}

impl KaryReport {
    fn failure(k: usize, reason: KaryFailure) -> Self {
        KaryReport {
            valid: false,
            k,
            full: false,
            deficient_vertex: None,
            failure_reason: Some(reason),
        }
    }
}

/// Checks that `tree` is a k-ary spanning tree of `t`: every parent->child
/// pair an arc of `t`, every non-leaf with exactly `k` children except at
/// most one non-leaf with between 1 and `k-1`, and the vertex set exactly
/// `0..t.order()`.
pub fn validate_kary_spanning(
    tree: &RootedTree,
    t: &Tournament,
    k: usize,
) -> Result<KaryReport, TreeError> {
    if tree.vertex_count() != t.order() {
        return Err(TreeError::SizeMismatch {
            tree: tree.vertex_count(),
            tournament: t.order(),
        });
    }
    if tree.vertices().iter().any(|&v| v >= t.order()) {
        return Ok(KaryReport::failure(k, KaryFailure::NotSpanning));
    }
    Ok(validate_kary_common(tree, t, k))
}

/// Checks the k-ary conditions for a tree covering any subset of the
/// tournament's vertices. Used while trees are grown piecewise.
pub fn validate_kary_in(tree: &RootedTree, t: &Tournament, k: usize) -> KaryReport {
    debug_assert!(tree.vertices().iter().all(|&v| v < t.order()));
    validate_kary_common(tree, t, k)
}

fn validate_kary_common(tree: &RootedTree, t: &Tournament, k: usize) -> KaryReport {
    if tree.find_cycle_or_dangling() {
        return KaryReport::failure(k, KaryFailure::CyclicParent);
    }
    for (par, child) in tree.edges() {
        if !t.beats(par, child) {
            return KaryReport::failure(k, KaryFailure::NonArcEdge);
        }
    }
    let counts = tree.child_counts();
    let mut deficient = None;
    for (&v, &c) in &counts {
        if c > k {
            return KaryReport::failure(k, KaryFailure::OverArity);
        }
        if c < k {
            // c >= 1 here: v appears in the child-count map, so it is a
            // non-leaf with fewer than k children.
            if deficient.is_some() {
                return KaryReport::failure(k, KaryFailure::TwoDeficient);
            }
            deficient = Some(v);
        }
    }
    KaryReport {
        valid: true,
        k,
        full: deficient.is_none(),
        deficient_vertex: deficient,
        failure_reason: None,
    }
}

/// Leaf count, internal count, and the multiset of child counts over
/// internal vertices (count -> multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub leaves: usize,
    pub internal: usize,
    pub child_counts: BTreeMap<usize, usize>,
}

pub fn tree_stats(tree: &RootedTree) -> TreeStats {
    let counts = tree.child_counts();
    let internal = counts.len();
    let mut multiset = BTreeMap::new();
    for &c in counts.values() {
        *multiset.entry(c).or_insert(0) += 1;
    }
    TreeStats {
        leaves: tree.vertex_count() - internal,
        internal,
        child_counts: multiset,
    }
}

/// Tree text format: `tree <n> <root>`, then one line of `n`
/// space-separated parent entries where the root's entry is `-1`.
/// Only spanning trees (vertex set exactly `0..n`) are serializable.
pub fn serialize_tree(tree: &RootedTree) -> String {
    let n = tree.vertex_count();
    debug_assert!(tree.vertices() == (0..n).collect::<Vec<_>>());
    let entries: Vec<String> = (0..n)
        .map(|v| match tree.parent_of(v) {
            Some(p) => p.to_string(),
            None => "-1".to_string(),
        })
        .collect();
    format!("tree {} {}\n{}\n", n, tree.root(), entries.join(" "))
}

pub fn parse_tree(text: &str) -> Result<RootedTree, TreeError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(TreeError::SyntaxError {
        line: 1,
        msg: "empty input".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, root): (usize, usize) = match fields.as_slice() {
        ["tree", n_str, root_str] => {
            let n = n_str.parse().map_err(|_| TreeError::SyntaxError {
                line: 1,
                msg: format!("bad vertex count '{n_str}'"),
            })?;
            let root = root_str.parse().map_err(|_| TreeError::SyntaxError {
                line: 1,
                msg: format!("bad root '{root_str}'"),
            })?;
            (n, root)
        }
        _ => {
            return Err(TreeError::SyntaxError {
                line: 1,
                msg: "expected 'tree <n> <root>' header".into(),
            })
        }
    };
    if root >= n {
        return Err(TreeError::SyntaxError {
            line: 1,
            msg: format!("root {root} out of range for {n} vertices"),
        });
    }
    let body = lines.next().ok_or(TreeError::SyntaxError {
        line: 2,
        msg: "missing parent entries".into(),
    })?;
    let entries: Vec<&str> = body.split_whitespace().collect();
    if entries.len() != n {
        return Err(TreeError::SyntaxError {
            line: 2,
            msg: format!("found {} parent entries, expected {n}", entries.len()),
        });
    }
    let mut pairs = Vec::with_capacity(n.saturating_sub(1));
    for (v, e) in entries.iter().enumerate() {
        if *e == "-1" {
            if v != root {
                return Err(TreeError::SyntaxError {
                    line: 2,
                    msg: format!("vertex {v} has entry -1 but the root is {root}"),
                });
            }
            continue;
        }
        let p: usize = e.parse().map_err(|_| TreeError::SyntaxError {
            line: 2,
            msg: format!("bad parent entry '{e}'"),
        })?;
        if p >= n {
            return Err(TreeError::SyntaxError {
                line: 2,
                msg: format!("parent {p} out of range"),
            });
        }
        pairs.push((v, p));
    }
    if pairs.len() != n - 1 {
        return Err(TreeError::MalformedTree(format!(
            "expected {} parent entries, found {}",
            n - 1,
            pairs.len()
        )));
    }
    RootedTree::from_parent_entries(root, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::Tournament;

    #[test]
    fn hamiltonian_path_is_1ary() {
        let t = Tournament::transitive(3);
        let tree = RootedTree::path(&[0, 1, 2]);
        let rep = validate_kary_spanning(&tree, &t, 1).unwrap();
        assert!(rep.valid && rep.full);
    }

    #[test]
    fn star_is_full_kary() {
        let t = Tournament::transitive(5);
        let tree = RootedTree::star(0, &[1, 2, 3, 4]).unwrap();
        let rep = validate_kary_spanning(&tree, &t, 4).unwrap();
        assert!(rep.valid && rep.full);
        assert_eq!(rep.deficient_vertex, None);
    }

    #[test]
    fn star_argument_errors() {
        assert_eq!(
            RootedTree::star(5, &[5]).unwrap_err(),
            TreeError::RootInLeaves
        );
        assert_eq!(RootedTree::star(0, &[]).unwrap_err(), TreeError::EmptyLeaves);
    }

    #[test]
    fn two_deficient_vertices_rejected() {
        // 0 -> {1,2,3}, 1 -> {4,5}, 2 -> {6}: vertices 1 and 2 both deficient for k=3
        let t = Tournament::transitive(7);
        let tree = RootedTree::from_parent_entries(
            0,
            [(1, 0), (2, 0), (3, 0), (4, 1), (5, 1), (6, 2)],
        )
        .unwrap();
        let rep = validate_kary_spanning(&tree, &t, 3).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.failure_reason, Some(KaryFailure::TwoDeficient));
    }

    #[test]
    fn one_deficient_vertex_accepted() {
        let t = Tournament::transitive(6);
        // 0 -> {1,2,3}, 1 -> {4,5}: single deficient vertex for k=3
        let tree =
            RootedTree::from_parent_entries(0, [(1, 0), (2, 0), (3, 0), (4, 1), (5, 1)]).unwrap();
        let rep = validate_kary_spanning(&tree, &t, 3).unwrap();
        assert!(rep.valid && !rep.full);
        assert_eq!(rep.deficient_vertex, Some(1));
    }

    #[test]
    fn non_arc_edge_rejected() {
        let t = Tournament::transitive(3);
        // 2 -> 1 is not an arc of the transitive order
        let tree = RootedTree::from_parent_entries(0, [(2, 0), (1, 2)]).unwrap();
        let rep = validate_kary_spanning(&tree, &t, 1).unwrap();
        assert_eq!(rep.failure_reason, Some(KaryFailure::NonArcEdge));
    }

    #[test]
    fn over_arity_rejected() {
        let t = Tournament::transitive(4);
        let tree = RootedTree::star(0, &[1, 2, 3]).unwrap();
        let rep = validate_kary_spanning(&tree, &t, 2).unwrap();
        assert_eq!(rep.failure_reason, Some(KaryFailure::OverArity));
    }

    #[test]
    fn cyclic_parent_map_rejected() {
        assert!(RootedTree::from_parent_entries(0, [(1, 2), (2, 1)]).is_err());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let t = Tournament::transitive(4);
        let tree = RootedTree::path(&[0, 1, 2]);
        assert_eq!(
            validate_kary_spanning(&tree, &t, 1).unwrap_err(),
            TreeError::SizeMismatch {
                tree: 3,
                tournament: 4
            }
        );
    }

    #[test]
    fn validate_star_k2() {
        let t =
            Tournament::from_arc_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let tree = RootedTree::star(0, &[1, 2]).unwrap();
        assert!(validate_kary_spanning(&tree, &t, 2).unwrap().valid);
    }

    #[test]
    fn stats_star_and_path() {
        let star = RootedTree::star(0, &[1, 2, 3, 4]).unwrap();
        let s = tree_stats(&star);
        assert_eq!((s.leaves, s.internal), (4, 1));
        assert_eq!(s.child_counts, BTreeMap::from([(4, 1)]));

        let path = RootedTree::path(&[3, 1, 0, 2]);
        let s = tree_stats(&path);
        assert_eq!((s.leaves, s.internal), (1, 3));
        assert_eq!(s.child_counts, BTreeMap::from([(1, 3)]));
    }

    #[test]
    fn singleton_tree() {
        let t = Tournament::transitive(1);
        let tree = RootedTree::singleton(0);
        let rep = validate_kary_spanning(&tree, &t, 3).unwrap();
        assert!(rep.valid && rep.full);
        let s = tree_stats(&tree);
        assert_eq!((s.leaves, s.internal), (1, 0));
    }

    #[test]
    fn tree_text_roundtrip() {
        let tree = RootedTree::from_parent_entries(2, [(0, 2), (1, 0), (3, 0)]).unwrap();
        let text = serialize_tree(&tree);
        assert_eq!(text, "tree 4 2\n2 0 -1 0\n");
        assert_eq!(parse_tree(&text).unwrap(), tree);

        let single = RootedTree::singleton(0);
        assert_eq!(serialize_tree(&single), "tree 1 0\n-1\n");
        assert_eq!(parse_tree("tree 1 0\n-1\n").unwrap(), single);
    }

    #[test]
    fn parse_tree_rejects_cycles() {
        assert!(parse_tree("tree 3 0\n-1 2 1\n").is_err());
    }
}
