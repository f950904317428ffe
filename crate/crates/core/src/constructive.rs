//! Constructive solver for 4-ary spanning trees on orders >= 10: peel a
//! max-out-degree-4 vertex and three of its out-neighbors while the order
//! is at least 14, solve the 10..13 base exactly, then reattach the
//! peeled stars one extension at a time.

use crate::solver::{find_kary_spanning_tree, solve_preferring_root, SolveOptions};
use crate::tournament::Tournament;
use crate::tree::{validate_kary_in, RootedTree};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("constructive solver needs order >= 10, got {0}")]
    OrderTooSmall(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(Precondition),
}

#[derive(Debug, PartialEq, Eq)]
pub enum Precondition {
    /// Tree and star share a vertex.
    Overlap,
    /// Star leaf count is outside {k-1, k}.
    ArityMismatch { leaves: usize, k: usize },
    /// The star root beats nothing in the tree.
    NoArcIntoTree,
    /// The tree argument is not a valid k-ary tree of the tournament.
    NotKaryTree,
    /// The star argument is not a depth-1 tree over arcs of the tournament.
    NotStarOfTournament,
    /// Fast-path construction requires order in [10, 13].
    OrderOutOfRange(usize),
    /// Fast-path construction requires the apex in-degree in [1, 4].
    InDegreeOutOfRange(usize),
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Precondition::Overlap => write!(f, "tree and star overlap"),
            Precondition::ArityMismatch { leaves, k } => {
                write!(f, "star has {leaves} leaves, need {} or {k}", k - 1)
            }
            Precondition::NoArcIntoTree => write!(f, "star root beats nothing in the tree"),
            Precondition::NotKaryTree => write!(f, "not a valid k-ary tree of the tournament"),
            Precondition::NotStarOfTournament => {
                write!(f, "not a star over arcs of the tournament")
            }
            Precondition::OrderOutOfRange(n) => {
                write!(f, "order {n} outside [10, 13] (covering step needs ceil((n-6)/2) >= n-9)")
            }
            Precondition::InDegreeOutOfRange(d) => {
                write!(f, "apex in-degree {d} outside [1, 4]")
            }
        }
    }
}

fn violated(p: Precondition) -> ConstructError {
    ConstructError::PreconditionViolated(p)
}

/// One peeling step: `removed_root` had out-degree >= 4 among the alive
/// vertices; its three lowest-labeled alive out-neighbors were removed
/// with it and `retained` (the fourth lowest) stayed behind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub removed_root: usize,
    pub removed_leaves: [usize; 3],
    pub retained: usize,
}

/// Audit log of one constructive solve: the peeling steps in removal
/// order, plus the base instance actually solved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub base_order: usize,
    /// Base tree in the labels of the original tournament.
    pub base_tree: RootedTree,
}

impl ReductionTrace {
    /// Line-oriented log, one `step v a b c d` line per peeling step.
    pub fn to_log(&self) -> String {
        let mut s = String::new();
        for st in &self.steps {
            s.push_str(&format!(
                "step {} {} {} {} {}\n",
                st.removed_root,
                st.removed_leaves[0],
                st.removed_leaves[1],
                st.removed_leaves[2],
                st.retained
            ));
        }
        s
    }
}

/// Builds a 4-ary spanning tree of any tournament with at least 10
/// vertices, together with the reduction trace that explains it.
pub fn solve_k4_constructive(t: &Tournament) -> Result<(RootedTree, ReductionTrace), ConstructError> {
    let n = t.order();
    if n < 10 {
        return Err(ConstructError::OrderTooSmall(n));
    }

    let mut alive = crate::bits::full(n);
    let mut alive_count = n;
    let mut steps: Vec<ReductionStep> = Vec::new();
    while alive_count >= 14 {
        // lowest-labeled alive vertex with at least 4 alive out-neighbors;
        // one exists since the max alive out-degree is >= ceil((m-1)/2) >= 7
        let v = crate::bits::ones(&alive)
            .find(|&v| t.out_degree_in(v, &alive) >= 4)
            .expect("alive order >= 14 guarantees an out-degree-4 vertex");
        let outs: Vec<usize> = crate::bits::ones(&alive)
            .filter(|&x| t.beats(v, x))
            .take(4)
            .collect();
        let step = ReductionStep {
            removed_root: v,
            removed_leaves: [outs[0], outs[1], outs[2]],
            retained: outs[3],
        };
        crate::bits::clear(&mut alive, v);
        for &l in &step.removed_leaves {
            crate::bits::clear(&mut alive, l);
        }
        alive_count -= 4;
        steps.push(step);
    }

    let alive_list: Vec<usize> = crate::bits::ones(&alive).collect();
    let (base, map) = t
        .induced(&alive_list)
        .expect("alive set is a nonempty valid subset");
    let base_local = match claim1_construct(&base) {
        Ok(Some(tree)) => tree,
        _ => find_kary_spanning_tree(&base, 4, None)
            .found()
            .cloned()
            .expect("every tournament of order >= 10 contains a 4-ary spanning tree"),
    };
    let base_tree = relabel(&base_local, &map);

    let mut tree = base_tree.clone();
    for step in steps.iter().rev() {
        let star = RootedTree::star(step.removed_root, &step.removed_leaves)
            .expect("peeled leaves are distinct and exclude the peeled root");
        tree = lemma1_extend(t, &tree, &star, 4)?;
    }
    Ok((
        tree,
        ReductionTrace {
            steps,
            base_order: alive_count,
            base_tree,
        },
    ))
}

fn relabel(tree: &RootedTree, map: &[usize]) -> RootedTree {
    let entries: Vec<(usize, usize)> = tree
        .vertices()
        .into_iter()
        .filter_map(|v| tree.parent_of(v).map(|p| (map[v], map[p])))
        .collect();
    RootedTree::from_parent_entries(map[tree.root()], entries)
        .expect("relabeling preserves tree shape")
}

/// Extends a k-ary tree `r` by a vertex-disjoint star `s` (root `u`, with
/// k-1 or k leaves) into a k-ary tree on the union, provided `u` beats at
/// least one tree vertex. When `r`'s root beats `u`, the result keeps
/// `r`'s root.
///
/// With k-1 leaves a local graft always suffices: walking up from any
/// vertex that `u` beats, either some ancestor's parent beats `u` (swap
/// `u` into that slot and hand the displaced vertex to `u`) or `u` beats
/// the root (make the root `u`'s k-th child). With k leaves `u` is
/// already full, so it is hung under a free slot if one exists; otherwise
/// a bounded exact search on the union finishes, which the extension
/// lemma guarantees to succeed.
pub fn lemma1_extend(
    t: &Tournament,
    r: &RootedTree,
    s: &RootedTree,
    k: usize,
) -> Result<RootedTree, ConstructError> {
    assert!(k >= 1);
    let u = s.root();
    let star_counts = s.child_counts();
    let leaves: Vec<usize> = s.vertices().into_iter().filter(|&v| v != u).collect();
    // star shape: depth 1, every arc u -> leaf present in t
    if star_counts.len() != 1 || star_counts.get(&u) != Some(&leaves.len()) {
        return Err(violated(Precondition::NotStarOfTournament));
    }
    if s.vertices().iter().any(|&v| v >= t.order())
        || r.vertices().iter().any(|&v| v >= t.order())
        || leaves.iter().any(|&l| !t.beats(u, l))
    {
        return Err(violated(Precondition::NotStarOfTournament));
    }
    let m = leaves.len();
    if m + 1 != k && m != k {
        return Err(violated(Precondition::ArityMismatch { leaves: m, k }));
    }
    if r.vertices().iter().any(|&v| s.contains(v)) {
        return Err(violated(Precondition::Overlap));
    }
    if !validate_kary_in(r, t, k).valid {
        return Err(violated(Precondition::NotKaryTree));
    }
    let beaten: Vec<usize> = r.vertices().into_iter().filter(|&x| t.beats(u, x)).collect();
    if beaten.is_empty() {
        return Err(violated(Precondition::NoArcIntoTree));
    }

    let root = r.root();
    let merged = || {
        let mut out = r.clone();
        for &l in &leaves {
            out = out.with_parent(l, u);
        }
        out
    };

    let result = if m == k - 1 {
        // graft: u absorbs one beaten vertex as its k-th child
        let mut swap = None;
        for &x in &beaten {
            if x == root {
                continue;
            }
            let p = r.parent_of(x).expect("non-root tree vertex has a parent");
            if t.beats(p, u) {
                swap = Some((x, p));
                break;
            }
        }
        match swap {
            Some((x, p)) => merged().with_parent(x, u).with_parent(u, p),
            None => {
                // every beaten vertex's ancestors are all beaten by u, so
                // u beats the root and becomes the new root
                debug_assert!(t.beats(u, root));
                merged().with_parent(root, u).with_root(u)
            }
        }
    } else {
        // u arrives full; it needs a parent with a free child slot
        let counts = r.child_counts();
        let deficient = counts.iter().find(|&(_, &c)| c < k).map(|(&v, _)| v);
        let slot = match deficient {
            Some(q) if t.beats(q, u) => Some(q),
            Some(_) => None,
            None => r
                .vertices()
                .into_iter()
                .filter(|v| !counts.contains_key(v))
                .find(|&leaf| t.beats(leaf, u)),
        };
        match slot {
            Some(q) => merged().with_parent(u, q),
            None => {
                // no local slot: solve the union outright. The extension
                // lemma guarantees a k-ary tree on the union exists, and
                // one rooted at r's root when that root beats u.
                let mut union: Vec<usize> = r.vertices();
                union.extend(s.vertices());
                union.sort_unstable();
                let (sub, map) = t.induced(&union).expect("union is a valid subset");
                let local_root = map
                    .iter()
                    .position(|&old| old == root)
                    .expect("root is in the union");
                let solved = solve_preferring_root(
                    &sub,
                    k,
                    SolveOptions {
                        budget: None,
                        obstruction_precheck: false,
                    },
                    local_root,
                );
                let tree = solved
                    .found()
                    .expect("extension lemma guarantees a k-ary tree on the union");
                relabel(tree, &map)
            }
        }
    };
    debug_assert!(validate_kary_in(&result, t, k).valid);
    debug_assert_eq!(result.vertex_count(), r.vertex_count() + m + 1);
    Ok(result)
}

/// Fast-path construction for orders 10..13: if some in-neighbor `v` of
/// the maximum-out-degree vertex `u` beats all other in-neighbors of `u`
/// and at least `4 - d^-(u)` of its out-neighbors, the tree is explicit:
/// `v` takes the other in-neighbors, the chosen out-neighbors, and `u`;
/// `u` takes four fresh out-neighbors including a vertex `w` that beats
/// everything left; `w` takes the rest. Returns `Ok(None)` when no such
/// `v` exists.
pub fn claim1_construct(t: &Tournament) -> Result<Option<RootedTree>, ConstructError> {
    let n = t.order();
    if !(10..=13).contains(&n) {
        return Err(violated(Precondition::OrderOutOfRange(n)));
    }
    let all: Vec<usize> = t.vertices().collect();
    let (u, _) = t.max_outdegree_in(&all).expect("nonempty");
    let in_nbrs = t.in_neighbors(u);
    let dm = in_nbrs.len();
    if !(1..=4).contains(&dm) {
        return Err(violated(Precondition::InDegreeOutOfRange(dm)));
    }

    let out_nbrs = t.out_neighbors(u);
    let candidate = in_nbrs.iter().copied().find(|&v| {
        let beats_others = in_nbrs.iter().all(|&x| x == v || t.beats(v, x));
        let out_hits = out_nbrs.iter().filter(|&&y| t.beats(v, y)).count();
        beats_others && out_hits >= 4 - dm
    });
    let v = match candidate {
        Some(v) => v,
        None => return Ok(None),
    };

    // v's children: the other in-neighbors of u, 4-d^-(u) of u's
    // out-neighbors that v beats (lowest labels), and u itself
    let picks: Vec<usize> = out_nbrs
        .iter()
        .copied()
        .filter(|&y| t.beats(v, y))
        .take(4 - dm)
        .collect();
    let mut entries: Vec<(usize, usize)> = Vec::with_capacity(n - 1);
    for &x in &in_nbrs {
        if x != v {
            entries.push((x, v));
        }
    }
    for &y in &picks {
        entries.push((y, v));
    }
    entries.push((u, v));

    // the n-5 remaining vertices are all out-neighbors of u
    let rest: Vec<usize> = out_nbrs
        .iter()
        .copied()
        .filter(|y| !picks.contains(y))
        .collect();
    debug_assert_eq!(rest.len(), n - 5);
    let (w, w_deg) = t.max_outdegree_in(&rest).expect("rest is nonempty");
    debug_assert!(w_deg >= n - 9, "averaging bound ceil((n-6)/2) >= n-9");

    // u's children: w, everything in rest that beats w (at most 3), then
    // lowest-labeled vertices beaten by w until u has four
    let mut u_children = vec![w];
    u_children.extend(rest.iter().copied().filter(|&x| x != w && t.beats(x, w)));
    debug_assert!(u_children.len() <= 4);
    for &x in &rest {
        if u_children.len() == 4 {
            break;
        }
        if x != w && t.beats(w, x) && !u_children.contains(&x) {
            u_children.push(x);
        }
    }
    for &x in &u_children {
        entries.push((x, u));
    }
    for &x in &rest {
        if x != w && !u_children.contains(&x) {
            debug_assert!(t.beats(w, x));
            entries.push((x, w));
        }
    }

    let tree = RootedTree::from_parent_entries(v, entries)
        .expect("explicit construction is a well-formed tree");
    debug_assert!(crate::tree::validate_kary_spanning(&tree, t, 4)
        .map(|r| r.valid)
        .unwrap_or(false));
    Ok(Some(tree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedSpec;
    use crate::tree::{validate_kary_spanning, RootedTree};

    #[test]
    fn order_too_small() {
        let t9 = Tournament::circulant(9, &[1, 2, 3, 5]).unwrap();
        assert_eq!(
            solve_k4_constructive(&t9).unwrap_err(),
            ConstructError::OrderTooSmall(9)
        );
    }

    #[test]
    fn transitive_14_single_reduction() {
        let t = Tournament::transitive(14);
        let (tree, trace) = solve_k4_constructive(&t).unwrap();
        assert!(validate_kary_spanning(&tree, &t, 4).unwrap().valid);
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.base_order, 10);
        // lowest vertex with out-degree >= 4 is 0; lowest out-neighbors 1,2,3
        assert_eq!(trace.steps[0].removed_root, 0);
        assert_eq!(trace.steps[0].removed_leaves, [1, 2, 3]);
        assert_eq!(trace.steps[0].retained, 4);
    }

    #[test]
    fn base_orders_solve_directly() {
        for n in 10..=13 {
            for seed in 0..10 {
                let t = Tournament::random(n, SeedSpec::new(seed, 7));
                let (tree, trace) = solve_k4_constructive(&t).unwrap();
                assert!(validate_kary_spanning(&tree, &t, 4).unwrap().valid);
                assert!(trace.steps.is_empty());
                assert_eq!(trace.base_order, n);
            }
        }
    }

    #[test]
    fn medium_random_instances_validate() {
        for (seed, n) in [(1u64, 20), (2, 37), (3, 50), (4, 101)] {
            let t = Tournament::random(n, SeedSpec::new(seed, 11));
            let (tree, trace) = solve_k4_constructive(&t).unwrap();
            assert!(validate_kary_spanning(&tree, &t, 4).unwrap().valid);
            assert_eq!(trace.base_order, n - 4 * trace.steps.len());
            assert!((10..=13).contains(&trace.base_order));
        }
    }

    #[test]
    fn trace_replay_reproduces_valid_trees() {
        let t = Tournament::random(30, SeedSpec::new(8, 0));
        let (tree, trace) = solve_k4_constructive(&t).unwrap();
        let mut replay = trace.base_tree.clone();
        assert!(validate_kary_in(&replay, &t, 4).valid);
        for step in trace.steps.iter().rev() {
            let star = RootedTree::star(step.removed_root, &step.removed_leaves).unwrap();
            assert!(replay.contains(step.retained));
            replay = lemma1_extend(&t, &replay, &star, 4).unwrap();
            assert!(validate_kary_in(&replay, &t, 4).valid);
        }
        assert_eq!(replay, tree);
    }

    #[test]
    fn trace_log_format() {
        let t = Tournament::transitive(14);
        let (_, trace) = solve_k4_constructive(&t).unwrap();
        assert_eq!(trace.to_log(), "step 0 1 2 3 4\n");
    }

    #[test]
    fn extend_with_k_minus_1_star() {
        // tree on {5..9} inside transitive_10, star 0 -> {1,2,3}; 0 beats 5
        let t = Tournament::transitive(10);
        let r = RootedTree::star(5, &[6, 7, 8, 9]).unwrap();
        let s = RootedTree::star(0, &[1, 2, 3]).unwrap();
        let out = lemma1_extend(&t, &r, &s, 4).unwrap();
        assert_eq!(out.vertex_count(), 9);
        assert!(validate_kary_in(&out, &t, 4).valid);
    }

    #[test]
    fn extend_with_full_star_falls_back_to_search() {
        // transitive order: r root 5 with leaves {6,7,8,9} is full; star
        // root 0 beats 5, no deficient slot, no leaf of r beats 0, so the
        // fallback search runs on the union
        let t = Tournament::transitive(10);
        let r = RootedTree::star(5, &[6, 7, 8, 9]).unwrap();
        let s = RootedTree::star(0, &[1, 2, 3, 4]).unwrap();
        let out = lemma1_extend(&t, &r, &s, 4).unwrap();
        assert_eq!(out.vertex_count(), 10);
        assert!(validate_kary_spanning(&out, &t, 4).unwrap().valid);
    }

    #[test]
    fn extend_with_full_star_into_deficient_slot() {
        // transitive order with the single pair (5,6) flipped so the star
        // root 6 beats a tree vertex; the deficient vertex 1 beats 6 and
        // absorbs it, staying the unique deficient vertex
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for u in 0..11usize {
            for v in (u + 1)..11 {
                if (u, v) == (5, 6) {
                    arcs.push((6, 5));
                } else {
                    arcs.push((u, v));
                }
            }
        }
        let t = Tournament::from_arc_list(11, &arcs).unwrap();
        let r = RootedTree::from_parent_entries(0, [(1, 0), (2, 0), (3, 0), (4, 0), (5, 1)])
            .unwrap();
        let s = RootedTree::star(6, &[7, 8, 9, 10]).unwrap();
        let out = lemma1_extend(&t, &r, &s, 4).unwrap();
        assert_eq!(out.parent_of(6), Some(1));
        assert_eq!(out.root(), 0);
        let rep = validate_kary_spanning(&out, &t, 4).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.deficient_vertex, Some(1));
    }

    #[test]
    fn extend_rooted_clause_keeps_root() {
        // r's root 0 beats star root 1 in the transitive order, so the
        // extension keeps root 0
        let t = Tournament::transitive(9);
        let r = RootedTree::star(0, &[5, 6, 7, 8]).unwrap();
        let s = RootedTree::star(1, &[2, 3, 4]).unwrap();
        let out = lemma1_extend(&t, &r, &s, 4).unwrap();
        assert_eq!(out.root(), 0);
        assert!(validate_kary_spanning(&out, &t, 4).unwrap().valid);
    }

    #[test]
    fn extend_with_full_star_under_a_leaf() {
        // transitive order with (0,5) flipped: star root 5 beats the tree
        // root 0, but r is full, so 5 hangs under the lowest leaf beating
        // it and that leaf becomes the unique deficient vertex
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for u in 0..10usize {
            for v in (u + 1)..10 {
                if (u, v) == (0, 5) {
                    arcs.push((5, 0));
                } else {
                    arcs.push((u, v));
                }
            }
        }
        let t = Tournament::from_arc_list(10, &arcs).unwrap();
        let r = RootedTree::star(0, &[1, 2, 3, 4]).unwrap();
        let s = RootedTree::star(5, &[6, 7, 8, 9]).unwrap();
        let out = lemma1_extend(&t, &r, &s, 4).unwrap();
        assert_eq!(out.parent_of(5), Some(1));
        let rep = validate_kary_spanning(&out, &t, 4).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.deficient_vertex, Some(1));
    }

    #[test]
    fn extend_precondition_overlap() {
        let t = Tournament::transitive(10);
        let r = RootedTree::star(5, &[6, 7, 8, 9]).unwrap();
        let s = RootedTree::star(0, &[1, 2, 9]).unwrap();
        assert_eq!(
            lemma1_extend(&t, &r, &s, 4).unwrap_err(),
            violated(Precondition::Overlap)
        );
    }

    #[test]
    fn extend_precondition_arity() {
        let t = Tournament::transitive(10);
        let r = RootedTree::star(5, &[6, 7, 8, 9]).unwrap();
        let s = RootedTree::star(0, &[1, 2]).unwrap();
        assert_eq!(
            lemma1_extend(&t, &r, &s, 4).unwrap_err(),
            violated(Precondition::ArityMismatch { leaves: 2, k: 4 })
        );
    }

    #[test]
    fn extend_precondition_no_arc() {
        // star root 6 beats nothing among {0,1,2} in the transitive order
        let t = Tournament::transitive(10);
        let r = RootedTree::star(0, &[1, 2]).unwrap();
        let s = RootedTree::star(6, &[7, 8, 9]).unwrap();
        assert!(matches!(
            lemma1_extend(&t, &r, &s, 3),
            Err(ConstructError::PreconditionViolated(
                Precondition::NoArcIntoTree
            ))
        ));
    }

    #[test]
    fn claim1_rejects_transitive_10() {
        // max out-degree vertex 0 has in-degree 0
        let t = Tournament::transitive(10);
        assert_eq!(
            claim1_construct(&t).unwrap_err(),
            violated(Precondition::InDegreeOutOfRange(0))
        );
    }

    #[test]
    fn claim1_rejects_order_14() {
        let t = Tournament::random(14, SeedSpec::new(0, 0));
        assert_eq!(
            claim1_construct(&t).unwrap_err(),
            violated(Precondition::OrderOutOfRange(14))
        );
    }

    #[test]
    fn claim1_trees_match_proof_shape() {
        let mut fired = 0;
        for seed in 0..200u64 {
            let t = Tournament::random(10, SeedSpec::new(seed, 3));
            if let Ok(Some(tree)) = claim1_construct(&t) {
                fired += 1;
                let rep = validate_kary_spanning(&tree, &t, 4).unwrap();
                assert!(rep.valid, "seed {seed}");
                // proof shape: root v has u among its children; u has 4
                let v = tree.root();
                let all: Vec<usize> = t.vertices().collect();
                let (u, _) = t.max_outdegree_in(&all).unwrap();
                assert!(tree.children_of(v).contains(&u));
                assert_eq!(tree.children_of(u).len(), 4);
            }
        }
        assert!(fired > 0, "hypothesis should fire on some seeded instances");
    }
}
