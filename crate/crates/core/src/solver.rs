//! Decision procedures for k-ary spanning tree existence: a naive
//! exhaustive oracle for small orders, the branch-and-prune solver with
//! certificates, the pairwise out-neighborhood obstruction test, the
//! domination counting bound, and a counterexample prober.

use std::time::{Duration, Instant};

use crate::rng::SeedSpec;
use crate::tournament::Tournament;
use crate::tree::RootedTree;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("oracle supports order <= {max}, got {n}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("exhaustive enumeration of order {n} needs {pairs} pair bits (cap {cap})")]
    ExhaustiveTooLarge { n: usize, pairs: usize, cap: usize },
}

/// Largest order [`brute_force_oracle`] accepts.
pub const ORACLE_MAX_ORDER: usize = 10;

/// Exhaustive existence oracle: enumerates every parent assignment
/// `parent(v) in N^-(v)` over every root and tests the k-ary spanning
/// conditions on each complete assignment. Exponential and memo-free;
/// kept structurally independent of the search in
/// [`find_kary_spanning_tree`], whose pruning it cross-checks.
pub fn brute_force_oracle(t: &Tournament, k: usize) -> Result<bool, SolverError> {
    assert!(k >= 1);
    let n = t.order();
    if n > ORACLE_MAX_ORDER {
        return Err(SolverError::OrderTooLarge {
            n,
            max: ORACLE_MAX_ORDER,
        });
    }
    if n == 1 {
        return Ok(true);
    }
    let in_neighbors: Vec<Vec<usize>> = (0..n).map(|v| t.in_neighbors(v)).collect();
    let mut parent = vec![usize::MAX; n];
    let mut child_count = vec![0usize; n];
    for root in 0..n {
        if assign_parents(
            t,
            k,
            root,
            0,
            &in_neighbors,
            &mut parent,
            &mut child_count,
        ) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn assign_parents(
    t: &Tournament,
    k: usize,
    root: usize,
    v: usize,
    in_neighbors: &[Vec<usize>],
    parent: &mut [usize],
    child_count: &mut [usize],
) -> bool {
    let n = t.order();
    if v == n {
        return parent_map_is_kary_tree(n, k, root, parent, child_count);
    }
    if v == root {
        return assign_parents(t, k, root, v + 1, in_neighbors, parent, child_count);
    }
    for &p in &in_neighbors[v] {
        // no vertex of a k-ary tree has more than k children
        if child_count[p] == k {
            continue;
        }
        parent[v] = p;
        child_count[p] += 1;
        if assign_parents(t, k, root, v + 1, in_neighbors, parent, child_count) {
            return true;
        }
        child_count[p] -= 1;
        parent[v] = usize::MAX;
    }
    false
}

fn parent_map_is_kary_tree(
    n: usize,
    k: usize,
    root: usize,
    parent: &[usize],
    child_count: &[usize],
) -> bool {
    // acyclicity: every parent chain reaches the root within n steps
    for start in 0..n {
        let mut cur = start;
        let mut steps = 0;
        while cur != root {
            cur = parent[cur];
            steps += 1;
            if steps > n {
                return false;
            }
        }
    }
    let mut deficient = 0;
    for &c in child_count.iter().take(n) {
        if c > k {
            return false;
        }
        if c >= 1 && c < k {
            deficient += 1;
        }
    }
    deficient <= 1
}

/// A directed path through every vertex, i.e. a 1-ary spanning tree.
/// Total by Redei's theorem; built by insertion with a binary search for
/// the splice point, so the worst case stays O(n log n) arc probes.
pub fn hamiltonian_path(t: &Tournament) -> RootedTree {
    let n = t.order();
    let mut path: Vec<usize> = vec![0];
    for v in 1..n {
        if t.beats(v, path[0]) {
            path.insert(0, v);
            continue;
        }
        if t.beats(*path.last().unwrap(), v) {
            path.push(v);
            continue;
        }
        // invariant: path[lo] beats v, v beats path[hi]
        let (mut lo, mut hi) = (0, path.len() - 1);
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if t.beats(path[mid], v) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        path.insert(hi, v);
    }
    RootedTree::path(&path)
}

/// Certificate that a tournament contains no k-ary spanning tree, by the
/// pairwise out-neighborhood condition over the high-out-degree set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionWitness {
    pub k: usize,
    /// `T_{>=k}`: the vertices of out-degree at least k.
    pub t_geq_k: Vec<usize>,
    /// Largest `|(N+(u) u N+(v)) \ {u,v}|` over pairs of `t_geq_k`.
    pub max_pair_union: usize,
    /// A pair attaining the maximum (lexicographically first); absent in
    /// the vacuous case `|t_geq_k| <= 1`.
    pub attaining_pair: Option<(usize, usize)>,
}

/// Returns a nonexistence witness iff `n >= 2k+1` and every pair of
/// distinct vertices in `T_{>=k}` satisfies
/// `|(N+(u) u N+(v)) \ {u,v}| <= 2k-2`. A returned witness soundly proves
/// that no k-ary spanning tree exists; `None` proves nothing.
pub fn obstruction_check(t: &Tournament, k: usize) -> Option<ObstructionWitness> {
    assert!(k >= 1);
    let n = t.order();
    if n < 2 * k + 1 {
        return None;
    }
    let t_geq_k: Vec<usize> = t.vertices().filter(|&v| t.out_degree(v) >= k).collect();
    // Vacuous case |T_{>=k}| <= 1 counts as condition-satisfied, and the
    // conclusion still holds: a k-ary spanning tree on n >= 2k+1 vertices
    // has ceil((n-1)/k) >= 2 internal vertices of which at most one is
    // deficient, so at least ceil((n-1)/k) - 1 of them have exactly k
    // children and out-degree >= k; for n = 2k+1 the tree is full and both
    // internal vertices do. Either way |T_{>=k}| >= 2 would be required.
    if t_geq_k.len() <= 1 {
        return Some(ObstructionWitness {
            k,
            t_geq_k,
            max_pair_union: 0,
            attaining_pair: None,
        });
    }
    let w = t.blocks();
    let mut max_union = 0usize;
    let mut pair = (t_geq_k[0], t_geq_k[1]);
    let mut union = vec![0u64; w];
    for (i, &u) in t_geq_k.iter().enumerate() {
        for &v in &t_geq_k[i + 1..] {
            union.copy_from_slice(t.out_row(u));
            crate::bits::or_into(&mut union, t.out_row(v));
            crate::bits::clear(&mut union, u);
            crate::bits::clear(&mut union, v);
            let size = crate::bits::count(&union);
            if size > max_union {
                max_union = size;
                pair = (u, v);
            }
        }
    }
    if max_union <= 2 * k - 2 {
        Some(ObstructionWitness {
            k,
            t_geq_k,
            max_pair_union: max_union,
            attaining_pair: Some(pair),
        })
    } else {
        None
    }
}

/// The counting bound: a k-ary spanning tree has exactly
/// `ceil((n-1)/k)` internal vertices and they dominate the tournament,
/// so `ceil((n-1)/k) < mu` proves nonexistence. `mu` must be a valid
/// lower bound on the domination number.
///
/// The internal-set argument needs n >= 2: a single vertex is its own
/// spanning tree with an empty internal set, while mu >= 1 always, so
/// the check makes no claim at n = 1.
pub fn domination_bound_check(t: &Tournament, k: usize, mu: usize) -> bool {
    assert!(k >= 1);
    t.order() >= 2 && (t.order() - 1).div_ceil(k) < mu
}

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A k-ary spanning tree; always passes `validate_kary_spanning`.
    Found(RootedTree),
    /// The search space was exhausted (or a sound certificate fired).
    ProvenNone,
    /// The node budget ran out before either answer.
    BudgetExceeded,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub outcome: SolveOutcome,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn found(&self) -> Option<&RootedTree> {
        match &self.outcome {
            SolveOutcome::Found(tree) => Some(tree),
            _ => None,
        }
    }

    pub fn proven_none(&self) -> bool {
        matches!(self.outcome, SolveOutcome::ProvenNone)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Cap on search-tree nodes; exhaustion is an outcome, not an error.
    pub budget: Option<u64>,
    /// Run the obstruction certificate before searching. Disabled where
    /// the search itself must serve as independent evidence.
    pub obstruction_precheck: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: None,
            obstruction_precheck: true,
        }
    }
}

/// Complete decision procedure for "does `t` contain a k-ary spanning
/// tree": `Found` with a certificate tree, `ProvenNone` after exhausting
/// every rooted construction, or `BudgetExceeded`. Deterministic for
/// fixed inputs.
pub fn find_kary_spanning_tree(t: &Tournament, k: usize, budget: Option<u64>) -> SolveResult {
    find_kary_spanning_tree_with(
        t,
        k,
        SolveOptions {
            budget,
            ..SolveOptions::default()
        },
    )
}

pub fn find_kary_spanning_tree_with(t: &Tournament, k: usize, opts: SolveOptions) -> SolveResult {
    solve_impl(t, k, opts, None)
}

/// Same search, but tries `preferred` as the root before the usual order.
/// Used where a caller knows a tree with that root exists and wants it.
pub(crate) fn solve_preferring_root(
    t: &Tournament,
    k: usize,
    opts: SolveOptions,
    preferred: usize,
) -> SolveResult {
    solve_impl(t, k, opts, Some(preferred))
}

fn solve_impl(
    t: &Tournament,
    k: usize,
    opts: SolveOptions,
    preferred_root: Option<usize>,
) -> SolveResult {
    assert!(k >= 1);
    let start = Instant::now();
    let n = t.order();
    if n == 1 {
        return SolveResult {
            outcome: SolveOutcome::Found(RootedTree::singleton(0)),
            nodes_explored: 0,
            elapsed: start.elapsed(),
        };
    }
    if opts.obstruction_precheck && obstruction_check(t, k).is_some() {
        return SolveResult {
            outcome: SolveOutcome::ProvenNone,
            nodes_explored: 0,
            elapsed: start.elapsed(),
        };
    }

    // roots in decreasing out-degree order, ties by lowest label
    let mut roots: Vec<usize> = (0..n).collect();
    roots.sort_by_key(|&v| (std::cmp::Reverse(t.out_degree(v)), v));
    if let Some(p) = preferred_root {
        roots.retain(|&v| v != p);
        roots.insert(0, p);
    }

    let mut search = Search::new(t, k, opts.budget);
    for root in roots {
        if search.run_from_root(root) {
            let entries: Vec<(usize, usize)> = (0..n)
                .filter(|&v| v != root)
                .map(|v| (v, search.parent[v]))
                .collect();
            let tree = RootedTree::from_parent_entries(root, entries)
                .expect("search produces a well-formed tree");
            return SolveResult {
                outcome: SolveOutcome::Found(tree),
                nodes_explored: search.nodes,
                elapsed: start.elapsed(),
            };
        }
        if search.budget_hit {
            return SolveResult {
                outcome: SolveOutcome::BudgetExceeded,
                nodes_explored: search.nodes,
                elapsed: start.elapsed(),
            };
        }
    }
    SolveResult {
        outcome: SolveOutcome::ProvenNone,
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
    }
}

/// Depth-first search over partial trees. A state is the set of placed
/// vertices, a FIFO of placed vertices whose child sets are still
/// undecided, the number of internal vertices committed so far, and
/// whether the single allowed deficient vertex has been used. Each step
/// pops the next undecided vertex and commits its whole child set: k
/// children, `spare` children (once, when `spare > 0`), or none. Every
/// rooted k-ary spanning tree corresponds to exactly one decision
/// sequence, so exhausting the decisions is a proof of nonexistence.
struct Search<'a> {
    t: &'a Tournament,
    k: usize,
    /// (n-1) mod k: forced child count of the deficient vertex, 0 if the
    /// tree must be full.
    spare: usize,
    /// ceil((n-1)/k): exact number of internal vertices of any k-ary
    /// spanning tree.
    total_internal: usize,
    budget: Option<u64>,
    nodes: u64,
    budget_hit: bool,
    unplaced: Vec<u64>,
    queue: Vec<usize>,
    head: usize,
    parent: Vec<usize>,
    internal_used: usize,
    deficiency_spent: bool,
    cover_scratch: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(t: &'a Tournament, k: usize, budget: Option<u64>) -> Self {
        let n = t.order();
        Search {
            t,
            k,
            spare: (n - 1) % k,
            total_internal: (n - 1).div_ceil(k),
            budget,
            nodes: 0,
            budget_hit: false,
            unplaced: vec![0; t.blocks()],
            queue: Vec::with_capacity(n),
            head: 0,
            parent: vec![usize::MAX; n],
            internal_used: 0,
            deficiency_spent: false,
            cover_scratch: vec![0; t.blocks()],
        }
    }

    fn run_from_root(&mut self, root: usize) -> bool {
        let n = self.t.order();
        self.unplaced.copy_from_slice(&crate::bits::full(n));
        crate::bits::clear(&mut self.unplaced, root);
        self.queue.clear();
        self.queue.push(root);
        self.head = 0;
        self.internal_used = 0;
        self.deficiency_spent = false;
        self.dfs()
    }

    fn dfs(&mut self) -> bool {
        if crate::bits::is_empty(&self.unplaced) {
            // all vertices placed: remaining queue entries are leaves, and
            // the count identities force the k-ary shape to be complete
            return true;
        }
        if self.head == self.queue.len() || self.budget_hit {
            return false;
        }
        self.nodes += 1;
        if let Some(cap) = self.budget {
            if self.nodes > cap {
                self.budget_hit = true;
                return false;
            }
        }
        if !self.feasible() {
            return false;
        }

        let p = self.queue[self.head];
        self.head += 1;
        let avail: Vec<usize> = crate::bits::ones(self.t.out_row(p))
            .filter(|&v| crate::bits::get(&self.unplaced, v))
            .collect();

        if self.internal_used < self.total_internal {
            if avail.len() >= self.k {
                self.internal_used += 1;
                if self.explore_child_sets(p, &avail, self.k) {
                    return true;
                }
                self.internal_used -= 1;
            }
            if self.spare > 0 && !self.deficiency_spent && avail.len() >= self.spare {
                self.internal_used += 1;
                self.deficiency_spent = true;
                if self.explore_child_sets(p, &avail, self.spare) {
                    return true;
                }
                self.deficiency_spent = false;
                self.internal_used -= 1;
            }
        }
        // p stays a leaf
        if self.dfs() {
            return true;
        }
        self.head -= 1;
        false
    }

    /// All `size`-subsets of `avail` in lexicographic order as p's child
    /// set. On success the placement is left in place.
    fn explore_child_sets(&mut self, p: usize, avail: &[usize], size: usize) -> bool {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            for &i in &idx {
                let c = avail[i];
                crate::bits::clear(&mut self.unplaced, c);
                self.parent[c] = p;
                self.queue.push(c);
            }
            if self.dfs() {
                return true;
            }
            for &i in &idx {
                crate::bits::set(&mut self.unplaced, avail[i]);
            }
            self.queue.truncate(self.queue.len() - size);
            // next lexicographic combination
            let mut pos = size;
            while pos > 0 {
                pos -= 1;
                if idx[pos] < avail.len() - (size - pos) {
                    idx[pos] += 1;
                    for j in pos + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if pos == 0 {
                    return false;
                }
            }
        }
    }

    /// Necessary conditions for any completion of the current state:
    /// every unplaced vertex has a potential parent, and the undecided
    /// and unplaced vertices offer enough residual out-degree to supply
    /// the remaining internal vertices. The remaining internal count is
    /// exact (total_internal - internal_used), which generalizes the
    /// ceil((n-1)/k) counting bound to residual instances.
    fn feasible(&mut self) -> bool {
        let i_rem = self.total_internal - self.internal_used;
        if i_rem == 0 {
            return false; // unplaced vertices remain but no internal slots
        }
        let deficiency_pending = self.spare > 0 && !self.deficiency_spent;
        let needed_full = i_rem - usize::from(deficiency_pending);
        let min_arity = if deficiency_pending { self.spare } else { self.k };

        self.cover_scratch.iter_mut().for_each(|b| *b = 0);
        let mut full_capable = 0usize;
        let mut any_capable = 0usize;
        let undecided = self.queue[self.head..].iter().copied();
        let unplaced_vertices = crate::bits::ones(&self.unplaced);
        for x in undecided.chain(unplaced_vertices) {
            let d = self.t.out_degree_in(x, &self.unplaced);
            if d == 0 {
                continue;
            }
            crate::bits::or_into(&mut self.cover_scratch, self.t.out_row(x));
            full_capable += usize::from(d >= self.k);
            any_capable += usize::from(d >= min_arity);
        }
        if full_capable < needed_full || any_capable < i_rem {
            return false;
        }
        crate::bits::is_subset(&self.unplaced, &self.cover_scratch)
    }
}

/// How [`probe_counterexample`] samples the space of tournaments.
#[derive(Debug, Clone, Copy)]
pub enum ProbeMode {
    /// All `2^(n(n-1)/2)` labeled tournaments, in Gray-code order of the
    /// pair-orientation mask. Absence is a proof over that order.
    Exhaustive { allow_large: bool },
    /// Seeded random trials; absence proves nothing.
    Random { seed: u64, trials: u64 },
}

/// Pair-bit budget accepted by exhaustive probing without `allow_large`
/// (28 bits = order 8).
pub const EXHAUSTIVE_DEFAULT_PAIR_CAP: usize = 28;
/// Hard cap from the u64 orientation mask (order 11).
pub const EXHAUSTIVE_HARD_PAIR_CAP: usize = 63;

/// Searches order-n tournaments for one with no k-ary spanning tree.
/// Every returned tournament is solver-verified `ProvenNone`. With more
/// than one job the candidates are scanned in parallel but the result is
/// still the first hit in scan order.
pub fn probe_counterexample(
    n: usize,
    k: usize,
    mode: ProbeMode,
    jobs: usize,
) -> Result<Option<Tournament>, SolverError> {
    assert!(n >= 1 && k >= 1);
    let lacks_tree = |t: &Tournament| find_kary_spanning_tree(t, k, None).proven_none();
    match mode {
        ProbeMode::Exhaustive { allow_large } => {
            let pairs = n * (n - 1) / 2;
            let cap = if allow_large {
                EXHAUSTIVE_HARD_PAIR_CAP
            } else {
                EXHAUSTIVE_DEFAULT_PAIR_CAP
            };
            if pairs > cap {
                return Err(SolverError::ExhaustiveTooLarge { n, pairs, cap });
            }
            let total: u64 = 1u64 << pairs;
            let candidate = |i: u64| Tournament::from_pair_bits(n, i ^ (i >> 1));
            if jobs <= 1 {
                for i in 0..total {
                    let t = candidate(i);
                    if lacks_tree(&t) {
                        return Ok(Some(t));
                    }
                }
                Ok(None)
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .expect("thread pool");
                use rayon::prelude::*;
                Ok(pool.install(|| {
                    (0..total)
                        .into_par_iter()
                        .map(candidate)
                        .find_first(lacks_tree)
                }))
            }
        }
        ProbeMode::Random { seed, trials } => {
            let candidate = |i: u64| Tournament::random(n, SeedSpec::new(seed, i));
            if jobs <= 1 {
                for i in 0..trials {
                    let t = candidate(i);
                    if lacks_tree(&t) {
                        return Ok(Some(t));
                    }
                }
                Ok(None)
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .expect("thread pool");
                use rayon::prelude::*;
                Ok(pool.install(|| {
                    (0..trials)
                        .into_par_iter()
                        .map(candidate)
                        .find_first(lacks_tree)
                }))
            }
        }
    }
}
