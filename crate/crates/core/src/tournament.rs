//! Tournament representation, generators, induced subtournaments, degree
//! queries, and the text formats.
//!
//! Vertices are dense integer labels `0..n`. The orientation relation is
//! stored as row-major bit rows (one row of `ceil(n/64)` words per vertex),
//! with the transpose kept alongside so in-neighborhood queries are as
//! cheap as out-neighborhood ones. Tournaments are immutable after
//! construction and safe to share across threads.

use crate::bits;
use crate::rng::SeedSpec;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TournamentError {
    #[error("pair {{{0}, {1}}} has no arc")]
    MissingPair(usize, usize),
    #[error("pair {{{0}, {1}}} has arcs in both directions")]
    ConflictingPair(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex label {label} out of range for order {n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("difference set invalid: residue pair {{{0}, {1}}} not covered exactly once")]
    InvalidDifferenceSet(usize, usize),
    #[error("circulant tournaments need odd order, got {0}")]
    EvenOrder(usize),
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("vertex {label} out of range for order {n}")]
    VertexOutOfRange { label: usize, n: usize },
    #[error("syntax error on line {line}: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("parsed relation is not a tournament: {0}")]
    InvariantViolation(String),
}

/// A complete oriented graph on `n` labeled vertices: for every pair
/// `u != v` exactly one of `u beats v`, `v beats u` holds.
#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    w: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tournament(n={})", self.n)
    }
}

impl Tournament {
    fn empty_relation(n: usize) -> Self {
        assert!(n >= 1, "tournaments have at least one vertex");
        let w = bits::blocks_for(n);
        Tournament {
            n,
            w,
            out: vec![0; n * w],
            inn: vec![0; n * w],
        }
    }

    fn add_arc_unchecked(&mut self, u: usize, v: usize) {
        bits::set(&mut self.out[u * self.w..(u + 1) * self.w], v);
        bits::set(&mut self.inn[v * self.w..(v + 1) * self.w], u);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn beats(&self, u: usize, v: usize) -> bool {
        bits::get(self.out_row(u), v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        bits::count(self.out_row(v))
    }

    pub fn in_degree(&self, v: usize) -> usize {
        bits::count(self.in_row(v))
    }

    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        bits::ones(self.out_row(v)).collect()
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        bits::ones(self.in_row(v)).collect()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub(crate) fn out_row(&self, v: usize) -> &[u64] {
        &self.out[v * self.w..(v + 1) * self.w]
    }

    pub(crate) fn in_row(&self, v: usize) -> &[u64] {
        &self.inn[v * self.w..(v + 1) * self.w]
    }

    pub(crate) fn blocks(&self) -> usize {
        self.w
    }

    /// Out-degree restricted to a vertex set given as a bit mask.
    pub(crate) fn out_degree_in(&self, v: usize, mask: &[u64]) -> usize {
        bits::and_count(self.out_row(v), mask)
    }

    /// Lexicographic index of the unordered pair `{u, v}`, `u < v`, among
    /// all pairs of `0..n`. Shared by the mask constructor and the random
    /// generator so both speak the same pair order.
    pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
        debug_assert!(u < v && v < n);
        u * n - u * (u + 1) / 2 + (v - u - 1)
    }

    /// Builds the tournament of order `n <= 8` selected by a pair
    /// orientation mask: bit `pair_index(n, u, v)` set means `u beats v`,
    /// clear means `v beats u`. Enumerating all masks `0..2^(n(n-1)/2)`
    /// enumerates all labeled tournaments of order `n`.
    pub fn from_pair_bits(n: usize, mask: u64) -> Tournament {
        let m = n * (n - 1) / 2;
        assert!(m <= 64, "mask constructor supports at most 64 pairs");
        let mut t = Tournament::empty_relation(n);
        let mut idx = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                if mask >> idx & 1 == 1 {
                    t.add_arc_unchecked(u, v);
                } else {
                    t.add_arc_unchecked(v, u);
                }
                idx += 1;
            }
        }
        t
    }

    /// Builds a tournament from an explicit arc list. Every unordered pair
    /// must be covered exactly once.
    pub fn from_arc_list(n: usize, arcs: &[(usize, usize)]) -> Result<Tournament, TournamentError> {
        let mut t = Tournament::empty_relation(n);
        for &(u, v) in arcs {
            if u >= n {
                return Err(TournamentError::LabelOutOfRange { label: u, n });
            }
            if v >= n {
                return Err(TournamentError::LabelOutOfRange { label: v, n });
            }
            if u == v {
                return Err(TournamentError::SelfLoop(u));
            }
            if t.beats(u, v) || t.beats(v, u) {
                return Err(TournamentError::ConflictingPair(u.min(v), u.max(v)));
            }
            t.add_arc_unchecked(u, v);
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if !t.beats(u, v) && !t.beats(v, u) {
                    return Err(TournamentError::MissingPair(u, v));
                }
            }
        }
        Ok(t)
    }

    /// The uniform random model: each pair oriented by an independent fair
    /// coin. Pair bits are drawn in lexicographic `(u, v)` order with
    /// `u < v`, one word per pair, so the output is a pure, platform-stable
    /// function of `(n, seed)`.
    pub fn random(n: usize, seed: SeedSpec) -> Tournament {
        let mut t = Tournament::empty_relation(n);
        let mut rng = seed.rng();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.next_bool() {
                    t.add_arc_unchecked(u, v);
                } else {
                    t.add_arc_unchecked(v, u);
                }
            }
        }
        t
    }

    /// Circulant tournament on residues mod `n`: `i beats j` iff
    /// `(i - j) mod n` lies in the difference set. Requires odd `n` and a
    /// difference set containing exactly one of `{d, n-d}` for every
    /// nonzero residue `d`; the result is `(n-1)/2`-regular.
    pub fn circulant(n: usize, diffs: &[usize]) -> Result<Tournament, TournamentError> {
        if n.is_multiple_of(2) {
            return Err(TournamentError::EvenOrder(n));
        }
        let mut in_set = vec![false; n];
        for &d in diffs {
            let d = d % n;
            if d == 0 {
                return Err(TournamentError::SelfLoop(0));
            }
            in_set[d] = true;
        }
        for d in 1..=(n - 1) / 2 {
            let paired = (in_set[d] as usize) + (in_set[n - d] as usize);
            if paired != 1 {
                return Err(TournamentError::InvalidDifferenceSet(d, n - d));
            }
        }
        let mut t = Tournament::empty_relation(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && in_set[(i + n - j) % n] {
                    t.add_arc_unchecked(i, j);
                }
            }
        }
        Ok(t)
    }

    /// The transitive tournament: `i beats j` iff `i < j`; out-degree
    /// sequence `(n-1, n-2, ..., 0)`.
    pub fn transitive(n: usize) -> Tournament {
        let mut t = Tournament::empty_relation(n);
        for u in 0..n {
            for v in (u + 1)..n {
                t.add_arc_unchecked(u, v);
            }
        }
        t
    }

    /// The subtournament induced by the vertex set `xs`, together with the
    /// relabeling: `map[i]` is the old label of new vertex `i`, sorted
    /// ascending, so old label `map[i]` maps to new label `i`.
    pub fn induced(&self, xs: &[usize]) -> Result<(Tournament, Vec<usize>), TournamentError> {
        let mut map: Vec<usize> = xs.to_vec();
        map.sort_unstable();
        map.dedup();
        if map.is_empty() {
            return Err(TournamentError::EmptySubset);
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= self.n) {
            return Err(TournamentError::VertexOutOfRange {
                label: bad,
                n: self.n,
            });
        }
        let m = map.len();
        let mut t = Tournament::empty_relation(m);
        for i in 0..m {
            for j in 0..m {
                if i != j && self.beats(map[i], map[j]) {
                    t.add_arc_unchecked(i, j);
                }
            }
        }
        Ok((t, map))
    }

    /// The vertex of `xs` with maximum out-degree inside `xs`, ties broken
    /// by lowest label, with that degree. The averaging bound guarantees
    /// the value is at least `ceil((|xs| - 1) / 2)`.
    pub fn max_outdegree_in(&self, xs: &[usize]) -> Result<(usize, usize), TournamentError> {
        let mut set: Vec<usize> = xs.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return Err(TournamentError::EmptySubset);
        }
        if let Some(&bad) = set.iter().find(|&&x| x >= self.n) {
            return Err(TournamentError::VertexOutOfRange {
                label: bad,
                n: self.n,
            });
        }
        let mut mask = vec![0u64; self.w];
        for &x in &set {
            bits::set(&mut mask, x);
        }
        let mut best = (set[0], 0usize);
        let mut first = true;
        for &x in &set {
            let d = self.out_degree_in(x, &mask);
            if first || d > best.1 {
                best = (x, d);
                first = false;
            }
        }
        Ok(best)
    }
}

/// Canonical text format: `tournament <n>`, then `n` rows of `n`
/// characters over `{0,1}`; character `j` of row `i` is `1` iff `i`
/// beats `j`. Lines are LF-terminated.
pub fn serialize_tournament(t: &Tournament) -> String {
    let n = t.order();
    let mut s = String::with_capacity(n * (n + 1) + 16);
    s.push_str(&format!("tournament {n}\n"));
    for i in 0..n {
        for j in 0..n {
            s.push(if t.beats(i, j) { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

/// Parses either text format: the canonical matrix form
/// (`tournament <n>` + rows) or the arc-list form
/// (`arcs <n> <m>` + `m` lines `<i> <j>` meaning `i beats j`).
pub fn parse_tournament(text: &str) -> Result<Tournament, TournamentError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(TournamentError::SyntaxError {
        line: 1,
        msg: "empty input".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    match fields.as_slice() {
        ["tournament", n_str] => {
            let n: usize = n_str.parse().map_err(|_| TournamentError::SyntaxError {
                line: 1,
                msg: format!("bad order '{n_str}'"),
            })?;
            if n == 0 {
                return Err(TournamentError::SyntaxError {
                    line: 1,
                    msg: "order must be at least 1".into(),
                });
            }
            let mut arcs = Vec::with_capacity(n * (n - 1) / 2);
            let mut rows = 0usize;
            for (idx, line) in lines.by_ref() {
                if line.trim().is_empty() {
                    continue;
                }
                let i = rows;
                if i >= n {
                    return Err(TournamentError::SyntaxError {
                        line: idx + 1,
                        msg: "more rows than declared order".into(),
                    });
                }
                if line.len() != n {
                    return Err(TournamentError::SyntaxError {
                        line: idx + 1,
                        msg: format!("row has {} characters, expected {n}", line.len()),
                    });
                }
                for (j, c) in line.chars().enumerate() {
                    match c {
                        '1' => {
                            if i == j {
                                return Err(TournamentError::InvariantViolation(format!(
                                    "diagonal entry ({i},{i}) is 1"
                                )));
                            }
                            arcs.push((i, j));
                        }
                        '0' => {}
                        other => {
                            return Err(TournamentError::SyntaxError {
                                line: idx + 1,
                                msg: format!("unexpected character '{other}'"),
                            })
                        }
                    }
                }
                rows += 1;
            }
            if rows != n {
                return Err(TournamentError::SyntaxError {
                    line: rows + 2,
                    msg: format!("found {rows} rows, expected {n}"),
                });
            }
            Tournament::from_arc_list(n, &arcs)
                .map_err(|e| TournamentError::InvariantViolation(e.to_string()))
        }
        ["arcs", n_str, m_str] => {
            let n: usize = n_str.parse().map_err(|_| TournamentError::SyntaxError {
                line: 1,
                msg: format!("bad order '{n_str}'"),
            })?;
            let m: usize = m_str.parse().map_err(|_| TournamentError::SyntaxError {
                line: 1,
                msg: format!("bad arc count '{m_str}'"),
            })?;
            if n == 0 {
                return Err(TournamentError::SyntaxError {
                    line: 1,
                    msg: "order must be at least 1".into(),
                });
            }
            let mut arcs = Vec::with_capacity(m);
            for (idx, line) in lines {
                if line.trim().is_empty() {
                    continue;
                }
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(TournamentError::SyntaxError {
                        line: idx + 1,
                        msg: "expected two labels per arc line".into(),
                    });
                }
                let parse = |s: &str| -> Result<usize, TournamentError> {
                    s.parse().map_err(|_| TournamentError::SyntaxError {
                        line: idx + 1,
                        msg: format!("bad vertex label '{s}'"),
                    })
                };
                arcs.push((parse(parts[0])?, parse(parts[1])?));
            }
            if arcs.len() != m {
                return Err(TournamentError::SyntaxError {
                    line: arcs.len() + 2,
                    msg: format!("found {} arcs, declared {m}", arcs.len()),
                });
            }
            Tournament::from_arc_list(n, &arcs)
                .map_err(|e| TournamentError::InvariantViolation(e.to_string()))
        }
        _ => Err(TournamentError::SyntaxError {
            line: 1,
            msg: "expected 'tournament <n>' or 'arcs <n> <m>' header".into(),
        }),
    }
}
