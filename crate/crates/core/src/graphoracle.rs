//! Brute-force verification at desk scale.
//!
//! Everything here works from explicit permutations and lexicographic
//! indices, independent of the circular-window and focus-pointer machinery it
//! is used to check.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::permstream::{circular_window, write_symbols, Permutation};
use crate::seqcore::RotationBit;
use crate::{check_min_order, factorial, Error, Result};

/// Largest order for which explicit graphs are built.
pub const GRAPH_MAX_ORDER: usize = 8;

/// Largest order accepted by the walk and window checkers.
pub const CHECK_MAX_ORDER: usize = 10;

fn check_order_range(n: usize, min: usize, max: usize, guard: &'static str) -> Result<()> {
    check_min_order(n, min)?;
    if n > max {
        return Err(Error::ResourceGuard { n, limit: max, guard });
    }
    Ok(())
}

/// Outcome of a yes/no check, with the first failing index when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { index: usize, reason: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    fn fail(index: usize, reason: impl Into<String>) -> Self {
        Verdict::Fail {
            index,
            reason: reason.into(),
        }
    }
}

/// Index of `p` among the permutations of its symbols in lexicographic order.
pub fn lex_index(p: &[u8]) -> usize {
    let n = p.len();
    let mut idx = 0usize;
    for i in 0..n {
        let smaller_after = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        idx = idx * (n - i) + smaller_after;
    }
    idx
}

/// Inverse of [`lex_index`] for permutations of `1..=n`.
pub fn lex_permutation(n: usize, mut idx: usize) -> Vec<u8> {
    let mut pool: Vec<u8> = (1..=n as u8).collect();
    let mut radix: Vec<usize> = Vec::with_capacity(n);
    for base in 1..=n {
        radix.push(idx % base);
        idx /= base;
    }
    radix
        .iter()
        .rev()
        .map(|&d| pool.remove(d))
        .collect()
}

/// Rotation of the first `k` positions; `k = 1` is the identity, which makes
/// `Ξ_2` well defined.
fn rotate(p: &mut [u8], k: usize) {
    p[..k].rotate_left(1);
}

/// The Cayley graph `Ξ_n`: vertex `v` has successors `σ_n(v)` (label 0) and
/// `σ_{n-1}(v)` (label 1). Vertices are indexed lexicographically.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    n: usize,
    succ: Vec<[u32; 2]>,
}

pub fn build_cayley(n: usize) -> Result<CayleyGraph> {
    check_order_range(n, 2, GRAPH_MAX_ORDER, "explicit graph")?;
    let total = factorial(n).unwrap();
    let succ = (0..total)
        .map(|v| {
            let p = lex_permutation(n, v);
            let mut edges = [0u32; 2];
            for (label, k) in [n, n - 1].into_iter().enumerate() {
                let mut q = p.clone();
                rotate(&mut q, k);
                edges[label] = lex_index(&q) as u32;
            }
            edges
        })
        .collect();
    Ok(CayleyGraph { n, succ })
}

impl CayleyGraph {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.succ.len()
    }

    pub fn vertex(&self, v: usize) -> Permutation {
        Permutation::new(lex_permutation(self.n, v)).expect("lexicographic permutation")
    }

    pub fn index_of(&self, p: &Permutation) -> usize {
        lex_index(p.symbols())
    }

    /// Index of `n n-1 … 1`.
    pub fn start(&self) -> usize {
        self.succ.len() - 1
    }

    pub fn successor(&self, v: usize, bit: RotationBit) -> usize {
        self.succ[v][bit.as_u8() as usize] as usize
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.succ[v].len()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.succ.len()];
        for edges in &self.succ {
            for &w in edges {
                deg[w as usize] += 1;
            }
        }
        deg
    }

    /// Distinct successor per label: each label is a bijection on the vertices.
    pub fn labels_are_bijections(&self) -> bool {
        (0..2).all(|label| {
            let mut hit = vec![false; self.succ.len()];
            self.succ
                .iter()
                .all(|e| !std::mem::replace(&mut hit[e[label] as usize], true))
        })
    }
}

/// Result of walking a bit sequence through `Ξ_n` from `n n-1 … 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonReport {
    pub n: usize,
    /// All `n!` permutations before the final step are distinct.
    pub distinct: bool,
    /// The final step returns to the start.
    pub closes: bool,
    /// Step at which a permutation was first revisited.
    pub first_revisit: Option<usize>,
}

impl HamiltonReport {
    pub fn is_valid(&self) -> bool {
        self.distinct && self.closes
    }
}

pub fn validate_hamilton(bits: &[RotationBit], n: usize) -> Result<HamiltonReport> {
    check_order_range(n, 2, CHECK_MAX_ORDER, "walk check")?;
    let total = factorial(n).unwrap();
    if bits.len() != total {
        return Err(Error::CycleLength {
            len: bits.len(),
            expected: total,
        });
    }
    let start: Vec<u8> = (1..=n as u8).rev().collect();
    let mut p = start.clone();
    let mut seen = vec![false; total];
    let mut first_revisit = None;
    for (step, &bit) in bits.iter().enumerate() {
        if std::mem::replace(&mut seen[lex_index(&p)], true) {
            first_revisit = Some(step);
            break;
        }
        rotate(&mut p, if bit == RotationBit::Zero { n } else { n - 1 });
    }
    let distinct = first_revisit.is_none();
    Ok(HamiltonReport {
        n,
        distinct,
        closes: distinct && p == start,
        first_revisit,
    })
}

/// Lexicographic index of the permutation obtained by appending the missing
/// symbol to `window`, or `None` if `window` is not an (n-1)-permutation of `[n]`.
fn window_key(window: &[u8], n: usize) -> Option<usize> {
    let mut seen = 0u64;
    for &s in window {
        if s == 0 || s as usize > n || seen & (1 << s) != 0 {
            return None;
        }
        seen |= 1 << s;
    }
    let missing = (1..=n as u8).find(|&s| seen & (1 << s) == 0)?;
    let mut full = window.to_vec();
    full.push(missing);
    Some(lex_index(&full))
}

/// Every circular window of length `n-1` must be a distinct (n-1)-permutation.
pub fn verify_universal(u: &[u8], n: usize) -> Verdict {
    if check_order_range(n, 2, CHECK_MAX_ORDER, "window check").is_err() {
        return Verdict::fail(0, format!("order {n} outside 2..={CHECK_MAX_ORDER}"));
    }
    let total = factorial(n).unwrap();
    if u.len() != total {
        return Verdict::fail(0, format!("length {} is not {n}! = {total}", u.len()));
    }
    let mut seen = vec![false; total];
    let mut window = Vec::with_capacity(n - 1);
    for i in 0..total {
        window.clear();
        window.extend((0..n - 1).map(|k| u[(i + k) % total]));
        let Some(key) = window_key(&window, n) else {
            return Verdict::fail(i, "window is not an (n-1)-permutation");
        };
        if std::mem::replace(&mut seen[key], true) {
            return Verdict::fail(i, "window repeats an earlier window");
        }
    }
    Verdict::Pass
}

/// Windows of length `n-1` starting at `m + i·n` for `i = 0..n!`, one row per
/// offset `m`.
pub fn multiversal_rows(flat: &[u8], n: usize) -> Vec<Vec<Vec<u8>>> {
    let blocks = flat.len() / n.max(1);
    (0..n)
        .map(|m| {
            (0..blocks)
                .map(|i| circular_window(flat, m + i * n, n - 1))
                .collect()
        })
        .collect()
}

/// For each offset `m` in `0..n`, the windows at `m + i·n` must be exactly the
/// (n-1)-permutations of `[n]`.
pub fn verify_multiversal(flat: &[u8], n: usize) -> Verdict {
    if check_order_range(n, 2, CHECK_MAX_ORDER, "window check").is_err() {
        return Verdict::fail(0, format!("order {n} outside 2..={CHECK_MAX_ORDER}"));
    }
    let total = factorial(n).unwrap();
    if flat.len() != n * total {
        return Verdict::fail(0, format!("length {} is not n·n! = {}", flat.len(), n * total));
    }
    let len = flat.len();
    let mut window = Vec::with_capacity(n - 1);
    for m in 0..n {
        let mut seen = vec![false; total];
        for i in 0..total {
            let start = m + i * n;
            window.clear();
            window.extend((0..n - 1).map(|k| flat[(start + k) % len]));
            let Some(key) = window_key(&window, n) else {
                return Verdict::fail(start, format!("offset {m}: window is not an (n-1)-permutation"));
            };
            if std::mem::replace(&mut seen[key], true) {
                return Verdict::fail(start, format!("offset {m}: window repeats"));
            }
        }
    }
    Verdict::Pass
}

/// `a_i = a_{i+n-1}` (indices mod `n·n!`) for every `i` with `i mod n ∉ {0, n-1}`.
pub fn check_shift_lemma(flat: &[u8], n: usize) -> Verdict {
    let len = flat.len();
    if n < 2 || len == 0 || !len.is_multiple_of(n) {
        return Verdict::fail(0, format!("length {len} is not a multiple of n = {n}"));
    }
    for i in 0..len {
        let r = i % n;
        if r == 0 || r == n - 1 {
            continue;
        }
        if flat[i] != flat[(i + n - 1) % len] {
            return Verdict::fail(i, "symbol differs from the one n-1 places later");
        }
    }
    Verdict::Pass
}

/// One `σ_n` edge of `Ξ_n` paired with the partner that joins the same two
/// cosets in the opposite direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgePair {
    /// Source vertex of the first `σ_n` edge.
    pub source: u32,
    /// Source vertex of the partner `σ_n` edge.
    pub partner: u32,
}

/// `Ξ_n` with every `σ_{n-1}`-coset contracted to one vertex. Each `σ_n` edge
/// pairs with exactly one partner, so the contraction is an undirected graph.
#[derive(Debug, Clone)]
pub struct CosetGraph {
    n: usize,
    coset_of: Vec<u32>,
    representatives: Vec<Permutation>,
    pairs: Vec<EdgePair>,
    partner: Vec<u32>,
}

pub fn build_coset_graph(n: usize) -> Result<CosetGraph> {
    check_order_range(n, 3, GRAPH_MAX_ORDER, "explicit graph")?;
    let g = build_cayley(n)?;
    build_coset_graph_from(&g)
}

pub fn build_coset_graph_from(g: &CayleyGraph) -> Result<CosetGraph> {
    let n = g.order();
    check_min_order(n, 3)?;
    let total = g.vertex_count();

    // Scanning vertices in lexicographic order numbers each coset by its
    // smallest member.
    let mut coset_of = vec![u32::MAX; total];
    let mut representatives = Vec::with_capacity(total / (n - 1));
    for v in 0..total {
        if coset_of[v] != u32::MAX {
            continue;
        }
        let id = representatives.len() as u32;
        representatives.push(g.vertex(v));
        let mut w = v;
        loop {
            coset_of[w] = id;
            w = g.successor(w, RotationBit::One);
            if w == v {
                break;
            }
        }
    }

    // The σ_n edge leaving u is paired with the one leaving
    // w = σ_{n-1}⁻¹(σ_n(u)), which must land on σ_{n-1}(u).
    let mut partner = vec![u32::MAX; total];
    let mut pairs = Vec::with_capacity(total / 2);
    for u in 0..total {
        let mut p = lex_permutation(n, u);
        rotate(&mut p, n);
        p[..n - 1].rotate_right(1);
        let w = lex_index(&p);
        let lands = g.successor(w, RotationBit::Zero);
        if lands != g.successor(u, RotationBit::One) || w == u {
            return Err(Error::PairingFailure {
                vertex: g.vertex(u).to_string(),
            });
        }
        partner[u] = w as u32;
        if u < w {
            pairs.push(EdgePair {
                source: u as u32,
                partner: w as u32,
            });
        }
    }
    if (0..total).any(|u| partner[partner[u] as usize] as usize != u) {
        return Err(Error::PairingFailure {
            vertex: "pairing is not an involution".into(),
        });
    }

    Ok(CosetGraph {
        n,
        coset_of,
        representatives,
        pairs,
        partner,
    })
}

impl CosetGraph {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn supervertex_count(&self) -> usize {
        self.representatives.len()
    }

    /// Smallest member of coset `c`.
    pub fn representative(&self, c: usize) -> &Permutation {
        &self.representatives[c]
    }

    pub fn coset_of(&self, v: usize) -> usize {
        self.coset_of[v] as usize
    }

    pub fn pairs(&self) -> &[EdgePair] {
        &self.pairs
    }

    /// Source of the `σ_n` edge paired with the one leaving `v`.
    pub fn partner(&self, v: usize) -> usize {
        self.partner[v] as usize
    }

    /// Coset endpoints of the `σ_n` edge leaving `v`, smaller id first.
    pub fn edge_of(&self, v: usize, g: &CayleyGraph) -> (usize, usize) {
        let a = self.coset_of(v);
        let b = self.coset_of(g.successor(v, RotationBit::Zero));
        (a.min(b), a.max(b))
    }

    /// One undirected edge per pair, parallel edges kept.
    pub fn raw_edges(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .map(|p| {
                let a = self.coset_of(p.source as usize);
                let b = self.coset_of(p.partner as usize);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// Distinct undirected edges with their multiplicities.
    pub fn edge_multiplicities(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for e in self.raw_edges() {
            *m.entry(e).or_insert(0) += 1;
        }
        m
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.supervertex_count()];
        for &(a, b) in self.edge_multiplicities().keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Degrees in the simple graph (parallel edges merged).
    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(Vec::len).collect()
    }

    /// Largest BFS distance, or `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut diameter = 0;
        for s in 0..adj.len() {
            let dist = bfs(&adj, s);
            for d in dist {
                diameter = diameter.max(d?);
            }
        }
        Some(diameter)
    }
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// How the `σ_n` steps of a Hamilton cycle project onto the coset graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningReport {
    pub n: usize,
    pub supervertices: usize,
    /// `σ_n` steps in the cycle.
    pub sigma_edges: usize,
    /// Every used `σ_n` edge has its partner used too.
    pairs_complete: bool,
    /// Undirected edges, one per used pair, parallel edges kept.
    pub raw_edges: usize,
    pub distinct_edges: usize,
    pub connected: bool,
    pub is_tree: bool,
}

impl SpanningReport {
    pub fn pairs_complete(&self) -> bool {
        self.pairs_complete
    }
}

/// Projects the `σ_n` edges used by `S_n` onto `Q_n`.
pub fn sigma_edges_spanning_check(n: usize) -> Result<SpanningReport> {
    check_order_range(n, 3, 7, "spanning check")?;
    let bits = crate::seqcore::build_s_recursive(n)?;
    spanning_report(bits.bits(), n)
}

/// Same projection for an arbitrary bit sequence of a Hamilton cycle.
pub fn spanning_report(bits: &[RotationBit], n: usize) -> Result<SpanningReport> {
    let g = build_cayley(n)?;
    let q = build_coset_graph_from(&g)?;

    let mut used = vec![false; g.vertex_count()];
    let mut v = g.start();
    for &b in bits {
        if b == RotationBit::Zero {
            used[v] = true;
        }
        v = g.successor(v, b);
    }
    let sources: Vec<usize> = (0..used.len()).filter(|&u| used[u]).collect();
    let pairs_complete = sources.iter().all(|&u| used[q.partner(u)]);

    let mut raw = 0;
    let mut distinct = std::collections::BTreeSet::new();
    for &u in &sources {
        if u < q.partner(u) || !used[q.partner(u)] {
            raw += 1;
        }
        distinct.insert(q.edge_of(u, &g));
    }

    let mut adj = vec![Vec::new(); q.supervertex_count()];
    for &(a, b) in &distinct {
        adj[a].push(b);
        adj[b].push(a);
    }
    let connected = bfs(&adj, 0).iter().all(Option::is_some);
    let supervertices = q.supervertex_count();
    Ok(SpanningReport {
        n,
        supervertices,
        sigma_edges: sources.len(),
        pairs_complete,
        raw_edges: raw,
        distinct_edges: distinct.len(),
        connected,
        is_tree: connected && distinct.len() + 1 == supervertices,
    })
}

/// Outcome of the exhaustive minimum search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForce {
    Exact { min_sigma_edges: usize, nodes: u64 },
    /// The budget ran out; `best_so_far` is only an upper bound.
    Inconclusive { best_so_far: Option<usize>, nodes: u64 },
}

struct MinSearch<'g> {
    g: &'g CayleyGraph,
    coset: Vec<u32>,
    partner: Vec<u32>,
    visited: Vec<bool>,
    /// Label a vertex must use because its partner already chose it.
    forced: Vec<Option<RotationBit>>,
    /// σ_n edges committed so far that leave each coset.
    exits: Vec<u32>,
    unexited: usize,
    sigma: usize,
    best: usize,
    found: bool,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl MinSearch<'_> {
    /// Commits (or with `sign = -1` releases) a σ_n edge leaving `v`.
    fn commit_exit(&mut self, v: usize, sign: i32) {
        let c = self.coset[v] as usize;
        if sign > 0 {
            if self.exits[c] == 0 {
                self.unexited -= 1;
            }
            self.exits[c] += 1;
            self.sigma += 1;
        } else {
            self.exits[c] -= 1;
            if self.exits[c] == 0 {
                self.unexited += 1;
            }
            self.sigma -= 1;
        }
    }

    /// A vertex and its partner share both successors, so in a Hamilton cycle
    /// they use the same label. The first of the pair to be visited decides
    /// for both and commits both edges.
    fn choose(&mut self, v: usize, bit: RotationBit, sign: i32) {
        let p = self.partner[v] as usize;
        if bit == RotationBit::Zero {
            self.commit_exit(v, sign);
            if p != v {
                self.commit_exit(p, sign);
            }
        }
        if p != v {
            self.forced[p] = (sign > 0).then_some(bit);
        }
    }

    fn dfs(&mut self, v: usize, depth: usize) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                    return;
                }
            }
        }
        let start = self.g.start();
        let last = depth + 1 == self.g.vertex_count();
        let forced = self.forced[v];
        let bits: &[RotationBit] = match forced {
            Some(RotationBit::Zero) => &[RotationBit::Zero],
            Some(RotationBit::One) => &[RotationBit::One],
            None => &[RotationBit::Zero, RotationBit::One],
        };
        for &bit in bits {
            let w = self.g.successor(v, bit);
            if if last { w != start } else { self.visited[w] } {
                continue;
            }
            if forced.is_none() {
                self.choose(v, bit, 1);
            }
            // Every coset must still be left at least once through a σ_n edge.
            let bound = self.sigma + self.unexited;
            if bound < self.best {
                if last {
                    self.best = self.sigma;
                    self.found = true;
                } else {
                    self.visited[w] = true;
                    self.dfs(w, depth + 1);
                    self.visited[w] = false;
                }
            }
            if forced.is_none() {
                self.choose(v, bit, -1);
            }
        }
    }
}

/// Exhaustive branch-and-bound search for the fewest `σ_n` steps in any
/// Hamilton cycle of `Ξ_n`. Cycles are anchored at `n n-1 … 1`, which every
/// Hamilton cycle passes through.
pub fn min_hamilton_sigma_edges_bruteforce(
    n: usize,
    budget: Option<Duration>,
) -> Result<BruteForce> {
    check_order_range(n, 3, 5, "brute force")?;
    let g = build_cayley(n)?;
    let q = build_coset_graph_from(&g)?;
    let total = g.vertex_count();
    let mut search = MinSearch {
        g: &g,
        coset: (0..total).map(|v| q.coset_of(v) as u32).collect(),
        partner: (0..total).map(|v| q.partner(v) as u32).collect(),
        visited: vec![false; total],
        forced: vec![None; total],
        exits: vec![0; q.supervertex_count()],
        unexited: q.supervertex_count(),
        sigma: 0,
        best: usize::MAX,
        found: false,
        nodes: 0,
        deadline: budget.map(|b| Instant::now() + b),
        timed_out: false,
    };
    let start = g.start();
    search.visited[start] = true;
    search.dfs(start, 0);
    let best = search.found.then_some(search.best);
    Ok(if search.timed_out {
        BruteForce::Inconclusive {
            best_so_far: best,
            nodes: search.nodes,
        }
    } else {
        BruteForce::Exact {
            min_sigma_edges: best.expect("S_n guarantees a Hamilton cycle exists"),
            nodes: search.nodes,
        }
    })
}

/// Calls `visit` with the bits of every Hamilton path of `Ξ_n` that starts at
/// `n n-1 … 1` (length `n! - 1`), together with the final vertex. Label 0 is
/// explored before label 1.
pub fn for_each_hamilton_path<F>(g: &CayleyGraph, mut visit: F)
where
    F: FnMut(&[RotationBit], usize) -> ControlFlow<()>,
{
    fn go<F: FnMut(&[RotationBit], usize) -> ControlFlow<()>>(
        g: &CayleyGraph,
        v: usize,
        visited: &mut [bool],
        bits: &mut Vec<RotationBit>,
        visit: &mut F,
    ) -> ControlFlow<()> {
        if bits.len() + 1 == g.vertex_count() {
            return visit(bits, v);
        }
        for bit in [RotationBit::Zero, RotationBit::One] {
            let w = g.successor(v, bit);
            if visited[w] {
                continue;
            }
            visited[w] = true;
            bits.push(bit);
            let flow = go(g, w, visited, bits, visit);
            bits.pop();
            visited[w] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    let mut visited = vec![false; g.vertex_count()];
    let start = g.start();
    visited[start] = true;
    let mut bits = Vec::with_capacity(g.vertex_count());
    let _ = go(g, start, &mut visited, &mut bits, &mut visit);
}

/// Every Hamilton cycle of `Ξ_n` through `n n-1 … 1`, as full bit sequences.
pub fn hamilton_cycles(g: &CayleyGraph) -> Vec<Vec<RotationBit>> {
    let start = g.start();
    let mut cycles = Vec::new();
    for_each_hamilton_path(g, |bits, end| {
        for bit in [RotationBit::Zero, RotationBit::One] {
            if g.successor(end, bit) == start {
                let mut full = bits.to_vec();
                full.push(bit);
                cycles.push(full);
            }
        }
        ControlFlow::Continue(())
    });
    cycles
}

/// Graphs that can be rendered as DOT text.
#[derive(Debug, Clone, Copy)]
pub enum DotGraph<'a> {
    Cayley(&'a CayleyGraph),
    /// The coset graph needs its parent Cayley graph to place highlighted edges.
    Coset(&'a CosetGraph, &'a CayleyGraph),
}

const HIGHLIGHT: &str = "style=bold, color=red";

fn label(p: &[u8]) -> String {
    let mut s = String::new();
    write_symbols(&mut s, p).unwrap();
    s
}

/// DOT text with nodes and edges in lexicographic order of their labels.
/// `highlight` is a bit sequence walked from `n n-1 … 1`; the edges it uses are
/// drawn bold.
pub fn export_dot(graph: DotGraph<'_>, highlight: Option<&[RotationBit]>) -> String {
    match graph {
        DotGraph::Cayley(g) => cayley_dot(g, highlight),
        DotGraph::Coset(q, g) => coset_dot(q, g, highlight),
    }
}

fn used_edges(g: &CayleyGraph, highlight: Option<&[RotationBit]>) -> HashSet<(usize, u8)> {
    let mut used = HashSet::new();
    if let Some(bits) = highlight {
        let mut v = g.start();
        for &b in bits {
            used.insert((v, b.as_u8()));
            v = g.successor(v, b);
        }
    }
    used
}

fn cayley_dot(g: &CayleyGraph, highlight: Option<&[RotationBit]>) -> String {
    let used = used_edges(g, highlight);
    let mut labels: Vec<(String, usize)> = (0..g.vertex_count())
        .map(|v| (label(&lex_permutation(g.order(), v)), v))
        .collect();
    labels.sort();

    let mut out = String::new();
    writeln!(out, "digraph Xi{} {{", g.order()).unwrap();
    for (name, _) in &labels {
        writeln!(out, "  \"{name}\";").unwrap();
    }
    for (name, v) in &labels {
        for bit in [RotationBit::Zero, RotationBit::One] {
            let w = g.successor(*v, bit);
            let target = label(&lex_permutation(g.order(), w));
            let style = if used.contains(&(*v, bit.as_u8())) {
                format!(", {HIGHLIGHT}")
            } else {
                String::new()
            };
            writeln!(out, "  \"{name}\" -> \"{target}\" [label={bit}{style}];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

fn coset_dot(q: &CosetGraph, g: &CayleyGraph, highlight: Option<&[RotationBit]>) -> String {
    let used = used_edges(g, highlight);
    let used_coset: HashSet<(usize, usize)> = used
        .iter()
        .filter(|&&(_, b)| b == 0)
        .map(|&(v, _)| q.edge_of(v, g))
        .collect();
    let name = |c: usize| label(q.representative(c).symbols());

    let mut nodes: Vec<String> = (0..q.supervertex_count()).map(name).collect();
    nodes.sort();
    let mut edges: Vec<(String, String, usize, bool)> = q
        .edge_multiplicities()
        .into_iter()
        .map(|((a, b), mult)| {
            let (x, y) = (name(a), name(b));
            let (x, y) = if x <= y { (x, y) } else { (y, x) };
            (x, y, mult, used_coset.contains(&(a, b)))
        })
        .collect();
    edges.sort();

    let mut out = String::new();
    writeln!(out, "graph Q{} {{", q.order()).unwrap();
    for node in &nodes {
        writeln!(out, "  \"{node}\";").unwrap();
    }
    for (x, y, mult, hot) in edges {
        let mut attrs = String::from("label=0");
        if mult > 1 {
            write!(attrs, ", multiplicity={mult}").unwrap();
        }
        if hot {
            write!(attrs, ", {HIGHLIGHT}").unwrap();
        }
        writeln!(out, "  \"{x}\" -- \"{y}\" [{attrs}];").unwrap();
    }
    out.push_str("}\n");
    out
}
