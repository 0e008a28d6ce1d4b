//! Exhaustive, isomorph-free search for saturation numbers of small graphs,
//! plus greedy saturation as an upper-bound sampler.
//!
//! Graphs are generated by canonical augmentation over edges: a parent's
//! children are its single-edge extensions, one per orbit of non-edges under
//! the parent's automorphism group, and a child is kept only when the new edge
//! lies in the automorphism orbit of the child's canonical last edge. Every
//! isomorphism class of `P`-free graphs is thus produced exactly once, and
//! every ancestor of a node is one of its subgraphs, so edge-count and
//! degree-shortfall bounds prune whole subtrees.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::canon::{canonical_code, canonical_form, pair_orbits, CanonicalCode, CanonicalForm};
use crate::constructions;
use crate::graph::{Edge, Graph, MAX_VERTICES};
use crate::graph6::{emit_graph6, parse_graph6};
use crate::pattern::{self, MultipartitePattern, Witness};
use crate::saturation;

/// Seed used by every randomized routine unless one is given explicitly.
pub const DEFAULT_SEED: u64 = 1;

/// Greedy runs used to seed the cutoff when no upper bound is supplied.
pub const DEFAULT_GREEDY_RUNS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {0} unsupported (must be 1..=64)")]
    Order(usize),
    #[error("budget bounds must be positive")]
    InvalidBudget,
    #[error("start graph already contains the pattern: {0}")]
    ContainsPattern(Witness),
    #[error("upper-bound graph has {found} vertices, expected {expected}")]
    WrongOrder { expected: usize, found: usize },
    #[error("upper-bound graph is not saturated for the pattern")]
    NotSaturated,
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// Enumerate only graphs with at most this many edges.
    pub edge_cap: Option<usize>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            ..Self::default()
        }
    }

    pub fn time(max_time: Duration) -> Self {
        SearchBudget {
            max_time: Some(max_time),
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        let positive = self.max_nodes != Some(0) && self.max_time != Some(Duration::ZERO);
        positive.then_some(()).ok_or(SearchError::InvalidBudget)
    }
}

/// A side-channel snapshot handed to the progress callback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub explored: u64,
    /// Current edge cutoff.
    pub cap: usize,
    /// Fewest edges among saturated graphs found so far.
    pub best: Option<usize>,
    pub elapsed: Duration,
}

pub type ProgressFn<'a> = &'a (dyn Fn(&Progress) + Sync);

#[derive(Clone)]
pub struct SearchOptions<'a> {
    pub budget: SearchBudget,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
    pub seed: u64,
    pub greedy_runs: usize,
    /// Prune subtrees that cannot reach the minimum degree of a saturated graph.
    pub min_degree_pruning: bool,
    /// A known saturated graph bounding the search from above.
    pub upper_bound: Option<Graph>,
    pub resume: Option<Checkpoint>,
    pub progress: Option<ProgressFn<'a>>,
}

impl Default for SearchOptions<'_> {
    fn default() -> Self {
        SearchOptions {
            budget: SearchBudget::default(),
            threads: None,
            seed: DEFAULT_SEED,
            greedy_runs: DEFAULT_GREEDY_RUNS,
            min_degree_pruning: true,
            upper_bound: None,
            resume: None,
            progress: None,
        }
    }
}

impl fmt::Debug for SearchOptions<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchOptions")
            .field("budget", &self.budget)
            .field("threads", &self.threads)
            .field("seed", &self.seed)
            .field("greedy_runs", &self.greedy_runs)
            .field("min_degree_pruning", &self.min_degree_pruning)
            .field("upper_bound", &self.upper_bound.as_ref().map(emit_graph6))
            .field("resume", &self.resume.is_some())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SatStatus {
    /// `value` is the saturation number.
    Exact,
    /// The enumeration under the edge cap finished without a saturated graph;
    /// `value` is the heuristic upper bound.
    UpperBoundOnly,
    /// The budget ran out; `value` is the best upper bound known.
    BudgetExceeded,
}

#[derive(Debug, Clone)]
pub struct SatResult {
    pub n: usize,
    pub pattern: MultipartitePattern,
    pub status: SatStatus,
    pub value: usize,
    /// A saturated graph with `value` edges.
    pub witness: Graph,
    pub explored: u64,
    pub elapsed: Duration,
    /// Unfinished frontier when the budget ran out.
    pub checkpoint: Option<Checkpoint>,
}

impl SatResult {
    /// Equality on everything except timing.
    pub fn same_outcome(&self, other: &SatResult) -> bool {
        self.n == other.n
            && self.pattern == other.pattern
            && self.status == other.status
            && self.value == other.value
            && self.witness == other.witness
            && self.explored == other.explored
    }
}

impl Serialize for SatResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SatResult", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("pattern", &self.pattern.to_list())?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("witness_g6", &emit_graph6(&self.witness))?;
        st.serialize_field("explored", &self.explored)?;
        st.serialize_field("elapsed", &self.elapsed.as_secs_f64())?;
        st.end()
    }
}

/// The unfinished part of an interrupted search: every listed graph is a tree
/// node whose whole subtree is still unexplored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: usize,
    pub pattern: MultipartitePattern,
    pub cap: usize,
    pub explored: u64,
    pub best: Option<Graph>,
    pub frontier: Vec<Graph>,
}

impl Checkpoint {
    /// `# key value` header lines, then one `<depth> <graph6>` line per node.
    pub fn write(&self) -> String {
        let mut out = String::from("# satgraph checkpoint\n");
        out += &format!(
            "# n {}\n# pattern {}\n# cap {}\n# explored {}\n",
            self.n,
            self.pattern.to_list(),
            self.cap,
            self.explored
        );
        if let Some(b) = &self.best {
            out += &format!("# best {}\n", emit_graph6(b));
        }
        for g in &self.frontier {
            out += &format!("{} {}\n", g.size(), emit_graph6(g));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Checkpoint, SearchError> {
        let err = |m: String| SearchError::Checkpoint(m);
        let (mut n, mut pattern, mut cap, mut explored, mut best) = (None, None, None, 0, None);
        let mut frontier = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line == "# satgraph checkpoint" {
                continue;
            }
            let bad = || err(format!("line {}: cannot parse {line:?}", i + 1));
            if let Some(rest) = line.strip_prefix('#') {
                let (key, value) = rest.trim().split_once(' ').ok_or_else(bad)?;
                match key {
                    "n" => n = Some(value.parse().map_err(|_| bad())?),
                    "pattern" => pattern = Some(value.parse::<MultipartitePattern>().map_err(|_| bad())?),
                    "cap" => cap = Some(value.parse().map_err(|_| bad())?),
                    "explored" => explored = value.parse().map_err(|_| bad())?,
                    "best" => best = Some(parse_graph6(value).map_err(|_| bad())?),
                    _ => return Err(bad()),
                }
                continue;
            }
            let (depth, g6) = line.split_once(' ').ok_or_else(bad)?;
            let depth: usize = depth.parse().map_err(|_| bad())?;
            let g = parse_graph6(g6).map_err(|_| bad())?;
            if g.size() != depth {
                return Err(err(format!("line {}: depth {depth} but {} edges", i + 1, g.size())));
            }
            frontier.push(g);
        }
        let n = n.ok_or_else(|| err("missing n".into()))?;
        if let Some(g) = frontier.iter().chain(&best).find(|g| g.order() != n) {
            return Err(err(format!(
                "graph on {} vertices in a checkpoint for n = {n}",
                g.order()
            )));
        }
        Ok(Checkpoint {
            n,
            pattern: pattern.ok_or_else(|| err("missing pattern".into()))?,
            cap: cap.ok_or_else(|| err("missing cap".into()))?,
            explored,
            best,
            frontier,
        })
    }
}

/// Statistics of one [`enumerate_ffree`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumStats {
    pub visited: u64,
    /// Visited classes by edge count.
    pub by_edges: Vec<u64>,
    /// False when the budget stopped the run early.
    pub complete: bool,
}

/// Degree below which no vertex of a `P`-saturated `n`-vertex graph falls:
/// adding an edge at `v` must create a copy in which `v` has degree at least
/// `δ(P)`, so `d(v) ≥ δ(P) − 1` unless `v` is already universal.
pub fn saturated_min_degree(n: usize, p: &MultipartitePattern) -> usize {
    if p.order() > n {
        return n - 1;
    }
    (p.min_degree() - 1).min(n - 1)
}

/// Invariant ordering key of an edge; the canonical last edge maximises it.
fn edge_key(g: &Graph, e: Edge) -> u32 {
    let (du, dv) = (g.degree(e.u) as u32, g.degree(e.v) as u32);
    let common = (g.neighbors(e.u) & g.neighbors(e.v)).len() as u32;
    (du.min(dv) << 16) | (du.max(dv) << 8) | common
}

/// Whether `e` lies in the automorphism orbit of `h`'s canonical last edge.
/// Returns the canonical form when one had to be computed.
fn is_canonical_last(h: &Graph, e: Edge) -> (bool, Option<CanonicalForm>) {
    let key = edge_key(h, e);
    let mut tied = Vec::new();
    for f in h.edges() {
        let k = edge_key(h, f);
        if k > key {
            return (false, None);
        }
        if k == key {
            tied.push(f);
        }
    }
    if tied.len() == 1 {
        return (true, None);
    }
    let form = canonical_form(h);
    let pos = form.positions();
    let rank = |f: &Edge| {
        let (a, b) = (pos[f.u], pos[f.v]);
        (a.max(b), a.min(b))
    };
    let star = (0..tied.len()).max_by_key(|&i| rank(&tied[i])).expect("nonempty");
    let me = tied.iter().position(|&f| f == e).expect("e is an edge of h");
    let reps = pair_orbits(&tied, &form.generators);
    (reps[me] == reps[star], Some(form))
}

struct Node {
    graph: Graph,
    form: Option<CanonicalForm>,
}

impl Node {
    fn new(graph: Graph) -> Self {
        Node { graph, form: None }
    }
}

/// Canonical-augmentation tree walker shared by all exhaustive routines.
struct Engine<'a> {
    p: &'a MultipartitePattern,
    cap: usize,
    /// Degree every descendant must reach, when pruning is on.
    prune_degree: Option<usize>,
    budget: SearchBudget,
    start: Instant,
    explored: AtomicU64,
    base_explored: u64,
    abort: AtomicBool,
    progress: Option<ProgressFn<'a>>,
    best_edges: AtomicU64,
}

const FLUSH_EVERY: u64 = 256;
const PROGRESS_EVERY: u64 = 1 << 16;

impl<'a> Engine<'a> {
    fn new(p: &'a MultipartitePattern, cap: usize, budget: SearchBudget) -> Self {
        Engine {
            p,
            cap,
            prune_degree: None,
            budget,
            start: Instant::now(),
            explored: AtomicU64::new(0),
            base_explored: 0,
            abort: AtomicBool::new(false),
            progress: None,
            best_edges: AtomicU64::new(u64::MAX),
        }
    }

    fn explored(&self) -> u64 {
        self.base_explored + self.explored.load(Ordering::Relaxed)
    }

    fn note_best(&self, edges: usize) {
        self.best_edges.fetch_min(edges as u64, Ordering::Relaxed);
    }

    /// Adds `count` visited nodes and stops the run if a bound is crossed.
    fn flush(&self, count: u64) {
        let before = self.explored.fetch_add(count, Ordering::Relaxed);
        let total = self.base_explored + before + count;
        if self.budget.max_nodes.is_some_and(|m| total >= m)
            || self.budget.max_time.is_some_and(|t| self.start.elapsed() >= t)
        {
            self.abort.store(true, Ordering::Relaxed);
        }
        if let Some(report) = self.progress {
            if before / PROGRESS_EVERY != (before + count) / PROGRESS_EVERY {
                let best = self.best_edges.load(Ordering::Relaxed);
                report(&Progress {
                    explored: total,
                    cap: self.cap,
                    best: (best != u64::MAX).then_some(best as usize),
                    elapsed: self.start.elapsed(),
                });
            }
        }
    }

    fn children(&self, node: Node, out: &mut Vec<Node>) {
        let g = &node.graph;
        let e = g.size();
        if e >= self.cap {
            return;
        }
        let form = node.form.unwrap_or_else(|| canonical_form(g));
        let non_edges: Vec<Edge> = g.non_edges().collect();
        let reps = pair_orbits(&non_edges, &form.generators);
        for (i, &uv) in non_edges.iter().enumerate() {
            if reps[i] != i {
                continue;
            }
            let h = g.plus_edge(uv.u, uv.v);
            if let Some(k) = self.prune_degree {
                if e + 1 + h.degree_deficit(k).div_ceil(2) > self.cap {
                    continue;
                }
            }
            // cheap rejection before the containment test
            if h.edges().any(|f| edge_key(&h, f) > edge_key(&h, uv)) {
                continue;
            }
            if pattern::has_copy_through(&h, self.p, uv.u, uv.v) {
                continue;
            }
            let (keep, form) = is_canonical_last(&h, uv);
            if keep {
                out.push(Node { graph: h, form });
            }
        }
    }

    /// Visits every node of the subtrees below `roots`; returns the roots of
    /// unexplored subtrees if the budget ran out.
    fn run<V>(&self, roots: Vec<Graph>, visit: &V) -> Vec<Graph>
    where
        V: Fn(&Graph) + Sync,
    {
        let target = rayon::current_num_threads() * 32;
        let mut frontier: Vec<Node> = roots.into_iter().map(Node::new).collect();
        let mut pending = Vec::new();
        // breadth-first until there is enough independent work to share out
        while !frontier.is_empty() && frontier.len() < target {
            let mut next = Vec::new();
            let mut level = frontier.into_iter();
            for node in level.by_ref() {
                if self.abort.load(Ordering::Relaxed) {
                    pending.push(node.graph);
                    break;
                }
                visit(&node.graph);
                self.flush(1);
                self.children(node, &mut next);
            }
            pending.extend(level.map(|n| n.graph));
            if !pending.is_empty() {
                pending.extend(next.into_iter().map(|n| n.graph));
                return pending;
            }
            frontier = next;
        }
        frontier
            .into_par_iter()
            .flat_map_iter(|node| self.depth_first(node, visit))
            .collect()
    }

    fn depth_first<V>(&self, root: Node, visit: &V) -> Vec<Graph>
    where
        V: Fn(&Graph) + Sync,
    {
        let mut stack = vec![root];
        let mut local = 0;
        while let Some(node) = stack.pop() {
            if self.abort.load(Ordering::Relaxed) {
                stack.push(node);
                self.flush(local);
                return stack.into_iter().map(|n| n.graph).collect();
            }
            visit(&node.graph);
            local += 1;
            if local == FLUSH_EVERY {
                self.flush(local);
                local = 0;
            }
            self.children(node, &mut stack);
        }
        self.flush(local);
        Vec::new()
    }
}

fn check_order(n: usize) -> Result<(), SearchError> {
    (1..=MAX_VERTICES)
        .contains(&n)
        .then_some(())
        .ok_or(SearchError::Order(n))
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, SearchError> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Visits one representative of every isomorphism class of `P`-free graphs
/// on `n` vertices with at most `edge_cap` edges. No saturation-based pruning
/// is applied.
pub fn enumerate_ffree<V>(
    n: usize,
    p: &MultipartitePattern,
    edge_cap: usize,
    budget: &SearchBudget,
    visitor: V,
) -> Result<EnumStats, SearchError>
where
    V: Fn(&Graph) + Sync,
{
    check_order(n)?;
    budget.validate()?;
    let cap = edge_cap.min(n * (n - 1) / 2);
    let by_edges: Vec<AtomicU64> = (0..=cap).map(|_| AtomicU64::new(0)).collect();
    let engine = Engine::new(p, cap, *budget);
    let root = Graph::empty(n).expect("order checked");
    if pattern::has_copy(&root, p) {
        return Ok(EnumStats {
            visited: 0,
            by_edges: vec![0; cap + 1],
            complete: true,
        });
    }
    let pending = engine.run(vec![root], &|g: &Graph| {
        by_edges[g.size()].fetch_add(1, Ordering::Relaxed);
        visitor(g);
    });
    Ok(EnumStats {
        visited: engine.explored(),
        by_edges: by_edges.into_iter().map(AtomicU64::into_inner).collect(),
        complete: pending.is_empty(),
    })
}

/// Adds edges in a seed-shuffled order whenever they keep `G` free of `P`.
/// A single pass suffices: a skipped edge already closed a copy of `P` in a
/// subgraph of the final graph.
pub fn greedy_saturate(g0: &Graph, p: &MultipartitePattern, seed: u64) -> Result<Graph, SearchError> {
    if let Some(w) = pattern::contains(g0, p) {
        return Err(SearchError::ContainsPattern(w));
    }
    let mut order: Vec<Edge> = g0.non_edges().collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut g = g0.clone();
    for e in order {
        g.insert_edge(e.u, e.v);
        if pattern::has_copy_through(&g, p, e.u, e.v) {
            g.delete_edge(e.u, e.v);
        }
    }
    Ok(g)
}

/// Sparsest graph over `runs` greedy runs from the empty graph, with seeds
/// `seed, seed+1, …`; ties go to the earliest seed.
pub fn best_greedy(n: usize, p: &MultipartitePattern, seed: u64, runs: usize) -> Result<Graph, SearchError> {
    check_order(n)?;
    let empty = Graph::empty(n).expect("order checked");
    let graphs: Vec<Graph> = (0..runs.max(1) as u64)
        .into_par_iter()
        .map(|i| greedy_saturate(&empty, p, seed.wrapping_add(i)))
        .collect::<Result<_, _>>()?;
    Ok(graphs.into_iter().min_by_key(Graph::size).expect("at least one run"))
}

/// Known saturated graphs for `K_{3,3}` and cliques, used to tighten the cutoff.
fn constructed_bound(n: usize, p: &MultipartitePattern) -> Option<Graph> {
    if p.as_bipartite() == Some((3, 3)) {
        return match n {
            6..=11 => constructions::small_witness(n).ok().map(|c| c.graph),
            12.. => constructions::gn(n).ok().map(|c| c.graph),
            _ => None,
        };
    }
    match p.as_clique() {
        Some(k) if k >= 3 && n >= k => constructions::ehm(n, k - 1).ok().map(|c| c.graph),
        _ => None,
    }
}

/// Sparsest saturated graph among the supplied bound, known constructions and
/// greedy runs.
fn initial_bound(n: usize, p: &MultipartitePattern, opts: &SearchOptions) -> Result<Graph, SearchError> {
    let mut best = best_greedy(n, p, opts.seed, opts.greedy_runs)?;
    let supplied = match &opts.upper_bound {
        Some(g) if g.order() != n => {
            return Err(SearchError::WrongOrder {
                expected: n,
                found: g.order(),
            });
        }
        Some(g) if !saturation::is_saturated(g, p) => return Err(SearchError::NotSaturated),
        other => other.clone(),
    };
    for g in supplied.into_iter().chain(constructed_bound(n, p)) {
        if g.size() < best.size() {
            best = g;
        }
    }
    Ok(best)
}

/// Least saturated graph by `(edges, canonical code)` among those visited.
#[derive(Default)]
struct BestSaturated(Mutex<Option<(usize, CanonicalCode, Graph)>>);

impl BestSaturated {
    fn offer(&self, g: &Graph) {
        let code = canonical_code(g);
        let key = (g.size(), code);
        let mut best = self.0.lock().expect("no panics while holding the lock");
        if best.as_ref().is_none_or(|(e, c, _)| key < (*e, c.clone())) {
            let canon = parse_graph6(key.1.as_str()).expect("canonical code is graph6");
            *best = Some((key.0, key.1, canon));
        }
    }

    fn into_graph(self) -> Option<Graph> {
        self.0.into_inner().expect("lock not poisoned").map(|(_, _, g)| g)
    }
}

struct Sweep {
    best: Option<Graph>,
    pending: Vec<Graph>,
    explored: u64,
}

/// Visits every `P`-free class with at most `cap` edges (or resumes from a
/// checkpoint), collecting the least saturated one.
fn sweep(n: usize, p: &MultipartitePattern, cap: usize, opts: &SearchOptions) -> Result<Sweep, SearchError> {
    let mut engine = Engine::new(p, cap, opts.budget);
    engine.progress = opts.progress;
    if opts.min_degree_pruning {
        engine.prune_degree = Some(saturated_min_degree(n, p));
    }
    let k = saturated_min_degree(n, p);
    let best = BestSaturated::default();
    let roots = match &opts.resume {
        Some(cp) => {
            if cp.n != n || cp.pattern != *p || cp.cap != cap {
                return Err(SearchError::Checkpoint(format!(
                    "checkpoint is for n = {}, pattern {}, cap {}",
                    cp.n, cp.pattern, cp.cap
                )));
            }
            engine.base_explored = cp.explored;
            if let Some(b) = &cp.best {
                best.offer(b);
            }
            cp.frontier.clone()
        }
        None => vec![Graph::empty(n).expect("order checked")],
    };
    let pending = in_pool(opts.threads, || {
        engine.run(roots, &|g: &Graph| {
            if g.degree_deficit(k) == 0 && saturation::adds_all_create(g, p) {
                engine.note_best(g.size());
                best.offer(g);
            }
        })
    })?;
    Ok(Sweep {
        best: best.into_graph(),
        pending,
        explored: engine.explored(),
    })
}

fn checkpoint_of(n: usize, p: &MultipartitePattern, cap: usize, s: &Sweep) -> Checkpoint {
    Checkpoint {
        n,
        pattern: p.clone(),
        cap,
        explored: s.explored,
        best: s.best.clone(),
        frontier: s.pending.clone(),
    }
}

/// Computes `sat(n, P)` by visiting every `P`-free class with at most as many
/// edges as the best known saturated graph. The witness is the least optimal
/// class by canonical code, so results do not depend on thread scheduling.
pub fn exact_sat(n: usize, p: &MultipartitePattern, opts: &SearchOptions) -> Result<SatResult, SearchError> {
    check_order(n)?;
    opts.budget.validate()?;
    let start = Instant::now();
    let result = |status, witness: Graph, explored, checkpoint| SatResult {
        n,
        pattern: p.clone(),
        status,
        value: witness.size(),
        witness,
        explored,
        elapsed: start.elapsed(),
        checkpoint,
    };
    if p.order() > n {
        // nothing can be completed to a copy, so only K_n has no failing non-edge
        return Ok(result(
            SatStatus::Exact,
            Graph::complete(n).expect("order checked"),
            0,
            None,
        ));
    }
    let upper = initial_bound(n, p, opts)?;
    let cap = opts.budget.edge_cap.map_or(upper.size(), |c| c.min(upper.size()));
    let s = sweep(n, p, cap, opts)?;
    if !s.pending.is_empty() {
        let cp = checkpoint_of(n, p, cap, &s);
        let witness = s.best.filter(|b| b.size() < upper.size()).unwrap_or(upper);
        return Ok(result(SatStatus::BudgetExceeded, witness, s.explored, Some(cp)));
    }
    Ok(match s.best {
        Some(w) => result(SatStatus::Exact, w, s.explored, None),
        None => result(SatStatus::UpperBoundOnly, upper, s.explored, None),
    })
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Confirmation {
    /// A saturated graph with `claimed` edges exists and none has fewer.
    Confirmed { witness: Graph, explored: u64 },
    /// A saturated graph with fewer than `claimed` edges exists (the least
    /// such class is returned).
    RefutedWithWitness { witness: Graph, explored: u64 },
    /// No saturated graph has `claimed` or fewer edges: the claim lies below
    /// the true value.
    Unattainable { explored: u64 },
    /// The budget ran out before the region below `claimed` was covered.
    Inconclusive {
        witness: Option<Graph>,
        checkpoint: Checkpoint,
    },
}

/// Checks `sat(n, P) = claimed` by exhausting every class with fewer edges.
/// When no saturated graph with exactly `claimed` edges is known upfront, the
/// sweep also covers `claimed` edges to find one.
pub fn confirm_value(
    n: usize,
    p: &MultipartitePattern,
    claimed: usize,
    opts: &SearchOptions,
) -> Result<Confirmation, SearchError> {
    check_order(n)?;
    opts.budget.validate()?;
    let known = initial_bound(n, p, opts)?;
    if known.size() < claimed {
        // still sweep below the claim so the reported refutation is canonical
        let s = sweep(n, p, claimed - 1, opts)?;
        return Ok(match (s.pending.is_empty(), s.best) {
            (true, Some(w)) => Confirmation::RefutedWithWitness {
                witness: w,
                explored: s.explored,
            },
            _ => Confirmation::RefutedWithWitness {
                witness: known,
                explored: s.explored,
            },
        });
    }
    let at_claim = (known.size() == claimed).then_some(known);
    let cap = if at_claim.is_some() {
        claimed.saturating_sub(1)
    } else {
        claimed
    };
    if let (0, Some(w)) = (claimed, &at_claim) {
        return Ok(Confirmation::Confirmed {
            witness: w.clone(),
            explored: 0,
        });
    }
    let s = sweep(n, p, cap, opts)?;
    if !s.pending.is_empty() {
        let cp = checkpoint_of(n, p, cap, &s);
        let witness = match s.best {
            Some(b) if b.size() < claimed => {
                return Ok(Confirmation::RefutedWithWitness {
                    witness: b,
                    explored: s.explored,
                })
            }
            Some(b) => Some(b),
            None => at_claim,
        };
        return Ok(Confirmation::Inconclusive {
            witness,
            checkpoint: cp,
        });
    }
    Ok(match (s.best, at_claim) {
        (Some(b), _) if b.size() < claimed => Confirmation::RefutedWithWitness {
            witness: b,
            explored: s.explored,
        },
        (Some(b), _) => Confirmation::Confirmed {
            witness: b,
            explored: s.explored,
        },
        (None, Some(w)) => Confirmation::Confirmed {
            witness: w,
            explored: s.explored,
        },
        (None, None) => Confirmation::Unattainable { explored: s.explored },
    })
}
