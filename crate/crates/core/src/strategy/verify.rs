//! Exhaustive check of a Maker strategy against every Breaker line.
//!
//! Breaker replies outside the strategy's current scope are all equivalent
//! for the strategy, so one representative is explored per node, delivered as
//! a pass. Positions are memoised on what the rest of the game can depend
//! on: the state, the claims inside the scope, how many free vertices lie
//! outside it, and which edges straddling the scope already have their
//! outside part owned by Maker.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::script::{Node, NodeId, Script, ScriptState};
use super::{Machine, StrategyTree, Violation};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::position::Side;

/// Subtrees smaller than this are cheaper to redo than to remember.
const MEMO_MIN_SUBTREE: u64 = 3;
const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub worker_count: usize,
    pub node_limit: Option<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            worker_count: 1,
            node_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub moves: Vec<(Side, usize)>,
    /// Moves with vertex names, e.g. `B:w1`.
    pub line: Vec<String>,
    pub violation: Violation,
    pub message: String,
}

impl Counterexample {
    pub fn render(&self) -> String {
        format!("{} => {}", self.line.join(" "), self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub verified: bool,
    /// Lines that ended with a completed Maker edge.
    pub lines_checked: u64,
    /// Breaker decision points expanded.
    pub nodes: u64,
    pub max_depth: usize,
    pub node_limit_hit: bool,
    pub elapsed_ms: u64,
    pub counterexample: Option<Counterexample>,
}

/// Root reply index, the line of play, and what went wrong.
type Failure = (usize, Vec<(Side, usize)>, Violation);

enum Stop {
    Fail,
    Limit,
    Aborted,
}

#[derive(Hash, PartialEq, Eq)]
struct Key<S> {
    st: S,
    a: VertexSet,
    b: VertexSet,
    outside_free: u32,
    armed: Vec<u32>,
}

struct Shared<'m, M> {
    m: &'m M,
    incidence: Vec<Vec<usize>>,
    all: VertexSet,
    nodes: AtomicU64,
    limit: u64,
    /// Lowest root branch that failed; later branches may stop early.
    failed_branch: AtomicUsize,
}

struct Run<'s, 'm, M: Machine> {
    sh: &'s Shared<'m, M>,
    branch: usize,
    memo: FxHashSet<Key<M::State>>,
    crossing: FxHashMap<VertexSet, Vec<(u32, VertexSet)>>,
    nodes: u64,
    unflushed: u64,
    lines: u64,
    max_depth: usize,
    line: Vec<(Side, usize)>,
    failure: Option<(Vec<(Side, usize)>, Violation)>,
}

impl<'s, 'm, M: Machine> Run<'s, 'm, M> {
    fn new(sh: &'s Shared<'m, M>, branch: usize, line: Vec<(Side, usize)>) -> Self {
        Run {
            sh,
            branch,
            memo: FxHashSet::default(),
            crossing: FxHashMap::default(),
            nodes: 0,
            unflushed: 0,
            lines: 0,
            max_depth: line.len(),
            line,
            failure: None,
        }
    }

    fn fail(&mut self, v: Violation) -> Stop {
        self.failure = Some((self.line.clone(), v));
        Stop::Fail
    }

    fn tick(&mut self) -> Result<(), Stop> {
        self.nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= FLUSH_EVERY {
            let total = self.sh.nodes.fetch_add(self.unflushed, Ordering::Relaxed) + self.unflushed;
            self.unflushed = 0;
            if total > self.sh.limit {
                return Err(Stop::Limit);
            }
            if self.sh.failed_branch.load(Ordering::Relaxed) < self.branch {
                return Err(Stop::Aborted);
            }
        }
        if self.nodes > self.sh.limit {
            return Err(Stop::Limit);
        }
        Ok(())
    }

    fn armed(&mut self, scope: &VertexSet, a: &VertexSet) -> Vec<u32> {
        let board = self.sh.m.board();
        let list = self.crossing.entry(*scope).or_insert_with(|| {
            board
                .edge_sets()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.intersects(scope) && !e.is_subset(scope))
                .map(|(i, e)| (i as u32, e.difference(scope)))
                .collect()
        });
        list.iter()
            .filter(|(_, out)| out.is_subset(a))
            .map(|&(i, _)| i)
            .collect()
    }

    fn maker(
        &mut self,
        st: M::State,
        a: VertexSet,
        b: VertexSet,
        parent: &VertexSet,
    ) -> Result<u64, Stop> {
        let m = self.sh.m;
        let scope = m.scope(&st);
        if !scope.is_subset(parent) {
            return Err(self.fail(Violation::ScopeGrew));
        }
        let (av, bv) = (a.intersection(&scope), b.intersection(&scope));
        let (v, next) = match m.decide(&st, &av, &bv) {
            Ok(x) => x,
            Err(e) => return Err(self.fail(e)),
        };
        if v >= m.board().vertex_count() || a.contains(v) || b.contains(v) {
            return Err(self.fail(Violation::OccupiedClaim { vertex: v }));
        }
        if !scope.contains(v) {
            return Err(self.fail(Violation::ClaimOutsideScope { vertex: v }));
        }
        self.line.push((Side::A, v));
        let a2 = a.with(v);
        let edges = m.board().edge_sets();
        let res = if self.sh.incidence[v]
            .iter()
            .any(|&e| edges[e].is_subset(&a2))
        {
            self.lines += 1;
            self.max_depth = self.max_depth.max(self.line.len());
            Ok(1)
        } else {
            self.breaker(next, a2, b, &scope)
        };
        self.line.pop();
        res
    }

    fn breaker(
        &mut self,
        st: M::State,
        a: VertexSet,
        b: VertexSet,
        parent: &VertexSet,
    ) -> Result<u64, Stop> {
        let m = self.sh.m;
        let scope = m.scope(&st);
        if !scope.is_subset(parent) {
            return Err(self.fail(Violation::ScopeGrew));
        }
        let free = self.sh.all.difference(&a).difference(&b);
        if free.is_empty() {
            return Err(self.fail(Violation::BoardExhausted));
        }
        let inside = free.intersection(&scope);
        let (av, bv) = (a.intersection(&scope), b.intersection(&scope));
        let key = self.key(&st, &a, &b);
        if self.memo.contains(&key) {
            return Ok(0);
        }
        self.tick()?;
        let mut size = 1;
        let pass = free.difference(&scope).first();
        for (r, seen) in inside
            .iter()
            .map(|r| (r, Some(r)))
            .chain(pass.map(|r| (r, None)))
        {
            self.line.push((Side::B, r));
            let next = match m.observe(&st, &av, &bv, seen) {
                Ok(s) => s,
                Err(e) => return Err(self.fail(e)),
            };
            size += self.maker(next, a, b.with(r), &scope)?;
            self.line.pop();
        }
        if size >= MEMO_MIN_SUBTREE {
            self.memo.insert(key);
        }
        Ok(size)
    }

    /// One Maker move without recursion: `None` if it completes an edge,
    /// otherwise the following Breaker node and the scope it must stay inside.
    #[allow(clippy::type_complexity)]
    fn maker_step(
        &mut self,
        st: M::State,
        a: VertexSet,
        b: VertexSet,
        parent: &VertexSet,
    ) -> Result<Option<(M::State, VertexSet, VertexSet, VertexSet)>, Stop> {
        let m = self.sh.m;
        let scope = m.scope(&st);
        if !scope.is_subset(parent) {
            return Err(self.fail(Violation::ScopeGrew));
        }
        let (av, bv) = (a.intersection(&scope), b.intersection(&scope));
        let (v, next) = match m.decide(&st, &av, &bv) {
            Ok(x) => x,
            Err(e) => return Err(self.fail(e)),
        };
        if v >= m.board().vertex_count() || a.contains(v) || b.contains(v) {
            return Err(self.fail(Violation::OccupiedClaim { vertex: v }));
        }
        if !scope.contains(v) {
            return Err(self.fail(Violation::ClaimOutsideScope { vertex: v }));
        }
        self.line.push((Side::A, v));
        let a2 = a.with(v);
        let edges = m.board().edge_sets();
        if self.sh.incidence[v]
            .iter()
            .any(|&e| edges[e].is_subset(&a2))
        {
            self.lines += 1;
            self.max_depth = self.max_depth.max(self.line.len());
            self.line.pop();
            return Ok(None);
        }
        self.line.pop();
        Ok(Some((next, a2, b, scope)))
    }

    fn key(&mut self, st: &M::State, a: &VertexSet, b: &VertexSet) -> Key<M::State> {
        let scope = self.sh.m.scope(st);
        let (mut a, mut b) = (*a, *b);
        self.sh.m.canonicalize(st, &mut a, &mut b);
        let (a, b) = (&a, &b);
        let free = self.sh.all.difference(a).difference(b);
        let inside = free.intersection(&scope);
        Key {
            st: st.clone(),
            a: a.intersection(&scope),
            b: b.intersection(&scope),
            outside_free: (free.len() - inside.len()) as u32,
            armed: self.armed(&scope, a),
        }
    }

    fn flush(&mut self) {
        self.sh.nodes.fetch_add(self.unflushed, Ordering::Relaxed);
        self.unflushed = 0;
    }
}

fn counterexample(
    board: &Hypergraph,
    moves: Vec<(Side, usize)>,
    violation: Violation,
) -> Counterexample {
    let line = moves
        .iter()
        .map(|&(s, v)| {
            format!(
                "{}:{}",
                if s == Side::A { "M" } else { "B" },
                board.label(v)
            )
        })
        .collect();
    let message = violation.describe(board);
    Counterexample {
        moves,
        line,
        violation,
        message,
    }
}

pub(crate) fn verify_machine<M: Machine>(m: &M, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let board = m.board();
    let sh = Shared {
        m,
        incidence: board.incidence(),
        all: board.all_vertices(),
        nodes: AtomicU64::new(0),
        limit: opts.node_limit.unwrap_or(u64::MAX),
        failed_branch: AtomicUsize::new(usize::MAX),
    };
    let mut report = VerificationReport {
        verified: false,
        lines_checked: 0,
        nodes: 0,
        max_depth: 0,
        node_limit_hit: false,
        elapsed_ms: 0,
        counterexample: None,
    };
    let a0 = m.initial_claims();
    let empty = VertexSet::new();
    let all = sh.all;

    let mut root = Run::new(&sh, 0, Vec::new());
    let outcome: Result<(), Stop> = if opts.worker_count <= 1 {
        let r = match m.first_mover() {
            Side::A => root.maker(m.start(), a0, empty, &all),
            Side::B => root.breaker(m.start(), a0, empty, &all),
        };
        r.map(|_| ())
    } else {
        split_root(&sh, &mut root, a0, opts.worker_count, &mut report)
    };
    root.flush();
    report.nodes += root.nodes;
    report.lines_checked += root.lines;
    report.max_depth = report.max_depth.max(root.max_depth);
    match outcome {
        Ok(()) => report.verified = report.counterexample.is_none() && !report.node_limit_hit,
        Err(Stop::Limit) => report.node_limit_hit = true,
        Err(Stop::Fail) => {
            let (moves, v) = root.failure.take().expect("failure recorded");
            report.counterexample = Some(counterexample(board, moves, v));
        }
        Err(Stop::Aborted) => {}
    }
    if report.node_limit_hit {
        report.verified = false;
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Runs the subtrees below the first Breaker decision on a worker pool.
///
/// Replies whose follow-up Breaker node has the same memo key share one
/// task. Each task has its own memo; the reported counterexample is the one
/// under the lowest reply, which matches the sequential search order.
fn split_root<M: Machine>(
    sh: &Shared<'_, M>,
    root: &mut Run<'_, '_, M>,
    a0: VertexSet,
    workers: usize,
    report: &mut VerificationReport,
) -> Result<(), Stop> {
    let m = sh.m;
    let all = sh.all;
    let empty = VertexSet::new();
    let (st, a, b, parent) = match m.first_mover() {
        Side::B => (m.start(), a0, empty, all),
        Side::A => match root.maker_step(m.start(), a0, empty, &all)? {
            None => return Ok(()),
            Some(x) => {
                root.line
                    .push((Side::A, x.1.difference(&a0).first().expect("one new claim")));
                x
            }
        },
    };
    let scope = m.scope(&st);
    if !scope.is_subset(&parent) {
        return Err(root.fail(Violation::ScopeGrew));
    }
    let free = all.difference(&a).difference(&b);
    if free.is_empty() {
        return Err(root.fail(Violation::BoardExhausted));
    }
    root.tick()?;
    let (av, bv) = (a.intersection(&scope), b.intersection(&scope));
    let mut replies: Vec<(usize, Option<usize>)> = free
        .intersection(&scope)
        .iter()
        .map(|r| (r, Some(r)))
        .collect();
    if let Some(r) = free.difference(&scope).first() {
        replies.push((r, None));
    }

    // Expand each reply's Maker answer here; collect distinct follow-ups.
    struct Task<S> {
        line: Vec<(Side, usize)>,
        st: S,
        a: VertexSet,
        b: VertexSet,
        parent: VertexSet,
    }
    let mut tasks: Vec<Task<M::State>> = Vec::new();
    let mut seen: FxHashSet<Key<M::State>> = FxHashSet::default();
    // First failure found while expanding, by reply order.
    let mut early: Option<Failure> = None;
    let mut first_task_of_reply: Vec<Option<usize>> = Vec::new();
    for (i, &(r, shown)) in replies.iter().enumerate() {
        first_task_of_reply.push(None);
        root.line.push((Side::B, r));
        let step = match m.observe(&st, &av, &bv, shown) {
            Ok(next) => root.maker_step(next, a, b.with(r), &scope),
            Err(e) => Err(root.fail(e)),
        };
        match step {
            Ok(None) => {}
            Ok(Some((st3, a3, b3, p3))) => {
                let key = root.key(&st3, &a3, &b3);
                if seen.insert(key) {
                    first_task_of_reply[i] = Some(tasks.len());
                    let mut line = root.line.clone();
                    line.push((Side::A, a3.difference(&a).first().expect("one new claim")));
                    tasks.push(Task {
                        line,
                        st: st3,
                        a: a3,
                        b: b3,
                        parent: p3,
                    });
                }
            }
            Err(Stop::Fail) => {
                let (moves, v) = root.failure.take().expect("failure recorded");
                early = Some((i, moves, v));
                break;
            }
            Err(other) => return Err(other),
        }
        root.line.pop();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    type Outcome = (
        Result<u64, Stop>,
        u64,
        u64,
        usize,
        Option<(Vec<(Side, usize)>, Violation)>,
    );
    let results: Vec<Outcome> = pool.install(|| {
        tasks
            .par_iter()
            .enumerate()
            .map(|(i, t)| {
                let mut run = Run::new(sh, i, t.line.clone());
                let res = run.breaker(t.st.clone(), t.a, t.b, &t.parent);
                if matches!(res, Err(Stop::Fail)) {
                    sh.failed_branch.fetch_min(i, Ordering::Relaxed);
                }
                run.flush();
                (res, run.nodes, run.lines, run.max_depth, run.failure.take())
            })
            .collect()
    });
    let mut limit = false;
    let mut failed_task: Option<Failure> = None;
    for (i, (res, nodes, lines, depth, failure)) in results.into_iter().enumerate() {
        report.nodes += nodes;
        report.lines_checked += lines;
        report.max_depth = report.max_depth.max(depth);
        match res {
            Ok(_) | Err(Stop::Aborted) => {}
            Err(Stop::Limit) => limit = true,
            Err(Stop::Fail) => {
                if failed_task.is_none() {
                    let (moves, v) = failure.expect("failure recorded");
                    failed_task = Some((i, moves, v));
                }
            }
        }
    }
    // Tasks are numbered in reply order, so compare via their first reply.
    let task_reply = |t: usize| {
        first_task_of_reply
            .iter()
            .position(|&x| x == Some(t))
            .unwrap_or(usize::MAX)
    };
    let chosen = match (early, failed_task) {
        (Some(e), Some(f)) => Some(if task_reply(f.0) < e.0 { f } else { e }),
        (e, f) => e.or(f),
    };
    if let Some((_, moves, v)) = chosen {
        report.counterexample = Some(counterexample(m.board(), moves, v));
        return Ok(());
    }
    if limit {
        return Err(Stop::Limit);
    }
    Ok(())
}

/// Checks that `s` wins for Maker on `h` from the empty board with
/// `first_mover` to play: every Breaker line ends with a completed Maker edge.
pub fn verify_maker_strategy(
    h: &Hypergraph,
    s: &StrategyTree,
    first_mover: Side,
    opts: &VerifyOptions,
) -> VerificationReport {
    if !(s.board().vertex_count() == h.vertex_count() && s.board().same_edge_set(h))
        || first_mover != s.first_mover()
    {
        return VerificationReport {
            verified: false,
            lines_checked: 0,
            nodes: 0,
            max_depth: 0,
            node_limit_hit: false,
            elapsed_ms: 0,
            counterexample: Some(Counterexample {
                moves: Vec::new(),
                line: Vec::new(),
                message: Violation::BoardMismatch.to_string(),
                violation: Violation::BoardMismatch,
            }),
        };
    }
    match s {
        StrategyTree::Script(x) => verify_machine(x, opts),
        StrategyTree::GammaPrime(x) => verify_machine(x.as_ref(), opts),
        StrategyTree::G4(x) => verify_machine(x.as_ref(), opts),
        StrategyTree::Split(x) => verify_machine(x, opts),
    }
}

/// Which branches of a script some verified line actually uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageAudit {
    pub verification: VerificationReport,
    /// `(respond node, branch)`, where branch `len` stands for the default.
    pub visited: Vec<(NodeId, usize)>,
    pub total: usize,
    /// Branch descriptions never reached.
    pub unvisited: Vec<String>,
}

struct Traced<'a> {
    script: &'a Script,
    seen: Mutex<FxHashSet<(NodeId, usize)>>,
}

impl Machine for Traced<'_> {
    type State = ScriptState;

    fn board(&self) -> &Hypergraph {
        self.script.board()
    }
    fn first_mover(&self) -> Side {
        self.script.first_mover()
    }
    fn start(&self) -> ScriptState {
        self.script.start()
    }
    fn initial_claims(&self) -> VertexSet {
        self.script.initial_set()
    }
    fn scope(&self, _: &ScriptState) -> VertexSet {
        self.script.board().all_vertices()
    }
    fn decide(
        &self,
        st: &ScriptState,
        a: &VertexSet,
        b: &VertexSet,
    ) -> Result<(usize, ScriptState), Violation> {
        self.script.decide_local(*st, a.low_mask(), b.low_mask())
    }
    fn observe(
        &self,
        st: &ScriptState,
        a: &VertexSet,
        b: &VertexSet,
        reply: Option<usize>,
    ) -> Result<ScriptState, Violation> {
        let (next, trace) = self
            .script
            .observe_traced(*st, a.low_mask(), b.low_mask(), reply)?;
        if let Some(t) = trace {
            self.seen.lock().expect("coverage lock").insert(t);
        }
        Ok(next)
    }
}

/// Verifies `s` and reports every (respond node, branch) pair the search reached.
pub fn coverage_audit(s: &Script) -> CoverageAudit {
    let traced = Traced {
        script: s,
        seen: Mutex::new(FxHashSet::default()),
    };
    let verification = verify_machine(&traced, &VerifyOptions::default());
    let seen = traced.seen.into_inner().expect("coverage lock");
    let mut visited: Vec<(NodeId, usize)> = seen.into_iter().collect();
    visited.sort_unstable();
    let mut total = 0;
    let mut unvisited = Vec::new();
    for (id, node) in s.nodes().iter().enumerate() {
        if let Node::Respond { branches, default } = node {
            let arms = branches.len() + usize::from(default.is_some());
            for k in 0..arms {
                total += 1;
                if visited.binary_search(&(id, k)).is_err() {
                    let what = match branches.get(k) {
                        Some((c, _)) => s.describe(c),
                        None => "default".into(),
                    };
                    unvisited.push(format!("node {id}: {what}"));
                }
            }
        }
    }
    CoverageAudit {
        verification,
        visited,
        total,
        unvisited,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_g3, gen_gamma, split_pendant};
    use crate::mb::{solve_mb, MbOptions};
    use crate::strategy::{
        build_gamma_strategy, g3_script, gadget_board, gadget_script, lift_split,
        synthesize_from_solver, DefaultRule, ScriptBuilder, StrategyTree,
    };
    use crate::suite::random_suite;

    fn check(h: &Hypergraph, s: &StrategyTree, first: Side) -> VerificationReport {
        verify_maker_strategy(h, s, first, &VerifyOptions::default())
    }

    fn maker_wins(h: &Hypergraph, first: Side) -> bool {
        solve_mb(h, first, &MbOptions::default()).unwrap().winner == Side::A
    }

    #[test]
    fn small_builtins_verify() {
        let r = check(
            &gadget_board(),
            &StrategyTree::Script(gadget_script()),
            Side::B,
        );
        assert!(r.verified, "{:?}", r.counterexample);
        let r = check(&gen_g3(), &StrategyTree::Script(g3_script()), Side::A);
        assert!(r.verified, "{:?}", r.counterexample);
        assert!(r.lines_checked > 0 && r.max_depth > 0);
    }

    #[test]
    fn wrong_board_or_first_mover_is_rejected() {
        let s = StrategyTree::Script(g3_script());
        let r = check(&gen_gamma(), &s, Side::A);
        assert_eq!(
            r.counterexample.unwrap().violation,
            Violation::BoardMismatch
        );
        let r = check(&gen_g3(), &s, Side::B);
        assert!(!r.verified);
    }

    #[test]
    fn verdict_does_not_depend_on_workers() {
        let (h, s) = (gen_gamma(), build_gamma_strategy());
        for workers in [1, 2, 4] {
            let opts = VerifyOptions {
                worker_count: workers,
                node_limit: None,
            };
            assert!(verify_maker_strategy(&h, &s, Side::B, &opts).verified);
        }
        for m in crate::strategy::mutants().into_iter().take(6) {
            let one = verify_maker_strategy(
                &m.board,
                &m.strategy,
                m.first_mover,
                &VerifyOptions::default(),
            );
            let opts = VerifyOptions {
                worker_count: 4,
                node_limit: None,
            };
            let four = verify_maker_strategy(&m.board, &m.strategy, m.first_mover, &opts);
            assert_eq!((one.verified, four.verified), (false, false), "{}", m.name);
            assert_eq!(one.counterexample, four.counterexample, "{}", m.name);
        }
    }

    #[test]
    fn node_limit_stops_without_a_verdict() {
        let opts = VerifyOptions {
            worker_count: 1,
            node_limit: Some(50),
        };
        let r = verify_maker_strategy(&gen_gamma(), &build_gamma_strategy(), Side::B, &opts);
        assert!(r.node_limit_hit && !r.verified && r.counterexample.is_none());
    }

    #[test]
    fn counterexample_names_vertices() {
        let m = crate::strategy::mutants().into_iter().next().unwrap();
        let r = check(&m.board, &m.strategy, m.first_mover);
        let c = r.counterexample.unwrap();
        assert_eq!(c.line.len(), c.moves.len());
        assert!(c.render().starts_with("B:w1 M:w2"), "{}", c.render());
    }

    #[test]
    fn coverage_of_builtin_scripts() {
        for (s, board) in [(gadget_script(), gadget_board()), (g3_script(), gen_g3())] {
            let audit = coverage_audit(&s);
            assert!(audit.verification.verified);
            assert!(audit.visited.len() <= audit.total);
            assert_eq!(
                audit.total - audit.visited.len(),
                audit.unvisited.len(),
                "{}",
                board.vertex_count()
            );
        }
        let gamma = build_gamma_strategy();
        let audit = coverage_audit(gamma.as_script().unwrap());
        assert!(audit.verification.verified);
        assert!(
            audit.visited.len() * 2 > audit.total,
            "{} of {}",
            audit.visited.len(),
            audit.total
        );
    }

    /// Trees read off the solver are complete strategies, so they must pass.
    #[test]
    fn solver_strategies_verify() {
        let mut checked = 0;
        for h in random_suite(11, 80) {
            for first in [Side::A, Side::B] {
                let s = synthesize_from_solver(&h, first).unwrap();
                assert_eq!(s.is_some(), maker_wins(&h, first));
                if let Some(s) = s {
                    let r = check(&h, &StrategyTree::Script(s), first);
                    assert!(r.verified, "{:?} {:?}", h.edges(), r.counterexample);
                    checked += 1;
                }
            }
        }
        assert!(checked > 20);
    }

    /// A script that only ever searches accepts exactly the boards Maker wins.
    #[test]
    fn pure_search_script_matches_solver() {
        for h in random_suite(23, 60) {
            let mut b = ScriptBuilder::new();
            let budget = h.vertex_count() as u8;
            let root = b.respond(Vec::new(), Some(DefaultRule::BoundedWin { budget }));
            let s = Script::new(h.clone(), b.nodes, root, Side::B).unwrap();
            let r = check(&h, &StrategyTree::Script(s), Side::B);
            assert_eq!(r.verified, maker_wins(&h, Side::B), "{:?}", h.edges());
        }
    }

    /// Splitting a board with at most two edges: the lifted solver strategy
    /// verifies, and the solver agrees Maker still wins.
    #[test]
    fn split_lift_agrees_with_solver() {
        let mut lifted = 0;
        for h in random_suite(5, 200)
            .into_iter()
            .filter(|h| h.edge_count() <= 2)
        {
            for first in [Side::A, Side::B] {
                let split = split_pendant(&h);
                let Some(s) = synthesize_from_solver(&h, first).unwrap() else {
                    assert!(!maker_wins(&split, first) || maker_wins(&h, first));
                    continue;
                };
                let lift = lift_split(&StrategyTree::Script(s), &h).unwrap();
                let r = check(&split, &lift, first);
                assert!(r.verified, "{:?} {:?}", h.edges(), r.counterexample);
                assert!(maker_wins(&split, first));
                lifted += 1;
            }
        }
        assert!(lifted > 5);
    }
}
