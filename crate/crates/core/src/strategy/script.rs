//! Explicit Maker strategies: claim / respond trees on boards of at most 128 vertices.

use std::fmt::Write as _;

use serde::Serialize;

use super::bounded;
use super::{Machine, StrategyError, Violation};
use crate::constructions::{gen_gamma, GammaIndex, GAMMA_VERTICES};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::position::Side;
use crate::solve::{full_mask, to_mask, SOLVER_MAX_VERTICES};

pub type NodeId = usize;

/// Which Breaker replies a branch of a [`Node::Respond`] handles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReplyClass {
    Vertices {
        vertices: Vec<usize>,
    },
    EdgeOf {
        edge: usize,
    },
    SubBoard {
        vertices: Vec<usize>,
    },
    Union {
        parts: Vec<ReplyClass>,
    },
    /// Everything not matched by a sibling branch, including a pass.
    AnyOther,
}

/// Fallback when no branch matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DefaultRule {
    Subtree {
        node: NodeId,
    },
    /// Switch to a depth-limited search: win within this many Maker moves.
    BoundedWin {
        budget: u8,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Node {
    Claim {
        vertex: usize,
        next: NodeId,
    },
    Respond {
        branches: Vec<(ReplyClass, NodeId)>,
        default: Option<DefaultRule>,
    },
    /// Maker's last claim completed this edge.
    WinNow {
        edge: usize,
    },
}

/// How a Breaker reply is read before classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplyMap {
    Identity,
    /// On the 35-vertex base graph: a `t_ij` taken before Maker owns both
    /// `w_i` and `x_ij` counts as a claim of `w_i` (or `x_ij`); replies on
    /// virtually occupied vertices and passes count as the lowest free vertex.
    GammaPreamble,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Cursor {
    At(u32),
    Bounded(u8),
}

/// Position of a script run: where in the tree, plus Breaker claims that
/// exist only in the script's reading of the game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScriptState {
    pub(crate) cursor: Cursor,
    pub(crate) virtual_b: u128,
}

#[derive(Clone, Debug)]
enum Compiled {
    Mask(u128),
    Any,
}

#[derive(Clone, Debug)]
pub struct Script {
    board: Hypergraph,
    nodes: Vec<Node>,
    root: NodeId,
    first_mover: Side,
    initial: Vec<usize>,
    reply_map: ReplyMap,
    edge_masks: Vec<u128>,
    all: u128,
    classes: Vec<Vec<Compiled>>,
}

impl Script {
    pub fn new(
        board: Hypergraph,
        nodes: Vec<Node>,
        root: NodeId,
        first_mover: Side,
    ) -> Result<Script, StrategyError> {
        Script::with_options(
            board,
            nodes,
            root,
            first_mover,
            Vec::new(),
            ReplyMap::Identity,
        )
    }

    /// `initial` are vertices Maker owns before play starts.
    pub fn with_options(
        board: Hypergraph,
        nodes: Vec<Node>,
        root: NodeId,
        first_mover: Side,
        initial: Vec<usize>,
        reply_map: ReplyMap,
    ) -> Result<Script, StrategyError> {
        let n = board.vertex_count();
        if n > SOLVER_MAX_VERTICES {
            return Err(StrategyError::BoardTooLarge(n));
        }
        if reply_map == ReplyMap::GammaPreamble
            && !(n == GAMMA_VERTICES && board.same_edge_set(&gen_gamma()))
        {
            return Err(StrategyError::Malformed(
                "the preamble reply map needs the 35-vertex base graph".into(),
            ));
        }
        let bad_node = |id: NodeId| {
            (id >= nodes.len()).then(|| StrategyError::Malformed(format!("dangling node {id}")))
        };
        if let Some(e) = bad_node(root) {
            return Err(e);
        }
        if let Some(&v) = initial.iter().find(|&&v| v >= n) {
            return Err(StrategyError::Malformed(format!(
                "initial vertex {v} out of range"
            )));
        }
        let mut classes = Vec::with_capacity(nodes.len());
        for node in &nodes {
            let mut compiled = Vec::new();
            match node {
                Node::Claim { vertex, next } => {
                    if *vertex >= n {
                        return Err(StrategyError::Malformed(format!(
                            "claim {vertex} out of range"
                        )));
                    }
                    if let Some(e) = bad_node(*next) {
                        return Err(e);
                    }
                }
                Node::WinNow { edge } => {
                    if *edge >= board.edge_count() {
                        return Err(StrategyError::Malformed(format!(
                            "edge {edge} out of range"
                        )));
                    }
                }
                Node::Respond { branches, default } => {
                    for (class, next) in branches {
                        if let Some(e) = bad_node(*next) {
                            return Err(e);
                        }
                        compiled.push(compile(class, &board)?);
                    }
                    if let Some(DefaultRule::Subtree { node }) = default {
                        if let Some(e) = bad_node(*node) {
                            return Err(e);
                        }
                    }
                }
            }
            classes.push(compiled);
        }
        Ok(Script {
            edge_masks: board.edge_sets().iter().map(to_mask).collect(),
            all: full_mask(n),
            board,
            nodes,
            root,
            first_mover,
            initial,
            reply_map,
            classes,
        })
    }

    pub fn board(&self) -> &Hypergraph {
        &self.board
    }
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }
    pub fn root(&self) -> NodeId {
        self.root
    }
    pub fn first_mover(&self) -> Side {
        self.first_mover
    }
    pub fn initial(&self) -> &[usize] {
        &self.initial
    }
    pub fn reply_map(&self) -> ReplyMap {
        self.reply_map
    }

    /// Same tree with some parts replaced; recompiles.
    pub fn rebuilt(&self, nodes: Vec<Node>, root: NodeId) -> Result<Script, StrategyError> {
        Script::with_options(
            self.board.clone(),
            nodes,
            root,
            self.first_mover,
            self.initial.clone(),
            self.reply_map,
        )
    }

    pub(crate) fn start(&self) -> ScriptState {
        ScriptState {
            cursor: Cursor::At(self.root as u32),
            virtual_b: 0,
        }
    }

    pub(crate) fn initial_set(&self) -> VertexSet {
        VertexSet::from_slice(&self.initial)
    }

    /// Maker's move given his claims `a` and Breaker's `b` (both local masks).
    pub(crate) fn decide_local(
        &self,
        st: ScriptState,
        a: u128,
        b: u128,
    ) -> Result<(usize, ScriptState), Violation> {
        match st.cursor {
            Cursor::Bounded(k) => {
                let b_eff = (b | st.virtual_b) & !a;
                match bounded::winning_move(&self.edge_masks, a, b_eff, u32::from(k)) {
                    Some(v) => Ok((
                        v,
                        ScriptState {
                            cursor: Cursor::Bounded(k - 1),
                            ..st
                        },
                    )),
                    None => Err(Violation::BoundedWinFailure { budget: k }),
                }
            }
            Cursor::At(id) => match &self.nodes[id as usize] {
                &Node::Claim { vertex, next } => {
                    if let Node::WinNow { edge } = self.nodes[next] {
                        if self.edge_masks[edge] & !(a | 1 << vertex) != 0 {
                            return Err(Violation::LeafWithoutEdge { edge });
                        }
                    }
                    Ok((
                        vertex,
                        ScriptState {
                            cursor: Cursor::At(next as u32),
                            ..st
                        },
                    ))
                }
                &Node::WinNow { edge } => Err(Violation::LeafWithoutEdge { edge }),
                Node::Respond { .. } => Err(Violation::Malformed(
                    "respond node reached on Maker's turn".into(),
                )),
            },
        }
    }

    /// Advances past Breaker's `reply` (`None` = pass); `b` excludes the reply.
    pub(crate) fn observe_local(
        &self,
        st: ScriptState,
        a: u128,
        b: u128,
        reply: Option<usize>,
    ) -> Result<ScriptState, Violation> {
        self.observe_traced(st, a, b, reply).map(|(s, _)| s)
    }

    /// Like [`Self::observe_local`], also naming the respond node and the
    /// branch taken (`branches.len()` for the default).
    pub(crate) fn observe_traced(
        &self,
        st: ScriptState,
        a: u128,
        b: u128,
        reply: Option<usize>,
    ) -> Result<(ScriptState, Option<(NodeId, usize)>), Violation> {
        let id = match st.cursor {
            Cursor::Bounded(_) => return Ok((st, None)),
            Cursor::At(id) => id as usize,
        };
        let (branches, default) = match &self.nodes[id] {
            Node::Respond { branches, default } => (branches, default),
            Node::WinNow { edge } => return Err(Violation::LeafWithoutEdge { edge: *edge }),
            Node::Claim { .. } => {
                return Err(Violation::Malformed(
                    "claim node reached on Breaker's turn".into(),
                ))
            }
        };
        let (read, virtual_b) = self.translate(a, b, st.virtual_b, reply);
        let mut hit = None;
        let mut any = None;
        for (idx, c) in self.classes[id].iter().enumerate() {
            match c {
                Compiled::Any => any = Some(idx),
                Compiled::Mask(m) => {
                    if read.is_some_and(|v| m >> v & 1 == 1) {
                        if hit.is_some() {
                            return Err(Violation::AmbiguousReply);
                        }
                        hit = Some(idx);
                    }
                }
            }
        }
        let taken = hit.or(any);
        let cursor = match taken {
            Some(idx) => Cursor::At(branches[idx].1 as u32),
            None => match default {
                Some(DefaultRule::Subtree { node }) => Cursor::At(*node as u32),
                Some(DefaultRule::BoundedWin { budget }) => Cursor::Bounded(*budget),
                None => return Err(Violation::UncoveredReply),
            },
        };
        let trace = (id, taken.unwrap_or(branches.len()));
        Ok((ScriptState { cursor, virtual_b }, Some(trace)))
    }

    fn translate(&self, a: u128, b: u128, vb: u128, reply: Option<usize>) -> (Option<usize>, u128) {
        if self.reply_map == ReplyMap::Identity {
            return (reply, vb);
        }
        let occupied = a | b | vb | reply.map_or(0, |r| 1u128 << r);
        let free = self.all & !occupied;
        let lowest = || (free != 0).then(|| free.trailing_zeros() as usize);
        let read = match reply {
            None => lowest(),
            Some(r) if vb >> r & 1 == 1 => lowest(),
            Some(r) => match GammaIndex::from_vertex(r) {
                Some(GammaIndex::T { i, j }) => {
                    let (wv, xv) = (
                        GammaIndex::W { i }.vertex(),
                        GammaIndex::X { i, j }.vertex(),
                    );
                    if a >> wv & 1 == 1 && a >> xv & 1 == 1 {
                        Some(r)
                    } else {
                        [wv, xv]
                            .into_iter()
                            .find(|&v| free >> v & 1 == 1)
                            .or_else(lowest)
                    }
                }
                _ => Some(r),
            },
        };
        let vb = match read {
            Some(v) if Some(v) != reply => vb | 1 << v,
            _ => vb,
        };
        (read, vb)
    }

    /// Indented text rendering of the tree (shared subtrees are expanded).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        self.dump_node(self.root, 0, &mut out);
        out
    }

    fn dump_node(&self, id: NodeId, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match &self.nodes[id] {
            Node::Claim { vertex, next } => {
                let _ = writeln!(out, "{pad}claim {}", self.board.label(*vertex));
                self.dump_node(*next, depth, out);
            }
            Node::WinNow { edge } => {
                let _ = writeln!(out, "{pad}wins edge {}", edge + 1);
            }
            Node::Respond { branches, default } => {
                for (class, next) in branches {
                    let _ = writeln!(out, "{pad}on {}:", self.describe(class));
                    self.dump_node(*next, depth + 1, out);
                }
                match default {
                    Some(DefaultRule::Subtree { node }) => {
                        let _ = writeln!(out, "{pad}otherwise:");
                        self.dump_node(*node, depth + 1, out);
                    }
                    Some(DefaultRule::BoundedWin { budget }) => {
                        let _ = writeln!(out, "{pad}otherwise: win within {budget} moves");
                    }
                    None => {}
                }
            }
        }
    }

    pub fn describe(&self, class: &ReplyClass) -> String {
        let names = |vs: &[usize]| {
            vs.iter()
                .map(|&v| self.board.label(v))
                .collect::<Vec<_>>()
                .join(" ")
        };
        match class {
            ReplyClass::Vertices { vertices } => format!("{{{}}}", names(vertices)),
            ReplyClass::EdgeOf { edge } => format!("edge {}", edge + 1),
            ReplyClass::SubBoard { vertices } => format!("sub-board {{{}}}", names(vertices)),
            ReplyClass::Union { parts } => parts
                .iter()
                .map(|p| self.describe(p))
                .collect::<Vec<_>>()
                .join(" or "),
            ReplyClass::AnyOther => "any other reply".into(),
        }
    }
}

fn compile(class: &ReplyClass, board: &Hypergraph) -> Result<Compiled, StrategyError> {
    let n = board.vertex_count();
    let verts = |vs: &[usize]| -> Result<u128, StrategyError> {
        vs.iter().try_fold(0u128, |m, &v| {
            if v < n {
                Ok(m | 1 << v)
            } else {
                Err(StrategyError::Malformed(format!(
                    "reply vertex {v} out of range"
                )))
            }
        })
    };
    Ok(match class {
        ReplyClass::AnyOther => Compiled::Any,
        ReplyClass::Vertices { vertices } | ReplyClass::SubBoard { vertices } => {
            Compiled::Mask(verts(vertices)?)
        }
        ReplyClass::EdgeOf { edge } => {
            if *edge >= board.edge_count() {
                return Err(StrategyError::Malformed(format!(
                    "edge {edge} out of range"
                )));
            }
            Compiled::Mask(to_mask(board.edge_set(*edge)))
        }
        ReplyClass::Union { parts } => {
            let mut m = 0;
            for p in parts {
                match compile(p, board)? {
                    Compiled::Mask(x) => m |= x,
                    Compiled::Any => {
                        return Err(StrategyError::Malformed("catch-all inside a union".into()))
                    }
                }
            }
            Compiled::Mask(m)
        }
    })
}

/// Appends nodes; ids are indices into the growing vector.
#[derive(Default, Clone, Debug)]
pub struct ScriptBuilder {
    pub nodes: Vec<Node>,
}

impl ScriptBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn claim(&mut self, vertex: usize, next: NodeId) -> NodeId {
        self.push(Node::Claim { vertex, next })
    }

    pub fn win(&mut self, edge: usize) -> NodeId {
        self.push(Node::WinNow { edge })
    }

    pub fn respond(
        &mut self,
        branches: Vec<(ReplyClass, NodeId)>,
        default: Option<DefaultRule>,
    ) -> NodeId {
        self.push(Node::Respond { branches, default })
    }

    /// A line of threats: each `(claim, block)` is Maker's claim and the one
    /// reply that stops an immediate win; any other reply falls back to a
    /// bounded search with `budget`. Ends with `last` completing `edge`.
    pub fn forced_line(
        &mut self,
        steps: &[(usize, usize)],
        last: usize,
        edge: usize,
        budget: u8,
    ) -> NodeId {
        let end = self.win(edge);
        let mut cur = self.claim(last, end);
        for &(c, block) in steps.iter().rev() {
            let r = self.respond(
                vec![(
                    ReplyClass::Vertices {
                        vertices: vec![block],
                    },
                    cur,
                )],
                Some(DefaultRule::BoundedWin { budget }),
            );
            cur = self.claim(c, r);
        }
        cur
    }
}

impl Machine for Script {
    type State = ScriptState;

    fn board(&self) -> &Hypergraph {
        &self.board
    }
    fn first_mover(&self) -> Side {
        self.first_mover
    }
    fn start(&self) -> ScriptState {
        Script::start(self)
    }
    fn initial_claims(&self) -> VertexSet {
        self.initial_set()
    }
    fn scope(&self, _: &ScriptState) -> VertexSet {
        self.board.all_vertices()
    }
    fn decide(
        &self,
        st: &ScriptState,
        a: &VertexSet,
        b: &VertexSet,
    ) -> Result<(usize, ScriptState), Violation> {
        self.decide_local(*st, a.low_mask(), b.low_mask())
    }
    fn observe(
        &self,
        st: &ScriptState,
        a: &VertexSet,
        b: &VertexSet,
        reply: Option<usize>,
    ) -> Result<ScriptState, Violation> {
        self.observe_local(*st, a.low_mask(), b.low_mask(), reply)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gen_g3;
    use crate::strategy::{g3_script, verify_maker_strategy, StrategyTree, VerifyOptions};

    fn verify(s: Script) -> Option<Violation> {
        let h = s.board().clone();
        let first = s.first_mover();
        let r = verify_maker_strategy(
            &h,
            &StrategyTree::Script(s),
            first,
            &VerifyOptions::default(),
        );
        r.counterexample.map(|c| c.violation)
    }

    #[test]
    fn malformed_scripts_are_refused() {
        let h = gen_g3();
        let mut b = ScriptBuilder::new();
        let end = b.win(0);
        b.claim(99, end);
        assert!(Script::new(h.clone(), b.nodes.clone(), 1, Side::A).is_err());
        assert!(Script::new(h.clone(), b.nodes, 7, Side::A).is_err());
        let mut b = ScriptBuilder::new();
        let r = b.respond(Vec::new(), None);
        let s = Script::with_options(h, b.nodes, r, Side::B, Vec::new(), ReplyMap::GammaPreamble);
        assert!(matches!(s, Err(StrategyError::Malformed(_))));
    }

    #[test]
    fn overlapping_branches_are_ambiguous() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let mut b = ScriptBuilder::new();
        let leaf = b.respond(Vec::new(), Some(DefaultRule::BoundedWin { budget: 2 }));
        let x = b.claim(2, leaf);
        let root = b.respond(
            vec![
                (ReplyClass::Vertices { vertices: vec![0] }, x),
                (ReplyClass::EdgeOf { edge: 0 }, x),
                (ReplyClass::AnyOther, x),
            ],
            None,
        );
        let s = Script::new(h, b.nodes, root, Side::B).unwrap();
        assert_eq!(verify(s), Some(Violation::AmbiguousReply));
    }

    #[test]
    fn missing_branch_is_uncovered() {
        let h = gen_g3();
        let mut b = ScriptBuilder::new();
        let leaf = b.respond(Vec::new(), Some(DefaultRule::BoundedWin { budget: 7 }));
        let x = b.claim(0, leaf);
        let root = b.respond(vec![(ReplyClass::Vertices { vertices: vec![5] }, x)], None);
        let s = Script::new(h, b.nodes, root, Side::B).unwrap();
        assert_eq!(verify(s), Some(Violation::UncoveredReply));
    }

    #[test]
    fn win_leaf_needs_the_whole_edge() {
        let h = gen_g3();
        let mut b = ScriptBuilder::new();
        let end = b.win(0);
        let root = b.claim(h.edge(0)[0], end);
        let s = Script::new(h, b.nodes, root, Side::A).unwrap();
        assert_eq!(verify(s), Some(Violation::LeafWithoutEdge { edge: 0 }));
    }

    #[test]
    fn dump_lists_claims_by_name() {
        let s = g3_script();
        let text = s.dump();
        let h = gen_g3();
        assert!(text.contains(&h.label(0)), "{text}");
        assert!(text.lines().count() >= s.nodes().len());
    }
}
