//! Maker strategies as explicit trees, their lifts to larger boards, and an
//! exhaustive verifier that checks every Breaker line.

mod bounded;
mod builtins;
mod lift;
mod mutation;
mod script;
mod synth;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexSet};
use crate::position::Side;

pub use bounded::bounded_win;
pub use builtins::{build_gamma_strategy, g3_script, gadget_board, gadget_script};
pub use lift::{
    lift_g4, lift_gamma_prime, lift_gamma_prime_with_gadget, lift_split, G4Lift, GammaPrimeLift,
    SplitLift,
};
pub use mutation::{mutants, Mutant};
pub use script::{DefaultRule, Node, NodeId, ReplyClass, ReplyMap, Script, ScriptBuilder};
pub use synth::synthesize_from_solver;
pub use verify::{
    coverage_audit, verify_maker_strategy, Counterexample, CoverageAudit, VerificationReport,
    VerifyOptions,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("board has {0} vertices; scripts support at most 128")]
    BoardTooLarge(usize),
    #[error("malformed strategy: {0}")]
    Malformed(String),
    #[error("permutation is not an automorphism of the board")]
    NotAutomorphism,
    #[error("cannot lift: {0}")]
    WrongShape(String),
}

/// Why a line of play refutes a strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OccupiedClaim {
        vertex: usize,
    },
    ClaimOutsideScope {
        vertex: usize,
    },
    UncoveredReply,
    AmbiguousReply,
    LeafWithoutEdge {
        edge: usize,
    },
    BoundedWinFailure {
        budget: u8,
    },
    ScopeGrew,
    /// The board filled up with no Maker edge.
    BoardExhausted,
    BoardMismatch,
    Malformed(String),
}

impl Violation {
    /// Like `Display`, with vertex names from `board`.
    pub fn describe(&self, board: &Hypergraph) -> String {
        match self {
            Violation::OccupiedClaim { vertex } => {
                format!("claims occupied vertex {}", board.label(*vertex))
            }
            Violation::ClaimOutsideScope { vertex } => {
                format!("claims vertex {} outside its scope", board.label(*vertex))
            }
            other => other.to_string(),
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::OccupiedClaim { vertex } => write!(f, "claims occupied vertex {vertex}"),
            Violation::ClaimOutsideScope { vertex } => {
                write!(f, "claims vertex {vertex} outside its scope")
            }
            Violation::UncoveredReply => f.write_str("no branch covers the reply"),
            Violation::AmbiguousReply => f.write_str("two branches match the reply"),
            Violation::LeafWithoutEdge { edge } => {
                write!(f, "leaf for edge {} but the edge is not complete", edge + 1)
            }
            Violation::BoundedWinFailure { budget } => {
                write!(f, "no win within {budget} moves from this position")
            }
            Violation::ScopeGrew => f.write_str("scope grew"),
            Violation::BoardExhausted => f.write_str("board exhausted without a Maker edge"),
            Violation::BoardMismatch => f.write_str("strategy is for a different board"),
            Violation::Malformed(m) => write!(f, "malformed: {m}"),
        }
    }
}

/// A Maker strategy as seen by the verifier.
///
/// The strategy sees only claims inside `scope(state)`, and replies outside
/// the scope arrive as a pass. Scopes only shrink along a line.
pub(crate) trait Machine: Sync {
    type State: Clone + Eq + std::hash::Hash + Send + Sync;

    fn board(&self) -> &Hypergraph;
    fn first_mover(&self) -> Side;
    fn start(&self) -> Self::State;
    fn initial_claims(&self) -> VertexSet;
    fn scope(&self, st: &Self::State) -> VertexSet;
    fn decide(
        &self,
        st: &Self::State,
        a: &VertexSet,
        b: &VertexSet,
    ) -> Result<(usize, Self::State), Violation>;
    /// Rewrites claims by a board automorphism the strategy cannot tell
    /// apart, so equivalent positions share a memo entry.
    fn canonicalize(&self, _st: &Self::State, _a: &mut VertexSet, _b: &mut VertexSet) {}
    /// `b` is Breaker's claims before `reply`.
    fn observe(
        &self,
        st: &Self::State,
        a: &VertexSet,
        b: &VertexSet,
        reply: Option<usize>,
    ) -> Result<Self::State, Violation>;
}

/// Any strategy the verifier accepts.
#[derive(Clone, Debug)]
pub enum StrategyTree {
    Script(Script),
    GammaPrime(Box<GammaPrimeLift>),
    G4(Box<G4Lift>),
    Split(SplitLift),
}

impl StrategyTree {
    pub fn board(&self) -> &Hypergraph {
        match self {
            StrategyTree::Script(s) => s.board(),
            StrategyTree::GammaPrime(s) => s.board(),
            StrategyTree::G4(s) => s.board(),
            StrategyTree::Split(s) => s.board(),
        }
    }

    pub fn first_mover(&self) -> Side {
        match self {
            StrategyTree::Script(s) => s.first_mover(),
            StrategyTree::GammaPrime(_) => Side::B,
            StrategyTree::G4(_) => Side::A,
            StrategyTree::Split(s) => s.first_mover(),
        }
    }

    pub fn as_script(&self) -> Option<&Script> {
        match self {
            StrategyTree::Script(s) => Some(s),
            _ => None,
        }
    }
}

/// Relabels a script through a board automorphism.
pub fn conjugate(s: &StrategyTree, perm: &[usize]) -> Result<StrategyTree, StrategyError> {
    let script = s
        .as_script()
        .ok_or_else(|| StrategyError::WrongShape("only scripts can be relabelled".into()))?;
    let board = script.board();
    if perm.len() != board.vertex_count() || !board.is_automorphism(perm) {
        return Err(StrategyError::NotAutomorphism);
    }
    let edge_map: Vec<usize> = board
        .edges()
        .iter()
        .map(|e| {
            let img: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
            board
                .find_edge(&img)
                .expect("automorphism maps edges to edges")
        })
        .collect();
    let nodes = script
        .nodes()
        .iter()
        .map(|n| relabel_node(n, perm, &edge_map))
        .collect();
    Script::with_options(
        board.clone(),
        nodes,
        script.root(),
        script.first_mover(),
        script.initial().iter().map(|&v| perm[v]).collect(),
        script.reply_map(),
    )
    .map(StrategyTree::Script)
}

pub(crate) fn relabel_node(n: &Node, perm: &[usize], edge_map: &[usize]) -> Node {
    match n {
        Node::Claim { vertex, next } => Node::Claim {
            vertex: perm[*vertex],
            next: *next,
        },
        Node::WinNow { edge } => Node::WinNow {
            edge: edge_map[*edge],
        },
        Node::Respond { branches, default } => Node::Respond {
            branches: branches
                .iter()
                .map(|(c, id)| (relabel_class(c, perm, edge_map), *id))
                .collect(),
            default: *default,
        },
    }
}

fn relabel_class(c: &ReplyClass, perm: &[usize], edge_map: &[usize]) -> ReplyClass {
    let map = |vs: &[usize]| vs.iter().map(|&v| perm[v]).collect();
    match c {
        ReplyClass::Vertices { vertices } => ReplyClass::Vertices {
            vertices: map(vertices),
        },
        ReplyClass::SubBoard { vertices } => ReplyClass::SubBoard {
            vertices: map(vertices),
        },
        ReplyClass::EdgeOf { edge } => ReplyClass::EdgeOf {
            edge: edge_map[*edge],
        },
        ReplyClass::Union { parts } => ReplyClass::Union {
            parts: parts
                .iter()
                .map(|p| relabel_class(p, perm, edge_map))
                .collect(),
        },
        ReplyClass::AnyOther => ReplyClass::AnyOther,
    }
}

/// Names accepted by [`verify_target`].
pub const VERIFY_TARGETS: [&str; 4] = ["gamma", "gamma-prime", "g4", "g3-split"];

/// A built-in board with its Maker strategy and the side that moves first.
pub fn verify_target(name: &str) -> Result<(Hypergraph, StrategyTree, Side), StrategyError> {
    use crate::constructions::{gen_g3, gen_g4, gen_gamma, gen_gamma_prime, split_pendant};
    Ok(match name {
        "gamma" => (gen_gamma(), build_gamma_strategy(), Side::B),
        "gamma-prime" => (
            gen_gamma_prime(),
            lift_gamma_prime(&build_gamma_strategy())?,
            Side::B,
        ),
        "g4" => {
            let inner = lift_gamma_prime(&build_gamma_strategy())?;
            (gen_g4(), lift_g4(&inner)?, Side::A)
        }
        "g3-split" => {
            let g3 = gen_g3();
            let s = lift_split(&StrategyTree::Script(g3_script()), &g3)?;
            (split_pendant(&g3), s, Side::A)
        }
        other => {
            return Err(StrategyError::WrongShape(format!(
                "unknown target '{other}'"
            )))
        }
    })
}
