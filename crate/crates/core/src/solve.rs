//! Shared report and error types for the exact solvers.

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::VertexSet;
use crate::pairing::Pairing;
use crate::position::{GameKind, Side};

/// Boards above this size are out of reach of exhaustive search anyway;
/// the solvers pack claims into a `u128`.
pub const SOLVER_MAX_VERTICES: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("resource exhausted after {nodes} nodes")]
    ResourceExhausted { nodes: u64 },
    #[error("board has {0} vertices; exact solving supports at most {SOLVER_MAX_VERTICES}")]
    BoardTooLarge(usize),
    #[error("position is not reachable in this game: {0}")]
    InvalidPosition(String),
}

/// What settled the root position without (or before) search.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Potential of the residual game, as an exact fraction below one half.
    ErdosSelfridge {
        potential: String,
    },
    Pairing {
        pairing: Pairing,
    },
    CompletedEdge {
        edge: usize,
    },
    AllBlocked,
    /// Degree-1 pair reduction followed by a solve of the reduced board.
    Reduction {
        removed_pairs: Vec<(usize, usize)>,
        sub_report: Box<SolveReport>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub game: GameKind,
    pub winner: Side,
    /// Maker-Breaker only.
    pub first_mover: Option<Side>,
    /// Not deterministic across worker counts.
    pub nodes_expanded: u64,
    pub elapsed_ms: u64,
    pub certificate: Option<Certificate>,
}

impl SolveReport {
    pub fn winner_role(&self) -> &'static str {
        self.game.role(self.winner)
    }
}

#[inline]
pub(crate) fn to_mask(s: &VertexSet) -> u128 {
    s.iter().fold(0u128, |m, v| {
        debug_assert!(v < SOLVER_MAX_VERTICES);
        m | (1u128 << v)
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

pub(crate) struct Bits(pub u128);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}
