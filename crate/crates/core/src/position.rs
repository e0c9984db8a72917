//! Game positions: which vertices each side has claimed, and move mechanics.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexSet};

/// The two sides of a positional game.
///
/// `A` is the side trying to fully claim an edge (Maker, or Chooser);
/// `B` is the side trying to touch every edge (Breaker, or Picker).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Which game a position or report belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    MakerBreaker,
    ChooserPicker,
}

impl GameKind {
    /// Role name of `side` in this game, as used in reports.
    pub fn role(self, side: Side) -> &'static str {
        match (self, side) {
            (GameKind::MakerBreaker, Side::A) => "maker",
            (GameKind::MakerBreaker, Side::B) => "breaker",
            (GameKind::ChooserPicker, Side::A) => "chooser",
            (GameKind::ChooserPicker, Side::B) => "picker",
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            GameKind::MakerBreaker => "mb",
            GameKind::ChooserPicker => "cp",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("vertex {0} is already claimed")]
    AlreadyClaimed(usize),
    #[error("vertex {0} is not on the board")]
    OutOfRange(usize),
}

/// A partition of the board into side-A claims, side-B claims and free vertices.
#[derive(Clone, Copy, Debug)]
pub struct Position<'h> {
    pub board: &'h Hypergraph,
    pub claimed_a: VertexSet,
    pub claimed_b: VertexSet,
    pub first_mover: Side,
}

impl PartialEq for Position<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.board, other.board)
            && self.claimed_a == other.claimed_a
            && self.claimed_b == other.claimed_b
            && self.first_mover == other.first_mover
    }
}

/// Per-edge bookkeeping seen from one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeStatus {
    pub edge: usize,
    pub unclaimed_count: usize,
    /// Some vertex of the edge belongs to the opposing side.
    pub blocked: bool,
}

impl EdgeStatus {
    pub fn is_completed(&self) -> bool {
        self.unclaimed_count == 0 && !self.blocked
    }
}

impl<'h> Position<'h> {
    pub fn new(board: &'h Hypergraph, first_mover: Side) -> Self {
        Position {
            board,
            claimed_a: VertexSet::new(),
            claimed_b: VertexSet::new(),
            first_mover,
        }
    }

    pub fn claimed(&self, side: Side) -> &VertexSet {
        match side {
            Side::A => &self.claimed_a,
            Side::B => &self.claimed_b,
        }
    }

    pub fn is_claimed(&self, v: usize) -> bool {
        self.claimed_a.contains(v) || self.claimed_b.contains(v)
    }

    pub fn unclaimed(&self) -> VertexSet {
        self.board
            .all_vertices()
            .difference(&self.claimed_a.union(&self.claimed_b))
    }

    pub fn unclaimed_count(&self) -> usize {
        self.board.vertex_count() - self.claimed_a.len() - self.claimed_b.len()
    }

    /// Returns the position with `v` claimed by `side`; `self` is untouched.
    pub fn apply_claim(&self, side: Side, v: usize) -> Result<Position<'h>, MoveError> {
        if v >= self.board.vertex_count() {
            return Err(MoveError::OutOfRange(v));
        }
        if self.is_claimed(v) {
            return Err(MoveError::AlreadyClaimed(v));
        }
        let mut next = *self;
        match side {
            Side::A => next.claimed_a.insert(v),
            Side::B => next.claimed_b.insert(v),
        };
        Ok(next)
    }

    /// Side to move in the alternating (Maker-Breaker) game.
    pub fn mb_to_move(&self) -> Side {
        let plies = self.claimed_a.len() + self.claimed_b.len();
        if plies.is_multiple_of(2) {
            self.first_mover
        } else {
            self.first_mover.other()
        }
    }

    /// Whether the claim counts are consistent with alternating play.
    pub fn is_valid_mb(&self) -> bool {
        let diff = self.claimed_a.len() as isize - self.claimed_b.len() as isize;
        self.is_valid_partition()
            && match self.first_mover {
                Side::A => diff == 0 || diff == 1,
                Side::B => diff == 0 || diff == -1,
            }
    }

    /// Whether the claim counts are consistent with Chooser-Picker play.
    pub fn is_valid_cp(&self) -> bool {
        let diff = self.claimed_a.len() as isize - self.claimed_b.len() as isize;
        self.is_valid_partition() && (diff == 0 || diff == 1)
    }

    fn is_valid_partition(&self) -> bool {
        let all = self.board.all_vertices();
        !self.claimed_a.intersects(&self.claimed_b)
            && self.claimed_a.is_subset(&all)
            && self.claimed_b.is_subset(&all)
    }

    /// Status of every edge from the point of view of `winner_side`.
    pub fn edge_statuses(&self, winner_side: Side) -> Vec<EdgeStatus> {
        let (own, opp) = match winner_side {
            Side::A => (&self.claimed_a, &self.claimed_b),
            Side::B => (&self.claimed_b, &self.claimed_a),
        };
        self.board
            .edge_sets()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let mine = e.intersection_len(own);
                let theirs = e.intersection_len(opp);
                EdgeStatus {
                    edge: i,
                    unclaimed_count: e.len() - mine - theirs,
                    blocked: theirs > 0,
                }
            })
            .collect()
    }

    /// Index of some edge fully claimed by `side` (lowest index).
    pub fn completed_edge(&self, side: Side) -> Option<usize> {
        let own = self.claimed(side);
        self.board.edge_sets().iter().position(|e| e.is_subset(own))
    }

    /// Edges not touched by side B.
    pub fn alive_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.board
            .edge_sets()
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.intersects(&self.claimed_b))
            .map(|(i, _)| i)
    }

    /// The residual game as a fresh hypergraph: alive edges with side-A
    /// vertices removed, on the same vertex indices.
    ///
    /// An alive edge already fully claimed by A is dropped (the game is over).
    /// Identical residual sets are merged; the returned map gives the original
    /// edge index of each residual edge.
    pub fn residual(&self) -> (Hypergraph, Vec<usize>) {
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for i in self.alive_edges() {
            let rest = self.board.edge_set(i).difference(&self.claimed_a);
            if rest.is_empty() {
                continue;
            }
            if seen.insert(rest) {
                edges.push(rest.to_vec());
                origin.push(i);
            }
        }
        let h =
            Hypergraph::new(self.board.vertex_count(), edges).expect("residual edges are valid");
        (h, origin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_twice_fails() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let p = Position::new(&h, Side::A);
        let q = p.apply_claim(Side::A, 1).unwrap();
        assert_eq!(q.apply_claim(Side::B, 1), Err(MoveError::AlreadyClaimed(1)));
        assert_eq!(q.apply_claim(Side::A, 3), Err(MoveError::OutOfRange(3)));
        assert!(p.claimed_a.is_empty());
        assert_eq!(q.claimed_a.len(), 1);
    }

    #[test]
    fn singleton_edge_completed() {
        let h = Hypergraph::new(1, vec![vec![0]]).unwrap();
        let p = Position::new(&h, Side::A).apply_claim(Side::A, 0).unwrap();
        let st = p.edge_statuses(Side::A);
        assert_eq!(st[0].unclaimed_count, 0);
        assert!(!st[0].blocked);
        assert!(st[0].is_completed());
    }

    #[test]
    fn alternating_fill_partitions_board() {
        // exhaustive over all orders of a 5-vertex board
        let h = Hypergraph::new(5, vec![vec![0, 1], vec![2, 3, 4]]).unwrap();
        fn rec(p: Position<'_>, side: Side, count: &mut usize) {
            let free = p.unclaimed();
            if free.is_empty() {
                assert!(!p.claimed_a.intersects(&p.claimed_b));
                assert_eq!(p.claimed_a.union(&p.claimed_b), p.board.all_vertices());
                assert!(p.is_valid_mb());
                *count += 1;
                return;
            }
            for v in free.iter() {
                let q = p.apply_claim(side, v).unwrap();
                assert_eq!(q.claimed(side).len(), p.claimed(side).len() + 1);
                assert!(q.is_valid_mb());
                rec(q, side.other(), count);
            }
        }
        let mut count = 0;
        rec(Position::new(&h, Side::A), Side::A, &mut count);
        assert_eq!(count, 120);
    }
}
