//! Depth-limited "Maker completes an edge within k moves" search on small boards.

use crate::position::Position;
use crate::solve::{to_mask, Bits, SolveError, SOLVER_MAX_VERTICES};

/// Lowest-index edge that Maker completes with one more vertex; returns that vertex.
pub(crate) fn immediate(edges: &[u128], a: u128, b: u128) -> Option<usize> {
    edges.iter().find_map(|&e| {
        let r = e & !a;
        (e & b == 0 && r.count_ones() == 1).then(|| r.trailing_zeros() as usize)
    })
}

/// Union of the unclaimed parts of alive edges Maker can still finish in `k` moves.
fn reachable(edges: &[u128], a: u128, b: u128, k: u32) -> u128 {
    edges
        .iter()
        .filter(|&&e| e & b == 0)
        .map(|&e| e & !a)
        .filter(|r| r.count_ones() <= k)
        .fold(0, |m, r| m | r)
}

fn maker_wins(edges: &[u128], a: u128, b: u128, k: u32) -> bool {
    if k == 0 {
        return false;
    }
    if immediate(edges, a, b).is_some() {
        return true;
    }
    if k == 1 {
        return false;
    }
    Bits(reachable(edges, a, b, k)).any(|v| breaker_fails(edges, a | 1 << v, b, k - 1))
}

/// Breaker to move, Maker has `k ≥ 1` moves left.
fn breaker_fails(edges: &[u128], a: u128, b: u128, k: u32) -> bool {
    let threats = edges
        .iter()
        .filter(|&&e| e & b == 0)
        .map(|&e| e & !a)
        .filter(|r| r.count_ones() == 1)
        .fold(0u128, |m, r| m | r);
    match threats.count_ones() {
        0 => {}
        1 => return maker_wins(edges, a, b | threats, k),
        _ => return true,
    }
    // Any claim inside a reachable edge is at least as good for Breaker as a
    // claim elsewhere, so only those replies need checking.
    let replies = reachable(edges, a, b, k);
    replies != 0 && Bits(replies).all(|r| maker_wins(edges, a, b | 1 << r, k))
}

/// First move (immediate completions first, then by index) that wins within `k` moves.
pub(crate) fn winning_move(edges: &[u128], a: u128, b: u128, k: u32) -> Option<usize> {
    if k == 0 {
        return None;
    }
    if let Some(v) = immediate(edges, a, b) {
        return Some(v);
    }
    if k == 1 {
        return None;
    }
    Bits(reachable(edges, a, b, k)).find(|&v| breaker_fails(edges, a | 1 << v, b, k - 1))
}

/// True iff Maker (side A, to move) completes an edge within `k` of his own
/// moves whatever Breaker replies.
pub fn bounded_win(p: &Position<'_>, k: u32) -> Result<bool, SolveError> {
    if p.board.vertex_count() > SOLVER_MAX_VERTICES {
        return Err(SolveError::BoardTooLarge(p.board.vertex_count()));
    }
    let edges: Vec<u128> = p.board.edge_sets().iter().map(to_mask).collect();
    let (a, b) = (to_mask(&p.claimed_a), to_mask(&p.claimed_b));
    if edges.iter().any(|&e| e & !a == 0) {
        return Ok(true);
    }
    Ok(maker_wins(&edges, a, b, k))
}
