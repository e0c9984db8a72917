//! Exact Maker-Breaker solving.
//!
//! Plain memoized minimax over `(maker claims, breaker claims)`, restricted to
//! vertices of alive edges, with immediate-win and forced-block detection.
//! Optional rules: the Erdős–Selfridge potential bound, a root pairing
//! certificate, degree-1 pair reduction as a presolve, and the size-2 edge
//! move restriction. None of the optional rules changes a verdict.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::constructions::reduce_lemma21;
use crate::hypergraph::Hypergraph;
use crate::pairing::find_pairing;
use crate::position::{GameKind, Position, Side};
use crate::solve::{
    full_mask, to_mask, Bits, Certificate, SolveError, SolveReport, SOLVER_MAX_VERTICES,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MbOptions {
    pub use_es_certificate: bool,
    pub use_pairing_certificate: bool,
    pub use_lemma21: bool,
    pub use_lemma22: bool,
    pub node_limit: Option<u64>,
    pub worker_count: usize,
}

impl Default for MbOptions {
    fn default() -> Self {
        MbOptions {
            use_es_certificate: true,
            use_pairing_certificate: true,
            use_lemma21: true,
            use_lemma22: true,
            node_limit: None,
            worker_count: 1,
        }
    }
}

impl MbOptions {
    /// All optional rules off.
    pub fn unpruned() -> Self {
        MbOptions {
            use_es_certificate: false,
            use_pairing_certificate: false,
            use_lemma21: false,
            use_lemma22: false,
            ..Default::default()
        }
    }

    /// Options from a 4-bit pattern: ES, pairing, lemma21, lemma22.
    pub fn from_bits(bits: u8) -> Self {
        MbOptions {
            use_es_certificate: bits & 1 != 0,
            use_pairing_certificate: bits & 2 != 0,
            use_lemma21: bits & 4 != 0,
            use_lemma22: bits & 8 != 0,
            ..Default::default()
        }
    }
}

/// Erdős–Selfridge potential: sum over Breaker-free edges of `2^-u`, where
/// `u` counts the edge's vertices not yet claimed by Maker (side A).
pub fn es_potential(p: &Position<'_>) -> BigRational {
    let mut sum = BigRational::zero();
    for e in p.alive_edges() {
        let u = p.board.edge_set(e).difference(&p.claimed_a).len();
        let den = BigInt::one() << u;
        sum += BigRational::new(BigInt::one(), den);
    }
    sum
}

/// Exact test of `sum_k hist[k] * 2^-k < 1/2` for `hist[0] == 0`.
fn es_below_half(hist: &[u32]) -> bool {
    if hist.first().copied().unwrap_or(0) != 0 {
        return false;
    }
    let mut carry: u64 = 0;
    for k in (1..hist.len()).rev() {
        carry = hist[k] as u64 + carry / 2;
    }
    // `carry` now counts units of 1/2 (floored); the remainder is below 1/2.
    hist.len() < 2 || carry == 0
}

/// If some edge `{x, y}` has `degree(x) = 1`, Maker (to move) may restrict to `y`.
///
/// The lowest-index qualifying edge wins; if both endpoints have degree 1
/// the lower-indexed one is returned.
pub fn maker_root_restriction(h: &Hypergraph) -> Option<usize> {
    let deg = h.degrees();
    h.edges().iter().find_map(|e| match e[..] {
        [a, b] => match (deg[a] == 1, deg[b] == 1) {
            (true, true) => Some(a.min(b)),
            (true, false) => Some(b),
            (false, true) => Some(a),
            (false, false) => None,
        },
        _ => None,
    })
}

struct Board {
    edges: Vec<u128>,
    all: u128,
}

impl Board {
    fn new(h: &Hypergraph) -> Result<Board, SolveError> {
        if h.vertex_count() > SOLVER_MAX_VERTICES {
            return Err(SolveError::BoardTooLarge(h.vertex_count()));
        }
        Ok(Board {
            edges: h.edge_sets().iter().map(to_mask).collect(),
            all: full_mask(h.vertex_count()),
        })
    }
}

enum Node {
    Decided(bool),
    Moves { maker: bool, moves: Vec<usize> },
}

/// Reusable memoized search state for one board and first mover.
pub struct MbSolver<'a> {
    board: Board,
    maker_first: bool,
    opts: &'a MbOptions,
    memo: FxHashMap<(u128, u128), bool>,
    nodes: &'a AtomicU64,
    limit: u64,
}

impl<'a> MbSolver<'a> {
    fn with_board(
        board: Board,
        first_mover: Side,
        opts: &'a MbOptions,
        nodes: &'a AtomicU64,
    ) -> Self {
        MbSolver {
            board,
            maker_first: first_mover == Side::A,
            opts,
            memo: FxHashMap::default(),
            nodes,
            limit: opts.node_limit.unwrap_or(u64::MAX),
        }
    }

    pub fn new(
        h: &Hypergraph,
        first_mover: Side,
        opts: &'a MbOptions,
        nodes: &'a AtomicU64,
    ) -> Result<Self, SolveError> {
        Ok(Self::with_board(Board::new(h)?, first_mover, opts, nodes))
    }

    /// Value of an arbitrary (valid) position: true iff Maker wins.
    pub fn maker_wins_at(&mut self, p: &Position<'_>) -> Result<bool, SolveError> {
        self.maker_wins(to_mask(&p.claimed_a), to_mask(&p.claimed_b))
    }

    /// First winning move for the side to move (in search order), if any.
    pub fn winning_move(&mut self, p: &Position<'_>) -> Result<Option<usize>, SolveError> {
        let (a, b) = (to_mask(&p.claimed_a), to_mask(&p.claimed_b));
        match self.expand(a, b) {
            Node::Decided(_) => Ok(None),
            Node::Moves { maker, moves } => {
                for m in moves {
                    let win = if maker {
                        self.maker_wins(a | 1 << m, b)?
                    } else {
                        !self.maker_wins(a, b | 1 << m)?
                    };
                    if win {
                        return Ok(Some(m));
                    }
                }
                Ok(None)
            }
        }
    }

    fn maker_to_move(&self, a: u128, b: u128) -> bool {
        let plies = a.count_ones() + b.count_ones();
        self.maker_first == plies.is_multiple_of(2)
    }

    /// Terminal checks and move generation for one node.
    fn expand(&self, a: u128, b: u128) -> Node {
        let free = self.board.all & !(a | b);
        let mut residuals: Vec<(usize, u128)> = Vec::new();
        for (i, &e) in self.board.edges.iter().enumerate() {
            if e & b != 0 {
                continue;
            }
            let r = e & !a;
            if r == 0 {
                return Node::Decided(true);
            }
            residuals.push((i, r));
        }
        if residuals.is_empty() || free == 0 {
            return Node::Decided(false);
        }
        let maker = self.maker_to_move(a, b);
        let mut degree = [0u16; 128];
        let mut relevant = 0u128;
        for &(_, r) in &residuals {
            relevant |= r;
            for v in Bits(r) {
                degree[v] += 1;
            }
        }
        let ordered = |set: u128| {
            let mut mv: Vec<usize> = Bits(set).collect();
            mv.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
            mv
        };
        if maker {
            if residuals.iter().any(|&(_, r)| r.count_ones() == 1) {
                return Node::Decided(true);
            }
            if self.opts.use_es_certificate {
                let mut hist = [0u32; 129];
                for &(_, r) in &residuals {
                    hist[r.count_ones() as usize] += 1;
                }
                if es_below_half(&hist) {
                    return Node::Decided(false);
                }
            }
            if self.opts.use_lemma22 {
                for &(_, r) in &residuals {
                    if r.count_ones() != 2 {
                        continue;
                    }
                    let lo = r.trailing_zeros() as usize;
                    let hi = 127 - r.leading_zeros() as usize;
                    let pick = match (degree[lo] == 1, degree[hi] == 1) {
                        (true, _) => Some(if degree[hi] == 1 { lo } else { hi }),
                        (false, true) => Some(lo),
                        _ => None,
                    };
                    if let Some(y) = pick {
                        return Node::Moves {
                            maker,
                            moves: vec![y],
                        };
                    }
                }
            }
            Node::Moves {
                maker,
                moves: ordered(relevant),
            }
        } else {
            let threats = residuals
                .iter()
                .filter(|&&(_, r)| r.count_ones() == 1)
                .fold(0u128, |m, &(_, r)| m | r);
            match threats.count_ones() {
                0 => Node::Moves {
                    maker,
                    moves: ordered(relevant),
                },
                1 => Node::Moves {
                    maker,
                    moves: vec![threats.trailing_zeros() as usize],
                },
                _ => Node::Decided(true),
            }
        }
    }

    fn maker_wins(&mut self, a: u128, b: u128) -> Result<bool, SolveError> {
        if let Some(&v) = self.memo.get(&(a, b)) {
            return Ok(v);
        }
        let value = match self.expand(a, b) {
            Node::Decided(v) => v,
            Node::Moves { maker, moves } => {
                let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
                if n > self.limit {
                    return Err(SolveError::ResourceExhausted { nodes: n });
                }
                let mut value = !maker;
                for m in moves {
                    let child = if maker {
                        self.maker_wins(a | 1 << m, b)?
                    } else {
                        self.maker_wins(a, b | 1 << m)?
                    };
                    if child == maker {
                        value = maker;
                        break;
                    }
                }
                value
            }
        };
        self.memo.insert((a, b), value);
        Ok(value)
    }
}

fn root_certificate(p: &Position<'_>, opts: &MbOptions) -> Option<(Side, Certificate)> {
    if let Some(edge) = p.completed_edge(Side::A) {
        return Some((Side::A, Certificate::CompletedEdge { edge }));
    }
    if p.alive_edges().next().is_none() {
        return Some((Side::B, Certificate::AllBlocked));
    }
    let maker_to_move = p.mb_to_move() == Side::A;
    if opts.use_es_certificate && maker_to_move {
        let pot = es_potential(p);
        if pot < BigRational::new(BigInt::one(), BigInt::from(2)) {
            return Some((
                Side::B,
                Certificate::ErdosSelfridge {
                    potential: pot.to_string(),
                },
            ));
        }
    }
    if opts.use_pairing_certificate {
        let (residual, _) = p.residual();
        if let Some(pairing) = find_pairing(&residual) {
            let free = p.unclaimed();
            if pairing
                .pairs
                .iter()
                .all(|&(x, y)| free.contains(x) && free.contains(y))
            {
                return Some((Side::B, Certificate::Pairing { pairing }));
            }
        }
    }
    None
}

/// Solves the Maker-Breaker game on `h` from the empty position.
pub fn solve_mb(
    h: &Hypergraph,
    first_mover: Side,
    opts: &MbOptions,
) -> Result<SolveReport, SolveError> {
    solve_mb_from(&Position::new(h, first_mover), opts)
}

/// Solves the Maker-Breaker game from a given position.
pub fn solve_mb_from(p: &Position<'_>, opts: &MbOptions) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    if !p.is_valid_mb() {
        return Err(SolveError::InvalidPosition(format!(
            "{} maker claims vs {} breaker claims",
            p.claimed_a.len(),
            p.claimed_b.len()
        )));
    }
    let board = Board::new(p.board)?;
    let report = |winner, nodes, certificate| SolveReport {
        game: GameKind::MakerBreaker,
        winner,
        first_mover: Some(p.first_mover),
        nodes_expanded: nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
        certificate,
    };
    if let Some((winner, cert)) = root_certificate(p, opts) {
        return Ok(report(winner, 0, Some(cert)));
    }
    if opts.use_lemma21 && p.claimed_a.is_empty() && p.claimed_b.is_empty() {
        let red = reduce_lemma21(p.board);
        if !red.removed_pairs.is_empty() {
            let sub = solve_mb(&red.hypergraph, p.first_mover, opts)?;
            if sub.winner == Side::B {
                let nodes = sub.nodes_expanded;
                return Ok(report(
                    Side::B,
                    nodes,
                    Some(Certificate::Reduction {
                        removed_pairs: red.removed_pairs,
                        sub_report: Box::new(sub),
                    }),
                ));
            }
        }
    }

    let nodes = AtomicU64::new(0);
    let (a, b) = (to_mask(&p.claimed_a), to_mask(&p.claimed_b));
    let winner_is_maker = if opts.worker_count <= 1 {
        MbSolver::with_board(board, p.first_mover, opts, &nodes).maker_wins(a, b)?
    } else {
        let root = MbSolver::with_board(Board::new(p.board)?, p.first_mover, opts, &nodes);
        match root.expand(a, b) {
            Node::Decided(v) => v,
            Node::Moves { maker, moves } => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.worker_count)
                    .build()
                    .expect("thread pool");
                let results: Vec<Result<bool, SolveError>> = pool.install(|| {
                    moves
                        .par_iter()
                        .map(|&m| {
                            let mut s = MbSolver::with_board(
                                Board::new(p.board)?,
                                p.first_mover,
                                opts,
                                &nodes,
                            );
                            if maker {
                                s.maker_wins(a | 1 << m, b)
                            } else {
                                s.maker_wins(a, b | 1 << m)
                            }
                        })
                        .collect()
                });
                let mut value = Ok(!maker);
                for r in results {
                    match r {
                        Ok(v) if v == maker => {
                            value = Ok(maker);
                            break;
                        }
                        Ok(_) => {}
                        Err(e) => {
                            value = Err(e);
                            break;
                        }
                    }
                }
                value?
            }
        }
    };
    let winner = if winner_is_maker { Side::A } else { Side::B };
    Ok(report(winner, nodes.load(Ordering::Relaxed), None))
}


#[cfg(test)]
mod construction_tests {
    use super::*;
    use crate::constructions::{gen_complete_multipartite, gen_g3};

    #[test]
    fn g3_is_maker_win() {
        for opts in [MbOptions::default(), MbOptions::unpruned()] {
            let r = solve_mb(&gen_g3(), Side::A, &opts).unwrap();
            assert_eq!(r.winner, Side::A);
        }
    }

    #[test]
    fn kpartite_maker_wins() {
        for (k, n) in [(2, 2), (2, 3), (3, 2)] {
            let h = gen_complete_multipartite(k, n).unwrap();
            assert_eq!(
                solve_mb(&h, Side::A, &MbOptions::default()).unwrap().winner,
                Side::A
            );
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let opts = MbOptions {
            worker_count: 4,
            ..Default::default()
        };
        assert_eq!(solve_mb(&gen_g3(), Side::A, &opts).unwrap().winner, Side::A);
        assert_eq!(
            solve_mb(&gen_g3(), Side::B, &opts).unwrap().winner,
            solve_mb(&gen_g3(), Side::B, &MbOptions::default())
                .unwrap()
                .winner
        );
    }
}
