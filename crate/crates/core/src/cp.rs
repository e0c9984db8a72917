//! Exact Chooser-Picker solving.
//!
//! Picker offers an unordered pair of unclaimed vertices, Chooser keeps one
//! and Picker receives the other; a final odd vertex goes to Chooser.
//! A composite move is `(offer, choice)`, so only positions between offers
//! are memoized.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::hypergraph::Hypergraph;
use crate::position::{GameKind, Position, Side};
use crate::solve::{full_mask, to_mask, Bits, SolveError, SolveReport, SOLVER_MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpOptions {
    pub use_lemma23: bool,
    pub node_limit: Option<u64>,
    pub worker_count: usize,
}

impl Default for CpOptions {
    fn default() -> Self {
        CpOptions {
            use_lemma23: true,
            node_limit: None,
            worker_count: 1,
        }
    }
}

/// If an edge free of Picker's vertices has exactly two unclaimed vertices,
/// the pair from the lowest such edge.
///
/// Picker may restrict his offer to this pair without changing the value.
pub fn lemma23_offer(p: &Position<'_>) -> Option<(usize, usize)> {
    p.edge_statuses(Side::A)
        .into_iter()
        .find(|s| !s.blocked && s.unclaimed_count == 2)
        .map(|s| {
            let mut it = p
                .board
                .edge(s.edge)
                .iter()
                .copied()
                .filter(|&v| !p.is_claimed(v));
            (it.next().unwrap(), it.next().unwrap())
        })
}

enum Node {
    Decided(bool),
    Offers(Vec<(usize, usize)>),
}

struct Search<'a> {
    edges: Vec<u128>,
    all: u128,
    opts: &'a CpOptions,
    memo: FxHashMap<(u128, u128), bool>,
    nodes: &'a AtomicU64,
    limit: u64,
}

impl<'a> Search<'a> {
    fn new(h: &Hypergraph, opts: &'a CpOptions, nodes: &'a AtomicU64) -> Self {
        Search {
            edges: h.edge_sets().iter().map(to_mask).collect(),
            all: full_mask(h.vertex_count()),
            opts,
            memo: FxHashMap::default(),
            nodes,
            limit: opts.node_limit.unwrap_or(u64::MAX),
        }
    }

    fn expand(&self, a: u128, b: u128) -> Node {
        let free = self.all & !(a | b);
        let mut live = 0u128;
        let mut any_alive = false;
        let mut forced: Option<u128> = None;
        for &e in &self.edges {
            if e & b != 0 {
                continue;
            }
            let r = e & !a;
            match r.count_ones() {
                0 => return Node::Decided(true),
                1 if self.opts.use_lemma23 => return Node::Decided(true),
                2 if self.opts.use_lemma23 && forced.is_none() => forced = Some(r),
                _ => {}
            }
            any_alive = true;
            live |= r;
        }
        if !any_alive {
            return Node::Decided(false);
        }
        match free.count_ones() {
            0 => return Node::Decided(false),
            1 => return Node::Decided(live & free != 0 && self.completes(a | free, b)),
            _ => {}
        }
        if let Some(r) = forced {
            let lo = r.trailing_zeros() as usize;
            let hi = 127 - r.leading_zeros() as usize;
            return Node::Offers(vec![(lo, hi)]);
        }
        // Vertices outside every alive edge are interchangeable; two suffice.
        let dead: Vec<usize> = Bits(free & !live).take(2).collect();
        let mut cand: Vec<usize> = Bits(live).chain(dead).collect();
        cand.sort_unstable();
        let mut offers = Vec::with_capacity(cand.len() * (cand.len() - 1) / 2);
        for (i, &p) in cand.iter().enumerate() {
            for &q in &cand[i + 1..] {
                offers.push((p, q));
            }
        }
        Node::Offers(offers)
    }

    fn completes(&self, a: u128, b: u128) -> bool {
        self.edges.iter().any(|&e| e & b == 0 && e & !a == 0)
    }

    /// True iff Chooser (side A) wins with Picker to offer.
    fn chooser_wins(&mut self, a: u128, b: u128) -> Result<bool, SolveError> {
        if let Some(&v) = self.memo.get(&(a, b)) {
            return Ok(v);
        }
        let value = match self.expand(a, b) {
            Node::Decided(v) => v,
            Node::Offers(offers) => {
                let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
                if n > self.limit {
                    return Err(SolveError::ResourceExhausted { nodes: n });
                }
                let mut value = true;
                for (p, q) in offers {
                    if !self.offer_survives(a, b, p, q)? {
                        value = false;
                        break;
                    }
                }
                value
            }
        };
        self.memo.insert((a, b), value);
        Ok(value)
    }

    /// True iff Chooser has a winning answer to the offer `{p, q}`.
    fn offer_survives(&mut self, a: u128, b: u128, p: usize, q: usize) -> Result<bool, SolveError> {
        Ok(self.chooser_wins(a | 1 << p, b | 1 << q)?
            || self.chooser_wins(a | 1 << q, b | 1 << p)?)
    }
}

/// Solves the Chooser-Picker game on `h` from the empty position.
pub fn solve_cp(h: &Hypergraph, opts: &CpOptions) -> Result<SolveReport, SolveError> {
    solve_cp_from(&Position::new(h, Side::B), opts)
}

/// Solves from a position between offers (Chooser holds `claimed_a`).
pub fn solve_cp_from(p: &Position<'_>, opts: &CpOptions) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    if p.board.vertex_count() > SOLVER_MAX_VERTICES {
        return Err(SolveError::BoardTooLarge(p.board.vertex_count()));
    }
    if !p.is_valid_cp() {
        return Err(SolveError::InvalidPosition(format!(
            "{} chooser claims vs {} picker claims",
            p.claimed_a.len(),
            p.claimed_b.len()
        )));
    }
    let nodes = AtomicU64::new(0);
    let (a, b) = (to_mask(&p.claimed_a), to_mask(&p.claimed_b));
    let chooser = if opts.worker_count <= 1 {
        Search::new(p.board, opts, &nodes).chooser_wins(a, b)?
    } else {
        match Search::new(p.board, opts, &nodes).expand(a, b) {
            Node::Decided(v) => v,
            Node::Offers(offers) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.worker_count)
                    .build()
                    .expect("thread pool");
                let results: Vec<Result<bool, SolveError>> = pool.install(|| {
                    offers
                        .par_iter()
                        .map(|&(x, y)| {
                            Search::new(p.board, opts, &nodes).offer_survives(a, b, x, y)
                        })
                        .collect()
                });
                let mut value = true;
                for r in results {
                    if !r? {
                        value = false;
                        break;
                    }
                }
                value
            }
        }
    };
    Ok(SolveReport {
        game: GameKind::ChooserPicker,
        winner: if chooser { Side::A } else { Side::B },
        first_mover: None,
        nodes_expanded: nodes.load(Ordering::Relaxed),
        elapsed_ms: start.elapsed().as_millis() as u64,
        certificate: None,
    })
}

/// One class of first offers and Chooser's answer to it.
pub struct OfferClass {
    pub description: String,
    pub matches: Box<dyn Fn(usize, usize) -> bool + Send + Sync>,
    /// Given the offer, the vertex Chooser keeps.
    pub choose: Box<dyn Fn(usize, usize) -> usize + Send + Sync>,
}

/// First-offer classes; a pair belongs to the first class that matches it.
pub struct CaseTable {
    pub classes: Vec<OfferClass>,
}

impl CaseTable {
    pub fn classify(&self, p: usize, q: usize) -> Option<usize> {
        self.classes.iter().position(|c| (c.matches)(p, q))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OfferCheck {
    pub offer: (usize, usize),
    pub class: Option<usize>,
    pub chosen: Option<usize>,
    pub winner: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseTableReport {
    pub offers: usize,
    pub covered: bool,
    pub all_winning: bool,
    /// Offers per class, in table order.
    pub class_counts: Vec<usize>,
    pub class_names: Vec<String>,
    pub first_failure: Option<OfferCheck>,
    pub checks: Vec<OfferCheck>,
}

impl CaseTableReport {
    pub fn passed(&self) -> bool {
        self.covered && self.all_winning
    }
}

/// Checks that every first offer is classified and that the prescribed
/// choice leaves Chooser winning.
pub fn validate_case_table(
    h: &Hypergraph,
    t: &CaseTable,
    opts: &CpOptions,
) -> Result<CaseTableReport, SolveError> {
    let n = h.vertex_count();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .collect();
    let mut class_counts = vec![0; t.classes.len()];
    let mut covered = true;
    for &(p, q) in &pairs {
        match t.classify(p, q) {
            Some(c) => class_counts[c] += 1,
            None => covered = false,
        }
    }
    let inner = CpOptions {
        worker_count: 1,
        ..opts.clone()
    };
    let check = |&(p, q): &(usize, usize)| -> Result<OfferCheck, SolveError> {
        let Some(c) = t.classify(p, q) else {
            return Ok(OfferCheck {
                offer: (p, q),
                class: None,
                chosen: None,
                winner: None,
            });
        };
        let keep = (t.classes[c].choose)(p, q);
        let give = if keep == p { q } else { p };
        let pos = Position::new(h, Side::B)
            .apply_claim(Side::A, keep)
            .and_then(|x| x.apply_claim(Side::B, give))
            .expect("fresh pair");
        let r = solve_cp_from(&pos, &inner)?;
        Ok(OfferCheck {
            offer: (p, q),
            class: Some(c),
            chosen: Some(keep),
            winner: Some(r.winner_role().to_string()),
        })
    };
    let checks: Vec<OfferCheck> = if opts.worker_count <= 1 {
        pairs.iter().map(check).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.worker_count)
            .build()
            .expect("thread pool");
        pool.install(|| pairs.par_iter().map(check).collect::<Result<_, _>>())?
    };
    let first_failure = checks
        .iter()
        .find(|c| c.winner.as_deref() != Some("chooser"))
        .cloned();
    Ok(CaseTableReport {
        offers: pairs.len(),
        covered,
        all_winning: first_failure.is_none(),
        class_counts,
        class_names: t.classes.iter().map(|c| c.description.clone()).collect(),
        first_failure,
        checks,
    })
}

/// Which of `x_1..x_3`, `y_1..y_6`, `z_1..z_6` a vertex is, with its index.
fn gcp_kind(v: usize) -> (char, usize) {
    match v {
        0..=2 => ('x', v + 1),
        3..=8 => ('y', v - 2),
        _ => ('z', v - 8),
    }
}

fn class(
    description: &str,
    matches: impl Fn(usize, usize) -> bool + Copy + Send + Sync + 'static,
    choose: impl Fn(usize, usize) -> usize + Send + Sync + 'static,
) -> OfferClass {
    OfferClass {
        description: description.to_string(),
        matches: Box::new(move |p, q| matches(p, q) || matches(q, p)),
        choose: Box::new(move |p, q| {
            if matches(p, q) {
                choose(p, q)
            } else {
                choose(q, p)
            }
        }),
    }
}

/// Chooser's first-offer answers on the counterexample graph, seven classes.
///
/// Pass `clockwise = false` to take the anticlockwise vertex from two
/// vertices of X instead; that table must fail.
pub fn gcp_case_table(clockwise: bool) -> CaseTable {
    let succ = |i: usize| i % 3 + 1;
    // f_{2i-1} ∪ f_{2i} minus x_i: y and z with index 2i-1 or 2i
    let near_x = |i: usize, v: usize| {
        let (k, m) = gcp_kind(v);
        k != 'x' && m.div_ceil(2) == i
    };
    CaseTable {
        classes: vec![
            class(
                "two vertices of X: keep the clockwise successor",
                move |p, q| gcp_kind(p).0 == 'x' && gcp_kind(q).0 == 'x' && gcp_kind(q).1 == succ(gcp_kind(p).1),
                move |p, q| if clockwise { q } else { p },
            ),
            class(
                "x_i with a vertex of f_{2i-1} or f_{2i}: keep x_i",
                move |p, q| gcp_kind(p).0 == 'x' && near_x(gcp_kind(p).1, q),
                |p, _| p,
            ),
            class(
                "x_i with any other vertex outside X: keep x_i",
                |p, q| gcp_kind(p).0 == 'x' && gcp_kind(q).0 != 'x',
                |p, _| p,
            ),
            class(
                "two vertices of Y in one edge: keep the lower",
                |p, q| {
                    let ((kp, ip), (kq, iq)) = (gcp_kind(p), gcp_kind(q));
                    kp == 'y' && kq == 'y' && ip % 2 == 1 && iq == ip + 1
                },
                |p, _| p,
            ),
            class(
                "y_k with z_k: keep y_k",
                |p, q| {
                    let ((kp, ip), (kq, iq)) = (gcp_kind(p), gcp_kind(q));
                    kp == 'y' && kq == 'z' && ip == iq
                },
                |p, _| p,
            ),
            class(
                "a vertex of Y with a vertex of Y or Z in no common edge: keep the (lower) Y vertex",
                |p, q| gcp_kind(p).0 == 'y' && gcp_kind(q).0 != 'x' && p < q,
                |p, _| p,
            ),
            class(
                "two vertices of Z: keep the lower",
                |p, q| gcp_kind(p).0 == 'z' && gcp_kind(q).0 == 'z' && p < q,
                |p, _| p,
            ),
        ],
    }
}
