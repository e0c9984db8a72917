//! Explicit strategy trees read off the exact solver, for cross-checking the
//! verifier on small boards.

use std::sync::atomic::AtomicU64;

use rustc_hash::FxHashMap;

use super::script::{NodeId, ReplyClass, Script, ScriptBuilder};
use crate::hypergraph::Hypergraph;
use crate::mb::{MbOptions, MbSolver};
use crate::position::{Position, Side};
use crate::solve::SolveError;

struct Synth<'s> {
    solver: MbSolver<'s>,
    out: ScriptBuilder,
    responds: FxHashMap<(Vec<usize>, Vec<usize>), NodeId>,
}

impl Synth<'_> {
    /// Maker to move in a won position.
    fn maker(&mut self, p: Position<'_>) -> Result<NodeId, SolveError> {
        let free = p.unclaimed();
        for v in free.iter() {
            let q = p.apply_claim(Side::A, v).expect("free vertex");
            if let Some(e) = q.completed_edge(Side::A) {
                let end = self.out.win(e);
                return Ok(self.out.claim(v, end));
            }
        }
        for v in free.iter() {
            let q = p.apply_claim(Side::A, v).expect("free vertex");
            if self.solver.maker_wins_at(&q)? {
                let next = self.breaker(q)?;
                return Ok(self.out.claim(v, next));
            }
        }
        Err(SolveError::InvalidPosition("not a Maker win".into()))
    }

    fn breaker(&mut self, p: Position<'_>) -> Result<NodeId, SolveError> {
        let key = (p.claimed_a.to_vec(), p.claimed_b.to_vec());
        if let Some(&id) = self.responds.get(&key) {
            return Ok(id);
        }
        let mut branches = Vec::new();
        for r in p.unclaimed().iter() {
            let q = p.apply_claim(Side::B, r).expect("free vertex");
            branches.push((ReplyClass::Vertices { vertices: vec![r] }, self.maker(q)?));
        }
        let id = self.out.respond(branches, None);
        self.responds.insert(key, id);
        Ok(id)
    }
}

/// A complete strategy tree for Maker on `h`, or `None` if Breaker wins.
/// Maker picks an immediate completion if one exists, otherwise the lowest
/// vertex that keeps the position won; every Breaker reply gets a branch.
pub fn synthesize_from_solver(
    h: &Hypergraph,
    first_mover: Side,
) -> Result<Option<Script>, SolveError> {
    let opts = MbOptions::default();
    let nodes = AtomicU64::new(0);
    let mut solver = MbSolver::new(h, first_mover, &opts, &nodes)?;
    let start = Position::new(h, first_mover);
    if !solver.maker_wins_at(&start)? {
        return Ok(None);
    }
    let mut s = Synth {
        solver,
        out: ScriptBuilder::new(),
        responds: FxHashMap::default(),
    };
    let root = match first_mover {
        Side::A => s.maker(start)?,
        Side::B => s.breaker(start)?,
    };
    let script = Script::new(h.clone(), s.out.nodes, root, first_mover)
        .map_err(|e| SolveError::InvalidPosition(e.to_string()))?;
    Ok(Some(script))
}
