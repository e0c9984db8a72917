//! Strategies on larger boards that drive a smaller script.

use super::builtins::{gadget_board, gadget_script};
use super::script::{Script, ScriptState};
use super::{Machine, StrategyError, StrategyTree, Violation};
use crate::constructions::{
    g4, gen_g4, gen_gamma, gen_gamma_prime, split_pendant, GammaIndex, SplitLayout,
    GAMMA_PRIME_VERTICES, GAMMA_VERTICES,
};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::position::Side;
use crate::solve::{full_mask, to_mask};

const SLOTS: usize = 15;
const BASE_MASK: u128 = (1u128 << GAMMA_VERTICES) - 1;

fn slot_triple(slot: usize) -> [usize; 3] {
    let (i, j) = (slot / 3 + 1, slot % 3 + 1);
    [
        GammaIndex::W { i }.vertex(),
        GammaIndex::X { i, j }.vertex(),
        GammaIndex::T { i, j }.vertex(),
    ]
}

fn gadget_start(slot: usize) -> usize {
    GAMMA_VERTICES + 10 * slot
}

/// Lift of a base-graph script to the gadget refinement (Breaker first).
///
/// Phase one plays the base script: a reply on a gadget vertex reads as the
/// slot's `t` while that is still free in the script's view; anything else
/// unusable reads as the lowest free `x` (ordered by second index first),
/// then the lowest free base vertex. Once Maker owns a whole triple
/// `w x t`, phase two plays the gadget script inside that slot.
#[derive(Clone, Debug)]
pub struct GammaPrimeLift {
    base: Script,
    gadget: Script,
    board: Hypergraph,
    gadget_sets: [VertexSet; SLOTS],
    everything: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaPrimeState {
    Base { script: ScriptState, breaker: u64 },
    Gadget { slot: u8, script: ScriptState },
}

impl GammaPrimeLift {
    pub fn board(&self) -> &Hypergraph {
        &self.board
    }

    pub fn base(&self) -> &Script {
        &self.base
    }

    fn fallback(&self, taken: u128) -> Option<usize> {
        for j in 1..=3 {
            for i in 1..=5 {
                let v = GammaIndex::X { i, j }.vertex();
                if taken >> v & 1 == 0 {
                    return Some(v);
                }
            }
        }
        let free = BASE_MASK & !taken;
        (free != 0).then(|| free.trailing_zeros() as usize)
    }

    fn slot_view(&self, slot: usize, s: &VertexSet) -> u128 {
        let [wv, xv, tv] = slot_triple(slot);
        let mut m = (s.shifted_down(gadget_start(slot)).low_mask() & 0x3FF) << 3;
        for (k, v) in [wv, xv, tv].into_iter().enumerate() {
            if s.contains(v) {
                m |= 1 << k;
            }
        }
        m
    }

    fn slot_vertex(&self, slot: usize, local: usize) -> usize {
        match local {
            0..=2 => slot_triple(slot)[local],
            _ => gadget_start(slot) + local - 3,
        }
    }
}

impl Machine for GammaPrimeLift {
    type State = GammaPrimeState;

    fn board(&self) -> &Hypergraph {
        &self.board
    }
    fn first_mover(&self) -> Side {
        Side::B
    }
    fn start(&self) -> GammaPrimeState {
        GammaPrimeState::Base {
            script: self.base.start(),
            breaker: 0,
        }
    }
    fn initial_claims(&self) -> VertexSet {
        VertexSet::new()
    }

    fn scope(&self, st: &GammaPrimeState) -> VertexSet {
        match *st {
            GammaPrimeState::Base { breaker, .. } => {
                let mut s = self
                    .everything
                    .difference(&VertexSet::from_low_mask(u128::from(breaker)));
                for slot in 0..SLOTS {
                    if breaker >> slot_triple(slot)[2] & 1 == 1 {
                        s = s.difference(&self.gadget_sets[slot]);
                    }
                }
                s
            }
            GammaPrimeState::Gadget { slot, .. } => {
                let mut s = self.gadget_sets[slot as usize];
                for v in slot_triple(slot as usize) {
                    s.insert(v);
                }
                s
            }
        }
    }

    fn decide(
        &self,
        st: &GammaPrimeState,
        a: &VertexSet,
        b: &VertexSet,
    ) -> Result<(usize, GammaPrimeState), Violation> {
        match *st {
            GammaPrimeState::Base { script, breaker } => {
                let mine = a.low_mask() & BASE_MASK;
                let (v, next) = self.base.decide_local(script, mine, u128::from(breaker))?;
                let after = mine | 1 << v;
                let done = (0..SLOTS).find(|&slot| {
                    let tr = slot_triple(slot);
                    tr.contains(&v) && tr.iter().all(|&u| after >> u & 1 == 1)
                });
                Ok(match done {
                    Some(slot) => (
                        v,
                        GammaPrimeState::Gadget {
                            slot: slot as u8,
                            script: self.gadget.start(),
                        },
                    ),
                    None => (
                        v,
                        GammaPrimeState::Base {
                            script: next,
                            breaker,
                        },
                    ),
                })
            }
            GammaPrimeState::Gadget { slot, script } => {
                let s = slot as usize;
                let (local, next) =
                    self.gadget
                        .decide_local(script, self.slot_view(s, a), self.slot_view(s, b))?;
                Ok((
                    self.slot_vertex(s, local),
                    GammaPrimeState::Gadget { slot, script: next },
                ))
            }
        }
    }

    fn observe(
        &self,
        st: &GammaPrimeState,
        a: &VertexSet,
        b: &VertexSet,
        reply: Option<usize>,
    ) -> Result<GammaPrimeState, Violation> {
        match *st {
            GammaPrimeState::Base { script, breaker } => {
                let mine = a.low_mask() & BASE_MASK;
                let taken = mine | u128::from(breaker);
                let read = match reply {
                    Some(r) if r < GAMMA_VERTICES => Some(r),
                    Some(r) => {
                        let tv = slot_triple((r - GAMMA_VERTICES) / 10)[2];
                        if taken >> tv & 1 == 0 {
                            Some(tv)
                        } else {
                            self.fallback(taken)
                        }
                    }
                    None => self.fallback(taken),
                };
                let next = self
                    .base
                    .observe_local(script, mine, u128::from(breaker), read)?;
                let breaker = breaker | read.map_or(0, |v| 1u64 << v);
                Ok(GammaPrimeState::Base {
                    script: next,
                    breaker,
                })
            }
            GammaPrimeState::Gadget { slot, script } => {
                let s = slot as usize;
                let local = reply.map(|r| {
                    let tr = slot_triple(s);
                    match tr.iter().position(|&u| u == r) {
                        Some(k) => k,
                        None => r - gadget_start(s) + 3,
                    }
                });
                let next = self.gadget.observe_local(
                    script,
                    self.slot_view(s, a),
                    self.slot_view(s, b),
                    local,
                )?;
                Ok(GammaPrimeState::Gadget { slot, script: next })
            }
        }
    }
}

/// Lifts a Breaker-first script on the 35-vertex base graph to its
/// 185-vertex gadget refinement.
pub fn lift_gamma_prime(s: &StrategyTree) -> Result<StrategyTree, StrategyError> {
    lift_gamma_prime_with_gadget(s, gadget_script())
}

/// [`lift_gamma_prime`] with a replacement gadget script (13-vertex gadget
/// board, Maker holding `w x t`, Breaker first).
pub fn lift_gamma_prime_with_gadget(
    s: &StrategyTree,
    gadget: Script,
) -> Result<StrategyTree, StrategyError> {
    if gadget.board().vertex_count() != 13 || !gadget.board().same_edge_set(&gadget_board()) {
        return Err(StrategyError::WrongShape(
            "gadget script is not on the gadget board".into(),
        ));
    }
    let base = s
        .as_script()
        .ok_or_else(|| StrategyError::WrongShape("expected a base-graph script".into()))?;
    if !(base.board().vertex_count() == GAMMA_VERTICES && base.board().same_edge_set(&gen_gamma()))
    {
        return Err(StrategyError::WrongShape(
            "script is not on the base graph".into(),
        ));
    }
    if base.first_mover() != Side::B {
        return Err(StrategyError::WrongShape(
            "base script must have Breaker first".into(),
        ));
    }
    let board = gen_gamma_prime();
    let gadget_sets = std::array::from_fn(|slot| {
        VertexSet::from_slice(&(gadget_start(slot)..gadget_start(slot) + 10).collect::<Vec<_>>())
    });
    Ok(StrategyTree::GammaPrime(Box::new(GammaPrimeLift {
        base: base.clone(),
        gadget,
        everything: board.all_vertices(),
        board,
        gadget_sets,
    })))
}

/// Lift to the three-copy graph with Maker first.
///
/// Maker claims `v_1, v_2, ...` while Breaker keeps answering inside the
/// matching copy (or its `s_i`); `v_4` then completes the apex edge. On the
/// first other reply Maker claims `s_i` and plays the inner lift in copy
/// `i`, where Maker already owns the extensions of all five `e` edges.
#[derive(Clone, Debug)]
pub struct G4Lift {
    inner: GammaPrimeLift,
    board: Hypergraph,
    copies: [VertexSet; 3],
    stage_scopes: [VertexSet; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum G4State {
    Claim(u8),
    Await(u8),
    Enter(u8),
    Copy(u8, GammaPrimeState),
}

impl G4Lift {
    pub fn board(&self) -> &Hypergraph {
        &self.board
    }

    fn offset(copy: u8) -> usize {
        (copy as usize - 1) * GAMMA_PRIME_VERTICES
    }

    fn local(&self, copy: u8, s: &VertexSet) -> VertexSet {
        s.intersection(&self.copies[copy as usize - 1])
            .shifted_down(Self::offset(copy))
    }

    fn copy_extras(copy: u8) -> VertexSet {
        VertexSet::from_slice(&[g4::s(copy as usize), g4::v(copy as usize)])
    }
}

impl Machine for G4Lift {
    type State = G4State;

    fn board(&self) -> &Hypergraph {
        &self.board
    }
    fn first_mover(&self) -> Side {
        Side::A
    }
    fn start(&self) -> G4State {
        G4State::Claim(1)
    }
    fn initial_claims(&self) -> VertexSet {
        VertexSet::new()
    }

    fn scope(&self, st: &G4State) -> VertexSet {
        match *st {
            G4State::Claim(k) | G4State::Await(k) => self.stage_scopes[k as usize - 1],
            G4State::Enter(i) => self.copies[i as usize - 1].union(&Self::copy_extras(i)),
            G4State::Copy(i, inner) => self
                .inner
                .scope(&inner)
                .shifted_up(Self::offset(i))
                .union(&Self::copy_extras(i)),
        }
    }

    fn decide(
        &self,
        st: &G4State,
        a: &VertexSet,
        b: &VertexSet,
    ) -> Result<(usize, G4State), Violation> {
        match *st {
            G4State::Claim(k) => Ok((g4::v(k as usize), G4State::Await(k))),
            G4State::Enter(i) => Ok((g4::s(i as usize), G4State::Copy(i, self.inner.start()))),
            G4State::Copy(i, inner) => {
                let (v, next) = self
                    .inner
                    .decide(&inner, &self.local(i, a), &self.local(i, b))?;
                Ok((v + Self::offset(i), G4State::Copy(i, next)))
            }
            G4State::Await(_) => Err(Violation::Malformed("Maker to move while awaiting".into())),
        }
    }

    fn observe(
        &self,
        st: &G4State,
        a: &VertexSet,
        b: &VertexSet,
        reply: Option<usize>,
    ) -> Result<G4State, Violation> {
        match *st {
            G4State::Await(i) => {
                let here = reply.is_some_and(|r| {
                    self.copies[i as usize - 1].contains(r) || r == g4::s(i as usize)
                });
                Ok(if here && i < 4 {
                    G4State::Claim(i + 1)
                } else {
                    G4State::Enter(i)
                })
            }
            G4State::Copy(i, inner) => {
                let local = reply
                    .filter(|&r| self.copies[i as usize - 1].contains(r))
                    .map(|r| r - Self::offset(i));
                let next =
                    self.inner
                        .observe(&inner, &self.local(i, a), &self.local(i, b), local)?;
                Ok(G4State::Copy(i, next))
            }
            G4State::Claim(_) | G4State::Enter(_) => Err(Violation::Malformed(
                "Breaker to move after Maker's turn ended".into(),
            )),
        }
    }
}

pub fn lift_g4(s: &StrategyTree) -> Result<StrategyTree, StrategyError> {
    let inner = match s {
        StrategyTree::GammaPrime(x) => (**x).clone(),
        _ => {
            return Err(StrategyError::WrongShape(
                "expected the gadget-graph lift".into(),
            ))
        }
    };
    let board = gen_g4();
    let copies: [VertexSet; 3] = std::array::from_fn(|c| {
        VertexSet::from_slice(
            &(0..GAMMA_PRIME_VERTICES)
                .map(|l| g4::copy_vertex(c + 1, l))
                .collect::<Vec<_>>(),
        )
    });
    let all = board.all_vertices();
    let stage_scopes = std::array::from_fn(|k| {
        let mut s = all;
        for (c, copy) in copies.iter().enumerate().take(k) {
            s = s.difference(copy);
            s.remove(g4::s(c + 1));
        }
        s
    });
    Ok(StrategyTree::G4(Box::new(G4Lift {
        inner,
        board,
        copies,
        stage_scopes,
    })))
}

/// Lift of a script on `h` to `split_pendant(h)`.
///
/// A claim on a fresh vertex is answered on its partner; otherwise the base
/// script is followed. Once a base edge is Maker's, one of its two fresh
/// vertices is still free and completes a split edge.
#[derive(Clone, Debug)]
pub struct SplitLift {
    base: Script,
    layout: SplitLayout,
    board: Hypergraph,
    base_mask: u128,
    base_edges: Vec<u128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitState {
    base: ScriptState,
    pending: Option<u32>,
}

impl SplitLift {
    pub fn board(&self) -> &Hypergraph {
        &self.board
    }
    pub fn first_mover(&self) -> Side {
        self.base.first_mover()
    }

    fn finished_edge(&self, mine: u128) -> Option<usize> {
        self.base_edges.iter().position(|&e| e & !mine == 0)
    }
}

impl Machine for SplitLift {
    type State = SplitState;

    fn board(&self) -> &Hypergraph {
        &self.board
    }
    fn first_mover(&self) -> Side {
        self.base.first_mover()
    }
    fn start(&self) -> SplitState {
        SplitState {
            base: self.base.start(),
            pending: None,
        }
    }
    fn initial_claims(&self) -> VertexSet {
        self.base.initial_set()
    }
    fn scope(&self, _: &SplitState) -> VertexSet {
        self.board.all_vertices()
    }

    /// A pendant pair split between the players is symmetric.
    fn canonicalize(&self, _: &SplitState, a: &mut VertexSet, b: &mut VertexSet) {
        for &(xe, ye) in &self.layout.pendants {
            if b.contains(xe) && a.contains(ye) {
                a.remove(ye);
                a.insert(xe);
                b.remove(xe);
                b.insert(ye);
            }
        }
    }

    fn decide(
        &self,
        st: &SplitState,
        a: &VertexSet,
        b: &VertexSet,
    ) -> Result<(usize, SplitState), Violation> {
        let mine = a.low_mask() & self.base_mask;
        if let Some(e) = self.finished_edge(mine) {
            let (xe, ye) = self.layout.pendants[e];
            let v = if a.contains(xe) || b.contains(xe) {
                ye
            } else {
                xe
            };
            return Ok((v, *st));
        }
        if let Some(p) = st.pending {
            return Ok((
                p as usize,
                SplitState {
                    pending: None,
                    ..*st
                },
            ));
        }
        let theirs = b.low_mask() & self.base_mask;
        let (v, next) = self.base.decide_local(st.base, mine, theirs)?;
        Ok((
            v,
            SplitState {
                base: next,
                pending: None,
            },
        ))
    }

    fn observe(
        &self,
        st: &SplitState,
        a: &VertexSet,
        b: &VertexSet,
        reply: Option<usize>,
    ) -> Result<SplitState, Violation> {
        let mine = a.low_mask() & self.base_mask;
        if self.finished_edge(mine).is_some() {
            return Ok(*st);
        }
        match reply.and_then(|r| self.layout.partner(r)) {
            Some((_, p)) => {
                let pending = (!a.contains(p) && !b.contains(p)).then_some(p as u32);
                Ok(SplitState { pending, ..*st })
            }
            None => {
                let theirs = b.low_mask() & self.base_mask;
                let next = self.base.observe_local(st.base, mine, theirs, reply)?;
                Ok(SplitState {
                    base: next,
                    pending: None,
                })
            }
        }
    }
}

pub fn lift_split(s: &StrategyTree, h: &Hypergraph) -> Result<StrategyTree, StrategyError> {
    let base = s
        .as_script()
        .ok_or_else(|| StrategyError::WrongShape("expected a script".into()))?;
    if !(base.board().vertex_count() == h.vertex_count() && base.board().same_edge_set(h)) {
        return Err(StrategyError::WrongShape(
            "script is for a different board".into(),
        ));
    }
    Ok(StrategyTree::Split(SplitLift {
        base: base.clone(),
        layout: SplitLayout::of(h),
        board: split_pendant(h),
        base_mask: full_mask(h.vertex_count()),
        base_edges: h.edge_sets().iter().map(to_mask).collect(),
    }))
}
