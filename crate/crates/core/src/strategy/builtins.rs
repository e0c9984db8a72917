//! Hand-written winning strategies for the base graph, the gadget and the
//! 15-vertex degree-2 graph.

use rustc_hash::FxHashMap;

use super::script::{DefaultRule, Node, NodeId, ReplyClass, ReplyMap, Script, ScriptBuilder};
use super::StrategyTree;
use crate::constructions::{
    gamma_e_edge, gamma_reflection, gamma_rotation, gen_g3, gen_gamma, t, w, x,
};
use crate::hypergraph::Hypergraph;
use crate::position::Side;

/// Bounded-search budget after a forced line is left.
const LINE_BUDGET: u8 = 2;

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&v| p[v]).collect()
}

fn power(p: &[usize], k: isize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..p.len()).collect();
    for _ in 0..k.rem_euclid(5) {
        out = compose(p, &out);
    }
    out
}

/// Copies the subtree at `id` from `src` into `dst`, relabelled by `perm`.
/// Nodes already copied under this permutation are reused.
fn copy_relabelled(
    src: &[Node],
    id: NodeId,
    perm: &[usize],
    edge_map: &[usize],
    dst: &mut ScriptBuilder,
    cache: &mut FxHashMap<NodeId, NodeId>,
) -> NodeId {
    if let Some(&done) = cache.get(&id) {
        return done;
    }
    let mut node = super::relabel_node(&src[id], perm, edge_map);
    match &mut node {
        Node::Claim { next, .. } => *next = copy_relabelled(src, *next, perm, edge_map, dst, cache),
        Node::Respond { branches, default } => {
            for (_, next) in branches.iter_mut() {
                *next = copy_relabelled(src, *next, perm, edge_map, dst, cache);
            }
            if let Some(DefaultRule::Subtree { node }) = default {
                *node = copy_relabelled(src, *node, perm, edge_map, dst, cache);
            }
        }
        Node::WinNow { .. } => {}
    }
    let new = dst.push(node);
    cache.insert(id, new);
    new
}

/// The three canonical openings, for Breaker's first move `w_1`, `x_11` and
/// `x_32`: Maker takes `w_2`, then follows one of four forced lines chosen
/// by where Breaker's second move lands.
fn gamma_cases(b: &mut ScriptBuilder) -> [NodeId; 3] {
    let k = LINE_BUDGET;
    let line_a = b.forced_line(
        &[
            (x(2, 1), t(2, 1)),
            (x(2, 2), t(2, 2)),
            (x(5, 1), x(3, 3)),
            (w(5), t(5, 1)),
            (x(5, 3), t(5, 3)),
        ],
        x(4, 2),
        gamma_e_edge(2),
        k,
    );
    let line_b = b.forced_line(
        &[
            (x(2, 2), t(2, 2)),
            (x(2, 3), t(2, 3)),
            (x(4, 1), x(1, 2)),
            (w(4), t(4, 1)),
            (x(4, 3), t(4, 3)),
            (x(3, 2), x(1, 1)),
            (w(3), t(3, 2)),
            (x(3, 3), t(3, 3)),
        ],
        x(5, 1),
        gamma_e_edge(5),
        k,
    );
    let line_c = b.forced_line(
        &[
            (x(2, 1), t(2, 1)),
            (x(2, 3), t(2, 3)),
            (x(4, 1), x(1, 2)),
            (w(4), t(4, 1)),
            (x(4, 2), t(4, 2)),
        ],
        x(5, 3),
        gamma_e_edge(2),
        k,
    );
    let line_d = b.forced_line(
        &[
            (x(2, 2), t(2, 2)),
            (x(2, 3), t(2, 3)),
            (x(1, 2), x(4, 1)),
            (w(1), t(1, 2)),
            (x(1, 3), t(1, 3)),
            (x(5, 2), x(3, 1)),
            (w(5), t(5, 2)),
            (x(5, 1), t(5, 1)),
        ],
        x(3, 3),
        gamma_e_edge(5),
        k,
    );
    let near_e4 = ReplyClass::Union {
        parts: vec![
            ReplyClass::EdgeOf {
                edge: gamma_e_edge(4),
            },
            ReplyClass::Vertices {
                vertices: vec![w(4)],
            },
        ],
    };
    let e2 = ReplyClass::EdgeOf {
        edge: gamma_e_edge(2),
    };
    let r1 = b.respond(
        vec![
            (near_e4.clone(), line_a),
            (e2.clone(), line_b),
            (ReplyClass::AnyOther, line_c),
        ],
        None,
    );
    let r2 = b.respond(
        vec![
            (near_e4, line_a),
            (e2, line_d),
            (ReplyClass::AnyOther, line_c),
        ],
        None,
    );
    let case1 = b.claim(w(2), r1);
    let case2 = b.claim(w(2), r2);
    [case1, case2, case2]
}

/// Maker's winning strategy on the base graph with Breaker moving first.
///
/// Breaker's first move is mapped to one of three canonical cases by a
/// rotation (and, for `x_i3`, a reflection). A first move on some `t_ij` is
/// read as `w_i`.
pub fn build_gamma_strategy() -> StrategyTree {
    let board = gen_gamma();
    let mut canon = ScriptBuilder::new();
    let cases = gamma_cases(&mut canon);
    let rho = gamma_rotation();
    let sigma = gamma_reflection();
    let edge_map = |perm: &[usize]| -> Vec<usize> {
        board
            .edges()
            .iter()
            .map(|e| {
                let img: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
                board.find_edge(&img).expect("automorphism")
            })
            .collect()
    };

    let mut out = ScriptBuilder::new();
    let mut branches = Vec::new();
    let mut caches: FxHashMap<Vec<usize>, FxHashMap<NodeId, NodeId>> = FxHashMap::default();
    let mut first_moves: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for i in 1..=5isize {
        first_moves.push((w(i as usize), 0, power(&rho, i - 1)));
    }
    for i in 1..=5isize {
        for j in 1..=3 {
            let (case, perm) = match j {
                1 => (1, power(&rho, i - 1)),
                2 => (2, power(&rho, i - 3)),
                _ => (2, compose(&power(&rho, i - 2), &sigma)),
            };
            first_moves.push((x(i as usize, j), case, perm));
        }
    }
    for (first, case, perm) in first_moves {
        let map = edge_map(&perm);
        let cache = caches.entry(perm.clone()).or_default();
        let node = copy_relabelled(&canon.nodes, cases[case], &perm, &map, &mut out, cache);
        branches.push((
            ReplyClass::Vertices {
                vertices: vec![first],
            },
            node,
        ));
    }
    let root = out.respond(branches, None);
    let script = Script::with_options(
        board,
        out.nodes,
        root,
        Side::B,
        Vec::new(),
        ReplyMap::GammaPreamble,
    )
    .expect("built-in script is well formed");
    StrategyTree::Script(script)
}

/// The gadget on its own: `w x t y1..y6 z1..z4` at indices 0..=12.
pub fn gadget_board() -> Hypergraph {
    let edges = vec![
        vec![0, 2, 3, 4],
        vec![1, 2, 5, 6],
        vec![1, 2, 7, 8],
        vec![3, 5, 7, 9],
        vec![3, 5, 7, 10],
        vec![4, 6, 8, 11],
        vec![4, 6, 8, 12],
    ];
    let mut h = Hypergraph::new(13, edges).expect("gadget edges are valid");
    for (v, name) in ["w", "x", "t"].iter().enumerate() {
        h.set_name(v, *name);
    }
    for k in 1..=6 {
        h.set_name(2 + k, format!("y{k}"));
    }
    for k in 1..=4 {
        h.set_name(8 + k, format!("z{k}"));
    }
    h
}

/// Maker, holding `w x t`, wins the gadget with Breaker to move.
///
/// Every line is three threats: two forcing Breaker onto the `y` pairs next
/// to `t`, then a `y` that completes a triple with two free `z` endings.
pub fn gadget_script() -> Script {
    let y = |k: usize| 2 + k;
    let z = |k: usize| 8 + k;
    let mut b = ScriptBuilder::new();
    let line = |b: &mut ScriptBuilder, steps: [(usize, usize); 2], last: usize| {
        let end = b.respond(
            Vec::new(),
            Some(DefaultRule::BoundedWin {
                budget: LINE_BUDGET,
            }),
        );
        let mut cur = b.claim(y(last), end);
        for &(c, block) in steps.iter().rev() {
            let r = b.respond(
                vec![(
                    ReplyClass::Vertices {
                        vertices: vec![y(block)],
                    },
                    cur,
                )],
                Some(DefaultRule::BoundedWin {
                    budget: LINE_BUDGET,
                }),
            );
            cur = b.claim(y(c), r);
        }
        cur
    };
    let on_y1 = line(&mut b, [(4, 3), (6, 5)], 2);
    let on_y2 = line(&mut b, [(3, 4), (5, 6)], 1);
    let on_y3 = line(&mut b, [(2, 1), (6, 5)], 4);
    let on_y4 = line(&mut b, [(1, 2), (5, 6)], 3);
    let on_y5 = line(&mut b, [(2, 1), (4, 3)], 6);
    let on_y6 = line(&mut b, [(1, 2), (3, 4)], 5);
    let vs = |v: Vec<usize>| ReplyClass::Vertices { vertices: v };
    let root = b.respond(
        vec![
            (vs(vec![y(1), z(1), z(2)]), on_y1),
            (vs(vec![y(2), z(3), z(4)]), on_y2),
            (vs(vec![y(3)]), on_y3),
            (vs(vec![y(4)]), on_y4),
            (vs(vec![y(5)]), on_y5),
            (vs(vec![y(6)]), on_y6),
            (ReplyClass::AnyOther, on_y1),
        ],
        None,
    );
    Script::with_options(
        gadget_board(),
        b.nodes,
        root,
        Side::B,
        vec![0, 1, 2],
        ReplyMap::Identity,
    )
    .expect("built-in script is well formed")
}

/// Maker moving first on the 15-vertex degree-2 graph: take `v1`, then
/// the centre on the side Breaker did not touch, then search three moves deep.
pub fn g3_script() -> Script {
    let v = |k: usize| k - 1;
    let mut b = ScriptBuilder::new();
    let finish = b.respond(Vec::new(), Some(DefaultRule::BoundedWin { budget: 3 }));
    let left = b.claim(v(2), finish);
    let right = b.claim(v(3), finish);
    let right_side: Vec<usize> = [3, 10, 11, 12, 13, 14, 15].into_iter().map(v).collect();
    let r = b.respond(
        vec![
            (
                ReplyClass::SubBoard {
                    vertices: right_side,
                },
                left,
            ),
            (ReplyClass::AnyOther, right),
        ],
        None,
    );
    let root = b.claim(v(1), r);
    Script::new(gen_g3(), b.nodes, root, Side::A).expect("built-in script is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_strategy_answers_every_first_move() {
        let s = build_gamma_strategy();
        let s = s.as_script().unwrap();
        assert_eq!(s.first_mover(), Side::B);
        assert_eq!(s.reply_map(), ReplyMap::GammaPreamble);
        match &s.nodes()[s.root()] {
            Node::Respond { branches, default } => {
                assert_eq!(branches.len(), 20);
                assert!(default.is_none());
            }
            other => panic!("root is {other:?}"),
        }
    }

    #[test]
    fn gadget_board_shape() {
        let g = gadget_board();
        assert_eq!((g.vertex_count(), g.edge_count()), (13, 7));
        assert!(g.is_uniform(4));
        assert_eq!(gadget_script().initial(), &[0, 1, 2]);
    }
}
