//! Single-node corruptions of the built-in strategies; each must be rejected.

use super::builtins::{build_gamma_strategy, g3_script, gadget_board, gadget_script};
use super::script::{DefaultRule, Node, NodeId};
use super::StrategyTree;
use crate::constructions::{gen_g3, gen_gamma, w, x};
use crate::hypergraph::Hypergraph;
use crate::position::Side;

pub struct Mutant {
    pub name: String,
    pub board: Hypergraph,
    pub first_mover: Side,
    pub strategy: StrategyTree,
}

/// The `n`-th claim (from 0) along the first-branch line starting at `from`.
fn nth_claim(nodes: &[Node], from: NodeId, n: usize) -> NodeId {
    let mut cur = from;
    let mut seen = 0;
    loop {
        match &nodes[cur] {
            Node::Claim { next, .. } => {
                if seen == n {
                    return cur;
                }
                seen += 1;
                cur = *next;
            }
            Node::Respond { branches, .. } => cur = branches[0].1,
            Node::WinNow { .. } => panic!("line has fewer than {} claims", n + 1),
        }
    }
}

fn branch(nodes: &[Node], respond: NodeId, k: usize) -> NodeId {
    match &nodes[respond] {
        Node::Respond { branches, .. } => branches[k].1,
        _ => panic!("not a respond node"),
    }
}

fn next_of(nodes: &[Node], claim: NodeId) -> NodeId {
    match nodes[claim] {
        Node::Claim { next, .. } => next,
        _ => panic!("not a claim node"),
    }
}

enum Edit {
    Claim(usize),
    DropBranch(usize),
    Budget(u8),
}

fn apply(nodes: &mut [Node], id: NodeId, edit: &Edit) {
    match (&mut nodes[id], edit) {
        (Node::Claim { vertex, .. }, Edit::Claim(v)) => *vertex = *v,
        (Node::Respond { branches, .. }, Edit::DropBranch(k)) => {
            branches.remove(*k);
        }
        (Node::Respond { default, .. }, Edit::Budget(b)) => {
            *default = Some(DefaultRule::BoundedWin { budget: *b })
        }
        _ => panic!("edit does not fit the node"),
    }
}

/// Twenty single-node mutations spread over the base-graph script, the
/// gadget script and the 15-vertex script.
pub fn mutants() -> Vec<Mutant> {
    let mut out = Vec::new();

    let gamma = build_gamma_strategy();
    let gs = gamma.as_script().expect("script").clone();
    let nodes = gs.nodes().to_vec();
    let root = gs.root();
    // Root branches: w_1..w_5, then x_11, x_12, ..., x_53.
    let opening = |f: usize| branch(&nodes, root, f);
    let reply_node = |f: usize| next_of(&nodes, opening(f));
    let sub = |f: usize, k: usize| branch(&nodes, reply_node(f), k);
    let xi = |i: usize, j: usize| 5 + 3 * (i - 1) + (j - 1);
    let gamma_edits: Vec<(&str, NodeId, Edit)> = vec![
        (
            "base: after w1 / reply near e4, second claim x22 -> x23",
            nth_claim(&nodes, sub(0, 0), 1),
            Edit::Claim(x(2, 3)),
        ),
        (
            "base: after w1 / reply in e2, third claim x41 -> x42",
            nth_claim(&nodes, sub(0, 1), 2),
            Edit::Claim(x(4, 2)),
        ),
        (
            "base: after w1 / other reply, last claim x53 -> x52",
            nth_claim(&nodes, sub(0, 2), 5),
            Edit::Claim(x(5, 2)),
        ),
        (
            "base: after w1, branch for replies near e4 dropped",
            reply_node(0),
            Edit::DropBranch(0),
        ),
        (
            "base: after w1, branch for replies in e2 dropped",
            reply_node(0),
            Edit::DropBranch(1),
        ),
        (
            "base: after x11 or x32 / reply in e2, third claim x12 -> x13",
            nth_claim(&nodes, sub(xi(1, 1), 1), 2),
            Edit::Claim(x(1, 3)),
        ),
        (
            "base: after x11 or x32, branch for replies in e2 dropped",
            reply_node(xi(1, 1)),
            Edit::DropBranch(1),
        ),
        (
            "base: after x11 or x32, opening claim w2 -> w3",
            opening(xi(3, 2)),
            Edit::Claim(w(3)),
        ),
        (
            "base: after w1, opening claim w2 -> w1",
            opening(0),
            Edit::Claim(w(1)),
        ),
        (
            "base: after w1 / reply near e4, fallback after x51 weakened to 0 moves",
            next_of(&nodes, nth_claim(&nodes, sub(0, 0), 2)),
            Edit::Budget(0),
        ),
        (
            "base: root branch for first move x23 dropped",
            root,
            Edit::DropBranch(xi(2, 3)),
        ),
        (
            "base: after w3 / reply in e4, first claim moved to x43",
            nth_claim(&nodes, sub(2, 1), 0),
            Edit::Claim(x(4, 3)),
        ),
    ];
    for (name, id, edit) in gamma_edits {
        let mut ns = nodes.clone();
        apply(&mut ns, id, &edit);
        let s = gs.rebuilt(ns, root).expect("mutant is well formed");
        out.push(Mutant {
            name: name.into(),
            board: gen_gamma(),
            first_mover: Side::B,
            strategy: StrategyTree::Script(s),
        });
    }

    let gadget = gadget_script();
    let gn = gadget.nodes().to_vec();
    let groot = gadget.root();
    let y = |k: usize| 2 + k;
    let z = |k: usize| 8 + k;
    let gadget_edits: Vec<(&str, NodeId, Edit)> = vec![
        (
            "gadget: after y1, first claim y4 -> y5",
            nth_claim(&gn, branch(&gn, groot, 0), 0),
            Edit::Claim(y(5)),
        ),
        ("gadget: branch for y3 dropped", groot, Edit::DropBranch(2)),
        (
            "gadget: after y1, final fallback weakened to 0 moves",
            next_of(&gn, nth_claim(&gn, branch(&gn, groot, 0), 2)),
            Edit::Budget(0),
        ),
        (
            "gadget: after y6, last claim y5 -> z1",
            nth_claim(&gn, branch(&gn, groot, 5), 2),
            Edit::Claim(z(1)),
        ),
    ];
    for (name, id, edit) in gadget_edits {
        let mut ns = gn.clone();
        apply(&mut ns, id, &edit);
        let s = gadget.rebuilt(ns, groot).expect("mutant is well formed");
        out.push(Mutant {
            name: name.into(),
            board: gadget_board(),
            first_mover: Side::B,
            strategy: StrategyTree::Script(s),
        });
    }

    let g3 = g3_script();
    let tn = g3.nodes().to_vec();
    let troot = g3.root();
    let v = |k: usize| k - 1;
    let after_v1 = next_of(&tn, troot);
    let g3_edits: Vec<(&str, NodeId, Edit)> = vec![
        (
            "g3: final search budget 3 -> 2",
            next_of(&tn, branch(&tn, after_v1, 0)),
            Edit::Budget(2),
        ),
        ("g3: opening claim v1 -> v4", troot, Edit::Claim(v(4))),
        (
            "g3: reply on the v3 side answered with v4 instead of v2",
            branch(&tn, after_v1, 0),
            Edit::Claim(v(4)),
        ),
        (
            "g3: other replies answered with v2 instead of v3",
            branch(&tn, after_v1, 1),
            Edit::Claim(v(2)),
        ),
    ];
    for (name, id, edit) in g3_edits {
        let mut ns = tn.clone();
        apply(&mut ns, id, &edit);
        let s = g3.rebuilt(ns, troot).expect("mutant is well formed");
        out.push(Mutant {
            name: name.into(),
            board: gen_g3(),
            first_mover: Side::A,
            strategy: StrategyTree::Script(s),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::{verify_maker_strategy, VerifyOptions};

    #[test]
    fn twenty_distinct_mutants_all_rejected() {
        let ms = mutants();
        assert_eq!(ms.len(), 20);
        let mut names: Vec<&str> = ms.iter().map(|m| m.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 20);
        for m in &ms {
            let r = verify_maker_strategy(
                &m.board,
                &m.strategy,
                m.first_mover,
                &VerifyOptions::default(),
            );
            assert!(!r.verified && !r.node_limit_hit, "{}", m.name);
            assert!(r.counterexample.is_some(), "{}", m.name);
        }
    }
}
