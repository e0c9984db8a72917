//! Plain minimax, written without any of the solvers' pruning, used as the
//! reference answer for small boards.

#![allow(dead_code)]

use std::collections::HashMap;

use hypergame::hypergraph::Hypergraph;
use hypergame::position::Side;

fn masks(h: &Hypergraph) -> Vec<u32> {
    h.edges()
        .iter()
        .map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect()
}

fn bits(vs: &[usize]) -> u32 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

/// Does Maker win with `first` moving first? Boards of at most 32 vertices.
pub fn mb_oracle(h: &Hypergraph, first: Side) -> bool {
    mb_oracle_from(h, &[], &[], first == Side::A)
}

/// Maker-Breaker value with Maker holding `a` and Breaker `b`.
pub fn mb_oracle_from(h: &Hypergraph, a: &[usize], b: &[usize], maker_to_move: bool) -> bool {
    struct Game {
        edges: Vec<u32>,
        all: u32,
        memo: HashMap<(u32, u32), bool>,
    }
    impl Game {
        fn maker_wins(&mut self, a: u32, b: u32, maker_to_move: bool) -> bool {
            if self.edges.iter().any(|&e| e & !a == 0) {
                return true;
            }
            let free = self.all & !(a | b);
            if free == 0 {
                return false;
            }
            if let Some(&v) = self.memo.get(&(a, b)) {
                return v;
            }
            let moves = (0..32).filter(|&v| free >> v & 1 == 1);
            let v = if maker_to_move {
                moves
                    .collect::<Vec<_>>()
                    .into_iter()
                    .any(|v| self.maker_wins(a | 1 << v, b, false))
            } else {
                moves
                    .collect::<Vec<_>>()
                    .into_iter()
                    .all(|v| self.maker_wins(a, b | 1 << v, true))
            };
            self.memo.insert((a, b), v);
            v
        }
    }
    let n = h.vertex_count();
    assert!(n <= 32);
    let mut g = Game {
        edges: masks(h),
        all: if n == 32 { !0 } else { (1 << n) - 1 },
        memo: HashMap::new(),
    };
    g.maker_wins(bits(a), bits(b), maker_to_move)
}

/// Does Chooser win? Picker offers a pair, Chooser keeps one, a last odd
/// vertex goes to Chooser.
pub fn cp_oracle(h: &Hypergraph) -> bool {
    cp_oracle_from(h, &[], &[])
}

/// Chooser-Picker value with Chooser holding `a` and Picker `b`, between offers.
pub fn cp_oracle_from(h: &Hypergraph, a: &[usize], b: &[usize]) -> bool {
    struct Game {
        edges: Vec<u32>,
        all: u32,
        memo: HashMap<(u32, u32), bool>,
    }
    impl Game {
        fn chooser_wins(&mut self, a: u32, b: u32) -> bool {
            if self.edges.iter().any(|&e| e & !a == 0) {
                return true;
            }
            let free = self.all & !(a | b);
            match free.count_ones() {
                0 => return false,
                1 => return self.edges.iter().any(|&e| e & !(a | free) == 0),
                _ => {}
            }
            if let Some(&v) = self.memo.get(&(a, b)) {
                return v;
            }
            let vs: Vec<u32> = (0..32).filter(|&v| free >> v & 1 == 1).collect();
            let mut win = true;
            'offers: for (i, &x) in vs.iter().enumerate() {
                for &y in &vs[i + 1..] {
                    let keep_x = self.chooser_wins(a | 1 << x, b | 1 << y);
                    if !keep_x && !self.chooser_wins(a | 1 << y, b | 1 << x) {
                        win = false;
                        break 'offers;
                    }
                }
            }
            self.memo.insert((a, b), win);
            win
        }
    }
    let n = h.vertex_count();
    assert!(n <= 32);
    let mut g = Game {
        edges: masks(h),
        all: if n == 32 { !0 } else { (1 << n) - 1 },
        memo: HashMap::new(),
    };
    g.chooser_wins(bits(a), bits(b))
}
