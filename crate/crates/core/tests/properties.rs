mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::{cp_oracle, cp_oracle_from, mb_oracle, mb_oracle_from};
use hypergame::cp::{solve_cp, solve_cp_from, CpOptions};
use hypergame::format::{load_hypergraph, save_hypergraph};
use hypergame::hypergraph::Hypergraph;
use hypergame::mb::{solve_mb, solve_mb_from, MbOptions};
use hypergame::position::{Position, Side};

fn board(max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(1u32..(1 << n), 1..=max_m).prop_map(move |ms| {
            let mut ms = ms;
            ms.sort_unstable();
            ms.dedup();
            let edges = ms
                .into_iter()
                .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
                .collect();
            Hypergraph::new(n, edges).unwrap()
        })
    })
}

/// A board plus a claim order and the number of those claims to play.
fn board_and_line() -> impl Strategy<Value = (Hypergraph, Vec<usize>, usize)> {
    board(9, 6).prop_flat_map(|h| {
        let n = h.vertex_count();
        (
            Just(h),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            0..=n,
        )
    })
}

fn mb_maker(h: &Hypergraph, first: Side) -> bool {
    solve_mb(h, first, &MbOptions::default()).unwrap().winner == Side::A
}

fn cp_chooser(h: &Hypergraph) -> bool {
    solve_cp(h, &CpOptions::default()).unwrap().winner == Side::A
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn file_round_trip(h in board(12, 8), named in proptest::collection::vec(any::<bool>(), 12)) {
        let names: BTreeMap<usize, String> = (0..h.vertex_count())
            .filter(|&v| named[v])
            .map(|v| (v, format!("v{v}")))
            .collect();
        let h = h.with_names(names).unwrap();
        let back = load_hypergraph(&save_hypergraph(&h)).unwrap();
        prop_assert_eq!(back.vertex_count(), h.vertex_count());
        prop_assert_eq!(back.edges(), h.edges());
        prop_assert_eq!(back.names(), h.names());
    }

    #[test]
    fn degree_sum_is_total_edge_size(h in board(12, 8)) {
        let sizes: usize = h.edges().iter().map(Vec::len).sum();
        prop_assert_eq!(h.degrees().iter().sum::<usize>(), sizes);
        prop_assert_eq!(h.max_degree(), h.degrees().into_iter().max().unwrap_or(0));
    }

    #[test]
    fn claims_leave_the_old_position_alone((h, order, k) in board_and_line()) {
        let mut p = Position::new(&h, Side::A);
        for &v in &order[..k] {
            let side = p.mb_to_move();
            let before = p;
            let q = p.apply_claim(side, v).unwrap();
            prop_assert_eq!(&p, &before);
            prop_assert!(q.claimed(side).contains(v));
            prop_assert_eq!(q.unclaimed_count() + 1, p.unclaimed_count());
            prop_assert!(q.apply_claim(side.other(), v).is_err());
            p = q;
        }
    }

    #[test]
    fn edge_statuses_match_direct_count((h, order, k) in board_and_line()) {
        let mut p = Position::new(&h, Side::B);
        for &v in &order[..k] {
            p = p.apply_claim(p.mb_to_move(), v).unwrap();
        }
        for side in [Side::A, Side::B] {
            for s in p.edge_statuses(side) {
                let e = h.edge(s.edge);
                let free = e.iter().filter(|&&v| !p.is_claimed(v)).count();
                let opp = e.iter().any(|&v| p.claimed(side.other()).contains(v));
                prop_assert_eq!(s.unclaimed_count, free);
                prop_assert_eq!(s.blocked, opp);
                let all_mine = e.iter().all(|&v| p.claimed(side).contains(v));
                prop_assert_eq!(s.is_completed(), all_mine);
            }
        }
    }

    /// More edges can only help Maker.
    #[test]
    fn mb_is_monotone_in_edges(h in board(9, 6), extra in 1u32..512, first in prop_oneof![Just(Side::A), Just(Side::B)]) {
        let n = h.vertex_count();
        let e: Vec<usize> = (0..n).filter(|&v| extra >> v & 1 == 1).collect();
        let mut bigger = h.clone();
        prop_assert_eq!(mb_maker(&h, first), mb_oracle(&h, first));
        if !e.is_empty() && bigger.push_edge(e).is_ok() && mb_maker(&h, first) {
            prop_assert!(mb_maker(&bigger, first));
        }
    }

    /// More edges can only help Chooser.
    #[test]
    fn cp_is_monotone_in_edges(h in board(8, 5), extra in 1u32..256) {
        prop_assert_eq!(cp_chooser(&h), cp_oracle(&h));
        let n = h.vertex_count();
        let e: Vec<usize> = (0..n).filter(|&v| extra >> v & 1 == 1).collect();
        let mut bigger = h.clone();
        if !e.is_empty() && bigger.push_edge(e).is_ok() && cp_chooser(&h) {
            prop_assert!(cp_chooser(&bigger));
        }
    }

    /// Solving from any position reached along a line agrees with minimax.
    #[test]
    fn mb_from_position_matches_minimax((h, order, k) in board_and_line()) {
        let mut p = Position::new(&h, Side::A);
        for &v in &order[..k] {
            p = p.apply_claim(p.mb_to_move(), v).unwrap();
        }
        let got = solve_mb_from(&p, &MbOptions::default()).unwrap().winner == Side::A;
        let want = mb_oracle_from(&h, &p.claimed_a.to_vec(), &p.claimed_b.to_vec(), p.mb_to_move() == Side::A);
        prop_assert_eq!(got, want);
    }

    /// Every between-offers position along a line is a valid start, and the
    /// solver's value there matches minimax with or without forced offers.
    #[test]
    fn cp_prefixes_match_minimax((h, order, k) in board_and_line()) {
        let mut p = Position::new(&h, Side::B);
        for i in 0..k / 2 {
            p = p.apply_claim(Side::A, order[2 * i]).unwrap();
            p = p.apply_claim(Side::B, order[2 * i + 1]).unwrap();
        }
        let want = cp_oracle_from(&h, &p.claimed_a.to_vec(), &p.claimed_b.to_vec());
        for use_lemma23 in [true, false] {
            let opts = CpOptions { use_lemma23, ..CpOptions::default() };
            prop_assert_eq!(solve_cp_from(&p, &opts).unwrap().winner == Side::A, want);
        }
    }
}
