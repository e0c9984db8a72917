//! The ten acceptance criteria, run in order with one PASS/FAIL line each.
//!
//! Timings are measured on one thread in whatever profile the tests are
//! built with; `cargo test` uses opt-level 3 for this workspace.

mod common;

use std::time::{Duration, Instant};

use hypergame::constructions::{
    gcp, gen_complete_multipartite, gen_g3, gen_g4, gen_gamma, gen_gamma_prime, gen_gcp,
    split_pendant, G4_ERRATUM, GAMMA_PRIME_ERRATUM,
};
use hypergame::cp::{gcp_case_table, solve_cp, solve_cp_from, validate_case_table, CpOptions};
use hypergame::hypergraph::Hypergraph;
use hypergame::mb::{solve_mb, MbOptions};
use hypergame::pairing::{find_pairing, verify_pairing};
use hypergame::position::{Position, Side};
use hypergame::strategy::{
    build_gamma_strategy, g3_script, lift_g4, lift_gamma_prime, lift_split, mutants,
    verify_maker_strategy, StrategyTree, VerifyOptions,
};
use hypergame::suite::{random_low_degree_suite, random_suite};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t < budget {
        Ok(())
    } else {
        Err(format!("{what} took {t:?}, budget {budget:?}"))
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn mb_opts(workers: usize) -> MbOptions {
    MbOptions {
        worker_count: workers,
        ..MbOptions::default()
    }
}

fn cp_opts(workers: usize) -> CpOptions {
    CpOptions {
        worker_count: workers,
        ..CpOptions::default()
    }
}

fn vopts(workers: usize) -> VerifyOptions {
    VerifyOptions {
        worker_count: workers,
        node_limit: None,
    }
}

fn mb_winner(h: &Hypergraph, first: Side, opts: &MbOptions) -> Result<Side, String> {
    solve_mb(h, first, opts)
        .map(|r| r.winner)
        .map_err(|e| e.to_string())
}

fn cp_winner(h: &Hypergraph, opts: &CpOptions) -> Result<Side, String> {
    solve_cp(h, opts)
        .map(|r| r.winner)
        .map_err(|e| e.to_string())
}

fn refutation() -> Outcome {
    let h = gen_gcp();
    let t = Instant::now();
    ensure!(
        mb_winner(&h, Side::A, &mb_opts(1))? == Side::B,
        "Maker-first game on G_CP is not a Breaker win"
    );
    within(t, secs(10), "Maker-Breaker solve")?;
    let t = Instant::now();
    ensure!(
        cp_winner(&h, &cp_opts(1))? == Side::A,
        "Chooser-Picker game on G_CP is not a Chooser win"
    );
    within(t, secs(300), "Chooser-Picker solve")?;
    Ok("Breaker wins Maker-Breaker, Chooser wins Chooser-Picker on G_CP".into())
}

fn case_table() -> Outcome {
    let t = Instant::now();
    let h = gen_gcp();
    let r =
        validate_case_table(&h, &gcp_case_table(true), &cp_opts(1)).map_err(|e| e.to_string())?;
    ensure!(r.offers == 105, "{} offers checked", r.offers);
    ensure!(r.covered, "some offer has no case");
    ensure!(
        r.all_winning,
        "losing choice for offer {:?}",
        r.first_failure.map(|f| f.offer)
    );
    let after = |keep: usize, give: usize| -> Result<bool, String> {
        let p = Position::new(&h, Side::B)
            .apply_claim(Side::A, keep)
            .unwrap()
            .apply_claim(Side::B, give)
            .unwrap();
        Ok(solve_cp_from(&p, &cp_opts(1))
            .map_err(|e| e.to_string())?
            .winner
            == Side::A)
    };
    let (x1, x2) = (gcp::x(1), gcp::x(2));
    ensure!(after(x2, x1)?, "keeping x2 from {{x1, x2}} does not win");
    ensure!(!after(x1, x2)?, "keeping x1 from {{x1, x2}} also wins");
    within(t, secs(600), "case table")?;
    Ok(format!(
        "105 offers covered and won, classes {:?}; x2 wins and x1 loses",
        r.class_counts
    ))
}

fn gamma() -> Outcome {
    let h = gen_gamma();
    ensure!(
        h.vertex_count() == 35 && h.edge_count() == 20,
        "shape {}x{}",
        h.vertex_count(),
        h.edge_count()
    );
    let t = Instant::now();
    let r = verify_maker_strategy(&h, &build_gamma_strategy(), Side::B, &vopts(1));
    ensure!(r.verified, "{:?}", r.counterexample.map(|c| c.render()));
    within(t, secs(10), "verification")?;
    Ok(format!(
        "35 vertices, 20 edges, verified with Breaker first ({} nodes)",
        r.nodes
    ))
}

fn gamma_prime() -> Outcome {
    let h = gen_gamma_prime();
    let threes = h.edges().iter().filter(|e| e.len() == 3).count();
    let fours = h.edges().iter().filter(|e| e.len() == 4).count();
    ensure!(
        threes == 5 && fours == 105,
        "{threes} 3-edges, {fours} 4-edges"
    );
    ensure!(h.edge_count() == 110, "{} edges", h.edge_count());
    ensure!(h.max_degree() == 3, "max degree {}", h.max_degree());
    ensure!(h.vertex_count() == 185, "{} vertices", h.vertex_count());
    ensure!(
        GAMMA_PRIME_ERRATUM.contains("155") && GAMMA_PRIME_ERRATUM.contains("185"),
        "erratum text"
    );
    let t = Instant::now();
    let lifted = lift_gamma_prime(&build_gamma_strategy()).map_err(|e| e.to_string())?;
    let r = verify_maker_strategy(&h, &lifted, Side::B, &vopts(1));
    ensure!(r.verified, "{:?}", r.counterexample.map(|c| c.render()));
    within(t, secs(60), "verification")?;
    Ok(format!(
        "185 vertices (155 flagged), 110 edges, verified ({} nodes)",
        r.nodes
    ))
}

fn g4() -> Outcome {
    let h = gen_g4();
    ensure!(h.is_uniform(4), "not 4-uniform");
    ensure!(h.max_degree() == 3, "max degree {}", h.max_degree());
    ensure!(h.edge_count() == 331, "{} edges", h.edge_count());
    let t = Instant::now();
    let inner = lift_gamma_prime(&build_gamma_strategy()).map_err(|e| e.to_string())?;
    let lifted = lift_g4(&inner).map_err(|e| e.to_string())?;
    let r = verify_maker_strategy(&h, &lifted, Side::A, &vopts(1));
    ensure!(r.verified, "{:?}", r.counterexample.map(|c| c.render()));
    within(t, secs(300), "verification")?;
    ensure!(r.nodes < 10_000_000, "{} verifier nodes", r.nodes);
    Ok(format!(
        "4-uniform, max degree 3, 331 edges, verified with Maker first ({} nodes); {G4_ERRATUM}",
        r.nodes
    ))
}

fn f_values() -> Outcome {
    let g3 = gen_g3();
    ensure!(
        mb_winner(&g3, Side::A, &mb_opts(1))? == Side::A,
        "G3 is not a Maker win"
    );
    let suite = random_low_degree_suite(2024, 50);
    for (i, h) in suite.iter().enumerate() {
        let n = h.uniformity().ok_or(format!("instance {i} not uniform"))?;
        ensure!(h.max_degree() <= n / 2, "instance {i} degree too high");
        let p = find_pairing(h).ok_or(format!("no pairing for instance {i}"))?;
        ensure!(verify_pairing(h, &p), "bad pairing for instance {i}");
    }
    let split = lift_split(&StrategyTree::Script(g3_script()), &g3).map_err(|e| e.to_string())?;
    let r = verify_maker_strategy(&split_pendant(&g3), &split, Side::A, &vopts(1));
    ensure!(r.verified, "{:?}", r.counterexample.map(|c| c.render()));
    Ok(format!(
        "G3 Maker win, 50/50 pairings, split lift verified ({} nodes)",
        r.nodes
    ))
}

fn kpartite() -> Outcome {
    let t = Instant::now();
    for (k, n) in [(2, 2), (2, 3), (3, 2)] {
        let h = gen_complete_multipartite(k, n).map_err(|e| e.to_string())?;
        ensure!(
            mb_winner(&h, Side::A, &mb_opts(1))? == Side::A,
            "K^{k}_{n} not a Maker win"
        );
    }
    let h = gen_complete_multipartite(4, 2).map_err(|e| e.to_string())?;
    ensure!(
        cp_winner(&h, &cp_opts(1))? == Side::B,
        "K^4_2 not a Picker win"
    );
    within(t, secs(60), "k-partite solves")?;
    Ok("Maker wins K^2_2, K^2_3, K^3_2; Picker wins K^4_2".into())
}

fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let suite = random_suite(8, 200);
    for (i, h) in suite.iter().enumerate() {
        for first in [Side::A, Side::B] {
            let plain = mb_winner(h, first, &MbOptions::unpruned())?;
            ensure!(
                (plain == Side::A) == common::mb_oracle(h, first),
                "board {i}: unpruned solver disagrees with minimax"
            );
            for bits in 1..16 {
                let got = mb_winner(h, first, &MbOptions::from_bits(bits))?;
                ensure!(
                    got == plain,
                    "board {i}, first {first:?}, options {bits:04b}"
                );
            }
        }
        let plain = cp_winner(
            h,
            &CpOptions {
                use_lemma23: false,
                ..CpOptions::default()
            },
        )?;
        ensure!(
            (plain == Side::A) == common::cp_oracle(h),
            "board {i}: Chooser-Picker disagrees with minimax"
        );
        ensure!(
            cp_winner(h, &CpOptions::default())? == plain,
            "board {i}: forced offers change the verdict"
        );
    }
    within(t, secs(600), "oracle suite")?;
    Ok("200 boards, 16 option sets x 2 first movers, and Chooser-Picker with and without forced offers".into())
}

fn mutations() -> Outcome {
    let ms = mutants();
    ensure!(ms.len() == 20, "{} mutants", ms.len());
    let mut lines = Vec::new();
    for m in &ms {
        let r = verify_maker_strategy(&m.board, &m.strategy, m.first_mover, &vopts(1));
        ensure!(!r.verified, "mutant accepted: {}", m.name);
        let c = r
            .counterexample
            .ok_or(format!("no counterexample for {}", m.name))?;
        lines.push(format!("    {}: {}", m.name, c.render()));
    }
    Ok(format!("20 of 20 rejected\n{}", lines.join("\n")))
}

/// Verdicts from every criterion above, recomputed with `workers` threads.
fn verdicts(workers: usize) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let gcp = gen_gcp();
    out.push(format!(
        "{:?}",
        mb_winner(&gcp, Side::A, &mb_opts(workers))?
    ));
    out.push(format!("{:?}", cp_winner(&gcp, &cp_opts(workers))?));
    let r = validate_case_table(&gcp, &gcp_case_table(true), &cp_opts(workers))
        .map_err(|e| e.to_string())?;
    out.push(format!(
        "{} {} {:?}",
        r.covered,
        r.all_winning,
        r.checks
            .iter()
            .map(|c| c.winner.clone())
            .collect::<Vec<_>>()
    ));
    let gamma = build_gamma_strategy();
    let prime = lift_gamma_prime(&gamma).map_err(|e| e.to_string())?;
    let g4s = lift_g4(&prime).map_err(|e| e.to_string())?;
    let g3 = gen_g3();
    let split = lift_split(&StrategyTree::Script(g3_script()), &g3).map_err(|e| e.to_string())?;
    let targets = [
        (gen_gamma(), gamma, Side::B),
        (gen_gamma_prime(), prime, Side::B),
        (gen_g4(), g4s, Side::A),
        (split_pendant(&g3), split, Side::A),
    ];
    for (h, s, first) in &targets {
        out.push(
            verify_maker_strategy(h, s, *first, &vopts(workers))
                .verified
                .to_string(),
        );
    }
    out.push(format!("{:?}", mb_winner(&g3, Side::A, &mb_opts(workers))?));
    for (k, n) in [(2, 2), (2, 3), (3, 2)] {
        let h = gen_complete_multipartite(k, n).unwrap();
        out.push(format!("{:?}", mb_winner(&h, Side::A, &mb_opts(workers))?));
    }
    out.push(format!(
        "{:?}",
        cp_winner(&gen_complete_multipartite(4, 2).unwrap(), &cp_opts(workers))?
    ));
    for h in random_suite(8, 200) {
        for first in [Side::A, Side::B] {
            for bits in [0u8, 15] {
                let o = MbOptions {
                    worker_count: workers,
                    ..MbOptions::from_bits(bits)
                };
                out.push(format!("{:?}", mb_winner(&h, first, &o)?));
            }
        }
        out.push(format!("{:?}", cp_winner(&h, &cp_opts(workers))?));
    }
    for m in mutants() {
        let r = verify_maker_strategy(&m.board, &m.strategy, m.first_mover, &vopts(workers));
        out.push(format!(
            "{} {:?}",
            r.verified,
            r.counterexample.map(|c| c.render())
        ));
    }
    Ok(out)
}

fn determinism() -> Outcome {
    let one = verdicts(1)?;
    let four = verdicts(4)?;
    ensure!(one.len() == four.len(), "different verdict counts");
    if let Some(i) = (0..one.len()).find(|&i| one[i] != four[i]) {
        return Err(format!("verdict {i} differs: {} vs {}", one[i], four[i]));
    }
    Ok(format!(
        "{} verdicts identical for 1 and 4 threads",
        one.len()
    ))
}

/// Written to the process stdout directly so the lines show up in
/// `cargo test` output even when the test passes.
fn report(line: String) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("G_CP refutes the Chooser-Picker conjecture", refutation),
        ("case table for G_CP", case_table),
        ("strategy on the 35-vertex graph", gamma),
        ("lift to the 185-vertex graph", gamma_prime),
        ("lift to the 4-uniform degree-3 graph", g4),
        ("G3, pairings and the split lift", f_values),
        ("complete multipartite fixtures", kpartite),
        (
            "oracle equivalence on 200 random boards",
            oracle_equivalence,
        ),
        ("mutation sensitivity", mutations),
        ("thread-count determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => report(format!(
                "criterion {:>2} PASS [{ms} ms] {name}: {detail}",
                i + 1
            )),
            Err(why) => {
                report(format!(
                    "criterion {:>2} FAIL [{ms} ms] {name}: {why}",
                    i + 1
                ));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
