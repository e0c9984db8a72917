//! Seeded random boards for cross-checking solvers against brute force.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::Hypergraph;

pub const SUITE_MAX_VERTICES: usize = 12;
pub const SUITE_MAX_EDGES: usize = 8;

/// One random board: up to 12 vertices and 8 distinct edges of size 1 to 4.
pub fn random_board(rng: &mut impl Rng) -> Hypergraph {
    let n = rng.gen_range(1..=SUITE_MAX_VERTICES);
    let m = rng.gen_range(1..=SUITE_MAX_EDGES);
    let verts: Vec<usize> = (0..n).collect();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for _ in 0..4 * m {
        if edges.len() == m {
            break;
        }
        let k = rng.gen_range(1..=4.min(n));
        let mut e: Vec<usize> = verts.choose_multiple(rng, k).copied().collect();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, edges).expect("random edges are valid")
}

/// `count` boards from `seed`; the same seed always gives the same suite.
pub fn random_suite(seed: u64, count: usize) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_board(&mut rng)).collect()
}

/// An `n`-uniform board (n in 2..=6) whose maximum degree is at most `n / 2`.
pub fn random_low_degree_uniform(rng: &mut impl Rng) -> Hypergraph {
    let n = rng.gen_range(2..=6usize);
    let cap = n / 2;
    let m = rng.gen_range(1..=8usize);
    let mut degree: Vec<usize> = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    while edges.len() < m {
        let mut open: Vec<usize> = (0..degree.len()).filter(|&v| degree[v] < cap).collect();
        // Keep some room so later edges need not all reuse vertices.
        while open.len() < n + rng.gen_range(0..=2) {
            degree.push(0);
            open.push(degree.len() - 1);
        }
        let mut e: Vec<usize> = open.choose_multiple(rng, n).copied().collect();
        e.sort_unstable();
        if edges.contains(&e) {
            continue;
        }
        for &v in &e {
            degree[v] += 1;
        }
        edges.push(e);
    }
    Hypergraph::new(degree.len(), edges).expect("random edges are valid")
}

pub fn random_low_degree_suite(seed: u64, count: usize) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_low_degree_uniform(&mut rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_reproducible_and_in_bounds() {
        let a = random_suite(7, 50);
        let b = random_suite(7, 50);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.edges(), y.edges());
            assert!(x.vertex_count() <= SUITE_MAX_VERTICES);
            assert!(x.edge_count() <= SUITE_MAX_EDGES && x.edge_count() >= 1);
            assert!(x.edges().iter().all(|e| (1..=4).contains(&e.len())));
        }
    }

    #[test]
    fn low_degree_suite_shape() {
        for h in random_low_degree_suite(3, 50) {
            let n = h.uniformity().expect("uniform");
            assert!(h.max_degree() <= n / 2);
        }
    }
}
