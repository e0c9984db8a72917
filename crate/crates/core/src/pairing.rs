//! Pairing strategies for Breaker via bipartite matching.
//!
//! Each edge is duplicated and matched to distinct vertices; if every copy
//! is matched, the two vertices assigned to an edge form a pair inside it,
//! and answering one member of a pair with the other blocks every edge.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    /// Edge index → index into `pairs`.
    pub edge_cover: BTreeMap<usize, usize>,
}

impl Pairing {
    /// Partner of `v` under the pairing, if `v` is paired.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }
}

struct Matcher<'a> {
    // slot -> candidate vertices; slot 2e and 2e+1 are the two copies of edge e
    adj: Vec<&'a [usize]>,
    owner: Vec<Option<usize>>,
    seen: Vec<u32>,
    stamp: u32,
}

impl Matcher<'_> {
    fn augment(&mut self, slot: usize) -> bool {
        for i in 0..self.adj[slot].len() {
            let v = self.adj[slot][i];
            if self.seen[v] == self.stamp {
                continue;
            }
            self.seen[v] = self.stamp;
            match self.owner[v] {
                None => {
                    self.owner[v] = Some(slot);
                    return true;
                }
                Some(other) => {
                    if self.augment(other) {
                        self.owner[v] = Some(slot);
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Searches for a pairing covering every edge, by augmenting paths.
///
/// Always succeeds when `h` is n-uniform with maximum degree at most n/2.
pub fn find_pairing(h: &Hypergraph) -> Option<Pairing> {
    let slots = 2 * h.edge_count();
    let mut m = Matcher {
        adj: (0..slots).map(|s| h.edge(s / 2)).collect(),
        owner: vec![None; h.vertex_count()],
        seen: vec![0; h.vertex_count()],
        stamp: 0,
    };
    for slot in 0..slots {
        m.stamp += 1;
        if !m.augment(slot) {
            return None;
        }
    }
    let mut by_slot = vec![usize::MAX; slots];
    for (v, o) in m.owner.iter().enumerate() {
        if let Some(s) = o {
            by_slot[*s] = v;
        }
    }
    let pairs: Vec<(usize, usize)> = (0..h.edge_count())
        .map(|e| {
            let (a, b) = (by_slot[2 * e], by_slot[2 * e + 1]);
            (a.min(b), a.max(b))
        })
        .collect();
    let edge_cover = (0..h.edge_count()).map(|e| (e, e)).collect();
    Some(Pairing { pairs, edge_cover })
}

/// True iff the pairs are disjoint and every edge contains both members of its assigned pair.
pub fn verify_pairing(h: &Hypergraph, pr: &Pairing) -> bool {
    let mut used = vec![false; h.vertex_count()];
    for &(a, b) in &pr.pairs {
        if a == b || a >= h.vertex_count() || b >= h.vertex_count() {
            return false;
        }
        if std::mem::replace(&mut used[a], true) || std::mem::replace(&mut used[b], true) {
            return false;
        }
    }
    (0..h.edge_count()).all(
        |e| match pr.edge_cover.get(&e).and_then(|&p| pr.pairs.get(p)) {
            Some(&(a, b)) => {
                let edge = h.edge_set(e);
                edge.contains(a) && edge.contains(b)
            }
            None => false,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gen_g3;

    #[test]
    fn two_disjoint_four_edges() {
        let h = Hypergraph::new(8, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]).unwrap();
        let p = find_pairing(&h).unwrap();
        assert!(verify_pairing(&h, &p));
    }

    #[test]
    fn single_pair_edge() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let p = find_pairing(&h).unwrap();
        assert_eq!(p.pairs, vec![(0, 1)]);
        assert!(verify_pairing(&h, &p));
    }

    #[test]
    fn g3_has_no_pairing() {
        assert!(find_pairing(&gen_g3()).is_none());
    }

    #[test]
    fn rejects_bad_pairings() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let overlapping = Pairing {
            pairs: vec![(0, 1), (1, 2)],
            edge_cover: [(0, 0), (1, 1)].into_iter().collect(),
        };
        assert!(!verify_pairing(&h, &overlapping));
        let missing = Pairing {
            pairs: vec![(0, 1)],
            edge_cover: [(0, 0)].into_iter().collect(),
        };
        assert!(!verify_pairing(&h, &missing));
        let good = Pairing {
            pairs: vec![(0, 1), (2, 3)],
            edge_cover: [(0, 0), (1, 1)].into_iter().collect(),
        };
        assert!(verify_pairing(&h, &good));
    }
}
