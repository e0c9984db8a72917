//! Generators for the named hypergraphs and the generic transforms used to derive them.
//!
//! Vertex numbering is fixed and documented per generator so that strategies
//! and tests can address vertices directly.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, MAX_VERTICES};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("K^{k}_{{{n},...}} would have {edges} edges, over the cap of {cap}")]
    TooManyEdges {
        k: usize,
        n: usize,
        edges: u128,
        cap: u128,
    },
    #[error("K^{0}_{{{1},...}} would have {2} vertices, over the supported maximum")]
    TooManyVertices(usize, usize, usize),
    #[error("k and n must both be at least 1")]
    Degenerate,
    #[error("unknown construction '{0}'")]
    Unknown(String),
}

/// Expected shape of a generated hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionMeta {
    pub name: String,
    pub expected_vertex_count: usize,
    pub expected_edge_count: usize,
    pub expected_max_degree: usize,
    pub uniformity: Option<usize>,
    pub erratum_note: Option<String>,
}

impl ConstructionMeta {
    /// Checks `h` against every expectation; returns a description of each mismatch.
    pub fn check(&self, h: &Hypergraph) -> Vec<String> {
        let mut out = Vec::new();
        if h.vertex_count() != self.expected_vertex_count {
            out.push(format!(
                "{}: {} vertices, expected {}",
                self.name,
                h.vertex_count(),
                self.expected_vertex_count
            ));
        }
        if h.edge_count() != self.expected_edge_count {
            out.push(format!(
                "{}: {} edges, expected {}",
                self.name,
                h.edge_count(),
                self.expected_edge_count
            ));
        }
        if h.max_degree() != self.expected_max_degree {
            out.push(format!(
                "{}: max degree {}, expected {}",
                self.name,
                h.max_degree(),
                self.expected_max_degree
            ));
        }
        if let Some(k) = self.uniformity {
            if !h.is_uniform(k) {
                out.push(format!("{}: not {k}-uniform", self.name));
            }
        }
        out
    }
}

pub const GAMMA_PRIME_ERRATUM: &str =
    "the published vertex count for this graph is 155; the stated construction yields 185 (35 + 15 gadgets x 10 new vertices)";
pub const G4_ERRATUM: &str =
    "the published vertex count for this graph is 472; three copies of the 185-vertex gadget graph plus 7 apex vertices give 562";

fn named(
    n: usize,
    edges: Vec<Vec<usize>>,
    names: impl IntoIterator<Item = (usize, String)>,
) -> Hypergraph {
    let names: BTreeMap<usize, String> = names.into_iter().collect();
    Hypergraph::new(n, edges)
        .expect("generator emits valid edges")
        .with_names(names)
        .expect("generator names are in range")
}

/// The 15-vertex, degree-2 3-graph on which Maker wins.
///
/// Vertex `v_k` has index `k - 1`. Edges: the columns `{v4,v5,v6}`,
/// `{v7,v8,v9}`, `{v10,v11,v12}`, `{v13,v14,v15}`, then `{v1,v6,v9}`,
/// `{v1,v12,v15}`, `{v2,v4,v7}`, `{v2,v5,v8}`, `{v3,v10,v13}`, `{v3,v11,v14}`.
pub fn gen_g3() -> Hypergraph {
    let raw: [[usize; 3]; 10] = [
        [4, 5, 6],
        [7, 8, 9],
        [10, 11, 12],
        [13, 14, 15],
        [1, 9, 6],
        [1, 12, 15],
        [2, 4, 7],
        [2, 5, 8],
        [3, 10, 13],
        [3, 11, 14],
    ];
    let edges = raw
        .iter()
        .map(|e| e.iter().map(|v| v - 1).collect())
        .collect();
    named(15, edges, (0..15).map(|v| (v, format!("v{}", v + 1))))
}

/// Vertex indices of the Chooser-Picker counterexample graph.
pub mod gcp {
    /// `x_i`, `i` in 1..=3.
    pub fn x(i: usize) -> usize {
        debug_assert!((1..=3).contains(&i));
        i - 1
    }
    /// `y_i`, `i` in 1..=6.
    pub fn y(i: usize) -> usize {
        debug_assert!((1..=6).contains(&i));
        2 + i
    }
    /// `z_i`, `i` in 1..=6.
    pub fn z(i: usize) -> usize {
        debug_assert!((1..=6).contains(&i));
        8 + i
    }
    /// Edge index of `e_i` (1..=3).
    pub fn e(i: usize) -> usize {
        i - 1
    }
    /// Edge index of `f_i` (1..=6).
    pub fn f(i: usize) -> usize {
        2 + i
    }
    /// Edge index of `g`.
    pub const G: usize = 9;
}

/// The 3-graph on `X ∪ Y ∪ Z` where Breaker wins Maker-Breaker but Chooser wins Chooser-Picker.
///
/// Edge order: `e_1..e_3`, `f_1..f_6`, `g`. See [`gcp`] for the numbering.
pub fn gen_gcp() -> Hypergraph {
    use gcp::*;
    let mut edges = Vec::new();
    for i in 1..=3 {
        let next = if i == 3 { 1 } else { i + 1 };
        edges.push(vec![y(2 * i - 1), y(2 * i), x(next)]);
    }
    for i in 1..=6usize {
        edges.push(vec![x(i.div_ceil(2)), y(i), z(i)]);
    }
    edges.push(vec![x(1), x(2), x(3)]);
    let names = (1..=3)
        .map(|i| (x(i), format!("x{i}")))
        .chain((1..=6).map(|i| (y(i), format!("y{i}"))))
        .chain((1..=6).map(|i| (z(i), format!("z{i}"))));
    named(15, edges, names)
}

/// Coordinates of a vertex of the base graph or its gadget refinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaIndex {
    W { i: usize },
    X { i: usize, j: usize },
    T { i: usize, j: usize },
    Y { i: usize, j: usize, k: usize },
    Z { i: usize, j: usize, k: usize },
}

/// Wraps an index into 1..=5.
pub fn wrap5(i: isize) -> usize {
    (i - 1).rem_euclid(5) as usize + 1
}

fn pair_slot(i: usize, j: usize) -> usize {
    debug_assert!((1..=5).contains(&i) && (1..=3).contains(&j));
    3 * (i - 1) + (j - 1)
}

pub const GAMMA_VERTICES: usize = 35;
pub const GAMMA_PRIME_VERTICES: usize = 185;

impl GammaIndex {
    /// Vertex index. `w_i` → `i-1`; `x_ij` → `5 + 3(i-1) + (j-1)`; `t_ij` →
    /// `20 + 3(i-1) + (j-1)`; gadget vertices follow at `35 + 10·slot`,
    /// `y_1..y_6` then `z_1..z_4`.
    pub fn vertex(self) -> usize {
        match self {
            GammaIndex::W { i } => i - 1,
            GammaIndex::X { i, j } => 5 + pair_slot(i, j),
            GammaIndex::T { i, j } => 20 + pair_slot(i, j),
            GammaIndex::Y { i, j, k } => {
                debug_assert!((1..=6).contains(&k));
                35 + 10 * pair_slot(i, j) + (k - 1)
            }
            GammaIndex::Z { i, j, k } => {
                debug_assert!((1..=4).contains(&k));
                35 + 10 * pair_slot(i, j) + 6 + (k - 1)
            }
        }
    }

    pub fn from_vertex(v: usize) -> Option<GammaIndex> {
        Some(match v {
            0..=4 => GammaIndex::W { i: v + 1 },
            5..=19 => GammaIndex::X {
                i: (v - 5) / 3 + 1,
                j: (v - 5) % 3 + 1,
            },
            20..=34 => GammaIndex::T {
                i: (v - 20) / 3 + 1,
                j: (v - 20) % 3 + 1,
            },
            35..=184 => {
                let slot = (v - 35) / 10;
                let r = (v - 35) % 10;
                let (i, j) = (slot / 3 + 1, slot % 3 + 1);
                if r < 6 {
                    GammaIndex::Y { i, j, k: r + 1 }
                } else {
                    GammaIndex::Z { i, j, k: r - 5 }
                }
            }
            _ => return None,
        })
    }

    pub fn name(self) -> String {
        match self {
            GammaIndex::W { i } => format!("w{i}"),
            GammaIndex::X { i, j } => format!("x{i}{j}"),
            GammaIndex::T { i, j } => format!("t{i}{j}"),
            GammaIndex::Y { i, j, k } => format!("y{i}{j}{k}"),
            GammaIndex::Z { i, j, k } => format!("z{i}{j}{k}"),
        }
    }
}

pub fn w(i: usize) -> usize {
    GammaIndex::W { i }.vertex()
}
pub fn x(i: usize, j: usize) -> usize {
    GammaIndex::X { i, j }.vertex()
}
pub fn t(i: usize, j: usize) -> usize {
    GammaIndex::T { i, j }.vertex()
}
pub fn y(i: usize, j: usize, k: usize) -> usize {
    GammaIndex::Y { i, j, k }.vertex()
}
pub fn z(i: usize, j: usize, k: usize) -> usize {
    GammaIndex::Z { i, j, k }.vertex()
}

/// Vertices of the 3-edge `e_i = x_{i1} x_{(i+2)2} x_{(i+3)3}`.
pub fn gamma_e(i: usize) -> [usize; 3] {
    let i = i as isize;
    [x(wrap5(i), 1), x(wrap5(i + 2), 2), x(wrap5(i + 3), 3)]
}

/// Edge index of the triple `w_i x_ij t_ij` in the base graph.
pub fn gamma_triple_edge(i: usize, j: usize) -> usize {
    pair_slot(i, j)
}

/// Edge index of `e_i` in the base graph.
pub fn gamma_e_edge(i: usize) -> usize {
    15 + (i - 1)
}

/// Edge index of `e_i` in the gadget refinement.
pub fn gamma_prime_e_edge(i: usize) -> usize {
    105 + (i - 1)
}

/// The 3-graph on `W ∪ X ∪ T` (35 vertices, 20 edges).
///
/// Edge order: `w_i x_ij t_ij` for `(i, j)` ascending, then `e_1..e_5`.
pub fn gen_gamma() -> Hypergraph {
    let mut edges = Vec::new();
    for i in 1..=5 {
        for j in 1..=3 {
            edges.push(vec![w(i), x(i, j), t(i, j)]);
        }
    }
    for i in 1..=5 {
        edges.push(gamma_e(i).to_vec());
    }
    let names = (0..GAMMA_VERTICES).map(|v| (v, GammaIndex::from_vertex(v).unwrap().name()));
    named(GAMMA_VERTICES, edges, names)
}

fn gamma_perm(f: impl Fn(usize, usize) -> (usize, usize)) -> Vec<usize> {
    (0..GAMMA_VERTICES)
        .map(|v| match GammaIndex::from_vertex(v).unwrap() {
            GammaIndex::W { i } => w(f(i, 1).0),
            GammaIndex::X { i, j } => {
                let (i, j) = f(i, j);
                x(i, j)
            }
            GammaIndex::T { i, j } => {
                let (i, j) = f(i, j);
                t(i, j)
            }
            _ => unreachable!(),
        })
        .collect()
}

/// `i ↦ i + 1` on the base graph, as a vertex permutation.
pub fn gamma_rotation() -> Vec<usize> {
    gamma_perm(|i, j| (wrap5(i as isize + 1), j))
}

/// `i ↦ -i`, with second and third pairs swapped.
pub fn gamma_reflection() -> Vec<usize> {
    gamma_perm(|i, j| (wrap5(-(i as isize)), [0, 1, 3, 2][j]))
}

/// The seven 4-edges replacing `w_i x_ij t_ij`, in emission order.
pub fn gadget_edges(i: usize, j: usize) -> [[usize; 4]; 7] {
    let (wv, xv, tv) = (w(i), x(i, j), t(i, j));
    let yk = |k| y(i, j, k);
    let zk = |k| z(i, j, k);
    [
        [wv, tv, yk(1), yk(2)],
        [xv, tv, yk(3), yk(4)],
        [xv, tv, yk(5), yk(6)],
        [yk(1), yk(3), yk(5), zk(1)],
        [yk(1), yk(3), yk(5), zk(2)],
        [yk(2), yk(4), yk(6), zk(3)],
        [yk(2), yk(4), yk(6), zk(4)],
    ]
}

/// The gadget refinement of [`gen_gamma`]: 185 vertices, 110 edges, max degree 3.
///
/// Each triple `w x t` is replaced in place by [`gadget_edges`]; `e_1..e_5`
/// stay as 3-edges at indices 105..=109.
pub fn gen_gamma_prime() -> Hypergraph {
    let mut edges = Vec::new();
    for i in 1..=5 {
        for j in 1..=3 {
            edges.extend(gadget_edges(i, j).iter().map(|e| e.to_vec()));
        }
    }
    for i in 1..=5 {
        edges.push(gamma_e(i).to_vec());
    }
    let names = (0..GAMMA_PRIME_VERTICES).map(|v| (v, GammaIndex::from_vertex(v).unwrap().name()));
    named(GAMMA_PRIME_VERTICES, edges, names)
}

/// Vertex layout of the three-copy graph.
pub mod g4 {
    use super::GAMMA_PRIME_VERTICES;

    pub const VERTICES: usize = 3 * GAMMA_PRIME_VERTICES + 7;
    pub const EDGES: usize = 331;

    /// Vertex of copy `c` (1..=3) corresponding to local vertex `local`.
    pub fn copy_vertex(c: usize, local: usize) -> usize {
        debug_assert!((1..=3).contains(&c) && local < GAMMA_PRIME_VERTICES);
        (c - 1) * GAMMA_PRIME_VERTICES + local
    }

    /// Which copy (1..=3) a vertex belongs to, with its local index.
    pub fn copy_of(v: usize) -> Option<(usize, usize)> {
        (v < 3 * GAMMA_PRIME_VERTICES)
            .then(|| (v / GAMMA_PRIME_VERTICES + 1, v % GAMMA_PRIME_VERTICES))
    }

    /// `v_i`, `i` in 1..=4.
    pub fn v(i: usize) -> usize {
        3 * GAMMA_PRIME_VERTICES + i - 1
    }

    /// `s_i`, `i` in 1..=3.
    pub fn s(i: usize) -> usize {
        3 * GAMMA_PRIME_VERTICES + 4 + i - 1
    }

    /// Edge index of copy `c`'s edge `local` (local index in the gadget graph).
    pub fn copy_edge(c: usize, local: usize) -> usize {
        (c - 1) * 110 + local
    }

    /// Edge index of `{v_1, v_2, v_3, v_4}`.
    pub const APEX_EDGE: usize = 330;
}

/// Three disjoint gadget-refined copies joined through `v_1..v_4`, `s_1..s_3`.
///
/// In copy `c`, `e_1, e_2` gain `v_c` and `e_3, e_4, e_5` gain `s_c`; the last
/// edge is `{v_1, v_2, v_3, v_4}`. 4-uniform, max degree 3, 562 vertices, 331 edges.
pub fn gen_g4() -> Hypergraph {
    let base = gen_gamma_prime();
    let mut edges = Vec::new();
    for c in 1..=3 {
        for (li, e) in base.edges().iter().enumerate() {
            let mut ne: Vec<usize> = e.iter().map(|&v| g4::copy_vertex(c, v)).collect();
            if li >= 105 {
                let k = li - 104;
                ne.push(if k <= 2 { g4::v(c) } else { g4::s(c) });
            }
            edges.push(ne);
        }
    }
    edges.push((1..=4).map(g4::v).collect());
    let mut names = Vec::new();
    for c in 1..=3 {
        for (v, n) in base.names() {
            names.push((g4::copy_vertex(c, *v), format!("c{c}.{n}")));
        }
    }
    names.extend((1..=4).map(|i| (g4::v(i), format!("v{i}"))));
    names.extend((1..=3).map(|i| (g4::s(i), format!("s{i}"))));
    named(g4::VERTICES, edges, names)
}

pub const DEFAULT_EDGE_CAP: u128 = 1_000_000;

/// Complete k-partite k-graph with classes of size n.
///
/// Class `c` (0-based) holds vertices `c·n .. (c+1)·n`; edges are all
/// transversals in lexicographic order.
pub fn gen_complete_multipartite(k: usize, n: usize) -> Result<Hypergraph, ConstructionError> {
    gen_complete_multipartite_capped(k, n, DEFAULT_EDGE_CAP)
}

pub fn gen_complete_multipartite_capped(
    k: usize,
    n: usize,
    cap: u128,
) -> Result<Hypergraph, ConstructionError> {
    if k == 0 || n == 0 {
        return Err(ConstructionError::Degenerate);
    }
    let edges_needed = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(n as u128));
    match edges_needed {
        Some(m) if m <= cap => {}
        other => {
            return Err(ConstructionError::TooManyEdges {
                k,
                n,
                edges: other.unwrap_or(u128::MAX),
                cap,
            })
        }
    }
    if k * n > MAX_VERTICES {
        return Err(ConstructionError::TooManyVertices(k, n, k * n));
    }
    let mut edges = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        edges.push(choice.iter().enumerate().map(|(c, &m)| c * n + m).collect());
        let mut pos = k;
        loop {
            if pos == 0 {
                let names = (0..k * n).map(|v| (v, format!("c{}.{}", v / n + 1, v % n + 1)));
                return Ok(named(k * n, edges, names));
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < n {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Where the fresh vertices of [`split_pendant`] went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitLayout {
    pub base_vertices: usize,
    /// `(x_e, y_e)` for each base edge `e`.
    pub pendants: Vec<(usize, usize)>,
}

impl SplitLayout {
    pub fn of(h: &Hypergraph) -> SplitLayout {
        let n = h.vertex_count();
        SplitLayout {
            base_vertices: n,
            pendants: (0..h.edge_count())
                .map(|i| (n + 2 * i, n + 2 * i + 1))
                .collect(),
        }
    }

    /// Base edge and partner of a fresh vertex.
    pub fn partner(&self, v: usize) -> Option<(usize, usize)> {
        if v < self.base_vertices {
            return None;
        }
        let e = (v - self.base_vertices) / 2;
        let (a, b) = *self.pendants.get(e)?;
        Some((e, if v == a { b } else { a }))
    }

    /// Index in the split graph of the edge `e ∪ {x_e}` (`second = false`) or `e ∪ {y_e}`.
    pub fn split_edge(&self, e: usize, second: bool) -> usize {
        2 * e + usize::from(second)
    }
}

/// Replaces every edge `e` by `e ∪ {x_e}` and `e ∪ {y_e}` with two fresh vertices.
///
/// Fresh vertices are appended in edge order, `x_e` before `y_e`. Every
/// original vertex's degree doubles and each fresh vertex has degree 1.
pub fn split_pendant(h: &Hypergraph) -> Hypergraph {
    let layout = SplitLayout::of(h);
    let n = h.vertex_count() + 2 * h.edge_count();
    let mut edges = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        let (xe, ye) = layout.pendants[i];
        let mut a = e.clone();
        a.push(xe);
        let mut b = e.clone();
        b.push(ye);
        edges.push(a);
        edges.push(b);
    }
    let mut names: Vec<(usize, String)> = h.names().iter().map(|(&v, s)| (v, s.clone())).collect();
    for (i, &(xe, ye)) in layout.pendants.iter().enumerate() {
        names.push((xe, format!("xe{}", i + 1)));
        names.push((ye, format!("ye{}", i + 1)));
    }
    named(n, edges, names)
}

/// Result of pruning pairs of degree-1 vertices that share an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub hypergraph: Hypergraph,
    /// Removed `(x, y)` pairs, in original indices.
    pub removed_pairs: Vec<(usize, usize)>,
    /// Original index of each surviving vertex.
    pub kept: Vec<usize>,
}

/// Repeatedly removes an edge together with two of its degree-1 vertices.
///
/// The lowest-index qualifying edge goes first, pairing its two lowest
/// degree-1 vertices. If Breaker wins the reduced game, Breaker wins the
/// original; the converse need not hold.
pub fn reduce_lemma21(h: &Hypergraph) -> Reduction {
    let mut alive_edges: Vec<bool> = vec![true; h.edge_count()];
    let mut removed = vec![false; h.vertex_count()];
    let mut pairs = Vec::new();
    let mut deg = h.degrees();
    'outer: loop {
        for (i, e) in h.edges().iter().enumerate() {
            if !alive_edges[i] {
                continue;
            }
            let ones: Vec<usize> = e.iter().copied().filter(|&v| deg[v] == 1).take(2).collect();
            if let [a, b] = ones[..] {
                alive_edges[i] = false;
                for &v in e {
                    deg[v] -= 1;
                }
                removed[a] = true;
                removed[b] = true;
                pairs.push((a, b));
                continue 'outer;
            }
        }
        break;
    }
    let kept: Vec<usize> = (0..h.vertex_count()).filter(|&v| !removed[v]).collect();
    let mut new_index = vec![usize::MAX; h.vertex_count()];
    for (ni, &v) in kept.iter().enumerate() {
        new_index[v] = ni;
    }
    let edges = h
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| alive_edges[*i])
        .map(|(_, e)| e.iter().map(|&v| new_index[v]).collect())
        .collect();
    let names = h
        .names()
        .iter()
        .filter(|(v, _)| !removed[**v])
        .map(|(v, s)| (new_index[*v], s.clone()));
    Reduction {
        hypergraph: named(kept.len(), edges, names),
        removed_pairs: pairs,
        kept,
    }
}

/// The built-in generator names reachable from the command line.
pub const BUILTIN_NAMES: [&str; 5] = ["g3", "gcp", "gamma", "gamma-prime", "g4"];

/// Builds a named construction and its expected shape.
pub fn builtin(name: &str) -> Result<(Hypergraph, ConstructionMeta), ConstructionError> {
    let meta = |n: &str, v, e, d, u, note: Option<&str>| ConstructionMeta {
        name: n.to_string(),
        expected_vertex_count: v,
        expected_edge_count: e,
        expected_max_degree: d,
        uniformity: u,
        erratum_note: note.map(str::to_string),
    };
    Ok(match name {
        "g3" => (gen_g3(), meta("g3", 15, 10, 2, Some(3), None)),
        "gcp" => (gen_gcp(), meta("gcp", 15, 10, 4, Some(3), None)),
        "gamma" => (gen_gamma(), meta("gamma", 35, 20, 3, Some(3), None)),
        "gamma-prime" => (
            gen_gamma_prime(),
            meta("gamma-prime", 185, 110, 3, None, Some(GAMMA_PRIME_ERRATUM)),
        ),
        "g4" => (gen_g4(), meta("g4", 562, 331, 3, Some(4), Some(G4_ERRATUM))),
        other => return Err(ConstructionError::Unknown(other.to_string())),
    })
}

/// Metadata for `K^k_{n,...,n}`.
pub fn kpartite_meta(k: usize, n: usize) -> ConstructionMeta {
    ConstructionMeta {
        name: format!("kpartite-{k}-{n}"),
        expected_vertex_count: k * n,
        expected_edge_count: n.pow(k as u32),
        expected_max_degree: if k == 0 { 0 } else { n.pow(k as u32 - 1) },
        uniformity: Some(k),
        erratum_note: None,
    }
}

/// Identifies a loaded hypergraph with a built-in construction, if it is one.
pub fn identify(h: &Hypergraph) -> Option<ConstructionMeta> {
    for name in BUILTIN_NAMES {
        let (g, meta) = builtin(name).expect("builtin names are valid");
        if g.vertex_count() == h.vertex_count() && g.same_edge_set(h) {
            return Some(meta);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g3_shape() {
        let h = gen_g3();
        assert_eq!((h.vertex_count(), h.edge_count()), (15, 10));
        assert!(h.is_uniform(3));
        assert!(h.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn gcp_shape() {
        let h = gen_gcp();
        assert_eq!((h.vertex_count(), h.edge_count()), (15, 10));
        assert!(h.is_uniform(3));
        assert_eq!(h.max_degree(), 4);
        for i in 1..=6 {
            assert_eq!(h.degree(gcp::z(i)), 1);
        }
        // x_1 lies in e_3, f_1, f_2, g
        assert_eq!(h.degree(gcp::x(1)), 4);
        assert_eq!(h.edge(gcp::e(3)), &[gcp::x(1), gcp::y(5), gcp::y(6)]);
    }

    #[test]
    fn gamma_shape() {
        let h = gen_gamma();
        assert_eq!((h.vertex_count(), h.edge_count()), (35, 20));
        assert_eq!(h.max_degree(), 3);
        for i in 1..=5 {
            assert_eq!(h.degree(w(i)), 3);
            for j in 1..=3 {
                assert_eq!(h.degree(t(i, j)), 1);
                assert_eq!(h.degree(x(i, j)), 2);
            }
        }
        let mut e1 = gamma_e(1).to_vec();
        e1.sort();
        let mut want = vec![x(1, 1), x(3, 2), x(4, 3)];
        want.sort();
        assert_eq!(e1, want);
        assert_eq!(h.edge(gamma_e_edge(1)), &want[..]);
    }

    #[test]
    fn gamma_index_bijection() {
        for v in 0..GAMMA_PRIME_VERTICES {
            let g = GammaIndex::from_vertex(v).unwrap();
            assert_eq!(g.vertex(), v);
        }
        assert_eq!(GammaIndex::from_vertex(185), None);
    }

    #[test]
    fn gamma_prime_shape() {
        let h = gen_gamma_prime();
        assert_eq!((h.vertex_count(), h.edge_count()), (185, 110));
        assert_eq!(h.max_degree(), 3);
        let sizes: Vec<usize> = h.edges().iter().map(Vec::len).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 5);
        assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 105);
        for i in 1..=5 {
            assert_eq!(h.edge(gamma_prime_e_edge(i)).len(), 3);
            for j in 1..=3 {
                for k in 1..=4 {
                    assert_eq!(h.degree(z(i, j, k)), 1);
                }
            }
        }
    }

    #[test]
    fn g4_shape() {
        let h = gen_g4();
        assert_eq!((h.vertex_count(), h.edge_count()), (562, 331));
        assert!(h.is_uniform(4));
        assert_eq!(h.max_degree(), 3);
        assert_eq!(
            h.edge(g4::APEX_EDGE),
            &[g4::v(1), g4::v(2), g4::v(3), g4::v(4)]
        );
        assert!(h
            .edge(g4::copy_edge(2, gamma_prime_e_edge(1)))
            .contains(&g4::v(2)));
        assert!(h
            .edge(g4::copy_edge(3, gamma_prime_e_edge(5)))
            .contains(&g4::s(3)));
    }

    #[test]
    fn kpartite() {
        let h = gen_complete_multipartite(2, 2).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (4, 4));
        let h = gen_complete_multipartite(3, 2).unwrap();
        assert!(kpartite_meta(3, 2).check(&h).is_empty());
        assert!(matches!(
            gen_complete_multipartite(30, 2),
            Err(ConstructionError::TooManyEdges { .. })
        ));
        assert_eq!(
            gen_complete_multipartite(0, 2),
            Err(ConstructionError::Degenerate)
        );
    }

    #[test]
    fn split_single_edge() {
        let h = Hypergraph::new(1, vec![vec![0]]).unwrap();
        let s = split_pendant(&h);
        assert_eq!(s.edges(), &[vec![0, 1], vec![0, 2]]);
        assert_eq!(s.degree(0), 2);
    }

    #[test]
    fn split_g3() {
        let s = split_pendant(&gen_g3());
        assert_eq!((s.vertex_count(), s.edge_count()), (35, 20));
        assert!(s.is_uniform(4));
        assert_eq!(s.max_degree(), 4);
        for v in 15..35 {
            assert_eq!(s.degree(v), 1);
        }
    }

    #[test]
    fn lemma21_reduction() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let r = reduce_lemma21(&h);
        assert_eq!(r.hypergraph.vertex_count(), 0);
        assert_eq!(r.hypergraph.edge_count(), 0);
        assert_eq!(r.removed_pairs, vec![(0, 1)]);

        for g in [gen_gcp(), gen_gamma()] {
            let r = reduce_lemma21(&g);
            assert!(r.removed_pairs.is_empty());
            assert_eq!(r.hypergraph, g);
        }
    }

    #[test]
    fn builtins_match_meta() {
        for name in BUILTIN_NAMES {
            let (h, meta) = builtin(name).unwrap();
            assert!(meta.check(&h).is_empty(), "{:?}", meta.check(&h));
            assert_eq!(identify(&h).unwrap().name, name);
        }
    }
}
