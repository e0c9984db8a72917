//! Finite hypergraphs and the fixed-capacity vertex sets used for claims.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Number of 64-bit words in a [`VertexSet`].
pub const SET_WORDS: usize = 10;

/// Largest board any [`VertexSet`] can describe.
pub const MAX_VERTICES: usize = SET_WORDS * 64;

/// A set of vertex indices below [`MAX_VERTICES`], stored as a flat bitset.
///
/// Membership, insertion and subset tests are constant time, and the type is
/// `Copy`, so positions can be passed around by value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    words: [u64; SET_WORDS],
}

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet {
            words: [0; SET_WORDS],
        }
    }

    /// The set `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "board of {n} vertices exceeds capacity");
        let mut s = Self::new();
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        vs.iter().copied().collect()
    }

    /// Every element moved up by `k`; elements pushed past capacity are dropped.
    pub fn shifted_up(&self, k: usize) -> VertexSet {
        let (q, r) = (k / 64, k % 64);
        let mut out = VertexSet::new();
        for i in (q..SET_WORDS).rev() {
            let lo = self.words[i - q] << r;
            let carry = if r > 0 && i > q {
                self.words[i - q - 1] >> (64 - r)
            } else {
                0
            };
            out.words[i] = lo | carry;
        }
        out
    }

    /// Elements at or above `k`, moved down by `k`.
    pub fn shifted_down(&self, k: usize) -> VertexSet {
        let (q, r) = (k / 64, k % 64);
        let mut out = VertexSet::new();
        for i in 0..SET_WORDS.saturating_sub(q) {
            let hi = self.words[i + q] >> r;
            let carry = if r > 0 && i + q + 1 < SET_WORDS {
                self.words[i + q + 1] << (64 - r)
            } else {
                0
            };
            out.words[i] = hi | carry;
        }
        out
    }

    /// The elements below 128 as a bitmask.
    #[inline]
    pub fn low_mask(&self) -> u128 {
        self.words[0] as u128 | (self.words[1] as u128) << 64
    }

    pub fn from_low_mask(m: u128) -> VertexSet {
        let mut s = VertexSet::new();
        s.words[0] = m as u64;
        s.words[1] = (m >> 64) as u64;
        s
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.words[v >> 6] & (1u64 << (v & 63)) != 0
    }

    /// Inserts `v`, returning whether it was absent.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < MAX_VERTICES, "vertex {v} exceeds set capacity");
        let bit = 1u64 << (v & 63);
        let absent = self.words[v >> 6] & bit == 0;
        self.words[v >> 6] |= bit;
        absent
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= MAX_VERTICES {
            return false;
        }
        let bit = 1u64 << (v & 63);
        let present = self.words[v >> 6] & bit != 0;
        self.words[v >> 6] &= !bit;
        present
    }

    #[inline]
    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        out
    }

    /// Number of elements of `self ∩ other`.
    #[inline]
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Ascending iteration.
    pub fn iter(&self) -> VertexSetIter<'_> {
        VertexSetIter {
            set: self,
            word: 0,
            current: self.words[0],
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct VertexSetIter<'a> {
    set: &'a VertexSet,
    word: usize,
    current: u64,
}

impl Iterator for VertexSetIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
            if self.word >= SET_WORDS {
                return None;
            }
            self.current = self.set.words[self.word];
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("vertex {vertex} out of range in edge {edge} (vertex count {count})")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        count: usize,
    },
    #[error("edge {0} is empty")]
    EmptyEdge(usize),
    #[error("duplicate vertex {vertex} in edge {edge}")]
    DuplicateVertex { edge: usize, vertex: usize },
    #[error("edge {0} duplicates an earlier edge")]
    DuplicateEdge(usize),
    #[error("{0} vertices exceed the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("name given for vertex {0}, which is out of range")]
    NameOutOfRange(usize),
}

/// A finite hypergraph on vertices `0..vertex_count`.
///
/// Edges are kept as ascending index lists in insertion order; equality of
/// hypergraphs is exact (same order), while [`Hypergraph::same_edge_set`]
/// compares edge sets ignoring order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    names: BTreeMap<usize, String>,
    edges: Vec<Vec<usize>>,
    masks: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        if vertex_count > MAX_VERTICES {
            return Err(HypergraphError::TooManyVertices(vertex_count));
        }
        let mut sorted = Vec::with_capacity(edges.len());
        let mut masks: Vec<VertexSet> = Vec::with_capacity(edges.len());
        let mut seen = std::collections::HashSet::new();
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge(i));
            }
            e.sort_unstable();
            for w in e.windows(2) {
                if w[0] == w[1] {
                    return Err(HypergraphError::DuplicateVertex {
                        edge: i,
                        vertex: w[0],
                    });
                }
            }
            if let Some(&v) = e.iter().find(|&&v| v >= vertex_count) {
                return Err(HypergraphError::VertexOutOfRange {
                    edge: i,
                    vertex: v,
                    count: vertex_count,
                });
            }
            if !seen.insert(e.clone()) {
                return Err(HypergraphError::DuplicateEdge(i));
            }
            masks.push(VertexSet::from_slice(&e));
            sorted.push(e);
        }
        Ok(Hypergraph {
            vertex_count,
            names: BTreeMap::new(),
            edges: sorted,
            masks,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::new(vertex_count, Vec::new()).expect("edgeless hypergraph is valid")
    }

    pub fn with_names(mut self, names: BTreeMap<usize, String>) -> Result<Self, HypergraphError> {
        if let Some((&v, _)) = names.iter().find(|(&v, _)| v >= self.vertex_count) {
            return Err(HypergraphError::NameOutOfRange(v));
        }
        self.names = names;
        Ok(self)
    }

    pub fn set_name(&mut self, v: usize, name: impl Into<String>) {
        assert!(v < self.vertex_count);
        self.names.insert(v, name.into());
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    /// Bitset of edge `i`.
    pub fn edge_set(&self, i: usize) -> &VertexSet {
        &self.masks[i]
    }

    pub fn edge_sets(&self) -> &[VertexSet] {
        &self.masks
    }

    pub fn names(&self) -> &BTreeMap<usize, String> {
        &self.names
    }

    pub fn name(&self, v: usize) -> Option<&str> {
        self.names.get(&v).map(String::as_str)
    }

    /// Looks a vertex up by its name.
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().find(|(_, n)| *n == name).map(|(&v, _)| v)
    }

    /// Display label: the name when present, otherwise the 1-based index.
    pub fn label(&self, v: usize) -> String {
        match self.names.get(&v) {
            Some(n) => n.clone(),
            None => format!("{}", v + 1),
        }
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Maximum vertex degree; 0 for an edgeless hypergraph.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    /// The common edge size, if every edge has the same size (and there is at least one edge).
    pub fn uniformity(&self) -> Option<usize> {
        let k = self.edges.first()?.len();
        self.is_uniform(k).then_some(k)
    }

    /// Index of the edge equal to `vs` (any order).
    pub fn find_edge(&self, vs: &[usize]) -> Option<usize> {
        let target = VertexSet::from_slice(vs);
        self.masks.iter().position(|m| *m == target)
    }

    /// Order-insensitive edge-set equality on the same vertex count.
    pub fn same_edge_set(&self, other: &Hypergraph) -> bool {
        if self.vertex_count != other.vertex_count || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Hypergraph {
        assert_eq!(perm.len(), self.vertex_count);
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        Hypergraph::new(self.vertex_count, edges).expect("permutation preserves validity")
    }

    /// Whether `perm` maps the edge set onto itself.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.vertex_count {
            return false;
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return false;
            }
        }
        self.edges.iter().all(|e| {
            let img: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
            self.find_edge(&img).is_some()
        })
    }

    /// Adds one edge, returning its index.
    pub fn push_edge(&mut self, mut e: Vec<usize>) -> Result<usize, HypergraphError> {
        let idx = self.edges.len();
        e.sort_unstable();
        let mut edges = self.edges.clone();
        edges.push(e);
        let names = std::mem::take(&mut self.names);
        *self = Hypergraph::new(self.vertex_count, edges)?;
        self.names = names;
        Ok(idx)
    }
}
