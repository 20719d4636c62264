//! Immutable undirected graphs, edge keys and orientations.
//!
//! Adjacency is stored in compressed sparse row form. The order of each
//! neighbor list is part of the input: the `i`-th neighbor probe returns
//! whatever sits at position `i`, so builders either sort lists ascending or
//! take an explicit order.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An unordered vertex pair stored with the lower ID first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeKey {
    u: VertexId,
    v: VertexId,
}

impl EdgeKey {
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(Self::ordered(a, b))
    }

    /// Callers guarantee `a != b`.
    #[inline]
    pub(crate) fn ordered(a: VertexId, b: VertexId) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            EdgeKey { u: a, v: b }
        } else {
            EdgeKey { u: b, v: a }
        }
    }

    /// The lower-ID endpoint.
    #[inline]
    pub fn u(&self) -> VertexId {
        self.u
    }

    /// The higher-ID endpoint.
    #[inline]
    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub from: VertexId,
    pub to: VertexId,
}

impl DirectedEdge {
    pub fn new(from: VertexId, to: VertexId) -> Self {
        DirectedEdge { from, to }
    }

    /// Orients `e` so that it points at `head`, which must be an endpoint.
    pub fn toward(e: EdgeKey, head: VertexId) -> Self {
        debug_assert!(e.contains(head));
        let tail = e.other(head).expect("head is an endpoint");
        DirectedEdge {
            from: tail,
            to: head,
        }
    }

    pub fn away_from(e: EdgeKey, tail: VertexId) -> Self {
        debug_assert!(e.contains(tail));
        let head = e.other(tail).expect("tail is an endpoint");
        DirectedEdge { from: tail, to: head }
    }

    pub fn key(&self) -> EdgeKey {
        EdgeKey::ordered(self.from, self.to)
    }

    pub fn reversed(&self) -> Self {
        DirectedEdge {
            from: self.to,
            to: self.from,
        }
    }
}

impl fmt::Display for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl Graph {
    /// Builds a graph from an edge list, removing duplicates. Neighbor lists
    /// come out sorted ascending.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        check_vertex_count(n)?;
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: x as u64,
                        n,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(VertexId(a)));
            }
            pairs.push((a.min(b), a.max(b)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_pairs(n, &pairs))
    }

    /// `pairs` must be canonical (`a < b`), sorted and duplicate-free.
    fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(a, b) in pairs {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let offsets = prefix_offsets(&degree);
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![VertexId(0); offsets[n]];
        // Sorted pairs fill each list with lower neighbors first, then higher,
        // each run ascending, so every list ends up sorted.
        for &(a, b) in pairs {
            targets[cursor[a as usize]] = VertexId(b);
            cursor[a as usize] += 1;
            targets[cursor[b as usize]] = VertexId(a);
            cursor[b as usize] += 1;
        }
        Graph { offsets, targets }
    }

    /// Builds a graph whose neighbor lists keep exactly the given order.
    pub fn from_adjacency(lists: Vec<Vec<u32>>) -> Result<Self> {
        let n = lists.len();
        check_vertex_count(n)?;
        let mut halves: Vec<(u32, u32)> = Vec::new();
        for (v, list) in lists.iter().enumerate() {
            for &w in list {
                if w as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w as u64,
                        n,
                    });
                }
                if w as usize == v {
                    return Err(Error::SelfLoop(VertexId(w)));
                }
                halves.push(((v as u32).min(w), (v as u32).max(w)));
            }
        }
        halves.sort_unstable();
        // Each undirected edge must be listed exactly once from each side.
        let mut i = 0;
        while i < halves.len() {
            let mut j = i;
            while j < halves.len() && halves[j] == halves[i] {
                j += 1;
            }
            if j - i != 2 {
                let (a, b) = halves[i];
                return Err(Error::invalid(format!(
                    "adjacency of {{{a}, {b}}} is duplicated or not symmetric"
                )));
            }
            i = j;
        }
        let degree: Vec<usize> = lists.iter().map(Vec::len).collect();
        let offsets = prefix_offsets(&degree);
        let targets = lists.into_iter().flatten().map(VertexId).collect();
        Ok(Graph { offsets, targets })
    }

    /// Independently and uniformly permutes every neighbor list.
    pub fn with_shuffled_adjacency<R: Rng + ?Sized>(mut self, rng: &mut R) -> Self {
        for v in 0..self.n() {
            let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
            self.targets[lo..hi].shuffle(rng);
        }
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.offsets[v.index()]..self.offsets[v.index() + 1]]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.n()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        if a == b || !self.contains_vertex(a) || !self.contains_vertex(b) {
            return false;
        }
        let (short, other) = if self.degree(a) <= self.degree(b) {
            (a, b)
        } else {
            (b, a)
        };
        self.neighbors(short).contains(&other)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n() as u32).map(VertexId)
    }

    /// Every edge once, grouped by lower endpoint in adjacency order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeKey> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&w| u < w)
                .map(move |&w| EdgeKey { u, v: w })
        })
    }

    /// Every edge once, sorted.
    pub fn edge_keys(&self) -> Vec<EdgeKey> {
        let mut keys: Vec<EdgeKey> = self.edges().collect();
        keys.sort_unstable();
        keys
    }
}

fn check_vertex_count(n: usize) -> Result<()> {
    if n > u32::MAX as usize {
        return Err(Error::invalid(format!("{n} vertices exceed the 32-bit ID space")));
    }
    Ok(())
}

fn prefix_offsets(degree: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(degree.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for &d in degree {
        acc += d;
        offsets.push(acc);
    }
    offsets
}

/// True iff the graph has no cycle.
pub fn is_forest(g: &Graph) -> bool {
    if g.m() >= g.n().max(1) {
        return false;
    }
    let mut uf = UnionFind::new(g.n());
    g.edges().all(|e| uf.union(e.u().index(), e.v().index()))
}

/// An assignment of a direction to edges, keyed by [`EdgeKey`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    arcs: Vec<DirectedEdge>,
}

impl Orientation {
    pub fn from_arcs(mut arcs: Vec<DirectedEdge>) -> Result<Self> {
        arcs.sort_unstable_by_key(DirectedEdge::key);
        if let Some(w) = arcs.windows(2).find(|w| w[0].key() == w[1].key()) {
            return Err(Error::Coverage(format!("edge {} oriented twice", w[0].key())));
        }
        Ok(Orientation { arcs })
    }

    pub fn arcs(&self) -> &[DirectedEdge] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn get(&self, key: EdgeKey) -> Option<DirectedEdge> {
        self.arcs
            .binary_search_by_key(&key, DirectedEdge::key)
            .ok()
            .map(|i| self.arcs[i])
    }

    /// Checks that the orientation has exactly one entry per edge of `g` and
    /// nothing else.
    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        if let Some(a) = self.arcs.iter().find(|a| !g.has_edge(a.from, a.to)) {
            return Err(Error::Coverage(format!("{a} is not an edge of the graph")));
        }
        if self.arcs.len() != g.m() {
            return Err(Error::Coverage(format!(
                "{} arcs for {} edges",
                self.arcs.len(),
                g.m()
            )));
        }
        Ok(())
    }

    pub fn out_degrees(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0u32; n];
        for a in &self.arcs {
            out[a.from.index()] += 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutDegreeSummary {
    pub max: u32,
    /// `histogram[d]` is the number of vertices with out-degree `d`.
    pub histogram: Vec<u64>,
}

pub fn max_out_degree(o: &Orientation, n: usize) -> OutDegreeSummary {
    let out = o.out_degrees(n);
    let max = out.iter().copied().max().unwrap_or(0);
    let mut histogram = vec![0u64; max as usize + 1];
    for d in out {
        histogram[d as usize] += 1;
    }
    OutDegreeSummary { max, histogram }
}
