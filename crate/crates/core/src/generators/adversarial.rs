//! The hidden-star forest used to show that probe-limited LCAs cannot
//! r-orient unbounded-degree forests.
//!
//! Layout of vertex IDs (all ranges contiguous):
//!
//! ```text
//! A            [0, st)                     star centers, degree st + s
//! S_a leaves   st leaves per a in A        degree 1
//! B            s^2 t - 2s vertices         star centers, degree t + 1
//! S_b leaves   t leaves per b in B         degree 1
//! ```
//!
//! Black edges join every center to its own leaves. Red edges form a star of
//! size `s` from a uniformly random center `a0 in A` to a random `A' ⊂ A`.
//! Blue edges are a uniformly random matching padding every `a in A` to degree
//! `st + s`, each `b in B` receiving exactly one. Every neighbor list is then
//! shuffled independently.

use std::ops::Range;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};

use super::rng_for;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum AdversarialShape {
    /// `s = 24 r`, `t = floor(sqrt(n) / 4s)`; requires `t > 10`.
    Derived { n: u64, r: u32 },
    /// Direct `(s, t)` for small instances.
    Explicit { s: u32, t: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversarialParams {
    pub shape: AdversarialShape,
    pub seed: u64,
}

impl AdversarialParams {
    pub fn derived(n: u64, r: u32, seed: u64) -> Self {
        AdversarialParams {
            shape: AdversarialShape::Derived { n, r },
            seed,
        }
    }

    pub fn explicit(s: u32, t: u32, seed: u64) -> Self {
        AdversarialParams {
            shape: AdversarialShape::Explicit { s, t },
            seed,
        }
    }

    /// Checks feasibility and computes exact set sizes.
    pub fn layout(&self) -> Result<AdversarialLayout> {
        let (s, t) = match self.shape {
            AdversarialShape::Derived { n, r } => {
                if r == 0 {
                    return Err(Error::Infeasible("r must be at least 1".into()));
                }
                let s = 24 * r as u64;
                let t = n.isqrt() / (4 * s);
                if t <= 10 {
                    return Err(Error::Infeasible(format!(
                        "t = floor(sqrt({n}) / {}) = {t} must exceed 10; increase n or lower r",
                        4 * s
                    )));
                }
                (s, t)
            }
            AdversarialShape::Explicit { s, t } => {
                if s < 2 || t < 1 {
                    return Err(Error::Infeasible(format!(
                        "explicit mode needs s >= 2 and t >= 1, got s = {s}, t = {t}"
                    )));
                }
                (s as u64, t as u64)
            }
        };
        let a = s * t;
        if a - 1 < s {
            return Err(Error::Infeasible(format!(
                "|A| - 1 = {} is smaller than the red star size s = {s}",
                a - 1
            )));
        }
        let b = s * s * t - 2 * s;
        let vertex_count = a * (a + 1) + b * (t + 1);
        if let AdversarialShape::Derived { n, .. } = self.shape {
            if vertex_count >= n {
                return Err(Error::Infeasible(format!(
                    "instance needs {vertex_count} vertices, not below n = {n}"
                )));
            }
        }
        if vertex_count > u32::MAX as u64 {
            return Err(Error::Infeasible(format!(
                "{vertex_count} vertices exceed the 32-bit ID space"
            )));
        }
        Ok(AdversarialLayout {
            s,
            t,
            a_count: a,
            b_count: b,
            vertex_count,
            black_edges: a * a + b * t,
            red_edges: s,
            blue_edges: b,
        })
    }
}

/// Exact counts of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversarialLayout {
    pub s: u64,
    pub t: u64,
    pub a_count: u64,
    pub b_count: u64,
    pub vertex_count: u64,
    pub black_edges: u64,
    pub red_edges: u64,
    pub blue_edges: u64,
}

impl AdversarialLayout {
    pub fn a_range(&self) -> Range<u32> {
        0..self.a_count as u32
    }

    pub fn b_range(&self) -> Range<u32> {
        let start = self.a_count * (self.a_count + 1);
        start as u32..(start + self.b_count) as u32
    }

    pub fn degree_a(&self) -> u64 {
        self.s * self.t + self.s
    }

    pub fn degree_b(&self) -> u64 {
        self.t + 1
    }
}

#[derive(Clone, Debug)]
pub struct AdversarialInstance {
    pub params: AdversarialParams,
    pub layout: AdversarialLayout,
    pub graph: Graph,
    pub center: VertexId,
    /// Sorted.
    pub red_edges: Vec<EdgeKey>,
    /// Sorted.
    pub blue_edges: Vec<EdgeKey>,
}

impl AdversarialInstance {
    pub fn a_vertices(&self) -> impl Iterator<Item = VertexId> {
        self.layout.a_range().map(VertexId)
    }

    pub fn b_vertices(&self) -> impl Iterator<Item = VertexId> {
        self.layout.b_range().map(VertexId)
    }

    pub fn is_colored(&self, e: EdgeKey) -> bool {
        self.red_edges.binary_search(&e).is_ok() || self.blue_edges.binary_search(&e).is_ok()
    }
}

pub fn adversarial_instance(params: AdversarialParams) -> Result<AdversarialInstance> {
    let layout = params.layout()?;
    let mut rng = rng_for(params.seed, "adversarial");
    let (s, t) = (layout.s as u32, layout.t as u32);
    let a = layout.a_count as u32;
    let b_start = layout.b_range().start;
    let b_count = layout.b_count as u32;

    let mut edges: Vec<(u32, u32)> =
        Vec::with_capacity((layout.black_edges + layout.red_edges + layout.blue_edges) as usize);
    // Black stars.
    for center in 0..a {
        let first = a + center * a;
        edges.extend((first..first + a).map(|leaf| (center, leaf)));
    }
    let sb_start = b_start + b_count;
    for j in 0..b_count {
        let first = sb_start + j * t;
        edges.extend((first..first + t).map(|leaf| (b_start + j, leaf)));
    }

    // Red star: a0 and s other A vertices.
    let center = rng.gen_range(0..a);
    let mut red_degree = vec![0u32; a as usize];
    red_degree[center as usize] = s;
    let mut red_edges = Vec::with_capacity(s as usize);
    for k in index::sample(&mut rng, a as usize - 1, s as usize) {
        let leaf = if (k as u32) < center { k as u32 } else { k as u32 + 1 };
        red_degree[leaf as usize] = 1;
        red_edges.push(EdgeKey::ordered(VertexId(center), VertexId(leaf)));
    }
    red_edges.sort_unstable();
    edges.extend(red_edges.iter().map(|e| (e.u().0, e.v().0)));

    // Blue matching: stubs of A in ID order against a shuffled B.
    let mut bs: Vec<u32> = (b_start..b_start + b_count).collect();
    bs.shuffle(&mut rng);
    let mut next = bs.into_iter();
    let mut blue_edges = Vec::with_capacity(b_count as usize);
    for x in 0..a {
        let need = s - red_degree[x as usize];
        for _ in 0..need {
            let y = next.next().expect("|B| equals the number of blue stubs");
            blue_edges.push(EdgeKey::ordered(VertexId(x), VertexId(y)));
        }
    }
    debug_assert!(next.next().is_none());
    blue_edges.sort_unstable();
    edges.extend(blue_edges.iter().map(|e| (e.u().0, e.v().0)));

    let graph =
        Graph::from_edges(layout.vertex_count as usize, edges)?.with_shuffled_adjacency(&mut rng);
    Ok(AdversarialInstance {
        params,
        layout,
        graph,
        center: VertexId(center),
        red_edges,
        blue_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_forest;

    #[test]
    fn explicit_counts() {
        let inst = adversarial_instance(AdversarialParams::explicit(4, 3, 0)).unwrap();
        let l = inst.layout;
        assert_eq!(l.a_count, 12);
        assert_eq!(l.b_count, 40);
        assert_eq!(l.vertex_count, 316);
        assert_eq!(inst.graph.n(), 316);
        for v in inst.a_vertices() {
            assert_eq!(inst.graph.degree(v), 16);
        }
        for v in inst.b_vertices() {
            assert_eq!(inst.graph.degree(v), 4);
        }
        assert_eq!(inst.red_edges.len(), 4);
        assert!(inst.red_edges.iter().all(|e| e.contains(inst.center)));
        assert_eq!(inst.blue_edges.len(), 40);
        assert!(is_forest(&inst.graph));
        assert_eq!(
            inst.graph.m() as u64,
            l.black_edges + l.red_edges + l.blue_edges
        );
    }

    #[test]
    fn derived_parameters() {
        let l = AdversarialParams::derived(100_000_000, 2, 0).layout().unwrap();
        assert_eq!((l.s, l.t), (48, 52));
        assert_eq!(l.a_count, 2496);
        assert_eq!(l.b_count, 119_712);
        assert!(l.vertex_count < 100_000_000);
        assert!(matches!(
            AdversarialParams::derived(100_000, 2, 0).layout(),
            Err(Error::Infeasible(_))
        ));
        assert!(AdversarialParams::explicit(1, 3, 0).layout().is_err());
        assert!(AdversarialParams::explicit(2, 1, 0).layout().is_err());
    }

    #[test]
    fn adjacency_lists_are_shuffled() {
        let inst = adversarial_instance(AdversarialParams::explicit(4, 3, 9)).unwrap();
        let unsorted = inst
            .a_vertices()
            .any(|v| inst.graph.neighbors(v).windows(2).any(|w| w[0] > w[1]));
        assert!(unsorted);
    }

    #[test]
    fn seeds_move_the_center() {
        let centers: std::collections::HashSet<_> = (0..20)
            .map(|seed| {
                adversarial_instance(AdversarialParams::explicit(4, 3, seed))
                    .unwrap()
                    .center
            })
            .collect();
        assert!(centers.len() > 1);
    }
}
