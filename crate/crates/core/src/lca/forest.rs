//! Forest algorithms built on one primitive: explore the connected component
//! of a vertex inside one color class of the randomly colored edges, then
//! root that component at its minimum-ID vertex.
//!
//! Rooting at the minimum ID gives every vertex at most one out-edge per
//! color class (the edge to its parent), and every query touching the same
//! component agrees on the root.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedEdge, EdgeKey, VertexId};
use crate::oracle::ProbeSession;
use crate::randomness::{Context, RandomTape, EDGE_COLOR, VERTEX_COLOR};

use super::{OrientParams, Scratch};

#[derive(Clone, Copy)]
struct ColorClass {
    ctx: Context,
    palette: u32,
    color: u32,
}

/// Depth-first search from `root` over edges of `class`, scanning the full
/// neighbor list of every entered vertex. With `stop_large` set, a neighbor
/// is entered only after a degree probe shows it is not large. `known`
/// carries degrees this query already probed.
fn explore(
    session: &mut ProbeSession<'_>,
    scratch: &mut Scratch,
    tape: &RandomTape,
    class: ColorClass,
    root: VertexId,
    known: &[(VertexId, usize)],
    stop_large: Option<&OrientParams>,
) -> Result<()> {
    let cached = |x: VertexId| known.iter().find(|(y, _)| *y == x).map(|&(_, d)| d);
    scratch.begin(session.n());
    scratch.enter(root, None, cached(root));
    while let Some((x, degree)) = scratch.stack.pop() {
        let degree = match degree {
            Some(d) => d,
            None => session.degree(x)?,
        };
        let parent = scratch.parent(x);
        for i in 0..degree {
            let w = session.neighbor(x, i)?;
            if Some(w) == parent {
                continue;
            }
            if tape.pair_color(class.ctx, EdgeKey::ordered(x, w), class.palette)? != class.color {
                continue;
            }
            if scratch.seen(w) {
                return Err(Error::NotAForest(root));
            }
            let dw = match stop_large {
                Some(params) => {
                    let dw = match cached(w) {
                        Some(d) => d,
                        None => session.degree(w)?,
                    };
                    if params.forest_is_large(dw) {
                        continue;
                    }
                    Some(dw)
                }
                None => None,
            };
            scratch.enter(w, Some(x), dw);
        }
    }
    Ok(())
}

fn component_min(scratch: &Scratch) -> VertexId {
    *scratch.visited.iter().min().expect("root is always visited")
}

/// Orients `e = {u, v}` toward the minimum-ID vertex of the component just
/// explored from `u`.
fn toward_component_min(scratch: &Scratch, e: EdgeKey) -> Result<DirectedEdge> {
    let (u, v) = (e.u(), e.v());
    if !scratch.seen(v) || scratch.parent(v) != Some(u) {
        return Err(Error::NotAnEdge(e));
    }
    let mut x = component_min(scratch);
    while x != u {
        if x == v {
            return Ok(DirectedEdge::toward(e, v));
        }
        x = scratch.parent(x).expect("walk ends at the root");
    }
    Ok(DirectedEdge::toward(e, u))
}

/// Color-class orientation for forests of any degree.
///
/// Edges at a large vertex (degree at least `5n / r`) point at it; every other
/// edge is oriented inside its color class (`floor(r / 5)` colors), whose
/// search never enters a large vertex.
pub fn orient_color_forest(
    session: &mut ProbeSession<'_>,
    tape: &RandomTape,
    e: EdgeKey,
    params: &OrientParams,
    scratch: &mut Scratch,
) -> Result<DirectedEdge> {
    let (u, v) = (e.u(), e.v());
    let du = session.degree(u)?;
    let dv = session.degree(v)?;
    if params.forest_is_large(du) {
        return Ok(DirectedEdge::toward(e, u));
    }
    if params.forest_is_large(dv) {
        return Ok(DirectedEdge::toward(e, v));
    }
    let palette = params.forest_palette();
    let class = ColorClass {
        ctx: EDGE_COLOR,
        palette,
        color: tape.edge_color(e, palette)?,
    };
    explore(
        session,
        scratch,
        tape,
        class,
        u,
        &[(u, du), (v, dv)],
        Some(params),
    )?;
    toward_component_min(scratch, e)
}

/// `r`-color orientation of a bounded-degree forest. Every vertex ends with
/// at most one out-edge per color, so at most `r` in total.
///
/// If the declared maximum degree is at most `r`, any orientation works and
/// the edge is pointed at its lower ID without probing.
pub fn orient_bounded_forest(
    session: &mut ProbeSession<'_>,
    tape: &RandomTape,
    e: EdgeKey,
    params: &OrientParams,
    scratch: &mut Scratch,
) -> Result<DirectedEdge> {
    if params.max_degree.is_some_and(|delta| params.r >= delta) {
        return Ok(DirectedEdge::toward(e, e.u()));
    }
    let class = ColorClass {
        ctx: EDGE_COLOR,
        palette: params.r,
        color: tape.edge_color(e, params.r)?,
    };
    explore(session, scratch, tape, class, e.u(), &[], None)?;
    toward_component_min(scratch, e)
}

/// A product color: one entry in `{1, 2}` per edge label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexColor(pub Vec<u8>);

impl VertexColor {
    /// Packs the tuple into bits (`1 -> 0`, `2 -> 1`), label 0 lowest.
    pub fn code(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| acc | (u64::from(c == 2) << i))
    }
}

impl fmt::Display for VertexColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Vertex query: for each of `params.labels` edge labels, 2-colors `v`'s
/// component in that label class by parity of the distance to the
/// component's minimum-ID vertex (which gets color 1).
pub fn color_forest(
    session: &mut ProbeSession<'_>,
    tape: &RandomTape,
    v: VertexId,
    params: &OrientParams,
    scratch: &mut Scratch,
) -> Result<VertexColor> {
    let mut colors = Vec::with_capacity(params.labels as usize);
    for label in 0..params.labels {
        let class = ColorClass {
            ctx: VERTEX_COLOR,
            palette: params.labels,
            color: label,
        };
        explore(session, scratch, tape, class, v, &[], None)?;
        let mut x = component_min(scratch);
        let mut depth = 0usize;
        while x != v {
            x = scratch.parent(x).expect("walk ends at the root");
            depth += 1;
        }
        colors.push(1 + (depth % 2) as u8);
    }
    Ok(VertexColor(colors))
}
