use crate::error::{Error, Result};
use crate::graph::{DirectedEdge, EdgeKey, Graph, Orientation, VertexId};

#[derive(Clone, Debug)]
pub struct Peeling {
    pub orientation: Orientation,
    pub rounds: usize,
    /// `floor((2 + eps) alpha)`.
    pub threshold: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Alive,
    Peeling,
    Gone,
}

/// Global peeling: each round removes every remaining vertex of remaining
/// degree at most `(2 + eps) alpha` and orients its remaining edges away from
/// it. Edges between two vertices removed in the same round go from the lower
/// ID to the higher.
pub fn peeling_baseline(g: &Graph, alpha: u32, eps: f64) -> Result<Peeling> {
    if alpha == 0 || !(eps > 0.0) {
        return Err(Error::invalid("peeling needs alpha >= 1 and eps > 0"));
    }
    let threshold = ((2.0 + eps) * alpha as f64).floor() as usize;
    let mut degree = g.degrees();
    let mut state = vec![State::Alive; g.n()];
    let mut alive: Vec<VertexId> = g.vertices().collect();
    let mut arcs = Vec::with_capacity(g.m());
    let mut rounds = 0;
    while !alive.is_empty() {
        rounds += 1;
        let (peel, keep): (Vec<VertexId>, Vec<VertexId>) =
            alive.iter().partition(|v| degree[v.index()] <= threshold);
        if peel.is_empty() {
            return Err(Error::PeelingStalled {
                round: rounds,
                remaining: keep.len(),
                alpha,
            });
        }
        for &x in &peel {
            state[x.index()] = State::Peeling;
        }
        for &x in &peel {
            for &w in g.neighbors(x) {
                let e = EdgeKey::ordered(x, w);
                match state[w.index()] {
                    State::Alive => {
                        arcs.push(DirectedEdge::away_from(e, x));
                        degree[w.index()] -= 1;
                    }
                    State::Peeling if x < w => arcs.push(DirectedEdge::new(x, w)),
                    _ => {}
                }
            }
        }
        for &x in &peel {
            state[x.index()] = State::Gone;
        }
        alive = keep;
    }
    Ok(Peeling {
        orientation: Orientation::from_arcs(arcs)?,
        rounds,
        threshold: threshold as u32,
    })
}

pub const BRUTE_FORCE_MAX_VERTICES: usize = 12;
pub const BRUTE_FORCE_MAX_EDGES: usize = 16;

/// Minimum over all `2^m` orientations of the maximum out-degree.
pub fn brute_force_min_r(g: &Graph) -> Result<u32> {
    if g.n() > BRUTE_FORCE_MAX_VERTICES || g.m() > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::TooLarge(format!(
            "{} vertices and {} edges; the cap is {BRUTE_FORCE_MAX_VERTICES} and {BRUTE_FORCE_MAX_EDGES}",
            g.n(),
            g.m()
        )));
    }
    let edges = g.edge_keys();
    let mut best = u32::MAX;
    let mut out = vec![0u32; g.n()];
    for mask in 0u32..(1 << edges.len()) {
        out.iter_mut().for_each(|d| *d = 0);
        for (i, e) in edges.iter().enumerate() {
            let tail = if mask >> i & 1 == 0 { e.u() } else { e.v() };
            out[tail.index()] += 1;
        }
        best = best.min(out.iter().copied().max().unwrap_or(0));
    }
    Ok(best)
}
