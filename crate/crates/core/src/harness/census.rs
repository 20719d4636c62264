use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::keeps;
use crate::graph::{EdgeKey, Graph};
use crate::randomness::{RandomTape, PERCOLATE};

/// How edges are split into classes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CensusMode {
    /// Uniform color from `palette` colors, the same coloring the
    /// bounded-forest algorithm uses. Each class has density `1 / palette`.
    Palette { palette: u32 },
    /// A single class keeping each edge with probability `p`.
    Keep { p: f64 },
}

impl CensusMode {
    pub fn density(&self) -> f64 {
        match *self {
            CensusMode::Palette { palette } => 1.0 / palette as f64,
            CensusMode::Keep { p } => p,
        }
    }

    fn classes(&self) -> u32 {
        match *self {
            CensusMode::Palette { palette } => palette,
            CensusMode::Keep { .. } => 1,
        }
    }

    fn class_of(&self, tape: &RandomTape, e: EdgeKey) -> Result<Option<u32>> {
        Ok(match *self {
            CensusMode::Palette { palette } => Some(tape.edge_color(e, palette)?),
            CensusMode::Keep { p } => keeps(tape, PERCOLATE, e, p).then_some(0),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentCensus {
    pub mode: CensusMode,
    pub seed: u64,
    pub n: usize,
    pub delta: u32,
    pub eps: f64,
    /// Component sizes per class, largest first. Only vertices touched by an
    /// edge of the class are counted.
    pub sizes: Vec<Vec<u32>>,
    /// Vertices touched by each class.
    pub touched: Vec<u64>,
    /// Largest component over all classes; an untouched vertex counts as 1.
    pub max_component: u32,
    /// `n^(1 + log_delta(p) + eps)`.
    pub bound: f64,
    /// Whether `p >= delta^(-1 + eps)`, the range where the bound is claimed.
    pub bound_applies: bool,
    pub exceeds_bound: bool,
}

fn concentration_bound(n: usize, p: f64, delta: u32, eps: f64) -> f64 {
    if p <= 0.0 {
        return 1.0;
    }
    let exponent = 1.0 + p.ln() / (delta as f64).ln() + eps;
    (n as f64).powf(exponent).max(1.0)
}

/// Sizes of all connected components of each edge class of the forest `g`,
/// computed by breadth-first search.
pub fn component_census(
    g: &Graph,
    mode: CensusMode,
    seed: u64,
    delta: u32,
    eps: f64,
) -> Result<ComponentCensus> {
    match mode {
        CensusMode::Palette { palette } if palette == 0 => {
            return Err(Error::invalid("palette must be at least 1"))
        }
        CensusMode::Keep { p } if !(0.0..=1.0).contains(&p) => {
            return Err(Error::invalid(format!("keep probability {p} not in [0, 1]")))
        }
        _ => {}
    }
    if delta < 2 {
        return Err(Error::invalid("delta must be at least 2"));
    }
    let tape = RandomTape::new(seed);
    let classes = mode.classes() as usize;
    let mut by_class: Vec<Vec<EdgeKey>> = vec![Vec::new(); classes];
    for e in g.edges() {
        if let Some(c) = mode.class_of(&tape, e)? {
            by_class[c as usize].push(e);
        }
    }

    let mut mark = vec![u32::MAX; g.n()];
    let mut queue = Vec::new();
    let mut sizes = Vec::with_capacity(classes);
    let mut touched = Vec::with_capacity(classes);
    for (c, edges) in by_class.iter().enumerate() {
        let c = c as u32;
        let mut class_sizes = Vec::new();
        for e in edges {
            let root = e.u();
            if mark[root.index()] == c {
                continue;
            }
            mark[root.index()] = c;
            queue.clear();
            queue.push(root);
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for &w in g.neighbors(x) {
                    if mark[w.index()] != c
                        && mode.class_of(&tape, EdgeKey::ordered(x, w))? == Some(c)
                    {
                        mark[w.index()] = c;
                        queue.push(w);
                    }
                }
            }
            class_sizes.push(queue.len() as u32);
        }
        class_sizes.sort_unstable_by(|a, b| b.cmp(a));
        touched.push(class_sizes.iter().map(|&s| s as u64).sum());
        sizes.push(class_sizes);
    }

    let max_component = sizes
        .iter()
        .filter_map(|s| s.first().copied())
        .max()
        .unwrap_or(0)
        .max(u32::from(g.n() > 0));
    let p = mode.density();
    let bound = concentration_bound(g.n(), p, delta, eps);
    Ok(ComponentCensus {
        mode,
        seed,
        n: g.n(),
        delta,
        eps,
        sizes,
        touched,
        max_component,
        bound,
        bound_applies: p >= (delta as f64).powf(-1.0 + eps),
        exceeds_bound: max_component as f64 > bound,
    })
}
