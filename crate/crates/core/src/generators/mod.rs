//! Test-graph generators. All of them are deterministic per seed.

mod adversarial;

pub use adversarial::{
    adversarial_instance, AdversarialInstance, AdversarialLayout, AdversarialParams,
    AdversarialShape,
};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph};
use crate::randomness::{fnv1a64, mix64, Context, RandomTape};

/// Generator RNG for `(seed, purpose)`; distinct purposes give unrelated streams.
pub fn rng_for(seed: u64, purpose: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix64(seed ^ fnv1a64(purpose.as_bytes())))
}

/// Decodes a Prüfer sequence over `0..n` (`seq.len() == n - 2`) into the
/// edges of the labeled tree it encodes.
pub fn prufer_decode(seq: &[u32], n: usize) -> Vec<(u32, u32)> {
    if n <= 1 {
        return Vec::new();
    }
    assert_eq!(seq.len(), n - 2, "Prüfer sequence length must be n - 2");
    let mut degree = vec![1u32; n];
    for &x in seq {
        degree[x as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for &x in seq {
        let x = x as usize;
        edges.push((leaf as u32, x as u32));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf as u32, n as u32 - 1));
    edges
}

/// Uniformly random labeled tree on `n` vertices.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("random_tree needs n >= 1"));
    }
    let mut rng = rng_for(seed, "random-tree");
    let seq: Vec<u32> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n as u32))
        .collect();
    Graph::from_edges(n, prufer_decode(&seq, n))
}

/// Random tree of maximum degree at most `max_degree`: vertex `i` attaches to
/// a uniformly chosen earlier vertex that still has spare degree.
pub fn random_bounded_tree(n: usize, max_degree: usize, seed: u64) -> Result<Graph> {
    if n == 0 || max_degree < 2 {
        return Err(Error::invalid(
            "random_bounded_tree needs n >= 1 and max degree >= 2",
        ));
    }
    let mut rng = rng_for(seed, "random-bounded-tree");
    let mut open: Vec<u32> = vec![0];
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    for i in 1..n as u32 {
        let slot = rng.gen_range(0..open.len());
        let parent = open[slot];
        edges.push((parent, i));
        degree[parent as usize] += 1;
        degree[i as usize] = 1;
        if degree[parent as usize] == max_degree {
            open.swap_remove(slot);
        }
        open.push(i);
    }
    Graph::from_edges(n, edges)
}

/// Breadth-first filled tree where every vertex has `max_degree - 1` children
/// (the last level possibly partial), with vertex IDs randomly permuted.
pub fn bushy_tree(n: usize, max_degree: usize, seed: u64) -> Result<Graph> {
    if n == 0 || max_degree < 2 {
        return Err(Error::invalid("bushy_tree needs n >= 1 and max degree >= 2"));
    }
    let arity = max_degree - 1;
    let mut ids: Vec<u32> = (0..n as u32).collect();
    ids.shuffle(&mut rng_for(seed, "bushy-tree"));
    let edges = (1..n).map(|i| (ids[(i - 1) / arity], ids[i]));
    Graph::from_edges(n, edges)
}

/// Renames vertex `v` to `perm[v]`.
pub fn relabel(g: &Graph, perm: &[u32]) -> Result<Graph> {
    if perm.len() != g.n() {
        return Err(Error::invalid("permutation length differs from n"));
    }
    let mut seen = vec![false; g.n()];
    for &p in perm {
        if p as usize >= g.n() || std::mem::replace(&mut seen[p as usize], true) {
            return Err(Error::invalid("not a permutation"));
        }
    }
    Graph::from_edges(
        g.n(),
        g.edges()
            .map(|e| (perm[e.u().index()], perm[e.v().index()])),
    )
}

/// Relabels `g` by a uniformly random permutation.
pub fn shuffle_ids(g: &Graph, seed: u64) -> Result<Graph> {
    let mut perm: Vec<u32> = (0..g.n() as u32).collect();
    perm.shuffle(&mut rng_for(seed, "shuffle-ids"));
    relabel(g, &perm)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NamedFamily {
    /// `n` vertices in a line.
    Path { n: usize },
    /// Center 0 joined to `leaves` leaves.
    Star { leaves: usize },
    /// Complete `d`-ary tree with levels `0..=depth`, numbered breadth-first.
    CompleteDary { d: usize, depth: u32 },
    /// Path of `spine` vertices, each with `legs` pendant leaves.
    Caterpillar { spine: usize, legs: usize },
    /// Path of `handle` vertices whose last vertex carries `bristles` leaves.
    Broom { handle: usize, bristles: usize },
}

pub fn named_family(family: NamedFamily) -> Result<Graph> {
    match family {
        NamedFamily::Path { n } => {
            if n == 0 {
                return Err(Error::invalid("path needs n >= 1"));
            }
            Graph::from_edges(n, (1..n as u32).map(|i| (i - 1, i)))
        }
        NamedFamily::Star { leaves } => {
            Graph::from_edges(leaves + 1, (1..=leaves as u32).map(|l| (0, l)))
        }
        NamedFamily::CompleteDary { d, depth } => {
            if d == 0 {
                return Err(Error::invalid("complete_dary needs d >= 1"));
            }
            let mut n: usize = 0;
            let mut level: usize = 1;
            for _ in 0..=depth {
                n = n
                    .checked_add(level)
                    .ok_or_else(|| Error::invalid("complete_dary is too large"))?;
                level = level.saturating_mul(d);
            }
            Graph::from_edges(n, (1..n).map(|i| (((i - 1) / d) as u32, i as u32)))
        }
        NamedFamily::Caterpillar { spine, legs } => {
            if spine == 0 {
                return Err(Error::invalid("caterpillar needs spine >= 1"));
            }
            let n = spine * (legs + 1);
            let spine_edges = (1..spine as u32).map(|i| (i - 1, i));
            let leg_edges = (0..spine * legs)
                .map(move |j| ((j / legs) as u32, (spine + j) as u32));
            Graph::from_edges(n, spine_edges.chain(leg_edges))
        }
        NamedFamily::Broom { handle, bristles } => {
            if handle == 0 {
                return Err(Error::invalid("broom needs handle >= 1"));
            }
            let n = handle + bristles;
            let tip = handle as u32 - 1;
            let handle_edges = (1..handle as u32).map(|i| (i - 1, i));
            let bristle_edges = (handle as u32..n as u32).map(move |b| (tip, b));
            Graph::from_edges(n, handle_edges.chain(bristle_edges))
        }
    }
}

/// A graph together with forests whose union is exactly its edge set.
#[derive(Clone, Debug)]
pub struct ArboricityWitness {
    pub graph: Graph,
    pub forests: Vec<Vec<EdgeKey>>,
}

/// Union of `alpha` independent uniformly random spanning trees on `0..n`.
pub fn arboricity_union(n: usize, alpha: u32, seed: u64) -> Result<ArboricityWitness> {
    if alpha == 0 || n == 0 {
        return Err(Error::invalid("arboricity_union needs alpha >= 1 and n >= 1"));
    }
    let mut seen = std::collections::HashSet::new();
    let mut forests = Vec::with_capacity(alpha as usize);
    for i in 0..alpha as u64 {
        let tree = random_tree(n, mix64(seed ^ i.wrapping_mul(0x2545_f491_4f6c_dd1d)))?;
        forests.push(tree.edges().filter(|&e| seen.insert(e)).collect::<Vec<_>>());
    }
    let graph = Graph::from_edges(
        n,
        forests
            .iter()
            .flatten()
            .map(|e| (e.u().0, e.v().0)),
    )?;
    Ok(ArboricityWitness { graph, forests })
}

/// Keeps each edge independently with probability `p_keep`, decided by the
/// shared tape so the subset is reproducible.
pub fn percolate(g: &Graph, p_keep: f64, tape: &RandomTape, ctx: Context) -> Result<Vec<EdgeKey>> {
    if !(0.0..=1.0).contains(&p_keep) {
        return Err(Error::invalid(format!("keep probability {p_keep} not in [0, 1]")));
    }
    Ok(g.edges()
        .filter(|e| keeps(tape, ctx, *e, p_keep))
        .collect())
}

#[inline]
pub(crate) fn keeps(tape: &RandomTape, ctx: Context, e: EdgeKey, p_keep: f64) -> bool {
    tape.uniform_f64(ctx, &[e.u().0 as u64, e.v().0 as u64]) < p_keep
}
