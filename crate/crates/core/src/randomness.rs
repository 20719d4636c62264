//! Shared randomness as a keyed hash.
//!
//! Every read is a pure function of `(seed, domain, context, args)`, so any
//! number of independent queries see the same "random string" without
//! storing it. Contexts separate the streams used by different algorithms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EdgeKey;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
#[inline]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub const fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut i = 0;
    while i < bytes.len() {
        h ^= bytes[i] as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
        i += 1;
    }
    h
}

/// A named stream of the tape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Context(u64);

impl Context {
    pub const fn new(label: &str) -> Self {
        Context(fnv1a64(label.as_bytes()))
    }
}

/// Edge colors used by the orientation algorithms.
pub const EDGE_COLOR: Context = Context::new("edge-color");
/// Edge labels used by the vertex-coloring algorithm.
pub const VERTEX_COLOR: Context = Context::new("vcolor");
/// Neighbor samples of the medium-degree algorithm.
pub const NEIGHBOR_SAMPLE: Context = Context::new("neighbor-sample");
/// Edge percolation.
pub const PERCOLATE: Context = Context::new("percolate");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomTape {
    seed: u64,
    domain: u64,
}

impl RandomTape {
    pub fn new(seed: u64) -> Self {
        RandomTape { seed, domain: 0 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An unrelated tape with the same seed.
    pub fn with_domain(&self, label: &str) -> Self {
        RandomTape {
            seed: self.seed,
            domain: mix64(self.domain ^ fnv1a64(label.as_bytes())),
        }
    }

    #[inline]
    fn key(&self, ctx: Context) -> u64 {
        mix64(mix64(self.seed ^ self.domain.rotate_left(17)) ^ ctx.0)
    }

    pub fn uniform_word(&self, ctx: Context, args: &[u64]) -> u64 {
        let mut h = self.key(ctx);
        for (i, &a) in args.iter().enumerate() {
            h = mix64(h ^ mix64(a.wrapping_add(GOLDEN.wrapping_mul(i as u64 + 1))));
        }
        mix64(h ^ args.len() as u64)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn uniform_f64(&self, ctx: Context, args: &[u64]) -> f64 {
        (self.uniform_word(ctx, args) >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[0, bound)`. Draws are rejected below `2^64 mod bound`;
    /// retries append a sub-draw index to `args`, so the result stays a pure
    /// function of the inputs.
    pub fn bounded(&self, ctx: Context, args: &[u64], bound: u64) -> Result<u64> {
        if bound == 0 {
            return Err(Error::invalid("bound must be at least 1"));
        }
        if bound == 1 {
            return Ok(0);
        }
        let threshold = bound.wrapping_neg() % bound;
        let mut buf = [0u64; 8];
        assert!(args.len() < buf.len(), "too many arguments");
        buf[..args.len()].copy_from_slice(args);
        let k = args.len();
        for sub in 0u64.. {
            buf[k] = sub;
            let w = self.uniform_word(ctx, &buf[..=k]);
            if w >= threshold {
                return Ok(w % bound);
            }
        }
        unreachable!()
    }

    /// Color of a vertex pair (edge or not) in `[0, palette)`.
    #[inline]
    pub fn edge_color(&self, pair: EdgeKey, palette: u32) -> Result<u32> {
        self.pair_color(EDGE_COLOR, pair, palette)
    }

    #[inline]
    pub fn pair_color(&self, ctx: Context, pair: EdgeKey, palette: u32) -> Result<u32> {
        self.bounded(ctx, &[pair.u().0 as u64, pair.v().0 as u64], palette as u64)
            .map(|c| c as u32)
    }

    /// The `trial`-th with-replacement draw from `[0, bound)` owned by `edge`.
    pub fn sample_index(&self, edge: EdgeKey, trial: u64, bound: u64) -> Result<u64> {
        self.bounded(
            NEIGHBOR_SAMPLE,
            &[edge.u().0 as u64, edge.v().0 as u64, trial],
            bound,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(a: u32, b: u32) -> EdgeKey {
        EdgeKey::new(a, b).unwrap()
    }

    #[test]
    fn single_color_palette() {
        let t = RandomTape::new(9);
        for a in 0..50 {
            assert_eq!(t.edge_color(key(a, a + 1), 1).unwrap(), 0);
        }
        assert!(t.edge_color(key(0, 1), 0).is_err());
    }

    #[test]
    fn reads_are_pure() {
        let t1 = RandomTape::new(123);
        let t2 = RandomTape::new(123);
        for a in 0..100 {
            let e = key(a, 1000 - a);
            assert_eq!(t1.edge_color(e, 7).unwrap(), t2.edge_color(e, 7).unwrap());
            assert_eq!(
                t1.sample_index(e, 5, 13).unwrap(),
                t2.sample_index(e, 5, 13).unwrap()
            );
        }
        assert_eq!(
            t1.uniform_word(PERCOLATE, &[1, 2, 3]),
            t2.uniform_word(PERCOLATE, &[1, 2, 3])
        );
    }

    #[test]
    fn color_ignores_endpoint_order() {
        let t = RandomTape::new(5);
        for a in 0..200u32 {
            let b = a * 7 + 1;
            assert_eq!(
                t.edge_color(key(a, b), 11).unwrap(),
                t.edge_color(key(b, a), 11).unwrap()
            );
        }
    }

    #[test]
    fn unit_bound_always_zero() {
        let t = RandomTape::new(0);
        for trial in 0..100 {
            assert_eq!(t.sample_index(key(3, 4), trial, 1).unwrap(), 0);
        }
        assert!(t.sample_index(key(3, 4), 0, 0).is_err());
    }

    #[test]
    fn domains_and_seeds_change_the_stream() {
        let t = RandomTape::new(1);
        let u = t.with_domain("other");
        let w = RandomTape::new(2);
        let differs = |a: &RandomTape, b: &RandomTape| {
            (0..64).any(|i| a.uniform_word(EDGE_COLOR, &[i]) != b.uniform_word(EDGE_COLOR, &[i]))
        };
        assert!(differs(&t, &u));
        assert!(differs(&t, &w));
        assert_eq!(t.with_domain("other"), u);
    }

    #[test]
    fn argument_count_matters() {
        let t = RandomTape::new(1);
        assert_ne!(t.uniform_word(EDGE_COLOR, &[0]), t.uniform_word(EDGE_COLOR, &[0, 0]));
        assert_ne!(t.uniform_word(EDGE_COLOR, &[]), t.uniform_word(EDGE_COLOR, &[0]));
    }
}
