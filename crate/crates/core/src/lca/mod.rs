//! Local computation algorithms for orientation and forest coloring.
//!
//! Every algorithm is a pure function of the probe session, the shared
//! [`RandomTape`], the query and [`OrientParams`]. A [`Scratch`] buffer may be
//! reused across queries to avoid reallocating; it is reset at the start of
//! each query and never carries information between them.

mod degree;
mod forest;

pub use degree::{orient_high_degree, orient_medium};
pub use forest::{color_forest, orient_bounded_forest, orient_color_forest, VertexColor};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedEdge, EdgeKey, VertexId};
use crate::oracle::ProbeSession;
use crate::randomness::RandomTape;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    HighDegree,
    Medium,
    ColorForest,
    BoundedForest,
    VertexColor,
}

impl Algorithm {
    pub const ORIENTATION: [Algorithm; 4] = [
        Algorithm::HighDegree,
        Algorithm::Medium,
        Algorithm::ColorForest,
        Algorithm::BoundedForest,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::HighDegree => "high-degree",
            Algorithm::Medium => "medium",
            Algorithm::ColorForest => "color-forest",
            Algorithm::BoundedForest => "bounded-forest",
            Algorithm::VertexColor => "vertex-color",
        }
    }

    pub fn requires_forest(self) -> bool {
        matches!(
            self,
            Algorithm::ColorForest | Algorithm::BoundedForest | Algorithm::VertexColor
        )
    }

    pub fn answers_edges(self) -> bool {
        self != Algorithm::VertexColor
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Algorithm::HighDegree,
            Algorithm::Medium,
            Algorithm::ColorForest,
            Algorithm::BoundedForest,
            Algorithm::VertexColor,
        ]
        .into_iter()
        .find(|a| a.id() == s)
        .ok_or_else(|| Error::invalid(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrientParams {
    pub n: usize,
    /// Declared arboricity.
    pub alpha: u32,
    /// Out-degree target.
    pub r: u32,
    /// Constant in the neighbor sample size of the medium-degree algorithm.
    pub c_sample: f64,
    /// Declared maximum degree, used by the bounded-forest algorithm.
    pub max_degree: Option<u32>,
    /// Number of edge labels for vertex coloring (`2^labels` colors).
    pub labels: u32,
}

impl OrientParams {
    pub const DEFAULT_C_SAMPLE: f64 = 1000.0;

    pub fn new(n: usize, r: u32) -> Self {
        OrientParams {
            n,
            alpha: 1,
            r,
            c_sample: Self::DEFAULT_C_SAMPLE,
            max_degree: None,
            labels: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::invalid("r must be at least 1"));
        }
        if self.alpha == 0 {
            return Err(Error::invalid("alpha must be at least 1"));
        }
        if !(self.c_sample >= 1.0) {
            return Err(Error::invalid("c_sample must be at least 1"));
        }
        if self.labels == 0 {
            return Err(Error::invalid("labels must be at least 1"));
        }
        Ok(())
    }

    /// Whether `r` lies in the range where the medium-degree algorithm's
    /// guarantee applies: `10 (alpha^2 n)^(1/3) <= r`.
    pub fn medium_regime_ok(&self) -> bool {
        let floor = 10.0 * ((self.alpha as f64).powi(2) * self.n as f64).cbrt();
        self.r as f64 >= floor
    }

    /// Classification used by the medium-degree algorithm, with `s = r / 10`
    /// kept exact: small iff `deg <= r`, large iff `deg >= alpha n / s`.
    pub fn medium_class(&self, degree: usize) -> VertexClass {
        let (d, r) = (degree as u128, self.r as u128);
        if d <= r {
            VertexClass::Small
        } else if d * r >= 10 * self.alpha as u128 * self.n as u128 {
            VertexClass::Large
        } else {
            VertexClass::Medium
        }
    }

    /// Large iff `deg >= 5n / r` (color-class forest algorithm).
    pub fn forest_is_large(&self, degree: usize) -> bool {
        degree as u128 * self.r as u128 >= 5 * self.n as u128
    }

    /// Palette of the color-class forest algorithm, `floor(r / 5)` but never empty.
    pub fn forest_palette(&self) -> u32 {
        (self.r / 5).max(1)
    }

    /// Neighbor samples drawn for a medium vertex of degree `d`:
    /// `ceil(c_sample * d * ln n / s)`, at least one.
    pub fn medium_samples(&self, d: usize) -> u64 {
        let s = self.r as f64 / 10.0;
        let ln_n = (self.n.max(2) as f64).ln();
        ((self.c_sample * d as f64 * ln_n / s).ceil() as u64).max(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexClass {
    Small,
    Medium,
    Large,
}

const NO_PARENT: u32 = u32::MAX;

/// Per-query working memory for component searches.
#[derive(Debug, Default)]
pub struct Scratch {
    mark: Vec<u32>,
    parent: Vec<u32>,
    epoch: u32,
    visited: Vec<VertexId>,
    stack: Vec<(VertexId, Option<usize>)>,
}

impl Scratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn begin(&mut self, n: usize) {
        if self.mark.len() < n {
            self.mark.resize(n, 0);
            self.parent.resize(n, NO_PARENT);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        self.visited.clear();
        self.stack.clear();
    }

    #[inline]
    fn seen(&self, v: VertexId) -> bool {
        self.mark[v.index()] == self.epoch
    }

    #[inline]
    fn enter(&mut self, v: VertexId, parent: Option<VertexId>, degree: Option<usize>) {
        self.mark[v.index()] = self.epoch;
        self.parent[v.index()] = parent.map_or(NO_PARENT, |p| p.0);
        self.visited.push(v);
        self.stack.push((v, degree));
    }

    #[inline]
    fn parent(&self, v: VertexId) -> Option<VertexId> {
        match self.parent[v.index()] {
            NO_PARENT => None,
            p => Some(VertexId(p)),
        }
    }
}

/// Runs one algorithm on edge queries, reusing scratch memory.
#[derive(Debug)]
pub struct Orienter {
    algorithm: Algorithm,
    params: OrientParams,
    tape: RandomTape,
    scratch: Scratch,
}

impl Orienter {
    pub fn new(algorithm: Algorithm, params: OrientParams, tape: RandomTape) -> Result<Self> {
        if !algorithm.answers_edges() {
            return Err(Error::invalid(format!("{algorithm} answers vertex queries")));
        }
        params.validate()?;
        Ok(Orienter {
            algorithm,
            params,
            tape,
            scratch: Scratch::new(),
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn params(&self) -> &OrientParams {
        &self.params
    }

    pub fn orient(&mut self, session: &mut ProbeSession<'_>, e: EdgeKey) -> Result<DirectedEdge> {
        match self.algorithm {
            Algorithm::HighDegree => orient_high_degree(session, e),
            Algorithm::Medium => orient_medium(session, &self.tape, e, &self.params),
            Algorithm::ColorForest => {
                orient_color_forest(session, &self.tape, e, &self.params, &mut self.scratch)
            }
            Algorithm::BoundedForest => {
                orient_bounded_forest(session, &self.tape, e, &self.params, &mut self.scratch)
            }
            Algorithm::VertexColor => unreachable!("rejected in Orienter::new"),
        }
    }
}

/// Runs the vertex-coloring algorithm on vertex queries.
#[derive(Debug)]
pub struct Colorer {
    params: OrientParams,
    tape: RandomTape,
    scratch: Scratch,
}

impl Colorer {
    pub fn new(params: OrientParams, tape: RandomTape) -> Result<Self> {
        params.validate()?;
        if params.labels > 64 {
            return Err(Error::invalid("at most 64 labels are supported"));
        }
        Ok(Colorer {
            params,
            tape,
            scratch: Scratch::new(),
        })
    }

    pub fn color(&mut self, session: &mut ProbeSession<'_>, v: VertexId) -> Result<VertexColor> {
        color_forest(session, &self.tape, v, &self.params, &mut self.scratch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_ids_round_trip() {
        for id in ["high-degree", "medium", "color-forest", "bounded-forest", "vertex-color"] {
            assert_eq!(id.parse::<Algorithm>().unwrap().id(), id);
        }
        assert!("peeling".parse::<Algorithm>().is_err());
    }

    #[test]
    fn medium_classes_use_exact_thresholds() {
        // n = 10^6, r = 10^4: s = 1000, large cutoff alpha n / s = 1000.
        let p = OrientParams::new(1_000_000, 10_000);
        assert_eq!(p.medium_class(2000), VertexClass::Small);
        assert_eq!(p.medium_class(10_000), VertexClass::Small);
        assert_eq!(p.medium_class(10_001), VertexClass::Large);
        // r < 10 keeps s fractional: r = 4, s = 0.4, cutoff n / 0.4 = 2.5 n.
        let p = OrientParams::new(100, 4);
        assert_eq!(p.medium_class(5), VertexClass::Medium);
        assert_eq!(p.medium_class(249), VertexClass::Medium);
        assert_eq!(p.medium_class(250), VertexClass::Large);
    }

    #[test]
    fn forest_thresholds() {
        let p = OrientParams::new(100_000, 100);
        assert_eq!(p.forest_palette(), 20);
        assert!(!p.forest_is_large(4999));
        assert!(p.forest_is_large(5000));
        assert_eq!(OrientParams::new(10, 3).forest_palette(), 1);
    }

    #[test]
    fn validation() {
        assert!(OrientParams::new(10, 0).validate().is_err());
        let mut p = OrientParams::new(10, 1);
        p.c_sample = 0.5;
        assert!(p.validate().is_err());
        assert!(Orienter::new(Algorithm::VertexColor, OrientParams::new(5, 2), RandomTape::new(0))
            .is_err());
    }

    #[test]
    fn medium_regime_floor() {
        let mut p = OrientParams::new(100_000, 465);
        assert!(p.medium_regime_ok());
        p.r = 464;
        assert!(!p.medium_regime_ok());
    }
}
