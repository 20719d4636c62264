//! Runs LCAs over whole inputs with one fresh probe session per query,
//! verifies their guarantees and aggregates probe statistics. Also hosts the
//! global baselines and exhaustive oracles used to validate them.

mod attack;
mod baseline;
mod census;
mod scaling;

pub use attack::{adversarial_attack, default_attack_budget, AttackReport, AttackStrategy};
pub use baseline::{brute_force_min_r, peeling_baseline, Peeling};
pub use census::{component_census, CensusMode, ComponentCensus};
pub use scaling::{loglog_fit, LogLogFit};

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::rng_for;
use crate::graph::{max_out_degree, DirectedEdge, EdgeKey, Graph, Orientation, VertexId};
use crate::lca::{Algorithm, Colorer, OrientParams, Orienter, VertexColor};
use crate::oracle::{ProbeSession, ProbeStats};
use crate::randomness::RandomTape;
use crate::unionfind::UnionFind;

/// Per-query probe distribution of one counter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ProbeDistribution {
    pub max: u64,
    pub mean: f64,
    pub p99: u64,
}

impl ProbeDistribution {
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        if counts.is_empty() {
            return Self::default();
        }
        let mean = counts.iter().sum::<u64>() as f64 / counts.len() as f64;
        let rank = (counts.len() * 99).div_ceil(100) - 1;
        let (_, &mut p99, _) = counts.select_nth_unstable(rank);
        let max = counts.into_iter().max().unwrap_or(0);
        ProbeDistribution { max, mean, p99 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub queries: u64,
    pub total: ProbeDistribution,
    pub degree: ProbeDistribution,
    pub adjacency_list: ProbeDistribution,
    pub adjacency_matrix: ProbeDistribution,
}

impl ProbeSummary {
    pub fn from_sessions(stats: &[ProbeStats]) -> Self {
        let pick = |f: fn(&ProbeStats) -> u64| {
            ProbeDistribution::from_counts(stats.iter().map(f).collect())
        };
        ProbeSummary {
            queries: stats.len() as u64,
            total: pick(|s| s.total),
            degree: pick(|s| s.degree),
            adjacency_list: pick(|s| s.adjacency_list),
            adjacency_matrix: pick(|s| s.adjacency_matrix),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
}

impl GraphInfo {
    pub fn of(g: &Graph) -> Self {
        GraphInfo {
            n: g.n(),
            m: g.m(),
            max_degree: g.max_degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationSummary {
    pub max_out_degree: u32,
    /// `histogram[d]` is the number of vertices with out-degree `d`.
    pub out_degree_histogram: Vec<u64>,
    pub out_degree_bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringSummary {
    pub colors_used: usize,
    pub palette: u64,
    pub proper: bool,
}

/// Wall-clock data, excluded when comparing reports for determinism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub params: OrientParams,
    pub seed: u64,
    pub graph: GraphInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<OrientationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringSummary>,
    pub probes: ProbeSummary,
    pub verdicts: Vec<Verdict>,
    pub timing: Timing,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// The out-degree each orientation algorithm promises.
pub fn out_degree_bound(algorithm: Algorithm, params: &OrientParams) -> u32 {
    match algorithm {
        Algorithm::HighDegree => {
            let two_alpha_n = 2 * params.alpha as u64 * params.n as u64;
            let root = two_alpha_n.isqrt();
            (if root * root == two_alpha_n { root } else { root + 1 }) as u32
        }
        _ => params.r,
    }
}

/// A vertex on a cycle of `g`, if there is one.
pub fn find_cycle_vertex(g: &Graph) -> Option<VertexId> {
    let mut uf = UnionFind::new(g.n());
    g.edges()
        .find(|e| !uf.union(e.u().index(), e.v().index()))
        .map(|e| e.u())
}

fn check_preconditions(g: &Graph, algorithm: Algorithm, params: &OrientParams) -> Result<()> {
    params.validate()?;
    if algorithm.requires_forest() {
        if let Some(v) = find_cycle_vertex(g) {
            return Err(Error::NotAForest(v));
        }
    }
    if algorithm == Algorithm::BoundedForest {
        if let Some(declared) = params.max_degree {
            if let Some(v) = g.vertices().find(|&v| g.degree(v) > declared as usize) {
                return Err(Error::DegreeExceeded {
                    vertex: v,
                    degree: g.degree(v),
                    declared,
                });
            }
        }
    }
    Ok(())
}

fn with_graph_n(g: &Graph, params: &OrientParams) -> OrientParams {
    OrientParams { n: g.n(), ..*params }
}

/// Answers the single query `e` in a fresh session.
pub fn orient_one(
    g: &Graph,
    algorithm: Algorithm,
    params: &OrientParams,
    seed: u64,
    e: EdgeKey,
) -> Result<(DirectedEdge, ProbeStats)> {
    if !g.has_edge(e.u(), e.v()) {
        return Err(Error::NotAnEdge(e));
    }
    let mut orienter = Orienter::new(algorithm, with_graph_n(g, params), RandomTape::new(seed))?;
    let mut session = ProbeSession::new(g);
    let d = orienter.orient(&mut session, e)?;
    Ok((d, session.snapshot()))
}

/// Orients every edge of `g` with an independent session per edge.
///
/// `params.n` is replaced by the vertex count of `g`. Forest and declared
/// degree preconditions are checked here, once, for the whole input.
pub fn run_orientation(
    g: &Graph,
    algorithm: Algorithm,
    params: &OrientParams,
    seed: u64,
) -> Result<(Orientation, RunReport)> {
    let start = Instant::now();
    let params = with_graph_n(g, params);
    check_preconditions(g, algorithm, &params)?;
    let mut orienter = Orienter::new(algorithm, params, RandomTape::new(seed))?;
    let mut arcs = Vec::with_capacity(g.m());
    let mut stats = Vec::with_capacity(g.m());
    for e in g.edges() {
        let mut session = ProbeSession::new(g);
        let arc = orienter.orient(&mut session, e).map_err(|source| Error::Query {
            edge: e,
            source: Box::new(source),
        })?;
        if arc.key() != e {
            return Err(Error::Coverage(format!("query {e} answered {arc}")));
        }
        arcs.push(arc);
        stats.push(session.snapshot());
    }
    let orientation = Orientation::from_arcs(arcs)?;
    orientation.check_covers(g)?;

    let summary = max_out_degree(&orientation, g.n());
    let bound = out_degree_bound(algorithm, &params);
    let verdicts = vec![
        Verdict {
            check: "covers every edge once".into(),
            pass: true,
            detail: format!("{} arcs", orientation.len()),
        },
        Verdict {
            check: "max out-degree within bound".into(),
            pass: summary.max <= bound,
            detail: format!("{} <= {bound}", summary.max),
        },
    ];
    let report = RunReport {
        algorithm,
        params,
        seed,
        graph: GraphInfo::of(g),
        orientation: Some(OrientationSummary {
            max_out_degree: summary.max,
            out_degree_histogram: summary.histogram,
            out_degree_bound: bound,
        }),
        coloring: None,
        probes: ProbeSummary::from_sessions(&stats),
        verdicts,
        timing: Timing {
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    };
    Ok((orientation, report))
}

/// Colors every vertex of the forest `g` with an independent session per
/// vertex and checks properness on every edge.
///
/// An improper edge is a hard error carrying the witness edge.
pub fn run_coloring(
    g: &Graph,
    params: &OrientParams,
    seed: u64,
) -> Result<(Vec<VertexColor>, RunReport)> {
    let start = Instant::now();
    let params = with_graph_n(g, params);
    check_preconditions(g, Algorithm::VertexColor, &params)?;
    let mut colorer = Colorer::new(params, RandomTape::new(seed))?;
    let mut colors = Vec::with_capacity(g.n());
    let mut stats = Vec::with_capacity(g.n());
    for v in g.vertices() {
        let mut session = ProbeSession::new(g);
        let c = colorer.color(&mut session, v).map_err(|source| Error::VertexQuery {
            vertex: v,
            source: Box::new(source),
        })?;
        colors.push(c);
        stats.push(session.snapshot());
    }
    if let Some(e) = g.edges().find(|e| colors[e.u().index()] == colors[e.v().index()]) {
        return Err(Error::ImproperColoring(e));
    }
    let used: BTreeSet<u64> = colors.iter().map(VertexColor::code).collect();
    let palette = 1u64 << params.labels;
    let report = RunReport {
        algorithm: Algorithm::VertexColor,
        params,
        seed,
        graph: GraphInfo::of(g),
        orientation: None,
        coloring: Some(ColoringSummary {
            colors_used: used.len(),
            palette,
            proper: true,
        }),
        probes: ProbeSummary::from_sessions(&stats),
        verdicts: vec![
            Verdict {
                check: "proper coloring".into(),
                pass: true,
                detail: format!("{} edges checked", g.m()),
            },
            Verdict {
                check: "colors within palette".into(),
                pass: used.len() as u64 <= palette,
                detail: format!("{} <= {palette}", used.len()),
            },
        ],
        timing: Timing {
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    };
    Ok((colors, report))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub sampled: usize,
    pub repeats: usize,
    /// True iff every repeat reproduced the first answer to every sampled query.
    pub consistent: bool,
    /// Sampled queries whose answer changes under a different random domain.
    /// Informational: deterministic algorithms never change.
    pub control_mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Answer {
    Arc(DirectedEdge),
    Color(VertexColor),
}

fn answer_all(
    g: &Graph,
    algorithm: Algorithm,
    params: &OrientParams,
    tape: RandomTape,
    edges: &[EdgeKey],
    vertices: &[VertexId],
) -> Result<Vec<Answer>> {
    if algorithm.answers_edges() {
        let mut orienter = Orienter::new(algorithm, *params, tape)?;
        edges
            .iter()
            .map(|&e| Ok(Answer::Arc(orienter.orient(&mut ProbeSession::new(g), e)?)))
            .collect()
    } else {
        let mut colorer = Colorer::new(*params, tape)?;
        vertices
            .iter()
            .map(|&v| Ok(Answer::Color(colorer.color(&mut ProbeSession::new(g), v)?)))
            .collect()
    }
}

/// Re-answers a random sample of up to `sample` queries `repeats` times with
/// fresh state and the same seed, and once more under a perturbed random
/// domain as a negative control.
pub fn consistency_check(
    g: &Graph,
    algorithm: Algorithm,
    params: &OrientParams,
    seed: u64,
    repeats: usize,
    sample: usize,
) -> Result<ConsistencyReport> {
    let params = with_graph_n(g, params);
    check_preconditions(g, algorithm, &params)?;
    let mut rng = rng_for(seed, "consistency");
    let (edges, vertices): (Vec<EdgeKey>, Vec<VertexId>) = if algorithm.answers_edges() {
        let all = g.edge_keys();
        let k = sample.min(all.len());
        let picked = index::sample(&mut rng, all.len(), k).into_iter().map(|i| all[i]);
        (picked.collect(), Vec::new())
    } else {
        let k = sample.min(g.n());
        let picked = index::sample(&mut rng, g.n(), k)
            .into_iter()
            .map(|i| VertexId(i as u32));
        (Vec::new(), picked.collect())
    };
    let tape = RandomTape::new(seed);
    let first = answer_all(g, algorithm, &params, tape, &edges, &vertices)?;
    let mut consistent = true;
    for _ in 1..repeats {
        consistent &= answer_all(g, algorithm, &params, tape, &edges, &vertices)? == first;
    }
    let control = answer_all(
        g,
        algorithm,
        &params,
        tape.with_domain("negative-control"),
        &edges,
        &vertices,
    )?;
    let control_mismatches = first.iter().zip(&control).filter(|(a, b)| a != b).count();
    Ok(ConsistencyReport {
        algorithm,
        seed,
        sampled: first.len(),
        repeats,
        consistent,
        control_mismatches,
    })
}
