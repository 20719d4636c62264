use crate::error::Result;
use crate::graph::{DirectedEdge, EdgeKey};
use crate::oracle::ProbeSession;
use crate::randomness::RandomTape;

use super::{OrientParams, VertexClass};

/// Directs `e` toward its higher-degree endpoint; on equal degrees, from the
/// higher ID to the lower. Two degree probes.
///
/// A vertex with out-degree `k` then has `k` neighbors of degree at least
/// `k`, so `k^2 <= 2m < 2 alpha n`.
pub fn orient_high_degree(session: &mut ProbeSession<'_>, e: EdgeKey) -> Result<DirectedEdge> {
    let (u, v) = (e.u(), e.v());
    let du = session.degree(u)?;
    let dv = session.degree(v)?;
    // `u` is the lower ID, so ties also point at `u`.
    Ok(if du >= dv {
        DirectedEdge::toward(e, u)
    } else {
        DirectedEdge::toward(e, v)
    })
}

/// Small/medium/large classification with neighbor sampling for
/// medium-medium edges.
///
/// Probes: 2 when either endpoint is small or large, otherwise `2 + 2k` with
/// `k` from [`OrientParams::medium_samples`].
pub fn orient_medium(
    session: &mut ProbeSession<'_>,
    tape: &RandomTape,
    e: EdgeKey,
    params: &OrientParams,
) -> Result<DirectedEdge> {
    let (u, v) = (e.u(), e.v());
    let du = session.degree(u)?;
    let dv = session.degree(v)?;
    let (cu, cv) = (params.medium_class(du), params.medium_class(dv));

    if cu == VertexClass::Small {
        return Ok(DirectedEdge::away_from(e, u));
    }
    if cv == VertexClass::Small {
        return Ok(DirectedEdge::away_from(e, v));
    }
    if cu == VertexClass::Large {
        return Ok(DirectedEdge::toward(e, u));
    }
    if cv == VertexClass::Large {
        return Ok(DirectedEdge::toward(e, v));
    }

    let k = params.medium_samples(du);
    let mut medium = 0u64;
    for trial in 0..k {
        let i = tape.sample_index(e, trial, du as u64)? as usize;
        let w = session.neighbor(u, i)?;
        let dw = session.degree(w)?;
        if params.medium_class(dw) == VertexClass::Medium {
            medium += 1;
        }
    }
    // medium / k <= 2s / d  with s = r / 10.
    let few_medium = 5 * medium as u128 * du as u128 <= params.r as u128 * k as u128;
    Ok(if few_medium {
        DirectedEdge::away_from(e, u)
    } else {
        DirectedEdge::toward(e, u)
    })
}
