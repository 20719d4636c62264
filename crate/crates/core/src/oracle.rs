//! Probe-accounted access to a [`Graph`].
//!
//! A [`ProbeSession`] is the only handle an LCA gets on its input. It answers
//! degree, `i`-th neighbor and adjacency-matrix probes, charging one unit per
//! call with no caching. The vertex count is known up front and costs nothing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    Degree,
    AdjacencyList,
    AdjacencyMatrix,
}

impl ProbeKind {
    pub const ALL: [ProbeKind; 3] = [
        ProbeKind::Degree,
        ProbeKind::AdjacencyList,
        ProbeKind::AdjacencyMatrix,
    ];

    fn slot(self) -> usize {
        match self {
            ProbeKind::Degree => 0,
            ProbeKind::AdjacencyList => 1,
            ProbeKind::AdjacencyMatrix => 2,
        }
    }
}

/// Snapshot of a session's counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeStats {
    pub degree: u64,
    pub adjacency_list: u64,
    pub adjacency_matrix: u64,
    pub total: u64,
}

impl ProbeStats {
    pub fn get(&self, kind: ProbeKind) -> u64 {
        match kind {
            ProbeKind::Degree => self.degree,
            ProbeKind::AdjacencyList => self.adjacency_list,
            ProbeKind::AdjacencyMatrix => self.adjacency_matrix,
        }
    }
}

/// One answered probe, kept when a session records its transcript.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeRecord {
    Degree { v: VertexId, degree: usize },
    Neighbor { v: VertexId, index: usize, neighbor: VertexId },
    Adjacent { u: VertexId, v: VertexId, edge: bool },
}

#[derive(Debug)]
pub struct ProbeSession<'g> {
    graph: &'g Graph,
    counts: [u64; 3],
    total: u64,
    budget: Option<u64>,
    transcript: Option<Vec<ProbeRecord>>,
}

impl<'g> ProbeSession<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        ProbeSession {
            graph,
            counts: [0; 3],
            total: 0,
            budget: None,
            transcript: None,
        }
    }

    /// A session that refuses the `budget + 1`-th probe.
    pub fn with_budget(graph: &'g Graph, budget: u64) -> Self {
        ProbeSession {
            budget: Some(budget),
            ..Self::new(graph)
        }
    }

    pub fn recording(mut self) -> Self {
        self.transcript = Some(Vec::new());
        self
    }

    /// Number of vertices; known to the algorithm without probing.
    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    #[inline]
    fn charge(&mut self, kind: ProbeKind) -> Result<()> {
        if let Some(budget) = self.budget {
            if self.total >= budget {
                return Err(Error::BudgetExhausted { budget });
            }
        }
        self.counts[kind.slot()] += 1;
        self.total += 1;
        Ok(())
    }

    #[inline]
    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.graph.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v.0 as u64,
                n: self.graph.n(),
            })
        }
    }

    #[inline]
    pub fn degree(&mut self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        self.charge(ProbeKind::Degree)?;
        let degree = self.graph.degree(v);
        if let Some(t) = &mut self.transcript {
            t.push(ProbeRecord::Degree { v, degree });
        }
        Ok(degree)
    }

    /// The `index`-th entry (0-based) of `v`'s neighbor list.
    #[inline]
    pub fn neighbor(&mut self, v: VertexId, index: usize) -> Result<VertexId> {
        self.check_vertex(v)?;
        let list = self.graph.neighbors(v);
        if index >= list.len() {
            return Err(Error::NeighborIndexOutOfRange {
                vertex: v,
                index,
                degree: list.len(),
            });
        }
        let neighbor = list[index];
        self.charge(ProbeKind::AdjacencyList)?;
        if let Some(t) = &mut self.transcript {
            t.push(ProbeRecord::Neighbor { v, index, neighbor });
        }
        Ok(neighbor)
    }

    pub fn adjacent(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.charge(ProbeKind::AdjacencyMatrix)?;
        let edge = self.graph.has_edge(u, v);
        if let Some(t) = &mut self.transcript {
            t.push(ProbeRecord::Adjacent { u, v, edge });
        }
        Ok(edge)
    }

    pub fn snapshot(&self) -> ProbeStats {
        ProbeStats {
            degree: self.counts[0],
            adjacency_list: self.counts[1],
            adjacency_matrix: self.counts[2],
            total: self.total,
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn transcript(&self) -> Option<&[ProbeRecord]> {
        self.transcript.as_deref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn degree_probes_are_charged_every_time() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let mut s = ProbeSession::new(&g);
        assert_eq!(s.degree(VertexId(1)).unwrap(), 2);
        assert_eq!(s.degree(VertexId(3)).unwrap(), 0);
        assert_eq!(s.snapshot().degree, 2);
        s.degree(VertexId(1)).unwrap();
        s.degree(VertexId(1)).unwrap();
        assert_eq!(s.snapshot().degree, 4);
    }

    #[test]
    fn neighbor_probe_follows_stored_order() {
        let g = Graph::from_adjacency(vec![vec![3, 1, 2], vec![0], vec![0], vec![0]]).unwrap();
        let mut s = ProbeSession::new(&g);
        assert_eq!(s.neighbor(VertexId(0), 0).unwrap(), VertexId(3));

        let g = path3();
        let mut s = ProbeSession::new(&g);
        assert_eq!(s.neighbor(VertexId(1), 1).unwrap(), g.neighbors(VertexId(1))[1]);
        assert!(matches!(
            s.neighbor(VertexId(1), 2),
            Err(Error::NeighborIndexOutOfRange { index: 2, degree: 2, .. })
        ));
        assert_eq!(s.snapshot().adjacency_list, 1);
    }

    #[test]
    fn adjacency_matrix_probe() {
        let g = path3();
        let mut s = ProbeSession::new(&g);
        assert!(!s.adjacent(VertexId(0), VertexId(2)).unwrap());
        assert!(s.adjacent(VertexId(0), VertexId(1)).unwrap());
        assert!(!s.adjacent(VertexId(1), VertexId(1)).unwrap());
        assert_eq!(s.snapshot().adjacency_matrix, 3);
    }

    #[test]
    fn out_of_range_vertex_is_a_caller_error() {
        let g = path3();
        let mut s = ProbeSession::new(&g);
        assert!(matches!(
            s.degree(VertexId(3)),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert_eq!(s.total(), 0);
    }

    #[test]
    fn snapshots() {
        let g = path3();
        let mut s = ProbeSession::new(&g);
        assert_eq!(s.snapshot(), ProbeStats::default());
        for _ in 0..3 {
            s.degree(VertexId(0)).unwrap();
        }
        s.neighbor(VertexId(1), 0).unwrap();
        s.neighbor(VertexId(1), 1).unwrap();
        let snap = s.snapshot();
        assert_eq!(
            snap,
            ProbeStats {
                degree: 3,
                adjacency_list: 2,
                adjacency_matrix: 0,
                total: 5
            }
        );
        assert_eq!(s.snapshot(), snap);
    }

    #[test]
    fn budget_stops_at_exactly_b() {
        let g = path3();
        for budget in 0..5u64 {
            let mut s = ProbeSession::with_budget(&g, budget);
            for _ in 0..budget {
                s.degree(VertexId(0)).unwrap();
            }
            assert!(matches!(
                s.neighbor(VertexId(1), 0),
                Err(Error::BudgetExhausted { .. })
            ));
            assert_eq!(s.total(), budget);
        }
    }

    #[test]
    fn transcript_records_answers() {
        let g = path3();
        let mut s = ProbeSession::new(&g).recording();
        s.degree(VertexId(1)).unwrap();
        s.neighbor(VertexId(1), 0).unwrap();
        assert_eq!(
            s.transcript().unwrap(),
            &[
                ProbeRecord::Degree { v: VertexId(1), degree: 2 },
                ProbeRecord::Neighbor { v: VertexId(1), index: 0, neighbor: VertexId(0) },
            ]
        );
    }
}
