use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{AdversarialInstance, AdversarialShape};
use crate::graph::{DirectedEdge, EdgeKey};
use crate::lca::{Algorithm, OrientParams, Orienter};
use crate::oracle::{ProbeRecord, ProbeSession};
use crate::randomness::RandomTape;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AttackStrategy {
    /// Every edge toward its lower ID, no probes.
    BlindId,
    /// A real algorithm with target `r` and a per-query probe budget
    /// (`None` for unlimited).
    Algorithm {
        algorithm: Algorithm,
        r: u32,
        budget: Option<u64>,
    },
}

/// `floor(0.001 sqrt(n) / r)`, with `n` the instance's nominal size.
pub fn default_attack_budget(inst: &AdversarialInstance, r: u32) -> u64 {
    let n = match inst.params.shape {
        AdversarialShape::Derived { n, .. } => n,
        AdversarialShape::Explicit { .. } => inst.layout.vertex_count,
    };
    (0.001 * (n as f64).sqrt() / r.max(1) as f64).floor() as u64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackReport {
    pub strategy: AttackStrategy,
    pub instance_seed: u64,
    pub seed: u64,
    pub center: u32,
    /// Red edges oriented away from the star center.
    pub center_out_degree: u32,
    pub red_edges: u32,
    pub max_probes: u64,
    pub total_probes: u64,
    /// Queries that hit the budget and fell back to the blind answer.
    pub fallbacks: u32,
    /// Whether any probe revealed a red or blue edge.
    pub colored_edge_probed: bool,
}

fn blind(e: EdgeKey) -> DirectedEdge {
    DirectedEdge::toward(e, e.u())
}

fn reveals_colored(inst: &AdversarialInstance, record: &ProbeRecord) -> bool {
    match *record {
        ProbeRecord::Neighbor { v, neighbor, .. } => {
            inst.is_colored(EdgeKey::new(v, neighbor).expect("graph has no self-loops"))
        }
        ProbeRecord::Adjacent { u, v, edge: true } => EdgeKey::new(u, v).is_ok_and(|e| inst.is_colored(e)),
        _ => false,
    }
}

/// Orients the red star of `inst` with `strategy` and reports the out-degree
/// of its center.
pub fn adversarial_attack(
    inst: &AdversarialInstance,
    strategy: AttackStrategy,
    seed: u64,
) -> Result<AttackReport> {
    let mut report = AttackReport {
        strategy,
        instance_seed: inst.params.seed,
        seed,
        center: inst.center.0,
        center_out_degree: 0,
        red_edges: inst.red_edges.len() as u32,
        max_probes: 0,
        total_probes: 0,
        fallbacks: 0,
        colored_edge_probed: false,
    };
    let mut orienter = match strategy {
        AttackStrategy::BlindId => None,
        AttackStrategy::Algorithm { algorithm, r, .. } => Some(Orienter::new(
            algorithm,
            OrientParams::new(inst.graph.n(), r),
            RandomTape::new(seed),
        )?),
    };
    for &e in &inst.red_edges {
        let arc = match (&mut orienter, strategy) {
            (Some(orienter), AttackStrategy::Algorithm { budget, .. }) => {
                let mut session = match budget {
                    Some(b) => ProbeSession::with_budget(&inst.graph, b),
                    None => ProbeSession::new(&inst.graph),
                }
                .recording();
                let arc = match orienter.orient(&mut session, e) {
                    Ok(arc) => arc,
                    Err(Error::BudgetExhausted { .. }) => {
                        report.fallbacks += 1;
                        blind(e)
                    }
                    Err(source) => {
                        return Err(Error::Query {
                            edge: e,
                            source: Box::new(source),
                        })
                    }
                };
                report.max_probes = report.max_probes.max(session.total());
                report.total_probes += session.total();
                report.colored_edge_probed |= session
                    .transcript()
                    .is_some_and(|t| t.iter().any(|r| reveals_colored(inst, r)));
                arc
            }
            _ => blind(e),
        };
        if arc.from == inst.center {
            report.center_out_degree += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{adversarial_instance, AdversarialParams};

    #[test]
    fn blind_counts_lower_id_leaves() {
        let inst = adversarial_instance(AdversarialParams::explicit(4, 3, 2)).unwrap();
        let r = adversarial_attack(&inst, AttackStrategy::BlindId, 0).unwrap();
        let expected = inst.red_edges.iter().filter(|e| e.u() < inst.center).count();
        assert_eq!(r.center_out_degree as usize, expected);
        assert_eq!(r.total_probes, 0);
        assert!(!r.colored_edge_probed);
    }

    #[test]
    fn zero_budget_matches_blind() {
        for seed in 0..10 {
            let inst = adversarial_instance(AdversarialParams::explicit(4, 3, seed)).unwrap();
            let blind = adversarial_attack(&inst, AttackStrategy::BlindId, 0).unwrap();
            let strategy = AttackStrategy::Algorithm {
                algorithm: Algorithm::ColorForest,
                r: 8,
                budget: Some(0),
            };
            let r = adversarial_attack(&inst, strategy, 0).unwrap();
            assert_eq!(r.center_out_degree, blind.center_out_degree);
            assert_eq!(r.fallbacks, 4);
            assert_eq!(r.total_probes, 0);
        }
    }

    #[test]
    fn unlimited_algorithm_sees_colored_edges() {
        let inst = adversarial_instance(AdversarialParams::explicit(4, 3, 1)).unwrap();
        let strategy = AttackStrategy::Algorithm {
            algorithm: Algorithm::ColorForest,
            r: 8,
            budget: None,
        };
        let r = adversarial_attack(&inst, strategy, 0).unwrap();
        assert_eq!(r.fallbacks, 0);
        assert!(r.total_probes > 0);
        assert!(r.colored_edge_probed);
    }
}
