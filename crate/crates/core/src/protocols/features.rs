use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::ProtocolError;
use crate::energy::RadioParams;
use crate::network::{distance, EncounterGraph, NodeId, Topology};

/// Default trailing window, in rounds, for the consumption-rate feature.
pub const DEFAULT_RATE_WINDOW: usize = 5;

/// Per-node election inputs. Raw values carry units; after
/// [`normalize_features`] every field lies in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeFeatures {
    /// J to send one packet to the alive-node centroid.
    pub tr_energy: f64,
    /// Residual energy, J.
    pub r_energy: f64,
    /// Mean energy spent per round over the trailing window, J/round.
    pub e_rate: f64,
    /// Encounter-graph degree.
    pub q_size: f64,
    /// Distance to the alive-node centroid, m.
    pub d_centroid: f64,
    /// Distance to the base station, m.
    pub proximity: f64,
    pub neighbor_count: f64,
}

/// Trailing per-node record of energy spent in each round.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyHistory {
    window: usize,
    spent: BTreeMap<NodeId, VecDeque<f64>>,
}

impl EnergyHistory {
    pub fn new(window: usize) -> Self {
        assert!(window > 0, "rate window must be positive");
        Self {
            window,
            spent: BTreeMap::new(),
        }
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn record(&mut self, id: NodeId, joules: f64) {
        let q = self.spent.entry(id).or_default();
        if q.len() == self.window {
            q.pop_front();
        }
        q.push_back(joules);
    }

    /// Mean over the recorded rounds (at most `window`), zero with no history.
    pub fn rate(&self, id: NodeId) -> f64 {
        match self.spent.get(&id) {
            Some(q) if !q.is_empty() => q.iter().sum::<f64>() / q.len() as f64,
            _ => 0.0,
        }
    }
}

/// Raw features for every alive node.
pub fn compute_features(
    t: &Topology,
    history: &EnergyHistory,
    radio: &RadioParams,
) -> Result<BTreeMap<NodeId, NodeFeatures>, ProtocolError> {
    let center = t.alive_centroid().ok_or(ProtocolError::NoAliveNodes)?;
    let graph = EncounterGraph::from_topology(t);
    let degree: BTreeMap<NodeId, usize> = graph
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, id)| (*id, graph.degree(v)))
        .collect();
    Ok(t.alive()
        .map(|n| {
            let d_centroid = distance(n.pos, center);
            let deg = degree[&n.id] as f64;
            let f = NodeFeatures {
                tr_energy: radio.packet_tx(d_centroid),
                r_energy: n.residual_energy,
                e_rate: history.rate(n.id),
                q_size: deg,
                d_centroid,
                proximity: distance(n.pos, t.bs_pos()),
                neighbor_count: deg,
            };
            (n.id, f)
        })
        .collect())
}

/// Scales raw features onto `[0, 1]`: energies and rates by the initial
/// energy, distances by the field diagonal, counts by `alive - 1`.
pub fn normalize_features(f: &NodeFeatures, t: &Topology) -> NodeFeatures {
    let e0 = t.initial_energy();
    let diag = t.diagonal();
    let others = t.alive_count().saturating_sub(1) as f64;
    let count = |c: f64| if others > 0.0 { c / others } else { 0.0 };
    let unit = |x: f64| x.clamp(0.0, 1.0);
    NodeFeatures {
        tr_energy: unit(f.tr_energy / e0),
        r_energy: unit(f.r_energy / e0),
        e_rate: unit(f.e_rate / e0),
        q_size: unit(count(f.q_size)),
        d_centroid: unit(f.d_centroid / diag),
        proximity: unit(f.proximity / diag),
        neighbor_count: unit(count(f.neighbor_count)),
    }
}

pub fn normalize_all(
    raw: &BTreeMap<NodeId, NodeFeatures>,
    t: &Topology,
) -> BTreeMap<NodeId, NodeFeatures> {
    raw.iter()
        .map(|(id, f)| (*id, normalize_features(f, t)))
        .collect()
}
