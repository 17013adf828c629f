//! Probabilistic rotating election.
//!
//! A node that has not served in the current epoch elects itself when a
//! uniform draw falls below `p / (1 - p * (round mod epoch))`, with
//! `epoch = round(1 / p)`. The threshold reaches one in the last round of
//! the epoch, so every node that stays alive serves exactly once per epoch.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ProtocolError;
use crate::network::{NodeId, Topology};

pub const DEFAULT_P: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeachParams {
    pub p: f64,
}

impl LeachParams {
    pub fn new(p: f64) -> Result<Self, ProtocolError> {
        if p > 0.0 && p < 1.0 {
            Ok(Self { p })
        } else {
            Err(ProtocolError::Param(format!(
                "p must lie in (0, 1), got {p}"
            )))
        }
    }

    pub fn epoch_length(&self) -> u64 {
        ((1.0 / self.p).round() as u64).max(1)
    }

    /// Election threshold for zero-based round `round`.
    pub fn threshold(&self, round: u64) -> f64 {
        let epoch = self.epoch_length();
        let r = round % epoch;
        // the last round of an epoch must take every node still eligible,
        // which the float expression can miss by an ulp
        if r + 1 >= epoch {
            return 1.0;
        }
        let denom = 1.0 - self.p * r as f64;
        if denom <= self.p {
            1.0
        } else {
            (self.p / denom).min(1.0)
        }
    }
}

impl Default for LeachParams {
    fn default() -> Self {
        Self { p: DEFAULT_P }
    }
}

/// Nodes that already served as head in the current epoch.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LeachEpochs {
    served: BTreeSet<NodeId>,
}

impl LeachEpochs {
    pub fn has_served(&self, id: NodeId) -> bool {
        self.served.contains(&id)
    }
}

/// Heads for zero-based round `round`, sorted by id.
///
/// Draws one uniform number per eligible alive node in id order. When the
/// draw elects nobody, the eligible node with the most residual energy is
/// forced to serve. Once every alive node has served in the current epoch
/// the result is empty and the round runs without heads.
pub fn leach_elect<R: Rng + ?Sized>(
    round: u64,
    epochs: &mut LeachEpochs,
    params: &LeachParams,
    t: &Topology,
    rng: &mut R,
) -> Result<Vec<NodeId>, ProtocolError> {
    if t.alive_count() == 0 {
        return Err(ProtocolError::NoAliveNodes);
    }
    if round.is_multiple_of(params.epoch_length()) {
        epochs.served.clear();
    }
    let threshold = params.threshold(round);
    let mut heads = Vec::new();
    for node in t.alive() {
        if epochs.has_served(node.id) {
            continue;
        }
        if rng.random::<f64>() < threshold {
            heads.push(node.id);
        }
    }
    if heads.is_empty() {
        let richest = t
            .alive()
            .filter(|n| !epochs.has_served(n.id))
            .max_by(|a, b| {
                a.residual_energy
                    .total_cmp(&b.residual_energy)
                    .then(b.id.cmp(&a.id))
            });
        heads.extend(richest.map(|n| n.id));
    }
    epochs.served.extend(heads.iter().copied());
    Ok(heads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{Node, Position};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(n: u32, energy: f64) -> Topology {
        let nodes = (0..n)
            .map(|i| Node::new(NodeId(i), Position::new(i as f64, 0.0), energy))
            .collect();
        Topology::new(nodes, (200.0, 10.0), Position::new(0.0, 20.0), 5.0, energy).unwrap()
    }

    #[test]
    fn threshold_schedule() {
        let p = LeachParams::new(0.05).unwrap();
        assert_eq!(p.epoch_length(), 20);
        assert_eq!(p.threshold(0), 0.05);
        assert_eq!(p.threshold(20), 0.05);
        assert!((p.threshold(1) - 0.05 / 0.95).abs() < 1e-15);
        assert_eq!(p.threshold(19), 1.0);
        assert!(LeachParams::new(0.0).is_err() && LeachParams::new(1.0).is_err());
    }

    #[test]
    fn served_nodes_never_reelected_within_epoch() {
        let t = field(100, 1.0);
        let p = LeachParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut epochs = LeachEpochs::default();
        let mut seen = BTreeSet::new();
        for round in 0..20 {
            for id in leach_elect(round, &mut epochs, &p, &t, &mut rng).unwrap() {
                assert!(seen.insert(id), "node {id} served twice in one epoch");
            }
        }
        assert_eq!(seen.len(), 100);
        // next epoch starts fresh
        leach_elect(20, &mut epochs, &p, &t, &mut rng).unwrap();
        assert!(epochs.served.len() < 100);
    }

    /// Every uniform draw lands just below one.
    struct AlwaysHigh;

    impl rand::RngCore for AlwaysHigh {
        fn next_u32(&mut self) -> u32 {
            u32::MAX
        }
        fn next_u64(&mut self) -> u64 {
            u64::MAX
        }
        fn fill_bytes(&mut self, dst: &mut [u8]) {
            dst.fill(0xff);
        }
    }

    #[test]
    fn fallback_forces_richest_eligible_node() {
        let mut t = field(3, 1.0);
        t.nodes_mut()[1].residual_energy = 0.5;
        t.nodes_mut()[2].residual_energy = 0.9;
        let p = LeachParams::new(0.001).unwrap();
        let mut rng = AlwaysHigh;
        let mut epochs = LeachEpochs::default();
        assert_eq!(
            leach_elect(0, &mut epochs, &p, &t, &mut rng).unwrap(),
            vec![NodeId(0)]
        );
        assert_eq!(
            leach_elect(1, &mut epochs, &p, &t, &mut rng).unwrap(),
            vec![NodeId(2)]
        );
        assert_eq!(
            leach_elect(2, &mut epochs, &p, &t, &mut rng).unwrap(),
            vec![NodeId(1)]
        );
        // everyone served: no head until the epoch ends
        assert!(leach_elect(3, &mut epochs, &p, &t, &mut rng)
            .unwrap()
            .is_empty());
    }
}
