use std::collections::BTreeMap;

use serde::Serialize;

use super::ProtocolError;
use crate::energy::RadioParams;
use crate::network::{distance, NodeId, Topology};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cluster {
    pub head: NodeId,
    /// Sorted, never contains `head`.
    pub members: Vec<NodeId>,
}

/// Every alive non-head node joins its nearest head (lower head id on ties).
/// Clusters come back ordered by head id.
pub fn form_clusters(heads: &[NodeId], t: &Topology) -> Result<Vec<Cluster>, ProtocolError> {
    if heads.is_empty() {
        return Err(ProtocolError::NoHeads);
    }
    let mut sorted: Vec<NodeId> = heads.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let head_pos = sorted
        .iter()
        .map(|id| Ok((*id, t.node(*id)?.pos)))
        .collect::<Result<Vec<_>, ProtocolError>>()?;

    let mut clusters: BTreeMap<NodeId, Vec<NodeId>> =
        sorted.iter().map(|h| (*h, Vec::new())).collect();
    for node in t.alive() {
        if clusters.contains_key(&node.id) {
            continue;
        }
        let mut best: Option<(f64, NodeId)> = None;
        for &(head, pos) in &head_pos {
            let d = distance(node.pos, pos);
            // heads are scanned in id order, so strict < keeps the lower id
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, head));
            }
        }
        let (_, head) = best.expect("at least one head");
        clusters.get_mut(&head).expect("known head").push(node.id);
    }
    Ok(clusters
        .into_iter()
        .map(|(head, members)| Cluster { head, members })
        .collect())
}

/// Energy each node is asked to spend for one data round: members send one
/// packet to their head; a head receives every member packet, fuses
/// `members + 1` signals and sends one packet to the base station.
pub fn round_charges(
    clusters: &[Cluster],
    t: &Topology,
    radio: &RadioParams,
) -> Result<BTreeMap<NodeId, f64>, ProtocolError> {
    let mut charges = BTreeMap::new();
    for c in clusters {
        let head = t.node(c.head)?;
        for &m in &c.members {
            let member = t.node(m)?;
            charges.insert(m, radio.packet_tx(distance(member.pos, head.pos)));
        }
        let k = c.members.len() as u64;
        let head_cost = radio.packet_rx() * k as f64
            + radio.packet_aggregation(k + 1)
            + radio.packet_tx(distance(head.pos, t.bs_pos()));
        charges.insert(c.head, head_cost);
    }
    Ok(charges)
}

/// Charges for a round without heads: every alive node sends its packet
/// straight to the base station.
pub fn direct_charges(t: &Topology, radio: &RadioParams) -> BTreeMap<NodeId, f64> {
    t.alive()
        .map(|n| (n.id, radio.packet_tx(distance(n.pos, t.bs_pos()))))
        .collect()
}
