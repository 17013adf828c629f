use rand::Rng;

use super::{
    compute_features, direct_charges, eeds_elect, f3n_elect, form_clusters, leach_elect,
    normalize_all, round_charges, Cluster, EnergyHistory, LeachEpochs, Protocol, ProtocolError,
};
use crate::energy::RadioParams;
use crate::network::{NodeId, Role, Topology};
use crate::sim::{residual_variance, RoundMetrics};

/// Mutable state carried from round to round.
#[derive(Debug, Clone)]
pub struct SimState {
    pub topology: Topology,
    pub history: EnergyHistory,
    pub epochs: LeachEpochs,
    pub radio: RadioParams,
    /// Rounds executed so far.
    pub round: u64,
}

impl SimState {
    pub fn new(topology: Topology, radio: RadioParams, rate_window: usize) -> Self {
        Self {
            topology,
            history: EnergyHistory::new(rate_window),
            epochs: LeachEpochs::default(),
            radio,
            round: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RoundOutcome {
    pub metrics: RoundMetrics,
    pub heads: Vec<NodeId>,
    pub clusters: Vec<Cluster>,
    /// Energy actually removed from nodes this round, J.
    pub charged: f64,
    /// Sum of residual energy before the round, J.
    pub residual_before: f64,
}

/// One election, cluster formation and data round. A round without heads
/// (LEACH after every node has served) has every node send to the base
/// station directly.
///
/// Each node pays its charge up to its remaining energy; nodes left with
/// nothing are marked dead once every charge is applied. Metrics describe
/// the post-round network.
pub fn run_round<R: Rng + ?Sized>(
    state: &mut SimState,
    protocol: &Protocol,
    rng: &mut R,
) -> Result<RoundOutcome, ProtocolError> {
    if state.topology.alive_count() == 0 {
        return Err(ProtocolError::NoAliveNodes);
    }
    state.topology.refresh_encounters();

    let heads = match protocol {
        Protocol::Leach(p) => leach_elect(state.round, &mut state.epochs, p, &state.topology, rng)?,
        Protocol::F3n(p) => {
            let raw = compute_features(&state.topology, &state.history, &state.radio)?;
            f3n_elect(&normalize_all(&raw, &state.topology), p)?
        }
        Protocol::Eeds(p) => {
            let raw = compute_features(&state.topology, &state.history, &state.radio)?;
            eeds_elect(&normalize_all(&raw, &state.topology), p)?
        }
    };
    let (clusters, charges) = if heads.is_empty() {
        (Vec::new(), direct_charges(&state.topology, &state.radio))
    } else {
        let clusters = form_clusters(&heads, &state.topology)?;
        let charges = round_charges(&clusters, &state.topology, &state.radio)?;
        (clusters, charges)
    };

    let residual_before = state.topology.total_residual();
    let mut charged = 0.0;
    for node in state.topology.nodes_mut() {
        node.role = Role::Member;
        if !node.alive {
            continue;
        }
        if heads.binary_search(&node.id).is_ok() {
            node.role = Role::Head;
        }
        let want = charges.get(&node.id).copied().unwrap_or(0.0);
        let paid = want.min(node.residual_energy);
        node.residual_energy -= paid;
        charged += paid;
        state.history.record(node.id, paid);
    }
    for node in state.topology.nodes_mut() {
        if node.alive && node.residual_energy <= 0.0 {
            node.residual_energy = 0.0;
            node.alive = false;
        }
    }
    state.round += 1;

    let graph = state.topology.refresh_encounters();
    let encounter = graph.metrics();
    let metrics = RoundMetrics {
        round: state.round,
        alive: state.topology.alive_count(),
        total_residual: state.topology.total_residual(),
        residual_variance: residual_variance(state.topology.nodes()),
        ch_count: heads.len(),
        cc: encounter.cc,
        pl: encounter.pl,
        dr: encounter.dr,
    };
    Ok(RoundOutcome {
        metrics,
        heads,
        clusters,
        charged,
        residual_before,
    })
}
