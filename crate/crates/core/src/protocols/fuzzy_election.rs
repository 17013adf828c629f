//! Deterministic fuzzy cluster-head elections: the two-level EEDS scheme
//! and the single-controller F3N baseline.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{controllers, ProtocolError};
use crate::fuzzy::{FuzzyError, FuzzyInferenceSystem};
use crate::network::NodeId;

use super::NodeFeatures;

pub const DEFAULT_QUALIFICATION_THRESHOLD: f64 = 0.5;
pub const DEFAULT_CH_FRACTION: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct EedsParams {
    pub local_fis: FuzzyInferenceSystem,
    pub global_fis: FuzzyInferenceSystem,
    pub qualification_threshold: f64,
    pub ch_fraction: f64,
}

impl EedsParams {
    pub fn new(qualification_threshold: f64, ch_fraction: f64) -> Result<Self, ProtocolError> {
        check_fraction(ch_fraction)?;
        if !(0.0..=1.0).contains(&qualification_threshold) {
            return Err(ProtocolError::Param(format!(
                "qualification_threshold must lie in [0, 1], got {qualification_threshold}"
            )));
        }
        let global_fis = controllers::eeds_global_controller();
        let report = global_fis.validate();
        if !report.is_valid() || report.rule_count != 144 {
            return Err(ProtocolError::Param(format!("global rule base: {report}")));
        }
        Ok(Self {
            local_fis: controllers::eeds_local_controller(),
            global_fis,
            qualification_threshold,
            ch_fraction,
        })
    }
}

impl Default for EedsParams {
    fn default() -> Self {
        Self::new(DEFAULT_QUALIFICATION_THRESHOLD, DEFAULT_CH_FRACTION).expect("defaults are valid")
    }
}

#[derive(Debug, Clone)]
pub struct F3nParams {
    pub fis: FuzzyInferenceSystem,
    pub ch_fraction: f64,
}

impl F3nParams {
    pub fn new(ch_fraction: f64) -> Result<Self, ProtocolError> {
        check_fraction(ch_fraction)?;
        Ok(Self {
            fis: controllers::f3n_controller(),
            ch_fraction,
        })
    }
}

impl Default for F3nParams {
    fn default() -> Self {
        Self::new(DEFAULT_CH_FRACTION).expect("defaults are valid")
    }
}

fn check_fraction(f: f64) -> Result<(), ProtocolError> {
    if f > 0.0 && f < 1.0 {
        Ok(())
    } else {
        Err(ProtocolError::Param(format!(
            "ch_fraction must lie in (0, 1), got {f}"
        )))
    }
}

/// Number of heads to elect among `alive` nodes.
pub fn head_quota(alive: usize, ch_fraction: f64) -> usize {
    ((alive as f64 * ch_fraction).ceil() as usize).clamp(1.min(alive), alive)
}

/// Local qualification from normalized (r_energy, neighbor_count, d_centroid).
pub fn eeds_local_qualification(
    f: &NodeFeatures,
    local_fis: &FuzzyInferenceSystem,
) -> Result<f64, FuzzyError> {
    local_fis.evaluate(&[f.r_energy, f.neighbor_count, f.d_centroid])
}

/// Global cost from the six normalized features; lower is better.
pub fn eeds_global_cost(
    f: &NodeFeatures,
    global_fis: &FuzzyInferenceSystem,
) -> Result<f64, FuzzyError> {
    global_fis.evaluate(&[
        f.tr_energy,
        f.r_energy,
        f.e_rate,
        f.q_size,
        f.d_centroid,
        f.proximity,
    ])
}

/// F3N chance of becoming head; higher is better.
pub fn f3n_chance(f: &NodeFeatures, f3n_fis: &FuzzyInferenceSystem) -> Result<f64, FuzzyError> {
    f3n_fis.evaluate(&[f.r_energy, f.neighbor_count, f.d_centroid])
}

/// Two-level election over normalized features of the alive nodes.
///
/// Nodes whose local qualification reaches the threshold become candidates
/// (all alive nodes if none do); the quota of candidates with the lowest
/// global cost win, ties going to the lower id. Returned ids are sorted.
pub fn eeds_elect(
    features: &BTreeMap<NodeId, NodeFeatures>,
    params: &EedsParams,
) -> Result<Vec<NodeId>, ProtocolError> {
    if features.is_empty() {
        return Err(ProtocolError::NoAliveNodes);
    }
    let mut candidates = Vec::new();
    for (id, f) in features {
        if eeds_local_qualification(f, &params.local_fis)? >= params.qualification_threshold {
            candidates.push(*id);
        }
    }
    if candidates.is_empty() {
        candidates = features.keys().copied().collect();
    }
    let mut scored = candidates
        .into_iter()
        .map(|id| Ok((eeds_global_cost(&features[&id], &params.global_fis)?, id)))
        .collect::<Result<Vec<_>, FuzzyError>>()?;
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(take_quota(
        scored,
        head_quota(features.len(), params.ch_fraction),
    ))
}

/// Quota of highest-chance nodes, ties going to the lower id.
pub fn f3n_elect(
    features: &BTreeMap<NodeId, NodeFeatures>,
    params: &F3nParams,
) -> Result<Vec<NodeId>, ProtocolError> {
    if features.is_empty() {
        return Err(ProtocolError::NoAliveNodes);
    }
    let mut scored = features
        .iter()
        .map(|(id, f)| Ok((f3n_chance(f, &params.fis)?, *id)))
        .collect::<Result<Vec<_>, FuzzyError>>()?;
    scored.sort_by(|a, b| match b.0.total_cmp(&a.0) {
        Ordering::Equal => a.1.cmp(&b.1),
        o => o,
    });
    Ok(take_quota(
        scored,
        head_quota(features.len(), params.ch_fraction),
    ))
}

fn take_quota(ranked: Vec<(f64, NodeId)>, k: usize) -> Vec<NodeId> {
    let mut heads: Vec<NodeId> = ranked.into_iter().take(k).map(|(_, id)| id).collect();
    heads.sort_unstable();
    heads
}
