use std::fmt::Write as _;

use serde::Serialize;

use crate::network::Node;

pub const METRICS_HEADER: &str =
    "round,alive,total_residual_j,residual_variance_j2,ch_count,cc,pl,dr";

/// One row of the per-round metrics CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundMetrics {
    /// One-based index of the round just executed.
    pub round: u64,
    pub alive: usize,
    pub total_residual: f64,
    pub residual_variance: f64,
    pub ch_count: usize,
    pub cc: f64,
    pub pl: Option<f64>,
    pub dr: f64,
}

/// Population variance of residual energy over all deployed nodes; dead
/// nodes count at 0 J.
pub fn residual_variance(nodes: &[Node]) -> f64 {
    if nodes.is_empty() {
        return 0.0;
    }
    let n = nodes.len() as f64;
    let mean = nodes.iter().map(|x| x.residual_energy).sum::<f64>() / n;
    nodes
        .iter()
        .map(|x| (x.residual_energy - mean).powi(2))
        .sum::<f64>()
        / n
}

/// Renders rows as CSV. Floats use the shortest round-trip representation;
/// an undefined path length is an empty field.
pub fn metrics_csv(rows: &[RoundMetrics]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(METRICS_HEADER);
    out.push('\n');
    for r in rows {
        let pl = r.pl.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.round, r.alive, r.total_residual, r.residual_variance, r.ch_count, r.cc, pl, r.dr
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// First, half and last node death rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LifetimeStats {
    /// Round of the first death, `rounds + 1` if every node survived.
    pub fnd: u64,
    /// First round with at most half the nodes alive.
    pub hnd: Option<u64>,
    /// First round with no node alive.
    pub lnd: Option<u64>,
}

impl LifetimeStats {
    pub fn from_rows(rows: &[RoundMetrics], node_count: usize, rounds: u64) -> Self {
        let first =
            |pred: &dyn Fn(&RoundMetrics) -> bool| rows.iter().find(|r| pred(r)).map(|r| r.round);
        Self {
            fnd: first(&|r| r.alive < node_count).unwrap_or(rounds + 1),
            hnd: first(&|r| 2 * r.alive <= node_count),
            lnd: first(&|r| r.alive == 0),
        }
    }
}
