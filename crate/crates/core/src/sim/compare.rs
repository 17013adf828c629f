use std::fmt::Write as _;

use serde::Serialize;

use super::{run_many, SimConfig, SimError, SimRun};
use crate::protocols::ProtocolKind;

/// Rounds at which residual variance is sampled: every 50th round.
pub fn checkpoints(rounds: u64) -> Vec<u64> {
    (1..=rounds / 50).map(|k| 50 * k).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedResult {
    pub protocol: ProtocolKind,
    pub seed: u64,
    pub fnd: u64,
    /// Censored at `rounds + 1` when fewer than half the nodes died.
    pub hnd: u64,
    /// Censored at `rounds + 1` when some node survived.
    pub lnd: u64,
    /// Residual variance at each checkpoint.
    pub variance: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProtocolSummary {
    pub protocol: ProtocolKind,
    pub mean_fnd: f64,
    pub mean_hnd: f64,
    pub mean_lnd: f64,
    pub mean_variance: Vec<f64>,
}

/// Every protocol run on the same seeds and deployments.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub base: SimConfig,
    pub seeds: Vec<u64>,
    pub checkpoints: Vec<u64>,
    pub runs: Vec<SimRun>,
    pub per_seed: Vec<SeedResult>,
    pub summaries: Vec<ProtocolSummary>,
}

fn variance_at(run: &SimRun, round: u64) -> f64 {
    // a run stops early only when every node is dead
    run.rows
        .get(round as usize - 1)
        .or(run.rows.last())
        .map(|r| {
            if r.round == round {
                r.residual_variance
            } else {
                0.0
            }
        })
        .unwrap_or(0.0)
}

/// Runs `base` under each protocol for each seed. Only the protocol and
/// seed vary between runs.
pub fn compare_runs(
    base: &SimConfig,
    protocols: &[ProtocolKind],
    seeds: &[u64],
) -> Result<Comparison, SimError> {
    if protocols.is_empty() || seeds.is_empty() {
        return Err(SimError::Mismatch(
            "need at least one protocol and one seed".into(),
        ));
    }
    if base.deployment.is_some() && seeds.len() > 1 {
        return Err(SimError::Mismatch(
            "a fixed deployment file cannot vary with the seed".into(),
        ));
    }
    base.validate()?;
    let configs: Vec<SimConfig> = protocols
        .iter()
        .flat_map(|&p| {
            seeds
                .iter()
                .map(move |&s| base.with_protocol(p).with_seed(s))
        })
        .collect();
    let runs = run_many(&configs)?;
    let cps = checkpoints(base.rounds);
    let censor = base.rounds + 1;

    let per_seed: Vec<SeedResult> = runs
        .iter()
        .map(|r| SeedResult {
            protocol: r.config.protocol,
            seed: r.config.seed,
            fnd: r.lifetime.fnd,
            hnd: r.lifetime.hnd.unwrap_or(censor),
            lnd: r.lifetime.lnd.unwrap_or(censor),
            variance: cps.iter().map(|&c| variance_at(r, c)).collect(),
        })
        .collect();

    let n = seeds.len() as f64;
    let summaries = protocols
        .iter()
        .map(|&p| {
            let rows: Vec<&SeedResult> = per_seed.iter().filter(|s| s.protocol == p).collect();
            let mean = |f: &dyn Fn(&SeedResult) -> f64| rows.iter().map(|s| f(s)).sum::<f64>() / n;
            ProtocolSummary {
                protocol: p,
                mean_fnd: mean(&|s| s.fnd as f64),
                mean_hnd: mean(&|s| s.hnd as f64),
                mean_lnd: mean(&|s| s.lnd as f64),
                mean_variance: (0..cps.len()).map(|i| mean(&|s| s.variance[i])).collect(),
            }
        })
        .collect();

    Ok(Comparison {
        base: base.clone(),
        seeds: seeds.to_vec(),
        checkpoints: cps,
        runs,
        per_seed,
        summaries,
    })
}

impl Comparison {
    pub fn seed_result(&self, protocol: ProtocolKind, seed: u64) -> Option<&SeedResult> {
        self.per_seed
            .iter()
            .find(|s| s.protocol == protocol && s.seed == seed)
    }

    pub fn summary(&self, protocol: ProtocolKind) -> Option<&ProtocolSummary> {
        self.summaries.iter().find(|s| s.protocol == protocol)
    }

    /// Per-seed rows followed by a `mean` row per protocol.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("protocol,seed,fnd,hnd,lnd");
        for c in &self.checkpoints {
            write!(out, ",var_r{c}").unwrap();
        }
        out.push('\n');
        for s in &self.per_seed {
            write!(
                out,
                "{},{},{},{},{}",
                s.protocol, s.seed, s.fnd, s.hnd, s.lnd
            )
            .unwrap();
            for v in &s.variance {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        for m in &self.summaries {
            write!(
                out,
                "{},mean,{},{},{}",
                m.protocol, m.mean_fnd, m.mean_hnd, m.mean_lnd
            )
            .unwrap();
            for v in &m.mean_variance {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Aligned summary table for terminals.
    pub fn to_text(&self) -> String {
        let b = &self.base;
        let mut out = format!(
            "{} nodes, {}x{} m, {} J, {} rounds, {} seeds\n(hnd/lnd censored at {} when not reached)\n\n",
            b.nodes,
            b.area[0],
            b.area[1],
            b.initial_energy,
            b.rounds,
            self.seeds.len(),
            b.rounds + 1
        );
        writeln!(
            out,
            "{:<8}{:>10}{:>10}{:>10}",
            "protocol", "FND", "HND", "LND"
        )
        .unwrap();
        for m in &self.summaries {
            writeln!(
                out,
                "{:<8}{:>10.1}{:>10.1}{:>10.1}",
                m.protocol.as_str(),
                m.mean_fnd,
                m.mean_hnd,
                m.mean_lnd
            )
            .unwrap();
        }
        if !self.checkpoints.is_empty() {
            out.push_str("\nmean residual variance (J^2)\n");
            write!(out, "{:<8}", "round").unwrap();
            for m in &self.summaries {
                write!(out, "{:>14}", m.protocol.as_str()).unwrap();
            }
            out.push('\n');
            for (i, c) in self.checkpoints.iter().enumerate() {
                write!(out, "{c:<8}").unwrap();
                for m in &self.summaries {
                    write!(out, "{:>14.4e}", m.mean_variance[i]).unwrap();
                }
                out.push('\n');
            }
        }
        out
    }
}
