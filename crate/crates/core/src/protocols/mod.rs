//! Cluster-head election protocols and the per-round energy exchange.

mod cluster;
pub mod controllers;
mod features;
mod fuzzy_election;
mod leach;
mod round;

pub use cluster::{direct_charges, form_clusters, round_charges, Cluster};
pub use features::{
    compute_features, normalize_all, normalize_features, EnergyHistory, NodeFeatures,
    DEFAULT_RATE_WINDOW,
};
pub use fuzzy_election::{
    eeds_elect, eeds_global_cost, eeds_local_qualification, f3n_chance, f3n_elect, head_quota,
    EedsParams, F3nParams, DEFAULT_CH_FRACTION, DEFAULT_QUALIFICATION_THRESHOLD,
};
pub use leach::{leach_elect, LeachEpochs, LeachParams, DEFAULT_P};
pub use round::{run_round, RoundOutcome, SimState};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::{FuzzyError, FuzzyInferenceSystem};
use crate::network::NetworkError;

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("no alive nodes left")]
    NoAliveNodes,
    #[error("cluster formation needs at least one head")]
    NoHeads,
    #[error("invalid protocol parameter: {0}")]
    Param(String),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolKind {
    Leach,
    F3n,
    Eeds,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 3] = [ProtocolKind::Eeds, ProtocolKind::F3n, ProtocolKind::Leach];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Leach => "leach",
            Self::F3n => "f3n",
            Self::Eeds => "eeds",
        }
    }

    pub fn is_fuzzy(&self) -> bool {
        !matches!(self, Self::Leach)
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProtocolKind {
    type Err = ProtocolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "leach" => Ok(Self::Leach),
            "f3n" => Ok(Self::F3n),
            "eeds" => Ok(Self::Eeds),
            other => Err(ProtocolError::Param(format!("unknown protocol `{other}`"))),
        }
    }
}

/// An election protocol with its parameters and controllers.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Protocol {
    Leach(LeachParams),
    F3n(F3nParams),
    Eeds(Box<EedsParams>),
}

impl Protocol {
    pub fn kind(&self) -> ProtocolKind {
        match self {
            Self::Leach(_) => ProtocolKind::Leach,
            Self::F3n(_) => ProtocolKind::F3n,
            Self::Eeds(_) => ProtocolKind::Eeds,
        }
    }

    /// Fuzzy controllers by role name; empty for LEACH.
    pub fn controllers(&self) -> Vec<(&'static str, &FuzzyInferenceSystem)> {
        match self {
            Self::Leach(_) => Vec::new(),
            Self::F3n(p) => vec![("f3n", &p.fis)],
            Self::Eeds(p) => vec![("local", &p.local_fis), ("global", &p.global_fis)],
        }
    }
}
