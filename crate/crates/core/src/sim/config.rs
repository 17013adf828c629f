use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::SimError;
use crate::energy::RadioParams;
use crate::network::Position;
use crate::protocols::{
    EedsParams, F3nParams, LeachParams, Protocol, ProtocolKind, DEFAULT_CH_FRACTION, DEFAULT_P,
    DEFAULT_QUALIFICATION_THRESHOLD, DEFAULT_RATE_WINDOW,
};

/// Accepted spelling of `initial_energy`.
pub const ENERGY_ALIAS: &str = "energy";

/// Every key accepted in a run configuration document.
pub const CONFIG_KEYS: &[&str] = &[
    "protocol",
    "nodes",
    "area",
    "initial_energy",
    "rounds",
    "seed",
    "radio_range",
    "bs_pos",
    "e_elec",
    "eps_amp",
    "e_da",
    "packet_bits",
    "p",
    "ch_fraction",
    "qualification_threshold",
    "e_rate_window",
    "deployment",
];

/// Flat run configuration. Optional geometry keys are filled in by
/// [`SimConfig::resolve`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub protocol: ProtocolKind,
    pub nodes: usize,
    pub area: [f64; 2],
    #[serde(default = "defaults::initial_energy", alias = "energy")]
    pub initial_energy: f64,
    #[serde(default = "defaults::rounds")]
    pub rounds: u64,
    #[serde(default)]
    pub seed: u64,
    /// Defaults to a quarter of the longer field side.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radio_range: Option<f64>,
    /// Defaults to the middle of the top edge pushed out by half the height.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bs_pos: Option<[f64; 2]>,
    #[serde(default = "defaults::e_elec")]
    pub e_elec: f64,
    #[serde(default = "defaults::eps_amp")]
    pub eps_amp: f64,
    #[serde(default = "defaults::e_da")]
    pub e_da: f64,
    #[serde(default = "defaults::packet_bits")]
    pub packet_bits: u64,
    #[serde(default = "defaults::p")]
    pub p: f64,
    #[serde(default = "defaults::ch_fraction")]
    pub ch_fraction: f64,
    #[serde(default = "defaults::qualification_threshold")]
    pub qualification_threshold: f64,
    #[serde(default = "defaults::e_rate_window")]
    pub e_rate_window: usize,
    /// Replay positions and energies from a topology file instead of
    /// drawing them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deployment: Option<PathBuf>,
}

mod defaults {
    use super::*;

    pub fn initial_energy() -> f64 {
        0.1
    }
    pub fn rounds() -> u64 {
        500
    }
    pub fn e_elec() -> f64 {
        RadioParams::default().e_elec
    }
    pub fn eps_amp() -> f64 {
        RadioParams::default().eps_amp
    }
    pub fn e_da() -> f64 {
        RadioParams::default().e_da
    }
    pub fn packet_bits() -> u64 {
        RadioParams::default().packet_bits
    }
    pub fn p() -> f64 {
        DEFAULT_P
    }
    pub fn ch_fraction() -> f64 {
        DEFAULT_CH_FRACTION
    }
    pub fn qualification_threshold() -> f64 {
        DEFAULT_QUALIFICATION_THRESHOLD
    }
    pub fn e_rate_window() -> usize {
        DEFAULT_RATE_WINDOW
    }
}

impl SimConfig {
    /// Config with every optional key at its default.
    pub fn new(protocol: ProtocolKind, nodes: usize, area: [f64; 2]) -> Self {
        Self {
            protocol,
            nodes,
            area,
            initial_energy: defaults::initial_energy(),
            rounds: defaults::rounds(),
            seed: 0,
            radio_range: None,
            bs_pos: None,
            e_elec: defaults::e_elec(),
            eps_amp: defaults::eps_amp(),
            e_da: defaults::e_da(),
            packet_bits: defaults::packet_bits(),
            p: defaults::p(),
            ch_fraction: defaults::ch_fraction(),
            qualification_threshold: defaults::qualification_threshold(),
            e_rate_window: defaults::e_rate_window(),
            deployment: None,
        }
    }

    /// Fills derived defaults and checks every range.
    pub fn resolve(mut self) -> Result<Self, SimError> {
        let [w, h] = self.area;
        if !(w > 0.0 && h > 0.0 && w.is_finite() && h.is_finite()) {
            return Err(SimError::range("area", "sides must be positive and finite"));
        }
        self.radio_range.get_or_insert(w.max(h) / 4.0);
        self.bs_pos.get_or_insert([w / 2.0, 1.5 * h]);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let positive = |key: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(SimError::range(key, "must be positive and finite"))
            }
        };
        if self.nodes == 0 {
            return Err(SimError::range("nodes", "must be at least 1"));
        }
        if self.rounds == 0 {
            return Err(SimError::range("rounds", "must be at least 1"));
        }
        positive("area", self.area[0].min(self.area[1]))?;
        positive("initial_energy", self.initial_energy)?;
        positive("e_elec", self.e_elec)?;
        positive("eps_amp", self.eps_amp)?;
        positive("e_da", self.e_da)?;
        if self.packet_bits == 0 {
            return Err(SimError::range("packet_bits", "must be at least 1"));
        }
        if let Some(r) = self.radio_range {
            positive("radio_range", r)?;
        }
        if let Some([x, y]) = self.bs_pos {
            if !(x.is_finite() && y.is_finite()) {
                return Err(SimError::range("bs_pos", "must be finite"));
            }
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(SimError::range("p", "must lie in (0, 1)"));
        }
        if !(self.ch_fraction > 0.0 && self.ch_fraction < 1.0) {
            return Err(SimError::range("ch_fraction", "must lie in (0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.qualification_threshold) {
            return Err(SimError::range(
                "qualification_threshold",
                "must lie in [0, 1]",
            ));
        }
        if self.e_rate_window == 0 {
            return Err(SimError::range("e_rate_window", "must be at least 1"));
        }
        Ok(())
    }

    pub fn radio(&self) -> RadioParams {
        RadioParams {
            e_elec: self.e_elec,
            eps_amp: self.eps_amp,
            e_da: self.e_da,
            packet_bits: self.packet_bits,
        }
    }

    pub fn radio_range(&self) -> f64 {
        self.radio_range
            .unwrap_or(self.area[0].max(self.area[1]) / 4.0)
    }

    pub fn bs_position(&self) -> Position {
        let [x, y] = self
            .bs_pos
            .unwrap_or([self.area[0] / 2.0, 1.5 * self.area[1]]);
        Position::new(x, y)
    }

    pub fn build_protocol(&self) -> Result<Protocol, SimError> {
        Ok(match self.protocol {
            ProtocolKind::Leach => Protocol::Leach(LeachParams::new(self.p)?),
            ProtocolKind::F3n => Protocol::F3n(F3nParams::new(self.ch_fraction)?),
            ProtocolKind::Eeds => Protocol::Eeds(Box::new(EedsParams::new(
                self.qualification_threshold,
                self.ch_fraction,
            )?)),
        })
    }

    /// Same config for another protocol.
    pub fn with_protocol(&self, protocol: ProtocolKind) -> Self {
        Self {
            protocol,
            ..self.clone()
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }
}
