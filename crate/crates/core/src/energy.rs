//! First-order radio energy model: electronics cost per bit on both ends,
//! a d² amplifier term on transmit, and a per-signal aggregation cost.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EnergyError {
    #[error("`{0}` must be finite and non-negative, got {1}")]
    Negative(&'static str, f64),
    #[error("aggregation needs at least one signal")]
    NoSignals,
    #[error("radio parameter `{0}` must be strictly positive, got {1}")]
    BadParam(&'static str, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    /// J/bit spent by transmitter or receiver electronics.
    pub e_elec: f64,
    /// J/bit/m² spent by the transmit amplifier.
    pub eps_amp: f64,
    /// J/bit/signal spent on data aggregation.
    pub e_da: f64,
    pub packet_bits: u64,
}

impl Default for RadioParams {
    fn default() -> Self {
        Self {
            e_elec: 50e-9,
            eps_amp: 100e-12,
            e_da: 5e-9,
            packet_bits: 2000,
        }
    }
}

impl RadioParams {
    pub fn validate(&self) -> Result<(), EnergyError> {
        for (name, v) in [
            ("e_elec", self.e_elec),
            ("eps_amp", self.eps_amp),
            ("e_da", self.e_da),
            ("packet_bits", self.packet_bits as f64),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(EnergyError::BadParam(name, v));
            }
        }
        Ok(())
    }

    /// Cost of sending `bits` over `d` metres.
    pub fn tx_cost(&self, bits: f64, d: f64) -> Result<f64, EnergyError> {
        check("bits", bits)?;
        check("distance", d)?;
        Ok(self.e_elec * bits + self.eps_amp * bits * d * d)
    }

    pub fn rx_cost(&self, bits: f64) -> Result<f64, EnergyError> {
        check("bits", bits)?;
        Ok(self.e_elec * bits)
    }

    /// Cost of fusing `signals` signals of `bits` each.
    pub fn aggregation_cost(&self, bits: f64, signals: u64) -> Result<f64, EnergyError> {
        check("bits", bits)?;
        if signals == 0 {
            return Err(EnergyError::NoSignals);
        }
        Ok(self.e_da * bits * signals as f64)
    }

    /// One packet over `d` metres; `d` must be a real distance.
    pub fn packet_tx(&self, d: f64) -> f64 {
        self.tx_cost(self.packet_bits as f64, d)
            .expect("packet size and distances are non-negative")
    }

    pub fn packet_rx(&self) -> f64 {
        self.e_elec * self.packet_bits as f64
    }

    pub fn packet_aggregation(&self, signals: u64) -> f64 {
        self.e_da * self.packet_bits as f64 * signals as f64
    }
}

fn check(name: &'static str, v: f64) -> Result<(), EnergyError> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(EnergyError::Negative(name, v))
    }
}
