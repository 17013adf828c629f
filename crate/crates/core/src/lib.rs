//! Fuzzy-logic cluster-head election for wireless sensor networks: a
//! Mamdani inference engine, a first-order radio energy model, LEACH and
//! two fuzzy election protocols, and a seeded round-based simulator.

pub mod energy;
pub mod fuzzy;
pub mod io;
pub mod network;
pub mod protocols;
pub mod sim;
