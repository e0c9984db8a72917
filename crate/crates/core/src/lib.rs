//! Exact solving and strategy verification for Maker-Breaker and
//! Chooser-Picker games on finite hypergraphs.

pub mod cli;
pub mod constructions;
pub mod cp;
pub mod format;
pub mod hypergraph;
pub mod mb;
pub mod pairing;
pub mod position;
pub mod solve;
pub mod strategy;
pub mod suite;
