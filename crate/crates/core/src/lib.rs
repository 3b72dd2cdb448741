//! Two-phase opinion-investment games on social networks.
//!
//! Nodes update their opinions by mixing a fixed initial bias, their
//! neighbours' current opinions and the direct influence of two competing
//! camps (good = +1, bad = -1). Running the dynamics to convergence is one
//! *phase*; the converged opinions become the biases of the next phase.
//!
//! The crate provides:
//!
//! * [`model`]: the network, its parameters and weight-constraint validation,
//!   plus edge-list ingestion;
//! * [`dynamics`]: per-phase steady states and phase chaining;
//! * [`centrality`]: single- and multiphase Katz centralities and rows of
//!   `(I - w)^-1`;
//! * [`strategy_fixed`]: farsighted / myopic / bounded strategies when the
//!   camp weights are fixed;
//! * [`strategy_dependent`]: the bias-dependent camp weight setting, with the
//!   single-camp budget split and the two-camp zero-sum game;
//! * [`game`]: a simplex-based zero-sum matrix game solver;
//! * [`harness`]: synthetic graphs, weight generation and `w_ii^0` sweeps.

pub mod centrality;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod harness;
pub mod model;
pub mod strategy_dependent;
pub mod strategy_fixed;

mod solve;

pub use error::{Error, Result};
pub use model::{Budgets, Camp, InvestmentPlan, Network, NetworkBuilder, Phase, Topology};
pub use solve::{Method, SolverConfig};
