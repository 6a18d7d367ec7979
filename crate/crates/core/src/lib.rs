//! PID tuning for a two-area load frequency control (LFC) system.
//!
//! The crate is organised bottom-up:
//!
//! - [`plant`]: the PID-augmented nine-state linear model of two identical
//!   non-reheat thermal areas coupled by a tie-line.
//! - [`simulator`]: fixed-step RK4 integration under step load perturbations,
//!   the ITAE objective and the benchmark load cases.
//! - [`optimizers`]: a bounded minimisation framework with the enhanced
//!   gradient-based optimizer (EGBO), its parent GBO, and PSO, GWO, SCA and
//!   ChOA baselines.
//! - [`stats`]: Friedman / Kendall's W, Bonferroni post-hoc, Wilcoxon
//!   signed-rank and Levene tests plus the special functions behind them.
//! - [`harness`]: seeded multi-run experiments with resumable CSV persistence.
//! - [`config`]: the TOML configuration tree shared by the harness and CLI.

pub mod config;
pub mod error;
pub mod harness;
pub mod optimizers;
pub mod plant;
pub mod simulator;
pub mod space;
pub mod stats;

pub use config::{Config, Profile};
pub use error::{Error, Result};
pub use optimizers::{Algorithm, Objective, OptimizerConfig, RunTrace};
pub use plant::{ClosedLoopMatrix, CoefficientSet, CoefficientSource, PidGains, PlantParams, StateVector};
pub use simulator::{LoadCase, SimConfig, Trajectory};
pub use space::SearchSpace;
