//! Shared fixtures for the criterion benches.

use lfc_core::simulator::{case_by_id, LfcObjective};
use lfc_core::{PidGains, PlantParams, SearchSpace, SimConfig};

/// Published EGBO gains for the symmetric two-area step.
pub fn reference_gains() -> PidGains {
    PidGains::new(-15.1838, -43.5993, -5.7641, -15.1738, -45.0, -5.761)
}

pub fn objective(case: u8) -> LfcObjective {
    LfcObjective::new(PlantParams::default(), case_by_id(case).expect("known case"), SimConfig::default(), SearchSpace::default())
        .expect("default configuration is valid")
}
