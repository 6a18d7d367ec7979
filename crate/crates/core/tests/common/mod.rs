#![allow(dead_code)]

pub mod oracle;

use lfc_core::PidGains;

/// Published best EGBO gain rows with their ITAE, indexed by case id - 1.
pub const EGBO_ROWS: [([f64; 6], f64); 5] = [
    ([-15.1838, -43.5993, -5.7641, -15.1738, -45.0, -5.761], 0.2292),
    ([-10.8375, -45.0, -4.7069, -16.0, -39.1146, -4.8704], 0.9378),
    ([-16.0, -45.0, -4.9366, -10.6501, -45.0, -4.6468], 0.95),
    ([-15.292, -45.0, -5.856, -15.3763, -23.4416, -5.4057], 0.2735),
    ([-15.1578, -21.3754, -5.3152, -15.0066, -45.0, -5.3152], 0.2772),
];

pub fn egbo_gains(case: u8) -> PidGains {
    PidGains::from_slice(&EGBO_ROWS[case as usize - 1].0).unwrap()
}
