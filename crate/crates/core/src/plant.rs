//! Closed-loop state-space model of the PID-controlled two-area system.
//!
//! State ordering is `(x1..x7, u1, u2)`:
//!
//! | index | symbol | meaning |
//! |-------|--------|---------|
//! | 0 | x1 | area-1 frequency deviation |
//! | 1 | x2 | area-1 turbine output change |
//! | 2 | x3 | area-1 governor valve change |
//! | 3 | x4 | area-2 frequency deviation |
//! | 4 | x5 | area-2 turbine output change |
//! | 5 | x6 | area-2 governor valve change |
//! | 6 | x7 | tie-line power deviation |
//! | 7 | u1 | area-1 controller output |
//! | 8 | u2 | area-2 controller output |
//!
//! The controllers act on the area control errors
//! `ace1 = b1*x1 + x7` and `ace2 = b2*x4 - a12*x7`; differentiating
//! `u = Kp*ace + Ki*∫ace + Kd*d(ace)/dt` once gives the last two rows of the
//! state matrix. Those rows can come from the chain-rule expansion
//! ([`analytic_coefficients`]) or from the published coefficient table
//! ([`printed_coefficients`]); the two agree everywhere except `e1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub const N_STATES: usize = 9;

pub const X1: usize = 0;
pub const X2: usize = 1;
pub const X3: usize = 2;
pub const X4: usize = 3;
pub const X5: usize = 4;
pub const X6: usize = 5;
pub const X7: usize = 6;
pub const U1: usize = 7;
pub const U2: usize = 8;

/// Synchronising coefficient used when none is configured.
///
/// Calibrated by replaying the published optimal gains; see the README.
pub const DEFAULT_T12: f64 = 0.008;

/// Which coefficient set feeds the controller rows of the state matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientSource {
    /// Chain-rule expansion of the PID law through the plant equations.
    #[default]
    Analytic,
    /// The coefficient table exactly as published.
    Printed,
}

/// Physical constants of the two areas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlantParams {
    /// Speed regulation (Hz/pu-MW).
    pub r1: f64,
    pub r2: f64,
    /// Frequency bias (pu-MW/Hz).
    pub b1: f64,
    pub b2: f64,
    /// Governor time constants (s).
    pub tsg1: f64,
    pub tsg2: f64,
    /// Turbine time constants (s).
    pub tt1: f64,
    pub tt2: f64,
    /// Generator-load time constants (s).
    pub tps1: f64,
    pub tps2: f64,
    /// Generator-load gains (Hz/pu-MW).
    pub kps1: f64,
    pub kps2: f64,
    /// Synchronising coefficient; enters the model as `2*pi*t12`.
    pub t12: f64,
    /// Area size ratio.
    pub a12: f64,
    pub coefficients: CoefficientSource,
}

impl Default for PlantParams {
    fn default() -> Self {
        Self {
            r1: 3.0,
            r2: 3.0,
            b1: 0.425,
            b2: 0.425,
            tsg1: 0.4,
            tsg2: 0.4,
            tt1: 0.5,
            tt2: 0.5,
            tps1: 20.0,
            tps2: 20.0,
            kps1: 100.0,
            kps2: 100.0,
            t12: DEFAULT_T12,
            a12: 1.0,
            coefficients: CoefficientSource::Analytic,
        }
    }
}

impl PlantParams {
    pub fn with_t12(mut self, t12: f64) -> Self {
        self.t12 = t12;
        self
    }

    pub fn with_coefficients(mut self, source: CoefficientSource) -> Self {
        self.coefficients = source;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fields: [(&'static str, f64); 14] = [
            ("r1", self.r1),
            ("r2", self.r2),
            ("b1", self.b1),
            ("b2", self.b2),
            ("tsg1", self.tsg1),
            ("tsg2", self.tsg2),
            ("tt1", self.tt1),
            ("tt2", self.tt2),
            ("tps1", self.tps1),
            ("tps2", self.tps2),
            ("kps1", self.kps1),
            ("kps2", self.kps2),
            ("t12", self.t12),
            ("a12", self.a12),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value <= 0.0 {
                return Err(invalid(name, format!("must be finite and > 0, got {value}")));
            }
        }
        Ok(())
    }

    /// `2*pi*t12`, the coefficient that actually appears in the equations.
    #[inline]
    pub fn sync(&self) -> f64 {
        2.0 * PI * self.t12
    }
}

/// The six controller gains, ordered `(kp1, ki1, kd1, kp2, ki2, kd2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PidGains {
    pub kp1: f64,
    pub ki1: f64,
    pub kd1: f64,
    pub kp2: f64,
    pub ki2: f64,
    pub kd2: f64,
}

impl PidGains {
    pub const DIM: usize = 6;
    pub const LABELS: [&'static str; 6] = ["kp1", "ki1", "kd1", "kp2", "ki2", "kd2"];

    pub fn new(kp1: f64, ki1: f64, kd1: f64, kp2: f64, ki2: f64, kd2: f64) -> Self {
        Self { kp1, ki1, kd1, kp2, ki2, kd2 }
    }

    pub fn from_slice(v: &[f64]) -> Result<Self> {
        if v.len() != Self::DIM {
            return Err(invalid(
                "gains",
                format!("expected {} values, got {}", Self::DIM, v.len()),
            ));
        }
        let g = Self::new(v[0], v[1], v[2], v[3], v[4], v[5]);
        g.validate()?;
        Ok(g)
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.kp1, self.ki1, self.kd1, self.kp2, self.ki2, self.kd2]
    }

    pub fn validate(&self) -> Result<()> {
        if self.to_array().iter().all(|g| g.is_finite()) {
            Ok(())
        } else {
            Err(invalid("gains", "all gains must be finite"))
        }
    }

    /// Gains with the two controllers exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.kp2, self.ki2, self.kd2, self.kp1, self.ki1, self.kd1)
    }
}

/// Full closed-loop state.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StateVector(pub [f64; N_STATES]);

impl StateVector {
    pub fn zero() -> Self {
        Self([0.0; N_STATES])
    }

    pub fn x1(&self) -> f64 {
        self.0[X1]
    }
    pub fn x4(&self) -> f64 {
        self.0[X4]
    }
    pub fn x7(&self) -> f64 {
        self.0[X7]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Image under the area exchange `x1<->x4, x2<->x5, x3<->x6, x7 -> -x7, u1<->u2`.
    pub fn area_swapped(&self) -> Self {
        let s = &self.0;
        Self([s[X4], s[X5], s[X6], s[X1], s[X2], s[X3], -s[X7], s[U2], s[U1]])
    }
}

/// Coefficients of `du1/dt` (`e`) and `du2/dt` (`f`).
///
/// Index `k` in `0..7` multiplies state `x(k+1)`; indices 7 and 8 multiply the
/// load steps `w1` and `w2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoefficientSet {
    pub e: [f64; 9],
    pub f: [f64; 9],
}

impl CoefficientSet {
    /// `(name, value)` pairs in the order `e1..e9, f1..f9`.
    pub fn named(&self) -> impl Iterator<Item = (String, f64)> + '_ {
        let e = self.e.iter().enumerate().map(|(k, v)| (format!("e{}", k + 1), *v));
        let f = self.f.iter().enumerate().map(|(k, v)| (format!("f{}", k + 1), *v));
        e.chain(f)
    }
}

/// `dx/dt = a*x + b_w*(w1, w2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedLoopMatrix {
    pub a: [[f64; N_STATES]; N_STATES],
    pub b_w: [[f64; 2]; N_STATES],
}

impl ClosedLoopMatrix {
    pub fn derivative(&self, x: &[f64; N_STATES], w: [f64; 2]) -> [f64; N_STATES] {
        let mut dx = [0.0; N_STATES];
        for (i, row) in self.a.iter().enumerate() {
            let mut acc = self.b_w[i][0] * w[0] + self.b_w[i][1] * w[1];
            for (a, xj) in row.iter().zip(x) {
                acc += a * xj;
            }
            dx[i] = acc;
        }
        dx
    }

    /// Constant forcing term `b_w * w`.
    pub fn forcing(&self, w: [f64; 2]) -> [f64; N_STATES] {
        let mut out = [0.0; N_STATES];
        for (o, b) in out.iter_mut().zip(&self.b_w) {
            *o = b[0] * w[0] + b[1] * w[1];
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.a.iter().flatten().all(|v| v.is_finite())
            && self.b_w.iter().flatten().all(|v| v.is_finite())
    }
}

/// Derivatives of the seven plant states for the given controller outputs
/// (`state.0[U1]`, `state.0[U2]`) and load steps.
pub fn open_loop_derivative(p: &PlantParams, state: &StateVector, w1: f64, w2: f64) -> [f64; 7] {
    let s = &state.0;
    let g = p.sync();
    [
        p.kps1 / p.tps1 * (s[X2] - s[X7] - w1) - s[X1] / p.tps1,
        (s[X3] - s[X2]) / p.tt1,
        (s[U1] - s[X1] / p.r1 - s[X3]) / p.tsg1,
        // Tie-line flow 1 -> 2 raises area-2 frequency, hence `+ a12*x7`.
        p.kps2 / p.tps2 * (s[X5] + p.a12 * s[X7] - w2) - s[X4] / p.tps2,
        (s[X6] - s[X5]) / p.tt2,
        (s[U2] - s[X4] / p.r2 - s[X6]) / p.tsg2,
        g * (s[X1] - s[X4]),
    ]
}

/// Area control errors `(ace1, ace2)`.
pub fn ace(p: &PlantParams, state: &StateVector) -> (f64, f64) {
    let s = &state.0;
    (p.b1 * s[X1] + s[X7], p.b2 * s[X4] - p.a12 * s[X7])
}

/// The published coefficient table, term for term (`B1 = b1`, `B2 = b2`).
pub fn printed_coefficients(p: &PlantParams, k: &PidGains) -> CoefficientSet {
    let g = p.sync();
    let (b1, b2, a12) = (p.b1, p.b2, p.a12);
    let (kps1, kps2, tps1, tps2, tt1, tt2) = (p.kps1, p.kps2, p.tps1, p.tps2, p.tt1, p.tt2);
    let PidGains { kp1, ki1, kd1, kp2, ki2, kd2 } = *k;

    let e = [
        g * kp1 + ki1 * b1 - kp1 * b1 / tps1,
        kp1 * b1 * kps1 / tps1 - kd1 * b1 * kps1 / (tps1 * tt1) - kd1 * b1 * kps1 / (tps1 * tps1)
            + kd1 * kps1 * g / tps1,
        kd1 * b1 * kps1 / (tps1 * tt1),
        -kp1 * g + kd1 * b1 * kps1 * g / tps1 + kd1 * g / tps2,
        -kd1 * kps2 * g / tps2,
        0.0,
        ki1 - kp1 * b1 * kps1 / tps1 + kd1 * b1 * kps1 / (tps1 * tps1) - kd1 * kps1 * g / tps1
            - kd1 * kps2 * g * a12 / tps2,
        -kp1 * b1 * kps1 / tps1 - kd1 * g * kps1 / tps1 + kd1 * b1 * kps1 / (tps1 * tps1),
        kd1 * g * kps2 / tps2,
    ];
    let f = [
        -kp2 * g * a12 + kd2 * b2 * kps2 * g * a12 / tps2 + kd2 * a12 * g / tps1,
        -kd2 * kps1 * g * a12 / tps1,
        0.0,
        -kp2 * b2 / tps2 + kp2 * g * a12 + ki2 * b2 - kd2 * b2 * kps2 * g * a12 / tps2
            + kd2 * b2 / (tps2 * tps2)
            - kd2 * g * a12 / tps2,
        kp2 * b2 * kps2 / tps2 - kd2 * b2 * kps2 / (tps2 * tt2) - kd2 * b2 * kps2 / (tps2 * tps2)
            + kd2 * kps2 * g * a12 / tps2,
        kd2 * b2 * kps2 / (tps2 * tt2),
        kp2 * b2 * kps2 * a12 / tps2 - kd2 * b2 * kps2 * a12 / (tps2 * tps2)
            + kd2 * kps1 * g * a12 / tps1
            - ki2 * a12
            + kd2 * kps2 * g * a12 * a12 / tps2,
        kd2 * g * kps1 * a12 / tps1,
        -kp2 * b2 * kps2 / tps2 - kd2 * g * kps2 * a12 / tps2 + kd2 * b2 * kps2 / (tps2 * tps2),
    ];
    CoefficientSet { e, f }
}

/// Coefficients from differentiating the PID law through the plant equations.
///
/// `du/dt = Kp*d(ace)/dt + Ki*ace + Kd*d²(ace)/dt²`, with the first and second
/// derivatives of `ace` expanded in terms of the states and load steps.
pub fn analytic_coefficients(p: &PlantParams, k: &PidGains) -> CoefficientSet {
    let g = p.sync();
    let (alpha1, tau1) = (p.kps1 / p.tps1, 1.0 / p.tps1);
    let (alpha2, tau2) = (p.kps2 / p.tps2, 1.0 / p.tps2);
    let (b1, b2, a12) = (p.b1, p.b2, p.a12);

    // Layout per vector: [x1, x2, x3, x4, x5, x6, x7, w1, w2].
    let prop1 = [g - b1 * tau1, b1 * alpha1, 0.0, -g, 0.0, 0.0, -b1 * alpha1, -b1 * alpha1, 0.0];
    let int1 = [b1, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
    let c1 = g - b1 * tau1;
    let der1 = [
        -b1 * alpha1 * g - g * tau1 + b1 * tau1 * tau1,
        -b1 * alpha1 / p.tt1 + c1 * alpha1,
        b1 * alpha1 / p.tt1,
        b1 * alpha1 * g + g * tau2,
        -g * alpha2,
        0.0,
        -c1 * alpha1 - g * alpha2 * a12,
        -c1 * alpha1,
        g * alpha2,
    ];

    let prop2 = [
        -a12 * g,
        0.0,
        0.0,
        a12 * g - b2 * tau2,
        b2 * alpha2,
        0.0,
        b2 * alpha2 * a12,
        0.0,
        -b2 * alpha2,
    ];
    let int2 = [0.0, 0.0, 0.0, b2, 0.0, 0.0, -a12, 0.0, 0.0];
    let c2 = a12 * g - b2 * tau2;
    let der2 = [
        b2 * alpha2 * a12 * g + a12 * g * tau1,
        -a12 * g * alpha1,
        0.0,
        -b2 * alpha2 * a12 * g - c2 * tau2,
        -b2 * alpha2 / p.tt2 + c2 * alpha2,
        b2 * alpha2 / p.tt2,
        c2 * alpha2 * a12 + a12 * g * alpha1,
        a12 * g * alpha1,
        -c2 * alpha2,
    ];

    let combine = |kp: f64, ki: f64, kd: f64, p: &[f64; 9], i: &[f64; 9], d: &[f64; 9]| {
        std::array::from_fn(|j| kp * p[j] + ki * i[j] + kd * d[j])
    };
    CoefficientSet {
        e: combine(k.kp1, k.ki1, k.kd1, &prop1, &int1, &der1),
        f: combine(k.kp2, k.ki2, k.kd2, &prop2, &int2, &der2),
    }
}

/// One entry where the published table disagrees with the derivation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientDiscrepancy {
    pub name: String,
    pub printed: f64,
    pub analytic: f64,
    pub relative: f64,
}

/// Entries of the published table that differ from the derivation by more
/// than `rel_tol` (relative to the larger magnitude).
pub fn coefficient_discrepancies(
    p: &PlantParams,
    k: &PidGains,
    rel_tol: f64,
) -> Vec<CoefficientDiscrepancy> {
    let printed = printed_coefficients(p, k);
    let analytic = analytic_coefficients(p, k);
    printed
        .named()
        .zip(analytic.named())
        .filter_map(|((name, pv), (_, av))| {
            let scale = pv.abs().max(av.abs());
            let relative = if scale == 0.0 { 0.0 } else { (pv - av).abs() / scale };
            (relative > rel_tol).then_some(CoefficientDiscrepancy {
                name,
                printed: pv,
                analytic: av,
                relative,
            })
        })
        .collect()
}

/// Assembles the 9x9 closed-loop matrix and the 9x2 disturbance matrix.
pub fn closed_loop_matrix(p: &PlantParams, k: &PidGains) -> ClosedLoopMatrix {
    let g = p.sync();
    let mut a = [[0.0; N_STATES]; N_STATES];
    let mut b_w = [[0.0; 2]; N_STATES];

    a[X1][X1] = -1.0 / p.tps1;
    a[X1][X2] = p.kps1 / p.tps1;
    a[X1][X7] = -p.kps1 / p.tps1;
    b_w[X1][0] = -p.kps1 / p.tps1;

    a[X2][X2] = -1.0 / p.tt1;
    a[X2][X3] = 1.0 / p.tt1;

    a[X3][X1] = -1.0 / (p.r1 * p.tsg1);
    a[X3][X3] = -1.0 / p.tsg1;
    a[X3][U1] = 1.0 / p.tsg1;

    a[X4][X4] = -1.0 / p.tps2;
    a[X4][X5] = p.kps2 / p.tps2;
    a[X4][X7] = p.kps2 / p.tps2 * p.a12;
    b_w[X4][1] = -p.kps2 / p.tps2;

    a[X5][X5] = -1.0 / p.tt2;
    a[X5][X6] = 1.0 / p.tt2;

    a[X6][X4] = -1.0 / (p.r2 * p.tsg2);
    a[X6][X6] = -1.0 / p.tsg2;
    a[X6][U2] = 1.0 / p.tsg2;

    a[X7][X1] = g;
    a[X7][X4] = -g;

    let coeffs = match p.coefficients {
        CoefficientSource::Analytic => analytic_coefficients(p, k),
        CoefficientSource::Printed => printed_coefficients(p, k),
    };
    a[U1][..7].copy_from_slice(&coeffs.e[..7]);
    a[U2][..7].copy_from_slice(&coeffs.f[..7]);
    b_w[U1] = [coeffs.e[7], coeffs.e[8]];
    b_w[U2] = [coeffs.f[7], coeffs.f[8]];

    ClosedLoopMatrix { a, b_w }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table3_egbo() -> PidGains {
        PidGains::new(-15.1838, -43.5993, -5.7641, -15.1738, -45.0, -5.761)
    }

    #[test]
    fn default_params_match_nominal_table() {
        let p = PlantParams::default();
        assert_eq!((p.r1, p.r2, p.b1, p.b2), (3.0, 3.0, 0.425, 0.425));
        assert_eq!((p.tsg1, p.tt1, p.tps1, p.kps1, p.a12), (0.4, 0.5, 20.0, 100.0, 1.0));
        assert_eq!((p.tsg2, p.tt2, p.tps2, p.kps2), (0.4, 0.5, 20.0, 100.0));
        p.validate().unwrap();
    }

    #[test]
    fn validation_rejects_nonpositive_constants() {
        assert!(PlantParams { tsg2: 0.0, ..Default::default() }.validate().is_err());
        assert!(PlantParams { b1: f64::NAN, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn zero_state_is_fixed_point() {
        let p = PlantParams::default();
        assert_eq!(open_loop_derivative(&p, &StateVector::zero(), 0.0, 0.0), [0.0; 7]);
    }

    #[test]
    fn unit_frequency_deviation_derivative() {
        let p = PlantParams::default().with_t12(0.0867);
        let mut s = StateVector::zero();
        s.0[X1] = 1.0;
        let d = open_loop_derivative(&p, &s, 0.0, 0.0);
        assert!((d[0] + 0.05).abs() < 1e-15);
        assert!((d[2] + 1.0 / 1.2).abs() < 1e-12);
        assert!((d[2] + 0.8333).abs() < 1e-4);
        assert!((d[6] - 2.0 * PI * 0.0867).abs() < 1e-15);
        assert_eq!([d[1], d[3], d[4], d[5]], [0.0; 4]);
    }

    #[test]
    fn zero_gains_give_zero_coefficients() {
        let p = PlantParams::default();
        let k = PidGains::default();
        assert!(printed_coefficients(&p, &k).named().all(|(_, v)| v == 0.0));
        assert!(analytic_coefficients(&p, &k).named().all(|(_, v)| v == 0.0));
    }

    #[test]
    fn printed_e3_for_unit_derivative_gain() {
        let p = PlantParams::default();
        let k = PidGains { kd1: 1.0, ..Default::default() };
        let c = printed_coefficients(&p, &k);
        assert!((c.e[2] - 4.25).abs() < 1e-12);
    }

    #[test]
    fn printed_integral_only_terms() {
        let p = PlantParams::default();
        let k = PidGains { ki1: 1.0, ..Default::default() };
        let c = printed_coefficients(&p, &k);
        assert!((c.e[0] - 0.425).abs() < 1e-15);
        assert!((c.e[6] - 1.0).abs() < 1e-15);
        for (j, v) in c.e.iter().enumerate() {
            if j != 0 && j != 6 {
                assert_eq!(*v, 0.0, "e{}", j + 1);
            }
        }
    }

    #[test]
    fn structural_zeros_hold() {
        let p = PlantParams::default();
        let k = table3_egbo();
        for c in [printed_coefficients(&p, &k), analytic_coefficients(&p, &k)] {
            assert_eq!(c.e[5], 0.0);
            assert_eq!(c.f[2], 0.0);
        }
    }

    #[test]
    fn published_table_differs_only_in_e1() {
        let p = PlantParams::default().with_t12(0.0867);
        let report = coefficient_discrepancies(&p, &table3_egbo(), 1e-9);
        let names: Vec<_> = report.iter().map(|d| d.name.as_str()).collect();
        assert_eq!(names, ["e1"]);
        // The missing part is Kd1 * (-b1*kps1*g/tps1 - g/tps1 + b1/tps1^2).
        let g = p.sync();
        let missing = -5.7641 * (-0.425 * 100.0 * g / 20.0 - g / 20.0 + 0.425 / 400.0);
        assert!((report[0].analytic - report[0].printed - missing).abs() < 1e-9);
    }

    #[test]
    fn matrix_plant_rows_with_zero_gains() {
        let p = PlantParams::default().with_t12(0.0867);
        let m = closed_loop_matrix(&p, &PidGains::default());
        assert_eq!(m.a[X1][X1], -0.05);
        assert_eq!(m.a[X2][X2], -2.0);
        assert_eq!(m.a[X3][X3], -2.5);
        assert!(m.a[U1].iter().chain(m.a[U2].iter()).all(|v| *v == 0.0));
        assert_eq!(m.b_w[U1], [0.0, 0.0]);
        assert!((m.a[X7][X1] - 0.5448).abs() < 5e-5);
    }

    #[test]
    fn disturbance_matrix_layout() {
        let p = PlantParams::default();
        let k = table3_egbo();
        let m = closed_loop_matrix(&p, &k);
        for (i, row) in m.b_w.iter().enumerate().take(7) {
            match i {
                X1 => assert_eq!(*row, [-5.0, 0.0]),
                X4 => assert_eq!(*row, [0.0, -5.0]),
                _ => assert_eq!(*row, [0.0, 0.0]),
            }
        }
        let c = analytic_coefficients(&p, &k);
        assert_eq!(m.b_w[U1], [c.e[7], c.e[8]]);
        assert_eq!(m.b_w[U2], [c.f[7], c.f[8]]);
    }

    #[test]
    fn printed_source_switches_controller_rows() {
        let p = PlantParams::default().with_coefficients(CoefficientSource::Printed);
        let k = table3_egbo();
        let m = closed_loop_matrix(&p, &k);
        let c = printed_coefficients(&p, &k);
        assert_eq!(&m.a[U1][..7], &c.e[..7]);
        assert_eq!(&m.a[U2][..7], &c.f[..7]);
    }

    #[test]
    fn ace_examples() {
        let p = PlantParams::default();
        assert_eq!(ace(&p, &StateVector::zero()), (0.0, 0.0));
        let mut s = StateVector::zero();
        s.0[X1] = 0.01;
        s.0[X7] = 0.002;
        assert!((ace(&p, &s).0 - 0.00625).abs() < 1e-15);
        let mut s = StateVector::zero();
        s.0[X4] = 0.01;
        s.0[X7] = 0.002;
        assert!((ace(&p, &s).1 - 0.00225).abs() < 1e-15);
    }

    #[test]
    fn gains_from_slice_checks_length() {
        assert!(PidGains::from_slice(&[1.0; 5]).is_err());
        assert!(PidGains::from_slice(&[1.0, 2.0, 3.0, 4.0, 5.0, f64::INFINITY]).is_err());
        let g = PidGains::from_slice(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(g.to_array(), [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(g.swapped().to_array(), [4.0, 5.0, 6.0, 1.0, 2.0, 3.0]);
    }
}
