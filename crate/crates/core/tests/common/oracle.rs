use lfc_core::plant::{N_STATES, U1, U2};
use lfc_core::{PidGains, PlantParams};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Open-loop plant equations written out independently of the library.
pub fn plant_rhs(p: &PlantParams, x: &[f64; N_STATES], w: [f64; 2]) -> [f64; 7] {
    let sync = 2.0 * std::f64::consts::PI * p.t12;
    [
        (-x[0] + p.kps1 * (x[1] - x[6] - w[0])) / p.tps1,
        (x[2] - x[1]) / p.tt1,
        (-x[0] / p.r1 - x[2] + x[U1]) / p.tsg1,
        (-x[3] + p.kps2 * (x[4] + p.a12 * x[6] - w[1])) / p.tps2,
        (x[5] - x[4]) / p.tt2,
        (-x[3] / p.r2 - x[5] + x[U2]) / p.tsg2,
        sync * (x[0] - x[3]),
    ]
}

pub fn aces(p: &PlantParams, x: &[f64]) -> (f64, f64) {
    (p.b1 * x[0] + x[6], p.b2 * x[3] - p.a12 * x[6])
}

/// Full closed-loop derivative: the controller rows are
/// `u' = Kp ace' + Ki ace + Kd ace''`, with `ace''` taken as a central
/// difference of `ace'` along the flow.
pub fn oracle_derivative(p: &PlantParams, k: &PidGains, x: &[f64; N_STATES], w: [f64; 2]) -> ([f64; N_STATES], f64) {
    let f7 = plant_rhs(p, x, w);
    let ace_dot = |s: &[f64; N_STATES]| {
        let d = plant_rhs(p, s, w);
        aces(p, &d)
    };
    let mut flow = [0.0; N_STATES];
    flow[..7].copy_from_slice(&f7);
    let h = 1e-3;
    let shifted = |sign: f64| std::array::from_fn::<f64, N_STATES, _>(|i| x[i] + sign * h * flow[i]);
    let (plus, minus) = (ace_dot(&shifted(1.0)), ace_dot(&shifted(-1.0)));
    let dd = ((plus.0 - minus.0) / (2.0 * h), (plus.1 - minus.1) / (2.0 * h));
    let a = aces(p, x);
    let d = aces(p, &f7);
    let u1 = k.kp1 * d.0 + k.ki1 * a.0 + k.kd1 * dd.0;
    let u2 = k.kp2 * d.1 + k.ki2 * a.1 + k.kd2 * dd.1;
    let scale = [k.kp1 * d.0, k.ki1 * a.0, k.kd1 * dd.0, k.kp2 * d.1, k.ki2 * a.1, k.kd2 * dd.1]
        .iter()
        .fold(1.0f64, |m, v| m.max(v.abs()));
    let mut out = [0.0; N_STATES];
    out[..7].copy_from_slice(&f7);
    out[U1] = u1;
    out[U2] = u2;
    (out, scale)
}

pub fn random_params(rng: &mut ChaCha8Rng) -> PlantParams {
    let d = PlantParams::default();
    let mut s = |v: f64| v * rng.random_range(0.5..1.5);
    PlantParams {
        r1: s(d.r1),
        r2: s(d.r2),
        b1: s(d.b1),
        b2: s(d.b2),
        tsg1: s(d.tsg1),
        tsg2: s(d.tsg2),
        tt1: s(d.tt1),
        tt2: s(d.tt2),
        tps1: s(d.tps1),
        tps2: s(d.tps2),
        kps1: s(d.kps1),
        kps2: s(d.kps2),
        t12: s(0.0867),
        a12: s(d.a12),
        ..d
    }
}

pub fn random_gains(rng: &mut ChaCha8Rng) -> PidGains {
    PidGains::new(
        rng.random_range(-16.0..0.0),
        rng.random_range(-45.0..0.0),
        rng.random_range(-6.0..0.0),
        rng.random_range(-16.0..0.0),
        rng.random_range(-45.0..0.0),
        rng.random_range(-6.0..0.0),
    )
}
