//! Time-domain simulation of the closed loop and the ITAE objective.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::optimizers::Objective;
use crate::plant::{self, ClosedLoopMatrix, PidGains, PlantParams, StateVector, N_STATES, X1, X4, X7};
use crate::space::SearchSpace;

/// States beyond this magnitude are treated as a diverged (unstable) loop.
pub const DIVERGENCE_LIMIT: f64 = 1e6;

/// Base fitness assigned to a diverged simulation.
pub const DIVERGENCE_PENALTY: f64 = 1e6;

/// Horizon used when none is configured; calibrated together with
/// [`plant::DEFAULT_T12`].
pub const DEFAULT_T_FINAL: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    /// Integration step (s).
    pub dt: f64,
    /// Simulation horizon (s).
    pub t_final: f64,
    /// Keep every `record_stride`-th step in recorded trajectories.
    pub record_stride: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 0.01,
            t_final: DEFAULT_T_FINAL,
            record_stride: 1,
        }
    }
}

impl SimConfig {
    pub fn with_t_final(mut self, t_final: f64) -> Self {
        self.t_final = t_final;
        self
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = dt;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(invalid("sim.dt", "must be finite and > 0"));
        }
        if !(self.t_final.is_finite() && self.t_final >= self.dt) {
            return Err(invalid("sim.t_final", "must be finite and >= dt"));
        }
        let ratio = self.t_final / self.dt;
        if (ratio - ratio.round()).abs() > 1e-6 * ratio.max(1.0) {
            return Err(invalid("sim.t_final", "must be an integer multiple of dt"));
        }
        if self.record_stride == 0 {
            return Err(invalid("sim.record_stride", "must be >= 1"));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }
}

/// A constant step load perturbation applied at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadCase {
    pub id: u8,
    /// Area-1 load step (pu).
    pub w1: f64,
    /// Area-2 load step (pu).
    pub w2: f64,
}

impl LoadCase {
    pub fn new(id: u8, w1: f64, w2: f64) -> Result<Self> {
        let c = Self { id, w1, w2 };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, w) in [("w1", self.w1), ("w2", self.w2)] {
            if !(0.0..=1.0).contains(&w) {
                return Err(invalid(
                    if name == "w1" { "case.w1" } else { "case.w2" },
                    format!("load step must lie in [0, 1], got {w}"),
                ));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("case-{}", self.id)
    }

    pub fn w(&self) -> [f64; 2] {
        [self.w1, self.w2]
    }

    /// Looks up a catalogue case by `"case-3"`, `"3"` or `"case3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches("case").trim_start_matches(['-', '_']);
        let id: u8 = digits
            .parse()
            .map_err(|_| invalid("case", format!("unrecognised case `{s}`")))?;
        case_by_id(id)
    }
}

/// The five benchmark load cases.
pub fn case_catalog() -> Vec<LoadCase> {
    vec![
        LoadCase { id: 1, w1: 0.15, w2: 0.15 },
        LoadCase { id: 2, w1: 0.25, w2: 0.0 },
        LoadCase { id: 3, w1: 0.0, w2: 0.25 },
        LoadCase { id: 4, w1: 0.20, w2: 0.10 },
        LoadCase { id: 5, w1: 0.10, w2: 0.20 },
    ]
}

pub fn case_by_id(id: u8) -> Result<LoadCase> {
    case_catalog()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| invalid("case", format!("no case with id {id} (expected 1..=5)")))
}

/// Sampled closed-loop response.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    pub case: LoadCase,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn signal(&self, index: usize) -> Vec<f64> {
        self.states.iter().map(|s| s.0[index]).collect()
    }
}

/// One classical RK4 step for a general right-hand side.
pub fn rk4_step<F>(f: F, x: &[f64; N_STATES], dt: f64) -> [f64; N_STATES]
where
    F: Fn(&[f64; N_STATES]) -> [f64; N_STATES],
{
    let axpy = |a: &[f64; N_STATES], s: f64, b: &[f64; N_STATES]| -> [f64; N_STATES] {
        std::array::from_fn(|i| a[i] + s * b[i])
    };
    let k1 = f(x);
    let k2 = f(&axpy(x, dt / 2.0, &k1));
    let k3 = f(&axpy(x, dt / 2.0, &k2));
    let k4 = f(&axpy(x, dt, &k3));
    std::array::from_fn(|i| x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

type Mat = [[f64; N_STATES]; N_STATES];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[0.0; N_STATES]; N_STATES];
    for i in 0..N_STATES {
        for k in 0..N_STATES {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..N_STATES {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

fn mat_vec(a: &Mat, x: &[f64; N_STATES]) -> [f64; N_STATES] {
    std::array::from_fn(|i| a[i].iter().zip(x).map(|(a, x)| a * x).sum())
}

/// Classical RK4 for `dx/dt = A x + b` with constant `b`, folded into
/// `x' = phi x + gamma`.
///
/// For a linear time-invariant right-hand side the four RK4 stages collapse to
/// `phi = sum_{k<=4} (hA)^k / k!` and `gamma = h * sum_{k<=3} (hA)^k / (k+1)! * b`,
/// so this is the same integrator at a quarter of the cost per step.
#[derive(Debug, Clone)]
pub struct Rk4Propagator {
    phi: Mat,
    gamma: [f64; N_STATES],
}

impl Rk4Propagator {
    pub fn new(m: &ClosedLoopMatrix, w: [f64; 2], dt: f64) -> Self {
        let mut ha = m.a;
        ha.iter_mut().flatten().for_each(|v| *v *= dt);
        let ha2 = mat_mul(&ha, &ha);
        let ha3 = mat_mul(&ha2, &ha);
        let ha4 = mat_mul(&ha3, &ha);

        let mut phi = [[0.0; N_STATES]; N_STATES];
        let mut s = [[0.0; N_STATES]; N_STATES];
        for i in 0..N_STATES {
            for j in 0..N_STATES {
                let id = if i == j { 1.0 } else { 0.0 };
                phi[i][j] = id + ha[i][j] + ha2[i][j] / 2.0 + ha3[i][j] / 6.0 + ha4[i][j] / 24.0;
                s[i][j] = dt * (id + ha[i][j] / 2.0 + ha2[i][j] / 6.0 + ha3[i][j] / 24.0);
            }
        }
        let gamma = mat_vec(&s, &m.forcing(w));
        Self { phi, gamma }
    }

    #[inline]
    pub fn step(&self, x: &[f64; N_STATES]) -> [f64; N_STATES] {
        let mut out = self.gamma;
        for (o, row) in out.iter_mut().zip(&self.phi) {
            let mut acc = 0.0;
            for (p, xj) in row.iter().zip(x) {
                acc += p * xj;
            }
            *o += acc;
        }
        out
    }
}

#[inline]
fn diverged(x: &[f64; N_STATES]) -> bool {
    // Written so that NaN also counts as diverged.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    x.iter().any(|v| !(v.abs() <= DIVERGENCE_LIMIT))
}

/// Integrates from the zero state and records every `record_stride`-th step
/// (the final step is always kept).
pub fn integrate(m: &ClosedLoopMatrix, case: &LoadCase, cfg: &SimConfig) -> Result<Trajectory> {
    cfg.validate()?;
    if !m.is_finite() {
        return Err(invalid("matrix", "closed-loop matrix has non-finite entries"));
    }
    let steps = cfg.steps();
    let prop = Rk4Propagator::new(m, case.w(), cfg.dt);
    let capacity = steps / cfg.record_stride + 2;
    let mut times = Vec::with_capacity(capacity);
    let mut states = Vec::with_capacity(capacity);
    let mut x = [0.0; N_STATES];
    times.push(0.0);
    states.push(StateVector(x));
    for k in 1..=steps {
        x = prop.step(&x);
        let t = k as f64 * cfg.dt;
        if diverged(&x) {
            return Err(Error::Divergence { time: t, limit: DIVERGENCE_LIMIT });
        }
        if k % cfg.record_stride == 0 || k == steps {
            times.push(t);
            states.push(StateVector(x));
        }
    }
    Ok(Trajectory { times, states, case: *case })
}

#[inline]
fn itae_integrand(t: f64, x: &[f64; N_STATES]) -> f64 {
    t * (x[X1].abs() + x[X4].abs() + x[X7].abs())
}

/// Trapezoidal `∫ t (|x1| + |x4| + |x7|) dt` over the recorded samples.
pub fn itae(traj: &Trajectory) -> f64 {
    let mut acc = 0.0;
    for k in 1..traj.len() {
        let (t0, t1) = (traj.times[k - 1], traj.times[k]);
        let y0 = itae_integrand(t0, &traj.states[k - 1].0);
        let y1 = itae_integrand(t1, &traj.states[k].0);
        acc += 0.5 * (t1 - t0) * (y0 + y1);
    }
    acc
}

/// ITAE on the full integration grid without storing the trajectory.
pub fn itae_direct(m: &ClosedLoopMatrix, case: &LoadCase, cfg: &SimConfig) -> Result<f64> {
    cfg.validate()?;
    let steps = cfg.steps();
    let prop = Rk4Propagator::new(m, case.w(), cfg.dt);
    let mut x = [0.0; N_STATES];
    let mut prev = 0.0;
    let mut acc = 0.0;
    for k in 1..=steps {
        x = prop.step(&x);
        let t = k as f64 * cfg.dt;
        if diverged(&x) {
            return Err(Error::Divergence { time: t, limit: DIVERGENCE_LIMIT });
        }
        let y = itae_integrand(t, &x);
        acc += 0.5 * cfg.dt * (prev + y);
        prev = y;
    }
    Ok(acc)
}

/// Penalty for a loop that diverged at `time`; earlier divergence costs more.
pub fn divergence_penalty(time: f64, t_final: f64) -> f64 {
    DIVERGENCE_PENALTY * (1.0 + ((t_final - time) / t_final).clamp(0.0, 1.0))
}

/// ITAE of the closed loop for one gain vector. Unstable loops map to a
/// penalty of at least [`DIVERGENCE_PENALTY`] instead of an error.
pub fn evaluate(params: &PlantParams, gains: &PidGains, case: &LoadCase, cfg: &SimConfig) -> Result<f64> {
    params.validate()?;
    gains.validate()?;
    case.validate()?;
    let m = plant::closed_loop_matrix(params, gains);
    match itae_direct(&m, case, cfg) {
        Ok(v) => Ok(v),
        Err(Error::Divergence { time, .. }) => Ok(divergence_penalty(time, cfg.t_final)),
        Err(e) => Err(e),
    }
}

/// Simulates and returns the trajectory for a gain vector.
pub fn simulate(params: &PlantParams, gains: &PidGains, case: &LoadCase, cfg: &SimConfig) -> Result<Trajectory> {
    params.validate()?;
    gains.validate()?;
    case.validate()?;
    integrate(&plant::closed_loop_matrix(params, gains), case, cfg)
}

/// The ITAE minimisation problem for one load case, as an [`Objective`].
#[derive(Debug, Clone)]
pub struct LfcObjective {
    pub params: PlantParams,
    pub case: LoadCase,
    pub sim: SimConfig,
    pub space: SearchSpace,
}

impl LfcObjective {
    pub fn new(params: PlantParams, case: LoadCase, sim: SimConfig, space: SearchSpace) -> Result<Self> {
        params.validate()?;
        case.validate()?;
        sim.validate()?;
        space.validate()?;
        if space.dim() != PidGains::DIM {
            return Err(invalid("search_space", "the gain box must be 6-dimensional"));
        }
        Ok(Self { params, case, sim, space })
    }
}

impl Objective for LfcObjective {
    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        let gains = PidGains::new(x[0], x[1], x[2], x[3], x[4], x[5]);
        let m = plant::closed_loop_matrix(&self.params, &gains);
        match itae_direct(&m, &self.case, &self.sim) {
            Ok(v) => v,
            Err(Error::Divergence { time, .. }) => divergence_penalty(time, self.sim.t_final),
            // Configuration was validated at construction; non-finite gains end up here.
            Err(_) => 2.0 * DIVERGENCE_PENALTY,
        }
    }
}

/// Time-domain figures for one signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignalMetrics {
    /// Largest absolute value.
    pub peak: f64,
    /// Largest excursion on the opposite side of zero from the peak (absolute value).
    pub overshoot: f64,
    /// Time after which the signal stays inside `±band * peak`.
    pub settling_time: f64,
    /// False for an identically zero signal; the other fields are then 0.
    pub defined: bool,
}

/// Metrics for x1, x4 and x7 (in that order).
pub fn settling_metrics(traj: &Trajectory, band_fraction: f64) -> Result<[SignalMetrics; 3]> {
    if !(band_fraction > 0.0 && band_fraction < 1.0) {
        return Err(invalid("band_fraction", "must lie in (0, 1)"));
    }
    if traj.is_empty() {
        return Err(Error::EmptyInput("trajectory"));
    }
    Ok([X1, X4, X7].map(|idx| signal_metrics(&traj.times, &traj.signal(idx), band_fraction)))
}

/// Metrics of a single sampled signal; the exit from the band is located by
/// linear interpolation between samples.
pub fn signal_metrics(times: &[f64], values: &[f64], band_fraction: f64) -> SignalMetrics {
    let (peak_idx, peak) = values
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.abs()))
        .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    if peak == 0.0 {
        return SignalMetrics { peak: 0.0, overshoot: 0.0, settling_time: 0.0, defined: false };
    }
    let sign = values[peak_idx].signum();
    let overshoot = values
        .iter()
        .filter(|v| v.signum() == -sign)
        .fold(0.0f64, |m, v| m.max(v.abs()));

    let threshold = band_fraction * peak;
    let last_out = values.iter().rposition(|v| v.abs() > threshold).unwrap_or(0);
    let settling_time = if last_out + 1 >= values.len() {
        *times.last().unwrap()
    } else {
        let (t0, t1) = (times[last_out], times[last_out + 1]);
        let (y0, y1) = (values[last_out].abs(), values[last_out + 1].abs());
        if (y0 - y1).abs() > 0.0 {
            t0 + (t1 - t0) * (y0 - threshold) / (y0 - y1)
        } else {
            t1
        }
    };
    SignalMetrics { peak, overshoot, settling_time, defined: true }
}

pub const TRAJECTORY_HEADER: [&str; 12] =
    ["t", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "u1", "u2", "ace1", "ace2"];

/// Writes `t,x1..x7,u1,u2,ace1,ace2` with round-trip float precision.
pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, params: &PlantParams, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRAJECTORY_HEADER)?;
    for (t, s) in traj.times.iter().zip(&traj.states) {
        let (a1, a2) = plant::ace(params, s);
        let mut row = Vec::with_capacity(12);
        row.push(t.to_string());
        row.extend(s.0.iter().map(|v| v.to_string()));
        row.push(a1.to_string());
        row.push(a2.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn egbo_case1() -> PidGains {
        PidGains::new(-15.1838, -43.5993, -5.7641, -15.1738, -45.0, -5.761)
    }

    #[test]
    fn catalogue_cases() {
        let c = case_catalog();
        assert_eq!(c.len(), 5);
        assert_eq!((c[0].w1, c[0].w2), (0.15, 0.15));
        assert_eq!((c[1].w1, c[1].w2), (0.25, 0.0));
        assert_eq!((c[2].w1, c[2].w2), (0.0, 0.25));
        assert_eq!((c[3].w1, c[3].w2), (0.20, 0.10));
        assert_eq!((c[4].w1, c[4].w2), (0.10, 0.20));
        assert_eq!(LoadCase::parse("case-3").unwrap(), c[2]);
        assert_eq!(LoadCase::parse("5").unwrap(), c[4]);
        assert!(LoadCase::parse("case-9").is_err());
        assert!(LoadCase::new(9, 1.5, 0.0).is_err());
    }

    #[test]
    fn config_validation() {
        SimConfig::default().validate().unwrap();
        assert!(SimConfig { dt: 0.0, ..Default::default() }.validate().is_err());
        assert!(SimConfig { t_final: 0.001, ..Default::default() }.validate().is_err());
        assert!(SimConfig { t_final: 20.005, ..Default::default() }.validate().is_err());
        assert!(SimConfig { record_stride: 0, ..Default::default() }.validate().is_err());
        assert_eq!(SimConfig::default().with_t_final(20.0).steps(), 2000);
    }

    #[test]
    fn zero_load_gives_zero_trajectory() {
        let p = PlantParams::default();
        let case = LoadCase { id: 0, w1: 0.0, w2: 0.0 };
        let traj = simulate(&p, &egbo_case1(), &case, &SimConfig::default()).unwrap();
        assert!(traj.states.iter().all(|s| s.0 == [0.0; N_STATES]));
        assert_eq!(itae(&traj), 0.0);
    }

    #[test]
    fn trajectory_starts_at_zero_and_strides() {
        let p = PlantParams::default();
        let cfg = SimConfig { record_stride: 7, ..SimConfig::default().with_t_final(1.0) };
        let traj = simulate(&p, &egbo_case1(), &case_catalog()[0], &cfg).unwrap();
        assert_eq!(traj.times[0], 0.0);
        assert_eq!(traj.states[0], StateVector::zero());
        assert!(traj.times.windows(2).all(|w| w[1] > w[0]));
        assert!((traj.times.last().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(traj.len(), 100 / 7 + 2);
    }

    #[test]
    fn propagator_matches_stagewise_rk4() {
        let p = PlantParams::default();
        let m = plant::closed_loop_matrix(&p, &egbo_case1());
        let w = [0.2, 0.1];
        let prop = Rk4Propagator::new(&m, w, 0.01);
        let mut a = [0.0; N_STATES];
        let mut b = [0.0; N_STATES];
        for _ in 0..500 {
            a = prop.step(&a);
            b = rk4_step(|x| m.derivative(x, w), &b, 0.01);
        }
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-12 * y.abs().max(1e-3), "{x} vs {y}");
        }
    }

    #[test]
    fn itae_of_constant_signal() {
        // x1 = c on [0, T] gives c*T^2/2; the trapezoid is exact for a linear integrand.
        let c = 0.3;
        let n = 1000;
        let t_end = 10.0;
        let times: Vec<f64> = (0..=n).map(|k| k as f64 * t_end / n as f64).collect();
        let states = times
            .iter()
            .map(|_| {
                let mut s = StateVector::zero();
                s.0[X1] = c;
                s
            })
            .collect();
        let traj = Trajectory { times, states, case: case_catalog()[0] };
        assert!((itae(&traj) - c * t_end * t_end / 2.0).abs() < 1e-12);
    }

    #[test]
    fn direct_itae_matches_recorded_itae() {
        let p = PlantParams::default();
        let m = plant::closed_loop_matrix(&p, &egbo_case1());
        let cfg = SimConfig::default();
        let case = case_catalog()[3];
        let a = itae(&integrate(&m, &case, &cfg).unwrap());
        let b = itae_direct(&m, &case, &cfg).unwrap();
        assert!((a - b).abs() < 1e-12 * a);
    }

    #[test]
    fn zero_gains_are_worse_than_tuned_gains() {
        let p = PlantParams::default();
        let cfg = SimConfig::default();
        let case = case_catalog()[0];
        let untuned = evaluate(&p, &PidGains::default(), &case, &cfg).unwrap();
        let tuned = evaluate(&p, &egbo_case1(), &case, &cfg).unwrap();
        assert!(untuned > tuned, "{untuned} <= {tuned}");
    }

    #[test]
    fn unstable_gains_are_penalised() {
        let p = PlantParams::default();
        let k = PidGains::new(100.0, 100.0, 100.0, 100.0, 100.0, 100.0);
        let cfg = SimConfig::default();
        let case = case_catalog()[0];
        assert!(evaluate(&p, &k, &case, &cfg).unwrap() >= DIVERGENCE_PENALTY);
        match simulate(&p, &k, &case, &cfg) {
            Err(Error::Divergence { time, .. }) => assert!(time > 0.0 && time <= cfg.t_final),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn earlier_divergence_costs_more() {
        assert!(divergence_penalty(1.0, 30.0) > divergence_penalty(20.0, 30.0));
        assert!(divergence_penalty(30.0, 30.0) >= DIVERGENCE_PENALTY);
    }

    #[test]
    fn settling_of_decaying_exponential() {
        let times: Vec<f64> = (0..=2000).map(|k| k as f64 * 0.01).collect();
        let values: Vec<f64> = times.iter().map(|t| (-t).exp()).collect();
        let m = signal_metrics(&times, &values, 0.02);
        assert_eq!(m.peak, 1.0);
        assert_eq!(m.overshoot, 0.0);
        assert!((m.settling_time - 50f64.ln()).abs() < 1e-3, "{}", m.settling_time);
    }

    #[test]
    fn zero_signal_metrics_are_undefined() {
        let p = PlantParams::default();
        let case = LoadCase { id: 0, w1: 0.0, w2: 0.0 };
        let traj = simulate(&p, &egbo_case1(), &case, &SimConfig::default().with_t_final(1.0)).unwrap();
        for m in settling_metrics(&traj, 0.02).unwrap() {
            assert!(!m.defined);
            assert_eq!((m.peak, m.settling_time), (0.0, 0.0));
        }
        assert!(settling_metrics(&traj, 1.5).is_err());
    }

    #[test]
    fn trajectory_csv_layout() {
        let p = PlantParams::default();
        let traj = simulate(&p, &egbo_case1(), &case_catalog()[0], &SimConfig::default().with_t_final(0.05)).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t,x1,x2,x3,x4,x5,x6,x7,u1,u2,ace1,ace2");
        let rows: Vec<_> = lines.collect();
        assert_eq!(rows.len(), traj.len());
        let last: Vec<f64> = rows.last().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(last[1], traj.states.last().unwrap().0[X1]);
    }
}
