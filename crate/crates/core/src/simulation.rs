//! Numerical integration of simplex fields and itinerary recording.
//!
//! The fields are equivariant under every sign flip `x_j -> -x_j`, so the
//! integrator works with `y_j = ln |x_j|` and restores signs afterwards.
//! Coordinates that start at zero stay at zero. In log-coordinates the
//! long passages near equilibria, where some coordinates are `1e-50` or
//! smaller, cost no accuracy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bowtie::{log_point, predicted_word, visit_word, BowtieMaps, BowtieParameters};
use crate::network::{DirectedGraph, SimplexField};
use crate::rational::to_f64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulationError {
    #[error("step size underflow at t = {t}")]
    StepFailure { t: f64 },
    #[error("|x| = {norm} exceeded the bound at t = {t}")]
    Blowup { t: f64, norm: f64 },
    #[error("initial condition has dimension {found}, field has {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("initial condition is zero or not finite")]
    BadInitialCondition,
    #[error("ball radius {0} must lie in (0, sqrt(2)/2)")]
    BadRadius(f64),
    #[error("no equilibrium neighbourhood was visited before t = {0}")]
    NoEvents(f64),
    #[error("invalid integrator configuration: {0}")]
    Config(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: f64,
    pub initial_step: f64,
    pub max_step: f64,
    pub t_max: f64,
    /// Stop after this many ball entries (itineraries only).
    pub max_events: usize,
    /// Abort if `|x|` exceeds this.
    pub blowup_norm: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-9,
            initial_step: 1e-3,
            max_step: 10.0,
            t_max: 1e4,
            max_events: 100,
            blowup_norm: 10.0,
        }
    }
}

impl IntegratorConfig {
    fn check(&self) -> Result<(), SimulationError> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !(positive(self.rtol) && positive(self.atol)) {
            return Err(SimulationError::Config("tolerances must be positive"));
        }
        if !(positive(self.initial_step) && positive(self.max_step)) {
            return Err(SimulationError::Config("step sizes must be positive"));
        }
        if !(self.t_max > 0.0) {
            return Err(SimulationError::Config("t_max must be positive"));
        }
        Ok(())
    }
}

// Dormand–Prince 5(4) tableau. The field is autonomous, so the nodes c_i
// are not needed.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// Continuous extension of one accepted step, in log-coordinates.
#[derive(Debug, Clone)]
pub struct DenseStep {
    pub t0: f64,
    pub h: f64,
    r: [Vec<f64>; 5],
}

impl DenseStep {
    /// Log-state at `t0 + theta h`.
    fn log_at(&self, theta: f64) -> Vec<f64> {
        let [r1, r2, r3, r4, r5] = &self.r;
        let s = 1.0 - theta;
        (0..r1.len())
            .map(|i| r1[i] + theta * (r2[i] + s * (r3[i] + theta * (r4[i] + s * r5[i]))))
            .collect()
    }
}

/// Log-space integrator state for a fixed initial condition.
struct Engine<'a> {
    field: &'a SimplexField,
    coefficients: Vec<f64>,
    active: Vec<usize>,
    signs: Vec<f64>,
    n: usize,
}

impl<'a> Engine<'a> {
    fn new(field: &'a SimplexField, x0: &[f64]) -> Result<(Self, Vec<f64>), SimulationError> {
        let n = field.n();
        if x0.len() != n {
            return Err(SimulationError::Dimension { expected: n, found: x0.len() });
        }
        if x0.iter().any(|v| !v.is_finite()) || x0.iter().all(|v| *v == 0.0) {
            return Err(SimulationError::BadInitialCondition);
        }
        let active: Vec<usize> = (0..n).filter(|&j| x0[j] != 0.0).collect();
        let y0 = active.iter().map(|&j| x0[j].abs().ln()).collect();
        let signs = x0.iter().map(|v| if *v < 0.0 { -1.0 } else { 1.0 }).collect();
        let c = field.coefficients();
        let coefficients = (0..n * n).map(|k| to_f64(&c[(k / n, k % n)])).collect();
        Ok((Self { field, coefficients, active, signs, n }, y0))
    }

    fn deriv(&self, y: &[f64], out: &mut [f64]) {
        let mut sq = vec![0.0; self.n];
        for (k, &j) in self.active.iter().enumerate() {
            sq[j] = (2.0 * y[k]).exp();
        }
        let norm2: f64 = sq.iter().sum();
        for (k, &j) in self.active.iter().enumerate() {
            let coupling: f64 = self.active.iter().map(|&i| self.coefficients[i * self.n + j] * sq[i]).sum();
            out[k] = 1.0 - norm2 + coupling;
        }
    }

    fn to_x(&self, y: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        for (k, &j) in self.active.iter().enumerate() {
            x[j] = self.signs[j] * y[k].exp();
        }
        x
    }

    /// Integrates until `t_max` or until `on_step` returns `false`.
    fn run(
        &self,
        y0: Vec<f64>,
        cfg: &IntegratorConfig,
        mut on_step: impl FnMut(&DenseStep, &[f64]) -> Result<bool, SimulationError>,
    ) -> Result<(), SimulationError> {
        cfg.check()?;
        debug_assert_eq!(self.field.n(), self.n);
        let m = y0.len();
        let mut y = y0;
        let mut t = 0.0;
        let mut h = cfg.initial_step.min(cfg.max_step);
        let mut k: [Vec<f64>; 7] = std::array::from_fn(|_| vec![0.0; m]);
        self.deriv(&y, &mut k[0]);
        let mut stage = vec![0.0; m];
        let mut y_new = vec![0.0; m];
        while t < cfg.t_max {
            let remaining = cfg.t_max - t;
            if remaining <= 1e-14 * cfg.t_max {
                break;
            }
            h = h.min(remaining);
            if h < 1e-14 * t.abs().max(1.0) {
                return Err(SimulationError::StepFailure { t });
            }
            for s in 1..7 {
                for i in 0..m {
                    stage[i] = y[i] + h * (0..s).map(|r| A[s][r] * k[r][i]).sum::<f64>();
                }
                self.deriv(&stage, &mut k[s]);
                if s == 6 {
                    y_new.copy_from_slice(&stage);
                }
            }
            let mut err = 0.0;
            for i in 0..m {
                let e: f64 = h * (0..7).map(|r| E[r] * k[r][i]).sum::<f64>();
                let scale = cfg.atol + cfg.rtol * y[i].abs().max(y_new[i].abs());
                err += (e / scale).powi(2);
            }
            let err = (err / m as f64).sqrt();
            if !err.is_finite() {
                h *= 0.2;
                continue;
            }
            if err <= 1.0 {
                let r2: Vec<f64> = (0..m).map(|i| y_new[i] - y[i]).collect();
                let r3: Vec<f64> = (0..m).map(|i| h * k[0][i] - r2[i]).collect();
                let r4: Vec<f64> = (0..m).map(|i| r2[i] - h * k[6][i] - r3[i]).collect();
                let r5: Vec<f64> = (0..m).map(|i| h * (0..7).map(|r| D[r] * k[r][i]).sum::<f64>()).collect();
                let step = DenseStep { t0: t, h, r: [y.clone(), r2, r3, r4, r5] };
                t += h;
                std::mem::swap(&mut y, &mut y_new);
                let x = self.to_x(&y);
                let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm > cfg.blowup_norm {
                    return Err(SimulationError::Blowup { t, norm });
                }
                // FSAL: the last stage is the derivative at the new point
                let last = k[6].clone();
                k[0] = last;
                if !on_step(&step, &y)? {
                    return Ok(());
                }
            }
            let fac = if err == 0.0 { 10.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 10.0) };
            h = (h * fac).min(cfg.max_step);
        }
        Ok(())
    }
}

/// Accepted step points of an integration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn last(&self) -> (f64, &[f64]) {
        let k = self.times.len() - 1;
        (self.times[k], &self.states[k])
    }

    /// `t,x1,...,xn` with a header row.
    pub fn to_csv(&self) -> String {
        let n = self.states.first().map_or(0, Vec::len);
        let mut out = String::from("t");
        for j in 1..=n {
            out.push_str(&format!(",x{j}"));
        }
        out.push('\n');
        for (t, x) in self.times.iter().zip(&self.states) {
            out.push_str(&format!("{t:e}"));
            for v in x {
                out.push_str(&format!(",{v:e}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Integrates from `x0` up to `cfg.t_max`, keeping every accepted step.
pub fn integrate(field: &SimplexField, x0: &[f64], cfg: &IntegratorConfig) -> Result<Trajectory, SimulationError> {
    let (engine, y0) = Engine::new(field, x0)?;
    let mut traj = Trajectory { times: vec![0.0], states: vec![x0.to_vec()] };
    engine.run(y0, cfg, |step, y| {
        traj.times.push(step.t0 + step.h);
        traj.states.push(engine.to_x(y));
        Ok(true)
    })?;
    Ok(traj)
}

/// One stay inside `B_eps(xi_node)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Visit {
    pub node: usize,
    pub entry_time: f64,
    /// `None` while the trajectory is still inside at the end.
    pub exit_time: Option<f64>,
    pub entry_point: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Itinerary {
    pub eps: f64,
    pub visits: Vec<Visit>,
    pub final_time: f64,
}

impl Itinerary {
    pub fn nodes(&self) -> Vec<usize> {
        self.visits.iter().map(|v| v.node).collect()
    }

    /// Whether consecutive visits are joined by edges of `graph`.
    pub fn follows(&self, graph: &DirectedGraph) -> bool {
        self.nodes().windows(2).all(|w| graph.has_edge(w[0], w[1]))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,entry_time,exit_time\n");
        for v in &self.visits {
            let exit = v.exit_time.map_or(String::new(), |t| format!("{t:e}"));
            out.push_str(&format!("{},{:e},{}\n", v.node, v.entry_time, exit));
        }
        out
    }
}

/// Squared distance to `xi_j` minus `eps^2`, from log-coordinates.
fn ball_gap(engine: &Engine, y: &[f64], j: usize, eps: f64) -> f64 {
    let x = engine.to_x(y);
    let d2: f64 = x.iter().enumerate().map(|(i, v)| if i == j { (v - 1.0).powi(2) } else { v * v }).sum();
    d2 - eps * eps
}

/// Subdivisions of each step scanned for ball crossings.
const EVENT_SAMPLES: usize = 8;

/// Records entries into and exits from the balls `B_eps(xi_j)`.
///
/// `origin` marks the start as already inside the ball at that node, which
/// is the convention for initial points on an outgoing section. Crossing
/// times are bisected on the continuous extension.
pub fn record_itinerary(
    field: &SimplexField,
    x0: &[f64],
    eps: f64,
    cfg: &IntegratorConfig,
    origin: Option<usize>,
) -> Result<Itinerary, SimulationError> {
    if !(eps > 0.0 && eps < std::f64::consts::FRAC_1_SQRT_2) {
        return Err(SimulationError::BadRadius(eps));
    }
    let (engine, y0) = Engine::new(field, x0)?;
    let n = field.n();
    let mut visits: Vec<Visit> = Vec::new();
    let mut inside: Option<usize> = None;
    if let Some(o) = origin {
        if o == 0 || o > n {
            return Err(SimulationError::Config("origin node out of range"));
        }
        visits.push(Visit { node: o, entry_time: 0.0, exit_time: None, entry_point: x0.to_vec() });
        inside = Some(o - 1);
    } else if let Some(j) = (0..n).find(|&j| ball_gap(&engine, &y0, j, eps) <= 0.0) {
        visits.push(Visit { node: j + 1, entry_time: 0.0, exit_time: None, entry_point: x0.to_vec() });
        inside = Some(j);
    }
    let mut final_time = 0.0;
    let max_events = cfg.max_events;
    engine.run(y0, cfg, |step, _| {
        final_time = step.t0 + step.h;
        let mut theta0 = 0.0;
        for s in 1..=EVENT_SAMPLES {
            let theta1 = s as f64 / EVENT_SAMPLES as f64;
            let y1 = step.log_at(theta1);
            match inside {
                Some(j) => {
                    if ball_gap(&engine, &y1, j, eps) > 0.0 {
                        let th = bisect(&engine, step, theta0, theta1, j, eps, false);
                        visits.last_mut().expect("inside implies a visit").exit_time = Some(step.t0 + th * step.h);
                        inside = None;
                        // a fast exit and entry within one sub-interval is not resolved
                    }
                }
                None => {
                    if let Some(j) = (0..n).find(|&j| ball_gap(&engine, &y1, j, eps) <= 0.0) {
                        let th = bisect(&engine, step, theta0, theta1, j, eps, true);
                        let y = step.log_at(th);
                        visits.push(Visit {
                            node: j + 1,
                            entry_time: step.t0 + th * step.h,
                            exit_time: None,
                            entry_point: engine.to_x(&y),
                        });
                        inside = Some(j);
                        if visits.len() >= max_events {
                            return Ok(false);
                        }
                    }
                }
            }
            theta0 = theta1;
        }
        Ok(true)
    })?;
    if visits.is_empty() {
        return Err(SimulationError::NoEvents(final_time));
    }
    Ok(Itinerary { eps, visits, final_time })
}

/// Crossing of the ball boundary in `[a, b]`; returns the first point
/// inside (entering) or outside (exiting).
fn bisect(engine: &Engine, step: &DenseStep, mut a: f64, mut b: f64, j: usize, eps: f64, entering: bool) -> f64 {
    let crossed = |th: f64| {
        let g = ball_gap(engine, &step.log_at(th), j, eps);
        if entering {
            g <= 0.0
        } else {
            g > 0.0
        }
    };
    while (b - a) * step.h > 1e-12 * (1.0 + step.t0.abs()) && b - a > f64::EPSILON {
        let mid = 0.5 * (a + b);
        if crossed(mid) {
            b = mid;
        } else {
            a = mid;
        }
    }
    b
}

/// Comparison of a predicted word with an observed one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Agreement {
    /// Length of the longest common prefix.
    pub prefix: usize,
    /// Whether the first `k` letters agree.
    pub agrees: bool,
    /// Observed minus predicted length of each run of equal letters, for
    /// aligned runs with the same letter.
    pub turn_deltas: Vec<i64>,
}

fn runs(word: &str) -> Vec<(char, usize)> {
    let mut out: Vec<(char, usize)> = Vec::new();
    for c in word.chars() {
        match out.last_mut() {
            Some((d, k)) if *d == c => *k += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

pub fn compare(predicted: &str, observed: &str, k: usize) -> Agreement {
    let prefix = predicted.chars().zip(observed.chars()).take_while(|(a, b)| a == b).count();
    let turn_deltas = runs(predicted)
        .into_iter()
        .zip(runs(observed))
        .take_while(|((a, _), (b, _))| a == b)
        .map(|((_, p), (_, o))| o as i64 - p as i64)
        .collect();
    Agreement { prefix, agrees: prefix >= k && observed.len() >= k && predicted.len() >= k, turn_deltas }
}

/// Point `(1, h, h e^{l3}, h e^{l4}, h e^{l5})` of `H_1^{out,2}` for the
/// bowtie field.
pub fn bowtie_initial_point(h: f64, logs: [f64; 3]) -> Vec<f64> {
    vec![1.0, h, h * logs[0].exp(), h * logs[1].exp(), h * logs[2].exp()]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleConfig {
    pub runs: usize,
    pub seed: u64,
    /// Range of the sampled log-coordinates `l3, l4, l5`.
    pub log_range: (f64, f64),
    pub section_offset: f64,
    pub eps: f64,
    /// Letters compared.
    pub letters: usize,
    pub integrator: IntegratorConfig,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        Self {
            runs: 100,
            seed: 1,
            log_range: (-120.0, -40.0),
            section_offset: 0.1,
            eps: 0.1,
            letters: 5,
            integrator: IntegratorConfig { t_max: 1e8, max_step: 50.0, ..Default::default() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleRun {
    pub index: usize,
    pub logs: [f64; 3],
    pub predicted: String,
    pub observed: String,
    pub agreement: Option<Agreement>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub config: EnsembleConfig,
    pub runs: Vec<EnsembleRun>,
    /// Fraction of runs whose first `letters` letters agree.
    pub agreement_fraction: f64,
}

/// Samples initial points on `H_1^{out,2}`, integrates the bowtie field and
/// compares observed L/R words with the map prediction. Run `i` uses stream
/// `i` of a ChaCha generator seeded with `cfg.seed`, so results do not
/// depend on thread scheduling.
pub fn bowtie_ensemble(
    field: &SimplexField,
    params: &BowtieParameters,
    maps: &BowtieMaps,
    cfg: &EnsembleConfig,
) -> EnsembleSummary {
    let runs: Vec<EnsembleRun> = (0..cfg.runs)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(index as u64);
            let (lo, hi) = cfg.log_range;
            let logs: [f64; 3] = std::array::from_fn(|_| rng.gen_range(lo..hi));
            bowtie_run(field, params, maps, cfg, index, logs)
        })
        .collect();
    let agreeing = runs.iter().filter(|r| r.agreement.as_ref().is_some_and(|a| a.agrees)).count();
    let agreement_fraction = if runs.is_empty() { 0.0 } else { agreeing as f64 / runs.len() as f64 };
    EnsembleSummary { config: *cfg, runs, agreement_fraction }
}

/// A single ensemble member from given log-coordinates.
pub fn bowtie_run(
    field: &SimplexField,
    params: &BowtieParameters,
    maps: &BowtieMaps,
    cfg: &EnsembleConfig,
    index: usize,
    logs: [f64; 3],
) -> EnsembleRun {
    let section = logs.map(|l| l.exp());
    let predicted = match log_point(section) {
        Ok(p) => predicted_word(params, maps, &p, cfg.letters),
        Err(_) => String::new(),
    };
    let x0 = bowtie_initial_point(cfg.section_offset, logs);
    // the origin plus three visits per further letter, one letter to spare
    let mut integrator = cfg.integrator;
    integrator.max_events = 3 * cfg.letters + 1;
    match record_itinerary(field, &x0, cfg.eps, &integrator, Some(1)) {
        Ok(it) => {
            // the start has just come round the right cycle through xi_3
            let mut nodes = vec![3];
            nodes.extend(it.nodes());
            let observed = visit_word(&nodes);
            let agreement = Some(compare(&predicted, &observed, cfg.letters));
            EnsembleRun { index, logs, predicted, observed, agreement, error: None }
        }
        Err(e) => EnsembleRun {
            index,
            logs,
            predicted,
            observed: String::new(),
            agreement: None,
            error: Some(e.to_string()),
        },
    }
}
