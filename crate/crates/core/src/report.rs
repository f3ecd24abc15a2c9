//! Analysis drivers producing plain-text reports and CSV tables.
//!
//! Every report starts with the resolved network file, commented out with
//! `#`, so it can be rerun. Nothing time-dependent is written, and equal
//! inputs give byte-identical output.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::bowtie::{
    classify_transition, compute_parameters, max_turns, switching_along_cycle_check, transition_witness,
    turn_exponent, witness_for_l_turns, BowtieError, BowtieMaps, BowtieTable, Cycle, LogPoint, Transition,
    TurnCount,
};
use crate::netspec::{NetworkSpec, SpecError};
use crate::network::{validate_graph, Realizability};
use crate::rational::{format_rat, to_f64, Rat};
use crate::simulation::{bowtie_ensemble, record_itinerary, EnsembleConfig, IntegratorConfig, SimulationError};
use crate::switching::{
    classify_paths, house_regions, path_status_exact, sequence_corollary_check, verify_shadowing,
    CommonConnectionConfig, GridSpec, PathLabel, ShadowOutcome, SwitchingError,
};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Switching(#[from] SwitchingError),
    #[error(transparent)]
    Bowtie(#[from] BowtieError),
    #[error(transparent)]
    Simulation(#[from] SimulationError),
    #[error("{0}")]
    Usage(String),
}

/// A text summary plus named CSV (or JSON) files.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub files: Vec<(String, String)>,
}

impl Report {
    fn new(spec: &NetworkSpec, title: &str) -> Self {
        Self { text: format!("{}{title}\n", config_header(spec)), files: Vec::new() }
    }

    fn file(&mut self, name: &str, spec: &NetworkSpec, body: String) {
        let body = if name.ends_with(".json") { body } else { format!("{}{body}", config_header(spec)) };
        self.files.push((name.to_string(), body));
    }

    pub fn write_to(&self, dir: &Path) -> io::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.txt"), &self.text)?;
        for (name, body) in &self.files {
            std::fs::write(dir.join(name), body)?;
        }
        Ok(())
    }
}

/// The resolved network file as `#` comment lines.
pub fn config_header(spec: &NetworkSpec) -> String {
    spec.to_toml().lines().map(|l| format!("# {l}\n")).collect()
}

fn exact_and_decimal(v: &Rat) -> String {
    format!("{} (~{:.6})", format_rat(v), to_f64(v))
}

fn rats(v: &[Rat]) -> String {
    v.iter().map(format_rat).collect::<Vec<_>>().join(" ")
}

/// Realizability verdict of the graph.
pub fn validate(spec: &NetworkSpec) -> Result<(Realizability, Report), AnalysisError> {
    let g = spec.graph()?;
    let verdict = validate_graph(&g);
    let mut r = Report::new(spec, "validate");
    match &verdict {
        Realizability::Realizable => r.text.push_str("realizable\n"),
        other => {
            let _ = writeln!(r.text, "not realizable: {other:?}");
        }
    }
    Ok((verdict, r))
}

/// Coefficient matrix and eigenvalue table.
pub fn build(spec: &NetworkSpec) -> Result<Report, AnalysisError> {
    let field = spec.field()?;
    let s = field.spectrum();
    let n = s.n();
    let mut r = Report::new(spec, "build");
    let mut table = String::from("node,direction,eigenvalue,decimal\n");
    for i in 1..=n {
        for k in 1..=n {
            let v = s.eigenvalue(i, k);
            let _ = writeln!(table, "{i},{k},{},{}", format_rat(v), to_f64(v));
        }
    }
    let _ = writeln!(r.text, "nodes: {n}");
    let edges: Vec<String> = s.graph().edges().map(|(a, b)| format!("{a}->{b}")).collect();
    let _ = writeln!(r.text, "edges: {}", edges.join(" "));
    r.text.push_str("coefficients:\n");
    r.text.push_str(&field.to_csv());
    r.file("coefficients.csv", spec, field.to_csv());
    r.file("eigenvalues.csv", spec, table);
    Ok(r)
}

/// Path verdicts at the shared connection, each checked on a sampling grid.
pub fn analyze_common_connection(spec: &NetworkSpec, grid: Option<GridSpec>) -> Result<Report, AnalysisError> {
    let a = spec
        .analysis()
        .ok_or_else(|| AnalysisError::Usage("the network file has no [analysis] block".into()))?;
    let grid = grid.unwrap_or_else(|| a.grid());
    let s = spec.field()?.spectrum();
    let chain = &a.chain;
    if chain.len() < 2 {
        return Err(AnalysisError::Usage("analysis.chain needs at least two nodes".into()));
    }
    let ends = (chain[0], chain[chain.len() - 1]);
    let (incoming, outgoing) = ((a.incoming[0], a.incoming[1]), (a.outgoing[0], a.outgoing[1]));
    let cfg = CommonConnectionConfig::from_spectrum(&s, ends, incoming, outgoing)?;
    let verdict = if chain.len() == 2 {
        classify_paths(&cfg)?
    } else {
        sequence_corollary_check(&s, chain, incoming, outgoing)?
    };
    let mut r = Report::new(spec, "common-connection");
    let _ = writeln!(r.text, "q1 = {}", exact_and_decimal(&cfg.q1()));
    let _ = writeln!(r.text, "q2 = {}", exact_and_decimal(&cfg.q2()));
    let _ = writeln!(r.text, "grid: {} per axis, eps {}, depth {}", grid.per_axis, grid.eps, grid.depth);
    let mut csv = String::from("path,walk,verdict,exact,grid,grid_index\n");
    for label in PathLabel::ALL {
        let walk = label.walk(&cfg, chain);
        let (exact, _) = path_status_exact(&s, &walk)?;
        let shadow = verify_shadowing(&s, &walk, &grid)?;
        let (grid_text, index) = match &shadow {
            ShadowOutcome::Witness { index, .. } => ("witness", index.to_string()),
            ShadowOutcome::EmptyOnGrid(_) => ("empty", String::new()),
        };
        let walk_text = walk.iter().map(usize::to_string).collect::<Vec<_>>().join("-");
        let status = verdict.get(label);
        let _ = writeln!(r.text, "{label:<12} {walk_text:<12} {status:?} (exact model {exact:?}, grid {grid_text})");
        let _ = writeln!(csv, "{label},{walk_text},{status:?},{exact:?},{grid_text},{index}");
    }
    r.file("paths.csv", spec, csv);
    Ok(r)
}

/// Witnesses for the four arrival/exit combinations of the House.
pub fn analyze_house(spec: &NetworkSpec) -> Result<Report, AnalysisError> {
    let s = spec.field()?.spectrum();
    let regions = house_regions(&s)?;
    let mut r = Report::new(spec, "house");
    let mut csv = String::from("from,to,walk,initial_logs,entry_logs_x3_x4_x5\n");
    for h in &regions {
        let walk = h.walk.iter().map(usize::to_string).collect::<Vec<_>>().join("-");
        let _ = writeln!(
            r.text,
            "from xi_{} to xi_{}: witness, H_2^in,1 logs (x3 x4 x5) = {}",
            h.source,
            h.destination,
            rats(&h.entry_logs)
        );
        let _ = writeln!(csv, "{},{},{walk},{},{}", h.source, h.destination, rats(&h.initial_logs), rats(&h.entry_logs));
    }
    r.file("house_witnesses.csv", spec, csv);
    Ok(r)
}

fn turn_text(t: Result<TurnCount, BowtieError>) -> String {
    match t {
        Ok(TurnCount::Finite(k)) => k.to_string(),
        Ok(TurnCount::Unbounded) => "unbounded".into(),
        Err(e) => format!("n/a ({e})"),
    }
}

/// Parameters, turn exponents and transition witnesses of a Bowtie.
pub fn analyze_bowtie(spec: &NetworkSpec, terms: u32) -> Result<Report, AnalysisError> {
    let s = spec.field()?.spectrum();
    let table = BowtieTable::from_spectrum(&s)?;
    let p = compute_parameters(&table)?;
    let maps = BowtieMaps::new(&s)?;
    let mut r = Report::new(spec, "bowtie");
    let mut params = String::from("name,exact,decimal\n");
    r.text.push_str("parameters:\n");
    for (name, v) in p.entries() {
        let _ = writeln!(r.text, "  {name:<8} {}", exact_and_decimal(&v));
        let _ = writeln!(params, "{name},{},{}", format_rat(&v), to_f64(&v));
    }
    let mut series = String::from("n,s_R,s_L\n");
    for n in 0..=terms {
        let (a, b) = (turn_exponent(&p, Cycle::R, n), turn_exponent(&p, Cycle::L, n));
        let _ = writeln!(series, "{n},{},{}", format_rat(&a), format_rat(&b));
    }
    r.text.push_str("turn exponents (n, R, L):\n");
    for line in series.lines().skip(1) {
        let _ = writeln!(r.text, "  {}", line.replace(',', "  "));
    }
    // L turns of the image under g_RL; 0 when it leaves at once
    let l_turns = |l: &LogPoint| match max_turns(&p, Cycle::L, &maps.apply_g_rl(l)) {
        Err(BowtieError::NotInE1(_)) => "0".to_string(),
        other => turn_text(other),
    };
    let mut witnesses = String::from("kind,l3,l4,l5,l_turns_after_g_rl\n");
    r.text.push_str("transition witnesses on H_1^out,2 (l3 l4 l5):\n");
    let mut found: Vec<(String, LogPoint)> = Vec::new();
    for kind in [Transition::Rlr, Transition::RllPlus] {
        match transition_witness(&p, kind) {
            Ok(l) => {
                debug_assert_eq!(classify_transition(&p, &l).ok(), Some(kind));
                found.push((format!("{kind:?}"), l));
            }
            Err(e) => {
                let _ = writeln!(r.text, "  {kind:?}: none ({e})");
            }
        }
    }
    for n in [1, 2, 3] {
        match witness_for_l_turns(&p, &maps, n) {
            Ok(l) => found.push((format!("L_turns_{n}"), l)),
            Err(e) => {
                let _ = writeln!(r.text, "  L_turns_{n}: none ({e})");
            }
        }
    }
    for (kind, l) in &found {
        let turns = l_turns(l);
        let _ = writeln!(r.text, "  {kind:<10} {}  L turns after g_RL: {turns}", rats(l));
        let _ = writeln!(witnesses, "{kind},{},{turns}", rats(l).replace(' ', ","));
    }
    let switching = switching_along_cycle_check(&p)?;
    let _ = writeln!(r.text, "switching along a cycle: {} witnesses", switching.len());
    let mut sw = String::from("cycle,from,to,walk,logs\n");
    for w in &switching {
        let walk = w.walk.iter().map(usize::to_string).collect::<Vec<_>>().join("-");
        let _ = writeln!(sw, "{:?},{},{},{walk},{}", w.cycle, w.source, w.destination, rats(&w.logs));
    }
    r.file("parameters.csv", spec, params);
    r.file("turn_exponents.csv", spec, series);
    r.file("witnesses.csv", spec, witnesses);
    r.file("cycle_switching.csv", spec, sw);
    Ok(r)
}

/// Seeded ensemble comparing ODE itineraries with map predictions.
pub fn simulate_ensemble(spec: &NetworkSpec, cfg: &EnsembleConfig) -> Result<Report, AnalysisError> {
    if !(cfg.eps > 0.0 && cfg.eps < std::f64::consts::FRAC_1_SQRT_2) {
        return Err(AnalysisError::Usage(format!("eps {} must lie in (0, sqrt(2)/2)", cfg.eps)));
    }
    let field = spec.field()?;
    let s = field.spectrum();
    let p = compute_parameters(&BowtieTable::from_spectrum(&s)?)?;
    let maps = BowtieMaps::new(&s)?;
    let summary = bowtie_ensemble(&field, &p, &maps, cfg);
    let mut r = Report::new(spec, "simulate");
    let _ = writeln!(
        r.text,
        "runs {}, seed {}, eps {}, letters {}, logs in [{}, {}]",
        cfg.runs, cfg.seed, cfg.eps, cfg.letters, cfg.log_range.0, cfg.log_range.1
    );
    let failures = summary.runs.iter().filter(|x| x.error.is_some()).count();
    let _ = writeln!(r.text, "integrator failures: {failures}");
    let _ = writeln!(r.text, "agreement fraction: {:.4}", summary.agreement_fraction);
    let mut csv = String::from("run,l3,l4,l5,predicted,observed,prefix,agrees,error\n");
    for x in &summary.runs {
        let (prefix, agrees) = x.agreement.as_ref().map_or((0, false), |a| (a.prefix, a.agrees));
        let _ = writeln!(
            csv,
            "{},{:e},{:e},{:e},{},{},{prefix},{agrees},{}",
            x.index,
            x.logs[0],
            x.logs[1],
            x.logs[2],
            x.predicted,
            x.observed,
            x.error.clone().unwrap_or_default()
        );
    }
    r.file("runs.csv", spec, csv);
    r.file("summary.json", spec, serde_json::to_string_pretty(&summary).expect("serializable") + "\n");
    Ok(r)
}

/// One trajectory with its itinerary.
pub fn simulate_single(
    spec: &NetworkSpec,
    x0: &[f64],
    eps: f64,
    cfg: &IntegratorConfig,
) -> Result<Report, AnalysisError> {
    let field = spec.field()?;
    let traj = crate::simulation::integrate(&field, x0, cfg)?;
    let it = record_itinerary(&field, x0, eps, cfg, None)?;
    let mut r = Report::new(spec, "simulate");
    let nodes: Vec<String> = it.nodes().iter().map(usize::to_string).collect();
    let _ = writeln!(r.text, "itinerary: {}", nodes.join(" "));
    let _ = writeln!(r.text, "follows network edges: {}", it.follows(&field.graph()));
    r.file("trajectory.csv", spec, traj.to_csv());
    r.file("itinerary.csv", spec, it.to_csv());
    Ok(r)
}

/// Grid search for a point following `path`.
pub fn shadow(spec: &NetworkSpec, path: &[usize], grid: &GridSpec) -> Result<(ShadowOutcome, Report), AnalysisError> {
    let s = spec.field()?.spectrum();
    let outcome = verify_shadowing(&s, path, grid)?;
    let (status, _) = path_status_exact(&s, path)?;
    let mut r = Report::new(spec, "shadow");
    let walk = path.iter().map(usize::to_string).collect::<Vec<_>>().join("-");
    let _ = writeln!(r.text, "path {walk}, grid {} per axis, eps {}, depth {}", grid.per_axis, grid.eps, grid.depth);
    match &outcome {
        ShadowOutcome::Witness { index, logs } => {
            let _ = writeln!(r.text, "witness at grid index {index}, logs {logs:?}");
        }
        ShadowOutcome::EmptyOnGrid(_) => r.text.push_str("no grid point follows the path\n"),
    }
    let _ = writeln!(r.text, "exact linearized model: {status:?}");
    Ok((outcome, r))
}
