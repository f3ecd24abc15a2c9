//! The Bowtie network: two 3-cycles `R = 1 -> 2 -> 3 -> 1` and
//! `L = 2 -> 4 -> 5 -> 2` sharing the node `xi_2`.
//!
//! Return maps are taken on `H_1^{out,2}` (coordinates `x3, x4, x5`) for the
//! right cycle and on `H_5^{out,2}` (coordinates `x1, x3, x4`) for the left
//! one. All exponents are exact; points are handled through their exact
//! log-coordinates so closed forms and explicit iteration agree bit for bit.
//!
//! The exponent called `alpha` here is unrelated to the node label `alpha` in
//! [`crate::switching`].

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::maps::{path_map, MapError, MonomialMap};
use crate::network::{NetworkError, SimplexField, Spectrum};
use crate::rational::{from_f64, int, rat, Rat, RatMatrix};
use crate::switching::{follow_path_exact, path_status_exact, PathStatus, SwitchingError};

pub const BOWTIE_EDGES: [(usize, usize); 6] = [(1, 2), (2, 3), (3, 1), (2, 4), (4, 5), (5, 2)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BowtieError {
    #[error("eigenvalue {0} has the wrong sign")]
    SignError(&'static str),
    #[error("assumption violated: {0}")]
    AssumptionViolation(String),
    #[error("point is not in E_1 of the {0:?} cycle")]
    NotInE1(Cycle),
    #[error("point is not on the section: every coordinate must lie in (0, 1)")]
    OutsideSection,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("constructed witness failed verification: {0}")]
    WitnessFailed(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Switching(#[from] SwitchingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Cycle {
    L,
    R,
}

impl Cycle {
    pub fn letter(self) -> char {
        match self {
            Cycle::L => 'L',
            Cycle::R => 'R',
        }
    }
}

/// Eigenvalue magnitudes at the five nodes; `e` entries are expanding
/// (positive eigenvalue), `c` entries contracting or negative transverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BowtieTable {
    pub e12: Rat,
    pub c13: Rat,
    pub c14: Rat,
    pub c15: Rat,
    pub c21: Rat,
    pub c25: Rat,
    pub e23: Rat,
    pub e24: Rat,
    pub e31: Rat,
    pub c32: Rat,
    pub c34: Rat,
    pub c35: Rat,
    pub e45: Rat,
    pub c41: Rat,
    pub c42: Rat,
    pub c43: Rat,
    pub e52: Rat,
    pub c51: Rat,
    pub c53: Rat,
    pub c54: Rat,
    /// Radial magnitudes `r_1..r_5`.
    pub radial: [Rat; 5],
}

/// `(name, node, direction, sign)`: the eigenvalue at `xi_node` along
/// `x_direction` is `sign * magnitude`.
const LAYOUT: [(&str, usize, usize, i64); 20] = [
    ("e12", 1, 2, 1),
    ("c13", 1, 3, -1),
    ("c14", 1, 4, -1),
    ("c15", 1, 5, -1),
    ("c21", 2, 1, -1),
    ("c25", 2, 5, -1),
    ("e23", 2, 3, 1),
    ("e24", 2, 4, 1),
    ("e31", 3, 1, 1),
    ("c32", 3, 2, -1),
    ("c34", 3, 4, -1),
    ("c35", 3, 5, -1),
    ("e45", 4, 5, 1),
    ("c41", 4, 1, -1),
    ("c42", 4, 2, -1),
    ("c43", 4, 3, -1),
    ("e52", 5, 2, 1),
    ("c51", 5, 1, -1),
    ("c53", 5, 3, -1),
    ("c54", 5, 4, -1),
];

impl BowtieTable {
    fn field(&self, name: &str) -> &Rat {
        match name {
            "e12" => &self.e12,
            "c13" => &self.c13,
            "c14" => &self.c14,
            "c15" => &self.c15,
            "c21" => &self.c21,
            "c25" => &self.c25,
            "e23" => &self.e23,
            "e24" => &self.e24,
            "e31" => &self.e31,
            "c32" => &self.c32,
            "c34" => &self.c34,
            "c35" => &self.c35,
            "e45" => &self.e45,
            "c41" => &self.c41,
            "c42" => &self.c42,
            "c43" => &self.c43,
            "e52" => &self.e52,
            "c51" => &self.c51,
            "c53" => &self.c53,
            "c54" => &self.c54,
            _ => unreachable!("unknown eigenvalue name {name}"),
        }
    }

    /// Named magnitudes in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, Rat)> {
        LAYOUT.iter().map(|(name, ..)| (*name, self.field(name).clone())).collect()
    }

    /// Builds a table from magnitudes listed in the order of [`Self::entries`];
    /// radial magnitudes are all 2.
    pub fn from_entries(values: &[Rat; 20]) -> Self {
        let v = |i: usize| values[i].clone();
        Self {
            e12: v(0),
            c13: v(1),
            c14: v(2),
            c15: v(3),
            c21: v(4),
            c25: v(5),
            e23: v(6),
            e24: v(7),
            e31: v(8),
            c32: v(9),
            c34: v(10),
            c35: v(11),
            e45: v(12),
            c41: v(13),
            c42: v(14),
            c43: v(15),
            e52: v(16),
            c51: v(17),
            c53: v(18),
            c54: v(19),
            radial: std::array::from_fn(|_| int(2)),
        }
    }

    /// A table with `delta, delta~ < 0`, so neither cycle keeps its points.
    pub fn preset() -> Self {
        let h = || rat(1, 2);
        Self::from_entries(&[
            int(1), // e12
            int(2), // c13
            h(),    // c14
            h(),    // c15
            int(1), // c21
            int(1), // c25
            int(1), // e23
            h(),    // e24
            int(1), // e31
            int(2), // c32
            h(),    // c34
            h(),    // c35
            int(1), // e45
            h(),    // c41
            int(2), // c42
            h(),    // c43
            int(1), // e52
            h(),    // c51
            h(),    // c53
            int(2), // c54
        ])
    }

    pub fn check_signs(&self) -> Result<(), BowtieError> {
        for (name, ..) in LAYOUT {
            if !self.field(name).is_positive() {
                return Err(BowtieError::SignError(name));
            }
        }
        if self.radial.iter().any(|r| !r.is_positive()) {
            return Err(BowtieError::SignError("radial"));
        }
        Ok(())
    }

    pub fn from_spectrum(s: &Spectrum) -> Result<Self, BowtieError> {
        if s.n() != 5 {
            return Err(BowtieError::PreconditionViolated(format!("Bowtie lives in R^5, got n = {}", s.n())));
        }
        let mut vals: [Rat; 20] = std::array::from_fn(|_| Rat::zero());
        for (i, (name, node, dir, sign)) in LAYOUT.iter().enumerate() {
            let v = s.eigenvalue(*node, *dir) * int(*sign);
            if !v.is_positive() {
                return Err(BowtieError::SignError(name));
            }
            vals[i] = v;
        }
        let mut t = Self::from_entries(&vals);
        t.radial = std::array::from_fn(|j| -s.eigenvalue(j + 1, j + 1).clone());
        t.check_signs()?;
        Ok(t)
    }

    pub fn to_spectrum(&self) -> Spectrum {
        let mut m = RatMatrix::zeros(5, 5);
        for (name, node, dir, sign) in LAYOUT {
            m[(node - 1, dir - 1)] = self.field(name) * int(sign);
        }
        for j in 0..5 {
            m[(j, j)] = -self.radial[j].clone();
        }
        Spectrum::from_table(m).expect("square table")
    }

    /// Simplex field with exactly these eigenvalues (radial magnitudes 2).
    pub fn to_field(&self) -> Result<SimplexField, BowtieError> {
        if self.radial.iter().any(|r| *r != int(2)) {
            return Err(BowtieError::PreconditionViolated("a simplex field has radial eigenvalue -2".into()));
        }
        let mut m = RatMatrix::zeros(5, 5);
        for (name, node, dir, sign) in LAYOUT {
            m[(node - 1, dir - 1)] = self.field(name) * int(sign);
        }
        Ok(SimplexField::from_matrix(m)?)
    }
}

/// The ten combinations of eigenvalues governing the return and transition
/// maps, plus the table they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BowtieParameters {
    pub table: BowtieTable,
    pub rho: Rat,
    pub rho_t: Rat,
    pub nu: Rat,
    pub nu_t: Rat,
    pub mu: Rat,
    pub mu_t: Rat,
    pub delta: Rat,
    pub delta_t: Rat,
    pub alpha: Rat,
    pub beta: Rat,
}

/// Requires `e23 > e24`; swap the cycles by relabeling for the other case.
pub fn compute_parameters(table: &BowtieTable) -> Result<BowtieParameters, BowtieError> {
    if table.e23 <= table.e24 {
        return Err(BowtieError::AssumptionViolation("e23 > e24 is required".into()));
    }
    compute_parameters_unchecked(table)
}

/// Same formulas without the `e23 > e24` requirement.
pub fn compute_parameters_unchecked(t: &BowtieTable) -> Result<BowtieParameters, BowtieError> {
    t.check_signs()?;
    let rho = &t.c42 * &t.c54 * &t.c25 / (&t.e24 * &t.e45 * &t.e52);
    let rho_t = &t.c32 * &t.c13 * &t.c21 / (&t.e23 * &t.e31 * &t.e12);
    let nu = -(&t.e23 / &t.e24) + &t.c25 * &t.c43 / (&t.e24 * &t.e45) + &t.c53 * &t.c42 * &t.c25 / (&t.e45 * &t.e24 * &t.e52);
    let nu_t = -(&t.e24 / &t.e23) + &t.c21 * &t.c34 / (&t.e23 * &t.e31) + &t.c14 * &t.c32 * &t.c21 / (&t.e31 * &t.e23 * &t.e12);
    let mu = &t.c21 / &t.e24 + &t.c25 * &t.c41 / (&t.e24 * &t.e45) + &t.c51 * &t.c42 * &t.c25 / (&t.e45 * &t.e24 * &t.e52);
    let mu_t = &t.c25 / &t.e23 + &t.c21 * &t.c35 / (&t.e23 * &t.e31) + &t.c15 * &t.c32 * &t.c21 / (&t.e31 * &t.e23 * &t.e12);
    let delta = &t.c43 / &t.e45 + &t.c53 * &t.c42 / (&t.e52 * &t.e45) - &t.e23 * &t.c54 * &t.c42 / (&t.e52 * &t.e45 * &t.e24);
    let delta_t = &t.c34 / &t.e31 + &t.c14 * &t.c32 / (&t.e12 * &t.e31) - &t.e24 * &t.c13 * &t.c32 / (&t.e12 * &t.e31 * &t.e23);
    let alpha = &t.c41 / &t.e45 + &t.c42 * &t.c51 / (&t.e45 * &t.e52);
    let beta = &t.c43 / &t.e45 + &t.c42 * &t.c53 / (&t.e45 * &t.e52);
    let p = BowtieParameters { table: t.clone(), rho, rho_t, nu, nu_t, mu, mu_t, delta, delta_t, alpha, beta };
    debug_assert!(p.identities_hold());
    Ok(p)
}

impl BowtieParameters {
    /// The two turn-difference relations and `beta = delta + (e23/c25) rho`.
    pub fn identities_hold(&self) -> bool {
        let t = &self.table;
        let one = Rat::one();
        let r1 = &t.e24 / &t.e23 * (&self.rho_t - &one) - &self.nu_t == -(&t.c21 / &t.e23) * &self.delta_t;
        let r2 = &t.e23 / &t.e24 * (&self.rho - &one) - &self.nu == -(&t.c25 / &t.e24) * &self.delta;
        let r3 = self.beta == &self.delta + &t.e23 / &t.c25 * &self.rho;
        r1 && r2 && r3
    }

    pub fn entries(&self) -> Vec<(&'static str, Rat)> {
        vec![
            ("rho", self.rho.clone()),
            ("rho~", self.rho_t.clone()),
            ("nu", self.nu.clone()),
            ("nu~", self.nu_t.clone()),
            ("mu", self.mu.clone()),
            ("mu~", self.mu_t.clone()),
            ("delta", self.delta.clone()),
            ("delta~", self.delta_t.clone()),
            ("alpha", self.alpha.clone()),
            ("beta", self.beta.clone()),
        ]
    }

    /// `(rho, nu, delta, e_opp / e_own, c_in / e_own)` for one cycle.
    fn cycle_data(&self, cycle: Cycle) -> (&Rat, &Rat, &Rat, Rat, Rat) {
        let t = &self.table;
        match cycle {
            Cycle::R => (&self.rho_t, &self.nu_t, &self.delta_t, &t.e24 / &t.e23, &t.c21 / &t.e23),
            Cycle::L => (&self.rho, &self.nu, &self.delta, &t.e23 / &t.e24, &t.c25 / &t.e24),
        }
    }

    /// `(e23/e24) rho - nu`, the `x4` exponent in the RLR condition.
    pub fn transition_a(&self) -> Rat {
        &self.table.e23 / &self.table.e24 * &self.rho - &self.nu
    }

    /// `(e23/c25) rho - beta`, which equals `-delta`.
    pub fn transition_b(&self) -> Rat {
        &self.table.e23 / &self.table.c25 * &self.rho - &self.beta
    }
}

/// `s_n = (e_opp/e_own) rho^n - nu sum_{i<n} rho^i` for the cycle (tilded
/// parameters for `R`). `s_0` is the exponent of the one-turn boundary.
pub fn turn_exponent(params: &BowtieParameters, cycle: Cycle, n: u32) -> Rat {
    let (rho, nu, _, ratio, _) = params.cycle_data(cycle);
    let mut power = Rat::one();
    let mut sum = Rat::zero();
    for _ in 0..n {
        sum += &power;
        power *= rho;
    }
    ratio * power - nu * sum
}

/// Log-coordinates of a section point: `(x3, x4, x5)` for `R`, `(x1, x3, x4)`
/// for `L`.
pub type LogPoint = [Rat; 3];

/// Exact log-coordinates of a point with float coordinates in `(0, 1)`.
pub fn log_point(x: [f64; 3]) -> Result<LogPoint, BowtieError> {
    if x.iter().any(|v| !(*v > 0.0 && *v < 1.0)) {
        return Err(BowtieError::OutsideSection);
    }
    Ok(x.map(|v| from_f64(v.ln())))
}

fn check_log_point(l: &LogPoint) -> Result<(), BowtieError> {
    if l.iter().any(|v| !v.is_negative()) {
        return Err(BowtieError::OutsideSection);
    }
    Ok(())
}

/// The quantity compared against `s_k`: `ln x4 / ln x3` for `R`,
/// `ln x3 / ln x4` for `L`. The `k`-th turn condition is `ratio > s_k`.
fn turn_ratio(cycle: Cycle, l: &LogPoint) -> Rat {
    match cycle {
        Cycle::R => &l[1] / &l[0],
        Cycle::L => &l[1] / &l[2],
    }
}

/// Membership in `E_n` (`L`) or `E~_n` (`R`): the point takes at least `n`
/// consecutive turns. Requires every condition `s_0, ..., s_{n-1}`; points on
/// a boundary are not members.
pub fn membership_log(params: &BowtieParameters, cycle: Cycle, n: u32, l: &LogPoint) -> Result<bool, BowtieError> {
    check_log_point(l)?;
    let r = turn_ratio(cycle, l);
    Ok((0..n).all(|k| r > turn_exponent(params, cycle, k)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurnSetQuery {
    pub cycle: Cycle,
    pub n: u32,
    pub point: [f64; 3],
}

pub fn membership(params: &BowtieParameters, query: &TurnSetQuery) -> Result<bool, BowtieError> {
    membership_log(params, query.cycle, query.n, &log_point(query.point)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TurnCount {
    Finite(u32),
    Unbounded,
}

/// Number of consecutive turns, from the closed-form exponents.
///
/// With `delta < 0` the exponents increase; if also `rho < 1` they converge
/// to `-nu / (1 - rho)` and points beyond that limit keep turning forever.
pub fn max_turns(params: &BowtieParameters, cycle: Cycle, l: &LogPoint) -> Result<TurnCount, BowtieError> {
    check_log_point(l)?;
    let r = turn_ratio(cycle, l);
    if r <= turn_exponent(params, cycle, 0) {
        return Err(BowtieError::NotInE1(cycle));
    }
    let (rho, nu, delta, ..) = params.cycle_data(cycle);
    if !delta.is_negative() {
        return Ok(TurnCount::Unbounded);
    }
    if rho < &Rat::one() && r >= -nu / (Rat::one() - rho) {
        return Ok(TurnCount::Unbounded);
    }
    let mut k = 1;
    while r > turn_exponent(params, cycle, k) {
        k += 1;
    }
    Ok(TurnCount::Finite(k))
}

/// Return and transition maps assembled from local maps.
#[derive(Debug, Clone, PartialEq)]
pub struct BowtieMaps {
    pub h_r: MonomialMap,
    pub h_l: MonomialMap,
    pub g_rl: MonomialMap,
    pub g_lr: MonomialMap,
}

impl BowtieMaps {
    pub fn new(spectrum: &Spectrum) -> Result<Self, BowtieError> {
        Ok(Self {
            h_r: path_map(spectrum, &[1, 2, 3, 1, 2])?,
            h_l: path_map(spectrum, &[5, 2, 4, 5, 2])?,
            g_rl: path_map(spectrum, &[1, 2, 4, 5, 2])?,
            g_lr: path_map(spectrum, &[5, 2, 3, 1, 2])?,
        })
    }

    fn apply(m: &MonomialMap, l: &LogPoint) -> LogPoint {
        let v = m.relevant_exponents().mul_vec(l);
        [v[0].clone(), v[1].clone(), v[2].clone()]
    }

    pub fn apply_h_r(&self, l: &LogPoint) -> LogPoint {
        Self::apply(&self.h_r, l)
    }

    pub fn apply_h_l(&self, l: &LogPoint) -> LogPoint {
        Self::apply(&self.h_l, l)
    }

    pub fn apply_g_rl(&self, l: &LogPoint) -> LogPoint {
        Self::apply(&self.g_rl, l)
    }

    pub fn apply_g_lr(&self, l: &LogPoint) -> LogPoint {
        Self::apply(&self.g_lr, l)
    }
}

/// Whether the point turns once more: `x4 < x3^{e24/e23}` on the right,
/// `x3 < x4^{e23/e24}` on the left.
fn turns_once(params: &BowtieParameters, cycle: Cycle, l: &LogPoint) -> Option<bool> {
    let t = &params.table;
    let margin = match cycle {
        Cycle::R => &t.e24 / &t.e23 * &l[0] - &l[1],
        Cycle::L => &t.e23 / &t.e24 * &l[2] - &l[1],
    };
    if margin.is_zero() {
        None
    } else {
        Some(margin.is_positive())
    }
}

/// Turn count by applying the return map until the point leaves the
/// one-turn region; `None` when `cap` turns are reached.
pub fn max_turns_iterated(
    params: &BowtieParameters,
    maps: &BowtieMaps,
    cycle: Cycle,
    l: &LogPoint,
    cap: u32,
) -> Option<u32> {
    let mut p = l.clone();
    for k in 0..cap {
        if turns_once(params, cycle, &p) != Some(true) {
            return Some(k);
        }
        p = match cycle {
            Cycle::R => maps.apply_h_r(&p),
            Cycle::L => maps.apply_h_l(&p),
        };
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Transition {
    /// One visit to the left cycle, then straight back to the right.
    Rlr,
    /// At least one full turn around the left cycle.
    RllPlus,
    /// On the boundary between the two.
    Degenerate,
}

/// For a point of `H_1^{out,2}` outside `E~_1`: does it come back to the
/// right cycle right after one left visit? Decided by the sign of
/// `A ln x4 + B ln x5 - ln x3`.
pub fn classify_transition(params: &BowtieParameters, l: &LogPoint) -> Result<Transition, BowtieError> {
    check_log_point(l)?;
    if turns_once(params, Cycle::R, l) != Some(false) {
        return Err(BowtieError::PreconditionViolated("point must satisfy x4 > x3^(e24/e23)".into()));
    }
    let v = params.transition_a() * &l[1] + params.transition_b() * &l[2] - &l[0];
    Ok(if v.is_negative() {
        Transition::Rlr
    } else if v.is_positive() {
        Transition::RllPlus
    } else {
        Transition::Degenerate
    })
}

/// A point of each transition kind, built from the two limits `x5 -> 0`
/// (RLR) and `x3 -> 0` (RLL...).
pub fn transition_witness(params: &BowtieParameters, kind: Transition) -> Result<LogPoint, BowtieError> {
    let t = &params.table;
    let (a, b) = (params.transition_a(), params.transition_b());
    if !b.is_positive() {
        return Err(BowtieError::AssumptionViolation("transition witnesses need delta < 0".into()));
    }
    let one = Rat::one();
    let p = match kind {
        Transition::Rlr => {
            let l3 = int(-4);
            let l4 = &t.e24 / &t.e23 * &l3 / int(2);
            let bound = (&l3 - &a * &l4) / &b - &one;
            let l5 = if bound < -one.clone() { bound } else { -one.clone() };
            [l3, l4, l5]
        }
        Transition::RllPlus => {
            let (l4, l5) = (int(-2), int(-2));
            let c1 = &a * &l4 + &b * &l5;
            let c2 = &t.e23 / &t.e24 * &l4;
            let l3 = if c1 < c2 { c1 } else { c2 } - one;
            [l3, l4, l5]
        }
        Transition::Degenerate => {
            return Err(BowtieError::PreconditionViolated("no witness is built for the boundary".into()));
        }
    };
    if classify_transition(params, &p)? != kind {
        return Err(BowtieError::WitnessFailed(format!("{kind:?} witness")));
    }
    Ok(p)
}

/// Exponents `(A_n, B_n)` of the threshold `x4^{A_n} x5^{B_n}` below which
/// `x3` must lie for `g_RL(x)` to be in `E_{n+1}`.
///
/// From the last coordinates of `g_RL`, `(x3 x4^nu x5^beta, x4^rho
/// x5^{(e24/c25) rho})`, and the condition `X3 < X4^{s_n}`: `A_n = rho s_n -
/// nu = s_{n+1}` and `B_n = (e24/c25) rho s_n - beta`.
pub fn l_turn_threshold(params: &BowtieParameters, n: u32) -> (Rat, Rat) {
    let t = &params.table;
    let s_n = turn_exponent(params, Cycle::L, n);
    let a_n = &params.rho * &s_n - &params.nu;
    let b_n = &t.e24 / &t.c25 * &params.rho * &s_n - &params.beta;
    (a_n, b_n)
}

/// A point of `H_1^{out,2}` outside `E~_1` whose image under `g_RL` takes at
/// least `n + 1` turns around the left cycle. `x4 = x5 = e^-2` and `x3` is
/// the threshold divided by `e`.
pub fn witness_for_l_turns(params: &BowtieParameters, maps: &BowtieMaps, n: u32) -> Result<LogPoint, BowtieError> {
    if n == 0 {
        return Err(BowtieError::PreconditionViolated("n must be positive".into()));
    }
    if !params.delta.is_negative() || !params.delta_t.is_negative() {
        return Err(BowtieError::AssumptionViolation("needs delta < 0 and delta~ < 0".into()));
    }
    let (a_n, b_n) = l_turn_threshold(params, n);
    let (l4, l5) = (int(-2), int(-2));
    let log_threshold = &a_n * &l4 + &b_n * &l5;
    let l3 = log_threshold - Rat::one();
    let p = [l3, l4, l5];
    if turns_once(params, Cycle::R, &p) != Some(false) {
        return Err(BowtieError::WitnessFailed("witness lies in E~_1".into()));
    }
    let image = maps.apply_g_rl(&p);
    if !membership_log(params, Cycle::L, n + 1, &image)? {
        return Err(BowtieError::WitnessFailed(format!("g_RL image not in E_{}", n + 1)));
    }
    Ok(p)
}

/// L/R word predicted by the maps for a point of `H_1^{out,2}` that has just
/// visited the right cycle. The first letter is that visit. Stops early with
/// `?` if a point lands exactly on a boundary.
pub fn predicted_word(params: &BowtieParameters, maps: &BowtieMaps, start: &LogPoint, letters: usize) -> String {
    let mut word = String::from("R");
    let mut side = Cycle::R;
    let mut p = start.clone();
    while word.len() < letters {
        let Some(again) = turns_once(params, side, &p) else {
            word.push('?');
            break;
        };
        let (next, map) = match (side, again) {
            (Cycle::R, true) => (Cycle::R, &maps.h_r),
            (Cycle::R, false) => (Cycle::L, &maps.g_rl),
            (Cycle::L, true) => (Cycle::L, &maps.h_l),
            (Cycle::L, false) => (Cycle::R, &maps.g_lr),
        };
        p = BowtieMaps::apply(map, &p);
        side = next;
        word.push(side.letter());
    }
    word
}

/// L/R letters of an itinerary of node labels: `3 -> 1` is a visit to the
/// right cycle, `4 -> 5` a visit to the left one.
pub fn visit_word(nodes: &[usize]) -> String {
    nodes
        .windows(2)
        .filter_map(|w| match (w[0], w[1]) {
            (3, 1) => Some('R'),
            (4, 5) => Some('L'),
            _ => None,
        })
        .collect()
}

/// One of the combinations `source -> cycle -> destination` that switching
/// along a cycle needs.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleSwitchWitness {
    pub cycle: Cycle,
    pub source: usize,
    pub destination: usize,
    pub walk: Vec<usize>,
    /// Log-coordinates on `H_source^{out,2}`.
    pub logs: Vec<Rat>,
}

/// For both cycles and every source in `{1, 5}` and destination in `{3, 4}`,
/// a point entering `xi_2` from the source, going once around the cycle and
/// then leaving `xi_2` toward the destination.
pub fn switching_along_cycle_check(params: &BowtieParameters) -> Result<Vec<CycleSwitchWitness>, BowtieError> {
    let spectrum = params.table.to_spectrum();
    let mut out = Vec::new();
    for (cycle, around) in [(Cycle::R, [3, 1]), (Cycle::L, [4, 5])] {
        for source in [1, 5] {
            for destination in [3, 4] {
                let walk = vec![source, 2, around[0], around[1], 2, destination];
                let (status, w) = path_status_exact(&spectrum, &walk)?;
                let logs = match (status, w) {
                    (PathStatus::Realized, Some(w)) => w,
                    _ => {
                        return Err(BowtieError::Switching(SwitchingError::EmptyRegion { from: source, to: destination }));
                    }
                };
                if follow_path_exact(&spectrum, &walk, &logs).is_none() {
                    return Err(BowtieError::WitnessFailed(format!("walk {walk:?}")));
                }
                out.push(CycleSwitchWitness { cycle, source, destination, walk, logs });
            }
        }
    }
    Ok(out)
}
