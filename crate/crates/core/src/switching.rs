//! Which paths through a common connection are shadowed.
//!
//! Two cycles share `[xi_1 -> xi_2]`, entering `xi_1` from `xi_alpha` or
//! `xi_a` and leaving `xi_2` toward `xi_beta` or `xi_b`. Restricted to the
//! plane of the two incoming directions, points arriving from each side are
//! separated by a power-law curve; likewise for the outgoing decision at
//! `xi_2`. Whether the four combinations occur is a question about how these
//! cusps sit relative to each other under the global map.
//!
//! `alpha` here is a node label; the Bowtie exponent of the same name lives
//! in [`crate::bowtie`].

use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cone::{negative_cone, ConeVerdict};
use crate::maps::{domain_constraints, path_map, DomainConstraint, MapError};
use crate::network::Spectrum;
use crate::rational::{format_rat, to_f64, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwitchingError {
    #[error("assumption 1 does not hold for this configuration")]
    Assumption1Violated,
    #[error("cusp exponent 1 is degenerate (neither thin nor thick)")]
    DegenerateCusp,
    #[error("cusps lie in different planes {0:?} and {1:?}")]
    PlaneMismatch((usize, usize), (usize, usize)),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("global map is not generic: every entry of kappa must be nonzero and det(kappa) != 0")]
    NonGenericKappa,
    #[error("no point of H_2^{{in,1}} goes from xi_{from} to xi_{to}")]
    EmptyRegion { from: usize, to: usize },
    #[error("network wiring mismatch: expected edges {expected:?}, found {found:?}")]
    WiringMismatch { expected: Vec<(usize, usize)>, found: Vec<(usize, usize)> },
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// `y < x^q`
    Below,
    /// `y > x^q`
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Thickness {
    Thin,
    Thick,
    Degenerate,
}

/// `{ |y| < |x|^q }` or `{ |y| > |x|^q }` in the plane `(x, y) = (x_h, x_v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspRegion {
    pub plane: (usize, usize),
    pub exponent: Rat,
    pub side: Side,
}

/// Open interval of `t = ln|y| / ln|x|` values; `hi = None` is infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Interval {
    lo: Rat,
    hi: Option<Rat>,
}

impl Interval {
    fn invert(&self) -> Interval {
        // t -> 1/t on (0, inf)
        let inv = |v: &Rat| v.recip();
        match &self.hi {
            None => Interval { lo: Rat::zero(), hi: if self.lo.is_zero() { None } else { Some(inv(&self.lo)) } },
            Some(h) => Interval { lo: inv(h), hi: if self.lo.is_zero() { None } else { Some(inv(&self.lo)) } },
        }
    }

    fn overlap(&self, other: &Interval) -> Overlap {
        let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
        let hi = match (&self.hi, &other.hi) {
            (None, None) => return Overlap::Open,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => {
                if a < b {
                    a
                } else {
                    b
                }
            }
        };
        if lo < hi {
            Overlap::Open
        } else if lo == hi && lo.is_positive() {
            Overlap::Touching
        } else {
            Overlap::Disjoint
        }
    }

    fn contains(&self, other: &Interval) -> bool {
        let hi_ok = match (&self.hi, &other.hi) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => b <= a,
        };
        other.lo >= self.lo && hi_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Overlap {
    Open,
    Touching,
    Disjoint,
}

impl CuspRegion {
    pub fn new(plane: (usize, usize), exponent: Rat, side: Side) -> Result<Self, SwitchingError> {
        if !exponent.is_positive() {
            return Err(SwitchingError::InvalidConfig(format!("cusp exponent {} must be positive", format_rat(&exponent))));
        }
        if plane.0 == plane.1 {
            return Err(SwitchingError::InvalidConfig("cusp plane needs two distinct axes".into()));
        }
        Ok(Self { plane, exponent, side })
    }

    pub fn thickness(&self) -> Thickness {
        let one = Rat::one();
        match (self.exponent.cmp(&one), self.side) {
            (std::cmp::Ordering::Equal, _) => Thickness::Degenerate,
            (std::cmp::Ordering::Greater, Side::Below) | (std::cmp::Ordering::Less, Side::Above) => Thickness::Thin,
            _ => Thickness::Thick,
        }
    }

    /// Axis the bounding curve is tangent to at the origin.
    pub fn tangency_axis(&self) -> Option<usize> {
        match self.exponent.cmp(&Rat::one()) {
            std::cmp::Ordering::Greater => Some(self.plane.0),
            std::cmp::Ordering::Less => Some(self.plane.1),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// The same set described with the axes exchanged.
    pub fn swapped(&self) -> CuspRegion {
        let side = match self.side {
            Side::Below => Side::Above,
            Side::Above => Side::Below,
        };
        CuspRegion { plane: (self.plane.1, self.plane.0), exponent: self.exponent.recip(), side }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        let curve = x.abs().powf(to_f64(&self.exponent));
        match self.side {
            Side::Below => y.abs() < curve,
            Side::Above => y.abs() > curve,
        }
    }

    fn interval(&self) -> Interval {
        match self.side {
            Side::Below => Interval { lo: self.exponent.clone(), hi: None },
            Side::Above => Interval { lo: Rat::zero(), hi: Some(self.exponent.clone()) },
        }
    }

    /// Interval of `ln|x_v| / ln|x_h|` with `(h, v) = frame`.
    fn interval_in(&self, frame: (usize, usize)) -> Interval {
        if self.plane == frame {
            self.interval()
        } else {
            self.interval().invert()
        }
    }
}

/// How two cusps in the same plane sit near the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspRelations {
    pub first_contains_second: bool,
    pub second_contains_first: bool,
    /// The intersection has positive measure in every small ball.
    pub intersect: bool,
    pub same_tangency: bool,
}

pub fn cusp_relations(c1: &CuspRegion, c2: &CuspRegion) -> Result<CuspRelations, SwitchingError> {
    let same = c1.plane == c2.plane || c1.plane == (c2.plane.1, c2.plane.0);
    if !same {
        return Err(SwitchingError::PlaneMismatch(c1.plane, c2.plane));
    }
    if c1.thickness() == Thickness::Degenerate || c2.thickness() == Thickness::Degenerate {
        return Err(SwitchingError::DegenerateCusp);
    }
    let (i1, i2) = (c1.interval(), c2.interval_in(c1.plane));
    Ok(CuspRelations {
        first_contains_second: i1.contains(&i2),
        second_contains_first: i2.contains(&i1),
        intersect: i1.overlap(&i2) == Overlap::Open,
        same_tangency: c1.tangency_axis() == c2.tangency_axis(),
    })
}

/// Grid estimate of [`cusp_relations`] in `(0, eps]^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampledRelations {
    pub eps: f64,
    pub in_ball: usize,
    pub in_both: usize,
    pub only_first: usize,
    pub only_second: usize,
}

impl SampledRelations {
    pub fn intersection_fraction(&self) -> f64 {
        self.in_both as f64 / self.in_ball.max(1) as f64
    }

    fn verdict(&self) -> (bool, bool, bool) {
        (self.only_second == 0, self.only_first == 0, self.in_both > 0)
    }
}

/// Uniform grid of step `eps / steps` in the positive quadrant of `B_eps(0)`;
/// the other quadrants are mirror images.
pub fn sample_cusp_relations(c1: &CuspRegion, c2: &CuspRegion, eps: f64, steps: usize) -> SampledRelations {
    let c2 = if c2.plane == c1.plane { c2.clone() } else { c2.swapped() };
    let h = eps / steps as f64;
    let mut s = SampledRelations { eps, in_ball: 0, in_both: 0, only_first: 0, only_second: 0 };
    for i in 1..=steps {
        for j in 1..=steps {
            let (x, y) = (i as f64 * h, j as f64 * h);
            if x * x + y * y >= eps * eps {
                continue;
            }
            s.in_ball += 1;
            match (c1.contains(x, y), c2.contains(x, y)) {
                (true, true) => s.in_both += 1,
                (true, false) => s.only_first += 1,
                (false, true) => s.only_second += 1,
                _ => {}
            }
        }
    }
    s
}

/// Samples at `eps`, `eps/10`, ... until two consecutive radii agree on
/// containment and intersection, at most `max_refinements` times.
pub fn stable_sampled_relations(
    c1: &CuspRegion,
    c2: &CuspRegion,
    eps: f64,
    steps: usize,
    max_refinements: usize,
) -> SampledRelations {
    let mut prev = sample_cusp_relations(c1, c2, eps, steps);
    let mut e = eps;
    for _ in 0..max_refinements {
        e /= 10.0;
        let next = sample_cusp_relations(c1, c2, e, steps);
        if next.verdict() == prev.verdict() {
            return next;
        }
        prev = next;
    }
    prev
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlobalMap {
    Identity,
    /// `(x_alpha, x_a) -> kappa (x_alpha, x_a)` landing in `(x_beta, x_b)`.
    /// `assumption1` records whether the user declares that the incoming
    /// plane is carried into the outgoing plane.
    GeneralLinear { kappa: [[Rat; 2]; 2], assumption1: bool },
}

/// The common-connection setting; node labels are coordinates too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonConnectionConfig {
    pub one: usize,
    pub two: usize,
    pub alpha: usize,
    pub a: usize,
    pub beta: usize,
    pub b: usize,
    pub c_1alpha: Rat,
    pub c_1a: Rat,
    pub e_2beta: Rat,
    pub e_2b: Rat,
    pub psi: GlobalMap,
}

impl CommonConnectionConfig {
    pub fn validate(&self) -> Result<(), SwitchingError> {
        if self.alpha == self.a || self.beta == self.b {
            return Err(SwitchingError::InvalidConfig("incoming nodes and outgoing nodes must be distinct".into()));
        }
        for (name, v) in [("c_1alpha", &self.c_1alpha), ("c_1a", &self.c_1a), ("e_2beta", &self.e_2beta), ("e_2b", &self.e_2b)] {
            if !v.is_positive() {
                return Err(SwitchingError::InvalidConfig(format!("{name} must be a positive magnitude")));
            }
        }
        if let GlobalMap::GeneralLinear { kappa, .. } = &self.psi {
            let det = &kappa[0][0] * &kappa[1][1] - &kappa[0][1] * &kappa[1][0];
            if kappa.iter().flatten().any(Zero::is_zero) || det.is_zero() {
                return Err(SwitchingError::NonGenericKappa);
            }
        }
        Ok(())
    }

    /// Reads the four magnitudes off a spectrum; the global map is the identity.
    pub fn from_spectrum(
        spectrum: &Spectrum,
        (one, two): (usize, usize),
        (alpha, a): (usize, usize),
        (beta, b): (usize, usize),
    ) -> Result<Self, SwitchingError> {
        let cfg = Self {
            one,
            two,
            alpha,
            a,
            beta,
            b,
            c_1alpha: -spectrum.eigenvalue(one, alpha).clone(),
            c_1a: -spectrum.eigenvalue(one, a).clone(),
            e_2beta: spectrum.eigenvalue(two, beta).clone(),
            e_2b: spectrum.eigenvalue(two, b).clone(),
            psi: GlobalMap::Identity,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `q1 = c_1a / c_1alpha`, the exponent of the curve separating arrivals.
    pub fn q1(&self) -> Rat {
        &self.c_1a / &self.c_1alpha
    }

    /// `q2 = e_2b / e_2beta`, the exponent of the curve separating exits.
    pub fn q2(&self) -> Rat {
        &self.e_2b / &self.e_2beta
    }

    /// `C_alpha1` and `C_a1` in the plane `(x_alpha, x_a)`.
    pub fn arrival_cusps(&self) -> (CuspRegion, CuspRegion) {
        let plane = (self.alpha, self.a);
        (
            CuspRegion { plane, exponent: self.q1(), side: Side::Below },
            CuspRegion { plane, exponent: self.q1(), side: Side::Above },
        )
    }

    /// `E_2beta` and `E_2b` in the plane `(x_beta, x_b)`.
    pub fn exit_cusps(&self) -> (CuspRegion, CuspRegion) {
        let plane = (self.beta, self.b);
        (
            CuspRegion { plane, exponent: self.q2(), side: Side::Below },
            CuspRegion { plane, exponent: self.q2(), side: Side::Above },
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PathLabel {
    #[serde(rename = "a12b")]
    A12b,
    #[serde(rename = "a12beta")]
    A12Beta,
    #[serde(rename = "alpha12b")]
    Alpha12b,
    #[serde(rename = "alpha12beta")]
    Alpha12Beta,
}

impl PathLabel {
    pub const ALL: [PathLabel; 4] = [PathLabel::A12b, PathLabel::A12Beta, PathLabel::Alpha12b, PathLabel::Alpha12Beta];

    /// `(from alpha?, to beta?)`
    fn sides(self) -> (bool, bool) {
        match self {
            PathLabel::A12b => (false, false),
            PathLabel::A12Beta => (false, true),
            PathLabel::Alpha12b => (true, false),
            PathLabel::Alpha12Beta => (true, true),
        }
    }

    /// The node walk `[source, chain..., destination]`.
    pub fn walk(self, cfg: &CommonConnectionConfig, chain: &[usize]) -> Vec<usize> {
        let (from_alpha, to_beta) = self.sides();
        let mut w = vec![if from_alpha { cfg.alpha } else { cfg.a }];
        w.extend_from_slice(chain);
        w.push(if to_beta { cfg.beta } else { cfg.b });
        w
    }
}

impl fmt::Display for PathLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            PathLabel::A12b => "a12b",
            PathLabel::A12Beta => "a12beta",
            PathLabel::Alpha12b => "alpha12b",
            PathLabel::Alpha12Beta => "alpha12beta",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PathStatus {
    Realized,
    NotRealized,
    /// Only realized on a measure-zero boundary; equal exponent ratios.
    Degenerate,
    /// Outside what the theory decides.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathVerdict {
    pub statuses: Vec<(PathLabel, PathStatus)>,
}

impl PathVerdict {
    fn from_fn(mut f: impl FnMut(PathLabel) -> PathStatus) -> Self {
        Self { statuses: PathLabel::ALL.iter().map(|&p| (p, f(p))).collect() }
    }

    pub fn get(&self, label: PathLabel) -> PathStatus {
        self.statuses.iter().find(|(p, _)| *p == label).map(|(_, s)| *s).expect("all four paths present")
    }

    pub fn with_status(&self, status: PathStatus) -> Vec<PathLabel> {
        self.statuses.iter().filter(|(_, s)| *s == status).map(|(p, _)| *p).collect()
    }

    pub fn missing(&self) -> Vec<PathLabel> {
        self.with_status(PathStatus::NotRealized)
    }
}

/// Whether the incoming plane `x_a x_alpha` is carried into `x_b x_beta`.
/// For the identity this means the two coordinate planes coincide.
pub fn assumption1_check(cfg: &CommonConnectionConfig) -> bool {
    match &cfg.psi {
        GlobalMap::Identity => {
            let mut inc = [cfg.a, cfg.alpha];
            let mut out = [cfg.b, cfg.beta];
            inc.sort_unstable();
            out.sort_unstable();
            inc == out
        }
        GlobalMap::GeneralLinear { assumption1, .. } => *assumption1,
    }
}

/// Symbolic verdict for the four paths through the common connection.
pub fn classify_paths(cfg: &CommonConnectionConfig) -> Result<PathVerdict, SwitchingError> {
    cfg.validate()?;
    match &cfg.psi {
        GlobalMap::Identity => {
            if !assumption1_check(cfg) {
                return Err(SwitchingError::Assumption1Violated);
            }
            let (c_alpha, c_a) = cfg.arrival_cusps();
            let (e_beta, e_b) = cfg.exit_cusps();
            let frame = c_alpha.plane;
            Ok(PathVerdict::from_fn(|p| {
                let (from_alpha, to_beta) = p.sides();
                let src = (if from_alpha { &c_alpha } else { &c_a }).interval_in(frame);
                let dst = (if to_beta { &e_beta } else { &e_b }).interval_in(frame);
                match src.overlap(&dst) {
                    Overlap::Open => PathStatus::Realized,
                    Overlap::Touching => PathStatus::Degenerate,
                    Overlap::Disjoint => PathStatus::NotRealized,
                }
            }))
        }
        GlobalMap::GeneralLinear { assumption1, .. } => {
            if !assumption1 {
                return Ok(PathVerdict::from_fn(|_| PathStatus::Unknown));
            }
            let (_, c_a) = cfg.arrival_cusps();
            let (_, e_b) = cfg.exit_cusps();
            let missing = match (c_a.thickness(), e_b.thickness()) {
                (Thickness::Degenerate, _) | (_, Thickness::Degenerate) => return Err(SwitchingError::DegenerateCusp),
                (Thickness::Thick, Thickness::Thick) => PathLabel::Alpha12Beta,
                (Thickness::Thin, Thickness::Thin) => PathLabel::A12b,
                (Thickness::Thin, Thickness::Thick) => PathLabel::A12Beta,
                (Thickness::Thick, Thickness::Thin) => PathLabel::Alpha12b,
            };
            Ok(PathVerdict::from_fn(|p| if p == missing { PathStatus::NotRealized } else { PathStatus::Realized }))
        }
    }
}

/// Grid evidence for a general linear global map: which paths have a sample
/// point in `B_eps(0)` of the incoming plane, any sign quadrant, that starts in
/// the arrival cusp and lands in the exit cusp.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaneSample {
    pub eps: f64,
    pub hits: Vec<(PathLabel, usize)>,
}

impl PlaneSample {
    pub fn realized(&self, label: PathLabel) -> bool {
        self.hits.iter().any(|(p, n)| *p == label && *n > 0)
    }
}

/// Magnitudes log-spaced over `decades` decades below `eps`, `per_axis` per
/// axis, in all four sign quadrants. The grid is laid out twice: once in the
/// incoming coordinates and once in the image coordinates pulled back through
/// `kappa`, so cusps tangent to an axis on either side get sample points.
pub fn sample_plane_paths(cfg: &CommonConnectionConfig, eps: f64, per_axis: usize, decades: f64) -> PlaneSample {
    let kappa = match &cfg.psi {
        GlobalMap::Identity => [[1.0, 0.0], [0.0, 1.0]],
        GlobalMap::GeneralLinear { kappa, .. } => {
            [[to_f64(&kappa[0][0]), to_f64(&kappa[0][1])], [to_f64(&kappa[1][0]), to_f64(&kappa[1][1])]]
        }
    };
    let det = kappa[0][0] * kappa[1][1] - kappa[0][1] * kappa[1][0];
    let (q1, q2) = (to_f64(&cfg.q1()), to_f64(&cfg.q2()));
    let mags: Vec<f64> =
        (0..per_axis).map(|i| eps * 10f64.powf(-decades * i as f64 / (per_axis.max(2) - 1) as f64)).collect();
    let mut hits = [0usize; 4];
    let mut classify = |x: f64, y: f64| {
        if x * x + y * y >= eps * eps {
            return;
        }
        let curve1 = x.abs().powf(q1);
        let from_alpha = match y.abs().partial_cmp(&curve1) {
            Some(std::cmp::Ordering::Less) => true,
            Some(std::cmp::Ordering::Greater) => false,
            _ => return,
        };
        let (u, v) = (kappa[0][0] * x + kappa[0][1] * y, kappa[1][0] * x + kappa[1][1] * y);
        let curve2 = u.abs().powf(q2);
        let to_beta = match v.abs().partial_cmp(&curve2) {
            Some(std::cmp::Ordering::Less) => true,
            Some(std::cmp::Ordering::Greater) => false,
            _ => return,
        };
        let idx = PathLabel::ALL.iter().position(|p| p.sides() == (from_alpha, to_beta)).expect("label");
        hits[idx] += 1;
    };
    for &m1 in &mags {
        for &m2 in &mags {
            for (s1, s2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let (a, b) = (s1 * m1, s2 * m2);
                classify(a, b);
                if det != 0.0 {
                    // (a, b) read as (u, v)
                    classify((kappa[1][1] * a - kappa[0][1] * b) / det, (kappa[0][0] * b - kappa[1][0] * a) / det);
                }
            }
        }
    }
    PlaneSample { eps, hits: PathLabel::ALL.iter().copied().zip(hits).collect() }
}

/// [`sample_plane_paths`] at `eps`, refined by factors of 10 until the set of
/// realized paths is the same at two consecutive radii.
pub fn stable_plane_paths(cfg: &CommonConnectionConfig, eps: f64, per_axis: usize, decades: f64) -> PlaneSample {
    let key = |s: &PlaneSample| PathLabel::ALL.map(|p| s.realized(p));
    let mut prev = sample_plane_paths(cfg, eps, per_axis, decades);
    let mut e = eps;
    for _ in 0..4 {
        e /= 10.0;
        let next = sample_plane_paths(cfg, e, per_axis, decades);
        if key(&next) == key(&prev) {
            return next;
        }
        prev = next;
    }
    prev
}

/// Log-spaced sampling grid on the relevant coordinates of an outgoing
/// section. Each coordinate takes `per_axis` values `x = exp(l)` with `|l|`
/// geometrically spaced between `|ln eps|` and `depth * |ln eps|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub per_axis: usize,
    pub eps: f64,
    pub depth: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { per_axis: 64, eps: 1e-2, depth: 1000.0 }
    }
}

impl GridSpec {
    pub fn levels(&self) -> Vec<f64> {
        let base = self.eps.ln();
        let n = self.per_axis.max(1);
        if n == 1 {
            return vec![base];
        }
        (0..n).map(|i| base * self.depth.powf(i as f64 / (n - 1) as f64)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ShadowOutcome {
    /// Grid index and log-coordinates of the first surviving point.
    Witness { index: usize, logs: Vec<f64> },
    /// No grid point follows the path. Evidence, not proof.
    EmptyOnGrid(GridSpec),
}

impl ShadowOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, ShadowOutcome::Witness { .. })
    }
}

/// Tracks a point of `H_{path[0]}^{out,path[1]}`, given by the log-values of
/// its relevant coordinates, through the linearized flow and reports whether
/// every node sends it on along `path`. Ties count as failure.
pub fn follows_path_f64(lambda: &[Vec<f64>], path: &[usize], relevant_logs: &[f64]) -> bool {
    let n = lambda.len();
    let mut l = vec![0.0; n + 1];
    let mut it = relevant_logs.iter();
    for c in 1..=n {
        if c != path[0] && c != path[1] {
            l[c] = *it.next().expect("one log per relevant coordinate");
        }
    }
    for w in path.windows(3) {
        let (from, node, to) = (w[0], w[1], w[2]);
        l[from] = 0.0;
        l[node] = 0.0;
        let time = |k: usize| -l[k] / lambda[node - 1][k - 1];
        let t = time(to);
        for k in 1..=n {
            if k != to && k != from && k != node && lambda[node - 1][k - 1] > 0.0 && time(k) <= t {
                return false;
            }
        }
        for k in 1..=n {
            l[k] += lambda[node - 1][k - 1] * t;
        }
    }
    true
}

/// Exact counterpart of [`follows_path_f64`]. Returns the log-state on every
/// incoming section along the way (full coordinate vectors, fixed and radial
/// entries zero), or `None` at the first wrong turn.
pub fn follow_path_exact(spectrum: &Spectrum, path: &[usize], relevant_logs: &[Rat]) -> Option<Vec<Vec<Rat>>> {
    let n = spectrum.n();
    let mut l = vec![Rat::zero(); n + 1];
    let mut it = relevant_logs.iter();
    for c in 1..=n {
        if c != path[0] && c != path[1] {
            l[c] = it.next().expect("one log per relevant coordinate").clone();
        }
    }
    let mut trace = Vec::new();
    for w in path.windows(3) {
        let (from, node, to) = (w[0], w[1], w[2]);
        l[from] = Rat::zero();
        l[node] = Rat::zero();
        trace.push(l[1..].to_vec());
        let time = |k: usize, l: &[Rat]| -&l[k] / spectrum.eigenvalue(node, k);
        let t = time(to, &l);
        for k in spectrum.outgoing(node) {
            if k != to && k != from && time(k, &l) <= t {
                return None;
            }
        }
        for (k, v) in l.iter_mut().enumerate().skip(1) {
            *v += spectrum.eigenvalue(node, k) * &t;
        }
    }
    let last = path.len() - 1;
    l[path[last - 1]] = Rat::zero();
    l[path[last]] = Rat::zero();
    trace.push(l[1..].to_vec());
    Some(trace)
}

fn lambda_f64(spectrum: &Spectrum) -> Vec<Vec<f64>> {
    let n = spectrum.n();
    (1..=n).map(|i| (1..=n).map(|k| to_f64(spectrum.eigenvalue(i, k))).collect()).collect()
}

/// Brute-force search for a grid point on `H_{path[0]}^{out,path[1]}` that
/// follows `path`. The first witness in grid order is returned, so the
/// result does not depend on thread scheduling.
pub fn verify_shadowing(spectrum: &Spectrum, path: &[usize], grid: &GridSpec) -> Result<ShadowOutcome, SwitchingError> {
    crate::maps::check_walk(spectrum, path)?;
    let lambda = lambda_f64(spectrum);
    let dims = spectrum.n().saturating_sub(2);
    let levels = grid.levels();
    let per = levels.len();
    let total = per.checked_pow(dims as u32).expect("grid size overflow");
    let point = |mut idx: usize| -> Vec<f64> {
        let mut p = vec![0.0; dims];
        for slot in p.iter_mut().rev() {
            *slot = levels[idx % per];
            idx /= per;
        }
        p
    };
    let found = (0..total).into_par_iter().find_first(|&idx| follows_path_f64(&lambda, path, &point(idx)));
    Ok(match found {
        Some(index) => ShadowOutcome::Witness { index, logs: point(index) },
        None => ShadowOutcome::EmptyOnGrid(*grid),
    })
}

/// Exact cone verdict for one walk, starting on `H_{walk[0]}^{out,walk[1]}`.
pub fn path_status_exact(spectrum: &Spectrum, walk: &[usize]) -> Result<(PathStatus, Option<Vec<Rat>>), SwitchingError> {
    let dc = domain_constraints(spectrum, walk)?;
    let forms: Vec<Vec<Rat>> = dc.inequalities.iter().map(|i| i.log_form()).collect();
    Ok(match negative_cone(dc.coords.len(), &forms) {
        ConeVerdict::Feasible(w) => (PathStatus::Realized, Some(w)),
        ConeVerdict::Degenerate => (PathStatus::Degenerate, None),
        ConeVerdict::Infeasible => (PathStatus::NotRealized, None),
    })
}

/// Verdict for the four paths when the shared connection is replaced by the
/// chain `xi_1 -> xi_1* -> ... -> xi_2` (identity global maps). The verdict
/// comes from the exact linearized model of the whole cross-sections.
pub fn sequence_corollary_check(
    spectrum: &Spectrum,
    chain: &[usize],
    (alpha, a): (usize, usize),
    (beta, b): (usize, usize),
) -> Result<PathVerdict, SwitchingError> {
    if chain.len() < 2 {
        return Err(SwitchingError::InvalidConfig("chain needs at least the two shared nodes".into()));
    }
    let (one, two) = (chain[0], chain[chain.len() - 1]);
    let cfg = CommonConnectionConfig {
        one,
        two,
        alpha,
        a,
        beta,
        b,
        c_1alpha: -spectrum.eigenvalue(one, alpha).clone(),
        c_1a: -spectrum.eigenvalue(one, a).clone(),
        e_2beta: spectrum.eigenvalue(two, beta).clone(),
        e_2b: spectrum.eigenvalue(two, b).clone(),
        psi: GlobalMap::Identity,
    };
    cfg.validate()?;
    if !assumption1_check(&cfg) {
        return Err(SwitchingError::Assumption1Violated);
    }
    let mut out = Vec::new();
    for p in PathLabel::ALL {
        out.push((p, path_status_exact(spectrum, &p.walk(&cfg, chain))?.0));
    }
    Ok(PathVerdict { statuses: out })
}

pub const HOUSE_EDGES: [(usize, usize); 6] = [(1, 2), (2, 3), (3, 1), (2, 4), (4, 5), (5, 1)];

/// One of the four arrival/exit combinations at `H_2^{in,1}` of the House.
#[derive(Debug, Clone, PartialEq)]
pub struct HouseRegion {
    pub source: usize,
    pub destination: usize,
    pub walk: Vec<usize>,
    /// Region on `H_source^{out,1}`; its image is the region in `H_2^{in,1}`.
    pub constraint: DomainConstraint,
    /// Log-coordinates of the witness on `H_source^{out,1}`.
    pub initial_logs: Vec<Rat>,
    /// Log-coordinates `(x3, x4, x5)` of the witness on `H_2^{in,1}`.
    pub entry_logs: Vec<Rat>,
}

/// Witnesses for every combination of arriving from `xi_3`/`xi_5` and
/// leaving toward `xi_3`/`xi_4`.
///
/// Transverse contraction at `xi_1` is part of the model: a point coming from
/// `xi_3` has its `x_4` coordinate shrunk there, and it can only turn toward
/// `xi_4` when `c_14/e_24 < c_13/e_23`. Otherwise the `3 -> 4` region is empty
/// and an error is returned.
pub fn house_regions(spectrum: &Spectrum) -> Result<Vec<HouseRegion>, SwitchingError> {
    let found: Vec<(usize, usize)> = spectrum.graph().edges().collect();
    let mut expected = HOUSE_EDGES.to_vec();
    expected.sort_unstable();
    if found != expected || spectrum.n() != 5 {
        return Err(SwitchingError::WiringMismatch { expected, found });
    }
    let mut out = Vec::new();
    for (source, destination) in [(3, 3), (3, 4), (5, 3), (5, 4)] {
        let walk = vec![source, 1, 2, destination];
        let constraint = domain_constraints(spectrum, &walk)?;
        let (status, witness) = path_status_exact(spectrum, &walk)?;
        let empty = || SwitchingError::EmptyRegion { from: source, to: destination };
        let initial_logs = match (status, witness) {
            (PathStatus::Realized, Some(w)) => w,
            _ => return Err(empty()),
        };
        let trace = follow_path_exact(spectrum, &walk, &initial_logs).ok_or_else(empty)?;
        // state on H_2^{in,1}: second entry of the trace
        let entry = &trace[1];
        let entry_logs = vec![entry[2].clone(), entry[3].clone(), entry[4].clone()];
        // the composed monomial map must land on the same point
        let m = path_map(spectrum, &[source, 1, 2])?;
        let full = initial_full(&m.domain.active_coords(), &m.domain.relevant_coords(), &initial_logs);
        let image = m.apply_log(&full)?;
        let cod = &m.codomain;
        for (pos, c) in [3usize, 4, 5].iter().enumerate() {
            let idx = cod.position_of(*c).expect("active");
            if image[idx] != entry_logs[pos] {
                return Err(empty());
            }
        }
        out.push(HouseRegion { source, destination, walk, constraint, initial_logs, entry_logs });
    }
    Ok(out)
}

/// Expands relevant log-coordinates to all active ones, radial set to 0.
fn initial_full(active: &[usize], relevant: &[usize], logs: &[Rat]) -> Vec<Rat> {
    active
        .iter()
        .map(|c| relevant.iter().position(|r| r == c).map_or_else(Rat::zero, |i| logs[i].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{build_simplex_field, DirectedGraph, Margins};
    use crate::rational::{int, rat};

    fn cusp(q: Rat, side: Side) -> CuspRegion {
        CuspRegion::new((1, 2), q, side).unwrap()
    }

    #[test]
    fn thickness_follows_exponent_and_side() {
        assert_eq!(cusp(int(2), Side::Below).thickness(), Thickness::Thin);
        assert_eq!(cusp(int(2), Side::Above).thickness(), Thickness::Thick);
        assert_eq!(cusp(rat(1, 2), Side::Above).thickness(), Thickness::Thin);
        assert_eq!(cusp(rat(1, 2), Side::Below).thickness(), Thickness::Thick);
        assert_eq!(cusp(int(1), Side::Below).thickness(), Thickness::Degenerate);
        assert_eq!(cusp(int(2), Side::Below).tangency_axis(), Some(1));
        assert_eq!(cusp(rat(1, 2), Side::Above).tangency_axis(), Some(2));
    }

    #[test]
    fn swapping_axes_preserves_thickness() {
        for (q, s) in [(int(3), Side::Below), (rat(1, 3), Side::Below), (int(2), Side::Above)] {
            let c = cusp(q, s);
            assert_eq!(c.swapped().thickness(), c.thickness());
            assert_eq!(c.swapped().tangency_axis(), c.tangency_axis());
        }
    }

    #[test]
    fn thin_cusps_on_different_axes_are_disjoint() {
        let r = cusp_relations(&cusp(int(2), Side::Below), &cusp(rat(1, 2), Side::Above)).unwrap();
        assert!(!r.intersect);
        let s = sample_cusp_relations(&cusp(int(2), Side::Below), &cusp(rat(1, 2), Side::Above), 1e-2, 100);
        assert_eq!(s.in_both, 0);
    }

    #[test]
    fn identical_cusps_contain_each_other() {
        let c = cusp(int(3), Side::Above);
        let r = cusp_relations(&c, &c.clone()).unwrap();
        assert!(r.first_contains_second && r.second_contains_first && r.intersect);
    }

    #[test]
    fn thick_cusps_keep_a_fixed_share_of_small_balls() {
        let (c1, c2) = (cusp(int(3), Side::Above), cusp(rat(1, 3), Side::Below));
        assert!(cusp_relations(&c1, &c2).unwrap().intersect);
        for eps in [1e-1, 1e-2, 1e-3] {
            assert!(sample_cusp_relations(&c1, &c2, eps, 200).intersection_fraction() > 0.5);
        }
    }

    #[test]
    fn degenerate_exponent_is_an_error() {
        assert_eq!(cusp_relations(&cusp(int(1), Side::Above), &cusp(int(2), Side::Above)), Err(SwitchingError::DegenerateCusp));
    }

    fn ks_config(q1: Rat, q2: Rat) -> CommonConnectionConfig {
        CommonConnectionConfig {
            one: 1,
            two: 2,
            alpha: 3,
            a: 4,
            beta: 3,
            b: 4,
            c_1alpha: int(1),
            c_1a: q1,
            e_2beta: int(1),
            e_2b: q2,
            psi: GlobalMap::Identity,
        }
    }

    #[test]
    fn identity_map_misses_exactly_one_cross_path() {
        let v = classify_paths(&ks_config(rat(1, 2), int(2))).unwrap();
        assert_eq!(v.missing(), vec![PathLabel::A12Beta]);
        let v = classify_paths(&ks_config(int(2), rat(1, 2))).unwrap();
        assert_eq!(v.missing(), vec![PathLabel::Alpha12b]);
        let v = classify_paths(&ks_config(int(2), int(2))).unwrap();
        assert_eq!(v.with_status(PathStatus::Degenerate), vec![PathLabel::A12Beta, PathLabel::Alpha12b]);
    }

    #[test]
    fn assumption1_reads_coordinate_planes() {
        assert!(assumption1_check(&ks_config(int(1), int(2))));
        let mut house = ks_config(int(1), int(2));
        house.alpha = 5;
        assert!(!assumption1_check(&house));
        assert_eq!(classify_paths(&house), Err(SwitchingError::Assumption1Violated));
    }

    #[test]
    fn general_map_without_assumption_is_unknown() {
        let mut cfg = ks_config(int(2), int(3));
        cfg.psi = GlobalMap::GeneralLinear { kappa: [[int(1), int(1)], [int(-1), int(2)]], assumption1: false };
        let v = classify_paths(&cfg).unwrap();
        assert_eq!(v.with_status(PathStatus::Unknown).len(), 4);
    }

    #[test]
    fn nongeneric_kappa_is_rejected() {
        let mut cfg = ks_config(int(2), int(3));
        cfg.psi = GlobalMap::GeneralLinear { kappa: [[int(1), int(0)], [int(1), int(2)]], assumption1: true };
        assert_eq!(classify_paths(&cfg), Err(SwitchingError::NonGenericKappa));
    }

    #[test]
    fn house_with_default_margins_switches() {
        let g = DirectedGraph::new(5, HOUSE_EDGES).unwrap();
        let s = build_simplex_field(&g, &Margins::default()).unwrap().spectrum();
        let regions = house_regions(&s).unwrap();
        assert_eq!(regions.len(), 4);
        let five_four = &regions[3];
        // close to the x4x5-plane: x3 is the smallest coordinate
        assert!(five_four.entry_logs[0] < five_four.entry_logs[1]);
    }

    #[test]
    fn strong_transverse_contraction_closes_three_to_four() {
        let g = DirectedGraph::new(5, HOUSE_EDGES).unwrap();
        let f = build_simplex_field(&g, &Margins::default()).unwrap().with_override(1, 4, int(-3)).unwrap();
        assert_eq!(house_regions(&f.spectrum()), Err(SwitchingError::EmptyRegion { from: 3, to: 4 }));
    }

    #[test]
    fn connection_alone_is_shadowed() {
        let g = DirectedGraph::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        let s = build_simplex_field(&g, &Margins::default()).unwrap().spectrum();
        let grid = GridSpec { per_axis: 4, ..GridSpec::default() };
        assert!(verify_shadowing(&s, &[1, 2], &grid).unwrap().is_witness());
    }
}
