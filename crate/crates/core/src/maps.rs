//! Monomial maps between cross-sections.
//!
//! Near a hyperbolic equilibrium with real simple eigenvalues the linearized
//! flow between an incoming and an outgoing section is a monomial map
//! `y_k = prod_l x_l^{E[k][l]}`. In logarithmic coordinates that is the linear
//! map `E`, so composition is a matrix product and iteration a matrix power.
//! Exponents are exact rationals throughout.
//!
//! Global maps along connections are the identity: the outgoing section
//! `H_i^{out,k}` is identified with `H_k^{in,i}` coordinate by coordinate. The
//! old radial coordinate `x_i` becomes the fixed coordinate of the new section
//! and the new radial coordinate `x_k` starts at the section value 1.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::network::{EquilibriumData, Spectrum};
use crate::rational::{format_rat, parse_rat, to_f64, Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("expanding eigenvalue at node {node} toward x_{direction} is {value}, must be positive")]
    NonPositiveExpanding { node: usize, direction: usize, value: String },
    #[error("sections do not match: expected {expected}, found {found}")]
    SectionMismatch { expected: String, found: String },
    #[error("input coordinate {0} is not strictly positive")]
    NonPositiveInput(usize),
    #[error("expected {expected} coordinates, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("nothing to compose")]
    EmptyComposition,
    #[error("iteration count must be positive")]
    ZeroIterations,
    #[error("{0:?} is not a walk of the network")]
    NotAWalk(Vec<usize>),
    #[error("bad map text at line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    In,
    Out,
}

/// `H_node^{in,neighbor}` or `H_node^{out,neighbor}` in `R^dimension`.
///
/// The fixed coordinate is `x_neighbor`; the active coordinates are the other
/// `dimension - 1`, among them the radial coordinate `x_node`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSection {
    pub node: usize,
    pub orientation: Orientation,
    pub neighbor: usize,
    pub dimension: usize,
    /// Distance of the fixed coordinate from the equilibrium. Only the
    /// simulation reads it; the algebra works in normalized coordinates.
    pub offset: f64,
}

pub const DEFAULT_SECTION_OFFSET: f64 = 0.1;

impl CrossSection {
    pub fn incoming(node: usize, from: usize, dimension: usize) -> Self {
        Self { node, orientation: Orientation::In, neighbor: from, dimension, offset: DEFAULT_SECTION_OFFSET }
    }

    pub fn outgoing(node: usize, to: usize, dimension: usize) -> Self {
        Self { node, orientation: Orientation::Out, neighbor: to, dimension, offset: DEFAULT_SECTION_OFFSET }
    }

    /// The connection `(from, to)` this section sits on.
    pub fn connection(&self) -> (usize, usize) {
        match self.orientation {
            Orientation::Out => (self.node, self.neighbor),
            Orientation::In => (self.neighbor, self.node),
        }
    }

    pub fn active_coords(&self) -> Vec<usize> {
        (1..=self.dimension).filter(|&c| c != self.neighbor).collect()
    }

    /// Active coordinates without the radial one.
    pub fn relevant_coords(&self) -> Vec<usize> {
        (1..=self.dimension).filter(|&c| c != self.neighbor && c != self.node).collect()
    }

    pub fn position_of(&self, coord: usize) -> Option<usize> {
        self.active_coords().iter().position(|&c| c == coord)
    }

    /// Same section up to the identity global map.
    pub fn identified_with(&self, other: &CrossSection) -> bool {
        self.dimension == other.dimension && self.connection() == other.connection()
    }

    fn same_as(&self, other: &CrossSection) -> bool {
        self.node == other.node
            && self.orientation == other.orientation
            && self.neighbor == other.neighbor
            && self.dimension == other.dimension
    }
}

impl fmt::Display for CrossSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::In => "in",
            Orientation::Out => "out",
        };
        write!(f, "H_{}^{{{},{}}}", self.node, o, self.neighbor)
    }
}

/// Log-linear change of coordinates from `from` to `to` under the identity
/// global map. Coordinates active in both carry over; the new radial one
/// starts at 1 (log 0).
pub fn identification(from: &CrossSection, to: &CrossSection) -> RatMatrix {
    let src = from.active_coords();
    let dst = to.active_coords();
    let mut g = RatMatrix::zeros(dst.len(), src.len());
    for (r, c) in dst.iter().enumerate() {
        if let Some(col) = src.iter().position(|s| s == c) {
            g[(r, col)] = Rat::one();
        }
    }
    g
}

/// `y = x^E` with rows indexed by the codomain's active coordinates and
/// columns by the domain's.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialMap {
    pub domain: CrossSection,
    pub codomain: CrossSection,
    pub exponents: RatMatrix,
}

/// Result of [`MonomialMap::evaluate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Evaluation {
    Exact(Vec<Rat>),
    /// Float fallback, relative precision about `1e-12` per unit of log.
    Approx(Vec<f64>),
}

impl Evaluation {
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Evaluation::Exact(v) => v.iter().map(to_f64).collect(),
            Evaluation::Approx(v) => v.clone(),
        }
    }
}

/// Local map `phi_{from, node, to}: H_node^{in,from} -> H_node^{out,to}` of the
/// linearized flow at `eq`.
///
/// With `e = lambda_to > 0`, coordinate `x_to` reaches the section after time
/// `-ln(x_to)/e`, so every other coordinate `x_m` picks up `x_to^{-lambda_m/e}`
/// and the incoming direction becomes `x_to^{c/e}`.
pub fn local_map(eq: &EquilibriumData, from: usize, to: usize) -> Result<MonomialMap, MapError> {
    let n = eq.dimension();
    let node = eq.index;
    let e = eq.eigenvalue(to);
    if !e.is_positive() {
        return Err(MapError::NonPositiveExpanding { node, direction: to, value: format_rat(e) });
    }
    let domain = CrossSection::incoming(node, from, n);
    let codomain = CrossSection::outgoing(node, to, n);
    let cols = domain.active_coords();
    let rows = codomain.active_coords();
    let col_of = |c: usize| cols.iter().position(|&x| x == c).expect("active coordinate");
    let to_col = col_of(to);
    let mut m = RatMatrix::zeros(rows.len(), cols.len());
    for (r, &coord) in rows.iter().enumerate() {
        if coord != from {
            m[(r, col_of(coord))] = Rat::one();
        }
        m[(r, to_col)] = -eq.eigenvalue(coord) / e;
    }
    Ok(MonomialMap { domain, codomain, exponents: m })
}

/// Composes maps in application order: `maps[0]` acts first.
pub fn compose(maps: &[MonomialMap]) -> Result<MonomialMap, MapError> {
    let (first, rest) = maps.split_first().ok_or(MapError::EmptyComposition)?;
    let mut acc = first.clone();
    for next in rest {
        acc = acc.then(next)?;
    }
    Ok(acc)
}

/// `map` applied `n` times; needs a domain identified with the codomain.
pub fn iterate(map: &MonomialMap, n: u32) -> Result<MonomialMap, MapError> {
    if n == 0 {
        return Err(MapError::ZeroIterations);
    }
    if !map.codomain.identified_with(&map.domain) {
        return Err(MapError::SectionMismatch { expected: map.domain.to_string(), found: map.codomain.to_string() });
    }
    // E (G E)^{n-1}, G the identification codomain -> domain
    let step = &identification(&map.codomain, &map.domain) * &map.exponents;
    Ok(MonomialMap {
        domain: map.domain.clone(),
        codomain: map.codomain.clone(),
        exponents: &map.exponents * &step.pow(n - 1),
    })
}

impl MonomialMap {
    pub fn identity(section: CrossSection) -> Self {
        let k = section.active_coords().len();
        Self { domain: section.clone(), codomain: section, exponents: RatMatrix::identity(k) }
    }

    /// `next` after `self`.
    pub fn then(&self, next: &MonomialMap) -> Result<MonomialMap, MapError> {
        if !self.codomain.identified_with(&next.domain) {
            return Err(MapError::SectionMismatch { expected: next.domain.to_string(), found: self.codomain.to_string() });
        }
        let glue = if self.codomain.same_as(&next.domain) {
            self.exponents.clone()
        } else {
            &identification(&self.codomain, &next.domain) * &self.exponents
        };
        Ok(MonomialMap { domain: self.domain.clone(), codomain: next.codomain.clone(), exponents: &next.exponents * &glue })
    }

    /// Exponent of input coordinate `input` in output coordinate `output`.
    pub fn exponent(&self, output: usize, input: usize) -> Rat {
        match (self.codomain.position_of(output), self.domain.position_of(input)) {
            (Some(r), Some(c)) => self.exponents[(r, c)].clone(),
            _ => Rat::zero(),
        }
    }

    /// Exponent block between relevant (non-radial) coordinates only.
    pub fn relevant_exponents(&self) -> RatMatrix {
        let pos = |s: &CrossSection| -> Vec<usize> {
            s.relevant_coords().iter().map(|&c| s.position_of(c).expect("relevant is active")).collect()
        };
        self.exponents.submatrix(&pos(&self.codomain), &pos(&self.domain))
    }

    pub fn apply_log(&self, logs: &[Rat]) -> Result<Vec<Rat>, MapError> {
        self.check_len(logs.len())?;
        Ok(self.exponents.mul_vec(logs))
    }

    pub fn apply_log_f64(&self, logs: &[f64]) -> Result<Vec<f64>, MapError> {
        self.check_len(logs.len())?;
        Ok(self.exponents.mul_vec_f64(logs))
    }

    pub fn evaluate_f64(&self, x: &[f64]) -> Result<Vec<f64>, MapError> {
        self.check_len(x.len())?;
        if let Some(i) = x.iter().position(|v| !(*v > 0.0)) {
            return Err(MapError::NonPositiveInput(i));
        }
        let logs: Vec<f64> = x.iter().map(|v| v.ln()).collect();
        Ok(self.exponents.mul_vec_f64(&logs).into_iter().map(f64::exp).collect())
    }

    /// Evaluates at a positive rational point, exactly when every power is a
    /// rational number of modest size and in floating point otherwise.
    pub fn evaluate(&self, x: &[Rat]) -> Result<Evaluation, MapError> {
        self.check_len(x.len())?;
        if let Some(i) = x.iter().position(|v| !v.is_positive()) {
            return Err(MapError::NonPositiveInput(i));
        }
        let exact: Option<Vec<Rat>> = (0..self.exponents.rows())
            .map(|r| {
                self.exponents.row(r).iter().zip(x).try_fold(Rat::one(), |acc, (p, v)| exact_power(v, p).map(|y| acc * y))
            })
            .collect();
        match exact {
            Some(v) => Ok(Evaluation::Exact(v)),
            None => {
                let xf: Vec<f64> = x.iter().map(to_f64).collect();
                Ok(Evaluation::Approx(self.evaluate_f64(&xf)?))
            }
        }
    }

    fn check_len(&self, len: usize) -> Result<(), MapError> {
        let expected = self.exponents.cols();
        if len != expected {
            return Err(MapError::Dimension { expected, found: len });
        }
        Ok(())
    }

    /// Plain-text form; see [`MonomialMap::from_text`].
    pub fn to_text(&self) -> String {
        let mut s = String::from("monomial-map\n");
        s.push_str(&section_line("domain", &self.domain));
        s.push_str(&section_line("codomain", &self.codomain));
        let cols: Vec<String> = self.domain.active_coords().iter().map(|c| format!("x{c}")).collect();
        s.push_str(&format!("columns {}\n", cols.join(" ")));
        for (r, coord) in self.codomain.active_coords().iter().enumerate() {
            let row: Vec<String> = self.exponents.row(r).iter().map(format_rat).collect();
            s.push_str(&format!("x{coord} = {}\n", row.join(" ")));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<MonomialMap, MapError> {
        let err = |line: usize, message: &str| MapError::Parse { line, message: message.to_string() };
        let lines: Vec<(usize, &str)> =
            text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
        let mut it = lines.into_iter();
        match it.next() {
            Some((_, "monomial-map")) => {}
            Some((n, _)) => return Err(err(n, "expected header `monomial-map`")),
            None => return Err(err(1, "empty input")),
        }
        let domain = parse_section_line(it.next(), "domain")?;
        let codomain = parse_section_line(it.next(), "codomain")?;
        if domain.dimension != codomain.dimension {
            return Err(err(3, "domain and codomain dimensions differ"));
        }
        let (cl, cols) = it.next().ok_or_else(|| err(4, "missing columns line"))?;
        let expected_cols: Vec<String> = domain.active_coords().iter().map(|c| format!("x{c}")).collect();
        let found: Vec<&str> = cols.strip_prefix("columns").unwrap_or("").split_whitespace().collect();
        if found != expected_cols.iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(err(cl, "columns do not list the domain's active coordinates"));
        }
        let mut rows = Vec::new();
        for coord in codomain.active_coords() {
            let (ln, line) = it.next().ok_or_else(|| err(0, "missing exponent row"))?;
            let (head, body) = line.split_once('=').ok_or_else(|| err(ln, "expected `xk = ...`"))?;
            if head.trim() != format!("x{coord}") {
                return Err(err(ln, &format!("expected row for x{coord}")));
            }
            let row = body
                .split_whitespace()
                .map(|t| parse_rat(t).map_err(|e| err(ln, &e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != expected_cols.len() {
                return Err(err(ln, "wrong number of exponents"));
            }
            rows.push(row);
        }
        if let Some((ln, _)) = it.next() {
            return Err(err(ln, "trailing content"));
        }
        Ok(MonomialMap { domain, codomain, exponents: RatMatrix::from_rows(rows) })
    }
}

fn section_line(label: &str, s: &CrossSection) -> String {
    let o = match s.orientation {
        Orientation::In => "in",
        Orientation::Out => "out",
    };
    format!("{label} node={} {o}={} dim={} h={:?}\n", s.node, s.neighbor, s.dimension, s.offset)
}

fn parse_section_line(line: Option<(usize, &str)>, label: &str) -> Result<CrossSection, MapError> {
    let (ln, text) = line.ok_or_else(|| MapError::Parse { line: 0, message: format!("missing {label} line") })?;
    let err = |m: &str| MapError::Parse { line: ln, message: m.to_string() };
    let mut parts = text.split_whitespace();
    if parts.next() != Some(label) {
        return Err(err(&format!("expected `{label}`")));
    }
    let mut node = None;
    let mut orient = None;
    let mut dim = None;
    let mut offset = None;
    for p in parts {
        let (k, v) = p.split_once('=').ok_or_else(|| err("expected key=value"))?;
        let num = || v.parse::<usize>().map_err(|_| err(&format!("bad integer `{v}`")));
        match k {
            "node" => node = Some(num()?),
            "in" => orient = Some((Orientation::In, num()?)),
            "out" => orient = Some((Orientation::Out, num()?)),
            "dim" => dim = Some(num()?),
            "h" => offset = Some(v.parse::<f64>().map_err(|_| err("bad offset"))?),
            _ => return Err(err(&format!("unknown key `{k}`"))),
        }
    }
    let (node, (orientation, neighbor), dimension) = match (node, orient, dim) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(err("section needs node, in/out and dim")),
    };
    if node == 0 || neighbor == 0 || node > dimension || neighbor > dimension || node == neighbor {
        return Err(err("section indices out of range"));
    }
    Ok(CrossSection { node, orientation, neighbor, dimension, offset: offset.unwrap_or(DEFAULT_SECTION_OFFSET) })
}

/// `base^exp` as an exact rational, if it is one and stays small.
fn exact_power(base: &Rat, exp: &Rat) -> Option<Rat> {
    if exp.is_zero() {
        return Some(Rat::one());
    }
    let p = exp.numer().to_i32()?;
    let q = exp.denom().to_u32()?;
    if p.unsigned_abs() > 256 || q > 64 || base.numer().bits() * p.unsigned_abs() as u64 > 8192 {
        return None;
    }
    let root = |v: &BigInt| -> Option<BigInt> {
        let r = v.nth_root(q);
        (r.pow(q) == *v).then_some(r)
    };
    let num = root(base.numer())?;
    let den = root(base.denom())?;
    let r = Rat::new(num, den);
    Some(if p >= 0 { r.pow(p) } else { r.recip().pow(-p) })
}

/// `prod x^lhs < prod x^rhs` over the listed coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialInequality {
    pub lhs: Vec<Rat>,
    pub rhs: Vec<Rat>,
}

impl MonomialInequality {
    /// `(rhs - lhs) . log(x)`; positive exactly when the inequality holds.
    pub fn margin_log(&self, logs: &[Rat]) -> Rat {
        self.rhs.iter().zip(&self.lhs).zip(logs).map(|((r, l), x)| (r - l) * x).sum()
    }

    pub fn margin_log_f64(&self, logs: &[f64]) -> f64 {
        self.rhs.iter().zip(&self.lhs).zip(logs).map(|((r, l), x)| to_f64(&(r - l)) * x).sum()
    }

    /// Linear form `w` with the inequality reading `w . log(x) > 0`.
    pub fn log_form(&self) -> Vec<Rat> {
        self.rhs.iter().zip(&self.lhs).map(|(r, l)| r - l).collect()
    }
}

/// Region of a cross-section cut out by monomial inequalities.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainConstraint {
    pub section: CrossSection,
    /// Coordinates the exponent vectors refer to: the section's relevant ones.
    pub coords: Vec<usize>,
    pub inequalities: Vec<MonomialInequality>,
}

impl DomainConstraint {
    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    /// Whether the point with the given relevant log-coordinates satisfies
    /// every inequality strictly. `None` when one holds with equality.
    pub fn contains_log(&self, logs: &[Rat]) -> Option<bool> {
        let mut inside = true;
        for ineq in &self.inequalities {
            let m = ineq.margin_log(logs);
            if m.is_zero() {
                return None;
            }
            inside &= m.is_positive();
        }
        Some(inside)
    }

    pub fn contains_log_f64(&self, logs: &[f64]) -> bool {
        self.inequalities.iter().all(|i| i.margin_log_f64(logs) > 0.0)
    }
}

/// Checks that `path` follows positive eigendirections of `spectrum`.
pub fn check_walk(spectrum: &Spectrum, path: &[usize]) -> Result<(), MapError> {
    let n = spectrum.n();
    let ok = path.len() >= 2
        && path.iter().all(|&v| (1..=n).contains(&v))
        && path.windows(2).all(|w| w[0] != w[1] && spectrum.eigenvalue(w[0], w[1]).is_positive());
    if ok {
        Ok(())
    } else {
        Err(MapError::NotAWalk(path.to_vec()))
    }
}

/// Composite local map along `path = [v0, v1, ..., vm]`, from `H_{v0}^{out,v1}`
/// to `H_{v_{m-1}}^{out,v_m}`. A single connection gives the identity.
pub fn path_map(spectrum: &Spectrum, path: &[usize]) -> Result<MonomialMap, MapError> {
    check_walk(spectrum, path)?;
    let n = spectrum.n();
    let mut acc = MonomialMap::identity(CrossSection::outgoing(path[0], path[1], n));
    for w in path.windows(3) {
        let phi = local_map(&spectrum.equilibrium(w[1]), w[0], w[2])?;
        acc = acc.then(&phi)?;
    }
    Ok(acc)
}

/// Inequalities on `H_{v0}^{out,v1}` selecting the points whose linearized
/// flow follows `path`: at every interior node the prescribed exit must beat
/// every competing expanding direction, pulled back through the maps so far.
pub fn domain_constraints(spectrum: &Spectrum, path: &[usize]) -> Result<DomainConstraint, MapError> {
    check_walk(spectrum, path)?;
    let n = spectrum.n();
    let start = CrossSection::outgoing(path[0], path[1], n);
    let relevant = start.relevant_coords();
    let keep: Vec<usize> = relevant.iter().map(|&c| start.position_of(c).expect("active")).collect();
    let mut acc = MonomialMap::identity(start.clone());
    let mut inequalities = Vec::new();
    for w in path.windows(3) {
        let (from, node, to) = (w[0], w[1], w[2]);
        let entry = CrossSection::incoming(node, from, n);
        let at_entry = acc.then(&MonomialMap::identity(entry.clone()))?;
        let e_to = spectrum.eigenvalue(node, to);
        let row_of = |coord: usize| -> Vec<Rat> {
            let r = entry.position_of(coord).expect("active coordinate");
            keep.iter().map(|&c| at_entry.exponents[(r, c)].clone()).collect()
        };
        let to_row = row_of(to);
        for k in spectrum.outgoing(node) {
            if k == to || k == from {
                continue;
            }
            let ratio = spectrum.eigenvalue(node, k) / e_to;
            inequalities.push(MonomialInequality { lhs: row_of(k), rhs: to_row.iter().map(|v| v * &ratio).collect() });
        }
        acc = at_entry.then(&local_map(&spectrum.equilibrium(node), from, to)?)?;
    }
    Ok(DomainConstraint { section: start, coords: relevant, inequalities })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{build_simplex_field, DirectedGraph, Margins};
    use crate::rational::{int, rat};

    fn three_cycle_spectrum() -> Spectrum {
        let g = DirectedGraph::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        build_simplex_field(&g, &Margins::new(int(1), int(1), int(1))).unwrap().spectrum()
    }

    #[test]
    fn equal_magnitudes_give_unit_exponent() {
        let s = three_cycle_spectrum();
        let phi = local_map(&s.equilibrium(2), 1, 3).unwrap();
        assert_eq!(phi.exponent(1, 3), int(1));
        assert_eq!(phi.exponent(2, 3), int(2));
        assert_eq!(phi.exponent(2, 2), int(1));
    }

    #[test]
    fn rejects_non_expanding_exit() {
        let s = three_cycle_spectrum();
        assert!(matches!(local_map(&s.equilibrium(2), 3, 1), Err(MapError::NonPositiveExpanding { node: 2, direction: 1, .. })));
    }

    #[test]
    fn compose_of_one_is_itself() {
        let s = three_cycle_spectrum();
        let phi = local_map(&s.equilibrium(2), 1, 3).unwrap();
        assert_eq!(compose(std::slice::from_ref(&phi)).unwrap(), phi);
        assert_eq!(iterate(&path_map(&s, &[1, 2, 3, 1, 2]).unwrap(), 1).unwrap(), path_map(&s, &[1, 2, 3, 1, 2]).unwrap());
        assert!(matches!(compose(&[]), Err(MapError::EmptyComposition)));
    }

    #[test]
    fn mismatched_sections_are_refused() {
        let s = three_cycle_spectrum();
        let a = local_map(&s.equilibrium(2), 1, 3).unwrap();
        assert!(matches!(compose(&[a.clone(), a.clone()]), Err(MapError::SectionMismatch { .. })));
        assert!(matches!(iterate(&a, 2), Err(MapError::SectionMismatch { .. })));
        assert!(matches!(iterate(&a, 0), Err(MapError::ZeroIterations)));
    }

    #[test]
    fn identity_exponents_leave_points_unchanged() {
        let id = MonomialMap::identity(CrossSection::outgoing(1, 2, 4));
        let x = vec![rat(1, 3), rat(2, 7), rat(5, 4)];
        assert_eq!(id.evaluate(&x).unwrap(), Evaluation::Exact(x.clone()));
        assert!(matches!(id.evaluate(&[rat(1, 3), int(0), int(1)]), Err(MapError::NonPositiveInput(1))));
    }

    #[test]
    fn exact_evaluation_takes_rational_roots() {
        assert_eq!(exact_power(&rat(4, 9), &rat(1, 2)), Some(rat(2, 3)));
        assert_eq!(exact_power(&rat(8, 27), &rat(-2, 3)), Some(rat(9, 4)));
        assert_eq!(exact_power(&rat(2, 1), &rat(1, 2)), None);
    }

    #[test]
    fn text_form_round_trips() {
        let s = three_cycle_spectrum();
        let m = path_map(&s, &[1, 2, 3, 1]).unwrap();
        let back = MonomialMap::from_text(&m.to_text()).unwrap();
        assert_eq!(back, m);
        assert!(matches!(MonomialMap::from_text("monomial-map\n"), Err(MapError::Parse { .. })));
        let bad = m.to_text().replace("x3 = ", "x3 = 1/0 ");
        assert!(MonomialMap::from_text(&bad).is_err());
    }

    #[test]
    fn single_exit_nodes_impose_nothing() {
        let s = three_cycle_spectrum();
        assert!(domain_constraints(&s, &[1, 2, 3, 1]).unwrap().is_empty());
        assert!(domain_constraints(&s, &[1, 2]).unwrap().is_empty());
        assert!(matches!(domain_constraints(&s, &[1, 3]), Err(MapError::NotAWalk(_))));
    }
}
