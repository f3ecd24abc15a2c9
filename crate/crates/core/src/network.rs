//! Directed graphs, their simplex-method realization and the linearization at
//! each equilibrium.
//!
//! Nodes are labelled `1..=n`; node `j` sits on the `x_j` axis. The realizing
//! vector field is
//!
//! ```text
//! dx_j/dt = x_j (1 - |x|^2 + sum_i a_ij x_i^2)
//! ```
//!
//! with `a_jj = 0`, so every equilibrium is the unit point `e_j`, the radial
//! eigenvalue is `-2` and the eigenvalue at `e_i` along `x_k` is `a_ik`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rat, int, to_f64, Rat, RatMatrix};

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("a network needs at least one node")]
    Empty,
    #[error("node {node} is outside 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("graph is not realizable by the simplex method: {0}")]
    NotRealizable(Realizability),
    #[error("margin `{0}` must be strictly positive")]
    NonPositiveMargin(&'static str),
    #[error("coefficient matrix must have a zero diagonal (a_{0}{0} = {1})")]
    NonZeroDiagonal(usize, String),
    #[error("coefficient matrix must be square of size {expected}, got {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("eigenvalue at node {node} toward x_{direction} contradicts its {role} role")]
    SignContradiction { node: usize, direction: usize, role: &'static str },
    #[error("node {node} does not occur exactly once on the cycle {cycle:?}")]
    NotOnCycle { node: usize, cycle: Vec<usize> },
    #[error("cycle {0:?} is not a closed walk of the graph")]
    NotACycle(Vec<usize>),
}

/// Abstract network blueprint: `n` nodes and a set of directed connections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedGraph {
    n: usize,
    edges: BTreeSet<Edge>,
}

/// Outcome of [`validate_graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Realizability {
    Realizable,
    /// Self-loops `(i, i)`. Reported ahead of two-cycles when both occur.
    HasOneCycle(Vec<Edge>),
    /// Both edges of every opposing pair, `(i, j)` before `(j, i)` with `i < j`.
    HasTwoCycle(Vec<Edge>),
}

impl Realizability {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Realizability::Realizable)
    }
}

impl fmt::Display for Realizability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |edges: &[Edge]| {
            edges.iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(" ")
        };
        match self {
            Realizability::Realizable => write!(f, "realizable"),
            Realizability::HasOneCycle(e) => write!(f, "one-cycles {}", list(e)),
            Realizability::HasTwoCycle(e) => write!(f, "two-cycles {}", list(e)),
        }
    }
}

impl DirectedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, NetworkError> {
        if n == 0 {
            return Err(NetworkError::Empty);
        }
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        for &(i, j) in &edges {
            for node in [i, j] {
                if node == 0 || node > n {
                    return Err(NetworkError::NodeOutOfRange { node, n });
                }
            }
        }
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    pub fn successors(&self, node: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.0 == node).map(|e| e.1).collect()
    }

    pub fn predecessors(&self, node: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.1 == node).map(|e| e.0).collect()
    }

    /// True when every consecutive pair of `walk` is an edge.
    pub fn is_walk(&self, walk: &[usize]) -> bool {
        walk.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

/// Checks the one- and two-cycle freeness the simplex method needs.
pub fn validate_graph(g: &DirectedGraph) -> Realizability {
    let loops: Vec<Edge> = g.edges().filter(|(i, j)| i == j).collect();
    if !loops.is_empty() {
        return Realizability::HasOneCycle(loops);
    }
    let mut pairs = Vec::new();
    for (i, j) in g.edges() {
        if i < j && g.has_edge(j, i) {
            pairs.push((i, j));
            pairs.push((j, i));
        }
    }
    if pairs.is_empty() {
        Realizability::Realizable
    } else {
        Realizability::HasTwoCycle(pairs)
    }
}

/// Magnitudes placed by [`build_simplex_field`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Margins {
    pub expanding: Rat,
    pub contracting: Rat,
    pub transverse: Rat,
}

impl Margins {
    pub fn new(expanding: Rat, contracting: Rat, transverse: Rat) -> Self {
        Self { expanding, contracting, transverse }
    }
}

impl Default for Margins {
    fn default() -> Self {
        Self { expanding: int(1), contracting: int(1), transverse: crate::rational::rat(1, 2) }
    }
}

/// Coefficient matrix `a_ij` of the simplex vector field (zero diagonal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexField {
    coefficients: RatMatrix,
}

/// Places `+e` on every edge `(i, j)` at `a_ij`, `-c` at `a_ji`, and `-t`
/// everywhere else off the diagonal.
pub fn build_simplex_field(g: &DirectedGraph, margins: &Margins) -> Result<SimplexField, NetworkError> {
    let verdict = validate_graph(g);
    if !verdict.is_realizable() {
        return Err(NetworkError::NotRealizable(verdict));
    }
    for (name, m) in [
        ("expanding", &margins.expanding),
        ("contracting", &margins.contracting),
        ("transverse", &margins.transverse),
    ] {
        if !m.is_positive() {
            return Err(NetworkError::NonPositiveMargin(name));
        }
    }
    let n = g.n();
    let mut a = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                a[(i, j)] = -margins.transverse.clone();
            }
        }
    }
    for (i, j) in g.edges() {
        a[(i - 1, j - 1)] = margins.expanding.clone();
        a[(j - 1, i - 1)] = -margins.contracting.clone();
    }
    Ok(SimplexField { coefficients: a })
}

impl SimplexField {
    pub fn from_matrix(a: RatMatrix) -> Result<Self, NetworkError> {
        if !a.is_square() || a.rows() == 0 {
            return Err(NetworkError::Shape { expected: a.rows().max(1), rows: a.rows(), cols: a.cols() });
        }
        for j in 0..a.rows() {
            if !a[(j, j)].is_zero() {
                return Err(NetworkError::NonZeroDiagonal(j + 1, format_rat(&a[(j, j)])));
            }
        }
        Ok(Self { coefficients: a })
    }

    pub fn n(&self) -> usize {
        self.coefficients.rows()
    }

    pub fn coefficients(&self) -> &RatMatrix {
        &self.coefficients
    }

    /// `a_ij`, the eigenvalue at `xi_i` along `x_j`.
    pub fn coefficient(&self, i: usize, j: usize) -> &Rat {
        &self.coefficients[(i - 1, j - 1)]
    }

    /// Replaces one off-diagonal coefficient.
    pub fn with_override(mut self, i: usize, j: usize, value: Rat) -> Result<Self, NetworkError> {
        let n = self.n();
        for node in [i, j] {
            if node == 0 || node > n {
                return Err(NetworkError::NodeOutOfRange { node, n });
            }
        }
        if i == j {
            return Err(NetworkError::NonZeroDiagonal(i, format_rat(&value)));
        }
        self.coefficients[(i - 1, j - 1)] = value;
        Ok(self)
    }

    /// Right-hand side of the ODE at `x`.
    pub fn rhs(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n()];
        self.rhs_into(x, &mut out);
        out
    }

    pub fn rhs_into(&self, x: &[f64], out: &mut [f64]) {
        let n = self.n();
        assert_eq!(x.len(), n);
        let sq: Vec<f64> = x.iter().map(|v| v * v).collect();
        let norm2: f64 = sq.iter().sum();
        for j in 0..n {
            let coupling: f64 = (0..n).map(|i| to_f64(&self.coefficients[(i, j)]) * sq[i]).sum();
            out[j] = x[j] * (1.0 - norm2 + coupling);
        }
    }

    /// Growth rates `1 - |x|^2 + sum_i a_ij x_i^2`, i.e. `d ln x_j / dt`.
    pub fn growth_rates(&self, x: &[f64], out: &mut [f64]) {
        let n = self.n();
        let sq: Vec<f64> = x.iter().map(|v| v * v).collect();
        let norm2: f64 = sq.iter().sum();
        for j in 0..n {
            let coupling: f64 = (0..n).map(|i| to_f64(&self.coefficients[(i, j)]) * sq[i]).sum();
            out[j] = 1.0 - norm2 + coupling;
        }
    }

    pub fn spectrum(&self) -> Spectrum {
        let n = self.n();
        let mut lambda = RatMatrix::zeros(n, n);
        for i in 0..n {
            for k in 0..n {
                lambda[(i, k)] = if i == k { int(-2) } else { self.coefficients[(i, k)].clone() };
            }
        }
        Spectrum { lambda }
    }

    pub fn equilibrium_data(&self, j: usize) -> EquilibriumData {
        self.spectrum().equilibrium(j)
    }

    /// The graph whose edges are the positive off-diagonal coefficients.
    pub fn graph(&self) -> DirectedGraph {
        self.spectrum().graph()
    }

    /// Coefficient matrix as CSV of exact rationals, one row per `i`.
    pub fn to_csv(&self) -> String {
        let n = self.n();
        let mut s = String::from("i");
        for j in 1..=n {
            s.push_str(&format!(",a_i{j}"));
        }
        s.push('\n');
        for i in 0..n {
            s.push_str(&(i + 1).to_string());
            for v in self.coefficients.row(i) {
                s.push(',');
                s.push_str(&format_rat(v));
            }
            s.push('\n');
        }
        s
    }
}

/// Eigenvalue table of a network: entry `(i, k)` is the eigenvalue at
/// `xi_i` along `x_k`, the diagonal holds radial eigenvalues.
///
/// Usually derived from a [`SimplexField`]; it can also be supplied directly
/// for networks the simplex method cannot realize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    lambda: RatMatrix,
}

impl Spectrum {
    pub fn from_table(lambda: RatMatrix) -> Result<Self, NetworkError> {
        if !lambda.is_square() || lambda.rows() == 0 {
            return Err(NetworkError::Shape { expected: lambda.rows().max(1), rows: lambda.rows(), cols: lambda.cols() });
        }
        Ok(Self { lambda })
    }

    pub fn n(&self) -> usize {
        self.lambda.rows()
    }

    pub fn eigenvalue(&self, node: usize, direction: usize) -> &Rat {
        &self.lambda[(node - 1, direction - 1)]
    }

    /// Directions with positive eigenvalue at `node`.
    pub fn outgoing(&self, node: usize) -> Vec<usize> {
        (1..=self.n()).filter(|&k| k != node && self.eigenvalue(node, k).is_positive()).collect()
    }

    pub fn graph(&self) -> DirectedGraph {
        let n = self.n();
        let edges = (1..=n).flat_map(|i| self.outgoing(i).into_iter().map(move |k| (i, k)));
        DirectedGraph::new(n, edges).expect("labels in range")
    }

    pub fn equilibrium(&self, j: usize) -> EquilibriumData {
        let n = self.n();
        assert!((1..=n).contains(&j), "node {j} outside 1..={n}");
        let mut position = vec![0.0; n];
        position[j - 1] = 1.0;
        EquilibriumData {
            index: j,
            position,
            radial: self.eigenvalue(j, j).clone(),
            transverse_spectrum: (1..=n).filter(|&k| k != j).map(|k| (k, self.eigenvalue(j, k).clone())).collect(),
        }
    }
}

/// Location and linearization of one equilibrium.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumData {
    pub index: usize,
    pub position: Vec<f64>,
    pub radial: Rat,
    /// `(k, eigenvalue along x_k)` for every `k != index`, ascending in `k`.
    pub transverse_spectrum: Vec<(usize, Rat)>,
}

impl EquilibriumData {
    pub fn dimension(&self) -> usize {
        self.transverse_spectrum.len() + 1
    }

    pub fn eigenvalue(&self, direction: usize) -> &Rat {
        if direction == self.index {
            return &self.radial;
        }
        self.transverse_spectrum
            .iter()
            .find(|(k, _)| *k == direction)
            .map(|(_, v)| v)
            .unwrap_or_else(|| panic!("direction {direction} out of range"))
    }

    /// All eigenvalues ordered by coordinate.
    pub fn eigenvalues(&self) -> Vec<Rat> {
        (1..=self.dimension()).map(|k| self.eigenvalue(k).clone()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenvalueRole {
    Radial,
    Contracting(usize),
    Expanding(usize),
    Transverse(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleAssignment {
    pub direction: usize,
    pub role: EigenvalueRole,
    pub eigenvalue: Rat,
}

/// Roles of the eigenvalues at `node` relative to `cycle` (listed without
/// repeating the first node, so `[1, 2, 3]` is `1 -> 2 -> 3 -> 1`).
pub fn classify_roles(
    spectrum: &Spectrum,
    cycle: &[usize],
    node: usize,
) -> Result<Vec<RoleAssignment>, NetworkError> {
    let n = spectrum.n();
    if cycle.len() < 2 || cycle.iter().any(|&c| c == 0 || c > n) {
        return Err(NetworkError::NotACycle(cycle.to_vec()));
    }
    let positions: Vec<usize> = cycle.iter().enumerate().filter(|(_, &c)| c == node).map(|(p, _)| p).collect();
    if positions.len() != 1 {
        return Err(NetworkError::NotOnCycle { node, cycle: cycle.to_vec() });
    }
    let p = positions[0];
    let pred = cycle[(p + cycle.len() - 1) % cycle.len()];
    let succ = cycle[(p + 1) % cycle.len()];
    let eq = spectrum.equilibrium(node);
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let value = eq.eigenvalue(k).clone();
        let role = if k == node {
            EigenvalueRole::Radial
        } else if k == pred {
            EigenvalueRole::Contracting(k)
        } else if k == succ {
            EigenvalueRole::Expanding(k)
        } else {
            EigenvalueRole::Transverse(k)
        };
        let contradiction = match role {
            EigenvalueRole::Radial => (!value.is_negative()).then_some("radial"),
            EigenvalueRole::Contracting(_) => (!value.is_negative()).then_some("contracting"),
            EigenvalueRole::Expanding(_) => (!value.is_positive()).then_some("expanding"),
            EigenvalueRole::Transverse(_) => None,
        };
        if let Some(role) = contradiction {
            return Err(NetworkError::SignContradiction { node, direction: k, role });
        }
        out.push(RoleAssignment { direction: k, role, eigenvalue: value });
    }
    Ok(out)
}
