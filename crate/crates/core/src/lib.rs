//! Heteroclinic networks built from directed graphs.
//!
//! A one- and two-cycle free digraph on `n` nodes is realized as a cubic
//! vector field on `R^n` with one equilibrium per axis ([`network`]). Passages
//! near equilibria are monomial maps with exact rational exponents
//! ([`maps`]), and whether a path through the network is shadowed reduces to
//! a cone feasibility question ([`cone`]). On top of that sit the switching
//! analyses for common connections and the House network ([`switching`]),
//! turn counting for the Bowtie network ([`bowtie`]) and an ODE integrator
//! that records itineraries ([`simulation`]).
//!
//! ```
//! use heteroclinic::network::{build_simplex_field, validate_graph, DirectedGraph, Margins};
//!
//! let g = DirectedGraph::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
//! assert!(validate_graph(&g).is_realizable());
//! let field = build_simplex_field(&g, &Margins::default()).unwrap();
//! let s = field.spectrum();
//! assert!(heteroclinic::rational::is_positive(s.eigenvalue(1, 2)));
//! ```

pub mod bowtie;
pub mod cone;
pub mod maps;
pub mod netspec;
pub mod network;
pub mod rational;
pub mod report;
pub mod simulation;
pub mod switching;

pub use network::{DirectedGraph, SimplexField, Spectrum};
pub use rational::{Rat, RatMatrix};
