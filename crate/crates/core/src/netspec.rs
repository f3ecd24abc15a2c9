//! TOML network description files.
//!
//! ```toml
//! nodes = 3
//! edges = [[1, 2], [2, 3], [3, 1]]
//!
//! [margins]
//! expanding = "1"
//! contracting = "1"
//! transverse = "1/2"
//!
//! [[override]]
//! i = 1
//! j = 3
//! value = "-3/2"
//! ```
//!
//! Coefficients are exact rationals written as `"p/q"` strings; decimals are
//! rejected. A file may name a `preset` instead of `nodes`/`edges`/`margins`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bowtie::{BowtieTable, BOWTIE_EDGES};
use crate::network::{build_simplex_field, DirectedGraph, Margins, NetworkError, SimplexField};
use crate::rational::{format_rat, int, parse_rat, rat, Rat};
use crate::simulation::EnsembleConfig;
use crate::switching::{GridSpec, HOUSE_EDGES};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// An exact rational that (de)serializes as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatValue(pub Rat);

impl Serialize for RatValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map(RatValue).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    KirkSilber,
    House,
    Bowtie,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::KirkSilber, Preset::House, Preset::Bowtie];

    pub fn name(self) -> &'static str {
        match self {
            Preset::KirkSilber => "kirk-silber",
            Preset::House => "house",
            Preset::Bowtie => "bowtie",
        }
    }

    pub fn nodes(self) -> usize {
        match self {
            Preset::KirkSilber | Preset::House | Preset::Bowtie => 5,
        }
    }

    pub fn edges(self) -> Vec<(usize, usize)> {
        match self {
            Preset::KirkSilber => KIRK_SILBER_EDGES.to_vec(),
            Preset::House => HOUSE_EDGES.to_vec(),
            Preset::Bowtie => BOWTIE_EDGES.to_vec(),
        }
    }

    pub fn field(self) -> Result<SimplexField, SpecError> {
        let g = DirectedGraph::new(self.nodes(), self.edges())?;
        match self {
            Preset::KirkSilber => {
                // distinct magnitudes so the arrival and exit exponents are generic
                let f = build_simplex_field(&g, &Margins::default())?
                    .with_override(1, 3, int(-2))?
                    .with_override(2, 4, rat(3, 2))?;
                Ok(f)
            }
            Preset::House => Ok(build_simplex_field(&g, &Margins::default())?),
            Preset::Bowtie => BowtieTable::preset().to_field().map_err(|e| SpecError::Invalid(e.to_string())),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| SpecError::Invalid(format!("unknown preset {s:?}; expected kirk-silber, house or bowtie")))
    }
}

/// Kirk–Silber network, embedded in R^5 with `xi_5` unconnected.
pub const KIRK_SILBER_EDGES: [(usize, usize); 5] = [(1, 2), (2, 3), (2, 4), (3, 1), (4, 1)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarginSpec {
    pub expanding: RatValue,
    pub contracting: RatValue,
    pub transverse: RatValue,
}

/// `a_ij = value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Override {
    pub i: usize,
    pub j: usize,
    pub value: RatValue,
}

/// Wiring of a common-connection analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSpec {
    /// `xi_1 -> ... -> xi_2`; two nodes for a single shared connection.
    pub chain: Vec<usize>,
    /// `(alpha, a)`: the two nodes feeding `xi_1`.
    pub incoming: [usize; 2],
    /// `(beta, b)`: the two nodes fed by `xi_2`.
    pub outgoing: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_per_axis: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_depth: Option<f64>,
}

impl AnalysisSpec {
    pub fn grid(&self) -> GridSpec {
        let d = GridSpec::default();
        GridSpec {
            per_axis: self.grid_per_axis.unwrap_or(d.per_axis),
            eps: self.grid_eps.unwrap_or(d.eps),
            depth: self.grid_depth.unwrap_or(d.depth),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_offset: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    /// Initial condition for a single trajectory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
}

impl SimulationSpec {
    pub fn ensemble(&self) -> EnsembleConfig {
        let d = EnsembleConfig::default();
        let mut integrator = d.integrator;
        if let Some(t) = self.t_max {
            integrator.t_max = t;
        }
        EnsembleConfig {
            runs: self.runs.unwrap_or(d.runs),
            seed: self.seed.unwrap_or(d.seed),
            log_range: (self.log_min.unwrap_or(d.log_range.0), self.log_max.unwrap_or(d.log_range.1)),
            section_offset: self.section_offset.unwrap_or(d.section_offset),
            eps: self.eps.unwrap_or(d.eps),
            letters: self.letters.unwrap_or(d.letters),
            integrator,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margins: Option<MarginSpec>,
    #[serde(default, rename = "override", skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<Override>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationSpec>,
}

impl NetworkSpec {
    pub fn preset(p: Preset) -> Self {
        Self { preset: Some(p), ..Default::default() }
    }

    pub fn parse(text: &str) -> Result<Self, SpecError> {
        toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(1, |s| text[..s.start.min(text.len())].matches('\n').count() + 1);
            SpecError::Parse { line, message: e.message().to_string() }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("network specs always serialize")
    }

    /// The graph named by the file, before coefficient overrides.
    pub fn graph(&self) -> Result<DirectedGraph, SpecError> {
        let (n, edges) = match self.preset {
            Some(p) => {
                if self.nodes.is_some() || self.edges.is_some() || self.margins.is_some() {
                    return Err(SpecError::Invalid("a preset fixes nodes, edges and margins".into()));
                }
                (p.nodes(), p.edges())
            }
            None => match (self.nodes, &self.edges) {
                (Some(n), Some(e)) => (n, e.clone()),
                _ => return Err(SpecError::Invalid("either a preset or both nodes and edges are required".into())),
            },
        };
        Ok(DirectedGraph::new(n, edges)?)
    }

    /// The coefficient matrix after margins and overrides.
    pub fn field(&self) -> Result<SimplexField, SpecError> {
        let g = self.graph()?;
        let mut field = match self.preset {
            Some(p) => p.field()?,
            None => {
                let m = self.margins.as_ref().map_or_else(Margins::default, |m| {
                    Margins::new(m.expanding.0.clone(), m.contracting.0.clone(), m.transverse.0.clone())
                });
                build_simplex_field(&g, &m)?
            }
        };
        for o in &self.overrides {
            field = field.with_override(o.i, o.j, o.value.0.clone())?;
        }
        Ok(field)
    }

    /// The analysis block, or the preset's wiring for `kirk-silber`.
    pub fn analysis(&self) -> Option<AnalysisSpec> {
        self.analysis.clone().or_else(|| match self.preset {
            Some(Preset::KirkSilber) => Some(AnalysisSpec {
                chain: vec![1, 2],
                incoming: [3, 4],
                outgoing: [3, 4],
                grid_per_axis: None,
                grid_eps: None,
                grid_depth: None,
            }),
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{validate_graph, Realizability};

    #[test]
    fn presets_round_trip_and_are_realizable() {
        for p in Preset::ALL {
            let spec = NetworkSpec::preset(p);
            assert_eq!(NetworkSpec::parse(&spec.to_toml()).unwrap(), spec);
            assert!(validate_graph(&spec.graph().unwrap()).is_realizable());
            assert_eq!(spec.field().unwrap().graph(), spec.graph().unwrap());
        }
    }

    #[test]
    fn full_file_round_trips() {
        let text = r#"
nodes = 3
edges = [[1, 2], [2, 3], [3, 1]]

[margins]
expanding = "1"
contracting = "2"
transverse = "1/2"

[[override]]
i = 1
j = 3
value = "-3/2"

[simulation]
runs = 4
x0 = [1.0, 0.1, 0.001]
"#;
        let spec = NetworkSpec::parse(text).unwrap();
        assert_eq!(spec.field().unwrap().coefficient(1, 3), &rat(-3, 2));
        assert_eq!(NetworkSpec::parse(&spec.to_toml()).unwrap(), spec);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "nodes = 3\nedges = [[1, 2], [2, 3], [3, 1]]\n\n[[override]]\ni = 1\nj = 3\nvalue = \"3/0\"\n";
        assert!(matches!(NetworkSpec::parse(text), Err(SpecError::Parse { line: 7, .. })));
        let text = "nodes = 3\nedges = [[1, 2]]\ncolour = \"red\"\n";
        assert!(matches!(NetworkSpec::parse(text), Err(SpecError::Parse { line: 3, .. })));
        let text = "nodes = 3\nedges = [[1, 2]]\n[[override]]\ni = 1\nj = 2\nvalue = \"0.5\"\n";
        assert!(matches!(NetworkSpec::parse(text), Err(SpecError::Parse { line: 6, .. })));
    }

    #[test]
    fn two_cycle_is_reported_not_built() {
        let spec = NetworkSpec::parse("nodes = 3\nedges = [[1, 2], [2, 1], [2, 3]]\n").unwrap();
        assert!(matches!(validate_graph(&spec.graph().unwrap()), Realizability::HasTwoCycle(_)));
        assert!(spec.field().is_err());
    }

    #[test]
    fn preset_names_parse() {
        assert_eq!("bowtie".parse::<Preset>().unwrap(), Preset::Bowtie);
        assert!("tent".parse::<Preset>().is_err());
        let spec = NetworkSpec::parse("preset = \"house\"\nnodes = 5\n").unwrap();
        assert!(spec.graph().is_err());
    }
}
