//! Job configuration: JSON text in, a validated [`Job`] out.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::indices::{Options, Task};
use crate::polytope::LatticeSpec;
use crate::quadrature::Method;
use crate::rootsys::{build_root_system, CartanLetter, RootSystem, WeightVector};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    /// Malformed JSON or a field of the wrong shape.
    Syntax { path: String, line: usize, column: usize, message: String },
    /// Well-formed but inconsistent with the group.
    Invalid { field: String, message: String },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Syntax { path, line, column, message } => {
                write!(f, "line {line}, column {column}, at `{path}`: {message}")
            }
            ConfigError::Invalid { field, message } => write!(f, "`{field}`: {message}"),
        }
    }
}

impl std::error::Error for ConfigError {}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { field: field.into(), message: message.into() }
}

/// An exact number written either as a JSON integer or as a string
/// `"p"` or `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn parse(&self) -> Result<Rational, String> {
        match self {
            Number::Int(i) => Ok(Rational::from_integer((*i).into())),
            Number::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    let bad = || format!("malformed rational {s:?}");
    match t.split_once('/') {
        None => t.parse().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == 0.into() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(p, q))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorConfig {
    #[serde(rename = "type")]
    pub letter: String,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    #[serde(default)]
    pub factors: Vec<FactorConfig>,
    #[serde(default)]
    pub central_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeConfig {
    Named(String),
    Basis(BasisConfig),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisConfig {
    /// One entry per basis vector, in standard coordinates.
    pub basis: Vec<Vec<Number>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RepresentationConfig {
    HighestWeight(HighestWeightConfig),
    Weights(WeightsConfig),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HighestWeightConfig {
    pub highest_weight: Vec<Number>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsConfig {
    pub weights: Vec<Vec<Number>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    #[default]
    Monomial,
    Polarization,
    Both,
}

impl MethodChoice {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::Monomial => vec![Method::Monomial],
            MethodChoice::Polarization => vec![Method::Polarization],
            MethodChoice::Both => vec![Method::Monomial, Method::Polarization],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsConfig {
    #[serde(default)]
    pub method: MethodChoice,
    #[serde(default)]
    pub flag_path: bool,
}

/// The file format, field for field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub group: GroupConfig,
    #[serde(default = "default_lattice")]
    pub lattice: LatticeConfig,
    pub representation: RepresentationConfig,
    #[serde(default)]
    pub tasks: Vec<String>,
    #[serde(default)]
    pub weight_lists: Option<Vec<Vec<Vec<Number>>>>,
    #[serde(default)]
    pub options: OptionsConfig,
}

fn default_lattice() -> LatticeConfig {
    LatticeConfig::Named("simply_connected".into())
}

/// A job ready to run.
#[derive(Debug, Clone)]
pub struct Job {
    pub root_system: RootSystem,
    pub lattice: LatticeSpec,
    pub weights: Vec<WeightVector>,
    pub tasks: Vec<Task>,
    pub options: Options,
}

pub fn parse_config(text: &str) -> Result<JobConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ConfigError::Syntax { path, line: inner.line(), column: inner.column(), message: inner.to_string() }
    })
}

fn weight(coords: &[Number], k: usize, field: &str) -> Result<WeightVector, ConfigError> {
    if coords.len() != k {
        return Err(invalid(field, format!("expected {k} coordinates, got {}", coords.len())));
    }
    let v = coords
        .iter()
        .map(|n| n.parse().map_err(|m| invalid(field, m)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightVector::new(v))
}

fn weights(list: &[Vec<Number>], k: usize, field: &str) -> Result<Vec<WeightVector>, ConfigError> {
    if list.is_empty() {
        return Err(invalid(field, "at least one weight is required"));
    }
    list.iter()
        .enumerate()
        .map(|(i, w)| weight(w, k, &format!("{field}[{i}]")))
        .collect()
}

impl JobConfig {
    pub fn validate(&self) -> Result<Job, ConfigError> {
        let mut factors = Vec::new();
        for (i, f) in self.group.factors.iter().enumerate() {
            let letter = CartanLetter::parse(&f.letter)
                .ok_or_else(|| invalid(format!("group.factors[{i}].type"), format!("unknown type {:?}", f.letter)))?;
            factors.push((letter, f.rank));
        }
        let rs = build_root_system(&factors, self.group.central_rank)
            .map_err(|e| invalid("group.factors", e.to_string()))?;
        let k = rs.total_rank();
        if k == 0 {
            return Err(invalid("group", "the group has rank 0"));
        }

        let lattice = match &self.lattice {
            LatticeConfig::Named(name) => match name.as_str() {
                "simply_connected" => LatticeSpec::simply_connected(k),
                "adjoint" => LatticeSpec::adjoint(&rs),
                other => return Err(invalid("lattice", format!("unknown lattice {other:?}"))),
            },
            LatticeConfig::Basis(b) => {
                if b.basis.len() != k {
                    return Err(invalid("lattice.basis", format!("expected {k} basis vectors, got {}", b.basis.len())));
                }
                let rows = weights(&b.basis, k, "lattice.basis")?;
                // stored by columns
                let cols = (0..k).map(|i| rows.iter().map(|r| r.coords()[i].clone()).collect()).collect();
                LatticeSpec::new(cols).map_err(|e| invalid("lattice.basis", e.to_string()))?
            }
        };

        let ws = match &self.representation {
            RepresentationConfig::HighestWeight(h) => {
                let w = weight(&h.highest_weight, k, "representation.highest_weight")?;
                rs.weyl_orbit(&w)
            }
            RepresentationConfig::Weights(list) => weights(&list.weights, k, "representation.weights")?,
        };

        let max_chern = rs.dimension();
        let mut tasks = Vec::with_capacity(self.tasks.len());
        for (idx, t) in self.tasks.iter().enumerate() {
            let field = format!("tasks[{idx}]");
            let task = match t.as_str() {
                "degree" => Task::Degree,
                "euler" => Task::Euler,
                "orbits" => Task::Orbits,
                "regularity" => Task::Regularity,
                "mixed" => {
                    let lists = self
                        .weight_lists
                        .as_ref()
                        .ok_or_else(|| invalid(&field, "`mixed` needs `weight_lists`"))?;
                    let n = rs.dimension();
                    if lists.len() != n {
                        return Err(invalid("weight_lists", format!("expected {n} lists, got {}", lists.len())));
                    }
                    let parsed = lists
                        .iter()
                        .enumerate()
                        .map(|(j, l)| weights(l, k, &format!("weight_lists[{j}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    Task::Mixed(parsed)
                }
                other => match other.strip_prefix("chern:") {
                    Some(i) => {
                        let i: usize = i
                            .trim()
                            .parse()
                            .map_err(|_| invalid(&field, format!("malformed Chern index in {other:?}")))?;
                        if i > max_chern {
                            return Err(invalid(&field, format!("Chern index {i} out of range 0..={max_chern}")));
                        }
                        Task::Chern(i)
                    }
                    None => return Err(invalid(&field, format!("unknown task {other:?}"))),
                },
            };
            tasks.push(task);
        }

        Ok(Job {
            root_system: rs,
            lattice,
            weights: ws,
            tasks,
            options: Options { methods: self.options.method.methods(), flag_path: self.options.flag_path },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_a1() {
        let cfg = parse_config(
            r#"{"group": {"factors": [{"type": "A", "rank": 1}]},
                "representation": {"highest_weight": [1]}, "tasks": ["degree"]}"#,
        )
        .unwrap();
        let job = cfg.validate().unwrap();
        assert_eq!(job.tasks, vec![Task::Degree]);
        assert_eq!(job.weights.len(), 2);
        assert_eq!(job.options, Options::default());
    }

    #[test]
    fn adjoint_a2_covolume() {
        let cfg = parse_config(
            r#"{"group": {"factors": [{"type": "A", "rank": 2}], "central_rank": 0},
                "lattice": "adjoint", "representation": {"weights": [[1, 0]]}}"#,
        )
        .unwrap();
        let job = cfg.validate().unwrap();
        assert_eq!(job.lattice.covolume(), &Rational::from_integer(3.into()));
    }

    #[test]
    fn custom_basis_with_rationals() {
        let cfg = parse_config(
            r#"{"group": {"central_rank": 2}, "lattice": {"basis": [["1/2", "0"], [0, "2"]]},
                "representation": {"weights": [[0, 0], ["1/2", 0], [0, 2]]}}"#,
        )
        .unwrap();
        let job = cfg.validate().unwrap();
        assert_eq!(job.lattice.covolume(), &Rational::from_integer(1.into()));
    }

    #[test]
    fn chern_out_of_range() {
        let cfg = parse_config(
            r#"{"group": {"factors": [{"type": "A", "rank": 1}]},
                "representation": {"highest_weight": [1]}, "tasks": ["chern:99"]}"#,
        )
        .unwrap();
        let err = cfg.validate().unwrap_err();
        assert!(matches!(&err, ConfigError::Invalid { field, .. } if field == "tasks[0]"), "{err}");
        assert!(err.to_string().contains("out of range 0..=3"));
    }

    #[test]
    fn unknown_field_reports_location() {
        let err = parse_config("{\"group\": {\"factors\": [],\n \"centre\": 1}}").unwrap_err();
        match err {
            ConfigError::Syntax { line, path, .. } => {
                assert_eq!(line, 2);
                assert_eq!(path, "group.centre");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn malformed_rational() {
        let cfg = parse_config(
            r#"{"group": {"central_rank": 1}, "representation": {"weights": [["1/0"], ["x"]]}}"#,
        )
        .unwrap();
        let err = cfg.validate().unwrap_err();
        assert!(err.to_string().contains("zero denominator"), "{err}");
    }

    #[test]
    fn mixed_needs_lists() {
        let base = r#"{"group": {"central_rank": 2}, "representation": {"weights": [[0, 0], [1, 0], [0, 1]]},
                       "tasks": ["mixed"]"#;
        let err = parse_config(&format!("{base}}}")).unwrap().validate().unwrap_err();
        assert!(err.to_string().contains("weight_lists"));
        let ok = parse_config(&format!("{base}, \"weight_lists\": [[[0,0],[1,0]], [[0,0],[0,1]]]}}"))
            .unwrap()
            .validate()
            .unwrap();
        assert!(matches!(&ok.tasks[0], Task::Mixed(l) if l.len() == 2));
    }
}
