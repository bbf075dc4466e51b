//! Problem files: a strict JSON format with explicit variable names.

use std::collections::BTreeSet;
use std::fmt;

use coxgit::exact_algebra::{int, Polynomial};
use coxgit::grading_lattice::{Character, WeightedAction};
use coxgit::reductive_semiinv::QuiverPreset;
use coxgit::saturation::{Caps, TruncatedIdeal};
use serde::{Deserialize, Serialize};

use crate::parser::{is_identifier, parse_poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Torus,
    Quiver,
    Adhm,
    Hilb,
    HypertoricPreset,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertions {
    #[serde(rename = "S2", default)]
    pub s2: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsSpec {
    pub max_degree: Option<u32>,
    pub max_sat_power: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: usize,
    /// `[tail, head]`, vertices numbered from 0.
    pub arrows: Vec<[usize; 2]>,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub kind: Kind,
    #[serde(default)]
    pub ambient_dim: Option<usize>,
    #[serde(default)]
    pub variable_names: Vec<String>,
    /// Rank × ambient_dim.
    #[serde(default)]
    pub weights: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default)]
    pub theta: Option<Vec<i64>>,
    #[serde(default)]
    pub caps: CapsSpec,
    #[serde(default)]
    pub assertions: Assertions,
    #[serde(default)]
    pub quiver: Option<QuiverSpec>,
    #[serde(default)]
    pub n: Option<usize>,
    /// Hypertoric charge matrix.
    #[serde(rename = "A", default)]
    pub a: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError(pub String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SpecError {}

fn fail<T>(msg: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError(msg.into()))
}

pub const PRESETS: &[(&str, &str)] = &[
    ("example-1-2", include_str!("../presets/example-1-2.json")),
    ("hypertoric-A11", include_str!("../presets/hypertoric-A11.json")),
    ("ambient-a4", include_str!("../presets/ambient-a4.json")),
    ("adhm-n", include_str!("../presets/adhm-n.json")),
    ("gr24-quiver", include_str!("../presets/gr24-quiver.json")),
    ("det-quiver", include_str!("../presets/det-quiver.json")),
    ("hilb-2", include_str!("../presets/hilb-2.json")),
];

pub fn preset(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

impl ProblemSpec {
    pub fn from_json(src: &str) -> Result<Self, SpecError> {
        serde_json::from_str(src).map_err(|e| SpecError(format!("problem file: {e}")))
    }

    /// Reads a file, or a shipped preset when no such file exists.
    pub fn load(arg: &str) -> Result<Self, SpecError> {
        match std::fs::read_to_string(arg) {
            Ok(src) => Self::from_json(&src),
            Err(e) => match preset(arg.strip_prefix("preset:").unwrap_or(arg)) {
                Some(src) => Self::from_json(src),
                None => fail(format!("cannot read `{arg}` ({e}) and no preset has that name")),
            },
        }
    }

    fn forbid(&self, fields: &[&str]) -> Result<(), SpecError> {
        for &f in fields {
            let present = match f {
                "weights" => self.weights.is_some(),
                "ideal" => !self.ideal.is_empty(),
                "quiver" => self.quiver.is_some(),
                "n" => self.n.is_some(),
                "A" => self.a.is_some(),
                "variable_names" => !self.variable_names.is_empty(),
                "ambient_dim" => self.ambient_dim.is_some(),
                _ => unreachable!("unknown field {f}"),
            };
            if present {
                return fail(format!("field `{f}` is not used by kind {:?}", self.kind));
            }
        }
        Ok(())
    }

    pub fn resolve(&self) -> Result<Problem, SpecError> {
        match self.kind {
            Kind::Torus => {
                self.forbid(&["quiver", "n", "A"])?;
                let Some(weights) = &self.weights else {
                    return fail("kind torus needs `weights`");
                };
                self.torus(self.variable_names.clone(), weights.clone(), &self.ideal)
            }
            Kind::HypertoricPreset => {
                self.forbid(&["quiver", "n", "weights", "ideal"])?;
                let Some(a) = &self.a else {
                    return fail("kind hypertoric-preset needs the charge matrix `A`");
                };
                let k = a.first().map_or(0, Vec::len);
                if a.iter().any(|r| r.len() != k) || k == 0 {
                    return fail("`A` must be a nonempty rectangular matrix");
                }
                let names = if self.variable_names.is_empty() {
                    (1..=k)
                        .map(|i| format!("z{i}"))
                        .chain((1..=k).map(|i| format!("w{i}")))
                        .collect()
                } else {
                    self.variable_names.clone()
                };
                let (weights, ideal) = hypertoric(a, &names)?;
                self.torus(names, weights, &ideal)
            }
            Kind::Quiver => {
                self.forbid(&["weights", "ideal", "n", "A", "ambient_dim"])?;
                let Some(q) = &self.quiver else {
                    return fail("kind quiver needs `quiver`");
                };
                let preset = QuiverPreset::new(
                    q.vertices,
                    q.arrows.iter().map(|&[t, h]| (t, h)).collect(),
                    q.dims.clone(),
                )
                .map_err(|e| SpecError(e.to_string()))?;
                let names = preset.variable_names();
                if !self.variable_names.is_empty() && self.variable_names != names {
                    return fail("quiver variables are named m<arrow>_<row>_<column>; omit `variable_names`");
                }
                Ok(Problem::Quiver(QuiverProblem {
                    names,
                    preset,
                    caps: self.caps,
                }))
            }
            Kind::Adhm => {
                self.forbid(&["weights", "ideal", "quiver", "A", "variable_names", "ambient_dim"])?;
                let theta = match self.theta.as_deref() {
                    None => None,
                    Some([t]) if *t > 0 => Some(*t as u32),
                    Some(_) => return fail("adhm `theta` must be a single positive integer"),
                };
                Ok(Problem::Adhm {
                    n: self.n,
                    theta,
                    caps: self.caps,
                })
            }
            Kind::Hilb => {
                self.forbid(&["weights", "ideal", "quiver", "A", "variable_names", "ambient_dim"])?;
                Ok(Problem::Hilb {
                    n: self.n,
                    caps: self.caps,
                })
            }
        }
    }

    fn torus(
        &self,
        names: Vec<String>,
        weights: Vec<Vec<i64>>,
        ideal: &[String],
    ) -> Result<Problem, SpecError> {
        check_names(&names)?;
        let n = names.len();
        if let Some(d) = self.ambient_dim {
            if d != n {
                return fail(format!("ambient_dim is {d} but {n} variables are named"));
            }
        }
        for (r, row) in weights.iter().enumerate() {
            if row.len() != n {
                return fail(format!(
                    "weight row {r} has {} entries, expected ambient_dim = {n}",
                    row.len()
                ));
            }
        }
        let action = WeightedAction::new(weights, n).map_err(|e| SpecError(e.to_string()))?;
        let mut gens = Vec::new();
        for (i, src) in ideal.iter().enumerate() {
            let p = parse_poly(src, &names).map_err(|e| SpecError(format!("ideal[{i}]: {e}")))?;
            if !p.is_zero() {
                gens.push(p);
            }
        }
        let ideal = if gens.is_empty() {
            TruncatedIdeal::zero(n)
        } else {
            TruncatedIdeal::graded(gens, &action).map_err(|e| SpecError(e.to_string()))?
        };
        let theta = match &self.theta {
            None => None,
            Some(t) if t.len() == action.rank() => Some(Character(t.clone())),
            Some(t) => {
                return fail(format!(
                    "theta has length {}, expected rank {}",
                    t.len(),
                    action.rank()
                ))
            }
        };
        Ok(Problem::Torus(TorusProblem {
            kind: self.kind,
            names,
            action,
            ideal,
            theta,
            caps: self.caps,
            assertions: self.assertions,
        }))
    }
}

fn check_names(names: &[String]) -> Result<(), SpecError> {
    if names.is_empty() {
        return fail("`variable_names` is empty");
    }
    let mut seen = BTreeSet::new();
    for v in names {
        if !is_identifier(v) {
            return fail(format!("`{v}` is not a valid identifier"));
        }
        if !seen.insert(v) {
            return fail(format!("variable `{v}` is named twice"));
        }
    }
    Ok(())
}

/// T*C^k with weights (A, -A) on (z, w) and moment-map components
/// Σ_i a_{ri} z_i w_i.
fn hypertoric(a: &[Vec<i64>], names: &[String]) -> Result<(Vec<Vec<i64>>, Vec<String>), SpecError> {
    let k = a[0].len();
    if names.len() != 2 * k {
        return fail(format!("hypertoric data on {k} coordinates needs {} variable names", 2 * k));
    }
    let weights = a
        .iter()
        .map(|row| row.iter().copied().chain(row.iter().map(|x| -x)).collect())
        .collect();
    let ideal = a
        .iter()
        .map(|row| {
            let mut p = Polynomial::zero(2 * k);
            for (i, &c) in row.iter().enumerate() {
                let zw = Polynomial::var(2 * k, i).mul(&Polynomial::var(2 * k, k + i));
                p = p.add(&zw.scale(&int(c)));
            }
            p.render(names)
        })
        .collect();
    Ok((weights, ideal))
}

#[derive(Clone, Debug)]
pub struct TorusProblem {
    pub kind: Kind,
    pub names: Vec<String>,
    pub action: WeightedAction,
    pub ideal: TruncatedIdeal,
    pub theta: Option<Character>,
    pub caps: CapsSpec,
    pub assertions: Assertions,
}

#[derive(Clone, Debug)]
pub struct QuiverProblem {
    pub names: Vec<String>,
    pub preset: QuiverPreset,
    pub caps: CapsSpec,
}

#[derive(Clone, Debug)]
pub enum Problem {
    Torus(TorusProblem),
    Quiver(QuiverProblem),
    Adhm {
        n: Option<usize>,
        theta: Option<u32>,
        caps: CapsSpec,
    },
    Hilb {
        n: Option<usize>,
        caps: CapsSpec,
    },
}

impl Problem {
    pub fn caps(&self) -> CapsSpec {
        match self {
            Problem::Torus(t) => t.caps,
            Problem::Quiver(q) => q.caps,
            Problem::Adhm { caps, .. } | Problem::Hilb { caps, .. } => *caps,
        }
    }
}

/// Command-line flags override the problem file, which overrides the defaults.
pub fn merge_caps(file: CapsSpec, max_degree: Option<u32>, max_sat_power: Option<u32>) -> Caps {
    let d = Caps::default();
    Caps {
        max_degree: max_degree.or(file.max_degree).unwrap_or(d.max_degree),
        max_sat_power: max_sat_power.or(file.max_sat_power).unwrap_or(d.max_sat_power),
    }
}
