//! Resolution data of a hypersurface germ, and dual graphs for curves.
//!
//! The combinatorial input to every zeta formula: components of the total
//! transform with their multiplicities `N` (of the pulled-back function),
//! `nu` (one plus the discrepancy) and optionally `M` (multiplicity in the
//! pullback of the first exceptional hyperplane), together with the
//! classes of the strata `E_I` (points lying on exactly the components
//! in `I`). Strata with zero class are omitted; the formulas iterate only
//! over stored strata.
//!
//! For plane curves a [`DualGraph`] is the compact encoding: vertices are
//! the exceptional rational curves, edges their intersections, and arrows
//! record where branches of the strict transform are attached.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::motivic::MotivicClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    /// A component of the exceptional divisor.
    Exceptional,
    /// A component of the strict transform of the zero set.
    Strict,
}

/// One irreducible component of the total transform.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: String,
    pub kind: ComponentKind,
    /// Multiplicity of the pulled-back function along the component.
    #[serde(rename = "N")]
    pub n: u64,
    /// One plus the multiplicity of the pulled-back volume form.
    pub nu: u64,
    /// Multiplicity in the pullback of the first exceptional hyperplane;
    /// absent when the data does not support branch-space formulas.
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

/// A stratum `E_I` (points on exactly the components in `members`) with
/// its class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub members: Vec<String>,
    #[serde(rename = "class")]
    pub cls: MotivicClass,
}

/// Full resolution data: the input to the zeta formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    pub ambient_dim: usize,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
}

/// Violations found by [`ResolutionData::validate`].
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {}", v)?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed resolution data: {0}")]
    Json(#[from] serde_json::Error),
}

impl ResolutionData {
    /// True when every component carries the `M` multiplicity, so the
    /// branch-space formulas are available.
    pub fn has_m(&self) -> bool {
        self.components.iter().all(|c| c.m.is_some())
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn exceptional_components(&self) -> impl Iterator<Item = &Component> {
        self.components
            .iter()
            .filter(|c| c.kind == ComponentKind::Exceptional)
    }

    /// Checks every type invariant and reports violations; never mutates.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut push = |msg: String| report.violations.push(msg);

        if self.ambient_dim < 1 {
            push("ambient_dim must be >= 1".into());
        }
        if !self
            .components
            .iter()
            .any(|c| c.kind == ComponentKind::Exceptional)
        {
            push("no exceptional component declared".into());
        }

        let mut ids = BTreeSet::new();
        for c in &self.components {
            if !ids.insert(c.id.as_str()) {
                push(format!("duplicate component id {:?}", c.id));
            }
            if c.n < 1 {
                push(format!("component {:?} has N = 0", c.id));
            }
            if c.nu < 1 {
                push(format!("component {:?} has nu = 0", c.id));
            }
        }

        let mut seen_strata = BTreeSet::new();
        for (idx, s) in self.strata.iter().enumerate() {
            if s.members.is_empty() {
                push(format!("stratum #{} has no members", idx));
                continue;
            }
            let mut members = BTreeSet::new();
            for m in &s.members {
                if !members.insert(m.as_str()) {
                    push(format!("stratum #{} repeats member {:?}", idx, m));
                }
                if !ids.contains(m.as_str()) {
                    push(format!("stratum #{} references unknown id {:?}", idx, m));
                }
            }
            if !seen_strata.insert(members.clone()) {
                push(format!("stratum #{} duplicates an earlier member set", idx));
            }
            if s.cls.is_zero() {
                push(format!(
                    "stratum #{} stores a zero class (zero strata are omitted)",
                    idx
                ));
            }
            if self.ambient_dim == 2 {
                if s.members.len() > 2 {
                    push(format!(
                        "stratum #{} has {} members; at most 2 components meet for d = 2",
                        idx,
                        s.members.len()
                    ));
                }
                if s.members.len() == 2 {
                    match s.cls.as_constant() {
                        Some(c) if !c.is_negative() => {}
                        _ => push(format!(
                            "stratum #{} of two components must be a nonnegative number of points, got {}",
                            idx, s.cls
                        )),
                    }
                }
            }
        }
        report
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("resolution data serializes");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str) -> Result<Self, DataError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn store(&self, path: &Path) -> Result<(), DataError> {
        std::fs::write(path, self.to_json_string()).map_err(|source| DataError::Write {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, DataError> {
        let text = std::fs::read_to_string(path).map_err(|source| DataError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }
}

/// A vertex of the dual graph: one exceptional rational curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVertex {
    pub id: String,
    pub n: u64,
    pub nu: u64,
    pub m: Option<u64>,
}

/// Dual graph of a plane-curve resolution (`d = 2` only). Every vertex is
/// a rational curve; an edge of multiplicity `k` stands for `k` distinct
/// intersection points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<GraphVertex>,
    /// Unordered vertex pairs with multiplicity.
    pub edges: Vec<(String, String, u64)>,
    /// `(vertex, strict-component id)` incidences.
    pub arrows: Vec<(String, String)>,
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("dual graph has no vertices")]
    Empty,
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("edge endpoint {0:?} is not a vertex")]
    UnknownVertex(String),
    #[error("self-loop at {0:?}")]
    SelfLoop(String),
    #[error("edge multiplicity must be >= 1")]
    ZeroMultiplicity,
    #[error("vertex {0:?} has {1} = 0")]
    ZeroMultiplicityData(String, &'static str),
    #[error("duplicate arrow ({0:?}, {1:?})")]
    DuplicateArrow(String, String),
}

impl DualGraph {
    pub fn add_vertex(&mut self, id: impl Into<String>, n: u64, nu: u64, m: Option<u64>) {
        self.vertices.push(GraphVertex {
            id: id.into(),
            n,
            nu,
            m,
        });
    }

    pub fn add_edge(&mut self, a: impl Into<String>, b: impl Into<String>, multiplicity: u64) {
        self.edges.push((a.into(), b.into(), multiplicity));
    }

    pub fn add_arrow(&mut self, vertex: impl Into<String>, strict: impl Into<String>) {
        self.arrows.push((vertex.into(), strict.into()));
    }

    fn check(&self) -> Result<(), GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id.as_str()) {
                return Err(GraphError::DuplicateId(v.id.clone()));
            }
            if v.n < 1 {
                return Err(GraphError::ZeroMultiplicityData(v.id.clone(), "N"));
            }
            if v.nu < 1 {
                return Err(GraphError::ZeroMultiplicityData(v.id.clone(), "nu"));
            }
        }
        for (a, b, mult) in &self.edges {
            if a == b {
                return Err(GraphError::SelfLoop(a.clone()));
            }
            for end in [a, b] {
                if !ids.contains(end.as_str()) {
                    return Err(GraphError::UnknownVertex(end.clone()));
                }
            }
            if *mult < 1 {
                return Err(GraphError::ZeroMultiplicity);
            }
        }
        let mut strict_ids = BTreeSet::new();
        let mut seen_arrows = BTreeSet::new();
        for (v, c) in &self.arrows {
            if !ids.contains(v.as_str()) {
                return Err(GraphError::UnknownVertex(v.clone()));
            }
            if ids.contains(c.as_str()) {
                return Err(GraphError::DuplicateId(c.clone()));
            }
            if !seen_arrows.insert((v.as_str(), c.as_str())) {
                return Err(GraphError::DuplicateArrow(v.clone(), c.clone()));
            }
            if !strict_ids.insert(c.as_str()) {
                // A strict branch is attached at exactly one point.
                return Err(GraphError::DuplicateId(c.clone()));
            }
        }
        Ok(())
    }

    /// Expands the graph into full resolution data.
    ///
    /// Every vertex is a `P^1`, so its open stratum has class
    /// `L + 1 - (incident edge-endpoints and arrows)`; each intersection
    /// point becomes a pair stratum whose class is the number of points.
    /// Strict components get `N = 1`, `nu = 1`, `M = 0` and no singleton
    /// stratum.
    pub fn to_resolution(&self) -> Result<ResolutionData, GraphError> {
        self.check()?;

        let mut incidences: BTreeMap<&str, u64> = BTreeMap::new();
        for (a, b, mult) in &self.edges {
            *incidences.entry(a.as_str()).or_default() += mult;
            *incidences.entry(b.as_str()).or_default() += mult;
        }
        for (v, _) in &self.arrows {
            *incidences.entry(v.as_str()).or_default() += 1;
        }

        let all_have_m = self.vertices.iter().all(|v| v.m.is_some());
        let mut components = Vec::new();
        for v in &self.vertices {
            components.push(Component {
                id: v.id.clone(),
                kind: ComponentKind::Exceptional,
                n: v.n,
                nu: v.nu,
                m: v.m,
            });
        }
        for (_, c) in &self.arrows {
            components.push(Component {
                id: c.clone(),
                kind: ComponentKind::Strict,
                n: 1,
                nu: 1,
                m: if all_have_m { Some(0) } else { None },
            });
        }

        let mut strata = Vec::new();
        for v in &self.vertices {
            let k = incidences.get(v.id.as_str()).copied().unwrap_or(0);
            // [E deg 0 curve] = L + 1 minus the removed points.
            let cls = MotivicClass::l()
                + MotivicClass::constant(1 - BigInt::from(k));
            strata.push(Stratum {
                members: vec![v.id.clone()],
                cls,
            });
        }
        let mut pair_classes: BTreeMap<(String, String), u64> = BTreeMap::new();
        for (a, b, mult) in &self.edges {
            let key = if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            *pair_classes.entry(key).or_default() += mult;
        }
        for (v, c) in &self.arrows {
            *pair_classes.entry((v.clone(), c.clone())).or_default() += 1;
        }
        for ((a, b), mult) in pair_classes {
            strata.push(Stratum {
                members: vec![a, b],
                cls: MotivicClass::constant(mult),
            });
        }

        Ok(ResolutionData {
            ambient_dim: 2,
            components,
            strata,
        })
    }
}
