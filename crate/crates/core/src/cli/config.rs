//! Run configuration: a JSON document describing the stress state, the
//! velocity field, an optional domain and a list of experiments.

use crate::experiments::{Expectation, Pairing};
use crate::geometry::DihedralSpec;
use crate::tensor::{Component, Poly, PolyField, Tensor2, Tensor3, Vec3};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Highest total degree accepted for a single monomial.
pub const MAX_TERM_DEGREE: u32 = 12;

/// One monomial `coefficient · x1^a x2^b x3^c` of the component `indices`
/// of a field. Scalar polynomials leave `indices` empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<usize>,
    pub exponents: [u32; 3],
    pub coefficient: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StressSpec {
    /// Ordinary stress, two indices per term.
    #[serde(default)]
    pub t: Vec<Term>,
    /// Hyperstress, three indices per term.
    #[serde(default)]
    pub c: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    Box,
    CauchyTetrahedron,
    GroovedSlab,
    Wedge,
    GraphPatchBox,
}

/// Domain description. Which fields are required depends on `kind`:
/// `box` takes `lo`, `hi`; `cauchy_tetrahedron` takes `normal`, `h`;
/// `grooved_slab` takes `grooves`, `dihedral`; `wedge` takes `dihedral`,
/// `c`, `length`, `epsilon`; `graph_patch_box` takes `phi`, `lo`, `hi`
/// (two entries each) and `z0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grooves: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dihedral: Option<DihedralSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z0: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    DivergenceIdentity,
    PowerConsistency,
    InterstitialDecomposition,
    GrooveBlowup,
    WedgeLimit,
    NollCheck,
    TetrahedronLimit,
    MollifierLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    Consistent,
    Raw,
}

/// One experiment. Unset optional fields take the documented defaults;
/// fields that do not apply to `kind` are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    /// Parameter grid: `ε` values, or groove counts for `groove_blowup`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
    /// Homothety ratios for `power_consistency`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratios: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dihedral: Option<DihedralSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f0: Option<Vec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u0: Option<Vec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Pairing>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation: Option<Expectation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<Vec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<Vec3>,
}

/// Point and directions for the `probe` subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeSpec {
    #[serde(default)]
    pub x0: Vec3,
    #[serde(default)]
    pub directions: Vec<Vec3>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance_scale: Option<f64>,
    #[serde(default)]
    pub stress_state: StressSpec,
    /// Velocity field, one index per term.
    #[serde(default)]
    pub velocity: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    #[serde(default)]
    pub experiments: Vec<ExperimentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeSpec>,
}

/// A problem with one field of a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigIssue {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Every problem found in a configuration.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{} configuration error(s):\n{}", .0.len(), .0.iter().map(|i| format!("  {i}")).collect::<Vec<_>>().join("\n"))]
pub struct ConfigErrors(pub Vec<ConfigIssue>);

/// Collects issues while walking a configuration.
#[derive(Default)]
pub(crate) struct Issues(pub Vec<ConfigIssue>);

impl Issues {
    pub fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(ConfigIssue {
            path: path.into(),
            message: message.into(),
        });
    }
}

/// Parses and validates JSON text. Unknown keys and every semantic problem
/// are reported together, each with its path.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigErrors> {
    let mut unknown = Vec::new();
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: RunConfig = serde_ignored::deserialize(de, |path| unknown.push(key_path(&path))).map_err(|e| {
        ConfigErrors(vec![ConfigIssue {
            path: "<document>".into(),
            message: e.to_string(),
        }])
    })?;
    let mut issues: Vec<ConfigIssue> = unknown
        .into_iter()
        .map(|p| ConfigIssue {
            message: "unknown key".into(),
            path: p,
        })
        .collect();
    if let Err(ConfigErrors(more)) = super::plan::prepare(&cfg) {
        issues.extend(more);
    }
    if issues.is_empty() {
        Ok(cfg)
    } else {
        Err(ConfigErrors(issues))
    }
}

/// Dotted key path with `Option` and newtype wrappers elided.
fn key_path(path: &serde_ignored::Path) -> String {
    use serde_ignored::Path;
    let join = |parent: &Path, seg: String| match key_path(parent) {
        p if p.is_empty() => seg,
        p => format!("{p}.{seg}"),
    };
    match path {
        Path::Root => String::new(),
        Path::Seq { parent, index } => join(parent, index.to_string()),
        Path::Map { parent, key } => join(parent, key.clone()),
        Path::Some { parent } | Path::NewtypeStruct { parent } | Path::NewtypeVariant { parent } => key_path(parent),
    }
}

/// Serializes a configuration back to pretty JSON.
pub fn to_json(cfg: &RunConfig) -> String {
    serde_json::to_string_pretty(cfg).expect("configuration is plain data")
}

/// Builds a field from terms, reporting bad indices, degrees or coefficients.
pub(crate) fn field_from_terms<C: Component>(
    terms: &[Term],
    rank: usize,
    path: &str,
    issues: &mut Issues,
) -> PolyField<C> {
    let mut comps = vec![Poly::zero(); C::LEN];
    for (i, t) in terms.iter().enumerate() {
        let at = format!("{path}[{i}]");
        if t.indices.len() != rank {
            issues.push(
                format!("{at}.indices"),
                format!("expected {rank} indices, got {}", t.indices.len()),
            );
            continue;
        }
        if let Some(bad) = t.indices.iter().find(|&&k| k > 2) {
            issues.push(format!("{at}.indices"), format!("index {bad} out of range 0..=2"));
            continue;
        }
        let degree: u32 = t.exponents.iter().sum();
        if degree > MAX_TERM_DEGREE {
            issues.push(
                format!("{at}.exponents"),
                format!("degree/quadrature mismatch: total degree {degree} exceeds {MAX_TERM_DEGREE}"),
            );
            continue;
        }
        if !t.coefficient.is_finite() {
            issues.push(format!("{at}.coefficient"), "coefficient must be finite");
            continue;
        }
        let flat = t.indices.iter().fold(0, |acc, k| 3 * acc + k);
        comps[flat].add_term(t.exponents, t.coefficient);
    }
    PolyField::from_components(comps)
}

pub(crate) fn stress_from_spec(spec: &StressSpec, issues: &mut Issues) -> (PolyField<Tensor2>, PolyField<Tensor3>) {
    (
        field_from_terms(&spec.t, 2, "stress_state.t", issues),
        field_from_terms(&spec.c, 3, "stress_state.c", issues),
    )
}

pub(crate) fn poly_from_terms(terms: &[Term], path: &str, issues: &mut Issues) -> Poly {
    field_from_terms::<f64>(terms, 0, path, issues).component(0).clone()
}

/// Terms of a field, the inverse of [`field_from_terms`].
pub fn terms_of<C: Component>(field: &PolyField<C>) -> Vec<Term> {
    let rank = match C::LEN {
        1 => 0,
        3 => 1,
        9 => 2,
        _ => 3,
    };
    let mut out = Vec::new();
    for (flat, p) in field.components().iter().enumerate() {
        let indices: Vec<usize> = (0..rank)
            .map(|r| (flat / 3usize.pow((rank - 1 - r) as u32)) % 3)
            .collect();
        for (e, c) in p.terms() {
            out.push(Term {
                indices: indices.clone(),
                exponents: *e,
                coefficient: *c,
            });
        }
    }
    out
}
