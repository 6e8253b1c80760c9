//! Catalog documents and the batch commands behind the `donaldson` binary.
//!
//! Every command returns an [`Outcome`]: a JSON document, its text rendering
//! and an exit status (0 success, 2 validation failure, 3 failed mathematical
//! check). Output is deterministic: maps are ordered and rationals are written
//! as `"p/q"` strings.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::asymptotics::{analyze_model, builtin_models, AsymptoticsError, FloerModel};
use crate::exact_algebra::{opt_rational_serde, rational_to_string, GaussianRational, QuadExpSeries, Rational};
use crate::geography::{
    elliptic_fibration_profile, elliptic_profile, hypersurface_invariants, plan_fiber_sum, stipsicz_profiles,
    FibrationProfile, HypersurfaceInvariants, PlanMode,
};
use crate::lattice::{H2Class, Lattice, LatticeError};
use crate::lefschetz::{
    decompose_canonical_difference, model_fibration, nonminimal_uniqueness, normalize_and_bound, pencil_to_fibration,
    sw_max_uniqueness, LefschetzError, LefschetzFibration, NonminimalVerdict, ReducibleFiber, Section,
    UniquenessVerdict,
};
use crate::manifold_series::{donaldson_series, BasicClassEntry, EvalRequest, Manifold, ManifoldError};
use crate::moves::{
    blowdown, blowup, fiber_sum_numerics, leading_factorization, munoz_glue, DSplit, FiberSumNumerics, GluingInput,
    GluingTerm, MovesError, WData,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parsing {what}: {source}")]
    Json { what: String, source: serde_json::Error },
    #[error("unsupported schema_version {0:?}, expected {SCHEMA_VERSION:?}")]
    Schema(String),
    #[error("no {kind} named {name:?} in the catalog")]
    Unknown { kind: &'static str, name: String },
    #[error("invalid {kind} {name:?}: {message}")]
    Invalid { kind: &'static str, name: String, message: String },
    #[error("unknown label {label:?} in class {class}")]
    Label { label: String, class: String },
    #[error("class {0} must be a JSON array of integers, an object label -> coefficient, or 0")]
    ClassSyntax(String),
    #[error("unknown plan mode {0:?}; use hypersurface or knot")]
    Mode(String),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Moves(#[from] MovesError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Moves(MovesError::FactorizationFailed { .. }) => ExitStatus::MathCheck as i32,
            _ => ExitStatus::Validation as i32,
        }
    }

    pub fn document(&self) -> Value {
        let kind = match self {
            CliError::Io { .. } => "io",
            CliError::Json { .. } | CliError::Schema(_) | CliError::ClassSyntax(_) | CliError::Mode(_) => "input",
            CliError::Unknown { .. } | CliError::Label { .. } => "lookup",
            CliError::Invalid { .. } => "validation",
            CliError::Manifold(_) => "manifold_series",
            CliError::Lattice(_) => "lattice",
            CliError::Moves(_) => "moves",
            CliError::Lefschetz(_) => "lefschetz",
            CliError::Asymptotics(_) => "asymptotics",
        };
        json!({ "error": kind, "message": self.to_string(), "exit_code": self.exit_code() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Validation = 2,
    MathCheck = 3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub status: ExitStatus,
}

impl Outcome {
    fn ok(document: Value) -> Self {
        Outcome { document, status: ExitStatus::Success }
    }

    fn checked(document: Value, pass: bool) -> Self {
        Outcome { document, status: if pass { ExitStatus::Success } else { ExitStatus::MathCheck } }
    }

    pub fn render(&self, format: Format) -> String {
        render(&self.document, format)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable") + "\n",
        Format::Text => {
            let mut out = String::new();
            render_text(doc, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if m.len() == 2 && m.contains_key("re") && m.contains_key("im") => {
            let (re, im) = (m["re"].as_str()?, m["im"].as_str()?);
            Some(match (re, im) {
                (re, "0") => re.to_string(),
                ("0", im) => format!("{im}i"),
                (re, im) if im.starts_with('-') => format!("{re}{im}i"),
                (re, im) => format!("{re}+{im}i"),
            })
        }
        Value::Array(a) => {
            let parts: Option<Vec<String>> = a.iter().map(scalar).collect();
            parts.filter(|p| p.iter().all(|s| !s.contains('\n'))).map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// A homology class: coordinates, or a map from basis label to coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassDoc {
    Coords(Vec<i64>),
    Labeled(BTreeMap<String, i64>),
}

impl ClassDoc {
    pub fn resolve(&self, lattice: &Lattice) -> Result<H2Class, CliError> {
        match self {
            ClassDoc::Coords(c) => {
                let class = H2Class::new(c.clone());
                lattice.check(&class)?;
                Ok(class)
            }
            ClassDoc::Labeled(m) => {
                let mut coords = vec![0; lattice.rank()];
                for (label, &c) in m {
                    let i = lattice
                        .label_index(label)
                        .map_err(|_| CliError::Label { label: label.clone(), class: format!("{m:?}") })?;
                    coords[i] += c;
                }
                Ok(H2Class::new(coords))
            }
        }
    }

    pub fn from_class(c: &H2Class) -> Self {
        ClassDoc::Coords(c.coords.clone())
    }

    /// Parses command-line input: a JSON array, a JSON object, or `0`.
    pub fn parse_arg(s: &str) -> Result<Option<Self>, CliError> {
        if s.trim() == "0" {
            return Ok(None);
        }
        serde_json::from_str(s).map(Some).map_err(|_| CliError::ClassSyntax(s.to_string()))
    }
}

fn resolve_arg(s: &str, lattice: &Lattice) -> Result<H2Class, CliError> {
    match ClassDoc::parse_arg(s)? {
        Some(doc) => doc.resolve(lattice),
        None => Ok(H2Class::zero(lattice.rank())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicClassDoc {
    pub class: ClassDoc,
    #[serde(default, with = "opt_rational_serde", skip_serializing_if = "Option::is_none")]
    pub beta: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sw: Option<i64>,
    #[serde(default, skip_serializing_if = "is_zero_u32")]
    pub order: u32,
}

fn is_zero_u32(x: &u32) -> bool {
    *x == 0
}

fn yes() -> bool {
    true
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldDoc {
    pub name: String,
    #[serde(default)]
    pub b1: usize,
    /// Read off the lattice when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_plus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_minus: Option<usize>,
    pub lattice: LatticeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<ClassDoc>,
    #[serde(default)]
    pub basic_classes: Vec<BasicClassDoc>,
    #[serde(default = "yes")]
    pub simple_type: bool,
    #[serde(default)]
    pub finite_type_order: u32,
    /// Defaults to the parity of the lattice.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spin: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tight_surface_genus: Option<u32>,
    #[serde(default = "one")]
    pub orientation_sign: i64,
    #[serde(default)]
    pub complete_class_data: bool,
}

impl ManifoldDoc {
    pub fn to_manifold(&self) -> Result<Manifold, CliError> {
        let invalid = |message: String| CliError::Invalid { kind: "manifold", name: self.name.clone(), message };
        let lattice = match &self.lattice.labels {
            Some(labels) => Lattice::new(self.lattice.gram.clone(), labels.clone()),
            None => Lattice::from_gram(self.lattice.gram.clone()),
        }
        .map_err(|e| invalid(e.to_string()))?;
        let mut x = Manifold::from_lattice(self.name.clone(), lattice);
        x.b1 = self.b1;
        x.b_plus = self.b_plus.unwrap_or(x.b_plus);
        x.b_minus = self.b_minus.unwrap_or(x.b_minus);
        x.canonical = self.canonical.as_ref().map(|c| c.resolve(&x.lattice)).transpose()?;
        let mut classes = Vec::with_capacity(self.basic_classes.len());
        for e in &self.basic_classes {
            let mut entry = BasicClassEntry::new(e.class.resolve(&x.lattice)?, e.beta.clone(), e.sw);
            entry.order = e.order;
            classes.push(entry);
        }
        x = x.with_classes(classes);
        x.simple_type = self.simple_type;
        x.finite_type_order = self.finite_type_order;
        x.spin = self.spin.unwrap_or_else(|| x.lattice.is_even());
        x.tight_surface_genus = self.tight_surface_genus;
        x.orientation_sign = self.orientation_sign;
        x.complete_class_data = self.complete_class_data;
        x.validate().map_err(|e| invalid(e.to_string()))?;
        Ok(x)
    }

    pub fn from_manifold(x: &Manifold) -> Self {
        ManifoldDoc {
            name: x.name.clone(),
            b1: x.b1,
            b_plus: Some(x.b_plus),
            b_minus: Some(x.b_minus),
            lattice: LatticeDoc { gram: x.lattice.gram().to_vec(), labels: Some(x.lattice.labels().to_vec()) },
            canonical: x.canonical.as_ref().map(ClassDoc::from_class),
            basic_classes: x
                .basic_classes
                .iter()
                .map(|e| BasicClassDoc {
                    class: ClassDoc::from_class(&e.class),
                    beta: e.beta.clone(),
                    sw: e.sw,
                    order: e.order,
                })
                .collect(),
            simple_type: x.simple_type,
            finite_type_order: x.finite_type_order,
            spin: Some(x.spin),
            tight_surface_genus: x.tight_surface_genus,
            orientation_sign: x.orientation_sign,
            complete_class_data: x.complete_class_data,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibleFiberDoc {
    pub f: ClassDoc,
    pub g: ClassDoc,
    /// Genus of the component `F`.
    pub f_genus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionDoc {
    pub class: ClassDoc,
    pub self_int: i64,
}

fn no() -> bool {
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LefschetzSource {
    Explicit {
        manifold: String,
        fiber: ClassDoc,
        genus: i64,
        #[serde(default)]
        reducible_fibers: Vec<ReducibleFiberDoc>,
        #[serde(default)]
        sections: Vec<SectionDoc>,
        #[serde(default = "yes")]
        relatively_minimal: bool,
        #[serde(default = "no")]
        h1_generated: bool,
    },
    /// Blow up the base points of the pencil with fibers dual to `k·ω`.
    Pencil { manifold: String, omega: ClassDoc, k: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzDoc {
    pub name: String,
    #[serde(flatten)]
    pub source: LefschetzSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGluing {
    pub name: String,
    pub input: GluingInput,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema_version: String,
    #[serde(default)]
    pub manifolds: Vec<ManifoldDoc>,
    #[serde(default)]
    pub fibrations: Vec<FibrationProfile>,
    #[serde(default)]
    pub lefschetz_fibrations: Vec<LefschetzDoc>,
    #[serde(default)]
    pub floer_models: Vec<FloerModel>,
    #[serde(default)]
    pub hypersurfaces: Vec<HypersurfaceInvariants>,
    #[serde(default)]
    pub gluings: Vec<NamedGluing>,
}

fn lookup<'a, T>(items: &'a [T], name: &str, kind: &'static str, key: impl Fn(&T) -> &str) -> Result<&'a T, CliError> {
    items.iter().find(|x| key(x) == name).ok_or_else(|| CliError::Unknown { kind, name: name.to_string() })
}

/// A loaded Lefschetz fibration with the genera of its reducible-fiber components.
pub struct LoadedFibration {
    pub fibration: LefschetzFibration,
    pub component_genera: Vec<i64>,
    pub base_points: Option<i64>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cat: Catalog =
            serde_json::from_str(text).map_err(|source| CliError::Json { what: "catalog".into(), source })?;
        if cat.schema_version != SCHEMA_VERSION {
            return Err(CliError::Schema(cat.schema_version));
        }
        Ok(cat)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn manifold(&self, name: &str) -> Result<Manifold, CliError> {
        lookup(&self.manifolds, name, "manifold", |m| &m.name)?.to_manifold()
    }

    pub fn fibration(&self, name: &str) -> Result<&FibrationProfile, CliError> {
        lookup(&self.fibrations, name, "fibration", |f| &f.name)
    }

    pub fn floer_model(&self, name: &str) -> Result<&FloerModel, CliError> {
        lookup(&self.floer_models, name, "floer model", |m| &m.name)
    }

    pub fn gluing(&self, name: &str) -> Result<&GluingInput, CliError> {
        Ok(&lookup(&self.gluings, name, "gluing", |g| &g.name)?.input)
    }

    pub fn lefschetz(&self, name: &str) -> Result<LoadedFibration, CliError> {
        let doc = lookup(&self.lefschetz_fibrations, name, "lefschetz fibration", |f| &f.name)?;
        match &doc.source {
            LefschetzSource::Explicit {
                manifold,
                fiber,
                genus,
                reducible_fibers,
                sections,
                relatively_minimal,
                h1_generated,
            } => {
                let x = self.manifold(manifold)?;
                let l = &x.lattice;
                let fiber = fiber.resolve(l)?;
                let reducible = reducible_fibers
                    .iter()
                    .map(|r| Ok(ReducibleFiber { f: r.f.resolve(l)?, g: r.g.resolve(l)? }))
                    .collect::<Result<Vec<_>, CliError>>()?;
                let sections = sections
                    .iter()
                    .map(|s| Ok(Section { class: s.class.resolve(l)?, self_int: s.self_int }))
                    .collect::<Result<Vec<_>, CliError>>()?;
                let component_genera = reducible_fibers.iter().map(|r| r.f_genus).collect();
                let fibration =
                    LefschetzFibration::new(x, fiber, *genus, reducible, sections, *relatively_minimal, *h1_generated)?;
                Ok(LoadedFibration { fibration, component_genera, base_points: None })
            }
            LefschetzSource::Pencil { manifold, omega, k } => {
                let x = self.manifold(manifold)?;
                let omega = omega.resolve(&x.lattice)?;
                let p = pencil_to_fibration(&x, &omega, *k)?;
                Ok(LoadedFibration {
                    fibration: p.fibration,
                    component_genera: Vec::new(),
                    base_points: Some(p.base_points),
                })
            }
        }
    }

    /// Every record checked against its construction invariants.
    pub fn validate(&self) -> Vec<Value> {
        let mut issues = Vec::new();
        let mut issue = |kind: &str, name: &str, message: String| {
            issues.push(json!({ "kind": kind, "name": name, "message": message }));
        };
        let mut names = BTreeMap::new();
        for m in &self.manifolds {
            if names.insert(m.name.clone(), ()).is_some() {
                issue("manifold", &m.name, "duplicate name".into());
            }
            if let Err(e) = m.to_manifold() {
                issue("manifold", &m.name, e.to_string());
            }
        }
        for f in &self.fibrations {
            let bad = f.genus < 1 || f.b1 < 0 || f.b_plus < 0 || f.b_minus < 0 || f.singular_fibers() < 0;
            if bad {
                issue("fibration", &f.name, "negative Betti number, genus < 1 or negative singular-fiber count".into());
            }
        }
        for f in &self.lefschetz_fibrations {
            if let Err(e) = self.lefschetz(&f.name) {
                issue("lefschetz_fibration", &f.name, e.to_string());
            }
        }
        for m in &self.floer_models {
            if let Err(e) = m.check_shape() {
                issue("floer_model", &m.name, e.to_string());
            } else if !m.spectrum_on_grid() {
                issue("floer_model", &m.name, format!("spectrum off the grid; residual {}", m.grid_residual()));
            } else if let Err(e) = m.congruence.d0() {
                issue("floer_model", &m.name, e.to_string());
            }
        }
        for h in &self.hypersurfaces {
            if hypersurface_invariants(h.degree).ok().as_ref() != Some(h) {
                issue("hypersurface", &format!("degree {}", h.degree), "invariants do not match the degree".into());
            }
        }
        for g in &self.gluings {
            if let Err(e) = munoz_glue(&g.input) {
                issue("gluing", &g.name, e.to_string());
            }
        }
        issues
    }

    /// E(n) for n ≤ 6, hypersurfaces of degree ≤ 12, Stipsicz fibrations for
    /// g ≤ 20, model and pencil fibrations, sample gluing data and the
    /// built-in Floer models.
    pub fn builtin() -> Self {
        let mut manifolds = Vec::new();
        let seed = trivial_seed();
        manifolds.push(ManifoldDoc::from_manifold(&seed));
        manifolds.push(ManifoldDoc::from_manifold(&blowup(&seed)));
        let mut empty = Manifold::from_lattice("empty-classes", Lattice::standard(3, 1, false).expect("odd lattice"));
        empty.canonical = Some(H2Class::zero(4));
        manifolds.push(ManifoldDoc::from_manifold(&empty));
        let mut nonsimple = seed.clone();
        nonsimple.name = "nonsimple-example".into();
        nonsimple.simple_type = false;
        nonsimple.finite_type_order = 1;
        nonsimple.basic_classes[0].order = 1;
        manifolds.push(ManifoldDoc::from_manifold(&nonsimple));
        for n in 1..=6 {
            manifolds.push(ManifoldDoc::from_manifold(&elliptic_profile(n).expect("n >= 1")));
        }
        manifolds.push(ManifoldDoc::from_manifold(&pencil_base()));

        let mut lefschetz_fibrations = vec![LefschetzDoc {
            name: "pencil-k3".into(),
            source: LefschetzSource::Pencil {
                manifold: "pencil-base".into(),
                omega: ClassDoc::Coords(vec![1, 0, 0, 0]),
                k: 3,
            },
        }];
        for (genus, genera) in [(3, vec![1]), (4, vec![1, 2])] {
            let f = model_fibration(genus, &genera).expect("model fibration");
            let name = format!("model-g{genus}");
            let mut x = f.manifold.clone();
            x.name = name.clone();
            manifolds.push(ManifoldDoc::from_manifold(&x));
            lefschetz_fibrations.push(LefschetzDoc {
                name,
                source: LefschetzSource::Explicit {
                    manifold: x.name.clone(),
                    fiber: ClassDoc::from_class(&f.fiber),
                    genus,
                    reducible_fibers: f
                        .reducible_fibers
                        .iter()
                        .zip(&genera)
                        .map(|(r, &g)| ReducibleFiberDoc {
                            f: ClassDoc::from_class(&r.f),
                            g: ClassDoc::from_class(&r.g),
                            f_genus: g,
                        })
                        .collect(),
                    sections: f
                        .sections
                        .iter()
                        .map(|s| SectionDoc { class: ClassDoc::from_class(&s.class), self_int: s.self_int })
                        .collect(),
                    relatively_minimal: f.relatively_minimal,
                    h1_generated: f.h1_generated,
                },
            });
        }

        let mut fibrations = vec![
            FibrationProfile::new("X(g=10)", 0, 3, 19, 10),
            FibrationProfile::new("X(g=6)", 0, 3, 19, 6),
            FibrationProfile::new("X(g=2)", 0, 3, 19, 2),
        ];
        fibrations.extend((1..=6).map(elliptic_fibration_profile));
        for g in 2..=20 {
            let (v1, v2) = stipsicz_profiles(g).expect("g >= 2");
            fibrations.push(v1);
            fibrations.push(v2);
        }

        let gluings = vec![NamedGluing {
            name: "genus3-pair".into(),
            input: GluingInput {
                genus: 3,
                x_terms: vec![
                    GluingTerm::new(Rational::from_integer(2.into()), 4, 4),
                    GluingTerm::new(Rational::from_integer(1.into()), -4, -4),
                    GluingTerm::new(Rational::from_integer(3.into()), 0, 2),
                ],
                z_terms: vec![
                    GluingTerm::new(Rational::from_integer(1.into()), 4, 0),
                    GluingTerm::new(Rational::from_integer((-1).into()), -4, 0),
                ],
                w: WData { w_w_sq: 1, w_x_sq: 1, w_z_sq: 0, w_w_fiber: 1, w_x_fiber: 1, w_z_fiber: 1 },
                d: DSplit { sigma_dot_d: 0, d_sq: 2, d_x_sq: 0, d_z_sq: 2 },
            },
        }];

        Catalog {
            schema_version: SCHEMA_VERSION.into(),
            manifolds,
            fibrations,
            lefschetz_fibrations,
            floer_models: builtin_models(),
            hypersurfaces: (1..=12).map(|d| hypersurface_invariants(d).expect("d >= 1")).collect(),
            gluings,
        }
    }
}

/// `b⁺ = 3`, `b⁻ = 1` odd lattice with the single basic class `0`, `β = 1`, `SW = 1`.
pub fn trivial_seed() -> Manifold {
    let zero = H2Class::zero(4);
    let mut x = Manifold::from_lattice("trivial-seed", Lattice::standard(3, 1, false).expect("odd lattice"))
        .with_classes(vec![BasicClassEntry::new(zero.clone(), Some(Rational::from_integer(1.into())), Some(1))]);
    x.canonical = Some(zero);
    x
}

/// `3⟨1⟩ ⊕ ⟨−1⟩` with canonical class `K = (1, 3, 3, 1)` and basic classes `±K`;
/// `ω = e₁` has `ω² = 1`, `K·ω = 1`.
pub fn pencil_base() -> Manifold {
    let k = H2Class::new(vec![1, 3, 3, 1]);
    let one = Rational::from_integer(1.into());
    let mut x = Manifold::from_lattice("pencil-base", Lattice::standard(3, 1, false).expect("odd lattice"))
        .with_classes(vec![
            BasicClassEntry::new(k.clone(), Some(one.clone()), Some(1)),
            BasicClassEntry::new(-&k, Some(one), Some(1)),
        ]);
    x.canonical = Some(k);
    x
}

fn g_json(g: &GaussianRational) -> Value {
    if g.im.is_zero() {
        Value::String(rational_to_string(&g.re))
    } else {
        serde_json::to_value(g).expect("serializable")
    }
}

pub fn series_document(s: &QuadExpSeries) -> Value {
    let terms: Vec<Value> =
        s.expsum.iter().map(|(l, c)| json!({ "exponent": g_json(l), "coefficient": g_json(c) })).collect();
    json!({
        "zero": s.is_zero(),
        "gauss": rational_to_string(&s.gauss),
        "terms": terms,
        "leading": s.leading_term().map(|(l, c)| json!({ "exponent": g_json(l), "coefficient": g_json(c) })),
    })
}

pub fn cmd_series(cat: &Catalog, name: &str, w: &str, h: &str) -> Result<Outcome, CliError> {
    let x = cat.manifold(name)?;
    let req = EvalRequest { w: resolve_arg(w, &x.lattice)?, h: resolve_arg(h, &x.lattice)? };
    let s = donaldson_series(&x, &req)?;
    Ok(Outcome::ok(json!({
        "command": "series",
        "manifold": name,
        "w": req.w.coords,
        "h": req.h.coords,
        "series": series_document(&s),
    })))
}

pub fn cmd_blowup(cat: &Catalog, name: &str) -> Result<Outcome, CliError> {
    let xt = blowup(&cat.manifold(name)?);
    Ok(Outcome::ok(json!({ "command": "blowup", "manifold": ManifoldDoc::from_manifold(&xt) })))
}

pub fn cmd_blowdown(cat: &Catalog, name: &str, e: &str) -> Result<Outcome, CliError> {
    let xt = cat.manifold(name)?;
    let e = resolve_arg(e, &xt.lattice)?;
    let x = blowdown(&xt, &e)?;
    let ratio = match (crate::manifold_series::witten_consistency(&xt), crate::manifold_series::witten_consistency(&x))
    {
        (Ok(before), Ok(after)) => Some(rational_to_string(&(after / before))),
        _ => None,
    };
    Ok(Outcome::ok(json!({
        "command": "blowdown",
        "manifold": ManifoldDoc::from_manifold(&x),
        "witten_constant_ratio": ratio,
    })))
}

pub fn cmd_fibersum(cat: &Catalog, w: &str, v: &str, times: u32) -> Result<Outcome, CliError> {
    let wp = cat.fibration(w)?;
    let vp = cat.fibration(v)?;
    if wp.genus != vp.genus {
        return Err(CliError::Invalid {
            kind: "fibration",
            name: v.to_string(),
            message: format!("fiber genus {} differs from {} of {w}", vp.genus, wp.genus),
        });
    }
    let mut acc = FiberSumNumerics::from_betti(wp.betti());
    let mut steps = Vec::new();
    for _ in 0..times {
        acc = fiber_sum_numerics(acc.betti(), vp.betti(), vp.genus);
        steps.push(acc);
    }
    let (n_plus, n_minus) = vp.betti().increments(vp.genus);
    Ok(Outcome::ok(json!({
        "command": "fibersum",
        "w": wp,
        "v": vp,
        "times": times,
        "increments": { "n_plus": n_plus, "n_minus": n_minus },
        "steps": steps,
        "result": acc,
    })))
}

pub fn cmd_glue(cat: &Catalog, name: &str) -> Result<Outcome, CliError> {
    let inp = cat.gluing(name)?;
    let s = munoz_glue(inp)?;
    let f = leading_factorization(inp)?;
    Ok(Outcome::ok(json!({
        "command": "glue",
        "gluing": name,
        "epsilon": inp.epsilon(),
        "series": series_document(&s),
        "leading_factorization": f,
    })))
}

fn uniqueness_json(v: &UniquenessVerdict) -> Value {
    match v {
        UniquenessVerdict::Holds => json!({ "holds": true }),
        UniquenessVerdict::Fails { witness, reason } => {
            json!({ "holds": false, "witness": witness.as_ref().map(|w| &w.coords), "reason": reason })
        }
    }
}

fn nonminimal_json(v: &NonminimalVerdict) -> Value {
    match v {
        NonminimalVerdict::EqualsCanonical => json!({ "verdict": "equals_canonical" }),
        NonminimalVerdict::Excluded { reason } => json!({ "verdict": "excluded", "reason": reason }),
        NonminimalVerdict::Inconclusive { reason } => json!({ "verdict": "inconclusive", "reason": reason }),
    }
}

/// Decomposition, normalized bound and uniqueness verdicts for `--class`, or
/// for every stored basic class pairing maximally with the fiber.
pub fn cmd_constraints(cat: &Catalog, name: &str, class: Option<&str>) -> Result<Outcome, CliError> {
    let loaded = cat.lefschetz(name)?;
    let f = &loaded.fibration;
    let l = f.lattice();
    let top = f.extremal();
    let candidates: Vec<H2Class> = match class {
        Some(c) => vec![resolve_arg(c, l)?],
        None => {
            let mut v: Vec<H2Class> = f
                .manifold
                .basic_classes
                .iter()
                .map(|e| e.class.clone())
                .filter(|k| l.pairing(k, &f.fiber).ok() == Some(top))
                .collect();
            if let Some(kx) = &f.manifold.canonical {
                if !v.contains(kx) {
                    v.insert(0, kx.clone());
                }
            }
            v
        }
    };
    let mut rows = Vec::new();
    for k in &candidates {
        let dec = decompose_canonical_difference(f, k)?;
        let bound = if dec.valid && dec.c.len() == loaded.component_genera.len() {
            Some(normalize_and_bound(f, &dec, &loaded.component_genera)?)
        } else {
            None
        };
        rows.push(json!({
            "class": k.coords,
            "decomposition": {
                "coefficients": dec.coefficients.iter().map(rational_to_string).collect::<Vec<_>>(),
                "n": dec.n,
                "c": dec.c,
                "valid": dec.valid,
                "failure": dec.failure.map(|x| format!("{x:?}")),
            },
            "bound": bound,
            "nonminimal": nonminimal_json(&nonminimal_uniqueness(f, k)?),
        }));
    }
    let uniqueness = if f.manifold.b_plus > 1 { Some(uniqueness_json(&sw_max_uniqueness(f)?)) } else { None };
    let kx = f.manifold.canonical.as_ref();
    Ok(Outcome::ok(json!({
        "command": "constraints",
        "fibration": name,
        "genus": f.genus,
        "base_points": loaded.base_points,
        "fiber_square": l.square(&f.fiber)?,
        "canonical_dot_fiber": kx.map(|k| l.pairing(k, &f.fiber)).transpose()?,
        "sw_max_uniqueness": uniqueness,
        "classes": rows,
    })))
}

pub fn parse_mode(s: &str) -> Result<PlanMode, CliError> {
    PlanMode::parse(s).ok_or_else(|| CliError::Mode(s.to_string()))
}

/// Exit 0 iff a certificate is found and all its checks pass; a planning
/// failure is reported as a failed mathematical check.
pub fn cmd_plan(cat: &Catalog, name: &str, mode: PlanMode) -> Result<Outcome, CliError> {
    let start = cat.fibration(name)?;
    Ok(match plan_fiber_sum(start, mode) {
        Ok(cert) => {
            let pass = cert.all_pass() && cert.verify();
            Outcome::checked(json!({ "command": "plan", "status": "certificate", "certificate": cert }), pass)
        }
        Err(failure) => Outcome::checked(
            json!({ "command": "plan", "status": "failure", "message": failure.to_string(), "failure": failure }),
            false,
        ),
    })
}

pub fn cmd_asymptotics(cat: &Catalog, name: &str) -> Result<Outcome, CliError> {
    let model = cat.floer_model(name)?;
    let report = analyze_model(model)?;
    let pass = report.all_pass();
    Ok(Outcome::checked(
        json!({ "command": "asymptotics", "model": name, "routes_agree": pass, "report": report }),
        pass,
    ))
}

pub fn cmd_catalog_validate(cat: &Catalog) -> Outcome {
    let issues = cat.validate();
    let ok = issues.is_empty();
    let counts = json!({
        "manifolds": cat.manifolds.len(),
        "fibrations": cat.fibrations.len(),
        "lefschetz_fibrations": cat.lefschetz_fibrations.len(),
        "floer_models": cat.floer_models.len(),
        "hypersurfaces": cat.hypersurfaces.len(),
        "gluings": cat.gluings.len(),
    });
    Outcome {
        document: json!({ "command": "catalog validate", "valid": ok, "records": counts, "issues": issues }),
        status: if ok { ExitStatus::Success } else { ExitStatus::Validation },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_is_valid_and_round_trips() {
        let cat = Catalog::builtin();
        assert_eq!(cat.validate(), Vec::<Value>::new());
        let text = cat.to_json();
        let back = Catalog::parse(&text).unwrap();
        assert_eq!(back, cat);
        assert_eq!(back.to_json(), text);
        for m in &cat.manifolds {
            assert_eq!(&ManifoldDoc::from_manifold(&m.to_manifold().unwrap()), m);
        }
    }

    #[test]
    fn series_on_blown_up_seed() {
        let cat = Catalog::builtin();
        let out = cmd_series(&cat, "trivial-seed#CP2bar", "0", "[0,0,0,0,1]").unwrap();
        let terms = &out.document["series"]["terms"];
        assert_eq!(terms[0], json!({ "exponent": "-1", "coefficient": "1/2" }));
        assert_eq!(terms[1], json!({ "exponent": "1", "coefficient": "1/2" }));
        let empty = cmd_series(&cat, "empty-classes", "0", "[1,0,0,0]").unwrap();
        assert_eq!(empty.document["series"]["zero"], json!(true));
        let err = cmd_series(&cat, "nonsimple-example", "0", "0").unwrap_err();
        assert!(err.to_string().contains("simple type required; use asymptotics"));
    }

    #[test]
    fn labeled_classes_resolve() {
        let cat = Catalog::builtin();
        let x = cat.manifold("E(2)").unwrap();
        let c = resolve_arg(r#"{"F": 2, "S": -1}"#, &x.lattice).unwrap();
        assert_eq!(&c.coords[..3], &[2, -1, 0]);
        assert!(matches!(resolve_arg(r#"{"nope": 1}"#, &x.lattice), Err(CliError::Label { .. })));
    }

    #[test]
    fn plan_and_asymptotics_statuses() {
        let cat = Catalog::builtin();
        assert_eq!(cmd_plan(&cat, "X(g=10)", PlanMode::Hypersurface).unwrap().status, ExitStatus::Success);
        let fail = cmd_plan(&cat, "X(g=2)", PlanMode::Hypersurface).unwrap();
        assert_eq!(fail.status, ExitStatus::MathCheck);
        assert!(fail.document["failure"]["obstruction"].is_object());
        assert!(matches!(cmd_plan(&cat, "nope", PlanMode::Hypersurface), Err(CliError::Unknown { .. })));
        let top = cmd_asymptotics(&cat, "top-1x1").unwrap();
        assert_eq!(top.status, ExitStatus::Success);
        assert_eq!(top.document["report"]["growth"], json!(4));
    }

    #[test]
    fn constraints_on_pencil() {
        let cat = Catalog::builtin();
        let out = cmd_constraints(&cat, "pencil-k3", None).unwrap();
        assert_eq!(out.document["genus"], json!(7));
        assert_eq!(out.document["base_points"], json!(9));
        assert_eq!(out.document["canonical_dot_fiber"], json!(12));
        assert_eq!(out.document["sw_max_uniqueness"]["holds"], json!(true));
    }

    #[test]
    fn text_rendering_is_deterministic() {
        let cat = Catalog::builtin();
        let a = cmd_fibersum(&cat, "E(1)", "E(1)", 1).unwrap().render(Format::Text);
        let b = cmd_fibersum(&cat, "E(1)", "E(1)", 1).unwrap().render(Format::Text);
        assert_eq!(a, b);
        assert!(a.contains("b_plus: 3"));
    }
}
