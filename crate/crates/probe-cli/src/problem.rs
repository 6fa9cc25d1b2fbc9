//! Problem documents: the JSON input of `birep verify`.
//!
//! ```json
//! {
//!   "grid": { "lo": -2, "hi": 2, "n": 201 },
//!   "dual": { "lo": -2, "hi": 2, "n": 201, "symmetric": true },
//!   "C": { "lo": -1, "hi": 1 },
//!   "bifunctions": [
//!     { "name": "F", "preset": "saddle-linear" },
//!     { "name": "G", "expr": "x*(y-x)" },
//!     { "name": "H", "skewFrom": "0.5*x^2", "C": { "lo": 0, "hi": 1 } }
//!   ],
//!   "suites": ["lemma5", "bo", "theorems"],
//!   "window": 0.5,
//!   "tolerances": { "exact": 1e-12 },
//!   "output": { "format": "structured", "path": "report.json" },
//!   "xbar": 0.0
//! }
//! ```

use std::fmt;

use birep::bifn::{BifunctionTable, DIAGONAL_TOL};
use birep::catalog::{self, Definition};
use birep::{CheckConfig, Grid, SubInterval, Tolerances};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{parse_expression, EvalError, Expr, ParseError, Var};

/// Upper bound on grid sizes; the suites are cubic in the node count.
pub const MAX_NODES: usize = 2001;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("bifunctions[{index}] ({name}): {source}")]
    Expression {
        index: usize,
        name: String,
        #[source]
        source: ParseError,
    },
    #[error("bifunctions[{index}] ({name}): {source}")]
    Evaluation {
        index: usize,
        name: String,
        #[source]
        source: EvalError,
    },
    #[error(
        "bifunctions[{index}] ({name}): violates the constraint F(x,x) = 0: F({x},{x}) = {value} exceeds {DIAGONAL_TOL:e}"
    )]
    Diagonal { index: usize, name: String, x: f64, value: f64 },
    #[error("{0}")]
    Core(#[from] birep::Error),
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Schema { path: path.into(), message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    /// Require symmetry about 0 with an odd node count.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub symmetric: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct BifunctionSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// `F(x, y)` in the expression grammar.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    /// `f(x)`, giving `F(x, y) = f(y) − f(x)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skew_from: Option<String>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<RangeSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "lemma5")]
    Lemma5,
    #[serde(rename = "bo")]
    Bo,
    #[serde(rename = "lemma4")]
    Lemma4,
    #[serde(rename = "lemma_le0")]
    LemmaLe0,
    #[serde(rename = "theorems")]
    Theorems,
    #[serde(rename = "sum")]
    Sum,
    #[serde(rename = "young")]
    Young,
    #[serde(rename = "fitzpatrick-psi")]
    FitzpatrickPsi,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lemma5,
        Suite::Bo,
        Suite::Lemma4,
        Suite::LemmaLe0,
        Suite::Theorems,
        Suite::Sum,
        Suite::Young,
        Suite::FitzpatrickPsi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma5 => "lemma5",
            Suite::Bo => "bo",
            Suite::Lemma4 => "lemma4",
            Suite::LemmaLe0 => "lemma_le0",
            Suite::Theorems => "theorems",
            Suite::Sum => "sum",
            Suite::Young => "young",
            Suite::FitzpatrickPsi => "fitzpatrick-psi",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Suites that take two bifunctions.
    pub fn is_pair(self) -> bool {
        matches!(self, Suite::Lemma4 | Suite::Sum)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duality: Option<f64>,
}

impl ToleranceOverrides {
    fn entries(&self) -> [(&'static str, Option<f64>); 5] {
        [
            ("exact", self.exact),
            ("approx", self.approx),
            ("interval", self.interval),
            ("equality", self.equality),
            ("duality", self.duality),
        ]
    }

    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "exact" => &mut self.exact,
            "approx" => &mut self.approx,
            "interval" => &mut self.interval,
            "equality" => &mut self.equality,
            "duality" => &mut self.duality,
            _ => return false,
        };
        *slot = Some(value);
        true
    }

    pub fn apply(&self, base: Tolerances) -> Tolerances {
        let mut t = base;
        for (name, v) in self.entries() {
            if let Some(v) = v {
                t.set(name, v);
            }
        }
        t
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Structured,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

/// The document as written, before sampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub grid: GridSpec,
    /// Defaults to a copy of `grid`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualSpec>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<RangeSpec>,
    #[serde(default)]
    pub bifunctions: Vec<BifunctionSpec>,
    #[serde(default)]
    pub suites: Vec<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
    /// Base point of the lemma4 suite; defaults to the middle of `C`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xbar: Option<f64>,
}

impl Problem {
    /// Deserializes without validating. Errors name the offending field path.
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let path = if path == "." { "document".to_string() } else { path };
            schema(path, e.into_inner().to_string())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem documents always serialize")
    }
}

#[derive(Debug, Clone)]
pub struct NamedTable {
    pub name: String,
    pub table: BifunctionTable,
}

/// A validated problem with every bifunction sampled.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub document: Problem,
    pub primal: Grid,
    pub dual: Grid,
    pub config: CheckConfig,
    pub bifunctions: Vec<NamedTable>,
    pub suites: Vec<Suite>,
    pub xbar: Option<usize>,
    pub format: Format,
    pub output_path: Option<String>,
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec, InputError> {
    ProblemSpec::resolve(Problem::from_json(text)?)
}

fn build_grid(path: &str, lo: f64, hi: f64, n: usize) -> Result<Grid, InputError> {
    if n > MAX_NODES {
        return Err(schema(format!("{path}.n"), format!("at most {MAX_NODES} nodes are supported, got {n}")));
    }
    Grid::new(lo, hi, n).map_err(|e| schema(path, e.to_string()))
}

fn locate(grid: &Grid, path: &str, x: f64) -> Result<usize, InputError> {
    grid.index_of(x, 1e-9 * grid.step()).ok_or_else(|| schema(path, format!("{x} is not a node of the primal grid")))
}

fn resolve_range(grid: &Grid, path: &str, r: &RangeSpec) -> Result<SubInterval, InputError> {
    let lo = locate(grid, &format!("{path}.lo"), r.lo)?;
    let hi = locate(grid, &format!("{path}.hi"), r.hi)?;
    if lo > hi {
        return Err(schema(path, format!("need lo <= hi, got [{}, {}]", r.lo, r.hi)));
    }
    Ok(SubInterval::new(lo, hi, grid)?)
}

impl ProblemSpec {
    pub fn resolve(document: Problem) -> Result<Self, InputError> {
        let g = document.grid;
        let primal = build_grid("grid", g.lo, g.hi, g.n)?;
        let dual_spec = document.dual.unwrap_or(DualSpec { lo: g.lo, hi: g.hi, n: g.n, symmetric: false });
        let dual = build_grid("dual", dual_spec.lo, dual_spec.hi, dual_spec.n)?;
        let needs_symmetric = dual_spec.symmetric || document.suites.contains(&Suite::Sum);
        if needs_symmetric && !dual.is_symmetric() {
            let why = if document.suites.contains(&Suite::Sum) { "the sum suite" } else { "dual.symmetric" };
            return Err(schema("dual", format!("{why} requires a dual grid symmetric about 0 with an odd node count")));
        }

        let window = document.window.unwrap_or(CheckConfig::default().window);
        if !(window > 0.0 && window <= 1.0) {
            return Err(schema("window", format!("must lie in (0, 1], got {window}")));
        }
        let overrides = document.tolerances.unwrap_or_default();
        for (name, v) in overrides.entries() {
            if let Some(v) = v {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(schema(format!("tolerances.{name}"), format!("must be finite and >= 0, got {v}")));
                }
            }
        }
        let config = CheckConfig { tol: overrides.apply(Tolerances::default()), window, ..CheckConfig::default() };

        let doc_domain = document.domain.map(|r| resolve_range(&primal, "C", &r)).transpose()?;
        let mut bifunctions = Vec::with_capacity(document.bifunctions.len());
        for (index, spec) in document.bifunctions.iter().enumerate() {
            let table = sample_bifunction(&primal, doc_domain, index, spec)?;
            bifunctions.push(NamedTable { name: spec.name.clone(), table });
        }
        if bifunctions.is_empty() && !document.suites.is_empty() {
            return Err(schema("bifunctions", "the selected suites need at least one bifunction"));
        }

        let xbar = match (document.xbar, bifunctions.first()) {
            (Some(x), Some(first)) => {
                let i = locate(&primal, "xbar", x)?;
                if !first.table.domain().contains(i) {
                    return Err(schema("xbar", format!("{x} lies outside C of {}", first.name)));
                }
                Some(i)
            }
            _ => None,
        };

        let output = document.output.clone().unwrap_or_default();
        Ok(Self {
            primal,
            dual,
            config,
            bifunctions,
            suites: document.suites.clone(),
            xbar,
            format: output.format.unwrap_or_default(),
            output_path: output.path,
            document,
        })
    }
}

enum Source {
    Preset(Definition),
    General(Expr),
    Skew(Expr),
}

fn sample_bifunction(
    grid: &Grid,
    doc_domain: Option<SubInterval>,
    index: usize,
    spec: &BifunctionSpec,
) -> Result<BifunctionTable, InputError> {
    let path = format!("bifunctions[{index}]");
    let parse = |src: &str| {
        parse_expression(src).map_err(|source| InputError::Expression { index, name: spec.name.clone(), source })
    };
    let (source, preset_domain) = match (&spec.preset, &spec.expr, &spec.skew_from) {
        (Some(name), None, None) => {
            let item = catalog::find(name)
                .ok_or_else(|| schema(format!("{path}.preset"), format!("unknown preset '{name}'")))?;
            (Source::Preset(item.definition), Some(RangeSpec { lo: item.domain.0, hi: item.domain.1 }))
        }
        (None, Some(src), None) => (Source::General(parse(src)?), None),
        (None, None, Some(src)) => {
            let e = parse(src)?;
            if e.uses(Var::Y) {
                return Err(schema(format!("{path}.skewFrom"), "may only use the variable x"));
            }
            (Source::Skew(e), None)
        }
        _ => return Err(schema(path, "exactly one of preset, expr, skewFrom is required")),
    };

    let domain = match (&spec.domain, doc_domain, preset_domain) {
        (Some(r), _, _) => resolve_range(grid, &format!("{path}.C"), r)?,
        (None, Some(d), _) => d,
        (None, None, Some(r)) => resolve_range(grid, &format!("{path}.preset"), &r)?,
        (None, None, None) => grid.full(),
    };

    let eval_err = |source| InputError::Evaluation { index, name: spec.name.clone(), source };
    let k = domain.len();
    let mut values = Vec::with_capacity(k * k);
    match source {
        Source::Preset(Definition::Skew(f)) => {
            let fv: Vec<f64> = domain.indices().map(|i| f(grid.node(i))).collect();
            values.extend(fv.iter().flat_map(|a| fv.iter().map(move |b| b - a)));
        }
        Source::Preset(Definition::General(f)) => {
            for i in domain.indices() {
                values.extend(domain.indices().map(|j| f(grid.node(i), grid.node(j))));
            }
        }
        Source::General(e) => {
            for i in domain.indices() {
                for j in domain.indices() {
                    values.push(e.eval(grid.node(i), grid.node(j)).map_err(eval_err)?);
                }
            }
        }
        Source::Skew(e) => {
            let fv =
                domain.indices().map(|i| e.eval(grid.node(i), 0.0)).collect::<Result<Vec<_>, _>>().map_err(eval_err)?;
            values.extend(fv.iter().flat_map(|a| fv.iter().map(move |b| b - a)));
        }
    }
    BifunctionTable::new(*grid, domain, values).map_err(|e| match e {
        birep::Error::NonzeroDiagonal { x, value } => InputError::Diagonal { index, name: spec.name.clone(), x, value },
        other => other.into(),
    })
}

/// A ready-to-run document for a catalog item.
pub fn catalog_problem(item: &catalog::CatalogItem, n: usize) -> Problem {
    let (lo, hi) = catalog::GRID_BOUNDS;
    Problem {
        grid: GridSpec { lo, hi, n },
        dual: Some(DualSpec { lo, hi, n, symmetric: false }),
        domain: Some(RangeSpec { lo: item.domain.0, hi: item.domain.1 }),
        bifunctions: vec![BifunctionSpec {
            name: item.name.to_string(),
            preset: Some(item.name.to_string()),
            expr: None,
            skew_from: None,
            domain: None,
        }],
        suites: vec![Suite::Lemma5, Suite::Bo, Suite::LemmaLe0, Suite::Theorems, Suite::Young, Suite::FitzpatrickPsi],
        window: None,
        tolerances: None,
        output: None,
        xbar: None,
    }
}
