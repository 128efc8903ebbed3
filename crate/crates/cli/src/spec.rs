//! Run specifications: the TOML/JSON input schema, defaults and reference
//! resolution.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use torsion_core::RingSpec;

use crate::checks::{lookup, Need};
use crate::error::InputError;

pub const DEFAULT_IDEAL: &str = "I";
pub const DEFAULT_MODULE: &str = "M";
pub const DEFAULT_FAMILY: &str = "F";
pub const DEFAULT_POLY: &str = "J";

/// A ring element: a bare integer for rank-one rings, otherwise coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementDoc {
    Scalar(u64),
    Coords(Vec<u64>),
}

impl ElementDoc {
    pub fn coords(&self) -> Vec<u64> {
        match self {
            ElementDoc::Scalar(x) => vec![*x],
            ElementDoc::Coords(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub gens: Vec<ElementDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    /// `R` itself.
    Regular,
    Zero,
    /// `R/ideal`.
    Cyclic,
    /// `R^rank`.
    Free,
    /// `R^rank / span(relations)`.
    Quotient,
    /// Direct sum of the modules named in `of`.
    Sum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: ModuleKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub of: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterKind {
    #[default]
    All,
    Reduced,
    Coreduced,
    Semisimple,
    Annihilated,
}

fn default_generators() -> usize {
    2
}

fn default_order() -> u64 {
    64
}

/// Either an enumerated family (quotients of `R^c`, optionally with sums of
/// cyclic modules) or an explicit list of named modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default = "default_generators")]
    pub max_generators: usize,
    #[serde(default = "default_order")]
    pub max_order: u64,
    #[serde(default)]
    pub cyclic_sums: bool,
    #[serde(default)]
    pub filter: FilterKind,
    /// Ideal used by the reduced, coreduced and annihilated filters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<String>,
}

/// A rational coefficient: an integer or a string such as `"3/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDoc {
    Int(i64),
    Text(String),
}

/// One term of a sparse polynomial: `[[exponents], coefficient]` or
/// `{ exp = [...], coeff = ... }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermDoc {
    Pair(Vec<u32>, CoeffDoc),
    Table { exp: Vec<u32>, coeff: CoeffDoc },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyIdealDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vars: usize,
    pub generators: Vec<Vec<TermDoc>>,
}

/// Parameters of one check. Only the fields a check uses are read.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckParams {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// Second family for the two-family equivalence checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_b: Option<String>,
    /// First argument of Ext and Tor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly_ideal: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sequence: Vec<ElementDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qmax: Option<usize>,
    /// Truncation degree of the inverse system.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmax: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// `discrete` or `completion`, for `limits_commute`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_elements: Option<Vec<ElementDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_witness: Option<String>,
}

/// A check entry: a bare name or a table of parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CheckDoc(pub CheckParams);

impl<'de> Deserialize<'de> for CheckDoc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct NameOrTable;
        impl<'de> Visitor<'de> for NameOrTable {
            type Value = CheckDoc;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a check name or a table of check parameters")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<CheckDoc, E> {
                Ok(CheckDoc(CheckParams { name: v.to_string(), ..CheckParams::default() }))
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<CheckDoc, A::Error> {
                CheckParams::deserialize(de::value::MapAccessDeserializer::new(map)).map(CheckDoc)
            }
        }
        d.deserialize_any(NameOrTable)
    }
}

fn default_resolution_length() -> usize {
    4
}

fn default_submodule_bound() -> u64 {
    256
}

fn default_offset_bound() -> usize {
    8
}

fn default_degree_bound() -> usize {
    4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    #[serde(default = "default_resolution_length")]
    pub resolution_length: usize,
    /// Largest module whose submodules are enumerated.
    #[serde(default = "default_submodule_bound")]
    pub submodule_bound: u64,
    #[serde(default = "default_offset_bound")]
    pub offset_bound: usize,
    #[serde(default = "default_degree_bound")]
    pub degree_bound: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            resolution_length: default_resolution_length(),
            submodule_bound: default_submodule_bound(),
            offset_bound: default_offset_bound(),
            degree_bound: default_degree_bound(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    /// Shorthand for a single ideal named `I`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideals: Vec<IdealDoc>,
    /// Shorthand for a single module named `M`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleDoc>,
    /// Shorthand for a single family named `F`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyDoc>,
    /// Shorthand for a single polynomial ideal named `J`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly_ideal: Option<PolyIdealDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub poly_ideals: Vec<PolyIdealDoc>,
    #[serde(default)]
    pub checks: Vec<CheckDoc>,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Toml,
    Json,
}

impl Format {
    /// `.json` is JSON; everything else is read as TOML.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Toml,
        }
    }
}

/// Line and column (both 1-based) of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
    (line, col)
}

/// Parses and validates a run spec, applying defaults and filling in
/// references left implicit.
pub fn parse_runspec(text: &str, format: Format) -> Result<RunSpec, InputError> {
    let spec: RunSpec = match format {
        Format::Json => serde_json::from_str(text).map_err(|e| InputError::Parse {
            message: e.to_string(),
            line: e.line(),
            column: e.column(),
        })?,
        Format::Toml => toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map(|s| line_col(text, s.start)).unwrap_or((0, 0));
            InputError::Parse { message: e.message().to_string(), line, column }
        })?,
    };
    spec.normalize()
}

pub fn read_runspec(path: &Path) -> Result<RunSpec, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_runspec(&text, Format::from_path(path))
}

fn take_named<T>(
    single: Option<T>,
    list: Vec<T>,
    default: &str,
    name_of: impl Fn(&mut T) -> &mut Option<String>,
) -> Vec<T> {
    let mut out = Vec::new();
    if let Some(mut s) = single {
        name_of(&mut s).get_or_insert_with(|| default.to_string());
        out.push(s);
    }
    let count = list.len();
    for (k, mut item) in list.into_iter().enumerate() {
        let slot = name_of(&mut item);
        if slot.is_none() {
            *slot =
                Some(if count == 1 && out.is_empty() { default.to_string() } else { format!("{default}{}", k + 1) });
        }
        out.push(item);
    }
    out
}

fn names<T>(
    items: &[T],
    kind: &'static str,
    name_of: impl Fn(&T) -> &Option<String>,
) -> Result<BTreeSet<String>, InputError> {
    let mut seen = BTreeSet::new();
    for item in items {
        let name = name_of(item).clone().expect("names are filled in");
        if !seen.insert(name.clone()) {
            return Err(InputError::Duplicate { kind, name });
        }
    }
    Ok(seen)
}

fn resolve(
    slot: &mut Option<String>,
    known: &BTreeSet<String>,
    kind: &'static str,
    check: &str,
    required: bool,
) -> Result<(), InputError> {
    match slot {
        Some(name) if !known.contains(name.as_str()) => {
            Err(InputError::Unresolved { kind, name: name.clone(), context: format!("check `{check}`") })
        }
        Some(_) => Ok(()),
        None if known.len() == 1 => {
            *slot = known.iter().next().cloned();
            Ok(())
        }
        None if required => Err(InputError::Ambiguous { kind, check: check.to_string(), candidates: known.len() }),
        None => Ok(()),
    }
}

impl RunSpec {
    /// Moves shorthands into the named lists, fills in implicit references
    /// and validates names, bounds and check parameters.
    pub fn normalize(mut self) -> Result<RunSpec, InputError> {
        self.ideals = take_named(self.ideal.take(), std::mem::take(&mut self.ideals), DEFAULT_IDEAL, |d| &mut d.name);
        self.modules =
            take_named(self.module.take(), std::mem::take(&mut self.modules), DEFAULT_MODULE, |d| &mut d.name);
        self.families =
            take_named(self.family.take(), std::mem::take(&mut self.families), DEFAULT_FAMILY, |d| &mut d.name);
        self.poly_ideals =
            take_named(self.poly_ideal.take(), std::mem::take(&mut self.poly_ideals), DEFAULT_POLY, |d| &mut d.name);

        let b = &self.bounds;
        if b.resolution_length == 0 || b.submodule_bound == 0 || b.offset_bound == 0 || b.degree_bound == 0 {
            return Err(InputError::Bound("bounds must be positive".into()));
        }

        let ideals = names(&self.ideals, "ideal", |d| &d.name)?;
        let modules = names(&self.modules, "module", |d| &d.name)?;
        let families = names(&self.families, "family", |d| &d.name)?;
        let polys = names(&self.poly_ideals, "poly_ideal", |d| &d.name)?;

        let needs_ring = !self.ideals.is_empty() || !self.modules.is_empty() || !self.families.is_empty();
        if needs_ring && self.ring.is_none() {
            return Err(InputError::Unresolved {
                kind: "ring",
                name: "ring".into(),
                context: "ideals, modules and families".into(),
            });
        }

        for (k, m) in self.modules.iter().enumerate() {
            let name = m.name.clone().expect("named");
            match m.kind {
                ModuleKind::Cyclic => {
                    let ideal = m.ideal.as_ref().ok_or_else(|| InputError::Missing {
                        field: "ideal",
                        context: format!("cyclic module `{name}`"),
                    })?;
                    if !ideals.contains(ideal) {
                        return Err(InputError::Unresolved {
                            kind: "ideal",
                            name: ideal.clone(),
                            context: format!("module `{name}`"),
                        });
                    }
                }
                ModuleKind::Free | ModuleKind::Quotient if m.rank.is_none() => {
                    return Err(InputError::Missing { field: "rank", context: format!("module `{name}`") });
                }
                ModuleKind::Sum => {
                    // Summands must be declared earlier so construction is one pass.
                    let earlier: BTreeSet<&String> = self.modules[..k].iter().filter_map(|d| d.name.as_ref()).collect();
                    if let Some(bad) = m.of.iter().find(|s| !earlier.contains(s)) {
                        return Err(InputError::Unresolved {
                            kind: "module",
                            name: bad.clone(),
                            context: format!("sum `{name}` (summands must be declared before the sum)"),
                        });
                    }
                }
                _ => {}
            }
        }

        for f in &mut self.families {
            let name = f.name.clone().expect("named");
            if let Some(bad) = f.modules.iter().find(|m| !modules.contains(m.as_str())) {
                return Err(InputError::Unresolved {
                    kind: "module",
                    name: bad.clone(),
                    context: format!("family `{name}`"),
                });
            }
            let needs_ideal = matches!(f.filter, FilterKind::Reduced | FilterKind::Coreduced | FilterKind::Annihilated);
            if needs_ideal {
                resolve(&mut f.ideal, &ideals, "ideal", &format!("family {name}"), true)?;
            }
            if f.max_generators == 0 && f.modules.is_empty() && !f.cyclic_sums {
                return Err(InputError::Bound(format!("family `{name}` is empty by construction")));
            }
        }

        for c in &mut self.checks {
            let params = &mut c.0;
            let info = lookup(&params.name).ok_or_else(|| InputError::UnknownCheck(params.name.clone()))?;
            let check = params.name.clone();
            for need in info.needs {
                match need {
                    Need::Ring => {
                        if self.ring.is_none() {
                            return Err(InputError::Unresolved {
                                kind: "ring",
                                name: "ring".into(),
                                context: format!("check `{check}`"),
                            });
                        }
                    }
                    Need::Ideal => resolve(&mut params.ideal, &ideals, "ideal", &check, true)?,
                    Need::Module => resolve(&mut params.module, &modules, "module", &check, true)?,
                    Need::Source => resolve(&mut params.source, &modules, "module", &check, true)?,
                    Need::Family => resolve(&mut params.family, &families, "family", &check, true)?,
                    Need::Poly => resolve(&mut params.poly_ideal, &polys, "poly_ideal", &check, true)?,
                    Need::Sequence => {
                        if params.sequence.is_empty() {
                            return Err(InputError::Missing { field: "sequence", context: format!("check `{check}`") });
                        }
                    }
                    Need::Members => {
                        let explicit = params.family.is_some() || params.module.is_some() || !params.modules.is_empty();
                        if !explicit {
                            // A single family wins over a single module.
                            if families.len() == 1 {
                                params.family = families.iter().next().cloned();
                            } else if modules.len() == 1 {
                                params.module = modules.iter().next().cloned();
                            } else {
                                return Err(InputError::Ambiguous {
                                    kind: "module or family",
                                    check,
                                    candidates: modules.len() + families.len(),
                                });
                            }
                        }
                    }
                }
            }
            let refs = [
                (&params.ideal, &ideals, "ideal"),
                (&params.module, &modules, "module"),
                (&params.source, &modules, "module"),
                (&params.family, &families, "family"),
                (&params.family_b, &families, "family"),
                (&params.poly_ideal, &polys, "poly_ideal"),
            ];
            for (slot, known, kind) in refs {
                if let Some(name) = slot {
                    if !known.contains(name) {
                        return Err(InputError::Unresolved {
                            kind,
                            name: name.clone(),
                            context: format!("check `{}`", params.name),
                        });
                    }
                }
            }
            if let Some(bad) = params.modules.iter().find(|m| !modules.contains(m.as_str())) {
                return Err(InputError::Unresolved {
                    kind: "module",
                    name: bad.clone(),
                    context: format!("check `{}`", params.name),
                });
            }
        }
        Ok(self)
    }

    /// The spec as canonical JSON, the input of the digest.
    pub fn canonical_json(&self) -> Vec<u8> {
        let mut copy = self.clone();
        copy.output = None;
        serde_json::to_vec(&copy).expect("run specs serialize")
    }
}
