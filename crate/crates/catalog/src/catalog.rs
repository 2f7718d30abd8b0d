use std::path::Path;

use k3fib_elliptic::{on_curve, parse_ratfunc, KodairaType, Poly, RatFunc, RationalModel, SectionPoint, WeierstrassModel};
use k3fib_exact::parse_rat;
use k3fib_lattice::DynkinType;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::expr;
use crate::CatalogError;

pub const CATALOG_SCHEMA: &str = "k3fib-catalog/1";

const BUILTIN: &str = include_str!("../data/catalog.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFile {
    pub schema: String,
    pub entries: Vec<EntryDoc>,
}

/// One fibration as stored on disk. Expressions are in the fibration
/// parameter, always written `t`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub ordinal: u32,
    pub parameter: String,
    pub symbol: String,
    /// a1, a2, a3, a4, a6 as printed, possibly with denominators.
    pub raw: [String; 5],
    /// Coefficients of u, low to high, for (x, y) ↦ (u²x, u³y).
    pub normalization: Vec<String>,
    pub model: ModelDoc,
    pub expected: Expected,
    #[serde(default)]
    pub points: Vec<PointDoc>,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default)]
    pub torsion_generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrization: Option<Parametrization>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub a1: Vec<String>,
    pub a2: Vec<String>,
    pub a3: Vec<String>,
    pub a4: Vec<String>,
    pub a6: Vec<String>,
}

impl ModelDoc {
    pub fn from_model(m: &WeierstrassModel) -> Self {
        let [a1, a2, a3, a4, a6] = m.coeff_strings();
        ModelDoc { a1, a2, a3, a4, a6 }
    }

    fn fields(&self) -> [(&'static str, &Vec<String>); 5] {
        [("a1", &self.a1), ("a2", &self.a2), ("a3", &self.a3), ("a4", &self.a4), ("a6", &self.a6)]
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    /// Kodaira symbols with multiplicity, e.g. "2I8".
    pub fibers: Vec<String>,
    pub reducible: Vec<String>,
    pub rank: usize,
    /// Invariant factors; empty for the trivial group.
    pub torsion: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regulator: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub name: String,
    pub x: String,
    pub y: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<String>,
}

/// Maps (x, y, t) ↦ (X, Y, Z) onto a surface given by `identity = 0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parametrization {
    #[serde(rename = "X")]
    pub x: String,
    #[serde(rename = "Y")]
    pub y: String,
    #[serde(rename = "Z")]
    pub z: String,
    pub identity: String,
    pub samples: Vec<Sample>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sample {
    pub point: String,
    pub t: String,
}

#[derive(Clone, Debug)]
pub struct NamedPoint {
    pub name: String,
    /// Coordinates on the printed model.
    pub raw: (RatFunc, RatFunc),
    /// The same point on the normalized model.
    pub point: SectionPoint,
    pub order: Option<u32>,
    pub height: Option<BigRational>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub doc: EntryDoc,
    pub model: WeierstrassModel,
    pub u: Poly,
    pub points: Vec<NamedPoint>,
    pub fibers: Vec<(u32, KodairaType)>,
    pub reducible: Vec<DynkinType>,
    pub regulator: Option<BigRational>,
}

impl CatalogEntry {
    pub fn ordinal(&self) -> u32 {
        self.doc.ordinal
    }

    /// "1-s", "24-psi".
    pub fn id(&self) -> String {
        format!("{}-{}", self.doc.ordinal, self.doc.parameter)
    }

    pub fn point(&self, name: &str) -> Option<&NamedPoint> {
        self.points.iter().find(|p| p.name == name)
    }

    /// Accepts the ordinal, the parameter name or the symbol.
    pub fn matches_id(&self, id: &str) -> bool {
        let id = id.trim();
        id == self.doc.ordinal.to_string() || id == self.doc.parameter || id == self.doc.symbol || id == self.id()
    }

    pub fn expected_torsion_order(&self) -> u64 {
        self.doc.expected.torsion.iter().product()
    }
}

/// "2I8" → (2, I8).
pub fn parse_fiber_symbol(s: &str) -> Option<(u32, KodairaType)> {
    let s = s.trim();
    let split = s.find(|c: char| !c.is_ascii_digit())?;
    let count = if split == 0 { 1 } else { s[..split].parse().ok()? };
    let k: KodairaType = s[split..].parse().ok()?;
    (count > 0).then_some((count, k))
}

/// Sorted multiset of fiber types, I0 dropped.
pub fn expand_fibers(f: &[(u32, KodairaType)]) -> Vec<KodairaType> {
    let mut out: Vec<KodairaType> =
        f.iter().flat_map(|&(c, k)| std::iter::repeat_n(k, c as usize)).filter(|k| *k != KodairaType::I(0)).collect();
    out.sort();
    out
}

fn entry_err(ordinal: u32, field: impl Into<String>, msg: impl Into<String>) -> CatalogError {
    CatalogError::Entry { ordinal, field: field.into(), msg: msg.into() }
}

pub fn normalized(raw: &[String; 5]) -> Result<(WeierstrassModel, Poly), (usize, String)> {
    let mut a: Vec<RatFunc> = Vec::with_capacity(5);
    for (i, s) in raw.iter().enumerate() {
        a.push(parse_ratfunc(s, "t").map_err(|e| (i, e.to_string()))?);
    }
    let a: [RatFunc; 5] = a.try_into().expect("five coefficients");
    Ok(RationalModel { a }.normalize())
}

fn build(doc: EntryDoc) -> Result<CatalogEntry, CatalogError> {
    let o = doc.ordinal;
    let (model, u) = normalized(&doc.raw).map_err(|(i, msg)| entry_err(o, format!("raw[{i}]"), msg))?;
    model.check_nonsingular().map_err(|_| entry_err(o, "raw", "discriminant vanishes identically"))?;
    let stored = ModelDoc::from_model(&model);
    for ((name, want), (_, have)) in doc.model.fields().iter().zip(stored.fields()) {
        if *want != have {
            return Err(entry_err(o, format!("model.{name}"), format!("stored {want:?}, raw equation gives {have:?}")));
        }
    }
    if Poly::from_strings(&doc.normalization) != Some(u.clone()) {
        return Err(entry_err(o, "normalization", format!("stored {:?}, raw equation gives {:?}", doc.normalization, u.to_strings())));
    }
    let uf = RatFunc::from(u.clone());
    let (u2, u3) = (uf.pow(2), uf.pow(3));
    let mut points = Vec::new();
    for (j, p) in doc.points.iter().enumerate() {
        let f = |s: &str, c: &str| parse_ratfunc(s, "t").map_err(|e| entry_err(o, format!("points[{j}].{c}"), e.to_string()));
        let (x, y) = (f(&p.x, "x")?, f(&p.y, "y")?);
        let point = SectionPoint::new(&x * &u2, &y * &u3);
        if !on_curve(&model, &point) {
            return Err(entry_err(o, format!("points[{j}]"), format!("{} = ({}, {}) is not on the curve", p.name, p.x, p.y)));
        }
        let height = match &p.height {
            None => None,
            Some(h) => Some(parse_rat(h).ok_or_else(|| entry_err(o, format!("points[{j}].height"), format!("bad rational {h:?}")))?),
        };
        if doc.points[..j].iter().any(|q| q.name == p.name) {
            return Err(entry_err(o, format!("points[{j}].name"), format!("duplicate name {}", p.name)));
        }
        points.push(NamedPoint { name: p.name.clone(), raw: (x, y), point, order: p.order, height });
    }
    let known = |n: &String| points.iter().any(|p| &p.name == n);
    for (field, names) in [("generators", &doc.generators), ("torsion_generators", &doc.torsion_generators)] {
        for (j, n) in names.iter().enumerate() {
            if !known(n) {
                return Err(entry_err(o, format!("{field}[{j}]"), format!("no point named {n}")));
            }
        }
    }
    let ex = &doc.expected;
    let mut fibers = Vec::new();
    for (j, s) in ex.fibers.iter().enumerate() {
        fibers
            .push(parse_fiber_symbol(s).ok_or_else(|| entry_err(o, format!("expected.fibers[{j}]"), format!("bad Kodaira symbol {s:?}")))?);
    }
    let mut reducible: Vec<DynkinType> = Vec::new();
    for (j, s) in ex.reducible.iter().enumerate() {
        reducible.push(s.parse().map_err(|_| entry_err(o, format!("expected.reducible[{j}]"), format!("bad Dynkin label {s:?}")))?);
    }
    reducible.sort();
    let regulator = match &ex.regulator {
        None => None,
        Some(r) => Some(parse_rat(r).ok_or_else(|| entry_err(o, "expected.regulator", format!("bad rational {r:?}")))?),
    };

    // internal consistency of the expectations
    let kinds = expand_fibers(&fibers);
    let euler: u32 = kinds.iter().map(|k| k.euler_number()).sum();
    if euler != 24 {
        return Err(entry_err(o, "expected.fibers", format!("Euler numbers sum to {euler}, not 24")));
    }
    let mut roots: Vec<DynkinType> = kinds.iter().filter_map(|k| k.root_type()).map(|s| s.parse().expect("root label")).collect();
    roots.sort();
    if roots != reducible {
        return Err(entry_err(o, "expected.reducible", "does not match the root types of expected.fibers"));
    }
    let root_rank: usize = reducible.iter().map(|t| t.rank()).sum();
    if ex.rank + root_rank != 18 {
        return Err(entry_err(o, "expected.rank", format!("rank {} + root rank {root_rank} ≠ 18", ex.rank)));
    }
    if doc.generators.len() != ex.rank {
        return Err(entry_err(o, "generators", format!("{} generators for rank {}", doc.generators.len(), ex.rank)));
    }
    let tors: u64 =
        doc.torsion_generators.iter().map(|n| points.iter().find(|p| &p.name == n).and_then(|p| p.order).unwrap_or(0) as u64).product();
    if tors != ex.torsion.iter().product::<u64>() {
        return Err(entry_err(o, "torsion_generators", "generator orders do not multiply to the expected torsion order"));
    }
    if let Some(par) = &doc.parametrization {
        for (field, s) in [("X", &par.x), ("Y", &par.y), ("Z", &par.z)] {
            expr::check(s, &["x", "y", "t"]).map_err(|e| entry_err(o, format!("parametrization.{field}"), e.to_string()))?;
        }
        expr::check(&par.identity, &["X", "Y", "Z"]).map_err(|e| entry_err(o, "parametrization.identity", e.to_string()))?;
        for (j, s) in par.samples.iter().enumerate() {
            if !points.iter().any(|p| p.name == s.point) {
                return Err(entry_err(o, format!("parametrization.samples[{j}].point"), format!("no point named {}", s.point)));
            }
            if parse_rat(&s.t).is_none() {
                return Err(entry_err(o, format!("parametrization.samples[{j}].t"), format!("bad rational {:?}", s.t)));
            }
        }
    }
    Ok(CatalogEntry { doc, model, u, points, fibers, reducible, regulator })
}

/// Parses catalog text; errors carry the entry ordinal and field path.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: CatalogFile =
        serde_path_to_error::deserialize(de).map_err(|e| CatalogError::Json { path: e.path().to_string(), msg: e.inner().to_string() })?;
    if file.schema != CATALOG_SCHEMA {
        return Err(CatalogError::Schema(format!("schema {:?}, expected {CATALOG_SCHEMA:?}", file.schema)));
    }
    if file.entries.len() != 30 {
        return Err(CatalogError::Count(file.entries.len()));
    }
    for (i, e) in file.entries.iter().enumerate() {
        if e.ordinal as usize != i + 1 {
            return Err(entry_err(e.ordinal, format!("entries[{i}].ordinal"), format!("expected ordinal {}", i + 1)));
        }
        if file.entries[..i].iter().any(|f| f.parameter == e.parameter) {
            return Err(entry_err(e.ordinal, "parameter", format!("duplicate parameter {}", e.parameter)));
        }
    }
    file.entries.into_iter().map(build).collect()
}

/// The built-in catalog, or the file at `path`.
pub fn load_catalog(path: Option<&Path>) -> Result<Vec<CatalogEntry>, CatalogError> {
    match path {
        None => parse_catalog(BUILTIN),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CatalogError::Io { path: p.display().to_string(), msg: e.to_string() })?;
            parse_catalog(&text)
        }
    }
}

pub fn builtin_catalog_text() -> &'static str {
    BUILTIN
}
