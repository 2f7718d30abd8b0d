use k3fib_elliptic::{add, determinant, euler_sum, fiber_symbols, torsion_order, KodairaFiber, Place, Poly, SectionPoint, Surface};
use k3fib_exact::{fmt_rat, parse_rat, rat};
use k3fib_lattice::DynkinType;
use k3fib_nishiyama::{FibrationRecord, FIBRATION_TABLE};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::catalog::{expand_fibers, CatalogEntry, Parametrization, Sample};
use crate::expr;

pub const REPORT_SCHEMA: &str = "k3fib-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberRow {
    pub place: String,
    pub kodaira: String,
    pub root_type: Option<String>,
    pub euler: u32,
    pub degree: usize,
    pub reminimalized: bool,
}

impl From<&KodairaFiber> for FiberRow {
    fn from(f: &KodairaFiber) -> Self {
        FiberRow {
            place: f.place.label(),
            kodaira: f.kodaira_type.to_string(),
            root_type: f.root_type.clone(),
            euler: f.euler_number,
            degree: f.multiplicity,
            reminimalized: f.reminimalized,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCheck {
    pub computed: Vec<FiberRow>,
    pub symbols: Vec<String>,
    pub expected: Vec<String>,
    pub euler_sum: u32,
    pub reducible: Vec<String>,
    pub expected_reducible: Vec<String>,
    pub ok: bool,
}

/// A fibration table record picked by fiber multiset, rank and torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    /// 1-based position in the fibration table.
    pub row: usize,
    pub host: String,
    pub embedding: String,
    pub fibers: String,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableMatch {
    pub status: MatchStatus,
    pub matched: Option<TableRow>,
    /// Rows with the same reducible fibers, before rank and torsion are compared.
    pub same_fibers: Vec<usize>,
    pub shioda_tate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchStatus {
    Unique,
    None,
    Ambiguous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    pub point: String,
    pub expected: u32,
    pub computed: Option<u32>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCheck {
    pub expected: Vec<u64>,
    pub points: Vec<OrderCheck>,
    /// Order and exponent of the group generated by the torsion generators.
    pub generated_order: u64,
    pub generated_exponent: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightCheck {
    pub point: String,
    pub expected: Option<String>,
    pub computed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegulatorCheck {
    pub generators: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub computed: String,
    pub expected: Option<String>,
    pub ok: bool,
}

/// det(T) · R / |tors|² against 8.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantCheck {
    pub det_trivial: String,
    pub regulator: String,
    pub torsion_order: u64,
    pub value: String,
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpotStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleResult {
    pub point: String,
    pub t: String,
    pub status: SpotStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub status: SpotStatus,
    pub samples: Vec<SampleResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub ordinal: u32,
    pub parameter: String,
    pub symbol: String,
    pub model: [String; 5],
    pub fibers: FiberCheck,
    pub table: TableMatch,
    pub torsion: TorsionCheck,
    pub heights: Vec<HeightCheck>,
    pub regulator: RegulatorCheck,
    pub discriminant: DiscriminantCheck,
    pub parametrization: SpotCheck,
    pub findings: Vec<Finding>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bijection {
    pub ok: bool,
    pub unmatched_rows: Vec<usize>,
    pub repeated_rows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub bijection: Option<Bijection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema: String,
    pub entries: Vec<EntryReport>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.summary.failed == 0 && self.summary.bijection.as_ref().is_none_or(|b| b.ok)
    }
}

fn table_row(records: &[FibrationRecord], i: usize) -> TableRow {
    let r = &records[i];
    let row = FIBRATION_TABLE.iter().position(|t| t.host == r.host && t.fiber_types() == r.reducible_fibers).map_or(0, |k| k + 1);
    TableRow {
        row,
        host: r.host.clone(),
        embedding: r.embedding.clone(),
        fibers: r.fibers.clone(),
        rank: r.mw_rank,
        torsion: r.mw_torsion.clone(),
    }
}

/// Finds the enumerated fibration with these reducible fibers, rank and
/// torsion. I1 and II fibers carry no roots and play no part.
pub fn find_table_row(fibers: &[DynkinType], rank: usize, torsion: &[u64], records: &[FibrationRecord]) -> Result<TableRow, TableMatch> {
    let mut f = fibers.to_vec();
    f.sort();
    let same: Vec<usize> = (0..records.len()).filter(|&i| records[i].reducible_fibers == f).collect();
    let hits: Vec<usize> = same.iter().copied().filter(|&i| records[i].mw_rank == rank && records[i].mw_torsion == torsion).collect();
    let root_rank: usize = f.iter().map(|t| t.rank()).sum();
    match hits.as_slice() {
        [i] => Ok(table_row(records, *i)),
        _ => Err(TableMatch {
            status: if hits.is_empty() { MatchStatus::None } else { MatchStatus::Ambiguous },
            matched: None,
            same_fibers: same.iter().map(|&i| table_row(records, i).row).collect(),
            shioda_tate: rank + root_rank == 18,
        }),
    }
}

fn kodaira_counts(fs: &[KodairaFiber]) -> Vec<k3fib_elliptic::KodairaType> {
    let mut out: Vec<_> = fs.iter().flat_map(|f| std::iter::repeat_n(f.kodaira_type, f.multiplicity)).collect();
    out.sort();
    out
}

fn computed_reducible(fs: &[KodairaFiber]) -> Vec<DynkinType> {
    let mut out: Vec<DynkinType> = fs
        .iter()
        .flat_map(|f| std::iter::repeat_n(f.root_type.clone(), f.multiplicity))
        .flatten()
        .map(|s| s.parse().expect("root label"))
        .collect();
    out.sort();
    out
}

fn labels(ts: &[DynkinType]) -> Vec<String> {
    ts.iter().map(|t| t.to_string()).collect()
}

/// Elements of the subgroup generated by `gens`, assuming each has finite order.
fn generated_group(e: &CatalogEntry, gens: &[&SectionPoint]) -> Vec<SectionPoint> {
    let mut group = vec![SectionPoint::Zero];
    for g in gens {
        let mut multiples = vec![SectionPoint::Zero];
        let mut q = (*g).clone();
        while !q.is_zero() && multiples.len() <= 64 {
            multiples.push(q.clone());
            q = add(&e.model, &q, g);
        }
        let mut next = Vec::new();
        for a in &group {
            for m in &multiples {
                let s = add(&e.model, a, m);
                if !next.contains(&s) {
                    next.push(s);
                }
            }
        }
        group = next;
    }
    group
}

fn check_torsion(e: &CatalogEntry, findings: &mut Vec<Finding>) -> TorsionCheck {
    let mut points = Vec::new();
    for p in e.points.iter().filter(|p| p.order.is_some()) {
        let want = p.order.unwrap();
        let got = torsion_order(&e.model, &p.point, 12);
        let ok = got == Some(want);
        if !ok {
            findings.push(Finding { check: "torsion".into(), detail: format!("{} has order {:?}, expected {want}", p.name, got) });
        }
        points.push(OrderCheck { point: p.name.clone(), expected: want, computed: got, ok });
    }
    let gens: Vec<&SectionPoint> = e.doc.torsion_generators.iter().filter_map(|n| e.point(n)).map(|p| &p.point).collect();
    let all_finite = gens.iter().all(|g| torsion_order(&e.model, g, 12).is_some());
    let (order, exponent) = if all_finite {
        let group = generated_group(e, &gens);
        let exp = group.iter().map(|p| torsion_order(&e.model, p, 12).unwrap_or(1) as u64).max().unwrap_or(1);
        (group.len() as u64, exp)
    } else {
        (0, 0)
    };
    let expected = e.doc.expected.torsion.clone();
    let ok = points.iter().all(|p| p.ok) && order == e.expected_torsion_order() && exponent == *expected.last().unwrap_or(&1);
    if order != e.expected_torsion_order() || exponent != *expected.last().unwrap_or(&1) {
        findings.push(Finding {
            check: "torsion".into(),
            detail: format!("generators give a group of order {order} and exponent {exponent}, expected {expected:?}"),
        });
    }
    TorsionCheck { expected, points, generated_order: order, generated_exponent: exponent, ok }
}

fn run_sample(e: &CatalogEntry, par: &Parametrization, disc: &Poly, s: &Sample) -> SampleResult {
    let result = |status, detail: String| SampleResult { point: s.point.clone(), t: s.t.clone(), status, detail };
    let t0 = parse_rat(&s.t).expect("checked on load");
    let p = e.point(&s.point).expect("checked on load");
    if disc.eval(&t0).is_zero() || e.u.eval(&t0).is_zero() {
        return result(SpotStatus::Skipped, "singular fiber".into());
    }
    let (Some(x0), Some(y0)) = (p.raw.0.eval(&t0), p.raw.1.eval(&t0)) else {
        return result(SpotStatus::Skipped, "point has a pole".into());
    };
    let at = format!("({}, {}) at t = {}", fmt_rat(&x0), fmt_rat(&y0), s.t);
    let env = expr::env(&[("x", &x0), ("y", &y0), ("t", &t0)]);
    let mut xyz = Vec::new();
    for (name, f) in [("X", &par.x), ("Y", &par.y), ("Z", &par.z)] {
        match expr::eval(f, &env) {
            Ok(v) => xyz.push(v),
            Err(expr::EvalError::Pole) => return result(SpotStatus::Skipped, format!("{at}: the denominator of {name} vanishes")),
            Err(err) => return result(SpotStatus::Fail, format!("{at}: {name}: {err}")),
        }
    }
    let shown = format!("{at} ↦ ({}, {}, {})", fmt_rat(&xyz[0]), fmt_rat(&xyz[1]), fmt_rat(&xyz[2]));
    let surf = expr::env(&[("X", &xyz[0]), ("Y", &xyz[1]), ("Z", &xyz[2])]);
    match expr::eval(&par.identity, &surf) {
        Ok(v) if v.is_zero() => result(SpotStatus::Pass, shown),
        Ok(v) => result(SpotStatus::Fail, format!("{shown}: identity gives {}", fmt_rat(&v))),
        Err(expr::EvalError::Pole) => result(SpotStatus::Skipped, format!("{shown}: a coordinate is zero")),
        Err(err) => result(SpotStatus::Fail, format!("{shown}: {err}")),
    }
}

/// Maps each sample through the parametrization and evaluates the surface
/// identity. Samples on singular fibers or at poles of the maps are skipped.
pub fn spot_check_parametrization(e: &CatalogEntry) -> SpotCheck {
    let Some(par) = &e.doc.parametrization else {
        return SpotCheck { status: SpotStatus::Skipped, samples: Vec::new() };
    };
    let disc = e.model.discriminant();
    let samples: Vec<SampleResult> = par.samples.iter().map(|s| run_sample(e, par, &disc, s)).collect();
    let status = if samples.iter().any(|r| r.status == SpotStatus::Fail) {
        SpotStatus::Fail
    } else if samples.iter().any(|r| r.status == SpotStatus::Pass) {
        SpotStatus::Pass
    } else {
        SpotStatus::Skipped
    };
    SpotCheck { status, samples }
}

fn error_report(e: &CatalogEntry, what: String) -> EntryReport {
    let empty = |ok| FiberCheck {
        computed: Vec::new(),
        symbols: Vec::new(),
        expected: e.doc.expected.fibers.clone(),
        euler_sum: 0,
        reducible: Vec::new(),
        expected_reducible: labels(&e.reducible),
        ok,
    };
    EntryReport {
        ordinal: e.doc.ordinal,
        parameter: e.doc.parameter.clone(),
        symbol: e.doc.symbol.clone(),
        model: e.model.coeffs().map(|a| a.to_string()),
        fibers: empty(false),
        table: TableMatch { status: MatchStatus::None, matched: None, same_fibers: Vec::new(), shioda_tate: false },
        torsion: TorsionCheck {
            expected: e.doc.expected.torsion.clone(),
            points: Vec::new(),
            generated_order: 0,
            generated_exponent: 0,
            ok: false,
        },
        heights: Vec::new(),
        regulator: RegulatorCheck { generators: Vec::new(), matrix: Vec::new(), computed: String::new(), expected: None, ok: false },
        discriminant: DiscriminantCheck {
            det_trivial: String::new(),
            regulator: String::new(),
            torsion_order: 0,
            value: String::new(),
            ok: false,
        },
        parametrization: SpotCheck { status: SpotStatus::Skipped, samples: Vec::new() },
        findings: vec![Finding { check: "elliptic".into(), detail: what }],
        ok: false,
    }
}

/// Runs every check on one entry. Failed checks become findings.
pub fn verify_entry(e: &CatalogEntry, records: &[FibrationRecord]) -> EntryReport {
    let surface = match Surface::new(e.model.clone()) {
        Ok(s) => s,
        Err(err) => return error_report(e, err.to_string()),
    };
    let mut findings = Vec::new();
    let fs = surface.fibers();

    // fibers
    let computed_kinds = kodaira_counts(&fs);
    let expected_kinds = expand_fibers(&e.fibers);
    let reducible = computed_reducible(&fs);
    let euler = euler_sum(&fs);
    if computed_kinds != expected_kinds {
        findings.push(Finding {
            check: "fibers".into(),
            detail: format!("computed {:?}, expected {:?}", fiber_symbols(&fs), e.doc.expected.fibers),
        });
    }
    if euler != 24 {
        findings.push(Finding { check: "euler".into(), detail: format!("Euler numbers sum to {euler}") });
    }
    if reducible != e.reducible {
        findings.push(Finding { check: "reducible".into(), detail: format!("computed {:?}", labels(&reducible)) });
    }
    let fibers = FiberCheck {
        computed: fs.iter().map(FiberRow::from).collect(),
        symbols: fiber_symbols(&fs),
        expected: e.doc.expected.fibers.clone(),
        euler_sum: euler,
        reducible: labels(&reducible),
        expected_reducible: labels(&e.reducible),
        ok: computed_kinds == expected_kinds && euler == 24 && reducible == e.reducible,
    };

    // lattice side
    let ex = &e.doc.expected;
    let root_rank: usize = reducible.iter().map(|t| t.rank()).sum();
    let table = match find_table_row(&reducible, ex.rank, &ex.torsion, records) {
        Ok(row) => {
            let same =
                (0..records.len()).filter(|&i| records[i].reducible_fibers == reducible).map(|i| table_row(records, i).row).collect();
            TableMatch { status: MatchStatus::Unique, matched: Some(row), same_fibers: same, shioda_tate: ex.rank + root_rank == 18 }
        }
        Err(m) => {
            findings.push(Finding {
                check: "table".into(),
                detail: format!("{:?} match for {:?}, rank {}, torsion {:?}", m.status, labels(&reducible), ex.rank, ex.torsion),
            });
            m
        }
    };
    if !table.shioda_tate {
        findings.push(Finding { check: "shioda_tate".into(), detail: format!("rank {} + root rank {root_rank} ≠ 18", ex.rank) });
    }

    let torsion = check_torsion(e, &mut findings);

    // heights
    let mut heights = Vec::new();
    for p in &e.points {
        let h = match surface.height(&p.point) {
            Ok(h) => h,
            Err(err) => {
                findings.push(Finding { check: "height".into(), detail: format!("{}: {err}", p.name) });
                continue;
            }
        };
        let ok = match (&p.height, p.order) {
            (Some(want), _) => &h == want,
            (None, Some(_)) => h.is_zero(),
            (None, None) => h.is_positive(),
        };
        if !ok {
            findings.push(Finding { check: "height".into(), detail: format!("{} has height {}", p.name, fmt_rat(&h)) });
        }
        heights.push(HeightCheck { point: p.name.clone(), expected: p.height.as_ref().map(fmt_rat), computed: fmt_rat(&h), ok });
    }

    // regulator of the listed generators
    let gens: Vec<SectionPoint> = e.doc.generators.iter().filter_map(|n| e.point(n)).map(|p| p.point.clone()).collect();
    let regulator = match surface.height_matrix(&gens) {
        Ok(m) => {
            let det = determinant(&m);
            let ok = e.regulator.as_ref().is_none_or(|r| r == &det) && (gens.is_empty() || det.is_positive());
            if !ok {
                findings.push(Finding { check: "regulator".into(), detail: format!("det = {}", fmt_rat(&det)) });
            }
            RegulatorCheck {
                generators: e.doc.generators.clone(),
                matrix: m.iter().map(|r| r.iter().map(fmt_rat).collect()).collect(),
                computed: fmt_rat(&det),
                expected: e.regulator.as_ref().map(fmt_rat),
                ok,
            }
        }
        Err(err) => {
            findings.push(Finding { check: "regulator".into(), detail: err.to_string() });
            RegulatorCheck { generators: e.doc.generators.clone(), matrix: Vec::new(), computed: String::new(), expected: None, ok: false }
        }
    };

    // det T · R / |tors|² = 8
    let det_t: BigInt = reducible.iter().map(|t| BigInt::from(t.det())).product();
    let reg = parse_rat(&regulator.computed).unwrap_or_else(|| rat(0));
    let tors = torsion.generated_order;
    let value = if tors == 0 { BigRational::zero() } else { BigRational::from_integer(det_t.clone()) * &reg / rat((tors * tors) as i64) };
    let discriminant_ok = value == rat(8);
    if !discriminant_ok {
        findings.push(Finding { check: "discriminant".into(), detail: format!("det T · R / |tors|² = {}", fmt_rat(&value)) });
    }
    let discriminant = DiscriminantCheck {
        det_trivial: det_t.to_string(),
        regulator: regulator.computed.clone(),
        torsion_order: tors,
        value: fmt_rat(&value),
        ok: discriminant_ok,
    };

    let parametrization = spot_check_parametrization(e);
    if parametrization.status == SpotStatus::Fail {
        findings.push(Finding { check: "parametrization".into(), detail: "surface identity violated".into() });
    }

    let ok = findings.is_empty();
    EntryReport {
        ordinal: e.doc.ordinal,
        parameter: e.doc.parameter.clone(),
        symbol: e.doc.symbol.clone(),
        model: e.model.coeffs().map(|a| a.to_string()),
        fibers,
        table,
        torsion,
        heights,
        regulator,
        discriminant,
        parametrization,
        findings,
        ok,
    }
}

/// Checks that the matched rows cover the fibration table exactly once.
pub fn bijection(reports: &[EntryReport]) -> Bijection {
    let rows: Vec<usize> = reports.iter().filter_map(|r| r.table.matched.as_ref().map(|m| m.row)).collect();
    let unmatched: Vec<usize> = (1..=FIBRATION_TABLE.len()).filter(|i| !rows.contains(i)).collect();
    let mut repeated: Vec<usize> = (1..=FIBRATION_TABLE.len()).filter(|i| rows.iter().filter(|r| *r == i).count() > 1).collect();
    repeated.dedup();
    Bijection {
        ok: unmatched.is_empty() && repeated.is_empty() && rows.len() == reports.len(),
        unmatched_rows: unmatched,
        repeated_rows: repeated,
    }
}

pub fn assemble(entries: Vec<EntryReport>, with_bijection: bool) -> VerificationReport {
    let failures: Vec<String> = entries.iter().filter(|r| !r.ok).map(|r| format!("{}-{}", r.ordinal, r.parameter)).collect();
    let summary = Summary {
        entries: entries.len(),
        passed: entries.len() - failures.len(),
        failed: failures.len(),
        failures,
        bijection: with_bijection.then(|| bijection(&entries)),
    };
    VerificationReport { schema: REPORT_SCHEMA.into(), entries, summary }
}

/// Verifies the given entries. `jobs = 1` runs sequentially, `jobs = 0` uses
/// the default thread pool.
pub fn verify_entries(entries: &[CatalogEntry], records: &[FibrationRecord], jobs: usize, with_bijection: bool) -> VerificationReport {
    assemble(run(entries, records, jobs), with_bijection)
}

#[cfg(feature = "parallel")]
fn run(entries: &[CatalogEntry], records: &[FibrationRecord], jobs: usize) -> Vec<EntryReport> {
    use rayon::prelude::*;
    if jobs == 1 {
        return entries.iter().map(|e| verify_entry(e, records)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| entries.par_iter().map(|e| verify_entry(e, records)).collect())
}

#[cfg(not(feature = "parallel"))]
fn run(entries: &[CatalogEntry], records: &[FibrationRecord], _jobs: usize) -> Vec<EntryReport> {
    entries.iter().map(|e| verify_entry(e, records)).collect()
}

/// Places of the singular fibers met by a section off the identity component.
pub fn components_met(surface: &Surface, p: &SectionPoint) -> Vec<(Place, u32)> {
    surface
        .fibers()
        .iter()
        .filter(|f| f.kodaira_type.is_reducible())
        .filter_map(|f| surface.component_index(&f.place, p).ok().map(|j| (f.place.clone(), j)))
        .filter(|(_, j)| *j != 0)
        .collect()
}
