//! Plain-text and markdown renderings. JSON output is the serde form of the
//! same structures.

use std::fmt::Write;

use k3fib_elliptic::{factor, LocalTerm, Poly};
use k3fib_exact::fmt_rat;
use k3fib_niemeier::{group_label, NiemeierLattice, ValidationReport};
use k3fib_nishiyama::FibrationRecord;
use serde::Serialize;

use crate::verify::{EntryReport, FiberRow, SpotStatus, VerificationReport};

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn md_row(out: &mut String, cells: &[String]) {
    let _ = writeln!(out, "| {} |", cells.join(" | "));
}

fn md_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    md_row(&mut out, &header.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    md_row(&mut out, &header.iter().map(|_| "---".to_string()).collect::<Vec<_>>());
    for r in rows {
        md_row(&mut out, r);
    }
    out
}

fn spot(s: SpotStatus) -> &'static str {
    match s {
        SpotStatus::Pass => "pass",
        SpotStatus::Fail => "FAIL",
        SpotStatus::Skipped => "-",
    }
}

fn torsion(t: &[u64]) -> String {
    group_label(t)
}

/// "−2 · t · (t − 1)^2" style product of the irreducible factors.
pub fn factored(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let f = factor(p);
    let mut parts = Vec::new();
    if !(f.unit == num_traits::One::one()) || f.factors.is_empty() {
        parts.push(fmt_rat(&f.unit));
    }
    for (g, e) in &f.factors {
        let s = g.display("t");
        let s = if g.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() > 1 { format!("({s})") } else { s };
        parts.push(if *e == 1 { s } else { format!("{s}^{e}") });
    }
    parts.join(" · ")
}

fn entry_line(r: &EntryReport) -> String {
    let row = r.table.matched.as_ref().map_or("-".to_string(), |m| format!("row {} ({}; {})", m.row, m.host, m.embedding));
    format!(
        "{:>2}-{:<6} {}  fibers {} [{}]  table {}  torsion {}  det T·R/|tors|² = {} [{}]  map {}",
        r.ordinal,
        r.parameter,
        pass(r.ok),
        r.fibers.symbols.join(" "),
        pass(r.fibers.ok),
        row,
        pass(r.torsion.ok),
        r.discriminant.value,
        pass(r.discriminant.ok),
        spot(r.parametrization.status),
    )
}

pub fn verification_text(rep: &VerificationReport) -> String {
    let mut out = String::new();
    for r in &rep.entries {
        let _ = writeln!(out, "{}", entry_line(r));
        for f in &r.findings {
            let _ = writeln!(out, "      {}: {}", f.check, f.detail);
        }
    }
    let s = &rep.summary;
    let _ = writeln!(out, "{} entries, {} passed, {} failed", s.entries, s.passed, s.failed);
    if let Some(b) = &s.bijection {
        let _ =
            writeln!(out, "table bijection: {} (unmatched rows {:?}, repeated rows {:?})", pass(b.ok), b.unmatched_rows, b.repeated_rows);
    }
    out
}

pub fn verification_markdown(rep: &VerificationReport) -> String {
    let rows: Vec<Vec<String>> = rep
        .entries
        .iter()
        .map(|r| {
            vec![
                format!("{}-{}", r.ordinal, r.symbol),
                r.fibers.symbols.join(", "),
                r.fibers.reducible.join(" "),
                r.table.matched.as_ref().map_or("-".into(), |m| format!("{} ({})", m.row, m.host)),
                r.table.matched.as_ref().map_or("-".into(), |m| m.rank.to_string()),
                torsion(&r.torsion.expected),
                r.heights.iter().map(|h| format!("{}: {}", h.point, h.computed)).collect::<Vec<_>>().join(", "),
                r.regulator.computed.clone(),
                r.discriminant.value.clone(),
                spot(r.parametrization.status).into(),
                pass(r.ok).into(),
            ]
        })
        .collect();
    let mut out = md_table(
        &[
            "entry",
            "singular fibers",
            "reducible",
            "table row",
            "rank",
            "torsion",
            "heights",
            "regulator",
            "det T · R / #tors²",
            "map",
            "status",
        ],
        &rows,
    );
    let s = &rep.summary;
    let _ = writeln!(out, "\n{} entries, {} passed, {} failed.", s.entries, s.passed, s.failed);
    let failing: Vec<&EntryReport> = rep.entries.iter().filter(|r| !r.ok).collect();
    if !failing.is_empty() {
        let _ = writeln!(out, "\n### Findings\n");
        for r in failing {
            for f in &r.findings {
                let _ = writeln!(out, "- {}-{} {}: {}", r.ordinal, r.parameter, f.check, f.detail);
            }
        }
    }
    out
}

pub fn records_text(rs: &[FibrationRecord]) -> String {
    let mut out = String::new();
    for (i, r) in rs.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>2}  {:<9} {:<24} {:<16} rank {}  torsion {}",
            i + 1,
            r.host,
            r.embedding,
            r.fibers,
            r.mw_rank,
            r.torsion_label()
        );
    }
    let hist: Vec<usize> = (0..=2).map(|k| rs.iter().filter(|r| r.mw_rank == k).count()).collect();
    let _ = writeln!(out, "{} fibrations; ranks 0/1/2: {}/{}/{}", rs.len(), hist[0], hist[1], hist[2]);
    out
}

pub fn records_markdown(rs: &[FibrationRecord]) -> String {
    let rows: Vec<Vec<String>> = rs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![(i + 1).to_string(), r.host.clone(), r.embedding.clone(), r.fibers.clone(), r.mw_rank.to_string(), r.torsion_label()]
        })
        .collect();
    md_table(&["#", "L_root", "embedding", "reducible fibers", "rank", "torsion"], &rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct NiemeierRow {
    pub id: String,
    pub roots: String,
    pub root_rank: usize,
    pub glue_group: String,
    pub glue_data: bool,
}

impl From<&NiemeierLattice> for NiemeierRow {
    fn from(n: &NiemeierLattice) -> Self {
        NiemeierRow {
            id: n.id.clone(),
            roots: n.root_label(),
            root_rank: n.root_rank(),
            glue_group: n.glue_group_label(),
            glue_data: n.has_glue_data(),
        }
    }
}

pub fn niemeier_text(rows: &[NiemeierRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(
            out,
            "{:<10} {:<28} rank {:>2}  glue {:<16} {}",
            r.id,
            r.roots,
            r.root_rank,
            r.glue_group,
            if r.glue_data { "glue data" } else { "" }
        );
    }
    out
}

pub fn niemeier_markdown(rows: &[NiemeierRow]) -> String {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                r.roots.clone(),
                r.root_rank.to_string(),
                r.glue_group.clone(),
                if r.glue_data { "yes".into() } else { "no".into() },
            ]
        })
        .collect();
    md_table(&["id", "root system", "rank", "L/L_root", "glue data"], &rows)
}

pub fn validation_text(rs: &[ValidationReport]) -> String {
    let mut out = String::new();
    for r in rs {
        let _ = writeln!(
            out,
            "{:<10} {}  rank {} det {} even {}  roots {} ({} roots)  glue {}",
            r.id,
            pass(r.ok),
            r.rank,
            r.det,
            r.even,
            r.computed_roots,
            r.root_count,
            r.computed_glue_group.join(" x "),
        );
    }
    out
}

pub fn validation_markdown(rs: &[ValidationReport]) -> String {
    let rows: Vec<Vec<String>> = rs
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                r.rank.to_string(),
                r.det.clone(),
                r.even.to_string(),
                r.declared_roots.clone(),
                r.computed_roots.clone(),
                r.glue_order.to_string(),
                pass(r.ok).into(),
            ]
        })
        .collect();
    md_table(&["id", "rank", "det", "even", "declared roots", "computed roots", "|L/L_root|", "status"], &rows)
}

/// One model: its fibers and the sections in the catalog.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub entry: Option<String>,
    pub model: [String; 5],
    pub discriminant: String,
    pub fibers: Vec<FiberRow>,
    pub symbols: Vec<String>,
    pub euler_sum: u32,
    pub reducible: Vec<String>,
    pub points: Vec<PointAnalysis>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointAnalysis {
    pub name: String,
    pub x: String,
    pub y: String,
    pub order: Option<u32>,
    pub height: String,
    /// (place, component) for components other than the identity.
    pub components: Vec<(String, u32)>,
    pub local_terms: Vec<LocalTerm>,
}

pub fn analysis_text(a: &Analysis) -> String {
    let mut out = String::new();
    if let Some(e) = &a.entry {
        let _ = writeln!(out, "entry {e}");
    }
    for (name, c) in ["a1", "a2", "a3", "a4", "a6"].iter().zip(&a.model) {
        let _ = writeln!(out, "{name} = {c}");
    }
    let _ = writeln!(out, "Δ = {}", a.discriminant);
    for f in &a.fibers {
        let _ = writeln!(
            out,
            "  {:<16} {:<5} {:<4} e = {}{}",
            f.place,
            f.kodaira,
            f.root_type.clone().unwrap_or_default(),
            f.euler,
            if f.reminimalized { "  (reminimalized)" } else { "" }
        );
    }
    let _ = writeln!(out, "fibers {}  Euler sum {}  reducible {}", a.symbols.join(" "), a.euler_sum, a.reducible.join(" "));
    for p in &a.points {
        let order = p.order.map_or("infinite".to_string(), |o| o.to_string());
        let comps: Vec<String> = p.components.iter().map(|(pl, j)| format!("{pl}:{j}")).collect();
        let _ = writeln!(out, "  {} = ({}, {})  order {order}  height {}  components [{}]", p.name, p.x, p.y, p.height, comps.join(", "));
    }
    out
}

pub fn analysis_markdown(a: &Analysis) -> String {
    let mut out = String::new();
    if let Some(e) = &a.entry {
        let _ = writeln!(out, "### {e}\n");
    }
    let _ = writeln!(out, "Δ = {}\n", a.discriminant);
    let rows: Vec<Vec<String>> = a
        .fibers
        .iter()
        .map(|f| {
            vec![f.place.clone(), f.kodaira.clone(), f.root_type.clone().unwrap_or_default(), f.euler.to_string(), f.degree.to_string()]
        })
        .collect();
    out.push_str(&md_table(&["place", "Kodaira", "root type", "Euler", "degree"], &rows));
    if !a.points.is_empty() {
        out.push('\n');
        let rows: Vec<Vec<String>> = a
            .points
            .iter()
            .map(|p| vec![p.name.clone(), format!("({}, {})", p.x, p.y), p.order.map_or("∞".into(), |o| o.to_string()), p.height.clone()])
            .collect();
        out.push_str(&md_table(&["section", "(x, y)", "order", "height"], &rows));
    }
    out
}
