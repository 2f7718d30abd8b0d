//! `k3fib`: exit 0 on success, 1 when a check fails, 2 on usage or IO errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use k3fib_elliptic::{torsion_order, RatFunc, SectionPoint, Surface};
use k3fib_exact::fmt_rat;
use k3fib_niemeier::{all_niemeier, find, realize, validate, HOST_ORDER};
use k3fib_nishiyama::{candidate_embeddings, enumerate_all_with, frame, mw_rank, mw_torsion, record};
use serde::Serialize;

use crate::catalog::{load_catalog, normalized, CatalogEntry};
use crate::report::{self, Analysis, NiemeierRow, PointAnalysis};
use crate::verify::{components_met, verify_entries, FiberRow};

#[derive(Parser, Debug)]
#[command(name = "k3fib", version, about = "Elliptic fibrations of the K3 surface with transcendental lattice diag(2, 4)")]
struct Cli {
    #[command(flatten)]
    out: OutputArgs,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Machine-readable JSON.
    #[arg(long, global = true, conflicts_with = "markdown")]
    json: bool,
    /// GitHub-flavored markdown tables.
    #[arg(long, global = true)]
    markdown: bool,
    /// Worker threads; 1 runs sequentially, 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Catalog file instead of the built-in one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Niemeier lattices.
    #[command(subcommand)]
    Niemeier(NiemeierCmd),
    /// Fibrations from embeddings of D5 + A1.
    #[command(subcommand)]
    Nishiyama(NishiyamaCmd),
    /// Weierstrass models.
    #[command(subcommand)]
    Elliptic(EllipticCmd),
    /// Check catalog entries against both pipelines.
    Verify {
        /// `all`, an ordinal, or a parameter name.
        target: String,
    },
}

#[derive(Subcommand, Debug)]
enum NiemeierCmd {
    /// The 24 Niemeier lattices.
    List,
    /// Realize and check the hosts that carry glue data.
    Validate { id: Option<String> },
}

#[derive(Subcommand, Debug)]
enum NishiyamaCmd {
    /// All fibrations, in table order.
    Enumerate,
    /// Frames of the embeddings into one host.
    Frame { host: String },
}

#[derive(Subcommand, Debug)]
enum EllipticCmd {
    /// Fibers, sections and heights of a catalog entry or of a model.
    Analyze {
        entry: Option<String>,
        /// a1 a2 a3 a4 a6 as expressions in t.
        #[arg(long, num_args = 5, value_names = ["A1", "A2", "A3", "A4", "A6"], allow_hyphen_values = true, conflicts_with = "entry")]
        model: Option<Vec<String>>,
    },
    /// Heights with their local terms; `--point X Y` on the printed model.
    Height {
        entry: String,
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
        point: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Markdown,
}

struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn failed(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

type Out = Result<(String, bool), Failure>;

fn emit<T: Serialize>(fmt: Format, value: &T, text: impl FnOnce() -> String, md: impl FnOnce() -> String) -> String {
    match fmt {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable report") + "\n",
        Format::Markdown => md(),
        Format::Text => text(),
    }
}

fn catalog(args: &OutputArgs) -> Result<Vec<CatalogEntry>, Failure> {
    load_catalog(args.catalog.as_deref()).map_err(|e| usage(e.to_string()))
}

fn select<'a>(entries: &'a [CatalogEntry], id: &str) -> Result<&'a CatalogEntry, Failure> {
    entries.iter().find(|e| e.matches_id(id)).ok_or_else(|| usage(format!("no catalog entry {id:?}")))
}

fn niemeier(cmd: &NiemeierCmd, fmt: Format) -> Out {
    match cmd {
        NiemeierCmd::List => {
            let rows: Vec<NiemeierRow> = all_niemeier().iter().map(NiemeierRow::from).collect();
            Ok((emit(fmt, &rows, || report::niemeier_text(&rows), || report::niemeier_markdown(&rows)), true))
        }
        NiemeierCmd::Validate { id } => {
            let ids: Vec<String> = match id {
                Some(id) => vec![id.clone()],
                None => HOST_ORDER.iter().map(|s| s.to_string()).collect(),
            };
            let mut reps = Vec::new();
            for id in &ids {
                let n = find(id).map_err(|e| usage(e.to_string()))?;
                reps.push(validate(&n).map_err(|e| failed(format!("{id}: {e}")))?);
            }
            let ok = reps.iter().all(|r| r.ok);
            Ok((emit(fmt, &reps, || report::validation_text(&reps), || report::validation_markdown(&reps)), ok))
        }
    }
}

#[derive(Serialize)]
struct FrameRow {
    host: String,
    embedding: String,
    fibers: String,
    rank: usize,
    torsion: Vec<u64>,
    w_rank: usize,
    w_det: String,
    n_det: String,
    w_over_n: usize,
}

fn nishiyama(cmd: &NishiyamaCmd, fmt: Format, jobs: usize) -> Out {
    match cmd {
        NishiyamaCmd::Enumerate => {
            let rs = enumerate_all_with(jobs).map_err(|e| failed(e.to_string()))?;
            Ok((emit(fmt, &rs, || report::records_text(&rs), || report::records_markdown(&rs)), true))
        }
        NishiyamaCmd::Frame { host } => {
            let n = find(host).map_err(|e| usage(e.to_string()))?;
            if !n.has_glue_data() {
                return Err(usage(format!("{host} has no glue data")));
            }
            let r = realize(&n).map_err(|e| failed(e.to_string()))?;
            let mut rows = Vec::new();
            for spec in candidate_embeddings(&n) {
                let f = frame(&r, &spec).map_err(|e| failed(e.to_string()))?;
                let rec = record(&f, &spec);
                rows.push(FrameRow {
                    host: rec.host,
                    embedding: rec.embedding,
                    fibers: rec.fibers,
                    rank: mw_rank(&f),
                    torsion: mw_torsion(&f),
                    w_rank: f.w.rank(),
                    w_det: f.w.det().to_string(),
                    n_det: f.n.det().to_string(),
                    w_over_n: f.wn_quotient.len(),
                });
            }
            let text = || {
                rows.iter()
                    .map(|r| {
                        format!(
                            "{:<24} W rank {} det {}  N det {}  |W/N| {}  fibers {}  rank {}  torsion {}\n",
                            r.embedding,
                            r.w_rank,
                            r.w_det,
                            r.n_det,
                            r.w_over_n,
                            r.fibers,
                            r.rank,
                            k3fib_niemeier::group_label(&r.torsion)
                        )
                    })
                    .collect()
            };
            let md = || {
                let mut s = String::from(
                    "| embedding | rank W | det W | det N | W/N | fibers | MW rank | torsion |\n|---|---|---|---|---|---|---|---|\n",
                );
                for r in &rows {
                    s += &format!(
                        "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                        r.embedding,
                        r.w_rank,
                        r.w_det,
                        r.n_det,
                        r.w_over_n,
                        r.fibers,
                        r.rank,
                        k3fib_niemeier::group_label(&r.torsion)
                    );
                }
                s
            };
            Ok((emit(fmt, &rows, text, md), true))
        }
    }
}

fn analyze_surface(surface: &Surface, entry: Option<&CatalogEntry>) -> Result<Analysis, Failure> {
    let fs = surface.fibers();
    let mut reducible: Vec<k3fib_lattice::DynkinType> =
        k3fib_elliptic::reducible_root_types(&fs).iter().map(|s| s.parse().expect("root label")).collect();
    reducible.sort();
    let mut points = Vec::new();
    for p in entry.map(|e| e.points.as_slice()).unwrap_or(&[]) {
        points.push(point_analysis(surface, &p.name, &p.point)?);
    }
    Ok(Analysis {
        entry: entry.map(|e| e.id()),
        model: surface.model.coeffs().map(|a| a.to_string()),
        discriminant: report::factored(&surface.model.discriminant()),
        fibers: fs.iter().map(FiberRow::from).collect(),
        symbols: k3fib_elliptic::fiber_symbols(&fs),
        euler_sum: k3fib_elliptic::euler_sum(&fs),
        reducible: reducible.iter().map(|t| t.to_string()).collect(),
        points,
    })
}

fn point_analysis(surface: &Surface, name: &str, p: &SectionPoint) -> Result<PointAnalysis, Failure> {
    let (x, y) = p.coords().map(|(x, y)| (x.to_string(), y.to_string())).unwrap_or(("O".into(), "O".into()));
    let height = surface.height(p).map_err(|e| failed(format!("{name}: {e}")))?;
    Ok(PointAnalysis {
        name: name.to_string(),
        x,
        y,
        order: torsion_order(&surface.model, p, 12),
        height: fmt_rat(&height),
        components: components_met(surface, p).into_iter().map(|(pl, j)| (pl.label(), j)).collect(),
        local_terms: surface.local_terms(p).map_err(|e| failed(e.to_string()))?,
    })
}

#[derive(Serialize)]
struct HeightOut {
    entry: String,
    points: Vec<PointAnalysis>,
    generators: Vec<String>,
    matrix: Vec<Vec<String>>,
    determinant: String,
}

fn elliptic(cmd: &EllipticCmd, fmt: Format, args: &OutputArgs) -> Out {
    match cmd {
        EllipticCmd::Analyze { entry, model } => {
            let (surface, e) = match (entry, model) {
                (Some(id), None) => {
                    let entries = catalog(args)?;
                    let e = select(&entries, id)?.clone();
                    (Surface::new(e.model.clone()).map_err(|err| failed(err.to_string()))?, Some(e))
                }
                (None, Some(a)) => {
                    let raw: [String; 5] = a.clone().try_into().map_err(|_| usage("--model takes five coefficients"))?;
                    let (m, _) = normalized(&raw).map_err(|(i, msg)| usage(format!("coefficient {}: {msg}", i + 1)))?;
                    (Surface::new(m).map_err(|err| usage(err.to_string()))?, None)
                }
                _ => return Err(usage("give a catalog entry or --model A1 A2 A3 A4 A6")),
            };
            let a = analyze_surface(&surface, e.as_ref())?;
            let ok = a.euler_sum == 24;
            Ok((emit(fmt, &a, || report::analysis_text(&a), || report::analysis_markdown(&a)), ok))
        }
        EllipticCmd::Height { entry, point } => {
            let entries = catalog(args)?;
            let e = select(&entries, entry)?;
            let surface = Surface::new(e.model.clone()).map_err(|err| failed(err.to_string()))?;
            let mut points = Vec::new();
            match point {
                Some(xy) => {
                    let parse = |s: &str| s.parse::<RatFunc>().map_err(|err| usage(format!("{s:?}: {err}")));
                    let u = RatFunc::from(e.u.clone());
                    let p = SectionPoint::new(&parse(&xy[0])? * &u.pow(2), &parse(&xy[1])? * &u.pow(3));
                    if !k3fib_elliptic::on_curve(&e.model, &p) {
                        return Err(usage(format!("({}, {}) is not on the curve", xy[0], xy[1])));
                    }
                    points.push(point_analysis(&surface, "P", &p)?);
                }
                None => {
                    for p in &e.points {
                        points.push(point_analysis(&surface, &p.name, &p.point)?);
                    }
                }
            }
            let gens: Vec<SectionPoint> = e.doc.generators.iter().filter_map(|n| e.point(n)).map(|p| p.point.clone()).collect();
            let m = surface.height_matrix(&gens).map_err(|err| failed(err.to_string()))?;
            let out = HeightOut {
                entry: e.id(),
                points,
                generators: e.doc.generators.clone(),
                matrix: m.iter().map(|r| r.iter().map(fmt_rat).collect()).collect(),
                determinant: fmt_rat(&k3fib_elliptic::determinant(&m)),
            };
            let text = || {
                let mut s = String::new();
                for p in &out.points {
                    s += &format!("{} = ({}, {})  height {}\n", p.name, p.x, p.y, p.height);
                    for t in &p.local_terms {
                        s += &format!(
                            "    {:<16} {:<5} (P.O) {}  component {}  contr {}\n",
                            t.place.label(),
                            t.kodaira_type,
                            fmt_rat(&t.intersection),
                            t.component,
                            fmt_rat(&t.contr)
                        );
                    }
                }
                s += &format!("generators {:?}  det {}\n", out.generators, out.determinant);
                s
            };
            let md = || {
                let mut s = String::from("| section | (x, y) | height |\n|---|---|---|\n");
                for p in &out.points {
                    s += &format!("| {} | ({}, {}) | {} |\n", p.name, p.x, p.y, p.height);
                }
                s += &format!("\nRegulator of {:?}: {}\n", out.generators, out.determinant);
                s
            };
            Ok((emit(fmt, &out, text, md), true))
        }
    }
}

fn verify(target: &str, fmt: Format, args: &OutputArgs) -> Out {
    let entries = catalog(args)?;
    let chosen: Vec<CatalogEntry> = if target == "all" { entries } else { vec![select(&entries, target)?.clone()] };
    let records = enumerate_all_with(args.jobs).map_err(|e| failed(e.to_string()))?;
    let rep = verify_entries(&chosen, &records, args.jobs, target == "all");
    let ok = rep.ok();
    Ok((emit(fmt, &rep, || report::verification_text(&rep), || report::verification_markdown(&rep)), ok))
}

/// What a run of the command line produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line without touching the process streams.
pub fn execute<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let (code, stdout, stderr) =
                if e.use_stderr() { (2, String::new(), e.render().to_string()) } else { (0, e.render().to_string(), String::new()) };
            return CliOutput { code, stdout, stderr };
        }
    };
    let fmt = if cli.out.json {
        Format::Json
    } else if cli.out.markdown {
        Format::Markdown
    } else {
        Format::Text
    };
    let res = match &cli.cmd {
        Command::Niemeier(c) => niemeier(c, fmt),
        Command::Nishiyama(c) => nishiyama(c, fmt, cli.out.jobs),
        Command::Elliptic(c) => elliptic(c, fmt, &cli.out),
        Command::Verify { target } => verify(target, fmt, &cli.out),
    };
    match res {
        Ok((stdout, ok)) => CliOutput { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() },
        Err(f) => CliOutput { code: f.code, stdout: String::new(), stderr: format!("k3fib: {}\n", f.msg) },
    }
}

/// Runs the command line, printing to stdout and stderr, and returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = execute(args);
    // a closed pipe downstream is not an error of ours
    let _ = std::io::stdout().lock().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(out.stderr.as_bytes());
    out.code
}
