//! `quandles` — batch computation of quandle presentations and coloring
//! invariants from link diagrams, braids, movie scripts, marked-graph
//! diagrams and ribbon-concordance data.
//!
//! Exit status: 0 success; 1 invalid parameters or I/O failures; 2 a
//! check ran and found violations (failed concordance consequence,
//! obstructed verdict, invalid quandle table); 3 unparseable input.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quandles::battery::standard_battery;
use quandles::braid::{torus_knot_braid, BraidWord};
use quandles::concordance::{
    obstruct_ribbon_concordance, RibbonConcordanceDiagram, Verdict,
};
use quandles::error::Error;
use quandles::group::GroupTable;
use quandles::link::parse_pd;
use quandles::marked::{MarkedGraphDiagram, Side};
use quandles::movie::MovieScript;
use quandles::presentation::QuandlePresentation;
use quandles::quandle::{verify_axioms, FiniteQuandle, QuandleTableFile};

/// Environment variable holding the default worker count.
const WORKERS_ENV: &str = "QUANDLES_WORKERS";

#[derive(Parser)]
#[command(name = "quandles", version, about = "Quandle presentations and coloring invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
    /// Worker threads for coloring searches (default: QUANDLES_WORKERS or 1).
    #[arg(long)]
    workers: Option<usize>,
}

impl OutputOpts {
    fn workers(&self) -> usize {
        self.workers
            .or_else(|| {
                std::env::var(WORKERS_ENV)
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or(1)
            .max(1)
    }
}

#[derive(Args)]
struct InputOpts {
    /// PD text file (see docs/FORMATS.md).
    #[arg(long, group = "input")]
    pd: Option<PathBuf>,
    /// Braid word file, `q: 1 1 -2`.
    #[arg(long, group = "input")]
    braid: Option<PathBuf>,
    /// Inline braid word, `q: 1 1 -2`.
    #[arg(long, group = "input")]
    word: Option<String>,
    /// Presentation JSON file.
    #[arg(long, group = "input")]
    presentation: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Count colorings of a diagram, braid closure or presentation.
    Colorings {
        #[command(flatten)]
        input: InputOpts,
        /// Coloring target: `dihedral:N`, `conj:<group.json>` or a
        /// quandle table JSON path.
        #[arg(long)]
        target: String,
        /// Also list the colorings (capped at 100000).
        #[arg(long)]
        keep_colorings: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Tietze-simplify a presentation.
    Simplify {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Compile a motion-picture script.
    Movie {
        /// Movie script JSON file.
        #[arg(long)]
        script: PathBuf,
        /// Optional coloring target.
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Compile a marked-graph (CH) diagram.
    Ch {
        /// CH diagram text file.
        #[arg(long)]
        diagram: PathBuf,
        /// Optional coloring target.
        #[arg(long)]
        target: Option<String>,
        /// Print the resolved diagram for one side instead.
        #[arg(long, value_enum)]
        resolve: Option<SideArg>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Braid closure presentation (optionally colored).
    Braid {
        #[command(flatten)]
        input: InputOpts,
        #[arg(long)]
        target: Option<String>,
        /// Also print the closure PD text.
        #[arg(long)]
        emit_pd: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Torus knot/link T(p,q) via its standard braid.
    Torus {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Check the concordance-theorem coloring consequences of a ribbon
    /// concordance file.
    ConcordanceCheck {
        /// Concordance JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Coloring targets (repeatable); defaults to the standard battery.
        #[arg(long)]
        target: Vec<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Bounded necessary-condition screen for a ribbon concordance from
    /// K1 down to K0.
    Obstruct {
        /// PD file of K1 (the top knot).
        #[arg(long)]
        k1: PathBuf,
        /// PD file of K0 (the bottom knot).
        #[arg(long)]
        k0: PathBuf,
        #[arg(long)]
        target: Vec<String>,
        /// Maximum band count searched.
        #[arg(long, default_value = "2")]
        budget: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verify the quandle axioms of an operation table file.
    VerifyQuandle {
        /// Quandle table JSON file.
        #[arg(long)]
        table: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_parse() {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
}

/// Resolves a target spec: `dihedral:N`, `conj:<group file>`, or a path
/// to a quandle table JSON file.
fn resolve_target(spec: &str) -> Result<(String, FiniteQuandle), Error> {
    if let Some(n) = spec.strip_prefix("dihedral:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Domain(format!("bad dihedral order {n:?}")))?;
        return Ok((format!("dihedral:{n}"), FiniteQuandle::dihedral(n)?));
    }
    if let Some(rest) = spec.strip_prefix("conj:") {
        let group = match rest.to_ascii_lowercase().as_str() {
            "s3" => quandles::group::symmetric_3(),
            "z4" => quandles::group::cyclic(4)?,
            "d4" => quandles::group::dihedral_group(4)?,
            _ => GroupTable::from_json(&read_file(&PathBuf::from(rest))?)?,
        };
        return Ok((format!("conj:{rest}"), group.conjugation_quandle()));
    }
    let path = PathBuf::from(spec);
    let quandle = FiniteQuandle::from_json(&read_file(&path)?)?;
    Ok((spec.to_string(), quandle))
}

fn resolve_targets(specs: &[String]) -> Result<Vec<(String, FiniteQuandle)>, Error> {
    if specs.is_empty() {
        return Ok(standard_battery());
    }
    specs.iter().map(|s| resolve_target(s)).collect()
}

fn load_presentation(input: &InputOpts) -> Result<(String, QuandlePresentation), Error> {
    if let Some(path) = &input.pd {
        let diagram = parse_pd(&read_file(path)?)?;
        return Ok((path.display().to_string(), diagram.quandle_presentation()));
    }
    if let Some(path) = &input.braid {
        let braid = BraidWord::parse(read_file(path)?.trim())?;
        return Ok((path.display().to_string(), braid.closure_presentation()));
    }
    if let Some(word) = &input.word {
        let braid = BraidWord::parse(word)?;
        return Ok((format!("braid `{word}`"), braid.closure_presentation()));
    }
    if let Some(path) = &input.presentation {
        let pres = QuandlePresentation::from_json(&read_file(path)?)?;
        return Ok((path.display().to_string(), pres));
    }
    Err(Error::Domain(
        "no input: pass --pd, --braid, --word or --presentation".into(),
    ))
}

/// Emits a flat report: sorted-key JSON object or `key<TAB>value` lines.
fn emit_flat(format: Format, entries: &BTreeMap<String, Value>) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string(entries).expect("serializable"));
        }
        Format::Tsv => {
            for (key, value) in entries {
                match value {
                    Value::Array(items) => {
                        for item in items {
                            println!("{key}\t{}", scalar_to_tsv(item));
                        }
                    }
                    other => println!("{key}\t{}", scalar_to_tsv(other)),
                }
            }
        }
    }
}

fn scalar_to_tsv(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(scalar_to_tsv)
            .collect::<Vec<_>>()
            .join(","),
        other => other.to_string(),
    }
}

fn presentation_report(pres: &QuandlePresentation) -> BTreeMap<String, Value> {
    let mut entries = BTreeMap::new();
    entries.insert(
        "generators".to_string(),
        json!(pres
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()),
    );
    entries.insert(
        "relations".to_string(),
        json!(pres
            .relations()
            .iter()
            .map(|(l, r)| format!("{l} = {r}"))
            .collect::<Vec<_>>()),
    );
    entries
}

fn coloring_report(
    label: &str,
    pres: &QuandlePresentation,
    target_spec: &str,
    keep: bool,
    workers: usize,
) -> Result<BTreeMap<String, Value>, Error> {
    let (target_name, target) = resolve_target(target_spec)?;
    let report = pres.count_colorings(&target, keep, workers);
    let mut entries = BTreeMap::new();
    entries.insert("count".to_string(), json!(report.count));
    entries.insert("generators".to_string(), json!(pres.generators().len()));
    entries.insert("input".to_string(), json!(label));
    entries.insert("relations".to_string(), json!(pres.relations().len()));
    entries.insert("target".to_string(), json!(target_name));
    if let Some(colorings) = report.colorings {
        entries.insert(
            "colorings".to_string(),
            json!(colorings
                .iter()
                .map(|c| c
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(","))
                .collect::<Vec<_>>()),
        );
        entries.insert("truncated".to_string(), json!(report.truncated));
    }
    Ok(entries)
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Colorings {
            input,
            target,
            keep_colorings,
            out,
        } => {
            let (label, pres) = load_presentation(&input)?;
            let entries =
                coloring_report(&label, &pres, &target, keep_colorings, out.workers())?;
            emit_flat(out.format, &entries);
            Ok(ExitCode::SUCCESS)
        }
        Command::Simplify { input, out } => {
            let (_, pres) = load_presentation(&input)?;
            let simplified = pres.simplify();
            let mut entries = presentation_report(&simplified);
            entries.insert(
                "rank_upper_bound".to_string(),
                json!(simplified.rank_upper_bound()),
            );
            emit_flat(out.format, &entries);
            Ok(ExitCode::SUCCESS)
        }
        Command::Movie { script, target, out } => {
            let movie = MovieScript::from_json(&read_file(&script)?)?;
            let compiled = movie.compile()?;
            let mut entries = match &target {
                Some(spec) => coloring_report(
                    &script.display().to_string(),
                    &compiled.presentation,
                    spec,
                    false,
                    out.workers(),
                )?,
                None => presentation_report(&compiled.presentation),
            };
            entries.insert("closed".to_string(), json!(compiled.is_closed()));
            entries.insert(
                "live".to_string(),
                json!(compiled
                    .live
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()),
            );
            emit_flat(out.format, &entries);
            Ok(ExitCode::SUCCESS)
        }
        Command::Ch {
            diagram,
            target,
            resolve,
            out,
        } => {
            let mgd = MarkedGraphDiagram::parse(&read_file(&diagram)?)?;
            if let Some(side) = resolve {
                let resolved = mgd.resolve_markers(side.into())?;
                let mut entries = BTreeMap::new();
                entries.insert(
                    "arcs".to_string(),
                    json!(resolved
                        .diagram
                        .arcs()
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()),
                );
                entries.insert(
                    "components".to_string(),
                    json!(resolved.diagram.n_components()),
                );
                entries.insert(
                    "crossings".to_string(),
                    json!(resolved.diagram.crossings().len()),
                );
                emit_flat(out.format, &entries);
                return Ok(ExitCode::SUCCESS);
            }
            let pres = mgd.ch_presentation()?;
            let entries = match &target {
                Some(spec) => coloring_report(
                    &diagram.display().to_string(),
                    &pres,
                    spec,
                    false,
                    out.workers(),
                )?,
                None => presentation_report(&pres),
            };
            emit_flat(out.format, &entries);
            Ok(ExitCode::SUCCESS)
        }
        Command::Braid {
            input,
            target,
            emit_pd,
            out,
        } => {
            let braid = if let Some(word) = &input.word {
                BraidWord::parse(word)?
            } else if let Some(path) = &input.braid {
                BraidWord::parse(read_file(path)?.trim())?
            } else {
                return Err(Error::Domain("pass --word or --braid".into()));
            };
            let pres = braid.closure_presentation();
            let mut entries = match &target {
                Some(spec) => {
                    coloring_report(&braid.to_string(), &pres, spec, false, out.workers())?
                }
                None => presentation_report(&pres),
            };
            if emit_pd {
                entries.insert("closure_pd".to_string(), json!(braid.closure_pd()));
            }
            emit_flat(out.format, &entries);
            Ok(ExitCode::SUCCESS)
        }
        Command::Torus { p, q, target, out } => {
            let braid = torus_knot_braid(p, q)?;
            let pres = braid.closure_presentation();
            let mut entries = match &target {
                Some(spec) => coloring_report(
                    &format!("T({p},{q})"),
                    &pres,
                    spec,
                    false,
                    out.workers(),
                )?,
                None => presentation_report(&pres),
            };
            entries.insert("braid".to_string(), json!(braid.to_string()));
            emit_flat(out.format, &entries);
            Ok(ExitCode::SUCCESS)
        }
        Command::ConcordanceCheck { input, target, out } => {
            let rc = RibbonConcordanceDiagram::from_json(&read_file(&input)?)?;
            let targets = resolve_targets(&target)?;
            let surjectivity = rc.check_surjectivity(&targets);
            let injectivity = rc.check_injectivity(&targets);
            let ok = surjectivity.ok();
            match out.format {
                Format::Json => {
                    let value = json!({
                        "injectivity": serde_json::to_value(&injectivity.checks).unwrap(),
                        "ok": ok,
                        "surjectivity": serde_json::to_value(&surjectivity.checks).unwrap(),
                    });
                    println!("{value}");
                }
                Format::Tsv => {
                    for c in &surjectivity.checks {
                        let status = if c.violations.is_empty() {
                            "ok".to_string()
                        } else {
                            format!("violation: {}", c.violations.join("; "))
                        };
                        println!(
                            "surjectivity\t{}\tcol_c={}\tcol_k1={}\t{status}",
                            c.target, c.col_c, c.col_k1
                        );
                    }
                    for c in &injectivity.checks {
                        let fibers = c
                            .fiber_sizes
                            .iter()
                            .map(|f| f.to_string())
                            .collect::<Vec<_>>()
                            .join(",");
                        println!(
                            "restriction\t{}\tcol_c={}\tcol_k0={}\timage={}\tfibers={fibers}",
                            c.target, c.col_c, c.col_k0, c.image_size
                        );
                    }
                    println!("ok\t{ok}");
                }
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Obstruct {
            k1,
            k0,
            target,
            budget,
            out,
        } => {
            let k1_diagram = parse_pd(&read_file(&k1)?)?;
            let k0_diagram = parse_pd(&read_file(&k0)?)?;
            let targets = resolve_targets(&target)?;
            let report =
                obstruct_ribbon_concordance(&k1_diagram, &k0_diagram, &targets, budget);
            let exit = match &report.verdict {
                Verdict::NoObstructionFound => ExitCode::SUCCESS,
                Verdict::Obstructed { .. } => ExitCode::from(2),
                Verdict::Inconclusive { .. } => ExitCode::SUCCESS,
            };
            match out.format {
                Format::Json => {
                    println!(
                        "{}",
                        json!({"verdict": serde_json::to_value(&report.verdict).unwrap()})
                    );
                }
                Format::Tsv => match &report.verdict {
                    Verdict::NoObstructionFound => println!("verdict\tno obstruction found"),
                    Verdict::Obstructed { certificates } => {
                        println!("verdict\tobstructed (bounded)");
                        for c in certificates {
                            println!(
                                "obstructed_by\t{}\tcol_k0={}\tcol_k1={}\tmax_bands={}\tcandidates={}",
                                c.target, c.col_k0, c.col_k1, c.max_bands, c.candidates_checked
                            );
                        }
                    }
                    Verdict::Inconclusive { reason } => {
                        println!("verdict\tinconclusive");
                        println!("reason\t{reason}");
                    }
                },
            }
            Ok(exit)
        }
        Command::VerifyQuandle { table, out } => {
            let file: QuandleTableFile = serde_json::from_str(&read_file(&table)?)
                .map_err(|e| Error::parse_at(e.line(), e.column(), e.to_string()))?;
            let report = verify_axioms(&file.op)?;
            let mut entries = BTreeMap::new();
            entries.insert("size".to_string(), json!(report.size));
            entries.insert("valid".to_string(), json!(report.is_valid()));
            entries.insert(
                "violations".to_string(),
                json!(report
                    .violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()),
            );
            entries.insert("truncated".to_string(), json!(report.truncated));
            emit_flat(out.format, &entries);
            Ok(if report.is_valid() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Lower,
    Upper,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Lower => Side::Lower,
            SideArg::Upper => Side::Upper,
        }
    }
}
