//! Command line driver. Reads diagrams as PD expressions (one per file),
//! computes arrow and homological arrow polynomials, cabled polynomials,
//! and diagram reports, and maintains lookup tables of cabled invariants.
//!
//! Exit codes: 0 success, 1 usage, 2 parse/validate/io, 3 resource cap.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use arrowpoly::analysis::{analyze, ColorRule};
use arrowpoly::cabling::{cable, cabled_arrow_with};
use arrowpoly::engine::{
    compute_arrow_with, compute_harrow_with, EngineError, EngineOptions, EngineStats, LoopWeight,
};
use arrowpoly::homology::{dehn_defect, solve_dehn, DehnNumbering, DehnWitness};
use arrowpoly::pd::{parse_label_lines, parse_pd, PdCode, PdError};
use arrowpoly::table::{Identification, InvariantTable, TableError};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "arrowpoly", version, about = "Arrow polynomials of virtual links from PD codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a polynomial of one diagram.
    Compute(ComputeArgs),
    /// Arrow polynomial of the zero-framed n-cable, writhe-normalized.
    Cable(CableArgs),
    /// Bounds, embedding genus, Dehn defect, and colorability report.
    Check(CheckArgs),
    /// Build invariant tables from a directory of PD files.
    Table(TableArgs),
    /// Look a diagram up in an invariant table.
    Identify(IdentifyArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// PD file, or - for standard input.
    file: String,
    /// Scalar arrow polynomial in K variables (the default).
    #[arg(long, group = "which")]
    arrow: bool,
    /// Homological arrow polynomial over the component labels.
    #[arg(long, group = "which")]
    harrow: bool,
    /// Rescaled variant: loops with nonzero marking score X without delta.
    #[arg(long, group = "which")]
    aprime: bool,
    /// Multiply by (-A^3)^-writhe.
    #[arg(long)]
    normalized: bool,
    /// Label each component by its arc ids modulo 10.
    #[arg(long)]
    mod10: bool,
    /// Label components from a file of `component = slot` lines
    /// (overrides --mod10 where both apply).
    #[arg(long, value_name = "FILE")]
    labels: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Abort once a contraction step holds more live states than this.
    #[arg(long, value_name = "N")]
    max_states: Option<usize>,
}

#[derive(Args)]
struct CableArgs {
    /// PD file, or - for standard input.
    file: String,
    /// Number of parallel copies.
    #[arg(short = 'n', long = "cable", value_name = "N")]
    n: u32,
    /// Report elapsed time and live-state counts on standard error.
    #[arg(long)]
    stats: bool,
    /// Print the cabled diagram's PD code instead of its polynomial.
    #[arg(long)]
    emit_pd: bool,
    #[arg(long, value_name = "N")]
    max_states: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    /// PD file, or - for standard input.
    file: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_name = "N")]
    max_states: Option<usize>,
}

#[derive(Args)]
struct TableArgs {
    #[command(subcommand)]
    cmd: TableCmd,
}

#[derive(Subcommand)]
enum TableCmd {
    /// Compute cabled polynomials for every .pd file in a directory.
    Build(TableBuildArgs),
}

#[derive(Args)]
struct TableBuildArgs {
    /// Directory holding one PD expression per .pd file.
    dir: PathBuf,
    /// Cable widths to compute, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2", value_name = "N,...")]
    cables: Vec<u32>,
    /// Where to write the table (JSON).
    #[arg(short, long, value_name = "FILE")]
    out: PathBuf,
    #[arg(long, value_name = "N")]
    max_states: Option<usize>,
}

#[derive(Args)]
struct IdentifyArgs {
    /// PD file, or - for standard input.
    file: String,
    /// Table produced by `table build`.
    #[arg(long, value_name = "FILE")]
    table: PathBuf,
    #[arg(long, value_name = "N")]
    max_states: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Failures past argument parsing, split by exit code.
enum Failure {
    /// bad input: unreadable file, parse or validation error (exit 2)
    Input(String),
    /// computation hit the live-state cap (exit 3)
    Resource(String),
}

impl Failure {
    fn input(msg: impl fmt::Display) -> Failure {
        Failure::Input(msg.to_string())
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Resource(m) => f.write_str(m),
        }
    }
}

impl From<PdError> for Failure {
    fn from(e: PdError) -> Failure {
        Failure::input(e)
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Failure {
        Failure::input(e)
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        match e {
            EngineError::StateCap { .. } => Failure::Resource(e.to_string()),
            EngineError::Pd(e) => Failure::input(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = !matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return ExitCode::from(u8::from(usage));
        }
    };
    // each command returns its whole stdout payload so a closed pipe
    // downstream never panics mid-report
    let result = match cli.cmd {
        Cmd::Compute(a) => cmd_compute(&a),
        Cmd::Cable(a) => cmd_cable(&a),
        Cmd::Check(a) => cmd_check(&a),
        Cmd::Table(TableArgs {
            cmd: TableCmd::Build(a),
        }) => cmd_table_build(&a),
        Cmd::Identify(a) => cmd_identify(&a),
    };
    match result {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    if file == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::input(format!("standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(file).map_err(|e| Failure::input(format!("{file}: {e}")))
    }
}

fn load_pd(file: &str) -> Result<PdCode, Failure> {
    Ok(parse_pd(&read_input(file)?)?)
}

/// Apply label flags: mod-10 first, then explicit pairs on top.
fn apply_labels(
    pd: PdCode,
    mod10: bool,
    labels: Option<&PathBuf>,
) -> Result<PdCode, Failure> {
    let pd = if mod10 { pd.with_mod10_labels()? } else { pd };
    let Some(path) = labels else { return Ok(pd) };
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let mut assigned = pd.effective_labels();
    for (comp, slot) in parse_label_lines(&text)? {
        if comp >= assigned.len() {
            return Err(Failure::input(format!(
                "label file names component {} but the diagram has {}",
                comp + 1,
                assigned.len()
            )));
        }
        assigned[comp] = slot;
    }
    Ok(pd.with_labels(assigned)?)
}

fn engine_opts(max_states: Option<usize>) -> EngineOptions {
    EngineOptions {
        max_states: max_states.unwrap_or(EngineOptions::default().max_states),
    }
}

fn cmd_compute(a: &ComputeArgs) -> Result<String, Failure> {
    let pd = apply_labels(load_pd(&a.file)?, a.mod10, a.labels.as_ref())?;
    let opts = engine_opts(a.max_states);
    let w = if a.normalized { pd.writhe() } else { 0 };
    let out = if a.harrow || a.aprime {
        let mode = if a.aprime {
            LoopWeight::XOnly
        } else {
            LoopWeight::DeltaX
        };
        let (p, _) = compute_harrow_with(&pd, mode, &opts)?;
        let p = p.writhe_normalize(w);
        match a.format {
            Format::Text => format!("{p}\n"),
            Format::Json => format!("{:#}\n", p.to_json(false)),
        }
    } else {
        let (p, _) = compute_arrow_with(&pd, &opts)?;
        let p = p.writhe_normalize(w);
        match a.format {
            Format::Text => format!("{p}\n"),
            Format::Json => format!("{:#}\n", p.to_json()),
        }
    };
    Ok(out)
}

fn print_stats(elapsed: f64, stats: &EngineStats) {
    eprintln!(
        "elapsed: {elapsed:.3}s  nodes: {}  peak live states: {}  merges: {}",
        stats.nodes, stats.peak_states, stats.merges
    );
}

fn cmd_cable(a: &CableArgs) -> Result<String, Failure> {
    if a.n == 0 {
        return Err(Failure::input("cable width must be at least 1"));
    }
    let pd = load_pd(&a.file)?;
    if a.emit_pd {
        return Ok(format!("{}\n", cable(&pd, a.n)?));
    }
    let start = Instant::now();
    let (poly, stats) = cabled_arrow_with(&pd, a.n, &engine_opts(a.max_states))?;
    if a.stats {
        print_stats(start.elapsed().as_secs_f64(), &stats);
    }
    Ok(format!("{poly}\n"))
}

fn color_rule_name(rule: ColorRule) -> &'static str {
    match rule {
        ColorRule::LoneFactor => "lone_factor",
        ColorRule::IndexSumNotDivisibleByFour => "index_sum_not_divisible_by_four",
        ColorRule::DominantFactor => "dominant_factor",
    }
}

fn cmd_check(a: &CheckArgs) -> Result<String, Failure> {
    let pd = load_pd(&a.file)?;
    let opts = engine_opts(a.max_states);
    let (raw, _) = compute_arrow_with(&pd, &opts)?;
    let arrow = raw.writhe_normalize(pd.writhe());
    let report = analyze(&arrow);
    let faces = pd.faces();
    let defect = dehn_defect(&pd);
    let integers = solve_dehn(&pd, 0);
    let coloring = solve_dehn(&pd, 2);

    if a.format == Format::Json {
        let witness_doc = |w: &DehnWitness| json!({ "steps": w.steps.len(), "sum": w.sum });
        let numbering = match &integers {
            Ok(n) => json!({ "faces": n.values }),
            Err(w) => json!({ "witness": witness_doc(w) }),
        };
        let colors = match &coloring {
            Ok(n) => json!({ "faces": color_bits(n) }),
            Err(w) => json!({ "witness": witness_doc(w) }),
        };
        let obstruction = report.checkerboard.as_ref().map(|o| {
            json!({
                "monomial": o.monomial.write_vars(true),
                "rule": color_rule_name(o.rule),
            })
        });
        let doc = json!({
            "crossings": pd.crossing_count(),
            "components": pd.components().len(),
            "writhe": pd.writhe(),
            "embedding_genus": faces.total_genus(),
            "faces": faces.faces.len(),
            "normalized_arrow": arrow.to_json(),
            "genus_lower_bound": report.genus_lb,
            "crossing_lower_bound": report.crossing_lb,
            "arrow_trivial": report.arrow_trivial,
            "index_gcd": report.index_gcd,
            "checkerboard_obstruction": obstruction,
            "dehn_defect": defect,
            "integer_dehn_numbering": numbering,
            "checkerboard_coloring": colors,
        });
        return Ok(format!("{doc:#}\n"));
    }

    let mut out = String::new();
    let mut kv = |key: &str, val: String| {
        out.push_str(key);
        out.push_str(": ");
        out.push_str(&val);
        out.push('\n');
    };
    kv("crossings", pd.crossing_count().to_string());
    kv("components", pd.components().len().to_string());
    kv("writhe", pd.writhe().to_string());
    kv(
        "embedding genus",
        format!("{} ({} faces)", faces.total_genus(), faces.faces.len()),
    );
    kv("normalized arrow", arrow.to_string());
    kv("genus lower bound", report.genus_lb.to_string());
    kv("crossing lower bound", report.crossing_lb.to_string());
    kv(
        "arrow trivial",
        (if report.arrow_trivial { "yes" } else { "no" }).to_string(),
    );
    kv("index gcd", report.index_gcd.to_string());
    kv(
        "checkerboard obstruction",
        match &report.checkerboard {
            Some(o) => o.to_string(),
            None => "none".to_string(),
        },
    );
    kv("dehn defect", defect.to_string());
    let witness_line = |w: &DehnWitness| {
        format!("none (witness: {}-step cycle, sum {})", w.steps.len(), w.sum)
    };
    kv(
        "integer dehn numbering",
        match &integers {
            Ok(n) => format!("faces {:?}", n.values),
            Err(w) => witness_line(w),
        },
    );
    kv(
        "checkerboard coloring",
        match &coloring {
            Ok(n) => format!("faces {:?}", color_bits(n)),
            Err(w) => witness_line(w),
        },
    );
    Ok(out)
}

/// Face colors of a mod-2 numbering as 0/1 bits.
fn color_bits(n: &DehnNumbering) -> Vec<u8> {
    n.values.iter().map(|v| (v & 1) as u8).collect()
}

fn cmd_table_build(a: &TableBuildArgs) -> Result<String, Failure> {
    if a.cables.is_empty() || a.cables.contains(&0) {
        return Err(Failure::input("cable widths must be positive"));
    }
    let mut files = BTreeMap::new();
    let dir = fs::read_dir(&a.dir)
        .map_err(|e| Failure::input(format!("{}: {e}", a.dir.display())))?;
    for entry in dir {
        let path = entry
            .map_err(|e| Failure::input(format!("{}: {e}", a.dir.display())))?
            .path();
        if path.extension().is_some_and(|x| x == "pd") {
            let name = path
                .file_stem()
                .and_then(|s| s.to_str())
                .ok_or_else(|| Failure::input(format!("unusable file name {}", path.display())))?
                .to_string();
            files.insert(name, path);
        }
    }
    if files.is_empty() {
        return Err(Failure::input(format!(
            "no .pd files in {}",
            a.dir.display()
        )));
    }
    let opts = engine_opts(a.max_states);
    let mut table = InvariantTable::new(a.cables.clone());
    for (name, path) in &files {
        let pd = load_pd(path.to_str().expect("checked utf-8 above"))?;
        let start = Instant::now();
        table.insert(name, &pd, &opts)?;
        eprintln!("{name}: done in {:.3}s", start.elapsed().as_secs_f64());
    }
    let text = format!("{:#}\n", table.to_json());
    write_file(&a.out, &text)?;
    eprintln!("wrote {} entries to {}", table.entries.len(), a.out.display());
    Ok(String::new())
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn cmd_identify(a: &IdentifyArgs) -> Result<String, Failure> {
    let text = fs::read_to_string(&a.table)
        .map_err(|e| Failure::input(format!("{}: {e}", a.table.display())))?;
    let parsed: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", a.table.display())))?;
    let table = InvariantTable::from_json(&parsed)?;
    let pd = load_pd(&a.file)?;
    let fp = table.fingerprint(&pd, &engine_opts(a.max_states))?;
    let matches = table.matches(&fp);
    if matches.is_empty() {
        return Ok("unknown\n".to_string());
    }
    let mut out = String::new();
    for m in matches {
        match m {
            Identification::Named(n) => out.push_str(&format!("{n}\n")),
            Identification::Mirror(n) => out.push_str(&format!("{n} (mirror)\n")),
            Identification::Unknown => unreachable!("matches never yields Unknown"),
        }
    }
    Ok(out)
}
