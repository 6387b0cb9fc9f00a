//! Command-line front end. All indices on the command line are 1-based.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check
//! fails, 2 for usage, input, or parse errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::construct::{composite_family, prime_family, FieldConstructionSpec, DEFAULT_ORDER_CAP};
use crate::designs::{FamilyReport, MoslsFamily};
use crate::graph::{build_mols_graph, build_mosls_graph, commute_check, CellGraph, GraphError};
use crate::spectra::{
    closed_to_poly, ev1_spectrum, numeric_spectrum, IntPolynomial, SpectrumReport, Tolerances, EXACT_DIM_CAP,
};
use crate::switching::{
    nonisomorphism_certificate, row_cycle_decompose, row_cycle_switch, sudoku_symbol_switch, verify_switch_theorem,
    Certificate, LineBlock, SwitchSpec, SwitchingError,
};

#[derive(Debug, Parser)]
#[command(name = "mosls", version, about = "Mutually orthogonal Sudoku Latin squares and their graph spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a MOSLS family from a prime power or a factorization.
    Construct(ConstructArgs),
    /// Validate every square and every pair of a family file.
    Check(CheckArgs),
    /// Spectrum of the MOSLS (or MOLS) graph of a family.
    Spectrum(SpectrumArgs),
    /// Write the graph as an edge list or a dense matrix.
    GraphExport(GraphExportArgs),
    /// Switch one square and certify that its graph changed.
    Switch(SwitchArgs),
    /// Compare the graphs of two family files by characteristic polynomial.
    Compare(CompareArgs),
    /// Rebuild and validate the constructive rows of the table of bounds.
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Prime for a single-prime construction.
    #[arg(long, conflicts_with = "factor")]
    pub p: Option<u32>,
    /// q = p^m.
    #[arg(long, requires = "p", default_value_t = 0)]
    pub m: u32,
    /// r = p^n.
    #[arg(long, requires = "p", default_value_t = 0)]
    pub n: u32,
    /// Prime factor `p:m:n`; repeat for each distinct prime.
    #[arg(long, value_parser = parse_factor)]
    pub factor: Vec<FieldConstructionSpec>,
    /// Keep only the first COUNT squares.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    pub order_cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GraphSelection {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Squares to use, e.g. `1,3` (default: all).
    #[arg(long)]
    pub subset: Option<String>,
    /// Omit the block edges.
    #[arg(long)]
    pub mols_only: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub graph: GraphSelection,
    /// Require the exact characteristic polynomial.
    #[arg(long, conflicts_with = "numeric")]
    pub exact: bool,
    /// Numeric eigenvalues only.
    #[arg(long)]
    pub numeric: bool,
    /// Jacobi stopping tolerance, relative to the matrix norm.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Eigenvalues closer than this are grouped.
    #[arg(long, default_value_t = 1e-6)]
    pub group_tol: f64,
    /// Compare with the nine-line closed form for commuting families.
    #[arg(long)]
    pub verify_ev1: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Edges,
    Matrix,
}

#[derive(Debug, Args)]
pub struct GraphExportArgs {
    #[command(flatten)]
    pub graph: GraphSelection,
    #[arg(long, value_enum, default_value_t = ExportFormat::Edges)]
    pub format: ExportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SwitchArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Which square of the file to switch (default: the only one).
    #[arg(long)]
    pub square: Option<usize>,
    /// Exchange symbols inside this row-block.
    #[arg(long, conflicts_with_all = ["col_block", "rows"])]
    pub row_block: Option<usize>,
    /// Exchange symbols inside this column-block.
    #[arg(long, conflicts_with = "rows")]
    pub col_block: Option<usize>,
    /// The two symbols `K1,K2` for a block switch.
    #[arg(long)]
    pub symbols: Option<String>,
    /// Two rows `R,S` for a cycle switch.
    #[arg(long, requires = "through")]
    pub rows: Option<String>,
    /// Cycle switch on the cycle through this symbol of the first row.
    #[arg(long, requires = "rows")]
    pub through: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Second family file.
    #[arg(long)]
    pub with: PathBuf,
    #[arg(long)]
    pub mols_only: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 12)]
    pub max_order: usize,
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    pub order_cap: usize,
    #[arg(long)]
    pub json: bool,
}

fn parse_factor(s: &str) -> Result<FieldConstructionSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [p, m, n] = parts.as_slice() else {
        return Err(format!("expected p:m:n, got `{s}`"));
    };
    let num = |w: &str| w.trim().parse::<u32>().map_err(|_| format!("`{w}` is not a non-negative integer"));
    FieldConstructionSpec::new(num(p)?, num(m)?, num(n)?).map_err(|e| e.to_string())
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input: exit code 2.
    Usage(String),
    /// A mathematical check failed: exit code 1.
    Check(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Check(m) => f.write_str(m),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn graph_error(e: GraphError) -> CliError {
    match e {
        GraphError::SubsetOutOfRange { .. } | GraphError::SubsetRepeated(_) => usage(e),
        other => CliError::Check(other.to_string()),
    }
}

fn switching_error(e: SwitchingError) -> CliError {
    match e {
        SwitchingError::Graph(g) => graph_error(g),
        SwitchingError::Design(_) | SwitchingError::NotDivisible | SwitchingError::PostValidation => {
            CliError::Check(e.to_string())
        }
        other => usage(other),
    }
}

type CmdResult = Result<i32, CliError>;

/// Parse `args` and run the command; returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            code
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(&a, out, err),
        Command::Check(a) => cmd_check(&a, out),
        Command::Spectrum(a) => cmd_spectrum(&a, out, err),
        Command::GraphExport(a) => cmd_graph_export(&a, out),
        Command::Switch(a) => cmd_switch(&a, out, err),
        Command::Compare(a) => cmd_compare(&a, out),
        Command::Table(a) => cmd_table(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn read_family(path: &Path) -> Result<MoslsFamily, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    MoslsFamily::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(usage)
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(usage)?;
    emit(out, &format!("{text}\n"))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Integers print bare; everything else with six decimals.
fn fmt_value(v: f64) -> String {
    let rounded = v.round();
    if (v - rounded).abs() < 1e-9 {
        format!("{}", rounded as i64)
    } else {
        format!("{v:.6}")
    }
}

fn fmt_subset(subset: &[usize]) -> String {
    subset.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn family_text_report(fam: &MoslsFamily, report: &FamilyReport) -> String {
    let mut s = String::new();
    let shape = fam.shape();
    let _ = writeln!(s, "family: order {} type ({},{}) count {}", fam.order(), shape.q(), shape.r(), fam.len());
    for k in 0..fam.len() {
        let _ = writeln!(
            s,
            "square {}: latin {} sudoku {} block-permutational {}",
            k + 1,
            yes_no(report.latin[k]),
            yes_no(report.sudoku[k]),
            yes_no(report.block_permutational[k])
        );
    }
    if fam.len() > 1 {
        let _ = writeln!(s, "orthogonal pairs:");
        for a in 0..fam.len() {
            for b in a + 1..fam.len() {
                let _ = writeln!(s, "  {} {}: {}", a + 1, b + 1, yes_no(report.orthogonal[a][b]));
            }
        }
    }
    let _ = writeln!(s, "verdict: {}", if report.all_pass() { "PASS" } else { "FAIL" });
    s
}

#[derive(Serialize)]
struct FamilySummary<'a> {
    order: usize,
    #[serde(rename = "type")]
    shape: (usize, usize),
    count: usize,
    validation: &'a FamilyReport,
    all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
}

fn summary<'a>(fam: &MoslsFamily, report: &'a FamilyReport, family: Option<String>) -> FamilySummary<'a> {
    FamilySummary {
        order: fam.order(),
        shape: (fam.shape().q(), fam.shape().r()),
        count: fam.len(),
        validation: report,
        all_pass: report.all_pass(),
        family,
    }
}

fn cmd_construct(a: &ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let fam = match (a.p, a.factor.as_slice()) {
        (Some(p), _) => {
            let spec = FieldConstructionSpec::new(p, a.m, a.n).map_err(usage)?;
            spec_order_ok(&[spec], a.order_cap)?;
            prime_family(&spec, a.order_cap).map_err(usage)?
        }
        (None, []) => return Err(usage("give --p (with --m, --n) or at least one --factor p:m:n")),
        (None, factors) => {
            spec_order_ok(factors, a.order_cap)?;
            composite_family(factors, a.order_cap).map_err(usage)?
        }
    };
    let fam = match a.count {
        Some(k) if k > fam.len() => {
            return Err(usage(format!("--count {k} exceeds the {} squares constructed", fam.len())))
        }
        Some(k) => fam.truncated(k),
        None => fam,
    };
    let report = fam.validate();
    let text = fam.to_text();
    match (&a.out, a.json) {
        (Some(path), json) => {
            write_file(path, &text)?;
            if json {
                emit_json(out, &summary(&fam, &report, None))?;
            } else {
                emit(out, &family_text_report(&fam, &report))?;
            }
        }
        (None, true) => emit_json(out, &summary(&fam, &report, Some(text)))?,
        (None, false) => {
            emit(out, &text)?;
            err.write_all(family_text_report(&fam, &report).as_bytes()).map_err(usage)?;
        }
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn spec_order_ok(specs: &[FieldConstructionSpec], cap: usize) -> Result<(), CliError> {
    let order: u64 = specs.iter().map(|s| s.order() as u64).product();
    if order > cap as u64 {
        return Err(usage(format!("order {order} exceeds the order cap {cap} (raise --order-cap)")));
    }
    Ok(())
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> CmdResult {
    let fam = read_family(&a.input)?;
    let report = fam.validate();
    if a.json {
        emit_json(out, &summary(&fam, &report, None))?;
    } else {
        emit(out, &family_text_report(&fam, &report))?;
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn parse_index_list(s: &str, what: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|w| match w.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(usage(format!("{what}: `{w}` is not a positive integer"))),
        })
        .collect()
}

fn build_graph(sel: &GraphSelection) -> Result<(MoslsFamily, CellGraph), CliError> {
    let fam = read_family(&sel.input)?;
    let subset = match &sel.subset {
        Some(s) => parse_index_list(s, "--subset")?,
        None => (0..fam.len()).collect(),
    };
    let graph = if sel.mols_only { build_mols_graph(&fam, &subset) } else { build_mosls_graph(&fam, &subset) };
    Ok((fam, graph.map_err(graph_error)?))
}

fn graph_header(g: &CellGraph) -> String {
    let flavor = match g.flavor() {
        crate::graph::Flavor::Mols => "MOLS",
        crate::graph::Flavor::Mosls => "MOSLS",
    };
    let shape = g.shape();
    format!(
        "graph: {flavor}, order {}, type ({},{}), squares {{{}}}, {} vertices, {} edges\n",
        g.order(),
        shape.q(),
        shape.r(),
        fmt_subset(g.subset()),
        g.vertex_count(),
        g.edge_count()
    )
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    #[serde(flatten)]
    report: &'a SpectrumReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    ev1: Option<String>,
}

enum Ev1Outcome {
    Match,
    Mismatch,
    Inapplicable(String),
}

impl Ev1Outcome {
    fn label(&self) -> String {
        match self {
            Ev1Outcome::Match => "MATCH".into(),
            Ev1Outcome::Mismatch => "MISMATCH".into(),
            Ev1Outcome::Inapplicable(why) => format!("INAPPLICABLE({why})"),
        }
    }
}

fn cmd_spectrum(a: &SpectrumArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (fam, g) = build_graph(&a.graph)?;
    let dim = g.vertex_count();
    let exact = if a.exact || a.verify_ev1 {
        if dim > EXACT_DIM_CAP {
            return Err(usage(format!("exact spectrum of a {dim}-vertex graph exceeds the cap {EXACT_DIM_CAP}")));
        }
        true
    } else if a.numeric {
        false
    } else if dim > EXACT_DIM_CAP {
        let _ = writeln!(err, "warning: {dim} vertices exceeds {EXACT_DIM_CAP}; reporting numeric eigenvalues only");
        false
    } else {
        true
    };
    let tol = Tolerances { jacobi: a.tol, group: a.group_tol };
    let report = numeric_spectrum(g.adjacency(), tol, exact).map_err(usage)?;

    let ev1 = if a.verify_ev1 {
        Some(if a.graph.mols_only {
            Ev1Outcome::Inapplicable("MOLS graph without block edges".into())
        } else if !commute_check(&fam, g.subset()).map_err(graph_error)? {
            Ev1Outcome::Inapplicable("commutation fails".into())
        } else {
            let shape = fam.shape();
            match ev1_spectrum(shape.q() as u64, shape.r() as u64, g.subset().len() as u64) {
                Err(e) => Ev1Outcome::Inapplicable(e.to_string()),
                Ok(closed) => {
                    let expected = closed_to_poly(&closed).map_err(usage)?;
                    if report.charpoly.as_ref() == Some(&expected) {
                        Ev1Outcome::Match
                    } else {
                        Ev1Outcome::Mismatch
                    }
                }
            }
        })
    } else {
        None
    };

    if a.json {
        emit_json(out, &SpectrumJson { report: &report, ev1: ev1.as_ref().map(Ev1Outcome::label) })?;
    } else {
        let mut s = graph_header(&g);
        if let Some(p) = &report.charpoly {
            let _ = writeln!(s, "charpoly: {p}");
        }
        let _ = writeln!(s, "eigenvalues:");
        for e in &report.numeric {
            let _ = writeln!(s, "  {} ^{}", fmt_value(e.value), e.mult);
        }
        if let Some(r) = report.residual {
            let _ = writeln!(s, "residual: {r:.3e}");
        }
        if let Some(outcome) = &ev1 {
            let _ = writeln!(s, "ev1: {}", outcome.label());
        }
        emit(out, &s)?;
    }
    Ok(match ev1 {
        Some(Ev1Outcome::Mismatch) => 1,
        _ => 0,
    })
}

fn cmd_graph_export(a: &GraphExportArgs, out: &mut dyn Write) -> CmdResult {
    let (_, g) = build_graph(&a.graph)?;
    let text = match a.format {
        ExportFormat::Edges => g.edge_list(),
        ExportFormat::Matrix => g.matrix_dump(),
    };
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            emit(out, &graph_header(&g))?;
        }
        None => emit(out, &text)?,
    }
    Ok(0)
}

fn parse_pair(s: &str, what: &str) -> Result<(usize, usize), CliError> {
    match parse_index_list(s, what)?.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err(usage(format!("{what}: expected two comma-separated values, got `{s}`"))),
    }
}

#[derive(Serialize)]
struct SwitchJson {
    operation: String,
    sudoku: bool,
    certificate: Option<Certificate>,
    theorem: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
}

fn cmd_switch(a: &SwitchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let fam = read_family(&a.input)?;
    let index = match a.square {
        Some(0) => return Err(usage("--square is 1-based")),
        Some(k) if k > fam.len() => return Err(usage(format!("--square {k} but the file has {} squares", fam.len()))),
        Some(k) => k - 1,
        None if fam.len() == 1 => 0,
        None => return Err(usage(format!("the file has {} squares; pick one with --square", fam.len()))),
    };
    let square = &fam.squares()[index];

    let (operation, switched, spec) = if let Some(rows) = &a.rows {
        let (r, s) = parse_pair(rows, "--rows")?;
        let through = a.through.ok_or_else(|| usage("--rows needs --through"))?;
        let cycles = row_cycle_decompose(square, r, s).map_err(switching_error)?;
        let cycle = cycles
            .iter()
            .find(|c| c.symbols(square).contains(&through))
            .ok_or_else(|| usage(format!("symbol {through} does not occur in row {}", r + 1)))?;
        let switched = row_cycle_switch(square, cycle).map_err(switching_error)?;
        let cols = cycle.columns.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>().join(",");
        (format!("cycle switch of rows {},{} on columns {cols}", r + 1, s + 1), switched, None)
    } else {
        let line_block = match (a.row_block, a.col_block) {
            (Some(0), _) | (_, Some(0)) => return Err(usage("block indices are 1-based")),
            (Some(i), None) => LineBlock::Row(i - 1),
            (None, Some(j)) => LineBlock::Col(j - 1),
            _ => return Err(usage("give exactly one of --row-block, --col-block, or --rows with --through")),
        };
        let symbols = a.symbols.as_deref().ok_or_else(|| usage("--symbols K1,K2 is required"))?;
        let (k1, k2) = parse_pair(symbols, "--symbols")?;
        let spec = SwitchSpec::new(line_block, k1 as u32 + 1, k2 as u32 + 1);
        let switched = sudoku_symbol_switch(square, &spec).map_err(|e| match e {
            SwitchingError::InvalidSwitch { line, inside, outside } => usage(format!(
                "{} has symbol {inside} inside the block but {outside} outside it",
                one_based(line)
            )),
            other => switching_error(other),
        })?;
        let label = match line_block {
            LineBlock::Row(i) => format!("row-block {}", i + 1),
            LineBlock::Col(j) => format!("column-block {}", j + 1),
        };
        (format!("symbol switch {},{} in {label}", k1 + 1, k2 + 1), switched, Some(spec))
    };

    let sudoku = switched.is_sudoku().unwrap_or(false);
    let certificate = if sudoku && square.is_sudoku().unwrap_or(false) {
        Some(nonisomorphism_certificate(square, &switched).map_err(switching_error)?)
    } else {
        None
    };
    let (theorem, failed) = match spec {
        None => ("INAPPLICABLE(cycle switch)".to_string(), false),
        Some(spec) => match verify_switch_theorem(square, &spec) {
            Ok(check) if check.holds() => (format!("PASS (type ({},{}))", check.q, check.r), false),
            Ok(check) => (format!("FAIL (type ({},{}))", check.q, check.r), true),
            Err(SwitchingError::NotApplicable(why)) => (format!("INAPPLICABLE({why})"), false),
            Err(e) => return Err(switching_error(e)),
        },
    };

    let out_family = MoslsFamily::new(fam.shape(), vec![switched]).map_err(usage)?;
    let text = out_family.to_text();
    let to_stdout = a.out.is_none();
    if let Some(path) = &a.out {
        write_file(path, &text)?;
    }
    if a.json {
        let report = SwitchJson {
            operation,
            sudoku,
            certificate,
            theorem,
            family: to_stdout.then_some(text),
        };
        emit_json(out, &report)?;
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "switch: {operation}");
        let _ = writeln!(s, "sudoku: {}", yes_no(sudoku));
        match &certificate {
            Some(c) => {
                let _ = write!(s, "certificate: {}", c.verdict);
                if let Some(i) = c.differing_coefficient_index {
                    let _ = write!(s, " (coefficients of t^{i} differ)");
                }
                s.push('\n');
            }
            None => s.push_str("certificate: INAPPLICABLE(not Sudoku)\n"),
        }
        let _ = writeln!(s, "theorem: {theorem}");
        if to_stdout {
            emit(out, &text)?;
            err.write_all(s.as_bytes()).map_err(usage)?;
        } else {
            emit(out, &s)?;
        }
    }
    Ok(if failed { 1 } else { 0 })
}

fn one_based(line: crate::switching::Line) -> String {
    match line {
        crate::switching::Line::Row(i) => format!("row {}", i + 1),
        crate::switching::Line::Col(j) => format!("column {}", j + 1),
    }
}

fn family_charpoly(path: &Path, mols_only: bool) -> Result<(CellGraph, IntPolynomial), CliError> {
    let sel = GraphSelection { input: path.to_path_buf(), subset: None, mols_only };
    let (_, g) = build_graph(&sel)?;
    if g.vertex_count() > EXACT_DIM_CAP {
        return Err(usage(format!("{} vertices exceeds the exact cap {EXACT_DIM_CAP}", g.vertex_count())));
    }
    let p = crate::spectra::charpoly_exact(g.adjacency());
    Ok((g, p))
}

fn cmd_compare(a: &CompareArgs, out: &mut dyn Write) -> CmdResult {
    let fa = read_family(&a.input)?;
    let fb = read_family(&a.with)?;
    let cert = if fa.len() == 1 && fb.len() == 1 && !a.mols_only {
        nonisomorphism_certificate(&fa.squares()[0], &fb.squares()[0]).map_err(switching_error)?
    } else {
        if fa.shape() != fb.shape() {
            return Err(usage("families have different shapes"));
        }
        let (_, pa) = family_charpoly(&a.input, a.mols_only)?;
        let (_, pb) = family_charpoly(&a.with, a.mols_only)?;
        let differing_coefficient_index = pa.first_difference(&pb);
        let verdict = if differing_coefficient_index.is_some() {
            crate::switching::Verdict::NotIsomorphic
        } else {
            crate::switching::Verdict::Inconclusive
        };
        Certificate { verdict, charpoly_a: pa, charpoly_b: pb, differing_coefficient_index }
    };
    if a.json {
        emit_json(out, &cert)?;
    } else {
        let mut s = format!("verdict: {}\n", cert.verdict);
        if let Some(i) = cert.differing_coefficient_index {
            let _ = writeln!(s, "first differing coefficient: t^{i}");
        }
        let _ = writeln!(s, "charpoly a: {}", cert.charpoly_a);
        let _ = writeln!(s, "charpoly b: {}", cert.charpoly_b);
        emit(out, &s)?;
    }
    Ok(0)
}

/// One row of the table of lower bounds on the number of MOSLS.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub order: usize,
    #[serde(rename = "type")]
    pub shape: (usize, usize),
    /// The tabulated value, e.g. `6` or `>= 2`.
    pub bound: String,
    pub constructed: Option<usize>,
    pub status: String,
}

/// `(order, q, r, tabulated f, exact?, factorization)`; an empty
/// factorization marks a value taken from the literature.
type TableEntry = (usize, usize, usize, usize, bool, &'static [(u32, u32, u32)]);

const TABLE: &[TableEntry] = &[
    (2, 1, 2, 1, true, &[(2, 0, 1)]),
    (3, 1, 3, 2, true, &[(3, 0, 1)]),
    (4, 1, 4, 3, true, &[(2, 0, 2)]),
    (4, 2, 2, 2, true, &[(2, 1, 1)]),
    (5, 1, 5, 4, true, &[(5, 0, 1)]),
    (6, 1, 6, 1, true, &[(2, 0, 1), (3, 0, 1)]),
    (6, 2, 3, 1, true, &[(2, 1, 0), (3, 0, 1)]),
    (7, 1, 7, 6, true, &[(7, 0, 1)]),
    (8, 1, 8, 7, true, &[(2, 0, 3)]),
    (8, 2, 4, 4, true, &[(2, 1, 2)]),
    (9, 1, 9, 8, true, &[(3, 0, 2)]),
    (9, 3, 3, 6, true, &[(3, 1, 1)]),
    (10, 1, 10, 2, false, &[]),
    (10, 2, 5, 1, false, &[(2, 1, 0), (5, 0, 1)]),
    (11, 1, 11, 10, true, &[(11, 0, 1)]),
    (12, 1, 12, 5, false, &[]),
    (12, 2, 6, 2, false, &[(2, 1, 1), (3, 0, 1)]),
    (12, 3, 4, 2, false, &[(3, 1, 0), (2, 0, 2)]),
];

/// Build and validate every constructive row up to `max_order`.
pub fn table_rows(max_order: usize, order_cap: usize) -> Vec<TableRow> {
    TABLE
        .iter()
        .filter(|e| e.0 <= max_order)
        .map(|&(order, q, r, f, exact, factors)| {
            let bound = if exact { f.to_string() } else { format!(">= {f}") };
            let row = |constructed, status: &str| TableRow {
                order,
                shape: (q, r),
                bound: bound.clone(),
                constructed,
                status: status.to_string(),
            };
            if factors.is_empty() {
                return row(None, "SKIPPED(external)");
            }
            let specs: Result<Vec<_>, _> =
                factors.iter().map(|&(p, m, n)| FieldConstructionSpec::new(p, m, n)).collect();
            let fam = match specs.and_then(|s| composite_family(&s, order_cap)) {
                Ok(fam) => fam,
                Err(e) => return row(None, &format!("FAILED({e})")),
            };
            let got = fam.len();
            let shape_ok = fam.shape().q() == q && fam.shape().r() == r;
            let count_ok = if exact { got == f } else { got >= f };
            let status = if !shape_ok {
                "FAILED(shape)"
            } else if !count_ok {
                "FAILED(count)"
            } else if !fam.validate().all_pass() {
                "FAILED(validation)"
            } else {
                "VERIFIED"
            };
            row(Some(got), status)
        })
        .collect()
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> CmdResult {
    if a.max_order > a.order_cap {
        return Err(usage(format!("--max-order {} exceeds the order cap {}", a.max_order, a.order_cap)));
    }
    let rows = table_rows(a.max_order, a.order_cap);
    if a.json {
        emit_json(out, &rows)?;
    } else {
        let mut s = String::from("order  type     f      built  status\n");
        for r in &rows {
            let built = r.constructed.map_or("-".to_string(), |c| c.to_string());
            let shape = format!("({},{})", r.shape.0, r.shape.1);
            let _ = writeln!(s, "{:<6} {:<8} {:<6} {:<6} {}", r.order, shape, r.bound, built, r.status);
        }
        emit(out, &s)?;
    }
    let failed = rows.iter().any(|r| r.status.starts_with("FAILED"));
    Ok(if failed { 1 } else { 0 })
}
