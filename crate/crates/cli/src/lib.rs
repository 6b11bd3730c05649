//! Command-line front end for the `ebundle` library.
//!
//! Every subcommand builds a textual body and a list of notices. The body goes
//! to `--output` (written atomically) or stdout; notices go to stderr.
//!
//! Exit codes: 0 on success (including reproduced counterexamples), 1 when an
//! axiom proved for the e-bundle is violated or a counterexample fails to
//! reproduce, 2 on usage, I/O or parse errors.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ebundle::axioms::{
    check_global_impact, check_impact_bundle, check_impact_measure, check_strong_impact, eta_theta, fixture_eta_theta,
    fixture_global, fixture_n_theta, generate_mu_ordered_pairs, generate_pairs, n_theta, AtTheta, AxiomReport,
    CheckOptions, GeneratorConfig, RelationKind,
};
use ebundle::bundles::{
    classical_h, e_theta, r_index_squared, sweep, sweep_row, zhang_e, zhang_e_squared, BundleId, SweepRow, SweepTable,
};
use ebundle::convergence::{run_study, Family, FunctionSequence, StudyGrids};
use ebundle::function_space::{cumulative_order, from_citations, linspace, parse_input, FunctionSpec, InputDoc};
use ebundle::RankFunction;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Default number of θ points when no grid is given.
pub const DEFAULT_THETA_POINTS: usize = 101;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: ebundle::Error },
    #[error(transparent)]
    Core(#[from] ebundle::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "ebundle", version, about = "Generalized e-bundle and impact-bundle toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scalar indices and, optionally, all bundles at chosen theta values.
    Eval(EvalArgs),
    /// Tabulate the e, h, mu and I bundles over a theta grid.
    Sweep(SweepArgs),
    /// Run the impact-bundle axiom suite on seeded random pairs.
    Axioms(AxiomsArgs),
    /// Convergence study for a built-in sequence family.
    Converge(ConvergeArgs),
    /// Reproduce the three counterexample fixtures.
    Counterexamples(CounterexampleArgs),
    /// Continuize citation counts into a function spec.
    Ingest(IngestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Function spec (JSON) or citation file.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub input: Option<PathBuf>,
    /// Inline function spec, e.g. '{"type":"linear","S":10,"T":20}'.
    #[arg(long)]
    pub spec: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaGrid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    /// Uniform theta grid `lo:hi:count`.
    #[arg(long, value_parser = parse_theta_grid, conflicts_with = "theta_list")]
    pub theta: Option<ThetaGrid>,
    /// Explicit theta values `v1,v2,...`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub theta_list: Option<Vec<f64>>,
}

impl ThetaArgs {
    fn values(&self) -> Option<Vec<f64>> {
        match (&self.theta, &self.theta_list) {
            (Some(g), _) => Some(linspace(g.lo, g.hi, g.count)),
            (None, Some(list)) => Some(list.clone()),
            (None, None) => None,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub theta: ThetaArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub theta: ThetaArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AxiomsArgs {
    #[arg(long, default_value = "e", value_parser = parse_bundle)]
    pub bundle: BundleId,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Pairs generated per relation kind.
    #[arg(long, default_value_t = 200)]
    pub pairs: usize,
    /// Abscissae per pair used to build the theta sample.
    #[arg(long, default_value_t = DEFAULT_THETA_POINTS)]
    pub grid: usize,
    /// Also check the single-theta measure axioms at these values.
    #[arg(long, value_delimiter = ',')]
    pub theta_list: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    /// linear, shifted, zipf, zipf:BETA or power.
    #[arg(long, default_value = "linear")]
    pub family: String,
    #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000")]
    pub n_list: Vec<u32>,
    /// Grid size for both the abscissa and theta sup norms.
    #[arg(long, default_value_t = ebundle::tolerances::DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Citation counts: one per line, or {"citations":[...]}.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_theta_grid(s: &str) -> Result<ThetaGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, count] = parts.as_slice() else {
        return Err(format!("expected lo:hi:count, got {s:?}"));
    };
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    let count: usize = count.trim().parse().map_err(|_| format!("bad count {count:?}"))?;
    if count < 1 {
        return Err("theta count must be at least 1".into());
    }
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(format!("empty theta interval {lo}:{hi}"));
    }
    Ok(ThetaGrid { lo, hi, count })
}

fn parse_bundle(s: &str) -> Result<BundleId, String> {
    s.parse().map_err(|e: ebundle::Error| e.to_string())
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub notices: Vec<String>,
    pub code: i32,
}

/// A loaded function plus notices from continuization.
struct Loaded {
    function: RankFunction,
    notices: Vec<String>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn continuize(counts: &[f64]) -> Result<Loaded, ebundle::Error> {
    let c = from_citations(counts)?;
    let mut notices = Vec::new();
    if c.resorted {
        notices.push("citation counts were not sorted; sorted in decreasing order".to_string());
    }
    if c.zeros_dropped > 0 {
        notices.push(format!("{} zero counts dropped", c.zeros_dropped));
    }
    if c.ties_broken > 0 {
        notices.push(format!("{} tied counts lowered to keep the function strictly decreasing", c.ties_broken));
    }
    Ok(Loaded { function: c.function.into(), notices })
}

fn load_doc(text: &str) -> Result<Loaded, ebundle::Error> {
    match parse_input(text)? {
        InputDoc::Function(spec) => Ok(Loaded { function: spec.build()?, notices: Vec::new() }),
        InputDoc::Citations(counts) => continuize(&counts),
    }
}

fn load(args: &InputArgs) -> Result<Loaded, CliError> {
    match (&args.input, &args.spec) {
        (Some(path), _) => load_doc(&read(path)?).map_err(|source| CliError::Input { path: path.clone(), source }),
        (None, Some(spec)) => Ok(load_doc(spec)?),
        (None, None) => Err(CliError::Usage("either --input or --spec is required".into())),
    }
}

fn opt(v: Option<f64>) -> Value {
    v.filter(|x| x.is_finite()).map_or(Value::Null, Value::from)
}

fn text_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

/// Default θ grid: `DEFAULT_THETA_POINTS` points over `Q_Z` for the e-bundle,
/// capped at `Z(T/100)` when the range is unbounded.
fn default_thetas(f: &RankFunction) -> Result<Vec<f64>, CliError> {
    let r = f.admissible_range();
    let hi = if r.is_unbounded() { f.evaluate(f.endpoint() / 100.0)? } else { r.hi };
    Ok(linspace(r.lo, hi, DEFAULT_THETA_POINTS))
}

pub fn cmd_eval(args: &EvalArgs) -> Result<Outcome, CliError> {
    let Loaded { function: f, notices } = load(&args.input)?;
    let range = f.admissible_range();
    let h = classical_h(&f).ok();
    let r2 = r_index_squared(&f).ok();
    let ze2 = zhang_e_squared(&f).ok();
    let ze = zhang_e(&f).ok();
    let rows: Vec<SweepRow> = args.theta.values().unwrap_or_default().into_iter().map(|t| sweep_row(&f, t)).collect();

    let body = match args.format {
        Format::Json => {
            let doc = json!({
                "function": serde_json::to_value(FunctionSpec::from(&f)).expect("spec serializes"),
                "admissible": {"lo": range.lo, "hi": opt(Some(range.hi))},
                "classical_h": opt(h),
                "r_squared": opt(r2),
                "zhang_e_squared": opt(ze2),
                "zhang_e": opt(ze),
                "rows": rows,
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Text | Format::Csv => {
            let mut s = String::new();
            writeln!(s, "function: {f}").unwrap();
            writeln!(s, "admissible theta (e): {range}").unwrap();
            writeln!(s, "classical h: {}", text_cell(h)).unwrap();
            writeln!(s, "R^2: {}", text_cell(r2)).unwrap();
            writeln!(s, "zhang e^2 (R^2 - h^2): {}", text_cell(ze2)).unwrap();
            writeln!(s, "zhang e: {}", text_cell(ze)).unwrap();
            if !rows.is_empty() {
                s.push('\n');
                s.push_str(&SweepTable { rows }.to_csv());
            }
            s
        }
    };
    Ok(Outcome { body, notices, code: EXIT_OK })
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<Outcome, CliError> {
    let Loaded { function: f, notices } = load(&args.input)?;
    let thetas = match args.theta.values() {
        Some(v) => v,
        None => default_thetas(&f)?,
    };
    let table = sweep(&f, &thetas);
    let body = match args.format {
        Format::Json => table.to_json() + "\n",
        Format::Csv | Format::Text => table.to_csv(),
    };
    Ok(Outcome { body, notices, code: EXIT_OK })
}

fn report_table(reports: &[AxiomReport]) -> String {
    let mut s = String::new();
    for r in reports {
        writeln!(s, "{r}").unwrap();
        for note in &r.notes {
            writeln!(s, "    note: {note}").unwrap();
        }
        if let Some(v) = r.violations.first() {
            let theta = v.theta.map_or_else(|| "-".to_string(), |t| t.to_string());
            writeln!(
                s,
                "    first violation: pair {} theta {} lhs {} rhs {} gap {:e}",
                v.pair, theta, v.lhs, v.rhs, v.gap
            )
            .unwrap();
        }
    }
    s
}

pub fn cmd_axioms(args: &AxiomsArgs) -> Result<Outcome, CliError> {
    if args.pairs < 1 {
        return Err(CliError::Usage("--pairs must be at least 1".into()));
    }
    if args.grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let cfg =
        GeneratorConfig { seed: args.seed, count: args.pairs * RelationKind::ALL.len(), ..GeneratorConfig::default() };
    let pairs = generate_pairs(&cfg)?;
    let mut reports: Vec<AxiomReport> = check_impact_bundle(&args.bundle, &pairs, args.grid)?.into();
    let mut global = Vec::new();

    if let Some(thetas) = &args.theta_list {
        let mut all = generate_mu_ordered_pairs(&GeneratorConfig { count: args.pairs, ..cfg.clone() })?;
        all.extend(pairs.iter().cloned());
        let opts = CheckOptions { theta_grid: args.grid, ..CheckOptions::default() };
        for &theta in thetas {
            let m = AtTheta::new(args.bundle, theta);
            reports.extend(check_impact_measure(&m, &all, &opts)?);
            reports.extend(check_strong_impact(&m, &all, &opts)?);
            global.push(check_global_impact(&m, &all)?);
        }
    }

    let violated = reports.iter().any(|r| !r.passed);
    let mut notices = Vec::new();
    let code = if !violated {
        EXIT_OK
    } else if args.bundle == BundleId::E {
        EXIT_VIOLATION
    } else {
        notices.push(format!(
            "violations reported for the {} bundle; only the e-bundle's axioms are asserted",
            args.bundle
        ));
        EXIT_OK
    };
    if global.iter().any(|r| !r.passed) {
        notices.push("global impact is not claimed; violations there are informational".into());
    }

    let body = match args.format {
        Format::Json => {
            let doc = json!({
                "bundle": args.bundle.to_string(),
                "seed": args.seed,
                "pairs_per_kind": args.pairs,
                "passed": !violated,
                "reports": reports,
                "global": global,
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Text | Format::Csv => {
            let mut s =
                format!("bundle {} | seed {} | {} pairs per relation kind\n", args.bundle, args.seed, args.pairs);
            s.push_str(&report_table(&reports));
            if !global.is_empty() {
                s.push_str("informational:\n");
                s.push_str(&report_table(&global));
            }
            writeln!(s, "passed: {}", !violated).unwrap();
            s
        }
    };
    Ok(Outcome { body, notices, code })
}

pub fn cmd_converge(args: &ConvergeArgs) -> Result<Outcome, CliError> {
    let family: Family = args.family.parse()?;
    let seq = FunctionSequence::new(family, args.n_list.clone())?;
    if args.grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let report = run_study(&seq, StudyGrids { function: args.grid, theta: args.grid })?;
    let mut notices = Vec::new();
    if report.pointwise_discontinuity == Some(true) {
        notices.push("sequence has no limit in the function space; its pointwise limit is discontinuous".into());
    }
    let body = match args.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_string(),
    };
    Ok(Outcome { body, notices, code: EXIT_OK })
}

/// One reproduced claim of a counterexample fixture.
struct Claim {
    name: &'static str,
    line: String,
    reproduced: bool,
    values: Value,
}

fn counterexample_claims() -> Result<Vec<Claim>, CliError> {
    let mut claims = Vec::new();

    let g = fixture_global();
    let (y, z) = (&g.pair.upper, &g.pair.lower);
    let (ey, ez) = (e_theta(y, g.theta)?, e_theta(z, g.theta)?);
    let order = cumulative_order(z, y)?;
    let ok = order.precedes() && ey == ez;
    claims.push(Claim {
        name: "global",
        line: format!(
            "e_1(Z)={ez:.6}, e_1(Y)={ey:.6}, Z<Y cumulatively: {} -> e_theta not global: {}",
            order.precedes(),
            if ok { "REPRODUCED" } else { "NOT REPRODUCED" }
        ),
        reproduced: ok,
        values: json!({"e_Z": ez, "e_Y": ey, "z_precedes_y": order.precedes()}),
    });

    let nf = fixture_n_theta();
    let (y, z) = (&nf.pair.upper, &nf.pair.lower);
    let (ny, nz) = (n_theta(y, nf.theta)?, n_theta(z, nf.theta)?);
    let (ey, ez) = (e_theta(y, nf.theta)?, e_theta(z, nf.theta)?);
    let ok = nf.pair.verified && ny < nz && ey > ez;
    claims.push(Claim {
        name: "n_theta",
        line: format!(
            "Y > Z on [0,1): {}, n_1(Y)={ny:.6} < n_1(Z)={nz:.6} while e_1(Y)={ey:.6} > e_1(Z)={ez:.6}: {}",
            nf.pair.verified,
            if ok { "REPRODUCED" } else { "NOT REPRODUCED" }
        ),
        reproduced: ok,
        values: json!({"n_Y": ny, "n_Z": nz, "e_Y": ey, "e_Z": ez}),
    });

    let ef = fixture_eta_theta();
    let (y, z) = (&ef.pair.upper, &ef.pair.lower);
    let (hy, hz) = (eta_theta(y, ef.theta)?, eta_theta(z, ef.theta)?);
    let ok = ef.pair.verified && hz > hy;
    claims.push(Claim {
        name: "eta_theta",
        line: format!(
            "Z <= Y: {}, eta(Z)={hz:.6} > eta(Y)={hy:.6}: {}",
            ef.pair.verified,
            if ok { "REPRODUCED" } else { "NOT REPRODUCED" }
        ),
        reproduced: ok,
        values: json!({"eta_Z": hz, "eta_Y": hy}),
    });
    Ok(claims)
}

pub fn cmd_counterexamples(args: &CounterexampleArgs) -> Result<Outcome, CliError> {
    let claims = counterexample_claims()?;
    let all = claims.iter().all(|c| c.reproduced);
    let body = match args.format {
        Format::Json => {
            let doc: Vec<Value> = claims
                .iter()
                .map(|c| json!({"fixture": c.name, "reproduced": c.reproduced, "values": c.values}))
                .collect();
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Text | Format::Csv => claims.iter().map(|c| format!("{:<9} {}\n", c.name, c.line)).collect(),
    };
    let (code, notice) = if all {
        (EXIT_OK, "all counterexamples reproduced as expected")
    } else {
        (EXIT_VIOLATION, "a counterexample did not reproduce")
    };
    Ok(Outcome { body, notices: vec![notice.to_string()], code })
}

pub fn cmd_ingest(args: &IngestArgs) -> Result<Outcome, CliError> {
    let text = read(&args.input)?;
    let wrap = |source| CliError::Input { path: args.input.clone(), source };
    let loaded = match parse_input(&text).map_err(wrap)? {
        InputDoc::Citations(counts) => continuize(&counts).map_err(wrap)?,
        InputDoc::Function(_) => {
            return Err(CliError::Usage(format!("{} is a function spec, not citation data", args.input.display())))
        }
    };
    let body = FunctionSpec::from(&loaded.function).to_json() + "\n";
    Ok(Outcome { body, notices: loaded.notices, code: EXIT_OK })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Axioms(a) => cmd_axioms(a),
        Command::Converge(a) => cmd_converge(a),
        Command::Counterexamples(a) => cmd_counterexamples(a),
        Command::Ingest(a) => cmd_ingest(a),
    }
}

fn output_path(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Eval(a) => a.output.as_deref(),
        Command::Sweep(a) => a.output.as_deref(),
        Command::Axioms(a) => a.output.as_deref(),
        Command::Converge(a) => a.output.as_deref(),
        Command::Counterexamples(a) => a.output.as_deref(),
        Command::Ingest(a) => a.output.as_deref(),
    }
}

/// Write `contents` to a sibling temporary file, then rename it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let name =
        path.file_name().ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Run a parsed command line, deliver its output and return the exit code.
pub fn execute(cli: &Cli) -> i32 {
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    if let Some(path) = output_path(cli) {
        if let Err(source) = write_atomic(path, &outcome.body) {
            eprintln!("error: {}", CliError::Io { path: path.to_path_buf(), source });
            return EXIT_ERROR;
        }
    } else {
        print!("{}", outcome.body);
    }
    for n in &outcome.notices {
        eprintln!("notice: {n}");
    }
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("ebundle").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn theta_grid_parsing() {
        assert_eq!(parse_theta_grid("0:10:11").unwrap(), ThetaGrid { lo: 0.0, hi: 10.0, count: 11 });
        assert!(parse_theta_grid("0:10").is_err());
        assert!(parse_theta_grid("0:10:0").is_err());
        assert!(parse_theta_grid("5:1:3").is_err());
    }

    #[test]
    fn eval_linear_example() {
        let cli =
            parse(&["eval", "--spec", r#"{"type":"linear","S":10,"T":20}"#, "--theta-list", "4", "--format", "json"]);
        let out = run(&cli).unwrap();
        let v: Value = serde_json::from_str(&out.body).unwrap();
        assert_eq!(v["rows"][0]["e"].as_f64().unwrap(), 36.0);
    }

    #[test]
    fn eval_without_theta_prints_scalars_only() {
        let cli = parse(&["eval", "--spec", r#"{"type":"linear","S":10,"T":20}"#]);
        let out = run(&cli).unwrap();
        assert!(out.body.contains("classical h"));
        assert!(!out.body.contains("theta,e"));
    }

    #[test]
    fn input_and_spec_conflict() {
        let r = Cli::try_parse_from(["ebundle", "eval", "--input", "x", "--spec", "{}"]);
        assert!(r.is_err());
        assert!(Cli::try_parse_from(["ebundle", "eval"]).is_err());
    }

    #[test]
    fn counterexamples_reproduce() {
        let out = run(&parse(&["counterexamples"])).unwrap();
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.body.matches("REPRODUCED").count(), 3);
        assert!(!out.body.contains("NOT REPRODUCED"));
    }

    #[test]
    fn unknown_family_is_an_error() {
        assert!(run(&parse(&["converge", "--family", "bogus"])).is_err());
    }
}
