//! Command-line front end: argument parsing, check orchestration and report
//! rendering.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::counting::{self, Method, TraceClass};
use crate::cuspidal::{self, regular_characters, RegularCharacter};
use crate::error::Error;
use crate::ffield::{FieldTower, DEFAULT_TABLE_CAP};
use crate::jacquet::{self, expected_dim, JacquetEngine, Strategy, TwistSpec};
use crate::matq::{self, Mat, DEFAULT_ENUM_CAP};
use crate::modelrep;

#[derive(Debug, Parser)]
#[command(
    name = "twisted-jacquet",
    version,
    about = "Exact twisted Jacquet modules of cuspidal representations of GL(2n, F_q)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of the twisted Jacquet module for each selected character.
    Dim(RunArgs),
    /// Compare the Jacquet character with the model character on M_psiA.
    Main(RunArgs),
    /// Rank and trace-class counting formulas against enumeration.
    Lemmas(RunArgs),
    /// Both sides of the q-Pochhammer rank-sum identity.
    Identity(IdentityArgs),
    /// One cuspidal character value.
    Char(CharArgs),
    /// Timings of the main computations.
    Bench(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u32,
    /// q = p^e.
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Block size; the group is GL(2n, F_q).
    #[arg(long)]
    pub n: usize,
    /// `e11`, `corner`, `zero`, or a file holding an n x n matrix.
    #[arg(long, default_value = "corner")]
    pub twist: String,
    /// `all` or an index into the list of regular character orbits.
    #[arg(long, default_value = "all")]
    pub theta: String,
    /// Largest group or matrix space that may be enumerated.
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    pub enum_cap: u128,
    /// Largest discrete-log table.
    #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
    pub table_cap: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct IdentityArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub q: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CharArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// If given, the matrix must be 2n x 2n.
    #[arg(long)]
    pub n: Option<usize>,
    /// Index k of the character γ^j ↦ ζ^{kj} of F_{q^m}^×.
    #[arg(long)]
    pub theta: u64,
    /// Matrix text such as `0,1;1,1`.
    #[arg(
        long,
        conflicts_with = "matrix_file",
        required_unless_present = "matrix_file"
    )]
    pub matrix: Option<String>,
    #[arg(long)]
    pub matrix_file: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
    pub table_cap: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational output with nothing to compare against.
    Info,
}

/// One check outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub check: String,
    pub statement: String,
    pub inputs: Value,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    pub wall_ms: f64,
}

impl Record {
    fn compare(
        check: &str,
        statement: &str,
        inputs: Value,
        expected: impl ToString,
        computed: impl ToString,
        wall_ms: f64,
    ) -> Record {
        let expected = expected.to_string();
        let computed = computed.to_string();
        Record {
            check: check.into(),
            statement: statement.into(),
            inputs,
            verdict: if expected == computed {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            expected,
            computed,
            details: None,
            wall_ms,
        }
    }

    fn flag(check: &str, statement: &str, inputs: Value, ok: bool, wall_ms: f64) -> Record {
        Record::compare(check, statement, inputs, true, ok, wall_ms)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let headers = ["check", "inputs", "expected", "computed", "verdict", "ms"];
        let rows: Vec<[String; 6]> = self
            .records
            .iter()
            .map(|r| {
                [
                    r.check.clone(),
                    compact_inputs(&r.inputs),
                    r.expected.clone(),
                    r.computed.clone(),
                    serde_json::to_value(r.verdict)
                        .unwrap()
                        .as_str()
                        .unwrap()
                        .to_string(),
                    format!("{:.1}", r.wall_ms),
                ]
            })
            .collect();
        let mut widths = headers.map(|h| h.chars().count());
        for row in &rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let line = |cells: &[String], out: &mut String| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}", w = *w))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&headers.map(String::from), &mut out);
        for row in &rows {
            line(row, &mut out);
        }
        let fails = self
            .records
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .count();
        let _ = writeln!(out, "{} checks, {} failed", self.records.len(), fails);
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Json => self.to_json(),
        }
    }
}

fn compact_inputs(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

/// Failure to run, as opposed to a check that ran and failed.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Verification(m) => write!(f, "verification failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(m) => CliError::Verification(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64() * 1e3)
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn tower_for(p: u32, e: u32, m: u32, cap: u64) -> CliResult<FieldTower> {
    if m == 0 {
        return Err(usage("n must be at least 1"));
    }
    Ok(FieldTower::with_cap(p, e, m, cap)?)
}

/// Resolves `--twist` for block size `n`.
pub fn parse_twist(tower: &FieldTower, spec: &str, n: usize) -> CliResult<TwistSpec> {
    let twist = match spec {
        "e11" => TwistSpec::e11(n),
        "corner" => TwistSpec::corner(n),
        "zero" => TwistSpec::zero(n),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read twist matrix {path}: {e}")))?;
            TwistSpec::from_matrix(tower, Mat::parse(text.trim(), tower, 1)?)?
        }
    };
    if twist.n() != n {
        return Err(usage(format!(
            "twist matrix is {0}x{0}, expected {n}x{n}",
            twist.n()
        )));
    }
    Ok(twist)
}

/// Resolves `--theta` into orbit representatives.
pub fn select_thetas(tower: &FieldTower, m: u32, spec: &str) -> CliResult<Vec<RegularCharacter>> {
    let all = regular_characters(tower, m)?;
    if spec == "all" {
        return Ok(all);
    }
    let idx: usize = spec.parse().map_err(|_| {
        usage(format!(
            "--theta must be `all` or an orbit index, got {spec}"
        ))
    })?;
    all.get(idx).copied().map(|t| vec![t]).ok_or_else(|| {
        usage(format!(
            "orbit index {idx} out of range: there are {} regular orbits",
            all.len()
        ))
    })
}

fn base_inputs(a: &RunArgs) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("p".into(), json!(a.p));
    m.insert("e".into(), json!(a.e));
    m.insert("n".into(), json!(a.n));
    m
}

fn with(mut base: serde_json::Map<String, Value>, extra: Value) -> Value {
    if let Value::Object(e) = extra {
        base.extend(e);
    }
    Value::Object(base)
}

fn run_dim(a: &RunArgs) -> CliResult<Report> {
    let tower = tower_for(a.p, a.e, 2 * a.n as u32, a.table_cap)?;
    let twist = parse_twist(&tower, &a.twist, a.n)?;
    let thetas = select_thetas(&tower, 2 * a.n as u32, &a.theta)?;
    let engine = JacquetEngine::new(&tower, twist.clone(), a.enum_cap)?;
    let q = tower.q();
    let expected = match twist.rank() {
        0 => Some(BigInt::from(0)),
        1 => Some(expected_dim(q, a.n)),
        _ => None,
    };
    let mut report = Report::default();
    let twist_text = twist.matrix().to_text();
    for th in &thetas {
        let (d, ms) = timed(|| engine.dim(th, Strategy::Direct));
        let d = d?;
        let inputs = with(
            base_inputs(a),
            json!({"twist": twist_text, "theta": th.index(), "strategy": "direct"}),
        );
        let statement = "dimension of the twisted Jacquet module";
        report.records.push(match &expected {
            Some(e) => Record::compare("jacquet-dimension", statement, inputs, e, &d, ms),
            None => Record {
                check: "jacquet-dimension".into(),
                statement: format!("{statement} (rank(A) >= 2: outside the proven range)"),
                inputs,
                expected: String::new(),
                computed: d.to_string(),
                verdict: Verdict::Info,
                details: None,
                wall_ms: ms,
            },
        });
        if twist.rank() == 1 {
            let (s, ms) = timed(|| engine.dim(th, Strategy::Stratified));
            report.records.push(Record::compare(
                "jacquet-dimension",
                "dimension via the rank-stratified sum",
                with(
                    base_inputs(a),
                    json!({"twist": twist_text, "theta": th.index(), "strategy": "stratified"}),
                ),
                expected.as_ref().unwrap(),
                s?,
                ms,
            ));
        }
    }
    Ok(report)
}

fn run_main(a: &RunArgs) -> CliResult<Report> {
    let tower = tower_for(a.p, a.e, 2 * a.n as u32, a.table_cap)?;
    let twist = parse_twist(&tower, &a.twist, a.n)?;
    let thetas = select_thetas(&tower, 2 * a.n as u32, &a.theta)?;
    let (report, ms) = timed(|| {
        modelrep::main_theorem_check(&tower, &thetas, &twist, a.out.format == Format::Json)
    });
    let report = report?;
    let per = ms / report.orbits.len().max(1) as f64;
    let mut out = Report::default();
    for o in &report.orbits {
        let mut r = Record::compare(
            "main-theorem",
            if report.degenerate {
                "Jacquet character equals theta restricted to F^x (n = 1)"
            } else {
                "Jacquet character equals theta|F^x (x) Ind_{U_A}^{H_A} mu on M_psiA"
            },
            with(
                base_inputs(a),
                json!({"twist": report.twist, "theta": o.theta, "elements": report.elements}),
            ),
            format!("0 mismatches, dimension {}", report.expected_dimension),
            format!("{} mismatches, dimension {}", o.mismatches, o.dimension),
            per,
        );
        let mut details = serde_json::Map::new();
        if let Some(m) = &o.first_mismatch {
            details.insert("first_mismatch".into(), json!(m));
        }
        if let Some(t) = &o.table {
            details.insert("table".into(), serde_json::to_value(t).unwrap());
        }
        if !details.is_empty() {
            r.details = Some(Value::Object(details));
        }
        out.records.push(r);
    }
    Ok(out)
}

fn run_lemmas(a: &RunArgs) -> CliResult<Report> {
    let n = a.n;
    let tower = tower_for(a.p, a.e, 2 * n as u32, a.table_cap)?;
    let q = tower.q();
    let mut report = Report::default();
    let mut shapes = vec![(n, n)];
    if n >= 2 {
        shapes.push((n, n - 1));
    }
    for (rows, cols) in shapes {
        let hist = matq::all_matrices(&tower, rows, cols, 1, a.enum_cap)?;
        let f = tower.base();
        let mut counts = vec![0u64; rows.min(cols) + 1];
        for x in &hist {
            counts[x.rank(f)] += 1;
        }
        for (r, c) in counts.iter().enumerate() {
            let (closed, ms) = timed(|| counting::mat_count(rows, cols, r as i64, q));
            report.records.push(Record::compare(
                "rank-count",
                "number of rows x cols matrices of rank r",
                with(base_inputs(a), json!({"rows": rows, "cols": cols, "r": r})),
                c,
                closed,
                ms,
            ));
        }
    }
    for r in 1..=n {
        let (ok, ms) = timed(|| counting::rank_recurrence_check(n, r, q));
        report.records.push(Record::flag(
            "rank-recurrence",
            "rank counts obey the column-deletion recurrence",
            with(base_inputs(a), json!({"r": r})),
            ok?,
            ms,
        ));
    }
    for (name, twist) in [("e11", TwistSpec::e11(n)), ("corner", TwistSpec::corner(n))] {
        for r in 0..=n {
            for class in [TraceClass::Zero, TraceClass::Nonzero] {
                let inputs = with(
                    base_inputs(a),
                    json!({"twist": name, "r": r, "trace": class}),
                );
                let (closed, ms) =
                    timed(|| counting::y_count(&tower, twist.matrix(), r, class, Method::Closed));
                let oracle =
                    counting::y_count(&tower, twist.matrix(), r, class, Method::Oracle(&tower))?;
                report.records.push(Record::compare(
                    "trace-class-count",
                    "rank-r matrices X with prescribed tr(AX)",
                    inputs,
                    oracle,
                    closed?,
                    ms,
                ));
            }
        }
    }
    for r in 0..=n {
        let a0 = TwistSpec::corner(n);
        let zero = counting::y_count(
            &tower,
            a0.matrix(),
            r,
            TraceClass::Zero,
            Method::Oracle(&tower),
        )?;
        let one = counting::y_count(
            &tower,
            a0.matrix(),
            r,
            TraceClass::Nonzero,
            Method::Oracle(&tower),
        )?;
        let (d, ms) = timed(|| counting::y_diff(n, r, q));
        report.records.push(Record::compare(
            "trace-class-difference",
            "difference of the two trace-class counts",
            with(base_inputs(a), json!({"r": r})),
            zero - one,
            d?,
            ms,
        ));
    }
    let thetas = select_thetas(&tower, 2 * n as u32, &a.theta)?;
    let ev = cuspidal::CuspidalEvaluator::new(&tower, 2 * n as u32)?;
    let xs = matq::all_matrices(&tower, n, n, 1, a.enum_cap)?;
    for th in &thetas {
        let (bad, ms) = timed(|| -> crate::Result<usize> {
            let mut bad = 0;
            for x in &xs {
                let slow = ev.cuspidal_char(th, &Mat::unipotent_block(x))?;
                if slow != cuspidal::unipotent_block_char(&tower, th, x)? {
                    bad += 1;
                }
            }
            Ok(bad)
        });
        report.records.push(Record::compare(
            "unipotent-block-character",
            "character on [[1,X],[0,1]] depends only on rank X",
            with(
                base_inputs(a),
                json!({"theta": th.index(), "matrices": xs.len()}),
            ),
            0,
            bad?,
            ms,
        ));
    }
    Ok(report)
}

fn run_identity(a: &IdentityArgs) -> CliResult<Report> {
    if a.q < 2 {
        return Err(usage("q must be at least 2"));
    }
    let (r, ms) = timed(|| counting::identity_check(a.n, a.a, a.q));
    let r = r?;
    Ok(Report {
        records: vec![Record::compare(
            "rank-sum-identity",
            "sum_r |M(n,n,r)| (q;q)_{a-r} = q^{n^2} (q;q)_{a-n}^2 / (q;q)_{a-2n}",
            json!({"n": a.n, "a": a.a, "q": a.q}),
            &r.rhs,
            &r.lhs,
            ms,
        )],
    })
}

fn run_char(a: &CharArgs) -> CliResult<Report> {
    let text = match (&a.matrix, &a.matrix_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(usage("one of --matrix or --matrix-file is required")),
    };
    let rows = text.trim().split(';').count();
    if let Some(n) = a.n {
        if rows != 2 * n {
            return Err(usage(format!(
                "matrix has {rows} rows, expected 2n = {}",
                2 * n
            )));
        }
    }
    let tower = tower_for(a.p, a.e, rows as u32, a.table_cap)?;
    let g = Mat::parse(text.trim(), &tower, 1)?;
    let theta = RegularCharacter::new(&tower, rows as u32, a.theta)?;
    let (v, ms) = timed(|| cuspidal::cuspidal_char(&tower, &theta, &g));
    let v = v?;
    let computed = match v.as_rational() {
        Some(r) => r.to_string(),
        None => v.to_string(),
    };
    Ok(Report {
        records: vec![Record {
            check: "cuspidal-character".into(),
            statement: "value of the cuspidal character".into(),
            inputs: json!({"p": a.p, "e": a.e, "m": rows, "theta": theta.index(), "matrix": g.to_text()}),
            expected: String::new(),
            computed,
            verdict: Verdict::Info,
            details: Some(json!({"value": v, "expression": v.to_string()})),
            wall_ms: ms,
        }],
    })
}

fn run_bench(a: &RunArgs) -> CliResult<Report> {
    let tower = tower_for(a.p, a.e, 2 * a.n as u32, a.table_cap)?;
    let twist = parse_twist(&tower, &a.twist, a.n)?;
    let thetas = select_thetas(&tower, 2 * a.n as u32, &a.theta)?;
    let mut report = Report::default();
    let info = |check: &str, what: &str, computed: String, ms: f64| Record {
        check: check.into(),
        statement: what.into(),
        inputs: with(
            base_inputs(a),
            json!({"twist": twist.matrix().to_text(), "thetas": thetas.len()}),
        ),
        expected: String::new(),
        computed,
        verdict: Verdict::Info,
        details: None,
        wall_ms: ms,
    };
    let (engine, ms) = timed(|| JacquetEngine::new(&tower, twist.clone(), a.enum_cap));
    let engine = engine?;
    report.records.push(info(
        "bench-setup",
        "enumerate N and build the evaluator",
        engine.n_order().to_string(),
        ms,
    ));
    let (d, ms) = timed(|| engine.dim(&thetas[0], Strategy::Direct));
    report
        .records
        .push(info("bench-direct", "direct dimension", d?.to_string(), ms));
    if twist.rank() == 1 {
        let (d, ms) = timed(|| jacquet::stratified_dim(tower.q(), &twist));
        report.records.push(info(
            "bench-stratified",
            "stratified dimension",
            d?.to_string(),
            ms,
        ));
        let (r, ms) = timed(|| modelrep::main_theorem_check(&tower, &thetas, &twist, false));
        let r = r?;
        report.records.push(info(
            "bench-main",
            "main comparison over all selected characters",
            format!("{} elements, holds = {}", r.elements, r.holds),
            ms,
        ));
    }
    Ok(report)
}

fn jobs_of(cmd: &Command) -> Option<usize> {
    match cmd {
        Command::Dim(a) | Command::Main(a) | Command::Lemmas(a) | Command::Bench(a) => a.out.jobs,
        Command::Identity(a) => a.out.jobs,
        Command::Char(a) => a.out.jobs,
    }
}

/// Format requested by a command.
pub fn format_of(cmd: &Command) -> Format {
    match cmd {
        Command::Dim(a) | Command::Main(a) | Command::Lemmas(a) | Command::Bench(a) => a.out.format,
        Command::Identity(a) => a.out.format,
        Command::Char(a) => a.out.format,
    }
}

/// Runs a parsed command on a worker pool of the requested size.
pub fn run(cli: &Cli) -> CliResult<Report> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs_of(&cli.command) {
        if j == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Dim(a) => run_dim(a),
        Command::Main(a) => run_main(a),
        Command::Lemmas(a) => run_lemmas(a),
        Command::Identity(a) => run_identity(a),
        Command::Char(a) => run_char(a),
        Command::Bench(a) => run_bench(a),
    })
}

/// Parses `args`, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.render(format_of(&cli.command)).trim_end());
            report.exit_code()
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
