//! `hopflab`: build, check and analyze finite-dimensional Hopf algebras over
//! `GF(p)` stored as `hsc/1` or `hpres/1` documents.
//!
//! Exit codes: 0 when every asserted property holds, 1 when an assertion
//! fails, 2 when the input is invalid.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use hopflab::builders::{
    cyclic_group, divided_line, example_a, example_b, heisenberg,
    height_two_line, smash_demo, smash_trivial, truncated_line, witt_line,
};
use hopflab::format::{document_kind, example_a_document, example_b_document, load_hopf, to_hsc, DocumentKind};
use hopflab::gfp::Field;
use hopflab::hopf::HopfAlgebra;
use hopflab::locality::{analyze, corollary_b_check, pointed_decomposition_check, subalgebra_locality_check, theorem_a_check, REPORT_SCHEMA};
use hopflab::report::{Status, VerificationReport};
use hopflab::series::{
    lower_power_series, upper_power_series, verify_duality, verify_factor_dims, verify_factor_equivalences,
    verify_radical_lemmas, SeriesChain,
};
use hopflab::structure::{coradical_filtration_direct, coradical_filtration_dual};
use hopflab::Error;

// Output ends quietly when the reader goes away (e.g. a closed pipe).
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(io::stdout(), $($t)*);
    }};
}

macro_rules! say_raw {
    ($($t:tt)*) => {{
        let _ = write!(io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "hopflab", version, about = "Exact workbench for finite-dimensional Hopf algebras over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the Hopf algebra axioms.
    Check {
        #[arg(default_value = "-")]
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Run every applicable analysis.
    Analyze {
        #[arg(default_value = "-")]
        file: String,
        #[arg(long)]
        json: bool,
        /// Treat skipped analyses as failures.
        #[arg(long)]
        strict: bool,
    },
    /// Write the dual Hopf algebra.
    Dual {
        #[arg(default_value = "-")]
        file: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build structure constants from a presentation.
    Build {
        #[arg(default_value = "-")]
        file: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a shipped fixture.
    Example {
        #[arg(ignore_case = true)]
        name: ExampleName,
        /// Group order for `cyclic-group`.
        n: Option<usize>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 0)]
        sigma: u32,
        #[arg(long, default_value_t = 0)]
        lambda: u32,
        #[arg(long, default_value_t = 0)]
        mu: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Hsc)]
        format: OutputFormat,
    },
    /// Coradical filtration by both methods.
    Coradical {
        #[arg(default_value = "-")]
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Upper or lower power series.
    Series {
        kind: SeriesArg,
        #[arg(default_value = "-")]
        file: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strict: bool,
    },
    /// Check one of the structural statements, or analyze every document in
    /// a directory with `--all`.
    Verify {
        kind: Option<VerifyKind>,
        file: Option<String>,
        #[arg(long, value_name = "DIR", conflicts_with_all = ["kind", "file"])]
        all: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strict: bool,
        /// Random trials for `subalgebras`; the seed comes from HOPFLAB_SEED.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Turn the first passing check into a failure (exercises the
        /// failure path).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    A,
    B,
    Heisenberg,
    WittLine,
    TruncatedLine,
    DividedLine,
    HeightTwoLine,
    CyclicGroup,
    SmashDemo,
    SmashTrivial,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Hsc,
    Hpres,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Upper,
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    TheoremA,
    CorollaryB,
    Duality,
    RadicalLemmas,
    Factors,
    Pointed,
    Subalgebras,
}

impl VerifyKind {
    fn name(self) -> &'static str {
        match self {
            VerifyKind::TheoremA => "theorem-a",
            VerifyKind::CorollaryB => "corollary-b",
            VerifyKind::Duality => "duality",
            VerifyKind::RadicalLemmas => "radical-lemmas",
            VerifyKind::Factors => "factors",
            VerifyKind::Pointed => "pointed",
            VerifyKind::Subalgebras => "subalgebras",
        }
    }
}

/// A failure that ends the run with a given exit code.
struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn from_load_error(e: Error) -> Failure {
    match e {
        Error::AxiomFailure(report) => Failure { code: 1, message: report.to_string() },
        other => invalid(other.to_string()),
    }
}

/// Analysis errors that mean "outside the statement's hypotheses".
fn is_skip(e: &Error) -> bool {
    matches!(e, Error::Precondition(_) | Error::NonCommutative | Error::Unsupported(_))
}

fn read_input(file: &str) -> CliResult<String> {
    if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| invalid(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(file).map_err(|e| invalid(format!("{file}: {e}")))
    }
}

fn load_unverified(file: &str) -> CliResult<HopfAlgebra> {
    load_hopf(&read_input(file)?).map_err(|e| invalid(format!("{file}: {e}")))
}

fn load_verified(file: &str) -> CliResult<HopfAlgebra> {
    load_unverified(file)?.into_verified().map_err(from_load_error)
}

fn write_output(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display()))),
        None => match io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(invalid(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn print_json(v: &Value) {
    say!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn report_code(report: &VerificationReport, strict: bool) -> u8 {
    if !report.overall || (strict && report.has_skips()) {
        1
    } else {
        0
    }
}

fn seed_from_env() -> CliResult<u64> {
    match std::env::var("HOPFLAB_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| invalid(format!("HOPFLAB_SEED={s:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

/// `c label + …` with the unit label for constants.
fn render_vector(h: &HopfAlgebra, v: &[u32]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|e| *e.1 != 0)
        .map(|(i, &c)| {
            let label = &h.labels()[i];
            match (c, label.as_str()) {
                (1, l) => l.to_string(),
                (c, "1") => c.to_string(),
                (c, l) => format!("{c} {l}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn cmd_check(file: &str, json: bool) -> CliResult<u8> {
    let h = load_unverified(file)?;
    let report = h.verify_axioms();
    if json {
        print_json(&json!({ "schema": REPORT_SCHEMA, "command": "check", "dim": h.dim(), "p": h.field().p(), "report": report }));
    } else {
        say_raw!("{report}");
    }
    Ok(report_code(&report, false))
}

fn cmd_analyze(file: &str, json: bool, strict: bool) -> CliResult<u8> {
    let h = load_verified(file)?;
    let a = analyze(&h).map_err(from_load_error)?;
    let failed = a.failed_checks();
    let skipped = a.skipped();
    if json {
        let mut v = serde_json::to_value(&a).expect("analysis serializes");
        v["failed"] = json!(failed);
        v["skipped"] = json!(skipped.iter().map(|(n, r)| json!({ "analysis": n, "reason": r })).collect::<Vec<_>>());
        print_json(&v);
    } else {
        if a.subject.is_empty() {
            say!("Hopf algebra over GF({}), dim {}", a.p, a.dim);
        } else {
            say!("{}, dim {}", a.subject, a.dim);
        }
        say!("commutative: {}, cocommutative: {}, connected: {}", a.commutative, a.cocommutative, a.connected);
        say!("local: {} (augmentation power dims {:?})", a.locality.is_local, a.locality.chain_dims);
        if let Some(c) = a.coradical.done() {
            say!("coradical filtration dims: {:?} (methods agree: {})", c.dims, c.methods_agree);
        }
        if let Some(d) = a.primitive_dim.done() {
            say!("primitive space dim: {d}");
        }
        if let Some(g) = a.group_likes.done() {
            say!("group-likes: {} (coradical dim {}, complete: {})", g.count, g.coradical_dim, g.complete);
        }
        if let Some(t) = a.theorem_a.done() {
            say!(
                "H_1 criterion: H local {}, G^1 local {}, counterexample_flag {}",
                t.h_local.is_local, t.gamma1_local.is_local, t.counterexample_flag
            );
        }
        if let Some(c) = a.corollary_b.done() {
            say_raw!("{}", c.report);
        }
        if let Some(u) = a.upper_series.done() {
            say!("upper series dims: {u:?}");
        }
        if let Some(l) = a.lower_series.done() {
            say!("lower series dims: {l:?}");
        }
        if let Some(r) = a.duality.done() {
            say_raw!("{r}");
        }
        if let Some(r) = a.pointed.done() {
            say_raw!("{r}");
        }
        for (name, reason) in &skipped {
            say!("{name}: skipped: {reason}");
        }
        for f in &failed {
            say!("FAILED {f}");
        }
    }
    Ok(if !failed.is_empty() || (strict && !skipped.is_empty()) { 1 } else { 0 })
}

fn cmd_dual(file: &str, output: Option<&Path>) -> CliResult<u8> {
    let h = load_verified(file)?;
    write_output(output, &to_hsc(&h.dual()))?;
    Ok(0)
}

fn cmd_build(file: &str, output: Option<&Path>) -> CliResult<u8> {
    let text = read_input(file)?;
    if document_kind(&text).map_err(|e| invalid(e.to_string()))? != DocumentKind::Hpres {
        return Err(invalid(format!("{file}: expected an hpres/1 document")));
    }
    let h = load_hopf(&text).map_err(|e| invalid(format!("{file}: {e}")))?.into_verified().map_err(from_load_error)?;
    write_output(output, &to_hsc(&h))?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_example(
    name: ExampleName,
    n: Option<usize>,
    p: Option<u32>,
    (sigma, lambda, mu): (u32, u32, u32),
    output: Option<&Path>,
    format: OutputFormat,
) -> CliResult<u8> {
    let field = || -> CliResult<Field> {
        let p = p.ok_or_else(|| invalid("--p is required for this example"))?;
        Field::new(p).map_err(|e| invalid(e.to_string()))
    };
    let built = |r: hopflab::Result<HopfAlgebra>| r.map_err(|e| invalid(e.to_string()));
    // presentation documents are written as given; `check` or `build`
    // verifies them
    if format == OutputFormat::Hpres {
        let f = field()?;
        let doc = match name {
            ExampleName::A => example_a_document(f, sigma, lambda, mu),
            ExampleName::B => {
                if sigma >= f.p() {
                    return Err(invalid("sigma must be a residue mod p"));
                }
                example_b_document(f, sigma)
            }
            _ => return Err(invalid("--format hpres is available for examples A and B")),
        };
        write_output(output, &doc.to_text())?;
        return Ok(0);
    }
    let h = match name {
        ExampleName::A => built(example_a(field()?, sigma, lambda, mu))?,
        ExampleName::B => built(example_b(field()?, sigma))?,
        ExampleName::Heisenberg => built(heisenberg(field()?))?,
        ExampleName::WittLine => built(witt_line(field()?))?,
        ExampleName::TruncatedLine => built(truncated_line(field()?))?,
        ExampleName::DividedLine => built(divided_line(field()?))?,
        ExampleName::HeightTwoLine => built(height_two_line(field()?))?,
        ExampleName::CyclicGroup => {
            let n = n.ok_or_else(|| invalid("cyclic-group needs an order N"))?;
            built(cyclic_group(field()?, n))?
        }
        ExampleName::SmashDemo => built(smash_demo())?,
        ExampleName::SmashTrivial => built(smash_trivial())?,
    };
    write_output(output, &to_hsc(&h))?;
    Ok(0)
}

fn cmd_coradical(file: &str, json: bool) -> CliResult<u8> {
    let h = load_verified(file)?;
    let dual = coradical_filtration_dual(&h).map_err(|e| invalid(e.to_string()))?;
    let direct = coradical_filtration_direct(&h, &dual.terms[0]).map_err(|e| invalid(e.to_string()))?;
    let agree = direct.same_terms(&dual);
    let bases: Vec<Vec<String>> =
        dual.terms.iter().map(|t| t.basis().iter().map(|v| render_vector(&h, v)).collect()).collect();
    if json {
        print_json(&json!({
            "schema": REPORT_SCHEMA,
            "command": "coradical",
            "dims": dual.dims(),
            "direct_dims": direct.dims(),
            "methods_agree": agree,
            "bases": bases,
        }));
    } else {
        say!("coradical filtration dims: {:?}", dual.dims());
        say!("direct method agrees: {agree}");
        for (n, basis) in bases.iter().enumerate() {
            say!("H_{n}: {}", basis.join(", "));
        }
    }
    Ok(if agree { 0 } else { 1 })
}

fn series_json(h: &HopfAlgebra, s: &SeriesChain) -> Value {
    json!({
        "schema": REPORT_SCHEMA,
        "command": "series",
        "kind": s.kind,
        "dims": s.dims(),
        "stabilized_at": s.stabilized_at,
        "bases": s.terms.iter().map(|t| t.basis().iter().map(|v| render_vector(h, v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn skipped_output(json: bool, command: &str, reason: &str, strict: bool) -> u8 {
    if json {
        print_json(&json!({ "schema": REPORT_SCHEMA, "command": command, "skipped": reason }));
    } else {
        say!("skipped: {reason}");
    }
    u8::from(strict)
}

fn cmd_series(kind: SeriesArg, file: &str, json: bool, strict: bool) -> CliResult<u8> {
    let h = load_verified(file)?;
    let result = match kind {
        SeriesArg::Upper => upper_power_series(&h),
        SeriesArg::Lower => lower_power_series(&h),
    };
    match result {
        Ok(s) => {
            if json {
                print_json(&series_json(&h, &s));
            } else {
                let (name, sym) = match kind {
                    SeriesArg::Upper => ("upper", "^"),
                    SeriesArg::Lower => ("lower", "_"),
                };
                say!("{name} power series dims: {:?} (stabilized at {})", s.dims(), s.stabilized_at);
                for (n, t) in s.terms.iter().enumerate() {
                    let basis: Vec<String> = t.basis().iter().map(|v| render_vector(&h, v)).collect();
                    say!("G{sym}{n}: {}", basis.join(", "));
                }
            }
            Ok(0)
        }
        Err(e) if is_skip(&e) => Ok(skipped_output(json, "series", &e.to_string(), strict)),
        Err(e) => Err(Failure { code: 1, message: e.to_string() }),
    }
}

fn inject_fault(report: &mut VerificationReport) {
    if let Some(c) = report.checks.iter_mut().find(|c| c.status == Status::Pass) {
        c.status = Status::Fail;
        c.witness = Some("injected fault".into());
        report.overall = false;
    }
}

fn run_verify(h: &HopfAlgebra, kind: VerifyKind, trials: usize, seed: u64) -> hopflab::Result<(VerificationReport, Value)> {
    Ok(match kind {
        VerifyKind::TheoremA => {
            let t = theorem_a_check(h)?;
            (t.to_report(), serde_json::to_value(&t).expect("serializes"))
        }
        VerifyKind::CorollaryB => {
            let c = corollary_b_check(h)?;
            let details = serde_json::to_value(&c).expect("serializes");
            (c.report, details)
        }
        VerifyKind::Duality => (verify_duality(h)?, Value::Null),
        VerifyKind::RadicalLemmas => (verify_radical_lemmas(h)?, Value::Null),
        VerifyKind::Factors => {
            let mut r = VerificationReport::new(format!("factor dimensions and equivalences, dim {}", h.dim()));
            r.absorb("dims", verify_factor_dims(h)?);
            r.absorb("equivalences", verify_factor_equivalences(h)?);
            (r, Value::Null)
        }
        VerifyKind::Pointed => (pointed_decomposition_check(h)?, Value::Null),
        VerifyKind::Subalgebras => (subalgebra_locality_check(h, trials, seed)?, json!({ "seed": seed, "trials": trials })),
    })
}

fn cmd_verify(kind: VerifyKind, file: &str, json: bool, strict: bool, trials: usize, fault: bool) -> CliResult<u8> {
    let seed = seed_from_env()?;
    let h = load_verified(file)?;
    match run_verify(&h, kind, trials, seed) {
        Ok((mut report, details)) => {
            if fault {
                inject_fault(&mut report);
            }
            if json {
                let mut v = json!({ "schema": REPORT_SCHEMA, "command": kind.name(), "report": report });
                if let Value::Object(d) = details {
                    v["details"] = Value::Object(d);
                }
                print_json(&v);
            } else {
                say_raw!("{report}");
                if let Some(flag) = details.get("counterexample_flag") {
                    say!("counterexample_flag: {flag}");
                }
            }
            Ok(report_code(&report, strict))
        }
        Err(e) if is_skip(&e) => Ok(skipped_output(json, kind.name(), &e.to_string(), strict)),
        Err(e) => Err(Failure { code: 1, message: e.to_string() }),
    }
}

/// Analyze every `.hsc` and `.hpres` document in a directory, in parallel;
/// results are reported in file-name order.
fn cmd_verify_all(dir: &Path, json: bool, strict: bool) -> CliResult<u8> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| invalid(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("hsc" | "hpres")))
        .collect();
    files.sort();
    let results: Vec<(String, u8, Vec<String>)> = files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return (name, 2, vec![e.to_string()]),
            };
            let h = match load_hopf(&text) {
                Ok(h) => h,
                Err(e) => return (name, 2, vec![e.to_string()]),
            };
            let h = match h.into_verified() {
                Ok(h) => h,
                Err(Error::AxiomFailure(r)) => {
                    let fails = r.failures().map(|c| format!("axioms: {}", c.name)).collect();
                    return (name, 1, fails);
                }
                Err(e) => return (name, 2, vec![e.to_string()]),
            };
            match analyze(&h) {
                Ok(a) => {
                    let mut notes = a.failed_checks();
                    let failed = !notes.is_empty();
                    let skipped = a.skipped();
                    if strict {
                        notes.extend(skipped.iter().map(|(n, r)| format!("{n} skipped: {r}")));
                    }
                    (name, u8::from(failed || (strict && !skipped.is_empty())), notes)
                }
                Err(e) => (name, 2, vec![e.to_string()]),
            }
        })
        .collect();
    let code = results.iter().map(|r| r.1).max().unwrap_or(0);
    if json {
        let files: Vec<Value> =
            results.iter().map(|(n, c, notes)| json!({ "file": n, "exit": c, "notes": notes })).collect();
        print_json(&json!({ "schema": REPORT_SCHEMA, "command": "verify-all", "files": files, "exit": code }));
    } else {
        for (name, c, notes) in &results {
            let status = match c {
                0 => "ok",
                1 => "FAIL",
                _ => "INVALID",
            };
            if notes.is_empty() {
                say!("{status} {name}");
            } else {
                say!("{status} {name}: {}", notes.join("; "));
            }
        }
    }
    Ok(code)
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Check { file, json } => cmd_check(&file, json),
        Command::Analyze { file, json, strict } => cmd_analyze(&file, json, strict),
        Command::Dual { file, output } => cmd_dual(&file, output.as_deref()),
        Command::Build { file, output } => cmd_build(&file, output.as_deref()),
        Command::Example { name, n, p, sigma, lambda, mu, output, format } => {
            cmd_example(name, n, p, (sigma, lambda, mu), output.as_deref(), format)
        }
        Command::Coradical { file, json } => cmd_coradical(&file, json),
        Command::Series { kind, file, json, strict } => cmd_series(kind, &file, json, strict),
        Command::Verify { kind, file, all, json, strict, trials, inject_fault } => match (all, kind) {
            (Some(dir), _) => cmd_verify_all(&dir, json, strict),
            (None, Some(kind)) => cmd_verify(kind, file.as_deref().unwrap_or("-"), json, strict, trials, inject_fault),
            (None, None) => Err(invalid("verify needs a statement name or --all DIR")),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message.trim_end());
            ExitCode::from(f.code)
        }
    }
}
