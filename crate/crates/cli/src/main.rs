use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cogcomp_cli::bench::{self, BenchConfig, Family};
use cogcomp_cli::io::{self, ActionDocument, InputError};
use cogcomp_core::{
    barycentric_subdivision, compress_with_policy, induced_action_on_subdivision, reconstruct,
    recovered_action, validate_against_action, validate_triple, verify_roundtrip, ActionError,
    GroupAction, LiftPolicy, ReconstructError, SimplexId, ValidationReport,
};

#[derive(Parser)]
#[command(
    name = "cogcomp",
    version,
    about = "Compress simplicial complexes with a regular group action into a complex of groups, and back"
)]
struct Cli {
    /// Worker threads for the engine (default: all cores). `bench` takes a
    /// comma-separated list and runs every order under each count.
    #[arg(long, global = true, value_delimiter = ',')]
    threads: Vec<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ActionArgs {
    /// Action file: group generators and a complex (inline or a path).
    #[arg(long)]
    action: PathBuf,
    /// Complex file; overrides the complex named in the action file.
    #[arg(long)]
    complex: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the three regularity conditions and report the first violation.
    CheckRegular {
        #[command(flatten)]
        input: ActionArgs,
    },
    /// Barycentric subdivision of a complex, and of an action on it.
    Subdivide {
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        action: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        times: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the induced action (needs --action).
        #[arg(long)]
        action_out: Option<PathBuf>,
    },
    /// The orbit complex and the orbit map.
    Quotient {
        #[command(flatten)]
        input: ActionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compress a regular action into a triple file.
    Compress {
        #[command(flatten)]
        input: ActionArgs,
        #[arg(long, default_value = "lex-min")]
        lift_policy: LiftPolicy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild a complex from a triple file.
    Reconstruct {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the (y, g) label of every simplex.
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Write the recovered group action.
        #[arg(long)]
        action_out: Option<PathBuf>,
    },
    /// Compress, reconstruct and verify the result against the input.
    Roundtrip {
        #[command(flatten)]
        input: ActionArgs,
        /// Use this triple (with its certificate) instead of compressing.
        #[arg(long)]
        triple: Option<PathBuf>,
        #[arg(long, default_value = "lex-min")]
        lift_policy: LiftPolicy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check subgroups, embeddings and path independence of a triple.
    ValidateTriple {
        #[arg(long)]
        triple: PathBuf,
        /// Also check the triple and its certificate against this action.
        #[arg(long)]
        action: Option<PathBuf>,
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time and count subroutine calls over a built-in family, as CSV.
    Bench {
        #[arg(long, default_value = "cycle")]
        family: Family,
        /// Group orders.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,6,8,12")]
        orders: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value = "lex-min")]
        lift_policy: LiftPolicy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    /// The input is fine but a mathematical check failed.
    Math(String),
    Input(InputError),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<ActionError> for Failure {
    fn from(e: ActionError) -> Self {
        Failure::Math(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load(input: &ActionArgs) -> Result<GroupAction, InputError> {
    io::load_action(&input.action, input.complex.as_deref())
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), InputError> {
    io::emit(out, &io::to_json(value))
}

fn failed_report(what: &str, report: &ValidationReport) -> Failure {
    let first = report
        .violations
        .first()
        .map(ToString::to_string)
        .unwrap_or_default();
    Failure::Math(format!(
        "{what}: {} violation(s); first: {first}",
        report.violations.len()
    ))
}

fn check_regular(input: &ActionArgs) -> Outcome {
    let a = load(input)?;
    let report = a.check_regularity();
    emit_json(None, &report)?;
    match report.violation {
        None => Ok(()),
        Some(v) => Err(Failure::Math(format!("action is not regular: {v}"))),
    }
}

fn subdivide(
    complex: Option<&Path>,
    action: Option<&Path>,
    times: usize,
    out: Option<&Path>,
    action_out: Option<&Path>,
) -> Outcome {
    if action_out.is_some() && action.is_none() {
        return Err(InputError::Usage("--action-out needs --action".into()).into());
    }
    match action {
        Some(path) => {
            let mut a = io::load_action(path, complex)?;
            for _ in 0..times {
                let sd = barycentric_subdivision(a.complex());
                a = induced_action_on_subdivision(&a, &sd)?;
            }
            emit_json(out, &a.complex().to_document())?;
            if let Some(p) = action_out {
                io::write(p, &io::to_json(&ActionDocument::from_action(&a)))?;
            }
        }
        None => {
            let path = complex
                .ok_or_else(|| InputError::Usage("subdivide needs --complex or --action".into()))?;
            let mut x = Arc::new(io::load_complex(path)?);
            for _ in 0..times {
                x = Arc::clone(barycentric_subdivision(&x).target());
            }
            emit_json(out, &x.to_document())?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct QuotientDocument {
    complex: cogcomp_core::ComplexDocument,
    orbit_map: Vec<SimplexId>,
}

fn quotient(input: &ActionArgs, out: Option<&Path>) -> Outcome {
    let a = load(input)?;
    let q = a.quotient()?;
    emit_json(
        out,
        &QuotientDocument {
            complex: q.complex.to_document(),
            orbit_map: q.orbit_map,
        },
    )?;
    Ok(())
}

fn compress(input: &ActionArgs, policy: LiftPolicy, out: Option<&Path>) -> Outcome {
    let a = load(input)?;
    let (t, cert) = compress_with_policy(&a, policy)?;
    io::emit(out, &t.to_json(Some(&cert)))?;
    let x = a.complex().len();
    let y = t.quotient().len();
    eprintln!(
        "|X| = {x}, |Y| = {y}, sum of indices = {}, ratio = {:.3}",
        t.total_index(),
        x as f64 / y.max(1) as f64
    );
    Ok(())
}

#[derive(Serialize)]
struct LabelRow {
    simplex: u32,
    y: u32,
    g: u32,
}

fn reconstruct_cmd(
    triple: &Path,
    out: Option<&Path>,
    labels: Option<&Path>,
    action_out: Option<&Path>,
) -> Outcome {
    let (t, _) = io::load_triple(triple)?;
    let z = reconstruct(&t).map_err(|e| match e {
        ReconstructError::Invalid(report) => failed_report("triple is invalid", &report),
        other => Failure::Math(other.to_string()),
    })?;
    emit_json(out, &z.complex().to_document())?;
    if let Some(p) = labels {
        let rows: Vec<LabelRow> = z
            .labeled_simplices()
            .map(|(s, l)| LabelRow {
                simplex: s.0,
                y: l.y.0,
                g: l.g.0,
            })
            .collect();
        io::write(p, &io::to_json(&rows))?;
    }
    if let Some(p) = action_out {
        let recovered = recovered_action(&z)?;
        io::write(p, &io::to_json(&ActionDocument::from_action(&recovered)))?;
    }
    Ok(())
}

fn roundtrip(
    input: &ActionArgs,
    triple: Option<&Path>,
    policy: LiftPolicy,
    out: Option<&Path>,
) -> Outcome {
    let a = load(input)?;
    let (t, cert) = match triple {
        Some(p) => {
            let (t, cert) = io::load_triple(p)?;
            let cert = cert.ok_or_else(|| InputError::Invalid {
                path: p.to_path_buf(),
                message: "triple has no certificate".into(),
            })?;
            (t, cert)
        }
        None => compress_with_policy(&a, policy)?,
    };
    let z = reconstruct(&t).map_err(|e| match e {
        ReconstructError::Invalid(report) => failed_report("triple is invalid", &report),
        other => Failure::Math(other.to_string()),
    })?;
    let report = verify_roundtrip(&a, &cert, &z)
        .map_err(|e| InputError::Usage(format!("triple does not match the action: {e}")))?;
    emit_json(out, &report)?;
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<String> = report
            .results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.property.to_string())
            .collect();
        Err(Failure::Math(format!(
            "roundtrip failed: {}",
            failed.join(", ")
        )))
    }
}

fn validate(
    triple: &Path,
    action: Option<&Path>,
    complex: Option<&Path>,
    out: Option<&Path>,
) -> Outcome {
    let (t, cert) = io::load_triple(triple)?;
    let mut report = validate_triple(&t);
    if let Some(path) = action {
        let a = io::load_action(path, complex)?;
        let cert = cert.ok_or_else(|| InputError::Invalid {
            path: triple.to_path_buf(),
            message: "checking against an action needs a certificate".into(),
        })?;
        report
            .violations
            .extend(validate_against_action(&t, &cert, &a).violations);
    }
    emit_json(out, &report)?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(failed_report("triple is invalid", &report))
    }
}

fn run(command: Command, threads: Vec<usize>) -> Outcome {
    match command {
        Command::CheckRegular { input } => check_regular(&input),
        Command::Subdivide {
            complex,
            action,
            times,
            out,
            action_out,
        } => subdivide(
            complex.as_deref(),
            action.as_deref(),
            times,
            out.as_deref(),
            action_out.as_deref(),
        ),
        Command::Quotient { input, out } => quotient(&input, out.as_deref()),
        Command::Compress {
            input,
            lift_policy,
            out,
        } => compress(&input, lift_policy, out.as_deref()),
        Command::Reconstruct {
            triple,
            out,
            labels,
            action_out,
        } => reconstruct_cmd(
            &triple,
            out.as_deref(),
            labels.as_deref(),
            action_out.as_deref(),
        ),
        Command::Roundtrip {
            input,
            triple,
            lift_policy,
            out,
        } => roundtrip(&input, triple.as_deref(), lift_policy, out.as_deref()),
        Command::ValidateTriple {
            triple,
            action,
            complex,
            out,
        } => validate(
            &triple,
            action.as_deref(),
            complex.as_deref(),
            out.as_deref(),
        ),
        Command::Bench {
            family,
            orders,
            repeats,
            lift_policy,
            out,
        } => {
            let threads = if threads.is_empty() { vec![1] } else { threads };
            if orders.is_empty() || threads.contains(&0) {
                return Err(InputError::Usage(
                    "bench needs orders and positive worker counts".into(),
                )
                .into());
            }
            let config = BenchConfig {
                family,
                orders,
                threads,
                repeats,
                policy: lift_policy,
            };
            let report = bench::run(&config).map_err(InputError::Usage)?;
            io::emit(out.as_deref(), &bench::to_csv(&report))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let bench = matches!(cli.command, Command::Bench { .. });
    if cli.threads.contains(&0) || (!bench && cli.threads.len() > 1) {
        eprintln!("error: --threads takes one positive count, or a list for bench");
        return ExitCode::from(2);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let (false, [w]) = (bench, cli.threads.as_slice()) {
        pool = pool.num_threads(*w);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let threads = cli.threads.clone();
    match pool.install(|| run(cli.command, threads)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
