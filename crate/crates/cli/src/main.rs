//! `orthoinv`: runs the identity suites, the witness solver and the full
//! acceptance grid from the command line.
//!
//! Exit codes: 0 when everything passes, 1 on a counterexample or failed
//! case, 2 on invalid usage.

mod config;
mod suites;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use orthoinv::cartan::{invariant_basis_check, GroupKind, GroupTag};
use orthoinv::commfam::{random_conjugated_cartan, random_nilpotent_isotropic};
use orthoinv::format::{AnyMatrix, MatrixFile};
use orthoinv::grid::{random_exponents, run_all, GridOptions};
use orthoinv::identities::{check_trace_identity, SuiteReport};
use orthoinv::witness::solve_pfaffian_system;
use orthoinv::FieldKind;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use config::{RunConfig, Suite, UsageError};

#[derive(Parser)]
#[command(name = "orthoinv", version, about = "Exact verification of invariant-theory identities for commuting tuples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one identity suite over seeded random cases.
    Verify(VerifyArgs),
    /// Solve the Pfaffian system for a rational witness matrix.
    Witness(WitnessArgs),
    /// Print the weight-matrix / orbit-sum table as CSV.
    Basis(BasisArgs),
    /// Print the Pfaffian and determinant of a matrix file.
    Pfaffian(PfaffianArgs),
    /// Emit sample commuting tuples as matrix files.
    Family(FamilyArgs),
    /// Run the whole acceptance grid.
    All(AllArgs),
}

#[derive(Args)]
struct Common {
    /// Base seed for all random draws.
    #[arg(long, env = "ORTHOINV_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run independent cases on all cores.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, default_value = "o")]
    kind: String,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Weight cap for the T-variables.
    #[arg(long, default_value_t = 4)]
    wmax: u32,
    #[arg(long)]
    trunc: Option<u32>,
    /// q, qi or fp:<p>.
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, env = "ORTHOINV_ATTEMPTS", default_value_t = suites::DEFAULT_ATTEMPTS)]
    attempts: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, env = "ORTHOINV_ATTEMPTS", default_value_t = suites::DEFAULT_ATTEMPTS)]
    attempts: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long, default_value = "o")]
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, default_value_t = 4)]
    wmax: u32,
    #[arg(long, default_value_t = 3)]
    trunc: u32,
    /// Defaults to qi for orthogonal kinds and q for sp.
    #[arg(long)]
    field: Option<String>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct PfaffianArgs {
    /// Matrix file in JSON.
    file: PathBuf,
}

#[derive(Args)]
struct FamilyArgs {
    /// cartan or nilpotent.
    #[arg(long, default_value = "cartan")]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AllArgs {
    #[arg(long, env = "ORTHOINV_ATTEMPTS", default_value_t = suites::DEFAULT_ATTEMPTS)]
    attempts: usize,
    /// Only run these criteria (comma separated, 1..=11).
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
    /// Extra trace-identity cell over this field (with --n).
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if let Some(u) = e.downcast_ref::<UsageError>() {
                eprintln!("usage error: {u}");
                ExitCode::from(2)
            } else {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        }
    }
}

fn parse_field(s: &str) -> Result<FieldKind> {
    s.parse::<FieldKind>()
        .map_err(|e| UsageError(format!("--field: {e}")).into())
}

fn parse_kind(s: &str) -> Result<GroupTag> {
    s.parse::<GroupTag>()
        .map_err(|e| UsageError(format!("--kind: {e}")).into())
}

/// Writes to a sibling temporary file and renames it into place.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .with_context(|| format!("{} has no file name", path.display()))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))?;
    Ok(())
}

fn emit(json_path: Option<&Path>, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match json_path {
        Some(p) => write_atomic(p, &text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn summarize(reports: &[SuiteReport]) -> bool {
    let mut ok = true;
    for r in reports {
        let status = if r.skipped.is_some() {
            "SKIP"
        } else if r.pass {
            "PASS"
        } else {
            ok = false;
            "FAIL"
        };
        eprintln!("[{status}] {} {} ({} cases)", r.suite, r.cell, r.cases);
        if let Some(reason) = &r.skipped {
            eprintln!("       skipped: {reason}");
        }
        if let Some(c) = &r.counterexample {
            eprintln!("       {} != {}", c.lhs, c.rhs);
        }
    }
    ok
}

fn dispatch(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Verify(a) => {
            let suite: Suite = a.suite.parse().map_err(UsageError)?;
            let cfg = RunConfig {
                suite,
                kind: parse_kind(&a.kind)?,
                n: a.n,
                d: a.d,
                wmax: a.wmax,
                trunc: a.trunc,
                field: parse_field(&a.field)?,
                seed: a.common.seed,
                samples: a.samples,
                attempts: a.attempts,
                json: a.common.json.clone(),
                parallel: a.common.parallel,
            };
            cfg.validate()?;
            let reports = suites::run_verify(&cfg)?;
            emit(cfg.json.as_deref(), &serde_json::to_value(&reports)?)?;
            Ok(summarize(&reports))
        }
        Command::Witness(a) => {
            if a.d == 0 {
                return Err(UsageError("--d must be at least 1".into()).into());
            }
            if a.attempts == 0 {
                return Err(UsageError("--attempts must be at least 1".into()).into());
            }
            match solve_pfaffian_system(a.d, a.common.seed, a.attempts) {
                Ok(w) => {
                    let report = orthoinv::witness::verify_witness(&w)?;
                    let mut v = w.to_json();
                    v["verified"] = json!(report.pass);
                    emit(a.common.json.as_deref(), &v)?;
                    Ok(summarize(&[report]))
                }
                Err(e @ orthoinv::AlgebraError::AttemptsExhausted { .. }) => {
                    eprintln!("[FAIL] witness: {e}");
                    let v = json!({"d": a.d, "seed": a.common.seed, "attempts": a.attempts, "error": e.to_string()});
                    emit(a.common.json.as_deref(), &v)?;
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Basis(a) => {
            let tag = parse_kind(&a.kind)?;
            let kind = GroupKind::new(tag, a.n).map_err(|e| UsageError(format!("--kind/--n: {e}")))?;
            let field = match &a.field {
                Some(f) => parse_field(f)?,
                None if kind.is_symplectic() => FieldKind::Rational,
                None => FieldKind::Gaussian,
            };
            if !kind.is_symplectic() && field.imaginary_unit().is_none() {
                return Err(UsageError(format!("{kind} needs --field qi")).into());
            }
            if a.d == 0 || a.wmax == 0 {
                return Err(UsageError("--d and --wmax must be at least 1".into()).into());
            }
            let report = invariant_basis_check(kind, a.d, a.wmax, a.trunc, field)?;
            let csv = report.to_csv();
            match &a.csv {
                Some(p) => write_atomic(p, &csv)?,
                None => std::io::stdout().write_all(csv.as_bytes())?,
            }
            for f in &report.failures {
                eprintln!("[FAIL] {f}");
            }
            Ok(report.pass())
        }
        Command::Pfaffian(a) => {
            let text = fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", a.file.display())))?;
            let m = MatrixFile::from_json(&v)
                .and_then(|f| f.to_matrix())
                .map_err(|e| UsageError(format!("{}: {e}", a.file.display())))?;
            let pf = match (&m, m.is_skew()) {
                (_, true) => m.pf()?,
                (AnyMatrix::Scalar(_) | AnyMatrix::Dual(_) | AnyMatrix::Poly(_), false) => "n/a (not skew)".to_string(),
            };
            println!("Pf = {pf}");
            println!("det = {}", m.det());
            Ok(true)
        }
        Command::Family(a) => {
            let field = parse_field(&a.field)?;
            if a.n < 2 || a.d == 0 {
                return Err(UsageError("--n must be at least 2 and --d at least 1".into()).into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
            let mut out = Vec::new();
            for _ in 0..a.count {
                let t = match a.family.as_str() {
                    "cartan" => random_conjugated_cartan(a.n, a.d, field, &mut rng),
                    "nilpotent" => random_nilpotent_isotropic(a.n, a.d, field, &mut rng),
                    other => {
                        return Err(UsageError(format!("--family must be cartan or nilpotent, got {other:?}")).into())
                    }
                }
                .map_err(|e| UsageError(e.to_string()))?;
                let ring = field.to_string();
                let mats: Vec<Value> = t
                    .mats()
                    .iter()
                    .map(|m| serde_json::to_value(MatrixFile::from_matrix(m, &ring)))
                    .collect::<Result<_, _>>()?;
                out.push(json!({"provenance": t.provenance().to_string(), "matrices": mats}));
            }
            emit(a.common.json.as_deref(), &Value::Array(out))?;
            Ok(true)
        }
        Command::All(a) => {
            if a.only.iter().any(|&k| !(1..=11).contains(&k)) {
                return Err(UsageError("--only takes criteria between 1 and 11".into()).into());
            }
            let extra = match (&a.field, a.n) {
                (Some(f), Some(n)) if n >= 2 => Some((parse_field(f)?, n)),
                (None, None) => None,
                _ => return Err(UsageError("--field and --n go together, with n >= 2".into()).into()),
            };
            let opts = GridOptions {
                seed: a.common.seed,
                parallel: a.common.parallel,
                witness_attempts: a.attempts,
            };
            let outcomes: Vec<_> = if a.only.is_empty() {
                run_all(&opts)
            } else {
                a.only
                    .iter()
                    .map(|&k| orthoinv::grid::run_criterion(k, &opts))
                    .collect::<Result<_, _>>()?
            };
            let mut ok = true;
            for o in &outcomes {
                eprintln!(
                    "criterion {:>2} [{}] {} ({} cases)",
                    o.criterion,
                    if o.pass { "PASS" } else { "FAIL" },
                    o.title,
                    o.cases
                );
                if let Some(f) = o.first_failure() {
                    if let Some(c) = &f.counterexample {
                        eprintln!("       {} {}: {} != {}", f.suite, f.cell, c.lhs, c.rhs);
                    }
                }
                ok &= o.pass;
            }
            let mut report = json!({"seed": a.common.seed, "criteria": outcomes});
            if let Some((field, n)) = extra {
                let r = extra_trace_cell(field, n, a.common.seed)?;
                ok &= summarize(std::slice::from_ref(&r));
                report["extra"] = json!([r]);
            }
            emit(a.common.json.as_deref(), &report)?;
            Ok(ok)
        }
    }
}

/// One trace-identity case over a chosen field; small primes give a skip
/// record.
fn extra_trace_cell(field: FieldKind, n: usize, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = random_conjugated_cartan(n, 3, field, &mut rng)?;
    let a = random_exponents(3, n / 2 + 1, &mut rng);
    Ok(check_trace_identity(&t, &a)?.with_seed(seed))
}
