//! Command-line interface: argument parsing, command dispatch, exit codes
//! and canonical JSON reports.
//!
//! Reports are JSON objects with sorted keys. Every report carries `tool`,
//! `version`, `command`, `seed` and, where a space is involved, `p` and `n`.
//! Wall time is added only with `--timing`, so that default reports are
//! byte-identical across runs.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classify::{a_k_set, acl_pair, catalog, CatalogOptions, Classifier, ClassifyError, DEFAULT_AK_BUDGET};
use crate::field::{FieldError, Space};
use crate::geometry::{agl_group, GeometryError};
use crate::interval::{cross_check, enumerate_overgroups, IntervalError, DEFAULT_MAX_POINTS};
use crate::perm::{gl_group, io, sym_fixing_zero, sym_group, PermError, PermGroup};
use crate::verify::{run_suite, Suite, SuiteReport, VerifyError, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "reduct-atlas", version, about = "Overgroups of GL(n, p) in Sym(F_p^n)")]
pub struct Cli {
    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "REDUCT_ATLAS_WORKERS")]
    pub workers: Option<usize>,
    /// Seed for randomized stages; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Add wall time to reports (makes them run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, deduplicate and classify the candidate groups.
    Catalog {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one generator file per entry into this directory.
        #[arg(long)]
        gens_dir: Option<PathBuf>,
    },
    /// Classify the group generated by a generator file.
    Classify {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate every group between GL(n, p) and Sym(p^n) and compare with the catalog.
    Enumerate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite: sigma-laws (alias sigma), geometry, acl, akset, gnh-order, interval.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Random instances per law.
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Algebraic closure of a pair of vectors.
    Acl {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        v: u32,
        #[arg(long)]
        w: u32,
        /// gl, agl, sym, sym0 or catalog:<id>.
        #[arg(long, default_value = "agl")]
        group: String,
    },
    /// The set A_k(S).
    Akset {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Comma-separated vector indices.
        #[arg(long = "S", value_delimiter = ',', required = true)]
        s: Vec<u32>,
        #[arg(long)]
        k: usize,
        /// gl, agl, sym, sym0 or catalog:<id>.
        #[arg(long, default_value = "gl")]
        group: String,
        #[arg(long, default_value_t = DEFAULT_AK_BUDGET)]
        budget: usize,
    },
}

/// A failed command: the exit code and a message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Report to print despite the failure, such as a counterexample dump.
    pub report: Option<String>,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), report: None }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        let code = match e {
            PermError::BudgetExceeded(_) | PermError::Field(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        let code = match e {
            GeometryError::DegreeTooLarge(_) | GeometryError::DimensionTooSmall(_) | GeometryError::Field(_) => {
                EXIT_USAGE
            }
            GeometryError::PreconditionViolated | GeometryError::WrongDegree { .. } => EXIT_PRECONDITION,
            _ => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        let code = match &e {
            ClassifyError::MissingAutV | ClassifyError::DegenerateSpan => EXIT_PRECONDITION,
            ClassifyError::InvalidInput(_) | ClassifyError::BudgetExceeded(_) | ClassifyError::Bounds(_) => EXIT_USAGE,
            ClassifyError::Field(f) => return f.clone().into(),
            ClassifyError::Perm(p) => return p.clone().into(),
            ClassifyError::Geometry(g) => return g.clone().into(),
            _ => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<IntervalError> for Failure {
    fn from(e: IntervalError) -> Self {
        match e {
            IntervalError::DegreeTooLarge { .. } | IntervalError::SpaceMismatch => {
                Failure::new(EXIT_USAGE, e.to_string())
            }
            IntervalError::Perm(p) => p.into(),
            IntervalError::Classify(c) => c.into(),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::UnknownSuite(_) | VerifyError::Unsupported { .. } => Failure::new(EXIT_USAGE, e.to_string()),
            VerifyError::Field(f) => f.into(),
            VerifyError::Perm(p) => p.into(),
            VerifyError::Geometry(g) => g.into(),
            VerifyError::Classify(c) => c.into(),
            VerifyError::Interval(i) => i.into(),
            VerifyError::Gamma(_) => Failure::new(EXIT_INTERNAL, e.to_string()),
        }
    }
}

/// Output of a successful command: the report text and where it goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub path: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command,
/// printing the report and returning the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(out) => match out.path {
            Some(path) => match fs::write(&path, &out.text) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    EXIT_USAGE
                }
            },
            None => {
                print!("{}", out.text);
                EXIT_OK
            }
        },
        Err(f) => {
            if let Some(report) = &f.report {
                print!("{report}");
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Runs a parsed command without printing anything.
pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let workers = match cli.workers {
        Some(0) => return Err(Failure::new(EXIT_USAGE, "--workers must be at least 1")),
        Some(w) => w,
        None => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
    let start = Instant::now();
    let (name, out, mut report) = pool.install(|| dispatch(cli))?;
    report["tool"] = json!(env!("CARGO_PKG_NAME"));
    report["version"] = json!(env!("CARGO_PKG_VERSION"));
    report["command"] = json!(name);
    report["seed"] = json!(cli.seed);
    if cli.timing {
        report["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(Output { text: render(&report), path: out })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("values serialize");
    s.push('\n');
    s
}

type Dispatched = (&'static str, Option<PathBuf>, Value);

fn dispatch(cli: &Cli) -> Result<Dispatched, Failure> {
    match &cli.command {
        Command::Catalog { p, n, out, gens_dir } => {
            let space = Space::new(*p, *n)?;
            let cat = catalog(&space, &CatalogOptions::default())?;
            if let Some(dir) = gens_dir {
                write_generator_files(dir, &cat)?;
            }
            Ok(("catalog", out.clone(), cat.to_json()))
        }
        Command::Classify { file, out } => {
            let text = fs::read_to_string(file)
                .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", file.display())))?;
            let parsed = io::parse(&text).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", file.display())))?;
            let space = Space::new(parsed.p, parsed.n)?;
            let group = PermGroup::generate_on(space.size() as usize, &parsed.gens, cli.seed)?;
            let record = Classifier::new(&space).classify(&group)?;
            Ok(("classify", out.clone(), json!({"p": parsed.p, "n": parsed.n, "record": record.to_json()})))
        }
        Command::Enumerate { p, n, out } => {
            let space = Space::new(*p, *n)?;
            let report = enumerate_overgroups(&space, DEFAULT_MAX_POINTS)?;
            let cat = catalog(&space, &CatalogOptions::default())?;
            let check = cross_check(&report, &cat)?;
            Ok(("enumerate", out.clone(), report.to_json(Some(&check))))
        }
        Command::Verify { suite, p, n, instances, out } => {
            let suite = Suite::parse(suite)?;
            let space = Space::new(*p, *n)?;
            let opts = VerifyOptions { seed: cli.seed, instances: *instances };
            let report = run_suite(suite, &space, &opts)?;
            Ok(("verify", out.clone(), verdict(&report, cli.seed)?))
        }
        Command::Acl { p, n, v, w, group } => {
            let space = Space::new(*p, *n)?;
            let g = named_group(&space, group)?;
            let acl = acl_pair(&space, &g, *v, *w)?;
            let line = space.affine_closure(&[*v, *w])?.members;
            Ok((
                "acl",
                None,
                json!({
                    "p": p,
                    "n": n,
                    "group": group,
                    "v": v,
                    "w": w,
                    "acl": acl,
                    "size": acl.len(),
                    "affine_closure": line,
                    "equals_affine_closure": acl == line,
                }),
            ))
        }
        Command::Akset { p, n, s, k, group, budget } => {
            let space = Space::new(*p, *n)?;
            let g = named_group(&space, group)?;
            let result = a_k_set(&space, &g, s, *k, *budget)?;
            Ok(("akset", None, json!({"p": p, "n": n, "group": group, "result": result.to_json()})))
        }
    }
}

/// The report of a passing suite, or an exit-5 failure carrying the
/// counterexample dump.
fn verdict(report: &SuiteReport, seed: u64) -> Result<Value, Failure> {
    if report.passed() {
        return Ok(report.to_json());
    }
    let mut dump = report.to_json();
    dump["command"] = json!("verify");
    dump["seed"] = json!(seed);
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    Err(Failure {
        code: EXIT_VIOLATION,
        message: format!("property violated: {}", failed.join(", ")),
        report: Some(render(&dump)),
    })
}

/// `gl`, `agl`, `sym`, `sym0` or `catalog:<id>`.
pub fn named_group(space: &Space, name: &str) -> Result<PermGroup, Failure> {
    let d = space.size() as usize;
    match name {
        "gl" => Ok(gl_group(space)),
        "agl" => Ok(agl_group(space)),
        "sym" => Ok(sym_group(d)),
        "sym0" => Ok(sym_fixing_zero(d)),
        _ => {
            let id: usize = name
                .strip_prefix("catalog:")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Failure::new(EXIT_USAGE, format!("unknown group {name:?}")))?;
            let cat = catalog(space, &CatalogOptions::default())?;
            cat.entries
                .into_iter()
                .find(|e| e.id == id)
                .map(|e| e.group)
                .ok_or_else(|| Failure::new(EXIT_USAGE, format!("catalog has no entry {id}")))
        }
    }
}

fn write_generator_files(dir: &Path, cat: &crate::classify::Catalog) -> Result<(), Failure> {
    let io_err = |e: std::io::Error| Failure::new(EXIT_USAGE, format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io_err)?;
    for e in &cat.entries {
        let text = io::write(cat.p, cat.n, e.group.gens());
        fs::write(dir.join(format!("entry-{}.gens", e.id)), text).map_err(io_err)?;
    }
    Ok(())
}
