//! The `cplus2asp` command line: scripted runs, staged runs and the
//! interactive shell.

mod repl;
mod session;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};

use crate::parser::{parse_query_override, QueryOverride};
use crate::solve::Mode;
pub use session::{plans_text, Report, Session, Settings, Source, OPEN_HORIZON_CAP};

/// Exit code of a run that found at least one plan (or stopped early on
/// request).
pub const EXIT_FOUND: i32 = 0;
/// Every horizon in range was tried without finding a plan.
pub const EXIT_EXHAUSTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Pipeline stages, in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    PreProcessor,
    Grounder,
    Solver,
    PostProcessor,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::PreProcessor => "pre-processor",
            Stage::Grounder => "grounder",
            Stage::Solver => "solver",
            Stage::PostProcessor => "post-processor",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Incremental,
    Static,
}

#[derive(Parser, Debug)]
#[command(
    name = "cplus2asp",
    version,
    about = "Plan with action descriptions in the definite fragment of C+",
    after_help = "Settings: query=LABEL  minstep=N  maxstep=N|A..B  sol=N\n\
                  A bare number sets the solution count; `all` or 0 asks for every plan.\n\
                  Without a query, an interactive prompt starts."
)]
struct Args {
    /// Description files, native dumps, and settings such as query=simple
    #[arg(value_name = "FILE|SETTING")]
    items: Vec<String>,
    /// Solve incrementally or reground every horizon
    #[arg(long, value_enum, default_value = "incremental")]
    mode: ModeArg,
    /// Input language
    #[arg(long, default_value = "cplus")]
    language: String,
    #[arg(
        long = "to-pre-processor",
        help = "Stop after translation and print the program"
    )]
    to_pre_processor: bool,
    #[arg(long = "to-grounder", help = "Stop after grounding every horizon")]
    to_grounder: bool,
    #[arg(
        long = "to-solver",
        help = "Stop after solving and print raw answer sets"
    )]
    to_solver: bool,
    #[arg(long = "to-post-processor", help = "Run everything (the default)")]
    to_post_processor: bool,
    #[arg(long = "from-pre-processor", help = "Resume from a native dump")]
    from_pre_processor: bool,
    #[arg(long = "from-grounder", help = "Resume from a native dump")]
    from_grounder: bool,
    #[arg(long = "from-solver", hide = true)]
    from_solver: bool,
    #[arg(long = "from-post-processor", hide = true)]
    from_post_processor: bool,
    #[arg(long = "pre-processor-output", value_name = "FILE")]
    pre_processor_output: Option<PathBuf>,
    #[arg(long = "grounder-output", value_name = "FILE")]
    grounder_output: Option<PathBuf>,
    #[arg(long = "solver-output", value_name = "FILE")]
    solver_output: Option<PathBuf>,
    #[arg(long = "post-processor-output", value_name = "FILE")]
    post_processor_output: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input; exit code 2.
    Usage(String),
    /// Failure while solving or writing output; exit code 1.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_EXHAUSTED,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A parsed command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub input_files: Vec<PathBuf>,
    pub overrides: Vec<QueryOverride>,
    pub stage_from: Option<Stage>,
    pub stage_to: Stage,
    pub stage_outputs: Vec<(Stage, PathBuf)>,
    pub mode: Mode,
}

impl RunConfig {
    pub fn output_for(&self, stage: Stage) -> Option<&Path> {
        self.stage_outputs
            .iter()
            .find(|(s, _)| *s == stage)
            .map(|(_, p)| p.as_path())
    }
}

fn is_setting(item: &str) -> bool {
    item.contains('=') || parse_query_override(item).is_ok()
}

fn one_stage(flags: &[(bool, Stage)], what: &str) -> Result<Option<Stage>, CliError> {
    let mut chosen = flags.iter().filter(|(on, _)| *on).map(|&(_, s)| s);
    let first = chosen.next();
    if chosen.next().is_some() {
        return Err(usage(format!("give at most one --{what}-* flag")));
    }
    Ok(first)
}

fn config_of(args: Args) -> Result<RunConfig, CliError> {
    if args.language != "cplus" {
        return Err(usage(format!(
            "--language={}: language mode not supported in this build",
            args.language
        )));
    }
    let stage_to = one_stage(
        &[
            (args.to_pre_processor, Stage::PreProcessor),
            (args.to_grounder, Stage::Grounder),
            (args.to_solver, Stage::Solver),
            (args.to_post_processor, Stage::PostProcessor),
        ],
        "to",
    )?
    .unwrap_or(Stage::PostProcessor);
    let stage_from = one_stage(
        &[
            (args.from_pre_processor, Stage::PreProcessor),
            (args.from_grounder, Stage::Grounder),
            (args.from_solver, Stage::Solver),
            (args.from_post_processor, Stage::PostProcessor),
        ],
        "from",
    )?;
    if let Some(s @ (Stage::Solver | Stage::PostProcessor)) = stage_from {
        return Err(usage(format!(
            "--from-{s}: only pre-processor and grounder dumps can be resumed"
        )));
    }
    if let Some(from) = stage_from {
        if from > stage_to {
            return Err(usage(format!("--from-{from} comes after --to-{stage_to}")));
        }
    }
    let mut stage_outputs = Vec::new();
    for (stage, path) in [
        (Stage::PreProcessor, args.pre_processor_output),
        (Stage::Grounder, args.grounder_output),
        (Stage::Solver, args.solver_output),
        (Stage::PostProcessor, args.post_processor_output),
    ] {
        let Some(path) = path else { continue };
        if stage > stage_to {
            return Err(usage(format!(
                "--{stage}-output: the run stops before {stage}"
            )));
        }
        stage_outputs.push((stage, path));
    }
    let mut input_files = Vec::new();
    let mut overrides = Vec::new();
    for item in args.items {
        if is_setting(&item) {
            overrides.push(parse_query_override(&item).map_err(|e| usage(e.to_string()))?);
        } else {
            input_files.push(PathBuf::from(item));
        }
    }
    if input_files.is_empty() {
        return Err(usage("no input files; try --help"));
    }
    Ok(RunConfig {
        input_files,
        overrides,
        stage_from,
        stage_to,
        stage_outputs,
        mode: match args.mode {
            ModeArg::Incremental => Mode::Incremental,
            ModeArg::Static => Mode::Static,
        },
    })
}

/// Parses the command line (program name first).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| usage(e.to_string()))?;
    config_of(args)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    let result = config_of(args).and_then(|cfg| execute(&cfg, stdin, out, err));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "cplus2asp: {e}");
            e.exit_code()
        }
    }
}

fn execute(
    cfg: &RunConfig,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let started = Instant::now();
    let source = Source::load(&cfg.input_files, cfg.stage_from.is_some())?;
    let mut session = Session::new(source, cfg.mode);
    session.timings.push(("load", started.elapsed()));
    for o in &cfg.overrides {
        for warning in session.settings.apply_reporting(o) {
            let _ = writeln!(err, "cplus2asp: warning: {warning}");
        }
    }
    let has_query = session.settings.query.is_some() || session.needs_no_query();
    if cfg.stage_to == Stage::PreProcessor {
        let text = session.pre_processor_text()?;
        emit(cfg, Stage::PreProcessor, &text, out)?;
        session.report_timings(err);
        return Ok(EXIT_FOUND);
    }
    if !has_query {
        if cfg.stage_to != Stage::PostProcessor || !cfg.stage_outputs.is_empty() {
            return Err(usage("staged runs need a query; add query=LABEL"));
        }
        return Ok(repl::run(&mut session, stdin, out, err));
    }
    session.run_staged(cfg, out, err)
}

/// Writes a stage's text to its output file, and to standard output when
/// the run stops at that stage.
fn emit(cfg: &RunConfig, stage: Stage, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    if let Some(path) = cfg.output_for(stage) {
        write_file(path, text)?;
    }
    if cfg.stage_to == stage && cfg.output_for(stage).is_none() {
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    Ok(())
}
