use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use super::{emit, usage, CliError, RunConfig, Stage, EXIT_EXHAUSTED, EXIT_FOUND};
use crate::export::{
    export_incremental, export_prop, import_native, ExportProfile, Program, MAGIC,
};
use crate::ground::{ground_laws, GroundLawSet};
use crate::mvpf::MvSignature;
use crate::parser::parse_files;
use crate::parser::{QueryOverride, SolutionCount, StepBound};
use crate::prop::{IncrementalProgram, PropProgram};
use crate::solve::{enumerate, solve, Mode, SolveConfig, StableModel};
use crate::translate::{build_incremental, query_bounds};
use crate::view::{render_plan_view, to_plan_view, RenderOptions};

/// Horizons tried past the minimum when a query leaves maxstep open.
pub const OPEN_HORIZON_CAP: u32 = 50;

/// What a run starts from.
#[derive(Clone, Debug)]
pub enum Source {
    Description(GroundLawSet),
    /// Translated programs, one per query.
    Programs(Vec<IncrementalProgram>),
    /// Fully ground programs, one per horizon.
    Flat(Vec<PropProgram>),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn is_native(text: &str) -> bool {
    text.lines().next() == Some(MAGIC)
}

/// Splits concatenated native files at their header lines.
fn split_bundle(text: &str) -> Vec<String> {
    let mut parts: Vec<String> = Vec::new();
    for line in text.split_inclusive('\n') {
        if line.trim_end() == MAGIC || parts.is_empty() {
            parts.push(String::new());
        }
        parts.last_mut().expect("pushed above").push_str(line);
    }
    parts
}

fn horizon_of(p: &PropProgram) -> u32 {
    p.constants.iter().map(|c| c.step).max().unwrap_or(0)
}

impl Source {
    /// Reads descriptions, or native dumps when `native` is set.
    pub fn load(files: &[PathBuf], native: bool) -> Result<Source, CliError> {
        if !native {
            for f in files {
                if f.is_file() && is_native(&read(f)?) {
                    return Err(usage(format!(
                        "{} is a native dump; resume it with --from-grounder",
                        f.display()
                    )));
                }
            }
            let d = parse_files(files).map_err(|e| usage(e.to_string()))?;
            let g = ground_laws(&d).map_err(|e| usage(e.to_string()))?;
            return Ok(Source::Description(g));
        }
        let mut programs = Vec::new();
        let mut flat = Vec::new();
        for f in files {
            let text = read(f)?;
            if !is_native(&text) {
                return Err(usage(format!("{} is not a native dump", f.display())));
            }
            for part in split_bundle(&text) {
                match import_native(&part).map_err(|e| usage(format!("{}: {e}", f.display())))? {
                    Program::Incremental(ip) => programs.push(ip),
                    Program::Prop(p) => flat.push(p),
                }
            }
        }
        match (programs.is_empty(), flat.is_empty()) {
            (false, true) => Ok(Source::Programs(programs)),
            (true, false) => {
                flat.sort_by_key(horizon_of);
                Ok(Source::Flat(flat))
            }
            (true, true) => Err(usage("the dump holds no programs")),
            (false, false) => Err(usage("cannot mix translated and ground programs")),
        }
    }
}

/// Query settings of a session; they never touch the loaded description.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub query: Option<String>,
    pub minstep: Option<u32>,
    pub maxstep: Option<StepBound>,
    pub solutions: SolutionCount,
    solutions_set: bool,
}

impl Settings {
    pub fn apply(&mut self, o: &QueryOverride) {
        self.apply_reporting(o);
    }

    /// Applies `o`, describing every setting it replaces.
    pub fn apply_reporting(&mut self, o: &QueryOverride) -> Vec<String> {
        let mut replaced = Vec::new();
        if let Some(l) = &o.label {
            if let Some(old) = self.query.replace(l.clone()) {
                replaced.push(format!("query={old} replaced by query={l}"));
            }
        }
        if let Some(n) = o.minstep {
            if let Some(old) = self.minstep.replace(n) {
                replaced.push(format!("minstep={old} replaced by minstep={n}"));
            }
        }
        if let Some(b) = o.maxstep {
            if let Some(old) = self.maxstep.replace(b) {
                replaced.push(format!("maxstep={old} replaced by maxstep={b}"));
            }
        }
        if let Some(s) = o.solutions {
            if self.solutions_set {
                replaced.push(format!("solution count {} replaced by {s}", self.solutions));
            }
            self.solutions = s;
            self.solutions_set = true;
        }
        replaced
    }

    /// The horizons to try, given the bounds the query declares.
    pub fn range(&self, declared: (u32, Option<u32>)) -> Result<(u32, u32), CliError> {
        let (mut lo, mut hi) = declared;
        match self.maxstep {
            Some(StepBound::Single(n)) => (lo, hi) = (n, Some(n)),
            Some(StepBound::Range(a, b)) => (lo, hi) = (a, Some(b)),
            None => {}
        }
        if let Some(m) = self.minstep {
            lo = m;
        }
        let hi = hi.unwrap_or(lo.saturating_add(OPEN_HORIZON_CAP));
        if lo > hi {
            return Err(usage(format!("empty step range {lo}..{hi}")));
        }
        Ok((lo, hi))
    }
}

/// Result of running one query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub query: String,
    pub range: (u32, u32),
    pub found_step: Option<u32>,
    pub models: Vec<StableModel>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.found_step.is_some() {
            EXIT_FOUND
        } else {
            EXIT_EXHAUSTED
        }
    }
}

pub struct Session {
    pub source: Source,
    pub settings: Settings,
    pub mode: Mode,
    pub timings: Vec<(&'static str, Duration)>,
}

impl Session {
    pub fn new(source: Source, mode: Mode) -> Self {
        Session {
            source,
            settings: Settings::default(),
            mode,
            timings: Vec::new(),
        }
    }

    /// Ground dumps are solved as they are.
    pub fn needs_no_query(&self) -> bool {
        matches!(self.source, Source::Flat(_))
    }

    /// Labels of the runnable queries with their declared horizons.
    pub fn queries(&self) -> Vec<(String, String)> {
        match &self.source {
            Source::Description(g) => g
                .queries
                .iter()
                .map(|q| (q.label.clone(), q.maxstep.to_string()))
                .collect(),
            Source::Programs(ps) => ps
                .iter()
                .map(|p| {
                    let hi = p.max_step.map_or("infinity".to_string(), |m| m.to_string());
                    (p.query.clone(), format!("{}..{hi}", p.min_step))
                })
                .collect(),
            Source::Flat(ps) => {
                let hs: Vec<String> = ps.iter().map(|p| horizon_of(p).to_string()).collect();
                vec![("(ground)".into(), hs.join(","))]
            }
        }
    }

    fn timed<T>(&mut self, what: &'static str, f: impl FnOnce(&Self) -> T) -> T {
        let t = Instant::now();
        let r = f(self);
        self.timings.push((what, t.elapsed()));
        r
    }

    pub fn report_timings(&self, err: &mut dyn Write) {
        let parts: Vec<String> = self
            .timings
            .iter()
            .map(|(w, d)| format!("{w} {:.1}ms", d.as_secs_f64() * 1000.0))
            .collect();
        let _ = writeln!(err, "timings: {}", parts.join(", "));
    }

    fn unknown_query(&self, label: &str) -> CliError {
        let known: Vec<String> = self.queries().into_iter().map(|(l, _)| l).collect();
        usage(format!(
            "unknown query `{label}` (known: {})",
            known.join(", ")
        ))
    }

    /// The translated program of the selected query, or of every query
    /// when none is selected.
    fn programs(&self) -> Result<Vec<IncrementalProgram>, CliError> {
        let label = self.settings.query.as_deref();
        match &self.source {
            Source::Description(g) => {
                let qs: Vec<_> = match label {
                    Some(l) => vec![g.query(l).ok_or_else(|| self.unknown_query(l))?],
                    None => g.queries.iter().collect(),
                };
                qs.into_iter()
                    .map(|q| {
                        let (lo, hi) = self.settings.range(query_bounds(q.maxstep))?;
                        build_incremental(g, q, lo, Some(hi)).map_err(|e| usage(e.to_string()))
                    })
                    .collect()
            }
            Source::Programs(ps) => {
                let chosen: Vec<&IncrementalProgram> = match label {
                    Some(l) => vec![ps
                        .iter()
                        .find(|p| p.query == l)
                        .ok_or_else(|| self.unknown_query(l))?],
                    None => ps.iter().collect(),
                };
                chosen
                    .into_iter()
                    .map(|p| {
                        let (lo, hi) = self.settings.range((p.min_step, p.max_step))?;
                        if lo < p.min_step {
                            return Err(usage(format!(
                                "minstep {lo} is below {}, the smallest horizon of the dump",
                                p.min_step
                            )));
                        }
                        let mut p = p.clone();
                        p.min_step = lo;
                        p.max_step = Some(hi);
                        Ok(p)
                    })
                    .collect()
            }
            Source::Flat(_) => Err(usage("a ground program has no pre-processor output")),
        }
    }

    pub fn pre_processor_text(&mut self) -> Result<String, CliError> {
        let ps = self.timed("translate", |s| s.programs())?;
        let mut text = String::new();
        for p in &ps {
            text += &export_incremental(p, &ExportProfile::native())
                .map_err(|e| CliError::Runtime(e.to_string()))?;
        }
        Ok(text)
    }

    fn flat_in_range(
        &self,
        ps: &[PropProgram],
    ) -> Result<(Vec<PropProgram>, (u32, u32)), CliError> {
        let lo = ps.first().map_or(0, horizon_of);
        let hi = ps.last().map_or(0, horizon_of);
        let range = self.settings.range((lo, Some(hi)))?;
        let chosen = ps
            .iter()
            .filter(|p| (range.0..=range.1).contains(&horizon_of(p)))
            .cloned()
            .collect();
        Ok((chosen, range))
    }

    fn solve_config(&self, range: (u32, u32)) -> SolveConfig {
        SolveConfig {
            max_solutions: self.settings.solutions.limit(),
            min_step: range.0,
            max_step: range.1,
            mode: self.mode,
            ..Default::default()
        }
    }

    /// Runs the pipeline up to `cfg.stage_to`, writing stage outputs.
    pub fn run_staged(
        &mut self,
        cfg: &RunConfig,
        out: &mut dyn Write,
        err: &mut dyn Write,
    ) -> Result<i32, CliError> {
        let report = match self.source.clone() {
            Source::Flat(ps) => {
                let (ps, range) = self.flat_in_range(&ps)?;
                if cfg.output_for(Stage::Grounder).is_some() || cfg.stage_to == Stage::Grounder {
                    let text = bundle(ps.iter().map(|p| export_prop(p, &ExportProfile::native())))?;
                    emit(cfg, Stage::Grounder, &text, out)?;
                    if cfg.stage_to == Stage::Grounder {
                        self.report_timings(err);
                        return Ok(EXIT_FOUND);
                    }
                }
                let sc = self.solve_config(range);
                let mut report = Report {
                    query: self
                        .settings
                        .query
                        .clone()
                        .unwrap_or_else(|| "(ground)".into()),
                    range,
                    found_step: None,
                    models: vec![],
                };
                let t = Instant::now();
                for p in &ps {
                    let (models, _) =
                        enumerate(p, &sc).map_err(|e| CliError::Runtime(e.to_string()))?;
                    if !models.is_empty() {
                        report.found_step = Some(horizon_of(p));
                        report.models = models;
                        break;
                    }
                }
                self.timings.push(("solve", t.elapsed()));
                let base = ps.first().map(|p| p.base.clone()).unwrap_or_default();
                (report, base)
            }
            _ => {
                let Some(ip) = self.timed("translate", |s| s.programs())?.pop() else {
                    return Err(usage("no query to run"));
                };
                if cfg.output_for(Stage::PreProcessor).is_some() {
                    let text = export_incremental(&ip, &ExportProfile::native())
                        .map_err(|e| CliError::Runtime(e.to_string()))?;
                    emit(cfg, Stage::PreProcessor, &text, out)?;
                }
                let range = (ip.min_step, ip.max_step.unwrap_or(ip.min_step));
                if cfg.output_for(Stage::Grounder).is_some() || cfg.stage_to == Stage::Grounder {
                    let text = self.timed("ground", |_| {
                        bundle(
                            (range.0..=range.1)
                                .map(|k| export_prop(&ip.accumulated(k), &ExportProfile::native())),
                        )
                    })?;
                    emit(cfg, Stage::Grounder, &text, out)?;
                    if cfg.stage_to == Stage::Grounder {
                        self.report_timings(err);
                        return Ok(EXIT_FOUND);
                    }
                }
                let sc = self.solve_config(range);
                let outcome = self
                    .timed("solve", |_| solve(&ip, &sc))
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
                let report = Report {
                    query: ip.query.clone(),
                    range,
                    found_step: outcome.found_step,
                    models: outcome.models,
                };
                (report, ip.base_signature.clone())
            }
        };
        let (report, base) = report;
        if cfg.output_for(Stage::Solver).is_some() || cfg.stage_to == Stage::Solver {
            emit(cfg, Stage::Solver, &answers_text(&report, &base), out)?;
            if cfg.stage_to == Stage::Solver {
                self.report_timings(err);
                return Ok(report.exit_code());
            }
        }
        let text = self.timed("render", |_| plans_text(&report, &base))?;
        emit(cfg, Stage::PostProcessor, &text, out)?;
        if cfg.stage_from.is_some() || !cfg.input_files.is_empty() {
            self.report_timings(err);
        }
        Ok(report.exit_code())
    }
}

fn bundle<E: std::fmt::Display>(
    parts: impl Iterator<Item = Result<String, E>>,
) -> Result<String, CliError> {
    let mut text = String::new();
    for p in parts {
        text += &p.map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    Ok(text)
}

fn answers_text(r: &Report, base: &MvSignature) -> String {
    let mut text = String::new();
    for (i, m) in r.models.iter().enumerate() {
        let step = r.found_step.unwrap_or(0);
        text += &format!("Answer {} (maxstep {step}):\n{}\n", i + 1, m.render(base));
    }
    text += &format!("Models: {}\n", r.models.len());
    text
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

/// Plans in display form followed by a one-line summary.
pub fn plans_text(r: &Report, base: &MvSignature) -> Result<String, CliError> {
    let mut text = String::new();
    let Some(step) = r.found_step else {
        let (lo, hi) = r.range;
        return Ok(format!(
            "query {}: no plan with maxstep in {lo}..{hi}\n",
            r.query
        ));
    };
    for (i, m) in r.models.iter().enumerate() {
        let view =
            to_plan_view(m, base, step, &r.query).map_err(|e| CliError::Runtime(e.to_string()))?;
        text += &format!("Solution {}:\n", i + 1);
        text += &render_plan_view(&view, base, RenderOptions::display());
        text.push('\n');
    }
    let n = r.models.len();
    text += &format!(
        "query {}: found at maxstep {step}, {n} solution{}\n",
        r.query,
        plural(n)
    );
    Ok(text)
}
