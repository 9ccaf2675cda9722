use std::fmt;

use thiserror::Error;

/// How many solutions to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionCount {
    Limited(usize),
    All,
}

impl SolutionCount {
    pub fn limit(self) -> Option<usize> {
        match self {
            SolutionCount::Limited(n) => Some(n),
            SolutionCount::All => None,
        }
    }

    /// `0` and `all` both mean every solution.
    pub fn parse(s: &str) -> Option<Self> {
        if s == "all" {
            return Some(SolutionCount::All);
        }
        match s.parse::<usize>().ok()? {
            0 => Some(SolutionCount::All),
            n => Some(SolutionCount::Limited(n)),
        }
    }
}

impl Default for SolutionCount {
    fn default() -> Self {
        SolutionCount::Limited(1)
    }
}

impl fmt::Display for SolutionCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionCount::Limited(n) => write!(f, "{n}"),
            SolutionCount::All => f.write_str("all"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepBound {
    Single(u32),
    Range(u32, u32),
}

impl StepBound {
    pub fn parse(s: &str) -> Option<Self> {
        match s.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (a.parse().ok()?, b.parse().ok()?);
                (a <= b).then_some(StepBound::Range(a, b))
            }
            None => s.parse().ok().map(StepBound::Single),
        }
    }
}

impl fmt::Display for StepBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepBound::Single(n) => write!(f, "{n}"),
            StepBound::Range(a, b) => write!(f, "{a}..{b}"),
        }
    }
}

/// One command-line or shell token that adjusts how a query runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryOverride {
    pub label: Option<String>,
    pub minstep: Option<u32>,
    pub maxstep: Option<StepBound>,
    pub solutions: Option<SolutionCount>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OverrideError {
    #[error("malformed option `{0}`")]
    MalformedOverride(String),
}

/// Parses `query=L`, `minstep=N`, `maxstep=N` or `maxstep=A..B`, `sol=N`,
/// and bare solution counts (`4`, `all`, `0`).
pub fn parse_query_override(arg: &str) -> Result<QueryOverride, OverrideError> {
    let bad = || OverrideError::MalformedOverride(arg.to_string());
    let mut out = QueryOverride::default();
    match arg.split_once('=') {
        Some(("query", label)) if !label.is_empty() => out.label = Some(label.to_string()),
        Some(("minstep", n)) => out.minstep = Some(n.parse().map_err(|_| bad())?),
        Some(("maxstep", n)) => out.maxstep = Some(StepBound::parse(n).ok_or_else(bad)?),
        Some(("sol", n)) => out.solutions = Some(SolutionCount::parse(n).ok_or_else(bad)?),
        Some(_) => return Err(bad()),
        None => out.solutions = Some(SolutionCount::parse(arg).ok_or_else(bad)?),
    }
    Ok(out)
}
