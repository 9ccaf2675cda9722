use std::io::{BufRead, Write};

use super::session::Session;
use super::{RunConfig, Stage};
use crate::parser::parse_query_override;
use crate::solve::Mode;

const PROMPT: &str = "cplus2asp> ";

const HELP: &str = "\
Commands:
  help            Displays the list of available commands
  config          Displays the current settings
  queries         Displays the list of available queries to run
  minstep=[#]     Sets the smallest horizon to try
  maxstep=[#]     Sets the largest horizon (a number or a range A..B)
  sol=[#]         Selects the number of solutions (0 or all for every one)
  query=[QUERY]   Runs the query with the current settings
  exit            Leaves the interactive mode
";

fn config_text(s: &Session) -> String {
    let st = &s.settings;
    let or_default = |v: Option<String>| v.unwrap_or_else(|| "(from query)".into());
    format!(
        "query: {}\nminstep: {}\nmaxstep: {}\nsol: {}\nmode: {}\n",
        st.query.clone().unwrap_or_else(|| "(none)".into()),
        or_default(st.minstep.map(|m| m.to_string())),
        or_default(st.maxstep.map(|m| m.to_string())),
        st.solutions,
        match s.mode {
            Mode::Incremental => "incremental",
            Mode::Static => "static",
        }
    )
}

/// Reads commands until `exit` or end of input. Settings persist between
/// queries.
pub fn run(
    session: &mut Session,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let _ = writeln!(out, "Entering interactive mode; type `help` for commands.");
    let run_cfg = RunConfig {
        input_files: vec![],
        overrides: vec![],
        stage_from: None,
        stage_to: Stage::PostProcessor,
        stage_outputs: vec![],
        mode: session.mode,
    };
    let mut line = String::new();
    loop {
        let _ = write!(out, "{PROMPT}");
        let _ = out.flush();
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => {
                let _ = writeln!(out);
                return 0;
            }
            Ok(_) => {}
        }
        let cmd = line.trim();
        match cmd {
            "" => {}
            "help" => {
                let _ = write!(out, "{HELP}");
            }
            "config" => {
                let _ = write!(out, "{}", config_text(session));
            }
            "queries" => {
                for (label, steps) in session.queries() {
                    let _ = writeln!(out, "  {label}  maxstep {steps}");
                }
            }
            "exit" | "quit" => return 0,
            _ => match parse_query_override(cmd) {
                Ok(o) => {
                    let before = session.settings.clone();
                    session.settings.apply(&o);
                    if o.label.is_some() {
                        if let Err(e) = session.run_staged(&run_cfg, out, err) {
                            let _ = writeln!(err, "error: {e}");
                            session.settings = before;
                        }
                    } else {
                        let _ = writeln!(out, "ok");
                    }
                }
                Err(_) => {
                    let _ = writeln!(err, "unknown command `{cmd}`; type `help` for the list");
                }
            },
        }
    }
}
