//! Finds the shortest plan for a blocks world query and prints it
//! step by step.
//!
//!     cargo run --example plan [FILE] [QUERY]

use std::env;

use cplus2asp::ground::ground_laws;
use cplus2asp::parser::parse_files;
use cplus2asp::solve::{solve, SolveConfig};
use cplus2asp::translate::{build_incremental_for, query_bounds};
use cplus2asp::view::{render_plan_view, to_plan_view, RenderOptions};

fn main() {
    let mut args = env::args().skip(1);
    let file = args.next().unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/examples/domains/bw-test.cp").into()
    });
    let label = args.next().unwrap_or_else(|| "simple".into());

    let laws = ground_laws(&parse_files(&[file]).unwrap()).unwrap();
    let query = laws.query(&label).expect("no such query");
    let program = build_incremental_for(&laws, query).unwrap();
    let (min, max) = query_bounds(query.maxstep);
    let cfg = SolveConfig {
        min_step: min,
        max_step: max.unwrap_or(min + 20),
        ..Default::default()
    };
    let outcome = solve(&program, &cfg).unwrap();
    let Some(step) = outcome.found_step else {
        println!("no plan up to maxstep {}", cfg.max_step);
        return;
    };
    let sig = &program.base_signature;
    let view = to_plan_view(&outcome.models[0], sig, step, &label).unwrap();
    print!("{}", render_plan_view(&view, sig, RenderOptions::display()));
    println!("-- {} horizons tried", outcome.steps.len());
}
