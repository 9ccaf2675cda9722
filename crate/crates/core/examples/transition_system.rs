//! Builds the explicit transition system of the ferryman puzzle, finds
//! the shortest crossing by breadth-first search and checks that the
//! solver's plan is a valid path.
//!
//!     cargo run --example transition_system

use cplus2asp::explicit::{TransitionSystem, DEFAULT_STATE_CAP};
use cplus2asp::ground::ground_laws;
use cplus2asp::parser::parse_files;
use cplus2asp::solve::{solve, SolveConfig};
use cplus2asp::translate::build_incremental_for;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/domains/ferryman.cp");
    let laws = ground_laws(&parse_files(&[path]).unwrap()).unwrap();
    let query = laws.query("cross").unwrap();

    let mut ts = TransitionSystem::new(&laws, DEFAULT_STATE_CAP).unwrap();
    println!("{} states", ts.states().len());
    let plan = ts
        .shortest_plan(query)
        .unwrap()
        .expect("the puzzle is solvable");
    println!("breadth-first search: {} crossings", plan.len());

    let program = build_incremental_for(&laws, query).unwrap();
    let cfg = SolveConfig {
        max_step: 10,
        ..Default::default()
    };
    let out = solve(&program, &cfg).unwrap();
    let step = out.found_step.unwrap();
    let solved = ts.plan_of(&out.models[0], step).unwrap();
    ts.replay(&solved, query).unwrap();
    println!("solver: {step} crossings, replayed step by step");
}
