//! Compares incremental solving, which grounds each step once, with
//! regrounding the whole program at every horizon.
//!
//!     cargo run --example incremental

use std::time::Instant;

use cplus2asp::ground::ground_laws;
use cplus2asp::parser::parse_files;
use cplus2asp::solve::{solve, Mode, SolveConfig};
use cplus2asp::translate::{build_incremental_for, query_bounds};

fn main() {
    for (file, label) in [
        ("hanoi", "solve"),
        ("ferryman", "cross"),
        ("bw-test", "simple"),
    ] {
        let path = format!("{}/examples/domains/{file}.cp", env!("CARGO_MANIFEST_DIR"));
        let laws = ground_laws(&parse_files(&[path]).unwrap()).unwrap();
        let query = laws.query(label).unwrap();
        let program = build_incremental_for(&laws, query).unwrap();
        let (min, max) = query_bounds(query.maxstep);
        for mode in [Mode::Incremental, Mode::Static] {
            let cfg = SolveConfig {
                min_step: min,
                max_step: max.unwrap(),
                mode,
                ..Default::default()
            };
            let started = Instant::now();
            let out = solve(&program, &cfg).unwrap();
            let stats = out.state.stats;
            println!(
                "{file:<9} {:<11} found at {:?}  rules grounded {:>5}  {:.1?}",
                format!("{mode:?}"),
                out.found_step,
                stats.grounded_rules,
                started.elapsed()
            );
        }
    }
}
