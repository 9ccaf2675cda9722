//! Translates the lamp description into a propositional program and
//! prints its rules for a one-step horizon.
//!
//!     cargo run --example translate

use cplus2asp::ground::ground_laws;
use cplus2asp::parser::parse_files;
use cplus2asp::translate::translate_static;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/domains/lamp.cp");
    let description = parse_files(&[path]).expect("lamp.cp parses");
    let laws = ground_laws(&description).expect("lamp.cp grounds");
    println!("{} ground laws", laws.laws.len());

    let program = translate_static(&laws, 1).expect("translation");
    for rule in program.rule_set() {
        println!("{rule}");
    }
}
