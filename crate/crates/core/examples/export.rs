//! Writes the two-block world as an ASP program and as the native
//! format, then reads the native text back.
//!
//!     cargo run --example export

use cplus2asp::export::{export_prop, import_native, ExportProfile, Program};
use cplus2asp::ground::ground_laws;
use cplus2asp::parser::parse_files;
use cplus2asp::translate::translate_static_query;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/domains/bw2.cp");
    let laws = ground_laws(&parse_files(&[path]).unwrap()).unwrap();
    let query = laws.query("swap").unwrap();
    let program = translate_static_query(&laws, query, 1).unwrap();

    match export_prop(&program, &ExportProfile::asp_normal()) {
        Ok(text) => print!("{text}"),
        Err(e) => eprintln!("not expressible as a normal program: {e}"),
    }

    let native = export_prop(&program, &ExportProfile::native()).unwrap();
    let Program::Prop(back) = import_native(&native).unwrap() else {
        unreachable!("a flat program reads back flat");
    };
    assert_eq!(back, program);
    println!(
        "% native form: {} lines, reads back unchanged",
        native.lines().count()
    );
}
