//! Stable models of small multi-valued theories, computed by the
//! exhaustive oracle and by the propositional translation.
//!
//!     cargo run --example stable_models

use cplus2asp::mvpf::{
    enumerate_models, enumerate_stable, Formula, MvSignature, MvTheory, DEFAULT_ORACLE_CAP,
};
use cplus2asp::solve::{enumerate, SolveConfig};
use cplus2asp::translate::to_prop;

fn main() {
    let mut sig = MvSignature::new();
    sig.add_constant("c", &["1", "2", "3"]);
    let c1 = Formula::Atom(sig.atom("c", "1").unwrap());
    let c2 = Formula::Atom(sig.atom("c", "2").unwrap());

    let theories = [
        ("c=1 <- c=1", vec![Formula::rule(c1.clone(), c1.clone())]),
        (
            "c=1 <- not not c=1",
            vec![Formula::rule(c1.clone(), Formula::not_not(c1.clone()))],
        ),
        (
            "(c=1 <- not not c=1) & c=2",
            vec![Formula::rule(c1.clone(), Formula::not_not(c1.clone())), c2],
        ),
    ];
    let all = SolveConfig {
        max_solutions: None,
        ..Default::default()
    };
    for (name, formulas) in theories {
        let t = MvTheory {
            signature: sig.clone(),
            formulas,
        };
        let classical = enumerate_models(&t, DEFAULT_ORACLE_CAP).unwrap();
        let stable: Vec<String> = enumerate_stable(&t, DEFAULT_ORACLE_CAP)
            .unwrap()
            .iter()
            .map(|i| i.render(&t.signature))
            .collect();
        let p = to_prop(&t).unwrap();
        let solved: Vec<String> = enumerate(&p, &all)
            .unwrap()
            .0
            .iter()
            .map(|m| m.render(&p.base))
            .collect();
        println!("{name}");
        println!("  classical models: {}", classical.len());
        println!("  stable (oracle):  {stable:?}");
        println!("  stable (solver):  {solved:?}");
    }
}
