//! Shared generators for property tests.

use proptest::prelude::*;

use crate::mvpf::{Atom, ConstId, Formula, MvSignature, MvTheory};

/// Random theories over up to `max_consts` constants with two or three
/// values each, mostly rule shaped.
pub fn arb_theory(max_consts: usize) -> impl Strategy<Value = MvTheory> {
    prop::collection::vec(2usize..=3, 1..=max_consts)
        .prop_flat_map(|domains| {
            let atoms: Vec<(u32, u32)> = domains
                .iter()
                .enumerate()
                .flat_map(|(c, &n)| (0..n as u32).map(move |v| (c as u32, v)))
                .collect();
            let leaf = prop_oneof![
                4 => prop::sample::select(atoms.clone()).prop_map(|(c, v)| Formula::Atom((c, v))),
                1 => Just(Formula::Bot),
            ];
            let formula = leaf.prop_recursive(3, 10, 2, |inner| {
                prop_oneof![
                    inner.clone().prop_map(Formula::not),
                    prop::collection::vec(inner.clone(), 2).prop_map(Formula::And),
                    prop::collection::vec(inner.clone(), 2).prop_map(Formula::Or),
                    (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
                ]
            });
            // Mostly rule shaped: head ← body, with heads atoms or ⊥.
            let head = prop_oneof![
                4 => prop::sample::select(atoms).prop_map(|(c, v)| Formula::Atom((c, v))),
                1 => Just(Formula::Bot),
            ];
            let rule = prop_oneof![
                3 => (head, formula.clone()).prop_map(|(h, b)| Formula::rule(h, b)),
                1 => formula,
            ];
            (Just(domains), prop::collection::vec(rule, 1..=5))
        })
        .prop_map(|(domains, formulas)| {
            let mut sig = MvSignature::new();
            for (i, n) in domains.iter().enumerate() {
                let values: Vec<String> = (0..*n).map(|v| format!("v{v}")).collect();
                let refs: Vec<&str> = values.iter().map(String::as_str).collect();
                sig.add_constant(&format!("c{i}"), &refs);
            }
            let mut t = MvTheory::new(sig);
            for f in formulas {
                let g = f.map_atoms(&mut |&(c, v): &(u32, u32)| {
                    Atom::new(
                        ConstId(c),
                        t.signature.constant(ConstId(c)).domain[v as usize],
                    )
                });
                t.formulas.push(g);
            }
            t
        })
}
