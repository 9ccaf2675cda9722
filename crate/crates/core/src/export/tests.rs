use super::*;
use crate::ground::ground_laws;
use crate::mvpf::{MvTheory, DEFAULT_ORACLE_CAP};
use crate::parser::{parse_files, parse_str};
use crate::solve::{enumerate, SolveConfig, StableModel};
use crate::translate::{build_incremental_for, to_prop, translate_static};
use std::collections::BTreeSet;

fn domain(name: &str) -> crate::ground::GroundLawSet {
    let path = format!("{}/examples/domains/{name}.cp", env!("CARGO_MANIFEST_DIR"));
    ground_laws(&parse_files(&[path]).unwrap()).unwrap()
}

const DOMAINS: &[&str] = &["lamp", "bw2", "bw-test", "hanoi", "ferryman"];

#[test]
fn native_round_trips_every_domain() {
    for name in DOMAINS {
        let g = domain(name);
        let p = translate_static(&g, 1).unwrap();
        let text = export_prop(&p, &ExportProfile::native()).unwrap();
        assert_eq!(import_native(&text).unwrap(), Program::Prop(p), "{name}");
        for q in &g.queries {
            let ip = build_incremental_for(&g, q).unwrap();
            let text = export_incremental(&ip, &ExportProfile::native()).unwrap();
            assert_eq!(
                import_native(&text).unwrap(),
                Program::Incremental(ip),
                "{name}"
            );
        }
    }
}

#[test]
fn truncated_files_are_rejected() {
    let p = translate_static(&domain("lamp"), 1).unwrap();
    let text = export_prop(&p, &ExportProfile::native()).unwrap();
    let cut = &text[..text.len() - 10];
    assert!(import_native(cut).is_err());
    let headless: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    assert_eq!(import_native(&headless).unwrap_err().line, 1);
}

#[test]
fn empty_programs_keep_their_signature() {
    let mut sig = MvSignature::new();
    sig.add_constant("c", &["1", "2"]);
    let p = PropProgram {
        base: sig,
        constants: vec![],
        rules: vec![],
    };
    let text = export_prop(&p, &ExportProfile::native()).unwrap();
    assert!(!text.contains(" <- "));
    assert_eq!(import_native(&text).unwrap(), Program::Prop(p));
}

#[test]
fn unusual_connectives_round_trip() {
    let mut sig = MvSignature::new();
    sig.add_constant("f(a,b)", &["x", "y"]);
    let a = crate::mvpf::Atom::new(ConstId(0), ValueId(0));
    let t = {
        let mut t = MvTheory::new(sig);
        let x = || Formula::Atom(a);
        t.formulas.push(Formula::Or(vec![
            x(),
            Formula::And(vec![]),
            Formula::Or(vec![Formula::not(x())]),
        ]));
        t.formulas.push(Formula::rule(
            x(),
            Formula::implies(Formula::Bot, Formula::not_not(x())),
        ));
        t
    };
    let p = to_prop(&t).unwrap();
    let text = export_prop(&p, &ExportProfile::native()).unwrap();
    assert_eq!(import_native(&text).unwrap(), Program::Prop(p));
}

#[test]
fn uec_in_asp_syntax() {
    let mut sig = MvSignature::new();
    sig.add_constant("c", &["1", "2"]);
    let p = to_prop(&MvTheory::new(sig)).unwrap();
    let text = export_prop(&p, &ExportProfile::asp_normal()).unwrap();
    let rules: Vec<&str> = text.lines().filter(|l| !l.starts_with('%')).collect();
    assert_eq!(rules, [":- c_1_0, c_2_0.", ":- not c_1_0, not c_2_0."]);
    let without = ExportProfile {
        include_uec: false,
        ..ExportProfile::asp_normal()
    };
    assert!(export_prop(&p, &without)
        .unwrap()
        .lines()
        .all(|l| l.starts_with('%')));
}

#[test]
fn dynamic_law_in_asp_syntax() {
    let g = ground_laws(&parse_str(":- sorts n. :- objects 1..2 :: n. :- constants c :: inertialFluent(n). caused c=1 if c=1 after c=1.").unwrap()).unwrap();
    let p = translate_static(&g, 1).unwrap();
    let text = export_prop(&p, &ExportProfile::asp_normal()).unwrap();
    assert!(
        text.lines().any(|l| l == "c_1_1 :- not not c_1_1, c_1_0."),
        "{text}"
    );
}

#[test]
fn complex_bodies_are_refused() {
    let mut sig = MvSignature::new();
    sig.add_constant("c", &["1", "2"]);
    let x = Formula::Atom(sig.atom("c", "1").unwrap());
    let mut t = MvTheory::new(sig);
    t.formulas
        .push(Formula::rule(x.clone(), Formula::implies(x.clone(), x)));
    let p = to_prop(&t).unwrap();
    let e = export_prop(&p, &ExportProfile::asp_normal()).unwrap_err();
    assert!(
        matches!(e, ExportError::OutsideNormalFragment { rule: 0, .. }),
        "{e}"
    );
}

fn models(p: &PropProgram) -> BTreeSet<StableModel> {
    enumerate(
        p,
        &SolveConfig {
            max_solutions: None,
            ..Default::default()
        },
    )
    .unwrap()
    .0
    .into_iter()
    .collect()
}

#[test]
fn asp_export_preserves_stable_models() {
    for name in ["lamp", "bw2", "ferryman"] {
        let g = domain(name);
        for k in 0..=2 {
            let p = translate_static(&g, k).unwrap();
            let text = export_prop(&p, &ExportProfile::asp_normal()).unwrap();
            let back = read_asp_normal(&text, &p.base).unwrap();
            assert_eq!(models(&back), models(&p), "{name} at {k}");
        }
    }
}

#[test]
fn disjunctive_existence_would_differ() {
    // ⊥ ← ¬(a ∨ b) and a ∨ b. differ: the rule alone has no stable model,
    // the disjunction has two.
    let mut sig = MvSignature::new();
    sig.add_constant("c", &["1", "2"]);
    let t = MvTheory::new(sig.clone());
    assert!(crate::mvpf::enumerate_stable(&t, DEFAULT_ORACLE_CAP)
        .unwrap()
        .is_empty());
    let mut d = MvTheory::new(sig.clone());
    let a = |v| Formula::Atom(sig.atom("c", v).unwrap());
    d.formulas.push(Formula::Or(vec![a("1"), a("2")]));
    assert_eq!(
        crate::mvpf::enumerate_stable(&d, DEFAULT_ORACLE_CAP)
            .unwrap()
            .len(),
        2
    );
}

#[test]
fn incremental_asp_export_has_sections() {
    let g = domain("lamp");
    let ip = build_incremental_for(&g, &g.queries[0]).unwrap();
    let text = export_incremental(&ip, &ExportProfile::asp_normal()).unwrap();
    for s in [
        "% section base",
        "% section cumulative",
        "% section volatile",
    ] {
        assert!(text.contains(s));
    }
    assert!(text.contains("(t-1)"));
}

mod properties {
    use super::*;
    use crate::solve::oracle_models;
    use crate::testing::arb_theory;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn accepted_asp_exports_keep_stable_models(t in arb_theory(3)) {
            let p = to_prop(&t).unwrap();
            if let Ok(text) = export_prop(&p, &ExportProfile::asp_normal()) {
                let back = read_asp_normal(&text, &p.base).unwrap();
                prop_assert_eq!(models(&back), oracle_models(&t, &p.base, DEFAULT_ORACLE_CAP).unwrap());
            }
        }

        #[test]
        fn native_round_trips(t in arb_theory(3)) {
            let p = to_prop(&t).unwrap();
            let text = export_prop(&p, &ExportProfile::native()).unwrap();
            prop_assert_eq!(import_native(&text).unwrap(), Program::Prop(p));
        }
    }
}
