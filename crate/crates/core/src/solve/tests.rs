use super::*;
use crate::ground::ground_laws;
use crate::mvpf::{Atom, Formula, DEFAULT_ORACLE_CAP};
use crate::parser::parse_str;
use crate::testing::arb_theory;
use crate::translate::{build_incremental, cplus2mvpf_query, to_prop};
use proptest::prelude::*;

fn all() -> SolveConfig {
    SolveConfig {
        max_solutions: None,
        ..Default::default()
    }
}

fn three_valued(body_negated: bool) -> MvTheory {
    let mut sig = MvSignature::new();
    sig.add_constant("c", &["1", "2", "3"]);
    let one = Formula::Atom(sig.atom("c", "1").unwrap());
    let body = if body_negated {
        Formula::not_not(one.clone())
    } else {
        one.clone()
    };
    let mut t = MvTheory::new(sig);
    t.formulas.push(Formula::rule(one, body));
    t
}

#[test]
fn three_valued_choice_models() {
    let p = to_prop(&three_valued(true)).unwrap();
    let (models, _) = enumerate(&p, &all()).unwrap();
    assert_eq!(models.len(), 1);
    assert_eq!(models[0].render(&p.base), "0:c=1");
    let p = to_prop(&three_valued(false)).unwrap();
    assert!(enumerate(&p, &all()).unwrap().0.is_empty());
}

#[test]
fn constraints_alone_support_nothing() {
    let mut sig = MvSignature::new();
    sig.add_constant("c", &["a", "b"]);
    let p = to_prop(&MvTheory::new(sig)).unwrap();
    assert!(enumerate(&p, &all()).unwrap().0.is_empty());
}

const LAMP: &str =
    ":- constants switch :: inertialFluent; light :: sdFluent; flip :: exogenousAction.
    caused light if switch.
    default -light.
    flip causes -switch if switch.
    flip causes switch if -switch.
    :- query label :: on; maxstep :: 0..3; 0: -switch; maxstep: light.
    :- query label :: never; maxstep :: 0..2; 0: -switch; maxstep: light & -switch.";

fn lamp(query: usize, min: u32, max: u32) -> (crate::ground::GroundLawSet, IncrementalProgram) {
    let g = ground_laws(&parse_str(LAMP).unwrap()).unwrap();
    let q = g.queries[query].clone();
    let ip = build_incremental(&g, &q, min, Some(max)).unwrap();
    (g, ip)
}

#[test]
fn lamp_needs_one_flip() {
    let (g, ip) = lamp(0, 0, 3);
    let cfg = SolveConfig {
        max_step: 3,
        ..all()
    };
    let out = solve_incremental(&ip, &cfg).unwrap();
    assert_eq!(out.found_step, Some(1));
    assert_eq!(out.models.len(), 1);
    assert_eq!(
        out.models[0].render(&g.signature),
        "0:switch=false 0:light=false 0:flip=true 1:switch=true 1:light=true"
    );
    assert_eq!(out.state.stats.steps_grounded, 2);
    assert!(out
        .state
        .current_volatile
        .iter()
        .all(|r| r.tag.kind == RuleKind::Query));
}

#[test]
fn exhausted_range() {
    let (_, ip) = lamp(1, 0, 2);
    let cfg = SolveConfig {
        max_step: 2,
        ..all()
    };
    for mode in [Mode::Incremental, Mode::Static] {
        let out = solve(
            &ip,
            &SolveConfig {
                mode,
                ..cfg.clone()
            },
        )
        .unwrap();
        assert_eq!(out.found_step, None);
        assert!(out.models.is_empty());
        assert_eq!(out.state.stats.steps_grounded, 3);
    }
}

#[test]
fn single_horizon_range() {
    let (_, ip) = lamp(0, 2, 2);
    let cfg = SolveConfig {
        min_step: 2,
        max_step: 2,
        ..all()
    };
    let out = solve_incremental(&ip, &cfg).unwrap();
    assert_eq!(out.steps.len(), 1);
    assert_eq!(out.found_step, Some(2));
    // One flip, at either step.
    assert_eq!(out.models.len(), 2);
}

#[test]
fn static_and_incremental_agree() {
    let (_, ip) = lamp(0, 0, 3);
    let cfg = SolveConfig {
        max_step: 3,
        all_steps: true,
        ..all()
    };
    let inc = solve_incremental(&ip, &cfg).unwrap();
    let stat = solve_static(
        &ip,
        &SolveConfig {
            mode: Mode::Static,
            ..cfg
        },
    )
    .unwrap();
    assert_eq!(inc.found_step, stat.found_step);
    for (a, b) in inc.steps.iter().zip(&stat.steps) {
        let x: BTreeSet<_> = a.models.iter().cloned().collect();
        let y: BTreeSet<_> = b.models.iter().cloned().collect();
        assert_eq!((a.step, x), (b.step, y));
    }
    assert_eq!(inc.steps.len(), 4);
    assert!(stat.state.stats.grounded_rules > inc.state.stats.grounded_rules);
}

#[test]
fn models_match_the_oracle_per_horizon() {
    let (g, ip) = lamp(0, 0, 3);
    let q = &g.queries[0];
    for k in 0..=2 {
        let p = ip.accumulated(k);
        let (models, _) = enumerate(&p, &all()).unwrap();
        let got: BTreeSet<StableModel> = models.into_iter().collect();
        let t = cplus2mvpf_query(&g, q, k).unwrap();
        assert_eq!(
            got,
            oracle_models(&t, &g.signature, DEFAULT_ORACLE_CAP).unwrap(),
            "k = {k}"
        );
    }
}

#[test]
fn seeded_runs_are_reproducible() {
    let (_, ip) = lamp(0, 0, 3);
    for seed in [0, 7, 99] {
        let cfg = SolveConfig {
            max_step: 3,
            seed,
            all_steps: true,
            ..all()
        };
        let a = solve_incremental(&ip, &cfg).unwrap();
        let b = solve_incremental(&ip, &cfg).unwrap();
        assert_eq!(a.steps, b.steps);
    }
}

#[test]
fn check_cap_is_enforced() {
    let (_, ip) = lamp(0, 0, 3);
    let cfg = SolveConfig {
        max_step: 3,
        check_cap: 0,
        ..all()
    };
    assert_eq!(
        solve_incremental(&ip, &cfg).unwrap_err(),
        SolveError::ResourceLimit(0)
    );
    let cfg = SolveConfig {
        min_step: 3,
        max_step: 1,
        ..all()
    };
    assert_eq!(
        solve_incremental(&ip, &cfg).unwrap_err(),
        SolveError::EmptyRange(3, 1)
    );
}

#[test]
fn learned_units_persist() {
    let (g, ip) = lamp(0, 0, 3);
    let cfg = SolveConfig {
        max_step: 3,
        all_steps: true,
        ..all()
    };
    let out = solve_incremental(&ip, &cfg).unwrap();
    // Nothing is forced without the query, so only the constant true
    // variable and its consequences remain; the list must be well formed.
    for (a, _) in &out.state.learned_units {
        assert!(a.step <= 3);
        assert!(g.signature.contains_atom(&Atom::new(a.constant, a.value)));
    }
    assert_eq!(out.state.step, 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_agrees_with_oracle(t in arb_theory(4), seed in 0u64..4) {
        let p = to_prop(&t).unwrap();
        prop_assume!(p.atoms().len() <= 12);
        let cfg = SolveConfig { seed, ..all() };
        let (models, _) = enumerate(&p, &cfg).unwrap();
        let got: BTreeSet<StableModel> = models.iter().cloned().collect();
        prop_assert_eq!(got.len(), models.len());
        prop_assert_eq!(got, oracle_models(&t, &p.base, DEFAULT_ORACLE_CAP).unwrap());
    }
}
