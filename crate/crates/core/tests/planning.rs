mod common;

use cplus2asp::explicit::{TransitionSystem, DEFAULT_STATE_CAP};
use cplus2asp::mvpf::DEFAULT_ORACLE_CAP;
use cplus2asp::solve::{oracle_models, solve, Mode, SolveConfig};
use cplus2asp::translate::{build_incremental_for, cplus2mvpf_query, query_bounds};

use common::{cases, load};

fn config(min: u32, max: u32, mode: Mode) -> SolveConfig {
    SolveConfig {
        min_step: min,
        max_step: max,
        mode,
        max_solutions: None,
        ..Default::default()
    }
}

#[test]
fn committed_answers_come_from_their_oracle() {
    for case in cases() {
        let g = load(&case.file);
        let q = g.query(&case.query).unwrap();
        let found = match case.oracle.as_str() {
            "bfs-transition-system" => {
                let mut ts = TransitionSystem::new(&g, DEFAULT_STATE_CAP).unwrap();
                let plan = ts.shortest_plan(q).unwrap().unwrap();
                ts.replay(&plan, q).unwrap();
                plan.len() as u32
            }
            "exhaustive-stable-models" => {
                let (min, max) = query_bounds(q.maxstep);
                (min..=max.unwrap())
                    .find(|&k| {
                        let t = cplus2mvpf_query(&g, q, k).unwrap();
                        !oracle_models(&t, &g.signature, DEFAULT_ORACLE_CAP)
                            .unwrap()
                            .is_empty()
                    })
                    .unwrap()
            }
            other => panic!("unknown oracle {other}"),
        };
        assert_eq!(found, case.found_step, "{}", case.name);
    }
}

#[test]
fn solver_finds_the_shortest_plans() {
    for case in cases() {
        let g = load(&case.file);
        let q = g.query(&case.query).unwrap();
        let ip = build_incremental_for(&g, q).unwrap();
        let (min, max) = query_bounds(q.maxstep);
        for mode in [Mode::Incremental, Mode::Static] {
            let mut cfg = config(min, max.unwrap(), mode);
            cfg.max_solutions = Some(3);
            let out = solve(&ip, &cfg).unwrap();
            assert_eq!(
                out.found_step,
                Some(case.found_step),
                "{} {mode:?}",
                case.name
            );
            assert!(out.steps[..out.steps.len() - 1]
                .iter()
                .all(|s| s.models.is_empty()));
            assert!(!out.models.is_empty() && out.models.len() <= 3);
        }
    }
}

#[test]
fn every_plan_replays_in_the_transition_system() {
    for case in cases() {
        let g = load(&case.file);
        let q = g.query(&case.query).unwrap();
        let ts = TransitionSystem::new(&g, DEFAULT_STATE_CAP).unwrap();
        let ip = build_incremental_for(&g, q).unwrap();
        let k = case.found_step;
        let out = solve(&ip, &config(k, k, Mode::Incremental)).unwrap();
        assert!(!out.models.is_empty(), "{}", case.name);
        for m in &out.models {
            let plan = ts.plan_of(m, k).unwrap();
            ts.replay(&plan, q)
                .unwrap_or_else(|e| panic!("{}: {e}", case.name));
        }
    }
}

#[test]
fn both_modes_find_the_same_plans() {
    for case in cases() {
        let g = load(&case.file);
        let q = g.query(&case.query).unwrap();
        let ip = build_incremental_for(&g, q).unwrap();
        let k = case.found_step;
        let mut sets = [Mode::Incremental, Mode::Static].map(|mode| {
            let mut ms = solve(&ip, &config(k, k, mode)).unwrap().models;
            ms.sort();
            ms
        });
        let [a, b] = &mut sets;
        assert_eq!(a, b, "{}", case.name);
    }
}
