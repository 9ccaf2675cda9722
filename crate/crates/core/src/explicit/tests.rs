use super::*;
use crate::ground::ground_laws;
use crate::parser::{parse_files, parse_str};
use crate::solve::{enumerate, solve_incremental, SolveConfig};
use crate::translate::{build_incremental_for, translate_static};

fn domain(name: &str) -> GroundLawSet {
    let path = format!("{}/examples/domains/{name}.cp", env!("CARGO_MANIFEST_DIR"));
    ground_laws(&parse_files(&[path]).unwrap()).unwrap()
}

fn bfs(name: &str) -> Option<usize> {
    let g = domain(name);
    let mut ts = TransitionSystem::new(&g, DEFAULT_STATE_CAP).unwrap();
    let plan = ts.shortest_plan(&g.queries[0]).unwrap()?;
    ts.replay(&plan, &g.queries[0]).unwrap();
    Some(plan.len())
}

#[test]
fn classic_puzzle_lengths() {
    assert_eq!(bfs("hanoi"), Some(7));
    assert_eq!(bfs("ferryman"), Some(7));
    assert_eq!(bfs("lamp"), Some(1));
    assert_eq!(bfs("bw2"), Some(2));
}

#[test]
fn four_blocks() {
    // a on b and c on d; goal b on a and d on c. Both towers are unstacked
    // in one concurrent step and rebuilt in the next.
    assert_eq!(bfs("bw-test"), Some(2));
}

fn all() -> SolveConfig {
    SolveConfig {
        max_solutions: None,
        ..Default::default()
    }
}

/// States are the stable models at horizon 0 and transitions those at
/// horizon 1.
#[test]
fn states_and_transitions_match_the_translation() {
    for name in ["lamp", "bw2", "ferryman", "hanoi"] {
        let g = domain(name);
        let mut ts = TransitionSystem::new(&g, DEFAULT_STATE_CAP).unwrap();
        let states = enumerate(&translate_static(&g, 0).unwrap(), &all())
            .unwrap()
            .0;
        assert_eq!(states.len(), ts.states().len(), "{name}");
        let transitions: usize = (0..ts.states().len()).map(|i| ts.successors(i).len()).sum();
        let models = enumerate(&translate_static(&g, 1).unwrap(), &all())
            .unwrap()
            .0;
        assert_eq!(models.len(), transitions, "{name}");
        for m in &models {
            let plan = ts.plan_of(m, 1).unwrap();
            assert!(
                ts.is_transition(&plan.states[0], &plan.events[0], &plan.states[1]),
                "{name}"
            );
        }
    }
}

#[test]
fn solver_plans_replay() {
    for name in ["lamp", "bw2", "ferryman"] {
        let g = domain(name);
        let q = &g.queries[0];
        let ts = TransitionSystem::new(&g, DEFAULT_STATE_CAP).unwrap();
        let ip = build_incremental_for(&g, q).unwrap();
        let (_, max) = crate::translate::query_bounds(q.maxstep);
        let cfg = SolveConfig {
            min_step: ip.min_step,
            max_step: max.unwrap(),
            ..all()
        };
        let out = solve_incremental(&ip, &cfg).unwrap();
        let k = out.found_step.unwrap();
        assert!(!out.models.is_empty());
        for m in &out.models {
            ts.replay(&ts.plan_of(m, k).unwrap(), q).unwrap();
        }
    }
}

#[test]
fn tampered_plans_are_rejected() {
    let g = domain("lamp");
    let mut ts = TransitionSystem::new(&g, DEFAULT_STATE_CAP).unwrap();
    let q = &g.queries[0];
    let mut plan = ts.shortest_plan(q).unwrap().unwrap();
    ts.replay(&plan, q).unwrap();
    let flip = ts
        .actions
        .iter()
        .position(|&c| g.signature.constant(c).name == "flip")
        .unwrap();
    let f = g.signature.values.get("false").unwrap();
    plan.events[0][flip] = f;
    assert_eq!(
        ts.replay(&plan, q).unwrap_err(),
        "step 0 is not a transition"
    );
}

#[test]
fn limits_and_unsupported_queries() {
    let g = domain("hanoi");
    assert_eq!(
        TransitionSystem::new(&g, 10).err(),
        Some(ExplicitError::StateSpaceTooLarge(27))
    );
    let text = ":- constants p :: inertialFluent; a :: exogenousAction.
        a causes p.
        :- query label :: mid; maxstep :: 2; 1: p.";
    let g = ground_laws(&parse_str(text).unwrap()).unwrap();
    let mut ts = TransitionSystem::new(&g, DEFAULT_STATE_CAP).unwrap();
    assert!(matches!(
        ts.shortest_plan(&g.queries[0]),
        Err(ExplicitError::UnsupportedQuery(_))
    ));
}

#[test]
fn minimum_step_is_respected() {
    let text = ":- constants p :: inertialFluent; a :: exogenousAction.
        a causes p.
        :- query label :: late; maxstep :: 2..3; 0: -p; maxstep: p.";
    let g = ground_laws(&parse_str(text).unwrap()).unwrap();
    let mut ts = TransitionSystem::new(&g, DEFAULT_STATE_CAP).unwrap();
    let plan = ts.shortest_plan(&g.queries[0]).unwrap().unwrap();
    assert_eq!(plan.len(), 2);
    ts.replay(&plan, &g.queries[0]).unwrap();
}
