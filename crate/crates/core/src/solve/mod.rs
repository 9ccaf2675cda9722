//! Stable models of propositional programs, and the loop over horizons.
//!
//! Candidates are classical models found by [`search`], further restricted
//! by support clauses (every true atom needs a rule whose body holds; this
//! holds in every stable model). Each candidate is then checked for
//! stability by [`stable::is_stable`].

pub mod cnf;
pub mod search;
pub mod stable;

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::mvpf::{enumerate_stable, MvSignature, MvTheory, OracleError};
use crate::prop::*;
use crate::translate::prop_image;
use cnf::{Cnf, Lit};
use search::{Flow, Group, Search};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Static,
    Incremental,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    /// `None` for all models.
    pub max_solutions: Option<usize>,
    pub min_step: u32,
    pub max_step: u32,
    pub mode: Mode,
    pub seed: u64,
    /// Most candidates checked for stability in one run.
    pub check_cap: u64,
    /// Keep going after the first horizon with models.
    pub all_steps: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_solutions: Some(1),
            min_step: 0,
            max_step: 0,
            mode: Mode::Incremental,
            seed: 0,
            check_cap: 1_000_000,
            all_steps: false,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("more than {0} candidate models checked")]
    ResourceLimit(u64),
    #[error("empty step range {0}..{1}")]
    EmptyRange(u32, u32),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub grounded_rules: u64,
    pub propagations: u64,
    pub decisions: u64,
    pub conflicts: u64,
    pub models_checked: u64,
    pub steps_grounded: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableModel {
    pub atoms: BTreeSet<PropAtom>,
}

impl StableModel {
    pub fn holds(&self, a: &PropAtom) -> bool {
        self.atoms.contains(a)
    }

    pub fn render(&self, base: &MvSignature) -> String {
        self.atoms
            .iter()
            .map(|a| atom_name(base, a))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveState {
    /// `B ∪ P[1] ∪ … ∪ P[k]`.
    pub accumulated_rules: Vec<PropRule>,
    /// `Q[k]`, replaced at every step.
    pub current_volatile: Vec<PropRule>,
    pub step: u32,
    /// Literals implied by the accumulated rules alone, kept across steps.
    pub learned_units: Vec<(PropAtom, bool)>,
    pub stats: SolveStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepResult {
    pub step: u32,
    pub models: Vec<StableModel>,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub found_step: Option<u32>,
    /// Models of the first horizon that has any.
    pub models: Vec<StableModel>,
    /// Every horizon attempted, in order.
    pub steps: Vec<StepResult>,
    pub state: SolveState,
}

/// Search order key of each base constant: its id, or a seeded shuffle.
fn group_keys(n: usize, seed: u64) -> Vec<u64> {
    let mut order: Vec<u64> = (0..n as u64).collect();
    if seed != 0 {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut keys = vec![0; n];
    for (rank, &c) in order.iter().enumerate() {
        keys[c as usize] = rank as u64;
    }
    keys
}

fn groups(cnf: &mut Cnf, base: &MvSignature, constants: &[TimedConstant], seed: u64) -> Vec<Group> {
    let keys = group_keys(base.len(), seed);
    constants
        .iter()
        .map(|tc| Group {
            step: tc.step,
            key: keys[tc.base.index()],
            vars: base
                .constant(tc.base)
                .domain
                .iter()
                .map(|&v| cnf.atom(PropAtom::new(tc.step, tc.base, v)).var())
                .collect(),
        })
        .collect()
}

/// Adds `rules` and, when every head is an atom or `⊥`, support clauses for
/// the atoms of `owned`. Returns false if support could not be added.
fn add_component(
    cnf: &mut Cnf,
    base: &MvSignature,
    rules: &[PropRule],
    owned: &[TimedConstant],
) -> bool {
    for r in rules {
        cnf.add_rule(r);
    }
    if rules.iter().any(|r| matches!(r.head, Head::Formula(_))) {
        return false;
    }
    let mut bodies: HashMap<PropAtom, Vec<&PropFormula>> = HashMap::new();
    for r in rules {
        if let Head::Atom(a) = &r.head {
            bodies.entry(*a).or_default().push(&r.body);
        }
    }
    let owned_set: HashSet<TimedConstant> = owned.iter().copied().collect();
    assert!(
        bodies
            .keys()
            .all(|a| owned_set.contains(&a.timed_constant())),
        "rule heads outside the component's constants"
    );
    for tc in owned {
        for &v in &base.constant(tc.base).domain {
            let a = PropAtom::new(tc.step, tc.base, v);
            cnf.add_support(a, bodies.get(&a).map_or(&[][..], Vec::as_slice));
        }
    }
    true
}

/// Runs the search over `cnf` and keeps the stable candidates.
fn search_models(
    cnf: &mut Cnf,
    base: &MvSignature,
    constants: &[TimedConstant],
    rules: &[&PropRule],
    units: &[Lit],
    cfg: &SolveConfig,
    stats: &mut SolveStats,
) -> Result<Vec<StableModel>, SolveError> {
    let groups = groups(cnf, base, constants, cfg.seed);
    let atom_vars: Vec<(u32, PropAtom)> = (0..cnf.num_vars())
        .filter_map(|v| cnf.atom_of(v).map(|a| (v, a)))
        .collect();
    let mut search = Search::new(&cnf.clauses, cnf.num_vars(), groups, vec![]);
    for &u in units {
        search.add_unit(u);
    }
    let mut models = Vec::new();
    let mut limit_hit = false;
    if search.init() {
        search.enumerate(&mut |s| {
            stats.models_checked += 1;
            if stats.models_checked > cfg.check_cap {
                limit_hit = true;
                return Flow::Stop;
            }
            let m: HashSet<PropAtom> = atom_vars
                .iter()
                .filter(|(v, _)| s.is_true(*v))
                .map(|(_, a)| *a)
                .collect();
            debug_assert!(rules.iter().all(|r| r.formula().eval(&|a| m.contains(a))));
            if stable::is_stable(rules, &m) {
                models.push(StableModel {
                    atoms: m.into_iter().collect(),
                });
                if cfg.max_solutions.is_some_and(|n| models.len() >= n) {
                    return Flow::Stop;
                }
            }
            Flow::Continue
        });
    }
    stats.propagations += search.stats.propagations;
    stats.decisions += search.stats.decisions;
    stats.conflicts += search.stats.conflicts;
    if limit_hit {
        return Err(SolveError::ResourceLimit(cfg.check_cap));
    }
    Ok(models)
}

/// Up to `cfg.max_solutions` stable models of `p`, in search order.
pub fn enumerate(
    p: &PropProgram,
    cfg: &SolveConfig,
) -> Result<(Vec<StableModel>, SolveStats), SolveError> {
    let mut stats = SolveStats {
        grounded_rules: p.rules.len() as u64,
        ..Default::default()
    };
    let mut cnf = Cnf::new();
    add_component(&mut cnf, &p.base, &p.rules, &p.constants);
    let rules: Vec<&PropRule> = p.rules.iter().collect();
    let models = search_models(
        &mut cnf,
        &p.base,
        &p.constants,
        &rules,
        &[],
        cfg,
        &mut stats,
    )?;
    Ok((models, stats))
}

fn check_range(cfg: &SolveConfig) -> Result<(), SolveError> {
    if cfg.min_step > cfg.max_step {
        return Err(SolveError::EmptyRange(cfg.min_step, cfg.max_step));
    }
    Ok(())
}

fn finish(steps: Vec<StepResult>, state: SolveState) -> SolveOutcome {
    let found = steps.iter().find(|s| !s.models.is_empty());
    let found_step = found.map(|s| s.step);
    let models = found.map(|s| s.models.clone()).unwrap_or_default();
    SolveOutcome {
        found_step,
        models,
        steps,
        state,
    }
}

/// Grounds `B`, then `P[1], P[2], …` once each, solving with `Q[k]` for
/// every `k` in the configured range until some horizon has models.
pub fn solve_incremental(
    ip: &IncrementalProgram,
    cfg: &SolveConfig,
) -> Result<SolveOutcome, SolveError> {
    check_range(cfg)?;
    let base = &ip.base_signature;
    let mut state = SolveState::default();
    let mut cnf = Cnf::new();
    let mut constants = ip.constants_introduced(0);
    let mut complete = add_component(&mut cnf, base, &ip.base, &constants);
    state.accumulated_rules.extend(ip.base.iter().cloned());
    state.stats.grounded_rules += ip.base.len() as u64;
    let mut learned: Vec<Lit> = Vec::new();
    let mut steps = Vec::new();
    for k in 0..=cfg.max_step {
        if k >= 1 {
            let rules = ip.cumulative_at(k);
            let introduced = ip.constants_introduced(k);
            if complete {
                complete = add_component(&mut cnf, base, &rules, &introduced);
            } else {
                rules.iter().for_each(|r| cnf.add_rule(r));
            }
            constants.extend(introduced);
            state.stats.grounded_rules += rules.len() as u64;
            state.accumulated_rules.extend(rules);
        }
        state.step = k;
        if k < cfg.min_step {
            continue;
        }
        state.stats.steps_grounded += 1;

        // Consequences of the persistent part only.
        let mut probe = Search::new(&cnf.clauses, cnf.num_vars(), vec![], vec![]);
        for &u in &learned {
            probe.add_unit(u);
        }
        if probe.init() {
            learned = probe.root_literals().to_vec();
        }
        state.learned_units = learned
            .iter()
            .filter_map(|l| cnf.atom_of(l.var()).map(|a| (a, l.is_positive())))
            .collect();

        let snapshot = cnf.snapshot();
        state.current_volatile = ip.volatile_at(k);
        state.stats.grounded_rules += state.current_volatile.len() as u64;
        for r in &state.current_volatile {
            cnf.add_rule(r);
        }
        let rules: Vec<&PropRule> = state
            .accumulated_rules
            .iter()
            .chain(&state.current_volatile)
            .collect();
        let models = search_models(
            &mut cnf,
            base,
            &constants,
            &rules,
            &learned,
            cfg,
            &mut state.stats,
        )?;
        cnf.rollback(snapshot);
        let found = !models.is_empty();
        steps.push(StepResult { step: k, models });
        if found && !cfg.all_steps {
            break;
        }
    }
    Ok(finish(steps, state))
}

/// Rebuilds and solves the whole program from scratch at every horizon.
pub fn solve_static(
    ip: &IncrementalProgram,
    cfg: &SolveConfig,
) -> Result<SolveOutcome, SolveError> {
    check_range(cfg)?;
    let mut state = SolveState::default();
    let mut steps = Vec::new();
    for k in cfg.min_step..=cfg.max_step {
        let p = ip.accumulated(k);
        let (models, stats) = enumerate(&p, cfg)?;
        state.stats.grounded_rules += stats.grounded_rules;
        state.stats.propagations += stats.propagations;
        state.stats.decisions += stats.decisions;
        state.stats.conflicts += stats.conflicts;
        state.stats.models_checked += stats.models_checked;
        state.stats.steps_grounded += 1;
        state.step = k;
        let found = !models.is_empty();
        steps.push(StepResult { step: k, models });
        if found && !cfg.all_steps {
            break;
        }
    }
    Ok(finish(steps, state))
}

/// Dispatches on `cfg.mode`.
pub fn solve(ip: &IncrementalProgram, cfg: &SolveConfig) -> Result<SolveOutcome, SolveError> {
    match cfg.mode {
        Mode::Incremental => solve_incremental(ip, cfg),
        Mode::Static => solve_static(ip, cfg),
    }
}

/// Stable models by exhaustive multi-valued checking, as propositional
/// atom sets over `base`.
pub fn oracle_models(
    t: &MvTheory,
    base: &MvSignature,
    cap: u64,
) -> Result<BTreeSet<StableModel>, OracleError> {
    Ok(enumerate_stable(t, cap)?
        .iter()
        .map(|i| StableModel {
            atoms: prop_image(&t.signature, base, i),
        })
        .collect())
}

#[cfg(test)]
mod tests;
