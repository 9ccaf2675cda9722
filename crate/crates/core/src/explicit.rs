//! The transition system of a description, built directly from its ground
//! laws: states, transitions, breadth-first planning and plan replay.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::ground::{GroundLaw, GroundLawSet, GroundQuery, LawShape};
use crate::mvpf::{Atom, ConstId, Formula, MvFormula, ValueId};
use crate::solve::StableModel;
use crate::syntax::{ConstKind, TimeExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExplicitError {
    #[error("the state space has {0} candidate states, above the cap")]
    StateSpaceTooLarge(u128),
    #[error("query `{0}` constrains steps other than 0 and maxstep, or mentions actions")]
    UnsupportedQuery(String),
    #[error("query `{0}` has no finite maximum step")]
    Unbounded(String),
}

pub const DEFAULT_STATE_CAP: u128 = 1_000_000;

/// Values of the fluents, in [`TransitionSystem::fluents`] order.
pub type State = Vec<ValueId>;
/// Values of the actions, in [`TransitionSystem::actions`] order.
pub type Event = Vec<ValueId>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub states: Vec<State>,
    pub events: Vec<Event>,
}

impl Plan {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// Partial assignment to all constants, indexed by constant id.
type Assignment = Vec<Option<ValueId>>;

fn eval3(f: &MvFormula, a: &Assignment) -> Option<bool> {
    match f {
        Formula::Atom(x) => a[x.constant.index()].map(|v| v == x.value),
        Formula::Bot => Some(false),
        Formula::Not(g) => eval3(g, a).map(|b| !b),
        Formula::And(gs) => {
            let mut unknown = false;
            for g in gs {
                match eval3(g, a) {
                    Some(false) => return Some(false),
                    None => unknown = true,
                    _ => {}
                }
            }
            (!unknown).then_some(true)
        }
        Formula::Or(gs) => {
            let mut unknown = false;
            for g in gs {
                match eval3(g, a) {
                    Some(true) => return Some(true),
                    None => unknown = true,
                    _ => {}
                }
            }
            (!unknown).then_some(false)
        }
        Formula::Implies(g, h) => match (eval3(g, a), eval3(h, a)) {
            (Some(false), _) | (_, Some(true)) => Some(true),
            (Some(true), Some(false)) => Some(false),
            _ => None,
        },
    }
}

fn holds(f: &MvFormula, a: &Assignment) -> bool {
    eval3(f, a).expect("formula over assigned constants")
}

fn head_holds(law: &GroundLaw, a: &Assignment) -> bool {
    law.head
        .is_some_and(|h| a[h.constant.index()] == Some(h.value))
}

#[derive(Clone, Copy)]
enum EventCheck<'a> {
    /// An action dynamic law.
    Law(&'a GroundLaw),
    /// `caused false after H`: `H` must be false.
    Never(&'a MvFormula),
}

pub struct TransitionSystem<'a> {
    g: &'a GroundLawSet,
    pub fluents: Vec<ConstId>,
    pub actions: Vec<ConstId>,
    statics: Vec<&'a GroundLaw>,
    action_laws: Vec<&'a GroundLaw>,
    fluent_laws: Vec<&'a GroundLaw>,
    /// Conditions on the event alone, each with the position in `actions`
    /// after which it can be checked.
    event_checks: Vec<(EventCheck<'a>, usize)>,
    states: Vec<State>,
    index: HashMap<State, usize>,
    successors: HashMap<usize, Vec<(Event, usize)>>,
}

fn constants_of(law: &GroundLaw, inner: bool) -> Vec<ConstId> {
    let mut out = Vec::new();
    let mut visit = |a: &Atom| out.push(a.constant);
    if inner {
        law.cond.for_each_atom(&mut visit);
        if let Some(h) = &law.head {
            visit(h);
        }
    } else if let Some(after) = &law.after {
        after.for_each_atom(&mut visit);
    }
    out
}

impl<'a> TransitionSystem<'a> {
    pub fn new(g: &'a GroundLawSet, cap: u128) -> Result<Self, ExplicitError> {
        let sig = &g.signature;
        let fluents: Vec<ConstId> = sig.ids().filter(|&c| g.kind(c).is_fluent()).collect();
        let actions: Vec<ConstId> = sig
            .ids()
            .filter(|&c| g.kind(c) == ConstKind::Action)
            .collect();
        let size: u128 = fluents
            .iter()
            .map(|&c| sig.constant(c).domain.len() as u128)
            .product();
        if size > cap {
            return Err(ExplicitError::StateSpaceTooLarge(size));
        }
        let action_laws: Vec<&GroundLaw> = g.of_shape(LawShape::ActionDynamic).collect();
        let fluent_laws: Vec<&GroundLaw> = g.of_shape(LawShape::FluentDynamic).collect();
        let position: HashMap<ConstId, usize> = actions
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i + 1))
            .collect();
        let ready = |cs: Vec<ConstId>| {
            cs.iter()
                .filter_map(|c| position.get(c))
                .copied()
                .max()
                .unwrap_or(0)
        };
        let mut event_checks: Vec<(EventCheck, usize)> = action_laws
            .iter()
            .map(|&l| (EventCheck::Law(l), ready(constants_of(l, true))))
            .collect();
        for l in &fluent_laws {
            if l.head.is_none() && l.cond.is_top() {
                event_checks.push((
                    EventCheck::Never(l.after.as_ref().expect("fluent law")),
                    ready(constants_of(l, false)),
                ));
            }
        }
        let mut ts = TransitionSystem {
            g,
            fluents,
            actions,
            statics: g.of_shape(LawShape::Static).collect(),
            action_laws,
            fluent_laws,
            event_checks,
            states: Vec::new(),
            index: HashMap::new(),
            successors: HashMap::new(),
        };
        ts.enumerate_states();
        Ok(ts)
    }

    fn assignment(&self, s: &State, e: Option<&Event>) -> Assignment {
        let mut a = vec![None; self.g.signature.len()];
        for (&c, &v) in self.fluents.iter().zip(s) {
            a[c.index()] = Some(v);
        }
        if let Some(e) = e {
            for (&c, &v) in self.actions.iter().zip(e) {
                a[c.index()] = Some(v);
            }
        }
        a
    }

    fn enumerate_states(&mut self) {
        let sig = &self.g.signature;
        let domains: Vec<&[ValueId]> = self
            .fluents
            .iter()
            .map(|&c| &sig.constant(c).domain[..])
            .collect();
        let mut s: State = domains.iter().map(|d| d[0]).collect();
        let mut digits = vec![0usize; domains.len()];
        loop {
            if self.is_state(&s) {
                self.index.insert(s.clone(), self.states.len());
                self.states.push(s.clone());
            }
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < domains[i].len() {
                    s[i] = domains[i][digits[i]];
                    break;
                }
                digits[i] = 0;
                s[i] = domains[i][0];
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    /// Every applicable static law holds, and each statically determined
    /// fluent is caused to have its value. Simple fluents are free.
    pub fn is_state(&self, s: &State) -> bool {
        let a = self.assignment(s, None);
        let mut caused = HashSet::new();
        for law in &self.statics {
            if holds(&law.cond, &a) {
                if !head_holds(law, &a) {
                    return false;
                }
                caused.insert(law.head.expect("head holds"));
            }
        }
        self.fluents.iter().zip(s).all(|(&c, &v)| {
            self.g.kind(c) != ConstKind::StatDetFluent || caused.contains(&Atom::new(c, v))
        })
    }

    /// Whether `⟨s, e, s2⟩` is a transition: every applicable law holds
    /// and every value of `e` and `s2` is caused.
    pub fn is_transition(&self, s: &State, e: &Event, s2: &State) -> bool {
        if !self.index.contains_key(s) || !self.is_state(s2) {
            return false;
        }
        let before = self.assignment(s, Some(e));
        let after = self.assignment(s2, None);
        let mut caused = HashSet::new();
        for law in &self.action_laws {
            if holds(&law.cond, &before) {
                if !head_holds(law, &before) {
                    return false;
                }
                caused.insert(law.head.expect("head holds"));
            }
        }
        for law in &self.statics {
            if holds(&law.cond, &after) {
                caused.insert(law.head.expect("s2 is a state"));
            }
        }
        for law in &self.fluent_laws {
            let after_formula = law.after.as_ref().expect("fluent laws have an after part");
            if holds(after_formula, &before) && holds(&law.cond, &after) {
                if !head_holds(law, &after) {
                    return false;
                }
                caused.insert(law.head.expect("head holds"));
            }
        }
        let fluents_caused = self
            .fluents
            .iter()
            .zip(s2)
            .all(|(&c, &v)| caused.contains(&Atom::new(c, v)));
        let actions_caused = self
            .actions
            .iter()
            .zip(e)
            .all(|(&c, &v)| caused.contains(&Atom::new(c, v)));
        fluents_caused && actions_caused
    }

    /// Events executable in `s` as far as action laws are concerned.
    fn events(&self, s: &State) -> Vec<Event> {
        let sig = &self.g.signature;
        let mut a = self.assignment(s, None);
        let mut out = Vec::new();
        let mut e: Event = Vec::with_capacity(self.actions.len());
        self.extend_events(&mut a, &mut e, &mut out, sig);
        out
    }

    fn events_ok(&self, a: &Assignment, ready: usize) -> bool {
        self.event_checks
            .iter()
            .filter(|(_, r)| *r == ready)
            .all(|(check, _)| match check {
                EventCheck::Law(law) => !holds(&law.cond, a) || head_holds(law, a),
                EventCheck::Never(f) => !holds(f, a),
            })
    }

    fn extend_events(
        &self,
        a: &mut Assignment,
        e: &mut Event,
        out: &mut Vec<Event>,
        sig: &crate::mvpf::MvSignature,
    ) {
        if e.is_empty() && !self.events_ok(a, 0) {
            return;
        }
        if e.len() == self.actions.len() {
            out.push(e.clone());
            return;
        }
        let c = self.actions[e.len()];
        for &v in &sig.constant(c).domain {
            a[c.index()] = Some(v);
            e.push(v);
            if self.events_ok(a, e.len()) {
                self.extend_events(a, e, out, sig);
            }
            e.pop();
        }
        a[c.index()] = None;
    }

    /// All transitions leaving the state with index `i`.
    pub fn successors(&mut self, i: usize) -> &[(Event, usize)] {
        if !self.successors.contains_key(&i) {
            let s = self.states[i].clone();
            let mut out = Vec::new();
            for e in self.events(&s) {
                let before = self.assignment(&s, Some(&e));
                // Values a fluent can take: those some law could cause.
                let candidates: Vec<Vec<ValueId>> = self
                    .fluents
                    .iter()
                    .map(|&c| {
                        let mut vs: Vec<ValueId> =
                            self.statics
                                .iter()
                                .chain(self.fluent_laws.iter().filter(|l| {
                                    holds(l.after.as_ref().expect("fluent law"), &before)
                                }))
                                .filter_map(|l| l.head.filter(|h| h.constant == c).map(|h| h.value))
                                .collect();
                        vs.sort();
                        vs.dedup();
                        vs
                    })
                    .collect();
                let mut s2: State = Vec::new();
                self.extend_states(&s, &e, &candidates, &mut s2, &mut out);
            }
            self.successors.insert(i, out);
        }
        &self.successors[&i]
    }

    fn extend_states(
        &self,
        s: &State,
        e: &Event,
        candidates: &[Vec<ValueId>],
        s2: &mut State,
        out: &mut Vec<(Event, usize)>,
    ) {
        if s2.len() == self.fluents.len() {
            if let Some(&j) = self.index.get(s2) {
                if self.is_transition(s, e, s2) {
                    out.push((e.clone(), j));
                }
            }
            return;
        }
        for &v in &candidates[s2.len()] {
            s2.push(v);
            self.extend_states(s, e, candidates, s2, out);
            s2.pop();
        }
    }

    fn fluent_only(&self, f: &MvFormula) -> bool {
        let mut ok = true;
        f.for_each_atom(&mut |a| ok &= self.g.kind(a.constant).is_fluent());
        ok
    }

    /// Conditions on the first and last state of a query.
    fn query_parts(
        &self,
        q: &GroundQuery,
    ) -> Result<(Vec<MvFormula>, Vec<MvFormula>), ExplicitError> {
        let unsupported = || ExplicitError::UnsupportedQuery(q.label.clone());
        let (mut first, mut last) = (Vec::new(), Vec::new());
        for (time, f) in &q.constraints {
            if !self.fluent_only(f) {
                return Err(unsupported());
            }
            match time {
                TimeExpr::At(0) => first.push(f.clone()),
                TimeExpr::MaxStep(0) => last.push(f.clone()),
                _ => return Err(unsupported()),
            }
        }
        Ok((first, last))
    }

    fn satisfies(&self, s: &State, fs: &[MvFormula]) -> bool {
        let a = self.assignment(s, None);
        fs.iter().all(|f| holds(f, &a))
    }

    /// A shortest plan whose length lies in the query's step range, found
    /// by breadth-first search over the state graph.
    pub fn shortest_plan(&mut self, q: &GroundQuery) -> Result<Option<Plan>, ExplicitError> {
        let (min, max) = crate::translate::query_bounds(q.maxstep);
        let max = max.ok_or_else(|| ExplicitError::Unbounded(q.label.clone()))?;
        let (first, last) = self.query_parts(q)?;
        let mut level: Vec<usize> = (0..self.states.len())
            .filter(|&i| self.satisfies(&self.states[i], &first))
            .collect();
        // parents[t][j] = (i, e): state j at level t + 1 is reached from i by e.
        let mut parents: Vec<HashMap<usize, (usize, Event)>> = Vec::new();
        for t in 0..=max {
            if t >= min {
                if let Some(&goal) = level
                    .iter()
                    .find(|&&i| self.satisfies(&self.states[i], &last))
                {
                    return Ok(Some(self.rebuild(goal, &parents)));
                }
            }
            if t == max {
                break;
            }
            let mut next: HashMap<usize, (usize, Event)> = HashMap::new();
            let mut order = Vec::new();
            for &i in &level {
                for (e, j) in self.successors(i).to_vec() {
                    if let std::collections::hash_map::Entry::Vacant(slot) = next.entry(j) {
                        slot.insert((i, e));
                        order.push(j);
                    }
                }
            }
            parents.push(next);
            level = order;
        }
        Ok(None)
    }

    fn rebuild(&self, goal: usize, parents: &[HashMap<usize, (usize, Event)>]) -> Plan {
        let mut states = vec![self.states[goal].clone()];
        let mut events = Vec::new();
        let mut j = goal;
        for level in parents.iter().rev() {
            let (i, e) = &level[&j];
            states.push(self.states[*i].clone());
            events.push(e.clone());
            j = *i;
        }
        states.reverse();
        events.reverse();
        Plan { states, events }
    }

    /// Checks `plan` against the transition relation and the query.
    pub fn replay(&self, plan: &Plan, q: &GroundQuery) -> Result<(), String> {
        let (first, last) = self.query_parts(q).map_err(|e| e.to_string())?;
        if plan.states.len() != plan.events.len() + 1 {
            return Err("plan has mismatched states and events".into());
        }
        let s0 = &plan.states[0];
        if !self.index.contains_key(s0) {
            return Err("initial interpretation is not a state".into());
        }
        if !self.satisfies(s0, &first) {
            return Err("initial state violates the query".into());
        }
        for (t, e) in plan.events.iter().enumerate() {
            if !self.is_transition(&plan.states[t], e, &plan.states[t + 1]) {
                return Err(format!("step {t} is not a transition"));
            }
        }
        if !self.satisfies(plan.states.last().expect("nonempty"), &last) {
            return Err("final state violates the query".into());
        }
        Ok(())
    }

    /// Reads the trajectory of a stable model with the given horizon.
    pub fn plan_of(&self, m: &StableModel, horizon: u32) -> Option<Plan> {
        let value = |step: u32, c: ConstId| {
            let mut vs = m
                .atoms
                .iter()
                .filter(|a| a.step == step && a.constant == c)
                .map(|a| a.value);
            let v = vs.next()?;
            vs.next().is_none().then_some(v)
        };
        let states = (0..=horizon)
            .map(|t| {
                self.fluents
                    .iter()
                    .map(|&c| value(t, c))
                    .collect::<Option<State>>()
            })
            .collect::<Option<Vec<_>>>()?;
        let events = (0..horizon)
            .map(|t| {
                self.actions
                    .iter()
                    .map(|&c| value(t, c))
                    .collect::<Option<Event>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Plan { states, events })
    }
}

#[cfg(test)]
mod tests;
