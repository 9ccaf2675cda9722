//! Backtracking search with unit propagation over two watched literals.
//! Branching picks a whole timed constant and tries its values in turn.

use std::mem;

use super::cnf::Lit;

/// The atom variables of one timed constant, in value order.
#[derive(Clone, Debug)]
pub struct Group {
    pub step: u32,
    /// Tie-break among groups with equal size and step.
    pub key: u64,
    pub vars: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub propagations: u64,
    pub decisions: u64,
    pub conflicts: u64,
}

struct Level {
    trail_start: usize,
    decision: Lit,
    flipped: bool,
}

pub struct Search {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>,
    value: Vec<i8>,
    trail: Vec<Lit>,
    qhead: usize,
    levels: Vec<Level>,
    groups: Vec<Group>,
    /// Branched on, positive first, once every group has a true member.
    decision_vars: Vec<u32>,
    units: Vec<Lit>,
    unsat: bool,
    root_len: usize,
    pub stats: SearchStats,
}

impl Search {
    pub fn new(
        clauses: &[Vec<Lit>],
        num_vars: u32,
        groups: Vec<Group>,
        decision_vars: Vec<u32>,
    ) -> Self {
        let mut s = Search {
            clauses: Vec::with_capacity(clauses.len()),
            watches: vec![Vec::new(); 2 * num_vars as usize],
            value: vec![0; num_vars as usize],
            trail: Vec::new(),
            qhead: 0,
            levels: Vec::new(),
            groups,
            decision_vars,
            units: Vec::new(),
            unsat: false,
            root_len: 0,
            stats: SearchStats::default(),
        };
        for c in clauses {
            match c.len() {
                0 => s.unsat = true,
                1 => s.units.push(c[0]),
                _ => {
                    let idx = s.clauses.len() as u32;
                    s.watches[c[0].index()].push(idx);
                    s.watches[c[1].index()].push(idx);
                    s.clauses.push(c.clone());
                }
            }
        }
        s
    }

    pub fn add_unit(&mut self, l: Lit) {
        self.units.push(l);
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[l.var() as usize];
        if l.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn is_true(&self, var: u32) -> bool {
        self.value[var as usize] == 1
    }

    fn assign(&mut self, l: Lit) {
        self.value[l.var() as usize] = if l.is_positive() { 1 } else { -1 };
        self.trail.push(l);
    }

    /// Unit propagation; `false` on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let falsified = !self.trail[self.qhead];
            self.qhead += 1;
            let list = mem::take(&mut self.watches[falsified.index()]);
            let mut keep = Vec::with_capacity(list.len());
            let mut conflict = false;
            for (i, &ci) in list.iter().enumerate() {
                if conflict {
                    keep.extend_from_slice(&list[i..]);
                    break;
                }
                let clause = &mut self.clauses[ci as usize];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                let value = &self.value;
                let lit_value = |l: Lit| {
                    let v = value[l.var() as usize];
                    if l.is_positive() {
                        v
                    } else {
                        -v
                    }
                };
                if lit_value(first) == 1 {
                    keep.push(ci);
                    continue;
                }
                if let Some(k) = (2..clause.len()).find(|&k| lit_value(clause[k]) != -1) {
                    clause.swap(1, k);
                    self.watches[clause[1].index()].push(ci);
                    continue;
                }
                keep.push(ci);
                match self.lit_value(first) {
                    -1 => {
                        conflict = true;
                        self.stats.conflicts += 1;
                    }
                    0 => {
                        self.stats.propagations += 1;
                        self.assign(first);
                    }
                    _ => {}
                }
            }
            self.watches[falsified.index()] = keep;
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, n: usize) {
        for l in self.trail.drain(n..) {
            self.value[l.var() as usize] = 0;
        }
        self.qhead = n;
    }

    /// Asserts the unit clauses and propagates them; `false` if that
    /// already fails.
    pub fn init(&mut self) -> bool {
        if self.unsat {
            return false;
        }
        for l in mem::take(&mut self.units) {
            match self.lit_value(l) {
                -1 => {
                    self.unsat = true;
                    return false;
                }
                0 => self.assign(l),
                _ => {}
            }
        }
        if !self.propagate() {
            self.unsat = true;
            return false;
        }
        self.root_len = self.trail.len();
        true
    }

    /// Literals fixed by propagation alone.
    pub fn root_literals(&self) -> &[Lit] {
        &self.trail[..self.root_len]
    }

    fn pick(&self) -> Option<Lit> {
        let mut best: Option<((usize, u32, u64), u32)> = None;
        for g in &self.groups {
            if g.vars.iter().any(|&v| self.value[v as usize] == 1) {
                continue;
            }
            let mut open = g.vars.iter().filter(|&&v| self.value[v as usize] == 0);
            let Some(&first) = open.next() else { continue };
            let key = (1 + open.count(), g.step, g.key);
            if best.is_none_or(|(k, _)| key < k) {
                best = Some((key, first));
            }
        }
        if let Some((_, v)) = best {
            return Some(Lit::new(v, true));
        }
        if let Some(&v) = self
            .decision_vars
            .iter()
            .find(|&&v| self.value[v as usize] == 0)
        {
            return Some(Lit::new(v, true));
        }
        (0..self.value.len() as u32)
            .find(|&v| self.value[v as usize] == 0)
            .map(|v| Lit::new(v, true))
    }

    /// Undoes decisions until one can be flipped; `false` when none is left.
    fn backtrack(&mut self) -> bool {
        while let Some(level) = self.levels.pop() {
            self.undo_to(level.trail_start);
            if level.flipped {
                continue;
            }
            self.levels.push(Level {
                trail_start: level.trail_start,
                decision: !level.decision,
                flipped: true,
            });
            self.assign(!level.decision);
            if self.propagate() {
                return true;
            }
        }
        false
    }

    /// Calls `on_model` for every total assignment satisfying the clauses,
    /// in search order. [`Search::init`] must have succeeded.
    pub fn enumerate(&mut self, on_model: &mut dyn FnMut(&Search) -> Flow) {
        if self.unsat {
            return;
        }
        loop {
            match self.pick() {
                Some(l) => {
                    self.stats.decisions += 1;
                    self.levels.push(Level {
                        trail_start: self.trail.len(),
                        decision: l,
                        flipped: false,
                    });
                    self.assign(l);
                    if !self.propagate() && !self.backtrack() {
                        return;
                    }
                }
                None => {
                    if on_model(self) == Flow::Stop || !self.backtrack() {
                        return;
                    }
                }
            }
        }
    }
}
