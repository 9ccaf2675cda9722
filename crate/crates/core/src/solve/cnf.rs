//! Clausal encoding of propositional rules.

use std::collections::HashMap;
use std::ops::Not;

use crate::mvpf::Formula;
use crate::prop::{Head, PropAtom, PropFormula, PropRule};

/// `2·var + sign`, sign 1 meaning negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: u32, positive: bool) -> Self {
        Lit(var << 1 | u32::from(!positive))
    }

    pub fn var(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Snapshot {
    clauses: usize,
    vars: u32,
    log: usize,
}

/// A growing clause database. Variable 0 is constantly true. Subformulas
/// get Tseitin variables with full equivalence, shared structurally.
#[derive(Clone, Debug)]
pub struct Cnf {
    pub clauses: Vec<Vec<Lit>>,
    num_vars: u32,
    atom_vars: HashMap<PropAtom, u32>,
    var_atoms: Vec<Option<PropAtom>>,
    cache: HashMap<PropFormula, Lit>,
    /// Formulas and atoms added to the maps, for rollback.
    log: Vec<Entry>,
}

#[derive(Clone, Debug)]
enum Entry {
    Formula(PropFormula),
    Atom(PropAtom),
}

impl Default for Cnf {
    fn default() -> Self {
        Self::new()
    }
}

impl Cnf {
    pub fn new() -> Self {
        let mut cnf = Cnf {
            clauses: Vec::new(),
            num_vars: 1,
            atom_vars: HashMap::new(),
            var_atoms: vec![None],
            cache: HashMap::new(),
            log: Vec::new(),
        };
        cnf.clauses.push(vec![cnf.top()]);
        cnf
    }

    pub fn top(&self) -> Lit {
        Lit::new(0, true)
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn atom_of(&self, var: u32) -> Option<PropAtom> {
        self.var_atoms[var as usize]
    }

    pub fn var_of(&self, a: &PropAtom) -> Option<u32> {
        self.atom_vars.get(a).copied()
    }

    fn fresh(&mut self) -> u32 {
        self.num_vars += 1;
        self.var_atoms.push(None);
        self.num_vars - 1
    }

    pub fn atom(&mut self, a: PropAtom) -> Lit {
        if let Some(&v) = self.atom_vars.get(&a) {
            return Lit::new(v, true);
        }
        let v = self.fresh();
        self.var_atoms[v as usize] = Some(a);
        self.atom_vars.insert(a, v);
        self.log.push(Entry::Atom(a));
        Lit::new(v, true)
    }

    /// Adds a clause; tautologies are dropped and false literals removed.
    pub fn add_clause(&mut self, mut lits: Vec<Lit>) {
        let top = self.top();
        lits.retain(|&l| l != !top);
        lits.sort();
        lits.dedup();
        if lits.contains(&top) || lits.windows(2).any(|w| w[0] == !w[1]) {
            return;
        }
        self.clauses.push(lits);
    }

    /// A literal equivalent to `f` (classically).
    pub fn encode(&mut self, f: &PropFormula) -> Lit {
        match f {
            Formula::Atom(a) => return self.atom(*a),
            Formula::Bot => return !self.top(),
            Formula::Not(g) => return !self.encode(g),
            _ => {}
        }
        if let Some(&l) = self.cache.get(f) {
            return l;
        }
        let (parts, conjunction) = match f {
            Formula::And(gs) => (gs.iter().map(|g| self.encode(g)).collect::<Vec<_>>(), true),
            Formula::Or(gs) => (gs.iter().map(|g| self.encode(g)).collect(), false),
            Formula::Implies(g, h) => (vec![!self.encode(g), self.encode(h)], false),
            _ => unreachable!(),
        };
        let x = Lit::new(self.fresh(), true);
        if conjunction {
            for &p in &parts {
                self.add_clause(vec![!x, p]);
            }
            self.add_clause(parts.iter().map(|&p| !p).chain([x]).collect());
        } else {
            for &p in &parts {
                self.add_clause(vec![x, !p]);
            }
            self.add_clause(parts.iter().copied().chain([!x]).collect());
        }
        self.cache.insert(f.clone(), x);
        self.log.push(Entry::Formula(f.clone()));
        x
    }

    /// Literals whose conjunction is `f`, when `f` is a conjunction of
    /// (possibly negated) atoms.
    fn conjunct_literals(&mut self, f: &PropFormula, out: &mut Vec<Lit>) -> bool {
        fn is_literal(f: &PropFormula) -> bool {
            match f {
                Formula::Atom(_) | Formula::Bot => true,
                Formula::Not(g) => is_literal(g),
                _ => false,
            }
        }
        match f {
            Formula::And(gs) => gs.iter().all(|g| self.conjunct_literals(g, out)),
            f if is_literal(f) => {
                out.push(self.encode(f));
                true
            }
            _ => false,
        }
    }

    /// Adds the rule `head ← body` as clauses.
    pub fn add_rule(&mut self, r: &PropRule) {
        let head = match &r.head {
            Head::Bot => None,
            Head::Atom(a) => Some(self.atom(*a)),
            Head::Formula(_) => {
                let l = self.encode(&r.formula());
                self.add_clause(vec![l]);
                return;
            }
        };
        // Constraints on a negated disjunction become a single clause.
        if head.is_none() {
            if let Formula::Not(g) = &r.body {
                if let Formula::Or(gs) = &**g {
                    let lits = gs.iter().map(|g| self.encode(g)).collect();
                    self.add_clause(lits);
                    return;
                }
            }
        }
        let mut body = Vec::new();
        let lits: Vec<Lit> = if self.conjunct_literals(&r.body, &mut body) {
            body.into_iter().map(|l| !l).chain(head).collect()
        } else {
            let b = self.encode(&r.body);
            [!b].into_iter().chain(head).collect()
        };
        self.add_clause(lits);
    }

    /// `a → ⋁ bodies`: an atom is true only if some rule supports it.
    pub fn add_support(&mut self, a: PropAtom, bodies: &[&PropFormula]) {
        let mut lits = vec![!self.atom(a)];
        for b in bodies {
            let l = self.encode(b);
            lits.push(l);
        }
        self.add_clause(lits);
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            clauses: self.clauses.len(),
            vars: self.num_vars,
            log: self.log.len(),
        }
    }

    /// Forgets everything added since `s`.
    pub fn rollback(&mut self, s: Snapshot) {
        self.clauses.truncate(s.clauses);
        for e in self.log.drain(s.log..) {
            match e {
                Entry::Formula(f) => {
                    self.cache.remove(&f);
                }
                Entry::Atom(a) => {
                    self.atom_vars.remove(&a);
                }
            }
        }
        self.num_vars = s.vars;
        self.var_atoms.truncate(s.vars as usize);
    }
}
