//! Stability of a candidate model: no proper subset satisfies the reduct.

use std::collections::{HashMap, HashSet};

use super::cnf::Cnf;
use super::search::{Flow, Search};
use crate::mvpf::Formula;
use crate::prop::{Head, PropAtom, PropFormula, PropRule};

/// No implication outside a negation: on subsets of the candidate, the
/// reduct of such a formula is monotone and negations are constant.
fn positive(f: &PropFormula) -> bool {
    match f {
        Formula::Atom(_) | Formula::Bot | Formula::Not(_) => true,
        Formula::And(gs) | Formula::Or(gs) => gs.iter().all(positive),
        Formula::Implies(..) => false,
    }
}

/// Value of the reduct of a positive `f` relative to `m`, at `y ⊆ m`.
fn reduct_holds(f: &PropFormula, m: &HashSet<PropAtom>, y: &HashSet<PropAtom>) -> bool {
    match f {
        Formula::Atom(a) => y.contains(a),
        Formula::Bot => false,
        Formula::Not(g) => !g.eval(&|a| m.contains(a)),
        Formula::And(gs) => gs.iter().all(|g| reduct_holds(g, m, y)),
        Formula::Or(gs) => gs.iter().any(|g| reduct_holds(g, m, y)),
        Formula::Implies(..) => unreachable!("only called on positive formulas"),
    }
}

/// Whether the classical model `m` of `rules` is stable.
pub fn is_stable(rules: &[&PropRule], m: &HashSet<PropAtom>) -> bool {
    let fast = rules
        .iter()
        .all(|r| !matches!(r.head, Head::Formula(_)) && positive(&r.body));
    if fast {
        least_model_is(rules, m)
    } else {
        !has_smaller_model(rules, m)
    }
}

/// The reduct is a positive program with atomic heads; its least model
/// must be `m` itself.
fn least_model_is(rules: &[&PropRule], m: &HashSet<PropAtom>) -> bool {
    let holds = |a: &PropAtom| m.contains(a);
    let active: Vec<(&PropAtom, &PropFormula)> = rules
        .iter()
        .filter_map(|r| match &r.head {
            Head::Atom(a) if m.contains(a) && r.body.eval(&holds) => Some((a, &r.body)),
            _ => None,
        })
        .collect();
    let mut uses: HashMap<PropAtom, Vec<usize>> = HashMap::new();
    for (i, (_, body)) in active.iter().enumerate() {
        body.for_each_atom(&mut |a| uses.entry(*a).or_default().push(i));
    }
    let mut y = HashSet::new();
    let mut queue: Vec<usize> = (0..active.len()).collect();
    while let Some(i) = queue.pop() {
        let (head, body) = active[i];
        if y.contains(head) || !reduct_holds(body, m, &y) {
            continue;
        }
        y.insert(*head);
        if let Some(rs) = uses.get(head) {
            queue.extend(rs);
        }
    }
    y.len() == m.len()
}

/// Searches for `y ⊊ m` satisfying the reduct.
fn has_smaller_model(rules: &[&PropRule], m: &HashSet<PropAtom>) -> bool {
    let holds = |a: &PropAtom| m.contains(a);
    let mut cnf = Cnf::new();
    for r in rules {
        let reduct = r.formula().reduct(&holds).simplify();
        let l = cnf.encode(&reduct);
        cnf.add_clause(vec![l]);
    }
    let mut atoms: Vec<PropAtom> = m.iter().copied().collect();
    atoms.sort();
    let lits = atoms.iter().map(|&a| !cnf.atom(a)).collect();
    cnf.add_clause(lits);
    let vars = atoms
        .iter()
        .map(|a| cnf.var_of(a).expect("atom was just added"))
        .collect();
    let mut search = Search::new(&cnf.clauses, cnf.num_vars(), vec![], vars);
    if !search.init() {
        return false;
    }
    let mut found = false;
    search.enumerate(&mut |_| {
        found = true;
        Flow::Stop
    });
    found
}
