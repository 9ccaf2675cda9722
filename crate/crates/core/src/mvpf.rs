//! Multi-valued propositional formulas under the stable model semantics.
//!
//! An interpretation maps every constant to one value of its domain. The
//! reduct `F^I` replaces every maximal subformula of `F` that `I` does not
//! satisfy with `⊥`, and `I` is stable when it is the *unique* interpretation
//! satisfying `F^I`. Stability here is decided exhaustively, so this module is
//! the reference that every optimized path is checked against.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::syntax::ConstKind;

/// Interpretations above this count are refused by the exhaustive checks.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueId(pub u32);

impl ConstId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ValueId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// `c = v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub constant: ConstId,
    pub value: ValueId,
}

impl Atom {
    pub fn new(constant: ConstId, value: ValueId) -> Self {
        Atom { constant, value }
    }
}

/// A propositional combination of atoms of type `A`.
///
/// `⊤` has no constructor of its own: it is `¬⊥` (see [`Formula::top`]).
/// A rule `F ← G` is the implication `G → F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula<A> {
    Atom(A),
    Bot,
    Not(Box<Formula<A>>),
    And(Vec<Formula<A>>),
    Or(Vec<Formula<A>>),
    Implies(Box<Formula<A>>, Box<Formula<A>>),
}

impl<A> Formula<A> {
    pub fn top() -> Self {
        Formula::Not(Box::new(Formula::Bot))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Not(inner) if matches!(**inner, Formula::Bot))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula<A>) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn not_not(f: Formula<A>) -> Self {
        Formula::not(Formula::not(f))
    }

    pub fn implies(antecedent: Formula<A>, consequent: Formula<A>) -> Self {
        Formula::Implies(Box::new(antecedent), Box::new(consequent))
    }

    /// `head ← body`.
    pub fn rule(head: Formula<A>, body: Formula<A>) -> Self {
        Formula::implies(body, head)
    }

    /// Conjunction; a single conjunct is returned unwrapped, none gives `⊤`.
    pub fn and(mut conjuncts: Vec<Formula<A>>) -> Self {
        match conjuncts.len() {
            0 => Formula::top(),
            1 => conjuncts.pop().unwrap(),
            _ => Formula::And(conjuncts),
        }
    }

    /// Disjunction; a single disjunct is returned unwrapped, none gives `⊥`.
    pub fn or(mut disjuncts: Vec<Formula<A>>) -> Self {
        match disjuncts.len() {
            0 => Formula::Bot,
            1 => disjuncts.pop().unwrap(),
            _ => Formula::Or(disjuncts),
        }
    }

    /// Classical truth value under `holds`.
    pub fn eval(&self, holds: &impl Fn(&A) -> bool) -> bool {
        match self {
            Formula::Atom(a) => holds(a),
            Formula::Bot => false,
            Formula::Not(f) => !f.eval(holds),
            Formula::And(fs) => fs.iter().all(|f| f.eval(holds)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(holds)),
            Formula::Implies(g, h) => !g.eval(holds) || h.eval(holds),
        }
    }

    pub fn for_each_atom<'a>(&'a self, visit: &mut impl FnMut(&'a A)) {
        match self {
            Formula::Atom(a) => visit(a),
            Formula::Bot => {}
            Formula::Not(f) => f.for_each_atom(visit),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.for_each_atom(visit)),
            Formula::Implies(g, h) => {
                g.for_each_atom(visit);
                h.for_each_atom(visit);
            }
        }
    }

    pub fn try_map_atoms<B, E>(
        &self,
        f: &mut impl FnMut(&A) -> Result<B, E>,
    ) -> Result<Formula<B>, E> {
        Ok(match self {
            Formula::Atom(a) => Formula::Atom(f(a)?),
            Formula::Bot => Formula::Bot,
            Formula::Not(g) => Formula::Not(Box::new(g.try_map_atoms(f)?)),
            Formula::And(gs) => Formula::And(
                gs.iter()
                    .map(|g| g.try_map_atoms(f))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Or(gs) => Formula::Or(
                gs.iter()
                    .map(|g| g.try_map_atoms(f))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Implies(g, h) => Formula::implies(g.try_map_atoms(f)?, h.try_map_atoms(f)?),
        })
    }

    pub fn map_atoms<B>(&self, f: &mut impl FnMut(&A) -> B) -> Formula<B> {
        let r: Result<_, std::convert::Infallible> = self.try_map_atoms(&mut |a| Ok(f(a)));
        match r {
            Ok(g) => g,
            Err(e) => match e {},
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(fs) | Formula::Or(fs) => {
                1 + fs.iter().map(Formula::depth).max().unwrap_or(0)
            }
            Formula::Implies(g, h) => 1 + g.depth().max(h.depth()),
        }
    }

    pub fn contains_implication(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Bot => false,
            Formula::Not(f) => f.contains_implication(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::contains_implication),
            Formula::Implies(..) => true,
        }
    }
}

impl<A: Clone> Formula<A> {
    /// The reduct relative to the interpretation described by `holds`.
    pub fn reduct(&self, holds: &impl Fn(&A) -> bool) -> Formula<A> {
        if !self.eval(holds) {
            return Formula::Bot;
        }
        match self {
            Formula::Atom(_) | Formula::Bot => self.clone(),
            Formula::Not(f) => Formula::Not(Box::new(f.reduct(holds))),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.reduct(holds)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.reduct(holds)).collect()),
            Formula::Implies(g, h) => Formula::implies(g.reduct(holds), h.reduct(holds)),
        }
    }

    /// Folds `⊤`/`⊥` subformulas away. Every step replaces a subformula by a
    /// strongly equivalent one, so stable models are unchanged.
    pub fn simplify(&self) -> Formula<A> {
        match self {
            Formula::Atom(_) | Formula::Bot => self.clone(),
            Formula::Not(f) => {
                let f = f.simplify();
                match f {
                    Formula::Bot => Formula::top(),
                    ref g if g.is_top() => Formula::Bot,
                    g => Formula::not(g),
                }
            }
            Formula::And(fs) => {
                let mut out = Vec::with_capacity(fs.len());
                for f in fs {
                    match f.simplify() {
                        Formula::Bot => return Formula::Bot,
                        g if g.is_top() => {}
                        Formula::And(inner) => out.extend(inner),
                        g => out.push(g),
                    }
                }
                Formula::and(out)
            }
            Formula::Or(fs) => {
                let mut out = Vec::with_capacity(fs.len());
                for f in fs {
                    match f.simplify() {
                        Formula::Bot => {}
                        g if g.is_top() => return Formula::top(),
                        Formula::Or(inner) => out.extend(inner),
                        g => out.push(g),
                    }
                }
                Formula::or(out)
            }
            Formula::Implies(g, h) => {
                let g = g.simplify();
                let h = h.simplify();
                if matches!(g, Formula::Bot) || h.is_top() {
                    Formula::top()
                } else if g.is_top() {
                    h
                } else if matches!(h, Formula::Bot) {
                    Formula::not(g)
                } else {
                    Formula::implies(g, h)
                }
            }
        }
    }
}

impl<A: fmt::Display> fmt::Display for Formula<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Bot => f.write_str("false"),
            g if g.is_top() => f.write_str("true"),
            Formula::Not(g) => write!(f, "not {g}"),
            Formula::And(gs) | Formula::Or(gs) if gs.is_empty() => {
                f.write_str(if matches!(self, Formula::And(_)) {
                    "(&)"
                } else {
                    "(|)"
                })
            }
            Formula::And(gs) | Formula::Or(gs) => {
                let sep = if matches!(self, Formula::And(_)) {
                    " & "
                } else {
                    " | "
                };
                f.write_str("(")?;
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(")")
            }
            Formula::Implies(g, h) => write!(f, "({g} -> {h})"),
        }
    }
}

/// Interned value names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValueTable {
    names: Vec<String>,
    index: HashMap<String, ValueId>,
}

impl ValueTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> ValueId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = ValueId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<ValueId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: ValueId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// One constant of a multi-valued signature. Time-stamped constants produced
/// by the translation also carry their step and kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvConstant {
    pub name: String,
    pub domain: Vec<ValueId>,
    pub step: Option<u32>,
    pub kind: Option<ConstKind>,
}

impl MvConstant {
    pub fn display_name(&self) -> String {
        match self.step {
            Some(s) => format!("{s}:{}", self.name),
            None => self.name.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MvSignature {
    pub values: ValueTable,
    pub constants: Vec<MvConstant>,
}

impl MvSignature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an untimed constant with the given value names as its domain.
    pub fn add_constant(&mut self, name: &str, domain: &[&str]) -> ConstId {
        let domain = domain.iter().map(|v| self.values.intern(v)).collect();
        self.push(MvConstant {
            name: name.to_string(),
            domain,
            step: None,
            kind: None,
        })
    }

    pub fn push(&mut self, constant: MvConstant) -> ConstId {
        let id = ConstId(self.constants.len() as u32);
        self.constants.push(constant);
        id
    }

    pub fn constant(&self, c: ConstId) -> &MvConstant {
        &self.constants[c.index()]
    }

    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = ConstId> {
        (0..self.constants.len() as u32).map(ConstId)
    }

    /// `c = v` by name; `None` if either is unknown or `v ∉ Dom(c)`.
    pub fn atom(&self, constant: &str, value: &str) -> Option<Atom> {
        let c = self
            .constants
            .iter()
            .position(|k| k.display_name() == constant)?;
        let v = self.values.get(value)?;
        self.constants[c]
            .domain
            .contains(&v)
            .then_some(Atom::new(ConstId(c as u32), v))
    }

    pub fn contains_atom(&self, atom: &Atom) -> bool {
        self.constants
            .get(atom.constant.index())
            .is_some_and(|c| c.domain.contains(&atom.value))
    }

    /// `Π |Dom(c)|`, saturating.
    pub fn interpretation_count(&self) -> u64 {
        self.constants
            .iter()
            .fold(1u64, |acc, c| acc.saturating_mul(c.domain.len() as u64))
    }

    pub fn atom_name(&self, atom: &Atom) -> String {
        format!(
            "{}={}",
            self.constant(atom.constant).display_name(),
            self.values.name(atom.value)
        )
    }

    /// Every interpretation, in odometer order over the domains.
    pub fn interpretations(&self) -> Interpretations<'_> {
        let done = self.constants.iter().any(|c| c.domain.is_empty());
        Interpretations {
            sig: self,
            digits: vec![0; self.constants.len()],
            done,
        }
    }
}

pub struct Interpretations<'a> {
    sig: &'a MvSignature,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for Interpretations<'_> {
    type Item = MvInterpretation;

    fn next(&mut self) -> Option<MvInterpretation> {
        if self.done {
            return None;
        }
        let out = MvInterpretation(
            self.digits
                .iter()
                .zip(&self.sig.constants)
                .map(|(&d, c)| c.domain[d])
                .collect(),
        );
        self.done = true;
        for (i, c) in self.sig.constants.iter().enumerate().rev() {
            self.digits[i] += 1;
            if self.digits[i] < c.domain.len() {
                self.done = false;
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

/// A total assignment of values to constants, indexed by [`ConstId`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MvInterpretation(pub Vec<ValueId>);

impl MvInterpretation {
    pub fn value(&self, c: ConstId) -> ValueId {
        self.0[c.index()]
    }

    pub fn holds(&self, atom: &Atom) -> bool {
        self.0.get(atom.constant.index()) == Some(&atom.value)
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.0
            .iter()
            .enumerate()
            .map(|(c, &v)| Atom::new(ConstId(c as u32), v))
    }

    pub fn is_over(&self, sig: &MvSignature) -> bool {
        self.0.len() == sig.len() && self.atoms().all(|a| sig.contains_atom(&a))
    }

    pub fn render(&self, sig: &MvSignature) -> String {
        let atoms: Vec<String> = self.atoms().map(|a| sig.atom_name(&a)).collect();
        format!("{{{}}}", atoms.join(", "))
    }
}

pub type MvFormula = Formula<Atom>;

/// A signature with a finite set of formulas, read as their conjunction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MvTheory {
    pub signature: MvSignature,
    pub formulas: Vec<MvFormula>,
}

impl MvTheory {
    pub fn new(signature: MvSignature) -> Self {
        MvTheory {
            signature,
            formulas: Vec::new(),
        }
    }

    pub fn conjunction(&self) -> MvFormula {
        Formula::and(self.formulas.clone())
    }

    pub fn is_over_signature(&self) -> bool {
        let mut ok = true;
        for f in &self.formulas {
            f.for_each_atom(&mut |a| ok &= self.signature.contains_atom(a));
        }
        ok
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("signature has {count} interpretations, above the oracle cap of {cap}")]
    SignatureTooLarge { count: u64, cap: u64 },
}

pub fn satisfies(i: &MvInterpretation, f: &MvFormula) -> bool {
    f.eval(&|a| i.holds(a))
}

pub fn reduct(f: &MvFormula, i: &MvInterpretation) -> MvFormula {
    f.reduct(&|a| i.holds(a))
}

fn check_cap(sig: &MvSignature, cap: u64) -> Result<(), OracleError> {
    let count = sig.interpretation_count();
    if count > cap {
        return Err(OracleError::SignatureTooLarge { count, cap });
    }
    Ok(())
}

/// `i` is the unique interpretation of the whole signature satisfying `t^i`.
pub fn is_stable(i: &MvInterpretation, t: &MvTheory, cap: u64) -> Result<bool, OracleError> {
    check_cap(&t.signature, cap)?;
    Ok(is_stable_unchecked(i, t))
}

fn is_stable_unchecked(i: &MvInterpretation, t: &MvTheory) -> bool {
    if !t.formulas.iter().all(|f| satisfies(i, f)) {
        return false;
    }
    let reduced: Vec<MvFormula> = t.formulas.iter().map(|f| reduct(f, i)).collect();
    t.signature
        .interpretations()
        .filter(|j| j != i)
        .all(|j| !reduced.iter().all(|f| satisfies(&j, f)))
}

/// Every stable model of `t`, in odometer order.
pub fn enumerate_stable(t: &MvTheory, cap: u64) -> Result<Vec<MvInterpretation>, OracleError> {
    check_cap(&t.signature, cap)?;
    Ok(t.signature
        .interpretations()
        .filter(|i| is_stable_unchecked(i, t))
        .collect())
}

/// Classical models of `t`.
pub fn enumerate_models(t: &MvTheory, cap: u64) -> Result<Vec<MvInterpretation>, OracleError> {
    check_cap(&t.signature, cap)?;
    Ok(t.signature
        .interpretations()
        .filter(|i| t.formulas.iter().all(|f| satisfies(i, f)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn three_valued() -> (MvSignature, Atom, Atom) {
        let mut sig = MvSignature::new();
        sig.add_constant("c", &["1", "2", "3"]);
        let c1 = sig.atom("c", "1").unwrap();
        let c2 = sig.atom("c", "2").unwrap();
        (sig, c1, c2)
    }

    fn interp(sig: &MvSignature, v: &str) -> MvInterpretation {
        MvInterpretation(vec![sig.values.get(v).unwrap()])
    }

    fn theory(sig: &MvSignature, f: MvFormula) -> MvTheory {
        MvTheory {
            signature: sig.clone(),
            formulas: vec![f],
        }
    }

    #[test]
    fn satisfaction_examples() {
        let (sig, c1, c2) = three_valued();
        let a1 = Formula::Atom(c1);
        assert!(satisfies(&interp(&sig, "1"), &a1));
        assert!(satisfies(
            &interp(&sig, "2"),
            &Formula::rule(a1.clone(), a1.clone())
        ));
        let f = Formula::and(vec![
            Formula::rule(a1.clone(), Formula::not_not(a1.clone())),
            Formula::Atom(c2),
        ]);
        assert!(satisfies(&interp(&sig, "2"), &f));
    }

    #[test]
    fn reduct_examples() {
        let (sig, c1, _) = three_valued();
        let a1 = Formula::Atom(c1);
        let f = Formula::rule(a1.clone(), Formula::not_not(a1.clone()));
        assert_eq!(
            reduct(&f, &interp(&sig, "1")),
            Formula::rule(a1.clone(), Formula::not(Formula::Bot))
        );

        let g = Formula::rule(a1.clone(), a1.clone());
        assert_eq!(
            reduct(&g, &interp(&sig, "2")),
            Formula::implies(Formula::Bot, Formula::Bot)
        );

        let top: MvFormula = Formula::top();
        assert_eq!(reduct(&top, &interp(&sig, "3")), Formula::top());
    }

    #[test]
    fn three_valued_stable_models() {
        let (sig, c1, c2) = three_valued();
        let a1 = Formula::Atom(c1);
        let plain = theory(&sig, Formula::rule(a1.clone(), a1.clone()));
        assert_eq!(
            enumerate_models(&plain, DEFAULT_ORACLE_CAP).unwrap().len(),
            3
        );
        assert!(enumerate_stable(&plain, DEFAULT_ORACLE_CAP)
            .unwrap()
            .is_empty());

        let guarded = Formula::rule(a1.clone(), Formula::not_not(a1.clone()));
        let t = theory(&sig, guarded.clone());
        assert_eq!(
            enumerate_stable(&t, DEFAULT_ORACLE_CAP).unwrap(),
            vec![interp(&sig, "1")]
        );
        assert!(is_stable(&interp(&sig, "1"), &t, DEFAULT_ORACLE_CAP).unwrap());
        assert!(!is_stable(&interp(&sig, "2"), &t, DEFAULT_ORACLE_CAP).unwrap());

        let t2 = theory(&sig, Formula::and(vec![guarded, Formula::Atom(c2)]));
        assert_eq!(
            enumerate_stable(&t2, DEFAULT_ORACLE_CAP).unwrap(),
            vec![interp(&sig, "2")]
        );
    }

    #[test]
    fn empty_theory_has_no_stable_model() {
        let mut sig = MvSignature::new();
        sig.add_constant("c", &["1", "2"]);
        let t = MvTheory::new(sig);
        assert!(enumerate_stable(&t, DEFAULT_ORACLE_CAP).unwrap().is_empty());
    }

    #[test]
    fn fact_is_its_own_stable_model() {
        let mut sig = MvSignature::new();
        sig.add_constant("c", &["1", "2"]);
        let c1 = sig.atom("c", "1").unwrap();
        let t = theory(&sig, Formula::Atom(c1));
        let stable = enumerate_stable(&t, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(stable.len(), 1);
        assert!(stable[0].holds(&c1));
    }

    #[test]
    fn singleton_domains_are_supported() {
        let mut sig = MvSignature::new();
        sig.add_constant("c", &["only"]);
        let t = MvTheory::new(sig);
        // the empty reduct has exactly one model when there is only one interpretation
        assert_eq!(enumerate_stable(&t, DEFAULT_ORACLE_CAP).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let mut sig = MvSignature::new();
        for i in 0..30 {
            sig.add_constant(&format!("c{i}"), &["a", "b"]);
        }
        let t = MvTheory::new(sig);
        assert!(matches!(
            enumerate_stable(&t, DEFAULT_ORACLE_CAP),
            Err(OracleError::SignatureTooLarge { .. })
        ));
    }

    #[test]
    fn simplify_folds_constants() {
        let (_, c1, _) = three_valued();
        let a = Formula::Atom(c1);
        let f = Formula::and(vec![
            Formula::top(),
            a.clone(),
            Formula::or(vec![Formula::Bot, Formula::top()]),
        ]);
        assert_eq!(f.simplify(), a);
        assert_eq!(
            Formula::implies(a.clone(), Formula::Bot).simplify(),
            Formula::not(a)
        );
    }

    fn arb_formula(consts: usize, dom: usize) -> impl Strategy<Value = MvFormula> {
        let leaf = prop_oneof![
            (0..consts, 0..dom)
                .prop_map(|(c, v)| Formula::Atom(Atom::new(ConstId(c as u32), ValueId(v as u32)))),
            Just(Formula::Bot),
            Just(Formula::top()),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                prop::collection::vec(inner.clone(), 2..3).prop_map(Formula::And),
                prop::collection::vec(inner.clone(), 2..3).prop_map(Formula::Or),
                (inner.clone(), inner).prop_map(|(g, h)| Formula::implies(g, h)),
            ]
        })
    }

    fn two_by_three() -> MvSignature {
        let mut sig = MvSignature::new();
        sig.add_constant("p", &["0", "1", "2"]);
        sig.add_constant("q", &["0", "1", "2"]);
        sig
    }

    proptest! {
        #[test]
        fn reduct_preserves_own_satisfaction(f in arb_formula(2, 3), a in 0u32..3, b in 0u32..3) {
            let i = MvInterpretation(vec![ValueId(a), ValueId(b)]);
            prop_assert_eq!(satisfies(&i, &f), satisfies(&i, &reduct(&f, &i)));
        }

        #[test]
        fn reduct_is_idempotent(f in arb_formula(2, 3), a in 0u32..3, b in 0u32..3) {
            let i = MvInterpretation(vec![ValueId(a), ValueId(b)]);
            let once = reduct(&f, &i);
            prop_assert_eq!(reduct(&once, &i), once);
        }

        #[test]
        fn stable_models_are_models(f in arb_formula(2, 3)) {
            let sig = two_by_three();
            let t = MvTheory { signature: sig, formulas: vec![f] };
            for i in enumerate_stable(&t, DEFAULT_ORACLE_CAP).unwrap() {
                prop_assert!(t.formulas.iter().all(|g| satisfies(&i, g)));
            }
        }

        #[test]
        fn double_negation_never_removes_models(f in arb_formula(2, 3), a in 0u32..3, b in 0u32..3) {
            let i = MvInterpretation(vec![ValueId(a), ValueId(b)]);
            if satisfies(&i, &f) {
                prop_assert!(satisfies(&i, &Formula::not_not(f.clone())));
            }
        }
    }
}
