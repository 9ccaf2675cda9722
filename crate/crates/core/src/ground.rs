//! Shorthand expansion and grounding of schematic laws.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::mvpf::{Atom, ConstId, Formula as MvF, MvConstant, MvFormula, MvSignature};
use crate::syntax::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroundError {
    #[error("sort `{0}` has no objects")]
    EmptySort(String),
    #[error("{span}: cannot evaluate: {reason}")]
    WhereEvalError { span: Span, reason: String },
    #[error("{span}: `{law}` does not expand to definite laws")]
    NonDefiniteAfterExpansion { span: Span, law: String },
    #[error("{span}: {reason}")]
    IllFormed { span: Span, reason: String },
    #[error("{span}: `{name}` is not a declared object")]
    UnknownObject { span: Span, name: String },
    #[error("{span}: `{name}` is applied outside its argument sorts")]
    SortMismatch { span: Span, name: String },
    #[error("{span}: undeclared constant `{name}`")]
    UndeclaredConstant { span: Span, name: String },
}

type Result<T> = std::result::Result<T, GroundError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawShape {
    Static,
    ActionDynamic,
    FluentDynamic,
}

impl fmt::Display for LawShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LawShape::Static => "static",
            LawShape::ActionDynamic => "action",
            LawShape::FluentDynamic => "fluent",
        })
    }
}

/// Where a ground law came from: a written law (by index) or the kind of a
/// constant declaration (`inertialFluent`, `exogenousAction`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LawOrigin {
    Law(usize),
    Declaration(usize),
}

/// `caused head if cond [after after]`; a missing head is `⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundLaw {
    pub shape: LawShape,
    pub head: Option<Atom>,
    pub cond: MvFormula,
    /// Present exactly for fluent dynamic laws.
    pub after: Option<MvFormula>,
    pub origin: LawOrigin,
}

impl GroundLaw {
    pub fn head_formula(&self) -> MvFormula {
        self.head.map_or(MvF::Bot, MvF::Atom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundQuery {
    pub label: String,
    pub maxstep: MaxStep,
    pub constraints: Vec<(TimeExpr, MvFormula)>,
}

/// A finite set of ground causal laws over an untimed signature whose
/// constants carry their kind.
#[derive(Clone, Debug, Default)]
pub struct GroundLawSet {
    pub signature: MvSignature,
    pub laws: Vec<GroundLaw>,
    pub queries: Vec<GroundQuery>,
    index: HashMap<String, ConstId>,
}

impl GroundLawSet {
    pub fn new(signature: MvSignature) -> Self {
        let index = signature
            .ids()
            .map(|c| (signature.constant(c).name.clone(), c))
            .collect();
        GroundLawSet {
            signature,
            laws: Vec::new(),
            queries: Vec::new(),
            index,
        }
    }

    pub fn constant_id(&self, name: &str) -> Option<ConstId> {
        self.index.get(name).copied()
    }

    pub fn kind(&self, c: ConstId) -> ConstKind {
        self.signature
            .constant(c)
            .kind
            .expect("ground constants carry a kind")
    }

    /// `c = v` by name, if `v ∈ Dom(c)`.
    pub fn atom(&self, constant: &str, value: &str) -> Option<Atom> {
        let c = self.constant_id(constant)?;
        let v = self.signature.values.get(value)?;
        self.signature
            .constant(c)
            .domain
            .contains(&v)
            .then_some(Atom::new(c, v))
    }

    pub fn of_shape(&self, shape: LawShape) -> impl Iterator<Item = &GroundLaw> + '_ {
        self.laws.iter().filter(move |l| l.shape == shape)
    }

    pub fn query(&self, label: &str) -> Option<&GroundQuery> {
        self.queries.iter().find(|q| q.label == label)
    }

    pub fn formula_text(&self, f: &MvFormula) -> String {
        f.map_atoms(&mut |a| self.signature.atom_name(a))
            .to_string()
    }

    pub fn law_text(&self, law: &GroundLaw) -> String {
        let head = law
            .head
            .map_or_else(|| "false".to_string(), |a| self.signature.atom_name(&a));
        let mut s = format!(
            "{} caused {head} if {}",
            law.shape,
            self.formula_text(&law.cond)
        );
        if let Some(after) = &law.after {
            s.push_str(" after ");
            s.push_str(&self.formula_text(after));
        }
        s.push('.');
        s
    }

    /// One law per line.
    pub fn render(&self) -> String {
        self.laws.iter().map(|l| self.law_text(l) + "\n").collect()
    }
}

fn class(f: &Formula, d: &ActionDescription) -> FormulaClass {
    classify_formula(f, &d.constants).unwrap_or(FormulaClass::Mixed)
}

fn mentions_action(c: FormulaClass) -> bool {
    matches!(c, FormulaClass::Action | FormulaClass::Mixed)
}

fn conj(a: Formula, b: &Option<Formula>) -> Formula {
    match b {
        Some(b) => Formula::and(a, b.clone()),
        None => a,
    }
}

/// `caused head if cond` without `after`: an action dynamic law if the head
/// is about actions, or is `⊥` with actions in the condition.
fn unary(head: Formula, cond: Formula, d: &ActionDescription) -> CausalLaw {
    let h = class(&head, d);
    if mentions_action(h) || (h == FormulaClass::ConstantFree && mentions_action(class(&cond, d))) {
        CausalLaw::ActionDynamic { head, cond }
    } else {
        CausalLaw::Static { head, cond }
    }
}

/// Rewrites a written law into core causal laws (still schematic).
pub fn expand_shorthand(law: &Law, d: &ActionDescription) -> Vec<CausalLaw> {
    let per_value = |cs: &[ConstTerm], make: &dyn Fn(Formula) -> CausalLaw| -> Vec<CausalLaw> {
        let mut out = Vec::new();
        for c in cs {
            let Some(decl) = d.constant(&c.name) else {
                continue;
            };
            for v in d.members(&decl.value_sort) {
                out.push(make(Formula::atom(c.clone(), Term::Obj(v))));
            }
        }
        out
    };
    match &law.kind {
        LawKind::Caused {
            head,
            cond,
            after: None,
        } => {
            vec![unary(
                head.clone(),
                cond.clone().unwrap_or(Formula::True),
                d,
            )]
        }
        LawKind::Caused {
            head,
            cond,
            after: Some(h),
        } => vec![CausalLaw::FluentDynamic {
            head: head.clone(),
            cond: cond.clone().unwrap_or(Formula::True),
            after: h.clone(),
        }],
        LawKind::Constraint { body, after: None } => {
            vec![unary(Formula::False, Formula::not(body.clone()), d)]
        }
        LawKind::Constraint {
            body,
            after: Some(h),
        } => vec![CausalLaw::FluentDynamic {
            head: Formula::False,
            cond: Formula::not(body.clone()),
            after: h.clone(),
        }],
        LawKind::Default {
            head,
            cond,
            after: None,
        } => vec![unary(head.clone(), conj(head.clone(), cond), d)],
        LawKind::Default {
            head,
            cond,
            after: Some(h),
        } => vec![CausalLaw::FluentDynamic {
            head: head.clone(),
            cond: conj(head.clone(), cond),
            after: h.clone(),
        }],
        LawKind::Inertial(cs) => per_value(cs, &|a| CausalLaw::FluentDynamic {
            head: a.clone(),
            cond: a.clone(),
            after: a,
        }),
        LawKind::Exogenous(cs) => per_value(cs, &|a| CausalLaw::ActionDynamic {
            head: a.clone(),
            cond: a,
        }),
        LawKind::Causes {
            action,
            effect,
            cond,
        } => {
            if mentions_action(class(effect, d)) {
                vec![CausalLaw::ActionDynamic {
                    head: effect.clone(),
                    cond: conj(action.clone(), cond),
                }]
            } else {
                vec![CausalLaw::FluentDynamic {
                    head: effect.clone(),
                    cond: Formula::True,
                    after: conj(action.clone(), cond),
                }]
            }
        }
        LawKind::Nonexecutable { action, cond } => vec![CausalLaw::FluentDynamic {
            head: Formula::False,
            cond: Formula::True,
            after: conj(action.clone(), cond),
        }],
        LawKind::Always(body) => vec![CausalLaw::FluentDynamic {
            head: Formula::False,
            cond: Formula::True,
            after: Formula::not(body.clone()),
        }],
    }
}

/// Checks that a core law has the shape its kind requires.
fn check_shape(core: &CausalLaw, span: Span, d: &ActionDescription) -> Result<()> {
    let bad = |reason: &str| {
        Err(GroundError::IllFormed {
            span,
            reason: reason.to_string(),
        })
    };
    let sd_head = core.head().constant_names().iter().any(|n| {
        d.constant(n)
            .is_some_and(|c| c.kind.core() == ConstKind::StatDetFluent)
    });
    match core {
        CausalLaw::Static { head, cond } => {
            if mentions_action(class(head, d)) || mentions_action(class(cond, d)) {
                return bad("a static law may not mention actions");
            }
        }
        CausalLaw::ActionDynamic { head, .. } => {
            if class(head, d) == FormulaClass::Fluent {
                return bad(
                    "the head of a law with actions in its body must be an action atom or false",
                );
            }
        }
        CausalLaw::FluentDynamic { head, cond, .. } => {
            if mentions_action(class(head, d)) || mentions_action(class(cond, d)) {
                return bad("the head and condition of a dynamic law may not mention actions");
            }
            if sd_head {
                return bad("statically determined fluents may not head dynamic laws");
            }
        }
    }
    Ok(())
}

/// Builds the ground signature and all ground instances of the laws, in
/// source order and, within one law, in lexicographic order of bindings.
pub fn ground_laws(d: &ActionDescription) -> Result<GroundLawSet> {
    let mut g = Grounder::new(d)?;
    let mut laws = Vec::new();
    g.declaration_laws(&mut laws);
    for (i, law) in d.laws.iter().enumerate() {
        g.ground_law(i, law, &mut laws)?;
    }
    let mut queries = Vec::new();
    for q in &d.queries {
        let empty = HashMap::new();
        let constraints = q
            .constraints
            .iter()
            .map(|(t, f)| Ok((*t, g.formula(f, &empty, Span::default())?.simplify())))
            .collect::<Result<_>>()?;
        queries.push(GroundQuery {
            label: q.label.clone(),
            maxstep: q.maxstep,
            constraints,
        });
    }
    let mut set = GroundLawSet::new(g.sig);
    set.laws = laws;
    set.queries = queries;
    Ok(set)
}

type Binding = HashMap<String, String>;

struct Grounder<'a> {
    d: &'a ActionDescription,
    sig: MvSignature,
    index: HashMap<String, ConstId>,
    objects: BTreeSet<String>,
    /// Ground constants of each declaration, by declaration index.
    instances: Vec<Vec<ConstId>>,
}

fn instance_name(name: &str, args: &[String]) -> String {
    if args.is_empty() {
        name.to_string()
    } else {
        format!("{name}({})", args.join(","))
    }
}

/// Lexicographic product of `lists`.
fn product(lists: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

impl<'a> Grounder<'a> {
    fn new(d: &'a ActionDescription) -> Result<Self> {
        let mut sig = MvSignature::new();
        let mut index = HashMap::new();
        let mut instances = Vec::new();
        for decl in &d.constants {
            let values = d.members(&decl.value_sort);
            if values.is_empty() {
                return Err(GroundError::EmptySort(decl.value_sort.clone()));
            }
            let domain: Vec<_> = values.iter().map(|v| sig.values.intern(v)).collect();
            let args: Vec<Vec<String>> = decl.arg_sorts.iter().map(|s| d.members(s)).collect();
            let mut ids = Vec::new();
            for tuple in product(&args) {
                let name = instance_name(&decl.name, &tuple);
                let id = sig.push(MvConstant {
                    name: name.clone(),
                    domain: domain.clone(),
                    step: None,
                    kind: Some(decl.kind.core()),
                });
                index.insert(name, id);
                ids.push(id);
            }
            instances.push(ids);
        }
        let mut objects: BTreeSet<String> =
            d.object_names().into_iter().map(String::from).collect();
        objects.insert(TRUE.into());
        objects.insert(FALSE.into());
        Ok(Grounder {
            d,
            sig,
            index,
            objects,
            instances,
        })
    }

    fn declaration_laws(&self, out: &mut Vec<GroundLaw>) {
        for (i, decl) in self.d.constants.iter().enumerate() {
            let shape = match decl.kind {
                DeclKind::InertialFluent => LawShape::FluentDynamic,
                DeclKind::ExogenousAction => LawShape::ActionDynamic,
                _ => continue,
            };
            for &c in &self.instances[i] {
                for &v in &self.sig.constant(c).domain {
                    let a = Atom::new(c, v);
                    out.push(GroundLaw {
                        shape,
                        head: Some(a),
                        cond: MvF::Atom(a),
                        after: (shape == LawShape::FluentDynamic).then_some(MvF::Atom(a)),
                        origin: LawOrigin::Declaration(i),
                    });
                }
            }
        }
    }

    fn ground_law(&mut self, index: usize, law: &Law, out: &mut Vec<GroundLaw>) -> Result<()> {
        let cores = expand_shorthand(law, self.d);
        let span = law.span;
        if cores.iter().any(|c| !c.head().is_definite_head()) {
            return Err(GroundError::NonDefiniteAfterExpansion {
                span,
                law: law.to_string(),
            });
        }
        for core in &cores {
            check_shape(core, span, self.d)?;
        }
        let mut vars = BTreeSet::new();
        for core in &cores {
            for f in core.formulas() {
                f.collect_vars(&mut vars);
            }
        }
        if let Some(w) = &law.where_clause {
            w.collect_vars(&mut vars);
        }
        let vars: Vec<String> = vars.into_iter().collect();
        let mut ranges = Vec::new();
        for v in &vars {
            let sort = self
                .d
                .variable_sort(v)
                .ok_or_else(|| GroundError::IllFormed {
                    span,
                    reason: format!("undeclared variable `{v}`"),
                })?;
            let members = self.d.members(sort);
            if members.is_empty() {
                return Err(GroundError::EmptySort(sort.to_string()));
            }
            ranges.push(members);
        }
        for tuple in product(&ranges) {
            let b: Binding = vars.iter().cloned().zip(tuple).collect();
            if let Some(w) = &law.where_clause {
                if !self.eval_where(w, &b, span)? {
                    continue;
                }
            }
            for core in &cores {
                out.push(self.instance(core, &b, span, index)?);
            }
        }
        Ok(())
    }

    fn instance(
        &mut self,
        core: &CausalLaw,
        b: &Binding,
        span: Span,
        index: usize,
    ) -> Result<GroundLaw> {
        let (shape, head, cond, after) = match core {
            CausalLaw::Static { head, cond } => (LawShape::Static, head, cond, None),
            CausalLaw::ActionDynamic { head, cond } => (LawShape::ActionDynamic, head, cond, None),
            CausalLaw::FluentDynamic { head, cond, after } => {
                (LawShape::FluentDynamic, head, cond, Some(after))
            }
        };
        // A head value outside the constant's domain makes the head `⊥`.
        let head = match self.formula(head, b, span)? {
            MvF::Atom(a) => Some(a),
            _ => None,
        };
        let cond = self.formula(cond, b, span)?.simplify();
        let after = after
            .map(|h| self.formula(h, b, span))
            .transpose()?
            .map(|h| h.simplify());
        Ok(GroundLaw {
            shape,
            head,
            cond,
            after,
            origin: LawOrigin::Law(index),
        })
    }

    fn term(&self, t: &Term, b: &Binding, span: Span) -> Result<String> {
        let eval_err = |reason: String| GroundError::WhereEvalError { span, reason };
        Ok(match t {
            Term::Var(v) => b
                .get(v)
                .cloned()
                .ok_or_else(|| eval_err(format!("unbound variable `{v}`")))?,
            Term::Obj(o) => o.clone(),
            Term::Int(n) => n.to_string(),
            Term::Const(c) => {
                return Err(GroundError::IllFormed {
                    span,
                    reason: format!("constant `{c}` used as a value"),
                })
            }
            Term::Arith(op, x, y) => {
                let int = |s: String| {
                    s.parse::<i64>()
                        .map_err(|_| eval_err(format!("`{s}` is not an integer")))
                };
                let (x, y) = (int(self.term(x, b, span)?)?, int(self.term(y, b, span)?)?);
                let r = match op {
                    ArithOp::Add => x.checked_add(y),
                    ArithOp::Sub => x.checked_sub(y),
                    ArithOp::Mul => x.checked_mul(y),
                    ArithOp::Div => x.checked_div(y),
                    ArithOp::Mod => x.checked_rem(y),
                };
                r.ok_or_else(|| eval_err(format!("arithmetic error in `{t}`")))?
                    .to_string()
            }
        })
    }

    fn compare(&self, op: CmpOp, x: &str, y: &str, span: Span) -> Result<bool> {
        let ints = (x.parse::<i64>(), y.parse::<i64>());
        if let (Ok(a), Ok(b)) = ints {
            return Ok(match op {
                CmpOp::Eq => a == b,
                CmpOp::Neq => a != b,
                CmpOp::Lt => a < b,
                CmpOp::Le => a <= b,
                CmpOp::Gt => a > b,
                CmpOp::Ge => a >= b,
            });
        }
        match op {
            CmpOp::Eq => Ok(x == y),
            CmpOp::Neq => Ok(x != y),
            _ => Err(GroundError::WhereEvalError {
                span,
                reason: format!("`{x}` and `{y}` cannot be ordered"),
            }),
        }
    }

    fn eval_where(&self, f: &Formula, b: &Binding, span: Span) -> Result<bool> {
        Ok(match f {
            Formula::Compare(op, x, y) => {
                self.compare(*op, &self.term(x, b, span)?, &self.term(y, b, span)?, span)?
            }
            Formula::External(name, _) => {
                return Err(GroundError::WhereEvalError {
                    span,
                    reason: format!("external call `@{name}` is not supported"),
                })
            }
            Formula::True => true,
            Formula::False => false,
            Formula::Not(g) => !self.eval_where(g, b, span)?,
            Formula::And(x, y) => self.eval_where(x, b, span)? && self.eval_where(y, b, span)?,
            Formula::Or(x, y) => self.eval_where(x, b, span)? || self.eval_where(y, b, span)?,
            Formula::Implies(x, y) => {
                !self.eval_where(x, b, span)? || self.eval_where(y, b, span)?
            }
            Formula::Atom { .. } => {
                return Err(GroundError::WhereEvalError {
                    span,
                    reason: "where clauses may not mention constants".into(),
                })
            }
        })
    }

    fn constant(&self, c: &ConstTerm, b: &Binding, span: Span) -> Result<ConstId> {
        let args = c
            .args
            .iter()
            .map(|a| self.term(a, b, span))
            .collect::<Result<Vec<_>>>()?;
        let name = instance_name(&c.name, &args);
        match self.index.get(&name) {
            Some(&id) => Ok(id),
            None if self.d.constant(&c.name).is_some() => {
                Err(GroundError::SortMismatch { span, name })
            }
            None => Err(GroundError::UndeclaredConstant {
                span,
                name: c.name.clone(),
            }),
        }
    }

    fn formula(&mut self, f: &Formula, b: &Binding, span: Span) -> Result<MvFormula> {
        Ok(match f {
            Formula::Atom { constant, value } => {
                let c = self.constant(constant, b, span)?;
                if let Term::Const(other) = value {
                    // c1 = c2 holds iff both take some common value.
                    let c2 = self.constant(other, b, span)?;
                    let dom2 = &self.sig.constant(c2).domain;
                    let shared: Vec<MvFormula> = self
                        .sig
                        .constant(c)
                        .domain
                        .iter()
                        .filter(|v| dom2.contains(v))
                        .map(|&v| {
                            MvF::and(vec![
                                MvF::Atom(Atom::new(c, v)),
                                MvF::Atom(Atom::new(c2, v)),
                            ])
                        })
                        .collect();
                    return Ok(MvF::or(shared));
                }
                let v = self.term(value, b, span)?;
                if !self.objects.contains(&v) {
                    return Err(GroundError::UnknownObject { span, name: v });
                }
                match self.sig.values.get(&v) {
                    Some(id) if self.sig.constant(c).domain.contains(&id) => {
                        MvF::Atom(Atom::new(c, id))
                    }
                    _ => MvF::Bot,
                }
            }
            Formula::Compare(op, x, y) => {
                let holds =
                    self.compare(*op, &self.term(x, b, span)?, &self.term(y, b, span)?, span)?;
                if holds {
                    MvF::top()
                } else {
                    MvF::Bot
                }
            }
            Formula::External(name, _) => {
                return Err(GroundError::WhereEvalError {
                    span,
                    reason: format!("external call `@{name}` is not supported"),
                })
            }
            Formula::True => MvF::top(),
            Formula::False => MvF::Bot,
            Formula::Not(g) => MvF::not(self.formula(g, b, span)?),
            Formula::And(x, y) => {
                MvF::And(vec![self.formula(x, b, span)?, self.formula(y, b, span)?])
            }
            Formula::Or(x, y) => {
                MvF::Or(vec![self.formula(x, b, span)?, self.formula(y, b, span)?])
            }
            Formula::Implies(x, y) => {
                MvF::implies(self.formula(x, b, span)?, self.formula(y, b, span)?)
            }
        })
    }
}

#[cfg(test)]
mod tests;
