//! Propositional programs over timed atoms `i:c(v)`, and the templates the
//! incremental translation instantiates once per step.

use std::collections::BTreeSet;
use std::fmt;

use crate::ground::LawOrigin;
use crate::mvpf::{ConstId, Formula, MvSignature, ValueId};
use crate::syntax::ConstKind;

/// `i:c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimedConstant {
    pub step: u32,
    pub base: ConstId,
}

/// The Boolean atom `i:c(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropAtom {
    pub step: u32,
    pub constant: ConstId,
    pub value: ValueId,
}

impl PropAtom {
    pub fn new(step: u32, constant: ConstId, value: ValueId) -> Self {
        PropAtom {
            step,
            constant,
            value,
        }
    }

    pub fn timed_constant(&self) -> TimedConstant {
        TimedConstant {
            step: self.step,
            base: self.constant,
        }
    }
}

pub type PropFormula = Formula<PropAtom>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Static,
    ActionDynamic,
    FluentDynamic,
    /// `0:c(v) ← ¬¬0:c(v)` for a simple fluent.
    InitialChoice,
    Uniqueness,
    Existence,
    Query,
    /// A theory formula that is not rule shaped.
    Formula,
}

impl RuleKind {
    pub fn is_uec(self) -> bool {
        matches!(self, RuleKind::Uniqueness | RuleKind::Existence)
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Static => "static",
            RuleKind::ActionDynamic => "action",
            RuleKind::FluentDynamic => "fluent",
            RuleKind::InitialChoice => "choice",
            RuleKind::Uniqueness => "unique",
            RuleKind::Existence => "exist",
            RuleKind::Query => "query",
            RuleKind::Formula => "formula",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "static" => RuleKind::Static,
            "action" => RuleKind::ActionDynamic,
            "fluent" => RuleKind::FluentDynamic,
            "choice" => RuleKind::InitialChoice,
            "unique" => RuleKind::Uniqueness,
            "exist" => RuleKind::Existence,
            "query" => RuleKind::Query,
            "formula" => RuleKind::Formula,
            _ => return None,
        })
    }
}

/// Provenance of a rule: what produced it, from which law, at which step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RuleTag {
    pub kind: RuleKind,
    pub origin: Option<LawOrigin>,
    pub step: u32,
}

impl RuleTag {
    pub fn new(kind: RuleKind, step: u32) -> Self {
        RuleTag {
            kind,
            origin: None,
            step,
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind.name(), self.step)?;
        match self.origin {
            Some(LawOrigin::Law(i)) => write!(f, "#law{i}"),
            Some(LawOrigin::Declaration(i)) => write!(f, "#decl{i}"),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Head<A> {
    Bot,
    Atom(A),
    /// Only for theory formulas that are not rules; the body is then `⊤`.
    Formula(Formula<A>),
}

/// `head ← body`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule<A> {
    pub head: Head<A>,
    pub body: Formula<A>,
    pub tag: RuleTag,
}

impl<A: Clone> Rule<A> {
    pub fn new(head: Option<A>, body: Formula<A>, tag: RuleTag) -> Self {
        let head = match head {
            Some(a) => Head::Atom(a),
            None => Head::Bot,
        };
        Rule { head, body, tag }
    }

    pub fn head_formula(&self) -> Formula<A> {
        match &self.head {
            Head::Bot => Formula::Bot,
            Head::Atom(a) => Formula::Atom(a.clone()),
            Head::Formula(f) => f.clone(),
        }
    }

    /// The rule as the implication `body → head`.
    pub fn formula(&self) -> Formula<A> {
        match &self.head {
            Head::Formula(f) if self.body.is_top() => f.clone(),
            _ => Formula::rule(self.head_formula(), self.body.clone()),
        }
    }

    pub fn map_atoms<B: Clone>(&self, f: &mut impl FnMut(&A) -> B) -> Rule<B> {
        let head = match &self.head {
            Head::Bot => Head::Bot,
            Head::Atom(a) => Head::Atom(f(a)),
            Head::Formula(g) => Head::Formula(g.map_atoms(f)),
        };
        Rule {
            head,
            body: self.body.map_atoms(f),
            tag: self.tag,
        }
    }

    pub fn for_each_atom(&self, visit: &mut impl FnMut(&A)) {
        match &self.head {
            Head::Bot => {}
            Head::Atom(a) => visit(a),
            Head::Formula(g) => g.for_each_atom(&mut |a| visit(a)),
        }
        self.body.for_each_atom(&mut |a| visit(a));
    }
}

pub type PropRule = Rule<PropAtom>;

/// A ground propositional program: rules over the atoms of its timed
/// constants. `base` names the untimed constants and values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropProgram {
    pub base: MvSignature,
    pub constants: Vec<TimedConstant>,
    pub rules: Vec<PropRule>,
}

impl PropProgram {
    pub fn domain(&self, c: ConstId) -> &[ValueId] {
        &self.base.constant(c).domain
    }

    pub fn kind(&self, c: ConstId) -> Option<ConstKind> {
        self.base.constant(c).kind
    }

    /// Every atom `i:c(v)`, constant by constant.
    pub fn atoms(&self) -> Vec<PropAtom> {
        self.constants
            .iter()
            .flat_map(|tc| {
                self.domain(tc.base)
                    .iter()
                    .map(move |&v| PropAtom::new(tc.step, tc.base, v))
            })
            .collect()
    }

    pub fn uec_rules(&self) -> impl Iterator<Item = &PropRule> + '_ {
        self.rules.iter().filter(|r| r.tag.kind.is_uec())
    }

    pub fn atom_name(&self, a: &PropAtom) -> String {
        atom_name(&self.base, a)
    }

    pub fn rule_text(&self, r: &PropRule) -> String {
        rule_text(r, &|a| self.atom_name(a))
    }

    /// Rules as text, sorted; equal for programs that differ only in rule order.
    pub fn rule_set(&self) -> Vec<String> {
        let mut v: Vec<String> = self.rules.iter().map(|r| self.rule_text(r)).collect();
        v.sort();
        v
    }

    /// Renders a set of true atoms, sorted by step then constant.
    pub fn render_model(&self, model: &BTreeSet<PropAtom>) -> String {
        model
            .iter()
            .map(|a| self.atom_name(a))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn atom_name(base: &MvSignature, a: &PropAtom) -> String {
    format!(
        "{}:{}={}",
        a.step,
        base.constant(a.constant).name,
        base.values.name(a.value)
    )
}

pub fn rule_text<A: Clone>(r: &Rule<A>, name: &dyn Fn(&A) -> String) -> String {
    let head = match &r.head {
        Head::Bot => "false".to_string(),
        Head::Atom(a) => name(a),
        Head::Formula(f) => f.map_atoms(&mut |a| name(a)).to_string(),
    };
    format!("{head} <- {}.", r.body.map_atoms(&mut |a| name(a)))
}

/// Time of a template atom: fixed, or relative to the step parameter `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TimeRef {
    At(u32),
    /// `t + offset`.
    T(i32),
}

impl TimeRef {
    pub fn resolve(self, t: u32) -> Option<u32> {
        match self {
            TimeRef::At(n) => Some(n),
            TimeRef::T(o) => u32::try_from(t as i64 + o as i64).ok(),
        }
    }
}

impl fmt::Display for TimeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TimeRef::At(n) => write!(f, "{n}"),
            TimeRef::T(0) => f.write_str("t"),
            TimeRef::T(o) if o < 0 => write!(f, "t-{}", -o),
            TimeRef::T(o) => write!(f, "t+{o}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TemplateAtom {
    pub time: TimeRef,
    pub constant: ConstId,
    pub value: ValueId,
}

impl TemplateAtom {
    pub fn instantiate(&self, t: u32) -> PropAtom {
        let step = self.time.resolve(t).expect("template atom before step 0");
        PropAtom::new(step, self.constant, self.value)
    }
}

pub type TemplateRule = Rule<TemplateAtom>;

/// Instantiates a template rule at `t`. The instance is tagged with the
/// latest step it mentions (`t` if it mentions none).
pub fn instantiate(r: &TemplateRule, t: u32) -> PropRule {
    let mut out = r.map_atoms(&mut |a| a.instantiate(t));
    let mut step = None;
    out.for_each_atom(&mut |a| step = step.max(Some(a.step)));
    out.tag.step = step.unwrap_or(t);
    out
}

/// The incremental program `⟨B, P[t], Q[t]⟩` of one query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncrementalProgram {
    pub base_signature: MvSignature,
    pub query: String,
    pub min_step: u32,
    /// `None` when the query leaves the horizon open.
    pub max_step: Option<u32>,
    /// `B`: rules over step 0.
    pub base: Vec<PropRule>,
    /// `P[t]` for `t ≥ 1`.
    pub cumulative: Vec<TemplateRule>,
    /// `Q[t]`.
    pub volatile: Vec<TemplateRule>,
}

impl IncrementalProgram {
    fn kind(&self, c: ConstId) -> ConstKind {
        self.base_signature
            .constant(c)
            .kind
            .expect("constants carry a kind")
    }

    /// Timed constants introduced by `B` (`t = 0`) or by `P[t]`.
    pub fn constants_introduced(&self, t: u32) -> Vec<TimedConstant> {
        let ids = self.base_signature.ids();
        if t == 0 {
            return ids
                .filter(|&c| self.kind(c).is_fluent())
                .map(|base| TimedConstant { step: 0, base })
                .collect();
        }
        let mut out: Vec<TimedConstant> = self
            .base_signature
            .ids()
            .filter(|&c| self.kind(c) == ConstKind::Action)
            .map(|base| TimedConstant { step: t - 1, base })
            .collect();
        out.extend(
            ids.filter(|&c| self.kind(c).is_fluent())
                .map(|base| TimedConstant { step: t, base }),
        );
        out
    }

    pub fn cumulative_at(&self, t: u32) -> Vec<PropRule> {
        assert!(t >= 1, "P[t] is defined for t >= 1");
        self.cumulative.iter().map(|r| instantiate(r, t)).collect()
    }

    pub fn volatile_at(&self, t: u32) -> Vec<PropRule> {
        let mut rules: Vec<PropRule> = self.volatile.iter().map(|r| instantiate(r, t)).collect();
        rules.iter_mut().for_each(|r| r.tag.step = t);
        rules
    }

    /// `B ∪ P[1] ∪ … ∪ P[k] ∪ Q[k]` as one program.
    pub fn accumulated(&self, k: u32) -> PropProgram {
        let mut constants = Vec::new();
        let mut rules = self.base.clone();
        for t in 0..=k {
            constants.extend(self.constants_introduced(t));
            if t >= 1 {
                rules.extend(self.cumulative_at(t));
            }
        }
        rules.extend(self.volatile_at(k));
        PropProgram {
            base: self.base_signature.clone(),
            constants,
            rules,
        }
    }

    /// No instantiated rule refers to a step later than its own parameter,
    /// and the base mentions only step 0.
    pub fn is_acyclic(&self) -> bool {
        let mut ok = true;
        for r in &self.base {
            r.for_each_atom(&mut |a| ok &= a.step == 0);
        }
        for r in &self.cumulative {
            r.for_each_atom(&mut |a| ok &= matches!(a.time, TimeRef::T(0) | TimeRef::T(-1)));
        }
        for r in &self.volatile {
            r.for_each_atom(&mut |a| {
                ok &= match a.time {
                    TimeRef::T(o) => o <= 0,
                    TimeRef::At(n) => n <= self.min_step,
                }
            });
        }
        ok
    }

    pub fn template_atom_name(&self, a: &TemplateAtom) -> String {
        format!(
            "{}:{}={}",
            a.time,
            self.base_signature.constant(a.constant).name,
            self.base_signature.values.name(a.value)
        )
    }
}
