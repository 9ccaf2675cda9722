//! Abstract syntax of action descriptions and queries.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

pub const BOOLEAN: &str = "boolean";
pub const TRUE: &str = "true";
pub const FALSE: &str = "false";

/// Kind of a constant once shorthand kinds are expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstKind {
    SimpleFluent,
    StatDetFluent,
    Action,
}

impl ConstKind {
    pub fn is_fluent(self) -> bool {
        !matches!(self, ConstKind::Action)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            ConstKind::SimpleFluent => "simple",
            ConstKind::StatDetFluent => "sdfluent",
            ConstKind::Action => "action",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Some(match s {
            "simple" => ConstKind::SimpleFluent,
            "sdfluent" => ConstKind::StatDetFluent,
            "action" => ConstKind::Action,
            _ => return None,
        })
    }
}

/// Kind as written in a declaration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeclKind {
    SimpleFluent,
    InertialFluent,
    StatDetFluent,
    Action,
    ExogenousAction,
}

impl DeclKind {
    pub fn core(self) -> ConstKind {
        match self {
            DeclKind::SimpleFluent | DeclKind::InertialFluent => ConstKind::SimpleFluent,
            DeclKind::StatDetFluent => ConstKind::StatDetFluent,
            DeclKind::Action | DeclKind::ExogenousAction => ConstKind::Action,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            DeclKind::SimpleFluent => "simpleFluent",
            DeclKind::InertialFluent => "inertialFluent",
            DeclKind::StatDetFluent => "sdFluent",
            DeclKind::Action => "action",
            DeclKind::ExogenousAction => "exogenousAction",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Some(match s {
            "simpleFluent" => DeclKind::SimpleFluent,
            "inertialFluent" => DeclKind::InertialFluent,
            "sdFluent" | "statDetFluent" | "statDeterminedFluent" => DeclKind::StatDetFluent,
            "action" => DeclKind::Action,
            "exogenousAction" => DeclKind::ExogenousAction,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortDecl {
    pub name: String,
    /// Sorts this one was declared under with `super >> name`.
    pub supersorts: Vec<String>,
    /// Objects declared directly in this sort, in declaration order.
    pub objects: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantDecl {
    pub name: String,
    pub arg_sorts: Vec<String>,
    pub kind: DeclKind,
    pub value_sort: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableDecl {
    pub name: String,
    pub sort: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "//",
            ArithOp::Mod => " mod ",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Neq => "\\=",
            CmpOp::Lt => "<",
            CmpOp::Le => "=<",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstTerm {
    pub name: String,
    pub args: Vec<Term>,
}

impl ConstTerm {
    pub fn new(name: impl Into<String>, args: Vec<Term>) -> Self {
        ConstTerm {
            name: name.into(),
            args,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Obj(String),
    Int(i64),
    Const(ConstTerm),
    Arith(ArithOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn obj(name: &str) -> Term {
        Term::Obj(name.to_string())
    }

    pub fn has_constant(&self) -> bool {
        match self {
            Term::Const(_) => true,
            Term::Arith(_, a, b) => a.has_constant() || b.has_constant(),
            _ => false,
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(c) => c.args.iter().for_each(|a| a.collect_vars(out)),
            Term::Arith(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Obj(_) | Term::Int(_) => {}
        }
    }
}

/// Formulas as written. `c` alone is `c=true` and `-c` is `c=false` for a
/// Boolean constant `c`; comparisons between constant-free terms are
/// decided during grounding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `c = v`; `v` may itself be a constant term (`loc(a)=loc(b)`).
    Atom {
        constant: ConstTerm,
        value: Term,
    },
    Compare(CmpOp, Term, Term),
    /// `@name(args)`: an external call, only meaningful in `where` clauses.
    External(String, Vec<Term>),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(constant: ConstTerm, value: Term) -> Self {
        Formula::Atom { constant, value }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Conjunction of `parts`, `true` if empty.
    pub fn conjoin(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom { constant, value } => {
                constant.args.iter().for_each(|a| a.collect_vars(out));
                value.collect_vars(out);
            }
            Formula::Compare(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::External(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Formula::True | Formula::False => {}
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Names of constants occurring anywhere in the formula.
    pub fn constant_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_constants(&mut |c| {
            out.insert(c.name.clone());
        });
        out
    }

    pub fn visit_constants(&self, visit: &mut impl FnMut(&ConstTerm)) {
        fn term(t: &Term, visit: &mut impl FnMut(&ConstTerm)) {
            match t {
                Term::Const(c) => {
                    visit(c);
                    c.args.iter().for_each(|a| term(a, visit));
                }
                Term::Arith(_, a, b) => {
                    term(a, visit);
                    term(b, visit);
                }
                _ => {}
            }
        }
        match self {
            Formula::Atom { constant, value } => {
                visit(constant);
                constant.args.iter().for_each(|a| term(a, visit));
                term(value, visit);
            }
            Formula::Compare(_, a, b) => {
                term(a, visit);
                term(b, visit);
            }
            Formula::External(_, args) => args.iter().for_each(|a| term(a, visit)),
            Formula::True | Formula::False => {}
            Formula::Not(f) => f.visit_constants(visit),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_constants(visit);
                b.visit_constants(visit);
            }
        }
    }

    /// Heads of definite laws are a single atom `c=v` with `v` constant-free, or `⊥`.
    pub fn is_definite_head(&self) -> bool {
        match self {
            Formula::False => true,
            Formula::Atom { value, .. } => !value.has_constant(),
            _ => false,
        }
    }
}

/// Byte range of a law within one source file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub file: usize,
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Laws as written, before shorthand expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawKind {
    Caused {
        head: Formula,
        cond: Option<Formula>,
        after: Option<Formula>,
    },
    Constraint {
        body: Formula,
        after: Option<Formula>,
    },
    Default {
        head: Formula,
        cond: Option<Formula>,
        after: Option<Formula>,
    },
    Inertial(Vec<ConstTerm>),
    Exogenous(Vec<ConstTerm>),
    Causes {
        action: Formula,
        effect: Formula,
        cond: Option<Formula>,
    },
    Nonexecutable {
        action: Formula,
        cond: Option<Formula>,
    },
    Always(Formula),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Law {
    pub kind: LawKind,
    pub where_clause: Option<Formula>,
    pub span: Span,
}

/// The three core shapes every law is expanded into.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CausalLaw {
    /// `caused head if cond`, over fluents.
    Static { head: Formula, cond: Formula },
    /// `caused head if cond` with an action head.
    ActionDynamic { head: Formula, cond: Formula },
    /// `caused head if cond after after`.
    FluentDynamic {
        head: Formula,
        cond: Formula,
        after: Formula,
    },
}

impl CausalLaw {
    pub fn head(&self) -> &Formula {
        match self {
            CausalLaw::Static { head, .. }
            | CausalLaw::ActionDynamic { head, .. }
            | CausalLaw::FluentDynamic { head, .. } => head,
        }
    }

    pub fn formulas(&self) -> Vec<&Formula> {
        match self {
            CausalLaw::Static { head, cond } | CausalLaw::ActionDynamic { head, cond } => {
                vec![head, cond]
            }
            CausalLaw::FluentDynamic { head, cond, after } => vec![head, cond, after],
        }
    }
}

impl fmt::Display for CausalLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CausalLaw::Static { head, cond } | CausalLaw::ActionDynamic { head, cond } => {
                write!(f, "caused {head} if {cond}.")
            }
            CausalLaw::FluentDynamic { head, cond, after } => {
                write!(f, "caused {head} if {cond} after {after}.")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxStep {
    Fixed(u32),
    Range(u32, u32),
    /// `min..infinity`; a cap must be supplied before solving.
    Unbounded {
        min: u32,
    },
}

impl MaxStep {
    pub fn min(self) -> u32 {
        match self {
            MaxStep::Fixed(n) => n,
            MaxStep::Range(a, _) => a,
            MaxStep::Unbounded { min } => min,
        }
    }
}

impl fmt::Display for MaxStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxStep::Fixed(n) => write!(f, "{n}"),
            MaxStep::Range(a, b) => write!(f, "{a}..{b}"),
            MaxStep::Unbounded { min } => write!(f, "{min}..infinity"),
        }
    }
}

/// Time index of a query constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TimeExpr {
    At(u32),
    /// `maxstep + offset` (offset is usually zero or negative).
    MaxStep(i32),
}

impl TimeExpr {
    pub fn resolve(self, maxstep: u32) -> Option<u32> {
        match self {
            TimeExpr::At(n) => Some(n),
            TimeExpr::MaxStep(off) => u32::try_from(maxstep as i64 + off as i64).ok(),
        }
    }
}

impl fmt::Display for TimeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TimeExpr::At(n) => write!(f, "{n}"),
            TimeExpr::MaxStep(0) => f.write_str("maxstep"),
            TimeExpr::MaxStep(o) if o < 0 => write!(f, "maxstep-{}", -o),
            TimeExpr::MaxStep(o) => write!(f, "maxstep+{o}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub label: String,
    pub maxstep: MaxStep,
    pub constraints: Vec<(TimeExpr, Formula)>,
}

/// A loaded source file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceFile {
    pub path: PathBuf,
    pub text: String,
    /// Indices of files included from this one.
    pub includes: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionDescription {
    pub sorts: Vec<SortDecl>,
    pub constants: Vec<ConstantDecl>,
    pub variables: Vec<VariableDecl>,
    pub laws: Vec<Law>,
    pub queries: Vec<Query>,
    pub sources: Vec<SourceFile>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("undeclared constant `{0}`")]
    UndeclaredConstant(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaClass {
    Fluent,
    Action,
    Mixed,
    ConstantFree,
}

/// A law whose (expanded) head is neither an atom nor `⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub span: Span,
    pub law: String,
}

impl ActionDescription {
    pub fn sort(&self, name: &str) -> Option<&SortDecl> {
        self.sorts.iter().find(|s| s.name == name)
    }

    pub fn has_sort(&self, name: &str) -> bool {
        name == BOOLEAN || self.sort(name).is_some()
    }

    pub fn constant(&self, name: &str) -> Option<&ConstantDecl> {
        self.constants.iter().find(|c| c.name == name)
    }

    pub fn variable_sort(&self, name: &str) -> Option<&str> {
        self.variables
            .iter()
            .find(|v| v.name == name)
            .map(|v| v.sort.as_str())
    }

    pub fn query(&self, label: &str) -> Option<&Query> {
        self.queries.iter().find(|q| q.label == label)
    }

    /// Direct subsorts of `name`.
    pub fn subsorts<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a SortDecl> + 'a {
        self.sorts
            .iter()
            .filter(move |s| s.supersorts.iter().any(|p| p == name))
    }

    /// Objects of `name` and of all its subsorts, deduplicated, in
    /// declaration order.
    pub fn members(&self, name: &str) -> Vec<String> {
        if name == BOOLEAN {
            return vec![TRUE.to_string(), FALSE.to_string()];
        }
        let mut out = Vec::new();
        let mut seen_sorts = BTreeSet::new();
        self.collect_members(name, &mut out, &mut seen_sorts);
        let mut seen = BTreeSet::new();
        out.retain(|o| seen.insert(o.clone()));
        out
    }

    fn collect_members(&self, name: &str, out: &mut Vec<String>, seen: &mut BTreeSet<String>) {
        if !seen.insert(name.to_string()) {
            return;
        }
        if let Some(s) = self.sort(name) {
            out.extend(s.objects.iter().cloned());
        }
        let subs: Vec<String> = self.subsorts(name).map(|s| s.name.clone()).collect();
        for s in subs {
            self.collect_members(&s, out, seen);
        }
    }

    /// Every object name declared in some sort.
    pub fn object_names(&self) -> BTreeSet<&str> {
        self.sorts
            .iter()
            .flat_map(|s| s.objects.iter().map(String::as_str))
            .collect()
    }

    /// Whether the sort graph (edges sub → super) contains a cycle.
    pub fn has_sort_cycle(&self) -> bool {
        fn visit<'a>(
            d: &'a ActionDescription,
            s: &'a str,
            state: &mut HashMap<&'a str, u8>,
        ) -> bool {
            match state.get(s) {
                Some(1) => return true,
                Some(2) => return false,
                _ => {}
            }
            state.insert(s, 1);
            if let Some(decl) = d.sort(s) {
                for p in &decl.supersorts {
                    if visit(d, p, state) {
                        return true;
                    }
                }
            }
            state.insert(s, 2);
            false
        }
        let mut state = HashMap::new();
        self.sorts.iter().any(|s| visit(self, &s.name, &mut state))
    }

    /// Same declarations, laws and queries, ignoring spans and sources.
    pub fn same_structure(&self, other: &ActionDescription) -> bool {
        let laws = |d: &ActionDescription| -> Vec<(LawKind, Option<Formula>)> {
            d.laws
                .iter()
                .map(|l| (l.kind.clone(), l.where_clause.clone()))
                .collect()
        };
        self.sorts == other.sorts
            && self.constants == other.constants
            && self.variables == other.variables
            && self.queries == other.queries
            && laws(self) == laws(other)
    }

    /// The text of the law as it appears in its source file.
    pub fn law_text(&self, law: &Law) -> Option<&str> {
        self.sources
            .get(law.span.file)?
            .text
            .get(law.span.start..law.span.end)
    }
}

/// Classifies `f` by the kinds of constants occurring in it.
pub fn classify_formula(f: &Formula, decls: &[ConstantDecl]) -> Result<FormulaClass, SyntaxError> {
    let mut fluent = false;
    let mut action = false;
    for name in f.constant_names() {
        let decl = decls
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| SyntaxError::UndeclaredConstant(name.clone()))?;
        if decl.kind.core().is_fluent() {
            fluent = true;
        } else {
            action = true;
        }
    }
    Ok(match (fluent, action) {
        (false, false) => FormulaClass::ConstantFree,
        (true, false) => FormulaClass::Fluent,
        (false, true) => FormulaClass::Action,
        (true, true) => FormulaClass::Mixed,
    })
}

/// One violation per expanded law whose head is neither an atom nor `⊥`.
pub fn check_definite(d: &ActionDescription) -> Vec<Violation> {
    let mut out = Vec::new();
    for law in &d.laws {
        for core in crate::ground::expand_shorthand(law, d) {
            if !core.head().is_definite_head() {
                out.push(Violation {
                    span: law.span,
                    law: law.to_string(),
                });
                break;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Pretty printing in input syntax. Output re-parses to the same AST.

impl fmt::Display for ConstTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Obj(v) => f.write_str(v),
            Term::Int(n) => write!(f, "{n}"),
            Term::Const(c) => write!(f, "{c}"),
            Term::Arith(op, a, b) => write!(f, "({a}{}{b})", op.symbol()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom { constant, value } => write!(f, "{constant}={value}"),
            Formula::Compare(op, a, b) => write!(f, "{a}{}{b}", op.symbol()),
            Formula::External(name, args) => {
                write!(f, "@{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Not(g) => write!(f, "-({g})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} ++ {b})"),
            Formula::Implies(a, b) => write!(f, "({a} ->> {b})"),
        }
    }
}

fn write_opt(f: &mut fmt::Formatter<'_>, kw: &str, part: &Option<Formula>) -> fmt::Result {
    match part {
        Some(p) => write!(f, " {kw} {p}"),
        None => Ok(()),
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[ConstTerm]) -> fmt::Result {
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            LawKind::Caused { head, cond, after } => {
                write!(f, "caused {head}")?;
                write_opt(f, "if", cond)?;
                write_opt(f, "after", after)?;
            }
            LawKind::Constraint { body, after } => {
                write!(f, "constraint {body}")?;
                write_opt(f, "after", after)?;
            }
            LawKind::Default { head, cond, after } => {
                write!(f, "default {head}")?;
                write_opt(f, "if", cond)?;
                write_opt(f, "after", after)?;
            }
            LawKind::Inertial(cs) => {
                f.write_str("inertial ")?;
                write_list(f, cs)?;
            }
            LawKind::Exogenous(cs) => {
                f.write_str("exogenous ")?;
                write_list(f, cs)?;
            }
            LawKind::Causes {
                action,
                effect,
                cond,
            } => {
                write!(f, "{action} causes {effect}")?;
                write_opt(f, "if", cond)?;
            }
            LawKind::Nonexecutable { action, cond } => {
                write!(f, "nonexecutable {action}")?;
                write_opt(f, "if", cond)?;
            }
            LawKind::Always(body) => write!(f, "always {body}")?,
        }
        write_opt(f, "where", &self.where_clause)?;
        f.write_str(".")
    }
}

impl fmt::Display for ActionDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sorts {
            if s.supersorts.is_empty() {
                writeln!(f, ":- sorts {}.", s.name)?;
            }
            for p in &s.supersorts {
                writeln!(f, ":- sorts {p} >> {}.", s.name)?;
            }
        }
        for s in &self.sorts {
            if !s.objects.is_empty() {
                writeln!(f, ":- objects {} :: {}.", s.objects.join(", "), s.name)?;
            }
        }
        for c in &self.constants {
            let head = if c.arg_sorts.is_empty() {
                c.name.clone()
            } else {
                format!("{}({})", c.name, c.arg_sorts.join(","))
            };
            writeln!(
                f,
                ":- constants {head} :: {}({}).",
                c.kind.keyword(),
                c.value_sort
            )?;
        }
        for v in &self.variables {
            writeln!(f, ":- variables {} :: {}.", v.name, v.sort)?;
        }
        for l in &self.laws {
            writeln!(f, "{l}")?;
        }
        for q in &self.queries {
            write!(f, ":- query label :: {}; maxstep :: {}", q.label, q.maxstep)?;
            for (t, c) in &q.constraints {
                write!(f, "; {t}: {c}")?;
            }
            writeln!(f, ".")?;
        }
        Ok(())
    }
}
