//! Text serialization of translated programs.
//!
//! The native format is lossless and can be read back with
//! [`import_native`]. The `asp-normal` flavor writes the normal-rule
//! fragment in conventional ASP syntax; [`read_asp_normal`] reads it back.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::ground::LawOrigin;
use crate::mvpf::{ConstId, Formula, MvConstant, MvSignature, ValueId};
use crate::prop::{
    Head, IncrementalProgram, PropAtom, PropFormula, PropProgram, PropRule, Rule, RuleKind,
    RuleTag, TemplateAtom, TimeRef, TimedConstant,
};
use crate::syntax::ConstKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExportError {
    #[error("rule {rule} is outside the normal fragment: {text}")]
    OutsideNormalFragment { rule: usize, text: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Native,
    AspNormal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExportProfile {
    pub flavor: Flavor,
    pub include_uec: bool,
}

impl ExportProfile {
    pub fn native() -> Self {
        ExportProfile {
            flavor: Flavor::Native,
            include_uec: true,
        }
    }

    pub fn asp_normal() -> Self {
        ExportProfile {
            flavor: Flavor::AspNormal,
            include_uec: true,
        }
    }
}

/// Either kind of program, as read back from a native file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Program {
    Prop(PropProgram),
    Incremental(IncrementalProgram),
}

pub const MAGIC: &str = "% cplus2asp native 1";

// ---------------------------------------------------------------- native

fn write_signature(out: &mut String, sig: &MvSignature) {
    let values: Vec<&str> = (0..sig.values.len() as u32)
        .map(|i| sig.values.name(ValueId(i)))
        .collect();
    writeln!(out, "values {}", values.join(" ")).unwrap();
    for c in &sig.constants {
        let kind = c.kind.map_or("-", ConstKind::keyword);
        let step = c.step.map_or("-".to_string(), |s| s.to_string());
        let domain: Vec<&str> = c.domain.iter().map(|&v| sig.values.name(v)).collect();
        writeln!(
            out,
            "constant {kind} {step} {} : {}",
            c.name,
            domain.join(" ")
        )
        .unwrap();
    }
}

fn write_formula<A>(out: &mut String, f: &Formula<A>, atom: &dyn Fn(&A) -> String) {
    match f {
        Formula::Atom(a) => out.push_str(&atom(a)),
        Formula::Bot => out.push_str("false"),
        Formula::Not(g) => {
            out.push_str("not ");
            write_formula(out, g, atom);
        }
        Formula::And(gs) | Formula::Or(gs) => {
            let op = if matches!(f, Formula::And(_)) {
                "&"
            } else {
                "|"
            };
            out.push('(');
            if gs.len() < 2 {
                out.push_str(op);
                if gs.len() == 1 {
                    out.push(' ');
                }
            }
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    write!(out, " {op} ").unwrap();
                }
                write_formula(out, g, atom);
            }
            out.push(')');
        }
        Formula::Implies(g, h) => {
            out.push('(');
            write_formula(out, g, atom);
            out.push_str(" -> ");
            write_formula(out, h, atom);
            out.push(')');
        }
    }
}

fn write_rule<A>(out: &mut String, r: &Rule<A>, atom: &dyn Fn(&A) -> String) {
    write!(out, "[{}] ", r.tag).unwrap();
    match &r.head {
        Head::Bot => out.push_str("false"),
        Head::Atom(a) => out.push_str(&atom(a)),
        Head::Formula(f) => {
            out.push('{');
            write_formula(out, f, atom);
            out.push('}');
        }
    }
    out.push_str(" <- ");
    write_formula(out, &r.body, atom);
    out.push_str(".\n");
}

fn prop_name<'a>(sig: &'a MvSignature) -> impl Fn(&PropAtom) -> String + 'a {
    move |a| {
        format!(
            "{}:{}={}",
            a.step,
            sig.constant(a.constant).name,
            sig.values.name(a.value)
        )
    }
}

fn template_name<'a>(sig: &'a MvSignature) -> impl Fn(&TemplateAtom) -> String + 'a {
    move |a| {
        format!(
            "{}:{}={}",
            a.time,
            sig.constant(a.constant).name,
            sig.values.name(a.value)
        )
    }
}

fn keep(profile: &ExportProfile, tag: &RuleTag) -> bool {
    profile.include_uec || !tag.kind.is_uec()
}

fn native_prop(p: &PropProgram, profile: &ExportProfile) -> String {
    let mut out = format!("{MAGIC}\nprogram flat\n");
    write_signature(&mut out, &p.base);
    for tc in &p.constants {
        writeln!(out, "timed {}:{}", tc.step, p.base.constant(tc.base).name).unwrap();
    }
    out.push_str("section rules\n");
    let name = prop_name(&p.base);
    for r in p.rules.iter().filter(|r| keep(profile, &r.tag)) {
        write_rule(&mut out, r, &name);
    }
    out
}

fn native_incremental(ip: &IncrementalProgram, profile: &ExportProfile) -> String {
    let mut out = format!("{MAGIC}\nprogram incremental\n");
    writeln!(out, "query {}", ip.query).unwrap();
    let max = ip.max_step.map_or("-".to_string(), |m| m.to_string());
    writeln!(out, "steps {} {max}", ip.min_step).unwrap();
    write_signature(&mut out, &ip.base_signature);
    let prop = prop_name(&ip.base_signature);
    let template = template_name(&ip.base_signature);
    out.push_str("section base\n");
    for r in ip.base.iter().filter(|r| keep(profile, &r.tag)) {
        write_rule(&mut out, r, &prop);
    }
    out.push_str("section cumulative\n");
    for r in ip.cumulative.iter().filter(|r| keep(profile, &r.tag)) {
        write_rule(&mut out, r, &template);
    }
    out.push_str("section volatile\n");
    for r in &ip.volatile {
        write_rule(&mut out, r, &template);
    }
    out
}

// ------------------------------------------------------------ asp-normal

/// Collision-free ASP identifiers for atoms.
struct Names {
    by_key: HashMap<(ConstId, ValueId), String>,
}

fn sanitize(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch.to_ascii_lowercase());
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    let out = out.trim_matches('_').to_string();
    if out.starts_with(|c: char| c.is_ascii_lowercase()) {
        out
    } else {
        format!("c_{out}")
    }
}

impl Names {
    fn new(sig: &MvSignature) -> Self {
        let mut by_key = HashMap::new();
        let mut used = HashSet::new();
        for c in sig.ids() {
            let constant = sig.constant(c);
            for &v in &constant.domain {
                let stem = sanitize(&format!("{}_{}", constant.name, sig.values.name(v)));
                let mut name = stem.clone();
                let mut k = 1;
                while !used.insert(name.clone()) {
                    k += 1;
                    name = format!("{stem}_v{k}");
                }
                by_key.insert((c, v), name);
            }
        }
        Names { by_key }
    }

    fn prop(&self, a: &PropAtom) -> String {
        format!("{}_{}", self.by_key[&(a.constant, a.value)], a.step)
    }

    fn template(&self, a: &TemplateAtom) -> String {
        let stem = &self.by_key[&(a.constant, a.value)];
        match a.time {
            TimeRef::At(n) => format!("{stem}_{n}"),
            TimeRef::T(0) => format!("{stem}(t)"),
            TimeRef::T(o) if o < 0 => format!("{stem}(t-{})", -o),
            TimeRef::T(o) => format!("{stem}(t+{o})"),
        }
    }
}

/// Upper bound on the disjuncts a body may expand to.
const MAX_TERMS: usize = 256;

type Term<A> = Vec<(u8, A)>;

fn product<T: Clone>(left: Vec<Vec<T>>, right: Vec<Vec<T>>) -> Option<Vec<Vec<T>>> {
    if left.len() * right.len() > MAX_TERMS {
        return None;
    }
    Some(
        left.iter()
            .flat_map(|l| {
                right
                    .iter()
                    .map(move |r| l.iter().chain(r).cloned().collect())
            })
            .collect(),
    )
}

/// Classical DNF of `f` (or of its negation when `positive` is false).
fn classical<A: Clone>(f: &Formula<A>, positive: bool) -> Option<Vec<Vec<(A, bool)>>> {
    let conj = |gs: &[Formula<A>], pos: bool| {
        gs.iter()
            .try_fold(vec![vec![]], |acc, g| product(acc, classical(g, pos)?))
    };
    let disj = |gs: &[&Formula<A>], pos: &[bool]| {
        let mut out = Vec::new();
        for (g, &p) in gs.iter().zip(pos) {
            out.extend(classical(g, p)?);
        }
        (out.len() <= MAX_TERMS).then_some(out)
    };
    match (f, positive) {
        (Formula::Atom(a), p) => Some(vec![vec![(a.clone(), p)]]),
        (Formula::Bot, true) => Some(vec![]),
        (Formula::Bot, false) => Some(vec![vec![]]),
        (Formula::Not(g), p) => classical(g, !p),
        (Formula::And(gs), true) | (Formula::Or(gs), false) => conj(gs, positive),
        (Formula::Or(gs), true) | (Formula::And(gs), false) => {
            let refs: Vec<&Formula<A>> = gs.iter().collect();
            disj(&refs, &vec![positive; gs.len()])
        }
        (Formula::Implies(g, h), true) => disj(&[g, h], &[false, true]),
        (Formula::Implies(g, h), false) => product(classical(g, true)?, classical(h, false)?),
    }
}

/// The body as a disjunction of conjunctions of literals, each an atom
/// under zero, one or two negations. Subformulas under a negation depend
/// only on the candidate model, so they are rewritten classically; an
/// implication outside any negation leaves the fragment (`None`).
fn normal_body<A: Clone>(f: &Formula<A>) -> Option<Vec<Term<A>>> {
    match f {
        Formula::Atom(a) => Some(vec![vec![(0, a.clone())]]),
        Formula::Bot => Some(vec![]),
        Formula::And(gs) => gs
            .iter()
            .try_fold(vec![vec![]], |acc, g| product(acc, normal_body(g)?)),
        Formula::Or(gs) => {
            let mut out = Vec::new();
            for g in gs {
                out.extend(normal_body(g)?);
            }
            (out.len() <= MAX_TERMS).then_some(out)
        }
        Formula::Not(g) => Some(
            classical(g, false)?
                .into_iter()
                .map(|t| {
                    t.into_iter()
                        .map(|(a, pos)| (if pos { 2 } else { 1 }, a))
                        .collect()
                })
                .collect(),
        ),
        Formula::Implies(..) => None,
    }
}

/// Drops duplicate literals; `None` if the term contains `a` and `not a`.
fn clean<A: Clone + PartialEq>(term: Term<A>) -> Option<Term<A>> {
    let mut out: Term<A> = Vec::new();
    for (neg, a) in term {
        let clash = out.iter().any(|(n, b)| *b == a && (*n == 1) != (neg == 1));
        if clash {
            return None;
        }
        if !out.iter().any(|(n, b)| *b == a && *n == neg) {
            out.push((neg, a));
        }
    }
    Some(out)
}

fn asp_rule<A: Clone + PartialEq>(
    out: &mut String,
    index: usize,
    r: &Rule<A>,
    atom: &dyn Fn(&A) -> String,
) -> Result<(), ExportError> {
    let outside = || ExportError::OutsideNormalFragment {
        rule: index,
        text: crate::prop::rule_text(r, atom),
    };
    let head = match &r.head {
        Head::Bot => None,
        Head::Atom(a) => Some(atom(a)),
        Head::Formula(_) => return Err(outside()),
    };
    let terms = normal_body(&r.body.simplify()).ok_or_else(outside)?;
    for term in terms.into_iter().filter_map(clean) {
        let lits: Vec<String> = term
            .iter()
            .map(|(neg, a)| match (neg, head.is_none()) {
                // In a constraint `not not a` and `a` agree.
                (0, _) | (2, true) => atom(a),
                (1, _) => format!("not {}", atom(a)),
                _ => format!("not not {}", atom(a)),
            })
            .collect();
        match (&head, lits.is_empty()) {
            (Some(h), true) => writeln!(out, "{h}."),
            (Some(h), false) => writeln!(out, "{h} :- {}.", lits.join(", ")),
            (None, true) => writeln!(out, ":- #true."),
            (None, false) => writeln!(out, ":- {}.", lits.join(", ")),
        }
        .unwrap();
    }
    Ok(())
}

fn asp_prop(p: &PropProgram, profile: &ExportProfile) -> Result<String, ExportError> {
    let names = Names::new(&p.base);
    let mut out = String::new();
    let plain = prop_name(&p.base);
    for a in p.atoms() {
        writeln!(out, "% {} = {}", names.prop(&a), plain(&a)).unwrap();
    }
    let name = |a: &PropAtom| names.prop(a);
    for (i, r) in p
        .rules
        .iter()
        .enumerate()
        .filter(|(_, r)| keep(profile, &r.tag))
    {
        asp_rule(&mut out, i, r, &name)?;
    }
    Ok(out)
}

fn asp_incremental(
    ip: &IncrementalProgram,
    profile: &ExportProfile,
) -> Result<String, ExportError> {
    let names = Names::new(&ip.base_signature);
    let mut out = String::new();
    let sig = &ip.base_signature;
    for c in sig.ids() {
        for &v in &sig.constant(c).domain {
            writeln!(
                out,
                "% {} = {}={}",
                names.by_key[&(c, v)],
                sig.constant(c).name,
                sig.values.name(v)
            )
            .unwrap();
        }
    }
    out.push_str("% section base\n");
    let prop = |a: &PropAtom| names.prop(a);
    let template = |a: &TemplateAtom| names.template(a);
    let mut index = 0;
    for r in &ip.base {
        if keep(profile, &r.tag) {
            asp_rule(&mut out, index, r, &prop)?;
        }
        index += 1;
    }
    out.push_str("% section cumulative\n");
    for r in &ip.cumulative {
        if keep(profile, &r.tag) {
            asp_rule(&mut out, index, r, &template)?;
        }
        index += 1;
    }
    out.push_str("% section volatile\n");
    for r in &ip.volatile {
        asp_rule(&mut out, index, r, &template)?;
        index += 1;
    }
    Ok(out)
}

pub fn export_prop(p: &PropProgram, profile: &ExportProfile) -> Result<String, ExportError> {
    match profile.flavor {
        Flavor::Native => Ok(native_prop(p, profile)),
        Flavor::AspNormal => asp_prop(p, profile),
    }
}

pub fn export_incremental(
    ip: &IncrementalProgram,
    profile: &ExportProfile,
) -> Result<String, ExportError> {
    match profile.flavor {
        Flavor::Native => Ok(native_incremental(ip, profile)),
        Flavor::AspNormal => asp_incremental(ip, profile),
    }
}

pub fn export_program(p: &Program, profile: &ExportProfile) -> Result<String, ExportError> {
    match p {
        Program::Prop(p) => export_prop(p, profile),
        Program::Incremental(ip) => export_incremental(ip, profile),
    }
}

// ---------------------------------------------------------------- import

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    /// An atom `time:name=value`; parentheses in the name may contain
    /// anything but stay balanced.
    fn atom_text(&mut self) -> Option<(&'a str, &'a str, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let colon = self.rest().find(':')?;
        let time = &self.s[start..start + colon];
        self.pos += colon + 1;
        let name_start = self.pos;
        let mut depth = 0i32;
        loop {
            let ch = self.rest().chars().next()?;
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '=' if depth == 0 => break,
                ' ' if depth == 0 => return None,
                _ => {}
            }
            self.pos += ch.len_utf8();
        }
        let name = &self.s[name_start..self.pos];
        self.pos += 1;
        let value_start = self.pos;
        let mut depth = 0i32;
        while let Some(ch) = self.rest().chars().next() {
            match ch {
                '(' => depth += 1,
                ')' if depth == 0 => break,
                ')' => depth -= 1,
                ' ' | '}' if depth == 0 => break,
                _ => {}
            }
            self.pos += ch.len_utf8();
        }
        let value = &self.s[value_start..self.pos];
        (!time.is_empty() && !name.is_empty() && !value.is_empty()).then_some((time, name, value))
    }
}

fn parse_formula<A>(
    c: &mut Cursor,
    atom: &dyn Fn(&str, &str, &str) -> Option<A>,
) -> Option<Formula<A>> {
    c.skip_ws();
    if c.eat("false") {
        return Some(Formula::Bot);
    }
    if c.eat("not ") {
        return Some(Formula::not(parse_formula(c, atom)?));
    }
    if c.eat("(") {
        if c.eat(")") {
            return None;
        }
        for (op, empty) in [("&", true), ("|", false)] {
            if c.rest().starts_with(&format!("{op})")) || c.rest().starts_with(&format!("{op} ")) {
                c.pos += 1;
                let parts = if c.eat(")") {
                    Vec::new()
                } else {
                    let g = parse_formula(c, atom)?;
                    c.eat(")").then_some(())?;
                    vec![g]
                };
                return Some(if empty {
                    Formula::And(parts)
                } else {
                    Formula::Or(parts)
                });
            }
        }
        let first = parse_formula(c, atom)?;
        if c.eat("->") {
            let second = parse_formula(c, atom)?;
            c.eat(")").then_some(())?;
            return Some(Formula::implies(first, second));
        }
        let mut parts = vec![first];
        let op = if c.eat("&") {
            "&"
        } else if c.eat("|") {
            "|"
        } else {
            return None;
        };
        loop {
            parts.push(parse_formula(c, atom)?);
            if c.eat(")") {
                break;
            }
            c.eat(op).then_some(())?;
        }
        return Some(if op == "&" {
            Formula::And(parts)
        } else {
            Formula::Or(parts)
        });
    }
    let (time, name, value) = c.atom_text()?;
    atom(time, name, value).map(Formula::Atom)
}

fn parse_tag(s: &str) -> Option<RuleTag> {
    let (kind, rest) = s.split_once('@')?;
    let kind = RuleKind::from_name(kind)?;
    let (step, origin) = match rest.split_once('#') {
        None => (rest, None),
        Some((step, o)) => {
            let origin = if let Some(n) = o.strip_prefix("law") {
                LawOrigin::Law(n.parse().ok()?)
            } else {
                LawOrigin::Declaration(o.strip_prefix("decl")?.parse().ok()?)
            };
            (step, Some(origin))
        }
    };
    Some(RuleTag {
        kind,
        origin,
        step: step.parse().ok()?,
    })
}

fn parse_rule<A>(line: &str, atom: &dyn Fn(&str, &str, &str) -> Option<A>) -> Option<Rule<A>> {
    let line = line.strip_suffix('.')?;
    let rest = line.strip_prefix('[')?;
    let (tag, rest) = rest.split_once("] ")?;
    let tag = parse_tag(tag)?;
    let (head, body) = rest.split_once(" <- ")?;
    let head = if head == "false" {
        Head::Bot
    } else if let Some(f) = head.strip_prefix('{').and_then(|h| h.strip_suffix('}')) {
        let mut c = Cursor { s: f, pos: 0 };
        let f = parse_formula(&mut c, atom)?;
        (c.pos == c.s.len()).then_some(())?;
        Head::Formula(f)
    } else {
        let mut c = Cursor { s: head, pos: 0 };
        let (t, n, v) = c.atom_text()?;
        (c.pos == head.len()).then_some(())?;
        Head::Atom(atom(t, n, v)?)
    };
    let mut c = Cursor { s: body, pos: 0 };
    let body = parse_formula(&mut c, atom)?;
    (c.pos == c.s.len()).then_some(())?;
    Some(Rule { head, body, tag })
}

fn parse_time(s: &str) -> Option<TimeRef> {
    if s == "t" {
        return Some(TimeRef::T(0));
    }
    if let Some(o) = s.strip_prefix("t-") {
        return Some(TimeRef::T(-o.parse::<i32>().ok()?));
    }
    if let Some(o) = s.strip_prefix("t+") {
        return Some(TimeRef::T(o.parse().ok()?));
    }
    Some(TimeRef::At(s.parse().ok()?))
}

struct Lookup {
    constants: HashMap<String, ConstId>,
}

impl Lookup {
    fn new(sig: &MvSignature) -> Self {
        Lookup {
            constants: sig
                .ids()
                .map(|c| (sig.constant(c).name.clone(), c))
                .collect(),
        }
    }

    fn atom(&self, sig: &MvSignature, name: &str, value: &str) -> Option<(ConstId, ValueId)> {
        let c = *self.constants.get(name)?;
        let v = sig.values.get(value)?;
        sig.constant(c).domain.contains(&v).then_some((c, v))
    }
}

/// Reads a file written by the native flavor of the exporter.
pub fn import_native(text: &str) -> Result<Program, FormatError> {
    let lines: Vec<&str> = text.lines().collect();
    let err = |line: usize, msg: &str| FormatError {
        line: line + 1,
        msg: msg.to_string(),
    };
    if lines.first() != Some(&MAGIC) {
        return Err(err(0, "not a native program file"));
    }
    let incremental = match lines.get(1) {
        Some(&"program flat") => false,
        Some(&"program incremental") => true,
        _ => return Err(err(1, "expected a program line")),
    };
    let mut i = 2;
    let mut query = String::new();
    let (mut min_step, mut max_step) = (0, None);
    if incremental {
        query = lines
            .get(i)
            .and_then(|l| l.strip_prefix("query "))
            .ok_or_else(|| err(i, "expected the query label"))?
            .to_string();
        i += 1;
        let steps: Vec<&str> = lines
            .get(i)
            .and_then(|l| l.strip_prefix("steps "))
            .ok_or_else(|| err(i, "expected the step range"))?
            .split(' ')
            .collect();
        let [min, max] = steps[..] else {
            return Err(err(i, "expected two steps"));
        };
        min_step = min.parse().map_err(|_| err(i, "bad minimum step"))?;
        max_step = if max == "-" {
            None
        } else {
            Some(max.parse().map_err(|_| err(i, "bad maximum step"))?)
        };
        i += 1;
    }
    let mut sig = MvSignature::new();
    let values = lines
        .get(i)
        .and_then(|l| l.strip_prefix("values"))
        .ok_or_else(|| err(i, "expected the value table"))?;
    for v in values.split(' ').filter(|v| !v.is_empty()) {
        sig.values.intern(v);
    }
    i += 1;
    while let Some(l) = lines.get(i).and_then(|l| l.strip_prefix("constant ")) {
        let (left, domain) = l
            .split_once(" : ")
            .ok_or_else(|| err(i, "expected ` : ` in a constant line"))?;
        let mut parts = left.splitn(3, ' ');
        let (Some(kind), Some(step), Some(name)) = (parts.next(), parts.next(), parts.next())
        else {
            return Err(err(i, "malformed constant line"));
        };
        let kind = match kind {
            "-" => None,
            k => Some(ConstKind::from_keyword(k).ok_or_else(|| err(i, "unknown constant kind"))?),
        };
        let step = match step {
            "-" => None,
            s => Some(s.parse().map_err(|_| err(i, "bad constant step"))?),
        };
        let domain = domain
            .split(' ')
            .map(|v| {
                sig.values
                    .get(v)
                    .ok_or_else(|| err(i, "value missing from the table"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        sig.push(MvConstant {
            name: name.to_string(),
            domain,
            step,
            kind,
        });
        i += 1;
    }
    let lookup = Lookup::new(&sig);
    let mut constants = Vec::new();
    while let Some(l) = lines.get(i).and_then(|l| l.strip_prefix("timed ")) {
        let (step, name) = l
            .split_once(':')
            .ok_or_else(|| err(i, "malformed timed constant"))?;
        let step = step.parse().map_err(|_| err(i, "bad step"))?;
        let base = *lookup
            .constants
            .get(name)
            .ok_or_else(|| err(i, "unknown constant"))?;
        constants.push(TimedConstant { step, base });
        i += 1;
    }
    let prop_atom = |t: &str, n: &str, v: &str| {
        let (c, v) = lookup.atom(&sig, n, v)?;
        Some(PropAtom::new(t.parse().ok()?, c, v))
    };
    let template_atom = |t: &str, n: &str, v: &str| {
        let (constant, value) = lookup.atom(&sig, n, v)?;
        Some(TemplateAtom {
            time: parse_time(t)?,
            constant,
            value,
        })
    };
    let sections: &[&str] = if incremental {
        &["base", "cumulative", "volatile"]
    } else {
        &["rules"]
    };
    let mut prop_sections: Vec<Vec<PropRule>> = Vec::new();
    let mut template_sections: Vec<Vec<Rule<TemplateAtom>>> = Vec::new();
    for (k, section) in sections.iter().enumerate() {
        if lines.get(i) != Some(&format!("section {section}").as_str()) {
            return Err(err(i, &format!("expected section {section}")));
        }
        i += 1;
        let mut props = Vec::new();
        let mut templates = Vec::new();
        while let Some(l) = lines.get(i).filter(|l| !l.starts_with("section ")) {
            if k == 0 {
                props.push(parse_rule(l, &prop_atom).ok_or_else(|| err(i, "malformed rule"))?);
            } else {
                templates
                    .push(parse_rule(l, &template_atom).ok_or_else(|| err(i, "malformed rule"))?);
            }
            i += 1;
        }
        prop_sections.push(props);
        template_sections.push(templates);
    }
    if i != lines.len() {
        return Err(err(i, "trailing content"));
    }
    if !text.ends_with('\n') {
        return Err(err(lines.len().saturating_sub(1), "truncated file"));
    }
    let mut props = prop_sections.into_iter();
    let base_rules = props.next().unwrap_or_default();
    Ok(if incremental {
        let mut templates = template_sections.into_iter().skip(1);
        Program::Incremental(IncrementalProgram {
            base_signature: sig,
            query,
            min_step,
            max_step,
            base: base_rules,
            cumulative: templates.next().unwrap_or_default(),
            volatile: templates.next().unwrap_or_default(),
        })
    } else {
        Program::Prop(PropProgram {
            base: sig,
            constants,
            rules: base_rules,
        })
    })
}

/// Reads the `asp-normal` export of a flat program back, resolving names
/// through its mapping comments.
pub fn read_asp_normal(text: &str, base: &MvSignature) -> Result<PropProgram, FormatError> {
    let lookup = Lookup::new(base);
    let mut atoms: HashMap<String, PropAtom> = HashMap::new();
    let mut rules = Vec::new();
    let err = |line: usize, msg: &str| FormatError {
        line: line + 1,
        msg: msg.to_string(),
    };
    for (i, line) in text.lines().enumerate() {
        if let Some(map) = line.strip_prefix("% ") {
            let Some((asp, plain)) = map.split_once(" = ") else {
                continue;
            };
            let mut c = Cursor { s: plain, pos: 0 };
            let (t, n, v) = c.atom_text().ok_or_else(|| err(i, "malformed mapping"))?;
            let (constant, value) = lookup
                .atom(base, n, v)
                .ok_or_else(|| err(i, "unknown atom"))?;
            let step = t.parse().map_err(|_| err(i, "bad step"))?;
            atoms.insert(asp.to_string(), PropAtom::new(step, constant, value));
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let line = line
            .strip_suffix('.')
            .ok_or_else(|| err(i, "missing period"))?;
        let (head, body) = match line.split_once(":-") {
            Some((h, b)) => (h.trim(), b.trim()),
            None => (line.trim(), ""),
        };
        let lookup_atom = |s: &str| {
            atoms
                .get(s)
                .copied()
                .ok_or_else(|| err(i, &format!("unknown atom {s}")))
        };
        let head = if head.is_empty() {
            None
        } else {
            Some(lookup_atom(head)?)
        };
        let mut lits = Vec::new();
        if body != "#true" {
            for lit in body.split(", ").filter(|l| !l.is_empty()) {
                let (neg, name) = if let Some(n) = lit.strip_prefix("not not ") {
                    (2, n)
                } else if let Some(n) = lit.strip_prefix("not ") {
                    (1, n)
                } else {
                    (0, lit)
                };
                let mut f = Formula::Atom(lookup_atom(name)?);
                for _ in 0..neg {
                    f = Formula::not(f);
                }
                lits.push(f);
            }
        }
        let body = if lits.len() == 1 {
            lits.pop().unwrap()
        } else if lits.is_empty() {
            Formula::top()
        } else {
            Formula::And(lits)
        };
        rules.push(Rule::new(head, body, RuleTag::new(RuleKind::Formula, 0)));
    }
    let mut by_constant: BTreeMap<(u32, ConstId), ()> = BTreeMap::new();
    for a in atoms.values() {
        by_constant.insert((a.step, a.constant), ());
    }
    let constants = by_constant
        .into_keys()
        .map(|(step, base)| TimedConstant { step, base })
        .collect();
    Ok(PropProgram {
        base: base.clone(),
        constants,
        rules,
    })
}

/// Formats a formula for a rule body in the native syntax.
pub fn native_formula(f: &PropFormula, sig: &MvSignature) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, &prop_name(sig));
    out
}

#[cfg(test)]
mod tests;
