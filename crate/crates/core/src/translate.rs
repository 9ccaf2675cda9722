//! Ground laws to timed multi-valued theories, multi-valued theories to
//! propositional programs, and ground laws plus a query to an incremental
//! program.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::ground::{GroundLaw, GroundLawSet, GroundQuery, LawShape};
use crate::mvpf::{
    Atom, ConstId, Formula, MvConstant, MvFormula, MvInterpretation, MvSignature, MvTheory,
};
use crate::prop::*;
use crate::syntax::{ConstKind, MaxStep, TimeExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("constant `{0}` has a single value; add a second (dummy) value to its sort")]
    SingletonDomain(String),
    #[error("query `{query}`: time {time} is outside 0..{min} (the smallest horizon)")]
    QueryStepOutOfRange {
        query: String,
        time: String,
        min: u32,
    },
    #[error("query `{query}`: action `{atom}` is constrained at or after the final step")]
    ActionOutOfRange { query: String, atom: String },
}

type Result<T> = std::result::Result<T, TranslateError>;

/// The timed signature at horizon `m`: fluents at `0..=m`, actions at
/// `0..m`, step-major in the order of `base`.
pub fn timed_signature(
    base: &MvSignature,
    m: u32,
) -> (MvSignature, HashMap<TimedConstant, ConstId>) {
    let mut sig = MvSignature {
        values: base.values.clone(),
        constants: Vec::new(),
    };
    let mut index = HashMap::new();
    for step in 0..=m {
        for c in base.ids() {
            let k = base.constant(c);
            let kind = k.kind.expect("ground constants carry a kind");
            if kind == ConstKind::Action && step == m {
                continue;
            }
            let id = sig.push(MvConstant {
                step: Some(step),
                ..k.clone()
            });
            index.insert(TimedConstant { step, base: c }, id);
        }
    }
    (sig, index)
}

fn at_step(f: &MvFormula, step: u32, index: &HashMap<TimedConstant, ConstId>) -> MvFormula {
    f.map_atoms(&mut |a| {
        Atom::new(
            index[&TimedConstant {
                step,
                base: a.constant,
            }],
            a.value,
        )
    })
}

/// The theory of `g` at horizon `m`, with one tag per formula.
pub fn cplus2mvpf_tagged(g: &GroundLawSet, m: u32) -> (MvTheory, Vec<RuleTag>) {
    let (sig, index) = timed_signature(&g.signature, m);
    let mut formulas = Vec::new();
    let mut tags = Vec::new();
    let head_at = |law: &GroundLaw, i: u32| at_step(&law.head_formula(), i, &index);
    for law in &g.laws {
        let tag = |kind, step| RuleTag {
            kind,
            origin: Some(law.origin),
            step,
        };
        match law.shape {
            LawShape::Static => {
                for i in 0..=m {
                    let body = Formula::not_not(at_step(&law.cond, i, &index));
                    formulas.push(Formula::rule(head_at(law, i), body));
                    tags.push(tag(RuleKind::Static, i));
                }
            }
            LawShape::ActionDynamic => {
                for i in 0..m {
                    let body = Formula::not_not(at_step(&law.cond, i, &index));
                    formulas.push(Formula::rule(head_at(law, i), body));
                    tags.push(tag(RuleKind::ActionDynamic, i));
                }
            }
            LawShape::FluentDynamic => {
                let after = law
                    .after
                    .as_ref()
                    .expect("fluent dynamic laws have an after part");
                for i in 1..=m {
                    let body = Formula::And(vec![
                        Formula::not_not(at_step(&law.cond, i, &index)),
                        at_step(after, i - 1, &index),
                    ]);
                    formulas.push(Formula::rule(head_at(law, i), body));
                    tags.push(tag(RuleKind::FluentDynamic, i));
                }
            }
        }
    }
    for c in g.signature.ids() {
        if g.kind(c) != ConstKind::SimpleFluent {
            continue;
        }
        for &v in &g.signature.constant(c).domain {
            let a = Formula::Atom(Atom::new(index[&TimedConstant { step: 0, base: c }], v));
            formulas.push(Formula::rule(a.clone(), Formula::not_not(a)));
            tags.push(RuleTag::new(RuleKind::InitialChoice, 0));
        }
    }
    (
        MvTheory {
            signature: sig,
            formulas,
        },
        tags,
    )
}

/// `cplus2mvpf(D, m)`.
pub fn cplus2mvpf(g: &GroundLawSet, m: u32) -> MvTheory {
    cplus2mvpf_tagged(g, m).0
}

/// Untimed constants of a timed signature, by name in order of first
/// appearance.
pub fn base_of(sig: &MvSignature) -> MvSignature {
    let mut base = MvSignature {
        values: sig.values.clone(),
        constants: Vec::new(),
    };
    let mut seen = BTreeSet::new();
    for c in &sig.constants {
        if seen.insert(c.name.clone()) {
            base.push(MvConstant {
                step: None,
                ..c.clone()
            });
        }
    }
    base
}

fn base_index(base: &MvSignature) -> HashMap<&str, ConstId> {
    base.ids()
        .map(|c| (base.constant(c).name.as_str(), c))
        .collect()
}

/// Maps each constant of a timed signature to its timed constant over `base`.
fn timed_constants(sig: &MvSignature, base: &MvSignature) -> Vec<TimedConstant> {
    let index = base_index(base);
    sig.constants
        .iter()
        .map(|c| TimedConstant {
            step: c.step.unwrap_or(0),
            base: index[c.name.as_str()],
        })
        .collect()
}

/// `I^prop`: the atoms `i:c(v)` with `I(i:c) = v`.
pub fn prop_image(
    sig: &MvSignature,
    base: &MvSignature,
    i: &MvInterpretation,
) -> BTreeSet<PropAtom> {
    let timed = timed_constants(sig, base);
    sig.ids()
        .map(|c| {
            let tc = timed[c.index()];
            PropAtom::new(tc.step, tc.base, i.value(c))
        })
        .collect()
}

/// `UEC(i:c)`: pairwise exclusion of its values and existence of one.
pub fn uec(tc: TimedConstant, base: &MvSignature) -> Vec<PropRule> {
    let dom = &base.constant(tc.base).domain;
    let atom = |v| Formula::Atom(PropAtom::new(tc.step, tc.base, v));
    let mut out = Vec::new();
    for (i, &v) in dom.iter().enumerate() {
        for &w in &dom[i + 1..] {
            let body = Formula::And(vec![atom(v), atom(w)]);
            out.push(Rule::new(
                None,
                body,
                RuleTag::new(RuleKind::Uniqueness, tc.step),
            ));
        }
    }
    let any = Formula::Or(dom.iter().map(|&v| atom(v)).collect());
    out.push(Rule::new(
        None,
        Formula::not(any),
        RuleTag::new(RuleKind::Existence, tc.step),
    ));
    out
}

fn check_domains(base: &MvSignature, constants: impl IntoIterator<Item = ConstId>) -> Result<()> {
    for c in constants {
        if base.constant(c).domain.len() < 2 {
            return Err(TranslateError::SingletonDomain(
                base.constant(c).name.clone(),
            ));
        }
    }
    Ok(())
}

/// A theory formula as a rule when it has the shape `body → atom` or
/// `body → ⊥`.
fn as_rule(f: PropFormula, tag: RuleTag) -> PropRule {
    match f {
        Formula::Implies(body, head) => match *head {
            Formula::Atom(a) => Rule::new(Some(a), *body, tag),
            Formula::Bot => Rule::new(None, *body, tag),
            head => Rule {
                head: Head::Formula(Formula::implies(*body, head)),
                body: Formula::top(),
                tag,
            },
        },
        f => Rule {
            head: Head::Formula(f),
            body: Formula::top(),
            tag,
        },
    }
}

/// `F^prop ∧ UEC_σ`, over `base` (derived from the theory if `None`).
pub fn to_prop_tagged(
    t: &MvTheory,
    tags: Option<&[RuleTag]>,
    base: Option<&MvSignature>,
) -> Result<PropProgram> {
    let base = base.cloned().unwrap_or_else(|| base_of(&t.signature));
    let timed = timed_constants(&t.signature, &base);
    check_domains(&base, timed.iter().map(|tc| tc.base))?;
    let mut rules = Vec::new();
    for (k, f) in t.formulas.iter().enumerate() {
        let g = f.map_atoms(&mut |a| {
            let tc = timed[a.constant.index()];
            PropAtom::new(tc.step, tc.base, a.value)
        });
        let tag = match tags {
            Some(tags) => tags[k],
            None => {
                let mut step = 0;
                g.for_each_atom(&mut |a| step = step.max(a.step));
                RuleTag::new(RuleKind::Formula, step)
            }
        };
        rules.push(as_rule(g, tag));
    }
    for &tc in &timed {
        rules.extend(uec(tc, &base));
    }
    Ok(PropProgram {
        base,
        constants: timed,
        rules,
    })
}

pub fn to_prop(t: &MvTheory) -> Result<PropProgram> {
    to_prop_tagged(t, None, None)
}

/// `toProp(cplus2mvpf(D, m))` with rule tags and `g`'s constant ids.
pub fn translate_static(g: &GroundLawSet, m: u32) -> Result<PropProgram> {
    let (t, tags) = cplus2mvpf_tagged(g, m);
    to_prop_tagged(&t, Some(&tags), Some(&g.signature))
}

/// The static program at horizon `k` together with the query constraint.
pub fn translate_static_query(g: &GroundLawSet, q: &GroundQuery, k: u32) -> Result<PropProgram> {
    let mut p = translate_static(g, k)?;
    let template = query_template(g, q, k)?;
    let mut rule = instantiate(&template, k);
    rule.tag.step = k;
    p.rules.push(rule);
    Ok(p)
}

/// `cplus2mvpf(D, k) ∪ {⊥ ← ¬F(k)}` as a multi-valued theory.
pub fn cplus2mvpf_query(g: &GroundLawSet, q: &GroundQuery, k: u32) -> Result<MvTheory> {
    let template = query_template(g, q, k)?;
    let (mut t, _) = cplus2mvpf_tagged(g, k);
    let (_, index) = timed_signature(&g.signature, k);
    let body = instantiate(&template, k)
        .body
        .map_atoms(&mut |a| Atom::new(index[&a.timed_constant()], a.value));
    t.formulas.push(Formula::rule(Formula::Bot, body));
    Ok(t)
}

fn time_ref(te: TimeExpr) -> TimeRef {
    match te {
        TimeExpr::At(n) => TimeRef::At(n),
        TimeExpr::MaxStep(o) => TimeRef::T(o),
    }
}

/// `Q[t]`: `⊥ ← ¬F[t]`, checked against the smallest horizon `min`.
pub fn query_template(g: &GroundLawSet, q: &GroundQuery, min: u32) -> Result<TemplateRule> {
    let mut parts = Vec::new();
    for (te, f) in &q.constraints {
        let time = time_ref(*te);
        let step = time.resolve(min);
        let in_range = match time {
            TimeRef::At(n) => n <= min,
            TimeRef::T(o) => o <= 0 && step.is_some(),
        };
        if !in_range {
            return Err(TranslateError::QueryStepOutOfRange {
                query: q.label.clone(),
                time: te.to_string(),
                min,
            });
        }
        let mut bad_action = None;
        f.for_each_atom(&mut |a| {
            if g.kind(a.constant) == ConstKind::Action && step == Some(min) && bad_action.is_none()
            {
                bad_action = Some(g.signature.atom_name(a));
            }
        });
        if let Some(atom) = bad_action {
            return Err(TranslateError::ActionOutOfRange {
                query: q.label.clone(),
                atom,
            });
        }
        parts.push(f.map_atoms(&mut |a| TemplateAtom {
            time,
            constant: a.constant,
            value: a.value,
        }));
    }
    let body = Formula::not(Formula::and(parts));
    Ok(Rule::new(None, body, RuleTag::new(RuleKind::Query, 0)))
}

/// The horizon bounds a query declares.
pub fn query_bounds(maxstep: MaxStep) -> (u32, Option<u32>) {
    match maxstep {
        MaxStep::Fixed(n) => (n, Some(n)),
        MaxStep::Range(a, b) => (a, Some(b)),
        MaxStep::Unbounded { min } => (min, None),
    }
}

fn template_at(f: &MvFormula, time: TimeRef) -> Formula<TemplateAtom> {
    f.map_atoms(&mut |a| TemplateAtom {
        time,
        constant: a.constant,
        value: a.value,
    })
}

fn uec_template(g: &GroundLawSet, c: ConstId, time: TimeRef) -> Vec<TemplateRule> {
    // Instantiated at step 0 and re-timed: UEC rules only mention one step.
    uec(TimedConstant { step: 0, base: c }, &g.signature)
        .into_iter()
        .map(|r| {
            r.map_atoms(&mut |a| TemplateAtom {
                time,
                constant: a.constant,
                value: a.value,
            })
        })
        .collect()
}

/// `⟨B, P[t], Q[t]⟩` for query `q` with horizons `min..=max`.
pub fn build_incremental(
    g: &GroundLawSet,
    q: &GroundQuery,
    min: u32,
    max: Option<u32>,
) -> Result<IncrementalProgram> {
    check_domains(&g.signature, g.signature.ids())?;
    let fluents: Vec<ConstId> = g
        .signature
        .ids()
        .filter(|&c| g.kind(c).is_fluent())
        .collect();
    let actions: Vec<ConstId> = g
        .signature
        .ids()
        .filter(|&c| g.kind(c) == ConstKind::Action)
        .collect();
    let zero = |f: &MvFormula| f.map_atoms(&mut |a| PropAtom::new(0, a.constant, a.value));

    let mut base = Vec::new();
    for &c in &fluents {
        base.extend(uec(TimedConstant { step: 0, base: c }, &g.signature));
    }
    for &c in &fluents {
        if g.kind(c) != ConstKind::SimpleFluent {
            continue;
        }
        for &v in &g.signature.constant(c).domain {
            let a = Formula::Atom(PropAtom::new(0, c, v));
            base.push(Rule::new(
                Some(PropAtom::new(0, c, v)),
                Formula::not_not(a),
                RuleTag::new(RuleKind::InitialChoice, 0),
            ));
        }
    }
    for law in g.of_shape(LawShape::Static) {
        let tag = RuleTag {
            kind: RuleKind::Static,
            origin: Some(law.origin),
            step: 0,
        };
        let head = law.head.map(|a| PropAtom::new(0, a.constant, a.value));
        base.push(Rule::new(head, Formula::not_not(zero(&law.cond)), tag));
    }

    let mut cumulative = Vec::new();
    for &c in &fluents {
        cumulative.extend(uec_template(g, c, TimeRef::T(0)));
    }
    for &c in &actions {
        cumulative.extend(uec_template(g, c, TimeRef::T(-1)));
    }
    let head_at = |law: &GroundLaw, time| {
        law.head.map(|a| TemplateAtom {
            time,
            constant: a.constant,
            value: a.value,
        })
    };
    for law in &g.laws {
        let (kind, head, body) = match law.shape {
            LawShape::Static => (
                RuleKind::Static,
                head_at(law, TimeRef::T(0)),
                Formula::not_not(template_at(&law.cond, TimeRef::T(0))),
            ),
            LawShape::ActionDynamic => (
                RuleKind::ActionDynamic,
                head_at(law, TimeRef::T(-1)),
                Formula::not_not(template_at(&law.cond, TimeRef::T(-1))),
            ),
            LawShape::FluentDynamic => {
                let after = law
                    .after
                    .as_ref()
                    .expect("fluent dynamic laws have an after part");
                let body = Formula::And(vec![
                    Formula::not_not(template_at(&law.cond, TimeRef::T(0))),
                    template_at(after, TimeRef::T(-1)),
                ]);
                (RuleKind::FluentDynamic, head_at(law, TimeRef::T(0)), body)
            }
        };
        cumulative.push(Rule::new(
            head,
            body,
            RuleTag {
                kind,
                origin: Some(law.origin),
                step: 0,
            },
        ));
    }

    let volatile = vec![query_template(g, q, min)?];
    let ip = IncrementalProgram {
        base_signature: g.signature.clone(),
        query: q.label.clone(),
        min_step: min,
        max_step: max,
        base,
        cumulative,
        volatile,
    };
    assert!(
        ip.is_acyclic(),
        "incremental program refers to future steps"
    );
    Ok(ip)
}

/// [`build_incremental`] with the horizons the query declares.
pub fn build_incremental_for(g: &GroundLawSet, q: &GroundQuery) -> Result<IncrementalProgram> {
    let (min, max) = query_bounds(q.maxstep);
    build_incremental(g, q, min, max)
}
