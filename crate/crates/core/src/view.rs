//! Stable models as readable, time-stamped transitions.

use std::fmt::Write as _;

use thiserror::Error;

use crate::mvpf::{ConstId, MvSignature, ValueId};
use crate::prop::PropAtom;
use crate::solve::StableModel;
use crate::syntax::ConstKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ViewError {
    #[error("{constant} has {count} values at step {step}")]
    NonFunctionalModel {
        constant: String,
        step: u32,
        count: usize,
    },
    #[error("atom {0} is outside the horizon")]
    OutsideHorizon(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViewStep {
    pub index: u32,
    pub fluents: Vec<(ConstId, ValueId)>,
    /// Actions executed between this step and the next.
    pub actions: Vec<(ConstId, ValueId)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanView {
    pub query: String,
    pub horizon: u32,
    pub steps: Vec<ViewStep>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    pub hide_false: bool,
    pub hide_inertial: bool,
}

impl RenderOptions {
    /// What the command line prints unless asked otherwise.
    pub fn display() -> Self {
        RenderOptions {
            hide_false: true,
            hide_inertial: false,
        }
    }
}

fn kind(sig: &MvSignature, c: ConstId) -> ConstKind {
    sig.constant(c).kind.unwrap_or(ConstKind::SimpleFluent)
}

/// Groups the atoms of `m` by step. `sig` is the untimed signature.
pub fn to_plan_view(
    m: &StableModel,
    sig: &MvSignature,
    horizon: u32,
    query: &str,
) -> Result<PlanView, ViewError> {
    let mut by_name: Vec<ConstId> = sig.ids().collect();
    by_name.sort_by(|&a, &b| sig.constant(a).name.cmp(&sig.constant(b).name));
    let name = |a: &PropAtom| crate::prop::atom_name(sig, a);
    let mut cells: Vec<Vec<Vec<ValueId>>> = vec![vec![Vec::new(); sig.len()]; horizon as usize + 1];
    for a in &m.atoms {
        let is_action = kind(sig, a.constant) == ConstKind::Action;
        if a.step > horizon || (is_action && a.step == horizon) {
            return Err(ViewError::OutsideHorizon(name(a)));
        }
        cells[a.step as usize][a.constant.index()].push(a.value);
    }
    let mut steps = Vec::new();
    for index in 0..=horizon {
        let mut step = ViewStep {
            index,
            fluents: Vec::new(),
            actions: Vec::new(),
        };
        for &c in &by_name {
            let is_action = kind(sig, c) == ConstKind::Action;
            if is_action && index == horizon {
                continue;
            }
            let values = &cells[index as usize][c.index()];
            if values.len() != 1 {
                return Err(ViewError::NonFunctionalModel {
                    constant: sig.constant(c).name.clone(),
                    step: index,
                    count: values.len(),
                });
            }
            let cell = (c, values[0]);
            if is_action {
                step.actions.push(cell);
            } else {
                step.fluents.push(cell);
            }
        }
        steps.push(step);
    }
    Ok(PlanView {
        query: query.to_string(),
        horizon,
        steps,
    })
}

fn is_boolean(sig: &MvSignature, c: ConstId) -> bool {
    let d = &sig.constant(c).domain;
    d.len() == 2
        && d.iter()
            .all(|&v| matches!(sig.values.name(v), "true" | "false"))
}

/// `p`, `-p` or `c=v`; `None` when hidden.
fn cell_text(sig: &MvSignature, (c, v): (ConstId, ValueId), hide_false: bool) -> Option<String> {
    let name = &sig.constant(c).name;
    let value = sig.values.name(v);
    if !is_boolean(sig, c) {
        return Some(format!("{name}={value}"));
    }
    match value {
        "true" => Some(name.clone()),
        _ if hide_false => None,
        _ => Some(format!("-{name}")),
    }
}

pub fn render_plan_view(v: &PlanView, sig: &MvSignature, opts: RenderOptions) -> String {
    let mut out = String::new();
    let mut previous: Option<&ViewStep> = None;
    for step in &v.steps {
        let fluents: Vec<String> = step
            .fluents
            .iter()
            .filter(|cell| {
                !(opts.hide_inertial && previous.is_some_and(|p| p.fluents.contains(cell)))
            })
            .filter_map(|&cell| cell_text(sig, cell, opts.hide_false))
            .collect();
        let mut line = format!("{}:", step.index);
        for f in &fluents {
            write!(line, " {f}").unwrap();
        }
        out.push_str(&line);
        out.push('\n');
        let actions: Vec<String> = step
            .actions
            .iter()
            .filter_map(|&cell| cell_text(sig, cell, opts.hide_false))
            .collect();
        if !actions.is_empty() {
            writeln!(out, "  actions: {}", actions.join(" ")).unwrap();
        }
        previous = Some(step);
    }
    out
}
