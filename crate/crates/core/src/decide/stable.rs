use super::class::{equivalence_class, ClassWindow};
use super::{CheckReport, CheckStatus, Config, DecideError, Witness};
use crate::monoids::FiniteMonoid;
use crate::words::{l_map, occ_set_stable, var_stable, varset_stable, Identity, OccRef, Variable, Word};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Templates a class window can be matched against.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Shape {
    /// `a^i b^j` with `i, j > 1`.
    PowerPair { a: Variable, b: Variable },
    /// `a^i b^j a^k` with `i, k > 0` and `j > 1`.
    PowerTriple { a: Variable, b: Variable },
    /// Every member with `occ(x) = occ` is the word itself.
    ExactAtOcc { x: Variable, occ: usize },
}

/// Exponents of the maximal blocks of `w`.
fn blocks(w: &Word) -> Vec<(Variable, usize)> {
    let mut out: Vec<(Variable, usize)> = Vec::new();
    for &x in w {
        match out.last_mut() {
            Some((y, n)) if *y == x => *n += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

impl Shape {
    pub fn matches(&self, u: &Word, v: &Word) -> bool {
        match *self {
            Shape::PowerPair { a, b } => {
                matches!(blocks(v)[..], [(p, i), (q, j)] if p == a && q == b && i > 1 && j > 1)
            }
            Shape::PowerTriple { a, b } => {
                matches!(blocks(v)[..], [(p, _), (q, j), (r, _)] if p == a && q == b && r == a && j > 1)
            }
            Shape::ExactAtOcc { x, occ } => v.occ(x) != occ || v == u,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Shape::PowerPair { a, b } => format!("{a}^i {b}^j with i,j > 1"),
            Shape::PowerTriple { a, b } => format!("{a}^i {b}^j {a}^k with i,k > 0, j > 1"),
            Shape::ExactAtOcc { x, occ } => format!("the word itself whenever occ({x}) = {occ}"),
        }
    }
}

fn window_report(
    hypothesis: &str,
    description: String,
    window: &ClassWindow,
    ok: impl Fn(&Word) -> bool,
) -> CheckReport {
    let bound = (!window.complete).then_some(window.bound);
    match window.members.iter().find(|v| !ok(v)) {
        Some(v) => CheckReport::new(hypothesis, description, CheckStatus::Fail)
            .with_bound(bound)
            .with_witness(Witness::Satisfied { identity: Identity::new(window.word.clone(), v.clone()) }),
        None => {
            let status = if window.complete { CheckStatus::Pass } else { CheckStatus::BoundedPass };
            CheckReport::new(hypothesis, description, status).with_bound(bound)
        }
    }
}

fn occs(xs: &BTreeSet<OccRef>) -> String {
    let parts: Vec<String> = xs.iter().map(|c| format!("{c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Whether `xs` is l-stable in every identity `u ≈ v` of `m` within the window.
pub fn l_stable_wrt(
    m: &FiniteMonoid,
    u: &Word,
    xs: &BTreeSet<OccRef>,
    bound: usize,
    cfg: &Config,
) -> Result<CheckReport, DecideError> {
    let window = equivalence_class(m, u, bound, cfg)?;
    let desc = format!("{} is l-stable in {} with respect to {}", occs(xs), u.compact(), m.name());
    Ok(window_report("l-stable", desc, &window, |v| {
        xs.is_empty() || l_map(u, v).is_ok_and(|f| occ_set_stable(&f, xs, u, v))
    }))
}

pub fn var_stable_wrt(
    m: &FiniteMonoid,
    u: &Word,
    x: Variable,
    bound: usize,
    cfg: &Config,
) -> Result<CheckReport, DecideError> {
    let window = equivalence_class(m, u, bound, cfg)?;
    let desc = format!("{x} is stable in {} with respect to {}", u.compact(), m.name());
    Ok(window_report("var-stable", desc, &window, |v| var_stable(u, v, x)))
}

pub fn varset_stable_wrt(
    m: &FiniteMonoid,
    u: &Word,
    xs: &BTreeSet<Variable>,
    bound: usize,
    cfg: &Config,
) -> Result<CheckReport, DecideError> {
    let window = equivalence_class(m, u, bound, cfg)?;
    let names: Vec<String> = xs.iter().map(|x| format!("{x}")).collect();
    let desc = format!("{{{}}} is stable in {} with respect to {}", names.join(", "), u.compact(), m.name());
    Ok(window_report("varset-stable", desc, &window, |v| varset_stable(u, v, xs)))
}

/// Whether every member of the class window of `u` fits `shape`.
pub fn class_shape(
    m: &FiniteMonoid,
    u: &Word,
    shape: &Shape,
    bound: usize,
    cfg: &Config,
) -> Result<CheckReport, DecideError> {
    let window = equivalence_class(m, u, bound, cfg)?;
    let desc = format!("every word in the class of {} under {} is {}", u.compact(), m.name(), shape.describe());
    Ok(window_report("shape", desc, &window, |v| shape.matches(u, v)))
}
