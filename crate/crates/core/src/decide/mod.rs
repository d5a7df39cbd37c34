//! Identity satisfaction, equivalence-class windows, isoterm checks and
//! stability with respect to a monoid.

mod class;
mod engine;
mod report;
mod stable;

pub use class::{
    equivalence_class, is_isoterm, is_isoterm_bounded, power_isoterm, ClassWindow, IsotermCertificate, IsotermStatus,
    IsotermVerdict, Restriction,
};
pub use report::{verify_witness, CheckReport, CheckStatus, Witness};
pub use stable::{class_shape, l_stable_wrt, var_stable_wrt, varset_stable_wrt, Shape};

use crate::monoids::{Elt, FiniteMonoid, MonoidError};
use crate::words::{Identity, Variable, Word, WordError};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use engine::Problem;

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest number of partial assignments one satisfaction check may visit.
    pub node_cap: u64,
    /// Largest number of candidate words one class window may enumerate.
    pub space_cap: u64,
    /// Split satisfaction searches over worker threads (needs `std`).
    pub parallel: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { node_cap: 1_000_000_000, space_cap: 10_000_000, parallel: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error("satisfaction search exceeded the cap of {cap} assignments")]
    CapExceeded { cap: u64 },
    #[error("class window of {size}+ candidates exceeds the cap of {cap}")]
    SpaceCap { size: u64, cap: u64 },
    #[error("an empty side needs a monoid, not a semigroup")]
    EmptySide,
    #[error("the word must be nonempty")]
    EmptyWord,
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Values of variables as element indices.
pub type Assignment = BTreeMap<Variable, Elt>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum VerdictStatus {
    Holds,
    Fails,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub witness: Option<Assignment>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == VerdictStatus::Holds
    }
}

/// Value of a word under an assignment; `None` for the empty word in a semigroup.
pub fn evaluate(m: &FiniteMonoid, word: &Word, a: &Assignment) -> Result<Option<Elt>, DecideError> {
    let mut vals = Vec::with_capacity(word.len());
    for x in word {
        let &e = a.get(x).ok_or(WordError::UndefinedVariable(*x))?;
        if e as usize >= m.order() {
            return Err(MonoidError::InvalidElement(e).into());
        }
        vals.push(e);
    }
    Ok(m.product(vals))
}

fn to_assignment(vars: &[Variable], vals: Vec<Elt>) -> Assignment {
    vars.iter().copied().zip(vals).collect()
}

/// Whether `m` satisfies `id`. A failing verdict carries the first
/// counterexample in lexicographic order over element indices, variables
/// taken in order of first occurrence (left side, then right side). Product
/// monoids are checked factor by factor.
pub fn satisfies(m: &FiniteMonoid, id: &Identity, cfg: &Config) -> Result<Verdict, DecideError> {
    let (p, vars) = Problem::from_identity(id);
    Ok(match engine::search(m, &p, cfg)? {
        None => Verdict { status: VerdictStatus::Holds, witness: None },
        Some(vals) => Verdict { status: VerdictStatus::Fails, witness: Some(to_assignment(&vars, vals)) },
    })
}

/// [`satisfies`] on the materialized table, without factor decomposition.
pub fn satisfies_flat(m: &FiniteMonoid, id: &Identity, cfg: &Config) -> Result<Verdict, DecideError> {
    satisfies(&m.flatten()?, id, cfg)
}

pub(crate) fn holds(m: &FiniteMonoid, id: &Identity, cfg: &Config) -> Result<bool, DecideError> {
    Ok(satisfies(m, id, cfg)?.holds())
}

/// Renders an assignment with element names.
pub fn describe_assignment(m: &FiniteMonoid, a: &Assignment) -> String {
    let parts: Vec<String> = a.iter().map(|(x, &e)| alloc::format!("{x}→{}", m.name_of(e))).collect();
    parts.join(", ")
}
