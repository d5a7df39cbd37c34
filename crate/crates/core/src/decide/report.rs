use super::{evaluate, holds, Assignment, Config, DecideError};
use crate::monoids::FiniteMonoid;
use crate::words::{Identity, Word};
use alloc::collections::BTreeMap;
use alloc::string::String;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CheckStatus {
    Pass,
    /// Passed on a window of words bounded in length.
    BoundedPass,
    Fail,
}

impl CheckStatus {
    pub fn passed(self) -> bool {
        self != CheckStatus::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::BoundedPass => "bounded-pass",
            CheckStatus::Fail => "fail",
        }
    }
}

/// Evidence that can be re-checked without the code that produced it.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum Witness {
    /// The identity fails at this assignment.
    Refutation {
        identity: Identity,
        #[cfg_attr(feature = "serde", serde(skip))]
        assignment: Assignment,
        values: BTreeMap<String, String>,
    },
    /// The identity holds in the monoid.
    Satisfied { identity: Identity },
    /// A word breaking a syntactic condition.
    Word { word: Word, reason: String },
}

impl Witness {
    pub fn refutation(m: &FiniteMonoid, identity: Identity, assignment: Assignment) -> Self {
        let values = assignment.iter().map(|(x, &e)| (alloc::format!("{x}"), m.name_of(e))).collect();
        Witness::Refutation { identity, assignment, values }
    }
}

impl core::fmt::Display for Witness {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Witness::Refutation { identity, values, .. } => {
                write!(f, "{identity} fails at ")?;
                for (i, (x, e)) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}→{e}")?;
                }
                Ok(())
            }
            Witness::Satisfied { identity } => write!(f, "{identity} holds"),
            Witness::Word { word, reason } => write!(f, "{word}: {reason}"),
        }
    }
}

/// Re-checks a witness against `m`. Word witnesses are syntactic and
/// verified by their producer.
pub fn verify_witness(m: &FiniteMonoid, w: &Witness, cfg: &Config) -> Result<bool, DecideError> {
    match w {
        Witness::Refutation { identity, assignment, .. } => {
            Ok(evaluate(m, &identity.lhs, assignment)? != evaluate(m, &identity.rhs, assignment)?)
        }
        Witness::Satisfied { identity } => holds(m, identity, cfg),
        Witness::Word { .. } => Ok(true),
    }
}

/// Verdict on one hypothesis instance.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckReport {
    /// Hypothesis label such as `i` or `iii`.
    pub hypothesis: String,
    pub description: String,
    pub status: CheckStatus,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub bound: Option<usize>,
    /// Why the check failed.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub witness: Option<Witness>,
    /// Supporting evidence for a pass, when the check asks for a failure.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub evidence: Option<Witness>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(hypothesis: &str, description: String, status: CheckStatus) -> Self {
        CheckReport {
            hypothesis: String::from(hypothesis),
            description,
            status,
            bound: None,
            witness: None,
            evidence: None,
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    pub fn with_bound(mut self, bound: Option<usize>) -> Self {
        self.bound = bound;
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_evidence(mut self, w: Witness) -> Self {
        self.evidence = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}
