//! Words, finite monoids and identity checking for finite basis questions.
//!
//! The crate is `no_std` with `alloc`. The default `std` feature adds a
//! parallel search path to [`decide::satisfies`] and friends; the optional
//! `serde` feature derives serialization for the public data types.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod decide;
pub mod monoids;
pub mod nfb;
pub mod schemes;
pub mod words;

pub use decide::{
    equivalence_class, is_isoterm, power_isoterm, satisfies, CheckReport, CheckStatus, Config, DecideError,
    IsotermStatus, IsotermVerdict, Verdict, Witness,
};
pub use monoids::{FiniteMonoid, MonoidError};
pub use schemes::{SchemeError, SchemeId, SchemeName};
pub use words::{parse_identity, parse_word, Identity, OccRef, Variable, Word, WordError};
