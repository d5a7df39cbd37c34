use super::{adjoin_identity, brandt, dilworth, from_rules, reflexive_relations, triangular_boolean};
use super::{FiniteMonoid, MonoidError, RewriteSystem, DEFAULT_CLOSURE_CAP};
use crate::words::parse_word;
use alloc::string::String;
use alloc::vec::Vec;

pub const PRESET_NAMES: [&str; 14] = [
    "L",
    "L1",
    "A0",
    "A01",
    "A2",
    "A21",
    "brandt",
    "perkins25",
    "reflexive2",
    "reflexive3",
    "reflexive4",
    "ut3",
    "ut4",
    "ut5",
];

fn presented(name: &str, rules: &[&str]) -> FiniteMonoid {
    let rs = RewriteSystem::parse(name, "ab", rules).expect("literal rules");
    from_rules(&rs, DEFAULT_CLOSURE_CAP).expect("literal presentation closes")
}

fn with_one(m: FiniteMonoid, name: &str) -> FiniteMonoid {
    adjoin_identity(&m).expect("small table").with_name(name)
}

/// A named monoid or semigroup.
pub fn preset(name: &str) -> Result<FiniteMonoid, MonoidError> {
    let l = || presented("L", &["aa -> a", "bb -> b", "aba -> 0"]);
    let a0 = || presented("A0", &["aa -> a", "bb -> b", "ab -> 0"]);
    let a2 = || presented("A2", &["aba -> a", "aa -> a", "bab -> b", "bb -> 0"]);
    Ok(match name {
        "L" => l(),
        "L1" => with_one(l(), "L^1"),
        "A0" => a0(),
        "A01" => with_one(a0(), "A0^1"),
        "A2" => a2(),
        "A21" => with_one(a2(), "A2^1"),
        "brandt" => brandt(),
        "perkins25" => {
            let ws: Vec<_> =
                ["abtba", "atbab", "abab", "aat"].iter().map(|s| parse_word(s).expect("literal")).collect();
            dilworth(&ws)?
        }
        "reflexive2" => reflexive_relations(2)?,
        "reflexive3" => reflexive_relations(3)?,
        "reflexive4" => reflexive_relations(4)?,
        "ut3" => triangular_boolean(3, true)?,
        "ut4" => triangular_boolean(4, true)?,
        "ut5" => triangular_boolean(5, true)?,
        other => return Err(MonoidError::UnknownPreset(String::from(other))),
    })
}
