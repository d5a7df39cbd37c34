use super::{Word, WordError};
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// All nonempty scattered subwords of length at most `max_len`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubwordProfile {
    pub max_len: usize,
    pub subwords: BTreeSet<Word>,
}

pub fn scattered_subwords(u: &Word, m: usize) -> Result<SubwordProfile, WordError> {
    if m == 0 {
        return Err(WordError::ZeroLength);
    }
    let mut set: BTreeSet<Word> = BTreeSet::new();
    for &a in u {
        let grown: Vec<Word> = set
            .iter()
            .filter(|s| s.len() < m)
            .map(|s| {
                let mut t = s.clone();
                t.push(a);
                t
            })
            .collect();
        set.insert(Word::letter(a));
        set.extend(grown);
    }
    Ok(SubwordProfile { max_len: m, subwords: set })
}

/// Membership of `(u, v)` in the congruence `J_m`.
pub fn jm_equivalent(u: &Word, v: &Word, m: usize) -> Result<bool, WordError> {
    if u == v {
        return if m == 0 { Err(WordError::ZeroLength) } else { Ok(true) };
    }
    Ok(scattered_subwords(u, m)?.subwords == scattered_subwords(v, m)?.subwords)
}

pub fn is_subsequence(small: &Word, big: &Word) -> bool {
    let mut it = big.iter();
    small.iter().all(|a| it.any(|b| b == a))
}
