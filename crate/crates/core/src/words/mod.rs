//! Words over an alphabet of variables, the occurrence calculus and
//! scattered-subword equivalence.

mod occ;
mod parse;
mod subwords;

pub use occ::{
    adjacent_pairs, apply_substitution, e_map, l_map, occ_image, occ_preimage, occ_set_stable, var_preimage,
    var_stable, varset_stable, MapKind, OccMap, Substitution, SubstitutionMode,
};
pub use parse::{parse_identity, parse_word};
pub use subwords::{is_subsequence, jm_equivalent, scattered_subwords, SubwordProfile};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("empty input (write `1` for the empty word)")]
    EmptyInput,
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("exponent must be at least 1 in `{0}`")]
    ZeroExponent(String),
    #[error("word too long after expanding `{0}`")]
    TooLong(String),
    #[error("an identity needs exactly one `=` or `≈`: `{0}`")]
    MissingSeparator(String),
    #[error("the words share no variable")]
    DisjointContent,
    #[error("the words share no non-linear variable")]
    NoSharedNonlinear,
    #[error("substitution is undefined on `{0}`")]
    UndefinedVariable(Variable),
    #[error("empty image for `{0}` in semigroup mode")]
    EmptyImage(Variable),
    #[error("occurrence `{0}` is not valid here")]
    InvalidOccurrence(OccRef),
    #[error("subword length must be at least 1")]
    ZeroLength,
}

/// A variable token: one ASCII letter, optionally followed by a decimal index.
///
/// Ordering is by letter, then by index with the bare letter first, so
/// `x < x1 < x2 < x10 < y`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Variable {
    letter: u8,
    index: Option<u32>,
}

impl Variable {
    pub fn new(letter: char) -> Result<Self, WordError> {
        if !letter.is_ascii_alphabetic() {
            return Err(WordError::MalformedToken(String::from(letter)));
        }
        Ok(Variable { letter: letter as u8, index: None })
    }

    pub fn indexed(letter: char, index: u32) -> Result<Self, WordError> {
        let mut v = Self::new(letter)?;
        v.index = Some(index);
        Ok(v)
    }

    /// Parses a single token such as `x` or `t12`.
    pub fn parse(token: &str) -> Result<Self, WordError> {
        let bad = || WordError::MalformedToken(String::from(token));
        let mut chars = token.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        if rest.is_empty() {
            return Self::new(letter).map_err(|_| bad());
        }
        if !rest.bytes().all(|b| b.is_ascii_digit()) || (rest.len() > 1 && rest.starts_with('0')) {
            return Err(bad());
        }
        let index = rest.parse::<u32>().map_err(|_| bad())?;
        Self::indexed(letter, index).map_err(|_| bad())
    }

    pub fn letter(self) -> char {
        self.letter as char
    }

    pub fn index(self) -> Option<u32> {
        self.index
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}{}", self.letter as char, i),
            None => write!(f, "{}", self.letter as char),
        }
    }
}

/// The `index`-th occurrence (1-based, left to right) of `var`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OccRef {
    pub var: Variable,
    pub index: usize,
}

impl OccRef {
    pub fn new(var: Variable, index: usize) -> Self {
        OccRef { var, index }
    }
}

impl fmt::Display for OccRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_{}{}", self.index, self.var)
    }
}

/// Occurrence statistics of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordProfile {
    pub content: BTreeSet<Variable>,
    pub occ: BTreeMap<Variable, usize>,
    pub linear: BTreeSet<Variable>,
    pub nonlinear: BTreeSet<Variable>,
}

/// A finite sequence of variables. The empty word stands for the identity
/// and is rendered as `1`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(Vec<Variable>);

impl Word {
    pub fn new(letters: Vec<Variable>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: Variable) -> Self {
        Word(alloc::vec![x])
    }

    pub fn letters(&self) -> &[Variable] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Variable> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Variable> {
        self.0.iter()
    }

    pub fn push(&mut self, x: Variable) {
        self.0.push(x);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn content(&self) -> BTreeSet<Variable> {
        self.0.iter().copied().collect()
    }

    pub fn occ(&self, x: Variable) -> usize {
        self.0.iter().filter(|&&y| y == x).count()
    }

    pub fn occ_counts(&self) -> BTreeMap<Variable, usize> {
        let mut m = BTreeMap::new();
        for &x in &self.0 {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    pub fn profile(&self) -> WordProfile {
        let occ = self.occ_counts();
        let content = occ.keys().copied().collect();
        let linear = occ.iter().filter(|(_, &c)| c == 1).map(|(&x, _)| x).collect();
        let nonlinear = occ.iter().filter(|(_, &c)| c >= 2).map(|(&x, _)| x).collect();
        WordProfile { content, occ, linear, nonlinear }
    }

    /// All occurrences in position order.
    pub fn ocs(&self) -> Vec<OccRef> {
        let mut seen: BTreeMap<Variable, usize> = BTreeMap::new();
        self.0
            .iter()
            .map(|&x| {
                let i = seen.entry(x).or_insert(0);
                *i += 1;
                OccRef::new(x, *i)
            })
            .collect()
    }

    /// 0-based position of an occurrence, if valid.
    pub fn position(&self, c: OccRef) -> Option<usize> {
        if c.index == 0 {
            return None;
        }
        self.0.iter().enumerate().filter(|(_, &x)| x == c.var).nth(c.index - 1).map(|(p, _)| p)
    }

    /// The occurrence sitting at a 0-based position.
    pub fn occ_at(&self, pos: usize) -> Option<OccRef> {
        let x = *self.0.get(pos)?;
        let index = self.0[..=pos].iter().filter(|&&y| y == x).count();
        Some(OccRef::new(x, index))
    }

    /// Keeps exactly the letters in `xs`.
    pub fn project(&self, xs: &BTreeSet<Variable>) -> Word {
        Word(self.0.iter().copied().filter(|x| xs.contains(x)).collect())
    }

    /// Deletes every letter in `xs`.
    pub fn erase(&self, xs: &BTreeSet<Variable>) -> Word {
        Word(self.0.iter().copied().filter(|x| !xs.contains(x)).collect())
    }

    /// Shortlex comparison: shorter first, then lexicographic.
    pub fn shortlex_cmp(&self, other: &Word) -> core::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// Renders without separators when every letter is unindexed (`xtx`),
    /// otherwise like [`Display`](fmt::Display).
    pub fn compact(&self) -> String {
        use core::fmt::Write;
        if self.is_empty() {
            return String::from("1");
        }
        let mut s = String::new();
        if self.0.iter().all(|x| x.index.is_none()) {
            for x in &self.0 {
                s.push(x.letter());
            }
        } else {
            let _ = write!(s, "{self}");
        }
        s
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl From<Vec<Variable>> for Word {
    fn from(v: Vec<Variable>) -> Self {
        Word(v)
    }
}

impl FromIterator<Variable> for Word {
    fn from_iter<I: IntoIterator<Item = Variable>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Variable;
    type IntoIter = core::slice::Iter<'a, Variable>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl core::str::FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// A pair of words read as the identity `lhs ≈ rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Identity { lhs, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn is_regular(&self) -> bool {
        self.lhs.content() == self.rhs.content()
    }

    /// Variables of both sides, ordered by first occurrence in `lhs` then `rhs`.
    pub fn variables(&self) -> Vec<Variable> {
        let mut out: Vec<Variable> = Vec::new();
        for &x in self.lhs.iter().chain(self.rhs.iter()) {
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    pub fn flipped(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl core::str::FromStr for Identity {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_identity(s)
    }
}

#[cfg(feature = "serde")]
mod serde_impls {
    use super::*;
    use alloc::string::ToString;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    macro_rules! via_string {
        ($t:ty, $parse:expr) => {
            impl Serialize for $t {
                fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                    s.serialize_str(&self.to_string())
                }
            }
            impl<'de> Deserialize<'de> for $t {
                fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                    let s = String::deserialize(d)?;
                    $parse(&s).map_err(de::Error::custom)
                }
            }
        };
    }

    via_string!(Variable, Variable::parse);
    via_string!(Word, parse_word);
    via_string!(Identity, parse_identity);

    impl Serialize for OccRef {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&self.to_string())
        }
    }
}

#[cfg(test)]
pub(crate) fn w(s: &str) -> Word {
    parse_word(s).unwrap()
}

#[cfg(test)]
pub(crate) fn v(s: &str) -> Variable {
    Variable::parse(s).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_order() {
        assert!(v("x") < v("x1"));
        assert!(v("x2") < v("x10"));
        assert!(v("x10") < v("y"));
        assert!(Variable::parse("x01").is_err());
        assert!(Variable::parse("1").is_err());
    }

    #[test]
    fn profile_of_zxyzyyx() {
        let p = w("zxyzyyx").profile();
        assert_eq!(p.occ[&v("z")], 2);
        assert_eq!(p.occ[&v("x")], 2);
        assert_eq!(p.occ[&v("y")], 3);
        assert!(p.linear.is_empty());

        let p = w("xtx").profile();
        assert_eq!(p.nonlinear, [v("x")].into_iter().collect());
        assert_eq!(p.linear, [v("t")].into_iter().collect());
        assert_eq!(w("x").profile().linear.len(), 1);
    }

    #[test]
    fn project_and_erase() {
        let xy: BTreeSet<_> = [v("x"), v("y")].into_iter().collect();
        assert_eq!(w("x t1 y x t2 y").project(&xy), w("xyxy"));
        let u = w("x y t y z1 z1 x");
        assert_eq!(u.erase(&[v("x")].into_iter().collect()), w("y t y z1 z1"));
        assert_eq!(u.project(&u.content()), u);
        assert!(u.project(&BTreeSet::new()).is_empty());
        assert_eq!(u.erase(&BTreeSet::new()), u);
        assert!(w("xyyx").erase(&xy).is_empty());
    }

    #[test]
    fn positions() {
        let u = w("xyx");
        assert_eq!(u.position(OccRef::new(v("x"), 2)), Some(2));
        assert_eq!(u.position(OccRef::new(v("x"), 3)), None);
        assert_eq!(u.position(OccRef::new(v("x"), 0)), None);
        assert_eq!(u.occ_at(2), Some(OccRef::new(v("x"), 2)));
        assert_eq!(u.ocs().len(), 3);
    }

    #[test]
    fn identity_kinds() {
        let id = parse_identity("xy = yx").unwrap();
        assert!(!id.is_trivial());
        assert!(id.is_regular());
        assert!(parse_identity("x = x").unwrap().is_trivial());
        assert!(!parse_identity("x = x y").unwrap().is_regular());
        assert_eq!(id.variables(), alloc::vec![v("x"), v("y")]);
    }

    #[test]
    fn rendering() {
        assert_eq!(w("xyyx").to_string(), "x y y x");
        assert_eq!(Word::empty().to_string(), "1");
        assert_eq!(w("x t1 x").compact(), "x t1 x");
        assert_eq!(w("x t x").compact(), "xtx");
        assert_eq!(OccRef::new(v("x"), 2).to_string(), "_2x");
    }
}
