use super::{OccRef, Variable, Word, WordError};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::ops::Range;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum MapKind {
    /// `_i x ↦ _i x` for `i ≤ min(occ_u(x), occ_v(x))`.
    L,
    /// First to first and last to last, over variables non-linear in both words.
    E,
}

/// An injective map between occurrences of two words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OccMap {
    pub kind: MapKind,
    pub pairs: BTreeMap<OccRef, OccRef>,
}

impl OccMap {
    pub fn get(&self, c: OccRef) -> Option<OccRef> {
        self.pairs.get(&c).copied()
    }

    pub fn domain(&self) -> BTreeSet<OccRef> {
        self.pairs.keys().copied().collect()
    }

    pub fn image(&self, xs: &BTreeSet<OccRef>) -> Option<BTreeSet<OccRef>> {
        xs.iter().map(|&c| self.get(c)).collect()
    }
}

pub fn l_map(u: &Word, v: &Word) -> Result<OccMap, WordError> {
    let (cu, cv) = (u.occ_counts(), v.occ_counts());
    let mut pairs = BTreeMap::new();
    for (&x, &a) in &cu {
        if let Some(&b) = cv.get(&x) {
            for i in 1..=a.min(b) {
                pairs.insert(OccRef::new(x, i), OccRef::new(x, i));
            }
        }
    }
    if pairs.is_empty() {
        return Err(WordError::DisjointContent);
    }
    Ok(OccMap { kind: MapKind::L, pairs })
}

pub fn e_map(u: &Word, v: &Word) -> Result<OccMap, WordError> {
    let (cu, cv) = (u.occ_counts(), v.occ_counts());
    let mut pairs = BTreeMap::new();
    for (&x, &a) in &cu {
        match cv.get(&x) {
            Some(&b) if a >= 2 && b >= 2 => {
                pairs.insert(OccRef::new(x, 1), OccRef::new(x, 1));
                pairs.insert(OccRef::new(x, a), OccRef::new(x, b));
            }
            _ => {}
        }
    }
    if pairs.is_empty() {
        return Err(WordError::NoSharedNonlinear);
    }
    Ok(OccMap { kind: MapKind::E, pairs })
}

/// Whether `map` restricted to `xs` is an order isomorphism from positions
/// in `u` to positions in `v`. Undefined or invalid occurrences make the set
/// unstable.
pub fn occ_set_stable(map: &OccMap, xs: &BTreeSet<OccRef>, u: &Word, v: &Word) -> bool {
    let mut pts = Vec::with_capacity(xs.len());
    for &c in xs {
        let (Some(pu), Some(img)) = (u.position(c), map.get(c)) else {
            return false;
        };
        let Some(pv) = v.position(img) else {
            return false;
        };
        pts.push((pu, pv));
    }
    pts.sort_unstable();
    pts.windows(2).all(|w| w[0].1 < w[1].1)
}

pub fn var_stable(u: &Word, v: &Word, x: Variable) -> bool {
    u.occ(x) == v.occ(x)
}

pub fn varset_stable(u: &Word, v: &Word, xs: &BTreeSet<Variable>) -> bool {
    u.project(xs) == v.project(xs)
}

/// Consecutive pairs of `xs` in the position order of `u`. Occurrences not
/// valid in `u` are ignored.
pub fn adjacent_pairs(u: &Word, xs: &BTreeSet<OccRef>) -> Vec<(OccRef, OccRef)> {
    let mut pts: Vec<(usize, OccRef)> = xs.iter().filter_map(|&c| u.position(c).map(|p| (p, c))).collect();
    pts.sort_unstable();
    pts.windows(2).map(|w| (w[0].1, w[1].1)).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SubstitutionMode {
    Semigroup,
    Monoid,
}

/// A homomorphism of free monoids given by its values on letters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Substitution {
    pub mode: SubstitutionMode,
    pub images: BTreeMap<Variable, Word>,
}

impl Substitution {
    pub fn new(mode: SubstitutionMode) -> Self {
        Substitution { mode, images: BTreeMap::new() }
    }

    pub fn identity_on(xs: impl IntoIterator<Item = Variable>) -> Self {
        let images = xs.into_iter().map(|x| (x, Word::letter(x))).collect();
        Substitution { mode: SubstitutionMode::Semigroup, images }
    }

    pub fn with(mut self, x: Variable, image: Word) -> Self {
        self.images.insert(x, image);
        self
    }

    pub fn insert(&mut self, x: Variable, image: Word) {
        self.images.insert(x, image);
    }

    fn image(&self, x: Variable) -> Result<&Word, WordError> {
        let img = self.images.get(&x).ok_or(WordError::UndefinedVariable(x))?;
        if img.is_empty() && self.mode == SubstitutionMode::Semigroup {
            return Err(WordError::EmptyImage(x));
        }
        Ok(img)
    }
}

pub fn apply_substitution(theta: &Substitution, u: &Word) -> Result<Word, WordError> {
    let mut out = Word::empty();
    for &x in u {
        out.extend_from(theta.image(x)?);
    }
    Ok(out)
}

/// The 0-based block of positions of `Θ(u)` produced by occurrence `c`.
pub fn occ_image(theta: &Substitution, u: &Word, c: OccRef) -> Result<Range<usize>, WordError> {
    let pos = u.position(c).ok_or(WordError::InvalidOccurrence(c))?;
    let mut start = 0;
    for &x in &u.letters()[..pos] {
        start += theta.image(x)?.len();
    }
    Ok(start..start + theta.image(c.var)?.len())
}

/// The occurrence of `u` whose image under `Θ` contains occurrence `big` of `Θ(u)`.
pub fn occ_preimage(theta: &Substitution, u: &Word, big: OccRef) -> Result<OccRef, WordError> {
    let image = apply_substitution(theta, u)?;
    let target = image.position(big).ok_or(WordError::InvalidOccurrence(big))?;
    let mut start = 0;
    let mut seen: BTreeMap<Variable, usize> = BTreeMap::new();
    for &x in u {
        let i = seen.entry(x).or_insert(0);
        *i += 1;
        let len = theta.image(x)?.len();
        if target < start + len {
            return Ok(OccRef::new(x, *i));
        }
        start += len;
    }
    Err(WordError::InvalidOccurrence(big))
}

/// `{x : con(Θ(x)) ∩ Y ≠ ∅}`.
pub fn var_preimage(theta: &Substitution, ys: &BTreeSet<Variable>) -> BTreeSet<Variable> {
    theta.images.iter().filter(|(_, img)| img.iter().any(|y| ys.contains(y))).map(|(&x, _)| x).collect()
}
