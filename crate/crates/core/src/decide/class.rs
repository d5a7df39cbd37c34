use super::engine::{quick_refute, search, Problem};
use super::{Config, DecideError};
use crate::monoids::{lcm, FiniteMonoid, PowerCycle};
use crate::words::{Variable, Word};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum IsotermStatus {
    Isoterm,
    NotIsoterm,
    IsotermUpToBound,
}

/// Why an exact verdict is exact.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IsotermCertificate {
    /// `x` is an isoterm, so every identity of the monoid is regular.
    pub regular: bool,
    /// `x^c` is an isoterm for every `c` up to this value, so every variable
    /// occurring at most this often keeps its occurrence count.
    pub stable_threshold: usize,
    pub max_occurrence: usize,
    pub candidates_checked: u64,
    pub argument: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IsotermVerdict {
    pub word: Word,
    pub status: IsotermStatus,
    /// A word `v ≠ u` with `M ⊨ u ≈ v`.
    pub witness: Option<Word>,
    pub certificate: Option<IsotermCertificate>,
    pub bound: Option<usize>,
}

const POWER_ARGUMENT: &str = "an identity x^c ≈ v with v ≠ x^c either has v = x^j with j ≠ c, \
refuted by the power cycles, or contains another letter y; sending x to 1 and every other letter \
to y gives 1 ≈ y^j, which holds only in groups";

const WORD_ARGUMENT: &str = "if M ⊨ u ≈ v, sending every letter but y to 1 gives M ⊨ y^a ≈ y^b with \
a = occ_u(y), b = occ_v(y); when y^a is an isoterm this forces a = b, and when y is an isoterm no \
letter can vanish; so every v in [[u]] uses the same letters with the same counts for letters \
occurring at most the threshold, and scanning those candidates is complete";

fn same_power(c: &PowerCycle, i: usize, j: usize) -> bool {
    i == j || (i >= c.index && j >= c.index && i.abs_diff(j).is_multiple_of(c.period))
}

fn x_pow(c: usize) -> Word {
    Word::letter(Variable::new('x').expect("ascii")).pow(c)
}

/// Decides exactly whether `x^c` is an isoterm for the monoid `m`.
pub fn power_isoterm(m: &FiniteMonoid, c: usize) -> Result<IsotermVerdict, DecideError> {
    m.require_monoid()?;
    if c == 0 {
        return Err(DecideError::EmptyWord);
    }
    let cycles = m.power_cycles();
    let max_index = cycles.iter().map(|p| p.index).max().unwrap_or(1);
    let period = cycles.iter().fold(1, |acc, p| lcm(acc, p.period));
    let u = x_pow(c);
    let not = |witness: Word| IsotermVerdict {
        word: u.clone(),
        status: IsotermStatus::NotIsoterm,
        witness: Some(witness),
        certificate: None,
        bound: None,
    };
    let j = if c >= max_index {
        Some(c + period)
    } else {
        (1..max_index).filter(|&j| j != c).find(|&j| cycles.iter().all(|p| same_power(p, c, j)))
    };
    if let Some(j) = j {
        return Ok(not(x_pow(j)));
    }
    if m.is_group() {
        let y = Word::letter(Variable::new('y').expect("ascii"));
        return Ok(not(u.concat(&y.pow(period))));
    }
    Ok(IsotermVerdict {
        word: u,
        status: IsotermStatus::Isoterm,
        witness: None,
        certificate: Some(IsotermCertificate {
            regular: c == 1 || cycles.iter().all(|p| p.index == 1 && p.period == 1) || {
                power_isoterm(m, 1)?.status == IsotermStatus::Isoterm
            },
            stable_threshold: c,
            max_occurrence: c,
            candidates_checked: 0,
            argument: alloc::format!(
                "power cycles have index ≤ {max_index} and period dividing {period}; no j ≠ {c} \
                 gives s^{c} = s^j for all s; the monoid is not a group; {POWER_ARGUMENT}"
            ),
        }),
        bound: None,
    })
}

/// Which candidates can lie in `[[u]]` given what the power isoterms say.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Restriction {
    pub regular: bool,
    pub stable_threshold: usize,
    pub max_occurrence: usize,
}

impl Restriction {
    pub fn for_word(m: &FiniteMonoid, u: &Word) -> Result<Self, DecideError> {
        let max_occurrence = u.occ_counts().values().copied().max().unwrap_or(0);
        if !m.is_monoid() {
            return Ok(Restriction { regular: false, stable_threshold: 0, max_occurrence });
        }
        let mut threshold = 0;
        while threshold < max_occurrence && power_isoterm(m, threshold + 1)?.status == IsotermStatus::Isoterm {
            threshold += 1;
        }
        Ok(Restriction { regular: threshold >= 1, stable_threshold: threshold, max_occurrence })
    }

    /// Candidates are then exactly the rearrangements of `u`.
    pub fn exact(&self) -> bool {
        self.regular && self.stable_threshold >= self.max_occurrence
    }
}

/// Candidate words: sequences over `vars` (sorted) where fixed variables
/// occur exactly as often as in `u`.
struct Space {
    vars: Vec<Variable>,
    fixed: Vec<Option<usize>>,
    must_appear: bool,
}

impl Space {
    fn new(u: &Word, r: &Restriction) -> Self {
        let occ = u.occ_counts();
        let vars: Vec<Variable> = occ.keys().copied().collect();
        let fixed = occ.values().map(|&c| (r.regular && c <= r.stable_threshold).then_some(c)).collect();
        Space { vars, fixed, must_appear: r.regular }
    }

    fn min_count(&self, i: usize) -> usize {
        self.fixed[i].unwrap_or(self.must_appear as usize)
    }

    /// Number of candidate words of length `len`.
    fn count(&self, len: usize) -> u128 {
        let binom = |n: usize, k: usize| -> u128 {
            (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
        };
        let mut ways = vec![0u128; len + 1];
        ways[0] = 1;
        for i in 0..self.vars.len() {
            let mut next = vec![0u128; len + 1];
            for (t, &w) in ways.iter().enumerate().filter(|(_, &w)| w > 0) {
                let hi = self.fixed[i].unwrap_or(len - t).min(len - t);
                for c in self.min_count(i)..=hi {
                    next[t + c] = next[t + c].saturating_add(w.saturating_mul(binom(t + c, c)));
                }
            }
            ways = next;
        }
        ways[len]
    }

    /// Visits candidates of length `len` in lexicographic order until `f` returns `true`.
    fn scan<E>(&self, len: usize, f: &mut impl FnMut(&[u16]) -> Result<bool, E>) -> Result<bool, E> {
        let mut buf = Vec::with_capacity(len);
        let mut counts = vec![0usize; self.vars.len()];
        self.rec(len, &mut buf, &mut counts, f)
    }

    fn need(&self, counts: &[usize]) -> usize {
        (0..self.vars.len()).map(|i| self.min_count(i).saturating_sub(counts[i])).sum()
    }

    fn rec<E>(
        &self,
        len: usize,
        buf: &mut Vec<u16>,
        counts: &mut [usize],
        f: &mut impl FnMut(&[u16]) -> Result<bool, E>,
    ) -> Result<bool, E> {
        if buf.len() == len {
            return if self.need(counts) == 0 { f(buf) } else { Ok(false) };
        }
        for i in 0..self.vars.len() {
            if self.fixed[i].is_some_and(|c| counts[i] >= c) {
                continue;
            }
            counts[i] += 1;
            buf.push(i as u16);
            let feasible = self.need(counts) <= len - buf.len();
            let stop = feasible && self.rec(len, buf, counts, f)?;
            buf.pop();
            counts[i] -= 1;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// The words of length at most `bound` in the equivalence class of `u`.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClassWindow {
    pub word: Word,
    pub bound: usize,
    /// Members in length-then-lexicographic order.
    pub members: Vec<Word>,
    /// The window is the whole class.
    pub complete: bool,
    pub restriction: Restriction,
    pub candidates: u64,
}

struct Scan {
    found: Vec<Word>,
    candidates: u64,
}

fn lengths(u: &Word, r: &Restriction, bound: usize) -> core::ops::RangeInclusive<usize> {
    if r.exact() {
        u.len()..=bound.min(u.len())
    } else {
        1..=bound
    }
}

fn scan_class(
    m: &FiniteMonoid,
    u: &Word,
    r: &Restriction,
    bound: usize,
    cfg: &Config,
    first_other: bool,
) -> Result<Scan, DecideError> {
    if u.is_empty() {
        return Err(DecideError::EmptyWord);
    }
    let space = Space::new(u, r);
    let lens = lengths(u, r, bound);
    let total = lens.clone().fold(0u128, |acc, l| acc.saturating_add(space.count(l)));
    if total > cfg.space_cap as u128 {
        return Err(DecideError::SpaceCap { size: total.min(u64::MAX as u128) as u64, cap: cfg.space_cap });
    }

    let order = u.variables_by_first_occurrence();
    let to_problem: Vec<u16> =
        space.vars.iter().map(|x| order.iter().position(|y| y == x).expect("same content") as u16).collect();
    let lhs: Vec<u16> = u.iter().map(|x| order.iter().position(|y| y == x).expect("in order") as u16).collect();
    let u_sorted: Vec<u16> = u.iter().map(|x| space.vars.iter().position(|y| y == x).expect("in u") as u16).collect();

    let mut out = Scan { found: Vec::new(), candidates: 0 };
    for len in lens {
        let stop = space.scan(len, &mut |cand: &[u16]| -> Result<bool, DecideError> {
            out.candidates += 1;
            let word = || cand.iter().map(|&i| space.vars[i as usize]).collect::<Word>();
            if cand == u_sorted.as_slice() {
                if !first_other {
                    out.found.push(word());
                }
                return Ok(false);
            }
            let p = Problem {
                k: order.len(),
                lhs: lhs.clone(),
                rhs: cand.iter().map(|&i| to_problem[i as usize]).collect(),
            };
            if quick_refute(m, &p) || search(m, &p, cfg)?.is_some() {
                return Ok(false);
            }
            out.found.push(word());
            Ok(first_other)
        })?;
        if stop {
            break;
        }
    }
    Ok(out)
}

pub fn equivalence_class(m: &FiniteMonoid, u: &Word, bound: usize, cfg: &Config) -> Result<ClassWindow, DecideError> {
    let r = Restriction::for_word(m, u)?;
    let scan = scan_class(m, u, &r, bound, cfg, false)?;
    Ok(ClassWindow {
        word: u.clone(),
        bound,
        members: scan.found,
        complete: r.exact() && bound >= u.len(),
        restriction: r,
        candidates: scan.candidates,
    })
}

/// Exact when the power isoterms pin down every occurrence count of `u`,
/// bounded by `bound` otherwise.
pub fn is_isoterm(m: &FiniteMonoid, u: &Word, bound: usize, cfg: &Config) -> Result<IsotermVerdict, DecideError> {
    let r = Restriction::for_word(m, u)?;
    let exact = r.exact();
    let scan = scan_class(m, u, &r, if exact { u.len() } else { bound }, cfg, true)?;
    let mut v = IsotermVerdict {
        word: u.clone(),
        status: IsotermStatus::IsotermUpToBound,
        witness: None,
        certificate: None,
        bound: (!exact).then_some(bound),
    };
    if let Some(w) = scan.found.into_iter().next() {
        v.status = IsotermStatus::NotIsoterm;
        v.witness = Some(w);
    } else if exact {
        v.status = IsotermStatus::Isoterm;
        v.certificate = Some(IsotermCertificate {
            regular: r.regular,
            stable_threshold: r.stable_threshold,
            max_occurrence: r.max_occurrence,
            candidates_checked: scan.candidates,
            argument: String::from(WORD_ARGUMENT),
        });
    }
    Ok(v)
}

/// [`is_isoterm`] without the power-isoterm restriction: every word over
/// the content of `u` of length at most `bound` is a candidate.
pub fn is_isoterm_bounded(
    m: &FiniteMonoid,
    u: &Word,
    bound: usize,
    cfg: &Config,
) -> Result<IsotermVerdict, DecideError> {
    let max_occurrence = u.occ_counts().values().copied().max().unwrap_or(0);
    let r = Restriction { regular: false, stable_threshold: 0, max_occurrence };
    let scan = scan_class(m, u, &r, bound, cfg, true)?;
    let witness = scan.found.into_iter().next();
    Ok(IsotermVerdict {
        word: u.clone(),
        status: if witness.is_some() { IsotermStatus::NotIsoterm } else { IsotermStatus::IsotermUpToBound },
        witness,
        certificate: None,
        bound: Some(bound),
    })
}

impl Word {
    pub(crate) fn variables_by_first_occurrence(&self) -> Vec<Variable> {
        let mut out: Vec<Variable> = Vec::new();
        for &x in self {
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }
}
