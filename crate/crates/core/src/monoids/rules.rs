use super::{adjoin_identity, Elt, FiniteMonoid, MonoidError};
use crate::words::{Variable, Word};
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RuleRhs {
    /// A word over the generators; the empty word is `ONE`.
    Word(Word),
    Zero,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: RuleRhs,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Rule { lhs, rhs: RuleRhs::Word(rhs) }
    }

    pub fn zero(lhs: Word) -> Self {
        Rule { lhs, rhs: RuleRhs::Zero }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteSystem {
    pub name: String,
    pub generators: Vec<Variable>,
    pub rules: Vec<Rule>,
}

impl RewriteSystem {
    /// Parses rules written as `lhs -> rhs`, where `rhs` may be `0` or `1`.
    pub fn parse(name: &str, generators: &str, rules: &[&str]) -> Result<Self, crate::words::WordError> {
        let generators = crate::words::parse_word(generators)?.into_letters();
        let mut out = Vec::new();
        for r in rules {
            let (l, rhs) =
                r.split_once("->").ok_or_else(|| crate::words::WordError::MissingSeparator(String::from(*r)))?;
            let lhs = crate::words::parse_word(l)?;
            out.push(match rhs.trim() {
                "0" => Rule::zero(lhs),
                other => Rule::new(lhs, crate::words::parse_word(other)?),
            });
        }
        Ok(RewriteSystem { name: String::from(name), generators, rules: out })
    }

    /// Each rule must shrink the word, or keep its length and decrease it lexicographically.
    pub fn check_termination(&self) -> Result<(), MonoidError> {
        let gens: BTreeSet<Variable> = self.generators.iter().copied().collect();
        for (i, r) in self.rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(MonoidError::EmptyRule(i));
            }
            if r.lhs.iter().any(|x| !gens.contains(x)) {
                return Err(MonoidError::UnknownGenerator(i));
            }
            if let RuleRhs::Word(rhs) = &r.rhs {
                if rhs.iter().any(|x| !gens.contains(x)) {
                    return Err(MonoidError::UnknownGenerator(i));
                }
                let ok = rhs.len() < r.lhs.len() || (rhs.len() == r.lhs.len() && rhs < &r.lhs);
                if !ok {
                    return Err(MonoidError::NotTerminating(i));
                }
            }
        }
        Ok(())
    }

    /// Rewrites the leftmost match (first rule in declaration order at that
    /// position) until irreducible. `None` is `ZERO`.
    pub fn normalize(&self, w: &Word) -> Option<Word> {
        let mut cur: Vec<Variable> = w.letters().to_vec();
        'outer: loop {
            for p in 0..cur.len() {
                for r in &self.rules {
                    let l = r.lhs.letters();
                    if cur[p..].starts_with(l) {
                        match &r.rhs {
                            RuleRhs::Zero => return None,
                            RuleRhs::Word(rhs) => {
                                cur.splice(p..p + l.len(), rhs.iter().copied());
                                continue 'outer;
                            }
                        }
                    }
                }
            }
            return Some(Word::new(cur));
        }
    }
}

/// The semigroup generated by the generators under the rules. `ONE` is
/// index 0 when reachable, normal forms follow in shortlex order and `ZERO`
/// is last when reachable.
pub fn from_rules(rs: &RewriteSystem, cap: usize) -> Result<FiniteMonoid, MonoidError> {
    rs.check_termination()?;
    let gens: Vec<Option<Word>> = rs.generators.iter().map(|&g| rs.normalize(&Word::letter(g))).collect();
    let mut seen: BTreeSet<Option<Word>> = BTreeSet::new();
    let mut queue: VecDeque<Option<Word>> = VecDeque::new();
    for g in &gens {
        if seen.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    while let Some(e) = queue.pop_front() {
        let Some(e) = e else { continue };
        for g in &rs.generators {
            let next = rs.normalize(&e.concat(&Word::letter(*g)));
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(MonoidError::CapExceeded(cap));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }

    let has_zero = seen.contains(&None);
    let mut words: Vec<Word> = seen.into_iter().flatten().collect();
    words.sort_by(Word::shortlex_cmp);
    let has_one = words.first().is_some_and(Word::is_empty);
    let n = words.len() + has_zero as usize;
    let zero = has_zero.then_some((n - 1) as Elt);
    let index: BTreeMap<&Word, Elt> = words.iter().enumerate().map(|(i, w)| (w, i as Elt)).collect();

    let mut table = alloc::vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = match (words.get(a), words.get(b)) {
                (Some(x), Some(y)) => match rs.normalize(&x.concat(y)) {
                    None => zero.ok_or(MonoidError::NotClosed)?,
                    Some(p) => *index.get(&p).ok_or(MonoidError::NotClosed)?,
                },
                _ => zero.expect("index past the words is zero"),
            };
        }
    }
    let mut names: Vec<String> = words.iter().map(Word::compact).collect();
    if has_zero {
        names.push(String::from("0"));
    }
    let generators = rs
        .generators
        .iter()
        .zip(&gens)
        .filter_map(|(&g, nf)| Some((g, nf.as_ref().map_or(zero, |w| index.get(w).copied())?)))
        .collect();
    let identity = has_one.then_some(0);
    Ok(FiniteMonoid::from_table(rs.name.clone(), n, table, identity, zero, Some(names))?.with_generators(generators))
}

/// The six-element Brandt monoid `B_2^1`.
pub fn brandt() -> FiniteMonoid {
    let rs = RewriteSystem::parse("B2", "ab", &["aba -> a", "bab -> b", "aa -> 0", "bb -> 0"]).expect("literal rules");
    let b2 = from_rules(&rs, DEFAULT_CLOSURE_CAP).expect("B2 is a semigroup");
    adjoin_identity(&b2).expect("small table").with_name("B2^1")
}
