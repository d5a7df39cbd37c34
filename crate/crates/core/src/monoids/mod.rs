//! Finite monoids and semigroups given by Cayley tables.

mod dilworth;
mod matrix;
mod presets;
mod rules;

pub use dilworth::dilworth;
pub use matrix::{reflexive_relations, triangular_boolean};
pub use presets::{preset, PRESET_NAMES};
pub use rules::{brandt, from_rules, RewriteSystem, Rule, RuleRhs, DEFAULT_CLOSURE_CAP};

use crate::words::Variable;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};

/// Element index.
pub type Elt = u32;

/// Largest order accepted for a direct product.
pub const PRODUCT_CAP: usize = 1_000_000;
/// Largest order whose table is materialized by [`FiniteMonoid::flatten`].
pub const FLATTEN_CAP: usize = 4096;
const EXHAUSTIVE_ASSOC: usize = 512;
const SAMPLED_TRIPLES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonoidError {
    #[error("the word set is empty")]
    EmptyWordSet,
    #[error("the word set contains the empty word")]
    EmptyWord,
    #[error("table must be {expected} entries, got {got}")]
    TableSize { expected: usize, got: usize },
    #[error("order must be at least 1")]
    EmptyTable,
    #[error("entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: Elt },
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: Elt, b: Elt, c: Elt },
    #[error("declared identity {identity} is not neutral for {element}")]
    NotNeutral { identity: Elt, element: Elt },
    #[error("declared zero {zero} does not absorb {element}")]
    NotAbsorbing { zero: Elt, element: Elt },
    #[error("element {0} is out of range")]
    InvalidElement(Elt),
    #[error("expected {expected} element names, got {got}")]
    NamesLength { expected: usize, got: usize },
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("order {0} exceeds the cap for this operation")]
    TooLarge(usize),
    #[error("{what} out of range: {k}")]
    OutOfRange { what: &'static str, k: usize },
    #[error("rule {0} is neither length-reducing nor length-preserving and lexicographically reducing")]
    NotTerminating(usize),
    #[error("rule {0} uses a letter that is not a generator")]
    UnknownGenerator(usize),
    #[error("rule {0} has an empty left-hand side")]
    EmptyRule(usize),
    #[error("products of normal forms leave the closure (rules are not confluent)")]
    NotClosed,
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("operation needs a monoid but `{0}` has no identity")]
    NotAMonoid(String),
}

#[derive(Clone, Debug)]
enum Repr {
    Table(Vec<Elt>),
    Product(Box<FiniteMonoid>, Box<FiniteMonoid>),
}

/// A finite semigroup, usually a monoid, with a validated multiplication.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    name: String,
    order: usize,
    repr: Repr,
    identity: Option<Elt>,
    zero: Option<Elt>,
    absorbing: Option<Elt>,
    names: Vec<String>,
    generators: BTreeMap<Variable, Elt>,
    jm_level: Option<usize>,
}

/// `s^index = s^(index+period)`, with both minimal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerCycle {
    pub element: Elt,
    pub index: usize,
    pub period: usize,
}

impl FiniteMonoid {
    /// Builds and validates a table given row-major.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<Elt>,
        identity: Option<Elt>,
        zero: Option<Elt>,
        names: Option<Vec<String>>,
    ) -> Result<Self, MonoidError> {
        let m = Self::unchecked(name.into(), order, table, identity, zero, names)?;
        m.validate()?;
        Ok(m)
    }

    fn unchecked(
        name: String,
        order: usize,
        table: Vec<Elt>,
        identity: Option<Elt>,
        zero: Option<Elt>,
        names: Option<Vec<String>>,
    ) -> Result<Self, MonoidError> {
        if order == 0 {
            return Err(MonoidError::EmptyTable);
        }
        if table.len() != order * order {
            return Err(MonoidError::TableSize { expected: order * order, got: table.len() });
        }
        if let Some(p) = table.iter().position(|&e| e as usize >= order) {
            return Err(MonoidError::EntryOutOfRange { row: p / order, col: p % order, value: table[p] });
        }
        for e in [identity, zero].into_iter().flatten() {
            if e as usize >= order {
                return Err(MonoidError::InvalidElement(e));
            }
        }
        let names = match names {
            Some(ns) if ns.len() != order => return Err(MonoidError::NamesLength { expected: order, got: ns.len() }),
            Some(ns) => ns,
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        let mut m = FiniteMonoid {
            name,
            order,
            repr: Repr::Table(table),
            identity,
            zero,
            absorbing: None,
            names,
            generators: BTreeMap::new(),
            jm_level: None,
        };
        m.absorbing = m.find_absorbing();
        Ok(m)
    }

    /// Checks associativity, neutrality of the identity and absorption of the zero.
    pub fn validate(&self) -> Result<(), MonoidError> {
        let n = self.order as Elt;
        if let Some(e) = self.identity {
            for a in 0..n {
                if self.mul(e, a) != a || self.mul(a, e) != a {
                    return Err(MonoidError::NotNeutral { identity: e, element: a });
                }
            }
        }
        if let Some(z) = self.zero {
            for a in 0..n {
                if self.mul(z, a) != z || self.mul(a, z) != z {
                    return Err(MonoidError::NotAbsorbing { zero: z, element: a });
                }
            }
        }
        let assoc = |a, b, c| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(MonoidError::NotAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if self.order <= EXHAUSTIVE_ASSOC {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let gens: Vec<Elt> = self.generators.values().copied().collect();
            for &a in &gens {
                for &b in &gens {
                    for &c in &gens {
                        assoc(a, b, c)?;
                    }
                }
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.order as u64);
            for _ in 0..SAMPLED_TRIPLES {
                assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    fn find_absorbing(&self) -> Option<Elt> {
        let n = self.order as Elt;
        if let Some(z) = self.zero {
            return Some(z);
        }
        (0..n).find(|&z| (0..n).all(|a| self.mul(z, a) == z && self.mul(a, z) == z))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Option<Elt> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn require_monoid(&self) -> Result<Elt, MonoidError> {
        self.identity.ok_or_else(|| MonoidError::NotAMonoid(self.name.clone()))
    }

    /// The declared zero element.
    pub fn zero(&self) -> Option<Elt> {
        self.zero
    }

    /// A two-sided absorbing element, declared or found in the table.
    pub fn absorbing(&self) -> Option<Elt> {
        self.absorbing
    }

    pub fn generators(&self) -> &BTreeMap<Variable, Elt> {
        &self.generators
    }

    pub fn with_generators(mut self, generators: BTreeMap<Variable, Elt>) -> Self {
        self.generators = generators;
        self
    }

    /// `m` when the monoid was built as a realization whose equational theory is `J_m`.
    pub fn jm_level(&self) -> Option<usize> {
        self.jm_level
    }

    pub(crate) fn with_jm_level(mut self, m: Option<usize>) -> Self {
        self.jm_level = m;
        self
    }

    /// Row-major Cayley table, unless the monoid is a lazily represented product.
    pub fn table(&self) -> Option<&[Elt]> {
        match &self.repr {
            Repr::Table(t) => Some(t),
            Repr::Product(..) => None,
        }
    }

    pub fn factors(&self) -> Option<(&FiniteMonoid, &FiniteMonoid)> {
        match &self.repr {
            Repr::Product(a, b) => Some((a, b)),
            Repr::Table(_) => None,
        }
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        match &self.repr {
            Repr::Table(t) => t[a as usize * self.order + b as usize],
            Repr::Product(m1, m2) => {
                let n2 = m2.order as Elt;
                let x = m1.mul(a / n2, b / n2);
                let y = m2.mul(a % n2, b % n2);
                x * n2 + y
            }
        }
    }

    /// Product of a sequence; `None` for the empty sequence of a semigroup.
    pub fn product(&self, elts: impl IntoIterator<Item = Elt>) -> Option<Elt> {
        let mut it = elts.into_iter();
        match it.next() {
            None => self.identity,
            Some(first) => Some(it.fold(first, |acc, e| self.mul(acc, e))),
        }
    }

    pub fn pow(&self, s: Elt, k: usize) -> Option<Elt> {
        self.product(core::iter::repeat_n(s, k))
    }

    /// Splits a product element into its components.
    pub fn split(&self, e: Elt) -> Option<(Elt, Elt)> {
        self.factors().map(|(_, b)| (e / b.order as Elt, e % b.order as Elt))
    }

    pub fn pair(&self, a: Elt, b: Elt) -> Option<Elt> {
        self.factors().map(|(_, m2)| a * m2.order as Elt + b)
    }

    pub fn name_of(&self, e: Elt) -> String {
        match &self.repr {
            Repr::Table(_) => self.names.get(e as usize).cloned().unwrap_or_else(|| e.to_string()),
            Repr::Product(a, b) => {
                let n2 = b.order as Elt;
                format!("({},{})", a.name_of(e / n2), b.name_of(e % n2))
            }
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.order as Elt).map(|e| self.name_of(e)).collect()
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elt> {
        (0..self.order as Elt).find(|&e| self.name_of(e) == name)
    }

    pub fn power_cycle(&self, s: Elt) -> Result<PowerCycle, MonoidError> {
        if s as usize >= self.order {
            return Err(MonoidError::InvalidElement(s));
        }
        if let Some((a, b)) = self.split(s) {
            let (m1, m2) = self.factors().expect("product");
            let (c1, c2) = (m1.power_cycle(a)?, m2.power_cycle(b)?);
            return Ok(PowerCycle { element: s, index: c1.index.max(c2.index), period: lcm(c1.period, c2.period) });
        }
        let mut seen: BTreeMap<Elt, usize> = BTreeMap::new();
        let mut p = s;
        let mut i = 1;
        loop {
            if let Some(&j) = seen.get(&p) {
                return Ok(PowerCycle { element: s, index: j, period: i - j });
            }
            seen.insert(p, i);
            p = self.mul(p, s);
            i += 1;
        }
    }

    pub fn power_cycles(&self) -> Vec<PowerCycle> {
        (0..self.order as Elt).map(|s| self.power_cycle(s).expect("valid element")).collect()
    }

    pub fn is_aperiodic(&self) -> bool {
        match self.factors() {
            Some((a, b)) => a.is_aperiodic() && b.is_aperiodic(),
            None => (0..self.order as Elt).all(|s| self.power_cycle(s).map(|c| c.period == 1).unwrap_or(false)),
        }
    }

    /// Whether every element lies in a cyclic subgroup containing the identity.
    pub fn is_group(&self) -> bool {
        let Some(e) = self.identity else {
            return false;
        };
        self.power_cycles().iter().all(|c| c.index == 1 && self.pow(c.element, c.period) == Some(e))
    }

    /// Materializes the Cayley table of a product.
    pub fn flatten(&self) -> Result<FiniteMonoid, MonoidError> {
        if self.table().is_some() {
            return Ok(self.clone());
        }
        if self.order > FLATTEN_CAP {
            return Err(MonoidError::TooLarge(self.order));
        }
        let n = self.order as Elt;
        let mut table = Vec::with_capacity(self.order * self.order);
        for a in 0..n {
            for b in 0..n {
                table.push(self.mul(a, b));
            }
        }
        let mut m =
            Self::unchecked(self.name.clone(), self.order, table, self.identity, self.zero, Some(self.names()))?;
        m.jm_level = self.jm_level;
        Ok(m)
    }

    /// Same elements and multiplication, without remembering a realization.
    pub fn forget_realization(mut self) -> Self {
        self.jm_level = None;
        self
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// `M^1`: a new neutral element at index 0, all others shifted by one.
pub fn adjoin_identity(m: &FiniteMonoid) -> Result<FiniteMonoid, MonoidError> {
    let m = m.flatten()?;
    let n = m.order + 1;
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = match (a, b) {
                (0, _) => b as Elt,
                (_, 0) => a as Elt,
                _ => m.mul(a as Elt - 1, b as Elt - 1) + 1,
            };
        }
    }
    let mut names = vec![String::from("1")];
    names.extend(m.names());
    let name = if m.is_monoid() { format!("({})^1", m.name) } else { format!("{}^1", m.name) };
    let out = FiniteMonoid::from_table(name, n, table, Some(0), m.zero.map(|z| z + 1), Some(names))?;
    Ok(out.with_generators(m.generators.iter().map(|(&x, &e)| (x, e + 1)).collect()))
}

/// Componentwise product; elements are encoded as `a * order(m2) + b`.
pub fn direct_product(m1: &FiniteMonoid, m2: &FiniteMonoid) -> Result<FiniteMonoid, MonoidError> {
    let order = m1.order.checked_mul(m2.order).filter(|&o| o <= PRODUCT_CAP);
    let Some(order) = order else {
        return Err(MonoidError::TooLarge(m1.order.saturating_mul(m2.order)));
    };
    let n2 = m2.order as Elt;
    let both = |a: Option<Elt>, b: Option<Elt>| Some(a? * n2 + b?);
    Ok(FiniteMonoid {
        name: format!("{} × {}", m1.name, m2.name),
        order,
        identity: both(m1.identity, m2.identity),
        zero: both(m1.zero, m2.zero),
        absorbing: both(m1.absorbing, m2.absorbing),
        names: Vec::new(),
        generators: BTreeMap::new(),
        jm_level: None,
        repr: Repr::Product(Box::new(m1.clone()), Box::new(m2.clone())),
    })
}

/// Serializable form of a monoid: row-major 0-based table.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonoidDoc {
    pub name: String,
    pub order: usize,
    pub identity: Option<Elt>,
    pub zero: Option<Elt>,
    pub names: Vec<String>,
    pub table: Vec<Vec<Elt>>,
}

impl FiniteMonoid {
    pub fn to_doc(&self) -> Result<MonoidDoc, MonoidError> {
        let flat = self.flatten()?;
        let n = flat.order;
        let t = flat.table().expect("flattened");
        Ok(MonoidDoc {
            name: flat.name.clone(),
            order: n,
            identity: flat.identity,
            zero: flat.zero,
            names: flat.names(),
            table: t.chunks(n).map(|r| r.to_vec()).collect(),
        })
    }

    pub fn from_doc(doc: &MonoidDoc) -> Result<FiniteMonoid, MonoidError> {
        let n = doc.order;
        if doc.table.len() != n {
            return Err(MonoidError::TableSize { expected: n * n, got: doc.table.iter().map(Vec::len).sum() });
        }
        if let Some(row) = doc.table.iter().find(|r| r.len() != n) {
            return Err(MonoidError::TableSize { expected: n * n, got: n * (n - 1) + row.len() });
        }
        let table = doc.table.concat();
        FiniteMonoid::from_table(doc.name.clone(), n, table, doc.identity, doc.zero, Some(doc.names.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cyclic(n: usize) -> FiniteMonoid {
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as Elt).collect();
        FiniteMonoid::from_table(format!("C{n}"), n, table, Some(0), None, None).unwrap()
    }

    #[test]
    fn table_validation() {
        assert!(matches!(
            FiniteMonoid::from_table("bad", 2, vec![0, 1, 1], None, None, None),
            Err(MonoidError::TableSize { .. })
        ));
        assert!(matches!(
            FiniteMonoid::from_table("bad", 2, vec![0, 1, 1, 2], None, None, None),
            Err(MonoidError::EntryOutOfRange { .. })
        ));
        // left-zero semigroup on two points with 1 declared neutral
        assert!(matches!(
            FiniteMonoid::from_table("bad", 2, vec![0, 0, 1, 1], Some(1), None, None),
            Err(MonoidError::NotNeutral { .. })
        ));
        assert!(matches!(
            FiniteMonoid::from_table("bad", 2, vec![1, 1, 0, 0], None, None, None),
            Err(MonoidError::NotAssociative { .. })
        ));
    }

    #[test]
    fn cyclic_group() {
        let c2 = cyclic(2);
        assert!(!c2.is_aperiodic());
        assert!(c2.is_group());
        assert_eq!(c2.power_cycle(1).unwrap(), PowerCycle { element: 1, index: 1, period: 2 });
        assert_eq!(c2.absorbing(), None);
    }

    #[test]
    fn adjoin_and_product() {
        let c2 = cyclic(2);
        let c2_1 = adjoin_identity(&c2).unwrap();
        assert_eq!(c2_1.order(), 3);
        let twice = adjoin_identity(&c2_1).unwrap();
        assert_eq!(twice.order(), 4);
        for a in 0..4 {
            assert_eq!(twice.mul(0, a), a);
        }
        let p = direct_product(&c2, &c2_1).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.identity(), Some(0));
        let f = p.flatten().unwrap();
        f.validate().unwrap();
        assert_eq!(p.power_cycle(p.pair(1, 2).unwrap()).unwrap().period, 2);
    }

    #[test]
    fn doc_round_trip() {
        let c3 = cyclic(3);
        let doc = c3.to_doc().unwrap();
        let back = FiniteMonoid::from_doc(&doc).unwrap();
        assert_eq!(back.table(), c3.table());
        let mut short = doc.clone();
        short.table[2].pop();
        assert!(FiniteMonoid::from_doc(&short).is_err());
    }
}
