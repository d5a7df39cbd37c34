//! Checkers for the hypotheses of the sufficient conditions for a monoid to
//! be non-finitely based. Each checker returns one [`CheckReport`] per
//! hypothesis instance.

use crate::decide::{
    class_shape, is_isoterm, l_stable_wrt, power_isoterm, satisfies, var_stable_wrt, CheckReport, CheckStatus, Config,
    DecideError, IsotermStatus, IsotermVerdict, Shape, Witness,
};
use crate::monoids::FiniteMonoid;
use crate::schemes::{generate, isoterm_words, SchemeError, SchemeId, SchemeName};
use crate::words::{jm_equivalent, scattered_subwords, Identity, OccRef, Variable, Word};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub const SCALE_NOTE: &str = "desk-scale evidence: hypotheses were checked for the listed n and \
within bounded class windows only; a pass is evidence for the hypotheses of the theorem, not a \
proof that the monoid is non-finitely based";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NfbError {
    #[error("n = {n}: {source}")]
    AtN { n: usize, source: DecideError },
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("n range {min}..={max} must be nonempty and start at 2 or more")]
    Range { min: usize, max: usize },
    #[error("{0}")]
    Param(&'static str),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "name", rename_all = "snake_case"))]
pub enum Condition {
    Sl1,
    Row { row: u32, m: Option<usize> },
    Psc,
    El { k: usize },
    Bsnew { m: usize },
    Bsnew1 { m: usize },
}

impl core::fmt::Display for Condition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Condition::Sl1 => write!(f, "sl1"),
            Condition::Row { row, m: None } => write!(f, "row{row}"),
            Condition::Row { row, m: Some(m) } => write!(f, "row{row} m={m}"),
            Condition::Psc => write!(f, "psc"),
            Condition::El { k } => write!(f, "el k={k}"),
            Condition::Bsnew { m } => write!(f, "bsnew m={m}"),
            Condition::Bsnew1 { m } => write!(f, "bsnew1 m={m}"),
        }
    }
}

/// Parameter grids for the shape and stability hypotheses of `sl1` and `bsnew1`.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Grids {
    /// `(m, c)` for `x^m t x^c`.
    pub stable: Vec<(usize, usize)>,
    /// `(m, c)` for `x^m y^c`.
    pub pair: Vec<(usize, usize)>,
    /// `(m, d, c)` for `x^m y^d x^c`.
    pub triple: Vec<(usize, usize, usize)>,
}

impl Default for Grids {
    fn default() -> Self {
        Grids {
            stable: vec![(1, 1), (1, 2), (2, 1), (2, 2)],
            pair: vec![(2, 2), (2, 3), (3, 2)],
            triple: vec![(1, 2, 1), (1, 2, 2), (2, 2, 1)],
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConditionSpec {
    pub condition: Condition,
    pub n_min: usize,
    pub n_max: usize,
    /// Class-window bound; `None` means `|u| + 2` for each word `u`.
    pub bound: Option<usize>,
    pub grids: Grids,
}

impl ConditionSpec {
    pub fn new(condition: Condition) -> Self {
        ConditionSpec { condition, n_min: 2, n_max: 5, bound: None, grids: Grids::default() }
    }

    pub fn n_range(mut self, min: usize, max: usize) -> Self {
        self.n_min = min;
        self.n_max = max;
        self
    }

    pub fn bound(mut self, bound: Option<usize>) -> Self {
        self.bound = bound;
        self
    }

    fn ns(&self) -> Result<core::ops::RangeInclusive<usize>, NfbError> {
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(NfbError::Range { min: self.n_min, max: self.n_max });
        }
        Ok(self.n_min..=self.n_max)
    }

    fn bound_for(&self, u: &Word) -> usize {
        self.bound.unwrap_or(u.len() + 2)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "verdict", rename_all = "kebab-case"))]
pub enum Overall {
    AllPass,
    Fail { hypothesis: String, witness: Option<Witness> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConditionReport {
    pub condition: String,
    pub monoid: String,
    pub order: Option<usize>,
    pub n_min: usize,
    pub n_max: usize,
    pub bound: Option<usize>,
    pub checks: Vec<CheckReport>,
    pub overall: Overall,
    pub scale_note: String,
}

impl ConditionReport {
    fn new(
        condition: String,
        monoid: String,
        order: Option<usize>,
        spec: Option<&ConditionSpec>,
        checks: Vec<CheckReport>,
    ) -> Self {
        let overall = match checks.iter().find(|c| !c.passed()) {
            Some(c) => Overall::Fail { hypothesis: c.hypothesis.clone(), witness: c.witness.clone() },
            None => Overall::AllPass,
        };
        ConditionReport {
            condition,
            monoid,
            order,
            n_min: spec.map_or(0, |s| s.n_min),
            n_max: spec.map_or(0, |s| s.n_max),
            bound: spec.and_then(|s| s.bound),
            checks,
            overall,
            scale_note: String::from(SCALE_NOTE),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.overall == Overall::AllPass
    }

    /// Labels of the hypotheses with at least one failing check, in order.
    pub fn failed_hypotheses(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for c in self.checks.iter().filter(|c| !c.passed()) {
            if !out.contains(&c.hypothesis) {
                out.push(c.hypothesis.clone());
            }
        }
        out
    }

    pub fn hypothesis(&self, label: &str) -> impl Iterator<Item = &CheckReport> {
        let label = String::from(label);
        self.checks.iter().filter(move |c| c.hypothesis == label)
    }
}

fn x() -> Variable {
    Variable::new('x').expect("ascii")
}

fn y() -> Variable {
    Variable::new('y').expect("ascii")
}

fn t() -> Variable {
    Variable::new('t').expect("ascii")
}

fn pw(v: Variable, k: usize) -> Word {
    Word::letter(v).pow(k)
}

fn cat(parts: &[Word]) -> Word {
    parts.iter().fold(Word::empty(), |acc, p| acc.concat(p))
}

/// Checks `m ⊨ id` when `expect_hold`, or `m ⊭ id` otherwise.
fn identity_check(
    m: &FiniteMonoid,
    hyp: &str,
    id: &Identity,
    expect_hold: bool,
    cfg: &Config,
) -> Result<CheckReport, DecideError> {
    let verdict = satisfies(m, id, cfg)?;
    let desc = if expect_hold { format!("{} ⊨ {id}", m.name()) } else { format!("{} ⊭ {id}", m.name()) };
    let refutation = || Witness::refutation(m, id.clone(), verdict.witness.clone().unwrap_or_default());
    Ok(match (expect_hold, verdict.holds()) {
        (true, true) => CheckReport::new(hyp, desc, CheckStatus::Pass),
        (true, false) => CheckReport::new(hyp, desc, CheckStatus::Fail).with_witness(refutation()),
        (false, false) => CheckReport::new(hyp, desc, CheckStatus::Pass).with_evidence(refutation()),
        (false, true) => {
            CheckReport::new(hyp, desc, CheckStatus::Fail).with_witness(Witness::Satisfied { identity: id.clone() })
        }
    })
}

fn isoterm_report(m: &FiniteMonoid, hyp: &str, v: IsotermVerdict) -> CheckReport {
    let desc = format!("{} is an isoterm for {}", v.word.compact(), m.name());
    match v.status {
        IsotermStatus::Isoterm => CheckReport::new(hyp, desc, CheckStatus::Pass),
        IsotermStatus::IsotermUpToBound => CheckReport::new(hyp, desc, CheckStatus::BoundedPass).with_bound(v.bound),
        IsotermStatus::NotIsoterm => {
            let other = v.witness.expect("a non-isoterm verdict names the other word");
            CheckReport::new(hyp, desc, CheckStatus::Fail)
                .with_bound(v.bound)
                .with_witness(Witness::Satisfied { identity: Identity::new(v.word, other) })
        }
    }
}

fn isoterm_check(
    m: &FiniteMonoid,
    hyp: &str,
    u: &Word,
    spec: &ConditionSpec,
    cfg: &Config,
) -> Result<CheckReport, DecideError> {
    Ok(isoterm_report(m, hyp, is_isoterm(m, u, spec.bound_for(u), cfg)?))
}

/// One check per identity of the scheme, per `n`.
fn scheme_checks(
    m: &FiniteMonoid,
    hyp: &str,
    id: impl Fn(usize) -> SchemeId,
    spec: &ConditionSpec,
    cfg: &Config,
) -> Result<Vec<CheckReport>, NfbError> {
    let mut out = Vec::new();
    for n in spec.ns()? {
        for identity in generate(&id(n))?.identities() {
            let r = identity_check(m, hyp, &identity, true, cfg).map_err(|source| NfbError::AtN { n, source })?;
            out.push(r.with_note(format!("n = {n}")));
        }
    }
    Ok(out)
}

fn report(m: &FiniteMonoid, spec: &ConditionSpec, checks: Vec<CheckReport>) -> ConditionReport {
    ConditionReport::new(format!("{}", spec.condition), String::from(m.name()), Some(m.order()), Some(spec), checks)
}

/// Runs the checker named by `spec.condition`.
pub fn run(m: &FiniteMonoid, spec: &ConditionSpec, cfg: &Config) -> Result<ConditionReport, NfbError> {
    match spec.condition {
        Condition::Sl1 => check_sl1(m, spec, cfg),
        Condition::Row { row, m: p } => check_table_row(m, row, p, spec, cfg),
        Condition::Psc => check_psc(m, spec, cfg),
        Condition::El { k } => check_el(m, k, spec, cfg),
        Condition::Bsnew { m: p } => check_bsnew(m, p, spec, cfg),
        Condition::Bsnew1 { m: p } => check_bsnew1(m, p, spec, cfg),
    }
}

pub fn check_sl1(m: &FiniteMonoid, spec: &ConditionSpec, cfg: &Config) -> Result<ConditionReport, NfbError> {
    m.require_monoid().map_err(DecideError::from)?;
    let mut checks = scheme_checks(m, "i", |n| SchemeId::new(SchemeName::Sl1).n(n), spec, cfg)?;
    for &(a, c) in &spec.grids.stable {
        let u = cat(&[pw(x(), a), pw(t(), 1), pw(x(), c)]);
        let xs = [OccRef::new(x(), 1), OccRef::new(t(), 1)].into_iter().collect();
        let mut r = l_stable_wrt(m, &u, &xs, spec.bound_for(&u), cfg)?;
        r.hypothesis = String::from("ii");
        checks.push(r);
    }
    let pair = Shape::PowerPair { a: x(), b: y() };
    for &(a, c) in &spec.grids.pair {
        let u = cat(&[pw(x(), a), pw(y(), c)]);
        let mut r = class_shape(m, &u, &pair, spec.bound_for(&u), cfg)?;
        r.hypothesis = String::from("iii");
        checks.push(r);
    }
    let triple = Shape::PowerTriple { a: x(), b: y() };
    for &(a, d, c) in &spec.grids.triple {
        let u = cat(&[pw(x(), a), pw(y(), d), pw(x(), c)]);
        let mut r = class_shape(m, &u, &triple, spec.bound_for(&u), cfg)?;
        r.hypothesis = String::from("iv");
        checks.push(r);
    }
    Ok(report(m, spec, checks))
}

/// (a) the words of the row are isoterms; (b) the identities of the row hold.
pub fn check_table_row(
    m: &FiniteMonoid,
    row: u32,
    p: Option<usize>,
    spec: &ConditionSpec,
    cfg: &Config,
) -> Result<ConditionReport, NfbError> {
    m.require_monoid().map_err(DecideError::from)?;
    let name = SchemeName::from_row(row).ok_or(NfbError::Param("row must be between 1 and 8"))?;
    let with_m = |id: SchemeId| match p {
        Some(p) => id.m(p),
        None => id,
    };
    let mut checks = Vec::new();
    for u in isoterm_words(&with_m(SchemeId::new(name)))? {
        checks.push(isoterm_check(m, "a", &u, spec, cfg)?);
    }
    checks.extend(scheme_checks(m, "b", |n| with_m(SchemeId::new(name).n(n)), spec, cfg)?);
    Ok(report(m, spec, checks))
}

pub fn check_psc(m: &FiniteMonoid, spec: &ConditionSpec, cfg: &Config) -> Result<ConditionReport, NfbError> {
    m.require_monoid().map_err(DecideError::from)?;
    let mut checks = scheme_checks(m, "i", |n| SchemeId::new(SchemeName::Psc).n(n), spec, cfg)?;
    let xyxy = Identity::new(Word::from(vec![x(), y(), x(), y()]), Word::from(vec![x(), y(), y(), x()]));
    checks.push(identity_check(m, "ii", &xyxy, false, cfg)?);
    for u in [vec![x(), y(), t(), y(), x()], vec![x(), t(), y(), x(), y()]] {
        checks.push(isoterm_check(m, "iii", &Word::from(u), spec, cfg)?);
    }
    Ok(report(m, spec, checks))
}

/// Works on semigroups: no identity is ever substituted.
pub fn check_el(m: &FiniteMonoid, k: usize, spec: &ConditionSpec, cfg: &Config) -> Result<ConditionReport, NfbError> {
    let mut checks = scheme_checks(m, "i", |n| SchemeId::new(SchemeName::El).k(k).n(n), spec, cfg)?;
    for id in generate(&SchemeId::new(SchemeName::ElE1).k(k))?.identities() {
        checks.push(identity_check(m, "ii", &id, false, cfg)?);
    }
    for id in generate(&SchemeId::new(SchemeName::ElE2).k(k))?.identities() {
        checks.push(identity_check(m, "iii", &id, true, cfg)?);
    }
    Ok(report(m, spec, checks))
}

/// A scattered subword of length at most `level` in one side only.
fn distinguishing_subword(id: &Identity, level: usize) -> Option<Word> {
    let l = scattered_subwords(&id.lhs, level).ok()?.subwords;
    let r = scattered_subwords(&id.rhs, level).ok()?.subwords;
    l.symmetric_difference(&r).min_by(|a, b| a.shortlex_cmp(b)).cloned()
}

/// Hypothesis (i) of `bsnew`. Monoids built as realizations of `J_level`
/// are decided through scattered subwords and cross-checked by search at
/// the largest `n` the node cap allows.
fn bsnew_scheme(m: &FiniteMonoid, p: usize, spec: &ConditionSpec, cfg: &Config) -> Result<Vec<CheckReport>, NfbError> {
    let id = |n| SchemeId::new(SchemeName::Bsnew).m(p).n(n);
    let Some(level) = m.jm_level() else {
        return scheme_checks(m, "i", id, spec, cfg);
    };
    let mut checks = Vec::new();
    let feasible = |n: usize| (m.order() as u64).checked_pow(n as u32 + 1).is_some_and(|v| v <= cfg.node_cap);
    let cross = spec.ns()?.rev().find(|&n| feasible(n));
    for n in spec.ns()? {
        let identity = generate(&id(n))?.identity().expect("identity scheme").clone();
        let equivalent = jm_equivalent(&identity.lhs, &identity.rhs, level).expect("level ≥ 1");
        let desc = format!("{} ⊨ {identity}", m.name());
        let mut r = if equivalent {
            CheckReport::new("i", desc, CheckStatus::Pass)
        } else {
            let sub = distinguishing_subword(&identity, level).expect("not equivalent");
            let reason = format!("scattered subword of length ≤ {level} in one side only");
            CheckReport::new("i", desc, CheckStatus::Fail).with_witness(Witness::Word { word: sub, reason })
        };
        let mut note = format!("n = {n}; decided by scattered subwords of length ≤ {level}");
        if cross == Some(n) {
            let brute = satisfies(m, &identity, cfg).map_err(|source| NfbError::AtN { n, source })?;
            if brute.holds() == equivalent {
                note.push_str("; agrees with exhaustive search");
            } else {
                note.push_str("; disagrees with exhaustive search");
                r.status = CheckStatus::Fail;
            }
        }
        checks.push(r.with_note(note));
    }
    if cross.is_none() {
        if let Some(last) = checks.last_mut() {
            let note =
                format!("{}; no n in range fits the node cap for a cross-check", last.note.take().unwrap_or_default());
            last.note = Some(note);
        }
    }
    Ok(checks)
}

pub fn check_bsnew(
    m: &FiniteMonoid,
    p: usize,
    spec: &ConditionSpec,
    cfg: &Config,
) -> Result<ConditionReport, NfbError> {
    m.require_monoid().map_err(DecideError::from)?;
    if p < 3 {
        return Err(NfbError::Param("bsnew needs m ≥ 3"));
    }
    let mut checks = bsnew_scheme(m, p, spec, cfg)?;
    let xyyx = Word::from(vec![x(), y(), y(), x()]);
    checks.push(isoterm_check(m, "ii", &xyyx, spec, cfg)?);
    checks.push(isoterm_report(m, "ii", power_isoterm(m, p - 1)?));
    let (t1, t2) = (Variable::indexed('t', 1).expect("ascii"), Variable::indexed('t', 2).expect("ascii"));
    let u = cat(&[pw(x(), p - 2), pw(t1, 1), pw(x(), 1), pw(t2, 1), pw(x(), 1)]);
    checks.push(isoterm_check(m, "iii", &u, spec, cfg)?);
    let u = cat(&[pw(x(), p - 2), Word::from(vec![y(), x(), y(), x()])]);
    let mut r = class_shape(m, &u, &Shape::ExactAtOcc { x: x(), occ: p }, spec.bound_for(&u), cfg)?;
    r.hypothesis = String::from("iv");
    checks.push(r);
    Ok(report(m, spec, checks))
}

pub fn check_bsnew1(
    m: &FiniteMonoid,
    p: usize,
    spec: &ConditionSpec,
    cfg: &Config,
) -> Result<ConditionReport, NfbError> {
    m.require_monoid().map_err(DecideError::from)?;
    if p < 1 {
        return Err(NfbError::Param("bsnew1 needs m ≥ 1"));
    }
    let mut checks = scheme_checks(m, "i", |n| SchemeId::new(SchemeName::Bsnew1).m(p).n(n), spec, cfg)?;
    for d in 1..=p {
        let u = cat(&[pw(x(), p + 1 - d), pw(t(), 1), pw(x(), d)]);
        let mut r = var_stable_wrt(m, &u, x(), spec.bound_for(&u), cfg)?;
        r.hypothesis = String::from("ii");
        checks.push(r);
    }
    let pair = Shape::PowerPair { a: x(), b: y() };
    for &(a, c) in &spec.grids.pair {
        let u = cat(&[pw(x(), a), pw(y(), c)]);
        let mut r = class_shape(m, &u, &pair, spec.bound_for(&u), cfg)?;
        r.hypothesis = String::from("iii");
        checks.push(r);
    }
    Ok(report(m, spec, checks))
}

/// Largest `m` with some `a^m` a factor of a word of `ws`.
pub fn max_power(ws: &[Word]) -> usize {
    ws.iter().flat_map(|w| w.letters().chunk_by(|a, b| a == b).map(<[Variable]>::len)).max().unwrap_or(0)
}

fn adjacency_violation(w: &Word) -> Option<(usize, String)> {
    let counts = w.occ_counts();
    let mut seen: BTreeMap<Variable, usize> = BTreeMap::new();
    let mut rank = Vec::with_capacity(w.len());
    for &v in w {
        let r = seen.entry(v).or_insert(0);
        *r += 1;
        rank.push(*r);
    }
    let first = |i: usize| rank[i] == 1;
    let last = |i: usize| rank[i] == counts[&w.letters()[i]];
    for i in 1..w.len() {
        let (a, b) = (w.letters()[i - 1], w.letters()[i]);
        if a == b || counts[&a] < 2 || counts[&b] < 2 {
            continue;
        }
        if !((first(i - 1) && last(i)) || (last(i - 1) && first(i))) {
            return Some((i - 1, format!("occurrences {}{a} and {}{b} are adjacent", rank[i - 1], rank[i])));
        }
    }
    None
}

/// Whether some word of `ws` has a factor `b^i T b^j` with `T` nonempty.
fn has_gapped_powers(ws: &[Word], i: usize, j: usize) -> bool {
    ws.iter().any(|w| {
        let s = w.letters();
        let runs_of = |len: usize, b: Variable| -> Vec<usize> {
            (0..s.len().saturating_sub(len - 1)).filter(|&p| s[p..p + len].iter().all(|&c| c == b)).collect()
        };
        w.content().into_iter().any(|b| {
            let (left, right) = (runs_of(i, b), runs_of(j, b));
            match (left.first(), right.last()) {
                (Some(&l), Some(&r)) => r > l + i,
                _ => false,
            }
        })
    })
}

/// Syntactic hypotheses on `ws` under which adjoining `A_0^1` as a direct
/// factor to `S(ws)` gives a non-finitely based monoid. `m` defaults to the
/// largest power occurring in `ws`.
pub fn check_corollary_alg(ws: &[Word], m: Option<usize>) -> Result<ConditionReport, NfbError> {
    let p = m.unwrap_or_else(|| max_power(ws));
    if ws.is_empty() || p == 0 {
        return Err(NfbError::Param("the word set must contain a nonempty word and m ≥ 1"));
    }
    let mut checks = Vec::new();
    for w in ws {
        let desc =
            format!("adjacent occurrences of distinct non-linear letters in {} pair a first with a last", w.compact());
        checks.push(match adjacency_violation(w) {
            None => CheckReport::new("a", desc, CheckStatus::Pass),
            Some((_, reason)) => {
                CheckReport::new("a", desc, CheckStatus::Fail).with_witness(Witness::Word { word: w.clone(), reason })
            }
        });
    }
    for d in 1..=p {
        let desc = format!("some word has a factor b^{} T b^{d} with T nonempty", p + 1 - d);
        checks.push(if has_gapped_powers(ws, p + 1 - d, d) {
            CheckReport::new("b", desc, CheckStatus::Pass)
        } else {
            let reason = format!("no factor b^{} T b^{d}", p + 1 - d);
            CheckReport::new("b", desc, CheckStatus::Fail).with_witness(Witness::Word { word: ws[0].clone(), reason })
        });
    }
    let names: Vec<String> = ws.iter().map(Word::compact).collect();
    Ok(ConditionReport::new(format!("alg m={p}"), format!("S({{{}}})", names.join(", ")), None, None, checks))
}
