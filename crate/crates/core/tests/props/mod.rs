//! Randomized properties shared by the property tests and the acceptance run.

#![allow(dead_code)]

use isoterm_core::decide::{is_isoterm, is_isoterm_bounded, satisfies, Config, IsotermStatus};
use isoterm_core::monoids::{dilworth, direct_product, preset, FiniteMonoid};
use isoterm_core::schemes::{generate, SchemeId, SchemeName};
use isoterm_core::words::{
    apply_substitution, e_map, jm_equivalent, l_map, occ_image, occ_preimage, occ_set_stable, var_stable, OccMap,
    Substitution, SubstitutionMode,
};
use isoterm_core::{parse_identity, parse_word, Identity, OccRef, Variable, Word};
use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, RngAlgorithm, TestError, TestRng, TestRunner};
use std::collections::BTreeSet;
use std::sync::OnceLock;

pub const CASES: u32 = 1000;

fn runner(cases: u32) -> TestRunner {
    let config = RunnerConfig { cases, failure_persistence: None, ..RunnerConfig::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| match e {
        TestError::Fail(reason, value) => format!("{reason} at {value:?}"),
        TestError::Abort(reason) => format!("aborted: {reason}"),
    })
}

fn var(s: &str) -> Variable {
    Variable::parse(s).unwrap()
}

pub fn word(alphabet: &'static [&'static str], lo: usize, hi: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..alphabet.len(), lo..=hi)
        .prop_map(move |ix| ix.into_iter().map(|i| var(alphabet[i])).collect())
}

const XYZ: &[&str] = &["x", "y", "z"];
const XY: &[&str] = &["x", "y"];
const ABC: &[&str] = &["a", "b", "c"];

fn check(cond: bool, msg: impl Into<String>) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.into()))
    }
}

fn maps(u: &Word, v: &Word) -> Vec<OccMap> {
    [l_map(u, v), e_map(u, v)].into_iter().filter_map(Result::ok).collect()
}

fn same_kind<'a>(ms: &'a [OccMap], like: &OccMap) -> Option<&'a OccMap> {
    ms.iter().find(|m| m.kind == like.kind)
}

/// Axioms of a good collection: one map per ordered pair, identity on the
/// diagonal, compatibility with composition.
pub fn good_collection(cases: u32) -> Result<(), String> {
    run(cases, (word(XYZ, 1, 7), word(XYZ, 1, 7), word(XYZ, 1, 7)), |(u, v, w)| {
        check(maps(&u, &v) == maps(&u, &v), "maps are functions of the pair")?;
        for f in maps(&u, &u) {
            check(f.pairs.iter().all(|(a, b)| a == b), "diagonal map is the identity")?;
        }
        let (uv, vw, uw) = (maps(&u, &v), maps(&v, &w), maps(&u, &w));
        for f in &uv {
            let (Some(g), Some(h)) = (same_kind(&vw, f), same_kind(&uw, f)) else {
                continue;
            };
            for (&c, &d) in &f.pairs {
                if let Some(e) = g.get(d) {
                    check(h.get(c) == Some(e), format!("composite differs at {c}"))?;
                }
            }
        }
        Ok(())
    })
}

fn subset(u: &Word, mask: u64) -> BTreeSet<OccRef> {
    u.ocs().into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| c).collect()
}

/// Stability composes along chains of maps of one kind.
pub fn stability_transitive(cases: u32) -> Result<(), String> {
    run(cases, (word(XY, 1, 6), word(XY, 1, 6), word(XY, 1, 6), any::<u64>()), |(u, v, w, mask)| {
        let xs = subset(&u, mask);
        for kind in 0..2 {
            let pick = |a: &Word, b: &Word| if kind == 0 { l_map(a, b) } else { e_map(a, b) };
            let (Ok(f), Ok(g), Ok(h)) = (pick(&u, &v), pick(&v, &w), pick(&u, &w)) else {
                continue;
            };
            if !occ_set_stable(&f, &xs, &u, &v) {
                continue;
            }
            let ys = f.image(&xs).expect("stable sets lie in the domain");
            if occ_set_stable(&g, &ys, &v, &w) {
                check(occ_set_stable(&h, &xs, &u, &w), "stability does not compose")?;
            }
        }
        Ok(())
    })
}

fn substitution(letters: &[Variable], images: Vec<Word>) -> Substitution {
    let mut theta = Substitution::new(SubstitutionMode::Monoid);
    for (&x, img) in letters.iter().zip(images) {
        theta.insert(x, img);
    }
    theta
}

fn theta_strategy(lo: usize) -> impl Strategy<Value = Substitution> {
    prop::collection::vec(word(ABC, lo, 3), 3).prop_map(|imgs| substitution(&[var("x"), var("y"), var("z")], imgs))
}

/// Preimages of occurrences are weakly monotone, satisfy the occurrence
/// bounds, and images of distinct occurrences tile `Θ(u)`.
pub fn preimages(cases: u32) -> Result<(), String> {
    run(cases, (word(XYZ, 1, 7), theta_strategy(0)), |(u, theta)| {
        let big = apply_substitution(&theta, &u).unwrap();
        let pre: Vec<OccRef> = big.ocs().iter().map(|&c| occ_preimage(&theta, &u, c).unwrap()).collect();
        let pos = |c: OccRef| u.position(c).unwrap();
        check(pre.windows(2).all(|p| pos(p[0]) <= pos(p[1])), "preimage is not monotone")?;
        for (c, d) in big.ocs().into_iter().zip(&pre) {
            check(u.occ(d.var) <= big.occ(c.var) && d.index <= c.index, format!("occurrence bound fails at {c}"))?;
        }
        let mut covered = 0;
        for c in u.ocs() {
            let r = occ_image(&theta, &u, c).unwrap();
            check(r.start == covered, "images are not contiguous")?;
            covered = r.end;
            for p in r {
                check(pre[p] == c, "image and preimage disagree")?;
            }
        }
        check(covered == big.len(), "images do not cover")
    })
}

pub fn project_erase(cases: u32) -> Result<(), String> {
    run(cases, (word(XYZ, 0, 8), prop::collection::btree_set(0..3usize, 0..=3)), |(u, ix)| {
        let xs: BTreeSet<Variable> = ix.into_iter().map(|i| var(XYZ[i])).collect();
        let rest: BTreeSet<Variable> = u.content().difference(&xs).copied().collect();
        check(u.erase(&xs) == u.project(&rest), "erase is not the complementary projection")
    })
}

/// `J_m` moves: runs of length at least `m` may change length freely above `m`.
fn jm_variant(u: &Word, m: usize, stretch: &[usize]) -> Word {
    let mut out = Word::empty();
    let letters = u.letters();
    let mut i = 0;
    let mut k = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let len = if j - i >= m { m + stretch[k % stretch.len()] } else { j - i };
        k += 1;
        out.extend_from(&Word::letter(letters[i]).pow(len));
        i = j;
    }
    out
}

/// `J_m` equivalence is an equivalence, monotone in `m`, and a congruence.
pub fn jm_laws(cases: u32) -> Result<(), String> {
    let s = (word(XYZ, 1, 10), word(XYZ, 1, 10), word(XYZ, 1, 10), 1..=4usize, prop::collection::vec(0..3usize, 4));
    run(cases, s, |(u, v, w, m, stretch)| {
        let u2 = jm_variant(&u, m, &stretch);
        let v2 = jm_variant(&v, m, &stretch);
        let eq = |a: &Word, b: &Word, k: usize| jm_equivalent(a, b, k).unwrap();
        check(eq(&u, &u, m), "not reflexive")?;
        check(eq(&u, &v, m) == eq(&v, &u, m), "not symmetric")?;
        if eq(&u, &v, m) && eq(&v, &w, m) {
            check(eq(&u, &w, m), "not transitive")?;
        }
        check(eq(&u, &u2, m) && eq(&v, &v2, m), "run stretching is not a J_m move")?;
        check(eq(&u.concat(&v), &u2.concat(&v2), m), "not a congruence")?;
        if eq(&u, &v, m + 1) {
            check(eq(&u, &v, m), "not monotone in m")?;
        }
        if m > 1 {
            check(eq(&u, &u2, m - 1), "not monotone along variants")?;
        }
        Ok(())
    })
}

/// `u ≈ v` is trivial iff every occurrence is l-stable and every variable is stable.
pub fn trivial_iff_stable(cases: u32) -> Result<(), String> {
    run(cases, (word(XY, 1, 5), word(XY, 1, 5)), |(u, v)| {
        let content: BTreeSet<Variable> = u.content().union(&v.content()).copied().collect();
        let all_stable = content.iter().all(|&x| var_stable(&u, &v, x));
        let ocs: BTreeSet<OccRef> = u.ocs().into_iter().collect();
        let l_stable = l_map(&u, &v).is_ok_and(|f| occ_set_stable(&f, &ocs, &u, &v));
        check((u == v) == (all_stable && l_stable), "triviality characterization fails")
    })
}

struct Battery {
    entries: Vec<(FiniteMonoid, Identity)>,
    small: Vec<FiniteMonoid>,
    /// Flattened products of pairs from `small`.
    products: Vec<(usize, usize, FiniteMonoid)>,
    exact: Vec<FiniteMonoid>,
}

fn battery() -> &'static Battery {
    static B: OnceLock<Battery> = OnceLock::new();
    B.get_or_init(|| {
        let l1 = preset("L1").unwrap();
        let a01 = preset("A01").unwrap();
        let brandt = preset("brandt").unwrap();
        let ut3 = preset("ut3").unwrap();
        let sxyyx = dilworth(&[parse_word("xyyx").unwrap()]).unwrap();
        let sata = dilworth(&[parse_word("ata").unwrap()]).unwrap();
        let row1 = generate(&SchemeId::new(SchemeName::Row1).n(2)).unwrap().identity().unwrap().clone();
        let sl1 = generate(&SchemeId::new(SchemeName::Sl1).n(2)).unwrap().identity().unwrap().clone();
        let id = |s: &str| parse_identity(s).unwrap();
        let entries = vec![
            (l1.clone(), id("x x = x x x")),
            (l1.clone(), sl1),
            (a01.clone(), id("x y x y = y x y x")),
            (a01.clone(), id("x y x = x x y x")),
            (brandt.clone(), id("x x = x x x")),
            (brandt.clone(), id("x x y y = y y x x")),
            (ut3.clone(), id("x y x = x y x x")),
            (sxyyx.clone(), row1),
            (sata.clone(), id("x x = x x x")),
        ];
        let small = vec![l1, a01, brandt.clone(), sata.clone()];
        let mut products = Vec::new();
        for i in 0..small.len() {
            for j in 0..small.len() {
                products.push((i, j, direct_product(&small[i], &small[j]).unwrap().flatten().unwrap()));
            }
        }
        Battery { entries, small, products, exact: vec![sxyyx, brandt, sata] }
    })
}

fn cfg() -> Config {
    Config { parallel: false, ..Config::default() }
}

/// Identities survive substitution.
pub fn substitution_closed(cases: u32) -> Result<(), String> {
    let b = battery();
    run(cases, (0..b.entries.len(), prop::collection::vec(word(ABC, 0, 3), 6)), |(i, images)| {
        let (m, id) = &b.entries[i];
        let theta = substitution(&id.variables(), images);
        let img =
            Identity::new(apply_substitution(&theta, &id.lhs).unwrap(), apply_substitution(&theta, &id.rhs).unwrap());
        check(satisfies(m, id, &cfg()).unwrap().holds(), format!("seed {id} fails in {}", m.name()))?;
        check(satisfies(m, &img, &cfg()).unwrap().holds(), format!("{img} fails in {}", m.name()))
    })
}

/// A product satisfies an identity iff both factors do, checked on the
/// flattened Cayley table.
pub fn product_factorization(cases: u32) -> Result<(), String> {
    let b = battery();
    run(cases, (0..b.products.len(), word(XYZ, 1, 6), word(XYZ, 1, 6)), |(k, u, v)| {
        let (i, j, p) = &b.products[k];
        let id = Identity::new(u, v);
        let factor = |m: &FiniteMonoid| satisfies(m, &id, &cfg()).unwrap().holds();
        let verdict = satisfies(p, &id, &cfg()).unwrap();
        check(verdict.holds() == (factor(&b.small[*i]) && factor(&b.small[*j])), format!("{id} in {}", p.name()))?;
        if let Some(a) = verdict.witness {
            let l = isoterm_core::decide::evaluate(p, &id.lhs, &a).unwrap();
            let r = isoterm_core::decide::evaluate(p, &id.rhs, &a).unwrap();
            check(l != r, "witness does not refute")?;
        }
        Ok(())
    })
}

/// Naive evaluation over every assignment, with no pruning.
fn naive_holds(m: &FiniteMonoid, id: &Identity) -> bool {
    let vars = id.variables();
    let n = m.order() as u32;
    let total = (n as u64).pow(vars.len() as u32);
    (0..total).all(|mut code| {
        let mut vals = std::collections::BTreeMap::new();
        for &x in &vars {
            vals.insert(x, (code % n as u64) as u32);
            code /= n as u64;
        }
        let side = |w: &Word| {
            let mut it = w.iter();
            let first = it.next().map(|x| vals[x]);
            match first {
                None => m.identity(),
                Some(f) => Some(it.fold(f, |a, x| m.mul(a, vals[x]))),
            }
        };
        side(&id.lhs) == side(&id.rhs)
    })
}

/// The pruned search agrees with naive enumeration.
pub fn search_vs_naive(cases: u32) -> Result<(), String> {
    let b = battery();
    run(cases, (0..b.small.len(), word(XYZ, 1, 6), word(XYZ, 1, 6)), |(i, u, v)| {
        let m = &b.small[i];
        let id = Identity::new(u, v);
        check(satisfies(m, &id, &cfg()).unwrap().holds() == naive_holds(m, &id), format!("{id} in {}", m.name()))
    })
}

/// Exact isoterm verdicts agree with unrestricted search at bound `|u|`.
pub fn exact_vs_bounded(cases: u32) -> Result<(), String> {
    let b = battery();
    run(cases, (0..b.exact.len(), word(&["x", "y", "t"], 1, 5)), |(i, u)| {
        let m = &b.exact[i];
        let exact = is_isoterm(m, &u, u.len(), &cfg()).unwrap();
        let bounded = is_isoterm_bounded(m, &u, u.len(), &cfg()).unwrap();
        match exact.status {
            IsotermStatus::Isoterm => {
                check(bounded.status == IsotermStatus::IsotermUpToBound, format!("{u} in {}", m.name()))
            }
            IsotermStatus::NotIsoterm => {
                check(bounded.status == IsotermStatus::NotIsoterm, format!("{u} in {}", m.name()))
            }
            IsotermStatus::IsotermUpToBound => Ok(()),
        }
    })
}

pub type Property = fn(u32) -> Result<(), String>;

pub const ALL: &[(&str, Property)] = &[
    ("good collection axioms", good_collection),
    ("stability transitivity", stability_transitive),
    ("preimage monotonicity and occurrence bounds", preimages),
    ("project/erase duality", project_erase),
    ("J_m equivalence, monotonicity and congruence", jm_laws),
    ("trivial iff stable", trivial_iff_stable),
    ("substitution closure of satisfaction", substitution_closed),
    ("product factorization of satisfaction", product_factorization),
    ("pruned search vs naive enumeration", search_vs_naive),
    ("exact vs bounded isoterm agreement", exact_vs_bounded),
];
