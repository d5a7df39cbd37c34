//! Acceptance run: one line per criterion, with pinned thresholds and time limits.

mod props;

use isoterm_core::decide::{is_isoterm, satisfies, verify_witness, Config, IsotermStatus, Witness};
use isoterm_core::monoids::{
    dilworth, direct_product, from_rules, preset, triangular_boolean, FiniteMonoid, RewriteSystem,
};
use isoterm_core::nfb::{run, Condition, ConditionReport, ConditionSpec};
use isoterm_core::schemes::{generate, isoterm_words, SchemeId, SchemeName};
use isoterm_core::words::jm_equivalent;
use isoterm_core::{parse_identity, parse_word, Identity, Variable, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

type Builder = Box<dyn Fn() -> FiniteMonoid>;
type Criterion = fn() -> Outcome;

fn cfg() -> Config {
    Config::default()
}

fn w(s: &str) -> Word {
    parse_word(s).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn verify(m: &FiniteMonoid, spec: ConditionSpec) -> Result<ConditionReport, String> {
    run(m, &spec, &cfg()).map_err(|e| format!("{} on {}: {e}", spec.condition, m.name()))
}

fn all_witnesses_verify(m: &FiniteMonoid, r: &ConditionReport) -> Result<(), String> {
    for c in &r.checks {
        for wit in c.witness.iter().chain(c.evidence.iter()) {
            ensure(verify_witness(m, wit, &cfg()).unwrap_or(false), format!("witness does not verify: {wit}"))?;
        }
    }
    Ok(())
}

fn c1_orders() -> Outcome {
    let l_rules = RewriteSystem::parse("L", "a b", &["aa -> a", "bb -> b", "aba -> 0"]).map_err(|e| e.to_string())?;
    let cases: Vec<(&str, Builder, usize)> = vec![
        ("perkins25", Box::new(|| preset("perkins25").unwrap()), 25),
        ("L from rules", Box::new(move || from_rules(&l_rules, 10_000).unwrap()), 6),
        ("A0", Box::new(|| preset("A0").unwrap()), 4),
        ("A2", Box::new(|| preset("A2").unwrap()), 5),
        ("brandt", Box::new(|| preset("brandt").unwrap()), 6),
        ("reflexive3", Box::new(|| preset("reflexive3").unwrap()), 64),
        ("reflexive4", Box::new(|| preset("reflexive4").unwrap()), 4096),
    ];
    let mut slowest = Duration::ZERO;
    for (name, build, want) in cases {
        let t = Instant::now();
        let got = build().order();
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        ensure(got == want, format!("{name}: order {got}, expected {want}"))?;
        ensure(dt < Duration::from_secs(1), format!("{name}: {dt:?} ≥ 1 s"))?;
    }
    Ok(format!("7 orders exact, slowest {slowest:.2?}"))
}

fn c2_sl1() -> Outcome {
    let l1 = preset("L1").unwrap();
    let r = verify(&l1, ConditionSpec::new(Condition::Sl1).n_range(2, 5).bound(Some(8)))?;
    ensure(r.all_pass(), format!("failed hypotheses {:?}", r.failed_hypotheses()))?;
    for h in ["i", "ii", "iii", "iv"] {
        ensure(r.hypothesis(h).count() > 0, format!("no checks for ({h})"))?;
    }
    Ok(format!("{} checks pass (scheme for n = 2..5, grids at bound 8)", r.checks.len()))
}

fn c3_el() -> Outcome {
    let l = preset("L").unwrap();
    ensure(!l.is_monoid(), "L must be a semigroup")?;
    let r = verify(&l, ConditionSpec::new(Condition::El { k: 2 }).n_range(2, 5))?;
    ensure(r.all_pass(), format!("failed hypotheses {:?}", r.failed_hypotheses()))?;
    let e1 = r.hypothesis("ii").next().ok_or("no (e1) check")?;
    let wit = e1.evidence.as_ref().ok_or("(e1) has no recorded witness")?;
    ensure(verify_witness(&l, wit, &cfg()).unwrap(), "(e1) witness does not refute")?;
    ensure(r.hypothesis("iii").count() == 3, "expected three (e2) identities")?;
    Ok(format!("scheme holds for n = 2..5, (e1) refuted by {wit}, 3 (e2) identities hold"))
}

fn c4_psc() -> Outcome {
    let b = preset("brandt").unwrap();
    let r = verify(&b, ConditionSpec::new(Condition::Psc).n_range(2, 4).bound(Some(7)))?;
    ensure(r.all_pass(), format!("failed hypotheses {:?}", r.failed_hypotheses()))?;
    all_witnesses_verify(&b, &r)?;
    let iso: Vec<&str> = r.hypothesis("iii").map(|c| c.status.as_str()).collect();
    Ok(format!("scheme holds for n = 2..4, xyxy ≈ xyyx refuted, isoterm checks {iso:?}"))
}

fn c5_rows() -> Outcome {
    let mut summary = Vec::new();
    for row in 1..=8u32 {
        let m = (row == 8).then_some(3);
        let mut id = SchemeId::new(SchemeName::from_row(row).unwrap());
        if let Some(m) = m {
            id = id.m(m);
        }
        let ws = isoterm_words(&id).map_err(|e| e.to_string())?;
        let s = dilworth(&ws).map_err(|e| e.to_string())?;
        let r = verify(&s, ConditionSpec::new(Condition::Row { row, m }).n_range(2, 3))?;
        ensure(r.all_pass(), format!("row {row}: failed hypotheses {:?}", r.failed_hypotheses()))?;
        summary.push(format!("{row}:{}", s.order()));
    }
    Ok(format!("rows pass on S(W) of orders {}", summary.join(" ")))
}

fn all_words(alphabet: &[Variable], max: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max {
        let mut next = Vec::new();
        for u in &layer {
            for &x in alphabet {
                let mut v = u.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &[Variable], max: usize) -> Word {
    let len = rng.gen_range(1..=max);
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

/// A nearby word: a letter inserted, deleted, duplicated or swapped.
fn perturb(rng: &mut ChaCha8Rng, u: &Word, alphabet: &[Variable], max: usize) -> Word {
    let mut v = u.letters().to_vec();
    match rng.gen_range(0..4) {
        0 if v.len() < max => {
            let i = rng.gen_range(0..=v.len());
            v.insert(i, alphabet[rng.gen_range(0..alphabet.len())]);
        }
        1 if v.len() > 1 => {
            v.remove(rng.gen_range(0..v.len()));
        }
        2 if v.len() < max => {
            let i = rng.gen_range(0..v.len());
            v.insert(i, v[i]);
        }
        _ if v.len() > 1 => {
            let i = rng.gen_range(0..v.len() - 1);
            v.swap(i, i + 1);
        }
        _ => {}
    }
    Word::from(v)
}

fn triangle_battery() -> Vec<Identity> {
    let xy = [Variable::new('x').unwrap(), Variable::new('y').unwrap()];
    let xyz = [xy[0], xy[1], Variable::new('z').unwrap()];
    let words = all_words(&xy, 5);
    let mut ids = Vec::new();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            ids.push(Identity::new(u.clone(), v.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..250 {
        ids.push(Identity::new(random_word(&mut rng, &xyz, 7), random_word(&mut rng, &xyz, 7)));
    }
    for _ in 0..250 {
        let u = random_word(&mut rng, &xyz, 7);
        let v = perturb(&mut rng, &u, &xyz, 7);
        ids.push(Identity::new(u, v));
    }
    ids
}

fn c6_triangle() -> Outcome {
    let a01 = preset("A01").unwrap();
    let r3 = preset("reflexive3").unwrap();
    let ids = triangle_battery();
    let (mut agree_holds, mut disagreements) = (0, Vec::new());
    for id in &ids {
        let j = jm_equivalent(&id.lhs, &id.rhs, 2).unwrap();
        let a = satisfies(&a01, id, &cfg()).map_err(|e| e.to_string())?.holds();
        let r = satisfies(&r3, id, &cfg()).map_err(|e| e.to_string())?.holds();
        if j == a && a == r {
            agree_holds += j as usize;
        } else {
            disagreements.push(format!("{id}: J2={j} A01={a} R3={r}"));
        }
    }
    if let Some(first) = disagreements.first() {
        return Err(format!("{} disagreements, first {first}", disagreements.len()));
    }
    Ok(format!("{} identities, 0 disagreements, {agree_holds} in J_2", ids.len()))
}

/// Which Boolean triangular variant has the theory `J_2`.
fn triangular_finding() -> String {
    let ids = triangle_battery();
    let count = |m: &FiniteMonoid| {
        ids.iter()
            .filter(|id| satisfies(m, id, &cfg()).unwrap().holds() != jm_equivalent(&id.lhs, &id.rhs, 2).unwrap())
            .count()
    };
    let unit = triangular_boolean(3, true).unwrap();
    let full = triangular_boolean(3, false).unwrap();
    let power = parse_identity("x x = x x x").unwrap();
    format!(
        "unit-diagonal UT(3): {} disagreements with J_2; T(3) with free diagonal: {} disagreements, x^2 ≈ x^3 {}",
        count(&unit),
        count(&full),
        if satisfies(&full, &power, &cfg()).unwrap().holds() { "holds" } else { "fails" }
    )
}

fn c7_j4_and_proxy() -> Outcome {
    for n in 2..=6 {
        let id = generate(&SchemeId::new(SchemeName::Bsnew).m(4).n(n)).unwrap().identity().unwrap().clone();
        ensure(jm_equivalent(&id.lhs, &id.rhs, 4).unwrap(), format!("bsnew m=4 n={n} not in J_4"))?;
    }
    let proxy = preset("ut4").unwrap();
    ensure(proxy.jm_level() == Some(3), "ut4 must realize J_3")?;
    let r = verify(&proxy, ConditionSpec::new(Condition::Bsnew { m: 3 }).n_range(2, 5))?;
    ensure(r.failed_hypotheses() == ["iii"], format!("failed hypotheses {:?}", r.failed_hypotheses()))?;
    let expected = Identity::new(w("x t1 x t2 x"), w("x t1 x x t2 x"));
    let wit = r.hypothesis("iii").find_map(|c| c.witness.clone()).ok_or("no witness for (iii)")?;
    ensure(wit == Witness::Satisfied { identity: expected.clone() }, format!("witness {wit}"))?;
    ensure(satisfies(&proxy, &expected, &cfg()).unwrap().holds(), "witness identity does not hold")?;
    Ok(format!("bsnew(4, n) ∈ J_4 for n = 2..6; UT(4) fails only (iii) with {expected}"))
}

fn c8_products() -> Outcome {
    let ut4 = preset("ut4").unwrap();
    let s3 = dilworth(&[w("a t1 a t2 a")]).unwrap();
    let p = direct_product(&ut4, &s3).unwrap();
    let spec = || ConditionSpec::new(Condition::Bsnew { m: 3 }).n_range(2, 3);
    let rp = verify(&p, spec())?;
    ensure(rp.all_pass(), format!("UT(4) × S(at1at2a) fails {:?}", rp.failed_hypotheses()))?;
    all_witnesses_verify(&p, &rp)?;
    let r_ut = verify(&ut4, spec())?.failed_hypotheses();
    let r_s = verify(&s3, spec())?.failed_hypotheses();
    ensure(r_ut == ["iii"], format!("UT(4) alone fails {r_ut:?}"))?;
    ensure(!r_s.is_empty() && !r_s.contains(&String::from("iii")), format!("S(at1at2a) alone fails {r_s:?}"))?;

    let a01 = preset("A01").unwrap();
    let sata = dilworth(&[w("ata")]).unwrap();
    let q = direct_product(&a01, &sata).unwrap();
    let spec1 = || ConditionSpec::new(Condition::Bsnew1 { m: 1 }).n_range(2, 4);
    let rq = verify(&q, spec1())?;
    ensure(rq.all_pass(), format!("A01 × S(ata) fails {:?}", rq.failed_hypotheses()))?;
    let f_a = verify(&a01, spec1())?.failed_hypotheses();
    let f_s = verify(&sata, spec1())?.failed_hypotheses();
    ensure(f_a == ["ii"], format!("A01 alone fails {f_a:?}"))?;
    ensure(f_s == ["iii"], format!("S(ata) alone fails {f_s:?}"))?;
    Ok(format!(
        "bsnew m=3: product (order {}) passes, UT(4) fails {r_ut:?}, S(at1at2a) fails {r_s:?}; \
         bsnew1 m=1: product (order {}) passes, A01 fails {f_a:?}, S(ata) fails {f_s:?}",
        p.order(),
        q.order()
    ))
}

fn c9_xtx() -> Outcome {
    let l1 = preset("L1").unwrap();
    let v = is_isoterm(&l1, &w("xtx"), 6, &cfg()).map_err(|e| e.to_string())?;
    ensure(v.status == IsotermStatus::NotIsoterm, format!("status {:?}", v.status))?;
    let other = v.witness.ok_or("no witness")?;
    let id = Identity::new(w("xtx"), other);
    ensure(!id.is_trivial() && satisfies(&l1, &id, &cfg()).unwrap().holds(), "witness does not verify")?;
    Ok(format!("witness {id}"))
}

fn c10_properties() -> Outcome {
    for (name, prop) in props::ALL {
        prop(props::CASES).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites × {} cases, 0 failures", props::ALL.len(), props::CASES))
}

fn main() {
    let criteria: [(&str, u64, Criterion); 10] = [
        ("orders of named monoids", 7, c1_orders),
        ("L^1 satisfies the SL1 scheme and sub-conditions", 180, c2_sl1),
        ("L passes the EL condition for k = 2", 60, c3_el),
        ("Brandt monoid passes the PSC condition", 120, c4_psc),
        ("Table 1 rows on their S(W)", 180, c5_rows),
        ("J_2, A_0^1 and reflexive relations on 3 points agree", 120, c6_triangle),
        ("J_4 scheme identity and the S_4 proxy", 60, c7_j4_and_proxy),
        ("direct products pass where factors fail", 120, c8_products),
        ("xtx is not an isoterm for L^1", 10, c9_xtx),
        ("property suites", 600, c10_properties),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let dt = t.elapsed();
        let outcome = match outcome {
            Ok(detail) if dt > Duration::from_secs(*limit) => Err(format!("{detail}; took {dt:.1?} > {limit} s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name} ({dt:.2?}): {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {:>2}. {name} ({dt:.2?}): {reason}", i + 1);
            }
        }
    }
    println!("INFO      triangular variants: {}", triangular_finding());
    println!("{} of 10 criteria pass in {:.1?}", 10 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
