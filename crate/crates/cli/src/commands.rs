use crate::args::*;
use crate::error::CliError;
use crate::io::{load_monoid, parse_word_csv, read_word_list, write_output};
use isoterm_core::decide::{
    describe_assignment, equivalence_class, is_isoterm, satisfies, CheckStatus, Config, IsotermStatus,
};
use isoterm_core::monoids::{
    adjoin_identity, dilworth, direct_product, preset, reflexive_relations, triangular_boolean,
};
use isoterm_core::nfb::{self, Condition, ConditionReport, ConditionSpec, Overall};
use isoterm_core::schemes::{generate, SchemeBody, SchemeId, SchemeName};
use isoterm_core::words::{jm_equivalent, scattered_subwords};
use isoterm_core::{parse_identity, parse_word, FiniteMonoid, Word};
use serde_json::{json, Map, Value};
use std::fmt::Write;

/// Result of one command before it is rendered.
pub struct Outcome {
    pub text: String,
    pub exit: u8,
    pub bounds: Map<String, Value>,
    pub result: Value,
}

impl Outcome {
    fn new(text: String, exit: u8, result: Value) -> Self {
        Outcome { text, exit, bounds: Map::new(), result }
    }

    fn bound(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.bounds.insert(key.into(), value.into());
        self
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn monoid_json(m: &FiniteMonoid) -> Value {
    json!({ "name": m.name(), "order": m.order() })
}

pub fn dispatch(cmd: Command, cfg: &Config) -> Result<Outcome, CliError> {
    match cmd {
        Command::Build(a) | Command::Monoid { action: MonoidAction::Build(a) } => build(a),
        Command::CheckIdentity(a) => check_identity(a, cfg),
        Command::Isoterm(a) => isoterm(a, cfg),
        Command::Class(a) => class(a, cfg),
        Command::Subwords(a) => subwords(a),
        Command::Jm(a) => jm(a),
        Command::Nfb { action: NfbAction::Verify(a) } => verify(a, cfg),
        Command::Scheme(a) => scheme(a),
    }
}

fn build(a: BuildArgs) -> Result<Outcome, CliError> {
    let s = a.source;
    let mut m = if let Some(p) = s.preset {
        preset(&p)?
    } else if let Some(ws) = s.dilworth {
        dilworth(&parse_word_csv(&ws)?)?
    } else if let Some(path) = s.dilworth_file {
        dilworth(&read_word_list(&path)?)?
    } else if let Some(k) = s.reflexive {
        reflexive_relations(k)?
    } else if let Some(k) = s.triangular {
        triangular_boolean(k, a.unit_diagonal)?
    } else if let Some(fs) = s.product {
        direct_product(&load_monoid(&fs[0])?, &load_monoid(&fs[1])?)?
    } else {
        return Err(CliError::usage("no monoid source given"));
    };
    if a.adjoin_identity {
        m = adjoin_identity(&m)?;
    }
    if let Some(name) = a.name {
        m = m.with_name(name);
    }
    let doc = m.to_doc()?;
    let body = serde_json::to_string_pretty(&doc).expect("monoid doc serializes") + "\n";
    let text = match &a.out {
        Some(path) => {
            write_output(path, &body)?;
            format!("{} (order {}) written to {}\n", doc.name, doc.order, path.display())
        }
        None => body,
    };
    let result = json!({
        "name": doc.name,
        "order": doc.order,
        "identity": doc.identity,
        "zero": doc.zero,
        "out": a.out.map(|p| p.display().to_string()),
    });
    Ok(Outcome::new(text, 0, result))
}

fn check_identity(a: CheckArgs, cfg: &Config) -> Result<Outcome, CliError> {
    let m = load_monoid(&a.monoid)?;
    let id = parse_identity(&a.identity)?;
    let verdict = satisfies(&m, &id, cfg)?;
    let (text, witness) = match &verdict.witness {
        None => (format!("holds: {id} in {}\n", m.name()), Value::Null),
        Some(w) => {
            let values: Map<String, Value> = w.iter().map(|(x, &e)| (x.to_string(), m.name_of(e).into())).collect();
            (format!("fails: {id} in {} at {}\n", m.name(), describe_assignment(&m, w)), Value::Object(values))
        }
    };
    let result = json!({
        "monoid": monoid_json(&m),
        "identity": id.to_string(),
        "verdict": if verdict.holds() { "holds" } else { "fails" },
        "witness": witness,
    });
    Ok(Outcome::new(text, if verdict.holds() { 0 } else { 1 }, result))
}

fn isoterm(a: IsotermArgs, cfg: &Config) -> Result<Outcome, CliError> {
    let m = load_monoid(&a.monoid)?;
    let u = parse_word(&a.word)?;
    let bound = a.bound.unwrap_or(u.len() + 2);
    let v = is_isoterm(&m, &u, bound, cfg)?;
    let (mut text, exit) = match v.status {
        IsotermStatus::Isoterm => (format!("isoterm: {u} for {}\n", m.name()), 0),
        IsotermStatus::NotIsoterm => {
            let w = v.witness.as_ref().expect("refuted verdicts carry a word");
            (
                format!(
                    "not an isoterm: {} holds in {}\n",
                    isoterm_core::Identity::new(u.clone(), w.clone()),
                    m.name()
                ),
                1,
            )
        }
        IsotermStatus::IsotermUpToBound => {
            (format!("isoterm up to length {bound}: no other word of length ≤ {bound} is equivalent to {u}\n"), 2)
        }
    };
    if let Some(c) = &v.certificate {
        let _ = writeln!(text, "exact: {} rearrangements checked; {}", c.candidates_checked, c.argument);
    }
    let mut result = to_value(&v);
    result["monoid"] = monoid_json(&m);
    Ok(Outcome::new(text, exit, result).bound("bound", bound))
}

fn class(a: ClassArgs, cfg: &Config) -> Result<Outcome, CliError> {
    let m = load_monoid(&a.monoid)?;
    let u = parse_word(&a.word)?;
    let window = equivalence_class(&m, &u, a.bound, cfg)?;
    let mut text = String::new();
    for w in &window.members {
        let _ = writeln!(text, "{w}");
    }
    let n = window.members.len();
    if window.complete {
        let _ = writeln!(text, "{n} words: the whole class of {u} under {}", m.name());
    } else {
        let _ = writeln!(text, "{n} words of length ≤ {}: the class of {u} under {} may be larger", a.bound, m.name());
    }
    let mut result = to_value(&window);
    result["monoid"] = monoid_json(&m);
    Ok(Outcome::new(text, if window.complete { 0 } else { 2 }, result).bound("bound", a.bound))
}

fn subwords(a: SubwordsArgs) -> Result<Outcome, CliError> {
    let u = parse_word(&a.word)?;
    let m = a.m as usize;
    let p = scattered_subwords(&u, m)?;
    let mut text = String::new();
    for len in 1..=m {
        let of_len: Vec<String> = p.subwords.iter().filter(|w| w.len() == len).map(Word::compact).collect();
        if !of_len.is_empty() {
            let _ = writeln!(text, "{len}: {}", of_len.join(" "));
        }
    }
    let result = json!({ "word": u.to_string(), "m": m, "subwords": to_value(&p.subwords) });
    Ok(Outcome::new(text, 0, result))
}

fn jm(a: JmArgs) -> Result<Outcome, CliError> {
    let u = parse_word(&a.u)?;
    let v = parse_word(&a.v)?;
    let m = a.m as usize;
    let equivalent = jm_equivalent(&u, &v, m)?;
    let (text, distinguisher) = if equivalent {
        (format!("equivalent: {u} and {v} have the same subwords of length ≤ {m}\n"), Value::Null)
    } else {
        let su = scattered_subwords(&u, m)?.subwords;
        let sv = scattered_subwords(&v, m)?.subwords;
        let (w, side) = su
            .symmetric_difference(&sv)
            .min_by(|x, y| x.shortlex_cmp(y))
            .map(|w| (w.clone(), if su.contains(w) { "u" } else { "v" }))
            .expect("inequivalent words differ in some subword");
        let (has, lacks) = if side == "u" { (&u, &v) } else { (&v, &u) };
        let text = format!("not equivalent: {w} is a subword of {has} but not of {lacks}\n");
        (text, json!({ "subword": w.to_string(), "in": side }))
    };
    let result = json!({
        "u": u.to_string(),
        "v": v.to_string(),
        "m": m,
        "equivalent": equivalent,
        "distinguisher": distinguisher,
    });
    Ok(Outcome::new(text, if equivalent { 0 } else { 1 }, result))
}

fn condition(a: &VerifyArgs) -> Result<Condition, CliError> {
    use ConditionName::*;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::usage(format!("this condition needs {flag}")));
    let unused = |v: Option<usize>, flag: &str| match v {
        Some(_) => Err(CliError::usage(format!("this condition does not take {flag}"))),
        None => Ok(()),
    };
    let row = |r: u32| Condition::Row { row: r, m: a.m };
    let c = match a.condition {
        Sl1 => Condition::Sl1,
        Row1 => row(1),
        Row2 => row(2),
        Row3 => row(3),
        Row4 => row(4),
        Row5 => row(5),
        Row6 => row(6),
        Row7 => row(7),
        Row8 => row(8),
        Psc => Condition::Psc,
        El => Condition::El { k: need(a.k, "--k")? },
        Bsnew => Condition::Bsnew { m: need(a.m, "--m")? },
        Bsnew1 => Condition::Bsnew1 { m: need(a.m, "--m")? },
        Alg => unreachable!("handled by the caller"),
    };
    if a.condition != El {
        unused(a.k, "--k")?;
    }
    if matches!(a.condition, Sl1 | Psc | El) {
        unused(a.m, "--m")?;
    }
    Ok(c)
}

fn render_report(r: &ConditionReport) -> String {
    let mut text = String::new();
    let order = r.order.map(|o| format!(" (order {o})")).unwrap_or_default();
    let _ = write!(text, "{} on {}{order}", r.condition, r.monoid);
    if r.n_max > 0 {
        let _ = write!(text, ", n = {}..{}", r.n_min, r.n_max);
    }
    text.push('\n');
    for c in &r.checks {
        let _ = write!(text, "  {:<12} {:<4} {}", c.status.as_str(), c.hypothesis, c.description);
        if let Some(b) = c.bound {
            let _ = write!(text, " [bound {b}]");
        }
        if let Some(n) = &c.note {
            let _ = write!(text, " ({n})");
        }
        text.push('\n');
        if let Some(w) = &c.witness {
            let _ = writeln!(text, "               witness: {w}");
        }
        if let Some(w) = &c.evidence {
            let _ = writeln!(text, "               evidence: {w}");
        }
    }
    match &r.overall {
        Overall::AllPass => text.push_str("all hypotheses pass\n"),
        Overall::Fail { hypothesis, witness } => {
            let _ = write!(text, "fails at hypothesis {hypothesis}");
            if let Some(w) = witness {
                let _ = write!(text, ": {w}");
            }
            text.push('\n');
        }
    }
    let _ = writeln!(text, "note: {}", r.scale_note);
    text
}

fn verify(a: VerifyArgs, cfg: &Config) -> Result<Outcome, CliError> {
    let report = if a.condition == ConditionName::Alg {
        if a.monoid.is_some() || a.k.is_some() {
            return Err(CliError::usage("alg takes a word set (--words or --words-file) and optionally --m"));
        }
        let ws = match (&a.words, &a.words_file) {
            (Some(s), None) => parse_word_csv(s)?,
            (None, Some(p)) => read_word_list(p)?,
            _ => return Err(CliError::usage("alg needs --words or --words-file")),
        };
        nfb::check_corollary_alg(&ws, a.m)?
    } else {
        if a.words.is_some() || a.words_file.is_some() {
            return Err(CliError::usage("only alg takes a word set"));
        }
        let name = a.monoid.as_deref().ok_or_else(|| CliError::usage("this condition needs --monoid"))?;
        let m = load_monoid(name)?;
        let spec = ConditionSpec::new(condition(&a)?).n_range(a.n_min, a.n_max).bound(a.bound);
        nfb::run(&m, &spec, cfg)?
    };
    let exit = if !report.all_pass() {
        1
    } else if report.checks.iter().any(|c| c.status == CheckStatus::BoundedPass) {
        2
    } else {
        0
    };
    let out = Outcome::new(render_report(&report), exit, to_value(&report));
    Ok(if a.condition == ConditionName::Alg {
        out
    } else {
        let out = out.bound("n_min", a.n_min).bound("n_max", a.n_max);
        match a.bound {
            Some(b) => out.bound("bound", b),
            None => out.bound("bound", "|u| + 2"),
        }
    })
}

fn scheme(a: SchemeArgs) -> Result<Outcome, CliError> {
    let name: SchemeName = a.scheme.parse()?;
    let mut id = SchemeId::new(name);
    id.params.n = a.n;
    id.params.m = a.m;
    id.params.k = a.k;
    id.params.d = a.d;
    let out = generate(&id)?;
    let mut text = String::new();
    let body = match &out.body {
        SchemeBody::Identity(i) => {
            let _ = writeln!(text, "{i}");
            json!({ "identity": i.to_string() })
        }
        SchemeBody::Words(ws) => {
            for w in ws {
                let _ = writeln!(text, "{w}");
            }
            json!({ "words": to_value(ws) })
        }
    };
    for c in &out.companions {
        let _ = writeln!(text, "{c}");
    }
    let roles: Map<String, Value> = out.roles.iter().map(|(x, r)| (x.to_string(), to_value(r))).collect();
    let result = json!({
        "scheme": to_value(&id),
        "body": body,
        "companions": to_value(&out.companions),
        "roles": roles,
    });
    Ok(Outcome::new(text, 0, result))
}
