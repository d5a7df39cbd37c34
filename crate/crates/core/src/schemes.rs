//! Generators for the parametric words and identity families.

use crate::words::{Identity, Variable, Word};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemeError {
    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),
    #[error("scheme `{scheme}` needs parameter `{param}`")]
    MissingParam { scheme: SchemeName, param: char },
    #[error("scheme `{scheme}` does not take parameter `{param}`")]
    UnusedParam { scheme: SchemeName, param: char },
    #[error("scheme `{scheme}`: {reason}")]
    InvalidParam { scheme: SchemeName, reason: &'static str },
    #[error("block length must be at least 1")]
    EmptyBlock,
    #[error("scheme `{0}` has no isoterm word set")]
    NoWordSet(SchemeName),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SchemeName {
    Row1,
    Row2,
    Row3,
    Row4,
    Row5,
    Row6,
    Row7,
    Row8,
    Sl1,
    Trahtman,
    JacksonAlt,
    Psc,
    El,
    ElE1,
    ElE2,
    Bsnew,
    Bsnew1,
    BlanchetSadri,
    Zimin,
}

impl SchemeName {
    pub const ALL: [SchemeName; 19] = [
        SchemeName::Row1,
        SchemeName::Row2,
        SchemeName::Row3,
        SchemeName::Row4,
        SchemeName::Row5,
        SchemeName::Row6,
        SchemeName::Row7,
        SchemeName::Row8,
        SchemeName::Sl1,
        SchemeName::Trahtman,
        SchemeName::JacksonAlt,
        SchemeName::Psc,
        SchemeName::El,
        SchemeName::ElE1,
        SchemeName::ElE2,
        SchemeName::Bsnew,
        SchemeName::Bsnew1,
        SchemeName::BlanchetSadri,
        SchemeName::Zimin,
    ];

    pub fn as_str(self) -> &'static str {
        use SchemeName::*;
        match self {
            Row1 => "row1",
            Row2 => "row2",
            Row3 => "row3",
            Row4 => "row4",
            Row5 => "row5",
            Row6 => "row6",
            Row7 => "row7",
            Row8 => "row8",
            Sl1 => "sl1",
            Trahtman => "trahtman",
            JacksonAlt => "jackson_alt",
            Psc => "psc",
            El => "el",
            ElE1 => "el_e1",
            ElE2 => "el_e2",
            Bsnew => "bsnew",
            Bsnew1 => "bsnew1",
            BlanchetSadri => "blanchet_sadri",
            Zimin => "zimin",
        }
    }

    /// Table row number, for `row1..row8`.
    pub fn row(self) -> Option<u32> {
        use SchemeName::*;
        match self {
            Row1 => Some(1),
            Row2 => Some(2),
            Row3 => Some(3),
            Row4 => Some(4),
            Row5 => Some(5),
            Row6 => Some(6),
            Row7 => Some(7),
            Row8 => Some(8),
            _ => None,
        }
    }

    pub fn from_row(row: u32) -> Option<SchemeName> {
        SchemeName::ALL.into_iter().find(|s| s.row() == Some(row))
    }

    /// Parameters accepted by the scheme.
    pub fn params(self) -> &'static [char] {
        use SchemeName::*;
        match self {
            Row8 | Bsnew | Bsnew1 | BlanchetSadri => &['m', 'n'],
            El => &['k', 'n'],
            ElE1 | ElE2 | Zimin => &['k'],
            _ => &['n'],
        }
    }

    /// Parameters needed for the word set (a subset of [`params`](Self::params)).
    fn word_params(self) -> &'static [char] {
        use SchemeName::*;
        match self {
            Row8 | Bsnew => &['m'],
            Zimin => &['k'],
            _ => &[],
        }
    }
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeName {
    type Err = SchemeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchemeName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| SchemeError::UnknownScheme(String::from(s)))
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchemeParams {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub d: Option<usize>,
}

impl SchemeParams {
    fn get(&self, p: char) -> Option<usize> {
        match p {
            'n' => self.n,
            'm' => self.m,
            'k' => self.k,
            'd' => self.d,
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchemeId {
    pub name: SchemeName,
    pub params: SchemeParams,
}

impl SchemeId {
    pub fn new(name: SchemeName) -> Self {
        SchemeId { name, params: SchemeParams::default() }
    }

    pub fn n(mut self, n: usize) -> Self {
        self.params.n = Some(n);
        self
    }

    pub fn m(mut self, m: usize) -> Self {
        self.params.m = Some(m);
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.params.k = Some(k);
        self
    }

    pub fn d(mut self, d: usize) -> Self {
        self.params.d = Some(d);
        self
    }

    fn check(&self, required: &[char]) -> Result<(), SchemeError> {
        let scheme = self.name;
        for p in ['n', 'm', 'k', 'd'] {
            if self.params.get(p).is_some() && !scheme.params().contains(&p) {
                return Err(SchemeError::UnusedParam { scheme, param: p });
            }
        }
        for &p in required {
            if self.params.get(p).is_none() {
                return Err(SchemeError::MissingParam { scheme, param: p });
            }
        }
        let bad = |reason| Err(SchemeError::InvalidParam { scheme, reason });
        if self.params.n == Some(0) {
            return bad("n must be at least 1");
        }
        use SchemeName::*;
        match (scheme, self.params.m, self.params.k) {
            (Row8, Some(m), _) if m < 3 => bad("m must be greater than 2"),
            (Bsnew | BlanchetSadri, Some(m), _) if m < 3 => bad("m must be at least 3"),
            (Bsnew1, Some(0), _) => bad("m must be at least 1"),
            (El | ElE1 | ElE2, _, Some(k)) if k < 2 => bad("k must be greater than 1"),
            (Zimin, _, Some(0)) => bad("k must be at least 1"),
            _ => Ok(()),
        }
    }

    fn get(&self, p: char) -> usize {
        self.params.get(p).unwrap_or(0)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for p in ['n', 'm', 'k', 'd'] {
            if let Some(v) = self.params.get(p) {
                write!(f, " {p}={v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Role {
    XLike,
    YIndexed,
    LinearT,
    ZIndexed,
    PIndexed,
    QIndexed,
    RIndexed,
}

impl Role {
    fn of(x: Variable) -> Role {
        match x.letter() {
            'y' => Role::YIndexed,
            't' => Role::LinearT,
            'z' => Role::ZIndexed,
            'p' => Role::PIndexed,
            'q' => Role::QIndexed,
            'r' => Role::RIndexed,
            _ => Role::XLike,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SchemeBody {
    Identity(Identity),
    Words(Vec<Word>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemeOutput {
    pub body: SchemeBody,
    /// Further identities generated together with the main one (`el_e2`).
    pub companions: Vec<Identity>,
    pub roles: BTreeMap<Variable, Role>,
}

impl SchemeOutput {
    pub fn identity(&self) -> Option<&Identity> {
        match &self.body {
            SchemeBody::Identity(id) => Some(id),
            SchemeBody::Words(_) => None,
        }
    }

    /// The main identity followed by the companions.
    pub fn identities(&self) -> Vec<Identity> {
        self.identity().into_iter().chain(self.companions.iter()).cloned().collect()
    }

    fn from_identity(id: Identity, companions: Vec<Identity>) -> Self {
        let roles = id
            .lhs
            .iter()
            .chain(id.rhs.iter())
            .chain(companions.iter().flat_map(|c| c.lhs.iter().chain(c.rhs.iter())))
            .map(|&x| (x, Role::of(x)))
            .collect();
        SchemeOutput { body: SchemeBody::Identity(id), companions, roles }
    }
}

/// Shape of an indexed block.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Block {
    /// `a1 a2 … an`
    Up(char),
    /// `an … a2 a1`
    Down(char),
    /// `a1 b1 a2 b2 … an bn`
    Zip(char, char),
}

fn var(letter: char, i: usize) -> Variable {
    Variable::indexed(letter, i as u32).expect("scheme letters are ASCII")
}

fn plain(letter: char) -> Variable {
    Variable::new(letter).expect("scheme letters are ASCII")
}

pub fn block(kind: Block, n: usize) -> Result<Word, SchemeError> {
    if n == 0 {
        return Err(SchemeError::EmptyBlock);
    }
    Ok(match kind {
        Block::Up(a) => (1..=n).map(|i| var(a, i)).collect(),
        Block::Down(a) => (1..=n).rev().map(|i| var(a, i)).collect(),
        Block::Zip(a, b) => (1..=n).flat_map(|i| [var(a, i), var(b, i)]).collect(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    After,
    Before,
}

/// Supplies fresh linear letters `t1, t2, …` skipping names already in use.
#[derive(Clone, Debug)]
pub struct Fresh {
    next: usize,
    avoid: BTreeSet<Variable>,
}

impl Fresh {
    pub fn new(avoid: BTreeSet<Variable>) -> Self {
        Fresh { next: 1, avoid }
    }

    pub fn take(&mut self) -> Variable {
        loop {
            let t = var('t', self.next);
            self.next += 1;
            if !self.avoid.contains(&t) {
                return t;
            }
        }
    }
}

/// Inserts a fresh linear letter after (or before) every letter of `u`.
pub fn decorate(u: &Word, side: Side) -> Word {
    decorate_with(u, side, &mut Fresh::new(u.content()))
}

pub fn decorate_with(u: &Word, side: Side, fresh: &mut Fresh) -> Word {
    let mut out = Word::empty();
    for &x in u {
        let t = fresh.take();
        match side {
            Side::After => {
                out.push(x);
                out.push(t);
            }
            Side::Before => {
                out.push(t);
                out.push(x);
            }
        }
    }
    out
}

pub fn zimin(k: usize) -> Result<Word, SchemeError> {
    if k == 0 {
        return Err(SchemeError::InvalidParam { scheme: SchemeName::Zimin, reason: "k must be at least 1" });
    }
    let mut z = Word::letter(var('x', 1));
    for i in 2..=k {
        z = z.concat(&Word::letter(var('x', i))).concat(&z);
    }
    Ok(z)
}

fn cat(parts: &[&Word]) -> Word {
    let mut out = Word::empty();
    for p in parts {
        out.extend_from(p);
    }
    out
}

fn lit(s: &str) -> Word {
    s.chars().map(plain).collect()
}

fn pow(x: Variable, k: usize) -> Word {
    Word::letter(x).pow(k)
}

fn squares(letter: char, n: usize) -> Word {
    (1..=n).flat_map(|i| [var(letter, i), var(letter, i)]).collect()
}

fn pow_block(letter: char, k: usize, n: usize, rev: bool) -> Word {
    let idx: Vec<usize> = if rev { (1..=n).rev().collect() } else { (1..=n).collect() };
    idx.into_iter().flat_map(|i| core::iter::repeat_n(var(letter, i), k)).collect()
}

/// Expands the identity (or word, for `zimin`) named by `id`.
pub fn generate(id: &SchemeId) -> Result<SchemeOutput, SchemeError> {
    use Block::*;
    use SchemeName::*;
    id.check(id.name.params())?;
    let (n, m, k) = (id.get('n'), id.get('m'), id.get('k'));
    let (x, y, z) = (plain('x'), plain('y'), plain('z'));
    let b = |kind| block(kind, n);
    let ident = |l: Word, r: Word| Ok(SchemeOutput::from_identity(Identity::new(l, r), Vec::new()));

    match id.name {
        Row1 => {
            let yy = cat(&[&b(Up('y'))?, &b(Down('y'))?]);
            ident(cat(&[&lit("xx"), &yy]), cat(&[&yy, &lit("xx")]))
        }
        Row2 => {
            let zn = b(Up('z'))?;
            let zt = decorate(&zn, Side::After);
            ident(cat(&[&zt, &lit("yxx"), &zn, &lit("y")]), cat(&[&zt, &lit("xxy"), &zn, &lit("y")]))
        }
        Row3 => {
            let mut fresh = Fresh::new(BTreeSet::new());
            let zp = decorate_with(&b(Zip('z', 'p'))?, Side::After, &mut fresh);
            let zq = b(Zip('z', 'q'))?;
            let pr = b(Zip('p', 'r'))?;
            let qr = decorate_with(&b(Zip('q', 'r'))?, Side::Before, &mut fresh);
            ident(
                cat(&[&zp, &lit("x"), &zq, &lit("xy"), &pr, &lit("y"), &qr]),
                cat(&[&zp, &lit("x"), &zq, &lit("yx"), &pr, &lit("y"), &qr]),
            )
        }
        Row4 => {
            let tail = cat(&[&squares('z', n), &lit("x")]);
            ident(cat(&[&lit("xyty"), &tail]), cat(&[&lit("yxty"), &tail]))
        }
        Row5 | Row6 => {
            let (zn, nz) = (b(Up('z'))?, b(Down('z'))?);
            let (mid_l, mid_r) = if id.name == Row5 { ("yx", "xy") } else { ("xy", "yx") };
            ident(
                cat(&[&lit("xy"), &zn, &lit(mid_l), &lit("t"), &nz]),
                cat(&[&lit("yx"), &zn, &lit(mid_r), &lit("t"), &nz]),
            )
        }
        Row7 => {
            let xs = cat(&[&b(Up('x'))?, &b(Down('x'))?]);
            let ys = cat(&[&b(Up('y'))?, &b(Down('y'))?]);
            ident(cat(&[&xs, &ys]), cat(&[&ys, &xs]))
        }
        Row8 => {
            let (t1, t2) = (Word::letter(var('t', 1)), Word::letter(var('t', 2)));
            let ps = squares('p', n);
            let (yw, zw) = (Word::letter(y), Word::letter(z));
            ident(
                cat(&[&yw, &t1, &pow(x, m - 1), &yw, &ps, &zw, &Word::letter(x), &t2, &zw]),
                cat(&[&yw, &t1, &pow(x, m), &yw, &ps, &zw, &t2, &zw]),
            )
        }
        Sl1 => {
            let (xn, nx, yn, ny) = (b(Up('x'))?, b(Down('x'))?, b(Up('y'))?, b(Down('y'))?);
            ident(cat(&[&xn, &yn, &nx, &ny]), cat(&[&yn, &xn, &ny, &nx]))
        }
        Trahtman => {
            let (xn, nx, yw) = (b(Up('x'))?, b(Down('x'))?, Word::letter(y));
            let l = cat(&[&xn, &yw, &nx, &yw, &xn]);
            let r = cat(&[&l, &yw, &nx, &yw, &xn]);
            ident(l, r)
        }
        JacksonAlt => {
            let (yn, ny) = (b(Up('y'))?, b(Down('y'))?);
            ident(cat(&[&lit("x"), &yn, &lit("tx"), &ny]), cat(&[&yn, &lit("xt"), &ny, &lit("x")]))
        }
        Psc => {
            let (yn, ny, xw) = (b(Up('y'))?, b(Down('y'))?, lit("x"));
            ident(cat(&[&xw, &yn, &xw, &ny]), cat(&[&xw, &ny, &xw, &yn]))
        }
        El => {
            b(Up('y'))?;
            let xw = lit("x");
            ident(cat(&[&xw, &pow_block('y', k, n, false), &xw]), cat(&[&xw, &pow_block('y', k, n, true), &xw]))
        }
        ElE1 => {
            let (xk, yk) = (pow(x, k), pow(y, k));
            ident(cat(&[&xk, &yk, &xk]), cat(&[&xk, &cat(&[&yk, &xk]).pow(k + 1)]))
        }
        ElE2 => {
            let xyx = lit("xyx");
            let main = Identity::new(pow(x, k + 2), pow(x, 2));
            let companions = alloc::vec![
                Identity::new(cat(&[&pow(x, k + 1), &lit("yx")]), xyx.clone()),
                Identity::new(cat(&[&lit("xy"), &pow(x, k + 1)]), xyx),
            ];
            Ok(SchemeOutput::from_identity(main, companions))
        }
        Bsnew => {
            let tail = cat(&[&b(Up('y'))?, &lit("x"), &b(Down('y'))?, &lit("x")]);
            ident(cat(&[&pow(x, m - 2), &tail]), cat(&[&pow(x, m - 1), &tail]))
        }
        Bsnew1 => {
            let tail = cat(&[&squares('y', n), &lit("x")]);
            ident(cat(&[&pow(x, m), &tail]), cat(&[&pow(x, m + 1), &tail]))
        }
        BlanchetSadri => {
            let tail = cat(&[&b(Zip('z', 'y'))?, &lit("x"), &b(Up('y'))?, &b(Up('z'))?, &lit("x")]);
            ident(cat(&[&pow(x, m - 2), &tail]), cat(&[&pow(x, m - 1), &tail]))
        }
        Zimin => {
            let word = zimin(k)?;
            let roles = word.iter().map(|&v| (v, Role::XLike)).collect();
            Ok(SchemeOutput { body: SchemeBody::Words(alloc::vec![word]), companions: Vec::new(), roles })
        }
    }
}

/// Numbers the `t`s of a word as `t1, t2, …` when there are several.
fn word_with_ts(s: &str) -> Word {
    let count = s.chars().filter(|&c| c == 't').count();
    let mut i = 0;
    s.chars()
        .map(|c| {
            if c == 't' && count > 1 {
                i += 1;
                var('t', i)
            } else {
                plain(c)
            }
        })
        .collect()
}

/// The set of words that must be isoterms for the condition named by `id`.
pub fn isoterm_words(id: &SchemeId) -> Result<Vec<Word>, SchemeError> {
    use SchemeName::*;
    id.check(id.name.word_params())?;
    let words = |ss: &[&str]| Ok(ss.iter().map(|s| word_with_ts(s)).collect());
    match id.name {
        Row1 => words(&["xyyx"]),
        Row2 => words(&["yxxty", "ytxxy"]),
        Row3 => words(&["xtxyty"]),
        Row4 => words(&["xxyy", "xytytx"]),
        Row5 | Row6 => words(&["xtyxty", "xytxy", "xytyx"]),
        Row7 => words(&["xtxyty", "xyyx"]),
        Row8 => {
            let m = id.get('m');
            let mut out = alloc::vec![word_with_ts("xxyy")];
            let xs = |j: usize| "x".repeat(j);
            for d in 1..m {
                out.push(word_with_ts(&alloc::format!("yty{}t{}", xs(d), xs(m - d))));
            }
            for d in 1..m {
                out.push(word_with_ts(&alloc::format!("{}t{}yty", xs(m - d), xs(d))));
            }
            Ok(out)
        }
        Psc => words(&["xytyx", "xtyxy"]),
        Bsnew => {
            let m = id.get('m');
            let x = plain('x');
            let (t1, t2) = (Word::letter(var('t', 1)), Word::letter(var('t', 2)));
            Ok(alloc::vec![lit("xyyx"), pow(x, m - 1), cat(&[&pow(x, m - 2), &t1, &lit("x"), &t2, &lit("x")]),])
        }
        Zimin => Ok(alloc::vec![zimin(id.get('k'))?]),
        other => Err(SchemeError::NoWordSet(other)),
    }
}
