use super::{Elt, FiniteMonoid, MonoidError};
use crate::words::{Variable, Word};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

/// `S(W)`: the factors of the words in `W` together with `1` and `0`, where
/// a product is the concatenation when that is again a factor and `0`
/// otherwise. Index 0 is `1`, the factors follow in shortlex order and the
/// last index is `0`.
pub fn dilworth(ws: &[Word]) -> Result<FiniteMonoid, MonoidError> {
    if ws.is_empty() {
        return Err(MonoidError::EmptyWordSet);
    }
    if ws.iter().any(Word::is_empty) {
        return Err(MonoidError::EmptyWord);
    }
    let mut factors: BTreeSet<Word> = BTreeSet::new();
    for w in ws {
        let l = w.letters();
        for i in 0..l.len() {
            for j in i + 1..=l.len() {
                factors.insert(Word::new(l[i..j].to_vec()));
            }
        }
    }
    let mut sorted: Vec<Word> = factors.into_iter().collect();
    sorted.sort_by(Word::shortlex_cmp);

    let n = sorted.len() + 2;
    let zero = (n - 1) as Elt;
    let index: BTreeMap<&Word, Elt> = sorted.iter().enumerate().map(|(i, w)| (w, i as Elt + 1)).collect();
    let elem = |e: usize| &sorted[e - 1];

    let mut table = alloc::vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = if a == 0 {
                b as Elt
            } else if b == 0 {
                a as Elt
            } else if a == n - 1 || b == n - 1 {
                zero
            } else {
                index.get(&elem(a).concat(elem(b))).copied().unwrap_or(zero)
            };
        }
    }

    let mut names = Vec::with_capacity(n);
    names.push(String::from("1"));
    names.extend(sorted.iter().map(Word::compact));
    names.push(String::from("0"));

    let generators: BTreeMap<Variable, Elt> =
        sorted.iter().filter(|w| w.len() == 1).map(|w| (w.letters()[0], index[w])).collect();

    let label: Vec<String> = ws.iter().map(Word::compact).collect();
    let name = alloc::format!("S({{{}}})", label.join(", "));
    Ok(FiniteMonoid::from_table(name, n, table, Some(0), Some(zero), Some(names))?.with_generators(generators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{v, w};

    #[test]
    fn orders() {
        assert_eq!(dilworth(&[w("ata")]).unwrap().order(), 7);
        assert_eq!(dilworth(&[w("x")]).unwrap().order(), 3);
        let perkins = [w("abtba"), w("atbab"), w("abab"), w("aat")];
        assert_eq!(dilworth(&perkins).unwrap().order(), 25);
        assert_eq!(dilworth(&[]).unwrap_err(), MonoidError::EmptyWordSet);
    }

    #[test]
    fn products_are_concatenation_or_zero() {
        let m = dilworth(&[w("xyyx")]).unwrap();
        let e = |s: &str| m.element_by_name(s).unwrap();
        assert_eq!(m.mul(e("xy"), e("yx")), e("xyyx"));
        assert_eq!(m.mul(e("yx"), e("xy")), m.zero().unwrap());
        assert_eq!(m.mul(e("1"), e("yy")), e("yy"));
        assert_eq!(m.generators()[&v("x")], e("x"));
        assert_eq!(m.names()[0], "1");
        assert_eq!(m.names().last().unwrap(), "0");
        assert!(m.is_aperiodic());
    }
}
