use super::{Elt, FiniteMonoid, MonoidError};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Boolean `k×k` matrices packed row-major: entry `(i, j)` is bit `i*k + j`.
type Mask = u32;

fn mask_mul(a: Mask, b: Mask, k: usize) -> Mask {
    let row = (1 << k) - 1;
    let mut c = 0;
    for i in 0..k {
        let mut bits = (a >> (i * k)) & row;
        let mut r = 0;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            r |= (b >> (j * k)) & row;
            bits &= bits - 1;
        }
        c |= r << (i * k);
    }
    c
}

fn render(m: Mask, k: usize) -> String {
    let mut s = String::new();
    for i in 0..k {
        if i > 0 {
            s.push('/');
        }
        for j in 0..k {
            s.push(if m >> (i * k + j) & 1 == 1 { '1' } else { '0' });
        }
    }
    s
}

enum Lookup {
    Direct(Vec<Elt>),
    Sorted(Vec<(Mask, Elt)>),
}

impl Lookup {
    fn get(&self, m: Mask) -> Option<Elt> {
        match self {
            Lookup::Direct(v) => v.get(m as usize).copied().filter(|&e| e != Elt::MAX),
            Lookup::Sorted(v) => v.binary_search_by_key(&m, |p| p.0).ok().map(|i| v[i].1),
        }
    }
}

/// All matrices equal to `forced` off the `free` positions, in the order of
/// the binary counter over `free`.
fn boolean_monoid(name: String, k: usize, free: &[(usize, usize)], forced: Mask) -> Result<FiniteMonoid, MonoidError> {
    let n = 1usize << free.len();
    let masks: Vec<Mask> = (0..n)
        .map(|e| {
            free.iter()
                .enumerate()
                .filter(|(b, _)| e >> b & 1 == 1)
                .fold(forced, |m, (_, &(i, j))| m | 1 << (i * k + j))
        })
        .collect();
    let lookup = if k * k <= 16 {
        let mut v = vec![Elt::MAX; 1 << (k * k)];
        for (e, &m) in masks.iter().enumerate() {
            v[m as usize] = e as Elt;
        }
        Lookup::Direct(v)
    } else {
        let mut v: Vec<(Mask, Elt)> = masks.iter().enumerate().map(|(e, &m)| (m, e as Elt)).collect();
        v.sort_unstable();
        Lookup::Sorted(v)
    };
    let mut table = Vec::with_capacity(n * n);
    for &a in &masks {
        for &b in &masks {
            table.push(lookup.get(mask_mul(a, b, k)).ok_or(MonoidError::NotClosed)?);
        }
    }
    let ident: Mask = (0..k).fold(0, |m, i| m | 1 << (i * k + i));
    let identity = lookup.get(ident);
    let zero = lookup.get(0);
    let names = masks.iter().map(|&m| render(m, k)).collect();
    FiniteMonoid::from_table(name, n, table, identity, zero, Some(names))
}

/// Reflexive binary relations on `k` points under composition: order `2^(k²-k)`,
/// equational theory `J_{k-1}`.
pub fn reflexive_relations(k: usize) -> Result<FiniteMonoid, MonoidError> {
    if !(2..=4).contains(&k) {
        return Err(MonoidError::OutOfRange { what: "reflexive_relations k", k });
    }
    let free: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let diag = (0..k).fold(0, |m, i| m | 1 << (i * k + i));
    Ok(boolean_monoid(alloc::format!("Reflexive({k})"), k, &free, diag)?.with_jm_level(Some(k - 1)))
}

/// Upper triangular Boolean `k×k` matrices, with the diagonal forced to 1
/// when `unit_diagonal`.
pub fn triangular_boolean(k: usize, unit_diagonal: bool) -> Result<FiniteMonoid, MonoidError> {
    let max = if unit_diagonal { 5 } else { 4 };
    if !(2..=max).contains(&k) {
        return Err(MonoidError::OutOfRange { what: "triangular_boolean k", k });
    }
    let free: Vec<(usize, usize)> =
        (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).filter(|(i, j)| !unit_diagonal || i != j).collect();
    let diag = if unit_diagonal { (0..k).fold(0, |m, i| m | 1 << (i * k + i)) } else { 0 };
    let name = if unit_diagonal { alloc::format!("UT({k})") } else { alloc::format!("T({k})") };
    let level = unit_diagonal.then_some(k - 1);
    Ok(boolean_monoid(name, k, &free, diag)?.with_jm_level(level))
}

#[cfg(test)]
fn mask_index(m: &FiniteMonoid, rows: &[&str]) -> Option<Elt> {
    let key: Vec<&str> = rows.to_vec();
    m.element_by_name(&key.join("/"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(reflexive_relations(2).unwrap().order(), 4);
        assert_eq!(reflexive_relations(3).unwrap().order(), 64);
        assert_eq!(triangular_boolean(4, true).unwrap().order(), 64);
        assert_eq!(triangular_boolean(3, false).unwrap().order(), 64);
        assert_eq!(triangular_boolean(2, true).unwrap().order(), 2);
        assert!(reflexive_relations(5).is_err());
        assert!(triangular_boolean(5, false).is_err());
        assert!(triangular_boolean(1, true).is_err());
    }

    #[test]
    fn identity_and_product() {
        let r = reflexive_relations(3).unwrap();
        assert_eq!(r.identity(), Some(0));
        assert_eq!(r.name_of(0), "100/010/001");
        assert_eq!(r.zero(), None);
        assert_eq!(r.name_of(r.absorbing().unwrap()), "111/111/111");
        let a = mask_index(&r, &["110", "010", "001"]).unwrap();
        let b = mask_index(&r, &["100", "011", "001"]).unwrap();
        assert_eq!(r.name_of(r.mul(a, b)), "111/011/001");
        assert!(r.is_aperiodic());
        assert_eq!(r.jm_level(), Some(2));

        let t = triangular_boolean(3, false).unwrap();
        assert_eq!(t.name_of(t.zero().unwrap()), "000/000/000");
        assert_eq!(t.jm_level(), None);
    }

    #[test]
    fn mask_multiplication() {
        // 2x2: [[1,1],[0,1]] squared stays put
        let u = 0b1011;
        assert_eq!(mask_mul(u, u, 2), u);
        // nilpotent [[0,1],[0,0]] squares to zero
        assert_eq!(mask_mul(0b0010, 0b0010, 2), 0);
    }
}
