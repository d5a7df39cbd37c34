use crate::monoids::{Elt, FiniteMonoid};
use crate::words::{Identity, Variable};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::{Config, DecideError};

/// An identity with variables renumbered `0..k`.
#[derive(Clone, Debug)]
pub(crate) struct Problem {
    pub k: usize,
    pub lhs: Vec<u16>,
    pub rhs: Vec<u16>,
}

impl Problem {
    /// Variables are numbered by first occurrence in `lhs`, then `rhs`.
    pub fn from_identity(id: &Identity) -> (Problem, Vec<Variable>) {
        let vars = id.variables();
        let idx = |x: &Variable| vars.iter().position(|y| y == x).expect("collected") as u16;
        let p = Problem { k: vars.len(), lhs: id.lhs.iter().map(idx).collect(), rhs: id.rhs.iter().map(idx).collect() };
        (p, vars)
    }
}

pub(crate) fn eval_side(m: &FiniteMonoid, side: &[u16], vals: &[Elt]) -> Option<Elt> {
    m.product(side.iter().map(|&i| vals[i as usize]))
}

/// Cheap refutation attempts: all variables equal, and (for monoids) one
/// variable free with the rest at the identity.
pub(crate) fn quick_refute(m: &FiniteMonoid, p: &Problem) -> bool {
    let n = m.order() as Elt;
    let mut vals = vec![0; p.k];
    for s in 0..n {
        vals.iter_mut().for_each(|v| *v = s);
        if eval_side(m, &p.lhs, &vals) != eval_side(m, &p.rhs, &vals) {
            return true;
        }
    }
    if let Some(e) = m.identity() {
        for i in 0..p.k {
            vals.iter_mut().for_each(|v| *v = e);
            for s in 0..n {
                vals[i] = s;
                if eval_side(m, &p.lhs, &vals) != eval_side(m, &p.rhs, &vals) {
                    return true;
                }
            }
        }
    }
    false
}

/// First counterexample in lexicographic order of element indices, if any.
pub(crate) fn search(m: &FiniteMonoid, p: &Problem, cfg: &Config) -> Result<Option<Vec<Elt>>, DecideError> {
    if (p.lhs.is_empty() || p.rhs.is_empty()) && !m.is_monoid() {
        return Err(DecideError::EmptySide);
    }
    if let Some((a, b)) = m.factors() {
        let nb = b.order() as Elt;
        if let Some(w) = search(a, p, cfg)? {
            let other = b.identity().unwrap_or(0);
            return Ok(Some(w.into_iter().map(|x| x * nb + other).collect()));
        }
        if let Some(w) = search(b, p, cfg)? {
            let other = a.identity().unwrap_or(0);
            return Ok(Some(w.into_iter().map(|y| other * nb + y).collect()));
        }
        return Ok(None);
    }
    if p.k == 0 {
        return Ok(None);
    }
    let dfs = Dfs::new(m, p);
    let n = m.order() as Elt;

    #[cfg(feature = "std")]
    if cfg.parallel && p.k >= 2 && (n as f64).powi(p.k as i32) > 1e6 {
        return dfs.parallel(n, cfg.node_cap);
    }

    let mut used = 0u64;
    for s in 0..n {
        let sub = dfs.subtree(s, cfg.node_cap - used, None);
        used += sub.nodes;
        match sub.outcome {
            Outcome::Found(w) => return Ok(Some(w)),
            Outcome::Cap => return Err(DecideError::CapExceeded { cap: cfg.node_cap }),
            Outcome::Clean | Outcome::Aborted => {}
        }
    }
    Ok(None)
}

enum Outcome {
    Found(Vec<Elt>),
    Clean,
    Cap,
    Aborted,
}

struct Sub {
    outcome: Outcome,
    nodes: u64,
}

struct Dfs<'a> {
    table: &'a [Elt],
    n: usize,
    p: &'a Problem,
    one: Option<Elt>,
    zero: Option<Elt>,
    runs_l: Vec<Vec<Range<usize>>>,
    runs_r: Vec<Vec<Range<usize>>>,
}

/// Maximal runs of positions holding variables `≤ d` that contain variable `d`.
fn runs(side: &[u16], k: usize) -> Vec<Vec<Range<usize>>> {
    (0..k)
        .map(|d| {
            let mut out = Vec::new();
            let mut i = 0;
            while i < side.len() {
                if side[i] as usize > d {
                    i += 1;
                    continue;
                }
                let start = i;
                while i < side.len() && side[i] as usize <= d {
                    i += 1;
                }
                if side[start..i].iter().any(|&x| x as usize == d) {
                    out.push(start..i);
                }
            }
            out
        })
        .collect()
}

struct State<'s> {
    vals: Vec<Elt>,
    nodes: u64,
    cap: u64,
    #[cfg_attr(not(feature = "std"), allow(dead_code))]
    stop: Option<(&'s StopFlag, Elt)>,
}

impl State<'_> {
    fn aborted(&self) -> bool {
        #[cfg(feature = "std")]
        if let Some((flag, mine)) = self.stop {
            return flag.load(std::sync::atomic::Ordering::Relaxed) < mine;
        }
        false
    }
}

impl<'a> Dfs<'a> {
    fn new(m: &'a FiniteMonoid, p: &'a Problem) -> Self {
        let zero = m.absorbing();
        let (runs_l, runs_r) = if zero.is_some() {
            (runs(&p.lhs, p.k), runs(&p.rhs, p.k))
        } else {
            (vec![Vec::new(); p.k], vec![Vec::new(); p.k])
        };
        Dfs { table: m.table().expect("table-backed monoid"), n: m.order(), p, one: m.identity(), zero, runs_l, runs_r }
    }

    #[inline]
    fn eval(&self, side: &[u16], vals: &[Elt]) -> Elt {
        let mut it = side.iter();
        let Some(&first) = it.next() else {
            return self.one.expect("checked before search");
        };
        let mut acc = vals[first as usize];
        for &x in it {
            acc = self.table[acc as usize * self.n + vals[x as usize] as usize];
        }
        acc
    }

    fn dead(&self, runs: &[Range<usize>], side: &[u16], vals: &[Elt]) -> bool {
        let Some(z) = self.zero else {
            return false;
        };
        runs.iter().any(|r| self.eval(&side[r.clone()], vals) == z)
    }

    fn subtree(&self, first: Elt, cap: u64, stop: Option<(&StopFlag, Elt)>) -> Sub {
        let mut st = State { vals: vec![0; self.p.k], nodes: 0, cap, stop };
        let outcome = match self.visit(0, first, false, false, &mut st) {
            Step::Found => Outcome::Found(st.vals.clone()),
            Step::Next => Outcome::Clean,
            Step::Cap => Outcome::Cap,
            Step::Abort => Outcome::Aborted,
        };
        Sub { outcome, nodes: st.nodes }
    }

    fn visit(&self, d: usize, s: Elt, dl: bool, dr: bool, st: &mut State) -> Step {
        st.nodes += 1;
        if st.nodes > st.cap {
            return Step::Cap;
        }
        st.vals[d] = s;
        let dl = dl || self.dead(&self.runs_l[d], &self.p.lhs, &st.vals);
        let dr = dr || self.dead(&self.runs_r[d], &self.p.rhs, &st.vals);
        if dl && dr {
            return Step::Next;
        }
        if d + 1 == self.p.k {
            let z = self.zero.unwrap_or(0);
            let lv = if dl { z } else { self.eval(&self.p.lhs, &st.vals) };
            let rv = if dr { z } else { self.eval(&self.p.rhs, &st.vals) };
            return if lv != rv { Step::Found } else { Step::Next };
        }
        if st.aborted() {
            return Step::Abort;
        }
        for t in 0..self.n as Elt {
            match self.visit(d + 1, t, dl, dr, st) {
                Step::Next => {}
                other => return other,
            }
        }
        Step::Next
    }

    #[cfg(feature = "std")]
    fn parallel(&self, n: Elt, cap: u64) -> Result<Option<Vec<Elt>>, DecideError> {
        use rayon::prelude::*;
        use std::sync::atomic::{AtomicU32, Ordering};
        let best = AtomicU32::new(Elt::MAX);
        let subs: Vec<Sub> = (0..n)
            .into_par_iter()
            .map(|s| {
                let sub = self.subtree(s, cap, Some((&best, s)));
                if matches!(sub.outcome, Outcome::Found(_)) {
                    best.fetch_min(s, Ordering::Relaxed);
                }
                sub
            })
            .collect();
        let mut used = 0u64;
        for sub in subs {
            match sub.outcome {
                Outcome::Found(w) if used + sub.nodes <= cap => return Ok(Some(w)),
                Outcome::Aborted => unreachable!("aborted subtrees follow a witness"),
                _ => {}
            }
            used += sub.nodes;
            if used > cap || matches!(sub.outcome, Outcome::Cap) {
                return Err(DecideError::CapExceeded { cap });
            }
        }
        Ok(None)
    }
}

#[cfg(feature = "std")]
type StopFlag = std::sync::atomic::AtomicU32;
#[cfg(not(feature = "std"))]
type StopFlag = ();

enum Step {
    Found,
    Next,
    Cap,
    Abort,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    #[test]
    fn run_layout() {
        // x y x z: x=0, y=1, z=2
        let side = [0u16, 1, 0, 2];
        let r = runs(&side, 3);
        assert_eq!(r[0], vec![0..1, 2..3]);
        assert_eq!(r[1], vec![0..3]);
        assert_eq!(r[2], vec![0..4]);
    }

    #[test]
    fn numbering_by_first_occurrence() {
        let (p, vars) = Problem::from_identity(&Identity::new(w("y x y"), w("z x")));
        assert_eq!(vars.len(), 3);
        assert_eq!(p.lhs, vec![0, 1, 0]);
        assert_eq!(p.rhs, vec![2, 1]);
    }
}
