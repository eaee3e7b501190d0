//! Exhaustive generation of every family by size, and the Motzkin and
//! Catalan counting sequences.
//!
//! Each representation has its own generator following its grammar, so the
//! bijections can be checked against independently produced sets.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bijection::{Element, Family, FamilyElement, Representation};
use crate::error::{Error, Predicate, Result};
use crate::forest::{AngularForest, AngularTree, DecoratedForest, DecoratedTree};
use crate::lincomb::Basis;
use crate::path::{MotzkinPath, Step};
use crate::symbol::Alphabet;
use crate::word::{BracketedWord, WordAtom};

/// Environment variable overriding the size cap.
pub const MAX_SIZE_ENV: &str = "OPFREE_MAX_SIZE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub max_size: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { max_size: 14 }
    }
}

impl EnumConfig {
    /// The default cap, overridden by `OPFREE_MAX_SIZE` when it parses.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(n) = std::env::var(MAX_SIZE_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            cfg.max_size = n;
        }
        cfg
    }

    pub fn check(&self, size: usize) -> Result<()> {
        if size > self.max_size {
            return Err(Error::SizeLimitExceeded {
                size,
                cap: self.max_size,
            });
        }
        Ok(())
    }
}

/// All decorated Motzkin paths with `n` steps, in canonical order.
pub fn paths(n: usize, alphabet: &Alphabet) -> Vec<MotzkinPath> {
    fn go(
        remaining: usize,
        open: &mut Vec<usize>,
        steps: &mut Vec<Step>,
        alphabet: &Alphabet,
        out: &mut Vec<MotzkinPath>,
    ) {
        if remaining == 0 {
            if open.is_empty() {
                out.push(MotzkinPath::new(steps.clone()).expect("generated paths are valid"));
            }
            return;
        }
        if open.len() < remaining {
            for (i, w) in alphabet.operators().iter().enumerate() {
                if open.len() + 2 <= remaining {
                    open.push(i);
                    steps.push(Step::Up(w.clone()));
                    go(remaining - 1, open, steps, alphabet, out);
                    steps.pop();
                    open.pop();
                }
            }
        }
        if let Some(&i) = open.last() {
            open.pop();
            steps.push(Step::Down(alphabet.operators()[i].clone()));
            go(remaining - 1, open, steps, alphabet, out);
            steps.pop();
            open.push(i);
        }
        if open.len() < remaining {
            for x in alphabet.letters() {
                steps.push(Step::Level(x.clone()));
                go(remaining - 1, open, steps, alphabet, out);
                steps.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut Vec::with_capacity(n), alphabet, &mut out);
    out
}

fn sort_canonical<B: Basis>(mut v: Vec<B>) -> Vec<B> {
    v.sort_by_cached_key(|b| b.canonical_steps());
    v
}

/// All bracketed words of size `n`, in canonical order.
pub fn words(n: usize, alphabet: &Alphabet) -> Vec<BracketedWord> {
    let mut memo: HashMap<usize, Vec<BracketedWord>> = HashMap::new();
    sort_canonical(words_rec(n, alphabet, &mut memo))
}

fn words_rec(n: usize, alphabet: &Alphabet, memo: &mut HashMap<usize, Vec<BracketedWord>>) -> Vec<BracketedWord> {
    if let Some(hit) = memo.get(&n) {
        return hit.clone();
    }
    let out = if n == 0 {
        vec![BracketedWord::unit()]
    } else {
        let mut out = Vec::new();
        for first in 1..=n {
            let atoms: Vec<WordAtom> = if first == 1 {
                alphabet.letters().iter().map(|x| WordAtom::Letter(x.clone())).collect()
            } else {
                let bodies = words_rec(first - 2, alphabet, memo);
                alphabet
                    .operators()
                    .iter()
                    .flat_map(|w| bodies.iter().map(move |b| WordAtom::Bracket(w.clone(), b.clone())))
                    .collect()
            };
            let rests = words_rec(n - first, alphabet, memo);
            for a in &atoms {
                for r in &rests {
                    let mut v = Vec::with_capacity(1 + r.atoms().len());
                    v.push(a.clone());
                    v.extend_from_slice(r.atoms());
                    out.push(BracketedWord::from_atoms(v));
                }
            }
        }
        out
    };
    memo.insert(n, out.clone());
    out
}

/// All vertex-decorated forests of size `n ≥ 1`, in canonical order.
pub fn vforests(n: usize, alphabet: &Alphabet) -> Vec<DecoratedForest> {
    let mut memo = HashMap::new();
    sort_canonical(vforests_rec(n, alphabet, &mut memo))
}

fn vforests_rec(
    n: usize,
    alphabet: &Alphabet,
    memo: &mut HashMap<usize, Vec<DecoratedForest>>,
) -> Vec<DecoratedForest> {
    if n == 0 {
        return Vec::new();
    }
    if let Some(hit) = memo.get(&n) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for first in 1..=n {
        let trees: Vec<DecoratedTree> = if first == 1 {
            alphabet.letters().iter().map(|x| DecoratedTree::Leaf(x.clone())).collect()
        } else {
            let bodies = vforests_rec(first - 2, alphabet, memo);
            alphabet
                .operators()
                .iter()
                .flat_map(|w| bodies.iter().map(move |b| b.graft(w)))
                .collect()
        };
        if first == n {
            out.extend(trees.into_iter().map(DecoratedTree::into_forest));
            continue;
        }
        let rests = vforests_rec(n - first, alphabet, memo);
        for t in &trees {
            for r in &rests {
                out.push(t.clone().into_forest().concat(r));
            }
        }
    }
    memo.insert(n, out.clone());
    out
}

/// All angularly decorated forests of size `n`, in canonical order.
pub fn aforests(n: usize, alphabet: &Alphabet) -> Vec<AngularForest> {
    let mut memo = AngularMemo::default();
    sort_canonical(memo.forests(n, alphabet))
}

#[derive(Default)]
struct AngularMemo {
    forests: HashMap<usize, Vec<AngularForest>>,
    tails: HashMap<usize, Vec<Vec<(crate::symbol::LetterX, AngularTree)>>>,
}

impl AngularMemo {
    fn trees(&mut self, n: usize, alphabet: &Alphabet) -> Vec<AngularTree> {
        match n {
            0 => vec![AngularTree::Leaf],
            1 => Vec::new(),
            _ => self
                .forests(n - 2, alphabet)
                .into_iter()
                .map(|f| AngularTree::Graft(Box::new(f)))
                .collect(),
        }
    }

    fn tails(&mut self, n: usize, alphabet: &Alphabet) -> Vec<Vec<(crate::symbol::LetterX, AngularTree)>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        if let Some(hit) = self.tails.get(&n) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for j in 0..n {
            let trees = self.trees(j, alphabet);
            let rests = self.tails(n - 1 - j, alphabet);
            for x in alphabet.letters() {
                for t in &trees {
                    for r in &rests {
                        let mut v = Vec::with_capacity(1 + r.len());
                        v.push((x.clone(), t.clone()));
                        v.extend_from_slice(r);
                        out.push(v);
                    }
                }
            }
        }
        self.tails.insert(n, out.clone());
        out
    }

    fn forests(&mut self, n: usize, alphabet: &Alphabet) -> Vec<AngularForest> {
        if let Some(hit) = self.forests.get(&n) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for j in 0..=n {
            let heads = self.trees(j, alphabet);
            let tails = self.tails(n - j, alphabet);
            for h in &heads {
                for t in &tails {
                    out.push(AngularForest {
                        head: h.clone(),
                        tail: t.clone(),
                    });
                }
            }
        }
        self.forests.insert(n, out.clone());
        out
    }
}

/// Every member of `family` of size exactly `n`, optionally filtered by an
/// extra predicate, in canonical order.
pub fn enumerate(
    family: Family,
    n: usize,
    alphabet: &Alphabet,
    filter: Option<Predicate>,
    config: &EnumConfig,
) -> Result<Vec<FamilyElement>> {
    config.check(n)?;
    let raw: Vec<Element> = match family.representation() {
        Representation::Word => words(n, alphabet).into_iter().map(Element::Word).collect(),
        Representation::Path => paths(n, alphabet).into_iter().map(Element::Path).collect(),
        Representation::VForest => vforests(n, alphabet).into_iter().map(Element::VForest).collect(),
        Representation::AForest => aforests(n, alphabet).into_iter().map(Element::AForest).collect(),
    };
    Ok(raw
        .into_iter()
        .filter(|e| filter.is_none_or(|p| e.require(p).is_ok()))
        .filter_map(|e| FamilyElement::new(family, e).ok())
        .collect())
}

/// Members of `family` of every size up to `max`.
pub fn enumerate_up_to(
    family: Family,
    max: usize,
    alphabet: &Alphabet,
    config: &EnumConfig,
) -> Result<Vec<FamilyElement>> {
    let mut out = Vec::new();
    for n in 0..=max {
        out.extend(enumerate(family, n, alphabet, None, config)?);
    }
    Ok(out)
}

/// `M₀ = 1`, `M_{n+1} = M_n + Σ_{k<n} M_k·M_{n−1−k}`.
pub fn motzkin_number(n: usize) -> BigUint {
    let mut m: Vec<BigUint> = vec![BigUint::one()];
    for k in 0..n {
        let mut next = m[k].clone();
        for j in 0..k {
            next += &m[j] * &m[k - 1 - j];
        }
        m.push(next);
    }
    m.swap_remove(n)
}

/// `C₀ = 1`, `C_{n+1} = Σ_{k≤n} C_k·C_{n−k}`.
pub fn catalan_number(n: usize) -> BigUint {
    let mut c: Vec<BigUint> = vec![BigUint::one()];
    for k in 0..n {
        let mut next = BigUint::zero();
        for j in 0..=k {
            next += &c[j] * &c[k - j];
        }
        c.push(next);
    }
    c.swap_remove(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_paths() {
        let a = Alphabet::singleton_omega(&["x"]);
        let got: Vec<String> = paths(3, &a).iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["U D L:x", "U L:x D", "L:x U D", "L:x L:x L:x"]);
        assert_eq!(paths(0, &a), vec![MotzkinPath::trivial()]);
    }

    #[test]
    fn sequences() {
        let m: Vec<u64> = (0..8).map(|n| motzkin_number(n).try_into().unwrap()).collect();
        assert_eq!(m, [1, 1, 2, 4, 9, 21, 51, 127]);
        let c: Vec<u64> = (0..6).map(|n| catalan_number(n).try_into().unwrap()).collect();
        assert_eq!(c, [1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn dyck_filter() {
        let a = Alphabet::singleton_omega(&["x"]);
        let cfg = EnumConfig::default();
        let d = enumerate(Family::P, 6, &a, Some(Predicate::Dyck), &cfg).unwrap();
        assert_eq!(d.len(), 5);
    }

    #[test]
    fn cap() {
        let a = Alphabet::singleton_omega(&["x"]);
        let cfg = EnumConfig { max_size: 3 };
        assert_eq!(
            enumerate(Family::P, 4, &a, None, &cfg),
            Err(Error::SizeLimitExceeded { size: 4, cap: 3 })
        );
    }

    #[test]
    fn equal_counts_across_representations() {
        let a = Alphabet::singleton_omega(&["x", "y"]);
        for n in 0..=6 {
            let w = words(n, &a).len();
            assert_eq!(w, paths(n, &a).len());
            assert_eq!(aforests(n, &a).len(), paths(n, &a).iter().filter(|p| p.is_valley_free()).count());
            if n > 0 {
                assert_eq!(
                    vforests(n, &a).len(),
                    paths(n, &a).iter().filter(|p| p.is_peak_free()).count()
                );
            }
        }
    }
}
