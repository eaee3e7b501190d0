//! Named invariant suites run exhaustively up to a size bound.
//!
//! Bijection suites cover every element of size at most the bound. Product
//! suites cover pairs and triples whose total size is at most the bound.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bijection::{
    all_routes, aforest_to_path, aforest_to_path_by_edges, apply_arrow, apply_route, arrows_from,
    path_to_aforest, path_to_aforest_by_edges, word_to_path, ArrowKind, Element, Family, FamilyElement,
};
use crate::coeff::{Coefficient, Rational};
use crate::enumerate::{self, catalan_number, motzkin_number, EnumConfig};
use crate::error::Result;
use crate::forest::{AngularForest, DecoratedForest};
use crate::lincomb::LinearCombination;
use crate::path::MotzkinPath;
use crate::rota_baxter::{
    rb_evaluate_word, rb_operator_p, seq_rb_target, RotaBaxterBasis, SequenceWeight, TruncatedSequence,
};
use crate::symbol::{Alphabet, LetterX};
use crate::word::BracketedWord;

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type Outcome = std::result::Result<usize, String>;
type Suite = fn(usize) -> Outcome;

const SUITES: [(&str, Suite); 11] = [
    ("bijection-inverse", bijection_inverse),
    ("codec-roundtrip", codec_roundtrip),
    ("counting", counting),
    ("diagram-commutes", diagram_commutes),
    ("edge-routes-agree", edge_routes_agree),
    ("equinumerous", equinumerous),
    ("path-homomorphism", path_homomorphism),
    ("rb-associativity", rb_associativity),
    ("rb-evaluation", rb_evaluation),
    ("rb-identity", rb_identity),
    ("rb-transport", rb_transport),
];

/// Names of all suites, sorted.
pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs every suite in parallel. Reports come back sorted by name.
pub fn run_all(max_size: usize) -> Vec<SuiteReport> {
    SUITES
        .par_iter()
        .map(|&(name, suite)| match suite(max_size) {
            Ok(checked) => SuiteReport { name, checked, failure: None },
            Err(msg) => SuiteReport { name, checked: 0, failure: Some(msg) },
        })
        .collect()
}

/// The alphabet used for a family: two letters, and two operators unless
/// the family needs a single one.
pub fn test_alphabet(family: Family) -> Alphabet {
    if family.is_omega_singleton() {
        Alphabet::singleton_omega(&["x", "y"])
    } else {
        Alphabet::with_operators(&["x", "y"], &["a", "b"])
    }
}

fn members(family: Family, max: usize) -> Vec<FamilyElement> {
    let cfg = EnumConfig { max_size: usize::MAX };
    enumerate::enumerate_up_to(family, max, &test_alphabet(family), &cfg).expect("no cap")
}

fn members_of_size(family: Family, n: usize, alphabet: &Alphabet) -> Vec<FamilyElement> {
    let cfg = EnumConfig { max_size: usize::MAX };
    enumerate::enumerate(family, n, alphabet, None, &cfg).expect("no cap")
}

fn fail(what: &str, e: impl std::fmt::Display) -> String {
    format!("{what}: {e}")
}

fn bijection_inverse(max: usize) -> Outcome {
    let mut checked = 0;
    for from in Family::ALL {
        let elems = members(from, max);
        for arrow in arrows_from(from).into_iter().filter(|a| a.kind == ArrowKind::Bijection) {
            let back = arrows_from(arrow.to)
                .into_iter()
                .find(|b| b.kind == ArrowKind::Bijection && b.to == from)
                .expect("bijections are symmetric");
            checked += elems
                .par_iter()
                .map(|e| {
                    let there = apply_arrow(arrow, e).map_err(|err| fail(&e.to_string(), err))?;
                    let again = apply_arrow(back, &there).map_err(|err| fail(&there.to_string(), err))?;
                    if &again != e {
                        return Err(format!("{from}->{}->{from}: {e} became {again}", arrow.to));
                    }
                    Ok(1)
                })
                .sum::<Outcome>()?;
        }
    }
    Ok(checked)
}

fn codec_roundtrip(max: usize) -> Outcome {
    let mut checked = 0;
    for family in Family::ALL {
        for e in members(family, max) {
            let text = e.to_string();
            let back = FamilyElement::parse(family, &text).map_err(|err| fail(&text, err))?;
            if back != e {
                return Err(format!("{family}: {text} reparsed as {back}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn counting(max: usize) -> Outcome {
    let one = Alphabet::singleton_omega(&["x"]);
    for n in 0..=max {
        let paths = enumerate::paths(n, &one);
        if paths.len() != usize::try_from(motzkin_number(n)).unwrap_or(usize::MAX) {
            return Err(format!("{} paths of length {n}, expected M_{n}", paths.len()));
        }
        if n % 2 == 0 {
            let dyck = paths.iter().filter(|p| p.is_dyck()).count();
            if dyck != usize::try_from(catalan_number(n / 2)).unwrap_or(usize::MAX) {
                return Err(format!("{dyck} Dyck paths of length {n}"));
            }
        }
    }
    Ok(max + 1)
}

fn diagram_commutes(max: usize) -> Outcome {
    let mut checked = 0;
    for from in Family::ALL {
        let elems = members(from, max);
        for to in Family::ALL {
            let routes = all_routes(from, to, 4);
            if routes.len() < 2 {
                continue;
            }
            checked += elems
                .par_iter()
                .map(|e| {
                    let mut seen: Option<FamilyElement> = None;
                    for r in &routes {
                        if let Ok(img) = apply_route(r, e) {
                            match &seen {
                                Some(s) if s != &img => {
                                    return Err(format!("{from}->{to} disagree on {e}: {s} vs {img}"))
                                }
                                _ => seen = Some(img),
                            }
                        }
                    }
                    Ok(1)
                })
                .sum::<Outcome>()?;
        }
    }
    Ok(checked)
}

fn edge_routes_agree(max: usize) -> Outcome {
    let elems = members(Family::V, max);
    elems
        .par_iter()
        .map(|e| {
            let Element::Path(p) = e.element() else { unreachable!() };
            let a = path_to_aforest(p).map_err(|err| fail(&p.to_string(), err))?;
            let b = path_to_aforest_by_edges(p).map_err(|err| fail(&p.to_string(), err))?;
            if a != b {
                return Err(format!("{p}: {a} vs {b}"));
            }
            if aforest_to_path(&a) != aforest_to_path_by_edges(&a) {
                return Err(format!("{a}: inverse routes disagree"));
            }
            Ok(1)
        })
        .sum()
}

fn equinumerous(max: usize) -> Outcome {
    let mut checked = 0;
    for from in Family::ALL {
        for arrow in arrows_from(from).into_iter().filter(|a| a.kind == ArrowKind::Bijection) {
            let alphabet = test_alphabet(from);
            for n in 0..=max {
                let a = members_of_size(from, n, &alphabet).len();
                let b = members_of_size(arrow.to, n, &alphabet).len();
                if a != b {
                    return Err(format!("size {n}: |{from}| = {a}, |{}| = {b}", arrow.to));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn path_homomorphism(max: usize) -> Outcome {
    let alphabet = test_alphabet(Family::M);
    let words: Vec<BracketedWord> = (0..=max).flat_map(|n| enumerate::words(n, &alphabet)).collect();
    let omega = alphabet.operators()[0].clone();
    let mut checked = 0;
    for u in &words {
        if word_to_path(&u.bracket(&omega)) != word_to_path(u).raise(&omega) {
            return Err(format!("raise fails on {u}"));
        }
        for v in words.iter().filter(|v| u.size() + v.size() <= max) {
            if word_to_path(&u.concat(v)) != word_to_path(u).link(&word_to_path(v)) {
                return Err(format!("link fails on {u}, {v}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn basis_elements<B: RotaBaxterBasis>(max: usize, lift: fn(Element) -> Option<B>) -> Vec<B> {
    let family: Family = B::FAMILY.parse().expect("known family");
    members(family, max)
        .into_iter()
        .filter_map(|e| lift(e.into_element()))
        .collect()
}

fn as_aforest(e: Element) -> Option<AngularForest> {
    match e {
        Element::AForest(a) => Some(a),
        _ => None,
    }
}

fn as_path(e: Element) -> Option<MotzkinPath> {
    match e {
        Element::Path(p) => Some(p),
        _ => None,
    }
}

fn as_word(e: Element) -> Option<BracketedWord> {
    match e {
        Element::Word(w) => Some(w),
        _ => None,
    }
}

fn as_vforest(e: Element) -> Option<DecoratedForest> {
    match e {
        Element::VForest(f) => Some(f),
        _ => None,
    }
}

/// `P(u)⋄P(v) = P(P(u)⋄v + u⋄P(v) + λ·u⋄v)` for basis elements.
pub fn rb_identity_holds<B: RotaBaxterBasis>(u: &B, v: &B) -> Result<bool> {
    let pu = u.rb_operator();
    let pv = v.rb_operator();
    let lhs = pu.rb_mul(&pv)?;
    let inner = pu
        .rb_mul(v)?
        .add(&u.rb_mul(&pv)?)?
        .add(&u.rb_mul(v)?.scale(&Coefficient::lambda())?)?;
    Ok(lhs == rb_operator_p(&inner))
}

/// Extends `⋄` to a combination on the left and a basis element on the right.
pub fn rb_mul_left<B: RotaBaxterBasis>(u: &LinearCombination<B>, w: &B) -> Result<LinearCombination<B>> {
    let mut out = LinearCombination::zero(crate::coeff::CoeffKind::Lambda);
    for (a, c) in u.iter() {
        out = out.add(&a.rb_mul(w)?.scale(c)?)?;
    }
    Ok(out)
}

/// `(u⋄v)⋄w = u⋄(v⋄w)` for basis elements.
pub fn rb_associative<B: RotaBaxterBasis>(u: &B, v: &B, w: &B) -> Result<bool> {
    let left = rb_mul_left(&u.rb_mul(v)?, w)?;
    let vw = v.rb_mul(w)?;
    let mut right = LinearCombination::zero(crate::coeff::CoeffKind::Lambda);
    for (b, c) in vw.iter() {
        right = right.add(&u.rb_mul(b)?.scale(c)?)?;
    }
    Ok(left == right)
}

fn identity_suite<B: RotaBaxterBasis>(max: usize, lift: fn(Element) -> Option<B>) -> Outcome {
    let elems = basis_elements(max, lift);
    elems
        .par_iter()
        .map(|u| {
            let mut n = 0;
            for v in elems.iter().filter(|v| size_of(u) + size_of(*v) <= max) {
                if !rb_identity_holds(u, v).map_err(|e| fail(&format!("{u}, {v}"), e))? {
                    return Err(format!("{}: identity fails on {u}, {v}", B::FAMILY));
                }
                n += 1;
            }
            Ok(n)
        })
        .sum()
}

fn associativity_suite<B: RotaBaxterBasis>(max: usize, lift: fn(Element) -> Option<B>) -> Outcome {
    let elems = basis_elements(max, lift);
    elems
        .par_iter()
        .map(|u| {
            let mut n = 0;
            for v in elems.iter().filter(|v| size_of(u) + size_of(*v) <= max) {
                for w in elems.iter().filter(|w| size_of(u) + size_of(v) + size_of(*w) <= max) {
                    if !rb_associative(u, v, w).map_err(|e| fail(&format!("{u}, {v}, {w}"), e))? {
                        return Err(format!("{}: not associative on {u}, {v}, {w}", B::FAMILY));
                    }
                    n += 1;
                }
            }
            Ok(n)
        })
        .sum()
}

fn size_of<B: RotaBaxterBasis>(b: &B) -> usize {
    b.canonical_steps().len()
}

fn rb_identity(max: usize) -> Outcome {
    Ok(identity_suite(max, as_aforest)?
        + identity_suite(max, as_path)?
        + identity_suite(max, as_word)?
        + identity_suite(max, as_vforest)?)
}

fn rb_associativity(max: usize) -> Outcome {
    Ok(associativity_suite(max, as_aforest)?
        + associativity_suite(max, as_path)?
        + associativity_suite(max, as_word)?
        + associativity_suite(max, as_vforest)?)
}

/// Maps every basis element of a product through a family bijection and
/// compares with the product of the images.
fn transport_suite<A, B>(
    max: usize,
    lift: fn(Element) -> Option<A>,
    map: impl Fn(&A) -> Result<B> + Sync,
) -> Outcome
where
    A: RotaBaxterBasis,
    B: RotaBaxterBasis,
{
    let elems = basis_elements(max, lift);
    elems
        .par_iter()
        .map(|u| {
            let mut n = 0;
            let ctx = |e| fail(&u.to_string(), e);
            let fu = map(u).map_err(ctx)?;
            for v in elems.iter().filter(|v| size_of(u) + size_of(*v) <= max) {
                let fv = map(v).map_err(ctx)?;
                let image = u.rb_mul(v).map_err(ctx)?.map_each(&map).map_err(ctx)?;
                if image != fu.rb_mul(&fv).map_err(ctx)? {
                    return Err(format!("{}->{}: transport fails on {u}, {v}", A::FAMILY, B::FAMILY));
                }
                n += 1;
            }
            Ok(n)
        })
        .sum()
}

fn rb_transport(max: usize) -> Outcome {
    use crate::bijection::{lforest_to_aforest, path_to_word};
    Ok(transport_suite(max, as_word, |w| Ok(word_to_path(w)))?
        + transport_suite(max, as_path, |p| Ok(path_to_word(p)))?
        + transport_suite(max, as_path, path_to_aforest)?
        + transport_suite(max, as_aforest, |a| Ok(aforest_to_path(a)))?
        + transport_suite(max, as_vforest, lforest_to_aforest)?)
}

/// Deterministic assignment of small distinct rationals to letters.
fn assignment(len: usize, letters: &[LetterX]) -> BTreeMap<LetterX, TruncatedSequence> {
    letters
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let entries = (0..len)
                .map(|k| Rational::new((((k * 7 + i * 3) % 11) as i64) - 5, (i as i64) + 2))
                .collect();
            (x.clone(), TruncatedSequence::new(entries))
        })
        .collect()
}

fn rb_evaluation(max: usize) -> Outcome {
    let words = basis_elements(max, as_word);
    let letters = test_alphabet(Family::R).letters().to_vec();
    let mut checked = 0;
    for weight in [SequenceWeight::Plus, SequenceWeight::Minus] {
        let target = seq_rb_target(16, weight, assignment(16, &letters));
        checked += words
            .par_iter()
            .map(|u| {
                let mut n = 0;
                let ctx = |e| fail(&u.to_string(), e);
                let eu = rb_evaluate_word(u, &target).map_err(ctx)?;
                for v in words.iter().filter(|v| u.size() + v.size() <= max) {
                    let ev = rb_evaluate_word(v, &target).map_err(ctx)?;
                    let prod = crate::rota_baxter::rb_evaluate(&u.rb_mul(v).map_err(ctx)?, &target).map_err(ctx)?;
                    if prod != eu.mul(&ev) {
                        return Err(format!("weight {:?}: evaluation not multiplicative on {u}, {v}", weight));
                    }
                    n += 1;
                }
                Ok(n)
            })
            .sum::<Outcome>()?;
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_at_small_size() {
        let reports = run_all(5);
        let names: Vec<_> = reports.iter().map(|r| r.name).collect();
        assert_eq!(names, suite_names());
        for r in reports {
            assert!(r.passed(), "{}: {:?}", r.name, r.failure);
            assert!(r.checked > 0, "{} checked nothing", r.name);
        }
    }
}
