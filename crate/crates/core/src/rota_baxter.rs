//! The weight-λ Rota–Baxter product `⋄` on the four basis families, the
//! operator `P`, and evaluation into concrete Rota–Baxter algebras.
//!
//! All four products share one shape: an element is a sequence of blocks,
//! the product splices the last block of the left operand with the first
//! block of the right operand, and two raised blocks multiply by
//!
//! ```text
//! ⌊a⌋ ⋄ ⌊b⌋ = ⌊a ⋄ ⌊b⌋⌋ + ⌊⌊a⌋ ⋄ b⌋ + λ⌊a ⋄ b⌋
//! ```
//!
//! Products are computed with symbolic λ and memoized per multiplier.

use std::collections::BTreeMap;
use std::hash::Hash;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::coeff::{CoeffKind, Coefficient, LambdaPoly, Rational};
use crate::error::{Error, Predicate, Result};
use crate::forest::{AngularForest, AngularTree, DecoratedForest, DecoratedTree};
use crate::lincomb::{Basis, LinearCombination};
use crate::path::MotzkinPath;
use crate::symbol::{LetterOmega, LetterX};
use crate::word::{BracketedWord, WordAtom};

type Terms<B> = FxHashMap<B, LambdaPoly>;
type Shared<B> = Arc<Terms<B>>;

/// Products keyed by left then right operand, so lookups borrow both.
struct Memo<B>(FxHashMap<B, FxHashMap<B, Shared<B>>>);

impl<B> Default for Memo<B> {
    fn default() -> Self {
        Memo(FxHashMap::default())
    }
}

impl<B: Hash + Eq + Clone> Memo<B> {
    fn get(&self, a: &B, b: &B) -> Option<Shared<B>> {
        self.0.get(a).and_then(|m| m.get(b)).cloned()
    }

    fn insert(&mut self, a: &B, b: &B, v: &Shared<B>) {
        self.0.entry(a.clone()).or_default().insert(b.clone(), Arc::clone(v));
    }
}

fn add_into<B: Hash + Eq>(acc: &mut Terms<B>, key: B, c: &LambdaPoly) {
    let e = acc.entry(key).or_default();
    *e = &*e + c;
}

fn single<B: Hash + Eq>(b: B) -> Shared<B> {
    let mut t = FxHashMap::default();
    t.insert(b, LambdaPoly::one());
    Arc::new(t)
}

/// `⌊a ⋄ ⌊b⌋⌋ + ⌊⌊a⌋ ⋄ b⌋ + λ⌊a ⋄ b⌋`, given the three inner products and
/// the raising map.
fn three_terms<I, O: Hash + Eq>(
    left: &Terms<I>,
    right: &Terms<I>,
    both: &Terms<I>,
    raise: impl Fn(&I) -> O,
) -> Terms<O> {
    let lambda = LambdaPoly::lambda();
    let mut out = FxHashMap::default();
    for (b, c) in left.iter().chain(right) {
        add_into(&mut out, raise(b), c);
    }
    for (b, c) in both {
        add_into(&mut out, raise(b), &(c * &lambda));
    }
    out
}

fn to_combination<B: Basis>(terms: &Terms<B>) -> LinearCombination<B> {
    LinearCombination::from_poly_map(terms.iter().map(|(b, c)| (b.clone(), c.clone())))
}

// ---------------------------------------------------------------------------
// Angular forests

/// Memoizing multiplier for angularly decorated forests.
#[derive(Default)]
pub struct AngularMultiplier {
    memo: Memo<AngularForest>,
}

impl AngularMultiplier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mul(&mut self, a: &AngularForest, b: &AngularForest) -> LinearCombination<AngularForest> {
        to_combination(&self.forest(a, b))
    }

    fn forest(&mut self, a: &AngularForest, b: &AngularForest) -> Shared<AngularForest> {
        if a.is_trivial() {
            return single(b.clone());
        }
        if b.is_trivial() {
            return single(a.clone());
        }
        if let Some(hit) = self.memo.get(a, b) {
            return hit;
        }
        let last = a.tail.last().map_or(&a.head, |(_, t)| t);
        let spliced = self.tree(last, &b.head);
        let mut out = FxHashMap::default();
        for (t, c) in spliced.iter() {
            let mut f = a.clone();
            match f.tail.last_mut() {
                Some((_, block)) => *block = t.clone(),
                None => f.head = t.clone(),
            }
            f.tail.extend_from_slice(&b.tail);
            add_into(&mut out, f, c);
        }
        let out = Arc::new(out);
        self.memo.insert(a, b, &out);
        out
    }

    fn tree(&mut self, a: &AngularTree, b: &AngularTree) -> Shared<AngularTree> {
        match (a, b) {
            (AngularTree::Leaf, _) => single(b.clone()),
            (_, AngularTree::Leaf) => single(a.clone()),
            (AngularTree::Graft(abar), AngularTree::Graft(bbar)) => {
                let a_tree = a.clone().into_forest();
                let b_tree = b.clone().into_forest();
                let left = self.forest(abar, &b_tree);
                let right = self.forest(&a_tree, bbar);
                let both = self.forest(abar, bbar);
                Arc::new(three_terms(&left, &right, &both, |f| AngularTree::Graft(Box::new(f.clone()))))
            }
        }
    }
}

pub fn rb_mul_aforest(a: &AngularForest, b: &AngularForest) -> LinearCombination<AngularForest> {
    AngularMultiplier::new().mul(a, b)
}

// ---------------------------------------------------------------------------
// Valley-free paths

/// Memoizing multiplier for valley-free paths.
#[derive(Default)]
pub struct PathMultiplier {
    memo: Memo<MotzkinPath>,
}

impl PathMultiplier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mul(&mut self, p: &MotzkinPath, q: &MotzkinPath) -> Result<LinearCombination<MotzkinPath>> {
        for x in [p, q] {
            x.require(Predicate::OmegaSingleton)?;
            x.require(Predicate::ValleyFree)?;
        }
        Ok(to_combination(&self.path(p, q)))
    }

    fn path(&mut self, p: &MotzkinPath, q: &MotzkinPath) -> Shared<MotzkinPath> {
        if p.is_trivial() {
            return single(q.clone());
        }
        if q.is_trivial() {
            return single(p.clone());
        }
        if let Some(hit) = self.memo.get(p, q) {
            return hit;
        }
        let pf = p.factors();
        let qf = q.factors();
        let (last, prefix) = pf.split_last().expect("non-trivial");
        let (first, suffix) = qf.split_first().expect("non-trivial");
        let middle = self.indecomposable(last, first);
        let head = prefix.iter().fold(MotzkinPath::trivial(), |acc, f| acc.link(f));
        let tail = suffix.iter().fold(MotzkinPath::trivial(), |acc, f| acc.link(f));
        let mut out = FxHashMap::default();
        for (m, c) in middle.iter() {
            add_into(&mut out, head.link(m).link(&tail), c);
        }
        let out = Arc::new(out);
        self.memo.insert(p, q, &out);
        out
    }

    fn indecomposable(&mut self, m: &MotzkinPath, n: &MotzkinPath) -> Shared<MotzkinPath> {
        match (m.unraise(), n.unraise()) {
            (Some((_, a)), Some((_, b))) => {
                let left = self.path(&a, n);
                let right = self.path(m, &b);
                let both = self.path(&a, &b);
                let d = LetterOmega::default_op();
                Arc::new(three_terms(&left, &right, &both, |x| x.raise(&d)))
            }
            _ => single(m.link(n)),
        }
    }
}

pub fn rb_mul_path(p: &MotzkinPath, q: &MotzkinPath) -> Result<LinearCombination<MotzkinPath>> {
    PathMultiplier::new().mul(p, q)
}

// ---------------------------------------------------------------------------
// Rota–Baxter words

/// Memoizing multiplier for Rota–Baxter words.
#[derive(Default)]
pub struct WordMultiplier {
    memo: Memo<BracketedWord>,
}

impl WordMultiplier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mul(&mut self, u: &BracketedWord, v: &BracketedWord) -> Result<LinearCombination<BracketedWord>> {
        for x in [u, v] {
            x.require(Predicate::OmegaSingleton)?;
            x.require(Predicate::RotaBaxterWord)?;
        }
        Ok(to_combination(&self.word(u, v)))
    }

    fn word(&mut self, u: &BracketedWord, v: &BracketedWord) -> Shared<BracketedWord> {
        if u.is_unit() {
            return single(v.clone());
        }
        if v.is_unit() {
            return single(u.clone());
        }
        if let Some(hit) = self.memo.get(u, v) {
            return hit;
        }
        let (last, prefix) = u.atoms().split_last().expect("non-unit");
        let (first, suffix) = v.atoms().split_first().expect("non-unit");
        let middle: Vec<(Vec<WordAtom>, LambdaPoly)> = match (last, first) {
            (WordAtom::Bracket(_, a), WordAtom::Bracket(_, b)) => {
                let ua = BracketedWord::from_atoms(vec![last.clone()]);
                let vb = BracketedWord::from_atoms(vec![first.clone()]);
                let left = self.word(a, &vb);
                let right = self.word(&ua, b);
                let both = self.word(a, b);
                let d = LetterOmega::default_op();
                three_terms(&left, &right, &both, |w| WordAtom::Bracket(d.clone(), w.clone()))
                    .into_iter()
                    .map(|(atom, c)| (vec![atom], c))
                    .collect()
            }
            _ => vec![(vec![last.clone(), first.clone()], LambdaPoly::one())],
        };
        let mut out = FxHashMap::default();
        for (m, c) in middle {
            let mut atoms = Vec::with_capacity(prefix.len() + m.len() + suffix.len());
            atoms.extend_from_slice(prefix);
            atoms.extend(m);
            atoms.extend_from_slice(suffix);
            add_into(&mut out, BracketedWord::from_atoms(atoms), &c);
        }
        let out = Arc::new(out);
        self.memo.insert(u, v, &out);
        out
    }
}

pub fn rb_mul_word(u: &BracketedWord, v: &BracketedWord) -> Result<LinearCombination<BracketedWord>> {
    WordMultiplier::new().mul(u, v)
}

// ---------------------------------------------------------------------------
// Leaf-spaced forests

/// Memoizing multiplier for leaf-spaced decorated forests.
#[derive(Default)]
pub struct LeafForestMultiplier {
    memo: Memo<DecoratedForest>,
}

impl LeafForestMultiplier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mul(
        &mut self,
        f: &DecoratedForest,
        g: &DecoratedForest,
    ) -> Result<LinearCombination<DecoratedForest>> {
        for x in [f, g] {
            x.require(Predicate::OmegaSingleton)?;
            x.require(Predicate::LeafSpaced)?;
        }
        Ok(to_combination(&self.forest(f, g)))
    }

    fn forest(&mut self, f: &DecoratedForest, g: &DecoratedForest) -> Shared<DecoratedForest> {
        if let Some(hit) = self.memo.get(f, g) {
            return hit;
        }
        let (last, prefix) = f.trees().split_last().expect("non-empty");
        let (first, suffix) = g.trees().split_first().expect("non-empty");
        let middle: Vec<(Vec<DecoratedTree>, LambdaPoly)> = match (last, first) {
            (DecoratedTree::Node(_, a), DecoratedTree::Node(_, b)) => {
                let fa = last.clone().into_forest();
                let gb = first.clone().into_forest();
                let left = self.forest(a, &gb);
                let right = self.forest(&fa, b);
                let both = self.forest(a, b);
                let d = LetterOmega::default_op();
                three_terms(&left, &right, &both, |x| x.graft(&d))
                    .into_iter()
                    .map(|(t, c)| (vec![t], c))
                    .collect()
            }
            _ => vec![(vec![last.clone(), first.clone()], LambdaPoly::one())],
        };
        let mut out = FxHashMap::default();
        for (m, c) in middle {
            let mut trees = Vec::with_capacity(prefix.len() + m.len() + suffix.len());
            trees.extend_from_slice(prefix);
            trees.extend(m);
            trees.extend_from_slice(suffix);
            add_into(&mut out, DecoratedForest::new(trees).expect("non-empty"), &c);
        }
        let out = Arc::new(out);
        self.memo.insert(f, g, &out);
        out
    }
}

pub fn rb_mul_lforest(
    f: &DecoratedForest,
    g: &DecoratedForest,
) -> Result<LinearCombination<DecoratedForest>> {
    LeafForestMultiplier::new().mul(f, g)
}

// ---------------------------------------------------------------------------
// Generic layer

/// A basis family carrying a Rota–Baxter product.
pub trait RotaBaxterBasis: Basis {
    /// The family the product is defined on.
    const FAMILY: &'static str;

    /// Membership in the product's family.
    fn check_member(&self) -> Result<()>;

    /// Symbolic product of two basis elements.
    fn rb_mul(&self, other: &Self) -> Result<LinearCombination<Self>>;

    /// The operator `P` on a basis element, default operator.
    fn rb_operator(&self) -> Self;

    /// The multiplicative unit, if the family is unitary.
    fn rb_unit() -> Option<Self>;
}

impl RotaBaxterBasis for AngularForest {
    const FAMILY: &'static str = "XF";

    fn check_member(&self) -> Result<()> {
        Ok(())
    }

    fn rb_mul(&self, other: &Self) -> Result<LinearCombination<Self>> {
        Ok(rb_mul_aforest(self, other))
    }

    fn rb_operator(&self) -> Self {
        self.graft().into_forest()
    }

    fn rb_unit() -> Option<Self> {
        Some(AngularForest::trivial())
    }
}

impl RotaBaxterBasis for MotzkinPath {
    const FAMILY: &'static str = "V";

    fn check_member(&self) -> Result<()> {
        self.require(Predicate::OmegaSingleton)?;
        self.require(Predicate::ValleyFree)
    }

    fn rb_mul(&self, other: &Self) -> Result<LinearCombination<Self>> {
        rb_mul_path(self, other)
    }

    fn rb_operator(&self) -> Self {
        self.raise(&LetterOmega::default_op())
    }

    fn rb_unit() -> Option<Self> {
        Some(MotzkinPath::trivial())
    }
}

impl RotaBaxterBasis for BracketedWord {
    const FAMILY: &'static str = "R";

    fn check_member(&self) -> Result<()> {
        self.require(Predicate::OmegaSingleton)?;
        self.require(Predicate::RotaBaxterWord)
    }

    fn rb_mul(&self, other: &Self) -> Result<LinearCombination<Self>> {
        rb_mul_word(self, other)
    }

    fn rb_operator(&self) -> Self {
        self.bracket(&LetterOmega::default_op())
    }

    fn rb_unit() -> Option<Self> {
        Some(BracketedWord::unit())
    }
}

impl RotaBaxterBasis for DecoratedForest {
    const FAMILY: &'static str = "Fl";

    fn check_member(&self) -> Result<()> {
        self.require(Predicate::OmegaSingleton)?;
        self.require(Predicate::LeafSpaced)
    }

    fn rb_mul(&self, other: &Self) -> Result<LinearCombination<Self>> {
        rb_mul_lforest(self, other)
    }

    fn rb_operator(&self) -> Self {
        self.graft(&LetterOmega::default_op()).into_forest()
    }

    fn rb_unit() -> Option<Self> {
        None
    }
}

/// The weight used by a product: symbolic `λ` or a fixed rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Symbolic,
    Value(Rational),
}

/// Linear extension of `P`.
pub fn rb_operator_p<B: RotaBaxterBasis>(u: &LinearCombination<B>) -> LinearCombination<B> {
    u.map_each(|b| Ok(b.rb_operator())).expect("basis-to-basis map cannot fail")
}

/// Bilinear extension of `⋄`. With a symbolic weight the result has
/// λ-coefficients (rational inputs are lifted); with a fixed weight every
/// λ is evaluated and the result is rational.
pub fn rb_product<B: RotaBaxterBasis>(
    u: &LinearCombination<B>,
    v: &LinearCombination<B>,
    weight: &Weight,
) -> Result<LinearCombination<B>> {
    if u.kind() != v.kind() {
        return Err(Error::MixedCoefficientTags);
    }
    let kind = match weight {
        Weight::Symbolic => CoeffKind::Lambda,
        Weight::Value(_) => CoeffKind::Rational,
    };
    let lift = |c: &Coefficient| -> Coefficient {
        match (c, weight) {
            (Coefficient::Rational(r), Weight::Symbolic) => Coefficient::Lambda(LambdaPoly::constant(r.clone())),
            (Coefficient::Lambda(_), Weight::Value(w)) => Coefficient::Rational(c.specialize(w)),
            _ => c.clone(),
        }
    };
    let mut out = LinearCombination::zero(kind);
    for (a, ca) in u.iter() {
        for (b, cb) in v.iter() {
            let coeff = lift(ca).checked_mul(&lift(cb))?;
            let mut prod = a.rb_mul(b)?;
            if let Weight::Value(w) = weight {
                prod = prod.specialize(w);
            }
            for (t, ct) in prod.iter() {
                out.add_term(t.clone(), ct.checked_mul(&coeff)?)?;
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Evaluation into concrete Rota–Baxter algebras

/// A Rota–Baxter algebra of fixed weight with an assignment of generators.
pub trait RotaBaxterTarget {
    type Carrier: Clone;

    fn weight(&self) -> Rational;
    fn unit(&self) -> Self::Carrier;
    fn zero(&self) -> Self::Carrier;
    fn add(&self, a: &Self::Carrier, b: &Self::Carrier) -> Self::Carrier;
    fn scale(&self, r: &Rational, a: &Self::Carrier) -> Self::Carrier;
    fn mul(&self, a: &Self::Carrier, b: &Self::Carrier) -> Self::Carrier;
    fn operator(&self, a: &Self::Carrier) -> Self::Carrier;
    fn generator(&self, x: &LetterX) -> Option<Self::Carrier>;
}

/// A sequence of fixed length with pointwise arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSequence {
    entries: Vec<Rational>,
}

impl TruncatedSequence {
    pub fn new(entries: Vec<Rational>) -> Self {
        TruncatedSequence { entries }
    }

    pub fn constant(n: usize, v: Rational) -> Self {
        TruncatedSequence { entries: vec![v; n] }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.len(), other.len(), "sequences of equal length");
        TruncatedSequence {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TruncatedSequence {
            entries: self.entries.iter().map(|a| a * r).collect(),
        }
    }

    /// `Σ_{k<n} a_k` at position `n`.
    pub fn strict_partial_sums(&self) -> Self {
        let mut acc = Rational::zero();
        let mut entries = Vec::with_capacity(self.len());
        for a in &self.entries {
            entries.push(acc.clone());
            acc = &acc + a;
        }
        TruncatedSequence { entries }
    }

    /// `Σ_{k≤n} a_k` at position `n`.
    pub fn inclusive_partial_sums(&self) -> Self {
        let mut acc = Rational::zero();
        let entries = self
            .entries
            .iter()
            .map(|a| {
                acc = &acc + a;
                acc.clone()
            })
            .collect();
        TruncatedSequence { entries }
    }
}

/// Weight of a sequence target: `+1` uses strict partial sums, `−1`
/// inclusive ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceWeight {
    Plus,
    Minus,
}

impl SequenceWeight {
    pub fn value(self) -> Rational {
        match self {
            SequenceWeight::Plus => Rational::one(),
            SequenceWeight::Minus => Rational::from(-1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SequenceTarget {
    len: usize,
    weight: SequenceWeight,
    assignment: BTreeMap<LetterX, TruncatedSequence>,
}

/// The algebra of length-`n` rational sequences with a partial-sum
/// operator of the given weight.
pub fn seq_rb_target(
    n: usize,
    weight: SequenceWeight,
    assignment: BTreeMap<LetterX, TruncatedSequence>,
) -> SequenceTarget {
    assert!(n >= 1, "sequence length must be positive");
    assert!(assignment.values().all(|s| s.len() == n), "assigned sequences have length n");
    SequenceTarget {
        len: n,
        weight,
        assignment,
    }
}

impl SequenceTarget {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

impl RotaBaxterTarget for SequenceTarget {
    type Carrier = TruncatedSequence;

    fn weight(&self) -> Rational {
        self.weight.value()
    }

    fn unit(&self) -> TruncatedSequence {
        TruncatedSequence::constant(self.len, Rational::one())
    }

    fn zero(&self) -> TruncatedSequence {
        TruncatedSequence::constant(self.len, Rational::zero())
    }

    fn add(&self, a: &TruncatedSequence, b: &TruncatedSequence) -> TruncatedSequence {
        a.add(b)
    }

    fn scale(&self, r: &Rational, a: &TruncatedSequence) -> TruncatedSequence {
        a.scale(r)
    }

    fn mul(&self, a: &TruncatedSequence, b: &TruncatedSequence) -> TruncatedSequence {
        a.mul(b)
    }

    fn operator(&self, a: &TruncatedSequence) -> TruncatedSequence {
        match self.weight {
            SequenceWeight::Plus => a.strict_partial_sums(),
            SequenceWeight::Minus => a.inclusive_partial_sums(),
        }
    }

    fn generator(&self, x: &LetterX) -> Option<TruncatedSequence> {
        self.assignment.get(x).cloned()
    }
}

/// Folds one word: `1` to the unit, letters to generators, concatenation to
/// the product, brackets to the operator.
pub fn rb_evaluate_word<T: RotaBaxterTarget>(w: &BracketedWord, t: &T) -> Result<T::Carrier> {
    let mut acc = t.unit();
    for atom in w.atoms() {
        let v = match atom {
            WordAtom::Letter(x) => t.generator(x).ok_or_else(|| Error::UnknownSymbol {
                symbol: x.to_string(),
            })?,
            WordAtom::Bracket(_, body) => t.operator(&rb_evaluate_word(body, t)?),
        };
        acc = t.mul(&acc, &v);
    }
    Ok(acc)
}

/// The unique Rota–Baxter homomorphism extending the target's assignment,
/// applied linearly. λ-coefficients are evaluated at the target's weight.
pub fn rb_evaluate<T: RotaBaxterTarget>(u: &LinearCombination<BracketedWord>, t: &T) -> Result<T::Carrier> {
    let w = t.weight();
    let mut acc = t.zero();
    for (b, c) in u.iter() {
        let r = c.specialize(&w);
        acc = t.add(&acc, &t.scale(&r, &rb_evaluate_word(b, t)?));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BracketedWord {
        s.parse().unwrap()
    }

    fn p(s: &str) -> MotzkinPath {
        s.parse().unwrap()
    }

    fn af(s: &str) -> AngularForest {
        s.parse().unwrap()
    }

    fn vf(s: &str) -> DecoratedForest {
        s.parse().unwrap()
    }

    #[test]
    fn word_examples() {
        assert_eq!(
            rb_mul_word(&w("[x]"), &w("[y]")).unwrap().to_string(),
            "1*[x [y]] + 1*[[x] y] + λ*[x y]"
        );
        assert_eq!(
            rb_mul_word(&w("[x]"), &w("[]")).unwrap().to_string(),
            "1*[x []] + 1*[[x]] + λ*[x]"
        );
        assert_eq!(rb_mul_word(&w("x"), &w("[y] z")).unwrap().to_string(), "1*x [y] z");
        assert!(rb_mul_word(&w("[x] [y]"), &w("x")).is_err());
    }

    #[test]
    fn other_examples() {
        assert_eq!(
            rb_mul_aforest(&af("<* x *>"), &af("<*>")).to_string(),
            "1*<* x <*>> + 1*<<* x *>> + λ*<* x *>"
        );
        assert_eq!(
            rb_mul_path(&p("U L:x D"), &p("U L:y D")).unwrap().to_string(),
            "1*U L:x U L:y D D + 1*U U L:x D L:y D + λ*U L:x L:y D"
        );
        assert_eq!(
            rb_mul_lforest(&vf("(x)"), &vf("(y)")).unwrap().to_string(),
            "1*(x (y)) + 1*((x) y) + λ*(x y)"
        );
        assert_eq!(rb_mul_lforest(&vf("x"), &vf("(y)")).unwrap().to_string(), "1*x (y)");
        assert_eq!(rb_mul_path(&p(""), &p("L:x")).unwrap().to_string(), "1*L:x");
    }

    #[test]
    fn specialized_product() {
        let u = LinearCombination::basis(w("[x]"), CoeffKind::Rational);
        let v = LinearCombination::basis(w("[]"), CoeffKind::Rational);
        let prod = rb_product(&u, &v, &Weight::Value(Rational::from(-1))).unwrap();
        assert_eq!(prod.to_string(), "1*[x []] + 1*[[x]] + -1*[x]");
    }

    #[test]
    fn operator_is_linear() {
        let zero = LinearCombination::<BracketedWord>::zero(CoeffKind::Lambda);
        assert!(rb_operator_p(&zero).is_zero());
        let u = LinearCombination::basis(w("x"), CoeffKind::Lambda)
            .add(&LinearCombination::term(w("y"), Coefficient::lambda()))
            .unwrap();
        assert_eq!(rb_operator_p(&u).to_string(), "λ*[y] + 1*[x]");
    }

    #[test]
    fn sequence_operators() {
        let ones = TruncatedSequence::constant(4, Rational::one());
        let strict: Vec<String> = ones.strict_partial_sums().entries().iter().map(|r| r.to_string()).collect();
        assert_eq!(strict, ["0", "1", "2", "3"]);
        let e0 = TruncatedSequence::new(vec![Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()]);
        assert_eq!(e0.inclusive_partial_sums(), ones);
    }

    #[test]
    fn evaluation() {
        let n = 5;
        let mut assignment = BTreeMap::new();
        assignment.insert(LetterX::of("x"), TruncatedSequence::constant(n, Rational::one()));
        let t = seq_rb_target(n, SequenceWeight::Plus, assignment);
        let bx = LinearCombination::basis(w("[x]"), CoeffKind::Rational);
        let got = rb_evaluate(&bx, &t).unwrap();
        let want: Vec<Rational> = (0..n as i64).map(Rational::from).collect();
        assert_eq!(got.entries(), &want[..]);
        let one = LinearCombination::basis(w("1"), CoeffKind::Rational);
        assert_eq!(rb_evaluate(&one, &t).unwrap(), t.unit());
        let missing = LinearCombination::basis(w("y"), CoeffKind::Rational);
        assert!(matches!(rb_evaluate(&missing, &t), Err(Error::UnknownSymbol { .. })));
    }
}
