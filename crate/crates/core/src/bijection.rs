//! Maps between the four representations: the universal extension into any
//! operated monoid or semigroup, the individual bijections, and routing
//! through the diagram of families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Predicate, Result};
use crate::forest::{AngularForest, AngularTree, DecoratedForest, DecoratedTree, PlanarTree};
use crate::path::{MotzkinPath, Step};
use crate::symbol::{LetterOmega, LetterX};
use crate::word::{BracketedWord, FlatWord, WordAtom};

// ---------------------------------------------------------------------------
// Universal extension

/// A set with an associative product and one unary operator per `ω`.
pub trait OperatedSemigroup {
    type Carrier: Clone;

    /// Image of a generator; `None` if the assignment does not cover `x`.
    fn generator(&self, x: &LetterX) -> Option<Self::Carrier>;

    fn mul(&self, a: &Self::Carrier, b: &Self::Carrier) -> Self::Carrier;

    /// The operator `ω`; `None` if the target has no such operator.
    fn apply(&self, omega: &LetterOmega, a: &Self::Carrier) -> Option<Self::Carrier>;
}

pub trait OperatedMonoid: OperatedSemigroup {
    fn unit(&self) -> Self::Carrier;
}

fn unknown_x(x: &LetterX) -> Error {
    Error::UnknownSymbol {
        symbol: x.to_string(),
    }
}

fn unknown_w(w: &LetterOmega) -> Error {
    Error::UnknownSymbol {
        symbol: w.to_string(),
    }
}

/// Folds a path into a monoid: `•` to the unit, level steps to generators,
/// link to the product, raising to the operator.
pub fn extend_path<T: OperatedMonoid>(p: &MotzkinPath, t: &T) -> Result<T::Carrier> {
    let mut acc = t.unit();
    for factor in p.factors() {
        let image = match factor.unraise() {
            Some((w, inner)) => {
                let v = extend_path(&inner, t)?;
                t.apply(&w, &v).ok_or_else(|| unknown_w(&w))?
            }
            None => match &factor.steps()[0] {
                Step::Level(x) => t.generator(x).ok_or_else(|| unknown_x(x))?,
                _ => unreachable!("indecomposable factors are level steps or raised paths"),
            },
        };
        acc = t.mul(&acc, &image);
    }
    Ok(acc)
}

/// Folds a path into a semigroup; the path and every raised body must be
/// non-trivial.
pub fn extend_path_semigroup<T: OperatedSemigroup>(p: &MotzkinPath, t: &T) -> Result<T::Carrier> {
    let mut acc: Option<T::Carrier> = None;
    for factor in p.factors() {
        let image = match factor.unraise() {
            Some((w, inner)) => {
                let v = extend_path_semigroup(&inner, t)?;
                t.apply(&w, &v).ok_or_else(|| unknown_w(&w))?
            }
            None => match &factor.steps()[0] {
                Step::Level(x) => t.generator(x).ok_or_else(|| unknown_x(x))?,
                _ => unreachable!("indecomposable factors are level steps or raised paths"),
            },
        };
        acc = Some(match acc {
            None => image,
            Some(a) => t.mul(&a, &image),
        });
    }
    acc.ok_or(Error::UnitInNonunitary)
}

pub fn extend_word<T: OperatedMonoid>(w: &BracketedWord, t: &T) -> Result<T::Carrier> {
    let mut acc = t.unit();
    for atom in w.atoms() {
        let image = match atom {
            WordAtom::Letter(x) => t.generator(x).ok_or_else(|| unknown_x(x))?,
            WordAtom::Bracket(op, body) => {
                let v = extend_word(body, t)?;
                t.apply(op, &v).ok_or_else(|| unknown_w(op))?
            }
        };
        acc = t.mul(&acc, &image);
    }
    Ok(acc)
}

pub fn extend_forest<T: OperatedSemigroup>(f: &DecoratedForest, t: &T) -> Result<T::Carrier> {
    let mut acc: Option<T::Carrier> = None;
    for tree in f.trees() {
        let image = match tree {
            DecoratedTree::Leaf(x) => t.generator(x).ok_or_else(|| unknown_x(x))?,
            DecoratedTree::Node(op, body) => {
                let v = extend_forest(body, t)?;
                t.apply(op, &v).ok_or_else(|| unknown_w(op))?
            }
        };
        acc = Some(match acc {
            None => image,
            Some(a) => t.mul(&a, &image),
        });
    }
    Ok(acc.expect("forests are non-empty"))
}

/// Bracketed words under concatenation and bracketing; generators are
/// single letters.
#[derive(Clone, Copy, Debug, Default)]
pub struct WordTarget;

impl OperatedSemigroup for WordTarget {
    type Carrier = BracketedWord;

    fn generator(&self, x: &LetterX) -> Option<BracketedWord> {
        Some(BracketedWord::letter(x.clone()))
    }

    fn mul(&self, a: &BracketedWord, b: &BracketedWord) -> BracketedWord {
        a.concat(b)
    }

    fn apply(&self, omega: &LetterOmega, a: &BracketedWord) -> Option<BracketedWord> {
        Some(a.bracket(omega))
    }
}

impl OperatedMonoid for WordTarget {
    fn unit(&self) -> BracketedWord {
        BracketedWord::unit()
    }
}

/// Paths under link and raising; generators are level steps.
#[derive(Clone, Copy, Debug, Default)]
pub struct PathTarget;

impl OperatedSemigroup for PathTarget {
    type Carrier = MotzkinPath;

    fn generator(&self, x: &LetterX) -> Option<MotzkinPath> {
        Some(MotzkinPath::level(x.clone()))
    }

    fn mul(&self, a: &MotzkinPath, b: &MotzkinPath) -> MotzkinPath {
        a.link(b)
    }

    fn apply(&self, omega: &LetterOmega, a: &MotzkinPath) -> Option<MotzkinPath> {
        Some(a.raise(omega))
    }
}

impl OperatedMonoid for PathTarget {
    fn unit(&self) -> MotzkinPath {
        MotzkinPath::trivial()
    }
}

/// Decorated forests under concatenation and grafting; generators are
/// single leaves.
#[derive(Clone, Copy, Debug, Default)]
pub struct ForestTarget;

impl OperatedSemigroup for ForestTarget {
    type Carrier = DecoratedForest;

    fn generator(&self, x: &LetterX) -> Option<DecoratedForest> {
        Some(DecoratedForest::leaf(x.clone()))
    }

    fn mul(&self, a: &DecoratedForest, b: &DecoratedForest) -> DecoratedForest {
        a.concat(b)
    }

    fn apply(&self, omega: &LetterOmega, a: &DecoratedForest) -> Option<DecoratedForest> {
        Some(a.graft(omega).into_forest())
    }
}

// ---------------------------------------------------------------------------
// Words and paths

pub fn word_to_path(w: &BracketedWord) -> MotzkinPath {
    w.flatten().to_path()
}

pub fn path_to_word(p: &MotzkinPath) -> BracketedWord {
    FlatWord::from_path(p).to_bracketed()
}

// ---------------------------------------------------------------------------
// Decorated forests and peak-free paths

pub fn forest_to_path(f: &DecoratedForest) -> MotzkinPath {
    f.vertex_biorder().to_path()
}

pub fn path_to_forest(p: &MotzkinPath) -> Result<DecoratedForest> {
    p.require(Predicate::PeakFree)?;
    extend_path_semigroup(p, &ForestTarget)
}

// ---------------------------------------------------------------------------
// Valley-free paths and angular forests

fn require_omega_singleton_path(p: &MotzkinPath) -> Result<()> {
    p.require(Predicate::OmegaSingleton)
}

/// Recursive map on standard decompositions: `•` blocks become leaves,
/// raised blocks become grafts, ground-level letters become angles.
pub fn path_to_aforest(p: &MotzkinPath) -> Result<AngularForest> {
    require_omega_singleton_path(p)?;
    p.require(Predicate::ValleyFree)?;
    Ok(path_to_aforest_rec(p))
}

fn path_to_aforest_rec(p: &MotzkinPath) -> AngularForest {
    let d = p
        .standard_decomposition()
        .expect("sub-blocks of a valley-free path are valley-free");
    let blocks = d
        .blocks
        .iter()
        .map(|b| match b.unraise() {
            None => AngularTree::Leaf,
            Some((_, inner)) => AngularTree::Graft(Box::new(path_to_aforest_rec(&inner))),
        })
        .collect();
    AngularForest::from_decomposition(blocks, d.separators).expect("block count matches")
}

pub fn aforest_to_path(a: &AngularForest) -> MotzkinPath {
    let d = LetterOmega::default_op();
    let tree_path = |t: &AngularTree| match t {
        AngularTree::Leaf => MotzkinPath::trivial(),
        AngularTree::Graft(f) => aforest_to_path(f).raise(&d),
    };
    let mut out = tree_path(&a.head);
    for (x, t) in &a.tail {
        out = out.link(&MotzkinPath::level(x.clone())).link(&tree_path(t));
    }
    out
}

/// Second route: replace every level step by a valley, wrap in one extra
/// pair, read the Dyck word as a planar tree and reattach the letters as
/// angle decorations.
pub fn path_to_aforest_by_edges(p: &MotzkinPath) -> Result<AngularForest> {
    require_omega_singleton_path(p)?;
    p.require(Predicate::ValleyFree)?;
    let mut letters = Vec::new();
    let mut stack: Vec<Vec<PlanarTree>> = vec![Vec::new(), Vec::new()];
    let close = |stack: &mut Vec<Vec<PlanarTree>>| {
        let children = stack.pop().expect("balanced");
        stack
            .last_mut()
            .expect("balanced")
            .push(PlanarTree { children });
    };
    for s in p.steps() {
        match s {
            Step::Up(_) => stack.push(Vec::new()),
            Step::Down(_) => close(&mut stack),
            Step::Level(x) => {
                letters.push(x.clone());
                close(&mut stack);
                stack.push(Vec::new());
            }
        }
    }
    close(&mut stack);
    let shapes = stack.pop().expect("children of the added root");
    debug_assert!(stack.is_empty());
    AngularForest::from_parts(&shapes, &letters)
}

/// Second route for the inverse: the edge biorder word.
pub fn aforest_to_path_by_edges(a: &AngularForest) -> MotzkinPath {
    a.edge_path()
}

// ---------------------------------------------------------------------------
// Leaf-spaced forests and ladder-free angular forests

pub fn lforest_to_aforest(f: &DecoratedForest) -> Result<AngularForest> {
    f.require(Predicate::OmegaSingleton)?;
    f.require(Predicate::LeafSpaced)?;
    Ok(lforest_block(f.trees()))
}

/// Children sequence rule: grafted children convert recursively, leaves
/// become angle letters, and a bare leaf `•` fills every position between
/// two letters and at either end next to a letter.
fn lforest_block(children: &[DecoratedTree]) -> AngularForest {
    let mut trees: Vec<AngularTree> = Vec::new();
    let mut letters: Vec<LetterX> = Vec::new();
    let mut expecting_tree = true;
    for c in children {
        match c {
            DecoratedTree::Leaf(x) => {
                if expecting_tree {
                    trees.push(AngularTree::Leaf);
                }
                letters.push(x.clone());
                expecting_tree = true;
            }
            DecoratedTree::Node(_, body) => {
                debug_assert!(expecting_tree, "leaf-spaced input");
                trees.push(AngularTree::Graft(Box::new(lforest_block(body.trees()))));
                expecting_tree = false;
            }
        }
    }
    if expecting_tree {
        trees.push(AngularTree::Leaf);
    }
    AngularForest::from_decomposition(trees, letters).expect("alternation holds")
}

pub fn aforest_to_lforest(a: &AngularForest) -> Result<DecoratedForest> {
    a.require(Predicate::LadderFree)?;
    Ok(DecoratedForest::new(aforest_block(a)).expect("ladder-free forests have a letter or graft"))
}

/// Inverse rule: bare leaves are dropped, angles become leaves.
fn aforest_block(a: &AngularForest) -> Vec<DecoratedTree> {
    let d = LetterOmega::default_op();
    let mut out = Vec::new();
    let push_tree = |t: &AngularTree, out: &mut Vec<DecoratedTree>| {
        if let AngularTree::Graft(body) = t {
            let children = DecoratedForest::new(aforest_block(body)).expect("no ladders");
            out.push(DecoratedTree::Node(d.clone(), children));
        }
    };
    push_tree(&a.head, &mut out);
    for (x, t) in &a.tail {
        out.push(DecoratedTree::Leaf(x.clone()));
        push_tree(t, &mut out);
    }
    out
}

// ---------------------------------------------------------------------------
// Families and routing

/// The twelve families of the bijection diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Unitary bracketed words.
    M,
    /// Nonunitary bracketed words.
    S,
    /// Rota–Baxter words.
    R,
    /// Nonunitary Rota–Baxter words.
    SR,
    /// All decorated Motzkin paths.
    P,
    /// Peak-free paths.
    L,
    /// Valley-free paths.
    V,
    /// Peak-free and valley-free paths.
    LV,
    /// Vertex-decorated forests.
    F,
    /// Leaf-spaced forests.
    Fl,
    /// Angularly decorated forests.
    XF,
    /// Ladder-free angular forests.
    XF0,
}

/// Underlying data type of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    Word,
    Path,
    VForest,
    AForest,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::Word => "word",
            Representation::Path => "path",
            Representation::VForest => "vforest",
            Representation::AForest => "aforest",
        }
    }

    /// The largest family stored in this representation.
    pub fn top_family(self) -> Family {
        match self {
            Representation::Word => Family::M,
            Representation::Path => Family::P,
            Representation::VForest => Family::F,
            Representation::AForest => Family::XF,
        }
    }
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::M,
        Family::S,
        Family::R,
        Family::SR,
        Family::P,
        Family::L,
        Family::V,
        Family::LV,
        Family::F,
        Family::Fl,
        Family::XF,
        Family::XF0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::M => "M",
            Family::S => "S",
            Family::R => "R",
            Family::SR => "SR",
            Family::P => "P",
            Family::L => "L",
            Family::V => "V",
            Family::LV => "LV",
            Family::F => "F",
            Family::Fl => "Fl",
            Family::XF => "XF",
            Family::XF0 => "XF0",
        }
    }

    pub fn representation(self) -> Representation {
        match self {
            Family::M | Family::S | Family::R | Family::SR => Representation::Word,
            Family::P | Family::L | Family::V | Family::LV => Representation::Path,
            Family::F | Family::Fl => Representation::VForest,
            Family::XF | Family::XF0 => Representation::AForest,
        }
    }

    /// Predicates defining the family inside its representation.
    pub fn predicates(self) -> &'static [Predicate] {
        use Predicate::*;
        match self {
            Family::M | Family::P | Family::F | Family::XF => &[],
            Family::S => &[Nonunitary],
            Family::R => &[OmegaSingleton, RotaBaxterWord],
            Family::SR => &[OmegaSingleton, Nonunitary, RotaBaxterWord],
            Family::L => &[PeakFree],
            Family::V => &[OmegaSingleton, ValleyFree],
            Family::LV => &[OmegaSingleton, PeakFree, ValleyFree],
            Family::Fl => &[OmegaSingleton, LeafSpaced],
            Family::XF0 => &[LadderFree],
        }
    }

    /// Families whose elements carry only the default operator.
    pub fn is_omega_singleton(self) -> bool {
        self.predicates().contains(&Predicate::OmegaSingleton) || self.representation() == Representation::AForest
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts family names and representation names.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "word" => return Ok(Family::M),
            "path" => return Ok(Family::P),
            "vforest" => return Ok(Family::F),
            "aforest" => return Ok(Family::XF),
            _ => {}
        }
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownSymbol { symbol: s.to_string() })
    }
}

/// An element stored in one of the four representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Word(BracketedWord),
    Path(MotzkinPath),
    VForest(DecoratedForest),
    AForest(AngularForest),
}

impl Element {
    pub fn representation(&self) -> Representation {
        match self {
            Element::Word(_) => Representation::Word,
            Element::Path(_) => Representation::Path,
            Element::VForest(_) => Representation::VForest,
            Element::AForest(_) => Representation::AForest,
        }
    }

    pub fn parse(rep: Representation, text: &str) -> Result<Self> {
        Ok(match rep {
            Representation::Word => Element::Word(text.parse()?),
            Representation::Path => Element::Path(text.parse()?),
            Representation::VForest => Element::VForest(text.parse()?),
            Representation::AForest => Element::AForest(text.parse()?),
        })
    }

    /// Size in the representation's own measure; equal to the length of the
    /// path image.
    pub fn size(&self) -> usize {
        match self {
            Element::Word(w) => w.size(),
            Element::Path(p) => p.len(),
            Element::VForest(f) => f.size(),
            Element::AForest(a) => a.size(),
        }
    }

    pub fn require(&self, predicate: Predicate) -> Result<()> {
        match self {
            Element::Word(w) => w.require(predicate),
            Element::Path(p) => p.require(predicate),
            Element::VForest(f) => f.require(predicate),
            Element::AForest(a) => a.require(predicate),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Element::Word(w) => w.to_string(),
            Element::Path(p) => p.render(),
            Element::VForest(f) => f.render(),
            Element::AForest(a) => a.render(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Word(w) => write!(f, "{w}"),
            Element::Path(p) => write!(f, "{p}"),
            Element::VForest(v) => write!(f, "{v}"),
            Element::AForest(a) => write!(f, "{a}"),
        }
    }
}

/// An element tagged with the family it is claimed to belong to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyElement {
    family: Family,
    element: Element,
}

impl FamilyElement {
    /// Checks membership.
    pub fn new(family: Family, element: Element) -> Result<Self> {
        if element.representation() != family.representation() {
            return Err(Error::FamilyMismatch {
                expected: family.representation().name().to_string(),
                found: element.representation().name().to_string(),
            });
        }
        for &p in family.predicates() {
            element.require(p)?;
        }
        Ok(FamilyElement { family, element })
    }

    pub fn parse(family: Family, text: &str) -> Result<Self> {
        Self::new(family, Element::parse(family.representation(), text)?)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn into_element(self) -> Element {
        self.element
    }
}

impl fmt::Display for FamilyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.element)
    }
}

/// One arrow of the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowKind {
    Bijection,
    /// Subfamily into superfamily, the identity on elements.
    Inclusion,
    /// Superfamily into subfamily, defined on members of the subfamily.
    Restriction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub from: Family,
    pub to: Family,
    pub kind: ArrowKind,
}

const BIJECTIONS: [(Family, Family); 9] = [
    (Family::M, Family::P),
    (Family::S, Family::L),
    (Family::R, Family::V),
    (Family::SR, Family::LV),
    (Family::L, Family::F),
    (Family::LV, Family::Fl),
    (Family::V, Family::XF),
    (Family::LV, Family::XF0),
    (Family::Fl, Family::XF0),
];

const INCLUSIONS: [(Family, Family); 10] = [
    (Family::S, Family::M),
    (Family::R, Family::M),
    (Family::L, Family::P),
    (Family::V, Family::P),
    (Family::SR, Family::S),
    (Family::SR, Family::R),
    (Family::LV, Family::L),
    (Family::LV, Family::V),
    (Family::Fl, Family::F),
    (Family::XF0, Family::XF),
];

/// All arrows leaving `f`, sorted by target name.
pub fn arrows_from(f: Family) -> Vec<Arrow> {
    let mut out = Vec::new();
    for &(a, b) in &BIJECTIONS {
        if a == f {
            out.push(Arrow { from: a, to: b, kind: ArrowKind::Bijection });
        }
        if b == f {
            out.push(Arrow { from: b, to: a, kind: ArrowKind::Bijection });
        }
    }
    for &(sub, sup) in &INCLUSIONS {
        if sub == f {
            out.push(Arrow { from: sub, to: sup, kind: ArrowKind::Inclusion });
        }
        if sup == f {
            out.push(Arrow { from: sup, to: sub, kind: ArrowKind::Restriction });
        }
    }
    out.sort_by_key(|a| a.to.name());
    out
}

/// Applies one arrow to a member of its source family.
pub fn apply_arrow(arrow: Arrow, e: &FamilyElement) -> Result<FamilyElement> {
    debug_assert_eq!(e.family, arrow.from);
    let element = match arrow.kind {
        ArrowKind::Inclusion => e.element.clone(),
        ArrowKind::Restriction => {
            return FamilyElement::new(arrow.to, e.element.clone());
        }
        ArrowKind::Bijection => match (&e.element, arrow.to.representation()) {
            (Element::Word(w), Representation::Path) => Element::Path(word_to_path(w)),
            (Element::Path(p), Representation::Word) => Element::Word(path_to_word(p)),
            (Element::Path(p), Representation::VForest) => Element::VForest(path_to_forest(p)?),
            (Element::VForest(f), Representation::Path) => Element::Path(forest_to_path(f)),
            (Element::Path(p), Representation::AForest) => Element::AForest(path_to_aforest(p)?),
            (Element::AForest(a), Representation::Path) => Element::Path(aforest_to_path(a)),
            (Element::VForest(f), Representation::AForest) => Element::AForest(lforest_to_aforest(f)?),
            (Element::AForest(a), Representation::VForest) => Element::VForest(aforest_to_lforest(a)?),
            (el, rep) => {
                return Err(Error::NoRoute {
                    from: el.representation().name().to_string(),
                    to: rep.name().to_string(),
                })
            }
        },
    };
    debug_assert!(FamilyElement::new(arrow.to, element.clone()).is_ok());
    Ok(FamilyElement {
        family: arrow.to,
        element,
    })
}

pub fn apply_route(route: &[Arrow], e: &FamilyElement) -> Result<FamilyElement> {
    route.iter().try_fold(e.clone(), |acc, &a| apply_arrow(a, &acc))
}

/// Every simple route from `from` to `to` with at most `max_arrows` arrows.
pub fn all_routes(from: Family, to: Family, max_arrows: usize) -> Vec<Vec<Arrow>> {
    fn go(
        at: Family,
        to: Family,
        max: usize,
        seen: &mut Vec<Family>,
        route: &mut Vec<Arrow>,
        out: &mut Vec<Vec<Arrow>>,
    ) {
        if at == to {
            out.push(route.clone());
            return;
        }
        if route.len() == max {
            return;
        }
        for a in arrows_from(at) {
            if seen.contains(&a.to) {
                continue;
            }
            seen.push(a.to);
            route.push(a);
            go(a.to, to, max, seen, route, out);
            route.pop();
            seen.pop();
        }
    }
    let mut out = Vec::new();
    go(from, to, max_arrows, &mut vec![from], &mut Vec::new(), &mut out);
    out
}

/// The shortest route, ties broken by the sequence of family names.
pub fn preferred_route(from: Family, to: Family) -> Option<Vec<Arrow>> {
    all_routes(from, to, Family::ALL.len())
        .into_iter()
        .min_by_key(|r| (r.len(), r.iter().map(|a| a.to.name()).collect::<Vec<_>>()))
}

/// Converts along the preferred route of the diagram.
pub fn family_convert(e: &FamilyElement, target: Family) -> Result<FamilyElement> {
    let route = preferred_route(e.family, target).ok_or_else(|| Error::NoRoute {
        from: e.family.name().to_string(),
        to: target.name().to_string(),
    })?;
    apply_route(&route, e)
}

/// Routes to `target` keyed by their family-name sequence.
pub fn routes_by_name(from: Family, to: Family, max_arrows: usize) -> BTreeMap<String, Vec<Arrow>> {
    all_routes(from, to, max_arrows)
        .into_iter()
        .map(|r| {
            let mut name = from.name().to_string();
            for a in &r {
                name.push_str("->");
                name.push_str(a.to.name());
            }
            (name, r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MotzkinPath {
        s.parse().unwrap()
    }

    fn w(s: &str) -> BracketedWord {
        s.parse().unwrap()
    }

    fn vf(s: &str) -> DecoratedForest {
        s.parse().unwrap()
    }

    fn af(s: &str) -> AngularForest {
        s.parse().unwrap()
    }

    #[test]
    fn universal_extension_examples() {
        assert_eq!(extend_path(&p("L:x"), &WordTarget).unwrap(), w("x"));
        assert_eq!(extend_path(&p("U L:x D"), &WordTarget).unwrap(), w("[x]"));
        let q = p("L:x U:a U:b D:b L:y D:a");
        assert_eq!(extend_path(&q, &PathTarget).unwrap(), q);
        assert_eq!(extend_word(&w("x [a: y]"), &PathTarget).unwrap(), p("L:x U:a L:y D:a"));
        assert_eq!(
            extend_path_semigroup(&p("U D"), &ForestTarget),
            Err(Error::UnitInNonunitary)
        );
    }

    #[test]
    fn word_path_examples() {
        assert_eq!(word_to_path(&w("[x]")), p("U L:x D"));
        assert_eq!(word_to_path(&w("1")), MotzkinPath::trivial());
        let q = word_to_path(&w("[x] [y]"));
        assert_eq!(q, p("U L:x D U L:y D"));
        assert!(!q.is_valley_free());
        assert_eq!(path_to_word(&p("U:a L:x D:a L:y")), w("[a: x] y"));
    }

    #[test]
    fn forest_path_examples() {
        assert_eq!(forest_to_path(&vf("x")), p("L:x"));
        assert_eq!(forest_to_path(&vf("(w: x y)")), p("U:w L:x L:y D:w"));
        assert_eq!(path_to_forest(&p("U:w L:x L:y D:w")).unwrap(), vf("(w: x y)"));
        assert_eq!(
            path_to_forest(&p("L:x U D")),
            Err(Error::not_in(Predicate::PeakFree, Some(1)))
        );
    }

    #[test]
    fn valley_angular_examples() {
        assert_eq!(path_to_aforest(&p("L:x")).unwrap(), af("* x *"));
        assert_eq!(path_to_aforest(&p("")).unwrap(), AngularForest::trivial());
        assert_eq!(path_to_aforest(&p("U L:x D")).unwrap(), af("<* x *>"));
        assert_eq!(path_to_aforest_by_edges(&p("U L:x D")).unwrap(), af("<* x *>"));
        assert_eq!(aforest_to_path(&af("<* x <*>>")), p("U L:x U D D"));
        assert!(matches!(
            path_to_aforest(&p("U D U D")),
            Err(Error::NotInFamily { predicate: Predicate::ValleyFree, .. })
        ));
    }

    #[test]
    fn leaf_angular_examples() {
        assert_eq!(lforest_to_aforest(&vf("(x)")).unwrap(), af("<* x *>"));
        assert_eq!(lforest_to_aforest(&vf("x")).unwrap(), af("* x *"));
        assert_eq!(lforest_to_aforest(&vf("x y")).unwrap(), af("* x * y *"));
        assert_eq!(lforest_to_aforest(&vf("(x) y (z)")).unwrap(), af("<* x *> y <* z *>"));
        assert_eq!(aforest_to_lforest(&af("<* x *> y <* z *>")).unwrap(), vf("(x) y (z)"));
        assert!(aforest_to_lforest(&af("<*> x *")).is_err());
    }

    #[test]
    fn routing() {
        let e = FamilyElement::parse(Family::M, "[x]").unwrap();
        let out = family_convert(&e, Family::XF).unwrap();
        assert_eq!(out.to_string(), "<* x *>");
        assert_eq!(family_convert(&e, Family::M).unwrap(), e);
        let bad = FamilyElement::parse(Family::P, "U D U D").unwrap();
        assert!(matches!(
            family_convert(&bad, Family::XF),
            Err(Error::NotInFamily { predicate: Predicate::ValleyFree, .. })
        ));
        let r = preferred_route(Family::M, Family::XF).unwrap();
        let names: Vec<_> = r.iter().map(|a| a.to.name()).collect();
        assert_eq!(names, ["P", "V", "XF"]);
    }
}
