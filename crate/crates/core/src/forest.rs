//! Planar rooted forests: vertex-decorated forests (leaves in `X`, internal
//! vertices in `Ω`) and angularly decorated forests (one letter of `X` per
//! angle between adjacent siblings).
//!
//! Text grammars:
//!
//! ```text
//! forest  := tree+
//! tree    := IDENT | "(" (IDENT ":")? tree+ ")"
//! aforest := atree (IDENT atree)*
//! atree   := "*" | "<" aforest ">"
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Predicate, Result};
use crate::lincomb::Basis;
use crate::path::{MotzkinPath, Step};
use crate::symbol::{LetterOmega, LetterX};
use crate::word::{FlatSymbol, FlatWord};

/// Depth, breadth, leaf count and size of a forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForestMeasures {
    pub depth: usize,
    pub breadth: usize,
    pub leaf_count: usize,
    pub size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForestFlags {
    pub is_leaf_spaced: bool,
    pub is_ladder_free: bool,
}

// ---------------------------------------------------------------------------
// Vertex-decorated forests

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum DecoratedTree {
    Leaf(LetterX),
    /// An internal vertex; its children form a non-empty forest.
    Node(LetterOmega, DecoratedForest),
}

/// A non-empty sequence of decorated trees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecoratedForest {
    trees: Vec<DecoratedTree>,
}

impl DecoratedTree {
    pub fn leaf(x: LetterX) -> Self {
        DecoratedTree::Leaf(x)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, DecoratedTree::Leaf(_))
    }

    fn depth(&self) -> usize {
        match self {
            DecoratedTree::Leaf(_) => 0,
            DecoratedTree::Node(_, f) => 1 + f.depth(),
        }
    }

    fn leaf_count(&self) -> usize {
        match self {
            DecoratedTree::Leaf(_) => 1,
            DecoratedTree::Node(_, f) => f.leaf_count(),
        }
    }

    fn size(&self) -> usize {
        match self {
            DecoratedTree::Leaf(_) => 1,
            DecoratedTree::Node(_, f) => 2 + f.size(),
        }
    }

    pub fn vertex_biorder(&self) -> FlatWord {
        let mut out = Vec::new();
        self.biorder_into(&mut out);
        FlatWord::new(out).expect("biorder of a tree is balanced")
    }

    fn biorder_into(&self, out: &mut Vec<FlatSymbol>) {
        match self {
            DecoratedTree::Leaf(x) => out.push(FlatSymbol::Letter(x.clone())),
            DecoratedTree::Node(w, f) => {
                out.push(FlatSymbol::Open(w.clone()));
                for t in &f.trees {
                    t.biorder_into(out);
                }
                out.push(FlatSymbol::Close(w.clone()));
            }
        }
    }

    pub fn into_forest(self) -> DecoratedForest {
        DecoratedForest { trees: vec![self] }
    }
}

impl DecoratedForest {
    pub fn new(trees: Vec<DecoratedTree>) -> Result<Self> {
        if trees.is_empty() {
            return Err(Error::UnitInNonunitary);
        }
        Ok(DecoratedForest { trees })
    }

    pub fn leaf(x: LetterX) -> Self {
        DecoratedTree::Leaf(x).into_forest()
    }

    pub fn trees(&self) -> &[DecoratedTree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<DecoratedTree> {
        self.trees
    }

    pub fn concat(&self, other: &DecoratedForest) -> DecoratedForest {
        let mut trees = self.trees.clone();
        trees.extend_from_slice(&other.trees);
        DecoratedForest { trees }
    }

    /// A new root decorated by `omega` above all trees.
    pub fn graft(&self, omega: &LetterOmega) -> DecoratedTree {
        DecoratedTree::Node(omega.clone(), self.clone())
    }

    fn depth(&self) -> usize {
        self.trees.iter().map(DecoratedTree::depth).max().unwrap_or(0)
    }

    fn leaf_count(&self) -> usize {
        self.trees.iter().map(DecoratedTree::leaf_count).sum()
    }

    /// Leaves plus twice the internal vertices.
    pub fn size(&self) -> usize {
        self.trees.iter().map(DecoratedTree::size).sum()
    }

    pub fn measures(&self) -> ForestMeasures {
        ForestMeasures {
            depth: self.depth(),
            breadth: self.trees.len(),
            leaf_count: self.leaf_count(),
            size: self.size(),
        }
    }

    /// Concatenation of the vertex biorder words of the trees.
    pub fn vertex_biorder(&self) -> FlatWord {
        let mut out = Vec::with_capacity(self.size());
        for t in &self.trees {
            t.biorder_into(&mut out);
        }
        FlatWord::new(out).expect("biorder of a forest is balanced")
    }

    /// No vertex, and not the top level, has two adjacent non-leaf children.
    pub fn is_leaf_spaced(&self) -> bool {
        self.trees
            .windows(2)
            .all(|w| w[0].is_leaf() || w[1].is_leaf())
            && self.trees.iter().all(|t| match t {
                DecoratedTree::Leaf(_) => true,
                DecoratedTree::Node(_, f) => f.is_leaf_spaced(),
            })
    }

    /// No internal vertex whose subtree has exactly one leaf.
    pub fn is_ladder_free(&self) -> bool {
        self.trees.iter().all(|t| match t {
            DecoratedTree::Leaf(_) => true,
            DecoratedTree::Node(_, f) => f.leaf_count() > 1 && f.is_ladder_free(),
        })
    }

    pub fn is_omega_singleton(&self) -> bool {
        self.trees.iter().all(|t| match t {
            DecoratedTree::Leaf(_) => true,
            DecoratedTree::Node(w, f) => w.is_default() && f.is_omega_singleton(),
        })
    }

    pub fn predicates(&self) -> ForestFlags {
        ForestFlags {
            is_leaf_spaced: self.is_leaf_spaced(),
            is_ladder_free: self.is_ladder_free(),
        }
    }

    /// Witnesses are positions in the vertex biorder word, which coincide
    /// with step indices of the path image.
    pub fn require(&self, predicate: Predicate) -> Result<()> {
        let ok = match predicate {
            Predicate::LeafSpaced => self.is_leaf_spaced(),
            Predicate::LadderFree => self.is_ladder_free(),
            Predicate::OmegaSingleton => self.is_omega_singleton(),
            _ => return Err(Error::not_in(predicate, None)),
        };
        if ok {
            return Ok(());
        }
        let mut pos = 0;
        let witness = self.find_witness(predicate, &mut pos);
        Err(Error::not_in(predicate, witness))
    }

    fn find_witness(&self, predicate: Predicate, pos: &mut usize) -> Option<usize> {
        let mut prev_node_close: Option<usize> = None;
        for t in &self.trees {
            match t {
                DecoratedTree::Leaf(_) => {
                    prev_node_close = None;
                    *pos += 1;
                }
                DecoratedTree::Node(w, f) => {
                    if predicate == Predicate::LeafSpaced {
                        if let Some(c) = prev_node_close {
                            return Some(c);
                        }
                    }
                    let open = *pos;
                    let hit = match predicate {
                        Predicate::LadderFree => f.leaf_count() == 1,
                        Predicate::OmegaSingleton => !w.is_default(),
                        _ => false,
                    };
                    if hit {
                        return Some(open);
                    }
                    *pos += 1;
                    if let Some(found) = f.find_witness(predicate, pos) {
                        return Some(found);
                    }
                    prev_node_close = Some(*pos);
                    *pos += 1;
                }
            }
        }
        None
    }

    pub fn render(&self) -> String {
        let mut lines = Vec::new();
        for t in &self.trees {
            render_decorated(t, 0, &mut lines);
        }
        lines.join("\n")
    }
}

fn render_decorated(t: &DecoratedTree, depth: usize, lines: &mut Vec<String>) {
    let pad = "  ".repeat(depth);
    match t {
        DecoratedTree::Leaf(x) => lines.push(format!("{pad}• ({x})")),
        DecoratedTree::Node(w, f) => {
            lines.push(format!("{pad}o ({w})"));
            for c in &f.trees {
                render_decorated(c, depth + 1, lines);
            }
        }
    }
}

impl fmt::Display for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoratedTree::Leaf(x) => write!(f, "{x}"),
            DecoratedTree::Node(w, body) => {
                f.write_str("(")?;
                if !w.is_default() {
                    write!(f, "{w}: ")?;
                }
                write!(f, "{body})")
            }
        }
    }
}

impl fmt::Display for DecoratedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({self})")
    }
}

impl fmt::Debug for DecoratedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest({self})")
    }
}

impl Basis for DecoratedForest {
    const REPRESENTATION: &'static str = "vforest";

    fn canonical_steps(&self) -> Vec<Step> {
        self.vertex_biorder().to_steps()
    }
}

// ---------------------------------------------------------------------------
// Angularly decorated forests

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum AngularTree {
    Leaf,
    Graft(Box<AngularForest>),
}

/// A forest `T₁ x₁ T₂ … x_{b−1} T_b` stored in its standard decomposition.
/// The forest `(•;1)` is a single leaf with an empty tail.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AngularForest {
    pub head: AngularTree,
    pub tail: Vec<(LetterX, AngularTree)>,
}

/// Undecorated planar rooted tree; a vertex without children is a leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarTree {
    pub children: Vec<PlanarTree>,
}

impl PlanarTree {
    pub fn leaf() -> Self {
        PlanarTree { children: Vec::new() }
    }

    pub fn leaf_count(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(PlanarTree::leaf_count).sum()
        }
    }

    /// Open/close pairs for each edge below the root, in traversal order.
    fn edge_word(&self, out: &mut Vec<bool>) {
        for c in &self.children {
            out.push(true);
            c.edge_word(out);
            out.push(false);
        }
    }
}

impl AngularTree {
    pub fn is_leaf(&self) -> bool {
        matches!(self, AngularTree::Leaf)
    }

    pub fn into_forest(self) -> AngularForest {
        AngularForest {
            head: self,
            tail: Vec::new(),
        }
    }

    fn leaf_count(&self) -> usize {
        match self {
            AngularTree::Leaf => 1,
            AngularTree::Graft(f) => f.leaf_count(),
        }
    }

    fn depth(&self) -> usize {
        match self {
            AngularTree::Leaf => 0,
            AngularTree::Graft(f) => 1 + f.depth(),
        }
    }

    fn size(&self) -> usize {
        match self {
            AngularTree::Leaf => 0,
            AngularTree::Graft(f) => 2 + f.size(),
        }
    }

    fn shape(&self) -> PlanarTree {
        match self {
            AngularTree::Leaf => PlanarTree::leaf(),
            AngularTree::Graft(f) => PlanarTree {
                children: f.trees().map(AngularTree::shape).collect(),
            },
        }
    }

    /// Edge biorder with each angle replaced by its decoration.
    pub fn edge_biorder(&self) -> FlatWord {
        match self {
            AngularTree::Leaf => FlatWord::default(),
            AngularTree::Graft(f) => f.graft_edge_biorder(),
        }
    }
}

impl AngularForest {
    pub fn trivial() -> Self {
        AngularTree::Leaf.into_forest()
    }

    pub fn is_trivial(&self) -> bool {
        self.head.is_leaf() && self.tail.is_empty()
    }

    pub fn trees(&self) -> impl Iterator<Item = &AngularTree> {
        std::iter::once(&self.head).chain(self.tail.iter().map(|(_, t)| t))
    }

    pub fn letters(&self) -> impl Iterator<Item = &LetterX> {
        self.tail.iter().map(|(x, _)| x)
    }

    /// `⌊(F; x⃗)⌋ = (⌊F⌋; x⃗)`.
    pub fn graft(&self) -> AngularTree {
        AngularTree::Graft(Box::new(self.clone()))
    }

    pub fn leaf_count(&self) -> usize {
        self.trees().map(AngularTree::leaf_count).sum()
    }

    fn depth(&self) -> usize {
        self.trees().map(AngularTree::depth).max().unwrap_or(0)
    }

    /// Number of angles, `leaf_count − 1`.
    pub fn angle_count(&self) -> usize {
        self.leaf_count() - 1
    }

    /// Angles plus twice the internal vertices.
    pub fn size(&self) -> usize {
        self.tail.len() + self.trees().map(AngularTree::size).sum::<usize>()
    }

    pub fn measures(&self) -> ForestMeasures {
        ForestMeasures {
            depth: self.depth(),
            breadth: 1 + self.tail.len(),
            leaf_count: self.leaf_count(),
            size: self.size(),
        }
    }

    /// The alternating blocks `D₁, x₁, …, D_b`; each block is a leaf or a
    /// grafted tree.
    pub fn standard_decomposition(&self) -> (Vec<AngularTree>, Vec<LetterX>) {
        (
            self.trees().cloned().collect(),
            self.letters().cloned().collect(),
        )
    }

    pub fn from_decomposition(blocks: Vec<AngularTree>, letters: Vec<LetterX>) -> Result<Self> {
        if blocks.len() != letters.len() + 1 {
            return Err(Error::parse(0, "one more block than separators"));
        }
        let mut it = blocks.into_iter();
        let head = it.next().expect("non-empty");
        Ok(AngularForest {
            head,
            tail: letters.into_iter().zip(it).collect(),
        })
    }

    /// Splices `(A; a⃗)` and `(B; b⃗)` with a middle decoration: `A x B`.
    pub fn join(&self, x: LetterX, other: &AngularForest) -> AngularForest {
        let mut tail = self.tail.clone();
        tail.push((x, other.head.clone()));
        tail.extend_from_slice(&other.tail);
        AngularForest {
            head: self.head.clone(),
            tail,
        }
    }

    /// The `(F; x⃗)` form: undecorated tree shapes and the angle decorations
    /// in left-to-right order.
    pub fn to_parts(&self) -> (Vec<PlanarTree>, Vec<LetterX>) {
        let mut letters = Vec::with_capacity(self.size());
        self.collect_letters(&mut letters);
        (self.trees().map(AngularTree::shape).collect(), letters)
    }

    fn collect_letters(&self, out: &mut Vec<LetterX>) {
        self.head.collect_letters(out);
        for (x, t) in &self.tail {
            out.push(x.clone());
            t.collect_letters(out);
        }
    }

    /// Inverse of [`AngularForest::to_parts`]; needs exactly one letter per
    /// angle.
    pub fn from_parts(shapes: &[PlanarTree], letters: &[LetterX]) -> Result<Self> {
        let leaves: usize = shapes.iter().map(PlanarTree::leaf_count).sum();
        if shapes.is_empty() || letters.len() + 1 != leaves {
            return Err(Error::parse(0, "one decoration per angle"));
        }
        let mut it = letters.iter().cloned();
        Ok(Self::build_from_parts(shapes, &mut it))
    }

    fn build_from_parts(shapes: &[PlanarTree], letters: &mut impl Iterator<Item = LetterX>) -> Self {
        let head = AngularTree::build_from_shape(&shapes[0], letters);
        let tail = shapes[1..]
            .iter()
            .map(|s| {
                let x = letters.next().expect("letter count checked");
                (x, AngularTree::build_from_shape(s, letters))
            })
            .collect();
        AngularForest { head, tail }
    }

    /// Edge biorder of the graft of this forest, with angle substitution.
    fn graft_edge_biorder(&self) -> FlatWord {
        let (shapes, letters) = self.to_parts();
        let root = PlanarTree { children: shapes };
        let mut raw = Vec::new();
        root.edge_word(&mut raw);
        let d = LetterOmega::default_op();
        let mut letters = letters.into_iter();
        let mut out = Vec::with_capacity(raw.len());
        let mut i = 0;
        while i < raw.len() {
            if !raw[i] && raw.get(i + 1) == Some(&true) {
                out.push(FlatSymbol::Letter(letters.next().expect("one letter per angle")));
                i += 2;
            } else {
                out.push(if raw[i] {
                    FlatSymbol::Open(d.clone())
                } else {
                    FlatSymbol::Close(d.clone())
                });
                i += 1;
            }
        }
        debug_assert!(letters.next().is_none());
        FlatWord::new(out).expect("edge biorder is balanced")
    }

    /// Edge biorder of the forest: that of its graft with the outer pair
    /// removed. `(•;1)` gives the empty word.
    pub fn edge_biorder(&self) -> FlatWord {
        let full = self.graft_edge_biorder();
        let s = full.symbols();
        FlatWord::new(s[1..s.len() - 1].to_vec()).expect("inner word is balanced")
    }

    /// No vertex and not the top level has two adjacent non-leaf children.
    pub fn is_leaf_spaced(&self) -> bool {
        let trees: Vec<&AngularTree> = self.trees().collect();
        trees.windows(2).all(|w| w[0].is_leaf() || w[1].is_leaf())
            && trees.iter().all(|t| match t {
                AngularTree::Leaf => true,
                AngularTree::Graft(f) => f.is_leaf_spaced(),
            })
    }

    /// Not `(•;1)`, and no grafted subtree with exactly one leaf.
    pub fn is_ladder_free(&self) -> bool {
        !self.is_trivial() && self.has_no_ladder()
    }

    fn has_no_ladder(&self) -> bool {
        self.trees().all(|t| match t {
            AngularTree::Leaf => true,
            AngularTree::Graft(f) => f.leaf_count() > 1 && f.has_no_ladder(),
        })
    }

    pub fn predicates(&self) -> ForestFlags {
        ForestFlags {
            is_leaf_spaced: self.is_leaf_spaced(),
            is_ladder_free: self.is_ladder_free(),
        }
    }

    /// Witnesses are positions in the edge biorder word, which coincide with
    /// step indices of the path image.
    pub fn require(&self, predicate: Predicate) -> Result<()> {
        let ok = match predicate {
            Predicate::LeafSpaced => self.is_leaf_spaced(),
            Predicate::LadderFree => self.is_ladder_free(),
            Predicate::OmegaSingleton => true,
            _ => return Err(Error::not_in(predicate, None)),
        };
        if ok {
            return Ok(());
        }
        if self.is_trivial() {
            return Err(Error::not_in(predicate, None));
        }
        let mut pos = 0;
        let witness = self.find_witness(predicate, &mut pos);
        Err(Error::not_in(predicate, witness))
    }

    fn find_witness(&self, predicate: Predicate, pos: &mut usize) -> Option<usize> {
        let mut prev_graft_close: Option<usize> = None;
        for (i, t) in self.trees().enumerate() {
            if i > 0 {
                *pos += 1;
            }
            match t {
                AngularTree::Leaf => prev_graft_close = None,
                AngularTree::Graft(f) => {
                    if predicate == Predicate::LeafSpaced {
                        if let Some(c) = prev_graft_close {
                            return Some(c);
                        }
                    }
                    if predicate == Predicate::LadderFree && f.leaf_count() == 1 {
                        return Some(*pos);
                    }
                    *pos += 1;
                    if let Some(found) = f.find_witness(predicate, pos) {
                        return Some(found);
                    }
                    prev_graft_close = Some(*pos);
                    *pos += 1;
                }
            }
        }
        None
    }

    pub fn render(&self) -> String {
        let mut lines = Vec::new();
        render_angular(self, 0, &mut lines);
        lines.join("\n")
    }
}

impl AngularTree {
    fn collect_letters(&self, out: &mut Vec<LetterX>) {
        if let AngularTree::Graft(f) = self {
            f.collect_letters(out);
        }
    }

    fn build_from_shape(shape: &PlanarTree, letters: &mut impl Iterator<Item = LetterX>) -> Self {
        if shape.children.is_empty() {
            AngularTree::Leaf
        } else {
            AngularTree::Graft(Box::new(AngularForest::build_from_parts(&shape.children, letters)))
        }
    }
}

fn render_angular(f: &AngularForest, depth: usize, lines: &mut Vec<String>) {
    let pad = "  ".repeat(depth);
    let emit = |t: &AngularTree, lines: &mut Vec<String>| match t {
        AngularTree::Leaf => lines.push(format!("{pad}•")),
        AngularTree::Graft(inner) => {
            lines.push(format!("{pad}o"));
            render_angular(inner, depth + 1, lines);
        }
    };
    emit(&f.head, lines);
    for (x, t) in &f.tail {
        lines.push(format!("{pad}({x})"));
        emit(t, lines);
    }
}

impl fmt::Display for AngularTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngularTree::Leaf => f.write_str("*"),
            AngularTree::Graft(body) => write!(f, "<{body}>"),
        }
    }
}

impl fmt::Display for AngularForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        for (x, t) in &self.tail {
            write!(f, " {x} {t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AngularTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ATree({self})")
    }
}

impl fmt::Debug for AngularForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AForest({self})")
    }
}

impl Basis for AngularForest {
    const REPRESENTATION: &'static str = "aforest";

    fn canonical_steps(&self) -> Vec<Step> {
        self.edge_biorder().to_steps()
    }
}

impl AngularForest {
    /// The valley-free path with the same edge biorder word.
    pub fn edge_path(&self) -> MotzkinPath {
        self.edge_biorder().to_path()
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Lt,
    Gt,
    Star,
    Colon,
    Ident(String),
}

fn tokenize(text: &str, angular: bool) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' if !angular => Some(Tok::LParen),
            b')' if !angular => Some(Tok::RParen),
            b':' if !angular => Some(Tok::Colon),
            b'<' if angular => Some(Tok::Lt),
            b'>' if angular => Some(Tok::Gt),
            b'*' if angular => Some(Tok::Star),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((i, tok));
            i += 1;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else {
            let expected = if angular {
                "`*`, `<`, `>` or an identifier"
            } else {
                "`(`, `)` or an identifier"
            };
            return Err(Error::parse(i, expected));
        }
    }
    Ok(out)
}

struct Cursor {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn finish(&self) -> Result<()> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some((p, _)) => Err(Error::parse(*p, "end of input")),
        }
    }

    fn decorated_trees(&mut self) -> Result<Vec<DecoratedTree>> {
        let mut trees = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(name)) => {
                    let x = LetterX::of(name);
                    self.pos += 1;
                    trees.push(DecoratedTree::Leaf(x));
                }
                Some(Tok::LParen) => {
                    let open_at = self.offset();
                    self.pos += 1;
                    let mut omega = LetterOmega::default_op();
                    if let (Some((_, Tok::Ident(name))), Some((_, Tok::Colon))) =
                        (self.tokens.get(self.pos), self.tokens.get(self.pos + 1))
                    {
                        omega = LetterOmega::of(name);
                        self.pos += 2;
                    }
                    let children = self.decorated_trees()?;
                    match self.peek() {
                        Some(Tok::RParen) => self.pos += 1,
                        None => return Err(Error::UnbalancedBrackets { position: open_at }),
                        Some(_) => return Err(Error::parse(self.offset(), "`)`")),
                    }
                    if children.is_empty() {
                        return Err(Error::parse(self.offset() - 1, "a tree"));
                    }
                    trees.push(DecoratedTree::Node(omega, DecoratedForest { trees: children }));
                }
                _ => return Ok(trees),
            }
        }
    }

    fn atree(&mut self) -> Result<AngularTree> {
        match self.peek() {
            Some(Tok::Star) => {
                self.pos += 1;
                Ok(AngularTree::Leaf)
            }
            Some(Tok::Lt) => {
                let open_at = self.offset();
                self.pos += 1;
                let body = self.aforest()?;
                match self.peek() {
                    Some(Tok::Gt) => {
                        self.pos += 1;
                        Ok(AngularTree::Graft(Box::new(body)))
                    }
                    None => Err(Error::UnbalancedBrackets { position: open_at }),
                    Some(_) => Err(Error::parse(self.offset(), "`>` or an identifier")),
                }
            }
            None if self.pos > 0 && matches!(self.tokens.last(), Some((_, Tok::Lt))) => {
                Err(Error::UnbalancedBrackets {
                    position: self.tokens[self.pos - 1].0,
                })
            }
            _ => Err(Error::parse(self.offset(), "`*` or `<`")),
        }
    }

    fn aforest(&mut self) -> Result<AngularForest> {
        let head = self.atree()?;
        let mut tail = Vec::new();
        while let Some(Tok::Ident(name)) = self.peek() {
            let x = LetterX::of(name);
            self.pos += 1;
            tail.push((x, self.atree()?));
        }
        Ok(AngularForest { head, tail })
    }
}

impl FromStr for DecoratedForest {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut c = Cursor {
            tokens: tokenize(text, false)?,
            pos: 0,
            end: text.len(),
        };
        let trees = c.decorated_trees()?;
        if trees.is_empty() {
            return Err(Error::parse(c.offset(), "a tree"));
        }
        c.finish()?;
        Ok(DecoratedForest { trees })
    }
}

impl FromStr for AngularForest {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut c = Cursor {
            tokens: tokenize(text, true)?,
            pos: 0,
            end: text.len(),
        };
        let f = c.aforest()?;
        c.finish()?;
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vf(s: &str) -> DecoratedForest {
        s.parse().unwrap()
    }

    fn af(s: &str) -> AngularForest {
        s.parse().unwrap()
    }

    fn flat_text(f: &FlatWord) -> String {
        f.symbols()
            .iter()
            .map(|s| match s {
                FlatSymbol::Letter(x) => x.to_string(),
                FlatSymbol::Open(w) => format!("⌊{w}"),
                FlatSymbol::Close(w) => format!("{w}⌋"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    #[test]
    fn concat_and_graft() {
        let xy = vf("x").concat(&vf("y"));
        assert_eq!(xy.to_string(), "x y");
        assert_ne!(xy, vf("y x"));
        assert_eq!(xy.measures().breadth, 2);
        let t = xy.graft(&LetterOmega::of("w"));
        assert_eq!(t.to_string(), "(w: x y)");
        assert_eq!(t.into_forest().measures().depth, 1);
    }

    #[test]
    fn measures() {
        assert_eq!(
            vf("x").measures(),
            ForestMeasures { depth: 0, breadth: 1, leaf_count: 1, size: 1 }
        );
        assert_eq!(vf("(x y)").measures().size, 4);
        assert_eq!(vf("(x y)").measures().leaf_count, 2);
        let a = af("<* x *>");
        assert_eq!(a.measures().size, 3);
        assert_eq!(a.measures().depth, 1);
        assert_eq!(a.measures().leaf_count, 2);
        assert_eq!(AngularForest::trivial().size(), 0);
    }

    #[test]
    fn vertex_biorder_of_large_tree() {
        let t = vf("(alpha: (beta: a (gamma: b c) d) e (delta: f (sigma: g) (tau: h)))");
        assert_eq!(
            flat_text(&t.vertex_biorder()),
            "⌊alpha ⌊beta a ⌊gamma b c gamma⌋ d beta⌋ e ⌊delta f ⌊sigma g sigma⌋ ⌊tau h tau⌋ delta⌋ alpha⌋"
        );
        assert_eq!(flat_text(&vf("x").vertex_biorder()), "x");
        assert_eq!(flat_text(&vf("(w: x)").vertex_biorder()), "⌊w x w⌋");
    }

    #[test]
    fn edge_biorder_examples() {
        let t = af("<<* a <* b * c *> d *> e <<* f *> g <* h *>>>");
        assert_eq!(t.leaf_count(), 9);
        assert_eq!(
            flat_text(&t.head.edge_biorder()),
            "⌊_ ⌊_ a ⌊_ b c _⌋ d _⌋ e ⌊_ ⌊_ f _⌋ g ⌊_ h _⌋ _⌋ _⌋"
        );
        assert!(AngularTree::Leaf.edge_biorder().is_empty());
        assert_eq!(flat_text(&af("<* x *>").head.edge_biorder()), "⌊_ x _⌋");
    }

    #[test]
    fn predicates() {
        let not_spaced = vf("(a (b c) (d e))");
        assert!(!not_spaced.is_leaf_spaced());
        assert!(!vf("(x) (y)").is_leaf_spaced());
        assert!(vf("(x) y (z)").is_leaf_spaced());
        assert!(!af("<* x <*>>").is_ladder_free());
        assert!(af("<* x *>").is_ladder_free());
        assert!(!AngularForest::trivial().is_ladder_free());
        assert!(af("* x <* y *>").is_ladder_free());
        assert_eq!(
            vf("x (y) (z)").require(Predicate::LeafSpaced),
            Err(Error::not_in(Predicate::LeafSpaced, Some(3)))
        );
        assert_eq!(
            af("* x <*>").require(Predicate::LadderFree),
            Err(Error::not_in(Predicate::LadderFree, Some(1)))
        );
    }

    #[test]
    fn standard_decomposition() {
        let (blocks, seps) = AngularForest::trivial().standard_decomposition();
        assert_eq!(blocks, vec![AngularTree::Leaf]);
        assert!(seps.is_empty());
        let f = af("* v <* x *> w <* y *>");
        let (blocks, seps) = f.standard_decomposition();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[0], AngularTree::Leaf);
        assert_eq!(blocks[1].to_string(), "<* x *>");
        assert_eq!(seps, vec![LetterX::of("v"), LetterX::of("w")]);
        assert_eq!(AngularForest::from_decomposition(blocks, seps).unwrap(), f);
        let (blocks, _) = af("* x *").standard_decomposition();
        assert_eq!(blocks, vec![AngularTree::Leaf, AngularTree::Leaf]);
    }

    #[test]
    fn parts_round_trip() {
        let f = af("<* a <* b *> c *> e <<* f *> g *>");
        let (shapes, letters) = f.to_parts();
        assert_eq!(letters.len(), f.angle_count());
        assert_eq!(AngularForest::from_parts(&shapes, &letters).unwrap(), f);
    }

    #[test]
    fn parsing() {
        assert_eq!(vf("(a: x y) z").to_string(), "(a: x y) z");
        assert_eq!(vf("(x (y))").to_string(), "(x (y))");
        assert!(matches!("()".parse::<DecoratedForest>(), Err(Error::Parse { .. })));
        assert!(matches!("".parse::<DecoratedForest>(), Err(Error::Parse { .. })));
        assert_eq!("(x".parse::<DecoratedForest>(), Err(Error::UnbalancedBrackets { position: 0 }));
        assert_eq!(af("<* x <*>>").to_string(), "<* x <*>>");
        assert_eq!(af("<<* x *>>").to_string(), "<<* x *>>");
        assert!(matches!("* x".parse::<AngularForest>(), Err(Error::Parse { .. })));
        assert!(matches!("<*".parse::<AngularForest>(), Err(Error::UnbalancedBrackets { .. })));
        assert!(matches!("* *".parse::<AngularForest>(), Err(Error::Parse { position: 2, .. })));
    }
}
