//! Bracketed words over `X` with `Ω`-decorated brackets, and their flat
//! (Motzkin word) form.
//!
//! Text grammar:
//!
//! ```text
//! word := "1" | atom+
//! atom := IDENT | "[" (IDENT ":")? word? "]"
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Predicate, Result};
use crate::path::{validate_steps, MotzkinPath, Step};
use crate::symbol::{is_identifier, LetterOmega, LetterX};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum WordAtom {
    Letter(LetterX),
    Bracket(LetterOmega, BracketedWord),
}

/// A unitary bracketed word; the empty atom sequence is the unit `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BracketedWord {
    atoms: Vec<WordAtom>,
}

impl BracketedWord {
    pub fn unit() -> Self {
        BracketedWord { atoms: Vec::new() }
    }

    pub fn letter(x: LetterX) -> Self {
        BracketedWord {
            atoms: vec![WordAtom::Letter(x)],
        }
    }

    pub fn from_atoms(atoms: Vec<WordAtom>) -> Self {
        BracketedWord { atoms }
    }

    pub fn atoms(&self) -> &[WordAtom] {
        &self.atoms
    }

    pub fn into_atoms(self) -> Vec<WordAtom> {
        self.atoms
    }

    pub fn is_unit(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn concat(&self, other: &BracketedWord) -> BracketedWord {
        let mut atoms = Vec::with_capacity(self.atoms.len() + other.atoms.len());
        atoms.extend_from_slice(&self.atoms);
        atoms.extend_from_slice(&other.atoms);
        BracketedWord { atoms }
    }

    /// `⌊w⌋_ω` as a single atom.
    pub fn bracket(&self, omega: &LetterOmega) -> BracketedWord {
        BracketedWord {
            atoms: vec![WordAtom::Bracket(omega.clone(), self.clone())],
        }
    }

    /// Letters plus twice the number of brackets.
    pub fn size(&self) -> usize {
        self.atoms
            .iter()
            .map(|a| match a {
                WordAtom::Letter(_) => 1,
                WordAtom::Bracket(_, body) => 2 + body.size(),
            })
            .sum()
    }

    pub fn flatten(&self) -> FlatWord {
        let mut out = Vec::with_capacity(self.size());
        self.flatten_into(&mut out);
        FlatWord { symbols: out }
    }

    fn flatten_into(&self, out: &mut Vec<FlatSymbol>) {
        for atom in &self.atoms {
            match atom {
                WordAtom::Letter(x) => out.push(FlatSymbol::Letter(x.clone())),
                WordAtom::Bracket(w, body) => {
                    out.push(FlatSymbol::Open(w.clone()));
                    body.flatten_into(out);
                    out.push(FlatSymbol::Close(w.clone()));
                }
            }
        }
    }

    /// Member of the nonunitary words `𝔖`: not the unit, and no bracket
    /// encloses the unit.
    pub fn is_nonunitary(&self) -> bool {
        !self.is_unit()
            && self.atoms.iter().all(|a| match a {
                WordAtom::Letter(_) => true,
                WordAtom::Bracket(_, body) => body.is_nonunitary(),
            })
    }

    /// Member of the Rota–Baxter words `ℜ`: no two adjacent bracket atoms
    /// at any depth.
    pub fn is_rota_baxter(&self) -> bool {
        self.atoms
            .windows(2)
            .all(|w| !matches!(w, [WordAtom::Bracket(..), WordAtom::Bracket(..)]))
            && self.atoms.iter().all(|a| match a {
                WordAtom::Letter(_) => true,
                WordAtom::Bracket(_, body) => body.is_rota_baxter(),
            })
    }

    pub fn is_omega_singleton(&self) -> bool {
        self.atoms.iter().all(|a| match a {
            WordAtom::Letter(_) => true,
            WordAtom::Bracket(w, body) => w.is_default() && body.is_omega_singleton(),
        })
    }

    pub fn predicates(&self) -> WordFlags {
        WordFlags {
            in_s: self.is_nonunitary(),
            in_r: self.is_rota_baxter(),
        }
    }

    /// Witness positions refer to the flat form.
    pub fn require(&self, predicate: Predicate) -> Result<()> {
        let ok = match predicate {
            Predicate::RotaBaxterWord => self.is_rota_baxter(),
            Predicate::Nonunitary => self.is_nonunitary(),
            Predicate::OmegaSingleton => self.is_omega_singleton(),
            _ => return Err(Error::not_in(predicate, None)),
        };
        if ok {
            return Ok(());
        }
        let flat = self.flatten();
        let s = flat.symbols();
        let witness = match predicate {
            Predicate::RotaBaxterWord => s
                .windows(2)
                .position(|w| matches!(w, [FlatSymbol::Close(_), FlatSymbol::Open(_)])),
            Predicate::Nonunitary => s
                .windows(2)
                .position(|w| matches!(w, [FlatSymbol::Open(_), FlatSymbol::Close(_)])),
            _ => s.iter().position(
                |f| matches!(f, FlatSymbol::Open(w) | FlatSymbol::Close(w) if !w.is_default()),
            ),
        };
        Err(Error::not_in(predicate, witness))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordFlags {
    pub in_s: bool,
    pub in_r: bool,
}

impl fmt::Display for BracketedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        self.write_atoms(f)
    }
}

impl BracketedWord {
    fn write_atoms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match atom {
                WordAtom::Letter(x) => write!(f, "{x}")?,
                WordAtom::Bracket(w, body) => {
                    f.write_str("[")?;
                    if !w.is_default() {
                        write!(f, "{w}:")?;
                        if !body.is_unit() {
                            f.write_str(" ")?;
                        }
                    }
                    body.write_atoms(f)?;
                    f.write_str("]")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BracketedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Colon,
    One,
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'[' => {
                out.push((i, Token::Open));
                i += 1;
            }
            b']' => {
                out.push((i, Token::Close));
                i += 1;
            }
            b':' => {
                out.push((i, Token::Colon));
                i += 1;
            }
            b'1' if !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') => {
                out.push((i, Token::One));
                i += 1;
            }
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
            }
            _ => return Err(Error::parse(i, "`[`, `]`, `1` or an identifier")),
        }
    }
    Ok(out)
}

struct WordParser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl WordParser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    /// `"1" | atom*`; `allow_empty` is set inside brackets.
    fn word(&mut self, allow_empty: bool) -> Result<BracketedWord> {
        if self.peek() == Some(&Token::One) {
            self.pos += 1;
            return Ok(BracketedWord::unit());
        }
        let mut atoms = Vec::new();
        loop {
            match self.peek() {
                Some(Token::Ident(_)) => {
                    let Some((_, Token::Ident(name))) = self.tokens.get(self.pos) else {
                        unreachable!()
                    };
                    atoms.push(WordAtom::Letter(LetterX::of(name)));
                    self.pos += 1;
                }
                Some(Token::Open) => atoms.push(self.bracket()?),
                _ => break,
            }
        }
        if atoms.is_empty() && !allow_empty {
            return Err(Error::parse(self.offset(), "a word"));
        }
        Ok(BracketedWord { atoms })
    }

    fn bracket(&mut self) -> Result<WordAtom> {
        let open_at = self.offset();
        self.pos += 1;
        let mut omega = LetterOmega::default_op();
        if let (Some((_, Token::Ident(name))), Some((_, Token::Colon))) =
            (self.tokens.get(self.pos), self.tokens.get(self.pos + 1))
        {
            omega = LetterOmega::of(name);
            self.pos += 2;
        }
        let body = self.word(true)?;
        match self.peek() {
            Some(Token::Close) => {
                self.pos += 1;
                Ok(WordAtom::Bracket(omega, body))
            }
            None => Err(Error::UnbalancedBrackets { position: open_at }),
            Some(_) => Err(Error::parse(self.offset(), "`]`")),
        }
    }
}

impl FromStr for BracketedWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut parser = WordParser {
            tokens,
            pos: 0,
            end: text.len(),
        };
        let word = parser.word(false)?;
        if let Some((p, tok)) = parser.tokens.get(parser.pos) {
            return Err(match tok {
                Token::Close => Error::parse(*p, "a letter or `[`"),
                _ => Error::parse(*p, "end of input"),
            });
        }
        Ok(word)
    }
}

/// One symbol of a flat Motzkin word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FlatSymbol {
    Letter(LetterX),
    Open(LetterOmega),
    Close(LetterOmega),
}

impl FlatSymbol {
    pub fn to_step(&self) -> Step {
        match self {
            FlatSymbol::Letter(x) => Step::Level(x.clone()),
            FlatSymbol::Open(w) => Step::Up(w.clone()),
            FlatSymbol::Close(w) => Step::Down(w.clone()),
        }
    }

    pub fn from_step(step: &Step) -> Self {
        match step {
            Step::Level(x) => FlatSymbol::Letter(x.clone()),
            Step::Up(w) => FlatSymbol::Open(w.clone()),
            Step::Down(w) => FlatSymbol::Close(w.clone()),
        }
    }
}

impl fmt::Debug for FlatSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlatSymbol::Letter(x) => write!(f, "{x}"),
            FlatSymbol::Open(w) => write!(f, "⌊{w}"),
            FlatSymbol::Close(w) => write!(f, "⌋{w}"),
        }
    }
}

/// A decorated Motzkin word: balanced, prefix-nonnegative, and every
/// opening bracket decorated like its conjugate.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FlatWord {
    symbols: Vec<FlatSymbol>,
}

impl FlatWord {
    pub fn new(symbols: Vec<FlatSymbol>) -> Result<Self> {
        let steps: Vec<Step> = symbols.iter().map(FlatSymbol::to_step).collect();
        validate_steps(&steps)?;
        Ok(FlatWord { symbols })
    }

    pub fn symbols(&self) -> &[FlatSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn concat(&self, other: &FlatWord) -> FlatWord {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        FlatWord { symbols }
    }

    pub fn to_steps(&self) -> Vec<Step> {
        self.symbols.iter().map(FlatSymbol::to_step).collect()
    }

    pub fn to_path(&self) -> MotzkinPath {
        MotzkinPath::from_steps_unchecked(self.to_steps())
    }

    pub fn from_path(p: &MotzkinPath) -> Self {
        FlatWord {
            symbols: p.steps().iter().map(FlatSymbol::from_step).collect(),
        }
    }

    /// Index of the closing bracket conjugate to the opening bracket at `i`.
    pub fn conjugate_index(&self, i: usize) -> Result<usize> {
        if !matches!(self.symbols.get(i), Some(FlatSymbol::Open(_))) {
            return Err(Error::NotAnOpen { index: i });
        }
        let mut depth = 0usize;
        for (j, s) in self.symbols.iter().enumerate().skip(i) {
            match s {
                FlatSymbol::Open(_) => depth += 1,
                FlatSymbol::Close(_) => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(j);
                    }
                }
                FlatSymbol::Letter(_) => {}
            }
        }
        unreachable!("validated flat words are balanced")
    }

    /// Inverse of [`BracketedWord::flatten`], by stack parsing.
    pub fn to_bracketed(&self) -> BracketedWord {
        let mut stack: Vec<(LetterOmega, Vec<WordAtom>)> = Vec::new();
        let mut current: Vec<WordAtom> = Vec::new();
        for s in &self.symbols {
            match s {
                FlatSymbol::Letter(x) => current.push(WordAtom::Letter(x.clone())),
                FlatSymbol::Open(w) => stack.push((w.clone(), std::mem::take(&mut current))),
                FlatSymbol::Close(_) => {
                    let (w, outer) = stack.pop().expect("balanced");
                    let body = BracketedWord {
                        atoms: std::mem::replace(&mut current, outer),
                    };
                    current.push(WordAtom::Bracket(w, body));
                }
            }
        }
        BracketedWord { atoms: current }
    }
}

impl From<&BracketedWord> for FlatWord {
    fn from(w: &BracketedWord) -> Self {
        w.flatten()
    }
}

/// True for a valid identifier that could name a letter; `1` is reserved.
pub fn is_letter_token(s: &str) -> bool {
    is_identifier(s)
}
