//! `(X, Ω)`-decorated Motzkin paths.
//!
//! Level steps carry a letter of `X`; each matching up/down pair carries an
//! operator of `Ω`. Both steps of a pair store the decoration and
//! construction checks that they agree.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Predicate, Result};
use crate::symbol::{LetterOmega, LetterX};

/// The derived order `Up < Down < Level`, then by decoration, is the step
/// order used for canonical sorting.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up(LetterOmega),
    Down(LetterOmega),
    Level(LetterX),
}

impl Step {
    pub fn up() -> Self {
        Step::Up(LetterOmega::default_op())
    }

    pub fn down() -> Self {
        Step::Down(LetterOmega::default_op())
    }

    pub fn level(x: &str) -> Self {
        Step::Level(LetterX::of(x))
    }

    fn delta(&self) -> i64 {
        match self {
            Step::Up(_) => 1,
            Step::Down(_) => -1,
            Step::Level(_) => 0,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Up(w) if w.is_default() => f.write_str("U"),
            Step::Down(w) if w.is_default() => f.write_str("D"),
            Step::Up(w) => write!(f, "U:{w}"),
            Step::Down(w) => write!(f, "D:{w}"),
            Step::Level(x) => write!(f, "L:{x}"),
        }
    }
}

impl fmt::Debug for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Compares two step sequences in canonical order: shorter first, then
/// lexicographically by step.
pub fn canonical_cmp(a: &[Step], b: &[Step]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Checks prefix, balance and decoration conditions; returns the matching
/// pairs on success.
pub(crate) fn validate_steps(steps: &[Step]) -> Result<Vec<(usize, usize)>> {
    let mut open: Vec<(usize, &LetterOmega)> = Vec::new();
    let mut pairs = Vec::with_capacity(steps.len() / 2);
    for (i, step) in steps.iter().enumerate() {
        match step {
            Step::Up(w) => open.push((i, w)),
            Step::Down(w) => {
                let (j, wu) = open.pop().ok_or(Error::NegativePrefix { index: i })?;
                if wu != w {
                    return Err(Error::DecorationMismatch { open: j, close: i });
                }
                pairs.push((j, i));
            }
            Step::Level(_) => {}
        }
    }
    if !open.is_empty() {
        return Err(Error::Unbalanced { excess: open.len() });
    }
    pairs.sort_unstable();
    Ok(pairs)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MotzkinPath {
    steps: Vec<Step>,
}

/// Class flags and height of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathClass {
    pub is_peak_free: bool,
    pub is_valley_free: bool,
    pub is_dyck: bool,
    pub is_indecomposable: bool,
    pub height: usize,
}

/// Alternating blocks and ground-level separators of a valley-free path.
/// `blocks.len() == separators.len() + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub blocks: Vec<MotzkinPath>,
    pub separators: Vec<LetterX>,
}

impl PathDecomposition {
    pub fn reassemble(&self) -> MotzkinPath {
        let mut steps = self.blocks[0].steps.clone();
        for (x, block) in self.separators.iter().zip(&self.blocks[1..]) {
            steps.push(Step::Level(x.clone()));
            steps.extend_from_slice(&block.steps);
        }
        MotzkinPath { steps }
    }
}

impl MotzkinPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        validate_steps(&steps)?;
        Ok(MotzkinPath { steps })
    }

    /// Caller guarantees validity.
    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(validate_steps(&steps).is_ok());
        MotzkinPath { steps }
    }

    /// The trivial path `•`.
    pub fn trivial() -> Self {
        MotzkinPath { steps: Vec::new() }
    }

    pub fn level(x: LetterX) -> Self {
        MotzkinPath {
            steps: vec![Step::Level(x)],
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.steps.is_empty()
    }

    /// Link product: concatenation of step sequences.
    pub fn link(&self, other: &MotzkinPath) -> MotzkinPath {
        let mut steps = Vec::with_capacity(self.len() + other.len());
        steps.extend_from_slice(&self.steps);
        steps.extend_from_slice(&other.steps);
        MotzkinPath { steps }
    }

    /// Raising operator `⌊p⌋_ω`.
    pub fn raise(&self, omega: &LetterOmega) -> MotzkinPath {
        let mut steps = Vec::with_capacity(self.len() + 2);
        steps.push(Step::Up(omega.clone()));
        steps.extend_from_slice(&self.steps);
        steps.push(Step::Down(omega.clone()));
        MotzkinPath { steps }
    }

    pub fn height(&self) -> usize {
        let mut h = 0i64;
        let mut max = 0i64;
        for s in &self.steps {
            h += s.delta();
            max = max.max(h);
        }
        max as usize
    }

    /// Index of the first up step immediately followed by a down step.
    pub fn first_peak(&self) -> Option<usize> {
        self.steps
            .windows(2)
            .position(|w| matches!(w, [Step::Up(_), Step::Down(_)]))
    }

    /// Index of the first down step immediately followed by an up step.
    pub fn first_valley(&self) -> Option<usize> {
        self.steps
            .windows(2)
            .position(|w| matches!(w, [Step::Down(_), Step::Up(_)]))
    }

    pub fn is_peak_free(&self) -> bool {
        !self.is_trivial() && self.first_peak().is_none()
    }

    pub fn is_valley_free(&self) -> bool {
        self.first_valley().is_none()
    }

    pub fn is_dyck(&self) -> bool {
        !self.steps.iter().any(|s| matches!(s, Step::Level(_)))
    }

    pub fn is_indecomposable(&self) -> bool {
        if self.is_trivial() {
            return false;
        }
        let mut h = 0i64;
        for s in &self.steps[..self.len() - 1] {
            h += s.delta();
            if h == 0 {
                return false;
            }
        }
        true
    }

    pub fn is_omega_singleton(&self) -> bool {
        self.steps.iter().all(|s| match s {
            Step::Up(w) | Step::Down(w) => w.is_default(),
            Step::Level(_) => true,
        })
    }

    pub fn measures(&self) -> PathClass {
        PathClass {
            is_peak_free: self.is_peak_free(),
            is_valley_free: self.is_valley_free(),
            is_dyck: self.is_dyck(),
            is_indecomposable: self.is_indecomposable(),
            height: self.height(),
        }
    }

    /// Checks a class predicate, reporting the first offending step.
    pub fn require(&self, predicate: Predicate) -> Result<()> {
        let witness = match predicate {
            Predicate::PeakFree if self.is_trivial() => Some(None),
            Predicate::PeakFree => self.first_peak().map(Some),
            Predicate::ValleyFree => self.first_valley().map(Some),
            Predicate::Dyck => self
                .steps
                .iter()
                .position(|s| matches!(s, Step::Level(_)))
                .map(Some),
            Predicate::OmegaSingleton => self
                .steps
                .iter()
                .position(|s| matches!(s, Step::Up(w) | Step::Down(w) if !w.is_default()))
                .map(Some),
            _ => Some(None),
        };
        match witness {
            None => Ok(()),
            Some(w) => Err(Error::not_in(predicate, w)),
        }
    }

    /// Stack pairing of up and down steps, sorted by up index.
    pub fn matching_pairs(&self) -> Vec<(usize, usize)> {
        validate_steps(&self.steps).expect("valid path")
    }

    /// The unique factorisation into indecomposable paths.
    pub fn factors(&self) -> Vec<MotzkinPath> {
        let mut out = Vec::new();
        let mut h = 0i64;
        let mut start = 0;
        for (i, s) in self.steps.iter().enumerate() {
            h += s.delta();
            if h == 0 {
                out.push(MotzkinPath {
                    steps: self.steps[start..=i].to_vec(),
                });
                start = i + 1;
            }
        }
        out
    }

    /// For an indecomposable path of height ≥ 1, the operator and the path
    /// inside the outer pair.
    pub fn unraise(&self) -> Option<(LetterOmega, MotzkinPath)> {
        if !self.is_indecomposable() {
            return None;
        }
        match (self.steps.first(), self.steps.last()) {
            (Some(Step::Up(w)), Some(Step::Down(_))) => Some((
                w.clone(),
                MotzkinPath {
                    steps: self.steps[1..self.len() - 1].to_vec(),
                },
            )),
            _ => None,
        }
    }

    /// Splits a valley-free path at its ground-level level steps.
    pub fn standard_decomposition(&self) -> Result<PathDecomposition> {
        self.require(Predicate::ValleyFree)?;
        let mut blocks = Vec::new();
        let mut separators = Vec::new();
        let mut h = 0i64;
        let mut current: Vec<Step> = Vec::new();
        for s in &self.steps {
            if h == 0 {
                if let Step::Level(x) = s {
                    blocks.push(MotzkinPath {
                        steps: std::mem::take(&mut current),
                    });
                    separators.push(x.clone());
                    continue;
                }
            }
            h += s.delta();
            current.push(s.clone());
        }
        blocks.push(MotzkinPath { steps: current });
        Ok(PathDecomposition { blocks, separators })
    }

    /// Letters on level steps, left to right.
    pub fn letters(&self) -> impl Iterator<Item = &LetterX> {
        self.steps.iter().filter_map(|s| match s {
            Step::Level(x) => Some(x),
            _ => None,
        })
    }

    /// ASCII picture: one row per height level, then a row of decorations.
    pub fn render(&self) -> String {
        if self.is_trivial() {
            return "•".to_string();
        }
        let rows = self.height().max(1);
        let labels: Vec<String> = self
            .steps
            .iter()
            .map(|s| match s {
                Step::Level(x) => x.to_string(),
                Step::Up(w) | Step::Down(w) if !w.is_default() => w.to_string(),
                _ => String::new(),
            })
            .collect();
        let widths: Vec<usize> = labels.iter().map(|l| l.chars().count().max(1)).collect();
        let mut grid: Vec<String> = vec![String::new(); rows];
        let mut h = 0usize;
        for (i, s) in self.steps.iter().enumerate() {
            let w = widths[i];
            let (row, glyph) = match s {
                Step::Up(_) => {
                    h += 1;
                    (h - 1, format!("/{}", " ".repeat(w - 1)))
                }
                Step::Down(_) => {
                    h -= 1;
                    (h, format!("\\{}", " ".repeat(w - 1)))
                }
                Step::Level(_) if h == 0 => (0, "_".repeat(w)),
                Step::Level(_) => (h - 1, "‾".repeat(w)),
            };
            for (r, line) in grid.iter_mut().enumerate() {
                if r == row {
                    line.push_str(&glyph);
                } else {
                    line.push_str(&" ".repeat(w));
                }
            }
        }
        let mut label_line = String::new();
        for (l, w) in labels.iter().zip(&widths) {
            label_line.push_str(l);
            label_line.push_str(&" ".repeat(w - l.chars().count()));
        }
        let mut out: Vec<String> = grid.into_iter().rev().map(|l| l.trim_end().to_string()).collect();
        let label_line = label_line.trim_end();
        if !label_line.is_empty() {
            out.push(label_line.to_string());
        }
        out.join("\n")
    }
}

impl PartialOrd for MotzkinPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MotzkinPath {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.steps, &other.steps)
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("•");
        }
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path({self})")
    }
}

/// Parses whitespace-separated step tokens into an unvalidated sequence.
pub fn parse_steps(text: &str) -> Result<Vec<Step>> {
    let mut steps = Vec::new();
    let mut offset = 0;
    for token in text.split_whitespace() {
        let pos = offset + text[offset..].find(token).unwrap_or(0);
        offset = pos + token.len();
        let (kind, deco) = match token.split_once(':') {
            Some((k, d)) => (k, Some(d)),
            None => (token, None),
        };
        let bad_ident = |p: usize| Error::parse(p, "identifier");
        let step = match (kind, deco) {
            ("•", None) => continue,
            ("U", None) => Step::up(),
            ("D", None) => Step::down(),
            ("U", Some(w)) => Step::Up(LetterOmega::new(w).map_err(|_| bad_ident(pos + 2))?),
            ("D", Some(w)) => Step::Down(LetterOmega::new(w).map_err(|_| bad_ident(pos + 2))?),
            ("L", Some(x)) => Step::Level(LetterX::new(x).map_err(|_| bad_ident(pos + 2))?),
            ("L", None) => return Err(Error::parse(pos + 1, "`:` and a letter")),
            _ => return Err(Error::parse(pos, "one of U, D, L:x")),
        };
        steps.push(step);
    }
    Ok(steps)
}

impl FromStr for MotzkinPath {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        MotzkinPath::new(parse_steps(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MotzkinPath {
        s.parse().unwrap()
    }

    fn om(s: &str) -> LetterOmega {
        LetterOmega::of(s)
    }

    #[test]
    fn validation() {
        assert!(MotzkinPath::new(vec![Step::Up(om("a")), Step::level("x"), Step::Down(om("a"))]).is_ok());
        assert_eq!(
            MotzkinPath::new(vec![Step::Down(om("a")), Step::Up(om("a"))]),
            Err(Error::NegativePrefix { index: 0 })
        );
        assert_eq!(
            MotzkinPath::new(vec![Step::Up(om("a")), Step::Down(om("b"))]),
            Err(Error::DecorationMismatch { open: 0, close: 1 })
        );
        assert_eq!("U U D".parse::<MotzkinPath>(), Err(Error::Unbalanced { excess: 1 }));
    }

    #[test]
    fn link_examples() {
        let l = p("L:x");
        assert_eq!(l.link(&l), p("L:x L:x"));
        assert_eq!(l.link(&p("U D")), p("L:x U D"));
        assert_eq!(p("U D").link(&p("U D")), p("U D U D"));
        assert_eq!(MotzkinPath::trivial().link(&l), l);
        assert_eq!(l.link(&MotzkinPath::trivial()), l);
    }

    #[test]
    fn raise_examples() {
        let w = LetterOmega::default_op();
        assert_eq!(MotzkinPath::trivial().raise(&w), p("U D"));
        assert_eq!(p("L:x").raise(&om("w")), p("U:w L:x D:w"));
        assert_eq!(p("U D").raise(&w), p("U U D D"));
        let r = p("L:x U D").raise(&w);
        assert!(r.is_indecomposable());
        assert_eq!(r.height(), 2);
        assert!(r.matching_pairs().contains(&(0, 4)));
    }

    #[test]
    fn measures() {
        let c = p("U L:x D").measures();
        assert!(c.is_peak_free && c.is_valley_free && c.is_indecomposable && !c.is_dyck);
        assert_eq!(c.height, 1);
        let c = p("U D").measures();
        assert!(!c.is_peak_free && c.is_valley_free && c.is_dyck && c.is_indecomposable);
        let c = p("U D U D").measures();
        assert!(!c.is_valley_free && !c.is_indecomposable);
        assert_eq!(p("U D U D").first_valley(), Some(1));
        let c = MotzkinPath::trivial().measures();
        assert!(!c.is_peak_free && c.is_valley_free && !c.is_indecomposable);
        assert!(p("L:x").is_indecomposable());
    }

    #[test]
    fn factorisation() {
        assert_eq!(p("U D U D").factors(), vec![p("U D"), p("U D")]);
        assert_eq!(p("L:x U L:y D").factors(), vec![p("L:x"), p("U L:y D")]);
        assert!(MotzkinPath::trivial().factors().is_empty());
    }

    #[test]
    fn standard_decomposition() {
        let d = p("L:x").standard_decomposition().unwrap();
        assert_eq!(d.blocks, vec![MotzkinPath::trivial(), MotzkinPath::trivial()]);
        assert_eq!(d.separators, vec![LetterX::of("x")]);

        let d = p("U L:x D").standard_decomposition().unwrap();
        assert_eq!(d.blocks, vec![p("U L:x D")]);
        assert!(d.separators.is_empty());

        let path = p("U L:x D L:y U L:z D");
        let d = path.standard_decomposition().unwrap();
        assert_eq!(d.blocks, vec![p("U L:x D"), p("U L:z D")]);
        assert_eq!(d.separators, vec![LetterX::of("y")]);
        assert_eq!(d.reassemble(), path);

        assert_eq!(
            p("U D U D").standard_decomposition(),
            Err(Error::not_in(Predicate::ValleyFree, Some(1)))
        );
    }

    #[test]
    fn matching_pairs() {
        assert_eq!(p("U U D D").matching_pairs(), vec![(0, 3), (1, 2)]);
        assert_eq!(p("U D U D").matching_pairs(), vec![(0, 1), (2, 3)]);
        assert_eq!(p("U L:x D").matching_pairs(), vec![(0, 2)]);
    }

    #[test]
    fn text_format() {
        assert_eq!(p("").to_string(), "•");
        assert_eq!(p("•"), MotzkinPath::trivial());
        assert_eq!(p("U:_ L:x D:_").to_string(), "U L:x D");
        assert_eq!(p("U:a D:a").to_string(), "U:a D:a");
        assert!(matches!("U X".parse::<MotzkinPath>(), Err(Error::Parse { position: 2, .. })));
        assert!(matches!("L".parse::<MotzkinPath>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn rendering() {
        assert_eq!(p("U L:x D").render(), "/‾\\\n x");
        assert_eq!(p("L:x").render(), "_\nx");
        assert_eq!(p("U U D D").render(), " /\\\n/  \\");
        assert_eq!(MotzkinPath::trivial().render(), "•");
    }
}
