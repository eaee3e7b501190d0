//! Finite formal sums of basis elements with coefficients in `ℚ` or `ℚ[λ]`.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::coeff::{CoeffKind, Coefficient, LambdaPoly, Rational};
use crate::error::{Error, Result};
use crate::path::{canonical_cmp, Step};

/// A basis family that can carry linear combinations.
pub trait Basis: Clone + Eq + Hash + fmt::Display + FromStr<Err = Error> + Send + Sync {
    /// `word`, `path`, `vforest` or `aforest`.
    const REPRESENTATION: &'static str;

    /// Step sequence of the element's path image, used for canonical order.
    fn canonical_steps(&self) -> Vec<Step>;
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinearCombination<B: Basis> {
    kind: CoeffKind,
    terms: FxHashMap<B, Coefficient>,
}

impl<B: Basis> LinearCombination<B> {
    pub fn zero(kind: CoeffKind) -> Self {
        LinearCombination {
            kind,
            terms: FxHashMap::default(),
        }
    }

    /// `1·b`.
    pub fn basis(b: B, kind: CoeffKind) -> Self {
        let mut out = Self::zero(kind);
        out.terms.insert(b, Coefficient::one(kind));
        out
    }

    pub fn term(b: B, c: Coefficient) -> Self {
        let mut out = Self::zero(c.kind());
        if !c.is_zero() {
            out.terms.insert(b, c);
        }
        out
    }

    /// Builds a symbolic combination from λ-polynomial coefficients.
    pub fn from_poly_map(map: impl IntoIterator<Item = (B, LambdaPoly)>) -> Self {
        LinearCombination {
            kind: CoeffKind::Lambda,
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(b, c)| (b, Coefficient::Lambda(c)))
                .collect(),
        }
    }

    pub fn kind(&self) -> CoeffKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`is_zero`](Self::is_zero).
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn get(&self, b: &B) -> Option<&Coefficient> {
        self.terms.get(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Coefficient)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, b: B, c: Coefficient) -> Result<()> {
        if c.kind() != self.kind {
            return Err(Error::MixedCoefficientTags);
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&b) {
            Some(existing) => {
                let sum = existing.checked_add(&c)?;
                if sum.is_zero() {
                    self.terms.remove(&b);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.kind != self.kind {
            return Err(Error::MixedCoefficientTags);
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LinearCombination {
            kind: self.kind,
            terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> Result<Self> {
        if c.kind() != self.kind {
            return Err(Error::MixedCoefficientTags);
        }
        let mut out = Self::zero(self.kind);
        for (b, v) in &self.terms {
            let p = v.checked_mul(c)?;
            if !p.is_zero() {
                out.terms.insert(b.clone(), p);
            }
        }
        Ok(out)
    }

    /// Linear extension of `f`; every image must use this combination's
    /// coefficient ring.
    pub fn map_basis<C: Basis>(
        &self,
        mut f: impl FnMut(&B) -> Result<LinearCombination<C>>,
    ) -> Result<LinearCombination<C>> {
        let mut out = LinearCombination::zero(self.kind);
        for (b, c) in &self.terms {
            let image = f(b)?.scale(c)?;
            for (ib, ic) in image.terms {
                out.add_term(ib, ic)?;
            }
        }
        Ok(out)
    }

    /// Applies a basis-to-basis map linearly.
    pub fn map_each<C: Basis>(&self, mut f: impl FnMut(&B) -> Result<C>) -> Result<LinearCombination<C>> {
        let mut out = LinearCombination::zero(self.kind);
        for (b, c) in &self.terms {
            out.add_term(f(b)?, c.clone())?;
        }
        Ok(out)
    }

    /// Evaluates every λ-coefficient at `v`; rational combinations are
    /// returned unchanged.
    pub fn specialize(&self, v: &Rational) -> Self {
        if self.kind == CoeffKind::Rational {
            return self.clone();
        }
        LinearCombination {
            kind: CoeffKind::Rational,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), Coefficient::Rational(c.specialize(v))))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Terms in serialization order: larger elements first, then by
    /// descending step sequence of the path image.
    pub fn iter_canonical(&self) -> Vec<(&B, &Coefficient)> {
        let mut keyed: Vec<(Vec<Step>, (&B, &Coefficient))> =
            self.terms.iter().map(|t| (t.0.canonical_steps(), t)).collect();
        keyed.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        keyed.into_iter().map(|(_, t)| t).collect()
    }

    fn wire(&self) -> WireCombination {
        WireCombination {
            family: B::REPRESENTATION.to_string(),
            coeff: self.kind.name().to_string(),
            terms: self
                .iter_canonical()
                .into_iter()
                .map(|(b, c)| WireTerm {
                    coeff: WireCoeff::from(c),
                    basis: b.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.wire()).expect("wire format is serializable")
    }

    /// Compact JSON with keys in schema order.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.wire()).expect("wire format is serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let wire: WireCombination =
            serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
        if wire.family != B::REPRESENTATION {
            return Err(Error::FamilyMismatch {
                expected: B::REPRESENTATION.to_string(),
                found: wire.family,
            });
        }
        let kind = match wire.coeff.as_str() {
            "rational" => CoeffKind::Rational,
            "lambda" => CoeffKind::Lambda,
            other => return Err(Error::Json(format!("unknown coefficient ring `{other}`"))),
        };
        let mut out = Self::zero(kind);
        for term in wire.terms {
            let b: B = term.basis.parse()?;
            out.add_term(b, term.coeff.into_coefficient()?)?;
        }
        Ok(out)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_json(&value)
    }
}

impl<B: Basis> fmt::Display for LinearCombination<B> {
    /// `coeff*basis` joined by ` + `; `0` for the empty sum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.iter_canonical().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match c {
                Coefficient::Lambda(p) if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 => {
                    write!(f, "({p})*{b}")?
                }
                _ => write!(f, "{c}*{b}")?,
            }
        }
        Ok(())
    }
}

impl<B: Basis> fmt::Debug for LinearCombination<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {self}", self.kind.name())
    }
}

#[derive(Serialize, Deserialize)]
struct WireCombination {
    family: String,
    coeff: String,
    terms: Vec<WireTerm>,
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    coeff: WireCoeff,
    basis: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireCoeff {
    Rational { num: String, den: String },
    Poly { poly: Vec<(String, String)> },
}

impl From<&Coefficient> for WireCoeff {
    fn from(c: &Coefficient) -> Self {
        match c {
            Coefficient::Rational(r) => WireCoeff::Rational {
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            },
            Coefficient::Lambda(p) => WireCoeff::Poly {
                poly: p
                    .coeffs()
                    .iter()
                    .map(|r| (r.numer().to_string(), r.denom().to_string()))
                    .collect(),
            },
        }
    }
}

impl WireCoeff {
    fn into_coefficient(self) -> Result<Coefficient> {
        let bad = |e: Error| Error::Json(e.to_string());
        Ok(match self {
            WireCoeff::Rational { num, den } => {
                Coefficient::Rational(Rational::from_decimal_parts(&num, &den).map_err(bad)?)
            }
            WireCoeff::Poly { poly } => Coefficient::Lambda(LambdaPoly::from_coeffs(
                poly.iter()
                    .map(|(n, d)| Rational::from_decimal_parts(n, d))
                    .collect::<Result<Vec<_>>>()
                    .map_err(bad)?,
            )),
        })
    }
}

impl Basis for crate::path::MotzkinPath {
    const REPRESENTATION: &'static str = "path";

    fn canonical_steps(&self) -> Vec<Step> {
        self.steps().to_vec()
    }
}

impl Basis for crate::word::BracketedWord {
    const REPRESENTATION: &'static str = "word";

    fn canonical_steps(&self) -> Vec<Step> {
        self.flatten().to_steps()
    }
}
