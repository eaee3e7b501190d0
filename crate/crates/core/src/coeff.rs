//! Exact coefficient rings: `ℚ` and `ℚ[λ]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// An arbitrary-precision rational, always in lowest terms with a positive
/// denominator. Values that fit in `i64` are stored inline.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

/// `Small` is used exactly when both parts fit in `i64`, so the derived
/// equality and hash agree with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Self::from_big(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_big(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(b))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    /// Reduces `n/d` with `d > 0`.
    fn from_i128(n: i128, d: i128) -> Self {
        let g = gcd(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))),
        }
    }

    /// Builds from decimal strings, rejecting a zero denominator.
    pub fn from_decimal_parts(numer: &str, denom: &str) -> Result<Self> {
        let n: BigInt = numer
            .parse()
            .map_err(|_| Error::Json(format!("bad integer `{numer}`")))?;
        let d: BigInt = denom
            .parse()
            .map_err(|_| Error::Json(format!("bad integer `{denom}`")))?;
        if d.is_zero() {
            return Err(Error::Json("zero denominator".into()));
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n` or `n/d`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => Rational::from_decimal_parts(n.trim(), d.trim())
                .map_err(|_| Error::parse(0, "rational")),
            None => Rational::from_decimal_parts(s, "1").map_err(|_| Error::parse(0, "rational")),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) => rhs.clone(),
            (_, Repr::Small(0, _)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d + c * b, b * d)
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rational::zero(),
            (Repr::Small(1, 1), _) => rhs.clone(),
            (_, Repr::Small(1, 1)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational::from_i128(-(*n as i128), *d as i128),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

/// A polynomial in the weight `λ` with rational coefficients, stored low
/// degree first. The zero polynomial is the empty sequence; otherwise the
/// leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    coeffs: SmallVec<[Rational; 3]>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly { coeffs: SmallVec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `λ`.
    pub fn lambda() -> Self {
        LambdaPoly {
            coeffs: [Rational::zero(), Rational::one()].into_iter().collect(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::trimmed(std::iter::once(c).collect())
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Self::trimmed(coeffs.into_iter().collect())
    }

    fn trimmed(mut coeffs: SmallVec<[Rational; 3]>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        LambdaPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `λ = v`, by Horner's scheme.
    pub fn eval(&self, v: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * v) + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = rhs.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        LambdaPoly::trimmed(coeffs)
    }
}

impl Add for LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: LambdaPoly) -> LambdaPoly {
        &self + &rhs
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut coeffs: SmallVec<[Rational; 3]> =
            std::iter::repeat_n(Rational::zero(), self.coeffs.len() + rhs.coeffs.len() - 1).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LambdaPoly::trimmed(coeffs)
    }
}

impl Mul for LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: LambdaPoly) -> LambdaPoly {
        &self * &rhs
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        -&self
    }
}

impl fmt::Display for LambdaPoly {
    /// Highest degree first: `λ^2 + λ`, `2λ - 1/3`, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = if c.is_negative() { -c } else { c.clone() };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        if magnitude.denom().is_one() {
                            write!(f, "{magnitude}")?;
                        } else {
                            write!(f, "({magnitude})")?;
                        }
                    }
                    if deg == 1 {
                        f.write_str("λ")?;
                    } else {
                        write!(f, "λ^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which coefficient ring a value or a whole combination lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    Rational,
    Lambda,
}

impl CoeffKind {
    pub fn name(self) -> &'static str {
        match self {
            CoeffKind::Rational => "rational",
            CoeffKind::Lambda => "lambda",
        }
    }
}

/// A coefficient in `ℚ` or in `ℚ[λ]`. Arithmetic is only defined between
/// values with the same tag.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(Rational),
    Lambda(LambdaPoly),
}

impl Coefficient {
    pub fn kind(&self) -> CoeffKind {
        match self {
            Coefficient::Rational(_) => CoeffKind::Rational,
            Coefficient::Lambda(_) => CoeffKind::Lambda,
        }
    }

    pub fn zero(kind: CoeffKind) -> Self {
        match kind {
            CoeffKind::Rational => Coefficient::Rational(Rational::zero()),
            CoeffKind::Lambda => Coefficient::Lambda(LambdaPoly::zero()),
        }
    }

    pub fn one(kind: CoeffKind) -> Self {
        match kind {
            CoeffKind::Rational => Coefficient::Rational(Rational::one()),
            CoeffKind::Lambda => Coefficient::Lambda(LambdaPoly::one()),
        }
    }

    pub fn lambda() -> Self {
        Coefficient::Lambda(LambdaPoly::lambda())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Lambda(p) => p.is_zero(),
        }
    }

    pub fn checked_add(&self, other: &Coefficient) -> Result<Coefficient> {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Ok(Coefficient::Rational(a + b)),
            (Coefficient::Lambda(a), Coefficient::Lambda(b)) => Ok(Coefficient::Lambda(a + b)),
            _ => Err(Error::MixedCoefficientTags),
        }
    }

    pub fn checked_mul(&self, other: &Coefficient) -> Result<Coefficient> {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Ok(Coefficient::Rational(a * b)),
            (Coefficient::Lambda(a), Coefficient::Lambda(b)) => Ok(Coefficient::Lambda(a * b)),
            _ => Err(Error::MixedCoefficientTags),
        }
    }

    pub fn checked_eq(&self, other: &Coefficient) -> Result<bool> {
        if self.kind() != other.kind() {
            return Err(Error::MixedCoefficientTags);
        }
        Ok(self == other)
    }

    /// Evaluates at `λ = v`; rationals are returned unchanged.
    pub fn specialize(&self, v: &Rational) -> Rational {
        match self {
            Coefficient::Rational(r) => r.clone(),
            Coefficient::Lambda(p) => p.eval(v),
        }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(-r),
            Coefficient::Lambda(p) => Coefficient::Lambda(-p),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => write!(f, "{r}"),
            Coefficient::Lambda(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rational_addition() {
        let sum = Coefficient::Rational(q(1, 2))
            .checked_add(&Coefficient::Rational(q(1, 3)))
            .unwrap();
        assert_eq!(sum, Coefficient::Rational(q(5, 6)));
    }

    #[test]
    fn lambda_times_lambda_plus_one() {
        let l = LambdaPoly::lambda();
        let l1 = &l + &LambdaPoly::one();
        let prod = Coefficient::Lambda(l).checked_mul(&Coefficient::Lambda(l1)).unwrap();
        let expected = LambdaPoly::from_coeffs(vec![q(0, 1), q(1, 1), q(1, 1)]);
        assert_eq!(prod, Coefficient::Lambda(expected));
    }

    #[test]
    fn multiplying_by_zero_gives_empty_sequence() {
        let p = LambdaPoly::from_coeffs(vec![q(3, 1), q(-2, 5)]);
        let z = &p * &LambdaPoly::zero();
        assert!(z.coeffs().is_empty());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn mixed_tags_are_rejected() {
        let a = Coefficient::Rational(q(1, 1));
        let b = Coefficient::Lambda(LambdaPoly::one());
        assert_eq!(a.checked_add(&b), Err(Error::MixedCoefficientTags));
        assert_eq!(a.checked_mul(&b), Err(Error::MixedCoefficientTags));
        assert_eq!(a.checked_eq(&b), Err(Error::MixedCoefficientTags));
    }

    #[test]
    fn specialization() {
        let l = LambdaPoly::lambda();
        assert!((&l + &LambdaPoly::one()).eval(&q(-1, 1)).is_zero());
        assert_eq!(l.scale(&q(2, 1)).eval(&q(1, 2)), q(1, 1));
        assert_eq!((&l * &l).eval(&q(3, 1)), q(9, 1));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(q(4, -6), q(-2, 3));
        assert_eq!(q(4, -6).denom(), BigInt::from(3));
        let p = LambdaPoly::from_coeffs(vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(p.coeffs().len(), 1);
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = q(i64::MAX, 1);
        let sum = &big + &big;
        assert_eq!(sum.numer(), BigInt::from(i64::MAX) * 2);
        assert_eq!(&sum - &big, big);
        let tiny = q(1, i64::MAX);
        assert_eq!(&(&tiny * &tiny) * &(&big * &big), Rational::one());
        assert_eq!(-q(i64::MIN, 1), Rational::from_integer(BigInt::from(i64::MIN) * -1));
        assert!(q(i64::MIN, 1) < q(i64::MAX, 1));
        assert!(&big + &big > big);
    }

    #[test]
    fn display() {
        assert_eq!(LambdaPoly::lambda().to_string(), "λ");
        let p = LambdaPoly::from_coeffs(vec![q(-1, 1), q(2, 1), q(1, 1)]);
        assert_eq!(p.to_string(), "λ^2 + 2λ - 1");
        assert_eq!((-LambdaPoly::lambda()).to_string(), "-λ");
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert_eq!("3/6".parse::<Rational>().unwrap(), q(1, 2));
    }
}
