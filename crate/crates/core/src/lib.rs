//! Free operated monoids and free Rota–Baxter algebras in four
//! representations: decorated Motzkin paths, bracketed words, vertex-decorated
//! planar rooted forests and angularly decorated planar rooted forests.

pub mod bijection;
pub mod coeff;
pub mod enumerate;
pub mod error;
pub mod forest;
pub mod lincomb;
pub mod path;
pub mod rota_baxter;
pub mod selfcheck;
pub mod symbol;
pub mod word;

pub use bijection::{family_convert, Element, Family, FamilyElement, Representation};
pub use coeff::{CoeffKind, Coefficient, LambdaPoly, Rational};
pub use forest::{AngularForest, AngularTree, DecoratedForest, DecoratedTree, PlanarTree};
pub use lincomb::{Basis, LinearCombination};
pub use error::{Error, Predicate, Result};
pub use path::{MotzkinPath, Step};
pub use rota_baxter::{RotaBaxterBasis, Weight};
pub use symbol::{Alphabet, LetterOmega, LetterX};
pub use word::{BracketedWord, FlatSymbol, FlatWord, WordAtom};
