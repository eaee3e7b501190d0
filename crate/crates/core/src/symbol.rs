//! Letters of the generator alphabet `X` and of the operator alphabet `Ω`.
//!
//! Both are interned identifier tokens. The two namespaces are independent:
//! the same token may name a letter and an operator.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

fn interner() -> &'static Mutex<HashSet<Arc<str>>> {
    static POOL: OnceLock<Mutex<HashSet<Arc<str>>>> = OnceLock::new();
    POOL.get_or_init(Default::default)
}

fn intern(name: &str) -> Arc<str> {
    let mut pool = interner().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(existing) = pool.get(name) {
        return existing.clone();
    }
    let fresh: Arc<str> = Arc::from(name);
    pool.insert(fresh.clone());
    fresh
}

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

macro_rules! letter_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Eq, PartialOrd, Ord)]
        pub struct $name(Arc<str>);

        // Names are interned, so identity of the shared string is equality.
        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                Arc::ptr_eq(&self.0, &other.0)
            }
        }

        impl std::hash::Hash for $name {
            fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
                std::ptr::hash(Arc::as_ptr(&self.0) as *const u8, state)
            }
        }

        impl $name {
            pub fn new(name: &str) -> Result<Self> {
                if is_identifier(name) {
                    Ok(Self(intern(name)))
                } else {
                    Err(Error::parse(0, "identifier"))
                }
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

letter_type!(
    /// An element `x` of the generator set `X`.
    LetterX
);

letter_type!(
    /// An operator name `ω ∈ Ω`.
    LetterOmega
);

impl LetterX {
    /// Panicking constructor for literals known to be valid.
    pub fn of(name: &str) -> Self {
        Self::new(name).unwrap_or_else(|_| panic!("`{name}` is not an identifier"))
    }
}

impl LetterOmega {
    pub const DEFAULT_NAME: &'static str = "_";

    /// The operator of a singleton `Ω`, written `_`.
    pub fn default_op() -> Self {
        static DEFAULT: OnceLock<LetterOmega> = OnceLock::new();
        DEFAULT
            .get_or_init(|| LetterOmega(intern(Self::DEFAULT_NAME)))
            .clone()
    }

    pub fn is_default(&self) -> bool {
        &*self.0 == Self::DEFAULT_NAME
    }

    pub fn of(name: &str) -> Self {
        Self::new(name).unwrap_or_else(|_| panic!("`{name}` is not an identifier"))
    }
}

/// Finite alphabets used by enumeration and by the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<LetterX>,
    operators: Vec<LetterOmega>,
}

impl Alphabet {
    /// Letters and operators are deduplicated and sorted.
    pub fn new(letters: impl IntoIterator<Item = LetterX>, operators: impl IntoIterator<Item = LetterOmega>) -> Self {
        let mut letters: Vec<_> = letters.into_iter().collect();
        letters.sort();
        letters.dedup();
        let mut operators: Vec<_> = operators.into_iter().collect();
        operators.sort();
        operators.dedup();
        Self { letters, operators }
    }

    /// `X` from the given names, `Ω = {_}`.
    pub fn singleton_omega(letters: &[&str]) -> Self {
        Self::new(letters.iter().map(|x| LetterX::of(x)), [LetterOmega::default_op()])
    }

    pub fn with_operators(letters: &[&str], operators: &[&str]) -> Self {
        Self::new(
            letters.iter().map(|x| LetterX::of(x)),
            operators.iter().map(|w| LetterOmega::of(w)),
        )
    }

    pub fn letters(&self) -> &[LetterX] {
        &self.letters
    }

    pub fn operators(&self) -> &[LetterOmega] {
        &self.operators
    }
}
