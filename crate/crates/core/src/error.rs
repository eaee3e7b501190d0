use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

/// Structural predicates that define the subfamilies of the four
/// representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    PeakFree,
    ValleyFree,
    Dyck,
    RotaBaxterWord,
    Nonunitary,
    LeafSpaced,
    LadderFree,
    /// Every operator decoration is the default operator `_`.
    OmegaSingleton,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::PeakFree => "peak-free",
            Predicate::ValleyFree => "valley-free",
            Predicate::Dyck => "dyck",
            Predicate::RotaBaxterWord => "rb",
            Predicate::Nonunitary => "nonunitary",
            Predicate::LeafSpaced => "leaf-spaced",
            Predicate::LadderFree => "ladder-free",
            Predicate::OmegaSingleton => "omega-singleton",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "peak-free" => Predicate::PeakFree,
            "valley-free" => Predicate::ValleyFree,
            "dyck" => Predicate::Dyck,
            "rb" | "R" => Predicate::RotaBaxterWord,
            "nonunitary" | "S" => Predicate::Nonunitary,
            "leaf-spaced" => Predicate::LeafSpaced,
            "ladder-free" => Predicate::LadderFree,
            "omega-singleton" => Predicate::OmegaSingleton,
            _ => return None,
        })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficients carry different tags")]
    MixedCoefficientTags,
    #[error("family mismatch: expected {expected}, found {found}")]
    FamilyMismatch { expected: String, found: String },
    #[error("prefix goes below the axis at step {index}")]
    NegativePrefix { index: usize },
    #[error("path ends {excess} level(s) above the axis")]
    Unbalanced { excess: usize },
    #[error("decoration of step {open} does not match its partner at {close}")]
    DecorationMismatch { open: usize, close: usize },
    #[error("not in family {predicate} (witness {witness:?})")]
    NotInFamily {
        predicate: Predicate,
        witness: Option<usize>,
    },
    #[error("parse error at {position}: expected {expected}")]
    Parse { position: usize, expected: String },
    #[error("unbalanced brackets at {position}")]
    UnbalancedBrackets { position: usize },
    #[error("symbol at {index} is not an opening bracket")]
    NotAnOpen { index: usize },
    #[error("unknown symbol `{symbol}`")]
    UnknownSymbol { symbol: String },
    #[error("the unit has no place in a nonunitary family")]
    UnitInNonunitary,
    #[error("size {size} exceeds the enumeration cap {cap}")]
    SizeLimitExceeded { size: usize, cap: usize },
    #[error("no route from {from} to {to}")]
    NoRoute { from: String, to: String },
    #[error("invalid json: {0}")]
    Json(String),
}

impl Error {
    pub fn not_in(predicate: Predicate, witness: Option<usize>) -> Self {
        Error::NotInFamily { predicate, witness }
    }

    pub fn parse(position: usize, expected: impl Into<String>) -> Self {
        Error::Parse {
            position,
            expected: expected.into(),
        }
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MixedCoefficientTags => "MIXED_COEFFICIENT_TAGS",
            Error::FamilyMismatch { .. } => "FAMILY_MISMATCH",
            Error::NegativePrefix { .. } => "NEGATIVE_PREFIX",
            Error::Unbalanced { .. } => "UNBALANCED",
            Error::DecorationMismatch { .. } => "DECORATION_MISMATCH",
            Error::NotInFamily { .. } => "NOT_IN_FAMILY",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::UnbalancedBrackets { .. } => "UNBALANCED_BRACKETS",
            Error::NotAnOpen { .. } => "NOT_AN_OPEN",
            Error::UnknownSymbol { .. } => "UNKNOWN_SYMBOL",
            Error::UnitInNonunitary => "UNIT_IN_NONUNITARY",
            Error::SizeLimitExceeded { .. } => "SIZE_LIMIT_EXCEEDED",
            Error::NoRoute { .. } => "NO_ROUTE",
            Error::Json(_) => "JSON_ERROR",
        }
    }

    /// The error as a flat JSON object: `{"code": ..., <details>}`.
    pub fn to_json(&self) -> Value {
        let mut v = match self {
            Error::FamilyMismatch { expected, found } => {
                json!({ "expected": expected, "found": found })
            }
            Error::NegativePrefix { index } => json!({ "index": index }),
            Error::Unbalanced { excess } => json!({ "excess": excess }),
            Error::DecorationMismatch { open, close } => json!({ "open": open, "close": close }),
            Error::NotInFamily { predicate, witness } => {
                json!({ "predicate": predicate.name(), "witness": witness })
            }
            Error::Parse { position, expected } => {
                json!({ "position": position, "expected": expected })
            }
            Error::UnbalancedBrackets { position } => json!({ "position": position }),
            Error::NotAnOpen { index } => json!({ "index": index }),
            Error::UnknownSymbol { symbol } => json!({ "symbol": symbol }),
            Error::SizeLimitExceeded { size, cap } => json!({ "size": size, "cap": cap }),
            Error::NoRoute { from, to } => json!({ "from": from, "to": to }),
            Error::Json(msg) => json!({ "message": msg }),
            Error::MixedCoefficientTags | Error::UnitInNonunitary => json!({}),
        };
        v["code"] = Value::from(self.code());
        v
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
