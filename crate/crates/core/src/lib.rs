//! Exact tooling for minimum-degree Erdős–Ko–Rado phenomena: extremal
//! constructions, Kneser spectral certificates, matchings and fractional
//! matchings, and exhaustive searches at small sizes.

pub mod binom;
pub mod certificates;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod lp;
pub mod matching;
pub mod search;
pub mod family;
pub mod fractional;
pub mod io;
pub mod spectral;
pub mod subset;

pub use error::{Error, Result};
pub use family::Family;
pub use subset::{KSubset, Vertex};

/// Exact rational number used by every verdict path.
pub type Rational = num_rational::BigRational;
