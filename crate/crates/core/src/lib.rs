//! Rota-Baxter family algebras on typed decorated planar rooted trees and
//! bracketed words.

pub mod coefficients;
pub mod error;
pub mod familyops;
pub mod rbfa;
pub mod semigroup;
pub mod symbol;
pub mod textio;
pub mod trees;
pub mod verify;
pub mod words;

pub use coefficients::{LinComb, Rational};
pub use error::{Error, ParseError, Result};
pub use semigroup::{Omega1Elem, OmegaElem, SemigroupSpec};
pub use symbol::Symbol;
pub use trees::{Branch, Tree};
pub use words::{RbWord, Word};
