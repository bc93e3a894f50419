//! The index semigroup Ω and its unitarization Ω¹.
//!
//! Four concrete families are supported: the trivial semigroup, the free
//! semigroup on a finite set of generators (the default test family, since it
//! is noncommutative), the cyclic group `Z/n` written additively, and the
//! integers under addition.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::symbol::Symbol;

/// Which semigroup the operator family is indexed by.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SemigroupSpec {
    Trivial,
    /// Free semigroup on a prefix-free list of distinct generator names.
    Free(Vec<Symbol>),
    /// `Z/n` under addition.
    Cyclic(u32),
    /// `(Z, +)`.
    Integers,
}

/// An element of Ω.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OmegaElem {
    Trivial,
    /// Nonempty word in the generators.
    Free(Vec<Symbol>),
    Cyclic { residue: u32, modulus: u32 },
    Int(i64),
}

/// An element of Ω¹ = Ω ⊔ {1}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Omega1Elem {
    Identity,
    Elem(OmegaElem),
}

impl SemigroupSpec {
    pub fn free<S: AsRef<str>>(generators: &[S]) -> Result<Self> {
        let gens: Vec<Symbol> = generators.iter().map(|g| Symbol::new(g.as_ref())).collect();
        if gens.is_empty() {
            return Err(Error::InvalidSpec("free semigroup needs at least one generator".into()));
        }
        for (i, g) in gens.iter().enumerate() {
            if !Symbol::is_identifier(g.as_str()) {
                return Err(Error::InvalidSpec(format!("generator `{g}` is not an identifier")));
            }
            for (j, h) in gens.iter().enumerate() {
                if i != j && h.as_str().starts_with(g.as_str()) {
                    return Err(Error::InvalidSpec(format!(
                        "generators `{g}` and `{h}` are not prefix-free"
                    )));
                }
            }
        }
        Ok(SemigroupSpec::Free(gens))
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("cyclic order must be at least 1".into()));
        }
        Ok(SemigroupSpec::Cyclic(n))
    }

    /// A finite sample of Ω used by enumerations and exhaustive checks: all of
    /// Ω for the trivial and cyclic families, the generators for a free
    /// semigroup and `{-1, 0, 1}` for the integers.
    pub fn carrier(&self) -> Vec<OmegaElem> {
        match self {
            SemigroupSpec::Trivial => vec![OmegaElem::Trivial],
            SemigroupSpec::Free(gens) => gens.iter().map(|g| OmegaElem::Free(vec![g.clone()])).collect(),
            SemigroupSpec::Cyclic(n) => (0..*n)
                .map(|residue| OmegaElem::Cyclic { residue, modulus: *n })
                .collect(),
            SemigroupSpec::Integers => vec![OmegaElem::Int(-1), OmegaElem::Int(0), OmegaElem::Int(1)],
        }
    }

    /// Whether [`carrier`](Self::carrier) is the whole of Ω.
    pub fn carrier_is_complete(&self) -> bool {
        matches!(self, SemigroupSpec::Trivial | SemigroupSpec::Cyclic(_))
    }

    pub fn contains(&self, elem: &OmegaElem) -> bool {
        match (self, elem) {
            (SemigroupSpec::Trivial, OmegaElem::Trivial) => true,
            (SemigroupSpec::Free(gens), OmegaElem::Free(word)) => {
                !word.is_empty() && word.iter().all(|w| gens.contains(w))
            }
            (SemigroupSpec::Cyclic(n), OmegaElem::Cyclic { residue, modulus }) => {
                n == modulus && residue < modulus
            }
            (SemigroupSpec::Integers, OmegaElem::Int(_)) => true,
            _ => false,
        }
    }

    /// Parses an element literal: `e` for the trivial semigroup, generator
    /// concatenation for free words, decimal integers otherwise.
    pub fn parse(&self, text: &str) -> Result<OmegaElem, ParseError> {
        if text.is_empty() {
            return Err(ParseError::new(0, "semigroup element", "end of input"));
        }
        match self {
            SemigroupSpec::Trivial => {
                if text == "e" {
                    Ok(OmegaElem::Trivial)
                } else {
                    Err(ParseError::new(0, "`e`", text))
                }
            }
            SemigroupSpec::Free(gens) => {
                let mut word = Vec::new();
                let mut pos = 0;
                while pos < text.len() {
                    let rest = &text[pos..];
                    let Some(g) = gens.iter().find(|g| rest.starts_with(g.as_str())) else {
                        let found: String = rest.chars().take(1).collect();
                        return Err(ParseError::new(pos, "semigroup generator", found));
                    };
                    word.push(g.clone());
                    pos += g.as_str().len();
                }
                Ok(OmegaElem::Free(word))
            }
            SemigroupSpec::Cyclic(n) => {
                let residue: u32 = text
                    .parse()
                    .map_err(|_| ParseError::new(0, "residue literal", text))?;
                if residue >= *n {
                    return Err(ParseError::new(0, format!("residue below {n}"), text));
                }
                Ok(OmegaElem::Cyclic { residue, modulus: *n })
            }
            SemigroupSpec::Integers => text
                .parse()
                .map(OmegaElem::Int)
                .map_err(|_| ParseError::new(0, "integer literal", text)),
        }
    }
}

impl fmt::Display for SemigroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemigroupSpec::Trivial => f.write_str("trivial"),
            SemigroupSpec::Free(gens) => {
                f.write_str("free:")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            SemigroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            SemigroupSpec::Integers => f.write_str("int"),
        }
    }
}

impl FromStr for SemigroupSpec {
    type Err = Error;

    /// Accepts `trivial`, `free:a,b,...`, `cyclic:n` and `int`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "trivial" => Ok(SemigroupSpec::Trivial),
            None if s == "int" => Ok(SemigroupSpec::Integers),
            Some(("free", gens)) => {
                let gens: Vec<&str> = gens.split(',').map(str::trim).collect();
                SemigroupSpec::free(&gens)
            }
            Some(("cyclic", n)) => {
                let n: u32 = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad cyclic order `{n}`")))?;
                SemigroupSpec::cyclic(n)
            }
            _ => Err(Error::InvalidSpec(format!(
                "`{s}` (expected trivial, free:a,b,..., cyclic:n or int)"
            ))),
        }
    }
}

impl OmegaElem {
    /// The semigroup product `self · other`.
    pub fn mul(&self, other: &OmegaElem) -> Result<OmegaElem> {
        match (self, other) {
            (OmegaElem::Trivial, OmegaElem::Trivial) => Ok(OmegaElem::Trivial),
            (OmegaElem::Free(a), OmegaElem::Free(b)) => {
                let mut word = a.clone();
                word.extend(b.iter().cloned());
                Ok(OmegaElem::Free(word))
            }
            (
                OmegaElem::Cyclic { residue: a, modulus: n },
                OmegaElem::Cyclic { residue: b, modulus: m },
            ) if n == m => Ok(OmegaElem::Cyclic {
                residue: ((u64::from(*a) + u64::from(*b)) % u64::from(*n)) as u32,
                modulus: *n,
            }),
            (OmegaElem::Int(a), OmegaElem::Int(b)) => a
                .checked_add(*b)
                .map(OmegaElem::Int)
                .ok_or_else(|| Error::Domain(format!("integer overflow in {a} + {b}"))),
            _ => Err(Error::SpecMismatch {
                left: format!("{self:?}"),
                right: format!("{other:?}"),
            }),
        }
    }
}

impl fmt::Display for OmegaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaElem::Trivial => f.write_str("e"),
            OmegaElem::Free(word) => word.iter().try_for_each(|g| write!(f, "{g}")),
            OmegaElem::Cyclic { residue, .. } => write!(f, "{residue}"),
            OmegaElem::Int(v) => write!(f, "{v}"),
        }
    }
}

impl Omega1Elem {
    pub fn is_identity(&self) -> bool {
        matches!(self, Omega1Elem::Identity)
    }

    pub fn as_elem(&self) -> Option<&OmegaElem> {
        match self {
            Omega1Elem::Identity => None,
            Omega1Elem::Elem(e) => Some(e),
        }
    }

    /// Product in Ω¹: the identity is a two-sided unit, everything else
    /// defers to Ω.
    pub fn mul(&self, other: &Omega1Elem) -> Result<Omega1Elem> {
        match (self, other) {
            (Omega1Elem::Identity, x) | (x, Omega1Elem::Identity) => Ok(x.clone()),
            (Omega1Elem::Elem(a), Omega1Elem::Elem(b)) => a.mul(b).map(Omega1Elem::Elem),
        }
    }
}

impl From<OmegaElem> for Omega1Elem {
    fn from(e: OmegaElem) -> Self {
        Omega1Elem::Elem(e)
    }
}

impl fmt::Display for Omega1Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Omega1Elem::Identity => f.write_str("1"),
            Omega1Elem::Elem(e) => e.fmt(f),
        }
    }
}
