//! Truncated Laurent polynomials `Σ c_k z^k`, `lo ≤ k ≤ hi`, with the family
//! of projections `P_ω` onto the span of `z^k`, `k < ω`. Indexed by `(Z, +)`,
//! these projections form a Rota-Baxter family of weight −1.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::coefficients::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    lo: i64,
    hi: i64,
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    /// The zero polynomial in the window `[lo, hi]`.
    pub fn zero(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty Laurent window [{lo}, {hi}]");
        Self {
            lo,
            hi,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(
        lo: i64,
        hi: i64,
        terms: I,
    ) -> Result<Self> {
        let mut p = Self::zero(lo, hi);
        for (k, c) in terms {
            p.add_monomial(k, c)?;
        }
        Ok(p)
    }

    pub fn monomial(lo: i64, hi: i64, k: i64, c: Rational) -> Result<Self> {
        Self::from_terms(lo, hi, [(k, c)])
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    fn add_monomial(&mut self, k: i64, c: Rational) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if k < self.lo || k > self.hi {
            return Err(Error::LaurentRange {
                exponent: k,
                lo: self.lo,
                hi: self.hi,
            });
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
        Ok(())
    }

    fn same_window(&self, other: &Self) -> Result<()> {
        if self.window() == other.window() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "Laurent windows differ: [{}, {}] vs [{}, {}]",
                self.lo, self.hi, other.lo, other.hi
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, &Rational::from_integer(1.into()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, &Rational::from_integer((-1).into()))
    }

    /// `self + s·other`.
    pub fn combine(&self, other: &Self, s: &Rational) -> Result<Self> {
        self.same_window(other)?;
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_monomial(k, c * s)?;
        }
        Ok(out)
    }

    /// Convolution product. Fails if any product exponent with a nonzero
    /// coefficient leaves the window.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_window(other)?;
        let mut out = Self::zero(self.lo, self.hi);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out.add_monomial(i + j, a * b)?;
            }
        }
        Ok(out)
    }

    /// `P_ω`: keeps exactly the monomials `z^k` with `k < ω`.
    pub fn project(&self, omega: i64) -> Self {
        Self {
            lo: self.lo,
            hi: self.hi,
            coeffs: self
                .coeffs
                .range(..omega)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "+") => {}
                (0, _) => f.write_str("-")?,
                _ => write!(f, " {sign} ")?,
            }
            write!(f, "{}*z^{}", c.abs(), k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}, {}]({self})", self.lo, self.hi)
    }
}
