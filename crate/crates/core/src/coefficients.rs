//! Exact rational scalars and canonical formal linear combinations.
//!
//! Every algebra element in the engine is a [`LinComb`] over some ordered
//! basis (trees or bracketed words). Terms live in a `BTreeMap`, so the
//! canonical form is the basis order itself and zero coefficients are never
//! stored.

use std::collections::btree_map::{self, BTreeMap, Entry};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses an exact rational literal such as `3/2`, `-1` or `0`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Builds the rational `n / d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `a · b` with shortcuts for the unit and integer cases, which dominate in
/// practice and skip the gcd reduction.
fn mul(a: &Rational, b: &Rational) -> Rational {
    if a.is_one() {
        b.clone()
    } else if b.is_one() {
        a.clone()
    } else if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn add_assign(a: &mut Rational, b: &Rational) {
    if a.is_integer() && b.is_integer() {
        *a = Rational::from_integer(a.numer() + b.numer());
    } else {
        *a += b;
    }
}

/// A finite formal linear combination `Σ c_b · b` with nonzero rational
/// coefficients, kept in the canonical order of the basis type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    /// The empty combination.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The combination `1 · b`.
    pub fn basis(b: B) -> Self {
        Self::term(b, Rational::one())
    }

    /// The combination `c · b` (empty when `c == 0`).
    pub fn term(b: B, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    /// Canonicalizes an arbitrary list of terms: like terms merge and zero
    /// coefficients are dropped.
    pub fn from_terms<I: IntoIterator<Item = (B, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis elements with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `b` (zero when absent).
    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical basis order.
    pub fn iter(&self) -> btree_map::Iter<'_, B, Rational> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    /// If the combination is exactly `1 · b`, returns `b`.
    pub fn as_single_basis(&self) -> Option<&B> {
        if self.terms.len() != 1 {
            return None;
        }
        let (b, c) = self.terms.iter().next()?;
        c.is_one().then_some(b)
    }

    /// Adds `c · b` in place.
    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                add_assign(slot.get_mut(), &c);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Adds `s · other` in place.
    pub fn add_scaled(&mut self, other: &Self, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (b, c) in other.iter() {
            self.add_term(b.clone(), mul(c, s));
        }
    }

    /// `a + s·b` as a fresh combination.
    pub fn combine(&self, other: &Self, s: &Rational) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, s);
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), mul(c, s))).collect(),
        }
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<C, E, F>(&self, mut f: F) -> Result<LinComb<C>, E>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> Result<LinComb<C>, E>,
    {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            out.add_scaled(&f(b)?, c);
        }
        Ok(out)
    }

    /// Relabels basis elements through `f` and re-canonicalizes.
    pub fn map_basis<C: Ord + Clone, F: FnMut(&B) -> C>(&self, mut f: F) -> LinComb<C> {
        LinComb::from_terms(self.iter().map(|(b, c)| (f(b), c.clone())))
    }
}

/// Bilinear extension of a map given on pairs of basis elements:
/// `Σ_{T,U} a_T · b_U · f(T, U)`.
pub fn bilinear<B, C, E, F>(mut f: F, a: &LinComb<B>, b: &LinComb<B>) -> Result<LinComb<C>, E>
where
    B: Ord + Clone,
    C: Ord + Clone,
    F: FnMut(&B, &B) -> Result<LinComb<C>, E>,
{
    let mut out = LinComb::zero();
    for (t, ct) in a.iter() {
        for (u, cu) in b.iter() {
            let coeff = mul(ct, cu);
            out.add_scaled(&f(t, u)?, &coeff);
        }
    }
    Ok(out)
}

impl<B: Ord + Clone> FromIterator<(B, Rational)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<B: Ord + Clone> std::ops::Add for &LinComb<B> {
    type Output = LinComb<B>;

    fn add(self, rhs: Self) -> LinComb<B> {
        self.combine(rhs, &Rational::one())
    }
}

impl<B: Ord + Clone> std::ops::Sub for &LinComb<B> {
    type Output = LinComb<B>;

    fn sub(self, rhs: Self) -> LinComb<B> {
        self.combine(rhs, &-Rational::one())
    }
}

impl<B: Ord + Clone> std::ops::AddAssign<&LinComb<B>> for LinComb<B> {
    fn add_assign(&mut self, rhs: &LinComb<B>) {
        self.add_scaled(rhs, &Rational::one());
    }
}

/// Writes `c·b + ...` in canonical order using `fmt_basis` for each basis
/// element; the zero combination prints as `0`.
pub fn write_lincomb<B: Ord, W: fmt::Write>(
    out: &mut W,
    lc: &LinComb<B>,
    mut fmt_basis: impl FnMut(&B) -> String,
) -> fmt::Result {
    if lc.terms.is_empty() {
        return out.write_str("0");
    }
    for (i, (b, c)) in lc.terms.iter().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.write_str("-")?,
            (_, false) => out.write_str(" + ")?,
            (_, true) => out.write_str(" - ")?,
        }
        let magnitude = c.abs();
        if !magnitude.is_one() {
            write!(out, "{magnitude}*")?;
        }
        out.write_str(&fmt_basis(b))?;
    }
    Ok(())
}

impl<B: Ord + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lincomb(f, self, |b| b.to_string())
    }
}

impl<B: Ord + fmt::Debug> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(b, c)| (b, c.to_string())))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lc(terms: &[(&'static str, i64, i64)]) -> LinComb<&'static str> {
        LinComb::from_terms(terms.iter().map(|&(b, n, d)| (b, ratio(n, d))))
    }

    #[test]
    fn like_terms_merge() {
        let x = LinComb::basis("x");
        assert_eq!(x.combine(&x, &int(1)), lc(&[("x", 2, 1)]));
    }

    #[test]
    fn cancellation_leaves_empty() {
        let x = LinComb::basis("x");
        let out = x.combine(&x, &int(-1));
        assert!(out.is_zero());
        assert_eq!(out.to_string(), "0");
    }

    #[test]
    fn disjoint_supports() {
        let out = LinComb::basis("x").combine(&LinComb::basis("y"), &ratio(3, 2));
        assert_eq!(out, lc(&[("x", 1, 1), ("y", 3, 2)]));
        assert_eq!(out.to_string(), "x + 3/2*y");
    }

    #[test]
    fn insertion_order_is_irrelevant() {
        let a = lc(&[("b", 1, 1), ("a", -2, 3), ("b", 1, 1)]);
        let b = lc(&[("a", -2, 3), ("b", 2, 1)]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "-2/3*a + 2*b");
    }

    #[test]
    fn bilinear_on_basis_is_f() {
        let f = |x: &&'static str, y: &&'static str| -> Result<LinComb<String>, ()> {
            Ok(LinComb::basis(format!("{x}{y}")))
        };
        let out = bilinear(f, &LinComb::basis("x"), &LinComb::basis("y")).unwrap();
        assert_eq!(out, LinComb::basis("xy".to_string()));
        let out = bilinear(f, &lc(&[("u", 2, 1)]), &lc(&[("x", 1, 1), ("y", 1, 1)])).unwrap();
        assert_eq!(out.coeff(&"ux".to_string()), int(2));
        assert_eq!(out.coeff(&"uy".to_string()), int(2));
    }

    #[test]
    fn bilinear_propagates_errors() {
        let f = |_: &&'static str, _: &&'static str| -> Result<LinComb<String>, &'static str> {
            Err("boom")
        };
        assert_eq!(
            bilinear(f, &LinComb::basis("x"), &LinComb::basis("y")),
            Err("boom")
        );
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3/2"), Some(ratio(3, 2)));
        assert_eq!(parse_rational("-1"), Some(int(-1)));
        assert_eq!(parse_rational("0"), Some(int(0)));
        assert_eq!(parse_rational("4/-6"), Some(ratio(-2, 3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_lc() -> impl Strategy<Value = LinComb<u8>> {
            proptest::collection::vec((0u8..6, -5i64..5, 1i64..4), 0..8).prop_map(|v| {
                LinComb::from_terms(v.into_iter().map(|(b, n, d)| (b, ratio(n, d))))
            })
        }

        proptest! {
            #[test]
            fn addition_is_associative(a in arb_lc(), b in arb_lc(), c in arb_lc()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            }

            #[test]
            fn addition_is_commutative(a in arb_lc(), b in arb_lc()) {
                prop_assert_eq!(&a + &b, &b + &a);
            }

            #[test]
            fn canonical_form_is_a_fixed_point(a in arb_lc()) {
                let again = LinComb::from_terms(a.iter().map(|(b, c)| (*b, c.clone())));
                prop_assert_eq!(&again, &a);
                prop_assert!(a.iter().all(|(_, c)| !c.is_zero()));
            }
        }
    }
}
