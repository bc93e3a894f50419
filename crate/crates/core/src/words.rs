//! Bracketed words and the Rota-Baxter family word basis.
//!
//! A [`Word`] is a finite sequence of letters and typed brackets `⌊w⌋_ω`.
//! The words in which no two brackets are adjacent at any nesting level
//! (certified as [`RbWord`]) form a basis of the free Rota-Baxter family
//! algebra. Two independent routes compute products in that basis:
//!
//! * [`nf_product`] recurses on the boundary factors exactly like the tree
//!   product, never leaving the basis;
//! * [`rewrite_nf`] multiplies naively by concatenation and then rewrites
//!   `⌊x⌋_α⌊y⌋_β → ⌊⌊x⌋_α y⌋_{αβ} + ⌊x⌊y⌋_β⌋_{αβ} + λ⌊xy⌋_{αβ}` wherever
//!   the pattern occurs, until nothing reducible is left.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficients::{LinComb, Rational};
use crate::error::{Error, Result};
use crate::rbfa::{concat_product, RbfaContext};
use crate::semigroup::OmegaElem;
use crate::symbol::Symbol;
use crate::trees::{Branch, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Letter(Symbol),
    Bracket(Arc<Word>, OmegaElem),
}

impl Factor {
    pub fn is_bracket(&self) -> bool {
        matches!(self, Factor::Bracket(..))
    }

    pub fn bracket(inner: Word, omega: OmegaElem) -> Factor {
        Factor::Bracket(Arc::new(inner), omega)
    }
}

/// A bracketed word; the empty factor list is the identity word `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    factors: Vec<Factor>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordStats {
    /// Maximal bracket nesting; 0 for bracket-free words. Plain words sit in
    /// the first level of the bracketed-word filtration, so the filtration
    /// index is `nesting + 1`.
    pub nesting: usize,
    /// Number of top-level factors; 0 for the identity word.
    pub breadth: usize,
}

impl Word {
    pub fn one() -> Word {
        Word::default()
    }

    pub fn from_factors(factors: Vec<Factor>) -> Word {
        Word { factors }
    }

    /// The bracket-free word `x_1 ⋯ x_n`.
    pub fn letters<S: Into<Symbol>, I: IntoIterator<Item = S>>(letters: I) -> Word {
        Word {
            factors: letters.into_iter().map(|x| Factor::Letter(x.into())).collect(),
        }
    }

    /// `⌊self⌋_ω` as a one-factor word.
    pub fn bracketed(&self, omega: &OmegaElem) -> Word {
        Word {
            factors: vec![Factor::bracket(self.clone(), omega.clone())],
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Free-monoid concatenation in the bracketed-word monoid.
    pub fn concat(&self, other: &Word) -> Word {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        factors.extend_from_slice(&self.factors);
        factors.extend_from_slice(&other.factors);
        Word { factors }
    }

    pub fn stats(&self) -> WordStats {
        WordStats {
            nesting: self.nesting(),
            breadth: self.factors.len(),
        }
    }

    fn nesting(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Letter(_) => 0,
                Factor::Bracket(w, _) => 1 + w.nesting(),
            })
            .max()
            .unwrap_or(0)
    }

    /// Number of letters at all nesting levels.
    pub fn letter_count(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Letter(_) => 1,
                Factor::Bracket(w, _) => w.letter_count(),
            })
            .sum()
    }

    /// True iff no two brackets are adjacent at any nesting level.
    pub fn is_rb_word(&self) -> bool {
        self.factors
            .windows(2)
            .all(|pair| !(pair[0].is_bracket() && pair[1].is_bracket()))
            && self.factors.iter().all(|f| match f {
                Factor::Letter(_) => true,
                Factor::Bracket(w, _) => w.is_rb_word(),
            })
    }
}

/// A word certified to contain no adjacent brackets at any level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RbWord(Word);

impl RbWord {
    pub fn certify(w: Word) -> Result<RbWord> {
        if w.is_rb_word() {
            Ok(RbWord(w))
        } else {
            Err(Error::NotRbWord(format!("{w}")))
        }
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

/// `φ`: the tree read slot by slot, each internal edge becoming a bracket
/// typed by the edge and each angle a letter.
pub fn phi(t: &Tree) -> RbWord {
    RbWord(phi_word(t))
}

fn phi_word(t: &Tree) -> Word {
    let mut factors = Vec::with_capacity(2 * t.root_arity());
    for (i, b) in t.branches().iter().enumerate() {
        if i > 0 {
            factors.push(Factor::Letter(t.angles()[i - 1].clone()));
        }
        if let Branch::Edge(w, child) = b {
            factors.push(Factor::bracket(phi_word(child), w.clone()));
        }
    }
    Word { factors }
}

/// `φ` extended linearly.
pub fn phi_lc(a: &LinComb<Tree>) -> LinComb<Word> {
    a.map_basis(phi_word)
}

/// `ψ`, the inverse of [`phi`]: letters-only words become corollas, a single
/// bracket becomes `B⁺`, and longer words split as `ψ(w_1) ⋄ ψ(w_2⋯w_n)`.
/// On certified words that product never meets two edges at its boundary, so
/// it is always a single tree; anything else is reported as an error.
pub fn psi(w: &RbWord) -> Result<Tree> {
    psi_word(w.word())
}

fn psi_word(w: &Word) -> Result<Tree> {
    if w.factors.iter().all(|f| !f.is_bracket()) {
        let letters = w.factors.iter().map(|f| match f {
            Factor::Letter(x) => x.clone(),
            Factor::Bracket(..) => unreachable!(),
        });
        return Ok(Tree::corolla(letters));
    }
    match w.factors.as_slice() {
        [Factor::Bracket(inner, omega)] => Ok(psi_word(inner)?.graft_root(omega)),
        [first, rest @ ..] => {
            let head = psi_word(&Word::from_factors(vec![first.clone()]))?;
            let tail = psi_word(&Word::from_factors(rest.to_vec()))?;
            concat_product(&head, &tail).ok_or_else(|| Error::NotRbWord(format!("{w}")))
        }
        [] => unreachable!("the empty word is letters-only"),
    }
}

/// Splits `u · v` at the boundary factors when both are brackets.
fn split_boundary<'a>(u: &'a Word, v: &'a Word) -> Option<(&'a Word, &'a OmegaElem, &'a Word, &'a OmegaElem)> {
    match (u.factors.last(), v.factors.first()) {
        (Some(Factor::Bracket(a, alpha)), Some(Factor::Bracket(b, beta))) => Some((a, alpha, b, beta)),
        _ => None,
    }
}

/// Product of two basis words in the Rota-Baxter family word basis.
pub fn nf_product(ctx: &RbfaContext, u: &RbWord, v: &RbWord) -> Result<LinComb<Word>> {
    nf_product_words(ctx, u.word(), v.word())
}

fn nf_product_words(ctx: &RbfaContext, u: &Word, v: &Word) -> Result<LinComb<Word>> {
    let Some((a, alpha, b, beta)) = split_boundary(u, v) else {
        return Ok(LinComb::basis(u.concat(v)));
    };
    let mut inner = nf_product_words(ctx, &a.bracketed(alpha), b)?;
    inner += &nf_product_words(ctx, a, &b.bracketed(beta))?;
    if !ctx.weight.is_zero() {
        inner.add_scaled(&nf_product_words(ctx, a, b)?, &ctx.weight);
    }
    let ab = alpha.mul(beta)?;
    let head = &u.factors[..u.factors.len() - 1];
    let tail = &v.factors[1..];
    Ok(inner.map_basis(|s| {
        let mut factors = Vec::with_capacity(head.len() + 1 + tail.len());
        factors.extend_from_slice(head);
        factors.push(Factor::bracket(s.clone(), ab.clone()));
        factors.extend_from_slice(tail);
        Word { factors }
    }))
}

/// [`nf_product`] extended bilinearly; every basis word of both inputs must
/// be certified.
pub fn nf_product_lc(ctx: &RbfaContext, a: &LinComb<Word>, b: &LinComb<Word>) -> Result<LinComb<Word>> {
    for w in a.basis_elements().chain(b.basis_elements()) {
        if !w.is_rb_word() {
            return Err(Error::NotRbWord(format!("{w}")));
        }
    }
    crate::coefficients::bilinear(|u, v| nf_product_words(ctx, u, v), a, b)
}

/// Normal form of an arbitrary combination of words, computed structurally:
/// bracket contents first, then the factors multiplied left to right with
/// [`nf_product`].
pub fn normalize(ctx: &RbfaContext, e: &LinComb<Word>) -> Result<LinComb<Word>> {
    e.map_linear(|w| normalize_word(ctx, w))
}

fn normalize_word(ctx: &RbfaContext, w: &Word) -> Result<LinComb<Word>> {
    let mut acc = LinComb::basis(Word::one());
    for f in &w.factors {
        let factor = match f {
            Factor::Letter(_) => LinComb::basis(Word::from_factors(vec![f.clone()])),
            Factor::Bracket(inner, omega) => normalize_word(ctx, inner)?.map_basis(|s| s.bracketed(omega)),
        };
        acc = crate::coefficients::bilinear(|u, v| nf_product_words(ctx, u, v), &acc, &factor)?;
    }
    Ok(acc)
}

/// Which redex the naive rewriter contracts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Uniformly random redex from a seeded generator.
    Random(u64),
}

/// Location of a redex: the bracket path down to the factor list and the
/// index of the first of the two adjacent brackets.
#[derive(Debug, Clone)]
struct Redex {
    path: Vec<usize>,
    index: usize,
}

/// Redexes in order of their textual start position.
fn redexes(w: &Word, path: &mut Vec<usize>, out: &mut Vec<Redex>) {
    for (i, f) in w.factors.iter().enumerate() {
        if f.is_bracket() && w.factors.get(i + 1).is_some_and(Factor::is_bracket) {
            out.push(Redex {
                path: path.clone(),
                index: i,
            });
        }
        if let Factor::Bracket(inner, _) = f {
            path.push(i);
            redexes(inner, path, out);
            path.pop();
        }
    }
}

/// Contracts one redex, returning the (at most three) resulting words with
/// their coefficients.
fn contract(ctx: &RbfaContext, w: &Word, path: &[usize], index: usize) -> Result<Vec<(Word, Rational)>> {
    if let [head, rest @ ..] = path {
        let Factor::Bracket(inner, omega) = &w.factors[*head] else {
            unreachable!("redex paths only pass through brackets")
        };
        return contract(ctx, inner, rest, index).map(|words| {
            words
                .into_iter()
                .map(|(new_inner, c)| {
                    let mut factors = w.factors.clone();
                    factors[*head] = Factor::bracket(new_inner, omega.clone());
                    (Word { factors }, c)
                })
                .collect()
        });
    }
    let (Factor::Bracket(x, alpha), Factor::Bracket(y, beta)) = (&w.factors[index], &w.factors[index + 1]) else {
        unreachable!("redex index points at two brackets")
    };
    let ab = alpha.mul(beta)?;
    let one = Rational::from_integer(1.into());
    let mut replacements = vec![
        (x.bracketed(alpha).concat(y), one.clone()),
        (x.concat(&y.bracketed(beta)), one),
    ];
    if !ctx.weight.is_zero() {
        replacements.push((x.concat(y), ctx.weight.clone()));
    }
    Ok(replacements
        .into_iter()
        .map(|(inner, c)| {
            let mut factors = Vec::with_capacity(w.factors.len() - 1);
            factors.extend_from_slice(&w.factors[..index]);
            factors.push(Factor::bracket(inner, ab.clone()));
            factors.extend_from_slice(&w.factors[index + 2..]);
            (Word { factors }, c)
        })
        .collect())
}

/// Rewrites `e` to a combination of certified words by repeatedly
/// contracting `⌊x⌋_α⌊y⌋_β` patterns. Each contraction counts as one step;
/// exceeding `max_steps` is reported as an error.
pub fn rewrite_nf(
    ctx: &RbfaContext,
    e: &LinComb<Word>,
    strategy: Strategy,
    max_steps: usize,
) -> Result<LinComb<Word>> {
    if max_steps == 0 {
        return Err(Error::Domain("max_steps must be positive".into()));
    }
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut current = e.clone();
    let mut steps = 0usize;
    loop {
        let mut found = None;
        for (w, c) in current.iter() {
            let mut list = Vec::new();
            redexes(w, &mut Vec::new(), &mut list);
            if !list.is_empty() {
                found = Some((w.clone(), c.clone(), list));
                break;
            }
        }
        let Some((w, c, list)) = found else {
            return Ok(current);
        };
        if steps == max_steps {
            return Err(Error::RewriteExhausted(max_steps));
        }
        steps += 1;
        let pick = match (strategy, rng.as_mut()) {
            (Strategy::Leftmost, _) => &list[0],
            (Strategy::Rightmost, _) => &list[list.len() - 1],
            (Strategy::Random(_), Some(rng)) => &list[rng.gen_range(0..list.len())],
            (Strategy::Random(_), None) => unreachable!(),
        };
        let replacement = contract(ctx, &w, &pick.path, pick.index)?;
        current.add_term(w, -c.clone());
        for (nw, k) in replacement {
            current.add_term(nw, &c * &k);
        }
    }
}
