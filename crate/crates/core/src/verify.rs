//! Exhaustive and seeded property suites over bounded universes of trees and
//! words. Each suite returns the number of cases it examined and, on
//! failure, the first counterexample in canonical order, written in the
//! text grammar so it can be replayed on the command line.
//!
//! Cases are evaluated in parallel; the reported counterexample is always
//! the first failing case of the sequential order.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coefficients::{bilinear, int, ratio, LinComb, Rational};
use crate::error::{Error, Result};
use crate::familyops::{dend_op, trid_op, DendKind, TridKind};
use crate::rbfa::{InducedKind, LaurentPoly, RbfaContext};
use crate::semigroup::{OmegaElem, SemigroupSpec};
use crate::symbol::Symbol;
use crate::textio::{format_lincomb, format_tree, format_word, parse_tree, parse_word};
use crate::trees::{enumerate_up_to, Branch, Tree, TreeClassFilter};
use crate::words::{nf_product, phi, psi, rewrite_nf, Factor, RbWord, Strategy, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Assoc,
    Rbf,
    Bijection,
    Hom,
    Dend,
    Trid,
    Closure,
    Laurent,
    Grading,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Assoc,
        Suite::Rbf,
        Suite::Bijection,
        Suite::Hom,
        Suite::Dend,
        Suite::Trid,
        Suite::Closure,
        Suite::Laurent,
        Suite::Grading,
        Suite::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Assoc => "assoc",
            Suite::Rbf => "rbf",
            Suite::Bijection => "bijection",
            Suite::Hom => "hom",
            Suite::Dend => "dend",
            Suite::Trid => "trid",
            Suite::Closure => "closure",
            Suite::Laurent => "laurent",
            Suite::Grading => "grading",
            Suite::Roundtrip => "roundtrip",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown suite `{s}`")))
    }
}

/// Sizes of the bounded universes the suites range over.
#[derive(Debug, Clone)]
pub struct Scale {
    /// General trees: angle bound and depth bound.
    pub max_angles: usize,
    pub max_depth: usize,
    /// Binary trees for the dendriform suite, by angle count.
    pub dend_angles: usize,
    /// Schröder trees for the tridendriform suite, by angle count.
    pub trid_angles: usize,
    /// Schröder trees for the scaled-dot variant, by angle count.
    pub scaled_angles: usize,
    /// Certified words for the bijection suite.
    pub word_nesting: usize,
    pub word_breadth: usize,
    pub random_word_pairs: usize,
    pub laurent_samples: usize,
    pub roundtrip_samples: usize,
}

impl Default for Scale {
    fn default() -> Self {
        Self {
            max_angles: 2,
            max_depth: 2,
            dend_angles: 3,
            trid_angles: 3,
            scaled_angles: 3,
            word_nesting: 2,
            word_breadth: 3,
            random_word_pairs: 200,
            laurent_samples: 1000,
            roundtrip_samples: 500,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckParams {
    pub spec: SemigroupSpec,
    /// Swept in addition to the weights each suite always covers.
    pub weight: Rational,
    pub alphabet: Vec<Symbol>,
    pub seed: u64,
    pub scale: Scale,
}

impl CheckParams {
    pub fn new(spec: SemigroupSpec, weight: Rational) -> Self {
        Self {
            spec,
            weight,
            alphabet: vec![Symbol::new("x")],
            seed: 2024,
            scale: Scale::default(),
        }
    }

    fn weights(&self, fixed: &[Rational]) -> Vec<Rational> {
        let mut out = fixed.to_vec();
        if !out.contains(&self.weight) {
            out.push(self.weight.clone());
        }
        out
    }

    fn ctx(&self, weight: &Rational) -> RbfaContext {
        RbfaContext::new(self.spec.clone(), weight.clone())
    }

    fn carrier(&self) -> Vec<OmegaElem> {
        self.spec.carrier()
    }

    fn omega_pairs(&self) -> Vec<(OmegaElem, OmegaElem)> {
        let c = self.carrier();
        c.iter()
            .flat_map(|a| c.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }

    /// General trees with bounded angles and depth.
    pub fn universe(&self) -> Result<Vec<Tree>> {
        enumerate_up_to(
            self.scale.max_angles,
            &self.alphabet,
            &self.carrier(),
            Some(self.scale.max_depth),
            TreeClassFilter::General,
        )
    }

    fn class_trees(&self, angles: usize, class: TreeClassFilter) -> Result<Vec<Tree>> {
        enumerate_up_to(angles, &self.alphabet, &self.carrier(), None, class)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{}: ok ({} cases)", self.suite, self.cases),
            Some(c) => write!(f, "{}: FAILED after {} cases\n  {c}", self.suite, self.cases),
        }
    }
}

/// Accumulates case counts across the parts of one suite and keeps the
/// first counterexample.
struct Tally {
    suite: Suite,
    cases: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            cases: 0,
            counterexample: None,
        }
    }

    fn done(&self) -> bool {
        self.counterexample.is_some()
    }

    /// Runs `check` on every case in parallel unless an earlier part failed.
    fn run<C: Sync>(&mut self, cases: &[C], check: impl Fn(&C) -> Option<String> + Send + Sync) {
        if self.done() {
            return;
        }
        self.cases += cases.len();
        self.counterexample = cases.par_iter().find_map_first(check);
    }

    fn report(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

/// Turns an evaluation error into a counterexample message.
fn failing(what: impl FnOnce() -> String, r: Result<Option<String>>) -> Option<String> {
    match r {
        Ok(v) => v,
        Err(e) => Some(format!("{}: error: {e}", what())),
    }
}

fn lc(t: &Tree) -> LinComb<Tree> {
    LinComb::basis(t.clone())
}

fn unequal<B: Ord + Clone + fmt::Display>(lhs: &LinComb<B>, rhs: &LinComb<B>) -> Option<String> {
    (lhs != rhs).then(|| format!("lhs = {}; rhs = {}", format_lincomb(lhs), format_lincomb(rhs)))
}

pub fn run_suite(suite: Suite, params: &CheckParams) -> Result<SuiteReport> {
    match suite {
        Suite::Assoc => assoc(params),
        Suite::Rbf => rbf(params),
        Suite::Bijection => bijection(params),
        Suite::Hom => hom(params),
        Suite::Dend => dend(params),
        Suite::Trid => trid(params),
        Suite::Closure => closure(params),
        Suite::Laurent => laurent(params),
        Suite::Grading => grading(params),
        Suite::Roundtrip => roundtrip(params),
    }
}

pub fn run_all(params: &CheckParams) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run_suite(s, params)).collect()
}

fn base_weights() -> Vec<Rational> {
    vec![int(0), int(1), int(-1)]
}

fn rbf_weights() -> Vec<Rational> {
    vec![int(0), int(1), int(-1), ratio(3, 2)]
}

fn triples<T: Clone>(items: &[T]) -> Vec<(T, T, T)> {
    let mut out = Vec::with_capacity(items.len().pow(3));
    for a in items {
        for b in items {
            for c in items {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

fn pairs<T: Clone>(items: &[T]) -> Vec<(T, T)> {
    items
        .iter()
        .flat_map(|a| items.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

/// `(T⋄U)⋄V = T⋄(U⋄V)` on all triples of the universe.
pub fn assoc(params: &CheckParams) -> Result<SuiteReport> {
    let universe = params.universe()?;
    let cases = triples(&universe);
    let mut tally = Tally::new(Suite::Assoc);
    for w in params.weights(&base_weights()) {
        let ctx = params.ctx(&w);
        tally.run(&cases, |(t, u, v)| {
            let r = (|| {
                let left = ctx.diamond(&ctx.product(t, u)?, &lc(v))?;
                let right = ctx.diamond(&lc(t), &ctx.product(u, v)?)?;
                Ok(unequal(&left, &right))
            })();
            let what = || format!("weight {w}: T={t} U={u} V={v}");
            failing(what, r).map(|m| format!("weight {w}: T={t} U={u} V={v}: {m}"))
        });
    }
    Ok(tally.report())
}

/// `B⁺_α(T)⋄B⁺_β(U) = B⁺_{αβ}(B⁺_α(T)⋄U + T⋄B⁺_β(U) + λT⋄U)`.
pub fn rbf(params: &CheckParams) -> Result<SuiteReport> {
    let universe = params.universe()?;
    let mut cases = Vec::new();
    for (t, u) in pairs(&universe) {
        for (a, b) in params.omega_pairs() {
            cases.push((t.clone(), u.clone(), a, b));
        }
    }
    let mut tally = Tally::new(Suite::Rbf);
    for w in params.weights(&rbf_weights()) {
        let ctx = params.ctx(&w);
        tally.run(&cases, |(t, u, a, b)| {
            let what = || format!("weight {w}: alpha={a} beta={b} T={t} U={u}");
            match ctx.family_defect(a, b, &lc(t), &lc(u)) {
                Ok(d) if d.is_zero() => None,
                Ok(d) => Some(format!("{}: defect {}", what(), format_lincomb(&d))),
                Err(e) => Some(format!("{}: error: {e}", what())),
            }
        });
    }
    Ok(tally.report())
}

/// All certified words in which every factor list has at most `breadth`
/// factors and brackets nest at most `nesting` deep. Includes `1`.
pub fn certified_words(
    alphabet: &[Symbol],
    carrier: &[OmegaElem],
    nesting: usize,
    breadth: usize,
) -> Vec<Word> {
    let letters: Vec<Factor> = alphabet.iter().cloned().map(Factor::Letter).collect();
    let mut level = with_one(factor_sequences(&letters, breadth));
    for _ in 0..nesting {
        let mut factors = letters.clone();
        for w in &level {
            for omega in carrier {
                factors.push(Factor::bracket(w.clone(), omega.clone()));
            }
        }
        level = with_one(factor_sequences(&factors, breadth));
    }
    level
}

fn with_one(mut words: Vec<Word>) -> Vec<Word> {
    words.push(Word::one());
    words.sort();
    words.dedup();
    words
}

fn factor_sequences(factors: &[Factor], breadth: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<Factor>> = vec![Vec::new()];
    for _ in 0..breadth {
        let mut next = Vec::new();
        for seq in &frontier {
            for f in factors {
                if f.is_bracket() && seq.last().is_some_and(Factor::is_bracket) {
                    continue;
                }
                let mut s = seq.clone();
                s.push(f.clone());
                next.push(s);
            }
        }
        out.extend(next.iter().cloned().map(Word::from_factors));
        frontier = next;
    }
    out
}

/// `ψ∘φ = id` on the tree universe and `φ∘ψ = id` on bounded certified words.
pub fn bijection(params: &CheckParams) -> Result<SuiteReport> {
    let universe = params.universe()?;
    let words = certified_words(
        &params.alphabet,
        &params.carrier(),
        params.scale.word_nesting,
        params.scale.word_breadth,
    );
    let mut tally = Tally::new(Suite::Bijection);
    tally.run(&universe, |t| {
        let w = phi(t);
        match psi(&w) {
            Ok(back) if &back == t => None,
            Ok(back) => Some(format!("T={t}: psi(phi(T)) = {back} via {}", w.word())),
            Err(e) => Some(format!("T={t}: psi(phi(T)) failed: {e}")),
        }
    });
    tally.run(&words, |w| {
        let r = (|| {
            let cert = RbWord::certify(w.clone())?;
            let t = psi(&cert)?;
            let back = phi(&t);
            Ok((back.word() != w).then(|| format!("phi(psi(W)) = {} via {t}", back.word())))
        })();
        failing(|| format!("W={w}"), r).map(|m| format!("W={w}: {m}"))
    });
    Ok(tally.report())
}

/// Uniformly random certified word with at most `nesting` bracket levels
/// and at most `breadth` factors per level.
pub fn random_certified_word(
    rng: &mut ChaCha8Rng,
    alphabet: &[Symbol],
    carrier: &[OmegaElem],
    nesting: usize,
    breadth: usize,
) -> Word {
    let len = rng.gen_range(0..=breadth);
    let mut factors: Vec<Factor> = Vec::with_capacity(len);
    for _ in 0..len {
        let after_bracket = factors.last().is_some_and(Factor::is_bracket);
        if nesting > 0 && !after_bracket && rng.gen_bool(0.5) {
            let inner = random_certified_word(rng, alphabet, carrier, nesting - 1, breadth);
            let omega = carrier.choose(rng).expect("nonempty carrier").clone();
            factors.push(Factor::bracket(inner, omega));
        } else {
            let x = alphabet.choose(rng).expect("nonempty alphabet").clone();
            factors.push(Factor::Letter(x));
        }
    }
    Word::from_factors(factors)
}

/// `φ(T⋄U) = φ(T)⋄̄φ(U)` on pairs from the universe, and agreement of the
/// structural product with the naive rewriter on random word pairs.
pub fn hom(params: &CheckParams) -> Result<SuiteReport> {
    let universe = params.universe()?;
    let cases = pairs(&universe);
    let mut tally = Tally::new(Suite::Hom);
    let weights = params.weights(&rbf_weights());
    for w in &weights {
        let ctx = params.ctx(w);
        tally.run(&cases, |(t, u)| {
            let r = (|| {
                let lhs = ctx.product(t, u)?.map_basis(|s| phi(s).into_word());
                let rhs = nf_product(&ctx, &phi(t), &phi(u))?;
                Ok(unequal(&lhs, &rhs))
            })();
            failing(|| format!("weight {w}: T={t} U={u}"), r)
                .map(|m| format!("weight {w}: T={t} U={u}: {m}"))
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let carrier = params.carrier();
    let word_pairs: Vec<(Word, Word)> = (0..params.scale.random_word_pairs)
        .map(|_| {
            let mut draw = || random_certified_word(&mut rng, &params.alphabet, &carrier, 2, 3);
            (draw(), draw())
        })
        .collect();
    let max_steps = 10_000;
    for w in &weights {
        let ctx = params.ctx(w);
        tally.run(&word_pairs, |(u, v)| {
            let r = (|| {
                let nf = nf_product(&ctx, &RbWord::certify(u.clone())?, &RbWord::certify(v.clone())?)?;
                let raw = LinComb::basis(u.concat(v));
                for strategy in [Strategy::Leftmost, Strategy::Rightmost] {
                    let rewritten = rewrite_nf(&ctx, &raw, strategy, max_steps)?;
                    if let Some(m) = unequal(&nf, &rewritten) {
                        return Ok(Some(format!("{strategy:?}: {m}")));
                    }
                }
                Ok(None)
            })();
            failing(|| format!("weight {w}: U={u} V={v}"), r)
                .map(|m| format!("weight {w}: U={u} V={v}: {m}"))
        });
    }
    Ok(tally.report())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    Prec,
    Succ,
    Dot,
}

/// A family of `(≺_ω, ≻_ω, ·)` given on pairs of trees.
trait BasisOps: Sync {
    fn apply(&self, op: Op, w: Option<&OmegaElem>, t: &Tree, u: &Tree) -> Result<LinComb<Tree>>;
}

struct Dendriform<'a>(&'a RbfaContext);

impl BasisOps for Dendriform<'_> {
    fn apply(&self, op: Op, w: Option<&OmegaElem>, t: &Tree, u: &Tree) -> Result<LinComb<Tree>> {
        let kind = match op {
            Op::Prec => DendKind::Prec,
            Op::Succ => DendKind::Succ,
            Op::Dot => return Err(Error::Undefined("dendriform families have no dot".into())),
        };
        let w = w.expect("indexed operation");
        dend_op(self.0, kind, w, &t.clone().into(), &u.clone().into())
    }
}

struct Tridendriform<'a>(&'a RbfaContext);

impl BasisOps for Tridendriform<'_> {
    fn apply(&self, op: Op, w: Option<&OmegaElem>, t: &Tree, u: &Tree) -> Result<LinComb<Tree>> {
        let kind = match op {
            Op::Prec => TridKind::Prec,
            Op::Succ => TridKind::Succ,
            Op::Dot => TridKind::Dot,
        };
        trid_op(self.0, kind, w, &t.clone().into(), &u.clone().into())
    }
}

/// `≺′_ω`, `≻′_ω` and the weight-scaled dot `λ⋄`.
struct Induced<'a>(&'a RbfaContext);

impl BasisOps for Induced<'_> {
    fn apply(&self, op: Op, w: Option<&OmegaElem>, t: &Tree, u: &Tree) -> Result<LinComb<Tree>> {
        let ctx = self.0;
        match op {
            Op::Prec => ctx.induced_op(InducedKind::Prec, w, &lc(t), &lc(u)),
            Op::Succ => ctx.induced_op(InducedKind::Succ, w, &lc(t), &lc(u)),
            Op::Dot => ctx.dot_scaled(&lc(t), &lc(u)),
        }
    }
}

type MemoKey = (Op, Option<OmegaElem>, Tree, Tree);

/// Bilinear extension of a [`BasisOps`]. Values on pairs of small trees
/// (the operands themselves) are cached, so that the inner products shared
/// between axiom instances are computed once.
struct Memo<'a> {
    ops: Box<dyn BasisOps + 'a>,
    small: usize,
    cache: Mutex<HashMap<MemoKey, LinComb<Tree>>>,
}

impl<'a> Memo<'a> {
    fn new(ops: impl BasisOps + 'a, small: usize) -> Self {
        Self {
            ops: Box::new(ops),
            small,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn basis(&self, op: Op, w: Option<&OmegaElem>, t: &Tree, u: &Tree) -> Result<LinComb<Tree>> {
        if t.angle_count() > self.small || u.angle_count() > self.small {
            return self.ops.apply(op, w, t, u);
        }
        let key = (op, w.cloned(), t.clone(), u.clone());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let value = self.ops.apply(op, w, t, u)?;
        self.cache.lock().expect("cache lock").insert(key, value.clone());
        Ok(value)
    }

    fn apply(&self, op: Op, w: Option<&OmegaElem>, a: &LinComb<Tree>, b: &LinComb<Tree>) -> Result<LinComb<Tree>> {
        bilinear(|t, u| self.basis(op, w, t, u), a, b)
    }

    fn prec(&self, w: &OmegaElem, a: &LinComb<Tree>, b: &LinComb<Tree>) -> Result<LinComb<Tree>> {
        self.apply(Op::Prec, Some(w), a, b)
    }

    fn succ(&self, w: &OmegaElem, a: &LinComb<Tree>, b: &LinComb<Tree>) -> Result<LinComb<Tree>> {
        self.apply(Op::Succ, Some(w), a, b)
    }

    fn dot(&self, a: &LinComb<Tree>, b: &LinComb<Tree>) -> Result<LinComb<Tree>> {
        self.apply(Op::Dot, None, a, b)
    }
}

fn sum(parts: &[LinComb<Tree>]) -> LinComb<Tree> {
    let mut out = LinComb::zero();
    for p in parts {
        out += p;
    }
    out
}

/// Index (1-based) and both sides of the first failing dendriform axiom.
fn dend_axioms(
    ops: &Memo,
    x: &LinComb<Tree>,
    y: &LinComb<Tree>,
    z: &LinComb<Tree>,
    a: &OmegaElem,
    b: &OmegaElem,
) -> Result<Option<String>> {
    let ab = a.mul(b)?;
    let sides = [
        (
            ops.prec(b, &ops.prec(a, x, y)?, z)?,
            ops.prec(&ab, x, &sum(&[ops.prec(b, y, z)?, ops.succ(a, y, z)?]))?,
        ),
        (ops.prec(b, &ops.succ(a, x, y)?, z)?, ops.succ(a, x, &ops.prec(b, y, z)?)?),
        (
            ops.succ(&ab, &sum(&[ops.prec(b, x, y)?, ops.succ(a, x, y)?]), z)?,
            ops.succ(a, x, &ops.succ(b, y, z)?)?,
        ),
    ];
    Ok(first_failure(&sides))
}

fn trid_axioms(
    ops: &Memo,
    x: &LinComb<Tree>,
    y: &LinComb<Tree>,
    z: &LinComb<Tree>,
    a: &OmegaElem,
    b: &OmegaElem,
) -> Result<Option<String>> {
    let ab = a.mul(b)?;
    let sides = [
        (
            ops.prec(b, &ops.prec(a, x, y)?, z)?,
            ops.prec(&ab, x, &sum(&[ops.prec(b, y, z)?, ops.succ(a, y, z)?, ops.dot(y, z)?]))?,
        ),
        (ops.prec(b, &ops.succ(a, x, y)?, z)?, ops.succ(a, x, &ops.prec(b, y, z)?)?),
        (
            ops.succ(&ab, &sum(&[ops.prec(b, x, y)?, ops.succ(a, x, y)?, ops.dot(x, y)?]), z)?,
            ops.succ(a, x, &ops.succ(b, y, z)?)?,
        ),
        (ops.dot(&ops.succ(a, x, y)?, z)?, ops.succ(a, x, &ops.dot(y, z)?)?),
        (ops.dot(&ops.prec(a, x, y)?, z)?, ops.dot(x, &ops.succ(a, y, z)?)?),
        (ops.prec(a, &ops.dot(x, y)?, z)?, ops.dot(x, &ops.prec(a, y, z)?)?),
        (ops.dot(&ops.dot(x, y)?, z)?, ops.dot(x, &ops.dot(y, z)?)?),
    ];
    Ok(first_failure(&sides))
}

fn first_failure(sides: &[(LinComb<Tree>, LinComb<Tree>)]) -> Option<String> {
    sides
        .iter()
        .enumerate()
        .find_map(|(i, (l, r))| unequal(l, r).map(|m| format!("axiom {}: {m}", i + 1)))
}

type AxiomFn = fn(
    &Memo,
    &LinComb<Tree>,
    &LinComb<Tree>,
    &LinComb<Tree>,
    &OmegaElem,
    &OmegaElem,
) -> Result<Option<String>>;

fn axiom_cases(
    tally: &mut Tally,
    params: &CheckParams,
    trees: &[Tree],
    ops: &Memo,
    axioms: AxiomFn,
    label: &str,
) {
    let omega_pairs = params.omega_pairs();
    let mut cases = Vec::new();
    for (x, y, z) in triples(trees) {
        for (a, b) in &omega_pairs {
            cases.push((x.clone(), y.clone(), z.clone(), a.clone(), b.clone()));
        }
    }
    tally.run(&cases, |(x, y, z, a, b)| {
        let r = axioms(ops, &lc(x), &lc(y), &lc(z), a, b);
        let what = || format!("{label}: alpha={a} beta={b} x={x} y={y} z={z}");
        failing(what, r).map(|m| format!("{}: {m}", what()))
    });
}

/// Intrinsic and induced operations agree on every pair and index.
fn embedding_cases(
    tally: &mut Tally,
    params: &CheckParams,
    trees: &[Tree],
    intrinsic: &Memo,
    induced: &Memo,
    with_dot: bool,
) {
    let carrier = params.carrier();
    let cases = pairs(trees);
    tally.run(&cases, |(t, u)| {
        let r = (|| {
            let (t, u) = (lc(t), lc(u));
            for w in &carrier {
                if let Some(m) = unequal(&intrinsic.prec(w, &t, &u)?, &induced.prec(w, &t, &u)?) {
                    return Ok(Some(format!("prec omega={w}: {m}")));
                }
                if let Some(m) = unequal(&intrinsic.succ(w, &t, &u)?, &induced.succ(w, &t, &u)?) {
                    return Ok(Some(format!("succ omega={w}: {m}")));
                }
            }
            if with_dot {
                if let Some(m) = unequal(&intrinsic.dot(&t, &u)?, &induced.dot(&t, &u)?) {
                    return Ok(Some(format!("dot: {m}")));
                }
            }
            Ok(None)
        })();
        failing(|| format!("embedding: T={t} U={u}"), r)
            .map(|m| format!("embedding: T={t} U={u}: {m}"))
    });
}

/// Dendriform axioms for the recursive operations, agreement with the
/// induced operations at weight 0, and generation from one-angle trees.
pub fn dend(params: &CheckParams) -> Result<SuiteReport> {
    let ctx = params.ctx(&int(0));
    let trees = params.class_trees(params.scale.dend_angles, TreeClassFilter::Binary)?;
    let mut tally = Tally::new(Suite::Dend);
    let (intrinsic, induced) = (Memo::new(Dendriform(&ctx), params.scale.dend_angles), Memo::new(Induced(&ctx), params.scale.dend_angles));
    axiom_cases(&mut tally, params, &trees, &intrinsic, dend_axioms, "dendriform");
    axiom_cases(&mut tally, params, &trees, &induced, dend_axioms, "induced dendriform");
    embedding_cases(&mut tally, params, &trees, &intrinsic, &induced, false);
    if !tally.done() {
        let (cases, failure) = generation(params, &ctx, &trees)?;
        tally.cases += cases;
        tally.counterexample = failure;
    }
    Ok(tally.report())
}

/// Every binary tree of each grading is a linear combination of
/// dendriform products of lower gradings, starting from the one-angle
/// trees. Checked as a rank computation per grading.
fn generation(params: &CheckParams, ctx: &RbfaContext, trees: &[Tree]) -> Result<(usize, Option<String>)> {
    let by_grade = |n: usize| -> Vec<Tree> { trees.iter().filter(|t| t.angle_count() == n).cloned().collect() };
    let mut cases = 0;
    for n in 2..=params.scale.dend_angles {
        let target = by_grade(n);
        let mut products = Vec::new();
        for i in 1..n {
            for t in by_grade(i) {
                for u in by_grade(n - i) {
                    for w in params.carrier() {
                        for kind in [DendKind::Prec, DendKind::Succ] {
                            products.push(dend_op(ctx, kind, &w, &t.clone().into(), &u.clone().into())?);
                        }
                    }
                }
            }
        }
        cases += products.len();
        let rank = rank(&products, &target);
        if rank < target.len() {
            return Ok((
                cases,
                Some(format!(
                    "generation: products of lower gradings span rank {rank} of {} binary trees with {n} angles",
                    target.len()
                )),
            ));
        }
    }
    Ok((cases, None))
}

/// Rank over ℚ of `vectors` written in the basis `basis`.
fn rank(vectors: &[LinComb<Tree>], basis: &[Tree]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| basis.iter().map(|t| v.coeff(t)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..basis.len() {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = Rational::one() / rows[rank][col].clone();
        let pivot_row: Vec<Rational> = rows[rank].iter().map(|c| c * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (c, p) in row.iter_mut().zip(&pivot_row) {
                    *c -= &f * p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Tridendriform axioms for the recursive operations, agreement with the
/// induced operations at weight 1, and the scaled-dot variant at weights
/// 3/2 and −1.
pub fn trid(params: &CheckParams) -> Result<SuiteReport> {
    let ctx = params.ctx(&int(1));
    let trees = params.class_trees(params.scale.trid_angles, TreeClassFilter::Schroeder)?;
    let mut tally = Tally::new(Suite::Trid);
    let (intrinsic, induced) = (Memo::new(Tridendriform(&ctx), params.scale.trid_angles), Memo::new(Induced(&ctx), params.scale.trid_angles));
    axiom_cases(&mut tally, params, &trees, &intrinsic, trid_axioms, "tridendriform");
    embedding_cases(&mut tally, params, &trees, &intrinsic, &induced, true);
    let scaled_trees = params.class_trees(params.scale.scaled_angles, TreeClassFilter::Schroeder)?;
    for w in [ratio(3, 2), int(-1)] {
        let scaled = params.ctx(&w);
        axiom_cases(
            &mut tally,
            params,
            &scaled_trees,
            &Memo::new(Induced(&scaled), params.scale.scaled_angles),
            trid_axioms,
            &format!("scaled dot, weight {w}"),
        );
    }
    Ok(tally.report())
}

/// Induced operations keep binary trees binary at weight 0 and Schröder
/// trees Schröder at weight 1.
pub fn closure(params: &CheckParams) -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Closure);
    let carrier = params.carrier();
    for (weight, class) in [(0, TreeClassFilter::Binary), (1, TreeClassFilter::Schroeder)] {
        let ctx = params.ctx(&int(weight));
        let angles = match class {
            TreeClassFilter::Binary => params.scale.dend_angles,
            _ => params.scale.trid_angles,
        };
        let trees = params.class_trees(angles, class)?;
        let inside = |t: &Tree| {
            let c = t.classify();
            if class == TreeClassFilter::Binary { c.is_binary } else { c.is_schroeder }
        };
        tally.run(&pairs(&trees), |(t, u)| {
            let r = (|| {
                let (a, b) = (lc(t), lc(u));
                let mut outputs = Vec::new();
                for w in &carrier {
                    outputs.push((format!("prec omega={w}"), ctx.induced_op(InducedKind::Prec, Some(w), &a, &b)?));
                    outputs.push((format!("succ omega={w}"), ctx.induced_op(InducedKind::Succ, Some(w), &a, &b)?));
                }
                if weight == 1 {
                    outputs.push(("dot".into(), ctx.induced_op(InducedKind::Dot, None, &a, &b)?));
                }
                Ok(outputs.into_iter().find_map(|(op, e)| {
                    e.basis_elements()
                        .find(|s| !inside(s))
                        .map(|s| format!("{op} leaves the class: {s}"))
                }))
            })();
            failing(|| format!("weight {weight}: T={t} U={u}"), r)
                .map(|m| format!("weight {weight}: T={t} U={u}: {m}"))
        });
    }
    Ok(tally.report())
}

/// Random polynomial supported in `[-3, 3]` inside the window `[-6, 6]`.
pub fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut terms = Vec::new();
    for k in -3..=3 {
        if rng.gen_bool(0.6) {
            terms.push((k, ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))));
        }
    }
    LaurentPoly::from_terms(-6, 6, terms).expect("support inside the window")
}

/// The projections `P_ω` satisfy the weight −1 family identity.
pub fn laurent(params: &CheckParams) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let cases: Vec<(LaurentPoly, LaurentPoly, i64, i64)> = (0..params.scale.laurent_samples)
        .map(|_| {
            let a = random_laurent(&mut rng);
            let b = random_laurent(&mut rng);
            (a, b, rng.gen_range(-3..=3), rng.gen_range(-3..=3))
        })
        .collect();
    let mut tally = Tally::new(Suite::Laurent);
    tally.run(&cases, |(a, b, alpha, beta)| {
        let r = (|| {
            let (pa, pb) = (a.project(*alpha), b.project(*beta));
            let lhs = pa.mul(&pb)?;
            let inner = pa.mul(b)?.add(&a.mul(&pb)?)?.sub(&a.mul(b)?)?;
            let rhs = inner.project(alpha + beta);
            Ok((lhs != rhs).then(|| format!("lhs = {lhs}; rhs = {rhs}")))
        })();
        let what = || format!("alpha={alpha} beta={beta} a={a} b={b}");
        failing(what, r).map(|m| format!("{}: {m}", what()))
    });
    Ok(tally.report())
}

/// Every term of `T⋄U` carries `angles(T) + angles(U)` angles.
pub fn grading(params: &CheckParams) -> Result<SuiteReport> {
    let universe = params.universe()?;
    let cases = pairs(&universe);
    let mut tally = Tally::new(Suite::Grading);
    for w in params.weights(&rbf_weights()) {
        let ctx = params.ctx(&w);
        tally.run(&cases, |(t, u)| {
            let expected = t.angle_count() + u.angle_count();
            let r = ctx.product(t, u).map(|p| {
                p.basis_elements()
                    .find(|s| s.angle_count() != expected)
                    .map(|s| format!("term {s} has {} angles, expected {expected}", s.angle_count()))
            });
            failing(|| format!("weight {w}: T={t} U={u}"), r)
                .map(|m| format!("weight {w}: T={t} U={u}: {m}"))
        });
    }
    Ok(tally.report())
}

/// Random tree with at most `depth` levels and at most three angles per
/// vertex.
pub fn random_tree(rng: &mut ChaCha8Rng, alphabet: &[Symbol], carrier: &[OmegaElem], depth: usize) -> Tree {
    let k = rng.gen_range(0..=3);
    let angles = (0..k)
        .map(|_| alphabet.choose(rng).expect("nonempty alphabet").clone())
        .collect();
    let branches = (0..=k)
        .map(|_| {
            if depth > 1 && rng.gen_bool(0.4) {
                let omega = carrier.choose(rng).expect("nonempty carrier").clone();
                Branch::edge(omega, random_tree(rng, alphabet, carrier, depth - 1))
            } else {
                Branch::Leaf
            }
        })
        .collect();
    Tree::new(angles, branches).expect("arity matches")
}

/// Random word, adjacent brackets allowed.
pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &[Symbol], carrier: &[OmegaElem], nesting: usize) -> Word {
    let len = rng.gen_range(0..=3);
    let factors = (0..len)
        .map(|_| {
            if nesting > 0 && rng.gen_bool(0.5) {
                let omega = carrier.choose(rng).expect("nonempty carrier").clone();
                Factor::bracket(random_word(rng, alphabet, carrier, nesting - 1), omega)
            } else {
                Factor::Letter(alphabet.choose(rng).expect("nonempty alphabet").clone())
            }
        })
        .collect();
    Word::from_factors(factors)
}

/// `parse∘format = id` on seeded random trees and words, and distinct
/// printouts for distinct trees of the universe.
pub fn roundtrip(params: &CheckParams) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let carrier = params.carrier();
    let alphabet: Vec<Symbol> = ["x", "y", "z"].into_iter().map(Symbol::new).collect();
    let trees: Vec<Tree> = (0..params.scale.roundtrip_samples)
        .map(|_| random_tree(&mut rng, &alphabet, &carrier, 4))
        .collect();
    let words: Vec<Word> = (0..params.scale.roundtrip_samples)
        .map(|_| random_word(&mut rng, &alphabet, &carrier, 3))
        .collect();
    let spec = &params.spec;
    let mut tally = Tally::new(Suite::Roundtrip);
    tally.run(&trees, |t| {
        let text = format_tree(t);
        match parse_tree(spec, &text) {
            Ok(back) if &back == t => None,
            Ok(back) => Some(format!("tree {text} parses back as {back}")),
            Err(e) => Some(format!("tree {text} does not parse: {e}")),
        }
    });
    tally.run(&words, |w| {
        let text = format_word(w);
        match parse_word(spec, &text) {
            Ok(back) if &back == w => None,
            Ok(back) => Some(format!("word {text} parses back as {back}")),
            Err(e) => Some(format!("word {text} does not parse: {e}")),
        }
    });
    if !tally.done() {
        let universe = params.universe()?;
        tally.cases += universe.len();
        let mut printed: Vec<(String, &Tree)> = universe.iter().map(|t| (format_tree(t), t)).collect();
        printed.sort();
        tally.counterexample = printed
            .windows(2)
            .find(|p| p[0].0 == p[1].0)
            .map(|p| format!("trees {:?} and {:?} share the printout {}", p[0].1, p[1].1, p[0].0));
    }
    Ok(tally.report())
}
