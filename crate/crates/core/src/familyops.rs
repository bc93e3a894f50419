//! Dendriform family operations on typed binary trees and tridendriform
//! family operations on typed Schröder trees, defined by recursion on the
//! decomposition of each tree at its root.
//!
//! Operands may carry a formal multiple of the leaf `|` as a boundary value.
//! Leaves never appear in outputs: outputs are combinations of real trees.

use num_traits::Zero;

use crate::coefficients::{LinComb, Rational};
use crate::error::{Error, Result};
use crate::rbfa::RbfaContext;
use crate::semigroup::{Omega1Elem, OmegaElem};
use crate::trees::{Branch, Tree};

/// A combination of class trees plus an optional formal leaf summand.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundarySpan {
    pub trees: LinComb<Tree>,
    pub leaf: Rational,
}

impl BoundarySpan {
    pub fn tree(t: Tree) -> Self {
        Self::from_trees(LinComb::basis(t))
    }

    pub fn from_trees(trees: LinComb<Tree>) -> Self {
        Self {
            trees,
            leaf: Rational::zero(),
        }
    }

    pub fn leaf() -> Self {
        Self {
            trees: LinComb::zero(),
            leaf: Rational::from_integer(1.into()),
        }
    }

    fn operands(&self) -> impl Iterator<Item = (Operand<'_>, &Rational)> {
        let leaf = (!self.leaf.is_zero()).then_some((Operand::Leaf, &self.leaf));
        leaf.into_iter()
            .chain(self.trees.iter().map(|(t, c)| (Operand::Tree(t), c)))
    }
}

impl From<Tree> for BoundarySpan {
    fn from(t: Tree) -> Self {
        BoundarySpan::tree(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DendKind {
    Prec,
    Succ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TridKind {
    Prec,
    Succ,
    Dot,
}

#[derive(Clone, Copy)]
enum Operand<'a> {
    Leaf,
    Tree(&'a Tree),
}

impl<'a> Operand<'a> {
    fn of(b: &'a Branch) -> Self {
        b.subtree().map_or(Operand::Leaf, Operand::Tree)
    }
}

fn require_weight(ctx: &RbfaContext, w: i64) -> Result<()> {
    if ctx.weight == Rational::from_integer(w.into()) {
        Ok(())
    } else {
        Err(Error::WeightMismatch {
            expected: w.to_string(),
            found: ctx.weight.to_string(),
        })
    }
}

fn check_operands(ctx: &RbfaContext, span: &BoundarySpan, binary: bool) -> Result<()> {
    for t in span.trees.basis_elements() {
        ctx.check_tree(t)?;
        let class = t.classify();
        let ok = if binary { class.is_binary } else { class.is_schroeder };
        if !ok {
            let name = if binary { "binary" } else { "Schröder" };
            return Err(Error::Domain(format!("operand is not a {name} tree")));
        }
    }
    Ok(())
}

fn both_leaves() -> Error {
    Error::Undefined("an operation between two leaves".into())
}

/// Dendriform family operation `a ≺_ω b` or `a ≻_ω b` (weight-0 context).
pub fn dend_op(
    ctx: &RbfaContext,
    kind: DendKind,
    omega: &OmegaElem,
    a: &BoundarySpan,
    b: &BoundarySpan,
) -> Result<LinComb<Tree>> {
    require_weight(ctx, 0)?;
    ctx.b_plus(omega, &Tree::unit())?;
    check_operands(ctx, a, true)?;
    check_operands(ctx, b, true)?;
    let w = Omega1Elem::Elem(omega.clone());
    let mut out = LinComb::zero();
    for (l, cl) in a.operands() {
        for (r, cr) in b.operands() {
            let value = match kind {
                DendKind::Prec => dprec(&w, l, r)?,
                DendKind::Succ => dsucc(&w, l, r)?,
            };
            out.add_scaled(&value, &(cl * cr));
        }
    }
    Ok(out)
}

fn typed_edge(ty: Omega1Elem, child: Tree) -> Branch {
    match ty {
        Omega1Elem::Elem(w) => Branch::edge(w, child),
        Omega1Elem::Identity => unreachable!("a product of an element of Ω with Ω¹ lies in Ω"),
    }
}

fn dprec(omega: &Omega1Elem, l: Operand, r: Operand) -> Result<LinComb<Tree>> {
    match (l, r) {
        (Operand::Leaf, Operand::Leaf) => Err(both_leaves()),
        (Operand::Leaf, Operand::Tree(_)) => Ok(LinComb::zero()),
        (Operand::Tree(t), Operand::Leaf) => Ok(LinComb::basis(t.clone())),
        (Operand::Tree(t), Operand::Tree(_)) => {
            let [tl, tr] = t.branches() else { unreachable!("binary vertex") };
            let alpha2 = tr.ty();
            let mut inner = dprec(omega, Operand::of(tr), r)?;
            inner += &dsucc(&alpha2, Operand::of(tr), r)?;
            let ty = alpha2.mul(omega)?;
            Ok(inner.map_basis(|s| {
                Tree::from_parts(t.angles().to_vec(), vec![tl.clone(), typed_edge(ty.clone(), s.clone())])
            }))
        }
    }
}

fn dsucc(omega: &Omega1Elem, l: Operand, r: Operand) -> Result<LinComb<Tree>> {
    match (l, r) {
        (Operand::Leaf, Operand::Leaf) => Err(both_leaves()),
        (Operand::Leaf, Operand::Tree(u)) => Ok(LinComb::basis(u.clone())),
        (Operand::Tree(_), Operand::Leaf) => Ok(LinComb::zero()),
        (Operand::Tree(_), Operand::Tree(u)) => {
            let [ul, ur] = u.branches() else { unreachable!("binary vertex") };
            let beta1 = ul.ty();
            let mut inner = dprec(&beta1, l, Operand::of(ul))?;
            inner += &dsucc(omega, l, Operand::of(ul))?;
            let ty = omega.mul(&beta1)?;
            Ok(inner.map_basis(|s| {
                Tree::from_parts(u.angles().to_vec(), vec![typed_edge(ty.clone(), s.clone()), ur.clone()])
            }))
        }
    }
}

/// Tridendriform family operation `a ≺_ω b`, `a ≻_ω b` or `a · b`
/// (weight-1 context). `omega` must be present exactly for `≺` and `≻`.
pub fn trid_op(
    ctx: &RbfaContext,
    kind: TridKind,
    omega: Option<&OmegaElem>,
    a: &BoundarySpan,
    b: &BoundarySpan,
) -> Result<LinComb<Tree>> {
    require_weight(ctx, 1)?;
    let w = match (kind, omega) {
        (TridKind::Dot, None) => None,
        (TridKind::Dot, Some(_)) => {
            return Err(Error::Domain("the dot operation takes no semigroup index".into()))
        }
        (_, Some(w)) => {
            ctx.b_plus(w, &Tree::unit())?;
            Some(Omega1Elem::Elem(w.clone()))
        }
        (_, None) => return Err(Error::Domain("≺ and ≻ need a semigroup index ω".into())),
    };
    check_operands(ctx, a, false)?;
    check_operands(ctx, b, false)?;
    let mut out = LinComb::zero();
    for (l, cl) in a.operands() {
        for (r, cr) in b.operands() {
            let value = match (kind, &w) {
                (TridKind::Prec, Some(w)) => tprec(w, l, r)?,
                (TridKind::Succ, Some(w)) => tsucc(w, l, r)?,
                (TridKind::Dot, _) => match (l, r) {
                    (Operand::Leaf, Operand::Leaf) => return Err(both_leaves()),
                    _ => tdot(l, r)?,
                },
                _ => unreachable!(),
            };
            out.add_scaled(&value, &(cl * cr));
        }
    }
    Ok(out)
}

/// Boundary slot produced by the three-term sums of the recursion.
enum Middle {
    Leaf,
    Trees(LinComb<Tree>),
}

/// `L ≻_{α} R + L ≺_{β} R + L · R`, with the two-leaf case collapsing to a
/// single leaf.
fn three_term(alpha: &Omega1Elem, beta: &Omega1Elem, l: Operand, r: Operand) -> Result<Middle> {
    if let (Operand::Leaf, Operand::Leaf) = (l, r) {
        return Ok(Middle::Leaf);
    }
    let mut sum = tsucc(alpha, l, r)?;
    sum += &tprec(beta, l, r)?;
    sum += &tdot(l, r)?;
    Ok(Middle::Trees(sum))
}

fn tprec(omega: &Omega1Elem, l: Operand, r: Operand) -> Result<LinComb<Tree>> {
    match (l, r) {
        (Operand::Leaf, Operand::Leaf) => Err(both_leaves()),
        (Operand::Leaf, Operand::Tree(_)) => Ok(LinComb::zero()),
        (Operand::Tree(t), Operand::Leaf) => Ok(LinComb::basis(t.clone())),
        (Operand::Tree(t), Operand::Tree(_)) => {
            let last = t.last_branch();
            let alpha_m = last.ty();
            let Middle::Trees(mid) = three_term(&alpha_m, omega, Operand::of(last), r)? else {
                unreachable!("right operand is a tree")
            };
            let ty = alpha_m.mul(omega)?;
            let m = t.root_arity() - 1;
            Ok(mid.map_basis(|s| {
                let mut branches = t.branches()[..m].to_vec();
                branches.push(typed_edge(ty.clone(), s.clone()));
                Tree::from_parts(t.angles().to_vec(), branches)
            }))
        }
    }
}

fn tsucc(omega: &Omega1Elem, l: Operand, r: Operand) -> Result<LinComb<Tree>> {
    match (l, r) {
        (Operand::Leaf, Operand::Leaf) => Err(both_leaves()),
        (Operand::Leaf, Operand::Tree(u)) => Ok(LinComb::basis(u.clone())),
        (Operand::Tree(_), Operand::Leaf) => Ok(LinComb::zero()),
        (Operand::Tree(_), Operand::Tree(u)) => {
            let first = u.first_branch();
            let beta0 = first.ty();
            let Middle::Trees(mid) = three_term(omega, &beta0, l, Operand::of(first))? else {
                unreachable!("left operand is a tree")
            };
            let ty = omega.mul(&beta0)?;
            Ok(mid.map_basis(|s| {
                let mut branches = Vec::with_capacity(u.root_arity());
                branches.push(typed_edge(ty.clone(), s.clone()));
                branches.extend_from_slice(&u.branches()[1..]);
                Tree::from_parts(u.angles().to_vec(), branches)
            }))
        }
    }
}

fn tdot(l: Operand, r: Operand) -> Result<LinComb<Tree>> {
    match (l, r) {
        (Operand::Leaf, Operand::Leaf) => Err(both_leaves()),
        (Operand::Leaf, _) | (_, Operand::Leaf) => Ok(LinComb::zero()),
        (Operand::Tree(t), Operand::Tree(u)) => {
            let (last, first) = (t.last_branch(), u.first_branch());
            let (alpha_m, beta0) = (last.ty(), first.ty());
            let m = t.root_arity() - 1;
            let assemble = |middle: Branch| {
                let mut branches = Vec::with_capacity(t.root_arity() + u.root_arity() - 1);
                branches.extend_from_slice(&t.branches()[..m]);
                branches.push(middle);
                branches.extend_from_slice(&u.branches()[1..]);
                let mut angles = t.angles().to_vec();
                angles.extend_from_slice(u.angles());
                Tree::from_parts(angles, branches)
            };
            match three_term(&alpha_m, &beta0, Operand::of(last), Operand::of(first))? {
                Middle::Leaf => Ok(LinComb::basis(assemble(Branch::Leaf))),
                Middle::Trees(mid) => {
                    let ty = alpha_m.mul(&beta0)?;
                    Ok(mid.map_basis(|s| assemble(typed_edge(ty.clone(), s.clone()))))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::int;
    use crate::semigroup::SemigroupSpec;
    use crate::trees::graft_binary;

    fn ctx(weight: i64) -> RbfaContext {
        RbfaContext::new(SemigroupSpec::free(&["a", "b"]).unwrap(), int(weight))
    }

    fn a() -> OmegaElem {
        OmegaElem::Free(vec!["a".into()])
    }

    fn x() -> Tree {
        Tree::corolla(["x"])
    }

    fn y() -> Tree {
        Tree::corolla(["y"])
    }

    #[test]
    fn dendriform_boundary_values() {
        let c = ctx(0);
        let leaf = BoundarySpan::leaf();
        let t = BoundarySpan::tree(x());
        assert_eq!(dend_op(&c, DendKind::Succ, &a(), &leaf, &t).unwrap(), LinComb::basis(x()));
        assert_eq!(dend_op(&c, DendKind::Prec, &a(), &t, &leaf).unwrap(), LinComb::basis(x()));
        assert!(dend_op(&c, DendKind::Prec, &a(), &leaf, &t).unwrap().is_zero());
        assert!(dend_op(&c, DendKind::Succ, &a(), &t, &leaf).unwrap().is_zero());
        assert!(matches!(
            dend_op(&c, DendKind::Prec, &a(), &leaf, &leaf),
            Err(Error::Undefined(_))
        ));
    }

    #[test]
    fn dendriform_on_corollas() {
        let c = ctx(0);
        let id = Omega1Elem::Identity;
        let prec = dend_op(&c, DendKind::Prec, &a(), &x().into(), &y().into()).unwrap();
        let expected = graft_binary(None, "x".into(), id.clone(), a().into(), Some(y())).unwrap();
        assert_eq!(prec, LinComb::basis(expected));
        let succ = dend_op(&c, DendKind::Succ, &a(), &x().into(), &y().into()).unwrap();
        let expected = graft_binary(Some(x()), "y".into(), a().into(), id, None).unwrap();
        assert_eq!(succ, LinComb::basis(expected));
    }

    #[test]
    fn dendriform_needs_weight_zero_and_binary_operands() {
        assert!(matches!(
            dend_op(&ctx(1), DendKind::Prec, &a(), &x().into(), &y().into()),
            Err(Error::WeightMismatch { .. })
        ));
        let xy = Tree::corolla(["x", "y"]);
        assert!(matches!(
            dend_op(&ctx(0), DendKind::Prec, &a(), &xy.into(), &y().into()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tridendriform_on_corollas() {
        let c = ctx(1);
        let dot = trid_op(&c, TridKind::Dot, None, &x().into(), &y().into()).unwrap();
        assert_eq!(dot, LinComb::basis(Tree::corolla(["x", "y"])));
        let prec = trid_op(&c, TridKind::Prec, Some(&a()), &x().into(), &y().into()).unwrap();
        let expected = Tree::new(vec!["x".into()], vec![Branch::Leaf, Branch::edge(a(), y())]).unwrap();
        assert_eq!(prec, LinComb::basis(expected));
        let succ = trid_op(&c, TridKind::Succ, Some(&a()), &x().into(), &y().into()).unwrap();
        let expected = Tree::new(vec!["y".into()], vec![Branch::edge(a(), x()), Branch::Leaf]).unwrap();
        assert_eq!(succ, LinComb::basis(expected));
    }

    #[test]
    fn tridendriform_boundary_values() {
        let c = ctx(1);
        let leaf = BoundarySpan::leaf();
        let t = BoundarySpan::tree(x());
        assert!(trid_op(&c, TridKind::Dot, None, &leaf, &t).unwrap().is_zero());
        assert!(trid_op(&c, TridKind::Dot, None, &t, &leaf).unwrap().is_zero());
        assert_eq!(trid_op(&c, TridKind::Succ, Some(&a()), &leaf, &t).unwrap(), LinComb::basis(x()));
        assert_eq!(trid_op(&c, TridKind::Prec, Some(&a()), &t, &leaf).unwrap(), LinComb::basis(x()));
        assert!(trid_op(&c, TridKind::Prec, Some(&a()), &leaf, &leaf).is_err());
        assert!(trid_op(&c, TridKind::Dot, None, &leaf, &leaf).is_err());
        assert!(trid_op(&c, TridKind::Dot, Some(&a()), &t, &t).is_err());
        assert!(trid_op(&c, TridKind::Prec, None, &t, &t).is_err());
        assert!(matches!(
            trid_op(&ctx(0), TridKind::Dot, None, &t, &t),
            Err(Error::WeightMismatch { .. })
        ));
    }
}
