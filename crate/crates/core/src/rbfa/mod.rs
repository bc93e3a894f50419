//! The free Rota-Baxter family algebra on trees.
//!
//! The product `⋄` is defined on pairs of trees by looking at the boundary
//! between them: the last slot of the left root and the first slot of the
//! right root. The two roots are always merged into one vertex whose angle
//! list is the concatenation of both angle lists; what happens at the shared
//! boundary slot depends on which of the two boundary slots are leaves:
//!
//! | left last | right first | boundary slot of the merged root            |
//! |-----------|-------------|---------------------------------------------|
//! | `\|`      | `\|`        | a single leaf                               |
//! | edge      | `\|`        | the left edge                               |
//! | `\|`      | edge        | the right edge                              |
//! | `α`-edge  | `β`-edge    | an `αβ`-edge over `B⁺_α(L)⋄R + L⋄B⁺_β(R) + λ·L⋄R` |
//!
//! where `L` and `R` are the subtrees hanging from the two boundary edges. The
//! last row is the only one that recurses and the only one producing more than
//! one term. Two corollas fall into the first row, which is exactly the merge
//! of their angle lists.

mod laurent;

pub use laurent::LaurentPoly;

use num_traits::Zero;

use crate::coefficients::{bilinear, LinComb, Rational};
use crate::error::{Error, Result};
use crate::semigroup::{OmegaElem, SemigroupSpec};
use crate::trees::{Branch, Tree};

/// Weight `λ` and index semigroup `Ω` of the ambient algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RbfaContext {
    pub weight: Rational,
    pub spec: SemigroupSpec,
}

/// Operations induced on `𝐤𝒯` by the operator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InducedKind {
    /// `a ≺′_ω b = a ⋄ B⁺_ω(b)`
    Prec,
    /// `a ≻′_ω b = B⁺_ω(a) ⋄ b`
    Succ,
    /// `a ·′ b = a ⋄ b`
    Dot,
}

/// How the boundary slots of a product meet.
enum Boundary<'a> {
    /// Single-term product.
    Concat(Tree),
    /// Both boundary slots are edges: `(α, L, β, R)`.
    Edges(&'a OmegaElem, &'a Tree, &'a OmegaElem, &'a Tree),
}

fn boundary<'a>(t: &'a Tree, u: &'a Tree) -> Boundary<'a> {
    let m = t.root_arity() - 1;
    let (left, right) = (t.last_branch(), u.first_branch());
    let middle = match (left, right) {
        (Branch::Edge(a, l), Branch::Edge(b, r)) => return Boundary::Edges(a, l, b, r),
        (Branch::Leaf, Branch::Leaf) | (Branch::Edge(..), Branch::Leaf) => left.clone(),
        (Branch::Leaf, Branch::Edge(..)) => right.clone(),
    };
    Boundary::Concat(splice(t, u, m, middle))
}

/// Root of `t` without its last slot, then `middle`, then the root of `u`
/// without its first slot.
fn splice(t: &Tree, u: &Tree, m: usize, middle: Branch) -> Tree {
    let mut branches = Vec::with_capacity(t.root_arity() + u.root_arity() - 1);
    branches.extend_from_slice(&t.branches()[..m]);
    branches.push(middle);
    branches.extend_from_slice(&u.branches()[1..]);
    let mut angles = Vec::with_capacity(t.angles().len() + u.angles().len());
    angles.extend_from_slice(t.angles());
    angles.extend_from_slice(u.angles());
    Tree::from_parts(angles, branches)
}

/// The product of two trees when it is a single tree, i.e. when the boundary
/// slots are not both internal edges. Returns `None` otherwise.
pub fn concat_product(t: &Tree, u: &Tree) -> Option<Tree> {
    match boundary(t, u) {
        Boundary::Concat(tree) => Some(tree),
        Boundary::Edges(..) => None,
    }
}

impl RbfaContext {
    pub fn new(spec: SemigroupSpec, weight: Rational) -> Self {
        Self { weight, spec }
    }

    /// Checks that every edge type of `t` belongs to this context's Ω.
    pub fn check_tree(&self, t: &Tree) -> Result<()> {
        for b in t.branches() {
            if let Branch::Edge(w, child) = b {
                if !self.spec.contains(w) {
                    return Err(Error::SpecMismatch {
                        left: w.to_string(),
                        right: self.spec.to_string(),
                    });
                }
                self.check_tree(child)?;
            }
        }
        Ok(())
    }

    fn check_omega(&self, w: &OmegaElem) -> Result<()> {
        if self.spec.contains(w) {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: w.to_string(),
                right: self.spec.to_string(),
            })
        }
    }

    fn check_lc(&self, a: &LinComb<Tree>) -> Result<()> {
        a.basis_elements().try_for_each(|t| self.check_tree(t))
    }

    /// `B⁺_ω(T)`.
    pub fn b_plus(&self, omega: &OmegaElem, t: &Tree) -> Result<Tree> {
        self.check_omega(omega)?;
        Ok(t.graft_root(omega))
    }

    /// `B⁺_ω` extended linearly.
    pub fn b_plus_lc(&self, omega: &OmegaElem, a: &LinComb<Tree>) -> Result<LinComb<Tree>> {
        self.check_omega(omega)?;
        Ok(a.map_basis(|t| t.graft_root(omega)))
    }

    /// `T ⋄ U` on basis trees.
    pub fn product(&self, t: &Tree, u: &Tree) -> Result<LinComb<Tree>> {
        match boundary(t, u) {
            Boundary::Concat(tree) => Ok(LinComb::basis(tree)),
            Boundary::Edges(alpha, l, beta, r) => {
                let mut inner = self.product(&l.graft_root(alpha), r)?;
                inner += &self.product(l, &r.graft_root(beta))?;
                if !self.weight.is_zero() {
                    inner.add_scaled(&self.product(l, r)?, &self.weight);
                }
                let ab = alpha.mul(beta)?;
                let m = t.root_arity() - 1;
                Ok(inner.map_basis(|s| splice(t, u, m, Branch::edge(ab.clone(), s.clone()))))
            }
        }
    }

    /// `a ⋄ b`, the bilinear extension of the tree product.
    pub fn diamond(&self, a: &LinComb<Tree>, b: &LinComb<Tree>) -> Result<LinComb<Tree>> {
        self.check_lc(a)?;
        self.check_lc(b)?;
        bilinear(|t, u| self.product(t, u), a, b)
    }

    /// Induced operation `≺′_ω`, `≻′_ω` or `·′`. `omega` must be given for
    /// the first two and absent for `·′`.
    pub fn induced_op(
        &self,
        kind: InducedKind,
        omega: Option<&OmegaElem>,
        a: &LinComb<Tree>,
        b: &LinComb<Tree>,
    ) -> Result<LinComb<Tree>> {
        match (kind, omega) {
            (InducedKind::Prec, Some(w)) => self.diamond(a, &self.b_plus_lc(w, b)?),
            (InducedKind::Succ, Some(w)) => self.diamond(&self.b_plus_lc(w, a)?, b),
            (InducedKind::Dot, None) => self.diamond(a, b),
            (InducedKind::Dot, Some(_)) => {
                Err(Error::Domain("the dot operation takes no semigroup index".into()))
            }
            (_, None) => Err(Error::Domain(
                "≺′ and ≻′ need a semigroup index ω".into(),
            )),
        }
    }

    /// The weight-scaled dot `λ·(a ⋄ b)`.
    pub fn dot_scaled(&self, a: &LinComb<Tree>, b: &LinComb<Tree>) -> Result<LinComb<Tree>> {
        Ok(self.diamond(a, b)?.scale(&self.weight))
    }

    /// `P_α(a) P_β(b) − P_{αβ}(P_α(a) b + a P_β(b) + λ a b)`, which vanishes in
    /// any Rota-Baxter family algebra of this weight.
    pub fn family_defect(
        &self,
        alpha: &OmegaElem,
        beta: &OmegaElem,
        a: &LinComb<Tree>,
        b: &LinComb<Tree>,
    ) -> Result<LinComb<Tree>> {
        let pa = self.b_plus_lc(alpha, a)?;
        let pb = self.b_plus_lc(beta, b)?;
        let lhs = self.diamond(&pa, &pb)?;
        let mut inner = self.diamond(&pa, b)?;
        inner += &self.diamond(a, &pb)?;
        inner.add_scaled(&self.diamond(a, b)?, &self.weight);
        let rhs = self.b_plus_lc(&alpha.mul(beta)?, &inner)?;
        Ok(&lhs - &rhs)
    }

    pub fn unit(&self) -> LinComb<Tree> {
        LinComb::basis(Tree::unit())
    }

    pub fn weight_is(&self, w: i64) -> bool {
        self.weight == Rational::from_integer(w.into())
    }
}
