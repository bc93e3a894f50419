//! Typed angularly decorated planar rooted trees.
//!
//! A [`Tree`] is always a real vertex: an ordered list of `n` angle
//! decorations sitting between `n + 1` incoming slots. Each slot is either a
//! [`Branch::Leaf`] (the zero-vertex tree `|`, implicitly typed by the
//! identity of Ω¹) or an internal edge typed by a genuine element of Ω leading
//! to a subtree. Because the edge type of a non-leaf slot is an [`OmegaElem`],
//! an identity type on an internal edge cannot be represented at all.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semigroup::{Omega1Elem, OmegaElem};
use crate::symbol::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Leaf,
    Edge(OmegaElem, Arc<Tree>),
}

impl Branch {
    /// Builds the slot for `child` typed by `ty`, enforcing that the identity
    /// type appears exactly on leaves.
    pub fn new(child: Option<Tree>, ty: Omega1Elem) -> Result<Branch> {
        match (child, ty) {
            (None, Omega1Elem::Identity) => Ok(Branch::Leaf),
            (Some(t), Omega1Elem::Elem(w)) => Ok(Branch::Edge(w, Arc::new(t))),
            (None, Omega1Elem::Elem(w)) => Err(Error::Invariant(format!(
                "leaf slot typed by {w}; leaves carry the identity type"
            ))),
            (Some(_), Omega1Elem::Identity) => Err(Error::Invariant(
                "internal edge typed by the identity; internal edges need an element of Ω".into(),
            )),
        }
    }

    pub fn edge(ty: OmegaElem, child: Tree) -> Branch {
        Branch::Edge(ty, Arc::new(child))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Branch::Leaf)
    }

    /// Type of the slot in Ω¹ (identity for leaves).
    pub fn ty(&self) -> Omega1Elem {
        match self {
            Branch::Leaf => Omega1Elem::Identity,
            Branch::Edge(w, _) => Omega1Elem::Elem(w.clone()),
        }
    }

    pub fn subtree(&self) -> Option<&Tree> {
        match self {
            Branch::Leaf => None,
            Branch::Edge(_, t) => Some(t),
        }
    }

    pub fn depth(&self) -> usize {
        self.subtree().map_or(0, Tree::depth)
    }

    fn angle_count(&self) -> usize {
        self.subtree().map_or(0, Tree::angle_count)
    }

    fn vertex_count(&self) -> usize {
        self.subtree().map_or(0, Tree::vertex_count)
    }
}

/// A typed angularly decorated planar rooted tree with at least one vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    angles: Vec<Symbol>,
    branches: Vec<Branch>,
    angle_count: usize,
    depth: usize,
    vertices: usize,
}

/// Statistics of a tree (or of the leaf sentinel, for which all are zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    /// Total number of angles, i.e. the grading `n` with `T ∈ 𝒯_n`.
    pub angles: usize,
    pub leaves: usize,
    pub depth: usize,
    /// Number of slots at the root (`bra`).
    pub branches_of_root: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeClass {
    pub is_binary: bool,
    pub is_schroeder: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeClassFilter {
    General,
    Binary,
    Schroeder,
}

impl Tree {
    /// Builds a vertex from its angle decorations and slots.
    pub fn new(angles: Vec<Symbol>, branches: Vec<Branch>) -> Result<Tree> {
        if branches.len() != angles.len() + 1 {
            return Err(Error::Invariant(format!(
                "vertex with {} angles needs {} slots, got {}",
                angles.len(),
                angles.len() + 1,
                branches.len()
            )));
        }
        Ok(Self::from_parts(angles, branches))
    }

    /// Arity is the caller's responsibility; only checked in debug builds.
    pub(crate) fn from_parts(angles: Vec<Symbol>, branches: Vec<Branch>) -> Tree {
        debug_assert_eq!(branches.len(), angles.len() + 1);
        let angle_count = angles.len() + branches.iter().map(Branch::angle_count).sum::<usize>();
        let depth = 1 + branches.iter().map(Branch::depth).max().unwrap_or(0);
        let vertices = 1 + branches.iter().map(Branch::vertex_count).sum::<usize>();
        Tree {
            angles,
            branches,
            angle_count,
            depth,
            vertices,
        }
    }

    /// The single-vertex, single-leaf tree; the unit of the tree product.
    pub fn unit() -> Tree {
        Self::from_parts(Vec::new(), vec![Branch::Leaf])
    }

    /// The one-vertex tree whose angles read `angles` left to right.
    pub fn corolla<S: Into<Symbol>, I: IntoIterator<Item = S>>(angles: I) -> Tree {
        let angles: Vec<Symbol> = angles.into_iter().map(Into::into).collect();
        let branches = vec![Branch::Leaf; angles.len() + 1];
        Self::from_parts(angles, branches)
    }

    /// `B⁺_ω`: a new root joined to this tree by one internal edge typed `ω`.
    pub fn graft_root(&self, omega: &OmegaElem) -> Tree {
        Self::from_parts(Vec::new(), vec![Branch::edge(omega.clone(), self.clone())])
    }

    pub fn angles(&self) -> &[Symbol] {
        &self.angles
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn first_branch(&self) -> &Branch {
        &self.branches[0]
    }

    pub fn last_branch(&self) -> &Branch {
        &self.branches[self.branches.len() - 1]
    }

    pub fn angle_count(&self) -> usize {
        self.angle_count
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// `bra(T)`: number of slots at the root.
    pub fn root_arity(&self) -> usize {
        self.branches.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.branches
            .iter()
            .map(|b| b.subtree().map_or(1, Tree::leaf_count))
            .sum()
    }

    pub fn stats(&self) -> TreeStats {
        TreeStats {
            angles: self.angle_count,
            leaves: self.leaf_count(),
            depth: self.depth,
            branches_of_root: self.branches.len(),
        }
    }

    /// Whether every vertex has one angle (binary) or at least one angle
    /// (Schröder).
    pub fn classify(&self) -> TreeClass {
        let here = self.angles.len();
        let mut class = TreeClass {
            is_binary: here == 1,
            is_schroeder: here >= 1,
        };
        for child in self.branches.iter().filter_map(Branch::subtree) {
            let sub = child.classify();
            class.is_binary &= sub.is_binary;
            class.is_schroeder &= sub.is_schroeder;
        }
        class
    }

    pub fn is_unit(&self) -> bool {
        self.angles.is_empty() && self.branches[0].is_leaf()
    }

    /// The root has no internal edges, i.e. `dep(T) = 1`.
    pub fn is_corolla(&self) -> bool {
        self.depth == 1
    }
}

/// Statistics of the leaf sentinel `|`.
pub fn leaf_stats() -> TreeStats {
    TreeStats {
        angles: 0,
        leaves: 1,
        depth: 0,
        branches_of_root: 0,
    }
}

/// `Tl ∨^{α,β}_x Tr`: a new vertex with one angle `x` over the two given
/// slots.
pub fn graft_binary(
    left: Option<Tree>,
    x: Symbol,
    alpha: Omega1Elem,
    beta: Omega1Elem,
    right: Option<Tree>,
) -> Result<Tree> {
    let l = Branch::new(left, alpha)?;
    let r = Branch::new(right, beta)?;
    Ok(Tree::from_parts(vec![x], vec![l, r]))
}

/// The general grafting `⋁`: one new root over `k + 1` slots with `k` angle
/// decorations and `k + 1` slot types.
pub fn graft_general(
    children: Vec<Option<Tree>>,
    angles: Vec<Symbol>,
    types: Vec<Omega1Elem>,
) -> Result<Tree> {
    if children.len() != types.len() {
        return Err(Error::Invariant(format!(
            "{} slots but {} slot types",
            children.len(),
            types.len()
        )));
    }
    let branches = children
        .into_iter()
        .zip(types)
        .map(|(c, t)| Branch::new(c, t))
        .collect::<Result<Vec<_>>>()?;
    Tree::new(angles, branches)
}

/// Parts of the unique decomposition `T = Tl ∨^{α,β}_x Tr` of a binary tree.
pub type BinaryParts = (Option<Tree>, Symbol, Omega1Elem, Omega1Elem, Option<Tree>);

/// Inverse of [`graft_binary`]; the tree must be binary.
pub fn decompose_binary(t: &Tree) -> Result<BinaryParts> {
    if !t.classify().is_binary {
        return Err(Error::Domain("decompose_binary needs a binary tree".into()));
    }
    let [l, r] = t.branches() else {
        unreachable!("binary vertex has two slots")
    };
    Ok((
        l.subtree().cloned(),
        t.angles()[0].clone(),
        l.ty(),
        r.ty(),
        r.subtree().cloned(),
    ))
}

impl Ord for Tree {
    /// Canonical order: (angle count, depth, vertex count), then the slot
    /// lists compared slot by slot (leaf before edge, edges by type and then
    /// subtree), then the angle lists.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.angle_count, self.depth, self.vertices)
            .cmp(&(other.angle_count, other.depth, other.vertices))
            .then_with(|| self.branches.cmp(&other.branches))
            .then_with(|| self.angles.cmp(&other.angles))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Enumerates every tree of the requested class with exactly `n_angles`
/// angles, angles drawn from `alphabet` and edge types from `carrier`.
///
/// The general class needs `max_depth`, since ladders `B⁺(B⁺(…))` make every
/// graded piece infinite. For binary and Schröder trees depth is bounded by
/// the angle count and `max_depth` is an optional extra filter. Output is
/// sorted in canonical order and duplicate-free.
pub fn enumerate_trees(
    n_angles: usize,
    alphabet: &[Symbol],
    carrier: &[OmegaElem],
    max_depth: Option<usize>,
    class: TreeClassFilter,
) -> Result<Vec<Tree>> {
    let depth = match (class, max_depth) {
        (TreeClassFilter::General, None) => {
            return Err(Error::Enumeration(
                "general trees need a depth bound (ladders are unbounded)".into(),
            ))
        }
        (_, Some(d)) => d,
        (_, None) => n_angles,
    };
    let mut gen = Enumerator {
        alphabet,
        carrier,
        class,
        memo: HashMap::new(),
    };
    let mut out = gen.trees(n_angles, depth);
    out.sort();
    out.dedup();
    Ok(out)
}

/// All trees with at most `max_angles` angles, concatenated in canonical
/// order.
pub fn enumerate_up_to(
    max_angles: usize,
    alphabet: &[Symbol],
    carrier: &[OmegaElem],
    max_depth: Option<usize>,
    class: TreeClassFilter,
) -> Result<Vec<Tree>> {
    let mut all = Vec::new();
    for n in 0..=max_angles {
        all.extend(enumerate_trees(n, alphabet, carrier, max_depth, class)?);
    }
    all.sort();
    Ok(all)
}

struct Enumerator<'a> {
    alphabet: &'a [Symbol],
    carrier: &'a [OmegaElem],
    class: TreeClassFilter,
    memo: HashMap<(usize, usize), Vec<Tree>>,
}

impl Enumerator<'_> {
    /// Trees with exactly `n` angles and depth at most `depth`.
    fn trees(&mut self, n: usize, depth: usize) -> Vec<Tree> {
        if depth == 0 {
            return Vec::new();
        }
        if let Some(hit) = self.memo.get(&(n, depth)) {
            return hit.clone();
        }
        let root_angles: Vec<usize> = match self.class {
            TreeClassFilter::General => (0..=n).collect(),
            TreeClassFilter::Binary => (n >= 1).then_some(1).into_iter().collect(),
            TreeClassFilter::Schroeder => (1..=n).collect(),
        };
        let mut out = Vec::new();
        for k in root_angles {
            let slot_lists = self.slot_lists(k + 1, n - k, depth - 1);
            for words in angle_words(self.alphabet, k) {
                for slots in &slot_lists {
                    out.push(Tree::from_parts(words.clone(), slots.clone()));
                }
            }
        }
        self.memo.insert((n, depth), out.clone());
        out
    }

    /// Every list of `slots` branches carrying exactly `budget` angles in
    /// total, with subtrees of depth at most `depth`.
    fn slot_lists(&mut self, slots: usize, budget: usize, depth: usize) -> Vec<Vec<Branch>> {
        if slots == 0 {
            return if budget == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for used in 0..=budget {
            let heads = self.single_slot(used, depth);
            if heads.is_empty() {
                continue;
            }
            let tails = self.slot_lists(slots - 1, budget - used, depth);
            for head in &heads {
                for tail in &tails {
                    let mut list = Vec::with_capacity(slots);
                    list.push(head.clone());
                    list.extend(tail.iter().cloned());
                    out.push(list);
                }
            }
        }
        out
    }

    fn single_slot(&mut self, angles: usize, depth: usize) -> Vec<Branch> {
        let mut out = Vec::new();
        if angles == 0 {
            out.push(Branch::Leaf);
        }
        let children = self.trees(angles, depth);
        for ty in self.carrier {
            for child in &children {
                out.push(Branch::edge(ty.clone(), child.clone()));
            }
        }
        out
    }
}

fn angle_words(alphabet: &[Symbol], len: usize) -> Vec<Vec<Symbol>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |x| {
                    let mut w = w.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    words
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::SemigroupSpec;

    fn a() -> OmegaElem {
        OmegaElem::Free(vec!["a".into()])
    }

    #[test]
    fn unit_and_corolla_stats() {
        let unit = Tree::unit();
        assert_eq!(unit.stats(), TreeStats { angles: 0, leaves: 1, depth: 1, branches_of_root: 1 });
        let x = Tree::corolla(["x"]);
        assert_eq!(x.depth(), 1);
        assert_eq!(x.root_arity(), 2);
        assert_eq!(Tree::corolla(["x", "y"]).root_arity(), 3);
        assert_eq!(leaf_stats().depth, 0);
        assert_eq!(leaf_stats().branches_of_root, 0);
    }

    #[test]
    fn graft_root_stats() {
        let ladder = Tree::unit().graft_root(&a());
        assert_eq!(ladder.root_arity(), 1);
        assert_eq!(ladder.depth(), 2);
        assert_eq!(ladder.angle_count(), 0);
    }

    #[test]
    fn two_vertex_depth() {
        // corolla (x, y) with its first slot replaced by an α-edge to a unit
        let t = Tree::new(
            vec!["x".into(), "y".into()],
            vec![Branch::edge(a(), Tree::unit()), Branch::Leaf, Branch::Leaf],
        )
        .unwrap();
        assert_eq!(t.depth(), 2);
        assert_eq!(t.vertex_count(), 2);
    }

    #[test]
    fn classification() {
        let x = Tree::corolla(["x"]);
        assert_eq!(x.classify(), TreeClass { is_binary: true, is_schroeder: true });
        let xy = Tree::corolla(["x", "y"]);
        assert_eq!(xy.classify(), TreeClass { is_binary: false, is_schroeder: true });
        let ladder = Tree::unit().graft_root(&a());
        assert_eq!(ladder.classify(), TreeClass { is_binary: false, is_schroeder: false });
    }

    #[test]
    fn binary_grafting_examples() {
        let id = Omega1Elem::Identity;
        let x = graft_binary(None, "x".into(), id.clone(), id.clone(), None).unwrap();
        assert_eq!(x, Tree::corolla(["x"]));

        let comb = graft_binary(None, "x".into(), id.clone(), a().into(), Some(Tree::corolla(["y"])))
            .unwrap();
        assert!(comb.classify().is_binary);
        assert_eq!(comb.leaf_count(), 3);
        assert_eq!(
            decompose_binary(&comb).unwrap(),
            (None, "x".into(), id.clone(), a().into(), Some(Tree::corolla(["y"])))
        );
        assert_eq!(decompose_binary(&x).unwrap(), (None, "x".into(), id.clone(), id, None));
    }

    #[test]
    fn grafting_rejects_type_misuse() {
        let id = Omega1Elem::Identity;
        let bad = graft_binary(Some(Tree::unit()), "x".into(), id.clone(), id.clone(), None);
        assert!(matches!(bad, Err(Error::Invariant(_))));
        let bad = graft_binary(None, "x".into(), a().into(), id.clone(), None);
        assert!(matches!(bad, Err(Error::Invariant(_))));
        let bad = graft_general(vec![None, None], vec![], vec![id.clone(), id.clone()]);
        assert!(matches!(bad, Err(Error::Invariant(_))));
        let bad = graft_general(vec![None], vec![], vec![]);
        assert!(matches!(bad, Err(Error::Invariant(_))));
        assert!(decompose_binary(&Tree::corolla(["x", "y"])).is_err());
    }

    #[test]
    fn general_grafting_examples() {
        let id = Omega1Elem::Identity;
        assert_eq!(graft_general(vec![None], vec![], vec![id.clone()]).unwrap(), Tree::unit());
        let xy = graft_general(
            vec![None, None, None],
            vec!["x".into(), "y".into()],
            vec![id.clone(), id.clone(), id.clone()],
        )
        .unwrap();
        assert_eq!(xy, Tree::corolla(["x", "y"]));
        let general = graft_general(
            vec![None, Some(Tree::corolla(["y"]))],
            vec!["x".into()],
            vec![id.clone(), a().into()],
        )
        .unwrap();
        let binary =
            graft_binary(None, "x".into(), id, a().into(), Some(Tree::corolla(["y"]))).unwrap();
        assert_eq!(general, binary);
    }

    #[test]
    fn depth_of_grafting_is_one_plus_max() {
        let id = Omega1Elem::Identity;
        let deep = Tree::corolla(["y"]).graft_root(&a());
        let t = graft_general(
            vec![Some(deep.clone()), None],
            vec!["x".into()],
            vec![a().into(), id],
        )
        .unwrap();
        assert_eq!(t.depth(), 1 + deep.depth());
    }

    #[test]
    fn order_examples() {
        let unit = Tree::unit();
        let x = Tree::corolla(["x"]);
        assert!(unit < x);
        assert_eq!(x.cmp(&x), Ordering::Equal);
        let alphabet = vec![Symbol::new("x")];
        let carrier = SemigroupSpec::cyclic(2).unwrap().carrier();
        let mut list =
            enumerate_trees(2, &alphabet, &carrier, Some(3), TreeClassFilter::General).unwrap();
        let once = list.clone();
        list.reverse();
        list.sort();
        assert_eq!(list, once);
    }

    #[test]
    fn general_enumeration_needs_depth() {
        let err = enumerate_trees(0, &[], &[OmegaElem::Trivial], None, TreeClassFilter::General);
        assert!(matches!(err, Err(Error::Enumeration(_))));
    }

    #[test]
    fn depth_bounded_zero_angle_trees_are_ladders() {
        let carrier = SemigroupSpec::cyclic(2).unwrap().carrier();
        let ts = enumerate_trees(0, &[], &carrier, Some(3), TreeClassFilter::General).unwrap();
        // unit, 2 ladders of depth 2, 4 of depth 3
        assert_eq!(ts.len(), 7);
        assert!(ts.iter().all(|t| t.angle_count() == 0 && t.depth() <= 3));
    }

    #[test]
    fn schroeder_small_counts() {
        let alphabet = vec![Symbol::new("x")];
        let carrier = SemigroupSpec::cyclic(2).unwrap().carrier();
        // T_2: two binary shapes with one typed edge each, plus the 3-leaf corolla
        let t2 = enumerate_trees(2, &alphabet, &carrier, None, TreeClassFilter::Schroeder).unwrap();
        assert_eq!(t2.len(), 2 * 2 + 1);
        assert!(t2.iter().all(|t| t.classify().is_schroeder));
    }
}
