use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rbfam::coefficients::{int, ratio, LinComb};
use rbfam::rbfa::{InducedKind, LaurentPoly, RbfaContext};
use rbfam::semigroup::SemigroupSpec;
use rbfam::textio::{parse_tree, parse_tree_lincomb};
use rbfam::trees::{enumerate_up_to, graft_binary, TreeClassFilter};
use rbfam::verify::random_tree;
use rbfam::{Omega1Elem, OmegaElem, Rational, Symbol, Tree};

fn free() -> SemigroupSpec {
    SemigroupSpec::free(&["a", "b"]).unwrap()
}

fn ctx(weight: Rational) -> RbfaContext {
    RbfaContext::new(free(), weight)
}

fn t(s: &str) -> Tree {
    parse_tree(&free(), s).unwrap()
}

fn lc(s: &str) -> LinComb<Tree> {
    parse_tree_lincomb(&free(), s).unwrap()
}

fn w(s: &str) -> OmegaElem {
    free().parse(s).unwrap()
}

#[test]
fn grafting_examples() {
    let c = ctx(int(0));
    assert_eq!(c.b_plus(&w("a"), &Tree::unit()).unwrap(), t("V([a]V(|))"));
    assert_eq!(c.b_plus(&w("a"), &t("V(|,x,|)")).unwrap(), t("V([a]V(|,x,|))"));
    assert_eq!(
        c.b_plus(&w("b"), &t("V([a]V(|,x,|),y,|)")).unwrap(),
        t("V([b]V([a]V(|,x,|),y,|))")
    );
}

#[test]
fn corollas_concatenate() {
    let c = ctx(int(1));
    let p = c.product(&t("V(|,x,|)"), &t("V(|,y,|)")).unwrap();
    assert_eq!(p, lc("V(|,x,|,y,|)"));
}

#[test]
fn grafted_times_corolla() {
    let c = ctx(int(1));
    let p = c.product(&t("V([a]V(|,x,|))"), &t("V(|,y,|)")).unwrap();
    assert_eq!(p, lc("V([a]V(|,x,|),y,|)"));
}

#[test]
fn grafted_times_grafted() {
    let left = t("V([a]V(|,x,|))");
    let right = t("V([b]V(|,y,|))");
    let expected = "V([ab]V([a]V(|,x,|),y,|)) + V([ab]V(|,x,[b]V(|,y,|)))";
    let p0 = ctx(int(0)).product(&left, &right).unwrap();
    assert_eq!(p0, lc(expected));
    let p1 = ctx(int(1)).product(&left, &right).unwrap();
    assert_eq!(p1, lc(&format!("{expected} + V([ab]V(|,x,|,y,|))")));
    let p = ctx(ratio(3, 2)).product(&left, &right).unwrap();
    assert_eq!(p, lc(&format!("{expected} + 3/2*V([ab]V(|,x,|,y,|))")));
}

#[test]
fn unit_law_exhaustive() {
    let c = ctx(ratio(-2, 3));
    let carrier = free().carrier();
    let trees = enumerate_up_to(2, &[Symbol::new("x")], &carrier, Some(2), TreeClassFilter::General).unwrap();
    assert!(trees.len() > 20);
    let one = c.unit();
    for tr in trees {
        let e = LinComb::basis(tr);
        assert_eq!(c.diamond(&one, &e).unwrap(), e);
        assert_eq!(c.diamond(&e, &one).unwrap(), e);
    }
}

#[test]
fn grafting_checks_membership() {
    let c = RbfaContext::new(SemigroupSpec::cyclic(2).unwrap(), int(0));
    assert!(c.b_plus(&w("a"), &Tree::unit()).is_err());
    assert!(c.check_tree(&t("V([a]V(|))")).is_err());
}

#[test]
fn induced_initial_steps() {
    let c = ctx(int(0));
    let x = LinComb::basis(t("V(|,x,|)"));
    let y = LinComb::basis(t("V(|,y,|)"));
    let a = w("a");
    let prec = c.induced_op(InducedKind::Prec, Some(&a), &x, &y).unwrap();
    let comb = graft_binary(None, "x".into(), Omega1Elem::Identity, Omega1Elem::Elem(a.clone()), Some(t("V(|,y,|)")));
    assert_eq!(prec, LinComb::basis(comb.unwrap()));
    let succ = c.induced_op(InducedKind::Succ, Some(&a), &x, &y).unwrap();
    assert_eq!(succ, lc("V([a]V(|,x,|),y,|)"));
    let dot = c.induced_op(InducedKind::Dot, None, &x, &y).unwrap();
    assert_eq!(dot, lc("V(|,x,|,y,|)"));
    assert!(c.induced_op(InducedKind::Dot, Some(&a), &x, &y).is_err());
    assert!(c.induced_op(InducedKind::Prec, None, &x, &y).is_err());
}

#[test]
fn laurent_projection_examples() {
    let z = |k, c| LaurentPoly::monomial(-3, 3, k, int(c)).unwrap();
    assert_eq!(z(1, 1).project(2), z(1, 1));
    assert!(z(3, 1).project(2).is_zero());
    let p = z(-1, 3).add(&z(2, 1)).unwrap();
    assert_eq!(p.project(0), z(-1, 3));
}

#[test]
fn laurent_family_identity() {
    // P_a(f) P_b(g) = P_{a+b}(P_a(f) g + f P_b(g) - f g)
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let f = rbfam::verify::random_laurent(&mut rng);
        let g = rbfam::verify::random_laurent(&mut rng);
        for (al, be) in [(-1, 2), (0, 0), (3, -3), (1, 1)] {
            let lhs = f.project(al).mul(&g.project(be)).unwrap();
            let inner = f
                .project(al)
                .mul(&g)
                .unwrap()
                .add(&f.mul(&g.project(be)).unwrap())
                .unwrap()
                .sub(&f.mul(&g).unwrap())
                .unwrap();
            assert_eq!(lhs, inner.project(al + be));
        }
    }
}

fn trees3(seed: u64) -> [LinComb<Tree>; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = [Symbol::new("x"), Symbol::new("y")];
    let carrier = free().carrier();
    std::array::from_fn(|_| LinComb::basis(random_tree(&mut rng, &alphabet, &carrier, 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative(seed in any::<u64>(), weight in -2i64..=2) {
        let c = ctx(int(weight));
        let [p, q, r] = trees3(seed);
        let left = c.diamond(&c.diamond(&p, &q).unwrap(), &r).unwrap();
        let right = c.diamond(&p, &c.diamond(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn grafting_is_a_family(seed in any::<u64>(), num in -3i64..=3, den in 1i64..=3) {
        let c = ctx(ratio(num, den));
        let [p, q, _] = trees3(seed);
        for (al, be) in [("a", "b"), ("b", "b"), ("ab", "a")] {
            prop_assert!(c.family_defect(&w(al), &w(be), &p, &q).unwrap().is_zero());
        }
    }

    #[test]
    fn product_is_graded(seed in any::<u64>()) {
        let c = ctx(int(1));
        let [p, q, _] = trees3(seed);
        let n = |e: &LinComb<Tree>| e.basis_elements().next().unwrap().angle_count();
        let total = n(&p) + n(&q);
        for tr in c.diamond(&p, &q).unwrap().basis_elements() {
            prop_assert_eq!(tr.angle_count(), total);
        }
    }
}
