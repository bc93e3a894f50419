use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rbfam::coefficients::{int, LinComb};
use rbfam::rbfa::RbfaContext;
use rbfam::semigroup::SemigroupSpec;
use rbfam::textio::{parse_tree, parse_word, parse_word_lincomb};
use rbfam::verify::{random_certified_word, random_tree, random_word};
use rbfam::words::{normalize, nf_product, phi, phi_lc, psi, rewrite_nf, Strategy};
use rbfam::{Error, RbWord, Symbol, Tree, Word};

fn free() -> SemigroupSpec {
    SemigroupSpec::free(&["a", "b"]).unwrap()
}

fn word(s: &str) -> Word {
    parse_word(&free(), s).unwrap()
}

fn rb(s: &str) -> RbWord {
    RbWord::certify(word(s)).unwrap()
}

fn tree(s: &str) -> Tree {
    parse_tree(&free(), s).unwrap()
}

fn words(s: &str) -> LinComb<Word> {
    parse_word_lincomb(&free(), s).unwrap()
}

#[test]
fn rota_baxter_word_membership() {
    assert!(Word::one().is_rb_word());
    assert!(word("x [y]_a z").is_rb_word());
    assert!(word("[[x]_a y]_b").is_rb_word());
    assert!(!word("[x]_a [y]_b").is_rb_word());
    assert!(!word("x [[y]_a [z]_b]_a").is_rb_word());
    assert!(matches!(RbWord::certify(word("[x]_a [y]_b")), Err(Error::NotRbWord(_))));
}

#[test]
fn word_stats() {
    let st = word("x y").stats();
    assert_eq!((st.nesting, st.breadth), (0, 2));
    let st = word("[[x]_a y]_b").stats();
    assert_eq!((st.nesting, st.breadth), (2, 1));
}

#[test]
fn phi_table() {
    let rows = [
        ("V(|)", "1"),
        ("V([a]V(|))", "[1]_a"),
        ("V(|,x,|)", "x"),
        ("V([a]V(|,x,|))", "[x]_a"),
        ("V(|,x,|,y,|)", "x y"),
        ("V([a]V(|,x,|,y,|))", "[x y]_a"),
    ];
    for (t, w) in rows {
        assert_eq!(phi(&tree(t)).word(), &word(w), "{t}");
        assert_eq!(psi(&rb(w)).unwrap(), tree(t), "{w}");
    }
}

#[test]
fn psi_of_mixed_words() {
    assert_eq!(psi(&rb("x [y]_a z")).unwrap(), tree("V(|,x,[a]V(|,y,|),z,|)"));
    assert_eq!(psi(&rb("[[x]_a y]_b")).unwrap(), tree("V([b]V([a]V(|,x,|),y,|))"));
}

#[test]
fn reduction_of_two_brackets() {
    let expected = "[[x]_a y]_ab + [x [y]_b]_ab + [x y]_ab";
    let c = RbfaContext::new(free(), int(1));
    assert_eq!(nf_product(&c, &rb("[x]_a"), &rb("[y]_b")).unwrap(), words(expected));
    let e = words("[x]_a [y]_b");
    assert_eq!(normalize(&c, &e).unwrap(), words(expected));
    for s in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(3)] {
        assert_eq!(rewrite_nf(&c, &e, s, 100).unwrap(), words(expected));
    }
    let c0 = RbfaContext::new(free(), int(0));
    assert_eq!(normalize(&c0, &e).unwrap(), words("[[x]_a y]_ab + [x [y]_b]_ab"));
}

#[test]
fn three_brackets_agree_across_strategies() {
    let c = RbfaContext::new(free(), int(1));
    let e = words("[x]_a [y]_b [z]_a");
    let left = rewrite_nf(&c, &e, Strategy::Leftmost, 1000).unwrap();
    let right = rewrite_nf(&c, &e, Strategy::Rightmost, 1000).unwrap();
    assert_eq!(left, right);
    assert_eq!(left, normalize(&c, &e).unwrap());
    assert!(left.basis_elements().all(Word::is_rb_word));
}

#[test]
fn rewriter_step_budget() {
    let c = RbfaContext::new(free(), int(1));
    let e = words("[x]_a [y]_b [z]_a [x]_b");
    assert!(matches!(rewrite_nf(&c, &e, Strategy::Leftmost, 1), Err(Error::RewriteExhausted(_))));
    assert!(rewrite_nf(&c, &e, Strategy::Leftmost, 0).is_err());
}

fn alphabet() -> [Symbol; 2] {
    [Symbol::new("x"), Symbol::new("y")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_and_psi_are_inverse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(&mut rng, &alphabet(), &free().carrier(), 3);
        let w = phi(&t);
        prop_assert!(w.word().is_rb_word());
        prop_assert_eq!(psi(&w).unwrap(), t.clone());
        let u = RbWord::certify(random_certified_word(&mut rng, &alphabet(), &free().carrier(), 2, 3)).unwrap();
        prop_assert_eq!(phi(&psi(&u).unwrap()), u);
    }

    #[test]
    fn phi_carries_product(seed in any::<u64>(), weight in -1i64..=2) {
        let c = RbfaContext::new(free(), int(weight));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let carrier = free().carrier();
        let t = random_tree(&mut rng, &alphabet(), &carrier, 2);
        let u = random_tree(&mut rng, &alphabet(), &carrier, 2);
        let lhs = phi_lc(&c.product(&t, &u).unwrap());
        prop_assert_eq!(lhs, nf_product(&c, &phi(&t), &phi(&u)).unwrap());
    }

    #[test]
    fn structural_and_rewritten_forms_agree(seed in any::<u64>(), pick in 0u64..1000) {
        let c = RbfaContext::new(free(), int(1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, &alphabet(), &free().carrier(), 2);
        let e = LinComb::basis(w);
        let nf = normalize(&c, &e).unwrap();
        prop_assert!(nf.basis_elements().all(Word::is_rb_word));
        for s in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(pick)] {
            prop_assert_eq!(&rewrite_nf(&c, &e, s, 100_000).unwrap(), &nf);
        }
    }
}
