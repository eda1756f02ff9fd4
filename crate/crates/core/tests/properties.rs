mod common;

use common::{element, random_instance, word, SMALL};
use pbw_core::formulas::{expand_levels, long_delta, long_lhs, Commutator};
use pbw_core::terms::occurrences;
use pbw_core::text::{parse_element, parse_word};
use pbw_core::*;
use proptest::prelude::*;

fn rewriter(lambda: i64) -> Rewriter {
    Rewriter::new(BracketOracle::abelian(2, Scalar::from_int(lambda)))
}

fn letter() -> impl Strategy<Value = Letter> {
    (0u32..2, 0u32..3).prop_map(|(g, k)| Letter::new(g, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_is_total_and_transitive(u in word(SMALL), v in word(SMALL), w in word(SMALL)) {
        prop_assert_eq!(u.cmp(&v), v.cmp(&u).reverse());
        prop_assert_eq!(u == v, u.cmp(&v).is_eq());
        if u <= v && v <= w {
            prop_assert!(u <= w);
        }
    }

    #[test]
    fn order_is_monomial(host in word(SMALL), u in word(SMALL), v in word(SMALL), pick in any::<prop::sample::Index>()) {
        // Contexts come from the occurrences of one letter of the host.
        let letters = host.all_letters();
        let t = RBWord::letter(letters[pick.index(letters.len())]);
        for q in occurrences(&host, &t) {
            prop_assert_eq!(q.substitute(&t), host.clone());
            prop_assert_eq!(u.cmp(&v), q.substitute(&u).cmp(&q.substitute(&v)));
        }
    }

    #[test]
    fn occurrences_substitute_back(w in word(SMALL), start in 0usize..4, len in 1usize..3) {
        let atoms = w.atoms();
        let start = start.min(atoms.len() - 1);
        let end = (start + len).min(atoms.len());
        let t = RBWord::new(atoms[start..end].to_vec());
        let found = occurrences(&w, &t);
        prop_assert!(!found.is_empty());
        for q in found {
            prop_assert_eq!(q.substitute(&t), w.clone());
        }
    }

    #[test]
    fn rendering_round_trips(w in word(SMALL), e in element(SMALL, 4)) {
        let names = Alphabet::standard(2);
        prop_assert_eq!(parse_word(&w.render(&names), &names).unwrap(), w);
        prop_assert_eq!(parse_element(&e.render(&names), &names).unwrap(), e);
    }

    #[test]
    fn multiplication_is_associative(a in element(SMALL, 3), b in element(SMALL, 3), c in element(SMALL, 3)) {
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn normal_forms_are_idempotent_and_irreducible(e in element(SMALL, 3), lambda in 0i64..2) {
        let rw = rewriter(lambda);
        let n = rw.normal_form(&e).unwrap();
        prop_assert_eq!(rw.normal_form(&n).unwrap(), n.clone());
        for w in n.words() {
            prop_assert!(rw.is_irreducible(w), "{:?}", w);
        }
    }

    #[test]
    fn normal_form_is_linear(a in element(SMALL, 2), b in element(SMALL, 2), c in -3i64..4, lambda in 0i64..2) {
        let rw = rewriter(lambda);
        let c = Scalar::from_int(c);
        let lhs = rw.normal_form(&(&a.scale(&c) + &b)).unwrap();
        let rhs = &rw.normal_form(&a).unwrap().scale(&c) + &rw.normal_form(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn oracle_is_antisymmetric(u in letter(), v in letter()) {
        let o = BracketOracle::new(2, Scalar::zero(), HigherPolicy::Zero)
            .with_rule(Letter::new(0, 1), Letter::new(1, 0), Element::letter(Letter::new(1, 0)));
        let (uv, vu) = (o.bracket(u, v).unwrap(), o.bracket(v, u).unwrap());
        prop_assert_eq!(&uv + &vu, Element::zero());
    }

    #[test]
    fn long_identity_holds_in_the_free_rb_algebra(
        seed in any::<u64>(),
        lambda in 0i64..2,
        k in 0u32..3,
    ) {
        let inst = random_instance(seed, k);
        let lambda = Scalar::from_int(lambda);
        let delta = long_delta(&inst, &lambda, &Commutator).unwrap();
        let diff = expand_levels(&(&long_lhs(&inst) - &delta));
        let free = Rewriter::new(BracketOracle::abelian(2, lambda)).with_rules(RuleSet::RB);
        prop_assert!(free.normal_form(&diff).unwrap().is_zero());
    }
}
