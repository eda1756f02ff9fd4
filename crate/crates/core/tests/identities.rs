//! The identity families that hold on every sample, asserted directly.

use pbw_core::enveloping::{check_axioms, AxiomKind};
use pbw_core::formulas::long_rb_element;
use pbw_core::presentation::{check_doubling, doubling, random_pre_post_lie};
use pbw_core::sample::{envelope_samples, random_element, WordShape};
use pbw_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn product_of_a_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let names = Alphabet::standard(2);
    for lambda in [0, 1] {
        let env = Envelope::new(Rewriter::new(BracketOracle::abelian(
            2,
            Scalar::from_int(lambda),
        )));
        let samples =
            envelope_samples(&mut rng, &env, &WordShape::new(2, 3, 2, 2), 2, 100).unwrap();
        let r = check_axioms(&env, AxiomKind::Assoc, &samples, &names).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }
}

#[test]
fn long_rb_identity_in_the_free_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let shape = WordShape::new(2, 2, 1, 1);
    for lambda in [0, 1, -1] {
        let l = Scalar::from_int(lambda);
        let free = Rewriter::new(BracketOracle::abelian(2, l.clone())).with_rules(RuleSet::RB);
        for t in 1..=3 {
            for _ in 0..15 {
                let bs: Vec<Element> = (0..t)
                    .map(|_| random_element(&mut rng, &shape, 2))
                    .collect();
                assert!(free
                    .normal_form(&long_rb_element(&bs, &l))
                    .unwrap()
                    .is_zero());
            }
        }
    }
}

#[test]
fn doubling_of_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (case, lambda) in [
        (Case::Pre, 0),
        (Case::Post, 1),
        (Case::Post, 2),
        (Case::Post, -1),
    ] {
        for n in 1..=2 {
            let c = random_pre_post_lie(case, n, Scalar::from_int(lambda), &mut rng).unwrap();
            let r = check_doubling(&doubling(&c).unwrap());
            assert!(r.passed(), "{:?}", r.violations);
        }
    }
}
