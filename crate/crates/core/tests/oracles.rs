//! Frozen small-case values, each worked out by hand or by an independent
//! expansion and checked here through the public API.

use pbw_core::enveloping::check_envelope;
use pbw_core::formulas::{symmetrization_defect, Commutator};
use pbw_core::gs::match_long;
use pbw_core::pbw::{closure_report, com_words, enumerate_e, hilbert_counts, is_in_e, NotInE};
use pbw_core::presentation::forced_oracle;
use pbw_core::text::{parse_element, parse_word};
use pbw_core::*;

fn nf(rw: &Rewriter, src: &str, names: &Alphabet) -> String {
    let e = parse_element(src, names).unwrap();
    rw.normal_form(&e).unwrap().render(names)
}

fn one_gen_pre(c: i64) -> PrePostLie {
    let t = StructureTable::from_fn(1, |_, _| vec![Scalar::from_int(c)]);
    PrePostLie::new(Case::Pre, Alphabet::new(["y"]), Scalar::zero(), t, None).unwrap()
}

#[test]
fn commutation_orders_letters() {
    let ab = Alphabet::standard(2);
    let rw = Rewriter::new(BracketOracle::abelian(2, Scalar::zero()));
    assert_eq!(nf(&rw, "b a", &ab), "a b");
    assert_eq!(nf(&rw, "a b - b a", &ab), "0");
    assert_eq!(nf(&rw, "P(a) a", &ab), "a P^1(a)");
}

#[test]
fn symmetrization_vanishes_in_the_enveloping_algebra() {
    let o = BracketOracle::abelian(2, Scalar::zero());
    let rw = Rewriter::new(o.clone()).with_rules(RuleSet::COMM);
    let (y, x) = (Letter::new(1, 0), Letter::new(0, 1));
    for l in 0..=4 {
        assert!(rw
            .normal_form(&symmetrization_defect(y, x, l, &o).unwrap())
            .unwrap()
            .is_zero());
        assert!(symmetrization_defect(y, x, l, &Commutator)
            .unwrap()
            .is_zero());
    }
}

#[test]
fn long_relation_examples() {
    let y = Alphabet::new(["y"]);
    let rw = Rewriter::new(BracketOracle::abelian(1, Scalar::zero()));
    assert_eq!(nf(&rw, "R(y P(y))", &y), "1/2 P^1(y) P^1(y)");
    assert_eq!(nf(&rw, "R(y R(y))", &y), "1/2 P^1(y) P^1(y)");
    assert_eq!(nf(&rw, "R(y)", &y), "P^1(y)");
}

#[test]
fn long_leading_word_side_conditions() {
    let ab = Alphabet::standard(2);
    let m = |s: &str| match_long(&parse_word(s, &ab).unwrap(), ZCondition::default());
    assert_eq!(m("R(P(a) P(a))"), None);
    assert_eq!(m("R(a P(b))"), None);
    let p = m("R(P(a) b)").expect("matches");
    assert_eq!(p.vecs, vec![vec![Letter::new(0, 1)]]);
    assert_eq!((p.beta, p.k), (Letter::new(1, 0), 0));
}

#[test]
fn forced_brackets_of_one_generator() {
    for c in 0..3 {
        let o = forced_oracle(&one_gen_pre(c)).unwrap();
        let b = o.bracket(Letter::new(0, 1), Letter::new(0, 0)).unwrap();
        assert_eq!(
            b,
            Element::letter(Letter::new(0, 0)).scale(&Scalar::from_int(c))
        );
    }
    let o = forced_oracle(&one_gen_pre(1)).unwrap();
    assert!(matches!(
        o.bracket(Letter::new(0, 2), Letter::new(0, 0)),
        Err(Error::OracleIncomplete { .. })
    ));
}

#[test]
fn envelope_reproduces_the_product() {
    for c in 0..3 {
        let pl = one_gen_pre(c);
        let env = Envelope::new(Rewriter::new(forced_oracle(&pl).unwrap()));
        let r = check_envelope(&pl, &env).unwrap();
        assert_eq!(r.checked, 1);
        assert!(r.passed(), "{:?}", r.failures);
    }
}

#[test]
fn basis_words_and_membership() {
    let y = Alphabet::new(["y"]);
    let words: Vec<String> = enumerate_e(Case::Post, 1, 2)
        .iter()
        .map(|w| w.render(&y))
        .collect();
    assert_eq!(words, ["y P^1(y)", "y y"]);
    assert_eq!(hilbert_counts(Case::Post, 1, 2), [1, 2]);
    assert_eq!(hilbert_counts(Case::Pre, 1, 8), [1; 8]);

    let letters = [Letter::new(0, 0), Letter::new(0, 1), Letter::new(1, 0)];
    assert_eq!(com_words(&letters, 2).len(), 6);

    let w = |s: &str| parse_word(s, &y).unwrap();
    assert_eq!(
        is_in_e(&w("R(y P(y)) y"), Case::Pre),
        Err(NotInE::Exception)
    );
    assert_eq!(is_in_e(&w("P(y)"), Case::Pre), Err(NotInE::LevelZero));
    assert!(is_in_e(&w("y P(y) P(y)"), Case::Pre).is_ok());
}

#[test]
fn small_closures() {
    let run = |case, n, lambda: i64, deg| {
        let c = PrePostLie::trivial(case, Alphabet::standard(n), Scalar::from_int(lambda)).unwrap();
        let env = Envelope::new(Rewriter::new(forced_oracle(&c).unwrap()));
        closure_report(case, n, &env, deg, c.gens()).unwrap()
    };
    let post = run(Case::Post, 1, 1, 5);
    assert!(post.passed());
    assert_eq!(post.counts[1], 2);
    let pre = run(Case::Pre, 2, 0, 4);
    assert!(pre.passed());
    assert_eq!(pre.ranks, [2, 4, 10, 32]);
}
