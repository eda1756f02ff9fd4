//! Normal forms modulo `S`.

use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};
use std::cell::{Cell, RefCell};
use std::rc::Rc;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

use super::relation::{self, match_long_all, LongPattern, Relation, RelationKind, ZCondition};
use crate::element::Element;
use crate::error::Result;
use crate::presentation::BracketOracle;
use crate::scalar::Scalar;
use crate::terms::{Atom, RBWord, StarContext};

/// Which instances of the long relation are active.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LongRules {
    Off,
    /// Only `R(x) → P(x)` for single letters.
    Degenerate,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RuleSet {
    pub comm: bool,
    pub rb: bool,
    pub long: LongRules,
}

impl RuleSet {
    pub const ALL: RuleSet = RuleSet {
        comm: true,
        rb: true,
        long: LongRules::Full,
    };
    pub const COMM: RuleSet = RuleSet {
        comm: true,
        rb: false,
        long: LongRules::Off,
    };
    pub const RB: RuleSet = RuleSet {
        comm: false,
        rb: true,
        long: LongRules::Off,
    };
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::ALL
    }
}

/// An occurrence of a leading word: the sequence at `path`, atoms
/// `start..start + len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Redex {
    pub kind: RelationKind,
    pub path: Vec<usize>,
    pub start: usize,
    pattern: Option<LongPattern>,
}

impl Redex {
    pub fn len(&self) -> usize {
        match self.kind {
            RelationKind::Long => 1,
            _ => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn pattern(&self) -> Option<&LongPattern> {
        self.pattern.as_ref()
    }

    pub fn context(&self, w: &RBWord) -> StarContext {
        w.context_at(&self.path, self.start, self.len())
    }
}

/// Terms held across both caches before they are dropped.
const CACHE_TERMS: usize = 2_000_000;

/// Rewrites with the relations of `S` for a fixed oracle and weight.
///
/// One-step reducts and normal forms are memoized per word; the caches are
/// dropped wholesale once they hold more than a fixed number of terms.
pub struct Rewriter {
    oracle: Arc<BracketOracle>,
    rules: RuleSet,
    z: ZCondition,
    perturb: bool,
    reducts: RefCell<HashMap<RBWord, Option<Rc<Element>>>>,
    nfs: RefCell<HashMap<RBWord, Rc<Element>>>,
    cached: Cell<usize>,
}

impl Clone for Rewriter {
    fn clone(&self) -> Self {
        Rewriter {
            oracle: self.oracle.clone(),
            rules: self.rules,
            z: self.z,
            perturb: self.perturb,
            reducts: RefCell::default(),
            nfs: RefCell::default(),
            cached: Cell::new(0),
        }
    }
}

impl std::fmt::Debug for Rewriter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Rewriter")
            .field("oracle", &self.oracle)
            .field("rules", &self.rules)
            .field("z", &self.z)
            .field("perturb", &self.perturb)
            .finish()
    }
}

impl Rewriter {
    pub fn new(oracle: impl Into<Arc<BracketOracle>>) -> Self {
        Rewriter {
            oracle: oracle.into(),
            rules: RuleSet::ALL,
            z: ZCondition::default(),
            perturb: false,
            reducts: RefCell::default(),
            nfs: RefCell::default(),
            cached: Cell::new(0),
        }
    }

    pub fn with_rules(mut self, rules: RuleSet) -> Self {
        self.rules = rules;
        self.clear_caches();
        self
    }

    pub fn with_z_condition(mut self, z: ZCondition) -> Self {
        self.z = z;
        self.clear_caches();
        self
    }

    /// Replaces `λ` by `λ + 1` in the last term of every rb relation.
    pub fn perturbed(mut self, perturb: bool) -> Self {
        self.perturb = perturb;
        self.clear_caches();
        self
    }

    pub fn oracle(&self) -> &BracketOracle {
        &self.oracle
    }

    pub fn lambda(&self) -> &Scalar {
        self.oracle.lambda()
    }

    pub fn rules(&self) -> RuleSet {
        self.rules
    }

    pub fn is_perturbed(&self) -> bool {
        self.perturb
    }

    pub fn z_condition(&self) -> ZCondition {
        self.z
    }

    pub fn clear_caches(&self) {
        self.reducts.borrow_mut().clear();
        self.nfs.borrow_mut().clear();
        self.cached.set(0);
    }

    fn charge(&self, terms: usize) {
        self.cached.set(self.cached.get() + 1 + terms);
    }

    fn trim_caches(&self) {
        if self.cached.get() > CACHE_TERMS {
            self.clear_caches();
        }
    }

    /// Leading-word occurrences in scan order: outermost sequences first,
    /// leftmost position first, and comm before rb before long at one
    /// position. Long occurrences list every admissible decomposition.
    pub fn redexes(&self, w: &RBWord, first_only: bool) -> Vec<Redex> {
        let mut out = Vec::new();
        for path in w.sequence_paths() {
            let seq = w.sequence_at(&path);
            for i in 0..seq.len() {
                let next = seq.get(i + 1);
                let mut found = |kind, pattern| {
                    out.push(Redex {
                        kind,
                        path: path.clone(),
                        start: i,
                        pattern,
                    })
                };
                if self.rules.comm {
                    if let (Atom::Letter(x), Some(Atom::Letter(y))) = (&seq[i], next) {
                        if x > y {
                            found(RelationKind::Comm, None);
                        }
                    }
                }
                if self.rules.rb && seq[i].is_r() && next.is_some_and(Atom::is_r) {
                    found(RelationKind::Rb, None);
                }
                if let Atom::R(c) = &seq[i] {
                    match self.rules.long {
                        LongRules::Off => {}
                        LongRules::Degenerate => {
                            if c.as_single_letter().is_some() {
                                for p in match_long_all(c, self.z) {
                                    found(RelationKind::Long, Some(p));
                                }
                            }
                        }
                        LongRules::Full => {
                            let all = match_long_all(c, self.z);
                            let take = if first_only {
                                all.len().min(1)
                            } else {
                                all.len()
                            };
                            for p in all.into_iter().take(take) {
                                found(RelationKind::Long, Some(p));
                            }
                        }
                    }
                }
                if first_only && !out.is_empty() {
                    return out;
                }
            }
        }
        out
    }

    pub fn is_reducible(&self, w: &RBWord) -> bool {
        !self.redexes(w, true).is_empty()
    }

    pub fn is_irreducible(&self, w: &RBWord) -> bool {
        !self.is_reducible(w)
    }

    /// The relation of `S` whose leading word occurs at `r` in `w`.
    pub fn instantiate(&self, w: &RBWord, r: &Redex) -> Result<Relation> {
        let seq = w.sequence_at(&r.path);
        match r.kind {
            RelationKind::Comm => relation::comm(
                seq[r.start].as_letter().expect("letter"),
                seq[r.start + 1].as_letter().expect("letter"),
                &self.oracle,
            ),
            RelationKind::Rb => Ok(relation::rb(
                seq[r.start].as_r().expect("R-letter"),
                seq[r.start + 1].as_r().expect("R-letter"),
                self.lambda(),
                self.perturb,
            )),
            RelationKind::Long => relation::long(
                r.pattern.as_ref().expect("long redex has a pattern"),
                &self.oracle,
            ),
        }
    }

    pub fn find_reduction(&self, w: &RBWord) -> Result<Option<(Relation, StarContext)>> {
        match self.redexes(w, true).first() {
            None => Ok(None),
            Some(r) => Ok(Some((self.instantiate(w, r)?, r.context(w)))),
        }
    }

    pub fn all_reductions(&self, w: &RBWord) -> Result<Vec<(Relation, StarContext)>> {
        self.redexes(w, false)
            .iter()
            .map(|r| Ok((self.instantiate(w, r)?, r.context(w))))
            .collect()
    }

    /// `q|_{s̄ - s}` for the first reduction of `w`, if any.
    pub fn step(&self, w: &RBWord) -> Result<Option<Rc<Element>>> {
        if let Some(r) = self.reducts.borrow().get(w) {
            return Ok(r.clone());
        }
        let r = match self.find_reduction(w)? {
            None => None,
            Some((rel, q)) => Some(Rc::new(rel.reduct().substitute_into(&q))),
        };
        self.charge(r.as_ref().map_or(0, |e| e.len()));
        self.reducts.borrow_mut().insert(w.clone(), r.clone());
        Ok(r)
    }

    pub fn nf_word(&self, w: &RBWord) -> Result<Rc<Element>> {
        if let Some(e) = self.nfs.borrow().get(w) {
            return Ok(e.clone());
        }
        self.trim_caches();
        // Depth-first over the reduction DAG with an explicit stack.
        let mut stack: Vec<(RBWord, Option<Rc<Element>>)> = vec![(w.clone(), None)];
        while let Some((u, reduct)) = stack.last_mut() {
            if self.nfs.borrow().contains_key(u) {
                stack.pop();
                continue;
            }
            let red = match reduct {
                Some(r) => r.clone(),
                None => match self.step(u)? {
                    None => {
                        let u = u.clone();
                        self.charge(1);
                        self.nfs
                            .borrow_mut()
                            .insert(u.clone(), Rc::new(Element::word(u)));
                        stack.pop();
                        continue;
                    }
                    Some(r) => {
                        *reduct = Some(r.clone());
                        r
                    }
                },
            };
            let missing = {
                let nfs = self.nfs.borrow();
                red.words().find(|v| !nfs.contains_key(*v)).cloned()
            };
            if let Some(v) = missing {
                stack.push((v, None));
                continue;
            }
            let mut nf = Element::zero();
            {
                let nfs = self.nfs.borrow();
                for (v, c) in red.iter() {
                    nf.add_scaled(&nfs[v], c);
                }
            }
            let u = u.clone();
            self.charge(nf.len());
            self.nfs.borrow_mut().insert(u, Rc::new(nf));
            stack.pop();
        }
        Ok(self.nfs.borrow()[w].clone())
    }

    /// The projection onto the span of irreducible words.
    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in e.iter() {
            out.add_scaled(&*self.nf_word(w)?, c);
        }
        Ok(out)
    }

    /// Normal form by an arbitrary strategy: any reducible word of the
    /// current element, reduced by any applicable relation (both long
    /// decompositions included). No caching.
    pub fn normal_form_random<R: Rng + ?Sized>(&self, e: &Element, rng: &mut R) -> Result<Element> {
        let mut cur = e.clone();
        loop {
            let reducible: Vec<RBWord> = cur
                .words()
                .filter(|w| self.is_reducible(w))
                .cloned()
                .collect();
            let Some(w) = reducible.choose(rng) else {
                return Ok(cur);
            };
            let redexes = self.redexes(w, false);
            let r = redexes.choose(rng).expect("reducible");
            let rel = self.instantiate(w, r)?;
            let c = cur.coefficient(w);
            cur.add_term(w.clone(), -c.clone());
            cur.add_scaled(&rel.reduct().substitute_into(&r.context(w)), &c);
        }
    }

    /// Number of distinct reducible words met while normalizing `e` with
    /// the default strategy.
    pub fn step_count(&self, e: &Element) -> Result<usize> {
        self.trim_caches();
        let mut seen: HashSet<RBWord> = HashSet::default();
        let mut stack: Vec<RBWord> = e.words().cloned().collect();
        let mut count = 0;
        while let Some(w) = stack.pop() {
            if !seen.insert(w.clone()) {
                continue;
            }
            if let Some(r) = self.step(&w)? {
                count += 1;
                stack.extend(r.words().filter(|v| !seen.contains(*v)).cloned());
            }
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{Alphabet, Letter};
    use crate::text::{parse_element, parse_word};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rw(n: usize, lambda: i64) -> Rewriter {
        Rewriter::new(BracketOracle::abelian(n, Scalar::from_int(lambda)))
    }

    #[test]
    fn normal_form_examples() {
        let y = Alphabet::new(["y"]);
        let r = rw(1, 0);
        let nf = |s: &str| {
            r.normal_form(&parse_element(s, &y).unwrap())
                .unwrap()
                .render(&y)
        };
        assert_eq!(nf("R(y)"), "P^1(y)");
        assert_eq!(nf("R(y P(y))"), "1/2 P^1(y) P^1(y)");
        assert_eq!(nf("R(y R(y))"), "1/2 P^1(y) P^1(y)");
        let ab = Alphabet::standard(2);
        let r = rw(2, 1);
        assert_eq!(
            r.normal_form(&parse_element("b a", &ab).unwrap())
                .unwrap()
                .render(&ab),
            "a b"
        );
    }

    #[test]
    fn find_reduction_examples() {
        let ab = Alphabet::standard(2);
        let r = rw(2, 0);
        let (rel, q) = r
            .find_reduction(&parse_word("b a", &ab).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(rel.kind, RelationKind::Comm);
        assert!(q.is_star());
        let (rel, _) = r
            .find_reduction(&parse_word("R(a) R(a)", &ab).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(rel.kind, RelationKind::Rb);
        assert!(r
            .find_reduction(&parse_word("a b", &ab).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn letters_are_irreducible() {
        let r = rw(2, 1);
        for g in 0..2 {
            for k in 0..4 {
                let l = Letter::new(g, k);
                assert_eq!(*r.nf_word(&RBWord::letter(l)).unwrap(), Element::letter(l));
            }
        }
    }

    #[test]
    fn random_strategy_agrees() {
        let ab = Alphabet::standard(2);
        let r = rw(2, 1);
        let e = parse_element("R(b R(a) P(a)) R(a b) - 2 b a R(R(b) a)", &ab).unwrap();
        let nf = r.normal_form(&e).unwrap();
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(r.normal_form_random(&e, &mut rng).unwrap(), nf);
        }
        assert!(nf.words().all(|w| r.is_irreducible(w)));
        assert!(r.step_count(&e).unwrap() > 0);
    }
}
