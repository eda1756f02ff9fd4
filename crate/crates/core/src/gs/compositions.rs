//! Bounded enumeration of compositions of `S` and their residuals.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::relation::{self, match_long_all, Relation, RelationKind};
use super::rewrite::{LongRules, Rewriter};
use crate::element::Element;
use crate::error::Result;
use crate::terms::{Alphabet, Atom, Letter, RBWord};

/// Limits on ambiguity words. `max_size` counts letter occurrences at every
/// depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_size: u32,
    pub max_rdeg: u32,
    pub max_level: u32,
    pub n_gens: usize,
}

impl Bounds {
    fn letters(&self) -> Vec<Letter> {
        (0..self.n_gens as u32)
            .flat_map(|g| (0..=self.max_level).map(move |k| Letter::new(g, k)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositionKind {
    Intersection,
    Inclusion,
}

impl fmt::Display for CompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompositionKind::Intersection => "intersection",
            CompositionKind::Inclusion => "inclusion",
        })
    }
}

/// An ambiguity `w` of two relations and its raw residual, `fμ - νg` for an
/// intersection or `f - q|_g` for an inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub kind: CompositionKind,
    pub f: Relation,
    pub g: Relation,
    pub word: RBWord,
    pub residual: Element,
}

impl Composition {
    /// E.g. `inclusion rb/long`.
    pub fn label(&self) -> String {
        format!("{} {}/{}", self.kind, self.f.kind, self.g.kind)
    }
}

/// The residual after normalization; zero certifies triviality.
pub fn check_composition(rw: &Rewriter, c: &Composition) -> Result<Element> {
    rw.normal_form(&c.residual)
}

/// Every word over `letters` with at most `max_size` letter occurrences
/// (at all depths) and R-degree at most `max_rdeg`, in the monomial order.
pub fn words_within(letters: &[Letter], max_size: u32, max_rdeg: u32) -> Vec<RBWord> {
    let mut pool = WordPool::new(letters.to_vec());
    let mut out = Vec::new();
    for size in 1..=max_size {
        for rdeg in 0..=max_rdeg {
            out.extend_from_slice(pool.get(size, rdeg));
        }
    }
    out.sort();
    out
}

/// Words of exact letter count and R-degree, built bottom up and shared.
struct WordPool {
    letters: Vec<Letter>,
    words: HashMap<(u32, u32), Vec<RBWord>>,
}

impl WordPool {
    fn new(letters: Vec<Letter>) -> Self {
        WordPool {
            letters,
            words: HashMap::new(),
        }
    }

    fn atoms(&mut self, size: u32, rdeg: u32) -> Vec<Atom> {
        if rdeg == 0 {
            return if size == 1 {
                self.letters.iter().copied().map(Atom::Letter).collect()
            } else {
                Vec::new()
            };
        }
        self.get(size, rdeg - 1)
            .iter()
            .cloned()
            .map(Atom::r)
            .collect()
    }

    fn get(&mut self, size: u32, rdeg: u32) -> &[RBWord] {
        if !self.words.contains_key(&(size, rdeg)) {
            let mut out: Vec<RBWord> = self
                .atoms(size, rdeg)
                .into_iter()
                .map(|a| RBWord::new(vec![a]))
                .collect();
            for s1 in 1..size {
                for r1 in 0..=rdeg {
                    let heads = self.atoms(s1, r1);
                    if heads.is_empty() {
                        continue;
                    }
                    let tails = self.get(size - s1, rdeg - r1).to_vec();
                    for h in &heads {
                        for t in &tails {
                            let mut atoms = Vec::with_capacity(1 + t.breadth());
                            atoms.push(h.clone());
                            atoms.extend_from_slice(t.atoms());
                            out.push(RBWord::new(atoms));
                        }
                    }
                }
            }
            self.words.insert((size, rdeg), out);
        }
        &self.words[&(size, rdeg)]
    }
}

/// Streams every composition within `bounds`. Intersections are the overlaps
/// `xyz` of two commutations and `R(a)R(b)R(c)` of two rb relations; every
/// other ambiguity contains one leading word inside another, so inclusions
/// are enumerated from the roots `R(a)R(b)` and `R(c)` against every other
/// occurrence of a leading word in them.
pub fn for_each_composition(
    rw: &Rewriter,
    bounds: &Bounds,
    mut visit: impl FnMut(Composition) -> Result<()>,
) -> Result<()> {
    let rules = rw.rules();
    let letters = bounds.letters();
    let mut pool = WordPool::new(letters.clone());
    let (b, d) = (bounds.max_size, bounds.max_rdeg);

    if rules.comm && b >= 3 {
        for &x in &letters {
            for &y in letters.iter().filter(|&&y| y < x) {
                for &z in letters.iter().filter(|&&z| z < y) {
                    let f = relation::comm(x, y, rw.oracle())?;
                    let g = relation::comm(y, z, rw.oracle())?;
                    let (xe, ze) = (Element::letter(x), Element::letter(z));
                    let residual = &f.element.multiply(&ze) - &xe.multiply(&g.element);
                    visit(Composition {
                        kind: CompositionKind::Intersection,
                        f,
                        g,
                        word: RBWord::letters([x, y, z]),
                        residual,
                    })?;
                }
            }
        }
    }

    if rules.rb && d >= 3 {
        for triple in splits(b, d - 3, 3) {
            let [(sa, ra), (sb, rb_), (sc, rc)] = [triple[0], triple[1], triple[2]];
            let aa = pool.get(sa, ra).to_vec();
            let bb = pool.get(sb, rb_).to_vec();
            let cc = pool.get(sc, rc).to_vec();
            for a in &aa {
                for bw in &bb {
                    for c in &cc {
                        let f = relation::rb(a, bw, rw.lambda(), rw.is_perturbed());
                        let g = relation::rb(bw, c, rw.lambda(), rw.is_perturbed());
                        let rc_ = RBWord::bracket(c.clone());
                        let residual = &f.element.multiply(&Element::word(rc_.clone()))
                            - &Element::word(RBWord::bracket(a.clone())).multiply(&g.element);
                        let word = f.leading.concat(&rc_);
                        visit(Composition {
                            kind: CompositionKind::Intersection,
                            f,
                            g,
                            word,
                            residual,
                        })?;
                    }
                }
            }
        }
    }

    if rules.rb && d >= 2 {
        for pair in splits(b, d - 2, 2) {
            let [(sa, ra), (sb, rb_)] = [pair[0], pair[1]];
            let aa = pool.get(sa, ra).to_vec();
            let bb = pool.get(sb, rb_).to_vec();
            for a in &aa {
                for bw in &bb {
                    let w = RBWord::bracket(a.clone()).concat(&RBWord::bracket(bw.clone()));
                    inclusions_at(rw, &w, &mut visit)?;
                }
            }
        }
    }

    if rules.long != LongRules::Off && d >= 1 {
        for size in 1..=b {
            for rdeg in 0..d {
                for c in pool.get(size, rdeg).to_vec() {
                    let w = RBWord::bracket(c.clone());
                    let rooted = match rules.long {
                        LongRules::Full => !match_long_all(&c, rw.z_condition()).is_empty(),
                        _ => c.as_single_letter().is_some(),
                    };
                    if rooted {
                        inclusions_at(rw, &w, &mut visit)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// `(size, rdeg)` shares for `parts` nonempty factors with total size at
/// most `max_size` and total R-degree at most `max_rdeg`.
fn splits(max_size: u32, max_rdeg: u32, parts: usize) -> Vec<Vec<(u32, u32)>> {
    fn go(
        parts: usize,
        size_left: u32,
        rdeg_left: u32,
        acc: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        if acc.len() == parts {
            out.push(acc.clone());
            return;
        }
        let still = (parts - acc.len() - 1) as u32;
        for s in 1..=size_left.saturating_sub(still) {
            for r in 0..=rdeg_left {
                acc.push((s, r));
                go(parts, size_left - s, rdeg_left - r, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(parts, max_size, max_rdeg, &mut Vec::new(), &mut out);
    out
}

/// Inclusions rooted at `w`: the root relation(s) at the whole word against
/// every other leading-word occurrence in `w`.
fn inclusions_at(
    rw: &Rewriter,
    w: &RBWord,
    visit: &mut impl FnMut(Composition) -> Result<()>,
) -> Result<()> {
    let redexes = rw.redexes(w, false);
    let is_root = |r: &super::rewrite::Redex| {
        r.path.is_empty() && r.start == 0 && {
            match r.kind {
                RelationKind::Rb => w.breadth() == 2,
                RelationKind::Long => w.breadth() == 1,
                RelationKind::Comm => false,
            }
        }
    };
    for root in redexes.iter().filter(|r| is_root(r)) {
        let f = rw.instantiate(w, root)?;
        for other in redexes.iter().filter(|r| *r != root) {
            let g = rw.instantiate(w, other)?;
            let q = other.context(w);
            let residual = &f.element - &g.element.substitute_into(&q);
            visit(Composition {
                kind: CompositionKind::Inclusion,
                f: f.clone(),
                g,
                word: w.clone(),
                residual,
            })?;
        }
    }
    Ok(())
}

/// One checked composition, rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionRecord {
    pub kind: CompositionKind,
    pub f: String,
    pub g: String,
    pub word: String,
    pub residual: String,
    pub steps: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GsReport {
    pub total: usize,
    pub by_kind: BTreeMap<String, usize>,
    /// Compositions with a nonzero residual, counted whether or not kept.
    pub failures: usize,
    pub nonzero: Vec<CompositionRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<CompositionRecord>,
}

impl GsReport {
    pub fn all_trivial(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Keep a record of every composition, not only failures.
    pub keep_records: bool,
    /// Stop at the first nonzero residual.
    pub stop_at_first_failure: bool,
    /// Keep at most this many failure records; `None` keeps all.
    pub max_failures_kept: Option<usize>,
}

/// Enumerates and normalizes every composition within `bounds`.
pub fn check_compositions(
    rw: &Rewriter,
    bounds: &Bounds,
    alphabet: &Alphabet,
    opts: CheckOptions,
) -> Result<GsReport> {
    let mut report = GsReport::default();
    let record = |c: &Composition, nf: &Element| -> Result<CompositionRecord> {
        Ok(CompositionRecord {
            kind: c.kind,
            f: c.f.provenance.render(alphabet),
            g: c.g.provenance.render(alphabet),
            word: c.word.render(alphabet),
            residual: nf.render(alphabet),
            steps: rw.step_count(&c.residual)?,
        })
    };
    for_each_composition(rw, bounds, |c| {
        if opts.stop_at_first_failure && report.failures > 0 {
            return Ok(());
        }
        report.total += 1;
        *report.by_kind.entry(c.label()).or_default() += 1;
        let nf = check_composition(rw, &c)?;
        if !nf.is_zero() {
            report.failures += 1;
            if opts
                .max_failures_kept
                .is_none_or(|m| report.nonzero.len() < m)
            {
                report.nonzero.push(record(&c, &nf)?);
            }
        }
        if opts.keep_records {
            report.records.push(record(&c, &nf)?);
        }
        Ok(())
    })?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::BracketOracle;
    use crate::scalar::Scalar;

    fn rw(lambda: i64) -> Rewriter {
        Rewriter::new(BracketOracle::abelian(2, Scalar::from_int(lambda)))
    }

    #[test]
    fn pool_counts() {
        let mut p = WordPool::new(vec![Letter::new(0, 0), Letter::new(1, 0)]);
        assert_eq!(p.get(1, 0).len(), 2);
        assert_eq!(p.get(3, 0).len(), 8);
        // R(x), and the words of size 2 with one R: R(xy), R(x)y, xR(y).
        assert_eq!(p.get(1, 1).len(), 2);
        assert_eq!(p.get(2, 1).len(), 4 + 4 + 4);
    }

    #[test]
    fn level_zero_bounds_are_trivial() {
        let bounds = Bounds {
            max_size: 4,
            max_rdeg: 2,
            max_level: 0,
            n_gens: 2,
        };
        for lambda in [0, 1] {
            let r = check_compositions(
                &rw(lambda),
                &bounds,
                &Alphabet::standard(2),
                CheckOptions::default(),
            )
            .unwrap();
            assert!(r.total > 0);
            assert!(r.all_trivial(), "{:?}", r.nonzero.first());
        }
    }

    // R(a)R(P(a)): both sides end in words no relation applies to, yet they
    // differ by -R(P(a)P(a)) - R(aP²(a)) + P(a)P²(a), which lies in the ideal.
    #[test]
    fn rb_over_raised_letter_is_not_resolved() {
        let bounds = Bounds {
            max_size: 2,
            max_rdeg: 2,
            max_level: 1,
            n_gens: 1,
        };
        let r = check_compositions(
            &Rewriter::new(BracketOracle::abelian(1, Scalar::zero())),
            &bounds,
            &Alphabet::new(["a"]),
            CheckOptions::default(),
        )
        .unwrap();
        let bad = r
            .nonzero
            .iter()
            .find(|c| c.word == "R(a) R(P^1(a))")
            .expect("the R(a)R(P(a)) inclusion is reported");
        assert_eq!(
            bad.residual,
            "-R(P^1(a) P^1(a)) - R(a P^2(a)) + P^1(a) P^2(a)"
        );
    }

    #[test]
    fn comm_comm_overlap_is_trivial_for_jacobi_oracle() {
        let bounds = Bounds {
            max_size: 3,
            max_rdeg: 0,
            max_level: 2,
            n_gens: 2,
        };
        let o = BracketOracle::abelian(2, Scalar::zero());
        let r = check_compositions(
            &Rewriter::new(o),
            &bounds,
            &Alphabet::standard(2),
            CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(r.by_kind.get("intersection comm/comm"), Some(&20));
        assert!(r.all_trivial());
    }
}
