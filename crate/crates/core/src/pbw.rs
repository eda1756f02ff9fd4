//! The basis words `E` of universal enveloping pre- and postassociative
//! algebras: grammar, enumeration, membership and closure checks.
//!
//! An `EWord` is written over `Y` (level-0 letters) and `Y′ = P(Y)` (level-1
//! letters): `[R(z_1)] w_1 R(z_2) w_2 … R(z_s) w_s [R(z_{s+1})]` with every
//! `w_i` a nonempty weakly increasing word and every `z_i` an `EWord` of
//! degree at least two that is not of the exceptional shape
//! `R(q_1)u_1…R(q_t)u_t y P(y)^k R(q_{t+1})`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::element::Element;
use crate::enveloping::{EnvElement, Envelope, Op};
use crate::error::{Error, Result};
use crate::presentation::Case;
use crate::terms::{Alphabet, Atom, Letter, RBWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EWord {
    lead: Option<Box<EWord>>,
    segments: Vec<Vec<Letter>>,
    interior: Vec<EWord>,
    trail: Option<Box<EWord>>,
}

/// Why a word is not in `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum NotInE {
    /// A letter of level above one.
    LevelTooHigh,
    /// Two R-letters side by side.
    AdjacentR,
    /// No letter segment at all.
    NoSegment,
    /// A segment is not weakly increasing.
    Unsorted,
    /// The level-0 letter condition fails.
    LevelZero,
    /// An R-letter wraps a bare generator.
    GeneratorContent,
    /// An R-letter content has the exceptional shape.
    Exception,
    /// An R-letter content is itself not in `E`.
    Content(Box<NotInE>),
}

impl fmt::Display for NotInE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotInE::LevelTooHigh => f.write_str("letter of level above one"),
            NotInE::AdjacentR => f.write_str("adjacent R-letters"),
            NotInE::NoSegment => f.write_str("no letter segment"),
            NotInE::Unsorted => f.write_str("segment is not weakly increasing"),
            NotInE::LevelZero => f.write_str("the level-0 letter condition fails"),
            NotInE::GeneratorContent => f.write_str("R-letter wraps a generator"),
            NotInE::Exception => f.write_str("R-letter content has the exceptional form"),
            NotInE::Content(inner) => write!(f, "R-letter content: {inner}"),
        }
    }
}

impl EWord {
    /// The generator `y`.
    pub fn generator(gen: u32) -> Self {
        EWord {
            lead: None,
            segments: vec![vec![Letter::new(gen, 0)]],
            interior: Vec::new(),
            trail: None,
        }
    }

    pub fn lead(&self) -> Option<&EWord> {
        self.lead.as_deref()
    }

    pub fn segments(&self) -> &[Vec<Letter>] {
        &self.segments
    }

    pub fn interior(&self) -> &[EWord] {
        &self.interior
    }

    pub fn trail(&self) -> Option<&EWord> {
        self.trail.as_deref()
    }

    /// Letter occurrences at every depth.
    pub fn degree(&self) -> u32 {
        self.contents().map(EWord::degree).sum::<u32>()
            + self.segments.iter().map(|s| s.len() as u32).sum::<u32>()
    }

    fn contents(&self) -> impl Iterator<Item = &EWord> + '_ {
        self.lead
            .as_deref()
            .into_iter()
            .chain(self.interior.iter())
            .chain(self.trail.as_deref())
    }

    pub fn is_generator(&self) -> bool {
        self.lead.is_none()
            && self.trail.is_none()
            && self.segments.len() == 1
            && self.segments[0].len() == 1
            && self.segments[0][0].level == 0
    }

    /// The word in `A`: `P(y)` becomes the letter `x_{y,1}`.
    pub fn to_word(&self) -> RBWord {
        let mut atoms = Vec::new();
        if let Some(z) = &self.lead {
            atoms.push(Atom::r(z.to_word()));
        }
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                atoms.push(Atom::r(self.interior[i - 1].to_word()));
            }
            atoms.extend(s.iter().copied().map(Atom::Letter));
        }
        if let Some(z) = &self.trail {
            atoms.push(Atom::r(z.to_word()));
        }
        RBWord::new(atoms)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.to_word().render(alphabet)
    }

    fn level0_count(&self) -> usize {
        self.segments
            .iter()
            .flatten()
            .filter(|l| l.level == 0)
            .count()
    }

    /// The shape `R(q_1)u_1…R(q_t)u_t y P(y)^k R(q_{t+1})`: every segment but
    /// the last over `Y′`, the last `u y P(y)^k` with `u` over `Y′` below `y`.
    pub fn is_exception(&self) -> bool {
        let (last, rest) = self.segments.split_last().expect("segments are nonempty");
        if rest.iter().flatten().any(|l| l.level == 0) {
            return false;
        }
        let zeros: Vec<usize> = (0..last.len()).filter(|&i| last[i].level == 0).collect();
        let [i] = zeros[..] else {
            return false;
        };
        let y = last[i];
        last[..i].iter().all(|l| l.level == 1 && l.gen < y.gen)
            && last[i + 1..].iter().all(|&l| l == y.raise())
    }

    fn check(&self, case: Case) -> std::result::Result<(), NotInE> {
        if self.segments.iter().any(Vec::is_empty) || self.segments.is_empty() {
            return Err(NotInE::NoSegment);
        }
        if self.segments.iter().flatten().any(|l| l.level > 1) {
            return Err(NotInE::LevelTooHigh);
        }
        if self
            .segments
            .iter()
            .any(|s| s.windows(2).any(|p| p[0] > p[1]))
        {
            return Err(NotInE::Unsorted);
        }
        let ok1 = match case {
            Case::Post => self.level0_count() >= 1,
            Case::Pre => self.level0_count() == 1,
        };
        if !ok1 {
            return Err(NotInE::LevelZero);
        }
        for z in self.contents() {
            z.check(case).map_err(|e| NotInE::Content(Box::new(e)))?;
            if z.is_generator() {
                return Err(NotInE::GeneratorContent);
            }
            if z.is_exception() {
                return Err(NotInE::Exception);
            }
        }
        Ok(())
    }
}

enum Piece<'a> {
    R(&'a RBWord),
    Run(Vec<Letter>),
}

/// Reads `w` as an `EWord`, identifying `R(y)` with `P(y)`, and checks
/// membership in `E`.
pub fn is_in_e(w: &RBWord, case: Case) -> std::result::Result<EWord, NotInE> {
    let e = parse(w)?;
    e.check(case)?;
    Ok(e)
}

fn parse(w: &RBWord) -> std::result::Result<EWord, NotInE> {
    let mut pieces: Vec<Piece> = Vec::new();
    for a in w.atoms() {
        let letter = match a {
            Atom::Letter(l) => Some(*l),
            Atom::R(c) => c
                .as_single_letter()
                .filter(|l| l.level == 0)
                .map(Letter::raise),
        };
        match (letter, a) {
            (Some(l), _) => {
                if l.level > 1 {
                    return Err(NotInE::LevelTooHigh);
                }
                match pieces.last_mut() {
                    Some(Piece::Run(r)) => r.push(l),
                    _ => pieces.push(Piece::Run(vec![l])),
                }
            }
            (None, Atom::R(c)) => {
                if matches!(pieces.last(), Some(Piece::R(_))) {
                    return Err(NotInE::AdjacentR);
                }
                pieces.push(Piece::R(c));
            }
            (None, Atom::Letter(_)) => unreachable!(),
        }
    }
    let sub = |c: &RBWord| parse(c).map_err(|e| NotInE::Content(Box::new(e)));
    let lead = match pieces.first() {
        Some(Piece::R(c)) => Some(Box::new(sub(c)?)),
        _ => None,
    };
    let start = usize::from(lead.is_some());
    let trail = match pieces.last() {
        Some(Piece::R(c)) if pieces.len() > start + 1 => Some(Box::new(sub(c)?)),
        Some(Piece::R(_)) => return Err(NotInE::NoSegment),
        _ => None,
    };
    let end = pieces.len() - usize::from(trail.is_some());
    let mut segments = Vec::new();
    let mut interior = Vec::new();
    for p in &pieces[start..end] {
        match p {
            Piece::Run(r) => segments.push(r.clone()),
            Piece::R(c) => interior.push(sub(c)?),
        }
    }
    if segments.is_empty() {
        return Err(NotInE::NoSegment);
    }
    Ok(EWord {
        lead,
        segments,
        interior,
        trail,
    })
}

/// All weakly increasing words of the given length over `alphabet` (taken
/// in its given order), lexicographically.
pub fn com_words(alphabet: &[Letter], length: usize) -> Vec<Vec<Letter>> {
    fn go(
        alphabet: &[Letter],
        from: usize,
        left: usize,
        acc: &mut Vec<Letter>,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in from..alphabet.len() {
            acc.push(alphabet[i]);
            go(alphabet, i, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(alphabet, 0, length, &mut Vec::new(), &mut out);
    out
}

/// `E` by degree, built bottom up. Depends only on the case and `|Y|`.
pub struct EEnumerator {
    case: Case,
    alphabet: Vec<Letter>,
    names: Alphabet,
    by_degree: Vec<Vec<EWord>>,
}

impl EEnumerator {
    pub fn new(case: Case, n_gens: usize) -> Self {
        let alphabet: Vec<Letter> = (0..n_gens as u32)
            .flat_map(|g| [Letter::new(g, 0), Letter::new(g, 1)])
            .collect();
        EEnumerator {
            case,
            alphabet,
            names: Alphabet::standard(n_gens),
            by_degree: vec![Vec::new()],
        }
    }

    /// Words of exactly `degree`, ordered by canonical text.
    pub fn degree(&mut self, degree: u32) -> &[EWord] {
        assert!(degree >= 1, "degrees start at one");
        while self.by_degree.len() <= degree as usize {
            let n = self.by_degree.len() as u32;
            let mut words: Vec<EWord> = Vec::new();
            for (segments, interior, trail) in self.tails(n) {
                words.push(EWord {
                    lead: None,
                    segments,
                    interior,
                    trail,
                });
            }
            for d in 2..n {
                for z in self.contents(d) {
                    for (segments, interior, trail) in self.tails(n - d) {
                        words.push(EWord {
                            lead: Some(Box::new(z.clone())),
                            segments,
                            interior,
                            trail,
                        });
                    }
                }
            }
            words.retain(|w| w.check(self.case).is_ok());
            let names = &self.names;
            words.sort_by_cached_key(|w| w.render(names));
            self.by_degree.push(words);
        }
        &self.by_degree[degree as usize]
    }

    /// Admissible R-letter contents of exactly `d` letters.
    fn contents(&self, d: u32) -> Vec<EWord> {
        self.by_degree[d as usize]
            .iter()
            .filter(|z| !z.is_generator() && !z.is_exception())
            .cloned()
            .collect()
    }

    /// Structures `w_1 R(z_2) … w_s [R(z_{s+1})]` of exactly `rem` letters,
    /// before the level-0 condition.
    #[allow(clippy::type_complexity)]
    fn tails(&self, rem: u32) -> Vec<(Vec<Vec<Letter>>, Vec<EWord>, Option<Box<EWord>>)> {
        let mut out = Vec::new();
        for m in 1..=rem {
            let segs = com_words(&self.alphabet, m as usize);
            let after = rem - m;
            if after == 0 {
                out.extend(segs.iter().map(|s| (vec![s.clone()], Vec::new(), None)));
                continue;
            }
            if after >= 2 && (after as usize) < self.by_degree.len() {
                for z in self.contents(after) {
                    for s in &segs {
                        out.push((vec![s.clone()], Vec::new(), Some(Box::new(z.clone()))));
                    }
                }
            }
            for d in 2..after {
                if d as usize >= self.by_degree.len() {
                    break;
                }
                let rest = self.tails(after - d);
                for z in self.contents(d) {
                    for s in &segs {
                        for (rs, ri, rt) in &rest {
                            let mut segments = vec![s.clone()];
                            segments.extend(rs.iter().cloned());
                            let mut interior = vec![z.clone()];
                            interior.extend(ri.iter().cloned());
                            out.push((segments, interior, rt.clone()));
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn enumerate_e(case: Case, n_gens: usize, degree: u32) -> Vec<EWord> {
    EEnumerator::new(case, n_gens).degree(degree).to_vec()
}

/// `|E|` in degrees `1..=max_degree`.
pub fn hilbert_counts(case: Case, n_gens: usize, max_degree: u32) -> Vec<usize> {
    let mut en = EEnumerator::new(case, n_gens);
    (1..=max_degree).map(|d| en.degree(d).len()).collect()
}

/// A product whose normal form leaves the span of `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Escape {
    pub op: Op,
    pub left: String,
    pub right: String,
    pub word: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    /// `|E|` per degree, starting at degree 1.
    pub counts: Vec<usize>,
    /// Rank of the degree-d part of the operation monomials, per degree.
    pub ranks: Vec<usize>,
    pub products_checked: usize,
    pub escapes: Vec<Escape>,
    /// Products that needed brackets the oracle does not determine.
    pub incomplete: Vec<String>,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.escapes.is_empty()
    }

    pub fn dimensions_match(&self) -> bool {
        self.counts == self.ranks
    }

    pub fn passed(&self) -> bool {
        self.closed() && self.dimensions_match() && self.incomplete.is_empty()
    }
}

/// Incremental row echelon form keyed by leading words.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<RBWord, Element>,
}

impl Echelon {
    fn insert(&mut self, mut v: Element) -> bool {
        loop {
            let Ok((w, c)) = v.leading() else {
                return false;
            };
            match self.pivots.get(w) {
                Some(row) => {
                    let c = -c.clone();
                    v.add_scaled(row, &c);
                }
                None => {
                    let inv = c.recip().expect("nonzero");
                    let w = w.clone();
                    self.pivots.insert(w, v.scale(&inv));
                    return true;
                }
            }
        }
    }

    fn rows(&self) -> Vec<Element> {
        self.pivots.values().cloned().collect()
    }
}

/// Closure of `E` under the operations and agreement of `|E|` with the rank
/// of the span of operation monomials on `Y`, in degrees up to `max_degree`.
/// The part of `e` in degree `d`; ranks are taken in the associated graded,
/// so a non-graded input is compared against the same counts.
fn top_degree(e: &Element, d: u32) -> Element {
    let mut out = Element::zero();
    for (w, c) in e.iter().filter(|(w, _)| w.size() == d) {
        out.add_term(w.clone(), c.clone());
    }
    out
}

pub fn closure_report(
    case: Case,
    n_gens: usize,
    env: &Envelope,
    max_degree: u32,
    names: &Alphabet,
) -> Result<ClosureReport> {
    let ops = Op::for_case(case);
    let mut en = EEnumerator::new(case, n_gens);
    let mut report = ClosureReport::default();
    let mut basis: Vec<Vec<EWord>> = vec![Vec::new()];
    for d in 1..=max_degree {
        basis.push(en.degree(d).to_vec());
        report.counts.push(basis[d as usize].len());
    }
    let allowed: HashSet<RBWord> = basis.iter().flatten().map(EWord::to_word).collect();
    let as_env = |w: &EWord| env.element(&Element::word(w.to_word()));

    for i in 1..max_degree {
        for j in 1..=max_degree - i {
            for a in &basis[i as usize] {
                let ea = as_env(a)?;
                for b in &basis[j as usize] {
                    let eb = as_env(b)?;
                    for &op in ops {
                        report.products_checked += 1;
                        match env.apply(op, &ea, &eb) {
                            Ok(p) => {
                                if let Some(w) = p.element().words().find(|w| !allowed.contains(*w))
                                {
                                    report.escapes.push(Escape {
                                        op,
                                        left: a.render(names),
                                        right: b.render(names),
                                        word: w.render(names),
                                    });
                                }
                            }
                            Err(Error::OracleIncomplete { left, right }) => {
                                report.incomplete.push(format!(
                                    "{op:?}({}, {}): [{}, {}]",
                                    a.render(names),
                                    b.render(names),
                                    names.render_letter(left),
                                    names.render_letter(right)
                                ));
                            }
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
    }

    let mut spans: Vec<Vec<EnvElement>> = vec![Vec::new()];
    for d in 1..=max_degree {
        let mut ech = Echelon::default();
        if d == 1 {
            for g in 0..n_gens as u32 {
                ech.insert(Element::letter(Letter::new(g, 0)));
            }
        } else {
            for i in 1..d {
                let j = d - i;
                for a in &spans[i as usize] {
                    for b in &spans[j as usize] {
                        for &op in ops {
                            match env.apply(op, a, b) {
                                Ok(p) => {
                                    ech.insert(top_degree(p.element(), d));
                                }
                                Err(Error::OracleIncomplete { .. }) => {}
                                Err(e) => return Err(e),
                            }
                        }
                    }
                }
            }
        }
        report.ranks.push(ech.pivots.len());
        let rows = ech
            .rows()
            .into_iter()
            .map(|r| env.element(&r))
            .collect::<Result<Vec<_>>>()?;
        spans.push(rows);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_word;

    fn y() -> Alphabet {
        Alphabet::new(["y"])
    }

    #[test]
    fn com_word_examples() {
        let (a, pa, b) = (Letter::new(0, 0), Letter::new(0, 1), Letter::new(1, 0));
        assert_eq!(
            com_words(&[a, pa], 2),
            vec![vec![a, a], vec![a, pa], vec![pa, pa]]
        );
        assert_eq!(com_words(&[a, pa, b], 1).len(), 3);
        assert_eq!(com_words(&[a, pa, b], 2).len(), 6);
    }

    #[test]
    fn pre_one_generator_example() {
        let mut en = EEnumerator::new(Case::Pre, 1);
        for n in 1..=8u32 {
            let words = en.degree(n);
            assert_eq!(words.len(), 1);
            let mut expect = "y".to_string();
            for _ in 1..n {
                expect.push_str(" P^1(y)");
            }
            assert_eq!(words[0].render(&y()), expect);
        }
    }

    #[test]
    fn post_one_generator_degree_two() {
        let words: Vec<String> = enumerate_e(Case::Post, 1, 2)
            .iter()
            .map(|w| w.render(&y()))
            .collect();
        assert_eq!(words, vec!["y P^1(y)", "y y"]);
        assert_eq!(hilbert_counts(Case::Post, 2, 1), vec![2]);
    }

    #[test]
    fn membership_examples() {
        let w = |s: &str| parse_word(s, &y()).unwrap();
        assert!(is_in_e(&w("y"), Case::Pre).is_ok());
        assert_eq!(
            is_in_e(&w("R(y P(y)) y"), Case::Pre),
            Err(NotInE::Exception)
        );
        assert_eq!(
            is_in_e(&w("R(y R(y)) y"), Case::Pre),
            Err(NotInE::Exception)
        );
        assert_eq!(is_in_e(&w("P(y)"), Case::Pre), Err(NotInE::LevelZero));
        assert_eq!(is_in_e(&w("P(y) y"), Case::Post), Err(NotInE::Unsorted));
        assert_eq!(is_in_e(&w("y y"), Case::Pre), Err(NotInE::LevelZero));
        assert!(is_in_e(&w("y y"), Case::Post).is_ok());
        assert_eq!(is_in_e(&w("R(y) y"), Case::Post), Err(NotInE::Unsorted));
    }

    #[test]
    fn post_words_have_contents() {
        // In the post case `y y` is not exceptional, so R(y y) may appear.
        let words = enumerate_e(Case::Post, 1, 3);
        let names = y();
        let texts: Vec<String> = words.iter().map(|w| w.render(&names)).collect();
        assert!(texts.contains(&"R(y y) y".to_string()), "{texts:?}");
        assert!(texts.contains(&"y R(y y)".to_string()), "{texts:?}");
        for w in &words {
            assert_eq!(is_in_e(&w.to_word(), Case::Post).as_ref(), Ok(w));
        }
    }
}
