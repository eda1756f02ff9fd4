//! The three relation families and the leading-word pattern of the long one.

use std::fmt;

use serde::Serialize;

use crate::element::Element;
use crate::error::Result;
use crate::formulas::{long_delta, LongInstance};
use crate::presentation::BracketOracle;
use crate::scalar::Scalar;
use crate::terms::{Alphabet, Atom, Letter, RBWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    /// `xy - yx - [x,y]` for letters `x > y`.
    Comm,
    /// `R(a)R(b) - R(R(a)b + aR(b) + λab)`.
    Rb,
    /// `R(…) - Δ`.
    Long,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Comm => "comm",
            RelationKind::Rb => "rb",
            RelationKind::Long => "long",
        })
    }
}

/// Which words may sit inside the interior and flank R-letters of the long
/// pattern.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZCondition {
    /// Any word other than a single letter.
    #[default]
    NotLetter,
    /// Only words containing at least one R.
    Literal,
}

impl ZCondition {
    pub fn admits(self, z: &RBWord) -> bool {
        match self {
            ZCondition::NotLetter => z.as_single_letter().is_none(),
            ZCondition::Literal => z.deg_r() >= 1,
        }
    }
}

/// A decomposition of an R-letter's content as
/// `R(lead) v_1 R(z_2) v_2 … R(z_s) v_s  y x^k  R(trail)` with `x = P(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LongPattern {
    pub lead: Option<RBWord>,
    pub vecs: Vec<Vec<Letter>>,
    pub zs: Vec<RBWord>,
    pub beta: Letter,
    pub k: u32,
    pub trail: Option<RBWord>,
}

impl LongPattern {
    pub fn degenerate(beta: Letter) -> Self {
        LongPattern {
            lead: None,
            vecs: vec![Vec::new()],
            zs: Vec::new(),
            beta,
            k: 0,
            trail: None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lead.is_none()
            && self.trail.is_none()
            && self.k == 0
            && self.vecs.len() == 1
            && self.vecs[0].is_empty()
    }

    pub fn s(&self) -> usize {
        self.vecs.len()
    }

    pub fn content(&self) -> RBWord {
        let mut atoms = Vec::new();
        if let Some(z) = &self.lead {
            atoms.push(Atom::r(z.clone()));
        }
        for (i, v) in self.vecs.iter().enumerate() {
            if i > 0 {
                atoms.push(Atom::r(self.zs[i - 1].clone()));
            }
            atoms.extend(v.iter().copied().map(Atom::Letter));
        }
        atoms.push(Atom::Letter(self.beta));
        atoms.extend((0..self.k).map(|_| Atom::Letter(self.beta.raise())));
        if let Some(z) = &self.trail {
            atoms.push(Atom::r(z.clone()));
        }
        RBWord::new(atoms)
    }

    /// The leading word `R(content)`.
    pub fn leading(&self) -> RBWord {
        RBWord::bracket(self.content())
    }

    pub fn instance(&self) -> LongInstance {
        LongInstance {
            lead: self.lead.clone().map(Element::word),
            vecs: self.vecs.clone(),
            zs: self.zs.iter().cloned().map(Element::word).collect(),
            beta: self.beta,
            k: self.k,
            trail: self.trail.clone().map(Element::word),
        }
    }
}

enum Piece<'a> {
    R(&'a RBWord),
    Run(Vec<Letter>),
}

/// Every admissible decomposition of `content`, the canonical one first:
/// the maximal trailing run of `P(y)` preceded by `y`, then `k = 0` with `y`
/// the last letter.
pub fn match_long_all(content: &RBWord, z: ZCondition) -> Vec<LongPattern> {
    if let Some(l) = content.as_single_letter() {
        return vec![LongPattern::degenerate(l)];
    }
    let mut pieces: Vec<Piece> = Vec::new();
    for a in content.atoms() {
        match a {
            Atom::R(w) => {
                if matches!(pieces.last(), Some(Piece::R(_))) {
                    return Vec::new();
                }
                if !z.admits(w) {
                    return Vec::new();
                }
                pieces.push(Piece::R(w));
            }
            Atom::Letter(l) => match pieces.last_mut() {
                Some(Piece::Run(run)) => run.push(*l),
                _ => pieces.push(Piece::Run(vec![*l])),
            },
        }
    }
    let lead = match pieces.first() {
        Some(Piece::R(w)) => Some((*w).clone()),
        _ => None,
    };
    let body_start = usize::from(lead.is_some());
    let trail = match pieces.last() {
        Some(Piece::R(w)) if pieces.len() > body_start + 1 => Some((*w).clone()),
        Some(Piece::R(_)) => return Vec::new(),
        _ => None,
    };
    let body_end = pieces.len() - usize::from(trail.is_some());
    let mut runs = Vec::new();
    let mut zs = Vec::new();
    for p in &pieces[body_start..body_end] {
        match p {
            Piece::Run(r) => runs.push(r.as_slice()),
            Piece::R(w) => zs.push((*w).clone()),
        }
    }
    let (last, interior) = runs.split_last().expect("at least one run");
    if interior.iter().flat_map(|r| r.iter()).any(|l| l.level == 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut push = |vec: &[Letter], beta: Letter, k: usize| {
        if vec.iter().all(|l| l.level >= 1 && *l < beta) {
            let mut vecs: Vec<Vec<Letter>> = interior.iter().map(|r| r.to_vec()).collect();
            vecs.push(vec.to_vec());
            out.push(LongPattern {
                lead: lead.clone(),
                vecs,
                zs: zs.clone(),
                beta,
                k: k as u32,
                trail: trail.clone(),
            });
        }
    };
    let top = *last.last().expect("runs are nonempty");
    let run_len = last.iter().rev().take_while(|&&l| l == top).count();
    if let Some(beta) = top.tilde() {
        if last.len() > run_len && last[last.len() - run_len - 1] == beta {
            push(&last[..last.len() - run_len - 1], beta, run_len);
        }
    }
    push(&last[..last.len() - 1], top, 0);
    out
}

/// The canonical decomposition of the content of a single R-letter `w`.
pub fn match_long(w: &RBWord, z: ZCondition) -> Option<LongPattern> {
    w.as_single_r()
        .and_then(|c| match_long_all(c, z).into_iter().next())
}

/// Parameters a relation was instantiated from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Comm(Letter, Letter),
    Rb(RBWord, RBWord),
    Long(LongPattern),
}

impl Provenance {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let lr = |l: &Letter| alphabet.render_letter(*l);
        match self {
            Provenance::Comm(x, y) => format!("comm({}, {})", lr(x), lr(y)),
            Provenance::Rb(a, b) => format!("rb({}; {})", a.render(alphabet), b.render(alphabet)),
            Provenance::Long(p) if p.is_degenerate() => format!("long({})", lr(&p.beta)),
            Provenance::Long(p) => format!(
                "long({}; beta={}, k={})",
                p.content().render(alphabet),
                lr(&p.beta),
                p.k
            ),
        }
    }
}

/// A monic element of `S` together with its leading word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub element: Element,
    pub leading: RBWord,
    pub provenance: Provenance,
}

impl Relation {
    /// `leading - element`: what the leading word rewrites to.
    pub fn reduct(&self) -> Element {
        &Element::word(self.leading.clone()) - &self.element
    }
}

/// `xy - yx - [x,y]`, for letters `x > y`.
pub fn comm(x: Letter, y: Letter, oracle: &BracketOracle) -> Result<Relation> {
    assert!(x > y, "the commutation relation needs x > y");
    let leading = RBWord::letters([x, y]);
    let mut element = Element::word(leading.clone());
    element.add_term(RBWord::letters([y, x]), -Scalar::one());
    element.sub_assign(&oracle.bracket(x, y)?);
    Ok(Relation {
        kind: RelationKind::Comm,
        element,
        leading,
        provenance: Provenance::Comm(x, y),
    })
}

/// `R(a)R(b) - R(R(a)b + aR(b) + λab)`. With `perturb`, the last
/// coefficient becomes `λ + 1` (a deliberately wrong relation).
pub fn rb(a: &RBWord, b: &RBWord, lambda: &Scalar, perturb: bool) -> Relation {
    let (ra, rb_) = (RBWord::bracket(a.clone()), RBWord::bracket(b.clone()));
    let leading = ra.concat(&rb_);
    let mut inner = Element::word(ra.concat(b));
    inner.add_term(a.concat(&rb_), Scalar::one());
    let weight = if perturb {
        lambda + &Scalar::one()
    } else {
        lambda.clone()
    };
    inner.add_term(a.concat(b), weight);
    let element = &Element::word(leading.clone()) - &inner.apply_r();
    Relation {
        kind: RelationKind::Rb,
        element,
        leading,
        provenance: Provenance::Rb(a.clone(), b.clone()),
    }
}

/// `R(content) - Δ`, with every term of `Δ` that is not below the leading
/// word pushed down by commutation steps (which only changes the relation
/// by elements of the ideal).
pub fn long(p: &LongPattern, oracle: &BracketOracle) -> Result<Relation> {
    let leading = p.leading();
    let delta = if p.is_degenerate() {
        Element::letter(p.beta.raise())
    } else {
        let raw = long_delta(&p.instance(), oracle.lambda(), oracle)?;
        tidy(raw, &leading, oracle)?
    };
    let element = &Element::word(leading.clone()) - &delta;
    debug_assert!(element
        .leading()
        .is_ok_and(|(w, c)| *w == leading && c.is_one()));
    Ok(Relation {
        kind: RelationKind::Long,
        element,
        leading,
        provenance: Provenance::Long(p.clone()),
    })
}

/// Rewrites terms `R(v) ≥ w` of `delta` by the leftmost top-level descent
/// `pq → qp + [p,q]` in `v` until every term is below `w`.
pub fn tidy(mut delta: Element, w: &RBWord, oracle: &BracketOracle) -> Result<Element> {
    loop {
        let (u, c) = match delta.leading() {
            Ok((u, c)) if u >= w => (u.clone(), c.clone()),
            _ => return Ok(delta),
        };
        let v = u
            .as_single_r()
            .expect("terms above the long leading word are single R-letters");
        let atoms = v.atoms();
        let i = (0..atoms.len() - 1)
            .find(
                |&i| match (atoms[i].as_letter(), atoms[i + 1].as_letter()) {
                    (Some(p), Some(q)) => p > q,
                    _ => false,
                },
            )
            .expect("a term above the long leading word has a letter descent");
        let (p, q) = (
            atoms[i].as_letter().expect("letter"),
            atoms[i + 1].as_letter().expect("letter"),
        );
        let ctx = RBWord::bracket(v.clone()).context_at(&[0], i, 2);
        let rel = comm(p, q, oracle)?;
        delta.add_term(u, -c.clone());
        delta.add_scaled(&rel.reduct().substitute_into(&ctx), &c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_word;

    fn ab() -> Alphabet {
        Alphabet::standard(2)
    }

    fn content(s: &str) -> RBWord {
        parse_word(s, &ab()).unwrap()
    }

    #[test]
    fn degenerate_match() {
        let p = match_long_all(&content("a"), ZCondition::NotLetter);
        assert_eq!(p, vec![LongPattern::degenerate(Letter::new(0, 0))]);
    }

    #[test]
    fn match_long_examples() {
        let z = ZCondition::NotLetter;
        assert!(match_long_all(&content("P(a) P(a)"), z).is_empty());
        let m = match_long_all(&content("P(a) b"), z);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].vecs, vec![vec![Letter::new(0, 1)]]);
        assert_eq!((m[0].beta, m[0].k), (Letter::new(1, 0), 0));
        assert!(match_long_all(&content("a P(b)"), z).is_empty());
    }

    #[test]
    fn both_alternatives_when_admissible() {
        let m = match_long_all(&content("P(a) P(P(a))"), ZCondition::NotLetter);
        assert_eq!(m.len(), 2);
        assert_eq!((m[0].beta, m[0].k), (Letter::new(0, 1), 1));
        assert_eq!((m[1].beta, m[1].k), (Letter::new(0, 2), 0));
        assert_eq!(m[1].vecs, vec![vec![Letter::new(0, 1)]]);
    }

    #[test]
    fn z_condition() {
        let w = content("R(a a) P(a) b R(a b)");
        let m = match_long_all(&w, ZCondition::NotLetter);
        assert_eq!(m.len(), 1);
        assert!(m[0].lead.is_some() && m[0].trail.is_some());
        assert!(match_long_all(&w, ZCondition::Literal).is_empty());
        assert!(match_long_all(&content("R(a) b"), ZCondition::NotLetter).is_empty());
        assert!(match_long_all(&content("R(a a) R(a a) b"), ZCondition::NotLetter).is_empty());
        assert!(match_long_all(&content("b R(a a)"), ZCondition::NotLetter).len() == 1);
        assert!(match_long_all(&content("R(a a)"), ZCondition::NotLetter).is_empty());
    }

    #[test]
    fn interior_runs_need_positive_levels() {
        let z = ZCondition::NotLetter;
        assert_eq!(match_long_all(&content("P(a) R(a a) b"), z).len(), 1);
        assert!(match_long_all(&content("a R(a a) b"), z).is_empty());
    }

    #[test]
    fn relation_examples() {
        let o = BracketOracle::abelian(2, Scalar::one());
        let r = comm(Letter::new(1, 0), Letter::new(0, 0), &o).unwrap();
        assert_eq!(r.element.render(&ab()), "b a - a b");
        let r = rb(&content("a"), &content("b"), &Scalar::one(), false);
        assert_eq!(
            r.element.render(&ab()),
            "R(a) R(b) - R(R(a) b) - R(a R(b)) - R(a b)"
        );
        let r = long(&LongPattern::degenerate(Letter::new(1, 2)), &o).unwrap();
        assert_eq!(r.element.render(&ab()), "R(P^2(b)) - P^3(b)");
    }

    #[test]
    fn long_relations_are_monic_with_pattern_leading() {
        let o = BracketOracle::abelian(2, Scalar::one());
        for s in [
            "a P(a)",
            "a P(a) P(a)",
            "P(a) b P(b) P(b)",
            "R(a a) P(a) b",
            "b P(b) R(a b)",
        ] {
            for p in match_long_all(&content(s), ZCondition::NotLetter) {
                let r = long(&p, &o).unwrap();
                let (w, c) = r.element.leading().unwrap();
                assert_eq!(*w, p.leading(), "{s}");
                assert!(c.is_one());
            }
        }
    }
}
