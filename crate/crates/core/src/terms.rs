//! Bracketed words of the free operated semigroup over `X = {x_{α,k}}`.
//!
//! A word is a nonempty sequence of atoms; an atom is either a letter or an
//! R-letter `R(w)` wrapping another word. Any juxtaposition is a legal word,
//! including adjacent R-letters (the Rota-Baxter relations eliminate those).
//!
//! The monomial order compares by R-degree, then breadth (length over the
//! alphabet of letters and R-letters), then lexicographically with every
//! letter below every R-letter and `R(a) < R(b)` iff `a < b`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

/// The symbol `x_{gen,level} = P^level(x_gen)`.
///
/// Letters are ordered by generator index first, then by level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub gen: u32,
    pub level: u32,
}

impl Letter {
    pub const fn new(gen: u32, level: u32) -> Self {
        Letter { gen, level }
    }

    /// `P(x_{α,k}) = x_{α,k+1}`.
    pub const fn raise(self) -> Self {
        Letter {
            gen: self.gen,
            level: self.level + 1,
        }
    }

    /// The letter `x̃` with `R(x̃) = x`, if the level is positive.
    pub fn tilde(self) -> Option<Self> {
        (self.level > 0).then(|| Letter {
            gen: self.gen,
            level: self.level - 1,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.gen, self.level)
    }
}

/// Ordered generator names; index `i` is generator `i` of `Ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Alphabet {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    /// Generators named `a`, `b`, `c`, ... (falls back to `g<i>` past `z`).
    pub fn standard(n: usize) -> Self {
        Alphabet::new((0..n).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: u32) -> &str {
        &self.names[gen as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn render_letter(&self, l: Letter) -> String {
        match l.level {
            0 => self.name(l.gen).to_string(),
            k => format!("P^{k}({})", self.name(l.gen)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Letter(Letter),
    R(Arc<RBWord>),
}

impl Atom {
    pub fn r(content: RBWord) -> Self {
        Atom::R(Arc::new(content))
    }

    pub fn as_letter(&self) -> Option<Letter> {
        match self {
            Atom::Letter(l) => Some(*l),
            Atom::R(_) => None,
        }
    }

    pub fn as_r(&self) -> Option<&RBWord> {
        match self {
            Atom::Letter(_) => None,
            Atom::R(w) => Some(w),
        }
    }

    pub fn is_r(&self) -> bool {
        matches!(self, Atom::R(_))
    }

    fn rdeg(&self) -> u32 {
        match self {
            Atom::Letter(_) => 0,
            Atom::R(w) => 1 + w.rdeg,
        }
    }

    fn size(&self) -> u32 {
        match self {
            Atom::Letter(_) => 1,
            Atom::R(w) => w.size,
        }
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Atom::Letter(a), Atom::Letter(b)) => a.cmp(b),
            (Atom::Letter(_), Atom::R(_)) => Ordering::Less,
            (Atom::R(_), Atom::Letter(_)) => Ordering::Greater,
            (Atom::R(a), Atom::R(b)) => {
                if Arc::ptr_eq(a, b) {
                    Ordering::Equal
                } else {
                    a.as_ref().cmp(b.as_ref())
                }
            }
        }
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A nonempty bracketed word. R-degree and letter count are cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RBWord {
    atoms: Vec<Atom>,
    rdeg: u32,
    size: u32,
}

impl RBWord {
    /// Panics on an empty atom list; every word has at least one atom.
    pub fn new(atoms: Vec<Atom>) -> Self {
        assert!(!atoms.is_empty(), "a bracketed word must be nonempty");
        let rdeg = atoms.iter().map(Atom::rdeg).sum();
        let size = atoms.iter().map(Atom::size).sum();
        RBWord { atoms, rdeg, size }
    }

    pub fn try_new(atoms: Vec<Atom>) -> Option<Self> {
        (!atoms.is_empty()).then(|| RBWord::new(atoms))
    }

    pub fn letter(l: Letter) -> Self {
        RBWord::new(vec![Atom::Letter(l)])
    }

    pub fn letters(ls: impl IntoIterator<Item = Letter>) -> Self {
        RBWord::new(ls.into_iter().map(Atom::Letter).collect())
    }

    /// The single R-letter `R(content)`.
    pub fn bracket(content: RBWord) -> Self {
        RBWord::new(vec![Atom::r(content)])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn into_atoms(self) -> Vec<Atom> {
        self.atoms
    }

    /// Number of R symbols at all depths.
    pub fn deg_r(&self) -> u32 {
        self.rdeg
    }

    /// Length over the alphabet of letters and R-letters.
    pub fn breadth(&self) -> usize {
        self.atoms.len()
    }

    /// Number of letter occurrences at all depths.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn max_level(&self) -> u32 {
        self.atoms
            .iter()
            .map(|a| match a {
                Atom::Letter(l) => l.level,
                Atom::R(w) => w.max_level(),
            })
            .max()
            .unwrap_or(0)
    }

    pub fn max_gen(&self) -> u32 {
        self.atoms
            .iter()
            .map(|a| match a {
                Atom::Letter(l) => l.gen,
                Atom::R(w) => w.max_gen(),
            })
            .max()
            .unwrap_or(0)
    }

    pub fn is_r_free(&self) -> bool {
        self.rdeg == 0
    }

    pub fn as_single_letter(&self) -> Option<Letter> {
        match self.atoms.as_slice() {
            [Atom::Letter(l)] => Some(*l),
            _ => None,
        }
    }

    /// The content `w` if this word is exactly one R-letter `R(w)`.
    pub fn as_single_r(&self) -> Option<&RBWord> {
        match self.atoms.as_slice() {
            [Atom::R(w)] => Some(w),
            _ => None,
        }
    }

    pub fn concat(&self, other: &RBWord) -> RBWord {
        let mut atoms = Vec::with_capacity(self.atoms.len() + other.atoms.len());
        atoms.extend_from_slice(&self.atoms);
        atoms.extend_from_slice(&other.atoms);
        RBWord {
            atoms,
            rdeg: self.rdeg + other.rdeg,
            size: self.size + other.size,
        }
    }

    /// Apply `f` to every letter at every depth.
    pub fn map_letters(&self, f: &impl Fn(Letter) -> Letter) -> RBWord {
        RBWord::new(
            self.atoms
                .iter()
                .map(|a| match a {
                    Atom::Letter(l) => Atom::Letter(f(*l)),
                    Atom::R(w) => Atom::r(w.map_letters(f)),
                })
                .collect(),
        )
    }

    /// Every letter occurrence, depth-first left to right.
    pub fn all_letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<Letter>) {
        for a in &self.atoms {
            match a {
                Atom::Letter(l) => out.push(*l),
                Atom::R(w) => w.collect_letters(out),
            }
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        self.render_into(alphabet, &mut s);
        s
    }

    fn render_into(&self, alphabet: &Alphabet, s: &mut String) {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            match a {
                Atom::Letter(l) => s.push_str(&alphabet.render_letter(*l)),
                Atom::R(w) => {
                    s.push_str("R(");
                    w.render_into(alphabet, s);
                    s.push(')');
                }
            }
        }
    }

    /// The sequence reached by descending through the R-letters at `path`.
    pub fn sequence_at(&self, path: &[usize]) -> &[Atom] {
        let mut seq: &[Atom] = &self.atoms;
        for &i in path {
            seq = &seq[i].as_r().expect("path must go through R-letters").atoms;
        }
        seq
    }

    /// All sequence paths in outermost-first, left-to-right order.
    pub fn sequence_paths(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut i = 0;
        while i < out.len() {
            let path = out[i].clone();
            let seq = self.sequence_at(&path);
            for (j, a) in seq.iter().enumerate() {
                if a.is_r() {
                    let mut p = path.clone();
                    p.push(j);
                    out.push(p);
                }
            }
            i += 1;
        }
        out
    }

    /// The star context that places a subword at `atoms[start..start+len]`
    /// of the sequence at `path`.
    pub fn context_at(&self, path: &[usize], start: usize, len: usize) -> StarContext {
        let mut frames = Vec::with_capacity(path.len() + 1);
        let mut seq: &[Atom] = &self.atoms;
        for &i in path {
            frames.push(Frame {
                left: seq[..i].to_vec(),
                right: seq[i + 1..].to_vec(),
            });
            seq = &seq[i].as_r().expect("path must go through R-letters").atoms;
        }
        frames.push(Frame {
            left: seq[..start].to_vec(),
            right: seq[start + len..].to_vec(),
        });
        StarContext { frames }
    }
}

impl Ord for RBWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rdeg
            .cmp(&other.rdeg)
            .then(self.atoms.len().cmp(&other.atoms.len()))
            .then_with(|| {
                for (a, b) in self.atoms.iter().zip(&other.atoms) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for RBWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn deg_r(w: &RBWord) -> u32 {
    w.deg_r()
}

pub fn breadth(w: &RBWord) -> usize {
    w.breadth()
}

pub fn compare(u: &RBWord, v: &RBWord) -> Ordering {
    u.cmp(v)
}

/// One nesting level of a star context: `left · hole · right`, where the
/// hole is an R-letter wrapping the next frame, or the star itself in the
/// innermost frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub left: Vec<Atom>,
    pub right: Vec<Atom>,
}

/// A bracketed word with exactly one occurrence of `∗`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarContext {
    frames: Vec<Frame>,
}

impl StarContext {
    /// The identity context `∗`.
    pub fn star() -> Self {
        StarContext {
            frames: vec![Frame {
                left: Vec::new(),
                right: Vec::new(),
            }],
        }
    }

    /// Frames from the outermost level inwards; the last frame holds the star.
    pub fn from_frames(frames: Vec<Frame>) -> Self {
        assert!(!frames.is_empty(), "a star context has at least one frame");
        StarContext { frames }
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn is_star(&self) -> bool {
        self.frames.len() == 1 && self.frames[0].left.is_empty() && self.frames[0].right.is_empty()
    }

    /// Nesting depth of the star (0 for a top-level star).
    pub fn depth(&self) -> usize {
        self.frames.len() - 1
    }

    /// `q|_u`.
    pub fn substitute(&self, u: &RBWord) -> RBWord {
        let (last, outer) = self.frames.split_last().expect("nonempty frames");
        let mut atoms = Vec::with_capacity(last.left.len() + u.atoms().len() + last.right.len());
        atoms.extend_from_slice(&last.left);
        atoms.extend_from_slice(u.atoms());
        atoms.extend_from_slice(&last.right);
        let mut word = RBWord::new(atoms);
        for f in outer.iter().rev() {
            let mut atoms = Vec::with_capacity(f.left.len() + 1 + f.right.len());
            atoms.extend_from_slice(&f.left);
            atoms.push(Atom::r(word));
            atoms.extend_from_slice(&f.right);
            word = RBWord::new(atoms);
        }
        word
    }

    /// `self` with its star replaced by the context `inner`.
    pub fn compose(&self, inner: &StarContext) -> StarContext {
        let mut frames = self.frames.clone();
        let last = frames.pop().expect("nonempty frames");
        let (first, rest) = inner.frames.split_first().expect("nonempty frames");
        let mut left = last.left;
        left.extend_from_slice(&first.left);
        let mut right = first.right.clone();
        right.extend_from_slice(&last.right);
        frames.push(Frame { left, right });
        frames.extend_from_slice(rest);
        StarContext { frames }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        fn seq(atoms: &[Atom], alphabet: &Alphabet) -> Vec<String> {
            atoms
                .iter()
                .map(|a| RBWord::new(vec![a.clone()]).render(alphabet))
                .collect()
        }
        let mut inner = {
            let last = self.frames.last().expect("nonempty frames");
            let mut parts = seq(&last.left, alphabet);
            parts.push("*".to_string());
            parts.extend(seq(&last.right, alphabet));
            parts.join(" ")
        };
        for f in self.frames[..self.frames.len() - 1].iter().rev() {
            let mut parts = seq(&f.left, alphabet);
            parts.push(format!("R({inner})"));
            parts.extend(seq(&f.right, alphabet));
            inner = parts.join(" ");
        }
        inner
    }
}

pub fn substitute(q: &StarContext, u: &RBWord) -> RBWord {
    q.substitute(u)
}

/// Every context `q` with `q|_t = w`, outermost sequences first and left to
/// right within a sequence.
pub fn occurrences(w: &RBWord, t: &RBWord) -> Vec<StarContext> {
    let mut out = Vec::new();
    let n = t.breadth();
    for path in w.sequence_paths() {
        let seq = w.sequence_at(&path);
        if seq.len() < n {
            continue;
        }
        for start in 0..=seq.len() - n {
            if seq[start..start + n] == *t.atoms() {
                out.push(w.context_at(&path, start, n));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(g: u32, k: u32) -> Atom {
        Atom::Letter(Letter::new(g, k))
    }
    fn w(atoms: Vec<Atom>) -> RBWord {
        RBWord::new(atoms)
    }
    fn r(atoms: Vec<Atom>) -> Atom {
        Atom::r(RBWord::new(atoms))
    }
    const A: u32 = 0;
    const B: u32 = 1;

    #[test]
    fn deg_r_and_breadth_examples() {
        let u = w(vec![r(vec![r(vec![x(A, 0)]), x(A, 0)])]);
        assert_eq!(deg_r(&u), 2);
        assert_eq!(deg_r(&w(vec![x(A, 0), x(B, 0)])), 0);
        let v = w(vec![r(vec![x(A, 0)]), x(A, 0), r(vec![x(B, 0)])]);
        assert_eq!(deg_r(&v), 2);
        assert_eq!(breadth(&v), 3);
        assert_eq!(breadth(&w(vec![x(A, 0)])), 1);
        assert_eq!(breadth(&w(vec![r(vec![x(A, 0), x(B, 0), x(B, 0)])])), 1);
    }

    #[test]
    fn compare_examples() {
        let u = w(vec![x(A, 0), x(A, 0), x(A, 0)]);
        let v = w(vec![r(vec![x(A, 0)])]);
        assert_eq!(compare(&u, &v), Ordering::Less);
        assert_eq!(
            compare(&w(vec![x(A, 0)]), &w(vec![x(A, 1)])),
            Ordering::Less
        );
        let u = w(vec![x(A, 0), r(vec![x(A, 0)])]);
        let v = w(vec![r(vec![x(A, 0)]), x(A, 0)]);
        assert_eq!(compare(&u, &v), Ordering::Less);
        let u = w(vec![r(vec![x(B, 1)])]);
        assert_eq!(compare(&u, &u.clone()), Ordering::Equal);
    }

    #[test]
    fn substitute_examples() {
        let q = w(vec![r(vec![x(A, 0)]), x(A, 0)]).context_at(&[0], 0, 1);
        let u = w(vec![x(A, 0), x(B, 0)]);
        assert_eq!(
            q.substitute(&u),
            w(vec![r(vec![x(A, 0), x(B, 0)]), x(A, 0)])
        );
        assert_eq!(StarContext::star().substitute(&u), u);
        let q = w(vec![r(vec![r(vec![x(A, 0)])])]).context_at(&[0, 0], 0, 1);
        assert_eq!(
            q.substitute(&w(vec![x(A, 0)])),
            w(vec![r(vec![r(vec![x(A, 0)])])])
        );
        let names = Alphabet::standard(2);
        assert_eq!(q.render(&names), "R(R(*))");
    }

    #[test]
    fn occurrence_examples() {
        let names = Alphabet::standard(2);
        let found = occurrences(&w(vec![x(A, 0), x(A, 0)]), &w(vec![x(A, 0)]));
        let rendered: Vec<_> = found.iter().map(|q| q.render(&names)).collect();
        assert_eq!(rendered, vec!["* a", "a *"]);
        let found = occurrences(
            &w(vec![r(vec![x(A, 0), x(B, 0)])]),
            &w(vec![x(A, 0), x(B, 0)]),
        );
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].render(&names), "R(*)");
        assert!(occurrences(&w(vec![x(A, 0)]), &w(vec![x(B, 0)])).is_empty());
    }

    #[test]
    fn rendering() {
        let names = Alphabet::new(["y"]);
        let u = w(vec![x(0, 0), r(vec![x(0, 0), x(0, 2)])]);
        assert_eq!(u.render(&names), "y R(y P^2(y))");
    }

    #[test]
    fn compose_contexts() {
        let outer = w(vec![x(A, 0), r(vec![x(B, 0)]), x(B, 1)]).context_at(&[1], 0, 1);
        let inner = w(vec![r(vec![x(A, 1)]), x(A, 0)]).context_at(&[0], 0, 1);
        let u = w(vec![x(B, 2)]);
        assert_eq!(
            outer.compose(&inner).substitute(&u),
            outer.substitute(&inner.substitute(&u))
        );
    }
}
