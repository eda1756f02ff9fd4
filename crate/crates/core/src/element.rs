//! Finite linear combinations of bracketed words with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::terms::{Alphabet, Letter, RBWord, StarContext};

/// An element of the free operated algebra. Zero coefficients are never
/// stored, and iteration runs from the leading word downwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<RBWord, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn word(w: RBWord) -> Self {
        Element::term(w, Scalar::one())
    }

    pub fn letter(l: Letter) -> Self {
        Element::word(RBWord::letter(l))
    }

    pub fn term(w: RBWord, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of words in the support.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&RBWord, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    pub fn words(&self) -> impl Iterator<Item = &RBWord> + '_ {
        self.terms.keys().rev()
    }

    pub fn coefficient(&self, w: &RBWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: RBWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        self.add_scaled(other, &Scalar::one());
    }

    pub fn sub_assign(&mut self, other: &Element) {
        self.add_scaled(other, &-Scalar::one());
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Bilinear extension of concatenation.
    pub fn multiply(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    /// `w ↦ R(w)`, extended linearly.
    pub fn apply_r(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (RBWord::bracket(w.clone()), c.clone()))
                .collect(),
        }
    }

    /// The maximal word and its coefficient.
    pub fn leading(&self) -> Result<(&RBWord, &Scalar)> {
        self.terms.iter().next_back().ok_or(Error::ZeroElement)
    }

    /// `q|_e`, extended linearly in `e`.
    pub fn substitute_into(&self, q: &StarContext) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(q.substitute(w), c.clone());
        }
        out
    }

    pub fn map_words(&self, f: impl Fn(&RBWord) -> RBWord) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.iter().enumerate() {
            let word = w.render(alphabet);
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            if !mag.is_one() {
                s.push_str(&mag.to_string());
                s.push(' ');
            }
            s.push_str(&word);
        }
        s
    }
}

impl From<RBWord> for Element {
    fn from(w: RBWord) -> Self {
        Element::word(w)
    }
}

impl FromIterator<(RBWord, Scalar)> for Element {
    fn from_iter<I: IntoIterator<Item = (RBWord, Scalar)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (w, c) in iter {
            e.add_term(w, c);
        }
        e
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

pub fn multiply(e1: &Element, e2: &Element) -> Element {
    e1.multiply(e2)
}

pub fn apply_r(e: &Element) -> Element {
    e.apply_r()
}

pub fn leading(e: &Element) -> Result<(RBWord, Scalar)> {
    e.leading().map(|(w, c)| (w.clone(), c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xl(g: u32, k: u32) -> Element {
        Element::letter(Letter::new(g, k))
    }

    #[test]
    fn multiply_examples() {
        let (a, b) = (xl(0, 0), xl(1, 0));
        let ab = a.multiply(&b);
        assert_eq!(ab.len(), 1);
        let names = Alphabet::standard(2);
        assert_eq!(ab.render(&names), "a b");
        assert_eq!((&a + &b).multiply(&a).render(&names), "b a + a a");
        let two_w = a.scale(&Scalar::from_int(2));
        let half_v = b.scale(&Scalar::ratio(1, 2));
        assert_eq!(two_w.multiply(&half_v), ab);
    }

    #[test]
    fn apply_r_examples() {
        let names = Alphabet::standard(2);
        let e = &xl(0, 0) + &xl(1, 0).scale(&Scalar::from_int(2));
        assert_eq!(e.apply_r().render(&names), "2 R(b) + R(a)");
        assert_eq!(e.apply_r().apply_r().render(&names), "2 R(R(b)) + R(R(a))");
        assert!(Element::zero().apply_r().is_zero());
    }

    #[test]
    fn leading_examples() {
        let a = xl(0, 0);
        let b = xl(1, 0);
        let e = &a.multiply(&b) - &b.multiply(&a);
        let (w, c) = leading(&e).unwrap();
        assert_eq!(w, RBWord::letters([Letter::new(1, 0), Letter::new(0, 0)]));
        assert_eq!(c, -Scalar::one());
        let e = &a.apply_r().scale(&Scalar::from_int(3)) + &xl(0, 1);
        let (w, c) = leading(&e).unwrap();
        assert_eq!(w, RBWord::bracket(RBWord::letter(Letter::new(0, 0))));
        assert_eq!(c, Scalar::from_int(3));
        assert_eq!(leading(&Element::zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn zero_coefficients_vanish() {
        let a = xl(0, 0);
        assert!((&a - &a).is_zero());
        let mut e = a.clone();
        e.add_term(RBWord::letter(Letter::new(0, 0)), -Scalar::one());
        assert!(e.is_zero());
    }
}
