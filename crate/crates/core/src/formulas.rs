//! Generators for the identities the long relation is built from: the
//! symmetrization lemma in `U(L)`, the long RB identity, and the
//! right-hand side `Δ` obtained from the two.

use crate::element::Element;
use crate::error::Result;
use crate::presentation::BracketOracle;
use crate::scalar::{binomial, Scalar};
use crate::terms::{Letter, RBWord};

/// A Lie bracket on elements.
pub trait Bracket {
    fn bracket(&self, u: &Element, v: &Element) -> Result<Element>;
}

/// Brackets through the oracle; arguments must be combinations of letters.
impl Bracket for BracketOracle {
    fn bracket(&self, u: &Element, v: &Element) -> Result<Element> {
        self.bracket_elements(u, v)
    }
}

/// `[u, v] = uv - vu` in the free operated algebra.
#[derive(Clone, Copy, Debug, Default)]
pub struct Commutator;

impl Bracket for Commutator {
    fn bracket(&self, u: &Element, v: &Element) -> Result<Element> {
        Ok(&u.multiply(v) - &v.multiply(u))
    }
}

/// `[y, x^{(p)}] = [[…[y, x], …], x]` with `p` brackets.
pub fn iterated_bracket<B: Bracket + ?Sized>(
    br: &B,
    y: &Element,
    x: &Element,
    p: u32,
) -> Result<Element> {
    let mut acc = y.clone();
    for _ in 0..p {
        if acc.is_zero() {
            break;
        }
        acc = br.bracket(&acc, x)?;
    }
    Ok(acc)
}

fn power(x: &Element, n: u32) -> Option<Element> {
    (0..n).fold(None, |acc: Option<Element>, _| {
        Some(match acc {
            None => x.clone(),
            Some(a) => a.multiply(x),
        })
    })
}

/// `a·b` where either side may be the empty word.
fn times(a: Option<&Element>, b: Option<&Element>) -> Option<Element> {
    match (a, b) {
        (None, None) => None,
        (Some(a), None) => Some(a.clone()),
        (None, Some(b)) => Some(b.clone()),
        (Some(a), Some(b)) => Some(a.multiply(b)),
    }
}

fn sign(i: u32) -> Scalar {
    if i % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Left side minus right side of the symmetrization lemma
/// `(l+1) y x^l = Σ_{i=2}^{l+1} (-1)^i C(l+1,i) [y,x^{(i-1)}] x^{l+1-i}
///   + (y x^l + x y x^{l-1} + … + x^l y)`.
pub fn symmetrization_defect<B: Bracket + ?Sized>(
    y: Letter,
    x: Letter,
    l: u32,
    br: &B,
) -> Result<Element> {
    let (ye, xe) = (Element::letter(y), Element::letter(x));
    let mut out = times(Some(&ye), power(&xe, l).as_ref())
        .expect("nonempty")
        .scale(&Scalar::from_int(i64::from(l) + 1));
    for i in 2..=l + 1 {
        let c = &sign(i) * &binomial(u64::from(l + 1), u64::from(i));
        let b = iterated_bracket(br, &ye, &xe, i - 1)?;
        if let Some(t) = times(Some(&b), power(&xe, l + 1 - i).as_ref()) {
            out.add_scaled(&t, &-c);
        }
    }
    for j in 0..=l {
        let left = power(&xe, j);
        let t = times(left.as_ref(), Some(&ye)).expect("nonempty");
        let t = times(Some(&t), power(&xe, l - j).as_ref()).expect("nonempty");
        out.sub_assign(&t);
    }
    Ok(out)
}

/// The long RB identity as an element:
/// `R(b_1)…R(b_t) - R(Σ_{∅≠H} λ^{|H|-1} ∏_i (b_i if i ∈ H else R(b_i)))`.
pub fn long_rb_element(bs: &[Element], lambda: &Scalar) -> Element {
    assert!(
        !bs.is_empty(),
        "the long RB identity needs at least one factor"
    );
    let raised: Vec<Element> = bs.iter().map(Element::apply_r).collect();
    let lhs = raised
        .iter()
        .skip(1)
        .fold(raised[0].clone(), |acc, r| acc.multiply(r));
    let mut sum = Element::zero();
    for (mask, c) in hat_subsets(bs.len(), lambda, 1) {
        let prod = (0..bs.len())
            .map(|i| {
                if mask >> i & 1 == 1 {
                    &bs[i]
                } else {
                    &raised[i]
                }
            })
            .skip(1)
            .fold(
                if mask & 1 == 1 {
                    bs[0].clone()
                } else {
                    raised[0].clone()
                },
                |acc, e| acc.multiply(e),
            );
        sum.add_scaled(&prod, &c);
    }
    &lhs - &sum.apply_r()
}

/// Nonempty subsets `H ⊆ {0..n}` with `|H| ≥ min` and weight `λ^{|H|-1}`,
/// skipping those whose weight vanishes.
fn hat_subsets(n: usize, lambda: &Scalar, min: u32) -> impl Iterator<Item = (u64, Scalar)> + '_ {
    assert!(n < 64, "too many factors");
    (1u64..1 << n).filter_map(move |mask| {
        let h = mask.count_ones();
        if h < min {
            return None;
        }
        let c = lambda.pow(h - 1);
        (!c.is_zero()).then_some((mask, c))
    })
}

/// The parameters of one instance of the long relation, in terms of the
/// contents: `R(R(lead) v_1 R(z_2) v_2 … R(z_s) v_s  y x^k  R(trail))` with
/// `y = beta`, `x = P(beta)`. Letters of the `v_i` have positive level, and
/// each stands for `R` of its tilde.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongInstance {
    pub lead: Option<Element>,
    pub vecs: Vec<Vec<Letter>>,
    pub zs: Vec<Element>,
    pub beta: Letter,
    pub k: u32,
    pub trail: Option<Element>,
}

/// A factor `R(b_i)` of the long product, with `b_i` and `R(b_i)` as elements.
struct Position {
    raised: Element,
    hatted: Element,
    block: bool,
}

impl LongInstance {
    pub fn degenerate(beta: Letter) -> Self {
        LongInstance {
            lead: None,
            vecs: vec![Vec::new()],
            zs: Vec::new(),
            beta,
            k: 0,
            trail: None,
        }
    }

    fn check(&self) {
        assert!(!self.vecs.is_empty(), "at least one letter segment");
        assert_eq!(self.zs.len() + 1, self.vecs.len(), "one z between segments");
        assert!(
            self.vecs.iter().flatten().all(|l| l.level >= 1),
            "segment letters need positive level"
        );
    }

    fn positions(&self) -> Vec<Position> {
        self.check();
        let z = |e: &Element| Position {
            raised: e.apply_r(),
            hatted: e.clone(),
            block: false,
        };
        let tilde = |l: &Letter| Position {
            raised: Element::letter(*l),
            hatted: Element::letter(l.tilde().expect("positive level")),
            block: false,
        };
        let mut out = Vec::new();
        out.extend(self.lead.iter().map(z));
        for (i, v) in self.vecs.iter().enumerate() {
            if i > 0 {
                out.push(z(&self.zs[i - 1]));
            }
            out.extend(v.iter().map(tilde));
        }
        for _ in 0..=self.k {
            out.push(Position {
                raised: Element::letter(self.beta.raise()),
                hatted: Element::letter(self.beta),
                block: true,
            });
        }
        out.extend(self.trail.iter().map(z));
        out
    }

    /// The content of the left side, `R(lead) v_1 … v_s y x^k R(trail)`.
    pub fn content(&self) -> Element {
        self.check();
        let mut parts: Vec<Element> = Vec::new();
        parts.extend(self.lead.iter().map(Element::apply_r));
        for (i, v) in self.vecs.iter().enumerate() {
            if i > 0 {
                parts.push(self.zs[i - 1].apply_r());
            }
            parts.extend(v.iter().map(|l| Element::letter(*l)));
        }
        parts.push(Element::letter(self.beta));
        parts.extend((0..self.k).map(|_| Element::letter(self.beta.raise())));
        parts.extend(self.trail.iter().map(Element::apply_r));
        product(&parts).expect("the content contains beta")
    }
}

fn product<'a>(parts: impl IntoIterator<Item = &'a Element>) -> Option<Element> {
    parts
        .into_iter()
        .fold(None, |acc, e| times(acc.as_ref(), Some(e)))
}

/// The left side `R(content)`.
pub fn long_lhs(inst: &LongInstance) -> Element {
    inst.content().apply_r()
}

/// `Δ`, the right-hand side of the long identity, taken verbatim: the
/// symmetrized leading term, the bracket corrections on the block, the
/// single-hat terms off the block, and every multi-hat term with its power
/// of `λ`. Absent flanks simply contribute no position.
pub fn long_delta<B: Bracket + ?Sized>(
    inst: &LongInstance,
    lambda: &Scalar,
    br: &B,
) -> Result<Element> {
    let pos = inst.positions();
    let n = pos.len();
    let k = inst.k;
    let first_block = pos.iter().position(|p| p.block).expect("block is present");
    let last_block = first_block + k as usize;
    let pre = product(pos[..first_block].iter().map(|p| &p.raised));
    let post = product(pos[last_block + 1..].iter().map(|p| &p.raised));

    let mut sigma = Element::zero();
    let (y, x) = (
        Element::letter(inst.beta),
        Element::letter(inst.beta.raise()),
    );
    for i in 2..=k + 1 {
        let c = &sign(i) * &binomial(u64::from(k + 1), u64::from(i));
        let b = iterated_bracket(br, &y, &x, i - 1)?;
        if b.is_zero() {
            continue;
        }
        let mut t = times(pre.as_ref(), Some(&b)).expect("nonempty");
        if let Some(xs) = power(&x, k + 1 - i) {
            t = t.multiply(&xs);
        }
        if let Some(p) = &post {
            t = t.multiply(p);
        }
        sigma.add_scaled(&t, &c);
    }
    let hatted = |mask: u64| {
        product((0..n).map(|i| {
            if mask >> i & 1 == 1 {
                &pos[i].hatted
            } else {
                &pos[i].raised
            }
        }))
        .expect("nonempty")
    };
    for (i, p) in pos.iter().enumerate() {
        if !p.block {
            sigma.sub_assign(&hatted(1 << i));
        }
    }
    for (mask, c) in hat_subsets(n, lambda, 2) {
        sigma.add_scaled(&hatted(mask), &-c);
    }
    let full = product(pos.iter().map(|p| &p.raised)).expect("nonempty");
    let out = &full + &sigma.apply_r();
    Ok(out.scale(&Scalar::ratio(1, i64::from(k) + 1)))
}

/// `x_{α,k} ↦ R^k(x_{α,0})` at every depth, extended linearly.
pub fn expand_levels(e: &Element) -> Element {
    e.map_words(expand_word)
}

pub fn expand_word(w: &RBWord) -> RBWord {
    use crate::terms::Atom;
    RBWord::new(
        w.atoms()
            .iter()
            .map(|a| match a {
                Atom::Letter(l) => {
                    let mut u = RBWord::letter(Letter::new(l.gen, 0));
                    for _ in 0..l.level {
                        u = RBWord::bracket(u);
                    }
                    u.into_atoms().pop().expect("one atom")
                }
                Atom::R(c) => Atom::r(expand_word(c)),
            })
            .collect(),
    )
}
