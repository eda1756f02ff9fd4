//! The quotient `A = RAs⟨X⟩/Id(S)` through normal forms, its RB operator,
//! and the pre/post-associative operations it induces.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::gs::Rewriter;
use crate::presentation::{Case, PrePostLie};
use crate::scalar::Scalar;
use crate::terms::{Alphabet, Letter};

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

/// Computations in `A` for one presentation.
#[derive(Debug)]
pub struct Envelope {
    rw: Rewriter,
    id: u64,
}

/// An element of `A`, stored in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnvElement {
    element: Element,
    envelope: u64,
}

impl EnvElement {
    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn into_element(self) -> Element {
        self.element
    }

    pub fn is_zero(&self) -> bool {
        self.element.is_zero()
    }
}

/// The operations `≻`, `≺` and `·` on the enveloping algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Succ,
    Prec,
    Dot,
}

impl Op {
    /// The operations defined for the given case.
    pub fn for_case(case: Case) -> &'static [Op] {
        match case {
            Case::Pre => &[Op::Succ, Op::Prec],
            Case::Post => &[Op::Succ, Op::Prec, Op::Dot],
        }
    }
}

impl Envelope {
    pub fn new(rw: Rewriter) -> Self {
        Envelope {
            rw,
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        }
    }

    pub fn rewriter(&self) -> &Rewriter {
        &self.rw
    }

    pub fn lambda(&self) -> &Scalar {
        self.rw.lambda()
    }

    /// The class of `e`, normalized.
    pub fn element(&self, e: &Element) -> Result<EnvElement> {
        Ok(EnvElement {
            element: self.rw.normal_form(e)?,
            envelope: self.id,
        })
    }

    pub fn letter(&self, l: Letter) -> Result<EnvElement> {
        self.element(&Element::letter(l))
    }

    fn own<'a>(&self, a: &'a EnvElement) -> Result<&'a Element> {
        if a.envelope == self.id {
            Ok(&a.element)
        } else {
            Err(Error::EnvelopeMismatch)
        }
    }

    pub fn product(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        self.element(&self.own(a)?.multiply(self.own(b)?))
    }

    pub fn r(&self, a: &EnvElement) -> Result<EnvElement> {
        self.element(&self.own(a)?.apply_r())
    }

    pub fn add(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        Ok(EnvElement {
            element: self.own(a)? + self.own(b)?,
            envelope: self.id,
        })
    }

    pub fn sub(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        Ok(EnvElement {
            element: self.own(a)? - self.own(b)?,
            envelope: self.id,
        })
    }

    pub fn scale(&self, a: &EnvElement, c: &Scalar) -> Result<EnvElement> {
        Ok(EnvElement {
            element: self.own(a)?.scale(c),
            envelope: self.id,
        })
    }

    /// `a ≻ b = R(a) b`.
    pub fn succ(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        self.element(&self.own(a)?.apply_r().multiply(self.own(b)?))
    }

    /// `a ≺ b = a R(b)`.
    pub fn prec(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        self.element(&self.own(a)?.multiply(&self.own(b)?.apply_r()))
    }

    /// `a · b = λ a b`, only for nonzero weight.
    pub fn dot(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        if self.lambda().is_zero() {
            return Err(Error::DotInPreCase);
        }
        let ab = self.own(a)?.multiply(self.own(b)?);
        self.element(&ab.scale(self.lambda()))
    }

    pub fn apply(&self, op: Op, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        match op {
            Op::Succ => self.succ(a, b),
            Op::Prec => self.prec(a, b),
            Op::Dot => self.dot(a, b),
        }
    }
}

/// A failed identity and the rendered arguments it failed on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub identity: String,
    pub args: Vec<String>,
    pub defect: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, identity: &str, args: &[&Element], defect: &Element, names: &Alphabet) {
        self.checked += 1;
        if !defect.is_zero() {
            self.failures.push(Failure {
                identity: identity.to_string(),
                args: args.iter().map(|e| e.render(names)).collect(),
                defect: defect.render(names),
            });
        }
    }

    pub fn merge(&mut self, other: IdentityReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// Checks the envelope relations on all basis pairs of `c` (embedded as
/// level-0 letters): `a·b = nf(R(a)b - bR(a))` and, post case,
/// `[a,b]_C = λ nf(ab - ba)`.
pub fn check_envelope(c: &PrePostLie, env: &Envelope) -> Result<IdentityReport> {
    let n = c.dim();
    let names = c.gens();
    let combo = |v: &[Scalar]| -> Element {
        v.iter()
            .enumerate()
            .map(|(i, s)| {
                (
                    crate::terms::RBWord::letter(Letter::new(i as u32, 0)),
                    s.clone(),
                )
            })
            .collect()
    };
    let mut report = IdentityReport::default();
    for i in 0..n {
        for j in 0..n {
            let a = Element::letter(Letter::new(i as u32, 0));
            let b = Element::letter(Letter::new(j as u32, 0));
            let lhs = env
                .rw
                .normal_form(&(&a.apply_r().multiply(&b) - &b.multiply(&a.apply_r())))?;
            let defect = &lhs - &combo(c.product().get(i, j));
            report.record("product", &[&a, &b], &defect, names);
            if c.case() == Case::Post {
                let lhs = env
                    .rw
                    .normal_form(&(&a.multiply(&b) - &b.multiply(&a)))?
                    .scale(c.lambda());
                let defect = &lhs - &combo(c.bracket().get(i, j));
                report.record("bracket", &[&a, &b], &defect, names);
            }
        }
    }
    Ok(report)
}

/// The identity families checked on samples in `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomKind {
    /// The three preassociative identities for `≻`, `≺`.
    Dendriform,
    /// `R(a)R(b) = R(R(a)b + aR(b) + λab)`.
    Rb,
    /// `(ab)c = a(bc)`.
    Assoc,
}

/// Evaluates the identities of `kind` on every sample tuple. Pairs use the
/// first two entries of each sample.
pub fn check_axioms(
    env: &Envelope,
    kind: AxiomKind,
    samples: &[[EnvElement; 3]],
    names: &Alphabet,
) -> Result<IdentityReport> {
    let mut report = IdentityReport::default();
    for [x, y, z] in samples {
        let args = [&x.element, &y.element, &z.element];
        match kind {
            AxiomKind::Assoc => {
                let l = env.product(&env.product(x, y)?, z)?;
                let r = env.product(x, &env.product(y, z)?)?;
                report.record("associativity", &args, &(&l.element - &r.element), names);
            }
            AxiomKind::Rb => {
                let l = env.product(&env.r(x)?, &env.r(y)?)?;
                let mut inner = env.product(&env.r(x)?, y)?;
                inner = env.add(&inner, &env.product(x, &env.r(y)?)?)?;
                let xy = env.product(x, y)?;
                inner = env.add(&inner, &env.scale(&xy, env.lambda())?)?;
                let r = env.r(&inner)?;
                report.record("Rota-Baxter", &args[..2], &(&l.element - &r.element), names);
            }
            AxiomKind::Dendriform => {
                // (x≻y + x≺y)≻z = x≻(y≻z)
                let s = env.add(&env.succ(x, y)?, &env.prec(x, y)?)?;
                let l = env.succ(&s, z)?;
                let r = env.succ(x, &env.succ(y, z)?)?;
                report.record("dendriform 1", &args, &(&l.element - &r.element), names);
                // (x≻y)≺z = x≻(y≺z)
                let l = env.prec(&env.succ(x, y)?, z)?;
                let r = env.succ(x, &env.prec(y, z)?)?;
                report.record("dendriform 2", &args, &(&l.element - &r.element), names);
                // x≺(y≻z + y≺z) = (x≺y)≺z
                let s = env.add(&env.succ(y, z)?, &env.prec(y, z)?)?;
                let l = env.prec(x, &s)?;
                let r = env.prec(&env.prec(x, y)?, z)?;
                report.record("dendriform 3", &args, &(&l.element - &r.element), names);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{forced_oracle, BracketOracle};
    use crate::text::parse_element;

    fn y_env(lambda: i64) -> (Envelope, Alphabet) {
        let o = BracketOracle::abelian(1, Scalar::from_int(lambda));
        (Envelope::new(Rewriter::new(o)), Alphabet::new(["y"]))
    }

    #[test]
    fn operation_examples() {
        let (env, y) = y_env(0);
        let e = |s: &str| env.element(&parse_element(s, &y).unwrap()).unwrap();
        assert_eq!(
            env.succ(&e("y"), &e("y")).unwrap().element().render(&y),
            "y P^1(y)"
        );
        assert_eq!(
            env.prec(&e("y"), &e("y")).unwrap().element().render(&y),
            "y P^1(y)"
        );
        assert_eq!(env.dot(&e("y"), &e("y")), Err(Error::DotInPreCase));
        assert_eq!(
            env.r(&e("y P(y)")).unwrap().element().render(&y),
            "1/2 P^1(y) P^1(y)"
        );
        assert!(env.r(&e("0")).unwrap().is_zero());
        let (post, _) = y_env(1);
        let a = post.letter(Letter::new(0, 0)).unwrap();
        assert_eq!(post.dot(&a, &a).unwrap().element().render(&y), "y y");
    }

    #[test]
    fn mixing_envelopes_is_an_error() {
        let (e1, _) = y_env(0);
        let (e2, _) = y_env(0);
        let a = e1.letter(Letter::new(0, 0)).unwrap();
        let b = e2.letter(Letter::new(0, 0)).unwrap();
        assert_eq!(e1.product(&a, &b), Err(Error::EnvelopeMismatch));
    }

    #[test]
    fn one_generator_envelope() {
        for c in 0..3 {
            let t =
                crate::presentation::StructureTable::from_fn(1, |_, _| vec![Scalar::from_int(c)]);
            let pl =
                PrePostLie::new(Case::Pre, Alphabet::new(["y"]), Scalar::zero(), t, None).unwrap();
            let env = Envelope::new(Rewriter::new(forced_oracle(&pl).unwrap()));
            assert!(check_envelope(&pl, &env).unwrap().passed());
        }
    }

    #[test]
    fn dendriform_on_generators() {
        let (env, y) = y_env(0);
        let a = env.letter(Letter::new(0, 0)).unwrap();
        let samples = [[a.clone(), a.clone(), a]];
        let r = check_axioms(&env, AxiomKind::Dendriform, &samples, &y).unwrap();
        assert_eq!(r.checked, 3);
        assert!(r.passed());
    }
}
