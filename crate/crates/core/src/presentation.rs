//! Input algebras and the Lie RB-algebra `L` they generate.
//!
//! `L` has basis `x_{α,k} = P^k(x_α)`; its bracket is given by a
//! [`BracketOracle`]. Brackets of two letters of positive level are never
//! stored: they follow from the RB identity read inside `L`,
//! `[P a, P b] = P([P a, b] + [a, P b] + λ[a, b])`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::terms::{Alphabet, Letter, RBWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Pre,
    Post,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Pre => "pre",
            Case::Post => "post",
        })
    }
}

impl Case {
    /// Pre needs weight zero, post a nonzero weight.
    pub fn check_weight(self, lambda: &Scalar) -> Result<()> {
        let ok = match self {
            Case::Pre => lambda.is_zero(),
            Case::Post => !lambda.is_zero(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidWeight {
                case: self,
                lambda: lambda.clone(),
            })
        }
    }
}

type Vector = Vec<Scalar>;

fn vzero(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

fn vadd(u: &mut Vector, v: &[Scalar], c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (a, b) in u.iter_mut().zip(v) {
        *a += &(b * c);
    }
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Structure constants of a bilinear product on a space with basis
/// `0..dim`: `e_i * e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    dim: usize,
    entries: Vec<Vector>,
}

impl StructureTable {
    pub fn zero(dim: usize) -> Self {
        StructureTable {
            dim,
            entries: vec![vzero(dim); dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut t = StructureTable::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                t.set(i, j, f(i, j));
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vector) {
        assert_eq!(
            v.len(),
            self.dim,
            "structure constant vector has wrong length"
        );
        self.entries[i * self.dim + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| is_zero_vec(v))
    }

    /// Bilinear extension to coordinate vectors.
    pub fn apply(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = vzero(self.dim);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                vadd(&mut out, self.get(i, j), &(a * b));
            }
        }
        out
    }
}

fn basis(dim: usize, i: usize) -> Vector {
    let mut v = vzero(dim);
    v[i] = Scalar::one();
    v
}

/// A pre-Lie algebra (product only, weight 0) or a post-Lie algebra
/// (product `·` plus Lie bracket, nonzero weight) on an ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrePostLie {
    case: Case,
    gens: Alphabet,
    lambda: Scalar,
    product: StructureTable,
    bracket: StructureTable,
}

impl PrePostLie {
    /// Validates the weight and all defining identities on basis triples.
    pub fn new(
        case: Case,
        gens: Alphabet,
        lambda: Scalar,
        product: StructureTable,
        bracket: Option<StructureTable>,
    ) -> Result<Self> {
        case.check_weight(&lambda)?;
        let n = gens.len();
        if n == 0 {
            return Err(Error::Presentation("no generators".into()));
        }
        if product.dim() != n {
            return Err(Error::Presentation(
                "product table dimension mismatch".into(),
            ));
        }
        let bracket = match (case, bracket) {
            (Case::Pre, Some(b)) if !b.is_zero() => {
                return Err(Error::Presentation(
                    "a pre-Lie algebra has no bracket table".into(),
                ))
            }
            (_, Some(b)) if b.dim() != n => {
                return Err(Error::Presentation(
                    "bracket table dimension mismatch".into(),
                ))
            }
            (_, Some(b)) => b,
            (_, None) => StructureTable::zero(n),
        };
        let c = PrePostLie {
            case,
            gens,
            lambda,
            product,
            bracket,
        };
        c.check_axioms()?;
        Ok(c)
    }

    pub fn trivial(case: Case, gens: Alphabet, lambda: Scalar) -> Result<Self> {
        let n = gens.len();
        PrePostLie::new(case, gens, lambda, StructureTable::zero(n), None)
    }

    pub fn case(&self) -> Case {
        self.case
    }

    pub fn gens(&self) -> &Alphabet {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn product(&self) -> &StructureTable {
        &self.product
    }

    pub fn bracket(&self) -> &StructureTable {
        &self.bracket
    }

    pub fn is_trivial(&self) -> bool {
        self.product.is_zero() && self.bracket.is_zero()
    }

    /// The defining identities, each as a defect that must vanish.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.dim();
        let e = |i| basis(n, i);
        let p = |u: &[Scalar], v: &[Scalar]| self.product.apply(u, v);
        let b = |u: &[Scalar], v: &[Scalar]| self.bracket.apply(u, v);
        let fail = |identity: &str, idx: &[usize]| Error::AxiomViolation {
            identity: identity.to_string(),
            args: idx
                .iter()
                .map(|&i| self.gens.name(i as u32).to_string())
                .collect(),
        };
        if self.case == Case::Post {
            for i in 0..n {
                for j in 0..n {
                    let mut s = b(&e(i), &e(j));
                    vadd(&mut s, &b(&e(j), &e(i)), &Scalar::one());
                    if !is_zero_vec(&s) {
                        return Err(fail("antisymmetry", &[i, j]));
                    }
                }
            }
        }
        let one = Scalar::one();
        let neg = -Scalar::one();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    // (xy)z - x(yz) - (yx)z + y(xz) [- [y,x]z in the post case]
                    let mut d = p(&p(&x, &y), &z);
                    vadd(&mut d, &p(&x, &p(&y, &z)), &neg);
                    vadd(&mut d, &p(&p(&y, &x), &z), &neg);
                    vadd(&mut d, &p(&y, &p(&x, &z)), &one);
                    let name = match self.case {
                        Case::Pre => "pre-Lie identity",
                        Case::Post => {
                            vadd(&mut d, &p(&b(&y, &x), &z), &neg);
                            "first post-Lie identity"
                        }
                    };
                    if !is_zero_vec(&d) {
                        return Err(fail(name, &[i, j, k]));
                    }
                    if self.case == Case::Post {
                        // x·[y,z] - [x·y,z] - [y,x·z]
                        let mut d = p(&x, &b(&y, &z));
                        vadd(&mut d, &b(&p(&x, &y), &z), &neg);
                        vadd(&mut d, &b(&y, &p(&x, &z)), &neg);
                        if !is_zero_vec(&d) {
                            return Err(fail("second post-Lie identity", &[i, j, k]));
                        }
                        let mut d = b(&b(&x, &y), &z);
                        vadd(&mut d, &b(&b(&y, &z), &x), &one);
                        vadd(&mut d, &b(&b(&z, &x), &y), &one);
                        if !is_zero_vec(&d) {
                            return Err(fail("Jacobi identity", &[i, j, k]));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// What an oracle answers for pairs that no rule and no RB-derivation covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HigherPolicy {
    /// Report the pair as oracle-incomplete.
    Error,
    /// Treat the bracket as zero.
    Zero,
}

/// The bracket of `L` on the letters `x_{α,k}`.
///
/// Explicit rules (from forced brackets or a user table) are consulted
/// first, then RB-coherence when both levels are positive, then the policy.
/// Results are memoized behind a mutex; memoization never changes answers.
pub struct BracketOracle {
    n_gens: usize,
    lambda: Scalar,
    policy: HigherPolicy,
    rules: HashMap<(Letter, Letter), Element>,
    memo: Mutex<HashMap<(Letter, Letter), Result<Element>>>,
}

impl Clone for BracketOracle {
    fn clone(&self) -> Self {
        BracketOracle {
            n_gens: self.n_gens,
            lambda: self.lambda.clone(),
            policy: self.policy,
            rules: self.rules.clone(),
            memo: Mutex::default(),
        }
    }
}

impl fmt::Debug for BracketOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BracketOracle")
            .field("n_gens", &self.n_gens)
            .field("lambda", &self.lambda)
            .field("policy", &self.policy)
            .field("rules", &self.rules.len())
            .finish()
    }
}

fn raise(e: &Element) -> Element {
    e.map_words(|w| w.map_letters(&Letter::raise))
}

fn letter_of(w: &RBWord) -> Letter {
    w.as_single_letter()
        .expect("oracle brackets act on single letters only")
}

impl BracketOracle {
    pub fn new(n_gens: usize, lambda: Scalar, policy: HigherPolicy) -> Self {
        BracketOracle {
            n_gens,
            lambda,
            policy,
            rules: HashMap::new(),
            memo: Mutex::default(),
        }
    }

    /// All brackets zero.
    pub fn abelian(n_gens: usize, lambda: Scalar) -> Self {
        BracketOracle::new(n_gens, lambda, HigherPolicy::Zero)
    }

    /// Sets `[u, v] = value` (and so `[v, u] = -value`). `value` must be a
    /// combination of single letters.
    pub fn with_rule(mut self, u: Letter, v: Letter, value: Element) -> Self {
        assert!(
            value.words().all(|w| w.as_single_letter().is_some()),
            "bracket values must be combinations of letters"
        );
        self.rules.remove(&(v, u));
        self.rules.insert((u, v), value);
        self.memo.get_mut().expect("memo lock").clear();
        self
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn policy(&self) -> HigherPolicy {
        self.policy
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(Letter, Letter), &Element)> + '_ {
        self.rules.iter()
    }

    /// True when every bracket is zero by construction.
    pub fn is_abelian(&self) -> bool {
        self.policy == HigherPolicy::Zero && self.rules.values().all(Element::is_zero)
    }

    pub fn bracket(&self, u: Letter, v: Letter) -> Result<Element> {
        if u == v {
            return Ok(Element::zero());
        }
        let (lo, hi, sign) = if u < v { (u, v, false) } else { (v, u, true) };
        let cached = self.memo.lock().expect("memo lock").get(&(lo, hi)).cloned();
        let value = match cached {
            Some(r) => r?,
            None => {
                let r = self.compute(lo, hi);
                self.memo
                    .lock()
                    .expect("memo lock")
                    .insert((lo, hi), r.clone());
                r?
            }
        };
        Ok(if sign { -&value } else { value })
    }

    fn compute(&self, u: Letter, v: Letter) -> Result<Element> {
        if let Some(e) = self.rules.get(&(u, v)) {
            return Ok(e.clone());
        }
        if let Some(e) = self.rules.get(&(v, u)) {
            return Ok(-e);
        }
        if let (Some(a), Some(b)) = (u.tilde(), v.tilde()) {
            return self.derived(a, b);
        }
        match self.policy {
            HigherPolicy::Zero => Ok(Element::zero()),
            HigherPolicy::Error => Err(Error::OracleIncomplete { left: u, right: v }),
        }
    }

    /// `P([P a, b] + [a, P b] + λ[a, b])`.
    fn derived(&self, a: Letter, b: Letter) -> Result<Element> {
        let mut s = self.bracket(a.raise(), b)?;
        s.add_assign(&self.bracket(a, b.raise())?);
        if !self.lambda.is_zero() {
            s.add_scaled(&self.bracket(a, b)?, &self.lambda);
        }
        Ok(raise(&s))
    }

    /// Bilinear extension to combinations of letters.
    pub fn bracket_elements(&self, u: &Element, v: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (w1, c1) in u.iter() {
            for (w2, c2) in v.iter() {
                let b = self.bracket(letter_of(w1), letter_of(w2))?;
                out.add_scaled(&b, &(c1 * c2));
            }
        }
        Ok(out)
    }
}

pub fn bracket(o: &BracketOracle, u: Letter, v: Letter) -> Result<Element> {
    o.bracket(u, v)
}

/// Which standing hypothesis a letter tuple violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: String,
    pub letters: Vec<Letter>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub incomplete: Vec<(Letter, Letter)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.incomplete.is_empty()
    }
}

/// Checks antisymmetry, Jacobi, RB-coherence and the image-subalgebra
/// condition on every letter of level at most `level_bound`.
pub fn validate(o: &BracketOracle, level_bound: u32) -> ValidationReport {
    let letters: Vec<Letter> = (0..o.n_gens as u32)
        .flat_map(|g| (0..=level_bound).map(move |k| Letter::new(g, k)))
        .collect();
    let mut report = ValidationReport::default();
    let mut incomplete = std::collections::BTreeSet::new();
    let note = |e: Error, inc: &mut std::collections::BTreeSet<(Letter, Letter)>| {
        if let Error::OracleIncomplete { left, right } = e {
            inc.insert((left, right));
        }
    };
    for &u in &letters {
        for &v in &letters {
            let (uv, vu) = match (o.bracket(u, v), o.bracket(v, u)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    note(e, &mut incomplete);
                    continue;
                }
            };
            if !(&uv + &vu).is_zero() {
                report.violations.push(Violation {
                    identity: "antisymmetry".into(),
                    letters: vec![u, v],
                });
            }
            if u.level >= 1 && v.level >= 1 && u < v {
                if uv.words().any(|w| letter_of(w).level == 0) {
                    report.violations.push(Violation {
                        identity: "image-subalgebra".into(),
                        letters: vec![u, v],
                    });
                }
                match o.derived(u.tilde().unwrap(), v.tilde().unwrap()) {
                    Ok(d) if d != uv => report.violations.push(Violation {
                        identity: "RB-coherence".into(),
                        letters: vec![u, v],
                    }),
                    Ok(_) => {}
                    Err(e) => note(e, &mut incomplete),
                }
            }
        }
    }
    for (i, &u) in letters.iter().enumerate() {
        for (j, &v) in letters.iter().enumerate().skip(i + 1) {
            for &w in &letters[j + 1..] {
                let _ = v;
                let jac = (|| -> Result<Element> {
                    let lt = |e: Element, x: Letter| o.bracket_elements(&e, &Element::letter(x));
                    let mut s = lt(o.bracket(u, v)?, w)?;
                    s.add_assign(&lt(o.bracket(v, w)?, u)?);
                    s.add_assign(&lt(o.bracket(w, u)?, v)?);
                    Ok(s)
                })();
                match jac {
                    Ok(s) if !s.is_zero() => report.violations.push(Violation {
                        identity: "Jacobi identity".into(),
                        letters: vec![u, v, w],
                    }),
                    Ok(_) => {}
                    Err(e) => note(e, &mut incomplete),
                }
            }
        }
    }
    report.incomplete = incomplete.into_iter().collect();
    report
}

fn level0_combination(v: &[Scalar], scale: &Scalar) -> Element {
    v.iter()
        .enumerate()
        .map(|(i, c)| (RBWord::letter(Letter::new(i as u32, 0)), c * scale))
        .collect()
}

/// The oracle whose brackets are forced by the envelope relations:
/// `[P a, b] = a·b`, and in the post case `[a, b] = λ⁻¹[a, b]_C`.
/// Trivial tables give the zero oracle.
pub fn forced_oracle(c: &PrePostLie) -> Result<BracketOracle> {
    let policy = if c.is_trivial() {
        HigherPolicy::Zero
    } else {
        HigherPolicy::Error
    };
    forced_oracle_with_policy(c, policy)
}

pub fn forced_oracle_with_policy(c: &PrePostLie, policy: HigherPolicy) -> Result<BracketOracle> {
    c.case.check_weight(&c.lambda)?;
    let n = c.dim();
    let mut o = BracketOracle::new(n, c.lambda.clone(), policy);
    let one = Scalar::one();
    for a in 0..n {
        for b in 0..n {
            let val = level0_combination(c.product.get(a, b), &one);
            o = o.with_rule(Letter::new(a as u32, 1), Letter::new(b as u32, 0), val);
        }
    }
    if c.case == Case::Post {
        let inv = c.lambda.recip().expect("post weight is nonzero");
        for a in 0..n {
            for b in a + 1..n {
                let val = level0_combination(c.bracket.get(a, b), &inv);
                o = o.with_rule(Letter::new(a as u32, 0), Letter::new(b as u32, 0), val);
            }
        }
    }
    Ok(o)
}

/// `Ĉ = C ⊕ C′` with basis `c_0..c_{n-1}, c_0′..c_{n-1}′`, its bracket and
/// the operator `P(c′) = c`, `P(c) = -λc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledAlgebra {
    base: PrePostLie,
    bracket: StructureTable,
    operator: Vec<Vector>,
}

impl DoubledAlgebra {
    pub fn base(&self) -> &PrePostLie {
        &self.base
    }

    pub fn dim(&self) -> usize {
        2 * self.base.dim()
    }

    pub fn bracket(&self) -> &StructureTable {
        &self.bracket
    }

    pub fn bracket_mut(&mut self) -> &mut StructureTable {
        &mut self.bracket
    }

    /// Image of a coordinate vector under `P`.
    pub fn apply_p(&self, v: &[Scalar]) -> Vector {
        let mut out = vzero(self.dim());
        for (i, c) in v.iter().enumerate() {
            vadd(&mut out, &self.operator[i], c);
        }
        out
    }

    pub fn basis_name(&self, i: usize) -> String {
        let n = self.base.dim();
        if i < n {
            self.base.gens.name(i as u32).to_string()
        } else {
            format!("{}'", self.base.gens.name((i - n) as u32))
        }
    }
}

pub fn doubling(c: &PrePostLie) -> Result<DoubledAlgebra> {
    c.case.check_weight(&c.lambda)?;
    let n = c.dim();
    let inv = c.lambda.recip();
    let shift = |v: &[Scalar], prime: bool| -> Vector {
        let mut out = vzero(2 * n);
        let off = if prime { n } else { 0 };
        for (i, x) in v.iter().enumerate() {
            out[off + i] = x.clone();
        }
        out
    };
    let bracket = StructureTable::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, true) => {
            let mut v = c.product.get(i, j).to_vec();
            vadd(&mut v, c.product.get(j, i), &-Scalar::one());
            vadd(&mut v, c.bracket.get(i, j), &Scalar::one());
            shift(&v, false)
        }
        (true, false) => shift(c.product.get(i, j - n), true),
        (false, true) => {
            let mut v = vzero(n);
            vadd(&mut v, c.product.get(j, i - n), &-Scalar::one());
            shift(&v, true)
        }
        (false, false) => match &inv {
            Some(inv) => {
                let mut v = vzero(n);
                vadd(&mut v, c.bracket.get(i - n, j - n), inv);
                shift(&v, true)
            }
            None => vzero(2 * n),
        },
    });
    let operator = (0..2 * n)
        .map(|i| {
            if i < n {
                let mut v = vzero(2 * n);
                v[i] = -c.lambda.clone();
                v
            } else {
                basis(2 * n, i - n)
            }
        })
        .collect();
    Ok(DoubledAlgebra {
        base: c.clone(),
        bracket,
        operator,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DoublingReport {
    /// Identity name and the basis elements it fails on.
    pub violations: Vec<(String, Vec<String>)>,
}

impl DoublingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_doubling(d: &DoubledAlgebra) -> DoublingReport {
    let m = d.dim();
    let n = d.base.dim();
    let lambda = d.base.lambda.clone();
    let e = |i| basis(m, i);
    let br = |u: &[Scalar], v: &[Scalar]| d.bracket.apply(u, v);
    let one = Scalar::one();
    let neg = -Scalar::one();
    let mut report = DoublingReport::default();
    let mut fail = |name: &str, idx: &[usize]| {
        report.violations.push((
            name.to_string(),
            idx.iter().map(|&i| d.basis_name(i)).collect(),
        ));
    };
    for i in 0..m {
        for j in 0..m {
            let (x, y) = (e(i), e(j));
            let mut s = br(&x, &y);
            vadd(&mut s, &br(&y, &x), &one);
            if !is_zero_vec(&s) {
                fail("antisymmetry", &[i, j]);
            }
            // [Px, Py] - P([Px, y] + [x, Py] + λ[x, y])
            let (px, py) = (d.apply_p(&x), d.apply_p(&y));
            let mut inner = br(&px, &y);
            vadd(&mut inner, &br(&x, &py), &one);
            vadd(&mut inner, &br(&x, &y), &lambda);
            let mut s = br(&px, &py);
            vadd(&mut s, &d.apply_p(&inner), &neg);
            if !is_zero_vec(&s) {
                fail("Rota-Baxter identity", &[i, j]);
            }
            for k in 0..m {
                let z = e(k);
                let mut s = br(&br(&x, &y), &z);
                vadd(&mut s, &br(&br(&y, &z), &x), &one);
                vadd(&mut s, &br(&br(&z, &x), &y), &one);
                if !is_zero_vec(&s) {
                    fail("Jacobi identity", &[i, j, k]);
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let (ap, bp) = (e(n + a), e(n + b));
            let prod = d.base.product.get(a, b);
            let mut expect = vzero(m);
            for (k, c) in prod.iter().enumerate() {
                expect[n + k] = c.clone();
            }
            if br(&d.apply_p(&ap), &bp) != expect {
                fail("embedding of the product", &[n + a, n + b]);
            }
            if d.base.case == Case::Post {
                let mut lhs = br(&ap, &bp);
                lhs.iter_mut().for_each(|c| *c *= &lambda);
                let mut expect = vzero(m);
                for (k, c) in d.base.bracket.get(a, b).iter().enumerate() {
                    expect[n + k] = c.clone();
                }
                if lhs != expect {
                    fail("embedding of the bracket", &[n + a, n + b]);
                }
            }
        }
    }
    report
}

/// Integer tables `(product, bracket)` with entries in `{-1, 0, 1}` that
/// satisfy the defining identities, for `n ≤ 2` generators.
fn valid_tables(case: Case, n: usize) -> &'static [(Vec<i64>, Vec<i64>)] {
    static CACHE: OnceLock<Mutex<BTreeMap<(Case, usize), &'static [(Vec<i64>, Vec<i64>)]>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Mutex::default);
    if let Some(t) = cache.lock().expect("table cache").get(&(case, n)) {
        return t;
    }
    assert!(
        n <= 2,
        "random tables are enumerated for at most two generators"
    );
    let cube = n * n * n;
    let mut out = Vec::new();
    let brackets: Vec<Vec<i64>> = match case {
        Case::Pre => vec![vec![0; cube]],
        Case::Post => {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            let slots = pairs.len() * n;
            (0..3usize.pow(slots as u32))
                .map(|code| {
                    let digits = ternary(code, slots);
                    let mut t = vec![0; cube];
                    for (p, &(i, j)) in pairs.iter().enumerate() {
                        for k in 0..n {
                            let c = digits[p * n + k];
                            t[(i * n + j) * n + k] = c;
                            t[(j * n + i) * n + k] = -c;
                        }
                    }
                    t
                })
                .collect()
        }
    };
    for code in 0..3usize.pow(cube as u32) {
        let product = ternary(code, cube);
        for b in &brackets {
            if int_axioms_hold(case, n, &product, b) {
                out.push((product.clone(), b.clone()));
            }
        }
    }
    let leaked: &'static [(Vec<i64>, Vec<i64>)] = Box::leak(out.into_boxed_slice());
    cache.lock().expect("table cache").insert((case, n), leaked);
    leaked
}

fn ternary(mut code: usize, len: usize) -> Vec<i64> {
    (0..len)
        .map(|_| {
            let d = (code % 3) as i64 - 1;
            code /= 3;
            d
        })
        .collect()
}

fn int_axioms_hold(case: Case, n: usize, p: &[i64], b: &[i64]) -> bool {
    let apply = |t: &[i64], u: &[i64], v: &[i64]| -> Vec<i64> {
        let mut out = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                let c = u[i] * v[j];
                if c != 0 {
                    for k in 0..n {
                        out[k] += c * t[(i * n + j) * n + k];
                    }
                }
            }
        }
        out
    };
    let e = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (e(i), e(j), e(k));
                let l1 = apply(p, &apply(p, &x, &y), &z);
                let l2 = apply(p, &x, &apply(p, &y, &z));
                let l3 = apply(p, &apply(p, &y, &x), &z);
                let l4 = apply(p, &y, &apply(p, &x, &z));
                let r = apply(p, &apply(b, &y, &x), &z);
                if (0..n).any(|t| l1[t] - l2[t] - l3[t] + l4[t] - r[t] != 0) {
                    return false;
                }
                if case == Case::Post {
                    let a = apply(p, &x, &apply(b, &y, &z));
                    let c = apply(b, &apply(p, &x, &y), &z);
                    let d = apply(b, &y, &apply(p, &x, &z));
                    if (0..n).any(|t| a[t] - c[t] - d[t] != 0) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn table_from_ints(n: usize, t: &[i64]) -> StructureTable {
    StructureTable::from_fn(n, |i, j| {
        (0..n)
            .map(|k| Scalar::from_int(t[(i * n + j) * n + k]))
            .collect()
    })
}

/// A random valid algebra with `n ≤ 2` generators and structure constants
/// in `{-1, 0, 1}`, drawn uniformly from all such tables.
pub fn random_pre_post_lie<R: Rng + ?Sized>(
    case: Case,
    n: usize,
    lambda: Scalar,
    rng: &mut R,
) -> Result<PrePostLie> {
    let tables = valid_tables(case, n);
    let (p, b) = tables.choose(rng).expect("the zero table is always valid");
    PrePostLie::new(
        case,
        Alphabet::standard(n),
        lambda,
        table_from_ints(n, p),
        (case == Case::Post).then(|| table_from_ints(n, b)),
    )
}

/// Number of valid `{-1,0,1}` tables, mostly for diagnostics.
pub fn count_valid_tables(case: Case, n: usize) -> usize {
    valid_tables(case, n).len()
}
