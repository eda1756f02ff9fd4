//! Seeded random words and elements for property checks and sampling.

use rand::Rng;

use crate::element::Element;
use crate::enveloping::{EnvElement, Envelope};
use crate::error::Result;
use crate::formulas::LongInstance;
use crate::scalar::Scalar;
use crate::terms::{Atom, Letter, RBWord};

/// Shape limits for random words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordShape {
    pub n_gens: u32,
    /// Letter occurrences at every depth.
    pub max_size: u32,
    pub max_rdeg: u32,
    pub max_level: u32,
}

impl WordShape {
    pub const fn new(n_gens: u32, max_size: u32, max_rdeg: u32, max_level: u32) -> Self {
        WordShape {
            n_gens,
            max_size,
            max_rdeg,
            max_level,
        }
    }
}

pub fn random_letter<R: Rng + ?Sized>(rng: &mut R, shape: &WordShape) -> Letter {
    Letter::new(
        rng.random_range(0..shape.n_gens),
        rng.random_range(0..=shape.max_level),
    )
}

/// A word with between one and `max_size` letters.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, shape: &WordShape) -> RBWord {
    let size = rng.random_range(1..=shape.max_size.max(1));
    word_of_size(rng, shape, size, shape.max_rdeg)
}

fn word_of_size<R: Rng + ?Sized>(rng: &mut R, shape: &WordShape, size: u32, rdeg: u32) -> RBWord {
    let mut atoms = Vec::new();
    let mut left = size;
    let mut rdeg_left = rdeg;
    while left > 0 {
        if rdeg_left > 0 && rng.random_bool(0.3) {
            let inner = rng.random_range(1..=left);
            let budget = rng.random_range(0..rdeg_left);
            let content = word_of_size(rng, shape, inner, budget);
            rdeg_left -= 1 + content.deg_r();
            left -= inner;
            atoms.push(Atom::r(content));
        } else {
            atoms.push(Atom::Letter(random_letter(rng, shape)));
            left -= 1;
        }
    }
    RBWord::new(atoms)
}

/// A sum of up to `terms` random words with coefficients in `-3..=3`.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, shape: &WordShape, terms: usize) -> Element {
    let mut e = Element::zero();
    for _ in 0..rng.random_range(1..=terms.max(1)) {
        let c = rng.random_range(-3i64..=3);
        e.add_term(random_word(rng, shape), Scalar::from_int(c));
    }
    e
}

/// Random triples of normalized elements of `A`.
pub fn envelope_samples<R: Rng + ?Sized>(
    rng: &mut R,
    env: &Envelope,
    shape: &WordShape,
    terms: usize,
    count: usize,
) -> Result<Vec<[EnvElement; 3]>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push([
            env.element(&random_element(rng, shape, terms))?,
            env.element(&random_element(rng, shape, terms))?,
            env.element(&random_element(rng, shape, terms))?,
        ]);
    }
    Ok(out)
}

/// A bounded instance of the long identity with block length `k + 1`.
/// Segment letters sit at level one, flanks are short R-free elements, and
/// at most four factors surround the block, since the free normal form of
/// the difference is exponential in that number.
pub fn random_long_instance<R: Rng + ?Sized>(rng: &mut R, n_gens: u32, k: u32) -> LongInstance {
    let shape = WordShape::new(n_gens, 2, 0, 1);
    let z = |rng: &mut R| random_element(rng, &shape, 1);
    let lead = rng.random_bool(0.5).then(|| z(rng));
    let trail = rng.random_bool(0.5).then(|| z(rng));
    let segments = rng.random_range(1..=2);
    let mut vecs = Vec::new();
    let mut zs = Vec::new();
    for i in 0..segments {
        if i > 0 {
            zs.push(z(rng));
        }
        let len = rng.random_range(usize::from(i + 1 < segments)..=1);
        vecs.push(
            (0..len)
                .map(|_| Letter::new(rng.random_range(0..n_gens), 1))
                .collect(),
        );
    }
    let mut inst = LongInstance {
        lead,
        vecs,
        zs,
        beta: Letter::new(rng.random_range(0..n_gens), rng.random_range(0..=1)),
        k,
        trail,
    };
    let factors = |i: &LongInstance| {
        i.lead.iter().count()
            + i.trail.iter().count()
            + i.zs.len()
            + i.vecs.iter().map(Vec::len).sum::<usize>()
            + i.k as usize
            + 1
    };
    if factors(&inst) > 4 {
        inst.lead = None;
    }
    if factors(&inst) > 4 {
        inst.trail = None;
    }
    inst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn words_respect_the_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shape = WordShape::new(2, 5, 2, 1);
        for _ in 0..500 {
            let w = random_word(&mut rng, &shape);
            assert!((1..=5).contains(&w.size()));
            assert!(w.deg_r() <= 2);
            assert!(w.max_level() <= 1);
            assert!(w.max_gen() < 2);
        }
    }
}
