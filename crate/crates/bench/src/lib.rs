//! Fixtures shared by the benchmarks.

use pbw_core::presentation::forced_oracle;
use pbw_core::sample::{random_element, WordShape};
use pbw_core::{Alphabet, Case, Element, Envelope, PrePostLie, Rewriter, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0xbe_4c;

/// Rewriter for the trivial algebra on `n` generators.
pub fn trivial_rewriter(case: Case, n: usize, lambda: i64) -> Rewriter {
    let c = PrePostLie::trivial(case, Alphabet::standard(n), Scalar::from_int(lambda))
        .expect("valid weight");
    Rewriter::new(forced_oracle(&c).expect("trivial tables force every bracket"))
}

pub fn envelope(case: Case, n: usize, lambda: i64) -> Envelope {
    Envelope::new(trivial_rewriter(case, n, lambda))
}

/// Seeded random elements of the free Rota-Baxter algebra.
pub fn inputs(n_gens: u32, count: usize) -> Vec<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let shape = WordShape::new(n_gens, 3, 2, 2);
    (0..count)
        .map(|_| random_element(&mut rng, &shape, 3))
        .collect()
}
