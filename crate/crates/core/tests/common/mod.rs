#![allow(dead_code)]

use pbw_core::formulas::LongInstance;
use pbw_core::sample::{random_element, random_long_instance, random_word, WordShape};
use pbw_core::{Element, RBWord};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SMALL: WordShape = WordShape::new(2, 4, 2, 2);

pub fn word(shape: WordShape) -> impl Strategy<Value = RBWord> {
    any::<u64>().prop_map(move |s| random_word(&mut ChaCha8Rng::seed_from_u64(s), &shape))
}

pub fn element(shape: WordShape, terms: usize) -> impl Strategy<Value = Element> {
    any::<u64>().prop_map(move |s| random_element(&mut ChaCha8Rng::seed_from_u64(s), &shape, terms))
}

/// A bounded instance of the long identity built from a seed.
pub fn random_instance(seed: u64, k: u32) -> LongInstance {
    random_long_instance(&mut ChaCha8Rng::seed_from_u64(seed), 2, k)
}
