//! Rewriting in the universal enveloping associative Rota–Baxter algebra of
//! a Lie RB-algebra, and PBW bases of universal enveloping pre- and
//! postassociative algebras.
//!
//! The pieces, bottom up:
//!
//! * [`terms`] — bracketed words, star contexts, the monomial order;
//! * [`element`], [`scalar`] — exact linear combinations;
//! * [`formulas`] — the identity generators used to build and validate relations;
//! * [`presentation`] — input pre/post-Lie algebras, bracket oracles, doubling;
//! * [`gs`] — the relation families, normal forms and composition checks;
//! * [`enveloping`] — the quotient algebra and its induced operations;
//! * [`pbw`] — the basis words `E` and their validation.

pub mod element;
pub mod enveloping;
pub mod error;
pub mod formulas;
pub mod gs;
pub mod pbw;
pub mod presentation;
pub mod sample;
pub mod scalar;
pub mod terms;
pub mod text;

pub use element::Element;
pub use enveloping::{EnvElement, Envelope, Op};
pub use error::{Error, Result};
pub use gs::{
    Bounds, Composition, CompositionKind, LongPattern, LongRules, Relation, RelationKind, Rewriter,
    RuleSet, ZCondition,
};
pub use pbw::EWord;
pub use presentation::{BracketOracle, Case, HigherPolicy, PrePostLie, StructureTable};
pub use scalar::Scalar;
pub use terms::{Alphabet, Atom, Letter, RBWord, StarContext};
