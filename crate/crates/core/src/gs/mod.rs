//! The Gröbner–Shirshov machinery: relations, rewriting, compositions.

pub mod compositions;
pub mod relation;
pub mod rewrite;

pub use compositions::{
    check_composition, check_compositions, for_each_composition, words_within, Bounds,
    CheckOptions, Composition, CompositionKind, CompositionRecord, GsReport,
};
pub use relation::{
    match_long, match_long_all, LongPattern, Provenance, Relation, RelationKind, ZCondition,
};
pub use rewrite::{LongRules, Redex, Rewriter, RuleSet};
