//! Normal forms for free inverse monoids and semigroups.
//!
//! Words over `X ∪ X⁻¹` are rewritten by two infinite relation schemas to a
//! unique deg-lex-least representative. A Munn tree oracle decides the same
//! word problem independently, and bounded checkers compare the two.

pub mod cli;
pub mod gsb;
pub mod idempotent;
pub mod munn;
pub mod rewrite;
pub mod sweep;
mod walk;
pub mod words;

pub use gsb::{
    check_triviality, enumerate_rule_instances, find_compositions, verify_bounded, Composition, CompositionKind,
    Relation, VerifyReport,
};
pub use idempotent::{
    canonicalize_idempotent, classify, fir, is_canonical, is_idempotent, is_ordered_canonical,
    is_ordered_prime_canonical, is_prime_canonical, parse_idempotent, Classification, IdempotentError, IdempotentTree,
    PrimeFactor,
};
pub use munn::{munn_equal, munn_minimal_length, munn_tree, MunnTree, OracleKey};
pub use rewrite::{
    apply_step, equal, find_redexes, is_irreducible, normal_form, normal_form_traced, normal_form_with,
    validate_irr_structure, NormalizationTrace, Redex, RewriteStep, RuleInstance, RuleKind,
};
pub use sweep::{oracle_sweep, OracleReport};
pub use words::{
    deg_lex_cmp, format_word, free_reduce, invert, parse_word, Alphabet, Letter, OrderSpec, ParseError, SyntaxMode,
    Word,
};
