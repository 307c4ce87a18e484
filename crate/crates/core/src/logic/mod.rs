//! Resource assertions and bounded checking of refinement judgements
//! `Γ ⊢ p ▷ P ⊑ Q` over the safety semantics.

mod assertion;
mod refine;
mod rules;

pub use assertion::{eval_assertion, lift_assertion, parse_assertion, Assertion};
pub use refine::{
    check_refinement, entails, Context, ContextEntry, Counterexample, RefineConfig, RefinementVerdict,
    DEFAULT_ENUMERATION_CAP,
};
pub use rules::{
    check_expansion_law, check_rule_soundness, check_send_triple, frame_assertions, Judgement, LawReport, Rule,
    RuleCheckConfig, RuleReport, TripleReport,
};
