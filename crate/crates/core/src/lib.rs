//! Causal multiteam models: teams of assignments governed by structural
//! laws, with exact evaluation of probabilistic counterfactual formulas,
//! normal forms, canonical-model construction, and a bounded brute-force
//! validity oracle.

pub mod canonical;
pub mod derived;
pub mod error;
pub mod formula;
pub mod laws;
pub mod model;
pub mod normal_form;
pub mod oracle;
pub mod semantics;
pub mod signature;
pub mod team;

#[cfg(test)]
pub(crate) mod testutil;

pub use canonical::{
    build_canonical, check_canonical_properties, extract_description, AtomicDescription,
    CanonicalReport, CheckStatus,
};
pub use derived::{
    affects_formula, direct_cause_formula, endogenous_formula, laws_formula, tuple_eq_co,
    tuple_neq_co, tuple_neq_pco, DEFAULT_NODE_BUDGET,
};
pub use error::{Error, Result};
pub use formula::{rat, Cmp, CoFormula, InterventionSpec, PcoFormula, Rational};
pub use laws::{CausalGraph, FunctionComponent, LawTable};
pub use model::CausalMultiteam;
pub use normal_form::{
    is_normal_form, measure, normal_form, normal_form_with_trace, push_prob_inward, RewriteStep,
};
pub use oracle::gen::{FormulaPool, SampleBudget};
pub use oracle::rules::{check_rule_soundness, RuleId, RuleReport, RuleViolation};
pub use oracle::schema::{check_schema, instantiate_schema, SchemaCheck, SchemaId};
pub use oracle::{
    check_entailment, check_validity, compatible_assignments, count_models, counterexamples,
    enumerate_components, enumerate_models, EnumerationBudget, ModelEnumeration, Verdict,
    DEFAULT_MODEL_CAP,
};
pub use semantics::eval_co_at;
pub use signature::{Assignment, Signature, Val, Var};
pub use team::Multiteam;
