//! Mamdani fuzzy inference with a small model language, two built-in
//! security models (attacker profile score, attack success rate), response
//! surface sweeps, and the `fuzzrisk` command-line tool.

pub mod cli;
pub mod dsl;
pub mod engine;
pub mod fis;
pub mod membership;
pub mod models;
pub mod surface;
pub mod validate;

pub use dsl::{parse_model, serialize_model, ParseDiagnostic};
pub use engine::{evaluate, firing_strength, fuzzify, Engine, EvalError, EvaluationTrace};
pub use fis::{Antecedent, FisDefinition, LinguisticVariable, Rule, Term};
pub use membership::MembershipFunction;
pub use validate::{validate_fis, Diagnostic, Severity};
