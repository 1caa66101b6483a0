//! Model definition types: linguistic variables, rules, and the FIS itself.

use serde::{Deserialize, Serialize};

use crate::membership::MembershipFunction;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub mf: MembershipFunction,
}

impl Term {
    pub fn new(label: impl Into<String>, mf: MembershipFunction) -> Self {
        Term {
            label: label.into(),
            mf,
        }
    }
}

/// A named variable over the closed universe `[lo, hi]` with labelled terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinguisticVariable {
    pub name: String,
    pub universe: (f64, f64),
    pub terms: Vec<Term>,
}

impl LinguisticVariable {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64) -> Self {
        LinguisticVariable {
            name: name.into(),
            universe: (lo, hi),
            terms: Vec::new(),
        }
    }

    pub fn with_term(mut self, label: impl Into<String>, mf: MembershipFunction) -> Self {
        self.terms.push(Term::new(label, mf));
        self
    }

    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label == label)
    }

    pub fn term(&self, label: &str) -> Option<&Term> {
        self.terms.iter().find(|t| t.label == label)
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.universe.0, self.universe.1)
    }
}

/// One `variable is term` clause of a rule antecedent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Antecedent {
    pub variable: String,
    pub term: String,
}

impl Antecedent {
    pub fn new(variable: impl Into<String>, term: impl Into<String>) -> Self {
        Antecedent {
            variable: variable.into(),
            term: term.into(),
        }
    }
}

/// `IF a1 AND a2 ... THEN output IS consequent`, one clause per FIS input in
/// declared order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub index: usize,
    pub antecedents: Vec<Antecedent>,
    pub consequent: String,
}

/// A complete Mamdani model: ordered inputs, one output, a rule base.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FisDefinition {
    pub name: String,
    pub inputs: Vec<LinguisticVariable>,
    pub output: LinguisticVariable,
    pub rules: Vec<Rule>,
}

impl FisDefinition {
    pub fn input(&self, name: &str) -> Option<&LinguisticVariable> {
        self.inputs.iter().find(|v| v.name == name)
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|v| v.name == name)
    }

    pub fn rule(&self, index: usize) -> Option<&Rule> {
        self.rules.iter().find(|r| r.index == index)
    }

    /// Number of input-term combinations a complete rule base must cover.
    pub fn combination_count(&self) -> usize {
        self.inputs
            .iter()
            .map(|v| v.terms.len())
            .try_fold(1usize, |acc, n| acc.checked_mul(n))
            .unwrap_or(usize::MAX)
    }
}
