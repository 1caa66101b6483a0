//! Structural checks on a [`FisDefinition`]: label resolution, duplicate and
//! missing rules, and universe coverage.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::engine::linspace;
use crate::fis::{FisDefinition, LinguisticVariable};

pub const COVERAGE_GRID_POINTS: usize = 1001;

// Past this many combinations the missing ones are summarised, not listed.
const MAX_ENUMERATED_COMBINATIONS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Warning => f.write_str("warning"),
            Severity::Error => f.write_str("error"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DiagnosticKind {
    InvalidUniverse {
        variable: String,
    },
    NoTerms {
        variable: String,
    },
    DuplicateVariable {
        variable: String,
    },
    DuplicateTerm {
        variable: String,
        term: String,
    },
    InvalidMembership {
        variable: String,
        term: String,
    },
    AntecedentShape {
        rule: usize,
    },
    UnresolvedLabel {
        rule: usize,
        variable: String,
        term: String,
    },
    DuplicateRuleIndex {
        rule: usize,
    },
    DuplicateRule {
        rule: usize,
        first: usize,
    },
    /// (input, term) pairs of a combination no rule covers.
    MissingCombination(Vec<(String, String)>),
    IncompleteRuleBase {
        missing: usize,
    },
    CoverageGap {
        variable: String,
        at: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    fn error(kind: DiagnosticKind, message: String) -> Self {
        Diagnostic {
            severity: Severity::Error,
            kind,
            message,
        }
    }

    fn warning(kind: DiagnosticKind, message: String) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            kind,
            message,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.severity, self.message)
    }
}

pub fn validate_fis(fis: &FisDefinition) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    let mut seen = HashSet::new();
    for var in fis.inputs.iter().chain(std::iter::once(&fis.output)) {
        if !seen.insert(var.name.as_str()) {
            out.push(Diagnostic::error(
                DiagnosticKind::DuplicateVariable {
                    variable: var.name.clone(),
                },
                format!("variable {} is declared more than once", var.name),
            ));
        }
        check_variable(var, &mut out);
    }

    let rules_ok = check_rules(fis, &mut out);
    if rules_ok && !fis.inputs.is_empty() {
        check_completeness(fis, &mut out);
    }
    out
}

fn check_variable(var: &LinguisticVariable, out: &mut Vec<Diagnostic>) {
    let (lo, hi) = var.universe;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        out.push(Diagnostic::error(
            DiagnosticKind::InvalidUniverse {
                variable: var.name.clone(),
            },
            format!("variable {} has empty universe [{lo}, {hi}]", var.name),
        ));
        return;
    }
    if var.terms.is_empty() {
        out.push(Diagnostic::error(
            DiagnosticKind::NoTerms {
                variable: var.name.clone(),
            },
            format!("variable {} has no terms", var.name),
        ));
        return;
    }
    let mut labels = HashSet::new();
    let mut shapes_ok = true;
    for term in &var.terms {
        if !labels.insert(term.label.as_str()) {
            out.push(Diagnostic::error(
                DiagnosticKind::DuplicateTerm {
                    variable: var.name.clone(),
                    term: term.label.clone(),
                },
                format!(
                    "term {} of {} is declared more than once",
                    term.label, var.name
                ),
            ));
        }
        if let Err(e) = term.mf.validate() {
            shapes_ok = false;
            out.push(Diagnostic::error(
                DiagnosticKind::InvalidMembership {
                    variable: var.name.clone(),
                    term: term.label.clone(),
                },
                format!("term {} of {}: {e}", term.label, var.name),
            ));
        }
    }
    if shapes_ok {
        if let Some(gap) = coverage_gap(var) {
            out.push(Diagnostic::error(
                DiagnosticKind::CoverageGap {
                    variable: var.name.clone(),
                    at: gap,
                },
                format!("coverage gap: no term of {0} covers {0} = {gap}", var.name),
            ));
        }
    }
}

/// First grid point of the universe where every term has degree zero.
pub fn coverage_gap(var: &LinguisticVariable) -> Option<f64> {
    let (lo, hi) = var.universe;
    linspace(lo, hi, COVERAGE_GRID_POINTS)
        .into_iter()
        .find(|&x| var.terms.iter().all(|t| t.mf.eval(x) <= 0.0))
}

fn check_rules(fis: &FisDefinition, out: &mut Vec<Diagnostic>) -> bool {
    let before = out.len();
    let mut indices = HashSet::new();
    let mut combos: HashMap<Vec<&str>, usize> = HashMap::new();

    for rule in &fis.rules {
        if !indices.insert(rule.index) {
            out.push(Diagnostic::error(
                DiagnosticKind::DuplicateRuleIndex { rule: rule.index },
                format!("rule index {} is used more than once", rule.index),
            ));
        }
        let shape_ok = rule.antecedents.len() == fis.inputs.len()
            && rule
                .antecedents
                .iter()
                .zip(&fis.inputs)
                .all(|(a, v)| a.variable == v.name);
        if !shape_ok {
            let expected: Vec<_> = fis.inputs.iter().map(|v| v.name.as_str()).collect();
            out.push(Diagnostic::error(
                DiagnosticKind::AntecedentShape { rule: rule.index },
                format!(
                    "rule {} must test inputs [{}] in that order",
                    rule.index,
                    expected.join(", ")
                ),
            ));
        }
        let mut resolved = true;
        for clause in &rule.antecedents {
            let known = fis
                .input(&clause.variable)
                .is_some_and(|v| v.term_index(&clause.term).is_some());
            if !known {
                resolved = false;
                out.push(Diagnostic::error(
                    DiagnosticKind::UnresolvedLabel {
                        rule: rule.index,
                        variable: clause.variable.clone(),
                        term: clause.term.clone(),
                    },
                    format!(
                        "rule {}: unknown label {} is {}",
                        rule.index, clause.variable, clause.term
                    ),
                ));
            }
        }
        if fis.output.term_index(&rule.consequent).is_none() {
            out.push(Diagnostic::error(
                DiagnosticKind::UnresolvedLabel {
                    rule: rule.index,
                    variable: fis.output.name.clone(),
                    term: rule.consequent.clone(),
                },
                format!(
                    "rule {}: unknown label {} is {}",
                    rule.index, fis.output.name, rule.consequent
                ),
            ));
        }
        if shape_ok && resolved {
            let key: Vec<&str> = rule.antecedents.iter().map(|a| a.term.as_str()).collect();
            if let Some(&first) = combos.get(&key) {
                out.push(Diagnostic::error(
                    DiagnosticKind::DuplicateRule {
                        rule: rule.index,
                        first,
                    },
                    format!(
                        "rule {} repeats the antecedents of rule {first}",
                        rule.index
                    ),
                ));
            } else {
                combos.insert(key, rule.index);
            }
        }
    }
    out.len() == before
}

fn check_completeness(fis: &FisDefinition, out: &mut Vec<Diagnostic>) {
    let total = fis.combination_count();
    let covered: HashSet<Vec<&str>> = fis
        .rules
        .iter()
        .map(|r| r.antecedents.iter().map(|a| a.term.as_str()).collect())
        .collect();
    if covered.len() == total {
        return;
    }
    if total > MAX_ENUMERATED_COMBINATIONS {
        let missing = total - covered.len();
        out.push(Diagnostic::warning(
            DiagnosticKind::IncompleteRuleBase { missing },
            format!(
                "rule base is incomplete: {missing} of {total} input combinations have no rule"
            ),
        ));
        return;
    }
    // odometer over term indices, last input fastest
    let mut digits = vec![0usize; fis.inputs.len()];
    loop {
        let key: Vec<&str> = digits
            .iter()
            .zip(&fis.inputs)
            .map(|(&d, v)| v.terms[d].label.as_str())
            .collect();
        if !covered.contains(&key) {
            let combo: Vec<(String, String)> = fis
                .inputs
                .iter()
                .zip(&key)
                .map(|(v, t)| (v.name.clone(), t.to_string()))
                .collect();
            let text = combo
                .iter()
                .map(|(v, t)| format!("{v} is {t}"))
                .collect::<Vec<_>>()
                .join(" and ");
            out.push(Diagnostic::warning(
                DiagnosticKind::MissingCombination(combo),
                format!("rule base is incomplete: no rule for {text}"),
            ));
        }
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < fis.inputs[pos].terms.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fis::{Antecedent, Rule};
    use crate::membership::MembershipFunction;

    fn tri(a: f64, b: f64, c: f64) -> MembershipFunction {
        MembershipFunction::triangular(a, b, c).unwrap()
    }

    fn two_by_two() -> FisDefinition {
        let var = |name: &str| {
            LinguisticVariable::new(name, 0.0, 1.0)
                .with_term("lo", tri(-1.0, 0.0, 1.0))
                .with_term("hi", tri(0.0, 1.0, 2.0))
        };
        let mut rules = Vec::new();
        for a in ["lo", "hi"] {
            for b in ["lo", "hi"] {
                rules.push(Rule {
                    index: rules.len() + 1,
                    antecedents: vec![Antecedent::new("a", a), Antecedent::new("b", b)],
                    consequent: "lo".into(),
                });
            }
        }
        FisDefinition {
            name: "grid".into(),
            inputs: vec![var("a"), var("b")],
            output: var("y"),
            rules,
        }
    }

    #[test]
    fn complete_model_is_clean() {
        assert!(validate_fis(&two_by_two()).is_empty());
    }

    #[test]
    fn missing_rule_is_one_warning() {
        let mut fis = two_by_two();
        fis.rules.remove(2);
        let diags = validate_fis(&fis);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].severity, Severity::Warning);
        assert_eq!(
            diags[0].kind,
            DiagnosticKind::MissingCombination(vec![
                ("a".into(), "hi".into()),
                ("b".into(), "lo".into())
            ])
        );
        assert!(diags[0].message.contains("a is hi and b is lo"));
    }

    #[test]
    fn coverage_gap_is_an_error() {
        let mut fis = two_by_two();
        fis.inputs[0].terms = vec![
            crate::fis::Term::new("lo", tri(-1.0, 0.0, 0.4)),
            crate::fis::Term::new("hi", tri(0.6, 1.0, 2.0)),
        ];
        let diags = validate_fis(&fis);
        assert_eq!(diags.len(), 1);
        assert!(diags[0].is_error());
        match &diags[0].kind {
            DiagnosticKind::CoverageGap { variable, at } => {
                assert_eq!(variable, "a");
                assert!((0.4..=0.6).contains(at));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unresolved_and_duplicate_rules() {
        let mut fis = two_by_two();
        fis.rules[1].antecedents[1].term = "tiny".into();
        fis.rules[3].antecedents = fis.rules[0].antecedents.clone();
        let diags = validate_fis(&fis);
        assert!(diags.iter().any(|d| matches!(
            &d.kind,
            DiagnosticKind::UnresolvedLabel { rule: 2, term, .. } if term == "tiny"
        )));
        assert!(diags
            .iter()
            .any(|d| d.kind == DiagnosticKind::DuplicateRule { rule: 4, first: 1 }));
        // completeness is not judged on a broken rule base
        assert!(!diags
            .iter()
            .any(|d| matches!(d.kind, DiagnosticKind::MissingCombination(_))));
    }

    #[test]
    fn wrong_antecedent_order() {
        let mut fis = two_by_two();
        fis.rules[0].antecedents.swap(0, 1);
        let diags = validate_fis(&fis);
        assert!(diags
            .iter()
            .any(|d| d.kind == DiagnosticKind::AntecedentShape { rule: 1 }));
    }

    #[test]
    fn variable_level_errors() {
        let mut fis = two_by_two();
        fis.inputs[1].name = "a".into();
        fis.output.universe = (1.0, 1.0);
        fis.output.terms.push(fis.output.terms[0].clone());
        let kinds: Vec<_> = validate_fis(&fis).into_iter().map(|d| d.kind).collect();
        assert!(kinds.contains(&DiagnosticKind::DuplicateVariable {
            variable: "a".into()
        }));
        assert!(kinds.contains(&DiagnosticKind::InvalidUniverse {
            variable: "y".into()
        }));
    }
}
