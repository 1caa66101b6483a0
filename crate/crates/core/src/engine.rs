//! Mamdani evaluation.
//!
//! Operators, fixed for every model:
//! - AND: minimum of the antecedent degrees.
//! - Implication: the consequent set is clipped at the firing strength (min).
//! - Aggregation: pointwise maximum of the clipped sets.
//! - Defuzzification: discrete centroid over a uniform grid spanning the
//!   output universe, endpoints included.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fis::{FisDefinition, LinguisticVariable, Rule};

pub const DEFAULT_GRID_POINTS: usize = 1001;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("expected {expected} input values, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("input {variable} is not a finite number")]
    NonFinite { variable: String },
    #[error("no rule fired: the aggregated output set is empty")]
    EmptyAggregate,
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("output grid needs at least 2 points, got {0}")]
    InvalidGrid(usize),
}

/// `n` uniformly spaced points covering `[lo, hi]`, with both endpoints exact.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    let step = (hi - lo) / (n - 1) as f64;
    let mut points: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    points[n - 1] = hi;
    points
}

/// Degree of `x` (clamped to the universe) in every term of `variable`.
pub fn fuzzify(variable: &LinguisticVariable, x: f64) -> IndexMap<String, f64> {
    let x = variable.clamp(x);
    variable
        .terms
        .iter()
        .map(|t| (t.label.clone(), t.mf.eval(x)))
        .collect()
}

/// Minimum of the rule's antecedent degrees.
pub fn firing_strength(
    rule: &Rule,
    fuzzified: &IndexMap<String, IndexMap<String, f64>>,
) -> Result<f64, EvalError> {
    rule.antecedents.iter().try_fold(1.0f64, |acc, clause| {
        fuzzified
            .get(&clause.variable)
            .and_then(|degrees| degrees.get(&clause.term))
            .map(|d| acc.min(*d))
            .ok_or_else(|| {
                EvalError::InvalidModel(format!(
                    "rule {} references unknown term {} is {}",
                    rule.index, clause.variable, clause.term
                ))
            })
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClampRecord {
    pub variable: String,
    pub requested: f64,
    pub applied: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleStrength {
    pub index: usize,
    pub strength: f64,
}

/// Sampled aggregate output set.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateSamples {
    pub points: Vec<f64>,
    pub degrees: Vec<f64>,
}

/// Everything an evaluation computed, in the order it was computed.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationTrace {
    pub model: String,
    pub output: String,
    /// Input values after clamping, in declared order.
    pub inputs: IndexMap<String, f64>,
    pub clamped: Vec<ClampRecord>,
    pub fuzzified: IndexMap<String, IndexMap<String, f64>>,
    /// One entry per rule, in rule-base order.
    pub strengths: Vec<RuleStrength>,
    pub aggregate: AggregateSamples,
    pub crisp: f64,
    pub main_active_rule: usize,
    pub main_consequent: String,
}

impl EvaluationTrace {
    pub fn strength(&self, rule_index: usize) -> Option<f64> {
        self.strengths
            .iter()
            .find(|s| s.index == rule_index)
            .map(|s| s.strength)
    }

    pub fn fired(&self) -> impl Iterator<Item = &RuleStrength> {
        self.strengths.iter().filter(|s| s.strength > 0.0)
    }

    pub fn document(&self) -> TraceDocument {
        TraceDocument {
            model: self.model.clone(),
            output: self.output.clone(),
            inputs: self.inputs.clone(),
            clamped: self
                .clamped
                .iter()
                .map(|c| ClampEntry {
                    variable: c.variable.clone(),
                    requested: c.requested,
                    applied: c.applied,
                })
                .collect(),
            fuzzified: self.fuzzified.clone(),
            strengths: self
                .fired()
                .map(|s| StrengthEntry {
                    rule: s.index,
                    strength: s.strength,
                })
                .collect(),
            crisp: self.crisp,
            main_active_rule: self.main_active_rule,
            main_consequent: self.main_consequent.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.document()).expect("trace serializes")
    }
}

/// Serialized form of [`EvaluationTrace`]. Only rules that fired are listed;
/// the sampled aggregate is omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub model: String,
    pub output: String,
    pub inputs: IndexMap<String, f64>,
    pub clamped: Vec<ClampEntry>,
    pub fuzzified: IndexMap<String, IndexMap<String, f64>>,
    pub strengths: Vec<StrengthEntry>,
    pub crisp: f64,
    pub main_active_rule: usize,
    pub main_consequent: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClampEntry {
    pub variable: String,
    pub requested: f64,
    pub applied: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrengthEntry {
    pub rule: usize,
    pub strength: f64,
}

struct CompiledRule {
    index: usize,
    terms: Vec<usize>,
    consequent: usize,
}

/// A FIS with its labels resolved and its output terms pre-sampled on the
/// defuzzification grid. Immutable; share freely between threads.
pub struct Engine {
    fis: FisDefinition,
    rules: Vec<CompiledRule>,
    grid: Vec<f64>,
    // output_samples[term][i] = degree of grid[i] in that output term
    output_samples: Vec<Vec<f64>>,
    // first and last grid index with a nonzero sample, per output term
    supports: Vec<(usize, usize)>,
}

struct Firing {
    values: Vec<f64>,
    degrees: Vec<Vec<f64>>,
    strengths: Vec<f64>,
    heights: Vec<f64>,
}

impl Engine {
    pub fn new(fis: &FisDefinition) -> Result<Self, EvalError> {
        Self::with_grid(fis, DEFAULT_GRID_POINTS)
    }

    pub fn with_grid(fis: &FisDefinition, grid_points: usize) -> Result<Self, EvalError> {
        if grid_points < 2 {
            return Err(EvalError::InvalidGrid(grid_points));
        }
        let (lo, hi) = fis.output.universe;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(EvalError::InvalidModel(format!(
                "output universe [{lo}, {hi}] is empty"
            )));
        }
        for var in fis.inputs.iter().chain(std::iter::once(&fis.output)) {
            let (a, b) = var.universe;
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(EvalError::InvalidModel(format!(
                    "universe of {} is empty",
                    var.name
                )));
            }
            if let Some(t) = var.terms.iter().find(|t| t.mf.validate().is_err()) {
                return Err(EvalError::InvalidModel(format!(
                    "term {}.{} has invalid breakpoints",
                    var.name, t.label
                )));
            }
        }
        let rules = fis
            .rules
            .iter()
            .map(|rule| compile_rule(fis, rule))
            .collect::<Result<Vec<_>, _>>()?;
        let grid = linspace(lo, hi, grid_points);
        let output_samples: Vec<Vec<f64>> = fis
            .output
            .terms
            .iter()
            .map(|t| grid.iter().map(|&x| t.mf.eval(x)).collect())
            .collect();
        let supports = output_samples
            .iter()
            .map(|s| {
                let first = s.iter().position(|&v| v > 0.0);
                let last = s.iter().rposition(|&v| v > 0.0);
                match (first, last) {
                    (Some(a), Some(b)) => (a, b),
                    _ => (1, 0),
                }
            })
            .collect();
        Ok(Engine {
            fis: fis.clone(),
            rules,
            grid,
            output_samples,
            supports,
        })
    }

    pub fn fis(&self) -> &FisDefinition {
        &self.fis
    }

    pub fn grid_points(&self) -> usize {
        self.grid.len()
    }

    fn fire(&self, inputs: &[f64]) -> Result<Firing, EvalError> {
        if inputs.len() != self.fis.inputs.len() {
            return Err(EvalError::InputCount {
                expected: self.fis.inputs.len(),
                got: inputs.len(),
            });
        }
        let mut values = Vec::with_capacity(inputs.len());
        let mut degrees = Vec::with_capacity(inputs.len());
        for (var, &x) in self.fis.inputs.iter().zip(inputs) {
            if !x.is_finite() {
                return Err(EvalError::NonFinite {
                    variable: var.name.clone(),
                });
            }
            let x = var.clamp(x);
            values.push(x);
            degrees.push(var.terms.iter().map(|t| t.mf.eval(x)).collect::<Vec<_>>());
        }
        let mut heights = vec![0.0f64; self.fis.output.terms.len()];
        let strengths = self
            .rules
            .iter()
            .map(|rule| {
                let s = rule
                    .terms
                    .iter()
                    .zip(&degrees)
                    .fold(1.0f64, |acc, (&t, d)| acc.min(d[t]));
                // max over min(s_r, mu) per consequent equals min(max s_r, mu)
                let h = &mut heights[rule.consequent];
                *h = h.max(s);
                s
            })
            .collect();
        Ok(Firing {
            values,
            degrees,
            strengths,
            heights,
        })
    }

    fn centroid(&self, heights: &[f64], mut keep: Option<&mut Vec<f64>>) -> Result<f64, EvalError> {
        // grid points outside every active term's support have degree 0 and
        // add exactly nothing to either sum
        let mut active: Vec<(&[f64], f64)> = Vec::with_capacity(heights.len());
        let (mut first, mut last) = (usize::MAX, 0usize);
        for (t, &h) in heights.iter().enumerate() {
            if h > 0.0 {
                let (a, b) = self.supports[t];
                if a <= b {
                    active.push((&self.output_samples[t], h));
                    first = first.min(a);
                    last = last.max(b);
                }
            }
        }
        if let Some(k) = keep.as_deref_mut() {
            k.clear();
            k.resize(self.grid.len(), 0.0);
        }
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        if !active.is_empty() {
            for i in first..=last {
                let mut mu = 0.0f64;
                for &(samples, h) in &active {
                    let v = if samples[i] < h { samples[i] } else { h };
                    if v > mu {
                        mu = v;
                    }
                }
                num += self.grid[i] * mu;
                den += mu;
                if let Some(k) = keep.as_deref_mut() {
                    k[i] = mu;
                }
            }
        }
        if den <= 0.0 {
            return Err(EvalError::EmptyAggregate);
        }
        let (lo, hi) = self.fis.output.universe;
        Ok((num / den).clamp(lo, hi))
    }

    /// Crisp output only; same arithmetic as [`Engine::evaluate`].
    pub fn crisp(&self, inputs: &[f64]) -> Result<f64, EvalError> {
        let firing = self.fire(inputs)?;
        self.centroid(&firing.heights, None)
    }

    pub fn evaluate(&self, inputs: &[f64]) -> Result<EvaluationTrace, EvalError> {
        let firing = self.fire(inputs)?;
        let mut degrees = Vec::with_capacity(self.grid.len());
        let crisp = self.centroid(&firing.heights, Some(&mut degrees))?;

        let mut main = 0usize;
        for (pos, rule) in self.rules.iter().enumerate() {
            let best = (firing.strengths[main], self.rules[main].index);
            let s = firing.strengths[pos];
            if s > best.0 || (s == best.0 && rule.index < best.1) {
                main = pos;
            }
        }

        let inputs_used = self
            .fis
            .inputs
            .iter()
            .zip(&firing.values)
            .map(|(v, &x)| (v.name.clone(), x))
            .collect();
        let clamped = self
            .fis
            .inputs
            .iter()
            .zip(inputs.iter().zip(&firing.values))
            .filter(|(_, (req, applied))| req != applied)
            .map(|(v, (&requested, &applied))| ClampRecord {
                variable: v.name.clone(),
                requested,
                applied,
            })
            .collect();
        let fuzzified = self
            .fis
            .inputs
            .iter()
            .zip(&firing.degrees)
            .map(|(v, d)| {
                let terms = v
                    .terms
                    .iter()
                    .zip(d)
                    .map(|(t, &deg)| (t.label.clone(), deg))
                    .collect();
                (v.name.clone(), terms)
            })
            .collect();
        let strengths = self
            .rules
            .iter()
            .zip(&firing.strengths)
            .map(|(r, &strength)| RuleStrength {
                index: r.index,
                strength,
            })
            .collect();

        Ok(EvaluationTrace {
            model: self.fis.name.clone(),
            output: self.fis.output.name.clone(),
            inputs: inputs_used,
            clamped,
            fuzzified,
            strengths,
            aggregate: AggregateSamples {
                points: self.grid.clone(),
                degrees,
            },
            crisp,
            main_active_rule: self.rules[main].index,
            main_consequent: self.fis.output.terms[self.rules[main].consequent]
                .label
                .clone(),
        })
    }
}

fn compile_rule(fis: &FisDefinition, rule: &Rule) -> Result<CompiledRule, EvalError> {
    if rule.antecedents.len() != fis.inputs.len() {
        return Err(EvalError::InvalidModel(format!(
            "rule {} has {} antecedents, model has {} inputs",
            rule.index,
            rule.antecedents.len(),
            fis.inputs.len()
        )));
    }
    let terms = fis
        .inputs
        .iter()
        .zip(&rule.antecedents)
        .map(|(var, clause)| {
            if clause.variable != var.name {
                return Err(EvalError::InvalidModel(format!(
                    "rule {} expects input {} where {} is given",
                    rule.index, var.name, clause.variable
                )));
            }
            var.term_index(&clause.term).ok_or_else(|| {
                EvalError::InvalidModel(format!(
                    "rule {} references unknown term {} of {}",
                    rule.index, clause.term, var.name
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let consequent = fis.output.term_index(&rule.consequent).ok_or_else(|| {
        EvalError::InvalidModel(format!(
            "rule {} concludes unknown output term {}",
            rule.index, rule.consequent
        ))
    })?;
    Ok(CompiledRule {
        index: rule.index,
        terms,
        consequent,
    })
}

/// One-shot evaluation at the default grid size.
pub fn evaluate(fis: &FisDefinition, inputs: &[f64]) -> Result<EvaluationTrace, EvalError> {
    Engine::new(fis)?.evaluate(inputs)
}
