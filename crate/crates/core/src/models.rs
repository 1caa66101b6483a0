//! The two built-in models: attacker profile score (3 inputs, 27 rules) and
//! attack success rate (4 inputs, 81 rules), plus the attacker presets and the
//! two-stage pipeline that feeds the first model's score into the second.
//!
//! Only a handful of rules of each base are known. The rest are completed
//! by a weighted sum of input levels, rounded half-up and clamped to the five
//! output levels; [`ATTACKER_ANCHORS`] and [`SUCCESS_ANCHORS`] are checked on
//! every construction. The weights are a reconstruction consistent with the
//! known rows, not the original rule tables.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::engine::{Engine, EvalError, EvaluationTrace};
use crate::fis::{Antecedent, FisDefinition, LinguisticVariable, Rule};
use crate::membership::MembershipFunction;

pub const ATTACKER_MODEL: &str = "attacker";
pub const SUCCESS_MODEL: &str = "success";

/// Shipped text of the built-in models.
pub const ATTACKER_FIS_SOURCE: &str = include_str!("../models/attacker.fis");
pub const SUCCESS_FIS_SOURCE: &str = include_str!("../models/success.fis");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Small,
    Medium,
    Big,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Small, Level::Medium, Level::Big];

    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Level::Small => "small",
            Level::Medium => "medium",
            Level::Big => "big",
        }
    }

    pub fn abbrev(self) -> &'static str {
        match self {
            Level::Small => "S",
            Level::Medium => "M",
            Level::Big => "B",
        }
    }

    /// Crisp stand-in used by the presets.
    pub fn crisp(self) -> f64 {
        match self {
            Level::Small => 0.1,
            Level::Medium => 0.5,
            Level::Big => 0.9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputLevel {
    VerySmall,
    Small,
    Medium,
    Big,
    VeryBig,
}

impl OutputLevel {
    pub const ALL: [OutputLevel; 5] = [
        OutputLevel::VerySmall,
        OutputLevel::Small,
        OutputLevel::Medium,
        OutputLevel::Big,
        OutputLevel::VeryBig,
    ];

    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn from_ordinal(n: usize) -> Option<Self> {
        Self::ALL.get(n).copied()
    }

    pub fn label(self) -> &'static str {
        match self {
            OutputLevel::VerySmall => "very_small",
            OutputLevel::Small => "small",
            OutputLevel::Medium => "medium",
            OutputLevel::Big => "big",
            OutputLevel::VeryBig => "very_big",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.label() == label)
    }

    pub fn abbrev(self) -> &'static str {
        match self {
            OutputLevel::VerySmall => "VS",
            OutputLevel::Small => "S",
            OutputLevel::Medium => "M",
            OutputLevel::Big => "B",
            OutputLevel::VeryBig => "VB",
        }
    }
}

/// Canonical rule number: lexicographic over levels, first input most
/// significant, 1-based.
pub fn rule_index(levels: &[Level]) -> usize {
    1 + levels.iter().fold(0, |acc, l| acc * 3 + l.ordinal())
}

/// Inverse of [`rule_index`] for `arity` inputs.
pub fn levels_of(index: usize, arity: usize) -> Vec<Level> {
    assert!(
        index >= 1 && index <= 3usize.pow(arity as u32),
        "rule {index} out of range"
    );
    let mut n = index - 1;
    let mut levels = vec![Level::Small; arity];
    for slot in levels.iter_mut().rev() {
        *slot = Level::ALL[n % 3];
        n /= 3;
    }
    levels
}

/// `clamp(round_half_up(Σ wᵢ·levelᵢ), 0, 4)` with weights held as integer
/// numerators over a shared denominator, so the rounding is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearCompletion {
    pub numerators: &'static [i64],
    pub denominator: i64,
}

/// Knowledge dominates, then resources, then motivation. Order of the weights
/// follows the input order (resources, knowledge, motivation): 0.75, 1.0, 0.25.
pub const ATTACKER_COMPLETION: LinearCompletion = LinearCompletion {
    numerators: &[3, 4, 1],
    denominator: 4,
};

/// Profile 1.3, protection −0.8, vulnerabilities 0.7, restore cost 0.7.
pub const SUCCESS_COMPLETION: LinearCompletion = LinearCompletion {
    numerators: &[13, -8, 7, 7],
    denominator: 10,
};

impl LinearCompletion {
    pub fn consequent(&self, levels: &[Level]) -> OutputLevel {
        assert_eq!(levels.len(), self.numerators.len(), "one level per weight");
        let sum: i64 = levels
            .iter()
            .zip(self.numerators)
            .map(|(l, w)| w * l.ordinal() as i64)
            .sum();
        // floor(sum / den + 1/2) == floor((2·sum + den) / (2·den))
        let rounded = (2 * sum + self.denominator).div_euclid(2 * self.denominator);
        OutputLevel::from_ordinal(rounded.clamp(0, 4) as usize).expect("clamped to 0..=4")
    }

    /// Every level combination with its consequent, in rule-index order.
    pub fn table(&self) -> Vec<(Vec<Level>, OutputLevel)> {
        let arity = self.numerators.len();
        (1..=3usize.pow(arity as u32))
            .map(|i| {
                let levels = levels_of(i, arity);
                let out = self.consequent(&levels);
                (levels, out)
            })
            .collect()
    }
}

/// A known rule row: number, input levels, output level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchor<const N: usize> {
    pub index: usize,
    pub levels: [Level; N],
    pub output: OutputLevel,
}

const fn a3(index: usize, levels: [Level; 3], output: OutputLevel) -> Anchor<3> {
    Anchor {
        index,
        levels,
        output,
    }
}

const fn a4(index: usize, levels: [Level; 4], output: OutputLevel) -> Anchor<4> {
    Anchor {
        index,
        levels,
        output,
    }
}

use Level::{Big as B, Medium as M, Small as S};
use OutputLevel as O;

/// Known attacker rows (resources, knowledge, motivation → score).
pub const ATTACKER_ANCHORS: [Anchor<3>; 6] = [
    a3(1, [S, S, S], O::VerySmall),
    a3(4, [S, M, S], O::Small),
    a3(8, [S, B, M], O::Medium),
    a3(14, [M, M, M], O::Medium),
    a3(26, [B, B, M], O::VeryBig),
    a3(27, [B, B, B], O::VeryBig),
];

/// Known success-rate rows (profile, protection, vulnerabilities, restore
/// cost → success rate).
pub const SUCCESS_ANCHORS: [Anchor<4>; 13] = [
    a4(1, [S, S, S, S], O::VerySmall),
    a4(2, [S, S, S, M], O::Small),
    a4(6, [S, S, M, B], O::Medium),
    a4(10, [S, M, S, S], O::VerySmall),
    a4(15, [S, M, M, B], O::Small),
    a4(20, [S, B, S, M], O::VerySmall),
    a4(27, [S, B, B, B], O::Small),
    a4(35, [M, S, B, M], O::Big),
    a4(40, [M, M, M, S], O::Small),
    a4(45, [M, M, B, B], O::Big),
    a4(60, [B, S, M, B], O::VeryBig),
    a4(70, [B, M, B, S], O::Big),
    a4(81, [B, B, B, B], O::VeryBig),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnchorMismatch {
    #[error("anchor rule {index}: expected index {index} for {levels:?}, got {got}")]
    Index {
        index: usize,
        levels: Vec<Level>,
        got: usize,
    },
    #[error("anchor rule {index}: expected {expected:?}, completion gives {got:?}")]
    Output {
        index: usize,
        expected: OutputLevel,
        got: OutputLevel,
    },
}

/// Checks that `completion` reproduces every anchor row at its known number.
pub fn check_anchors<const N: usize>(
    completion: &LinearCompletion,
    anchors: &[Anchor<N>],
) -> Result<(), AnchorMismatch> {
    for anchor in anchors {
        let got = rule_index(&anchor.levels);
        if got != anchor.index {
            return Err(AnchorMismatch::Index {
                index: anchor.index,
                levels: anchor.levels.to_vec(),
                got,
            });
        }
        let out = completion.consequent(&anchor.levels);
        if out != anchor.output {
            return Err(AnchorMismatch::Output {
                index: anchor.index,
                expected: anchor.output,
                got: out,
            });
        }
    }
    Ok(())
}

fn complete_rule_base<const N: usize>(
    input_names: &[&str],
    completion: &LinearCompletion,
    anchors: &[Anchor<N>],
) -> Vec<Rule> {
    if let Err(e) = check_anchors(completion, anchors) {
        panic!("rule completion disagrees with a known rule: {e}");
    }
    completion
        .table()
        .into_iter()
        .map(|(levels, out)| Rule {
            index: rule_index(&levels),
            antecedents: input_names
                .iter()
                .zip(&levels)
                .map(|(name, l)| Antecedent::new(*name, l.label()))
                .collect(),
            consequent: out.label().to_string(),
        })
        .collect()
}

pub const ATTACKER_INPUTS: [&str; 3] = ["Resources", "Knowledge", "Motivation"];
pub const SUCCESS_INPUTS: [&str; 4] = ["Profile", "Protection", "Vulnerabilities", "Restore_cost"];

/// The 27 attacker rules, in index order. Panics if an anchor is violated.
pub fn complete_attacker_rule_base() -> Vec<Rule> {
    complete_rule_base(&ATTACKER_INPUTS, &ATTACKER_COMPLETION, &ATTACKER_ANCHORS)
}

/// The 81 success-rate rules, in index order. Panics if an anchor is violated.
pub fn complete_success_rule_base() -> Vec<Rule> {
    complete_rule_base(&SUCCESS_INPUTS, &SUCCESS_COMPLETION, &SUCCESS_ANCHORS)
}

fn tri(a: f64, b: f64, c: f64) -> MembershipFunction {
    MembershipFunction::triangular(a, b, c).expect("valid built-in breakpoints")
}

fn trap(a: f64, b: f64, c: f64, d: f64) -> MembershipFunction {
    MembershipFunction::trapezoidal(a, b, c, d).expect("valid built-in breakpoints")
}

fn three_terms(name: &str, mfs: [MembershipFunction; 3]) -> LinguisticVariable {
    Level::ALL
        .iter()
        .zip(mfs)
        .fold(LinguisticVariable::new(name, 0.0, 1.0), |v, (l, mf)| {
            v.with_term(l.label(), mf)
        })
}

/// Five evenly spaced triangles on [0, 1]; both models share this output.
fn five_level_output(name: &str) -> LinguisticVariable {
    OutputLevel::ALL.iter().enumerate().fold(
        LinguisticVariable::new(name, 0.0, 1.0),
        |v, (i, l)| {
            let peak = i as f64 * 0.25;
            v.with_term(l.label(), tri(peak - 0.25, peak, peak + 0.25))
        },
    )
}

pub fn build_attacker_profile_fis() -> FisDefinition {
    FisDefinition {
        name: ATTACKER_MODEL.into(),
        inputs: vec![
            three_terms(
                "Resources",
                [
                    trap(-0.225, -0.025, 0.1, 0.5),
                    tri(0.3, 0.6, 0.9),
                    trap(0.7, 0.9, 1.06, 1.26),
                ],
            ),
            three_terms(
                "Knowledge",
                [tri(-0.4, 0.0, 0.5), tri(0.0, 0.5, 1.0), tri(0.5, 1.0, 1.4)],
            ),
            three_terms(
                "Motivation",
                [
                    trap(-0.45, -0.05, 0.1, 0.4),
                    tri(0.2, 0.5, 0.8),
                    trap(0.6, 0.95, 1.05, 1.45),
                ],
            ),
        ],
        output: five_level_output("score"),
        rules: complete_attacker_rule_base(),
    }
}

pub fn build_success_rate_fis() -> FisDefinition {
    FisDefinition {
        name: SUCCESS_MODEL.into(),
        inputs: vec![
            three_terms(
                "Profile",
                [tri(-0.5, 0.0, 0.5), tri(0.0, 0.5, 1.0), tri(0.5, 1.0, 1.5)],
            ),
            three_terms(
                "Protection",
                [tri(-0.4, 0.0, 0.3), tri(0.1, 0.4, 0.7), tri(0.4, 1.0, 1.4)],
            ),
            three_terms(
                "Vulnerabilities",
                [tri(-0.4, 0.0, 0.4), tri(0.1, 0.5, 0.8), tri(0.6, 1.0, 1.4)],
            ),
            three_terms(
                "Restore_cost",
                [tri(-0.4, 0.0, 0.4), tri(0.1, 0.5, 0.8), tri(0.7, 1.0, 1.4)],
            ),
        ],
        output: five_level_output("successrate"),
        rules: complete_success_rule_base(),
    }
}

/// Built-in model by name (`attacker` or `success`).
pub fn builtin(name: &str) -> Option<FisDefinition> {
    match name {
        ATTACKER_MODEL => Some(build_attacker_profile_fis()),
        SUCCESS_MODEL => Some(build_success_rate_fis()),
        _ => None,
    }
}

fn attacker_engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(|| {
        Engine::new(&build_attacker_profile_fis()).expect("built-in model compiles")
    })
}

fn success_engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(|| Engine::new(&build_success_rate_fis()).expect("built-in model compiles"))
}

pub fn score_attacker(
    resources: f64,
    knowledge: f64,
    motivation: f64,
) -> Result<EvaluationTrace, EvalError> {
    attacker_engine().evaluate(&[resources, knowledge, motivation])
}

pub fn attack_success_rate(
    profile_score: f64,
    protection: f64,
    vulnerabilities: f64,
    restore_cost: f64,
) -> Result<EvaluationTrace, EvalError> {
    success_engine().evaluate(&[profile_score, protection, vulnerabilities, restore_cost])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineInputs {
    pub resources: f64,
    pub knowledge: f64,
    pub motivation: f64,
    pub protection: f64,
    pub vulnerabilities: f64,
    pub restore_cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult {
    pub score: f64,
    pub rate: f64,
    pub score_trace: EvaluationTrace,
    pub rate_trace: EvaluationTrace,
}

/// Scores the attacker, then feeds that score into the success-rate model.
pub fn pipeline(inputs: &PipelineInputs) -> Result<PipelineResult, EvalError> {
    pipeline_with(attacker_engine(), success_engine(), inputs)
}

/// [`pipeline`] on caller-supplied engines (e.g. a different grid size).
pub fn pipeline_with(
    attacker: &Engine,
    success: &Engine,
    inputs: &PipelineInputs,
) -> Result<PipelineResult, EvalError> {
    let score_trace =
        attacker.evaluate(&[inputs.resources, inputs.knowledge, inputs.motivation])?;
    let rate_trace = success.evaluate(&[
        score_trace.crisp,
        inputs.protection,
        inputs.vulnerabilities,
        inputs.restore_cost,
    ])?;
    Ok(PipelineResult {
        score: score_trace.crisp,
        rate: rate_trace.crisp,
        score_trace,
        rate_trace,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetName {
    ScriptKiddie,
    Hacker,
    DisgruntledEmployee,
    Terrorist,
    IndustrialSpy,
    CyberWarrior,
}

impl PresetName {
    pub const ALL: [PresetName; 6] = [
        PresetName::ScriptKiddie,
        PresetName::Hacker,
        PresetName::DisgruntledEmployee,
        PresetName::Terrorist,
        PresetName::IndustrialSpy,
        PresetName::CyberWarrior,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::ScriptKiddie => "script_kiddie",
            PresetName::Hacker => "hacker",
            PresetName::DisgruntledEmployee => "disgruntled_employee",
            PresetName::Terrorist => "terrorist",
            PresetName::IndustrialSpy => "industrial_spy",
            PresetName::CyberWarrior => "cyber_warrior",
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown preset '{name}'; valid presets: {}", valid_preset_names().join(", "))]
pub struct UnknownPreset {
    pub name: String,
}

pub fn valid_preset_names() -> Vec<&'static str> {
    PresetName::ALL.iter().map(|p| p.as_str()).collect()
}

impl FromStr for PresetName {
    type Err = UnknownPreset;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_lowercase().replace('-', "_");
        PresetName::ALL
            .into_iter()
            .find(|p| p.as_str() == wanted)
            .ok_or_else(|| UnknownPreset {
                name: s.to_string(),
            })
    }
}

/// A well-known attacker type and the rule expected to dominate its score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackerPreset {
    pub name: PresetName,
    /// (resources, knowledge, motivation)
    pub levels: [Level; 3],
    pub crisp: [f64; 3],
    pub expected_main_rule: usize,
}

impl AttackerPreset {
    pub fn all() -> Vec<AttackerPreset> {
        PresetName::ALL.into_iter().map(preset_for).collect()
    }
}

pub fn preset_for(name: PresetName) -> AttackerPreset {
    let (levels, expected_main_rule) = match name {
        PresetName::ScriptKiddie => ([S, S, S], 1),
        PresetName::Hacker => ([S, M, S], 4),
        PresetName::DisgruntledEmployee => ([S, B, M], 8),
        PresetName::Terrorist => ([M, M, M], 14),
        PresetName::IndustrialSpy => ([B, B, M], 26),
        PresetName::CyberWarrior => ([B, B, B], 27),
    };
    AttackerPreset {
        name,
        levels,
        crisp: levels.map(Level::crisp),
        expected_main_rule,
    }
}

pub fn preset(name: &str) -> Result<AttackerPreset, UnknownPreset> {
    name.parse().map(preset_for)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_model, serialize_model};
    use crate::engine::fuzzify;
    use crate::validate::validate_fis;

    // Straight float formula, kept apart from the integer implementation.
    fn oracle(weights: &[f64], levels: &[usize]) -> usize {
        let x: f64 = weights.iter().zip(levels).map(|(w, &l)| w * l as f64).sum();
        ((x + 0.5).floor()).clamp(0.0, 4.0) as usize
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn rule_index_examples() {
        assert_eq!(rule_index(&[S, M, S]), 4);
        assert_eq!(rule_index(&[B, S, M, B]), 60);
        assert_eq!(rule_index(&[S, S, S]), 1);
        assert_eq!(rule_index(&[B, B, B]), 27);
        assert_eq!(rule_index(&[B, B, B, B]), 81);
        for i in 1..=81 {
            assert_eq!(rule_index(&levels_of(i, 4)), i);
        }
    }

    #[test]
    fn attacker_completion_matches_float_formula() {
        for (levels, out) in ATTACKER_COMPLETION.table() {
            let (r, k, m) = (
                levels[0].ordinal(),
                levels[1].ordinal(),
                levels[2].ordinal(),
            );
            assert_eq!(
                out.ordinal(),
                oracle(&[1.0, 0.75, 0.25], &[k, r, m]),
                "{levels:?}"
            );
        }
        assert_eq!(ATTACKER_COMPLETION.consequent(&[M, B, S]), O::Big);
    }

    #[test]
    fn success_completion_matches_float_formula_off_the_half_points() {
        for (levels, out) in SUCCESS_COMPLETION.table() {
            let l: Vec<usize> = levels.iter().map(|l| l.ordinal()).collect();
            let n: i64 = [13, -8, 7, 7]
                .iter()
                .zip(&l)
                .map(|(w, &x)| w * x as i64)
                .sum();
            if n.rem_euclid(10) == 5 {
                // exact .5 sums round up; the float formula may land either side
                assert_eq!(out.ordinal() as i64, ((n + 5).div_euclid(10)).clamp(0, 4));
            } else {
                assert_eq!(
                    out.ordinal(),
                    oracle(&[1.3, -0.8, 0.7, 0.7], &l),
                    "{levels:?}"
                );
            }
        }
        assert_eq!(SUCCESS_COMPLETION.consequent(&[B, S, B, B]), O::VeryBig);
        assert_eq!(rule_index(&[B, S, B, B]), 63);
        // 1.3 − 0.8 = 0.5 rounds up to small
        assert_eq!(SUCCESS_COMPLETION.consequent(&[M, M, S, S]), O::Small);
    }

    #[test]
    fn anchors_hold() {
        check_anchors(&ATTACKER_COMPLETION, &ATTACKER_ANCHORS).unwrap();
        check_anchors(&SUCCESS_COMPLETION, &SUCCESS_ANCHORS).unwrap();
        let rules = complete_attacker_rule_base();
        assert_eq!(rules[7].consequent, "medium");
        assert_eq!(rules[25].consequent, "very_big");
    }

    #[test]
    fn altered_weights_break_anchors() {
        let even = LinearCompletion {
            numerators: &[1, 1, 1],
            denominator: 1,
        };
        assert!(matches!(
            check_anchors(&even, &ATTACKER_ANCHORS),
            Err(AnchorMismatch::Output { .. })
        ));
        let no_protection = LinearCompletion {
            numerators: &[13, 0, 7, 7],
            denominator: 10,
        };
        assert!(check_anchors(&no_protection, &SUCCESS_ANCHORS).is_err());
    }

    #[test]
    fn rule_bases_are_monotone() {
        let check = |c: &LinearCompletion, signs: &[i32]| {
            let arity = signs.len();
            for (levels, out) in c.table() {
                for (axis, &sign) in signs.iter().enumerate() {
                    if levels[axis] == B {
                        continue;
                    }
                    let mut up = levels.clone();
                    up[axis] = Level::ALL[levels[axis].ordinal() + 1];
                    let next = c.consequent(&up);
                    if sign > 0 {
                        assert!(next >= out, "{levels:?} axis {axis}");
                    } else {
                        assert!(next <= out, "{levels:?} axis {axis}");
                    }
                }
                assert_eq!(levels.len(), arity);
            }
        };
        check(&ATTACKER_COMPLETION, &[1, 1, 1]);
        check(&SUCCESS_COMPLETION, &[1, -1, 1, 1]);
    }

    #[test]
    fn built_models_are_valid() {
        let a = build_attacker_profile_fis();
        let s = build_success_rate_fis();
        assert_eq!(a.rules.len(), 27);
        assert_eq!(s.rules.len(), 81);
        assert!(validate_fis(&a).is_empty());
        assert!(validate_fis(&s).is_empty());
        assert!(a.rules.iter().enumerate().all(|(i, r)| r.index == i + 1));
    }

    #[test]
    fn table_parameters() {
        let a = build_attacker_profile_fis();
        let res_small = &a.inputs[0].term("small").unwrap().mf;
        assert!(close(res_small.eval(0.3), 0.5));

        let k = fuzzify(&a.inputs[1], 0.5);
        assert_eq!(k["small"], 0.0);
        assert_eq!(k["medium"], 1.0);
        assert_eq!(k["big"], 0.0);

        let r = fuzzify(&a.inputs[0], 0.0);
        assert_eq!((r["small"], r["medium"], r["big"]), (1.0, 0.0, 0.0));

        let m = fuzzify(&a.inputs[2], 0.9);
        assert_eq!((m["small"], m["medium"]), (0.0, 0.0));
        assert!(close(m["big"], 6.0 / 7.0));

        let s = build_success_rate_fis();
        assert_eq!(s.inputs[1].term("medium").unwrap().mf.eval(0.4), 1.0);
    }

    #[test]
    fn shipped_files_match_builders() {
        let a = build_attacker_profile_fis();
        let s = build_success_rate_fis();
        assert_eq!(parse_model(ATTACKER_FIS_SOURCE).unwrap(), a);
        assert_eq!(parse_model(SUCCESS_FIS_SOURCE).unwrap(), s);
        // shipped files are in canonical form, rule k on line (header + k)
        assert_eq!(serialize_model(&a), ATTACKER_FIS_SOURCE);
        assert_eq!(serialize_model(&s), SUCCESS_FIS_SOURCE);
    }

    #[test]
    fn extremes() {
        let hi = score_attacker(1.0, 1.0, 1.0).unwrap();
        assert_eq!(hi.fired().count(), 1);
        assert_eq!(hi.main_active_rule, 27);
        assert!((hi.crisp - 11.0 / 12.0).abs() <= 0.002, "{}", hi.crisp);

        let lo = score_attacker(0.0, 0.0, 0.0).unwrap();
        assert_eq!(lo.main_active_rule, 1);
        assert!((lo.crisp - 1.0 / 12.0).abs() <= 0.002, "{}", lo.crisp);

        let hi = attack_success_rate(1.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(hi.fired().count(), 1);
        assert_eq!(hi.main_active_rule, 63);
        assert!((hi.crisp - 11.0 / 12.0).abs() <= 0.002);

        let lo = attack_success_rate(0.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(lo.main_active_rule, 19);
        assert!((lo.crisp - 1.0 / 12.0).abs() <= 0.002);
    }

    #[test]
    fn main_active_rules() {
        assert_eq!(score_attacker(0.1, 0.1, 0.1).unwrap().main_active_rule, 1);
        assert_eq!(score_attacker(0.9, 0.9, 0.5).unwrap().main_active_rule, 26);
        assert_eq!(
            attack_success_rate(0.5, 0.4, 0.5, 0.5)
                .unwrap()
                .main_active_rule,
            41
        );
    }

    #[test]
    fn presets() {
        let t = preset("terrorist").unwrap();
        assert_eq!(t.levels, [M, M, M]);
        assert_eq!(t.expected_main_rule, 14);
        assert_eq!(preset("cyber_warrior").unwrap().crisp, [0.9, 0.9, 0.9]);
        for p in AttackerPreset::all() {
            let [r, k, m] = p.crisp;
            let trace = score_attacker(r, k, m).unwrap();
            assert_eq!(trace.main_active_rule, p.expected_main_rule, "{}", p.name);
            assert_eq!(rule_index(&p.levels), p.expected_main_rule);
        }
        let err = preset("ninja").unwrap_err();
        assert!(err.to_string().contains("script_kiddie"));
        assert_eq!(
            preset("Cyber-Warrior").unwrap().name,
            PresetName::CyberWarrior
        );
    }

    #[test]
    fn pipeline_composes() {
        let inputs = PipelineInputs {
            resources: 0.0,
            knowledge: 0.0,
            motivation: 0.0,
            protection: 1.0,
            vulnerabilities: 0.0,
            restore_cost: 0.0,
        };
        let p = pipeline(&inputs).unwrap();
        let score = score_attacker(0.0, 0.0, 0.0).unwrap().crisp;
        let rate = attack_success_rate(score, 1.0, 0.0, 0.0).unwrap().crisp;
        assert_eq!(p.score.to_bits(), score.to_bits());
        assert_eq!(p.rate.to_bits(), rate.to_bits());
        assert!((p.score - 1.0 / 12.0).abs() <= 0.002);
        assert!((p.rate - 1.0 / 12.0).abs() <= 0.01, "{}", p.rate);
    }
}
