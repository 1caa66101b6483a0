use std::fmt::Write;

use crate::fis::{FisDefinition, LinguisticVariable};
use crate::membership::MembershipFunction;

/// Canonical text of a model: header, inputs in declared order, output, a
/// blank line, then rules in index order. Numbers use the shortest decimal
/// form that parses back to the same `f64`.
pub fn serialize_model(fis: &FisDefinition) -> String {
    let mut out = String::new();
    let name = fis.name.replace('\\', "\\\\").replace('"', "\\\"");
    writeln!(out, "fis \"{name}\"").unwrap();
    for var in &fis.inputs {
        write_variable(&mut out, "input", var);
    }
    write_variable(&mut out, "output", &fis.output);
    out.push('\n');
    let mut rules: Vec<_> = fis.rules.iter().collect();
    rules.sort_by_key(|r| r.index);
    for rule in rules {
        out.push_str(&rule_line(fis, rule));
        out.push('\n');
    }
    out
}

/// The `rule if ... then ...` statement for one rule, without a newline.
pub fn rule_line(fis: &FisDefinition, rule: &crate::fis::Rule) -> String {
    let clauses: Vec<String> = rule
        .antecedents
        .iter()
        .map(|a| format!("{} is {}", a.variable, a.term))
        .collect();
    format!(
        "rule if {} then {} is {}",
        clauses.join(" and "),
        fis.output.name,
        rule.consequent
    )
}

fn write_variable(out: &mut String, keyword: &str, var: &LinguisticVariable) {
    writeln!(
        out,
        "{keyword} {} range {} {}",
        var.name, var.universe.0, var.universe.1
    )
    .unwrap();
    for term in &var.terms {
        let (shape, params) = match &term.mf {
            MembershipFunction::Triangular(p) => ("tri", &p[..]),
            MembershipFunction::Trapezoidal(p) => ("trap", &p[..]),
        };
        let params: Vec<String> = params.iter().map(f64::to_string).collect();
        writeln!(out, "  term {} {shape} {}", term.label, params.join(" ")).unwrap();
    }
}
