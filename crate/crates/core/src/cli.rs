//! Command-line front end. `run` does the work and returns the exit code;
//! `main_with_env` wires it to the process.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse or validation error,
//! 3 evaluation error.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde_json::json;

use crate::dsl::{parse_model_with_warnings, rule_line};
use crate::engine::{Engine, EvalError, EvaluationTrace, DEFAULT_GRID_POINTS};
use crate::fis::FisDefinition;
use crate::models::{self, AttackerPreset, PipelineInputs};
use crate::surface::{self, SweepError};
use crate::validate::{validate_fis, DiagnosticKind};

pub const GRID_ENV: &str = "FUZZRISK_GRID";
pub const MIN_GRID: usize = 101;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_EVAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "fuzzrisk",
    version,
    about = "Fuzzy attacker-profile and attack-success scoring"
)]
struct Cli {
    /// Defuzzification grid size (at least 101); overrides FUZZRISK_GRID.
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a model at one input point.
    Eval(EvalArgs),
    /// Score an attacker, then feed the score into the success-rate model.
    Pipeline(PipelineArgs),
    /// Evaluate one of the named attacker presets.
    Preset {
        name: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List a model's rules in index order.
    Rules {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum, default_value_t = RulesFormat::Text)]
        format: RulesFormat,
    },
    /// Sample the output over one or two inputs.
    Sweep(SweepArgs),
    /// Parse and check a model, listing every diagnostic.
    Validate { model: String },
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Built-in name (attacker, success) or path to a .fis file.
    #[arg(long)]
    model: String,
    /// Input value as NAME=VALUE; repeat for each input.
    #[arg(long = "in", value_name = "NAME=VALUE")]
    inputs: Vec<String>,
    /// Include the full evaluation trace (always JSON).
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    #[arg(long, allow_negative_numbers = true)]
    resources: f64,
    #[arg(long, allow_negative_numbers = true)]
    knowledge: f64,
    #[arg(long, allow_negative_numbers = true)]
    motivation: f64,
    #[arg(long, allow_negative_numbers = true)]
    protection: f64,
    #[arg(long, allow_negative_numbers = true)]
    vulnerabilities: f64,
    #[arg(long = "restore-cost", allow_negative_numbers = true)]
    restore_cost: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: Option<String>,
    /// Fixed input as NAME=VALUE; repeat for each input not swept.
    #[arg(long = "fix", value_name = "NAME=VALUE")]
    fixed: Vec<String>,
    #[arg(long, default_value_t = surface::DEFAULT_STEPS)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
    format: SweepFormat,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RulesFormat {
    Text,
    Json,
    Csv,
    /// The `rule if ...` statements exactly as a model file spells them.
    Fis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

/// A failure already classified by exit code, with its one-line message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        let code = match e {
            EvalError::InvalidModel(_) => EXIT_INVALID,
            EvalError::InputCount { .. } | EvalError::NonFinite { .. } => EXIT_USAGE,
            EvalError::EmptyAggregate | EvalError::InvalidGrid(_) => EXIT_EVAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Eval(inner) => inner.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        // a reader that went away (`| head`) is not a failure of ours
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Failure::usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs one invocation. `argv[0]` is the program name. `grid_env` is the
/// value of `FUZZRISK_GRID`, if set.
pub fn run(
    argv: &[String],
    out: &mut dyn Write,
    err: &mut dyn Write,
    grid_env: Option<&str>,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, out, err, grid_env) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

pub fn main_with_env() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    let grid = std::env::var(GRID_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run(&argv, &mut out, &mut err, grid.as_deref());
    let _ = out.flush();
    code
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write, grid_env: Option<&str>) -> Outcome {
    let grid = grid_size(cli.grid, grid_env)?;
    match cli.command {
        Command::Eval(args) => eval(args, grid, out, err),
        Command::Pipeline(args) => pipeline(args, grid, out, err),
        Command::Preset { name, format } => preset(&name, format, grid, out),
        Command::Rules { model, format } => rules(&model, format, out, err),
        Command::Sweep(args) => sweep(args, grid, out, err),
        Command::Validate { model } => validate(&model, out),
    }
}

fn grid_size(flag: Option<usize>, env: Option<&str>) -> Result<usize, Failure> {
    let (n, source) = match (flag, env) {
        (Some(n), _) => (n, "--grid"),
        (None, Some(text)) => match text.trim().parse::<usize>() {
            Ok(n) => (n, GRID_ENV),
            Err(_) => {
                return Err(Failure::usage(format!(
                    "{GRID_ENV} must be an integer >= {MIN_GRID}, got '{text}'"
                )))
            }
        },
        (None, None) => return Ok(DEFAULT_GRID_POINTS),
    };
    if n < MIN_GRID {
        return Err(Failure::usage(format!(
            "{source} must be at least {MIN_GRID}, got {n}"
        )));
    }
    Ok(n)
}

/// Resolves a built-in name or reads and parses a model file. Parse
/// warnings go to `err`.
fn load_model(spec: &str, err: &mut dyn Write) -> Result<FisDefinition, Failure> {
    if let Some(fis) = models::builtin(&spec.to_ascii_lowercase()) {
        return Ok(fis);
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|e| {
        Failure::usage(format!(
            "'{spec}' is neither a built-in model (attacker, success) nor a readable file: {e}"
        ))
    })?;
    match parse_model_with_warnings(&text) {
        Ok((fis, warnings)) => {
            for w in warnings {
                writeln!(err, "{spec}:{w}")?;
            }
            Ok(fis)
        }
        Err(diags) => {
            let errors = diags.iter().filter(|d| d.is_error()).count();
            for d in &diags {
                writeln!(err, "{spec}:{d}")?;
            }
            Err(Failure::invalid(format!(
                "{spec}: {errors} error(s); no model loaded"
            )))
        }
    }
}

fn engine_for(fis: &FisDefinition, grid: usize) -> Result<Engine, Failure> {
    Engine::with_grid(fis, grid).map_err(Failure::from)
}

/// CLI spelling of a variable name: case-insensitive, `-` and `_` alike.
fn fold_name(name: &str) -> String {
    name.trim().to_lowercase().replace('-', "_")
}

fn resolve_input<'a>(fis: &'a FisDefinition, name: &str) -> Result<&'a str, Failure> {
    let key = fold_name(name);
    fis.inputs
        .iter()
        .find(|v| fold_name(&v.name) == key)
        .map(|v| v.name.as_str())
        .ok_or_else(|| {
            let names: Vec<&str> = fis.inputs.iter().map(|v| v.name.as_str()).collect();
            Failure::usage(format!(
                "unknown input '{name}' (model inputs: {})",
                names.join(", ")
            ))
        })
}

fn parse_assignment(text: &str) -> Result<(&str, f64), Failure> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| Failure::usage(format!("expected NAME=VALUE, got '{text}'")))?;
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("'{}' is not a number (in '{text}')", value.trim())))?;
    if !v.is_finite() {
        return Err(Failure::usage(format!("value for '{name}' must be finite")));
    }
    Ok((name, v))
}

/// Matches `NAME=VALUE` pairs to declared inputs, keyed by declared name.
fn assignments(fis: &FisDefinition, pairs: &[String]) -> Result<IndexMap<String, f64>, Failure> {
    let mut values = IndexMap::new();
    for pair in pairs {
        let (name, v) = parse_assignment(pair)?;
        let declared = resolve_input(fis, name)?;
        if values.insert(declared.to_string(), v).is_some() {
            return Err(Failure::usage(format!("input '{declared}' given twice")));
        }
    }
    Ok(values)
}

fn warn_clamps(trace: &EvaluationTrace, err: &mut dyn Write) -> Outcome {
    for c in &trace.clamped {
        writeln!(
            err,
            "warning: {} = {} is outside its universe; clamped to {}",
            c.variable, c.requested, c.applied
        )?;
    }
    Ok(())
}

fn eval(args: EvalArgs, grid: usize, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let fis = load_model(&args.model, err)?;
    let given = assignments(&fis, &args.inputs)?;
    let mut inputs = Vec::with_capacity(fis.inputs.len());
    for var in &fis.inputs {
        match given.get(&var.name) {
            Some(&v) => inputs.push(v),
            None => {
                return Err(Failure::usage(format!(
                    "missing input: {}",
                    fold_name(&var.name)
                )))
            }
        }
    }
    let engine = engine_for(&fis, grid)?;
    let trace = engine.evaluate(&inputs)?;
    warn_clamps(&trace, err)?;
    if args.trace {
        writeln!(out, "{}", trace.to_json())?;
    } else if args.format == Format::Json {
        let doc = json!({
            "model": trace.model,
            "output": trace.output,
            "value": trace.crisp,
            "main_active_rule": trace.main_active_rule,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    } else {
        writeln!(out, "{} = {}", trace.output, trace.crisp)?;
        writeln!(
            out,
            "main active rule: {} ({} is {})",
            trace.main_active_rule, trace.output, trace.main_consequent
        )?;
    }
    Ok(())
}

fn pipeline(args: PipelineArgs, grid: usize, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let named = [
        ("resources", args.resources),
        ("knowledge", args.knowledge),
        ("motivation", args.motivation),
        ("protection", args.protection),
        ("vulnerabilities", args.vulnerabilities),
        ("restore-cost", args.restore_cost),
    ];
    if let Some((name, _)) = named.iter().find(|(_, v)| !v.is_finite()) {
        return Err(Failure::usage(format!("--{name} must be finite")));
    }
    let attacker = engine_for(&models::build_attacker_profile_fis(), grid)?;
    let success = engine_for(&models::build_success_rate_fis(), grid)?;
    let inputs = PipelineInputs {
        resources: args.resources,
        knowledge: args.knowledge,
        motivation: args.motivation,
        protection: args.protection,
        vulnerabilities: args.vulnerabilities,
        restore_cost: args.restore_cost,
    };
    let result = models::pipeline_with(&attacker, &success, &inputs)?;
    warn_clamps(&result.score_trace, err)?;
    warn_clamps(&result.rate_trace, err)?;
    match args.format {
        Format::Json => {
            let doc = json!({
                "score": result.score,
                "score_main_active_rule": result.score_trace.main_active_rule,
                "successrate": result.rate,
                "successrate_main_active_rule": result.rate_trace.main_active_rule,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        }
        Format::Text => {
            writeln!(
                out,
                "score = {} (main active rule {})",
                result.score, result.score_trace.main_active_rule
            )?;
            writeln!(
                out,
                "successrate = {} (main active rule {})",
                result.rate, result.rate_trace.main_active_rule
            )?;
        }
    }
    Ok(())
}

fn preset(name: &str, format: Format, grid: usize, out: &mut dyn Write) -> Outcome {
    let p: AttackerPreset = models::preset(name).map_err(|e| Failure::usage(e.to_string()))?;
    let engine = engine_for(&models::build_attacker_profile_fis(), grid)?;
    let [r, k, m] = p.crisp;
    let trace = engine.evaluate(&[r, k, m])?;
    let matches = trace.main_active_rule == p.expected_main_rule;
    let [lr, lk, lm] = p.levels;
    match format {
        Format::Json => {
            let doc = json!({
                "preset": p.name.as_str(),
                "levels": { "resources": lr.label(), "knowledge": lk.label(), "motivation": lm.label() },
                "inputs": { "resources": r, "knowledge": k, "motivation": m },
                "score": trace.crisp,
                "main_active_rule": trace.main_active_rule,
                "expected_main_rule": p.expected_main_rule,
                "matches": matches,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        }
        Format::Text => {
            writeln!(out, "preset: {}", p.name)?;
            writeln!(
                out,
                "levels: resources={} knowledge={} motivation={}",
                lr.label(),
                lk.label(),
                lm.label()
            )?;
            writeln!(out, "inputs: resources={r} knowledge={k} motivation={m}")?;
            writeln!(out, "score = {}", trace.crisp)?;
            writeln!(
                out,
                "main active rule: {} (expected {}) {}",
                trace.main_active_rule,
                p.expected_main_rule,
                if matches { "ok" } else { "MISMATCH" }
            )?;
        }
    }
    Ok(())
}

fn rules(model: &str, format: RulesFormat, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let fis = load_model(model, err)?;
    let mut ordered: Vec<_> = fis.rules.iter().collect();
    ordered.sort_by_key(|r| r.index);
    match format {
        RulesFormat::Fis => {
            for rule in ordered {
                writeln!(out, "{}", rule_line(&fis, rule))?;
            }
        }
        RulesFormat::Csv => {
            let mut header = vec!["index".to_string()];
            header.extend(fis.inputs.iter().map(|v| v.name.clone()));
            header.push(fis.output.name.clone());
            writeln!(out, "{}", header.join(","))?;
            for rule in ordered {
                let mut row = vec![rule.index.to_string()];
                row.extend(rule.antecedents.iter().map(|a| a.term.clone()));
                row.push(rule.consequent.clone());
                writeln!(out, "{}", row.join(","))?;
            }
        }
        RulesFormat::Json => {
            let rows: Vec<_> = ordered
                .iter()
                .map(|rule| {
                    let ante: IndexMap<&str, &str> = rule
                        .antecedents
                        .iter()
                        .map(|a| (a.variable.as_str(), a.term.as_str()))
                        .collect();
                    json!({ "index": rule.index, "if": ante, "then": rule.consequent })
                })
                .collect();
            let doc = json!({ "model": fis.name, "output": fis.output.name, "rules": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        }
        RulesFormat::Text => {
            let mut header = vec!["No".to_string()];
            header.extend(fis.inputs.iter().map(|v| v.name.clone()));
            header.push(fis.output.name.clone());
            let mut rows = vec![header];
            for rule in ordered {
                let mut row = vec![rule.index.to_string()];
                row.extend(rule.antecedents.iter().map(|a| a.term.clone()));
                row.push(rule.consequent.clone());
                rows.push(row);
            }
            let widths: Vec<usize> = (0..rows[0].len())
                .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
                .collect();
            for row in rows {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| format!("{cell:<w$}"))
                    .collect();
                writeln!(out, "{}", cells.join("  ").trim_end())?;
            }
        }
    }
    Ok(())
}

fn sweep(args: SweepArgs, grid: usize, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let fis = load_model(&args.model, err)?;
    let mut axes = vec![resolve_input(&fis, &args.x)?.to_string()];
    if let Some(y) = &args.y {
        axes.push(resolve_input(&fis, y)?.to_string());
    }
    let fixed = assignments(&fis, &args.fixed)?;
    for var in &fis.inputs {
        if !axes.contains(&var.name) && !fixed.contains_key(&var.name) {
            return Err(Failure::usage(format!(
                "missing input: {} (give --fix {}=VALUE)",
                fold_name(&var.name),
                fold_name(&var.name)
            )));
        }
    }
    for (name, &v) in &fixed {
        let var = fis.input(name).expect("resolved above");
        if var.clamp(v) != v {
            writeln!(
                err,
                "warning: {name} = {v} is outside its universe; clamped to {}",
                var.clamp(v)
            )?;
        }
    }
    let engine = engine_for(&fis, grid)?;
    let axis_refs: Vec<&str> = axes.iter().map(String::as_str).collect();
    let fixed_refs: Vec<(&str, f64)> = fixed.iter().map(|(k, &v)| (k.as_str(), v)).collect();
    let result = surface::sweep(&engine, &axis_refs, &fixed_refs, args.steps)?;
    let text = match args.format {
        SweepFormat::Csv => result.to_csv(),
        SweepFormat::Json => {
            let mut s = result.to_json();
            s.push('\n');
            s
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn validate(model: &str, out: &mut dyn Write) -> Outcome {
    let (fis, mut lines, mut errors) = match models::builtin(&model.to_ascii_lowercase()) {
        Some(fis) => (fis, Vec::new(), 0),
        None => {
            let text = std::fs::read_to_string(model)
                .map_err(|e| Failure::usage(format!("cannot read '{model}': {e}")))?;
            match parse_model_with_warnings(&text) {
                Ok((fis, warnings)) => {
                    let lines = warnings.iter().map(|w| format!("{model}:{w}")).collect();
                    (fis, lines, 0)
                }
                Err(diags) => {
                    for d in &diags {
                        writeln!(out, "{model}:{d}")?;
                    }
                    let n = diags.iter().filter(|d| d.is_error()).count();
                    return Err(Failure::invalid(format!("{model}: {n} error(s)")));
                }
            }
        }
    };
    // parse warnings already cover rule-base completeness
    let from_parse = !lines.is_empty();
    for d in validate_fis(&fis) {
        let completeness = matches!(
            d.kind,
            DiagnosticKind::MissingCombination(_) | DiagnosticKind::IncompleteRuleBase { .. }
        );
        if from_parse && completeness {
            continue;
        }
        if d.is_error() {
            errors += 1;
        }
        lines.push(format!("{model}: {d}"));
    }
    for line in &lines {
        writeln!(out, "{line}")?;
    }
    if errors > 0 {
        return Err(Failure::invalid(format!("{model}: {errors} error(s)")));
    }
    if lines.is_empty() {
        writeln!(
            out,
            "{model}: ok ({} inputs, {} rules)",
            fis.inputs.len(),
            fis.rules.len()
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], grid: Option<&str>) -> (i32, String, String) {
        let mut argv = vec!["fuzzrisk".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&argv, &mut out, &mut err, grid);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn grid_setting() {
        assert_eq!(grid_size(None, None).unwrap(), DEFAULT_GRID_POINTS);
        assert_eq!(grid_size(None, Some("201")).unwrap(), 201);
        assert_eq!(grid_size(Some(301), Some("201")).unwrap(), 301);
        assert_eq!(grid_size(None, Some("100")).unwrap_err().code, EXIT_USAGE);
        assert_eq!(grid_size(None, Some("lots")).unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn names_fold_case_and_dashes() {
        assert_eq!(fold_name("Restore-Cost"), "restore_cost");
        let fis = models::build_success_rate_fis();
        assert_eq!(resolve_input(&fis, "restore-cost").unwrap(), "Restore_cost");
        assert!(resolve_input(&fis, "cost").is_err());
    }

    #[test]
    fn assignment_syntax() {
        assert_eq!(parse_assignment("a=0.5").unwrap(), ("a", 0.5));
        assert!(parse_assignment("a").is_err());
        assert!(parse_assignment("a=x").is_err());
        assert!(parse_assignment("a=inf").is_err());
    }

    #[test]
    fn missing_input_is_a_usage_error() {
        let (code, _, err) = call(
            &[
                "eval",
                "--model",
                "attacker",
                "--in",
                "resources=1",
                "--in",
                "knowledge=1",
            ],
            None,
        );
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("missing input: motivation"), "{err}");
    }

    #[test]
    fn help_is_not_an_error() {
        let (code, out, _) = call(&["--help"], None);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("pipeline"));
        let (code, _, _) = call(&["frobnicate"], None);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn grid_env_reaches_the_engine() {
        let args = [
            "eval",
            "--model",
            "attacker",
            "--in",
            "resources=0.3",
            "--in",
            "knowledge=0.7",
            "--in",
            "motivation=0.2",
            "--format",
            "json",
        ];
        let (c1, coarse, _) = call(&args, Some("101"));
        let (c2, fine, _) = call(&args, None);
        assert_eq!((c1, c2), (0, 0));
        assert_ne!(coarse, fine);
        let (code, _, err) = call(&args, Some("5"));
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains(GRID_ENV));
    }
}
