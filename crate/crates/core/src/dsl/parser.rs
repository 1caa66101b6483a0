use std::collections::{HashMap, HashSet};

use super::lexer::{lex_line, Token, TokenKind};
use super::{ParseDiagnostic, RESERVED_SHAPES, RESERVED_WORDS};
use crate::fis::{Antecedent, FisDefinition, LinguisticVariable, Rule, Term};
use crate::membership::MembershipFunction;
use crate::validate::{validate_fis, DiagnosticKind};

#[derive(Debug)]
enum Statement {
    Header {
        name: String,
    },
    Variable {
        output: bool,
        name: Token,
        lo: f64,
        hi: f64,
        range_at: Token,
    },
    Term {
        label: Token,
        mf: MembershipFunction,
    },
    Rule {
        clauses: Vec<(Token, Token)>,
        then_var: Token,
        then_term: Token,
    },
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    line_len: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn end_column(&self) -> usize {
        self.line_len + 1
    }

    fn unexpected(&self, tok: Option<&Token>, expected: &str) -> ParseDiagnostic {
        match tok {
            Some(t) => ParseDiagnostic::error(
                t.line,
                t.column,
                format!("expected {expected}, found {}", t.describe()),
            ),
            None => ParseDiagnostic::error(
                self.line,
                self.end_column(),
                format!("expected {expected}, found end of line"),
            ),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<&'a Token, ParseDiagnostic> {
        match self.next() {
            Some(t) if matches!(&t.kind, TokenKind::Ident(s) if s == word) => Ok(t),
            other => Err(self.unexpected(other, &format!("'{word}'"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<&'a Token, ParseDiagnostic> {
        match self.next() {
            Some(t) => match &t.kind {
                TokenKind::Ident(s) if RESERVED_WORDS.contains(&s.as_str()) => {
                    Err(ParseDiagnostic::error(
                        t.line,
                        t.column,
                        format!("'{s}' is a reserved word and cannot be used as {what}"),
                    ))
                }
                TokenKind::Ident(_) => Ok(t),
                _ => Err(self.unexpected(Some(t), what)),
            },
            None => Err(self.unexpected(None, what)),
        }
    }

    fn number(&mut self) -> Result<(f64, &'a Token), ParseDiagnostic> {
        match self.next() {
            Some(t) => match t.kind {
                TokenKind::Number(n) => Ok((n, t)),
                _ => Err(self.unexpected(Some(t), "a number")),
            },
            None => Err(self.unexpected(None, "a number")),
        }
    }

    fn finish(&mut self) -> Result<(), ParseDiagnostic> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseDiagnostic::error(
                t.line,
                t.column,
                format!("unexpected {} after end of statement", t.describe()),
            )),
        }
    }
}

fn ident_text(t: &Token) -> &str {
    match &t.kind {
        TokenKind::Ident(s) => s,
        _ => unreachable!("identifier token expected"),
    }
}

fn parse_statement(
    tokens: &[Token],
    line: usize,
    line_len: usize,
) -> Result<Statement, ParseDiagnostic> {
    let mut cur = Cursor {
        tokens,
        pos: 0,
        line,
        line_len,
    };
    let head = cur.next().expect("non-empty statement");
    let word = match &head.kind {
        TokenKind::Ident(s) => s.as_str(),
        _ => "",
    };
    let stmt = match word {
        "fis" => match cur.next() {
            Some(Token {
                kind: TokenKind::Str(name),
                ..
            }) => Statement::Header { name: name.clone() },
            other => return Err(cur.unexpected(other, "a quoted model name")),
        },
        "input" | "output" => {
            let name = cur.ident("a variable name")?.clone();
            let range_at = cur.keyword("range")?.clone();
            let (lo, _) = cur.number()?;
            let (hi, _) = cur.number()?;
            Statement::Variable {
                output: word == "output",
                name,
                lo,
                hi,
                range_at,
            }
        }
        "term" => {
            let label = cur.ident("a term label")?.clone();
            let shape_at = match cur.next() {
                Some(t) => t.clone(),
                None => return Err(cur.unexpected(None, "a shape ('tri' or 'trap')")),
            };
            let arity = match &shape_at.kind {
                TokenKind::Ident(s) if s == "tri" => 3,
                TokenKind::Ident(s) if s == "trap" => 4,
                TokenKind::Ident(s) if RESERVED_SHAPES.contains(&s.as_str()) => {
                    return Err(ParseDiagnostic::error(
                        shape_at.line,
                        shape_at.column,
                        format!("shape '{s}' is reserved but not supported"),
                    ));
                }
                _ => return Err(cur.unexpected(Some(&shape_at), "a shape ('tri' or 'trap')")),
            };
            let mut p = Vec::with_capacity(arity);
            for _ in 0..arity {
                p.push(cur.number()?.0);
            }
            let mf = if arity == 3 {
                MembershipFunction::triangular(p[0], p[1], p[2])
            } else {
                MembershipFunction::trapezoidal(p[0], p[1], p[2], p[3])
            }
            .map_err(|e| ParseDiagnostic::error(shape_at.line, shape_at.column, e.to_string()))?;
            Statement::Term { label, mf }
        }
        "rule" => {
            cur.keyword("if")?;
            let mut clauses = Vec::new();
            loop {
                let var = cur.ident("a variable name")?.clone();
                cur.keyword("is")?;
                let term = cur.ident("a term label")?.clone();
                clauses.push((var, term));
                match cur.peek() {
                    Some(t) if matches!(&t.kind, TokenKind::Ident(s) if s == "and") => {
                        cur.next();
                    }
                    Some(t) if matches!(&t.kind, TokenKind::Ident(s) if s == "then") => {
                        cur.next();
                        break;
                    }
                    other => return Err(cur.unexpected(other, "'and' or 'then'")),
                }
            }
            let then_var = cur.ident("the output variable name")?.clone();
            cur.keyword("is")?;
            let then_term = cur.ident("an output term label")?.clone();
            Statement::Rule {
                clauses,
                then_var,
                then_term,
            }
        }
        _ => {
            return Err(cur.unexpected(
                Some(head),
                "a statement ('fis', 'input', 'output', 'term' or 'rule')",
            ))
        }
    };
    cur.finish()?;
    Ok(stmt)
}

#[derive(PartialEq, PartialOrd, Clone, Copy)]
enum Section {
    Start,
    Inputs,
    Output,
    Rules,
}

struct VarDecl {
    var: LinguisticVariable,
    at: Token,
}

#[derive(Default)]
struct Builder {
    diags: Vec<ParseDiagnostic>,
    name: Option<String>,
    inputs: Vec<VarDecl>,
    output: Option<VarDecl>,
    rules: Vec<Rule>,
    first_rule_line: Option<usize>,
    // set when a variable declaration was rejected, so its terms are ignored
    skip_terms: bool,
    output_failed: bool,
    input_failed: bool,
    // names from rejected declarations, and variables with a rejected term;
    // errors that only follow from those are not reported again
    failed_vars: HashSet<String>,
    poisoned: HashSet<String>,
    combos: HashMap<Vec<String>, (usize, usize)>,
}

impl Builder {
    fn err(&mut self, line: usize, column: usize, msg: impl Into<String>) {
        self.diags.push(ParseDiagnostic::error(line, column, msg));
    }

    /// Keeps section tracking sane after a statement failed to parse.
    fn note_failure(&mut self, line: usize, keyword: Option<&str>, name: Option<&str>) {
        match keyword {
            Some("fis") if self.name.is_none() => self.name = Some(String::new()),
            Some("rule") => {
                self.first_rule_line.get_or_insert(line);
            }
            Some(kw @ ("input" | "output")) => {
                self.skip_terms = true;
                if kw == "input" {
                    self.input_failed = true;
                } else {
                    self.output_failed = true;
                }
                if let Some(name) = name {
                    self.failed_vars.insert(name.to_string());
                }
            }
            Some("term") if !self.skip_terms => {
                let owner = match self.section() {
                    Section::Inputs => self.inputs.last(),
                    Section::Output => self.output.as_ref(),
                    _ => None,
                };
                if let Some(owner) = owner {
                    self.poisoned.insert(owner.var.name.clone());
                }
            }
            _ => {}
        }
    }

    fn section(&self) -> Section {
        if !self.rules.is_empty() || self.first_rule_line.is_some() {
            Section::Rules
        } else if self.output.is_some() {
            Section::Output
        } else if !self.inputs.is_empty() {
            Section::Inputs
        } else {
            Section::Start
        }
    }

    fn apply(&mut self, stmt: Statement, line: usize, column: usize) {
        if self.name.is_none() && !matches!(stmt, Statement::Header { .. }) {
            self.err(line, column, "missing fis header");
            // report once; later statements are still checked
            self.name = Some(String::new());
        }
        match stmt {
            Statement::Header { name } => {
                if self.name.is_some() {
                    self.err(line, column, "duplicate fis header");
                } else {
                    self.name = Some(name);
                }
            }
            Statement::Variable {
                output,
                name,
                lo,
                hi,
                range_at,
            } => self.declare(output, name, lo, hi, range_at, line, column),
            Statement::Term { label, mf } => self.add_term(label, mf, line, column),
            Statement::Rule {
                clauses,
                then_var,
                then_term,
            } => self.add_rule(clauses, then_var, then_term, line, column),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn declare(
        &mut self,
        output: bool,
        name: Token,
        lo: f64,
        hi: f64,
        range_at: Token,
        line: usize,
        column: usize,
    ) {
        let section = self.section();
        self.skip_terms = true;
        if output {
            if self.output.is_some() {
                return self.err(line, column, "a model has exactly one output");
            }
        } else if section >= Section::Output {
            return self.err(line, column, "inputs must be declared before the output");
        }
        self.skip_terms = false;
        let text = ident_text(&name).to_string();
        let clash = self
            .inputs
            .iter()
            .chain(self.output.iter())
            .any(|d| d.var.name == text);
        if clash {
            self.err(
                name.line,
                name.column,
                format!("variable '{text}' is already declared"),
            );
        }
        if lo >= hi {
            self.err(
                range_at.line,
                range_at.column,
                format!("range of '{text}' must satisfy lo < hi, got [{lo}, {hi}]"),
            );
        }
        let decl = VarDecl {
            var: LinguisticVariable::new(text, lo, hi),
            at: name,
        };
        if output {
            self.output = Some(decl);
        } else {
            self.inputs.push(decl);
        }
    }

    fn add_term(&mut self, label: Token, mf: MembershipFunction, line: usize, column: usize) {
        if self.skip_terms {
            return;
        }
        let owner = match self.section() {
            Section::Start => None,
            Section::Inputs => self.inputs.last_mut(),
            Section::Output => self.output.as_mut(),
            Section::Rules => None,
        };
        let Some(owner) = owner else {
            return self.err(
                line,
                column,
                "'term' must follow an 'input' or 'output' declaration",
            );
        };
        let text = ident_text(&label);
        if owner.var.term_index(text).is_some() {
            let msg = format!("term '{text}' is already declared for '{}'", owner.var.name);
            return self.err(label.line, label.column, msg);
        }
        owner.var.terms.push(Term::new(text, mf));
    }

    fn add_rule(
        &mut self,
        clauses: Vec<(Token, Token)>,
        then_var: Token,
        then_term: Token,
        line: usize,
        column: usize,
    ) {
        self.first_rule_line.get_or_insert(line);
        self.skip_terms = false;
        let Some(output) = self.output.as_ref() else {
            if !self.output_failed {
                self.err(line, column, "rules must follow the output declaration");
            }
            return;
        };
        let before = self.diags.len();
        let mut errors = Vec::new();
        let mut suppressed = false;
        if clauses.len() != self.inputs.len() && !self.input_failed {
            errors.push(ParseDiagnostic::error(
                line,
                column,
                format!(
                    "rule has {} clause(s) but the model has {} input(s); one clause per input is required",
                    clauses.len(),
                    self.inputs.len()
                ),
            ));
        }
        for (pos, (var_tok, term_tok)) in clauses.iter().enumerate() {
            let var_name = ident_text(var_tok);
            let term_name = ident_text(term_tok);
            let Some(decl) = self.inputs.iter().find(|d| d.var.name == var_name) else {
                if self.failed_vars.contains(var_name) {
                    suppressed = true;
                    continue;
                }
                errors.push(ParseDiagnostic::error(
                    var_tok.line,
                    var_tok.column,
                    format!("unknown input variable '{var_name}'"),
                ));
                continue;
            };
            if let Some(expected) = self.inputs.get(pos) {
                if expected.var.name != var_name
                    && clauses.len() == self.inputs.len()
                    && !self.input_failed
                {
                    errors.push(ParseDiagnostic::error(
                        var_tok.line,
                        var_tok.column,
                        format!(
                            "clause {} must test '{}' (inputs are tested in declaration order), found '{var_name}'",
                            pos + 1,
                            expected.var.name
                        ),
                    ));
                }
            }
            if decl.var.term_index(term_name).is_none() {
                if self.poisoned.contains(var_name) {
                    suppressed = true;
                    continue;
                }
                errors.push(ParseDiagnostic::error(
                    term_tok.line,
                    term_tok.column,
                    format!("unknown term '{term_name}' for variable '{var_name}'"),
                ));
            }
        }
        let out_name = ident_text(&then_var);
        if out_name != output.var.name {
            errors.push(ParseDiagnostic::error(
                then_var.line,
                then_var.column,
                format!(
                    "rule must conclude on output '{}', found '{out_name}'",
                    output.var.name
                ),
            ));
        } else if output.var.term_index(ident_text(&then_term)).is_none() {
            if self.poisoned.contains(out_name) {
                suppressed = true;
            } else {
                errors.push(ParseDiagnostic::error(
                    then_term.line,
                    then_term.column,
                    format!(
                        "unknown term '{}' for variable '{out_name}'",
                        ident_text(&then_term)
                    ),
                ));
            }
        }
        self.diags.extend(errors);
        if self.diags.len() != before || suppressed {
            return;
        }
        let index = self.rules.len() + 1;
        let key: Vec<String> = clauses
            .iter()
            .map(|(_, t)| ident_text(t).to_string())
            .collect();
        if let Some(&(first, first_line)) = self.combos.get(&key) {
            return self.err(
                line,
                column,
                format!("duplicate rule: same antecedents as rule {first} (line {first_line})"),
            );
        }
        self.combos.insert(key, (index, line));
        self.rules.push(Rule {
            index,
            antecedents: clauses
                .iter()
                .map(|(v, t)| Antecedent::new(ident_text(v), ident_text(t)))
                .collect(),
            consequent: ident_text(&then_term).to_string(),
        });
    }

    fn finish(mut self, last_line: usize) -> (Option<FisDefinition>, Vec<ParseDiagnostic>) {
        let eof = last_line.max(1);
        if self.name.is_none() {
            self.err(1, 1, "missing fis header");
        }
        if self.inputs.is_empty() && self.name.is_some() && !self.input_failed {
            self.err(eof, 1, "model declares no input");
        }
        if self.output.is_none() && self.name.is_some() && !self.output_failed {
            self.err(eof, 1, "missing output declaration");
        }
        if self.rules.is_empty() && self.first_rule_line.is_none() && self.output.is_some() {
            self.err(eof, 1, "model declares no rule");
        }
        let mut empty = Vec::new();
        for d in self.inputs.iter().chain(self.output.iter()) {
            if d.var.terms.is_empty() && !self.poisoned.contains(&d.var.name) {
                empty.push(ParseDiagnostic::error(
                    d.at.line,
                    d.at.column,
                    format!("variable '{}' declares no term", d.var.name),
                ));
            }
        }
        self.diags.extend(empty);

        if self.diags.iter().any(ParseDiagnostic::is_error) {
            self.diags.sort_by_key(|d| (d.line, d.column));
            return (None, self.diags);
        }
        let fis = FisDefinition {
            name: self.name.unwrap_or_default(),
            inputs: self.inputs.into_iter().map(|d| d.var).collect(),
            output: self.output.expect("checked above").var,
            rules: self.rules,
        };
        let rule_line = self.first_rule_line.unwrap_or(eof);
        for d in validate_fis(&fis) {
            if matches!(
                d.kind,
                DiagnosticKind::MissingCombination(_) | DiagnosticKind::IncompleteRuleBase { .. }
            ) {
                self.diags
                    .push(ParseDiagnostic::warning(rule_line, 1, d.message));
            }
        }
        (Some(fis), self.diags)
    }
}

pub(crate) fn parse(source: &str) -> (Option<FisDefinition>, Vec<ParseDiagnostic>) {
    let mut builder = Builder::default();
    let mut last_line = 0;
    for (i, raw) in source.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let text = raw.strip_suffix('\r').unwrap_or(raw);
        let text = if line == 1 {
            text.strip_prefix('\u{feff}').unwrap_or(text)
        } else {
            text
        };
        let tokens = match lex_line(text, line) {
            Ok(t) => t,
            Err(d) => {
                let mut words = text.split_whitespace();
                builder.note_failure(line, words.next(), words.next());
                builder.diags.push(d);
                continue;
            }
        };
        if tokens.is_empty() {
            continue;
        }
        let column = tokens[0].column;
        match parse_statement(&tokens, line, text.chars().count()) {
            Ok(stmt) => builder.apply(stmt, line, column),
            Err(d) => {
                let word = |i: usize| match tokens.get(i).map(|t| &t.kind) {
                    Some(TokenKind::Ident(s)) => Some(s.as_str()),
                    _ => None,
                };
                builder.note_failure(line, word(0), word(1));
                builder.diags.push(d);
            }
        }
    }
    builder.finish(last_line)
}
