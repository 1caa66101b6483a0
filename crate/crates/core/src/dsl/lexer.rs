use super::ParseDiagnostic;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokenKind {
    Ident(String),
    Number(f64),
    Str(String),
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn describe(&self) -> String {
        match &self.kind {
            TokenKind::Ident(s) => format!("'{s}'"),
            TokenKind::Number(n) => format!("number {n}"),
            TokenKind::Str(s) => format!("string \"{s}\""),
        }
    }
}

/// Splits one source line into tokens. `#` outside a string starts a comment.
pub(crate) fn lex_line(text: &str, line: usize) -> Result<Vec<Token>, ParseDiagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let kind = if c == '"' {
            let mut value = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => {
                        return Err(ParseDiagnostic::error(line, column, "unterminated string"));
                    }
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => match chars.get(i + 1) {
                        Some(&e @ ('"' | '\\')) => {
                            value.push(e);
                            i += 2;
                        }
                        _ => {
                            return Err(ParseDiagnostic::error(
                                line,
                                i + 1,
                                "invalid escape in string (only \\\" and \\\\ are allowed)",
                            ));
                        }
                    },
                    Some(&ch) => {
                        value.push(ch);
                        i += 1;
                    }
                }
            }
            TokenKind::Str(value)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            TokenKind::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '#' {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match parse_number(&word) {
                Some(n) => TokenKind::Number(n),
                None => {
                    return Err(ParseDiagnostic::error(
                        line,
                        column,
                        format!("bad number '{word}'"),
                    ));
                }
            }
        } else {
            return Err(ParseDiagnostic::error(
                line,
                column,
                format!("unexpected character '{c}'"),
            ));
        };
        if let Some(&next) = chars.get(i) {
            if !next.is_whitespace() && next != '#' {
                return Err(ParseDiagnostic::error(
                    line,
                    i + 1,
                    format!("unexpected character '{next}'"),
                ));
            }
        }
        tokens.push(Token { kind, line, column });
    }
    Ok(tokens)
}

/// `[+-]? (digits [. digits?] | . digits) ([eE] [+-]? digits)?`
fn parse_number(word: &str) -> Option<f64> {
    let b = word.as_bytes();
    let mut i = 0;
    if matches!(b.first(), Some(b'+' | b'-')) {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        digits += i - frac_start;
    }
    if digits == 0 {
        return None;
    }
    if i < b.len() && matches!(b[i], b'e' | b'E') {
        i += 1;
        if i < b.len() && matches!(b[i], b'+' | b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return None;
        }
    }
    if i != b.len() {
        return None;
    }
    word.parse::<f64>().ok().filter(|v| v.is_finite())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        lex_line(text, 1)
            .unwrap()
            .into_iter()
            .map(|t| t.kind)
            .collect()
    }

    #[test]
    fn numbers() {
        for (s, v) in [
            ("0", 0.0),
            ("-0.225", -0.225),
            ("+1.5", 1.5),
            (".5", 0.5),
            ("5.", 5.0),
            ("1e-3", 1e-3),
            ("2.5E+2", 250.0),
        ] {
            assert_eq!(parse_number(s), Some(v), "{s}");
        }
        for s in [
            "-", ".", "1..2", "1e", "0x10", "inf", "1e999", "--1", "1.2.3",
        ] {
            assert_eq!(parse_number(s), None, "{s}");
        }
    }

    #[test]
    fn tokens_and_columns() {
        let toks = lex_line("  term small tri -0.4 0 0.5 # note", 3).unwrap();
        assert_eq!(toks.len(), 6);
        assert_eq!(toks[0].column, 3);
        assert_eq!(toks[3].kind, TokenKind::Number(-0.4));
        assert_eq!(toks[3].column, 18);
        assert!(toks.iter().all(|t| t.line == 3));
    }

    #[test]
    fn strings() {
        assert_eq!(kinds(r#"fis "a # b""#)[1], TokenKind::Str("a # b".into()));
        assert_eq!(kinds(r#"fis "q\"x\\""#)[1], TokenKind::Str("q\"x\\".into()));
        let err = lex_line(r#"fis "open"#, 2).unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
    }

    #[test]
    fn bad_tokens() {
        let err = lex_line("term a tri 0 0.5 1x", 1).unwrap_err();
        assert!(err.message.contains("bad number"), "{}", err.message);
        assert_eq!(err.column, 18);
        let err = lex_line("input Re$ource range 0 1", 1).unwrap_err();
        assert_eq!(err.column, 9);
        let err = lex_line("input @", 1).unwrap_err();
        assert_eq!(err.column, 7);
    }
}
