//! Tokens of the surface language.

use std::fmt;

use super::diag::{DiagKind, Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Num(s) => write!(f, "`{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

const SYMBOLS: [&str; 24] =
    ["->", "=>", "^>", "_>", "^<", "_<", ";", ":", "=", ",", ".", "|", "*", "(", ")", "[", "]", "{", "}", "@", "!", "?", "+", "&"];

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '$' || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '$' || c == '_' || c == '\''
}

pub fn lex(text: &str) -> Result<Vec<(Tok, Span)>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let at = |k: usize| chars.get(k).copied();
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && at(i + 1) == Some('/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while at(i).is_some_and(|c| c.is_ascii_digit()) {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), span));
        } else if ident_start(c) && !(c == '_' && matches!(at(i + 1), Some('>' | '<'))) {
            i += 1;
            loop {
                match at(i) {
                    Some('_') if matches!(at(i + 1), Some('>' | '<')) => break,
                    Some('-') if at(i + 1).is_some_and(|d| d.is_alphanumeric()) => i += 1,
                    Some(d) if ident_continue(d) => i += 1,
                    _ => break,
                }
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), span));
        } else if let Some(s) = SYMBOLS.iter().find(|s| s.chars().enumerate().all(|(k, sc)| at(i + k) == Some(sc))) {
            i += s.chars().count();
            out.push((Tok::Sym(s), span));
        } else {
            return Err(Diagnostic::error(DiagKind::Syntax, span, format!("unexpected character `{c}`")));
        }
        col += i - start;
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn corners_and_names() {
        assert_eq!(
            toks("C1_M $2_> g'^<"),
            vec![Tok::Ident("C1_M".into()), Tok::Ident("$2".into()), Tok::Sym("_>"), Tok::Ident("g'".into()), Tok::Sym("^<"), Tok::Eof]
        );
        assert_eq!(
            toks("a->b make-bread"),
            vec![Tok::Ident("a".into()), Tok::Sym("->"), Tok::Ident("b".into()), Tok::Ident("make-bread".into()), Tok::Eof]
        );
    }

    #[test]
    fn spans_and_comments() {
        let t = lex("# note\n  1@A // tail\nx").unwrap();
        assert_eq!(t[0], (Tok::Num("1".into()), Span { line: 2, col: 3 }));
        assert_eq!(t[3], (Tok::Ident("x".into()), Span { line: 3, col: 1 }));
        assert!(lex("a ~ b").is_err());
    }
}
