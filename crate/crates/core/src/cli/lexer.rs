//! Tokens with 1-based line/column positions.

use std::fmt;

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `@name`
    Field(String),
    /// Unsigned decimal integer literal.
    Int(String),
    Sym(char),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Field(s) => write!(f, "`@{s}`"),
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `src` into tokens; `#` starts a comment. Hyphenated command
/// words such as `check-nplectic` are re-joined by the parser.
pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let at = |tok| Token { tok, line: ln + 1, col };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
            } else if is_ident_start(c) {
                let s = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(at(Tok::Ident(chars[s..i].iter().collect())));
            } else if c.is_ascii_digit() {
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(at(Tok::Int(chars[s..i].iter().collect())));
            } else if c == '@' {
                let s = i + 1;
                i += 1;
                if i >= chars.len() || !is_ident_start(chars[i]) {
                    return Err(ParseError::new(ln + 1, col, "expected a coordinate name after `@`"));
                }
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(at(Tok::Field(chars[s..i].iter().collect())));
            } else if "+-*/^(),=".contains(c) {
                out.push(at(Tok::Sym(c)));
                i += 1;
            } else {
                return Err(ParseError::new(ln + 1, col, format!("unexpected character `{c}`")));
            }
        }
        out.push(Token {
            tok: Tok::Newline,
            line: ln + 1,
            col: chars.len() + 1,
        });
    }
    let last = out.last().map_or(1, |t| t.line);
    out.push(Token {
        tok: Tok::Eof,
        line: last,
        col: 1,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            toks("form a = 1/2*x*dy^dz # note"),
            vec![
                Tok::Ident("form".into()),
                Tok::Ident("a".into()),
                Tok::Sym('='),
                Tok::Int("1".into()),
                Tok::Sym('/'),
                Tok::Int("2".into()),
                Tok::Sym('*'),
                Tok::Ident("x".into()),
                Tok::Sym('*'),
                Tok::Ident("dy".into()),
                Tok::Sym('^'),
                Tok::Ident("dz".into()),
                Tok::Newline,
                Tok::Eof
            ]
        );
        assert_eq!(toks("-y*@x")[3], Tok::Field("x".into()));
    }

    #[test]
    fn positions_and_errors() {
        let t = lex("chart R2 (q, p)\n  field v = @q").unwrap();
        let v = t.iter().find(|t| t.tok == Tok::Field("q".into())).unwrap();
        assert_eq!((v.line, v.col), (2, 13));
        let e = lex("form a = x $ y").unwrap_err();
        assert_eq!((e.line, e.col), (1, 12));
    }
}
