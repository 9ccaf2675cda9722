use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Var(String),
    Int(i64),
    Str(String),
    ColonDash,
    DoubleColon,
    Colon,
    Dot,
    DotDot,
    Comma,
    Semi,
    LParen,
    RParen,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
    GtGt,
    Amp,
    PlusPlus,
    Arrow,
    Equiv,
    Minus,
    Plus,
    Star,
    SlashSlash,
    At,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) | Tok::Var(s) => return write!(f, "`{s}`"),
            Tok::Int(n) => return write!(f, "`{n}`"),
            Tok::Str(s) => return write!(f, "'{s}'"),
            Tok::ColonDash => ":-",
            Tok::DoubleColon => "::",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::DotDot => "..",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Eq => "=",
            Tok::Neq => "\\=",
            Tok::Lt => "<",
            Tok::Le => "=<",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::GtGt => ">>",
            Tok::Amp => "&",
            Tok::PlusPlus => "++",
            Tok::Arrow => "->>",
            Tok::Equiv => "<->>",
            Tok::Minus => "-",
            Tok::Plus => "+",
            Tok::Star => "*",
            Tok::SlashSlash => "//",
            Tok::At => "@",
            Tok::Eof => return f.write_str("end of input"),
        };
        write!(f, "`{s}`")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub line: u32,
    pub col: u32,
    pub msg: String,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, LexError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1u32;
    let mut line_start = 0usize;
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            line += 1;
            i += 1;
            line_start = i;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'%' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let col = (start - line_start) as u32 + 1;
        let at = |k: usize| bytes.get(i + k).copied().unwrap_or(0);
        let (tok, len) = if c.is_ascii_alphabetic() || c == b'_' {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            let word = &text[i..j];
            let tok = if c.is_ascii_uppercase() {
                Tok::Var(word.into())
            } else {
                Tok::Ident(word.into())
            };
            (tok, j - i)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            let n = text[i..j].parse::<i64>().map_err(|e| LexError {
                line,
                col,
                msg: e.to_string(),
            })?;
            (Tok::Int(n), j - i)
        } else if c == b'\'' || c == b'"' {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j] != c && bytes[j] != b'\n' {
                j += 1;
            }
            if j >= bytes.len() || bytes[j] != c {
                return Err(LexError {
                    line,
                    col,
                    msg: "unterminated string".into(),
                });
            }
            (Tok::Str(text[i + 1..j].into()), j + 1 - i)
        } else {
            match (c, at(1), at(2), at(3)) {
                (b':', b'-', _, _) => (Tok::ColonDash, 2),
                (b':', b':', _, _) => (Tok::DoubleColon, 2),
                (b':', _, _, _) => (Tok::Colon, 1),
                (b'.', b'.', _, _) => (Tok::DotDot, 2),
                (b'.', _, _, _) => (Tok::Dot, 1),
                (b',', _, _, _) => (Tok::Comma, 1),
                (b';', _, _, _) => (Tok::Semi, 1),
                (b'(', _, _, _) => (Tok::LParen, 1),
                (b')', _, _, _) => (Tok::RParen, 1),
                (b'=', b'<', _, _) => (Tok::Le, 2),
                (b'=', _, _, _) => (Tok::Eq, 1),
                (b'\\', b'=', _, _) => (Tok::Neq, 2),
                (b'<', b'-', b'>', b'>') => (Tok::Equiv, 4),
                (b'<', _, _, _) => (Tok::Lt, 1),
                (b'>', b'>', _, _) => (Tok::GtGt, 2),
                (b'>', b'=', _, _) => (Tok::Ge, 2),
                (b'>', _, _, _) => (Tok::Gt, 1),
                (b'&', _, _, _) => (Tok::Amp, 1),
                (b'+', b'+', _, _) => (Tok::PlusPlus, 2),
                (b'+', _, _, _) => (Tok::Plus, 1),
                (b'-', b'>', b'>', _) => (Tok::Arrow, 3),
                (b'-', _, _, _) => (Tok::Minus, 1),
                (b'*', _, _, _) => (Tok::Star, 1),
                (b'/', b'/', _, _) => (Tok::SlashSlash, 2),
                (b'@', _, _, _) => (Tok::At, 1),
                _ => {
                    let ch = text[i..].chars().next().unwrap_or('?');
                    return Err(LexError {
                        line,
                        col,
                        msg: format!("unexpected character `{ch}`"),
                    });
                }
            }
        };
        i += len;
        out.push(Token {
            tok,
            start,
            end: i,
            line,
            col,
        });
    }
    let col = (bytes.len() - line_start) as u32 + 1;
    out.push(Token {
        tok: Tok::Eof,
        start: bytes.len(),
        end: bytes.len(),
        line,
        col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn operators() {
        assert_eq!(
            toks("a ->> b <->> c ++ -d & e\\=f =< 1..3."),
            vec![
                Tok::Ident("a".into()),
                Tok::Arrow,
                Tok::Ident("b".into()),
                Tok::Equiv,
                Tok::Ident("c".into()),
                Tok::PlusPlus,
                Tok::Minus,
                Tok::Ident("d".into()),
                Tok::Amp,
                Tok::Ident("e".into()),
                Tok::Neq,
                Tok::Ident("f".into()),
                Tok::Le,
                Tok::Int(1),
                Tok::DotDot,
                Tok::Int(3),
                Tok::Dot,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comments_and_positions() {
        let t = tokenize("% header\n  :- sorts x.").unwrap();
        assert_eq!(t[0].tok, Tok::ColonDash);
        assert_eq!((t[0].line, t[0].col), (2, 3));
        assert_eq!(
            toks("maxstep-1"),
            vec![
                Tok::Ident("maxstep".into()),
                Tok::Minus,
                Tok::Int(1),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn bad_character() {
        assert!(tokenize("a $ b").is_err());
        assert!(tokenize("'open").is_err());
    }
}
