use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Tilde,
    /// Binary operator, stored by its ASCII spelling.
    Op(&'static str),
    Eof,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub offset: usize,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

const ASCII_OPS: [&str; 13] = [
    "<=>", "==>", "\\/", "/\\", "<=", ">=", "=", "<", ">", "+", "-", "*", "->",
];

fn unicode_alias(c: char) -> Option<Tok> {
    Some(match c {
        '¬' => Tok::Tilde,
        '∨' => Tok::Op("\\/"),
        '∧' => Tok::Op("/\\"),
        '⇒' | '→' => Tok::Op("==>"),
        '⇔' | '↔' => Tok::Op("<=>"),
        '≤' => Tok::Op("<="),
        '≥' => Tok::Op(">="),
        '×' => Tok::Op("*"),
        _ => return None,
    })
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let advance = |c: char, line: &mut usize, col: &mut usize| {
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while let Some(&(i, c)) = chars.peek() {
        let pos = Pos {
            offset: i,
            line,
            col,
        };
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut line, &mut col);
            continue;
        }
        let rest = &src[i..];
        if rest.starts_with('#') || rest.starts_with("//") {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                advance(c, &mut line, &mut col);
            }
            continue;
        }
        let mut take = |n: usize, chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            for _ in 0..n {
                if let Some((_, c)) = chars.next() {
                    advance(c, &mut line, &mut col);
                }
            }
        };
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            '~' => Some(Tok::Tilde),
            _ => unicode_alias(c),
        };
        if let Some(tok) = simple {
            take(1, &mut chars);
            out.push(Token { tok, pos });
            continue;
        }
        if let Some(op) = ASCII_OPS.iter().find(|op| rest.starts_with(**op)) {
            take(op.chars().count(), &mut chars);
            let op = if *op == "->" { "==>" } else { op };
            out.push(Token {
                tok: Tok::Op(op),
                pos,
            });
            continue;
        }
        if c == '"' {
            take(1, &mut chars);
            let mut s = String::new();
            loop {
                match chars.peek().copied() {
                    Some((_, '"')) => {
                        take(1, &mut chars);
                        break;
                    }
                    Some((_, '\n')) | None => {
                        return Err(SyntaxError::at(pos, "unterminated string literal"));
                    }
                    Some((_, ch)) => {
                        s.push(ch);
                        take(1, &mut chars);
                    }
                }
            }
            out.push(Token {
                tok: Tok::Str(s),
                pos,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let digits = &rest[..len];
            take(len, &mut chars);
            let n: u64 = digits
                .parse()
                .map_err(|_| SyntaxError::at(pos, format!("numeral `{digits}` is too large")))?;
            out.push(Token {
                tok: Tok::Num(n),
                pos,
            });
            continue;
        }
        if is_ident_start(c) {
            let s: String = rest.chars().take_while(|&c| is_ident_char(c)).collect();
            take(s.chars().count(), &mut chars);
            out.push(Token {
                tok: Tok::Ident(s),
                pos,
            });
            continue;
        }
        return Err(SyntaxError::at(pos, format!("unexpected character `{c}`")));
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos {
            offset: src.len(),
            line,
            col,
        },
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
    fn longest_operator_wins() {
        assert_eq!(
            toks("a <=> b <= c ==> d = e"),
            vec![
                Tok::Ident("a".into()),
                Tok::Op("<=>"),
                Tok::Ident("b".into()),
                Tok::Op("<="),
                Tok::Ident("c".into()),
                Tok::Op("==>"),
                Tok::Ident("d".into()),
                Tok::Op("="),
                Tok::Ident("e".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn unicode_aliases_and_primes() {
        assert_eq!(
            toks("¬p ∨ n' ≤ 2"),
            vec![
                Tok::Tilde,
                Tok::Ident("p".into()),
                Tok::Op("\\/"),
                Tok::Ident("n'".into()),
                Tok::Op("<="),
                Tok::Num(2),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_and_comments() {
        let t = tokenize("# note\n  foo // tail\n bar").unwrap();
        assert_eq!((t[0].pos.line, t[0].pos.col), (2, 3));
        assert_eq!((t[1].pos.line, t[1].pos.col), (3, 2));
        let err = tokenize("a $ b").unwrap_err();
        assert_eq!((err.line, err.col), (1, 3));
    }
}
