use super::Diagnostic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(u64),
    If,
    Then,
    Else,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Plus,
    Minus,
    Lt,
    Le,
    And,
    Or,
    Not,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::If => "`if`".into(),
            Tok::Then => "`then`".into(),
            Tok::Else => "`else`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Le => "`<=`".into(),
            Tok::And => "`&&`".into(),
            Tok::Or => "`||`".into(),
            Tok::Not => "`!`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Splits program text into tokens. Newlines are ordinary whitespace and `#`
/// starts a comment running to the end of the line. The mathematical
/// spellings `−`, `≤`, `∧`, `∨` and `¬` are accepted as well.
pub fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok =
            match c {
                '\n' | ' ' | '\t' | '\r' => {
                    bump(&mut chars);
                    continue;
                }
                '#' => {
                    while chars.peek().is_some_and(|&c| c != '\n') {
                        bump(&mut chars);
                    }
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&c) = chars.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                            s.push(c);
                            bump(&mut chars);
                        } else {
                            break;
                        }
                    }
                    match s.as_str() {
                        "if" => Tok::If,
                        "then" => Tok::Then,
                        "else" => Tok::Else,
                        _ => Tok::Ident(s),
                    }
                }
                c if c.is_ascii_digit() => {
                    let mut s = String::new();
                    while let Some(&c) = chars.peek() {
                        if c.is_ascii_digit() {
                            s.push(c);
                            bump(&mut chars);
                        } else {
                            break;
                        }
                    }
                    Tok::Number(s.parse().map_err(|_| {
                        Diagnostic::at(tl, tc, format!("number `{s}` is too large"))
                    })?)
                }
                _ => {
                    bump(&mut chars);
                    match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ',' => Tok::Comma,
                        ';' => Tok::Semi,
                        '=' => Tok::Eq,
                        '+' => Tok::Plus,
                        '-' | '−' => Tok::Minus,
                        '≤' => Tok::Le,
                        '∧' => Tok::And,
                        '∨' => Tok::Or,
                        '¬' => Tok::Not,
                        '!' => Tok::Not,
                        '<' => {
                            if chars.peek() == Some(&'=') {
                                bump(&mut chars);
                                Tok::Le
                            } else {
                                Tok::Lt
                            }
                        }
                        '&' | '|' => {
                            if chars.peek() == Some(&c) {
                                bump(&mut chars);
                                if c == '&' {
                                    Tok::And
                                } else {
                                    Tok::Or
                                }
                            } else {
                                return Err(Diagnostic::at(tl, tc, format!("expected `{c}{c}`")));
                            }
                        }
                        other => {
                            return Err(Diagnostic::at(
                                tl,
                                tc,
                                format!("unexpected character `{other}`"),
                            ))
                        }
                    }
                }
            };
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
    }
    Ok(out)
}
