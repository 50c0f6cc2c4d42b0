use num_bigint::BigUint;

use crate::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Nat(BigUint),
    /// A literal with a decimal point; never valid, kept for better diagnostics.
    Decimal,
    Ident(Ident),
    Inv,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

/// A generator name with its subscript, before any rank check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ident {
    X,
    Y,
    C(Subscript),
    Q(Subscript),
    U(Subscript),
}

/// Subscripts too large for `usize` are kept as `None` and rejected later.
pub type Subscript = Option<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub offset: usize,
}

pub fn tokenize(input: &[u8]) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < input.len() {
        let b = input[i];
        let start = i;
        let simple = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, offset: start });
            i += 1;
            continue;
        }
        if b.is_ascii_digit() {
            let end = digits_end(input, i);
            let mut tok = Tok::Nat(BigUint::parse_bytes(&input[i..end], 10).expect("ascii digits"));
            i = end;
            if input.get(i) == Some(&b'.') {
                i = digits_end(input, i + 1);
                tok = Tok::Decimal;
            }
            out.push(Token { tok, offset: start });
            continue;
        }
        if b.is_ascii_alphabetic() {
            let end = input[i..]
                .iter()
                .position(|c| !c.is_ascii_alphabetic())
                .map_or(input.len(), |p| i + p);
            let word = &input[i..end];
            i = end;
            let tok = match word {
                b"inv" => Tok::Inv,
                b"x" => Tok::Ident(Ident::X),
                b"y" => Tok::Ident(Ident::Y),
                b"c" | b"q" | b"u" => {
                    let sub_end = digits_end(input, i);
                    if sub_end == i {
                        return Err(ParseError::new(
                            ParseErrorKind::Syntax,
                            start,
                            format!("`{}` needs a numeric subscript", word[0] as char),
                        ));
                    }
                    let sub = std::str::from_utf8(&input[i..sub_end])
                        .expect("ascii digits")
                        .parse::<usize>()
                        .ok();
                    i = sub_end;
                    Tok::Ident(match word[0] {
                        b'c' => Ident::C(sub),
                        b'q' => Ident::Q(sub),
                        _ => Ident::U(sub),
                    })
                }
                _ => {
                    return Err(ParseError::new(
                        ParseErrorKind::Syntax,
                        start,
                        format!("unknown identifier `{}`", String::from_utf8_lossy(word)),
                    ))
                }
            };
            out.push(Token { tok, offset: start });
            continue;
        }
        let shown = match std::str::from_utf8(&input[i..])
            .ok()
            .and_then(|s| s.chars().next())
        {
            Some(ch) => format!("unexpected character `{}`", ch.escape_debug()),
            None => format!("unexpected byte 0x{b:02x}"),
        };
        return Err(ParseError::new(ParseErrorKind::Syntax, start, shown));
    }
    out.push(Token {
        tok: Tok::End,
        offset: input.len(),
    });
    Ok(out)
}

fn digits_end(input: &[u8], from: usize) -> usize {
    input[from..]
        .iter()
        .position(|c| !c.is_ascii_digit())
        .map_or(input.len(), |p| from + p)
}
