//! Text encodings for parenthesis sequences.
//!
//! `ascii` maps `()`, `[]`, `{}`, `<>` to types 0..=3. `tokens` is a
//! whitespace-separated list of `o<i>` / `c<i>` for any number of types.
//! Unknown characters are errors; nothing is skipped.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::seq::{Orientation, ParenAlphabet, ParenSeq, Symbol};

const ASCII_OPEN: [char; 4] = ['(', '[', '{', '<'];
const ASCII_CLOSE: [char; 4] = [')', ']', '}', '>'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Encoding {
    #[default]
    Ascii,
    Tokens,
}

impl FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(Encoding::Ascii),
            "tokens" => Ok(Encoding::Tokens),
            other => Err(Error::InvalidParameter(format!("unknown encoding {other:?}"))),
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Encoding::Ascii => "ascii",
            Encoding::Tokens => "tokens",
        })
    }
}

pub fn parse(text: &str, encoding: Encoding) -> Result<ParenSeq> {
    match encoding {
        Encoding::Ascii => parse_ascii(text),
        Encoding::Tokens => parse_tokens(text),
    }
}

pub fn format(seq: &ParenSeq, encoding: Encoding) -> Result<String> {
    match encoding {
        Encoding::Ascii => format_ascii(seq),
        Encoding::Tokens => Ok(format_tokens(seq)),
    }
}

/// Parses the bracket characters of `text`, ignoring ASCII whitespace.
///
/// The alphabet has four types regardless of which brackets occur.
pub fn parse_ascii(text: &str) -> Result<ParenSeq> {
    let mut symbols = Vec::with_capacity(text.len());
    for (position, ch) in text.chars().enumerate() {
        if ch.is_ascii_whitespace() {
            continue;
        }
        let symbol = if let Some(k) = ASCII_OPEN.iter().position(|&c| c == ch) {
            Symbol::open(k as u32)
        } else if let Some(k) = ASCII_CLOSE.iter().position(|&c| c == ch) {
            Symbol::close(k as u32)
        } else {
            return Err(Error::Parse {
                position,
                token: ch.to_string(),
            });
        };
        symbols.push(symbol);
    }
    ParenSeq::new(ParenAlphabet::new(4)?, symbols)
}

pub fn format_ascii(seq: &ParenSeq) -> Result<String> {
    seq.symbols()
        .iter()
        .enumerate()
        .map(|(position, s)| {
            let table = match s.orientation {
                Orientation::Open => &ASCII_OPEN,
                Orientation::Close => &ASCII_CLOSE,
            };
            table.get(s.kind as usize).copied().ok_or(Error::Parse {
                position,
                token: format!("type {} has no ascii form", s.kind),
            })
        })
        .collect()
}

/// Parses `o<i>` / `c<i>` tokens. The alphabet is sized to the largest type seen.
pub fn parse_tokens(text: &str) -> Result<ParenSeq> {
    let symbols = text
        .split_whitespace()
        .enumerate()
        .map(|(position, tok)| {
            let bad = || Error::Parse {
                position,
                token: tok.to_string(),
            };
            let (head, digits) = tok.split_at(1.min(tok.len()));
            let kind: u32 = digits.parse().map_err(|_| bad())?;
            match head {
                "o" => Ok(Symbol::open(kind)),
                "c" => Ok(Symbol::close(kind)),
                _ => Err(bad()),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ParenSeq::from_symbols(symbols))
}

pub fn format_tokens(seq: &ParenSeq) -> String {
    let mut out = String::with_capacity(seq.len() * 3);
    for (i, s) in seq.symbols().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push(if s.is_open() { 'o' } else { 'c' });
        out.push_str(&s.kind.to_string());
    }
    out
}
