//! Parenthesis alphabets and sequences.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Open,
    Close,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Open => Orientation::Close,
            Orientation::Close => Orientation::Open,
        }
    }

    /// Height step contributed by a symbol of this orientation.
    pub fn step(self) -> i64 {
        match self {
            Orientation::Open => 1,
            Orientation::Close => -1,
        }
    }
}

/// One parenthesis: an orientation and a type id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub orientation: Orientation,
    pub kind: u32,
}

impl Symbol {
    pub const fn open(kind: u32) -> Self {
        Symbol {
            orientation: Orientation::Open,
            kind,
        }
    }

    pub const fn close(kind: u32) -> Self {
        Symbol {
            orientation: Orientation::Close,
            kind,
        }
    }

    #[inline]
    pub fn is_open(self) -> bool {
        self.orientation == Orientation::Open
    }

    #[inline]
    pub fn is_close(self) -> bool {
        self.orientation == Orientation::Close
    }

    /// Same type, opposite orientation.
    #[inline]
    pub fn complement(self) -> Self {
        Symbol {
            orientation: self.orientation.flip(),
            kind: self.kind,
        }
    }

    /// True when `self` followed by `other` is a matched pair.
    #[inline]
    pub fn matches(self, other: Symbol) -> bool {
        self.is_open() && other.is_close() && self.kind == other.kind
    }
}

/// Dyck edit distance of the two-symbol string `xy`.
///
/// 0 for a matched pair, 2 for a closing symbol followed by an opening one,
/// 1 otherwise.
#[inline]
pub fn pair_cost(x: Symbol, y: Symbol) -> u32 {
    match (x.orientation, y.orientation) {
        (Orientation::Open, Orientation::Close) if x.kind == y.kind => 0,
        (Orientation::Close, Orientation::Open) => 2,
        _ => 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParenAlphabet {
    type_count: u32,
}

impl ParenAlphabet {
    pub fn new(type_count: u32) -> Result<Self> {
        if type_count == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(ParenAlphabet { type_count })
    }

    pub fn type_count(&self) -> u32 {
        self.type_count
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        symbol.kind < self.type_count
    }

    /// All `2t` symbols, openings first.
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.type_count)
            .map(Symbol::open)
            .chain((0..self.type_count).map(Symbol::close))
    }
}

/// A sequence of parentheses over a fixed alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParenSeq {
    alphabet: ParenAlphabet,
    symbols: Vec<Symbol>,
}

impl ParenSeq {
    pub fn new(alphabet: ParenAlphabet, symbols: Vec<Symbol>) -> Result<Self> {
        if let Some((position, s)) = symbols.iter().enumerate().find(|(_, s)| !alphabet.contains(**s)) {
            return Err(Error::TypeOutOfRange {
                position,
                kind: s.kind,
                type_count: alphabet.type_count(),
            });
        }
        Ok(ParenSeq { alphabet, symbols })
    }

    /// Builds a sequence whose alphabet is just large enough for `symbols`.
    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        let type_count = symbols.iter().map(|s| s.kind + 1).max().unwrap_or(1);
        ParenSeq {
            alphabet: ParenAlphabet { type_count },
            symbols,
        }
    }

    pub fn empty(alphabet: ParenAlphabet) -> Self {
        ParenSeq {
            alphabet,
            symbols: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> ParenAlphabet {
        self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, i: usize) -> Symbol {
        self.symbols[i]
    }

    /// Substring `S[i..j)` over the same alphabet.
    pub fn slice(&self, i: usize, j: usize) -> ParenSeq {
        ParenSeq {
            alphabet: self.alphabet,
            symbols: self.symbols[i..j].to_vec(),
        }
    }

    /// Reversed sequence with every orientation flipped.
    pub fn reverse_complement(&self) -> ParenSeq {
        ParenSeq {
            alphabet: self.alphabet,
            symbols: self.symbols.iter().rev().map(|s| s.complement()).collect(),
        }
    }

    /// Stack check ignoring nothing: true iff the sequence is a Dyck word.
    pub fn is_balanced(&self) -> bool {
        let mut stack = Vec::new();
        for &s in &self.symbols {
            if s.is_open() {
                stack.push(s.kind);
            } else if stack.pop() != Some(s.kind) {
                return false;
            }
        }
        stack.is_empty()
    }
}

impl std::ops::Index<usize> for ParenSeq {
    type Output = Symbol;

    fn index(&self, i: usize) -> &Symbol {
        &self.symbols[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over every script of deletions/substitutions on a
    /// two-symbol string.
    fn two_symbol_oracle(alphabet: ParenAlphabet, x: Symbol, y: Symbol) -> u32 {
        let all: Vec<Symbol> = alphabet.symbols().collect();
        let mut best = u32::MAX;
        // Each position: delete, or replace by any symbol (cost 0 if unchanged).
        let choices = |s: Symbol| {
            let mut v: Vec<(Option<Symbol>, u32)> = vec![(None, 1)];
            v.extend(all.iter().map(|&t| (Some(t), u32::from(t != s))));
            v
        };
        for (a, ca) in choices(x) {
            for (b, cb) in choices(y) {
                let seq = ParenSeq::from_symbols(a.into_iter().chain(b).collect());
                if seq.is_balanced() {
                    best = best.min(ca + cb);
                }
            }
        }
        best
    }

    #[test]
    fn pair_cost_examples() {
        assert_eq!(pair_cost(Symbol::open(0), Symbol::close(0)), 0);
        assert_eq!(pair_cost(Symbol::close(0), Symbol::open(0)), 2);
        assert_eq!(pair_cost(Symbol::open(0), Symbol::close(1)), 1);
    }

    #[test]
    fn pair_cost_matches_exhaustive_scripts() {
        for t in 1..=4 {
            let alphabet = ParenAlphabet::new(t).unwrap();
            for x in alphabet.symbols() {
                for y in alphabet.symbols() {
                    assert_eq!(pair_cost(x, y), two_symbol_oracle(alphabet, x, y), "{x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn reverse_complement_examples() {
        let alphabet = ParenAlphabet::new(2).unwrap();
        let empty = ParenSeq::empty(alphabet);
        assert_eq!(empty.reverse_complement(), empty);

        let one = ParenSeq::new(alphabet, vec![Symbol::open(0)]).unwrap();
        assert_eq!(one.reverse_complement().symbols(), &[Symbol::close(0)]);

        let two = ParenSeq::new(alphabet, vec![Symbol::open(0), Symbol::open(1)]).unwrap();
        assert_eq!(
            two.reverse_complement().symbols(),
            &[Symbol::close(1), Symbol::close(0)]
        );
    }

    #[test]
    fn rejects_out_of_range_types() {
        let alphabet = ParenAlphabet::new(1).unwrap();
        let err = ParenSeq::new(alphabet, vec![Symbol::open(0), Symbol::close(1)]).unwrap_err();
        assert!(matches!(err, Error::TypeOutOfRange { position: 1, .. }));
        assert_eq!(ParenAlphabet::new(0), Err(Error::EmptyAlphabet));
    }
}
