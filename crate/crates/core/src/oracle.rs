//! Ground-truth engines used to cross-check every other solver.

use std::collections::HashMap;

use crate::cost::{cap_for, sat_add, Cost, CostTable};
use crate::error::{Error, Result};
use crate::minplus::matrix::{check_inner, tropical_add, Matrix};
use crate::seq::{pair_cost, ParenSeq};

/// Largest input [`exhaustive_distance`] accepts.
pub const EXHAUSTIVE_LIMIT: usize = 14;

/// `min(ed_D(s), bound + 1)` by searching every deletion/substitution script.
///
/// The search runs left to right over a stack of open types. At each position
/// the symbol is deleted, kept, or replaced; a close is only ever placed on a
/// matching top, so every completed branch is balanced by construction.
/// Memoising on `(position, stack)` keeps this tractable up to the limit.
///
/// Types absent from `s` are interchangeable (both ends of such a pair are
/// substitutions), so the search uses the present types plus at most one
/// fresh type. That keeps every stack entry within a nibble.
pub fn exhaustive_distance(s: &ParenSeq, bound: usize) -> Result<usize> {
    if s.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLong {
            len: s.len(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let mut present: Vec<u32> = s.symbols().iter().map(|x| x.kind).collect();
    present.sort_unstable();
    present.dedup();
    let rank = |kind: u32| present.binary_search(&kind).unwrap() as u8;
    let symbols = s.symbols().iter().map(|x| (x.is_open(), rank(x.kind))).collect();
    let fresh = (s.alphabet().type_count() as usize > present.len()) as usize;
    let mut search = ScriptSearch {
        symbols,
        type_count: (present.len() + fresh) as u8,
        memo: HashMap::new(),
    };
    let best = search.best(0, 0, 0);
    Ok(best.min(bound + 1))
}

struct ScriptSearch {
    /// `(is_open, compact type)`.
    symbols: Vec<(bool, u8)>,
    type_count: u8,
    memo: HashMap<u64, usize>,
}

impl ScriptSearch {
    const UNREACHABLE: usize = usize::MAX / 2;

    /// `stack` holds `depth` nibbles, top in the lowest.
    fn best(&mut self, pos: usize, stack: u64, depth: usize) -> usize {
        let remaining = self.symbols.len() - pos;
        if depth > remaining {
            return Self::UNREACHABLE;
        }
        if remaining == 0 {
            return 0;
        }
        let key = stack << 8 | (pos as u64) << 4 | depth as u64;
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (open, kind) = self.symbols[pos];

        // delete
        let mut best = 1 + self.best(pos + 1, stack, depth);
        // emit an opening of any type
        for t in 0..self.type_count {
            let cost = usize::from(!(open && kind == t));
            best = best.min(cost + self.best(pos + 1, stack << 4 | t as u64, depth + 1));
        }
        // emit the closing that matches the top
        if depth > 0 {
            let top = (stack & 0xf) as u8;
            let cost = usize::from(!(!open && kind == top));
            best = best.min(cost + self.best(pos + 1, stack >> 4, depth - 1));
        }

        self.memo.insert(key, best);
        best
    }
}

/// Full table of `min(D[i, j], k + 1)` from the split/outer-pair recursion,
/// filled by increasing `j - i`.
pub fn dp_cubic(s: &ParenSeq, k: usize) -> CostTable {
    let n = s.len();
    let cap = cap_for(k);
    let w = n + 1;
    // row-major D and its transpose, so both operands of the split scan are
    // contiguous
    let mut rows: Vec<Cost> = vec![cap; w * w];
    let mut cols: Vec<Cost> = vec![cap; w * w];
    for i in 0..=n {
        rows[i * w + i] = 0;
        cols[i * w + i] = 0;
        if i < n {
            let one = 1.min(cap);
            rows[i * w + i + 1] = one;
            cols[(i + 1) * w + i] = one;
        }
    }
    let syms = s.symbols();
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len;
            let mut best = sat_add(pair_cost(syms[i], syms[j - 1]), rows[(i + 1) * w + j - 1], cap);
            let left = &rows[i * w + i + 1..i * w + j];
            let right = &cols[j * w + i + 1..j * w + j];
            for (&a, &b) in left.iter().zip(right) {
                let c = a + b;
                if c < best {
                    best = c;
                }
            }
            let best = best.min(cap);
            rows[i * w + j] = best;
            cols[j * w + i] = best;
        }
    }
    let mut table = CostTable::new(n, cap);
    for i in 0..=n {
        for j in i..=n {
            table.set(i, j, rows[i * w + j]);
        }
    }
    table
}

/// `C[i, j] = min_l A[i, l] + B[l, j]` by the triple loop.
pub fn minplus_naive(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_inner(a, b)?;
    let mut c = Matrix::infinite(a.rows(), b.cols());
    for i in 0..a.rows() {
        for l in 0..a.cols() {
            let x = a.get(i, l);
            for j in 0..b.cols() {
                c.relax(i, j, tropical_add(x, b.get(l, j)));
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_ascii;
    use crate::minplus::matrix::INF;
    use crate::seq::Symbol;
    use rand::Rng;

    fn seq(text: &str) -> ParenSeq {
        parse_ascii(text).unwrap()
    }

    #[test]
    fn exhaustive_examples() {
        assert_eq!(exhaustive_distance(&seq(""), 5).unwrap(), 0);
        assert_eq!(exhaustive_distance(&seq("("), 5).unwrap(), 1);
        assert_eq!(exhaustive_distance(&seq("([)]"), 5).unwrap(), 2);
        assert_eq!(exhaustive_distance(&seq("([)]"), 1).unwrap(), 2);
        assert_eq!(exhaustive_distance(&seq("([)]"), 0).unwrap(), 1);
    }

    #[test]
    fn wide_alphabets_use_one_fresh_type() {
        use crate::codec::parse_tokens;
        let d = |t: &str| exhaustive_distance(&parse_tokens(t).unwrap(), 9).unwrap();
        assert_eq!(d("o7 c3"), 1);
        assert_eq!(d("c9 o9"), 2);
        assert_eq!(d("o0 o40 c0 c40"), 2);
        let mut rng = crate::gen::rng_for(17, 0);
        for _ in 0..300 {
            let n = rng.random_range(0..=10);
            let syms = (0..n)
                .map(|_| {
                    let t = rng.random_range(0..30);
                    if rng.random_bool(0.5) {
                        Symbol::open(t)
                    } else {
                        Symbol::close(t)
                    }
                })
                .collect();
            let s = ParenSeq::new(crate::seq::ParenAlphabet::new(30).unwrap(), syms).unwrap();
            assert_eq!(exhaustive_distance(&s, n).unwrap(), dp_cubic(&s, n).total() as usize);
        }
    }

    #[test]
    fn exhaustive_guard() {
        let long = seq(&"()".repeat(8));
        assert!(matches!(
            exhaustive_distance(&long, 3),
            Err(Error::TooLong { len: 16, .. })
        ));
    }

    #[test]
    fn cubic_examples() {
        assert_eq!(dp_cubic(&seq("()"), 3).total(), 0);
        assert_eq!(dp_cubic(&seq("(]"), 3).total(), 1);
        assert_eq!(dp_cubic(&seq("([)]"), 3).total(), 2);
        assert_eq!(dp_cubic(&seq("([)]"), 1).total(), 2);
        assert_eq!(dp_cubic(&seq("([)]"), 0).total(), 1);
        let t = dp_cubic(&seq("(("), 0);
        assert_eq!(t.get(0, 1), 1);
    }

    #[test]
    fn naive_examples() {
        let a = Matrix::from_rows(vec![vec![0]]).unwrap();
        assert_eq!(minplus_naive(&a, &a).unwrap(), a);

        let a = Matrix::from_rows(vec![vec![0], vec![1]]).unwrap();
        let b = Matrix::from_rows(vec![vec![0, 1]]).unwrap();
        assert_eq!(minplus_naive(&a, &b).unwrap().to_rows(), vec![vec![0, 1], vec![1, 2]]);

        let a = Matrix::from_rows(vec![vec![INF, INF]]).unwrap();
        let b = Matrix::from_rows(vec![vec![0], vec![0]]).unwrap();
        assert_eq!(minplus_naive(&a, &b).unwrap().get(0, 0), INF);

        assert!(minplus_naive(&a, &a).is_err());
    }
}
