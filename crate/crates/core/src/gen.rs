//! Random instance generation: uniform Dyck words with planted edits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::minplus::Matrix;
use crate::seq::{ParenAlphabet, ParenSeq, Symbol};

/// SplitMix64 finaliser; derives independent child seeds from one root seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub seq: ParenSeq,
    /// Edits actually applied; an upper bound on the distance.
    pub edits: usize,
}

/// Uniformly random Dyck word with `n / 2` pairs (odd `n` is rounded down),
/// each pair of a uniformly random type.
pub fn random_dyck<R: Rng + ?Sized>(rng: &mut R, n: usize, types: u32) -> ParenSeq {
    let alphabet = ParenAlphabet::new(types.max(1)).expect("nonzero");
    let len = n - n % 2;
    let mut out = Vec::with_capacity(len);
    let mut stack = Vec::new();
    for step in 0..len {
        let remaining = (len - step) as u64;
        let h = stack.len() as u64;
        // Up-step probability that makes every Dyck path equally likely:
        // (h + 2)(L - h) / (2L(h + 1)).
        let num = (h + 2) * (remaining - h);
        let den = 2 * remaining * (h + 1);
        if rng.random_range(0..den) < num {
            let kind = rng.random_range(0..alphabet.type_count());
            stack.push(kind);
            out.push(Symbol::open(kind));
        } else {
            out.push(Symbol::close(stack.pop().expect("path stays non-negative")));
        }
    }
    ParenSeq::new(alphabet, out).expect("types in range")
}

/// Applies `edits` random single-symbol deletions or substitutions.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, seq: &ParenSeq, edits: usize) -> Generated {
    let alphabet = seq.alphabet();
    let all: Vec<Symbol> = alphabet.symbols().collect();
    let mut syms = seq.symbols().to_vec();
    let mut applied = 0;
    for _ in 0..edits {
        if syms.is_empty() {
            break;
        }
        let pos = rng.random_range(0..syms.len());
        if rng.random_bool(0.5) {
            syms.remove(pos);
        } else {
            let others: Vec<Symbol> = all.iter().copied().filter(|&s| s != syms[pos]).collect();
            syms[pos] = others[rng.random_range(0..others.len())];
        }
        applied += 1;
    }
    Generated {
        seq: ParenSeq::new(alphabet, syms).expect("types in range"),
        edits: applied,
    }
}

pub fn perturbed_dyck<R: Rng + ?Sized>(rng: &mut R, n: usize, types: u32, edits: usize) -> Generated {
    let base = random_dyck(rng, n, types);
    perturb(rng, &base, edits)
}

/// `P (^depth I )^depth Q` with random Dyck words `P`, `I`, `Q` of lengths
/// `context`, `inner`, `context`, then `edits` random edits. Produces a tall
/// trapezoid around `I` when `depth` is large against the edit count.
pub fn nested_dyck<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    inner: usize,
    context: usize,
    types: u32,
    edits: usize,
) -> Generated {
    let alphabet = ParenAlphabet::new(types.max(1)).expect("nonzero");
    let kinds: Vec<u32> = (0..depth).map(|_| rng.random_range(0..alphabet.type_count())).collect();
    let mut syms = random_dyck(rng, context, types).symbols().to_vec();
    syms.extend(kinds.iter().map(|&t| Symbol::open(t)));
    syms.extend_from_slice(random_dyck(rng, inner, types).symbols());
    syms.extend(kinds.iter().rev().map(|&t| Symbol::close(t)));
    syms.extend_from_slice(random_dyck(rng, context, types).symbols());
    let base = ParenSeq::new(alphabet, syms).expect("types in range");
    perturb(rng, &base, edits)
}

/// Random matrix whose adjacent rows (`column_bd`) or adjacent columns
/// differ by at most one per entry. The first line is uniform in
/// `[-spread..spread]`; each later line takes steps in `{-1, 0, 1}`.
pub fn random_bd_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    column_bd: bool,
    spread: i64,
) -> Matrix {
    let (lines, len) = if column_bd { (rows, cols) } else { (cols, rows) };
    let mut data: Vec<Vec<i64>> = Vec::with_capacity(lines);
    for t in 0..lines {
        let line: Vec<i64> = match data.last() {
            None => (0..len).map(|_| rng.random_range(-spread..=spread)).collect(),
            Some(prev) => prev.iter().map(|&x| x + rng.random_range(-1..=1)).collect(),
        };
        debug_assert_eq!(line.len(), len, "line {t}");
        data.push(line);
    }
    if column_bd {
        Matrix::from_fn(rows, cols, |i, j| data[i][j])
    } else {
        Matrix::from_fn(rows, cols, |i, j| data[j][i])
    }
}

/// Deterministic entry point used by the CLI: all randomness from `seed`.
pub fn generate(n: usize, types: u32, edits: usize, seed: u64) -> Generated {
    let mut rng = rng_for(seed, 0);
    perturbed_dyck(&mut rng, n, types, edits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unedited_is_balanced() {
        for seed in 0..50 {
            let g = generate(2 * seed as usize + 1, 3, 0, seed);
            assert!(g.seq.is_balanced());
            assert_eq!(g.seq.len(), 2 * seed as usize);
        }
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        assert_eq!(generate(100, 2, 5, 9), generate(100, 2, 5, 9));
        assert_ne!(generate(100, 2, 5, 9).seq, generate(100, 2, 5, 10).seq);
    }

    #[test]
    fn shapes_are_roughly_uniform() {
        // n = 6 has five Dyck shapes; each should get about a fifth.
        let mut rng = rng_for(1, 2);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..5000 {
            let s = random_dyck(&mut rng, 6, 1);
            let key: Vec<bool> = s.symbols().iter().map(|x| x.is_open()).collect();
            *counts.entry(key).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 5);
        assert!(counts.values().all(|&c| (850..1150).contains(&c)), "{counts:?}");
    }
}
