//! The `O(n^2 k)` table fill: split points restricted to the valley
//! neighbourhood set plus the four positions next to either end.

use crate::cost::{cap_for, sat_add, Cost, CostTable};
use crate::profile::HeightProfile;
use crate::seq::{pair_cost, ParenSeq};

/// Candidate split points for the cell `(i, j)`: `(i..j) ∩ (M ∪ {i+1, i+2, j-2, j-1})`,
/// sorted and deduplicated. `m_from` is the index of the first element of `m`
/// above `i`.
pub fn split_candidates(m: &[usize], m_from: usize, i: usize, j: usize, out: &mut Vec<usize>) {
    out.clear();
    let mut extras = [i + 1, i + 2, j.wrapping_sub(2), j - 1];
    extras.sort_unstable();
    let mut ms = m[m_from..].iter().copied().take_while(|&x| x < j).peekable();
    let mut ex = extras.into_iter().filter(|&x| x > i && x < j).peekable();
    loop {
        let next = match (ms.peek(), ex.peek()) {
            (Some(&a), Some(&b)) if a <= b => ms.next(),
            (Some(_), Some(_)) | (None, Some(_)) => ex.next(),
            (Some(_), None) => ms.next(),
            (None, None) => break,
        };
        let x = next.expect("peeked");
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
}

pub fn dp_restricted(s: &ParenSeq, k: usize) -> CostTable {
    let profile = HeightProfile::new(s);
    let m = profile.midpoint_set();
    dp_restricted_with(s, k, &m)
}

/// Same as [`dp_restricted`] with a caller-supplied distinguished set.
pub fn dp_restricted_with(s: &ParenSeq, k: usize, m: &[usize]) -> CostTable {
    let n = s.len();
    let cap = cap_for(k);
    let mut table = CostTable::new(n, cap);
    for i in 0..=n {
        table.set(i, i, 0);
        if i < n {
            table.set(i, i + 1, 1);
        }
    }
    let syms = s.symbols();
    let mut cands = Vec::with_capacity(m.len() + 4);
    for i in (0..n.saturating_sub(1)).rev() {
        let m_from = m.partition_point(|&x| x <= i);
        for j in i + 2..=n {
            let mut best: Cost = sat_add(pair_cost(syms[i], syms[j - 1]), table.get(i + 1, j - 1), cap);
            split_candidates(m, m_from, i, j, &mut cands);
            for &mid in &cands {
                best = best.min(table.get(i, mid) + table.get(mid, j));
            }
            table.set(i, j, best);
        }
    }
    table
}
