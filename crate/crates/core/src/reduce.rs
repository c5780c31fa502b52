//! Valley reduction: cancel matched adjacent pairs, then bound the valley count.

use crate::profile::HeightProfile;
use crate::seq::ParenSeq;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub seq: ParenSeq,
    /// Set when the residual has more than `2k` valleys, which certifies a
    /// distance above `k`.
    pub rejected: bool,
}

/// Removes every adjacent `(_i )_i` pair until none is left, in one stack scan.
///
/// The residual has the same Dyck edit distance as the input.
pub fn cancel_matched_pairs(s: &ParenSeq) -> ParenSeq {
    let mut stack = Vec::with_capacity(s.len());
    for &sym in s.symbols() {
        match stack.last() {
            Some(&top) if crate::seq::Symbol::matches(top, sym) => {
                stack.pop();
            }
            _ => stack.push(sym),
        }
    }
    ParenSeq::new(s.alphabet(), stack).expect("subsequence of a valid sequence")
}

pub fn reduce_valleys(s: &ParenSeq, k: usize) -> Reduced {
    let seq = cancel_matched_pairs(s);
    let valleys = HeightProfile::new(&seq).valleys.len();
    Reduced {
        rejected: valleys > 2 * k,
        seq,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_ascii;

    #[test]
    fn matched_pair_disappears() {
        let r = reduce_valleys(&parse_ascii("()").unwrap(), 0);
        assert!(r.seq.is_empty());
        assert!(!r.rejected);
    }

    #[test]
    fn mismatched_pair_is_kept() {
        let s = parse_ascii("(]").unwrap();
        let r = reduce_valleys(&s, 1);
        assert_eq!(r.seq, s);
        assert!(!r.rejected);
    }

    #[test]
    fn nested_cancellation() {
        let r = reduce_valleys(&parse_ascii("[(())]{").unwrap(), 0);
        assert_eq!(r.seq, parse_ascii("{").unwrap());
    }

    #[test]
    fn many_mismatched_peaks_reject() {
        // (](](]... : 2k+1 mismatched peaks give 2k valleys; one more group
        // pushes past the bound.
        for k in 0..5usize {
            let text = "(]".repeat(2 * k + 2);
            let r = reduce_valleys(&parse_ascii(&text).unwrap(), k);
            assert_eq!(HeightProfile::new(&r.seq).valleys.len(), 2 * k + 1);
            assert!(r.rejected, "k = {k}");

            // exactly 2k valleys is accepted
            let text = "(]".repeat(2 * k + 1);
            let r = reduce_valleys(&parse_ascii(&text).unwrap(), k);
            assert!(!r.rejected);
        }
    }
}
