//! Height profile, peaks and valleys, and the valley neighbourhood set.

use crate::seq::ParenSeq;

/// `heights[i]` is opens minus closes over `S[0..i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightProfile {
    pub heights: Vec<i64>,
    pub valleys: Vec<usize>,
    pub peaks: Vec<usize>,
}

impl HeightProfile {
    pub fn new(s: &ParenSeq) -> Self {
        let mut heights = Vec::with_capacity(s.len() + 1);
        let mut h = 0i64;
        heights.push(h);
        for sym in s.symbols() {
            h += sym.orientation.step();
            heights.push(h);
        }

        let mut valleys = Vec::new();
        let mut peaks = Vec::new();
        for i in 1..s.len() {
            let (prev, cur, next) = (heights[i - 1], heights[i], heights[i + 1]);
            if prev > cur && cur < next {
                valleys.push(i);
            } else if prev < cur && cur > next {
                peaks.push(i);
            }
        }
        HeightProfile {
            heights,
            valleys,
            peaks,
        }
    }

    /// Sequence length `n`.
    pub fn len(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn height(&self, i: usize) -> i64 {
        self.heights[i]
    }

    /// Positions within distance 1 of a valley, sorted, clipped to `[0..n]`.
    pub fn midpoint_set(&self) -> Vec<usize> {
        let n = self.len();
        let mut out: Vec<usize> = Vec::with_capacity(3 * self.valleys.len());
        for &v in &self.valleys {
            for m in [v.saturating_sub(1), v, v + 1] {
                if m <= n && out.last().is_none_or(|&last| last < m) {
                    out.push(m);
                }
            }
        }
        out
    }
}

pub fn height_profile(s: &ParenSeq) -> HeightProfile {
    HeightProfile::new(s)
}

pub fn midpoint_set(p: &HeightProfile) -> Vec<usize> {
    p.midpoint_set()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_ascii;
    use proptest::prelude::*;

    fn profile(text: &str) -> HeightProfile {
        HeightProfile::new(&parse_ascii(text).unwrap())
    }

    #[test]
    fn examples() {
        let p = profile("");
        assert_eq!(p.heights, vec![0]);
        assert!(p.valleys.is_empty() && p.peaks.is_empty());

        let p = profile("(()");
        assert_eq!(p.heights, vec![0, 1, 2, 1]);
        assert_eq!(p.peaks, vec![2]);
        assert!(p.valleys.is_empty());

        let p = profile("()()");
        assert_eq!(p.heights, vec![0, 1, 0, 1, 0]);
        assert_eq!(p.peaks, vec![1, 3]);
        assert_eq!(p.valleys, vec![2]);
    }

    #[test]
    fn midpoint_examples() {
        assert!(profile("((").midpoint_set().is_empty());
        // valleys [2], n = 4
        assert_eq!(profile("()()").midpoint_set(), vec![1, 2, 3]);
        // valleys [2, 4], n = 6
        let p = profile("()()()");
        assert_eq!(p.valleys, vec![2, 4]);
        assert_eq!(p.midpoint_set(), vec![1, 2, 3, 4, 5]);
    }

    fn arb_seq() -> impl Strategy<Value = ParenSeq> {
        prop::collection::vec(any::<bool>(), 0..64).prop_map(|bits| {
            crate::seq::ParenSeq::from_symbols(
                bits.into_iter()
                    .map(|b| {
                        if b {
                            crate::Symbol::open(0)
                        } else {
                            crate::Symbol::close(0)
                        }
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn profile_invariants(s in arb_seq()) {
            let p = HeightProfile::new(&s);
            prop_assert_eq!(p.heights[0], 0);
            for w in p.heights.windows(2) {
                prop_assert_eq!((w[1] - w[0]).abs(), 1);
            }
            let opens = s.symbols().iter().filter(|x| x.is_open()).count() as i64;
            prop_assert_eq!(p.heights[s.len()], opens - (s.len() as i64 - opens));

            // brute-force extrema
            for i in 1..s.len() {
                let (a, b, c) = (p.heights[i - 1], p.heights[i], p.heights[i + 1]);
                prop_assert_eq!(p.valleys.contains(&i), a > b && b < c);
                prop_assert_eq!(p.peaks.contains(&i), a < b && b > c);
            }
            // peaks and valleys alternate
            let mut marks: Vec<(usize, bool)> = p.valleys.iter().map(|&v| (v, true))
                .chain(p.peaks.iter().map(|&q| (q, false))).collect();
            marks.sort();
            for w in marks.windows(2) {
                prop_assert_ne!(w[0].1, w[1].1);
            }
            // midpoint set is the union of valley neighbourhoods
            let m = p.midpoint_set();
            for x in 0..=s.len() {
                let near = p.valleys.iter().any(|&v| x + 1 >= v && x <= v + 1);
                prop_assert_eq!(m.binary_search(&x).is_ok(), near);
            }
        }
    }
}
