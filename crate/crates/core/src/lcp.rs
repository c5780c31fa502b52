//! Longest-common-prefix queries over `S` followed by its reverse complement.
//!
//! Suffix array by prefix doubling with radix passes (`O(n log n)`), LCP array
//! by Kasai, range minima by a sparse table, so each query is `O(1)`.

use crate::seq::{ParenSeq, Symbol};

#[derive(Debug, Clone)]
pub struct LcpIndex {
    n: usize,
    text: Vec<u32>,
    rank: Vec<u32>,
    /// `sparse[l][r]` = min of `lcp[r + 1 ..= r + 2^l]`.
    sparse: Vec<Vec<u32>>,
}

// Opens and closes of `S` get `4t` and `4t+1`. In the reversed half an open
// becomes `4t+1` (so it equals a close it matches) and a close becomes `4t+2`,
// which equals nothing in `S`: a close followed by an open is not a match.
fn code(s: Symbol) -> u32 {
    4 * s.kind + u32::from(s.is_close())
}

fn rc_code(s: Symbol) -> u32 {
    4 * s.kind + if s.is_open() { 1 } else { 2 }
}

impl LcpIndex {
    pub fn new(s: &ParenSeq) -> Self {
        let n = s.len();
        let text: Vec<u32> = s
            .symbols()
            .iter()
            .map(|&x| code(x))
            .chain(s.symbols().iter().rev().map(|&x| rc_code(x)))
            .collect();
        let sa = suffix_array(&text);
        let mut rank = vec![0u32; text.len()];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        let lcp = kasai(&text, &sa, &rank);
        let sparse = build_sparse(&lcp);
        LcpIndex { n, text, rank, sparse }
    }

    /// Length of the original sequence.
    pub fn n(&self) -> usize {
        self.n
    }

    /// LCP of the suffixes of `S · rc(S)` starting at `p` and `q`.
    pub fn lcp(&self, p: usize, q: usize) -> usize {
        let m = self.text.len();
        if p >= m || q >= m {
            return 0;
        }
        if p == q {
            return m - p;
        }
        let (r1, r2) = (self.rank[p] as usize, self.rank[q] as usize);
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        // min over lcp[lo+1 ..= hi]
        let len = hi - lo;
        let level = usize::BITS as usize - 1 - len.leading_zeros() as usize;
        let a = self.sparse[level][lo];
        let b = self.sparse[level][hi - (1 << level)];
        a.min(b) as usize
    }

    /// LCP of `rc(S[lo..i))` and `S[j..hi)`: how many steps `x` keep
    /// `S[i-1-x]` and `S[j+x]` a matched pair.
    pub fn matched_extension(&self, lo: usize, i: usize, j: usize, hi: usize) -> usize {
        debug_assert!(lo <= i && i <= self.n && j <= hi && hi <= self.n);
        let bound = (i - lo).min(hi - j);
        if bound == 0 {
            return 0;
        }
        // rc(S)[y] = complement(S[n-1-y]); rc(S[..i)) starts at y = n - i.
        self.lcp(self.n + (self.n - i), j).min(bound)
    }
}

/// Naive version of [`LcpIndex::matched_extension`].
pub fn matched_extension_naive(s: &ParenSeq, lo: usize, i: usize, j: usize, hi: usize) -> usize {
    let bound = (i - lo).min(hi - j);
    (0..bound).take_while(|&x| s[i - 1 - x].matches(s[j + x])).count()
}

fn suffix_array(text: &[u32]) -> Vec<u32> {
    let m = text.len();
    if m == 0 {
        return Vec::new();
    }
    // ranks start at 1 so that 0 can stand for "past the end"
    let mut sorted: Vec<u32> = text.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut rank: Vec<u32> = text
        .iter()
        .map(|c| sorted.binary_search(c).expect("present") as u32 + 1)
        .collect();
    let mut sa: Vec<u32> = (0..m as u32).collect();
    let mut tmp = vec![0u32; m];
    let mut buf = vec![0u32; m];
    let mut classes = sorted.len();
    let mut step = 1usize;
    loop {
        let second = |i: u32| -> u32 {
            let j = i as usize + step;
            if j < m {
                rank[j]
            } else {
                0
            }
        };
        // LSD radix: by second key, then stably by first key.
        counting_sort(&mut sa, &mut buf, classes + 1, second);
        counting_sort(&mut sa, &mut buf, classes + 1, |i| rank[i as usize]);

        tmp[sa[0] as usize] = 1;
        let mut r = 1u32;
        for w in 1..m {
            let (p, q) = (sa[w - 1], sa[w]);
            if rank[p as usize] != rank[q as usize] || second(p) != second(q) {
                r += 1;
            }
            tmp[q as usize] = r;
        }
        std::mem::swap(&mut rank, &mut tmp);
        classes = r as usize;
        if classes == m {
            break;
        }
        step *= 2;
    }
    sa
}

fn counting_sort(sa: &mut [u32], buf: &mut [u32], buckets: usize, key: impl Fn(u32) -> u32) {
    let mut count = vec![0usize; buckets + 1];
    for &i in sa.iter() {
        count[key(i) as usize + 1] += 1;
    }
    for b in 1..count.len() {
        count[b] += count[b - 1];
    }
    for &i in sa.iter() {
        let k = key(i) as usize;
        buf[count[k]] = i;
        count[k] += 1;
    }
    sa.copy_from_slice(buf);
}

fn kasai(text: &[u32], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let m = text.len();
    let mut lcp = vec![0u32; m];
    let mut h = 0usize;
    for p in 0..m {
        let r = rank[p] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let q = sa[r - 1] as usize;
        while p + h < m && q + h < m && text[p + h] == text[q + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

fn build_sparse(lcp: &[u32]) -> Vec<Vec<u32>> {
    let m = lcp.len();
    // level 0: sparse[0][r] = lcp[r + 1]
    let base: Vec<u32> = (0..m).map(|r| lcp.get(r + 1).copied().unwrap_or(0)).collect();
    let mut levels = vec![base];
    let mut width = 1;
    while 2 * width <= m {
        let prev = levels.last().expect("nonempty");
        let next: Vec<u32> = (0..m)
            .map(|r| {
                if r + width < m {
                    prev[r].min(prev[r + width])
                } else {
                    prev[r]
                }
            })
            .collect();
        levels.push(next);
        width *= 2;
    }
    levels
}
