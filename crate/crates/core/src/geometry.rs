//! Trapezoids, clusters and the cluster/trapezoid decomposition tree.
//!
//! A trapezoid `(a, b, c, d)` is an opening run `S[a..b)` and a closing run
//! `S[c..d)` that meet at equal heights with nothing in `[b..c]` dipping below
//! `H(b)`. Tall maximal trapezoids are cut out of the position cycle
//! `0 - 1 - ... - n - 0`; what remains falls apart into clusters, and the
//! parent/child relation between the two forms a tree rooted at the cluster
//! holding `0` and `n`.

use std::fmt::Write as _;

use crate::profile::HeightProfile;
use crate::seq::ParenSeq;

/// Marker for "no matching position".
pub const NO_MATCH: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trapezoid {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl Trapezoid {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        debug_assert!(a < b && b <= c && c < d && b - a == d - c);
        Trapezoid { a, b, c, d }
    }

    pub fn height(&self) -> usize {
        self.b - self.a
    }

    pub fn is_tall(&self, k: usize) -> bool {
        self.height() >= 2 * k
    }

    /// Checks the defining conditions against a height profile.
    pub fn is_valid(&self, s: &ParenSeq, p: &HeightProfile) -> bool {
        let Trapezoid { a, b, c, d } = *self;
        if !(a < b && b <= c && c < d && d <= s.len()) {
            return false;
        }
        let h = (b - a) as i64;
        p.height(a) == p.height(d)
            && p.height(b) - p.height(a) == h
            && p.height(c) - p.height(d) == h
            && d - c == b - a
            && (b..=c).all(|m| p.height(m) >= p.height(b))
            && s.symbols()[a..b].iter().all(|x| x.is_open())
            && s.symbols()[c..d].iter().all(|x| x.is_close())
    }
}

/// For each opening position `p`, the leftmost `r > p` with `H(r) = H(p)`
/// (types ignored), or [`NO_MATCH`]. Closing positions get [`NO_MATCH`].
pub fn compute_matching_heights(s: &ParenSeq) -> Vec<usize> {
    let mut out = vec![NO_MATCH; s.len()];
    let mut stack = Vec::new();
    for (i, sym) in s.symbols().iter().enumerate() {
        if sym.is_open() {
            stack.push(i);
        } else if let Some(p) = stack.pop() {
            out[p] = i + 1;
        }
    }
    out
}

/// Every maximal trapezoid, ordered by `a`.
///
/// Maximal trapezoids are the maximal runs of opening positions `i` on which
/// `i + B(i)` is finite and constant.
pub fn maximal_trapezoids(s: &ParenSeq) -> Vec<Trapezoid> {
    let matching = compute_matching_heights(s);
    trapezoids_from_matching(&matching)
}

fn trapezoids_from_matching(matching: &[usize]) -> Vec<Trapezoid> {
    let n = matching.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        if matching[i] == NO_MATCH {
            i += 1;
            continue;
        }
        let a = i;
        let sum = a + matching[a];
        let mut b = a + 1;
        while b < n && matching[b] != NO_MATCH && b + matching[b] == sum {
            b += 1;
        }
        let d = matching[a];
        out.push(Trapezoid::new(a, b, sum - b, d));
        i = b;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    /// Smallest contained position.
    pub id: usize,
    /// Vertices of the cluster graph component, sorted.
    pub positions: Vec<usize>,
    /// Indices into [`DecompTree::trapezoids`], ordered by position.
    pub children: Vec<usize>,
    pub parent: Option<usize>,
    /// Positions relevant to processing the cluster, sorted.
    pub extended: Vec<usize>,
    /// Valley neighbourhood positions inside `extended`, sorted.
    pub midpoints: Vec<usize>,
}

impl Cluster {
    /// Positions `p` with `(p, p + 1)` an edge of the cluster.
    pub fn edge_positions(&self) -> usize {
        self.positions.windows(2).filter(|w| w[1] == w[0] + 1).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Cluster(usize),
    Trapezoid(usize),
}

#[derive(Debug, Clone)]
pub struct DecompTree {
    pub n: usize,
    pub k: usize,
    /// Tall maximal trapezoids, ordered by `a`.
    pub trapezoids: Vec<Trapezoid>,
    /// Clusters ordered by id; the root has id 0.
    pub clusters: Vec<Cluster>,
    pub root: usize,
    /// Cluster holding `a` and `d` of each trapezoid.
    pub trapezoid_parent: Vec<usize>,
    /// Cluster holding `b` and `c` of each trapezoid.
    pub trapezoid_child: Vec<usize>,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so representatives are minimal positions
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

pub fn build_decomposition(s: &ParenSeq, k: usize) -> DecompTree {
    let profile = HeightProfile::new(s);
    let m = profile.midpoint_set();
    build_decomposition_with(s, k, &m)
}

/// Builds the tree using a precomputed valley neighbourhood set `m`.
pub fn build_decomposition_with(s: &ParenSeq, k: usize, m: &[usize]) -> DecompTree {
    let n = s.len();
    let tall: Vec<Trapezoid> = maximal_trapezoids(s).into_iter().filter(|t| t.is_tall(k)).collect();

    // Cycle edge (i, i+1) for i < n, plus (n, 0).
    let mut edge_alive = vec![true; n];
    let mut vertex_alive = vec![true; n + 1];
    for t in &tall {
        edge_alive[t.a..t.b].iter_mut().for_each(|e| *e = false);
        edge_alive[t.c..t.d].iter_mut().for_each(|e| *e = false);
        vertex_alive[t.a + 1..t.b].iter_mut().for_each(|v| *v = false);
        vertex_alive[t.c + 1..t.d].iter_mut().for_each(|v| *v = false);
    }
    let mut sets = DisjointSets::new(n + 1);
    for (i, _) in edge_alive.iter().enumerate().filter(|(_, &alive)| alive) {
        sets.union(i, i + 1);
    }
    sets.union(n, 0);
    for t in &tall {
        sets.union(t.a, t.d);
        sets.union(t.b, t.c);
    }

    // Label components by smallest vertex.
    let mut cluster_of = vec![usize::MAX; n + 1];
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut index_of_root = vec![usize::MAX; n + 1];
    for v in 0..=n {
        if !vertex_alive[v] {
            continue;
        }
        let r = sets.find(v);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = clusters.len();
            clusters.push(Cluster {
                id: v,
                positions: Vec::new(),
                children: Vec::new(),
                parent: None,
                extended: Vec::new(),
                midpoints: Vec::new(),
            });
        }
        let c = index_of_root[r];
        cluster_of[v] = c;
        clusters[c].positions.push(v);
    }

    let mut trapezoid_parent = Vec::with_capacity(tall.len());
    let mut trapezoid_child = Vec::with_capacity(tall.len());
    for (ti, t) in tall.iter().enumerate() {
        let parent = cluster_of[t.a];
        let child = cluster_of[t.b];
        debug_assert_eq!(parent, cluster_of[t.d]);
        debug_assert_eq!(child, cluster_of[t.c]);
        clusters[parent].children.push(ti);
        clusters[child].parent = Some(ti);
        trapezoid_parent.push(parent);
        trapezoid_child.push(child);
    }

    let twice_k = 2 * k;
    for cluster in &mut clusters {
        let (lo, hi) = match cluster.parent {
            Some(ti) => (tall[ti].b - twice_k, tall[ti].c + twice_k),
            None => (0, n),
        };
        let mut extended = Vec::new();
        let mut cursor = lo;
        for &ci in &cluster.children {
            let t = &tall[ci];
            // keep [cursor .. a+2k], skip (a+2k .. d-2k)
            extended.extend(cursor..=t.a + twice_k);
            // the two legs' bands touch when the trapezoid is exactly 2k tall
            cursor = (t.d - twice_k).max(t.a + twice_k + 1);
        }
        extended.extend(cursor..=hi);
        cluster.midpoints = intersect_sorted(&extended, m);
        cluster.extended = extended;
    }

    DecompTree {
        n,
        k,
        trapezoids: tall,
        clusters,
        root: 0,
        trapezoid_parent,
        trapezoid_child,
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl DecompTree {
    /// Children before parents, ending at the root cluster.
    pub fn postorder(&self) -> Vec<Node> {
        let mut out = Vec::with_capacity(self.clusters.len() + self.trapezoids.len());
        // explicit stack: (node, expanded)
        let mut stack = vec![(Node::Cluster(self.root), false)];
        while let Some((node, expanded)) = stack.pop() {
            if expanded {
                out.push(node);
                continue;
            }
            stack.push((node, true));
            match node {
                Node::Cluster(c) => {
                    for &t in self.clusters[c].children.iter().rev() {
                        stack.push((Node::Trapezoid(t), false));
                    }
                }
                Node::Trapezoid(t) => stack.push((Node::Cluster(self.trapezoid_child[t]), false)),
            }
        }
        out
    }

    pub fn extended_total(&self) -> usize {
        self.clusters.iter().map(|c| c.extended.len()).sum()
    }

    /// Indented text rendering of the tree.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        self.dump_cluster(self.root, 0, &mut out);
        out
    }

    fn dump_cluster(&self, c: usize, depth: usize, out: &mut String) {
        let cl = &self.clusters[c];
        let _ = writeln!(
            out,
            "{:indent$}cluster {} |C|={} |E|={} |M|={}",
            "",
            cl.id,
            cl.positions.len(),
            cl.extended.len(),
            cl.midpoints.len(),
            indent = 2 * depth
        );
        for &t in &cl.children {
            let tr = &self.trapezoids[t];
            let _ = writeln!(
                out,
                "{:indent$}trapezoid ({}, {}, {}, {}) height {}",
                "",
                tr.a,
                tr.b,
                tr.c,
                tr.d,
                tr.height(),
                indent = 2 * (depth + 1)
            );
            self.dump_cluster(self.trapezoid_child[t], depth + 2, out);
        }
    }
}
