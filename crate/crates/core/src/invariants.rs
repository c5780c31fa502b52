//! Structural checks over oracle tables, used by the test suites and the
//! CLI self-test. Each returns the first violation found.

use crate::band::Band;
use crate::cost::{cap_for, CostTable};
use crate::geometry::{DecompTree, Trapezoid};
use crate::lcp::LcpIndex;
use crate::lvtrap::{input_positions, process_trapezoid_with, FrontierCap};
use crate::profile::HeightProfile;

pub type Check = std::result::Result<(), String>;

/// Legs `[a..b) ∪ [c..d)` of distinct maximal trapezoids never overlap.
pub fn legs_disjoint(n: usize, trapezoids: &[Trapezoid]) -> Check {
    let mut owner = vec![usize::MAX; n];
    for (q, t) in trapezoids.iter().enumerate() {
        for p in (t.a..t.b).chain(t.c..t.d) {
            if owner[p] != usize::MAX {
                return Err(format!(
                    "position {p} lies in the legs of {:?} and {:?}",
                    trapezoids[owner[p]], t
                ));
            }
            owner[p] = q;
        }
    }
    Ok(())
}

/// `D[i, j] <= k` implies `H(m) >= max(H(i), H(j)) - 2k` on `[i..j]`.
pub fn height_bounds(profile: &HeightProfile, table: &CostTable, k: usize) -> Check {
    let n = table.n();
    let k = k as i64;
    for i in 0..=n {
        let mut low = profile.height(i);
        for j in i..=n {
            low = low.min(profile.height(j));
            if table.get(i, j) as i64 > k {
                continue;
            }
            let (hi, hj) = (profile.height(i), profile.height(j));
            if (hi - hj).abs() > 2 * k || low < hi.max(hj) - 2 * k {
                return Err(format!("D[{i}, {j}] <= {k} but heights dip to {low} from ({hi}, {hj})"));
            }
        }
    }
    Ok(())
}

/// Adjacent entries of an uncapped table differ by at most one, along rows
/// and along columns.
pub fn table_is_fully_bd(table: &CostTable) -> Check {
    let n = table.n();
    for i in 0..=n {
        for j in i..=n {
            let v = table.get(i, j) as i64;
            if i < j && (v - table.get(i + 1, j) as i64).abs() > 1 {
                return Err(format!("column step at ({i}, {j})"));
            }
            if j < n && (v - table.get(i, j + 1) as i64).abs() > 1 {
                return Err(format!("row step at ({i}, {j})"));
            }
        }
    }
    Ok(())
}

/// For each tall trapezoid, the inner one `(a, a+2k, d-2k, d)`: if
/// `D[i, j] <= k` and one index `p` lies in `(a+2k..d-2k)` strictly above
/// `H(a+2k)`, the other lies in `(a..d)`.
///
/// The height condition matters only when the trapezoid is exactly `2k`
/// tall: an interior valley at the base height can then pair with indices
/// outside.
pub fn band_confinement(profile: &HeightProfile, table: &CostTable, k: usize, trapezoids: &[Trapezoid]) -> Check {
    let n = table.n();
    for t in trapezoids.iter().filter(|t| t.is_tall(k)) {
        let (lo, hi) = (t.a + 2 * k, t.d - 2 * k);
        for p in lo + 1..hi {
            if profile.height(p) <= profile.height(lo) {
                continue;
            }
            for q in 0..=n {
                let (i, j) = if p <= q { (p, q) } else { (q, p) };
                if table.get(i, j) as usize <= k && !(t.a < q && q < t.d) {
                    return Err(format!("D[{i}, {j}] <= {k} escapes {t:?}"));
                }
            }
        }
    }
    Ok(())
}

/// On `[a..d]² \ [b-2k..c+2k]²` with `D[i, j] <= k`: `D[i, j] >= D[i+1, j-1]`.
pub fn diagonal_monotone(table: &CostTable, k: usize, trapezoids: &[Trapezoid]) -> Check {
    for t in trapezoids.iter().filter(|t| t.is_tall(k)) {
        let inner = t.b - 2 * k..=t.c + 2 * k;
        for i in t.a..=t.d {
            for j in i + 2..=t.d {
                if inner.contains(&i) && inner.contains(&j) {
                    continue;
                }
                let v = table.get(i, j);
                if v as usize <= k && v < table.get(i + 1, j - 1) {
                    return Err(format!("D[{i}, {j}] = {v} < D[{}, {}] in {t:?}", i + 1, j - 1));
                }
            }
        }
    }
    Ok(())
}

/// Size bounds of the decomposition of a reduced string with distance at
/// most `k`: at most `4k + 2` trapezoids (all maximal ones, not only tall),
/// cluster positions `O(k²)` and `|E(C)| <= |C| + (4k+2)(children + 1)`.
pub fn decomposition_bounds(maximal: usize, tree: &DecompTree) -> Check {
    let k = tree.k;
    if maximal > 4 * k + 2 {
        return Err(format!("{maximal} maximal trapezoids for k = {k}"));
    }
    let positions: usize = tree.clusters.iter().map(|c| c.positions.len()).sum();
    if positions > cluster_size_bound(k) {
        return Err(format!("{positions} cluster positions for k = {k}"));
    }
    for c in &tree.clusters {
        if c.extended.len() > c.positions.len() + (4 * k + 2) * (c.children.len() + 1) {
            return Err(format!("cluster {} has |E| = {}", c.id, c.extended.len()));
        }
    }
    let root = &tree.clusters[tree.root];
    if root.positions.first() != Some(&0) || root.positions.last() != Some(&tree.n) {
        return Err("root cluster must hold 0 and n".into());
    }
    Ok(())
}

/// From the counting argument: at most `4k` positions outside every maximal
/// trapezoid, at most `4k + 2` trapezoids, each short one contributing at
/// most `4k` positions and each tall one its four corners.
pub fn cluster_size_bound(k: usize) -> usize {
    4 * k + (4 * k + 2) * (4 * k + 4) + 1
}

/// Runs the trapezoid sweep on `t` with exact input taken from `table`, then
/// checks `L_v[(i+j) - (b+c)] >= j ⇔ D[i, j] <= v` for every `v <= k` and
/// every `(i, j) ∈ [a..b] × [c..d]` outside the input square, and the output
/// band against the table. Returns the number of predicate evaluations.
pub fn frontier_matches(
    t: &Trapezoid,
    k: usize,
    table: &CostTable,
    idx: &LcpIndex,
    rule: FrontierCap,
) -> std::result::Result<usize, String> {
    let input = Band::from_fn(input_positions(t, k), cap_for(k), |i, j| table.get(i, j));
    let out = process_trapezoid_with(t, k, &input, idx, rule).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for i in t.a..=t.b {
        for j in t.c..=t.d {
            if i + 2 * k >= t.b && j <= t.c + 2 * k {
                continue;
            }
            let delta = (i + j) as i64 - (t.b + t.c) as i64;
            for v in 0..=k {
                let lhs = table.get(i, j) as usize <= v;
                let rhs = out.table.get(v as i64, delta) >= j as i64;
                if lhs != rhs {
                    return Err(format!(
                        "{t:?} k={k} (i,j)=({i},{j}) v={v}: D<=v is {lhs}, frontier says {rhs}"
                    ));
                }
                checked += 1;
            }
        }
    }
    for &i in out.band.positions() {
        for &j in out.band.positions().iter().filter(|&&j| j >= i) {
            if out.band.get(i, j) != Some(table.get(i, j)) {
                return Err(format!("{t:?} k={k} output ({i},{j})"));
            }
        }
    }
    Ok(checked)
}
