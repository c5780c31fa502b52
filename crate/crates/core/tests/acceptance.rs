//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dyckdist::cost::{cap_for, CostTable};
use dyckdist::gen::{nested_dyck, perturbed_dyck, random_bd_matrix, rng_for};
use dyckdist::geometry::maximal_trapezoids;
use dyckdist::invariants;
use dyckdist::lcp::LcpIndex;
use dyckdist::lvtrap::FrontierCap;
use dyckdist::minplus::{minplus_bd, phase1_block_approx, BdKernel, BdMatrix, BdParams, Matrix, NaiveKernel, Strategy};
use dyckdist::oracle::{dp_cubic, exhaustive_distance, minplus_naive};
use dyckdist::solver::{solve, solve_fast, solve_k5, solve_quadratic, ClusterStrategy, SolveOptions};
use dyckdist::valiant::{valiant_fill, RestrictedRule};
use dyckdist::valleydp::dp_restricted;
use dyckdist::{HeightProfile, ParenAlphabet, ParenSeq, Symbol};
use rand::Rng;

const SEED: u64 = 0x5eed_2024;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn seq_from_index(mut code: u64, n: usize, alphabet: ParenAlphabet) -> ParenSeq {
    let syms = (0..n)
        .map(|_| {
            let x = (code % 4) as u32;
            code /= 4;
            if x < 2 {
                Symbol::open(x)
            } else {
                Symbol::close(x - 2)
            }
        })
        .collect();
    ParenSeq::new(alphabet, syms).unwrap()
}

fn exhaustive_vs_dp() -> Outcome {
    let alphabet = ParenAlphabet::new(2).unwrap();
    let mut count = 0u64;
    for n in 0..=10usize {
        for code in 0..4u64.pow(n as u32) {
            let s = seq_from_index(code, n, alphabet);
            let want = dp_cubic(&s, n).total() as usize;
            let got = exhaustive_distance(&s, n).unwrap();
            if got != want {
                return fail(format!("{s:?}: exhaustive {got}, table {want}"));
            }
            count += 1;
        }
    }
    let mut rng = rng_for(SEED, 1);
    for _ in 0..2000 {
        let n = rng.random_range(0..=14);
        let syms = (0..n)
            .map(|_| {
                let t = rng.random_range(0..2);
                if rng.random_bool(0.5) {
                    Symbol::open(t)
                } else {
                    Symbol::close(t)
                }
            })
            .collect();
        let s = ParenSeq::new(alphabet, syms).unwrap();
        let want = dp_cubic(&s, n).total() as usize;
        let got = exhaustive_distance(&s, n).unwrap();
        if got != want {
            return fail(format!("{s:?}: exhaustive {got}, table {want}"));
        }
        count += 1;
    }
    pass(format!("{count} strings agree"))
}

/// Half plain perturbed Dyck words, half deep nestings with planted edits.
fn ladder_instance<R: Rng>(rng: &mut R, i: usize) -> (ParenSeq, usize) {
    let types = rng.random_range(1..=3);
    let edits = rng.random_range(0..=10);
    let g = if i.is_multiple_of(2) {
        let n = rng.random_range(0..=400);
        perturbed_dyck(rng, n, types, edits)
    } else {
        let depth = rng.random_range(0..=120);
        let inner = rng.random_range(0..=100);
        let context = rng.random_range(0..=(400 - 2 * depth - inner) / 2);
        nested_dyck(rng, depth, inner, context, types, edits)
    };
    (g.seq, edits)
}

fn ladder() -> Outcome {
    let mut rng = rng_for(SEED, 2);
    let mut runs = 0u64;
    let mut valiant_runs = 0u64;
    let mut exceeded = 0u64;
    for i in 0..1000 {
        let (s, edits) = ladder_instance(&mut rng, i);
        let top = edits + 3;
        let full = dp_cubic(&s, top);
        let mut ks = vec![edits, top];
        if edits > 0 {
            ks.push(edits - 1);
        }
        for k in ks {
            let want = full.recapped(cap_for(k)).total();
            exceeded += (want == cap_for(k)) as u64;
            let quad = solve_quadratic(&s, k);
            let k5 = solve_k5(&s, k);
            if quad != want || k5 != Ok(want) {
                return fail(format!("instance {i} k={k}: table {want}, quadratic {quad}, k5 {k5:?}"));
            }
            for strategy in [Strategy::Random, Strategy::Greedy] {
                for seed in [1, 2] {
                    let params = BdParams {
                        strategy,
                        seed,
                        ..Default::default()
                    };
                    let fast = solve_fast(&s, k, params);
                    // same kernel with the recursion forced on every cluster
                    let opts = SolveOptions {
                        clusters: ClusterStrategy::Valiant { params, naive_below: 0 },
                        check: false,
                    };
                    let forced = solve(&s, k, &opts).map(|x| {
                        valiant_runs += (x.stats.valiant_clusters > 0) as u64;
                        x.distance
                    });
                    if fast != Ok(want) || forced != Ok(want) {
                        return fail(format!(
                            "instance {i} k={k} {strategy} seed {seed}: table {want}, fast {fast:?}, forced {forced:?}"
                        ));
                    }
                    runs += 2;
                }
            }
        }
    }
    pass(format!(
        "1000 instances, {runs} fast runs ({valiant_runs} through the recursion), {exceeded} capped answers"
    ))
}

/// `D[I, K]` and `D[K, J]` from an uncapped table, with `I` before `K` and `J` after.
fn harvested<R: Rng>(rng: &mut R) -> (BdMatrix, BdMatrix) {
    let n = rng.random_range(40..=200);
    let edits = rng.random_range(0..=12);
    let s = perturbed_dyck(rng, n, 2, edits).seq;
    let n = s.len();
    let d = dp_cubic(&s, n);
    let rows = rng.random_range(1..=(n / 3).clamp(1, 128));
    let cols = rng.random_range(1..=(n / 3).clamp(1, 128));
    let inner = rng.random_range(1..=11usize);
    let k_lo = rows - 1 + rng.random_range(0..=(n - rows - cols).min(10));
    let k_hi = (n + 1 - cols).max(k_lo + 1);
    let mut ks: Vec<usize> = (0..inner).map(|_| rng.random_range(k_lo..k_hi)).collect();
    ks.sort_unstable();
    ks.dedup();
    let i0 = k_lo + 1 - rows;
    let j0 = ks[ks.len() - 1].max(n + 1 - cols);
    let j1 = (j0 + cols).min(n + 1);
    let get = |i: usize, j: usize| d.get(i, j) as i64;
    let a = Matrix::from_fn(rows, ks.len(), |x, y| get(i0 + x, ks[y]));
    let b = Matrix::from_fn(ks.len(), j1 - j0, |x, y| get(ks[x], j0 + y));
    (BdMatrix::column(a).unwrap(), BdMatrix::row(b).unwrap())
}

fn bd_instances() -> Vec<(BdMatrix, BdMatrix)> {
    let mut rng = rng_for(SEED, 3);
    let mut out = Vec::with_capacity(600);
    for _ in 0..500 {
        let n = rng.random_range(1..=128);
        let s = rng.random_range(1..=11);
        let m = rng.random_range(1..=128);
        let spread = rng.random_range(0..=40);
        let a = BdMatrix::column(random_bd_matrix(&mut rng, n, s, true, spread)).unwrap();
        let b = BdMatrix::row(random_bd_matrix(&mut rng, s, m, false, spread)).unwrap();
        out.push((a, b));
    }
    for _ in 0..100 {
        out.push(harvested(&mut rng));
    }
    out
}

fn minplus_exact(instances: &[(BdMatrix, BdMatrix)]) -> Outcome {
    let settings = [(None, None), (Some(2), Some(4)), (Some(8), Some(2))];
    let mut products = 0;
    for (x, (a, b)) in instances.iter().enumerate() {
        let want = minplus_naive(a.matrix(), b.matrix()).unwrap();
        if !want.is_fully_bd() {
            return fail(format!("instance {x}: naive product is not fully-BD"));
        }
        for strategy in [Strategy::Random, Strategy::Greedy] {
            for (delta, rho) in settings {
                let params = BdParams {
                    delta,
                    rho,
                    strategy,
                    seed: x as u64,
                };
                let got = minplus_bd(a, b, &params).unwrap();
                if got != want {
                    return fail(format!("instance {x} {strategy} delta={delta:?} rho={rho:?} differs"));
                }
                if !got.is_fully_bd() {
                    return fail(format!("instance {x}: output is not fully-BD"));
                }
                products += 1;
            }
        }
    }
    pass(format!(
        "{} instances, {products} products exact and fully-BD",
        instances.len()
    ))
}

fn block_approx_bound(instances: &[(BdMatrix, BdMatrix)]) -> Outcome {
    let mut worst = [0i64; 3];
    for (x, (a, b)) in instances.iter().enumerate() {
        let c = minplus_naive(a.matrix(), b.matrix()).unwrap();
        for (w, delta) in [1usize, 4, 16].into_iter().enumerate() {
            let approx = phase1_block_approx(a, b, delta).unwrap();
            for i in 0..c.rows() {
                for j in 0..c.cols() {
                    let err = (approx.get(i, j) - c.get(i, j)).abs();
                    worst[w] = worst[w].max(err);
                    if err > 2 * delta as i64 {
                        return fail(format!("instance {x} delta={delta}: error {err} at ({i}, {j})"));
                    }
                }
            }
        }
    }
    pass(format!(
        "max error {} / {} / {} for delta 1 / 4 / 16",
        worst[0], worst[1], worst[2]
    ))
}

fn frontier() -> Outcome {
    let mut rng = rng_for(SEED, 5);
    let (mut trapezoids, mut evaluations, mut strings) = (0, 0, 0);
    while trapezoids < 200 {
        let k = rng.random_range(0..=8);
        let depth = rng.random_range(2 * k..=2 * k + 60);
        let inner = rng.random_range(0..=60);
        let context = rng.random_range(0..=(300 - 2 * depth - inner) / 2);
        let edits = rng.random_range(0..=k + 2);
        let types = rng.random_range(1..=3);
        let s = nested_dyck(&mut rng, depth, inner, context, types, edits).seq;
        let table = dp_cubic(&s, k);
        let idx = LcpIndex::new(&s);
        strings += 1;
        for t in maximal_trapezoids(&s).into_iter().filter(|t| t.is_tall(k)) {
            match invariants::frontier_matches(&t, k, &table, &idx, FrontierCap::Square) {
                Ok(c) => evaluations += c,
                Err(e) => return fail(e),
            }
            trapezoids += 1;
        }
    }
    pass(format!(
        "{trapezoids} tall trapezoids from {strings} strings, {evaluations} predicate checks"
    ))
}

fn structural() -> Outcome {
    let mut rng = rng_for(SEED, 6);
    let mut unrestricted_escapes = 0;
    for x in 0..500 {
        let k = rng.random_range(0..=5);
        let edits = rng.random_range(0..=k + 3);
        let s = if x % 2 == 0 {
            let n = rng.random_range(0..=120);
            perturbed_dyck(&mut rng, n, 2, edits).seq
        } else {
            let depth = rng.random_range(0..=2 * k + 30);
            let inner = rng.random_range(0..=30);
            let context = rng.random_range(0..=20);
            nested_dyck(&mut rng, depth, inner, context, 2, edits).seq
        };
        let n = s.len();
        let full = dp_cubic(&s, n.max(k));
        let table = full.recapped(cap_for(k));
        let profile = HeightProfile::new(&s);
        let traps = maximal_trapezoids(&s);
        let checks = [
            ("legs disjoint", invariants::legs_disjoint(n, &traps)),
            (
                "band confinement",
                invariants::band_confinement(&profile, &table, k, &traps),
            ),
            ("diagonal monotone", invariants::diagonal_monotone(&table, k, &traps)),
            ("height bounds", invariants::height_bounds(&profile, &table, k)),
            ("table fully BD", invariants::table_is_fully_bd(&full)),
        ];
        for (name, c) in checks {
            if let Err(e) = c {
                return fail(format!("{name} on instance {x}: {e}"));
            }
        }
        unrestricted_escapes += printed_confinement_violations(&profile, &table, k, &traps);
    }
    pass(format!(
        "500 instances x 5 invariants, 0 violations \
         (band confinement checked strictly above the base height; \
         unrestricted form has {unrestricted_escapes} counterexamples at exactly-2k trapezoids)"
    ))
}

/// Escapes from indices at the base height of exactly-`2k` trapezoids.
fn printed_confinement_violations(
    profile: &HeightProfile,
    table: &CostTable,
    k: usize,
    traps: &[dyckdist::geometry::Trapezoid],
) -> usize {
    let n = table.n();
    let mut count = 0;
    for t in traps.iter().filter(|t| t.is_tall(k)) {
        let (lo, hi) = (t.a + 2 * k, t.d - 2 * k);
        for p in (lo + 1..hi).filter(|&p| profile.height(p) == profile.height(lo)) {
            for q in (0..=n).filter(|&q| !(t.a < q && q < t.d)) {
                let (i, j) = if p <= q { (p, q) } else { (q, p) };
                count += (table.get(i, j) as usize <= k) as usize;
            }
        }
    }
    count
}

fn median_time(s: &ParenSeq, k: usize) -> Duration {
    let mut times: Vec<Duration> = (0..5)
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(solve_k5(std::hint::black_box(s), k).unwrap());
            start.elapsed()
        })
        .collect();
    times.sort();
    times[2]
}

fn scaling_instance(n: usize, k: usize) -> ParenSeq {
    let mut rng = rng_for(SEED, 7 + n as u64 * 31 + k as u64);
    perturbed_dyck(&mut rng, n, 3, k).seq
}

fn scaling() -> Outcome {
    let k = 8;
    let times: Vec<(usize, Duration)> = (16..=19)
        .map(|e| {
            let n = 1usize << e;
            (n, median_time(&scaling_instance(n, k), k))
        })
        .collect();
    let mut detail: Vec<String> = times
        .iter()
        .map(|(n, t)| format!("n={n}: {:.2}ms", t.as_secs_f64() * 1e3))
        .collect();
    let mut ok = true;
    for w in times.windows(2) {
        let ratio = w[1].1.as_secs_f64() / w[0].1.as_secs_f64();
        detail.push(format!("x{ratio:.2}"));
        ok &= ratio <= 3.0;
    }
    let n = 1 << 16;
    let t8 = median_time(&scaling_instance(n, 8), 8);
    let t16 = median_time(&scaling_instance(n, 16), 16);
    let ratio = t16.as_secs_f64() / t8.as_secs_f64();
    detail.push(format!("k=16 vs k=8 at n=2^16: x{ratio:.2}"));
    ok &= ratio <= 40.0;
    Outcome {
        ok,
        detail: detail.join(", "),
    }
}

fn valiant() -> Outcome {
    let mut rng = rng_for(SEED, 8);
    let mut recursed = 0;
    for x in 0..300 {
        let n = rng.random_range(0..=60);
        let k = rng.random_range(0..=8);
        let edits = rng.random_range(0..=k + 2);
        let types = rng.random_range(1..=3);
        let s = perturbed_dyck(&mut rng, n, types, edits).seq;
        let want = dp_restricted(&s, k);
        let rule = RestrictedRule::new(&s, k);
        let strategy = if x % 2 == 0 { Strategy::Greedy } else { Strategy::Random };
        let mut bd = BdKernel::new(BdParams {
            strategy,
            seed: x,
            ..Default::default()
        });
        let mut naive = NaiveKernel::default();
        for kernel in [&mut naive as &mut dyn dyckdist::minplus::MinPlusKernel, &mut bd] {
            let (a, stats) = match valiant_fill(&rule, kernel, true) {
                Ok(r) => r,
                Err(e) => return fail(format!("instance {x}: {e}")),
            };
            recursed += (stats.updates > 0) as usize;
            let m = s.len();
            for i in 0..=m {
                for j in i..=m {
                    if a.get(i, j) != want.get(i, j) as i64 {
                        return fail(format!("instance {x}: entry ({i}, {j})"));
                    }
                }
            }
        }
    }
    pass(format!(
        "300 instances x 2 kernels equal the table ({recursed} runs issued kernel updates)"
    ))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>, Option<f64>);

fn main() -> ExitCode {
    let bd = bd_instances();
    // (name, check, wall-clock budget in seconds)
    let criteria: Vec<Criterion> = vec![
        (
            "exhaustive search equals the cubic table",
            Box::new(exhaustive_vs_dp),
            Some(120.0),
        ),
        ("algorithm ladder agreement", Box::new(ladder), Some(600.0)),
        ("BD min-plus exactness", Box::new(|| minplus_exact(&bd)), Some(300.0)),
        (
            "block approximation within 2 delta",
            Box::new(|| block_approx_bound(&bd)),
            None,
        ),
        ("trapezoid frontier predicate", Box::new(frontier), None),
        ("structural invariants", Box::new(structural), None),
        ("scaling sanity", Box::new(scaling), None),
        ("interval recursion equivalence", Box::new(valiant), None),
    ];
    let mut failed = 0;
    for (number, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = run();
        let secs = start.elapsed().as_secs_f64();
        if let Some(limit) = budget.filter(|&l| secs > l) {
            out.ok = false;
            out.detail.push_str(&format!("; over the {limit:.0}s budget"));
        }
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("{tag} {} {name}: {} [{secs:.1}s]", number + 1, out.detail);
        failed += !out.ok as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
