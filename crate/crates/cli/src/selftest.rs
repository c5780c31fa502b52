//! Cross-validation matrix: all algorithm pairs plus the invariant suites,
//! on instances drawn from one seed.

use std::collections::BTreeMap;

use anyhow::Result;
use dyckdist::codec::{format, parse, Encoding};
use dyckdist::cost::cap_for;
use dyckdist::gen::{nested_dyck, perturbed_dyck, random_bd_matrix, rng_for};
use dyckdist::geometry::maximal_trapezoids;
use dyckdist::invariants;
use dyckdist::minplus::{minplus_bd, BdKernel, BdMatrix, BdParams, NaiveKernel, Strategy};
use dyckdist::oracle::{dp_cubic, exhaustive_distance, minplus_naive};
use dyckdist::solver::{solve, solve_k5, solve_quadratic, ClusterStrategy, SolveOptions};
use dyckdist::valiant::{valiant_fill, RestrictedRule};
use dyckdist::valleydp::dp_restricted;
use dyckdist::{Error, HeightProfile};
use rand::Rng;

#[derive(Default)]
struct Tally {
    counts: BTreeMap<&'static str, (usize, usize)>,
    first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, name: &'static str, outcome: std::result::Result<(), String>) {
        let e = self.counts.entry(name).or_default();
        match outcome {
            Ok(()) => e.0 += 1,
            Err(msg) => {
                e.1 += 1;
                self.first_failure.get_or_insert(format!("{name}: {msg}"));
            }
        }
    }
}

fn agree(name: &str, got: u32, want: u32) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{name} gave {got}, table {want}"))
    }
}

pub fn run(max_n: usize, trials: usize, seed: u64) -> Result<()> {
    let mut rng = rng_for(seed, 0);
    let mut tally = Tally::default();
    for trial in 0..trials {
        let k = rng.random_range(0..=6);
        let types = rng.random_range(1..=3);
        let edits = rng.random_range(0..=k + 2);
        let s = if trial % 2 == 0 {
            let n = rng.random_range(0..=max_n);
            perturbed_dyck(&mut rng, n, types, edits).seq
        } else {
            let depth = rng.random_range(0..=max_n / 2);
            let rest = (max_n - 2 * depth) / 2;
            let inner = rng.random_range(0..=rest);
            nested_dyck(&mut rng, depth, inner, rest - inner, types, edits).seq
        };
        let n = s.len();

        tally.record(
            "codec round trip",
            [Encoding::Ascii, Encoding::Tokens].into_iter().try_for_each(|enc| {
                let text = format(&s, enc).map_err(|e| e.to_string())?;
                let back = parse(&text, enc).map_err(|e| e.to_string())?;
                if back.symbols() == s.symbols() {
                    Ok(())
                } else {
                    Err(format!("{enc} changed {text:?}"))
                }
            }),
        );

        let full = dp_cubic(&s, n.max(k));
        let table = full.recapped(cap_for(k));
        let want = table.total();
        if n <= 12 {
            let ex = exhaustive_distance(&s, k).map_err(|e| e.to_string());
            tally.record(
                "exhaustive = cubic",
                ex.and_then(|d| agree("exhaustive", d as u32, want)),
            );
        }
        tally.record("valley = cubic", agree("valley", solve_quadratic(&s, k), want));
        tally.record(
            "k5 = cubic",
            solve_k5(&s, k)
                .map_err(|e| e.to_string())
                .and_then(|d| agree("k5", d, want)),
        );
        for strategy in [Strategy::Greedy, Strategy::Random] {
            let params = BdParams {
                strategy,
                seed: trial as u64,
                ..Default::default()
            };
            for naive_below in [0, dyckdist::solver::NAIVE_BELOW] {
                let opts = SolveOptions {
                    clusters: ClusterStrategy::Valiant { params, naive_below },
                    check: true,
                };
                let d = solve(&s, k, &opts).map(|x| x.distance).map_err(|e| e.to_string());
                tally.record("fast = cubic", d.and_then(|d| agree("fast", d, want)));
            }
        }

        let profile = HeightProfile::new(&s);
        let traps = maximal_trapezoids(&s);
        tally.record("legs disjoint", invariants::legs_disjoint(n, &traps));
        tally.record("height bounds", invariants::height_bounds(&profile, &table, k));
        tally.record(
            "band confinement",
            invariants::band_confinement(&profile, &table, k, &traps),
        );
        tally.record("diagonal monotone", invariants::diagonal_monotone(&table, k, &traps));
        tally.record("table fully BD", invariants::table_is_fully_bd(&full));

        let rule = RestrictedRule::new(&s, k);
        let restricted = dp_restricted(&s, k);
        let mut bd = BdKernel::new(BdParams {
            seed: trial as u64,
            ..Default::default()
        });
        let mut naive = NaiveKernel::default();
        for kernel in [&mut naive as &mut dyn dyckdist::minplus::MinPlusKernel, &mut bd] {
            let outcome = valiant_fill(&rule, kernel, true)
                .map_err(|e| e.to_string())
                .and_then(|(a, _)| {
                    for i in 0..=n {
                        for j in i..=n {
                            if a.get(i, j) != restricted.get(i, j) as i64 {
                                return Err(format!("entry ({i}, {j})"));
                            }
                        }
                    }
                    Ok(())
                });
            tally.record("recursion = restricted table", outcome);
        }

        let (rows, inner, cols) = (
            rng.random_range(1..=48),
            rng.random_range(1..=11),
            rng.random_range(1..=48),
        );
        let a = BdMatrix::column(random_bd_matrix(&mut rng, rows, inner, true, 12))?;
        let b = BdMatrix::row(random_bd_matrix(&mut rng, inner, cols, false, 12))?;
        let c = minplus_naive(a.matrix(), b.matrix())?;
        for strategy in [Strategy::Greedy, Strategy::Random] {
            let params = BdParams {
                strategy,
                seed: trial as u64,
                ..Default::default()
            };
            let got = minplus_bd(&a, &b, &params)?;
            let ok = if got != c {
                Err("differs from the naive product".to_string())
            } else if !got.is_fully_bd() {
                Err("product is not fully BD".to_string())
            } else {
                Ok(())
            };
            tally.record("BD product = naive", ok);
        }
    }

    let mut failed = 0;
    for (name, (pass, fail)) in &tally.counts {
        println!("{:<30} {pass:>6} pass {fail:>4} fail", name);
        failed += fail;
    }
    match tally.first_failure {
        None => {
            println!("all {trials} trials passed (seed {seed})");
            Ok(())
        }
        Some(first) => Err(Error::Invariant(format!("{failed} failed checks, first: {first}")).into()),
    }
}
