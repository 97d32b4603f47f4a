//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

mod common;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use ccsc_core::bench::{run_sweep, Param, Suite, Sweep};
use ccsc_core::generators::{gen_sc_grid, gen_sc_line, gen_sc_tree, gen_star_instance, with_random_rho, GridMode};
use ccsc_core::grid::{check_laminar_conjecture, solve_grid_bicriterial, solve_grid_laminar, ConjectureOutcome};
use ccsc_core::line::{check_line_monge, solve_line_dp, solve_line_egal_threshold, solve_line_klink};
use ccsc_core::oracle::{brute_force, brute_force_tiling, DEFAULT_BUDGET};
use ccsc_core::tree::{solve_tree_dp, subtree_sizes};
use ccsc_core::validation::check_sc_tree;
use ccsc_core::{GridShape, Objective, PreferenceProfile, RootedTree};
use common::*;
use num_rational::Rational64;
use rand::Rng;

const UTIL: Objective = Objective::Utilitarian;
const EGAL: Objective = Objective::Egalitarian;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn check(failures: &[String], detail: String) -> Self {
        match failures.first() {
            None => Outcome { pass: true, detail },
            Some(_) => Outcome {
                pass: false,
                detail: format!(
                    "{} failure(s): {}",
                    failures.len(),
                    failures.iter().take(5).cloned().collect::<Vec<_>>().join("; ")
                ),
            },
        }
    }
}

/// Optionally swaps Borda for random integer values with ties.
fn maybe_random_rho(seed: u64, p: PreferenceProfile, random: bool) -> PreferenceProfile {
    if random {
        with_random_rho(seed, &p, 3)
    } else {
        p
    }
}

fn line_instance(seed: u64, n_max: usize, m_max: usize, k_max: usize) -> (PreferenceProfile, Vec<usize>, usize) {
    let mut rng = param_rng(seed);
    let n = rng.gen_range(1..=n_max);
    let m = rng.gen_range(1..=m_max);
    let k = rng.gen_range(1..=k_max.min(m));
    let (p, order) = gen_sc_line(seed, n, m).unwrap();
    let p = maybe_random_rho(seed, p, rng.gen_bool(0.5));
    (p, order.as_slice().to_vec(), k)
}

fn tree_instance(seed: u64, n_max: usize, m_max: usize, k_max: usize) -> (PreferenceProfile, RootedTree, usize) {
    let mut rng = param_rng(seed);
    let n = rng.gen_range(1..=n_max);
    let m = rng.gen_range(1..=m_max);
    let k = rng.gen_range(1..=k_max.min(m));
    let (p, t) = gen_sc_tree(seed, n, m).unwrap();
    let p = maybe_random_rho(seed, p, rng.gen_bool(0.5));
    (p, t, k)
}

fn grid_instance(seed: u64, n1: usize, n2: usize, m: usize, random_rho: bool) -> (PreferenceProfile, GridShape) {
    let mode = if seed % 4 == 3 {
        GridMode::Rejection {
            edits: 1,
            max_attempts: 2000,
        }
    } else {
        GridMode::Product
    };
    let (p, g) = gen_sc_grid(seed, n1, n2, m, mode)
        .or_else(|_| gen_sc_grid(seed, n1, n2, m, GridMode::Product))
        .unwrap();
    (maybe_random_rho(seed, p, random_rho), g)
}

fn c1_line_oracle() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let count = 600;
    for seed in 0..count {
        let (p, order, k) = line_instance(seed, 8, 6, 4);
        let got = solve_line_dp(&p, &order, k, UTIL).unwrap().total_cost;
        let want = naive_cc(&p, k, UTIL);
        if got != want {
            failures.push(format!("seed {seed}: dp {got} vs oracle {want}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome::check(&failures, format!("{count} instances equal, {:.2}s", elapsed.as_secs_f64()))
}

fn c2_klink_vs_dp() -> Outcome {
    let mut failures = Vec::new();
    let count = 600;
    for seed in 0..count {
        let (p, order, k) = line_instance(10_000 + seed, 40, 8, 6);
        let dp = solve_line_dp(&p, &order, k, UTIL).unwrap().total_cost;
        let kl = solve_line_klink(&p, &order, k).unwrap().total_cost;
        if dp != kl {
            failures.push(format!("seed {}: dp {dp} vs klink {kl}", 10_000 + seed));
        }
    }
    Outcome::check(&failures, format!("{count} instances equal"))
}

fn c3_monge() -> Outcome {
    let mut failures = Vec::new();
    let count = 1000;
    let mut quads = 0u64;
    for seed in 0..count {
        let mut rng = param_rng(20_000 + seed);
        let n = rng.gen_range(2..=12);
        let m = rng.gen_range(1..=6);
        let (p, order) = gen_sc_line(20_000 + seed, n, m).unwrap();
        let p = maybe_random_rho(seed, p, rng.gen_bool(0.5));
        let order = order.as_slice();
        if let Err(at) = check_line_monge(&p, order) {
            failures.push(format!("seed {}: checker reports {at:?}", 20_000 + seed));
        }
        // independent pass over all quadruples from raw values
        let omega = |i: usize, j: usize| {
            (0..m)
                .map(|c| order[i..j].iter().map(|&v| p.rho_at(v, c)).sum::<Rational64>())
                .min()
                .unwrap()
        };
        for i in 0..n {
            for j in i + 2..n {
                quads += 1;
                if omega(i, j) + omega(i + 1, j + 1) > omega(i, j + 1) + omega(i + 1, j) {
                    failures.push(format!("seed {}: violation at ({i}, {j})", 20_000 + seed));
                }
            }
        }
    }
    Outcome::check(&failures, format!("{count} instances, {quads} quadruples, 0 violations"))
}

fn c4_tree_oracle() -> Outcome {
    let mut failures = Vec::new();
    let count = 600;
    for seed in 0..count {
        let (p, t, k) = tree_instance(30_000 + seed, 8, 6, 4);
        for obj in [UTIL, EGAL] {
            let got = solve_tree_dp(&p, &t, k, obj).unwrap().cost(obj);
            let want = naive_cc(&p, k, obj);
            if got != want {
                failures.push(format!("seed {} {}: tree {got} vs oracle {want}", 30_000 + seed, obj.name()));
            }
        }
    }
    let paths = 300;
    for seed in 0..paths {
        let (p, order, k) = line_instance(35_000 + seed, 8, 6, 4);
        let path = RootedTree::path(&order).unwrap();
        for obj in [UTIL, EGAL] {
            let tree = solve_tree_dp(&p, &path, k, obj).unwrap().cost(obj);
            let line = solve_line_dp(&p, &order, k, obj).unwrap().cost(obj);
            if tree != line {
                failures.push(format!("path seed {} {}: tree {tree} vs line {line}", 35_000 + seed, obj.name()));
            }
        }
    }
    Outcome::check(&failures, format!("{count} trees x 2 objectives, {paths} path trees"))
}

fn c5_pair_identity() -> Outcome {
    let mut failures = Vec::new();
    let count = 1000;
    for seed in 0..count {
        let n = param_rng(40_000 + seed).gen_range(1..=60);
        let (_, t) = gen_sc_tree(40_000 + seed, n, 2).unwrap();
        let sizes = subtree_sizes(&t);
        if sizes.size != naive_subtree_sizes(&t) {
            failures.push(format!("seed {}: subtree sizes differ from ancestor count", 40_000 + seed));
            continue;
        }
        let total: usize = (0..n)
            .map(|v| {
                t.children(v)
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| sizes.size[c] * sizes.partial[v][i + 1])
                    .sum::<usize>()
            })
            .sum();
        if total != n * (n - 1) / 2 {
            failures.push(format!("seed {}: sum {total} vs C({n},2)", 40_000 + seed));
        }
    }
    Outcome::check(&failures, format!("{count} trees"))
}

fn c6_conjecture() -> Outcome {
    let mut failures = Vec::new();
    let mut warnings = Vec::new();
    let mut persisted = String::new();
    let mut count = 0;
    for n1 in 1..=4 {
        for n2 in 1..=5 {
            for k in 1..=5 {
                for rep in 0..3u64 {
                    let seed = 50_000 + count;
                    count += 1;
                    let m = param_rng(seed).gen_range(2..=6);
                    let (p, g) = grid_instance(seed, n1, n2, m, rep == 2);
                    match check_laminar_conjecture(&p, &g, k, DEFAULT_BUDGET) {
                        Ok(ConjectureOutcome::Holds { .. }) => {}
                        Ok(outcome @ ConjectureOutcome::Counterexample { .. }) => {
                            let line = format!("seed {seed} grid {n1}x{n2} m {m} k {k} gap {}", outcome.gap());
                            writeln!(persisted, "{line} {outcome:?}").unwrap();
                            if k <= 4 {
                                failures.push(line);
                            } else {
                                warnings.push(line);
                            }
                        }
                        Err(e) => failures.push(format!("seed {seed}: {e}")),
                    }
                }
            }
        }
    }
    if !persisted.is_empty() {
        let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("conjecture_counterexamples.txt");
        std::fs::write(&path, &persisted).unwrap();
    }
    for w in &warnings {
        println!("WARN criterion  6: k = 5 counterexample: {w}");
    }
    Outcome::check(
        &failures,
        format!("{count} instances, 0 counterexamples for k <= 4, {} warnings for k = 5", warnings.len()),
    )
}

fn c7_sandwich() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n1 in 1..=3 {
        for n2 in 1..=4 {
            for k in 1..=4 {
                for rep in 0..7u64 {
                    let seed = 60_000 + count;
                    count += 1;
                    let m = param_rng(seed).gen_range(2..=6);
                    let (p, g) = grid_instance(seed, n1, n2, m, rep % 2 == 1);
                    let bi = solve_grid_bicriterial(&p, &g, k).unwrap().cost();
                    let opt = brute_force_tiling(&p, &g, k, DEFAULT_BUDGET).unwrap().cost();
                    let lam = solve_grid_laminar(&p, &g, k).unwrap().cost();
                    let committees = naive_cc(&p, k, UTIL);
                    if !(bi <= opt && opt <= lam) {
                        failures.push(format!("seed {seed}: {bi} <= {opt} <= {lam} fails"));
                    }
                    if opt != committees {
                        failures.push(format!("seed {seed}: best tiling {opt} vs best committee {committees}"));
                    }
                }
            }
        }
    }
    Outcome::check(&failures, format!("{count} instances sandwiched; tiling optimum = committee optimum"))
}

fn fibers(rep: &[usize]) -> Vec<Vec<bool>> {
    let mut committee: Vec<usize> = rep.to_vec();
    committee.sort_unstable();
    committee.dedup();
    committee.iter().map(|&c| rep.iter().map(|&r| r == c).collect()).collect()
}

fn nonincreasing(costs: &[Rational64]) -> bool {
    costs.windows(2).all(|w| w[1] <= w[0])
}

fn c8_monotone_and_structure() -> Outcome {
    let mut failures = Vec::new();
    let zero = Rational64::from_integer(0);
    let count = 200u64;
    for seed in 0..count {
        // lines
        let mut rng = param_rng(70_000 + seed);
        let (n, m) = (rng.gen_range(1..=10), rng.gen_range(1..=6));
        let (p, order) = gen_sc_line(70_000 + seed, n, m).unwrap();
        let order = order.as_slice();
        let results: Vec<_> = (1..=m).map(|k| solve_line_dp(&p, order, k, UTIL).unwrap()).collect();
        if !nonincreasing(&results.iter().map(|r| r.total_cost).collect::<Vec<_>>()) {
            failures.push(format!("line seed {seed}: cost increases with k"));
        }
        if results[n.min(m) - 1].total_cost != zero {
            failures.push(format!("line seed {seed}: Borda cost nonzero at k = min(m, n)"));
        }
        for r in &results {
            let along: Vec<usize> = order.iter().map(|&v| r.assignment.representative(v)).collect();
            for f in fibers(&along) {
                let first = f.iter().position(|&x| x).unwrap();
                let last = f.iter().rposition(|&x| x).unwrap();
                if !f[first..=last].iter().all(|&x| x) {
                    failures.push(format!("line seed {seed}: a representative's voters are not contiguous"));
                }
            }
        }

        // trees
        let (p, t) = gen_sc_tree(71_000 + seed, n, m).unwrap();
        let adj = tree_adjacency(&t);
        let results: Vec<_> = (1..=m).map(|k| solve_tree_dp(&p, &t, k, UTIL).unwrap()).collect();
        for obj in [UTIL, EGAL] {
            let costs: Vec<_> = (1..=m).map(|k| solve_tree_dp(&p, &t, k, obj).unwrap().cost(obj)).collect();
            if !nonincreasing(&costs) {
                failures.push(format!("tree seed {seed}: {} cost increases with k", obj.name()));
            }
        }
        if results[n.min(m) - 1].total_cost != zero {
            failures.push(format!("tree seed {seed}: Borda cost nonzero at k = min(m, n)"));
        }
        for r in &results {
            if !fibers(r.assignment.rep()).iter().all(|f| connected(&adj, f)) {
                failures.push(format!("tree seed {seed}: a representative's voters are disconnected"));
            }
        }

        // grids
        let (n1, n2) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
        let (p, g) = grid_instance(72_000 + seed, n1, n2, m, false);
        let cells = g.len();
        let lam: Vec<_> = (1..=cells).map(|k| solve_grid_laminar(&p, &g, k).unwrap().cost()).collect();
        if !nonincreasing(&lam) {
            failures.push(format!("grid seed {seed}: laminar cost increases with k"));
        }
        if lam[cells.min(m) - 1] != zero {
            failures.push(format!("grid seed {seed}: Borda cost nonzero at k = min(m, n)"));
        }
        for k in 1..=m.min(4) {
            let r = brute_force(&p, k, UTIL, DEFAULT_BUDGET).unwrap();
            if !fibers(r.assignment.rep()).iter().all(|f| is_rectangle(&g, f)) {
                failures.push(format!("grid seed {seed}: a canonical fiber is not a rectangle"));
            }
        }
    }
    Outcome::check(&failures, format!("{count} seeds each of line, tree, grid"))
}

fn c9_egalitarian() -> Outcome {
    let mut failures = Vec::new();
    let count = 400;
    for seed in 0..count {
        let (p, order, k) = line_instance(80_000 + seed, 10, 6, 4);
        let threshold = solve_line_egal_threshold(&p, &order, k).unwrap().egal_cost;
        let maxdp = solve_line_dp(&p, &order, k, EGAL).unwrap().egal_cost;
        let oracle = naive_cc(&p, k, EGAL);
        if threshold != maxdp || maxdp != oracle {
            failures.push(format!("seed {}: threshold {threshold}, max-dp {maxdp}, oracle {oracle}", 80_000 + seed));
        }
    }
    Outcome::check(&failures, format!("{count} instances agree"))
}

fn c10_complexity() -> Outcome {
    let mut failures = Vec::new();
    let mut detail = String::new();
    // fixed parameters keep the swept term dominant over O(nm) setup
    let sweeps = [
        (Suite::Line, Param::N, 50_000, 16, 8),
        (Suite::Line, Param::M, 50_000, 8, 4),
        (Suite::Line, Param::K, 10_000, 256, 4),
        (Suite::Tree, Param::N, 5_000, 16, 16),
        (Suite::Tree, Param::M, 5_000, 16, 16),
        (Suite::Tree, Param::K, 2_000, 128, 8),
    ];
    for (suite, param, n, m, k) in sweeps {
        let sweep = Sweep {
            suite,
            param,
            n,
            m,
            k,
            steps: 3,
            reps: 5,
            seed: 7,
        };
        let report = run_sweep(&sweep).unwrap();
        write!(detail, "{} {}: {:.2}; ", suite.algorithm(), param.name(), report.time_slope).unwrap();
        if !(0.75..=1.25).contains(&report.time_slope) {
            failures.push(format!(
                "{} slope in {} is {:.3} (counter slope {:.3})",
                suite.algorithm(),
                param.name(),
                report.time_slope,
                report.counter_slope
            ));
        }
    }

    let (p, order) = gen_sc_line(11, 100_000, 50).unwrap();
    let start = Instant::now();
    solve_line_dp(&p, order.as_slice(), 10, UTIL).unwrap();
    let big = start.elapsed();
    write!(detail, "n=1e5 m=50 k=10: {:.2}s; ", big.as_secs_f64()).unwrap();
    if big > Duration::from_secs(10) {
        failures.push(format!("line-dp n=1e5 m=50 k=10 took {big:?}"));
    }

    let (p, order) = gen_sc_line(12, 100_000, 20).unwrap();
    let start = Instant::now();
    let dp = solve_line_dp(&p, order.as_slice(), 20, UTIL).unwrap();
    let dp_time = start.elapsed();
    let start = Instant::now();
    let kl = solve_line_klink(&p, order.as_slice(), 1000).unwrap();
    let kl_time = start.elapsed();
    write!(
        detail,
        "m=20: line-klink k=1000 {:.3}s vs line-dp k=20 {:.3}s",
        kl_time.as_secs_f64(),
        dp_time.as_secs_f64()
    )
    .unwrap();
    if kl.total_cost != dp.total_cost {
        failures.push(format!("klink {} vs dp {}", kl.total_cost, dp.total_cost));
    }
    if kl_time >= dp_time {
        failures.push(format!("line-klink {kl_time:?} not faster than line-dp {dp_time:?}"));
    }
    Outcome::check(&failures, detail)
}

fn c11_star() -> Outcome {
    let mut failures = Vec::new();
    // the five rankings of the n = 5 construction, 1-based
    let figure = [
        [1, 2, 3, 4, 5],
        [2, 1, 3, 4, 5],
        [3, 1, 2, 4, 5],
        [4, 1, 2, 3, 5],
        [5, 1, 2, 3, 4],
    ];
    let (p, t) = gen_star_instance(5).unwrap();
    for (v, row) in figure.iter().enumerate() {
        let got: Vec<usize> = p.ranking(v).iter().map(|c| c + 1).collect();
        if got != row {
            failures.push(format!("voter {}: {got:?} vs {row:?}", v + 1));
        }
    }
    if t.root() != 0 || (1..5).any(|v| t.parent(v) != Some(0)) {
        failures.push("tree is not a star centred on voter 1".into());
    }
    if check_sc_tree(&p, &t).is_err() || !naive_sc_tree(&p, &t) {
        failures.push("not single-crossing on the star".into());
    }
    let k1 = solve_tree_dp(&p, &t, 1, UTIL).unwrap().total_cost;
    if k1 != Rational64::from_integer(4) || naive_cc(&p, 1, UTIL) != k1 {
        failures.push(format!("k = 1 cost {k1}, expected 4"));
    }
    Outcome::check(&failures, "rankings match, single-crossing on the star, k = 1 cost 4".into())
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("line DP = brute force", c1_line_oracle),
        ("line k-link = line DP", c2_klink_vs_dp),
        ("concave Monge weights", c3_monge),
        ("tree DP = brute force", c4_tree_oracle),
        ("pair-count identity", c5_pair_identity),
        ("laminar conjecture sweep", c6_conjecture),
        ("bicriterial sandwich", c7_sandwich),
        ("monotonicity and structure", c8_monotone_and_structure),
        ("egalitarian reduction", c9_egalitarian),
        ("complexity shape", c10_complexity),
        ("star instance", c11_star),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {:>2} ({name}): {} [{:.1}s]",
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!outcome.pass);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
