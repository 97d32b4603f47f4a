//! Subcommand implementations. Each returns the process exit code for
//! outcomes it reports itself (`0` ok, `1` a reported violation) and an error
//! for everything else.

use std::io::Write;
use std::path::{Path, PathBuf};

use ccsc_core::bench::{run_sweep, Param, Suite, Sweep};
use ccsc_core::generators::{
    gen_sc_grid, gen_sc_line, gen_sc_tree_shaped, gen_star_instance, with_random_rho, GridMode, TreeShape,
};
use ccsc_core::grid::check_laminar_conjecture;
use ccsc_core::line::check_line_monge;
use ccsc_core::oracle::DEFAULT_BUDGET;
use ccsc_core::validation::{check_consistency, check_sc_grid, check_sc_line, check_sc_tree};
use ccsc_core::{Instance, Objective, PreferenceProfile, SolveOptions, SolverRegistry, Structure};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult, EXIT_FAILURE, EXIT_OK};
use crate::format::{to_json_text, Exact, InstanceFile, ResultFile, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "ccsc", version, about = "Chamberlin-Courant committees on single-crossing profiles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check consistency and single-crossingness of an instance file.
    Validate(ValidateArgs),
    /// Compute an optimal (or approximate) committee.
    Solve(SolveArgs),
    /// Write a random single-crossing instance.
    Generate(GenerateArgs),
    /// Run the concave-Monge or laminar-tiling checks on a file or a sweep.
    Check(CheckArgs),
    /// Doubling sweeps over n, m and k with log-log slope fits.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub path: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ObjectiveArg {
    Utilitarian,
    Egalitarian,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Utilitarian => Objective::Utilitarian,
            ObjectiveArg::Egalitarian => Objective::Egalitarian,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub path: PathBuf,
    /// Committee size; defaults to the file's `k`.
    #[arg(short, long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "utilitarian")]
    pub objective: ObjectiveArg,
    /// line-dp, line-klink, tree-dp, grid-laminar, grid-bicriterial, oracle or auto.
    #[arg(long, default_value = "auto")]
    pub algorithm: String,
    /// Pad the committee with unused candidates up to exactly k members.
    #[arg(long)]
    pub exact_k: bool,
    /// Result file; without it the record goes to stdout and the summary to stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StructureArg {
    Line,
    Tree,
    Grid,
    Star,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GridModeArg {
    Product,
    Rejection,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TreeShapeArg {
    Recursive,
    Deep,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub structure: StructureArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Voters (line, tree, star).
    #[arg(long)]
    pub n: Option<usize>,
    /// Candidates (line, tree, grid).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
    #[arg(long, value_enum, default_value = "product")]
    pub mode: GridModeArg,
    /// Half-plane swaps per rejection-mode attempt.
    #[arg(long, default_value_t = 2)]
    pub edits: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_attempts: u64,
    #[arg(long, value_enum, default_value = "recursive")]
    pub tree_shape: TreeShapeArg,
    /// Replace Borda values by random consistent integers with steps in 0..=STEP.
    #[arg(long)]
    pub rho_step: Option<i64>,
    /// Default committee size stored in the file.
    #[arg(short, long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    Monge,
    Conjecture,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub mode: CheckMode,
    /// Instance file; without it a generated sweep is checked.
    pub path: Option<PathBuf>,
    /// Number of seeds in a sweep.
    #[arg(long)]
    pub seeds: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub first_seed: u64,
    /// Largest line length in a monge sweep.
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    /// Largest candidate count in a monge sweep; the candidate count of conjecture sweeps.
    #[arg(long, default_value_t = 6)]
    pub m: usize,
    #[arg(long, default_value_t = 4)]
    pub n1_max: usize,
    #[arg(long, default_value_t = 5)]
    pub n2_max: usize,
    /// Largest k in a conjecture sweep (or for a conjecture file without `k`).
    #[arg(long, default_value_t = 5)]
    pub k_max: usize,
    /// Random consistent values instead of Borda in sweeps.
    #[arg(long)]
    pub rho_step: Option<i64>,
    /// CSV file for per-instance rows.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Line,
    Tree,
    Grid,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Line => Suite::Line,
            SuiteArg::Tree => Suite::Tree,
            SuiteArg::Grid => Suite::Grid,
        }
    }
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteArg,
    /// Base voter count (grid suites: columns of a 2-row grid); defaults depend on suite and swept parameter.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(short, long)]
    pub k: Option<usize>,
    /// Doublings after the base point.
    #[arg(long, default_value_t = 3)]
    pub steps: u32,
    #[arg(long, default_value_t = 3)]
    pub reps: u32,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// JSON report file; without it the report goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn dispatch(command: Command, out: &mut dyn Write) -> CliResult<u8> {
    match command {
        Command::Validate(a) => validate(&a, out),
        Command::Solve(a) => solve(&a, out),
        Command::Generate(a) => generate(&a, out),
        Command::Check(a) => check(&a, out),
        Command::Bench(a) => bench(&a, out),
    }
}

fn stdout_error(source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(stdout_error)
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_instance(path: &Path) -> CliResult<(InstanceFile, Instance)> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parse_error = |source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    };
    let file = InstanceFile::parse(&text).map_err(parse_error)?;
    let instance = file.to_instance().map_err(parse_error)?;
    Ok((file, instance))
}

/// The enumeration cap: `CC_BUDGET` if set, otherwise the library default.
pub fn budget_from_env() -> CliResult<u64> {
    match std::env::var("CC_BUDGET") {
        Err(_) => Ok(DEFAULT_BUDGET),
        Ok(raw) => raw
            .trim()
            .replace('_', "")
            .parse()
            .map_err(|_| CliError::Usage(format!("CC_BUDGET must be a non-negative integer, got `{raw}`"))),
    }
}

/// The first consistency or single-crossing violation, with 1-based labels.
pub fn find_violation(instance: &Instance) -> Option<serde_json::Value> {
    let p = &instance.profile;
    if let Err(v) = check_consistency(p) {
        return Some(json!({
            "kind": "inconsistent_rho",
            "voter": v.voter + 1,
            "preferred": v.preferred + 1,
            "other": v.other + 1,
        }));
    }
    let crossing = match &instance.structure {
        Structure::Line(order) => check_sc_line(p, order.as_slice()),
        Structure::Tree(tree) => check_sc_tree(p, tree),
        Structure::Grid(grid) => check_sc_grid(p, grid),
    };
    crossing.err().map(|w| {
        json!({
            "kind": "not_single_crossing",
            "structure": instance.structure.kind(),
            "c": w.c + 1,
            "c_prime": w.c_prime + 1,
            "v1": w.v1 + 1,
            "v2": w.v2 + 1,
            "v3": w.v3 + 1,
        })
    })
}

fn report_violation(out: &mut dyn Write, violation: serde_json::Value) -> CliResult<u8> {
    emit(out, &format!("{}\n", json!({ "ok": false, "violation": violation })))?;
    Ok(EXIT_FAILURE)
}

pub fn validate(args: &ValidateArgs, out: &mut dyn Write) -> CliResult<u8> {
    let (_, instance) = read_instance(&args.path)?;
    match find_violation(&instance) {
        None => {
            emit(out, "ok\n")?;
            Ok(EXIT_OK)
        }
        Some(v) => report_violation(out, v),
    }
}

pub fn solve(args: &SolveArgs, out: &mut dyn Write) -> CliResult<u8> {
    let (file, instance) = read_instance(&args.path)?;
    if let Some(v) = find_violation(&instance) {
        return report_violation(out, v);
    }
    let k = args
        .k
        .or(file.k)
        .ok_or_else(|| CliError::Usage("no committee size: pass --k or set `k` in the instance file".into()))?;
    let objective = Objective::from(args.objective);
    let options = SolveOptions::new(k, objective).with_budget(budget_from_env()?);
    let solution = SolverRegistry::new().solve(&args.algorithm, &instance, &options)?;
    let record = ResultFile::new(
        &solution,
        objective,
        k,
        instance.profile.num_candidates(),
        args.exact_k,
    );
    match &args.out {
        Some(path) => {
            write_file(path, &record.to_json())?;
            emit(out, &format!("{}\n", record.summary()))?;
        }
        None => {
            emit(out, &record.to_json())?;
            eprintln!("{}", record.summary());
        }
    }
    Ok(EXIT_OK)
}

fn required(value: Option<usize>, flag: &str, structure: &str) -> CliResult<usize> {
    value.ok_or_else(|| CliError::Usage(format!("--structure {structure} needs --{flag}")))
}

fn generated(args: &GenerateArgs) -> ccsc_core::Result<(PreferenceProfile, Structure)> {
    // presence of the dimension flags is checked by the caller
    let (n, m) = (args.n.unwrap_or(0), args.m.unwrap_or(0));
    Ok(match args.structure {
        StructureArg::Line => {
            let (p, o) = gen_sc_line(args.seed, n, m)?;
            (p, Structure::Line(o))
        }
        StructureArg::Tree => {
            let shape = match args.tree_shape {
                TreeShapeArg::Recursive => TreeShape::Recursive,
                TreeShapeArg::Deep => TreeShape::Deep,
            };
            let (p, t) = gen_sc_tree_shaped(args.seed, n, m, shape)?;
            (p, Structure::Tree(t))
        }
        StructureArg::Star => {
            let (p, t) = gen_star_instance(n)?;
            (p, Structure::Tree(t))
        }
        StructureArg::Grid => {
            let mode = match args.mode {
                GridModeArg::Product => GridMode::Product,
                GridModeArg::Rejection => GridMode::Rejection {
                    edits: args.edits,
                    max_attempts: args.max_attempts,
                },
            };
            let (p, g) = gen_sc_grid(args.seed, args.n1.unwrap_or(0), args.n2.unwrap_or(0), m, mode)?;
            (p, Structure::Grid(g))
        }
    })
}

pub fn generate(args: &GenerateArgs, out: &mut dyn Write) -> CliResult<u8> {
    let name = format!("{:?}", args.structure).to_lowercase();
    match args.structure {
        StructureArg::Line | StructureArg::Tree => {
            required(args.n, "n", &name)?;
            required(args.m, "m", &name)?;
        }
        StructureArg::Star => {
            required(args.n, "n", &name)?;
        }
        StructureArg::Grid => {
            required(args.n1, "n1", &name)?;
            required(args.n2, "n2", &name)?;
            required(args.m, "m", &name)?;
        }
    }
    if args.rho_step.is_some_and(|s| s < 0) {
        return Err(CliError::Usage("--rho-step must be non-negative".into()));
    }
    let (profile, structure) = generated(args).map_err(|e| match e {
        e @ ccsc_core::Error::RejectionBudgetExceeded { .. } => CliError::Core(e),
        other => CliError::Usage(format!("invalid generator parameters: {other}")),
    })?;
    let profile = match args.rho_step {
        Some(step) => with_random_rho(args.seed, &profile, step),
        None => profile,
    };
    let instance = Instance::new(profile, structure)?;
    let text = InstanceFile::from_instance(&instance, args.k).to_json();
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
struct MongeRow {
    seed: u64,
    n: usize,
    m: usize,
    monge: bool,
    i: Option<usize>,
    j: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
struct ConjectureRow {
    seed: u64,
    n1: usize,
    n2: usize,
    m: usize,
    k: usize,
    holds: bool,
    gap: String,
}

fn write_csv<R: Serialize>(path: &Path, rows: &[R]) -> CliResult<()> {
    let io_error = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut writer = csv::Writer::from_path(path).map_err(|e| io_error(e.into()))?;
    for row in rows {
        writer.serialize(row).map_err(|e| io_error(e.into()))?;
    }
    writer.flush().map_err(io_error)
}

fn sweep_profile(profile: PreferenceProfile, seed: u64, rho_step: Option<i64>) -> PreferenceProfile {
    match rho_step {
        Some(step) => with_random_rho(seed, &profile, step),
        None => profile,
    }
}

fn monge_row(seed: u64, n: usize, m: usize, profile: &PreferenceProfile, order: &[usize]) -> MongeRow {
    let witness = check_line_monge(profile, order).err();
    MongeRow {
        seed,
        n,
        m,
        monge: witness.is_none(),
        i: witness.map(|w| w.0),
        j: witness.map(|w| w.1),
    }
}

fn monge_rows(args: &CheckArgs) -> CliResult<Vec<MongeRow>> {
    if let Some(path) = &args.path {
        let (_, instance) = read_instance(path)?;
        let Structure::Line(order) = &instance.structure else {
            return Err(CliError::Usage(format!(
                "--mode monge needs a line instance, got a {}",
                instance.structure.kind()
            )));
        };
        let p = &instance.profile;
        return Ok(vec![monge_row(0, p.num_voters(), p.num_candidates(), p, order.as_slice())]);
    }
    if args.n_max == 0 || args.m == 0 {
        return Err(CliError::Usage("--n-max and --m must be positive".into()));
    }
    let first = args.first_seed;
    let seeds = args.seeds.unwrap_or(1000);
    let mut rows = (first..first.saturating_add(seeds))
        .into_par_iter()
        .map(|seed| {
            // cycle deterministically through all (n, m) shapes
            let n = 1 + (seed % args.n_max as u64) as usize;
            let m = 1 + ((seed / args.n_max as u64) % args.m as u64) as usize;
            let (p, order) = gen_sc_line(seed, n, m)?;
            let p = sweep_profile(p, seed, args.rho_step);
            Ok(monge_row(seed, n, m, &p, order.as_slice()))
        })
        .collect::<CliResult<Vec<_>>>()?;
    rows.sort();
    Ok(rows)
}

fn conjecture_row(
    seed: u64,
    instance: &Instance,
    k: usize,
    budget: u64,
) -> CliResult<ConjectureRow> {
    let Structure::Grid(grid) = &instance.structure else {
        return Err(CliError::Usage(format!(
            "--mode conjecture needs a grid instance, got a {}",
            instance.structure.kind()
        )));
    };
    let outcome = check_laminar_conjecture(&instance.profile, grid, k, budget)?;
    Ok(ConjectureRow {
        seed,
        n1: grid.n1,
        n2: grid.n2,
        m: instance.profile.num_candidates(),
        k,
        holds: outcome.holds(),
        gap: Exact(outcome.gap()).to_string(),
    })
}

fn conjecture_rows(args: &CheckArgs, budget: u64) -> CliResult<Vec<ConjectureRow>> {
    if let Some(path) = &args.path {
        let (file, instance) = read_instance(path)?;
        let ks: Vec<usize> = match file.k {
            Some(k) => vec![k],
            None => (1..=args.k_max).collect(),
        };
        return ks.into_iter().map(|k| conjecture_row(0, &instance, k, budget)).collect();
    }
    if args.m == 0 {
        return Err(CliError::Usage("--m must be positive".into()));
    }
    let first = args.first_seed;
    let seeds = args.seeds.unwrap_or(3);
    let mut jobs = Vec::new();
    for seed in first..first.saturating_add(seeds) {
        for n1 in 1..=args.n1_max {
            for n2 in 1..=args.n2_max {
                for k in 1..=args.k_max {
                    jobs.push((seed, n1, n2, k));
                }
            }
        }
    }
    let mut rows = jobs
        .into_par_iter()
        .map(|(seed, n1, n2, k)| {
            let (p, g) = gen_sc_grid(seed, n1, n2, args.m, GridMode::Product)?;
            let instance = Instance::new(sweep_profile(p, seed, args.rho_step), Structure::Grid(g))?;
            conjecture_row(seed, &instance, k, budget)
        })
        .collect::<CliResult<Vec<_>>>()?;
    rows.sort();
    Ok(rows)
}

pub fn check(args: &CheckArgs, out: &mut dyn Write) -> CliResult<u8> {
    let budget = budget_from_env()?;
    let (report, failed) = match args.mode {
        CheckMode::Monge => {
            let rows = monge_rows(args)?;
            if let Some(path) = &args.out {
                write_csv(path, &rows)?;
            }
            let bad: Vec<&MongeRow> = rows.iter().filter(|r| !r.monge).collect();
            let witness = bad.first().map(|r| json!({ "seed": r.seed, "i": r.i, "j": r.j }));
            let report = json!({
                "mode": "monge",
                "instances": rows.len(),
                "violations": bad.len(),
                "first_violation": witness,
            });
            (report, !bad.is_empty())
        }
        CheckMode::Conjecture => {
            let rows = conjecture_rows(args, budget)?;
            if let Some(path) = &args.out {
                write_csv(path, &rows)?;
            }
            let bad: Vec<&ConjectureRow> = rows.iter().filter(|r| !r.holds).collect();
            let small_k = bad.iter().filter(|r| r.k <= 4).count();
            let report = json!({
                "mode": "conjecture",
                "instances": rows.len(),
                "counterexamples": bad.len(),
                "counterexamples_k_le_4": small_k,
                "first_counterexample": bad.first().map(|r| json!(r)),
            });
            (report, !bad.is_empty())
        }
    };
    emit(out, &format!("{report}\n"))?;
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

#[derive(Debug, Serialize)]
struct PointRecord {
    n: usize,
    m: usize,
    k: usize,
    wall_us: u64,
    counter: u64,
}

#[derive(Debug, Serialize)]
struct SweepRecord {
    param: &'static str,
    points: Vec<PointRecord>,
    time_slope: f64,
    counter_slope: f64,
}

#[derive(Debug, Serialize)]
struct BenchReport {
    schema_version: u32,
    suite: String,
    algorithm: &'static str,
    seed: u64,
    sweeps: Vec<SweepRecord>,
}

/// Base `(n, m, k)` per suite and swept parameter, chosen so the swept term
/// dominates the `O(nm)` setup work.
fn bench_defaults(suite: Suite, param: Param) -> (usize, usize, usize) {
    match (suite, param) {
        (Suite::Line, Param::N) => (50_000, 16, 8),
        (Suite::Line, Param::M) => (50_000, 8, 4),
        (Suite::Line, Param::K) => (10_000, 256, 4),
        (Suite::Tree, Param::K) => (2_000, 128, 8),
        (Suite::Tree, _) => (5_000, 16, 16),
        (Suite::Grid, _) => (8, 6, 2),
    }
}

pub fn bench(args: &BenchArgs, out: &mut dyn Write) -> CliResult<u8> {
    let suite = Suite::from(args.suite);
    if [args.n, args.m, args.k].contains(&Some(0)) || args.steps == 0 {
        return Err(CliError::Usage("--n, --m, --k and --steps must be positive".into()));
    }
    let mut sweeps = Vec::new();
    for param in Param::ALL {
        let (dn, dm, dk) = bench_defaults(suite, param);
        let (n, m, k) = (args.n.unwrap_or(dn), args.m.unwrap_or(dm), args.k.unwrap_or(dk));
        // committees never exceed m, so the k sweep needs room for its largest k
        let m = match param {
            Param::K => m.max(k << args.steps),
            _ => m,
        };
        let report = run_sweep(&Sweep {
            suite,
            param,
            n,
            m,
            k,
            steps: args.steps,
            reps: args.reps,
            seed: args.seed,
        })?;
        eprintln!(
            "{} {}: time slope {:.2}, counter slope {:.2}",
            suite.algorithm(),
            param.name(),
            report.time_slope,
            report.counter_slope
        );
        sweeps.push(SweepRecord {
            param: param.name(),
            points: report
                .points
                .iter()
                .map(|p| PointRecord {
                    n: p.n,
                    m: p.m,
                    k: p.k,
                    wall_us: p.wall_us,
                    counter: p.counter,
                })
                .collect(),
            time_slope: report.time_slope,
            counter_slope: report.counter_slope,
        });
    }
    let report = BenchReport {
        schema_version: SCHEMA_VERSION,
        suite: format!("{:?}", args.suite).to_lowercase(),
        algorithm: suite.algorithm(),
        seed: args.seed,
        sweeps,
    };
    let text = to_json_text(&report);
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}
