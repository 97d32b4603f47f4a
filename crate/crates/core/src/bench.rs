//! Doubling sweeps for empirical scaling.
//!
//! A sweep fixes two of `(n, m, k)` and doubles the third, solving one
//! generated instance per point. Each point records the best wall time over
//! a few repetitions and the solver's work counter; [`loglog_slope`] fits
//! the growth exponent.

use std::str::FromStr;
use std::time::Instant;

use crate::assignment::Stats;
use crate::cost::Objective;
use crate::error::{Error, Result};
use crate::generators::{gen_sc_grid, gen_sc_line, gen_sc_tree_shaped, GridMode, TreeShape};
use crate::instance::Instance;
use crate::solver::{SolveOptions, SolverRegistry};
use crate::structure::Structure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Line,
    Tree,
    Grid,
}

impl Suite {
    pub fn algorithm(self) -> &'static str {
        match self {
            Suite::Line => "line-dp",
            Suite::Tree => "tree-dp",
            Suite::Grid => "grid-laminar",
        }
    }

    /// The dynamic program's work counter: DP states for lines and grids,
    /// merge iterations summed over candidates for trees.
    pub fn work(self, stats: &Stats, m: usize) -> u64 {
        let get = |key: &str| stats.get(key).copied().unwrap_or(0);
        match self {
            Suite::Line | Suite::Grid => get("states"),
            Suite::Tree => get("pairs_per_candidate") * m as u64,
        }
    }

    /// Generates the instance for one sweep point. Tree sweeps use deep
    /// random trees, whose large subtrees make the `O(nmk)` bound tight.
    /// Grid sweeps use `n` as the column count of a 2-row grid.
    pub fn instance(self, seed: u64, n: usize, m: usize) -> Result<Instance> {
        let (profile, structure) = match self {
            Suite::Line => {
                let (p, o) = gen_sc_line(seed, n, m)?;
                (p, Structure::Line(o))
            }
            Suite::Tree => {
                let (p, t) = gen_sc_tree_shaped(seed, n, m, TreeShape::Deep)?;
                (p, Structure::Tree(t))
            }
            Suite::Grid => {
                let (p, g) = gen_sc_grid(seed, 2, n, m, GridMode::Product)?;
                (p, Structure::Grid(g))
            }
        };
        Instance::new(profile, structure)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "line" => Ok(Suite::Line),
            "tree" => Ok(Suite::Tree),
            "grid" => Ok(Suite::Grid),
            other => Err(Error::InvalidStructure(format!("unknown benchmark suite `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    N,
    M,
    K,
}

impl Param {
    pub const ALL: [Param; 3] = [Param::N, Param::M, Param::K];

    pub fn name(self) -> &'static str {
        match self {
            Param::N => "n",
            Param::M => "m",
            Param::K => "k",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sweep {
    pub suite: Suite,
    pub param: Param,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Number of doublings after the base point.
    pub steps: u32,
    pub reps: u32,
    pub seed: u64,
}

impl Sweep {
    pub fn points(&self) -> Vec<(usize, usize, usize)> {
        (0..=self.steps)
            .map(|s| {
                let f = 1usize << s;
                match self.param {
                    Param::N => (self.n * f, self.m, self.k),
                    Param::M => (self.n, self.m * f, self.k),
                    Param::K => (self.n, self.m, self.k * f),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchPoint {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub wall_us: u64,
    pub counter: u64,
}

impl BenchPoint {
    fn swept(&self, param: Param) -> usize {
        match param {
            Param::N => self.n,
            Param::M => self.m,
            Param::K => self.k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub sweep: Sweep,
    pub points: Vec<BenchPoint>,
    pub time_slope: f64,
    pub counter_slope: f64,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "a slope needs two points");
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.max(f64::MIN_POSITIVE).ln()).collect();
    let len = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / len;
    let my = ly.iter().sum::<f64>() / len;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

pub fn run_sweep(sweep: &Sweep) -> Result<SweepReport> {
    let registry = SolverRegistry::new();
    let algorithm = sweep.suite.algorithm();
    let mut points = Vec::new();
    for (n, m, k) in sweep.points() {
        let instance = sweep.suite.instance(sweep.seed, n, m)?;
        let options = SolveOptions::new(k, Objective::Utilitarian);
        let mut best = u64::MAX;
        let mut counter = 0;
        for _ in 0..sweep.reps.max(1) {
            let start = Instant::now();
            let solution = registry.solve(algorithm, &instance, &options)?;
            best = best.min(start.elapsed().as_micros() as u64);
            counter = sweep.suite.work(&solution.result.stats, m);
        }
        points.push(BenchPoint {
            n,
            m,
            k,
            wall_us: best.max(1),
            counter,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.swept(sweep.param) as f64).collect();
    let times: Vec<f64> = points.iter().map(|p| p.wall_us as f64).collect();
    let counts: Vec<f64> = points.iter().map(|p| p.counter.max(1) as f64).collect();
    Ok(SweepReport {
        sweep: *sweep,
        time_slope: loglog_slope(&xs, &times),
        counter_slope: loglog_slope(&xs, &counts),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(1.5)).collect();
        assert!((loglog_slope(&xs, &ys) - 1.5).abs() < 1e-9);
    }

    #[test]
    fn line_counter_is_linear_in_n() {
        let sweep = Sweep {
            suite: Suite::Line,
            param: Param::N,
            n: 200,
            m: 6,
            k: 3,
            steps: 3,
            reps: 1,
            seed: 1,
        };
        let report = run_sweep(&sweep).unwrap();
        assert_eq!(report.points.len(), 4);
        assert!((report.counter_slope - 1.0).abs() < 0.1, "{}", report.counter_slope);
    }
}
