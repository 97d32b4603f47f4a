//! Name-keyed registry of solving strategies.
//!
//! Each [`Solver`] declares which structures and objectives it handles;
//! [`SolverRegistry::solve`] looks one up by name, checks the request
//! against it and runs it.

use crate::cost::Objective;
use crate::error::{Error, Result};
use crate::grid::{self, Tiling};
use crate::instance::Instance;
use crate::line;
use crate::oracle::{self, DEFAULT_BUDGET};
use crate::structure::{RootedTree, Structure};
use crate::tree;
use crate::SolveResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub k: usize,
    pub objective: Objective,
    /// Cap on enumerated committees or tilings (oracle only).
    pub budget: u64,
}

impl SolveOptions {
    pub fn new(k: usize, objective: Objective) -> Self {
        Self {
            k,
            objective,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// A solver's answer; grid solvers also return their tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub result: SolveResult,
    pub tiling: Option<Tiling>,
}

impl From<SolveResult> for Solution {
    fn from(result: SolveResult) -> Self {
        Self { result, tiling: None }
    }
}

impl From<grid::GridSolution> for Solution {
    fn from(s: grid::GridSolution) -> Self {
        Self {
            result: s.result,
            tiling: Some(s.tiling),
        }
    }
}

pub trait Solver: Send + Sync {
    fn name(&self) -> &'static str;

    /// `Err(description)` when the solver cannot handle this combination.
    fn supports(&self, structure: &Structure, objective: Objective) -> std::result::Result<(), String>;

    fn run(&self, instance: &Instance, options: &SolveOptions) -> Result<Solution>;
}

fn mismatch(solver: &dyn Solver, what: String) -> Error {
    Error::AlgorithmStructureMismatch {
        algorithm: solver.name().to_string(),
        what,
    }
}

fn only(kind: &str, structure: &Structure) -> std::result::Result<(), String> {
    if structure.kind() == kind {
        Ok(())
    } else {
        Err(format!("{} instances", structure.kind()))
    }
}

struct LineDp;

impl Solver for LineDp {
    fn name(&self) -> &'static str {
        "line-dp"
    }

    fn supports(&self, structure: &Structure, _: Objective) -> std::result::Result<(), String> {
        only("line", structure)
    }

    fn run(&self, instance: &Instance, options: &SolveOptions) -> Result<Solution> {
        let Structure::Line(order) = &instance.structure else {
            unreachable!("checked by supports")
        };
        line::solve_line_dp(&instance.profile, order.as_slice(), options.k, options.objective).map(Into::into)
    }
}

/// Utilitarian: the penalized k-link route. Egalitarian: binary search on
/// the threshold, each probe a zero-cost path search.
struct LineKLink;

impl Solver for LineKLink {
    fn name(&self) -> &'static str {
        "line-klink"
    }

    fn supports(&self, structure: &Structure, _: Objective) -> std::result::Result<(), String> {
        only("line", structure)
    }

    fn run(&self, instance: &Instance, options: &SolveOptions) -> Result<Solution> {
        let Structure::Line(order) = &instance.structure else {
            unreachable!("checked by supports")
        };
        let order = order.as_slice();
        match options.objective {
            Objective::Utilitarian => line::solve_line_klink(&instance.profile, order, options.k),
            Objective::Egalitarian => line::solve_line_egal_threshold(&instance.profile, order, options.k),
        }
        .map(Into::into)
    }
}

/// Also accepts lines, read as paths rooted at their first voter.
struct TreeDp;

impl Solver for TreeDp {
    fn name(&self) -> &'static str {
        "tree-dp"
    }

    fn supports(&self, structure: &Structure, _: Objective) -> std::result::Result<(), String> {
        match structure {
            Structure::Grid(_) => Err("grid instances".into()),
            _ => Ok(()),
        }
    }

    fn run(&self, instance: &Instance, options: &SolveOptions) -> Result<Solution> {
        let path;
        let t = match &instance.structure {
            Structure::Tree(t) => t,
            Structure::Line(order) => {
                path = RootedTree::path(order.as_slice())?;
                &path
            }
            Structure::Grid(_) => unreachable!("checked by supports"),
        };
        tree::solve_tree_dp(&instance.profile, t, options.k, options.objective).map(Into::into)
    }
}

struct GridLaminar {
    bicriterial: bool,
}

impl Solver for GridLaminar {
    fn name(&self) -> &'static str {
        if self.bicriterial {
            "grid-bicriterial"
        } else {
            "grid-laminar"
        }
    }

    fn supports(&self, structure: &Structure, objective: Objective) -> std::result::Result<(), String> {
        only("grid", structure)?;
        match objective {
            Objective::Utilitarian => Ok(()),
            Objective::Egalitarian => Err("the egalitarian objective".into()),
        }
    }

    fn run(&self, instance: &Instance, options: &SolveOptions) -> Result<Solution> {
        let Structure::Grid(shape) = &instance.structure else {
            unreachable!("checked by supports")
        };
        let solve = if self.bicriterial {
            grid::solve_grid_bicriterial
        } else {
            grid::solve_grid_laminar
        };
        solve(&instance.profile, shape, options.k).map(Into::into)
    }
}

struct Oracle;

impl Solver for Oracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn supports(&self, _: &Structure, _: Objective) -> std::result::Result<(), String> {
        Ok(())
    }

    fn run(&self, instance: &Instance, options: &SolveOptions) -> Result<Solution> {
        oracle::brute_force(&instance.profile, options.k, options.objective, options.budget).map(Into::into)
    }
}

/// Picks by structure: line-dp, tree-dp, grid-laminar. Egalitarian grid
/// requests go to the oracle.
struct Auto;

impl Auto {
    fn pick(structure: &Structure, objective: Objective) -> &'static dyn Solver {
        match (structure, objective) {
            (Structure::Line(_), _) => &LineDp,
            (Structure::Tree(_), _) => &TreeDp,
            (Structure::Grid(_), Objective::Utilitarian) => &GridLaminar { bicriterial: false },
            (Structure::Grid(_), Objective::Egalitarian) => &Oracle,
        }
    }
}

impl Solver for Auto {
    fn name(&self) -> &'static str {
        "auto"
    }

    fn supports(&self, _: &Structure, _: Objective) -> std::result::Result<(), String> {
        Ok(())
    }

    fn run(&self, instance: &Instance, options: &SolveOptions) -> Result<Solution> {
        Self::pick(&instance.structure, options.objective).run(instance, options)
    }
}

pub struct SolverRegistry {
    solvers: Vec<Box<dyn Solver>>,
}

impl Default for SolverRegistry {
    fn default() -> Self {
        Self {
            solvers: vec![
                Box::new(LineDp),
                Box::new(LineKLink),
                Box::new(TreeDp),
                Box::new(GridLaminar { bicriterial: false }),
                Box::new(GridLaminar { bicriterial: true }),
                Box::new(Oracle),
                Box::new(Auto),
            ],
        }
    }
}

impl SolverRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a solver, replacing any registered under the same name.
    pub fn register(&mut self, solver: Box<dyn Solver>) {
        self.solvers.retain(|s| s.name() != solver.name());
        self.solvers.push(solver);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Solver> {
        self.solvers
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownAlgorithm(name.to_string()))
    }

    pub fn solve(&self, name: &str, instance: &Instance, options: &SolveOptions) -> Result<Solution> {
        let solver = self.get(name)?;
        solver
            .supports(&instance.structure, options.objective)
            .map_err(|what| mismatch(solver, what))?;
        solver.run(instance, options)
    }
}
