use super::{
    CountPrediction, DualSolver, FivePointSolver, FourPointLineSolver, MinimalConfiguration,
    MinimalSolver, SolutionSet, ThreePointTwoLineSolver,
};
use crate::error::{ConicError, Result};
use crate::tolerance::Tolerances;

/// Solvers keyed by name; configurations dispatch on their shape name.
pub struct SolverRegistry {
    solvers: Vec<Box<dyn MinimalSolver>>,
}

impl SolverRegistry {
    pub fn empty() -> Self {
        Self {
            solvers: Vec::new(),
        }
    }

    /// `5p`, `4p1l`, `3p2l` and their duals `5l`, `1p4l`, `2p3l`.
    pub fn with_builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(FivePointSolver));
        r.register(Box::new(FourPointLineSolver));
        r.register(Box::new(ThreePointTwoLineSolver));
        r.register(Box::new(DualSolver::new(Box::new(ThreePointTwoLineSolver))));
        r.register(Box::new(DualSolver::new(Box::new(FourPointLineSolver))));
        r.register(Box::new(DualSolver::new(Box::new(FivePointSolver))));
        r
    }

    /// Adds `solver`, replacing any solver of the same name.
    pub fn register(&mut self, solver: Box<dyn MinimalSolver>) {
        self.solvers.retain(|s| s.name() != solver.name());
        self.solvers.push(solver);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn MinimalSolver> {
        self.solvers
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| ConicError::UnknownSolver(name.to_string()))
    }

    pub fn for_config(&self, config: &MinimalConfiguration) -> Result<&dyn MinimalSolver> {
        self.get(config.shape_name())
    }

    pub fn solve(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<SolutionSet> {
        self.for_config(config)?.solve(config, tol)
    }

    pub fn predict(
        &self,
        config: &MinimalConfiguration,
        tol: &Tolerances,
    ) -> Result<CountPrediction> {
        self.for_config(config)?.predict(config, tol)
    }
}

impl Default for SolverRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}
