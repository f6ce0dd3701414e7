//! Index selection followed by Stiefel descent, shared by the commands.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{MmfError, Result};
use crate::evolution::{evolve_de, evolve_ea, ConvergenceLog, EvoParams};
use crate::mmf::{factorization_error, residual_norm_sq, KPointRotation, MmfFactorization, NestedSelection, SymmetricMatrix};
use crate::rng::seeded;
use crate::selection::{build_selection, greedy_jacobi_mmf, random_candidate, random_support_selection};
use crate::stiefel::{optimize, DescentReport, StiefelConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Evolutionary index search, then Stiefel descent.
    Ea,
    /// Directed evolution, then Stiefel descent.
    De,
    /// Random wavelet order with nearest-row supports, then Stiefel descent.
    Heuristic,
    /// Random wavelets and random supports, then Stiefel descent.
    Random,
    /// Classic greedy Jacobi MMF with Givens rotations.
    GreedyJacobi,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Ea => "ea",
            Method::De => "de",
            Method::Heuristic => "heuristic",
            Method::Random => "random",
            Method::GreedyJacobi => "greedy-jacobi",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizeSettings {
    pub method: Method,
    pub levels: usize,
    pub k: usize,
    pub c: usize,
    pub seed: u64,
    pub population: usize,
    pub iterations: usize,
    pub mutation_rate: f64,
    pub stiefel: StiefelConfig,
}

impl FactorizeSettings {
    fn evo(&self) -> EvoParams {
        EvoParams {
            population: self.population,
            iterations: self.iterations,
            mutation_rate: self.mutation_rate,
            seed: self.seed,
            levels: self.levels,
            k: self.k,
            c: self.c,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MethodRun {
    pub factorization: MmfFactorization,
    /// Error with every rotation at the identity, for the chosen selection.
    pub initial_error: f64,
    /// `‖A − assemble(f)‖_F`
    pub final_error: f64,
    pub convergence: Option<ConvergenceLog>,
    pub descent: Option<DescentReport>,
}

fn check_sizes(a: &SymmetricMatrix, s: &FactorizeSettings) -> Result<()> {
    let n = a.n();
    if s.c == 0 || s.levels * s.c >= n {
        return Err(MmfError::InvalidParameter(format!(
            "infeasible sizes: L·c = {}·{} must be below n = {n}",
            s.levels, s.c
        )));
    }
    if s.method == Method::GreedyJacobi && s.c != 1 {
        return Err(MmfError::Unsupported("greedy-jacobi drops one column per level (c = 1)".into()));
    }
    Ok(())
}

fn descend(a: &SymmetricMatrix, sel: NestedSelection, cfg: &StiefelConfig) -> Result<(MmfFactorization, DescentReport)> {
    let init: Vec<KPointRotation> = sel
        .levels()
        .iter()
        .map(|l| KPointRotation::identity(a.n(), l.rotation_support.clone()))
        .collect::<Result<_>>()?;
    optimize(a, &sel, &init, cfg)
}

/// Runs one factorization method end to end.
pub fn run_method(a: &SymmetricMatrix, s: &FactorizeSettings) -> Result<MethodRun> {
    check_sizes(a, s)?;
    let (sel, convergence) = match s.method {
        Method::GreedyJacobi => {
            let f = greedy_jacobi_mmf(a, s.levels)?;
            let initial_error = residual_norm_sq(a, &f.selection().final_active())?.sqrt();
            let final_error = factorization_error(a, &f)?;
            return Ok(MethodRun {
                factorization: f,
                initial_error,
                final_error,
                convergence: None,
                descent: None,
            });
        }
        Method::Ea | Method::De => {
            let out = if s.method == Method::Ea {
                evolve_ea(a, &s.evo())?
            } else {
                evolve_de(a, &s.evo())?
            };
            log::info!("{} winner fitness {:.6e}", s.method.name(), out.best_fitness);
            (build_selection(a, &out.best, s.k, s.c)?, Some(out.log))
        }
        Method::Heuristic => {
            let cand = random_candidate(a.n(), s.levels, s.c, s.seed)?;
            (build_selection(a, &cand, s.k, s.c)?, None)
        }
        Method::Random => {
            let cand = random_candidate(a.n(), s.levels, s.c, s.seed)?;
            let support_seed = rand::Rng::gen(&mut seeded(s.seed ^ 0x5eed_5e1e_c7ed));
            (random_support_selection(a.n(), &cand, s.k, s.c, support_seed)?, None)
        }
    };
    let (f, report) = descend(a, sel, &s.stiefel)?;
    let final_error = factorization_error(a, &f)?;
    log::info!(
        "{}: error {:.6e} -> {:.6e} in {} iterations",
        s.method.name(),
        report.initial_error(),
        final_error,
        report.iterations
    );
    Ok(MethodRun {
        factorization: f,
        initial_error: report.initial_error(),
        final_error,
        convergence,
        descent: Some(report),
    })
}
