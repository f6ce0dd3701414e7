//! Simultaneous descent over all rotation cores on a product of orthogonal
//! groups, with Cayley-transform feasible curves and an Armijo–Wolfe
//! step-halving search.

mod cayley;
mod descent;
mod objective;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::{MmfError, Result};

pub use cayley::{cayley_curve, descent_direction};
pub use descent::{optimize, DescentReport, IterationDiagnostics};
pub use objective::{gradient, objective, objective_from_cores};
pub(crate) use objective::Problem;
pub use search::{curvilinear_search, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StiefelConfig {
    /// Sufficient-decrease constant.
    pub rho1: f64,
    /// Curvature constant, `rho1 < rho2 < 1`.
    pub rho2: f64,
    /// Stop when the Riemannian gradient norm drops to this value.
    pub epsilon: f64,
    pub max_outer_iters: usize,
    pub tau_init: f64,
    pub max_halvings: usize,
    /// Record per-iteration slope and feasibility checks. Costs four extra
    /// objective evaluations per iteration.
    #[serde(default)]
    pub record_diagnostics: bool,
    /// When the gradient vanishes at a nonzero objective, probe single
    /// coordinate-plane rotations for a decrease before declaring
    /// convergence.
    #[serde(default = "default_true")]
    pub escape_saddles: bool,
}

fn default_true() -> bool {
    true
}

impl Default for StiefelConfig {
    fn default() -> Self {
        Self {
            rho1: 1e-4,
            rho2: 0.9,
            epsilon: 1e-6,
            max_outer_iters: 500,
            tau_init: 1.0,
            max_halvings: 40,
            record_diagnostics: false,
            escape_saddles: true,
        }
    }
}

impl StiefelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.rho1 && self.rho1 < self.rho2 && self.rho2 < 1.0) {
            return Err(MmfError::InvalidParameter(format!(
                "need 0 < rho1 < rho2 < 1, got rho1 = {}, rho2 = {}",
                self.rho1, self.rho2
            )));
        }
        if !(self.epsilon > 0.0) {
            return Err(MmfError::InvalidParameter("epsilon must be positive".into()));
        }
        if !(self.tau_init > 0.0 && self.tau_init.is_finite()) {
            return Err(MmfError::InvalidParameter("tau_init must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        StiefelConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_constants() {
        let bad = [
            StiefelConfig { rho1: 0.0, ..Default::default() },
            StiefelConfig { rho2: 1e-5, ..Default::default() },
            StiefelConfig { rho2: 1.0, ..Default::default() },
            StiefelConfig { epsilon: 0.0, ..Default::default() },
            StiefelConfig { tau_init: -1.0, ..Default::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err());
        }
    }
}
