use crate::error::{MmfError, Result};

use super::StiefelConfig;

/// Result of one curvilinear search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOutcome {
    pub tau: f64,
    /// `φ(τ)`, or NaN if the step could not be evaluated.
    pub value: f64,
    /// Both Armijo and curvature conditions hold at `tau`.
    pub wolfe: bool,
    /// No tried step met the sufficient-decrease condition.
    pub stalled: bool,
    pub evaluations: usize,
}

/// Step-halving search for a `τ` meeting
///
/// ```text
/// φ(τ)    ≤ φ(0) + ρ₁ τ φ′(0)
/// |φ′(τ)| ≤ ρ₂ |φ′(0)|
/// ```
///
/// starting from `cfg.tau_init`. The curvature test is the two-sided form,
/// so an accepted step also satisfies `φ′(τ) ≥ ρ₂ φ′(0)`; the upper side
/// rejects steps that overshoot far past the minimum along the curve.
///
/// Either closure may return `None` to reject a step (for example a
/// singular Cayley solve), which counts as a failure at that `τ`. If no step
/// satisfies both conditions within `cfg.max_halvings`, the tried step with
/// the lowest value among those satisfying the first is returned.
pub fn curvilinear_search(
    mut phi: impl FnMut(f64) -> Option<f64>,
    mut dphi: impl FnMut(f64) -> Option<f64>,
    cfg: &StiefelConfig,
) -> Result<SearchOutcome> {
    let phi0 = phi(0.0).ok_or(MmfError::Singular)?;
    let dphi0 = dphi(0.0).ok_or(MmfError::Singular)?;
    search_from(phi0, dphi0, phi, dphi, cfg)
}

pub(crate) fn search_from(
    phi0: f64,
    dphi0: f64,
    mut phi: impl FnMut(f64) -> Option<f64>,
    mut dphi: impl FnMut(f64) -> Option<f64>,
    cfg: &StiefelConfig,
) -> Result<SearchOutcome> {
    if !(dphi0 < 0.0) {
        return Err(MmfError::NotDescent(dphi0));
    }
    let mut tau = cfg.tau_init;
    let mut armijo_only: Option<(f64, f64)> = None;
    let mut evaluations = 0;
    let mut last = (tau, f64::NAN);

    for _ in 0..=cfg.max_halvings {
        evaluations += 1;
        let value = phi(tau).filter(|v| v.is_finite());
        last = (tau, value.unwrap_or(f64::NAN));
        if let Some(v) = value {
            if v <= phi0 + cfg.rho1 * tau * dphi0 {
                match dphi(tau) {
                    Some(d) if d.abs() <= cfg.rho2 * dphi0.abs() => {
                        return Ok(SearchOutcome {
                            tau,
                            value: v,
                            wolfe: true,
                            stalled: false,
                            evaluations,
                        });
                    }
                    _ => {
                        if armijo_only.map_or(true, |(_, best)| v < best) {
                            armijo_only = Some((tau, v));
                        }
                    }
                }
            }
        }
        tau *= 0.5;
    }

    Ok(match armijo_only {
        Some((tau, value)) => SearchOutcome {
            tau,
            value,
            wolfe: false,
            stalled: false,
            evaluations,
        },
        None => SearchOutcome {
            tau: last.0,
            value: last.1,
            wolfe: false,
            stalled: true,
            evaluations,
        },
    })
}
