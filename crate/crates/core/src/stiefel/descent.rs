use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{reorthonormalize, Matrix};
use crate::mmf::{
    check_conformance, core_diagonal_project, KPointRotation, MmfFactorization, NestedSelection, SymmetricMatrix,
    ORTHOGONALITY_TOL,
};

use super::cayley::{descent_direction, CurvePoint};
use super::search::search_from;
use super::{Problem, StiefelConfig};

/// Step used for the measured slope, in units of arc length along the curve.
const SLOPE_PROBE: f64 = 1e-3;
const ESCAPE_HALVINGS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationDiagnostics {
    pub iteration: usize,
    /// Objective at the start of the iteration.
    pub objective: f64,
    pub gradient_norm: f64,
    /// `−½ Σ‖W_ℓ‖²`
    pub predicted_slope: f64,
    /// Five-point difference quotient of the objective along the curve at 0.
    pub measured_slope: f64,
    pub tau: f64,
    pub wolfe: bool,
    /// Largest `‖OᵀO − I‖_F` over all cores after the step.
    pub orthogonality_error: f64,
    /// The step left a critical point along a probe direction rather than
    /// the gradient curve; the slope fields are then zero.
    pub escape: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentReport {
    pub initial_objective: f64,
    pub final_objective: f64,
    /// Objective before the first step and after every accepted step.
    pub objective_trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// The last search found no step with sufficient decrease.
    pub stalled: bool,
    pub gradient_norm: f64,
    pub diagnostics: Vec<IterationDiagnostics>,
}

impl DescentReport {
    /// Frobenius error `‖A − assemble(f)‖_F` of the initial iterate.
    pub fn initial_error(&self) -> f64 {
        self.initial_objective.max(0.0).sqrt()
    }

    pub fn final_error(&self) -> f64 {
        self.final_objective.max(0.0).sqrt()
    }
}

fn curve(cores: &[Matrix], ws: &[Matrix], tau: f64) -> Option<Vec<CurvePoint>> {
    cores
        .iter()
        .zip(ws)
        .map(|(x, w)| CurvePoint::new(x, w, tau).ok())
        .collect()
}

fn points_to_cores(points: &[CurvePoint]) -> Vec<Matrix> {
    points.iter().map(|p| p.y.clone()).collect()
}

fn max_orthogonality_error(cores: &[Matrix]) -> f64 {
    cores.iter().map(Matrix::orthogonality_error).fold(0.0, f64::max)
}

/// Tries the skew directions `E_ab − E_ba` of each core in turn, halving
/// the step from `tau_init`, and returns the first iterate that lowers the
/// objective.
fn escape_critical_point(problem: &Problem<'_>, cores: &[Matrix], f: f64, cfg: &StiefelConfig) -> Option<(Vec<Matrix>, f64)> {
    for (lvl, x) in cores.iter().enumerate() {
        let k = x.rows();
        for a in 0..k {
            for b in (a + 1)..k {
                let w = Matrix::from_fn(k, k, |i, j| {
                    if (i, j) == (a, b) {
                        1.0
                    } else if (i, j) == (b, a) {
                        -1.0
                    } else {
                        0.0
                    }
                });
                let mut tau = cfg.tau_init;
                for _ in 0..ESCAPE_HALVINGS {
                    if let Ok(p) = CurvePoint::new(x, &w, tau) {
                        let mut trial = cores.to_vec();
                        trial[lvl] = p.y;
                        if problem.value(&trial) < f * (1.0 - 1e-10) {
                            return Some((trial, tau));
                        }
                    }
                    tau *= 0.5;
                }
            }
        }
    }
    None
}

/// Descends on all cores at once, sharing one step size across levels,
/// until the gradient norm reaches `cfg.epsilon`, the iteration budget is
/// spent, or the line search stalls.
///
/// The returned factorization uses the final cores and
/// `H = core_diagonal_project(A_L, S_L)`.
pub fn optimize(
    a: &SymmetricMatrix,
    sel: &NestedSelection,
    init: &[KPointRotation],
    cfg: &StiefelConfig,
) -> Result<(MmfFactorization, DescentReport)> {
    cfg.validate()?;
    check_conformance(sel, init)?;
    let problem = Problem::new(a, sel)?;
    let mut cores: Vec<Matrix> = init.iter().map(|u| u.core().clone()).collect();

    let (mut f, mut grads) = problem.value_and_gradient(&cores);
    let mut report = DescentReport {
        initial_objective: f,
        final_objective: f,
        objective_trace: vec![f],
        iterations: 0,
        converged: false,
        stalled: false,
        gradient_norm: f64::NAN,
        diagnostics: Vec::new(),
    };

    loop {
        let ws: Vec<Matrix> = cores
            .iter()
            .zip(&grads)
            .map(|(x, g)| descent_direction(x, g))
            .collect::<Result<_>>()?;
        let gn2: f64 = ws.iter().map(Matrix::frobenius_norm_sq).sum();
        let gnorm = gn2.sqrt();
        report.gradient_norm = gnorm;
        if report.iterations >= cfg.max_outer_iters && gnorm > cfg.epsilon {
            break;
        }
        if gnorm <= cfg.epsilon {
            let escaped = if cfg.escape_saddles && f > 0.0 && report.iterations < cfg.max_outer_iters {
                escape_critical_point(&problem, &cores, f, cfg)
            } else {
                None
            };
            let Some((next, tau)) = escaped else {
                report.converged = true;
                break;
            };
            log::debug!("left a critical point at objective {f:.6e}");
            cores = next;
            let (nf, ng) = problem.value_and_gradient(&cores);
            f = nf;
            grads = ng;
            report.iterations += 1;
            report.objective_trace.push(f);
            if cfg.record_diagnostics {
                report.diagnostics.push(IterationDiagnostics {
                    iteration: report.iterations,
                    objective: report.objective_trace[report.objective_trace.len() - 2],
                    gradient_norm: gnorm,
                    predicted_slope: 0.0,
                    measured_slope: 0.0,
                    tau,
                    wolfe: false,
                    orthogonality_error: max_orthogonality_error(&cores),
                    escape: true,
                });
            }
            continue;
        }
        let slope0 = -0.5 * gn2;

        let phi = |t: f64| curve(&cores, &ws, t).map(|pts| problem.value(&points_to_cores(&pts)));
        let dphi = |t: f64| {
            let pts = curve(&cores, &ws, t)?;
            let ys = points_to_cores(&pts);
            let (_, g) = problem.value_and_gradient(&ys);
            let mut acc = 0.0;
            for ((p, x), (w, gl)) in pts.iter().zip(&cores).zip(ws.iter().zip(&g)) {
                acc += gl.frobenius_dot(&p.derivative(x, w).ok()?);
            }
            Some(acc)
        };

        let measured = if cfg.record_diagnostics {
            let h = SLOPE_PROBE / gnorm;
            match (phi(2.0 * h), phi(h), phi(-h), phi(-2.0 * h)) {
                (Some(p2), Some(p1), Some(m1), Some(m2)) => (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h),
                _ => f64::NAN,
            }
        } else {
            f64::NAN
        };

        let outcome = search_from(f, slope0, phi, dphi, cfg)?;
        if outcome.stalled {
            log::debug!("line search stalled at iteration {}", report.iterations);
            report.stalled = true;
            break;
        }

        let pts = curve(&cores, &ws, outcome.tau).expect("accepted step was evaluable");
        cores = points_to_cores(&pts);
        for c in cores.iter_mut() {
            if c.orthogonality_error() > ORTHOGONALITY_TOL {
                *c = reorthonormalize(c);
            }
        }
        let (nf, ng) = problem.value_and_gradient(&cores);
        f = nf;
        grads = ng;
        report.iterations += 1;
        report.objective_trace.push(f);

        if cfg.record_diagnostics {
            report.diagnostics.push(IterationDiagnostics {
                iteration: report.iterations,
                objective: report.objective_trace[report.objective_trace.len() - 2],
                gradient_norm: gnorm,
                predicted_slope: slope0,
                measured_slope: measured,
                tau: outcome.tau,
                wolfe: outcome.wolfe,
                orthogonality_error: max_orthogonality_error(&cores),
                escape: false,
            });
        }
    }
    report.final_objective = f;
    log::debug!(
        "stiefel descent: {} iterations, objective {:.6e} -> {:.6e}, |grad| {:.3e}",
        report.iterations,
        report.initial_objective,
        report.final_objective,
        report.gradient_norm
    );

    let rotations = sel
        .levels()
        .iter()
        .zip(cores)
        .map(|(lvl, core)| KPointRotation::new_corrected(sel.n(), lvl.rotation_support.clone(), core))
        .collect::<Result<Vec<_>>>()?;
    let rotated = SymmetricMatrix::from_symmetric_unchecked(problem.rotated(
        &rotations.iter().map(|u| u.core().clone()).collect::<Vec<_>>(),
    ));
    let h = core_diagonal_project(&rotated, &sel.final_active())?;
    let fact = MmfFactorization::new(sel.clone(), rotations, h)?;
    Ok((fact, report))
}
