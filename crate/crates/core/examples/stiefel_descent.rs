//! Learning the rotations for a fixed index selection by descent on the
//! orthogonal groups. Prints the objective trace and the slope check at a
//! few iterations.

use mmf::graph::{karate_graph, normalized_laplacian};
use mmf::mmf::{factorization_error, KPointRotation};
use mmf::selection::{build_selection, random_candidate};
use mmf::stiefel::{optimize, StiefelConfig};

fn main() -> mmf::Result<()> {
    let a = normalized_laplacian(&karate_graph())?;
    let (k, levels) = (8, 26);
    let cand = random_candidate(a.n(), levels, 1, 3)?;
    let sel = build_selection(&a, &cand, k, 1)?;
    let init: Vec<KPointRotation> = sel
        .levels()
        .iter()
        .map(|l| KPointRotation::identity(a.n(), l.rotation_support.clone()))
        .collect::<mmf::Result<_>>()?;

    let cfg = StiefelConfig {
        record_diagnostics: true,
        max_outer_iters: 200,
        ..StiefelConfig::default()
    };
    let (f, report) = optimize(&a, &sel, &init, &cfg)?;

    println!("iter  objective     slope(pred)   slope(meas)   tau       ‖OᵀO−I‖");
    for d in report.diagnostics.iter().filter(|d| d.iteration % 20 == 0) {
        println!(
            "{:>4}  {:<12.6} {:>12.4e}  {:>12.4e}  {:<8.2e}  {:.1e}",
            d.iteration, d.objective, d.predicted_slope, d.measured_slope, d.tau, d.orthogonality_error
        );
    }
    println!(
        "error {:.4} -> {:.4} in {} iterations (converged: {}, stalled: {})",
        report.initial_error(),
        report.final_error(),
        report.iterations,
        report.converged,
        report.stalled
    );
    println!("recomputed error {:.4}", factorization_error(&a, &f)?);
    Ok(())
}
