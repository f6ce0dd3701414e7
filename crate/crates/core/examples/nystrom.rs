//! Nyström column sampling as a baseline low-rank approximation.

use mmf::baselines::{nystrom, nystrom_error};
use mmf::graph::{karate_graph, normalized_laplacian};

fn main() -> mmf::Result<()> {
    let a = normalized_laplacian(&karate_graph())?;
    println!("{:>3} {:>10} {:>10} {:>10}", "d", "mean", "min", "max");
    for d in [4, 8, 12, 16, 24, 34] {
        let errs: Vec<f64> = (0..20).map(|s| nystrom(&a, d, s).map(|r| r.error)).collect::<mmf::Result<_>>()?;
        let mean = errs.iter().sum::<f64>() / errs.len() as f64;
        let min = errs.iter().copied().fold(f64::INFINITY, f64::min);
        let max = errs.iter().copied().fold(0.0, f64::max);
        println!("{d:>3} {mean:>10.4} {min:>10.4} {max:>10.4}");
    }
    // hub vertices of the club
    println!("columns [0, 33, 32, 2]: {:.4}", nystrom_error(&a, &[0, 33, 32, 2])?);
    Ok(())
}
