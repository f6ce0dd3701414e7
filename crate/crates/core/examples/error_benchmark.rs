//! Karate error against the final core size d_L: learned MMF (evolutionary
//! selection, then Stiefel descent), greedy Jacobi and Nyström.
//! Uses a reduced search budget so it runs in seconds.

use mmf::baselines::nystrom;
use mmf::evolution::{evolve_ea, EvoParams};
use mmf::graph::{karate_graph, normalized_laplacian};
use mmf::mmf::{factorization_error, KPointRotation};
use mmf::selection::{build_selection, greedy_jacobi_mmf};
use mmf::stiefel::{optimize, StiefelConfig};

fn main() -> mmf::Result<()> {
    let a = normalized_laplacian(&karate_graph())?;
    let n = a.n();
    let k = 8;
    println!("{:>4} {:>10} {:>10} {:>10}", "d_L", "learned", "greedy", "nystrom");
    for d_l in [4, 8, 12, 16] {
        let levels = n - d_l;
        let p = EvoParams {
            population: 20,
            iterations: 30,
            mutation_rate: 0.3,
            seed: d_l as u64,
            levels,
            k,
            c: 1,
        };
        let best = evolve_ea(&a, &p)?.best;
        let sel = build_selection(&a, &best, k, 1)?;
        let init: Vec<KPointRotation> = sel
            .levels()
            .iter()
            .map(|l| KPointRotation::identity(n, l.rotation_support.clone()))
            .collect::<mmf::Result<_>>()?;
        let (f, _) = optimize(&a, &sel, &init, &StiefelConfig::default())?;
        let learned = factorization_error(&a, &f)?;
        let greedy = factorization_error(&a, &greedy_jacobi_mmf(&a, levels)?)?;
        let ny = (0..20).map(|s| nystrom(&a, d_l, s).map(|r| r.error)).sum::<mmf::Result<f64>>()? / 20.0;
        println!("{d_l:>4} {learned:>10.4} {greedy:>10.4} {ny:>10.4}");
    }
    Ok(())
}
