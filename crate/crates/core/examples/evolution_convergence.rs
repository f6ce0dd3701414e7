//! Searching wavelet orderings with the evolutionary algorithm and the
//! directed-evolution variant, against random candidates.

use mmf::evolution::{evolve_de, evolve_ea, fitness, EvoParams};
use mmf::graph::{karate_graph, normalized_laplacian};
use mmf::selection::random_candidate;

fn main() -> mmf::Result<()> {
    let a = normalized_laplacian(&karate_graph())?;
    let base = EvoParams {
        population: 40,
        iterations: 100,
        mutation_rate: 0.3,
        seed: 5,
        levels: 26,
        k: 8,
        c: 1,
    };
    let ea = evolve_ea(&a, &base)?;
    let de = evolve_de(&a, &EvoParams { population: 10, ..base.clone() })?;

    let random_best = (0..40)
        .map(|s| fitness(&a, &random_candidate(34, 26, 1, 1000 + s).unwrap(), 8, 1))
        .fold(f64::INFINITY, f64::min);
    println!("best of 40 random candidates: {random_best:.4}");

    println!("{:>4} {:>10} {:>10}", "gen", "EA", "DE");
    let (ea_t, de_t) = (ea.log.best_trace(), de.log.best_trace());
    for g in (0..ea_t.len()).step_by(10) {
        println!("{g:>4} {:>10.4} {:>10.4}", ea_t[g], de_t[g]);
    }
    println!("EA best {:.4} ({} evaluations)", ea.best_fitness, ea.log.records.last().map_or(0, |r| r.evaluations));
    println!("DE best {:.4} ({} evaluations)", de.best_fitness, de.log.records.last().map_or(0, |r| r.evaluations));
    println!("\n{}", ea.log.to_csv().lines().take(4).collect::<Vec<_>>().join("\n"));
    Ok(())
}
