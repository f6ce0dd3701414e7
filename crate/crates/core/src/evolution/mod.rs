//! Population search over wavelet orderings: a generational evolutionary
//! algorithm and an elitist directed-evolution variant.

mod operators;

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MmfError, Result};
use crate::mmf::{residual_norm_sq, SymmetricMatrix};
use crate::rng::stream;
use crate::selection::{build_selection, random_candidate_with, Candidate};

pub use operators::{crossover, crossover_at, crossover_with, mutate, mutate_with};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvoParams {
    /// Population size `p_max`; even.
    pub population: usize,
    /// Generations `i_max`.
    pub iterations: usize,
    /// Per-operator mutation probability (EA only).
    pub mutation_rate: f64,
    pub seed: u64,
    /// Levels `L`.
    pub levels: usize,
    /// Rotation order.
    pub k: usize,
    /// Wavelets per level.
    pub c: usize,
}

impl EvoParams {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.population < 2 || self.population % 2 != 0 {
            return Err(MmfError::InvalidParameter(format!(
                "population must be even and at least 2, got {}",
                self.population
            )));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(MmfError::InvalidParameter(format!(
                "mutation rate {} outside [0, 1]",
                self.mutation_rate
            )));
        }
        if self.c == 0 || self.levels * self.c >= n {
            return Err(MmfError::InvalidParameter(format!(
                "L·c = {} must be in [1, n - 1] for n = {n}",
                self.levels * self.c
            )));
        }
        if self.k < 2 || self.k <= self.c {
            return Err(MmfError::InvalidParameter(format!(
                "rotation order k = {} must be at least 2 and exceed c = {}",
                self.k, self.c
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub elapsed_seconds: f64,
    /// Fitness evaluations spent so far.
    pub evaluations: usize,
}

/// Per-generation history. Generation 0 describes the initial best guess
/// before any population has been evaluated.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceLog {
    pub records: Vec<GenerationRecord>,
}

impl ConvergenceLog {
    pub const CSV_HEADER: &'static str = "generation,best_fitness,mean_fitness,elapsed_seconds";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{:.6}",
                r.generation, r.best_fitness, r.mean_fitness, r.elapsed_seconds
            );
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn best_trace(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.best_fitness).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionOutcome {
    pub best: Candidate,
    pub best_fitness: f64,
    pub log: ConvergenceLog,
}

/// Residual left when every rotation is the identity: the off-diagonal mass
/// of `a` outside the final core. Invalid candidates score `+∞`.
pub fn fitness(a: &SymmetricMatrix, cand: &Candidate, k: usize, c: usize) -> f64 {
    match build_selection(a, cand, k, c).and_then(|sel| residual_norm_sq(a, &sel.final_active())) {
        Ok(v) => v,
        Err(e) => {
            log::warn!("candidate {:?} rejected: {e}", cand.order);
            f64::INFINITY
        }
    }
}

fn evaluate(a: &SymmetricMatrix, pop: &[Candidate], k: usize, c: usize) -> Vec<f64> {
    pop.par_iter().map(|cand| fitness(a, cand, k, c)).collect()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Positions of the fittest half, best first; ties keep population order.
fn top_half(fit: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..fit.len()).collect();
    idx.sort_by(|&x, &y| fit[x].total_cmp(&fit[y]));
    idx.truncate(fit.len() / 2);
    idx
}

struct Tracker {
    start: Instant,
    best: Candidate,
    best_fitness: f64,
    log: ConvergenceLog,
    evaluations: usize,
}

impl Tracker {
    fn new(a: &SymmetricMatrix, p: &EvoParams) -> Result<Self> {
        let start = Instant::now();
        let mut rng = stream(p.seed, 0, p.population as u64);
        let best = random_candidate_with(&mut rng, a.n(), p.levels, p.c)?;
        let best_fitness = fitness(a, &best, p.k, p.c);
        let mut t = Self {
            start,
            best,
            best_fitness,
            log: ConvergenceLog::default(),
            evaluations: 1,
        };
        t.record(0, best_fitness);
        Ok(t)
    }

    fn absorb(&mut self, pop: &[Candidate], fit: &[f64]) {
        self.evaluations += pop.len();
        if let Some((i, &f)) = fit.iter().enumerate().min_by(|x, y| x.1.total_cmp(y.1)) {
            if f < self.best_fitness {
                self.best_fitness = f;
                self.best = pop[i].clone();
            }
        }
    }

    fn record(&mut self, generation: usize, mean_fitness: f64) {
        self.log.records.push(GenerationRecord {
            generation,
            best_fitness: self.best_fitness,
            mean_fitness,
            elapsed_seconds: self.start.elapsed().as_secs_f64(),
            evaluations: self.evaluations,
        });
    }

    fn finish(self) -> EvolutionOutcome {
        EvolutionOutcome {
            best: self.best,
            best_fitness: self.best_fitness,
            log: self.log,
        }
    }
}

fn initial_population(a: &SymmetricMatrix, p: &EvoParams) -> Result<Vec<Candidate>> {
    (0..p.population)
        .map(|i| random_candidate_with(&mut stream(p.seed, 0, i as u64), a.n(), p.levels, p.c))
        .collect()
}

/// Generational evolutionary algorithm.
///
/// Each generation evaluates the population, keeps the fittest half as
/// parents, and replaces the whole population with `p_max` children made by
/// crossing random distinct parent pairs and mutating the results. The best
/// candidate ever evaluated is returned.
pub fn evolve_ea(a: &SymmetricMatrix, p: &EvoParams) -> Result<EvolutionOutcome> {
    p.validate(a.n())?;
    let n = a.n();
    let mut tracker = Tracker::new(a, p)?;
    let mut pop = initial_population(a, p)?;

    for gen in 1..=p.iterations {
        let fit = evaluate(a, &pop, p.k, p.c);
        tracker.absorb(&pop, &fit);
        let parents: Vec<&Candidate> = top_half(&fit).into_iter().map(|i| &pop[i]).collect();

        let mut next = Vec::with_capacity(p.population);
        for pair in 0..p.population / 2 {
            let mut rng = stream(p.seed, gen as u64, pair as u64);
            let np = parents.len();
            let i = rng.gen_range(0..np);
            let j = if np == 1 {
                i
            } else {
                let j = rng.gen_range(0..np - 1);
                if j >= i {
                    j + 1
                } else {
                    j
                }
            };
            let (c1, c2) = crossover_with(&mut rng, parents[i], parents[j])?;
            next.push(mutate_with(&mut rng, &c1, p.mutation_rate, n));
            next.push(mutate_with(&mut rng, &c2, p.mutation_rate, n));
        }
        tracker.record(gen, mean(&fit));
        pop = next;
    }
    Ok(tracker.finish())
}

/// Elitist directed evolution.
///
/// The fittest half survives unchanged and each survivor contributes one
/// child made by a forced swap and a forced replacement. Survivor fitness
/// is carried over rather than recomputed.
pub fn evolve_de(a: &SymmetricMatrix, p: &EvoParams) -> Result<EvolutionOutcome> {
    p.validate(a.n())?;
    let n = a.n();
    let mut tracker = Tracker::new(a, p)?;
    let mut pop = initial_population(a, p)?;
    let mut fit: Vec<f64> = Vec::new();

    for gen in 1..=p.iterations {
        if fit.len() < pop.len() {
            let fresh = evaluate(a, &pop[fit.len()..], p.k, p.c);
            tracker.absorb(&pop[fit.len()..], &fresh);
            fit.extend(fresh);
        }
        let keep = top_half(&fit);
        let parents: Vec<Candidate> = keep.iter().map(|&i| pop[i].clone()).collect();
        let parent_fit: Vec<f64> = keep.iter().map(|&i| fit[i]).collect();
        tracker.record(gen, mean(&fit));

        let children: Vec<Candidate> = parents
            .iter()
            .enumerate()
            .map(|(i, s)| mutate_with(&mut stream(p.seed, gen as u64, i as u64), s, 1.0, n))
            .collect();
        pop = parents;
        pop.extend(children);
        fit = parent_fit;
    }
    Ok(tracker.finish())
}
