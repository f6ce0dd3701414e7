use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use super::pipeline::{run_method, FactorizeSettings, Method};
use super::tables::{parse_features_csv, parse_labels_csv};
use super::{BenchMethod, BenchmarkArgs, Cli, Command, FactorizeArgs, GenerateArgs, GeneratorKind, WaveletsArgs, WnnArgs};
use crate::baselines::nystrom;
use crate::error::{MmfError, Result};
use crate::graph::{cayley_tree, karate_graph, kronecker_power, normalized_laplacian};
use crate::io::{read_factorization, read_matrix, write_factorization, write_matrix};
use crate::linalg::Matrix;
use crate::mmf::SymmetricMatrix;
use crate::wavelets::{extract_basis, sparsity};
use crate::wnn::{train, LabeledNodes, Network, Nonlinearity};

pub(super) fn dispatch(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Generate(a) => generate(a, &g.out),
        Command::Factorize(a) => factorize(a, g.seed, g.mask_timing, &g.out),
        Command::Benchmark(a) => benchmark(a, g.seed, g.mask_timing, &g.out),
        Command::Wavelets(a) => wavelets(a, &g.out),
        Command::Wnn(a) => wnn(a, g.seed, &g.out),
        Command::Replay(_) => unreachable!("replay is resolved before dispatch"),
    }
}

fn write(path: impl AsRef<Path>, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

fn generate(a: &GenerateArgs, out: &Path) -> Result<()> {
    let (m, default_name) = match a.kind {
        GeneratorKind::Karate => (normalized_laplacian(&karate_graph())?, "karate.mtx"),
        GeneratorKind::CayleyTree => (normalized_laplacian(&cayley_tree(a.z, a.depth)?)?, "cayley-tree.mtx"),
        GeneratorKind::Kronecker => {
            let [s00, s01, s11] = a.seed_matrix[..] else {
                return Err(MmfError::InvalidParameter(format!(
                    "--seed-matrix needs 3 entries s00,s01,s11, got {}",
                    a.seed_matrix.len()
                )));
            };
            let seed = SymmetricMatrix::from_rows(&[[s00, s01], [s01, s11]])?;
            (kronecker_power(&seed, a.order)?, "kronecker.mtx")
        }
    };
    let name = a.name.as_deref().unwrap_or(default_name);
    log::info!("writing {}x{} matrix to {name}", m.n(), m.n());
    write_matrix(out.join(name), &m)
}

fn settings(
    method: Method,
    levels: usize,
    k: usize,
    c: usize,
    seed: u64,
    evo: &super::EvoArgs,
    stiefel: &super::StiefelArgs,
) -> FactorizeSettings {
    FactorizeSettings {
        method,
        levels,
        k,
        c,
        seed,
        population: evo.population,
        iterations: evo.iterations,
        mutation_rate: evo.mutation_rate,
        stiefel: stiefel.config(),
    }
}

fn factorize(a: &FactorizeArgs, seed: u64, mask_timing: bool, out: &Path) -> Result<()> {
    let m = read_matrix(&a.matrix)?;
    let s = settings(a.method, a.levels, a.k, a.c, seed, &a.evo, &a.stiefel);
    let run = run_method(&m, &s)?;
    write_factorization(out.join("factorization.json"), &run.factorization)?;

    let iterations = run.descent.as_ref().map_or(0, |d| d.iterations);
    let mut summary = String::from("method,n,L,k,c,d_L,initial_error,final_error,iterations\n");
    let _ = writeln!(
        summary,
        "{},{},{},{},{},{},{:.12e},{:.12e},{}",
        a.method.name(),
        m.n(),
        a.levels,
        if a.method == Method::GreedyJacobi { 2 } else { a.k },
        a.c,
        m.n() - a.levels * a.c,
        run.initial_error,
        run.final_error,
        iterations
    );
    write(out.join("summary.csv"), &summary)?;

    if let Some(mut log) = run.convergence {
        if mask_timing {
            log.records.iter_mut().for_each(|r| r.elapsed_seconds = 0.0);
        }
        log.write_csv(out.join("convergence.csv"))?;
    }
    if let Some(d) = &run.descent {
        let mut trace = String::from("iteration,objective\n");
        for (i, f) in d.objective_trace.iter().enumerate() {
            let _ = writeln!(trace, "{i},{f:.12e}");
        }
        write(out.join("descent.csv"), &trace)?;
    }
    println!("{}: final error {:.6e}", a.method.name(), run.final_error);
    Ok(())
}

struct Cell {
    method: BenchMethod,
    d_l: usize,
    seed: u64,
}

struct Row {
    method: BenchMethod,
    d_l: usize,
    seed: u64,
    error: f64,
    seconds: f64,
    reason: String,
}

fn bench_cell(m: &SymmetricMatrix, a: &BenchmarkArgs, cell: &Cell) -> Result<f64> {
    let n = m.n();
    if cell.d_l == 0 || cell.d_l > n {
        return Err(MmfError::InvalidParameter(format!("d_L = {} outside 1..={n}", cell.d_l)));
    }
    let method = match cell.method {
        BenchMethod::Nystrom => return Ok(nystrom(m, cell.d_l, cell.seed)?.error),
        BenchMethod::LearnedEa => Method::Ea,
        BenchMethod::LearnedDe => Method::De,
        BenchMethod::Heuristic => Method::Heuristic,
        BenchMethod::Random => Method::Random,
        BenchMethod::GreedyJacobi => Method::GreedyJacobi,
    };
    let c = if method == Method::GreedyJacobi { 1 } else { a.c };
    if (n - cell.d_l) % c != 0 {
        return Err(MmfError::InvalidParameter(format!("n − d_L = {} not divisible by c = {c}", n - cell.d_l)));
    }
    let s = settings(method, (n - cell.d_l) / c, a.k, c, cell.seed, &a.evo, &a.stiefel);
    Ok(run_method(m, &s)?.final_error)
}

fn benchmark(a: &BenchmarkArgs, seed: u64, mask_timing: bool, out: &Path) -> Result<()> {
    let m = read_matrix(&a.matrix)?;
    let mut cells = Vec::new();
    for &method in &a.methods {
        let count = match method {
            BenchMethod::GreedyJacobi => 1,
            BenchMethod::Nystrom => a.nystrom_seeds,
            _ => a.seeds,
        };
        for &d_l in &a.dl_grid {
            for s in 0..count {
                cells.push(Cell {
                    method,
                    d_l,
                    seed: seed.wrapping_add(s),
                });
            }
        }
    }
    let mut rows: Vec<Row> = cells
        .par_iter()
        .map(|cell| {
            let start = Instant::now();
            let result = bench_cell(&m, a, cell);
            let seconds = if mask_timing { 0.0 } else { start.elapsed().as_secs_f64() };
            let (error, reason) = match result {
                Ok(e) => (e, String::new()),
                Err(e) => {
                    log::warn!("{} d_L={} seed={}: {e}", cell.method.name(), cell.d_l, cell.seed);
                    (f64::NAN, e.to_string().replace([',', '\n'], ";"))
                }
            };
            Row {
                method: cell.method,
                d_l: cell.d_l,
                seed: cell.seed,
                error,
                seconds,
                reason,
            }
        })
        .collect();
    rows.sort_by_key(|r| (r.method, r.d_l, r.seed));

    let mut csv = String::from("method,d_L,seed,error,seconds,reason\n");
    for r in &rows {
        let _ = writeln!(csv, "{},{},{},{:.12e},{:.6},{}", r.method.name(), r.d_l, r.seed, r.error, r.seconds, r.reason);
    }
    write(out.join("benchmark.csv"), &csv)?;

    let mut summary = String::from("method,d_L,runs,mean_error,min_error,mean_seconds\n");
    let mut i = 0;
    while i < rows.len() {
        let j = i + rows[i..].iter().take_while(|r| (r.method, r.d_l) == (rows[i].method, rows[i].d_l)).count();
        let ok: Vec<&Row> = rows[i..j].iter().filter(|r| r.error.is_finite()).collect();
        let k = ok.len().max(1) as f64;
        let mean = if ok.is_empty() { f64::NAN } else { ok.iter().map(|r| r.error).sum::<f64>() / k };
        let min = ok.iter().map(|r| r.error).fold(f64::NAN, f64::min);
        let secs = ok.iter().map(|r| r.seconds).sum::<f64>() / k;
        let _ = writeln!(summary, "{},{},{},{mean:.12e},{min:.12e},{secs:.6}", rows[i].method.name(), rows[i].d_l, ok.len());
        i = j;
    }
    write(out.join("benchmark_summary.csv"), &summary)?;
    print!("{summary}");
    Ok(())
}

fn wavelets(a: &WaveletsArgs, out: &Path) -> Result<()> {
    let f = read_factorization(&a.factorization)?;
    let basis = extract_basis(&f)?;
    let frac = sparsity(&basis, a.threshold)?;
    basis.write(out.join(&a.prefix))?;

    let dir = out.join(format!("{}_wavelets", a.prefix));
    std::fs::create_dir_all(&dir)?;
    let width = basis.n.saturating_sub(1).to_string().len();
    for row in 0..basis.n {
        let mut csv = String::from("vertex,value\n");
        for (v, x) in basis.wavelet(row).iter().enumerate() {
            let _ = writeln!(csv, "{v},{x:.16e}");
        }
        write(dir.join(format!("wavelet_{row:0width$}.csv")), &csv)?;
    }
    let summary = format!(
        "n,mothers,fathers,orthogonality_error,sparsity\n{},{},{},{:.6e},{:.12}\n",
        basis.n,
        basis.mother_rows.len(),
        basis.father_rows.len(),
        basis.orthogonality_error(),
        frac
    );
    write(out.join(format!("{}_summary.csv", a.prefix)), &summary)?;
    println!("sparsity {frac:.6} ({} wavelets)", basis.n);
    Ok(())
}

fn wnn(a: &WnnArgs, seed: u64, out: &Path) -> Result<()> {
    let m = read_matrix(&a.matrix)?;
    let n = m.n();
    let split = parse_labels_csv(&std::fs::read_to_string(&a.labels)?, n)?;
    let f0 = match &a.features {
        Some(p) => parse_features_csv(&std::fs::read_to_string(p)?, n)?,
        None => Matrix::from_fn(n, 1, |_, _| 1.0),
    };
    let levels = a.levels.unwrap_or(n.saturating_sub(1));
    let s = settings(a.method, levels, a.k, 1, seed, &a.evo, &a.stiefel);
    let run = run_method(&m, &s)?;
    let basis = extract_basis(&run.factorization)?;

    let mut channels = vec![f0.cols()];
    channels.extend(&a.hidden);
    channels.push(split.classes.max(2));
    let classes = *channels.last().expect("non-empty");
    let mut net = Network::new(n, &channels, Nonlinearity::Relu)?;
    let train_labels = LabeledNodes::new(split.train.clone(), classes)?;
    let test_labels = LabeledNodes::new(split.test.clone(), classes)?;
    let report = train(&mut net, &basis, &f0, &train_labels, a.lr, a.epochs)?;

    let mut loss_csv = String::from("epoch,loss\n");
    for (e, l) in report.loss_trace.iter().enumerate() {
        let _ = writeln!(loss_csv, "{e},{l:.12e}");
    }
    write(out.join("loss.csv"), &loss_csv)?;

    let final_loss = net.loss(&basis, &f0, &train_labels)?;
    let train_acc = net.accuracy(&basis, &f0, &train_labels)?;
    let test_acc = if split.test.is_empty() {
        f64::NAN
    } else {
        net.accuracy(&basis, &f0, &test_labels)?
    };
    let metrics = format!(
        "epochs,final_loss,train_accuracy,test_accuracy,diverged,factorization_error\n{},{final_loss:.12e},{train_acc:.6},{test_acc:.6},{},{:.12e}\n",
        report.loss_trace.len(),
        report.diverged,
        run.final_error
    );
    write(out.join("metrics.csv"), &metrics)?;
    net.write(out.join("network.json"))?;
    println!("held-out accuracy {test_acc:.4}");
    Ok(())
}
