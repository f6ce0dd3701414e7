//! The command-line pipeline driven in process: generate, factorize,
//! export wavelets, then replay the factorization from its manifest.

use mmf::cli::run_from_args;

fn mmf(args: &[&str]) -> mmf::Result<()> {
    println!("$ mmf {}", args.join(" "));
    run_from_args(std::iter::once("mmf").chain(args.iter().copied()))
}

fn main() -> mmf::Result<()> {
    let dir = std::env::temp_dir().join(format!("mmf-cli-{}", std::process::id()));
    let out = dir.to_str().expect("utf-8 temp path");
    let replay_dir = dir.join("replay");
    let replay = replay_dir.to_str().expect("utf-8 temp path");
    let matrix = dir.join("karate.mtx");
    let fact = dir.join("factorization.json");
    let manifest = dir.join("factorize.manifest.json");

    mmf(&["--out", out, "generate", "karate"])?;
    mmf(&[
        "--out", out, "--seed", "1", "--mask-timing", "factorize", matrix.to_str().unwrap(),
        "--method", "de", "-L", "26", "-k", "8", "--population", "10", "--iterations", "30",
    ])?;
    mmf(&["--out", out, "wavelets", fact.to_str().unwrap(), "--prefix", "basis"])?;
    mmf(&["--out", replay, "replay", manifest.to_str().unwrap()])?;

    let same = std::fs::read(&fact)? == std::fs::read(replay_dir.join("factorization.json"))?;
    println!("replayed factorization identical: {same}");
    print!("{}", std::fs::read_to_string(dir.join("summary.csv"))?);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
