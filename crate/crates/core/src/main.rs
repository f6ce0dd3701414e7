use std::process::ExitCode;

fn main() -> ExitCode {
    mmf::cli::init_logging();
    let cli = match <mmf::cli::Cli as clap::Parser>::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match mmf::cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
