use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use darkbright_cli::{run, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let result = args
        .into_config()
        .and_then(|cfg| run(&cfg, &mut stdout, &mut stderr));
    let _ = stdout.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(stderr, "darkbright: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
