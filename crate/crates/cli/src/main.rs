use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ddf_cli::{apply_max_order_env, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = apply_max_order_env().and_then(|()| run(cli));
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
