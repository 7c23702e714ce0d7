use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use etsearch_cli::args::Cli;
use etsearch_cli::{error_code, execute, exit};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let code = match execute(cli, &mut out, &mut err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            error_code(&e)
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
