// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = averaging_cli::configure_threads() {
        eprintln!("averaging: {e}");
        return ExitCode::from(1);
    }
    let result = averaging_cli::run(std::env::args_os());
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = out.write_all(result.stdout().as_bytes());
    if !result.diagnostics.is_empty() {
        eprintln!("{}", result.diagnostics.trim_end());
    }
    ExitCode::from(result.exit_code() as u8)
}
