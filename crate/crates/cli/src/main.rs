use std::io::Write;
use std::process::ExitCode;

use inflatable_cli::{run, Status};

fn main() -> ExitCode {
    let result = run(std::env::args_os().skip(1));
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(result.output.as_bytes());
    let _ = stdout.flush();
    let mut stderr = std::io::stderr().lock();
    for line in &result.diagnostics {
        let _ = writeln!(stderr, "{line}");
    }
    if result.status == Status::Error {
        let _ = writeln!(stderr, "{}", result.payload);
    }
    ExitCode::from(result.exit_code as u8)
}
