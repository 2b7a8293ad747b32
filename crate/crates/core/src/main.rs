use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = burnt_pancake::cli::run(std::env::args(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code as u8)
}
