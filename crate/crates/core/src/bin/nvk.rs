use std::io;
use std::process::ExitCode;

use novikov::{cli, exec};

fn main() -> ExitCode {
    if let Some(n) = std::env::var("NVK_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        exec::init_threads(n);
    }
    let args: Vec<String> = std::env::args().collect();
    let code = cli::run(&args, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
