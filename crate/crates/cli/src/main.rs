use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let (out, err, code) = sumloc::run(&argv);
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    let _ = std::io::stderr().flush();
    ExitCode::from(code as u8)
}
