use std::io::Write;

fn main() {
    let result = tricolour::cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(result.report.as_bytes());
    let _ = stdout.flush();
    std::process::exit(result.exit_code);
}
