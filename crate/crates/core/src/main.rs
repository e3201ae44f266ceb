use std::io::Write;

fn main() {
    let out = instanton_core::cli::run_command(std::env::args());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
