use std::io::Write;

fn main() {
    let outcome = g2motive::cli::run(std::env::args());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
