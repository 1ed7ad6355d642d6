use std::io::Write;

fn main() {
    let (out, code) = sharpset_cli::run(std::env::args());
    // A closed pipe is not an error worth reporting.
    let _ = writeln!(std::io::stdout(), "{out}");
    std::process::exit(code);
}
