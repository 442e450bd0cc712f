use std::io::Write;

fn main() {
    let out = lrtrop::run(std::env::args_os());
    // Ignore broken pipes: the exit status still reports the outcome.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
