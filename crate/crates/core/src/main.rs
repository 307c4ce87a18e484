use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let outcome = pirho::cli::run(&argv);
    std::io::stdout().write_all(outcome.stdout.as_bytes()).expect("write stdout");
    std::io::stderr().write_all(outcome.stderr.as_bytes()).expect("write stderr");
    std::process::exit(outcome.code);
}
