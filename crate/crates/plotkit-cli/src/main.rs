use std::io::{stderr, stdout};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let code = plotkit_cli::run_cli(&argv, &mut stdout().lock(), &mut stderr().lock());
    std::process::exit(code);
}
