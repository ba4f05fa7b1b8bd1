use std::io;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let code = flatham_cli::run(&args, &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
