fn main() {
    let code = torus_severi::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
