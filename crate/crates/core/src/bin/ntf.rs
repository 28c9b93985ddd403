fn main() {
    let result = ntf_core::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(result.exit_code);
}
