fn main() { std::process::exit(shepkit::cli::main_with_env()); }
