fn main() { std::process::exit(geominf::cli::run(std::env::args().skip(1).collect())) }
