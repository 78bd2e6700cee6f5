use clap::Parser;
use workbench::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    let code = run(&cli, &mut out);
    std::process::exit(code);
}
