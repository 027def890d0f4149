use clap::Parser;
use resglue::cli::{run, Cli};
use std::io::Write;

fn main() {
    if let Some(n) = std::env::var("RESGLUE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let cli = Cli::parse();
    let out = run(&cli);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
