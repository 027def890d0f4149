// Driving the command-line front end in-process.

use clap::Parser;
use resglue::algebra::catalog::boolean;
use resglue::algebra::io::to_text;
use resglue::cli::{run, Cli};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("resglue-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let two = dir.join("two.rl");
    std::fs::write(&two, to_text(&boolean()))?;
    let two = two.to_str().ok_or("path")?;

    let out = run(&Cli::try_parse_from([
        "resglue", "glue", "--mode", "one-sum", two, two,
    ])?);
    assert_eq!(out.code, 0);
    print!("{}", out.stdout);
    let out = run(&Cli::try_parse_from([
        "resglue",
        "--format",
        "structured",
        "verify",
        two,
    ])?);
    print!("{}", out.stdout);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() {
    run_example().unwrap();
}
