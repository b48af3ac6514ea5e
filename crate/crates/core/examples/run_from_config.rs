//! Drive a complete run from a TOML file, write every output file, then print the report.
//!
//! cargo run --release --example run_from_config [config.toml] [output dir]

use std::path::PathBuf;

use momdwa::harness::{load_config, output_paths, report, run, Overrides};

fn main() -> momdwa::Result<()> {
    let mut args = std::env::args().skip(1);
    let path =
        PathBuf::from(args.next().unwrap_or_else(|| {
            concat!(env!("CARGO_MANIFEST_DIR"), "/examples/q1_quick.toml").into()
        }));
    let overrides = Overrides {
        output_dir: args.next().map(PathBuf::from),
        ..Overrides::default()
    };
    let config = load_config(Some(&path), &overrides)?;
    let summary = run(&config)?;
    println!("finished in {:.2}s", summary.wall_clock_seconds);
    for p in output_paths(&config) {
        println!("  {}", p.display());
    }
    print!("{}", report(&config.output_dir)?);
    Ok(())
}
