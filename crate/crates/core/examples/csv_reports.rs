//! The report layer behind the `zeta-shift` binary, driven from code: each
//! suite writes one CSV with the input digest and a config echo per row.
//!
//!     cargo run --release --example csv_reports

mod common;

use zeta_shift::cli::{main_with, run, Command, RunConfig};

fn main() -> zeta_shift::Result<()> {
    let zeros = common::table_path(2000);
    let out = std::env::temp_dir().join("zeta-shift-reports");
    let cfg = RunConfig {
        zeros_path: Some(zeros.clone()),
        prime_limit: 1_000_000,
        out_dir: out.clone(),
        ..Default::default()
    };
    for cmd in [Command::ZerosStat, Command::Theorem2, Command::Moment] {
        let r = run(&cmd, &cfg)?;
        if let Some(p) = r.report {
            println!("== {} (checks passed: {})", p.display(), r.passed);
            print!("{}", std::fs::read_to_string(p)?);
        }
    }

    // the same through argument parsing, as the binary does it
    let status = main_with([
        "zeta-shift",
        "paircorr",
        "--zeros",
        zeros.to_str().unwrap_or_default(),
        "--h",
        "0.5,1",
        "--alpha-count",
        "5",
        "--out",
        out.to_str().unwrap_or_default(),
    ]);
    println!("paircorr exit status {status}");
    Ok(())
}
