//! Fetching a zero table with a checksum: here from a local file:// URL;
//! http(s) URLs go through the same path.
//!
//!     cargo run --release --example fetch_table

mod common;

use zeta_shift::fetch::{fetch_zero_table, load_verified, sha256_file};

fn main() -> zeta_shift::Result<()> {
    let source = common::table_path(1000);
    let digest = sha256_file(&source)?;
    let dest = std::env::temp_dir().join("zeta-shift-fetch-example");
    let url = format!("file://{}", source.display());

    let stored = fetch_zero_table(&url, &digest, &dest, "zeros_1000.txt")?;
    println!("stored {} (sha256 {digest})", stored.display());
    let zs = load_verified(&stored, &digest, None)?;
    println!("{} zeros, last {:.6}", zs.count(), zs.t_max());

    let bad = "0".repeat(64);
    match fetch_zero_table(&url, &bad, &dest, "rejected.txt") {
        Err(e) => println!("wrong checksum refused: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
