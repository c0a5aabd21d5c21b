//! ∫₁^∞ (F − F_h)/α^p for p = 2, 4 with rigorous brackets, and the unit
//! blocks ∫_c^{c+1}(F − F_h) behind them.
//!
//!     cargo run --release --example tail_integrals

mod common;

use zeta_shift::paircorr::{block_integrals_multi, tail_integrals, PairSumConfig, BLOCK_CEILING, DEFAULT_SUB_BLOCK};

fn main() -> zeta_shift::Result<()> {
    let zs = common::zeros(100_000);
    let cfg = PairSumConfig::windowed(40.0);
    let hs = [0.5, 1.0, 2.0];
    for r in tail_integrals(&zs, &hs, &[2, 4], 10.0, DEFAULT_SUB_BLOCK, &cfg)?.iter().zip(hs.iter().flat_map(|&h| [h, h])) {
        let (t, h) = r;
        println!(
            "h = {h}, p = {}: ∫₁^10 = {:.5}, + diagonal beyond = {:.5}, bracket for ∫₁^∞ [{:.4}, {:.4}]",
            t.exponent,
            t.value,
            t.estimate(),
            t.bracket.0,
            t.bracket.1
        );
    }
    let blocks = block_integrals_multi(&zs, 1.0, 1.0, 8, &hs, &cfg)?;
    for (b, h) in blocks.iter().zip(hs) {
        let v: Vec<String> = b.values.iter().map(|v| format!("{v:.3}")).collect();
        println!("h = {h}: blocks c = 1..8: {} (ceiling {BLOCK_CEILING:.3})", v.join(" "));
    }
    Ok(())
}
