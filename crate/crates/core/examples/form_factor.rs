//! Fejér-weighted pair sums: the form factor at β = 1 against 4/3 and its
//! h-dependent prediction, and the Fejér block identity on a small table.
//!
//!     cargo run --release --example form_factor

mod common;

use zeta_shift::paircorr::{fejer_block, form_factor, PairSumConfig};

fn main() -> zeta_shift::Result<()> {
    let zs = common::zeros(100_000);
    let cfg = PairSumConfig::windowed(50.0);
    for h in [0.0, 0.25, 0.5, 1.0] {
        let f = form_factor(&zs, 1.0, h, &cfg)?;
        println!("β = 1, h = {h:<4}: empirical {:.4}, predicted {:.4} (window bound {:.1e})", f.empirical, f.predicted, f.truncation_bound);
    }

    let small = zs.first(50)?;
    for c in [0.0, 1.0, 2.0] {
        let b = fejer_block(&small, c, 0.5, true, &PairSumConfig::exact())?;
        let lhs = b.lhs_quadrature.unwrap_or(f64::NAN);
        println!("c = {c}: ∫ F_h (1 − |α − c|) = {lhs:.12}, pair sum = {:.12}", b.rhs_pair_sum);
    }
    Ok(())
}
