//! Σ k̂((γ − γ' − h) log x) against its three-term F_h representation; the
//! identity is exact, so the residual measures the numerics.
//!
//!     cargo run --release --example khat_pair_sum

mod common;

use zeta_shift::moments::{lemma_21_22_sides, DEFAULT_OMEGA_STEP};

fn main() -> zeta_shift::Result<()> {
    let zs = common::zeros(500);
    for h in [0.0, 0.5, 1.0] {
        let s = lemma_21_22_sides(&zs, 0.5, h, DEFAULT_OMEGA_STEP)?;
        println!(
            "h = {h}: lhs {:.10}, rhs {:.10} = {:.6} + {:.6} + {:.6}; relative residual {:.2e}",
            s.lhs,
            s.rhs,
            s.terms[0],
            s.terms[1],
            s.terms[2],
            s.residual()
        );
    }
    Ok(())
}
