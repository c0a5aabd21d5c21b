//! The kernel k(u), its Fourier transform, the cosine integral, and the
//! integration-by-parts identities built on them.
//!
//!     cargo run --release --example kernels

use std::f64::consts::PI;

use zeta_shift::kernels::{ci, ibp_sides, k, k_dd, k_hat, one_minus_cos_integral, si, IbpLemma, KHatTable, K_EDGE};

fn main() -> zeta_shift::Result<()> {
    println!("k(0) = {}, k(1/2π) = {:.15} (π² = {:.15})", k(0.0), k(K_EDGE), PI * PI);
    println!("k''(0) = {:.10} (π⁸/18 = {:.10})", k_dd(0.0), PI.powi(8) / 18.0);

    let table = KHatTable::shared();
    for xi in [0.0, 0.5, 3.0, 40.0, 250.0] {
        println!("k̂({xi:>5}) = {:+.15e}  (table {:+.15e})", k_hat(xi), table.eval(xi));
    }

    for x in [0.5, 1.0, 20.0] {
        println!("Si({x}) = {:.15}, Ci({x}) = {:.15}, ∫₀ˣ(1−cos t)/t dt = {:.15}", si(x), ci(x)?, one_minus_cos_integral(x)?);
    }

    println!("\nidentity    lhs                     rhs                     residual");
    for lemma in IbpLemma::ALL {
        let s = ibp_sides(lemma, 1.0, 9.39, 0.5)?;
        println!("{:<10}  {:+.15e}  {:+.15e}  {:.2e}", lemma.label(), s.lhs, s.rhs, s.residual());
    }
    Ok(())
}
