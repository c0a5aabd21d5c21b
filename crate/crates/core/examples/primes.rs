//! Prime-side ingredients: Mertens' constant, the singular series, the
//! twin-prime ratio, the r(u) integral and the prime-power cosine sums.
//!
//!     cargo run --release --example primes

use zeta_shift::primes::{
    build_lambda, log2_constant, mertens_constant, prime_power_cos_sum, prime_recip_remainder, r_osc_integral,
    singular_series, tpc_ratio, twin_prime_constant,
};

fn main() -> zeta_shift::Result<()> {
    println!("M  = {:.15}", mertens_constant());
    println!("C₂ = {:.15}", twin_prime_constant().value);
    println!("log log 2 + C₀ − Σ 1/(m p^m) = {:.15}", log2_constant());
    for d in [2, 3, 4, 6, 30] {
        println!("𝔖({d}) = {:.12}", singular_series(d)?);
    }

    let table = build_lambda(10_000_000)?;
    for d in [2, 4, 6] {
        let r = tpc_ratio(1_000_000, d, &table)?;
        println!("Σ_{{n ≤ 10⁶}} Λ(n)Λ(n+{d}) / (𝔖({d})·10⁶) = {:.6}", r.ratio.unwrap_or(f64::NAN));
    }
    for u in [100.0, 1e4, 1e6] {
        println!("r({u:e}) = {:+.3e}", prime_recip_remainder(u, &table, false)?);
    }
    for h in [0.5, 1.0, 2.0] {
        let r = r_osc_integral(h, 1e7, &table)?;
        let pp = prime_power_cos_sum(h, None)?;
        println!("h = {h}: ∫ r(u) sin(h log u)/u du = {:+.10} (± {:.1e}), Σ_{{m≥2}} = {:.10}", r.value, r.tail_bound, pp.value);
    }
    Ok(())
}
