//! S₃ as a double sum over zeros against its closed form, and the prime
//! sums S₄, S₅ directly and in closed form.
//!
//!     cargo run --release --example decomposition

mod common;

use std::f64::consts::PI;

use zeta_shift::moments::{s3_formula, s3_report, s4_s5_formula, MomentOptions};
use zeta_shift::primes::{build_lambda, s4_s5_direct};

fn main() -> zeta_shift::Result<()> {
    let zs = common::zeros(1000);
    let opts = MomentOptions::default();
    for h in [0.5, 1.0] {
        let r = s3_report(&zs, 0.5, h, &opts)?;
        println!("S₃, β = 1/2, h = {h}: direct {:.4}, closed form {:.4} (T/L² = {:.2})", r.lhs.unwrap_or(f64::NAN), r.rhs_total, r.t / (r.big_l * r.big_l));
        for t in &r.terms {
            println!("    {:<9} {:>10.4}", t.label, t.value);
        }
        let b = s3_formula(&zs, 0.4, h, &opts)?;
        println!("  closed form at β = 0.4: {:.4}", b.rhs_total);
    }

    let table = build_lambda(10_000_000)?;
    let (x, h) = (1e6, 1.0);
    let t = 2.0 * PI * x * x;
    let d = s4_s5_direct(x, h, &table)?;
    let f = s4_s5_formula(t, x, h, &table)?;
    let s = t / (PI * PI);
    println!("x = 10⁶, h = 1 (per unit T/π²): S₄ direct {:.8} vs {:.8}; S₅ direct {:.8} vs {:.8}", d.s4, f.s4 / s, d.s5, f.s5 / s);
    Ok(())
}
