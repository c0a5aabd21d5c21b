//! The second moment ∫₀^T (S(t+h) − S(t))² dt against the nine-term
//! right-hand side, the Ci restatement, and Fujii's baseline.
//!
//!     cargo run --release --example theorem1 [N]

mod common;

use zeta_shift::moments::{fujii_rhs, theorem1_ci_form, verify_theorem1, MomentOptions};
use zeta_shift::paircorr::PairSumConfig;
use zeta_shift::primes::build_lambda;

fn main() -> zeta_shift::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let zs = common::zeros(n);
    let table = build_lambda(10_000_000)?;
    let opts = MomentOptions { pair: PairSumConfig::windowed(40.0), ..Default::default() };
    for h in [0.25, 0.5, 1.0] {
        let r = verify_theorem1(&zs, h, &table, &opts)?;
        println!("h = {h}, T = {}, L = {:.4}", r.t, r.big_l);
        for t in &r.terms {
            println!("  {:<3} {:>14.4}", t.label, t.value);
        }
        println!("  rhs {:>14.4}\n  lhs {:>14.4}", r.rhs_total, r.lhs.unwrap_or(f64::NAN));
        println!("  residual {:.4} = {:.4} T/L²", r.residual.unwrap_or(f64::NAN), r.residual_norm.unwrap_or(f64::NAN));
        let ci = theorem1_ci_form(&zs, h, None, &table, &opts)?;
        println!(
            "  Ci form {:.4}; differs by {:.4}, of which the dropped O(log x/√x) pieces are {:.4}",
            ci.rhs_total,
            ci.rhs_total - r.rhs_total,
            ci.meta("form_gap").unwrap_or(0.0)
        );
        let f = fujii_rhs(&zs.truncated(r.t)?, h, &opts.pair)?;
        println!("  Fujii baseline {:.4}{}", f.value, if f.outside_range { " (h beyond its range)" } else { "" });
    }
    Ok(())
}
