//! F(α) and the shifted F_h(α) from a zero table, set against the main-term
//! model, with the pair window reported.
//!
//!     cargo run --release --example pair_correlation

mod common;

use zeta_shift::paircorr::{f_model, f_scaled_grid, AlphaGrid, PairSumConfig};

fn main() -> zeta_shift::Result<()> {
    let zs = common::zeros(20_000);
    let grid = AlphaGrid { start: 0.1, step: 0.1, count: 20 };
    let shifts = [0.0, 0.5, 1.0];
    let cfg = PairSumConfig::windowed(50.0);
    let res = f_scaled_grid(&zs, &grid, &shifts, &cfg)?;
    println!("N = {}, T = {:.1}, window bound per value ≤ {:.1e}", zs.count(), zs.t_max(), res.bounds[2]);
    println!("  α     F(α)      F_0.5     F_1      model(h=1)  regime");
    for (m, &a) in res.alphas.iter().enumerate() {
        let model = if a <= 1.0 {
            let v = f_model(a, 1.0, zs.t_max())?;
            format!("{:>9.4}   {}", v.value, v.regime.label())
        } else {
            "        -".to_string()
        };
        println!("{a:>4.1} {:>9.4} {:>9.4} {:>9.4} {model}", res.values[0][m], res.values[1][m], res.values[2][m]);
    }
    println!("pairs used: {}", res.pair_count_used);
    Ok(())
}
