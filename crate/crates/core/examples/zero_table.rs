//! Load a zero table and look at N(t), S(t) and the second moment of
//! S(t + h) − S(t).
//!
//!     cargo run --release --example zero_table

mod common;

use zeta_shift::zerodata::{s_of_t, second_moment_diff, theta, zero_count, DEFAULT_T_MIN};

fn main() -> zeta_shift::Result<()> {
    let zs = common::zeros(10_000);
    println!("{} ordinates, complete to T = {:.6}", zs.count(), zs.t_max());
    println!("first three: {:?}", &zs.gammas()[..3]);

    for t in [100.0, 1000.0, 5000.0] {
        println!("t = {t:>6}: N(t) = {:>5}, θ(t) = {:>12.6}, S(t) = {:+.6}", zero_count(&zs, t)?, theta(t)?, s_of_t(&zs, t)?);
    }

    // ∫ (S(t+h) − S(t))² dt over [10, T], panel by panel between jumps
    let t = (zs.t_max() - 2.0).floor();
    for h in [0.1, 0.5, 1.0, 2.0] {
        let m = second_moment_diff(&zs, h, t, DEFAULT_T_MIN)?;
        println!("h = {h:<4} ∫ = {:>12.4}  ({} panels, [0, 10) sliver ≤ {:.2})", m.value, m.panels, m.sliver_bound);
    }
    Ok(())
}
