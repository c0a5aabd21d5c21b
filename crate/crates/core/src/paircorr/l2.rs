//! The mean square of L(x,t) − L(x,t−h), an independent route to F − F_h.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::quad::{adaptive, Tolerance};
use crate::zerodata::ZeroSet;

/// Margin added on both sides of the zero range.
pub const L2_MARGIN: f64 = 350.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L2Oracle {
    /// (1/π)∫|L(x,t) − L(x,t−h)|² dt
    pub value: f64,
    /// quadrature error estimate (already divided by π)
    pub error: f64,
    /// bound for the two omitted tails
    pub tail_bound: f64,
}

/// (1/π)∫|L(x,t) − L(x,t−h)|² dt with L(x,t) = Σ x^{i(γ−t)}/(1 + (t−γ)²).
pub fn f_diff_via_l2(zs: &ZeroSet, x: f64, h: f64, tol: Tolerance) -> Result<L2Oracle> {
    if !(x >= 1.0) {
        return Err(domain(format!("x must be at least 1, got {x}")));
    }
    if h == 0.0 {
        return Ok(L2Oracle { value: 0.0, error: 0.0, tail_bound: 0.0 });
    }
    let g = zs.gammas();
    let n = g.len();
    if n == 0 {
        return Ok(L2Oracle { value: 0.0, error: 0.0, tail_bound: 0.0 });
    }
    let ell = x.ln();
    // The common factor x^{−it} drops out of the modulus.
    let phases: Vec<(f64, f64)> = g.iter().map(|&y| (y * ell).sin_cos()).collect();
    let (sh, ch) = (h * ell).sin_cos();
    let integrand = |t: f64| {
        let (mut re, mut im) = (0.0, 0.0);
        for (&y, &(s, c)) in g.iter().zip(&phases) {
            let a = 1.0 / (1.0 + (t - y) * (t - y));
            let b = 1.0 / (1.0 + (t - h - y) * (t - h - y));
            // e^{iγℓ}(a − e^{ihℓ} b)
            let (dr, di) = (a - ch * b, -sh * b);
            re += c * dr - s * di;
            im += s * dr + c * di;
        }
        re * re + im * im
    };
    let lo = g[0].min(g[0] + h) - L2_MARGIN;
    let hi = g[n - 1].max(g[n - 1] + h) + L2_MARGIN;
    let mut breaks: Vec<f64> = g.iter().flat_map(|&y| [y, y + h]).collect();
    breaks.sort_by(f64::total_cmp);
    let res = adaptive(integrand, lo, hi, &breaks, tol)?;
    let tail_bound = 2.0 * 4.0 * (n * n) as f64 / (3.0 * L2_MARGIN.powi(3)) / PI;
    Ok(L2Oracle { value: res.value / PI, error: res.error / PI, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::super::tests::toy_zeros;
    use super::super::{f_pair_sum, PairSumConfig};
    use super::*;

    #[test]
    fn agrees_with_pair_sums() {
        let zs = toy_zeros(40);
        let cfg = PairSumConfig::exact();
        let tol = Tolerance { abs: 1e-9, rel: 1e-10, max_intervals: 400_000 };
        let o = f_diff_via_l2(&zs, 5.0, 1.0, tol).unwrap();
        let d = f_pair_sum(&zs, 5.0, 0.0, &cfg).unwrap().value - f_pair_sum(&zs, 5.0, 1.0, &cfg).unwrap().value;
        assert!((o.value - d).abs() < o.tail_bound + 1e-6 * d.abs(), "{} vs {d}", o.value);
        assert_eq!(f_diff_via_l2(&zs, 5.0, 0.0, tol).unwrap().value, 0.0);
    }
}
