//! The k̂ pair sum against its F_h-integral representation.
//!
//! Summing cos(δ'Lα) over ordered pairs without the weight w is F_h/w, and
//! 1/w(δ') = 1 + δ'²/4 turns into −(1/4L²)∂²_α; two integrations by parts
//! move the derivatives onto k and pick up the jump of k′ at 1/2π. So
//!
//!   Σ k̂(δ' log x) = (TL/4π²β)∫F_h k(α/2πβ) + (π²T/16L)F_h(β)/β²
//!                    − (T/64π⁴Lβ³)∫F_h k″(α/2πβ)
//!
//! holds exactly for any finite zero set. The two α-integrals are taken pair
//! by pair through g(ω) = ∫ k(α/2πβ) cos(ωα) dα, tabulated here by plain
//! quadrature of k and k″ (independently of the k̂ routines).

use std::f64::consts::PI;

use super::{check_h, PI2};
use crate::error::{domain, Error, Result};
use crate::kernels::{cos_power_tail, k, k_dd, uniform_lagrange6, w, KHatTable, K_EDGE};
use crate::paircorr::{f_scaled, scale, PairSumConfig};
use crate::quad::GaussLegendre;
use crate::zerodata::ZeroSet;

/// ω spacing of the transform tables, in units of 1/β.
pub const DEFAULT_OMEGA_STEP: f64 = 0.125;

const INTERPOLATION_TOL: f64 = 1e-6;
const PROBES: usize = 64;

/// g_k and g_k″ on ω = 0, step, 2·step, ...
#[derive(Debug, Clone)]
pub struct TransformTable {
    beta: f64,
    step: f64,
    gk: Vec<f64>,
    gkdd: Vec<f64>,
}

fn transform(beta: f64, omega: f64, second: bool) -> f64 {
    let c = 2.0 * PI * beta;
    let nu = omega * c;
    let rule = GaussLegendre::cached(24);
    let panels = 4 + (nu * K_EDGE / (4.0 * PI)).ceil() as usize;
    let (inner, tail) = if second {
        (rule.composite(0.0, K_EDGE, panels, |u| k_dd(u) * (nu * u).cos()), 1.5 * cos_power_tail(K_EDGE, nu, 4))
    } else {
        (rule.composite(0.0, K_EDGE, panels, |u| k(u) * (nu * u).cos()), 0.25 * cos_power_tail(K_EDGE, nu, 2))
    };
    2.0 * c * (inner + tail)
}

impl TransformTable {
    /// Tables on [0, omega_max] with spacing step/β, checked against direct
    /// quadrature at cell midpoints.
    pub fn new(beta: f64, omega_max: f64, step: f64) -> Result<Self> {
        if !(beta > 0.0) || !(omega_max >= 0.0) || !(step > 0.0) {
            return Err(domain(format!("transform table needs beta > 0, omega_max >= 0, step > 0 (got {beta}, {omega_max}, {step})")));
        }
        let h = step / beta;
        let n = (omega_max / h).ceil() as usize + 6;
        let (gk, gkdd): (Vec<f64>, Vec<f64>) = {
            use rayon::prelude::*;
            (0..=n).into_par_iter().map(|i| (transform(beta, i as f64 * h, false), transform(beta, i as f64 * h, true))).unzip()
        };
        let table = Self { beta, step: h, gk, gkdd };
        table.check()?;
        Ok(table)
    }

    fn check(&self) -> Result<()> {
        let n = self.gk.len() - 6;
        let scale_k = self.gk.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let scale_kdd = self.gkdd.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut worst = 0.0f64;
        for j in 0..PROBES.min(n) {
            let i = j * n / PROBES.min(n);
            let om = (i as f64 + 0.5) * self.step;
            let ek = (self.eval_k(om) - transform(self.beta, om, false)).abs() / scale_k;
            let ekdd = (self.eval_kdd(om) - transform(self.beta, om, true)).abs() / scale_kdd;
            worst = worst.max(ek).max(ekdd);
        }
        if worst > INTERPOLATION_TOL {
            return Err(Error::Accuracy {
                achieved: worst,
                requested: INTERPOLATION_TOL,
                context: "transform table interpolation".into(),
            });
        }
        Ok(())
    }

    /// ∫ k(α/2πβ) cos(ωα) dα
    pub fn eval_k(&self, omega: f64) -> f64 {
        uniform_lagrange6(&self.gk, self.step, omega.abs())
    }

    /// ∫ k″(α/2πβ) cos(ωα) dα, k″ without the point mass of the k′ jump
    pub fn eval_kdd(&self, omega: f64) -> f64 {
        uniform_lagrange6(&self.gkdd, self.step, omega.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma2122 {
    /// Σ over ordered pairs of k̂((γ − γ' − h) log x)
    pub lhs: f64,
    pub rhs: f64,
    /// The three right-hand terms in display order.
    pub terms: [f64; 3],
}

impl Lemma2122 {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.lhs.abs()
    }
}

/// Both sides at x = (T/2π)^β with transform tables at spacing step/β.
pub fn lemma_21_22_sides(zs: &ZeroSet, beta: f64, h: f64, step: f64) -> Result<Lemma2122> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(domain(format!("beta must lie in (0, 1), got {beta}")));
    }
    check_h(h)?;
    let (big_l, norm) = scale(zs)?;
    let t = zs.t_max();
    let g = zs.gammas();
    let span = g.last().copied().unwrap_or(0.0) - g.first().copied().unwrap_or(0.0);
    let table = TransformTable::new(beta, (span + h) * big_l, step)?;
    let sweep = PairSumConfig::exact().sweep(zs);
    let ell = beta * big_l;
    let khat = KHatTable::shared();
    let (lhs, _) = sweep.ordered_sum(|d| khat.eval((d - h) * ell));
    let (ik, _) = sweep.ordered_sum(|d| w(d - h) * table.eval_k((d - h) * big_l));
    let (ikdd, _) = sweep.ordered_sum(|d| w(d - h) * table.eval_kdd((d - h) * big_l));
    let f_beta = f_scaled(zs, beta, h, &PairSumConfig::exact())?.value;
    let terms = [
        t * big_l / (4.0 * PI2 * beta) * norm * ik,
        PI2 * t / (16.0 * big_l) * f_beta / (beta * beta),
        -t / (64.0 * PI2 * PI2 * big_l * beta.powi(3)) * norm * ikdd,
    ];
    Ok(Lemma2122 { lhs, rhs: terms[0] + terms[1] + terms[2], terms })
}

/// |LHS − RHS|/|LHS| at the default table spacing.
pub fn lemma_21_22_check(zs: &ZeroSet, beta: f64, h: f64) -> Result<f64> {
    lemma_21_22_sides(zs, beta, h, DEFAULT_OMEGA_STEP).map(|s| s.residual())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::k_hat;
    use crate::paircorr::tests::toy_zeros;

    #[test]
    fn transform_is_a_rescaled_khat() {
        // g_k(ω) = 2πβ k̂(βω), reached by a different route
        let beta = 0.5;
        for om in [0.0, 0.7, 13.0, 150.0] {
            let g = transform(beta, om, false);
            let want = 2.0 * PI * beta * k_hat(beta * om);
            assert!((g - want).abs() < 1e-11, "{om}: {g} vs {want}");
        }
    }

    #[test]
    fn second_transform_at_zero_is_the_slope_jump() {
        // ∫₀^∞ k″ over the smooth pieces is k′(1/2π⁻) − k′(1/2π⁺) = π⁵
        let beta = 0.3;
        let g = transform(beta, 0.0, true);
        let want = 2.0 * 2.0 * PI * beta * PI.powi(5);
        assert!((g - want).abs() < 1e-10 * want);
    }

    #[test]
    fn identity_holds_on_toy_zeros() {
        let zs = toy_zeros(60);
        for h in [0.0, 0.8] {
            let s = lemma_21_22_sides(&zs, 0.5, h, DEFAULT_OMEGA_STEP).unwrap();
            assert!(s.residual() < 1e-6, "h = {h}: {s:?}");
        }
    }
}
