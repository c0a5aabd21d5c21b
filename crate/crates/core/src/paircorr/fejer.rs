//! Fejér-weighted pair sums: the tent-averaged F_h(α) around α = c and the
//! sinc² form factor.

use super::engine::Grid;
use super::{f_scaled, scale, PairSumConfig};
use crate::error::{usage, Result};
use crate::kernels::w;
use crate::quad::{adaptive, Tolerance};
use crate::zerodata::ZeroSet;

use super::blocks::sinc;

/// Largest table for which the α-quadrature side is attempted.
pub const FEJER_QUADRATURE_MAX_ZEROS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FejerBlock {
    /// (TL/2π)⁻¹ Σ cos(L δ' c) sinc²(δ'L/2) w(δ')
    pub rhs_pair_sum: f64,
    /// ∫_{c−1}^{c+1} F_h(α)(1 − |α − c|) dα by adaptive quadrature, small tables only
    pub lhs_quadrature: Option<f64>,
    pub truncation_bound: f64,
}

pub fn fejer_block(zs: &ZeroSet, c: f64, h: f64, with_lhs: bool, cfg: &PairSumConfig) -> Result<FejerBlock> {
    if with_lhs && zs.count() > FEJER_QUADRATURE_MAX_ZEROS {
        return Err(usage(format!(
            "the α-quadrature side needs at most {FEJER_QUADRATURE_MAX_ZEROS} zeros (got {}): \
             F_h(α) oscillates at frequencies up to (γ_N − γ_1)L",
            zs.count()
        )));
    }
    cfg.check(h)?;
    let (big_l, norm) = scale(zs)?;
    let sweep = cfg.sweep(zs);
    let amp = |d: f64| {
        let s = sinc(0.5 * d * big_l);
        w(d) * s * s
    };
    let res = sweep.cos_sums(&[h], &Grid::single(big_l * c), amp);
    let a = h.abs();
    let env = move |d: f64| {
        let e = d - a;
        2.0 * w(e) * (4.0 / (e * big_l).powi(2)).min(1.0)
    };
    let lhs_quadrature = if with_lhs {
        let exact = PairSumConfig::exact();
        let tol = Tolerance { abs: 1e-10, rel: 1e-12, max_intervals: 200_000 };
        let mut breaks = vec![c];
        if c - 1.0 < 0.0 && c + 1.0 > 0.0 {
            breaks.push(0.0);
        }
        let f = |x: f64| f_scaled(zs, x, h, &exact).map(|v| v.value).unwrap_or(f64::NAN) * (1.0 - (x - c).abs());
        Some(adaptive(f, c - 1.0, c + 1.0, &breaks, tol)?.value)
    } else {
        None
    };
    Ok(FejerBlock {
        rhs_pair_sum: norm * res.values[0][0],
        lhs_quadrature,
        truncation_bound: norm * sweep.excluded_bound(env),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormFactor {
    pub empirical: f64,
    pub predicted: f64,
    pub truncation_bound: f64,
}

/// 1/β + (8β/(4+h²))(2 sin y/y − 1 − cos y)/y², y = hLβ.
pub fn form_factor_predicted(beta: f64, h: f64, big_l: f64) -> f64 {
    let y = h * big_l * beta;
    let ratio = if y.abs() < 1e-2 {
        let y2 = y * y;
        1.0 / 6.0 - y2 / 40.0 + y2 * y2 / 1008.0 - y2 * y2 * y2 / 51840.0
    } else {
        (2.0 * y.sin() / y - 1.0 - y.cos()) / (y * y)
    };
    1.0 / beta + 8.0 * beta / (4.0 + h * h) * ratio
}

/// (TL/2π)⁻¹ Σ sinc²(βδ'L/2) w(δ') against its predicted main term.
pub fn form_factor(zs: &ZeroSet, beta: f64, h: f64, cfg: &PairSumConfig) -> Result<FormFactor> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(crate::error::domain(format!("β must lie in (0, 1], got {beta}")));
    }
    cfg.check(h)?;
    let (big_l, norm) = scale(zs)?;
    let sweep = cfg.sweep(zs);
    let amp = |d: f64| {
        let s = sinc(0.5 * beta * d * big_l);
        w(d) * s * s
    };
    let res = sweep.cos_sums(&[h], &Grid::single(0.0), amp);
    let a = h.abs();
    let env = move |d: f64| {
        let e = d - a;
        2.0 * w(e) * (4.0 / (beta * e * big_l).powi(2)).min(1.0)
    };
    Ok(FormFactor {
        empirical: norm * res.values[0][0],
        predicted: form_factor_predicted(beta, h, big_l),
        truncation_bound: norm * sweep.excluded_bound(env),
    })
}
