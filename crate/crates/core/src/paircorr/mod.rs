//! Pair correlation of zero ordinates: F(x,T), the shifted F_h(x,T), their
//! normalized forms F_h(α), and the α-integrals used for the tail bounds.

mod blocks;
pub(crate) mod engine;
mod fejer;
mod l2;

use std::f64::consts::PI;

use crate::error::{domain, usage, Result};
use crate::kernels::w;
use crate::zerodata::ZeroSet;
use engine::{Grid, Sweep};

pub use blocks::{
    block_integral, block_integrals, block_integrals_multi, tail_integral, tail_integrals, BlockIntegrals,
    TailIntegralResult, BLOCK_CEILING, DEFAULT_SUB_BLOCK,
};
pub use fejer::{fejer_block, form_factor, form_factor_predicted, FejerBlock, FormFactor};
pub use l2::{f_diff_via_l2, L2Oracle};

pub const DEFAULT_BLOCK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairMode {
    Exact,
    /// Only pairs with |γ − γ'| <= the given width.
    Windowed(f64),
}

/// How pair sums are enumerated. The shift h is passed per call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSumConfig {
    pub mode: PairMode,
    /// Rows per reduction block.
    pub block: usize,
}

impl Default for PairSumConfig {
    fn default() -> Self {
        Self::exact()
    }
}

impl PairSumConfig {
    pub fn exact() -> Self {
        Self { mode: PairMode::Exact, block: DEFAULT_BLOCK }
    }

    pub fn windowed(window: f64) -> Self {
        Self { mode: PairMode::Windowed(window), block: DEFAULT_BLOCK }
    }

    pub fn window(&self) -> Option<f64> {
        match self.mode {
            PairMode::Exact => None,
            PairMode::Windowed(w) => Some(w),
        }
    }

    /// The window has to clear every shift so excluded pairs sit on the
    /// decreasing side of the weight.
    pub(crate) fn check(&self, h: f64) -> Result<()> {
        if let PairMode::Windowed(win) = self.mode {
            if !(win > 0.0) {
                return Err(usage(format!("window must be positive, got {win}")));
            }
            if win <= h.abs() {
                return Err(usage(format!("window {win} must exceed |h| = {}", h.abs())));
            }
        }
        if self.block == 0 {
            return Err(usage("reduction block size must be positive"));
        }
        Ok(())
    }

    pub(crate) fn sweep<'a>(&self, zs: &'a ZeroSet) -> Sweep<'a> {
        Sweep { gammas: zs.gammas(), window: self.window(), block: self.block }
    }
}

/// A pair sum and a bound on what the window left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCorrValue {
    pub value: f64,
    /// 0 in exact mode.
    pub truncation_bound: f64,
    /// Ordered pairs summed, diagonal included.
    pub pair_count_used: u64,
}

/// (L, (TL/2π)⁻¹) with T the table height and L = log(T/2π).
pub fn scale(zs: &ZeroSet) -> Result<(f64, f64)> {
    let t = zs.t_max();
    let big_l = (t / (2.0 * PI)).ln();
    if !(big_l > 1.0) {
        return Err(domain(format!("normalized sums need T > 2πe, got T = {t}")));
    }
    Ok((big_l, 2.0 * PI / (t * big_l)))
}

/// Envelope for an excluded unordered pair of either orientation: both
/// w(δ − h) and w(δ + h) are at most w(δ − |h|).
fn w_envelope(h: f64) -> impl Fn(f64) -> f64 {
    move |d: f64| 2.0 * w(d - h.abs())
}

/// F_h(x, T) summed over ordered pairs of the table.
pub fn f_pair_sum(zs: &ZeroSet, x: f64, h: f64, cfg: &PairSumConfig) -> Result<PairCorrValue> {
    if !(x >= 1.0) {
        return Err(domain(format!("x must be at least 1, got {x}")));
    }
    cfg.check(h)?;
    let sweep = cfg.sweep(zs);
    let res = sweep.cos_sums(&[h], &Grid::single(x.ln()), w);
    Ok(PairCorrValue {
        value: res.values[0][0],
        truncation_bound: sweep.excluded_bound(w_envelope(h)),
        pair_count_used: 2 * res.pairs + zs.count() as u64,
    })
}

/// F_h(α) = (TL/2π)⁻¹ F_h((T/2π)^|α|, T) with T the table height.
pub fn f_scaled(zs: &ZeroSet, alpha: f64, h: f64, cfg: &PairSumConfig) -> Result<PairCorrValue> {
    let (big_l, norm) = scale(zs)?;
    cfg.check(h)?;
    let sweep = cfg.sweep(zs);
    let res = sweep.cos_sums(&[h], &Grid::single(alpha.abs() * big_l), w);
    Ok(PairCorrValue {
        value: norm * res.values[0][0],
        truncation_bound: norm * sweep.excluded_bound(w_envelope(h)),
        pair_count_used: 2 * res.pairs + zs.count() as u64,
    })
}

/// Uniform α grid: start, start + step, ..., count points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaGrid {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl AlphaGrid {
    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|m| self.start + m as f64 * self.step).collect()
    }
}

/// F_h(α) along a grid for several shifts in one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledGrid {
    pub alphas: Vec<f64>,
    pub shifts: Vec<f64>,
    /// values[k][m] = F_{shifts[k]}(alphas[m])
    pub values: Vec<Vec<f64>>,
    /// truncation bound per shift (uniform in α)
    pub bounds: Vec<f64>,
    pub pair_count_used: u64,
}

pub fn f_scaled_grid(zs: &ZeroSet, grid: &AlphaGrid, shifts: &[f64], cfg: &PairSumConfig) -> Result<ScaledGrid> {
    let (big_l, norm) = scale(zs)?;
    for &h in shifts {
        cfg.check(h)?;
    }
    let sweep = cfg.sweep(zs);
    let g = Grid { start: grid.start * big_l, step: grid.step * big_l, count: grid.count };
    let res = sweep.cos_sums(shifts, &g, w);
    Ok(ScaledGrid {
        alphas: grid.points(),
        shifts: shifts.to_vec(),
        values: res.values.into_iter().map(|row| row.into_iter().map(|v| v * norm).collect()).collect(),
        bounds: shifts.iter().map(|&h| norm * sweep.excluded_bound(w_envelope(h))).collect(),
        pair_count_used: 2 * res.pairs + zs.count() as u64,
    })
}

/// Which branch of the main-term model applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// 0 <= α <= 1 − 3 log log T / log T
    Lower,
    /// above that, up to α = 1
    Upper,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Lower => "lower",
            Regime::Upper => "upper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelValue {
    pub value: f64,
    pub regime: Regime,
    /// Size of the omitted error terms up to their unknown constants.
    pub error_order: f64,
}

/// Boundary 1 − 3 log log T / log T between the two regimes.
pub fn regime_boundary(t: f64) -> f64 {
    1.0 - 3.0 * t.ln().ln() / t.ln()
}

/// Main term of the asymptotic model for F_h(α), 0 <= α <= 1.
pub fn f_model(alpha: f64, h: f64, t: f64) -> Result<ModelValue> {
    if !(alpha >= 0.0 && alpha <= 1.0) {
        return Err(domain(format!("the model is stated for 0 <= α <= 1, got {alpha}")));
    }
    let big_l = (t / (2.0 * PI)).ln();
    if !(big_l > 1.0) {
        return Err(domain(format!("the model needs T > 2πe, got {t}")));
    }
    let d = 4.0 + h * h;
    let phase = h * big_l * alpha;
    let lead = 4.0 * phase.cos() / d * alpha;
    if alpha <= regime_boundary(t) {
        let value = lead - 8.0 * h * phase.sin() / (d * d * big_l) + (-2.0 * alpha * big_l).exp() * (big_l - 2.0);
        let error_order = alpha * t.powf(alpha - 1.0) + t.powf(-0.5 * alpha) / big_l;
        Ok(ModelValue { value, regime: Regime::Lower, error_order })
    } else {
        Ok(ModelValue { value: lead, regime: Regime::Upper, error_order: alpha * t.powf(alpha - 1.0) / big_l })
    }
}

/// The conjectured form F(α)·4cos(hLα)/(4+h²) for α >= 1, from the empirical F(α).
pub fn conjecture51_model(zs: &ZeroSet, alpha: f64, h: f64, cfg: &PairSumConfig) -> Result<f64> {
    if !(alpha >= 1.0) {
        return Err(domain(format!("the conjectured form is stated for α >= 1, got {alpha}")));
    }
    let (big_l, _) = scale(zs)?;
    let f = f_scaled(zs, alpha, 0.0, cfg)?.value;
    Ok(f * 4.0 * (h * big_l * alpha).cos() / (4.0 + h * h))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn toy_zeros(n: usize) -> ZeroSet {
        // Roughly zero-like spacing, deterministic.
        let mut g = Vec::with_capacity(n);
        let mut t = 14.0;
        for i in 0..n {
            let spacing = 2.0 * PI / (t / (2.0 * PI)).ln();
            t += spacing * (0.6 + 0.8 * ((i as f64 * 0.618_034).fract()));
            g.push(t);
        }
        ZeroSet::new(g, None).unwrap()
    }

    fn naive(zs: &ZeroSet, x: f64, h: f64) -> f64 {
        let g = zs.gammas();
        let mut s = 0.0;
        for a in g {
            for b in g {
                let d = a - b - h;
                s += (d * x.ln()).cos() * w(d);
            }
        }
        s
    }

    #[test]
    fn exact_sum_matches_double_loop() {
        let zs = toy_zeros(200);
        for h in [0.0, 1.0, 2.5] {
            let v = f_pair_sum(&zs, 5.0, h, &PairSumConfig::exact()).unwrap();
            let n = naive(&zs, 5.0, h);
            assert!((v.value - n).abs() < 1e-12 * n.abs().max(1.0), "h = {h}");
            assert_eq!(v.truncation_bound, 0.0);
            assert_eq!(v.pair_count_used, 200 * 200);
        }
    }

    #[test]
    fn unit_x_at_zero_shift_dominates_the_diagonal() {
        let zs = toy_zeros(100);
        let v = f_pair_sum(&zs, 1.0, 0.0, &PairSumConfig::exact()).unwrap().value;
        assert!(v >= 100.0);
    }

    #[test]
    fn window_errors_stay_inside_the_bound() {
        let zs = toy_zeros(600);
        for win in [5.0, 20.0, 50.0] {
            for h in [0.0, 1.0] {
                let exact = f_pair_sum(&zs, 3.0, h, &PairSumConfig::exact()).unwrap().value;
                let cut = f_pair_sum(&zs, 3.0, h, &PairSumConfig::windowed(win)).unwrap();
                assert!((exact - cut.value).abs() <= cut.truncation_bound);
            }
        }
        assert!(f_pair_sum(&zs, 3.0, 2.0, &PairSumConfig::windowed(2.0)).is_err());
    }

    #[test]
    fn scaled_is_even_and_grid_agrees_with_points() {
        let zs = toy_zeros(150);
        let cfg = PairSumConfig::exact();
        for a in [0.3, 1.7] {
            assert_eq!(f_scaled(&zs, a, 0.5, &cfg).unwrap().value, f_scaled(&zs, -a, 0.5, &cfg).unwrap().value);
        }
        let grid = AlphaGrid { start: 0.0, step: 0.05, count: 41 };
        let all = f_scaled_grid(&zs, &grid, &[0.0, 0.5], &cfg).unwrap();
        for (m, a) in all.alphas.iter().enumerate() {
            let f = f_scaled(&zs, *a, 0.0, &cfg).unwrap().value;
            let fh = f_scaled(&zs, *a, 0.5, &cfg).unwrap().value;
            assert!((all.values[0][m] - f).abs() < 1e-12 * f.abs().max(1.0));
            assert!((all.values[1][m] - fh).abs() < 1e-12 * fh.abs().max(1.0));
        }
    }

    #[test]
    fn model_values() {
        let t = 1e5;
        let big_l = (t / (2.0 * PI)).ln();
        assert!((f_model(0.0, 0.0, t).unwrap().value - (big_l - 2.0)).abs() < 1e-12);
        let at_one = f_model(1.0, 0.0, t).unwrap();
        assert_eq!(at_one.value, 1.0);
        assert_eq!(at_one.regime, Regime::Upper);
        assert!(f_model(1.5, 0.0, t).is_err());
        // at h = 0 the branches differ only by (T/2π)^{-2α}(L − 2)
        let b = regime_boundary(t);
        let lower = f_model(b, 0.0, t).unwrap().value;
        let upper = 4.0 / 4.0 * b;
        assert!((lower - upper).abs() <= (-2.0 * b * big_l).exp() * big_l);
        // for h ≠ 0 the 8h sin(hLα)/((4+h²)²L) term is dropped at the boundary
        let h = 1.0;
        let below = f_model(b, h, t).unwrap().value;
        let above = f_model(b + 1e-12, h, t).unwrap().value;
        let jump = -8.0 * h * (h * big_l * b).sin() / (25.0 * big_l) + (-2.0 * b * big_l).exp() * (big_l - 2.0);
        assert!((below - above - jump).abs() < 1e-9, "{below} {above} {jump}");
    }

    #[test]
    fn conjecture_form() {
        let zs = toy_zeros(120);
        let cfg = PairSumConfig::exact();
        let f = f_scaled(&zs, 1.5, 0.0, &cfg).unwrap().value;
        assert_eq!(conjecture51_model(&zs, 1.5, 0.0, &cfg).unwrap(), f);
        assert!(conjecture51_model(&zs, 1.5, 1.0, &cfg).unwrap().abs() <= f.abs() * 0.8 + 1e-15);
    }
}
