//! α-integrals of F − F_h, done pair by pair in closed form.
//!
//! ∫ over [m − κ/2, m + κ/2] of cos(δ'Lα) is κ sinc(δ'Lκ/2) cos(δ'Lm), so a
//! run of equal-width blocks is one more cosine sweep with a modified weight.

use super::engine::Grid;
use super::{scale, PairCorrValue, PairSumConfig};
use crate::error::{domain, usage, Result};
use crate::kernels::{cos_power_tail, w};
use crate::sum::Neumaier;
use crate::zerodata::ZeroSet;

/// Lemma-type ceiling on a unit block, plus the calibrated finite-T slack.
pub const BLOCK_CEILING: f64 = 16.0 / 3.0 + 0.5;

pub const DEFAULT_SUB_BLOCK: f64 = 0.125;

#[inline]
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// ∫(F − F_h) over `count` consecutive blocks of width `width` from `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockIntegrals {
    pub start: f64,
    pub width: f64,
    pub values: Vec<f64>,
    /// Same bound for every block.
    pub truncation_bound: f64,
    pub pair_count_used: u64,
}

pub fn block_integrals(
    zs: &ZeroSet,
    start: f64,
    width: f64,
    count: usize,
    h: f64,
    cfg: &PairSumConfig,
) -> Result<BlockIntegrals> {
    block_integrals_multi(zs, start, width, count, &[h], cfg).map(|mut v| v.remove(0))
}

/// Several shifts in one sweep.
pub fn block_integrals_multi(
    zs: &ZeroSet,
    start: f64,
    width: f64,
    count: usize,
    shifts: &[f64],
    cfg: &PairSumConfig,
) -> Result<Vec<BlockIntegrals>> {
    if !(start >= 0.0) || !(width > 0.0) || count == 0 {
        return Err(domain(format!("blocks need start >= 0, width > 0, count > 0 (got {start}, {width}, {count})")));
    }
    for &h in shifts {
        cfg.check(h)?;
    }
    let (big_l, norm) = scale(zs)?;
    let sweep = cfg.sweep(zs);
    let mut all = vec![0.0];
    all.extend(shifts.iter().copied().filter(|&h| h != 0.0));
    let grid = Grid { start: big_l * (start + 0.5 * width), step: big_l * width, count };
    let amp = |d: f64| w(d) * width * sinc(0.5 * d * big_l * width);
    let res = sweep.cos_sums(&all, &grid, amp);
    let pair_count_used = 2 * res.pairs + zs.count() as u64;
    Ok(shifts
        .iter()
        .map(|&h| {
            let (values, truncation_bound) = if h == 0.0 {
                (vec![0.0; count], 0.0)
            } else {
                let k = 1 + all[1..].iter().position(|&s| s == h).unwrap_or(0);
                let values = res.values[0].iter().zip(&res.values[k]).map(|(f, fh)| norm * (f - fh)).collect();
                let a = h.abs();
                let env = move |d: f64| {
                    let e = d - a;
                    4.0 * w(e) * width.min(2.0 / (e * big_l))
                };
                (values, norm * sweep.excluded_bound(env))
            };
            BlockIntegrals { start, width, values, truncation_bound, pair_count_used }
        })
        .collect())
}

/// ∫_c^{c+1} (F − F_h)(α) dα.
pub fn block_integral(zs: &ZeroSet, c: f64, h: f64, cfg: &PairSumConfig) -> Result<PairCorrValue> {
    if !(c >= 0.0) {
        return Err(domain(format!("block start must be >= 0, got {c}")));
    }
    let b = block_integrals(zs, c, 1.0, 1, h, cfg)?;
    Ok(PairCorrValue { value: b.values[0], truncation_bound: b.truncation_bound, pair_count_used: b.pair_count_used })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailIntegralResult {
    pub exponent: u32,
    pub a_max: f64,
    /// ∫_1^{a_max} (F − F_h)/α^p, block sums weighted by the block mean of α^{-p}
    pub value: f64,
    /// Rigorous for ∫_1^∞ given F − F_h >= 0 and the unit-block ceiling beyond a_max.
    pub bracket: (f64, f64),
    /// Per-block window truncation bound.
    pub truncation_bound: f64,
    /// Diagonal-only estimate of ∫_{a_max}^∞; off-diagonal pairs average out there.
    pub diagonal_tail: f64,
    pub blocks: usize,
}

impl TailIntegralResult {
    /// value + diagonal_tail: the estimate of the full ∫_1^∞.
    pub fn estimate(&self) -> f64 {
        self.value + self.diagonal_tail
    }
}

/// ∫_1^{a_max} (F − F_h)(α)/α^p dα with sub-blocks of width 1/8.
pub fn tail_integral(zs: &ZeroSet, h: f64, p: u32, a_max: f64, cfg: &PairSumConfig) -> Result<TailIntegralResult> {
    tail_integrals(zs, &[h], &[p], a_max, DEFAULT_SUB_BLOCK, cfg).map(|mut v| v.remove(0))
}

/// All (h, p) combinations from one sweep, ordered h-major.
pub fn tail_integrals(
    zs: &ZeroSet,
    shifts: &[f64],
    exponents: &[u32],
    a_max: f64,
    sub_block: f64,
    cfg: &PairSumConfig,
) -> Result<Vec<TailIntegralResult>> {
    if let Some(&p) = exponents.iter().find(|&&p| p != 2 && p != 4) {
        return Err(usage(format!("tail exponent must be 2 or 4, got {p}")));
    }
    if !(a_max >= 2.0) {
        return Err(usage(format!("a_max must be at least 2, got {a_max}")));
    }
    if !(sub_block > 0.0 && sub_block <= 1.0) {
        return Err(usage(format!("sub-block width must lie in (0, 1], got {sub_block}")));
    }
    let (big_l, norm) = scale(zs)?;
    let count = ((a_max - 1.0) / sub_block).ceil() as usize;
    let width = (a_max - 1.0) / count as f64;
    let blocks = block_integrals_multi(zs, 1.0, width, count, shifts, cfg)?;
    let mut out = Vec::new();
    for (b, &h) in blocks.iter().zip(shifts) {
        for &p in exponents {
            let pf = p as f64;
            let tb = b.truncation_bound;
            let (mut value, mut lo, mut hi) = (Neumaier::new(), Neumaier::new(), Neumaier::new());
            for (i, &ib) in b.values.iter().enumerate() {
                let a = 1.0 + i as f64 * width;
                let e = a + width;
                let mean = (a.powf(1.0 - pf) - e.powf(1.0 - pf)) / ((pf - 1.0) * width);
                value.add(ib * mean);
                let low = ib - tb;
                lo.add(if low >= 0.0 { low / e.powf(pf) } else { low / a.powf(pf) });
                hi.add((ib + tb) / a.powf(pf));
            }
            hi.add(BLOCK_CEILING * shifted_zeta(a_max, pf));
            let diagonal_tail = if h == 0.0 {
                0.0
            } else {
                norm * zs.count() as f64 * diagonal_tail_integral(a_max, pf, w(h), h * big_l)
            };
            out.push(TailIntegralResult {
                exponent: p,
                a_max,
                value: value.value(),
                bracket: (lo.value(), hi.value()),
                truncation_bound: tb,
                diagonal_tail,
                blocks: count,
            });
        }
    }
    Ok(out)
}

/// Upper bound for Σ_{k>=0} (a + k)^{-p}.
fn shifted_zeta(a: f64, p: f64) -> f64 {
    let k_max = 10_000;
    let mut s = Neumaier::new();
    for k in 0..k_max {
        s.add((a + k as f64).powf(-p));
    }
    s.add((a + k_max as f64 - 1.0).powf(1.0 - p) / (p - 1.0));
    s.value()
}

/// ∫_A^∞ (1 − c cos(να))/α^p dα for p ∈ {2, 4}.
fn diagonal_tail_integral(a: f64, p: f64, c: f64, nu: f64) -> f64 {
    if p == 2.0 {
        1.0 / a - c * cos_power_tail(a, nu, 2)
    } else {
        1.0 / (3.0 * a.powi(3)) - c * cos_power_tail(a, nu, 4)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::toy_zeros;
    use super::super::{f_scaled, PairSumConfig};
    use super::*;
    use crate::quad::GaussLegendre;

    #[test]
    fn block_matches_quadrature_of_the_scaled_sums() {
        let zs = toy_zeros(40);
        let cfg = PairSumConfig::exact();
        let h = 0.7;
        let exact = block_integral(&zs, 1.0, h, &cfg).unwrap().value;
        let rule = GaussLegendre::cached(40);
        let quad = rule.composite(1.0, 2.0, 400, |a| {
            f_scaled(&zs, a, 0.0, &cfg).unwrap().value - f_scaled(&zs, a, h, &cfg).unwrap().value
        });
        assert!((exact - quad).abs() < 1e-10, "{exact} vs {quad}");
    }

    #[test]
    fn zero_shift_is_exactly_zero() {
        let zs = toy_zeros(50);
        assert_eq!(block_integral(&zs, 2.0, 0.0, &PairSumConfig::exact()).unwrap().value, 0.0);
        let t = tail_integral(&zs, 0.0, 2, 10.0, &PairSumConfig::exact()).unwrap();
        assert_eq!(t.value, 0.0);
        assert_eq!(t.bracket.0, 0.0);
        assert!(t.bracket.1 > 0.0);
    }

    #[test]
    fn bracket_contains_value() {
        let zs = toy_zeros(300);
        for cfg in [PairSumConfig::exact(), PairSumConfig::windowed(30.0)] {
            for p in [2, 4] {
                let t = tail_integral(&zs, 1.0, p, 5.0, &cfg).unwrap();
                assert!(t.bracket.0 <= t.value && t.value <= t.bracket.1, "{t:?}");
            }
        }
    }

    #[test]
    fn diagonal_tail_closed_form() {
        let rule = GaussLegendre::cached(30);
        for p in [2.0, 4.0] {
            let (a, c, nu) = (10.0, 0.8, 9.4);
            // direct panels to b; past b only the 1/α^p part matters at this tolerance
            let b = a + 3000.0;
            let quad = rule.composite(a, b, 6000, |al: f64| (1.0 - c * (nu * al).cos()) / al.powf(p))
                + b.powf(1.0 - p) / (p - 1.0);
            assert!((diagonal_tail_integral(a, p, c, nu) - quad).abs() < 1e-6, "p = {p}");
        }
    }

    #[test]
    fn rejects_bad_exponents() {
        let zs = toy_zeros(30);
        assert!(tail_integral(&zs, 1.0, 3, 10.0, &PairSumConfig::exact()).is_err());
    }
}
