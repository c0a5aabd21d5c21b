//! Zero-ordinate tables and the functions built directly on them: the
//! counting function N(t), the Riemann-Siegel theta function, S(t), and the
//! mean square of S(t+h) - S(t).

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{domain, Error, Result};
use crate::quad::GaussLegendre;
use crate::sum::{reduce_blocks, Neumaier};

/// Smallest height at which [`theta`] is supported.
pub const THETA_MIN: f64 = 10.0;

/// Default lower integration limit for [`second_moment_diff`].
pub const DEFAULT_T_MIN: f64 = THETA_MIN;

/// Default Gauss-Legendre order per panel in [`second_moment_diff`].
pub const DEFAULT_GAUSS_ORDER: usize = 8;

/// Sorted positive zero ordinates together with the height they are complete to.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    gammas: Vec<f64>,
    t_max: f64,
}

impl ZeroSet {
    /// Validates ordering and positivity. `t_max` defaults to the last ordinate.
    pub fn new(gammas: Vec<f64>, t_max: Option<f64>) -> Result<Self> {
        if let Some(i) = gammas.iter().position(|&g| !(g > 0.0) || !g.is_finite()) {
            return Err(Error::DataIntegrity(format!(
                "ordinate #{} ({}) is not a positive finite number",
                i + 1,
                gammas[i]
            )));
        }
        if let Some(i) = gammas.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::DataIntegrity(format!(
                "ordinates not strictly increasing at #{}: {} then {}",
                i + 2,
                gammas[i],
                gammas[i + 1]
            )));
        }
        let last = gammas.last().copied().unwrap_or(0.0);
        let t_max = t_max.unwrap_or(last);
        if t_max < last {
            return Err(Error::DataIntegrity(format!(
                "t_max {t_max} is below the last ordinate {last}"
            )));
        }
        Ok(Self { gammas, t_max })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn count(&self) -> usize {
        self.gammas.len()
    }

    /// Zeros with ordinate at most `t`, complete to height `t`.
    pub fn truncated(&self, t: f64) -> Result<ZeroSet> {
        if t > self.t_max {
            return Err(Error::Coverage { needed: t, available: self.t_max });
        }
        let n = self.gammas.partition_point(|&g| g <= t);
        Ok(ZeroSet { gammas: self.gammas[..n].to_vec(), t_max: t })
    }

    /// The first `n` zeros, with `t_max` set to the n-th ordinate.
    pub fn first(&self, n: usize) -> Result<ZeroSet> {
        if n == 0 || n > self.count() {
            return Err(domain(format!("cannot take {n} of {} zeros", self.count())));
        }
        ZeroSet::new(self.gammas[..n].to_vec(), None)
    }
}

/// Reads a table with one ordinate per line; `#` lines and blank lines are skipped.
///
/// With `t_cap`, ordinates above the cap are dropped and `t_max = t_cap`.
pub fn load_zeros(path: impl AsRef<Path>, t_cap: Option<f64>) -> Result<ZeroSet> {
    let path = path.as_ref();
    let reader = BufReader::new(File::open(path)?);
    let mut gammas = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let value: f64 = text.parse().map_err(|_| Error::Format {
            path: path.to_path_buf(),
            line: idx + 1,
            text: text.to_string(),
        })?;
        if let Some(cap) = t_cap {
            if value > cap {
                break;
            }
        }
        gammas.push(value);
    }
    ZeroSet::new(gammas, t_cap)
}

#[inline]
fn theta_series(t: f64) -> f64 {
    let t2 = t * t;
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t2 * t)
}

/// Riemann-Siegel theta for `t >= 10`, from its asymptotic expansion.
pub fn theta(t: f64) -> Result<f64> {
    if !(t >= THETA_MIN) {
        return Err(domain(format!("theta({t}) is outside the supported range t >= {THETA_MIN}")));
    }
    Ok(theta_series(t))
}

/// theta(t + h) - theta(t), arranged to avoid cancelling two large values.
#[inline]
pub(crate) fn theta_increment(t: f64, h: f64) -> f64 {
    let u = t + h;
    let log_ratio = (h / t).ln_1p();
    0.5 * h * (t / (2.0 * PI)).ln() + 0.5 * u * log_ratio - 0.5 * h
        + (1.0 / u - 1.0 / t) / 48.0
        + 7.0 / 5760.0 * (1.0 / (u * u * u) - 1.0 / (t * t * t))
}

/// N(t): the number of ordinates in (0, t].
pub fn zero_count(zs: &ZeroSet, t: f64) -> Result<usize> {
    if !(t > 0.0 && t <= zs.t_max) {
        return Err(domain(format!("zero_count at {t} outside (0, {}]", zs.t_max)));
    }
    Ok(count_le(&zs.gammas, t))
}

#[inline]
fn count_le(gammas: &[f64], t: f64) -> usize {
    gammas.partition_point(|&g| g <= t)
}

/// S(t) = N(t) - 1 - theta(t)/pi, taking the right limit at an ordinate.
pub fn s_of_t(zs: &ZeroSet, t: f64) -> Result<f64> {
    let th = theta(t)?;
    let n = zero_count(zs, t)?;
    Ok(n as f64 - 1.0 - th / PI)
}

/// Result of [`second_moment_diff`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffMoment {
    /// Integral of (S(t+h) - S(t))^2 over [t_min, T].
    pub value: f64,
    /// Crude bound on the omitted integral over [0, t_min).
    pub sliver_bound: f64,
    pub panels: usize,
}

/// Integral of (S(t+h) - S(t))^2 over [t_min, T].
///
/// The integrand is smooth between consecutive points of
/// {gamma} ∪ {gamma - h} ∪ {t_min, T}; on each such panel the jump count
/// N(t+h) - N(t) is constant and the theta increment is integrated with a
/// fixed-order Gauss rule.
pub fn second_moment_diff(zs: &ZeroSet, h: f64, t: f64, t_min: f64) -> Result<DiffMoment> {
    second_moment_diff_with(zs, h, t, t_min, DEFAULT_GAUSS_ORDER)
}

pub fn second_moment_diff_with(
    zs: &ZeroSet,
    h: f64,
    t: f64,
    t_min: f64,
    order: usize,
) -> Result<DiffMoment> {
    if !(h >= 0.0) {
        return Err(domain(format!("shift h = {h} must be non-negative")));
    }
    let value = if h == 0.0 { 0.0 } else { shifted_square_integral(zs, h, t_min, t, order)?.0 };
    let panels = panel_edges(&zs.gammas, h, t_min, t).len().saturating_sub(1);
    Ok(DiffMoment { value, sliver_bound: sliver_bound(zs, h, t_min), panels })
}

fn sliver_bound(zs: &ZeroSet, h: f64, t_min: f64) -> f64 {
    let jumps = count_le(&zs.gammas, t_min + h) as f64;
    // theta' stays within [-2.7, 0.3] on [0, 12]; beyond, the asymptotic slope.
    let slope = 3.0_f64.max(0.5 * ((t_min + h) / (2.0 * PI)).ln() + 0.01);
    t_min * (jumps + slope * h / PI).powi(2)
}

/// Sorted, deduplicated panel edges covering [a, b].
pub(crate) fn panel_edges(gammas: &[f64], shift: f64, a: f64, b: f64) -> Vec<f64> {
    let inside = |x: &f64| *x > a && *x < b;
    let first: Vec<f64> = gammas.iter().copied().filter(inside).collect();
    let second: Vec<f64> = gammas.iter().map(|g| g - shift).filter(inside).collect();
    let mut edges = Vec::with_capacity(first.len() + second.len() + 2);
    edges.push(a);
    let (mut i, mut j) = (0, 0);
    while i < first.len() || j < second.len() {
        let next = match (first.get(i), second.get(j)) {
            (Some(&x), Some(&y)) if x <= y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if next > *edges.last().unwrap_or(&a) {
            edges.push(next);
        }
    }
    if b > *edges.last().unwrap_or(&a) {
        edges.push(b);
    }
    edges
}

/// Integral of (S(t+shift) - S(t))^2 over [a, b] for any real shift; returns
/// the value and the summed panel length.
pub(crate) fn shifted_square_integral(
    zs: &ZeroSet,
    shift: f64,
    a: f64,
    b: f64,
    order: usize,
) -> Result<(f64, f64)> {
    if !(a < b) {
        return Err(domain(format!("empty integration window [{a}, {b}]")));
    }
    if a.min(a + shift) < THETA_MIN {
        return Err(domain(format!("window reaches below t = {THETA_MIN}")));
    }
    let top = b.max(b + shift);
    if top > zs.t_max {
        return Err(Error::Coverage { needed: top, available: zs.t_max });
    }
    let edges = panel_edges(&zs.gammas, shift, a, b);
    let rule = GaussLegendre::cached(order);
    let g = &zs.gammas;
    let (value, length) = reduce_blocks(
        edges.len() - 1,
        1024,
        || (Neumaier::new(), Neumaier::new()),
        |acc, k| {
            let (lo, hi) = (edges[k], edges[k + 1]);
            let mid = 0.5 * (lo + hi);
            let jumps = count_le(g, mid + shift) as f64 - count_le(g, mid) as f64;
            let v = rule.integrate(lo, hi, |t| {
                let d = jumps - theta_increment(t, shift) / PI;
                d * d
            });
            acc.0.add(v);
            acc.1.add(hi - lo);
        },
        |acc, other| {
            acc.0.merge(&other.0);
            acc.1.merge(&other.1);
        },
    );
    Ok((value.value(), length.value()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ZeroSet {
        ZeroSet::new(
            vec![
                14.134_725_141_734_694,
                21.022_039_638_771_555,
                25.010_857_580_145_689,
                30.424_876_125_859_513,
                32.935_061_587_739_19,
                37.586_178_158_825_671,
                40.918_719_012_147_495,
                43.327_073_280_914_999,
                48.005_150_881_167_16,
                49.773_832_477_672_302,
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(ZeroSet::new(vec![-3.0], None), Err(Error::DataIntegrity(_))));
        assert!(matches!(ZeroSet::new(vec![2.0, 2.0], None), Err(Error::DataIntegrity(_))));
        assert!(matches!(ZeroSet::new(vec![2.0], Some(1.0)), Err(Error::DataIntegrity(_))));
    }

    #[test]
    fn theta_reference_values() {
        // 30-digit reference: Im log Gamma(1/4 + it/2) - (t/2) log pi.
        assert!((theta(20.0).unwrap() - 1.186_894_808_444_484).abs() < 1e-8);
        assert!((theta(100.0).unwrap() - 87.972_165_231_787_22).abs() < 1e-8);
        assert!((theta(1000.3).unwrap() - 2035.306_932_261_419_6).abs() < 1e-8);
        assert!((theta(10.0).unwrap() - -3.067_074_396_289_895).abs() < 1e-8);
        assert!(matches!(theta(5.0), Err(Error::Domain(_))));
    }

    #[test]
    fn theta_increment_matches_difference() {
        for (t, h) in [(20.0, 1.0), (1000.0, 0.5), (70000.0, 2.0)] {
            let direct = theta(t + h).unwrap() - theta(t).unwrap();
            assert!((theta_increment(t, h) - direct).abs() < 1e-9 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn counting_and_s() {
        let zs = small();
        assert_eq!(zero_count(&zs, 10.0).unwrap(), 0);
        assert_eq!(zero_count(&zs, 20.0).unwrap(), 1);
        assert_eq!(zero_count(&zs, zs.t_max()).unwrap(), 10);
        assert!(zero_count(&zs, 60.0).is_err());
        // 1 - 1 - theta(20)/pi
        assert!((s_of_t(&zs, 20.0).unwrap() + 0.377_801).abs() < 1e-5);
        let g1 = zs.gammas()[0];
        let jump = s_of_t(&zs, g1 + 1e-9).unwrap() - s_of_t(&zs, g1 - 1e-9).unwrap();
        assert!((jump - 1.0).abs() < 1e-6);
    }

    #[test]
    fn s_is_continuous_between_ordinates() {
        let zs = small();
        let pts: Vec<f64> = (0..100).map(|k| 14.2 + 6.8 * k as f64 / 99.0).collect();
        for w in pts.windows(2) {
            let a = s_of_t(&zs, w[0]).unwrap();
            let b = s_of_t(&zs, w[1]).unwrap();
            assert!((a - b).abs() < 0.1);
            assert!((a - (-theta(w[0]).unwrap() / PI)).abs() < 1e-12);
        }
    }

    #[test]
    fn panels_tile_the_window() {
        let zs = small();
        let (_, len) = shifted_square_integral(&zs, 1.0, 10.0, 48.0, 8).unwrap();
        assert!((len - 38.0).abs() < 1e-12 * 48.0);
    }

    #[test]
    fn zero_shift_gives_zero() {
        let zs = small();
        let m = second_moment_diff(&zs, 0.0, 45.0, 10.0).unwrap();
        assert_eq!(m.value, 0.0);
    }

    #[test]
    fn shifting_the_window_is_a_change_of_variables() {
        let zs = small();
        let h = 0.7;
        let (fwd, _) = shifted_square_integral(&zs, h, 15.0, 45.0, 8).unwrap();
        let (back, _) = shifted_square_integral(&zs, -h, 15.0 + h, 45.0 + h, 8).unwrap();
        assert!((fwd - back).abs() < 1e-12 * fwd);
    }

    #[test]
    fn coverage_is_enforced() {
        let zs = small();
        assert!(matches!(
            second_moment_diff(&zs, 1.0, 49.5, 10.0),
            Err(Error::Coverage { .. })
        ));
    }
}
