//! Pair sweeps over a sorted ordinate array.
//!
//! Every pair statistic in this module has the shape
//! Σ_{γ,γ'} a(γ − γ' − s) cos((γ − γ' − s) ℓ) over ordered pairs, the
//! diagonal included, evaluated on a uniform grid of ℓ. Unordered pairs
//! i < j are visited once; rows are reduced in fixed blocks so the result is
//! independent of the thread count.

use crate::sum::{reduce_blocks, Neumaier};

/// ℓ₀, ℓ₀ + dℓ, ..., count points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Grid {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl Grid {
    pub fn single(at: f64) -> Self {
        Self { start: at, step: 0.0, count: 1 }
    }
}

/// Rotations drift by a few ulps per step; restart from an exact value this often.
const RESEED: usize = 256;

#[inline]
fn add_cos_grid(acc: &mut [f64], freq: f64, weight: f64, grid: &Grid) {
    if weight == 0.0 {
        return;
    }
    if grid.count == 1 {
        acc[0] += weight * (freq * grid.start).cos();
        return;
    }
    let (sd, cd) = (freq * grid.step).sin_cos();
    let mut m = 0;
    while m < grid.count {
        let (mut s, mut c) = (freq * (grid.start + m as f64 * grid.step)).sin_cos();
        let end = (m + RESEED).min(grid.count);
        for slot in &mut acc[m..end] {
            *slot += weight * c;
            let c2 = c * cd - s * sd;
            s = s * cd + c * sd;
            c = c2;
        }
        m = end;
    }
}

pub(crate) struct Sweep<'a> {
    pub gammas: &'a [f64],
    pub window: Option<f64>,
    pub block: usize,
}

pub(crate) struct SweepResult {
    /// values[k][m] for shift k at grid point m
    pub values: Vec<Vec<f64>>,
    /// unordered off-diagonal pairs visited
    pub pairs: u64,
}

impl Sweep<'_> {
    /// Σ over ordered pairs of amp(δ') cos(δ' ℓ_m), δ' = γ − γ' − s, for each shift s.
    pub fn cos_sums(&self, shifts: &[f64], grid: &Grid, amp: impl Fn(f64) -> f64 + Sync) -> SweepResult {
        let g = self.gammas;
        let n = g.len();
        let width = shifts.len() * grid.count;
        let window = self.window.unwrap_or(f64::INFINITY);
        struct Acc {
            cells: Vec<f64>,
            bank: Vec<Neumaier>,
            pairs: u64,
        }
        let total = reduce_blocks(
            n,
            self.block,
            || Acc { cells: vec![0.0; width], bank: Vec::new(), pairs: 0 },
            |acc, i| {
                let gi = g[i];
                for j in i + 1..n {
                    let delta = g[j] - gi;
                    if delta > window {
                        break;
                    }
                    acc.pairs += 1;
                    for (k, &s) in shifts.iter().enumerate() {
                        let cells = &mut acc.cells[k * grid.count..(k + 1) * grid.count];
                        if s == 0.0 {
                            add_cos_grid(cells, delta, amp(delta) + amp(-delta), grid);
                        } else {
                            add_cos_grid(cells, delta - s, amp(delta - s), grid);
                            add_cos_grid(cells, delta + s, amp(-delta - s), grid);
                        }
                    }
                }
            },
            |total, part| {
                if total.bank.is_empty() {
                    total.bank = vec![Neumaier::new(); width];
                }
                for (b, c) in total.bank.iter_mut().zip(&part.cells) {
                    b.add(*c);
                }
                total.pairs += part.pairs;
            },
        );
        let mut bank = if total.bank.is_empty() { vec![Neumaier::new(); width] } else { total.bank };
        // diagonal: N amp(−s) cos(sℓ)
        for (k, &s) in shifts.iter().enumerate() {
            let mut diag = vec![0.0; grid.count];
            add_cos_grid(&mut diag, s, n as f64 * amp(-s), grid);
            for (b, d) in bank[k * grid.count..(k + 1) * grid.count].iter_mut().zip(diag) {
                b.add(d);
            }
        }
        let flat: Vec<f64> = bank.iter().map(Neumaier::value).collect();
        SweepResult {
            values: flat.chunks(grid.count.max(1)).map(|c| c.to_vec()).collect(),
            pairs: total.pairs,
        }
    }

    /// Σ over ordered pairs (diagonal included) of phi(γ − γ'), with the
    /// number of unordered off-diagonal pairs visited.
    pub fn ordered_sum(&self, phi: impl Fn(f64) -> f64 + Sync) -> (f64, u64) {
        let g = self.gammas;
        let n = g.len();
        let window = self.window.unwrap_or(f64::INFINITY);
        let (acc, pairs) = reduce_blocks(
            n,
            self.block,
            || (Neumaier::new(), 0u64),
            |acc, i| {
                let gi = g[i];
                let mut row = 0.0;
                for j in i + 1..n {
                    let delta = g[j] - gi;
                    if delta > window {
                        break;
                    }
                    acc.1 += 1;
                    row += phi(delta) + phi(-delta);
                }
                acc.0.add(row);
            },
            |total, part| {
                total.0.merge(&part.0);
                total.1 += part.1;
            },
        );
        let mut acc = acc;
        acc.add(n as f64 * phi(0.0));
        (acc.value(), pairs)
    }

    /// Upper bound for Σ envelope(γ_j − γ_i) over unordered pairs the window
    /// skipped. `envelope` must be non-increasing beyond the window.
    pub fn excluded_bound(&self, envelope: impl Fn(f64) -> f64) -> f64 {
        let Some(window) = self.window else { return 0.0 };
        let g = self.gammas;
        if g.len() < 2 {
            return 0.0;
        }
        let span = g[g.len() - 1] - g[0];
        let ratio = 2f64.powf(0.25);
        let mut bound = Neumaier::new();
        let mut lo = window;
        let mut below = pairs_within(g, lo);
        while lo < span {
            let hi = (lo * ratio).min(span);
            let upto = pairs_within(g, hi);
            bound.add((upto - below) as f64 * envelope(lo));
            below = upto;
            lo = hi;
        }
        bound.value()
    }
}

/// Number of unordered pairs i < j with γ_j − γ_i <= d.
pub(crate) fn pairs_within(g: &[f64], d: f64) -> u64 {
    let mut count = 0u64;
    let mut j = 0;
    for i in 0..g.len() {
        if j < i + 1 {
            j = i + 1;
        }
        while j < g.len() && g[j] - g[i] <= d {
            j += 1;
        }
        count += (j - i - 1) as u64;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_matches_direct_cosines() {
        let grid = Grid { start: -1.3, step: 0.01, count: 1000 };
        let mut acc = vec![0.0; 1000];
        add_cos_grid(&mut acc, 37.25, 0.5, &grid);
        for (m, v) in acc.iter().enumerate() {
            let direct = 0.5 * (37.25 * (grid.start + m as f64 * grid.step)).cos();
            assert!((v - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn pair_counting() {
        let g = [1.0, 2.0, 4.0, 7.0];
        assert_eq!(pairs_within(&g, 0.5), 0);
        assert_eq!(pairs_within(&g, 2.0), 2);
        assert_eq!(pairs_within(&g, 3.0), 4);
        assert_eq!(pairs_within(&g, 6.0), 6);
    }
}
