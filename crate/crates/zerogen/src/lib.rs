//! Zero-ordinate tables for the Riemann zeta function, computed locally.
//!
//! Z(t) is evaluated with Euler-Maclaurin summation below [`RS_SWITCH`] and
//! with the Riemann-Siegel formula (five correction terms) above it. Zeros
//! are isolated Gram block by Gram block: a block bounded by good Gram points
//! `g_j < g_k` must hold exactly `k - j` sign changes (Rosser's rule, which
//! has no exceptions below the 13.9 millionth Gram point), and intervals are
//! subdivided until that many are found. Each bracket is then polished with
//! Brent's method.
//!
//! Ordinates come out accurate to roughly 1e-10 absolute, which is more than
//! the nine decimals of the usual published tables.

use std::f64::consts::PI;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use thiserror::Error;

/// Heights below this use Euler-Maclaurin; above, Riemann-Siegel.
pub const RS_SWITCH: f64 = 2000.0;

const MAX_SUBDIVISION: u32 = 14;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("could not isolate {expected} zeros in Gram block [{lo}, {hi}] (found {found})")]
    MissingZeros {
        lo: f64,
        hi: f64,
        expected: usize,
        found: usize,
    },
    #[error("i/o error writing zero table: {0}")]
    Io(#[from] std::io::Error),
}

/// Riemann-Siegel theta from its asymptotic series; accurate to ~1e-12 for t >= 9.
pub fn theta(t: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    let t5 = t3 * t2;
    let t7 = t5 * t2;
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t3)
        + 31.0 / (80640.0 * t5)
        + 127.0 / (430080.0 * t7)
}

fn theta_prime(t: f64) -> f64 {
    0.5 * (t / (2.0 * PI)).ln() - 1.0 / (48.0 * t * t)
}

/// The n-th Gram point: the solution of theta(g) = n*pi, for n >= -1.
pub fn gram_point(n: i64) -> f64 {
    let target = n as f64 * PI;
    // Start from the leading-order inversion and polish with Newton.
    let mut g = if n < 0 {
        9.67
    } else {
        let x = (n as f64 + 0.125) / std::f64::consts::E;
        2.0 * PI * std::f64::consts::E * (x / lambert_w(x)).max(1.0)
    };
    for _ in 0..50 {
        let step = (theta(g) - target) / theta_prime(g);
        g -= step;
        if step.abs() < 1e-13 * g {
            break;
        }
    }
    g
}

fn lambert_w(x: f64) -> f64 {
    let mut w = if x < 1.0 { x } else { x.ln() - x.ln().ln().max(0.0) };
    for _ in 0..60 {
        let ew = w.exp();
        let f = w * ew - x;
        let step = f / (ew * (w + 1.0));
        w -= step;
        if step.abs() < 1e-15 * w.abs().max(1.0) {
            break;
        }
    }
    w
}

/// Hardy's Z function, real on the real line with |Z(t)| = |zeta(1/2 + it)|.
pub fn hardy_z(t: f64) -> f64 {
    if t < RS_SWITCH {
        z_euler_maclaurin(t)
    } else {
        z_riemann_siegel(t)
    }
}

fn bernoulli_ratios() -> &'static [f64] {
    // B_{2k} / (2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}
    static CELL: OnceLock<Vec<f64>> = OnceLock::new();
    CELL.get_or_init(|| {
        (1..=24)
            .map(|k: i32| {
                let s = 2 * k;
                let zeta = if k == 1 {
                    PI * PI / 6.0
                } else {
                    (1..20_000).rev().map(|n| (n as f64).powi(-s)).sum::<f64>()
                };
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * 2.0 * zeta / (2.0 * PI).powi(s)
            })
            .collect()
    })
}

/// zeta(1/2 + it) by Euler-Maclaurin, then rotated by e^{i theta}.
pub fn z_euler_maclaurin(t: f64) -> f64 {
    let s = Complex64::new(0.5, t);
    let n_terms = (t / PI).ceil() as usize + 10;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in (1..n_terms).rev() {
        sum += (-s * (n as f64).ln()).exp();
    }
    let big_n = n_terms as f64;
    let ln_n = big_n.ln();
    let n_pow_s = (-s * ln_n).exp();
    sum += n_pow_s * big_n / (s - 1.0) + n_pow_s * 0.5;
    // Correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut rising = s;
    let mut npow = n_pow_s / big_n;
    for (k, b) in bernoulli_ratios().iter().enumerate() {
        let term = rising * npow * *b;
        sum += term;
        if term.norm() < 1e-17 {
            break;
        }
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        npow /= big_n * big_n;
    }
    let th = theta(t);
    (Complex64::new(th.cos(), th.sin()) * sum).re
}

fn psi(z: Complex64) -> Complex64 {
    let two_pi = 2.0 * PI;
    (two_pi * (z * z - z - 1.0 / 16.0)).cos() / (two_pi * z).cos()
}

/// Derivatives 0..=12 of psi at a real point, by the Cauchy integral formula.
fn psi_derivatives(p: f64) -> [f64; 13] {
    const NODES: usize = 96;
    let r = 0.5;
    let mut out = [0.0; 13];
    let mut fact = 1.0;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..NODES {
            let phi = 2.0 * PI * (j as f64 + 0.5) / NODES as f64;
            let e = Complex64::new(phi.cos(), phi.sin());
            let val = psi(Complex64::new(p, 0.0) + e * r);
            acc += val * Complex64::new((k as f64 * phi).cos(), -(k as f64 * phi).sin());
        }
        *slot = (acc / NODES as f64).re * fact / r.powi(k as i32);
    }
    out
}

fn rs_coefficients(p: f64) -> [f64; 5] {
    let d = psi_derivatives(p);
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let pi6 = pi4 * pi2;
    let pi8 = pi4 * pi4;
    [
        d[0],
        -d[3] / (96.0 * pi2),
        d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4),
        -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5_308_416.0 * pi6),
        d[0] / (128.0 * pi2)
            + 19.0 * d[4] / (24576.0 * pi4)
            + 11.0 * d[8] / (5_898_240.0 * pi6)
            + d[12] / (2_038_431_744.0 * pi8),
    ]
}

struct Chebyshev {
    coeffs: Vec<f64>,
}

impl Chebyshev {
    fn nodes(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |k| 0.5 * ((PI * (k as f64 + 0.5) / n as f64).cos() + 1.0))
    }

    /// Coefficients on [0, 1] from values at the points of [`Chebyshev::nodes`].
    fn from_samples(values: &[f64]) -> Self {
        let n = values.len();
        let coeffs = (0..n)
            .map(|j| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v * (PI * j as f64 * (k as f64 + 0.5) / n as f64).cos())
                    .sum();
                let scale = if j == 0 { 1.0 } else { 2.0 };
                scale * s / n as f64
            })
            .collect();
        Self { coeffs }
    }

    fn eval(&self, p: f64) -> f64 {
        let x = 2.0 * p - 1.0;
        let (mut b1, mut b2) = (0.0, 0.0);
        for c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + self.coeffs[0]
    }
}

fn rs_tables() -> &'static [Chebyshev; 5] {
    static CELL: OnceLock<[Chebyshev; 5]> = OnceLock::new();
    CELL.get_or_init(|| {
        const DEG: usize = 48;
        let samples: Vec<[f64; 5]> = Chebyshev::nodes(DEG).map(rs_coefficients).collect();
        std::array::from_fn(|i| {
            let column: Vec<f64> = samples.iter().map(|row| row[i]).collect();
            Chebyshev::from_samples(&column)
        })
    })
}

/// Riemann-Siegel evaluation of Z(t) with corrections C0..C4.
pub fn z_riemann_siegel(t: f64) -> f64 {
    let tau = (t / (2.0 * PI)).sqrt();
    let m = tau.floor() as usize;
    let p = tau - m as f64;
    let th = theta(t);
    let mut main = 0.0;
    for n in 1..=m {
        let nf = n as f64;
        main += (th - t * nf.ln()).cos() / nf.sqrt();
    }
    let tables = rs_tables();
    let inv = 1.0 / tau;
    let mut corr = 0.0;
    let mut scale = 1.0;
    for c in tables {
        corr += c.eval(p) * scale;
        scale *= inv;
    }
    let sign = if (m - 1) % 2 == 0 { 1.0 } else { -1.0 };
    2.0 * main + sign * corr / tau.sqrt()
}

fn brent_root(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    const XTOL: f64 = 1e-12;
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * XTOL;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return b;
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    b
}

/// Sample points of a block, refined until `expected` sign changes appear.
fn isolate_block(lo: f64, hi: f64, grams: &[(f64, f64)], expected: usize) -> Result<Vec<(f64, f64, f64, f64)>, GenError> {
    let mut pts: Vec<(f64, f64)> = grams.to_vec();
    let mut found = 0;
    for _ in 0..=MAX_SUBDIVISION {
        let brackets: Vec<_> = pts
            .windows(2)
            .filter(|w| w[0].1.signum() != w[1].1.signum())
            .map(|w| (w[0].0, w[1].0, w[0].1, w[1].1))
            .collect();
        found = brackets.len();
        if found == expected {
            return Ok(brackets);
        }
        let mut next = Vec::with_capacity(pts.len() * 2);
        for w in pts.windows(2) {
            next.push(w[0]);
            let mid = 0.5 * (w[0].0 + w[1].0);
            next.push((mid, hardy_z(mid)));
        }
        next.push(*pts.last().expect("block has endpoints"));
        pts = next;
    }
    Err(GenError::MissingZeros { lo, hi, expected, found })
}

/// The first `count` positive zero ordinates, in increasing order.
pub fn first_zeros(count: usize) -> Result<Vec<f64>, GenError> {
    let mut zeros = Vec::with_capacity(count);
    let mut n: i64 = -1;
    let mut block: Vec<(f64, f64)> = vec![(gram_point(-1), hardy_z(gram_point(-1)))];
    let mut block_start = -1i64;
    while zeros.len() < count {
        n += 1;
        let g = gram_point(n);
        let z = hardy_z(g);
        block.push((g, z));
        let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
        if parity * z > 0.0 {
            let expected = (n - block_start) as usize;
            let lo = block[0].0;
            let brackets = isolate_block(lo, g, &block, expected)?;
            for (a, b, fa, fb) in brackets {
                zeros.push(brent_root(hardy_z, a, b, fa, fb));
            }
            block = vec![(g, z)];
            block_start = n;
        }
    }
    zeros.truncate(count);
    Ok(zeros)
}

/// Writes ordinates one per line with 12 decimals, preceded by a comment header.
pub fn write_table(path: &Path, zeros: &[f64]) -> Result<(), GenError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("partial");
    {
        let mut out = BufWriter::new(fs::File::create(&tmp)?);
        writeln!(out, "# first {} zeta zero ordinates (zerogen, Riemann-Siegel)", zeros.len())?;
        for z in zeros {
            writeln!(out, "{z:.12}")?;
        }
        out.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Directory holding generated tables: `$ZEROGEN_CACHE` or `<workspace>/target/zerogen`.
pub fn cache_dir() -> PathBuf {
    std::env::var_os("ZEROGEN_CACHE")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../target/zerogen"))
}

/// Path to a table of the first `count` zeros, generating it on first use.
pub fn cached_table(count: usize) -> Result<PathBuf, GenError> {
    static LOCK: Mutex<()> = Mutex::new(());
    let _guard = LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let path = cache_dir().join(format!("zeros_{count}.txt"));
    if path.exists() {
        return Ok(path);
    }
    // Reuse a longer table if one is already on disk.
    if let Ok(entries) = fs::read_dir(cache_dir()) {
        for entry in entries.flatten() {
            let name = entry.file_name().to_string_lossy().into_owned();
            let longer = name
                .strip_prefix("zeros_")
                .and_then(|s| s.strip_suffix(".txt"))
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&m| m > count);
            if longer.is_some() {
                let text = fs::read_to_string(entry.path())?;
                let zeros: Vec<f64> = text
                    .lines()
                    .filter(|l| !l.starts_with('#'))
                    .take(count)
                    .filter_map(|l| l.trim().parse().ok())
                    .collect();
                if zeros.len() == count {
                    write_table(&path, &zeros)?;
                    return Ok(path);
                }
            }
        }
    }
    let zeros = first_zeros(count)?;
    write_table(&path, &zeros)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_points_satisfy_theta() {
        for n in [-1, 0, 1, 10, 1000, 100_000] {
            let g = gram_point(n);
            assert!((theta(g) - n as f64 * PI).abs() < 1e-9, "n={n}");
        }
        assert!((gram_point(0) - 17.845_599_5).abs() < 1e-6);
    }

    #[test]
    fn psi_is_regular_at_its_removable_points() {
        let d = psi_derivatives(0.25);
        let near = psi_derivatives(0.25 + 1e-7);
        assert!((d[0] - near[0]).abs() < 1e-5);
    }
}
