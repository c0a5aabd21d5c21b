//! Sine and cosine integrals.
//!
//! Power series below x = 2 and the continued fraction for E1(ix) above, as
//! in the classic Numerical Recipes routine. A plain Taylor series is not
//! usable much past x = 8 in double precision (terms reach e^x/√x before
//! cancelling), so the switch happens early.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Result};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

const SWITCH: f64 = 2.0;
const ASYMPTOTIC: f64 = 200.0;
const MAX_ITER: usize = 200;

fn series(t: f64) -> (f64, f64) {
    // Returns (Si(t), Ci(t) - ln t - C0).
    let (mut sum_s, mut sum_c) = (0.0, 0.0);
    let mut fact = 1.0;
    let mut sign = 1.0;
    for k in 1..MAX_ITER {
        fact *= t / k as f64;
        let term = fact / k as f64;
        if k % 2 == 1 {
            sum_s += sign * term;
            if term < f64::EPSILON * sum_s.abs() {
                break;
            }
        } else {
            sign = -sign;
            sum_c += sign * term;
            if term < f64::EPSILON * sum_c.abs() {
                break;
            }
        }
    }
    (sum_s, sum_c)
}

/// Continued fraction for e^{it} E1(it), t >= 2.
fn e1_scaled(t: f64) -> (f64, f64) {
    // Complex Lentz with b_1 = 1 + it, a_i = -(i-1)^2, b_i = b_{i-1} + 2.
    let tiny = 1e-300;
    let (mut br, bi) = (1.0, t);
    let mut c = (1.0 / tiny, 0.0);
    let mut d = cinv((br, bi));
    let mut h = d;
    for i in 2..MAX_ITER {
        let a = -(((i - 1) * (i - 1)) as f64);
        br += 2.0;
        d = cinv((a * d.0 + br, a * d.1 + bi));
        let ac = cinv(c);
        c = (br + a * ac.0, bi + a * ac.1);
        let del = cmul(c, d);
        h = cmul(h, del);
        if (del.0 - 1.0).abs() + del.1.abs() < f64::EPSILON {
            break;
        }
    }
    h
}

#[inline]
fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

#[inline]
fn cinv(a: (f64, f64)) -> (f64, f64) {
    let n = a.0 * a.0 + a.1 * a.1;
    (a.0 / n, -a.1 / n)
}

/// Auxiliary functions f, g with π/2 − Si(x) = f cos x + g sin x and
/// Ci(x) = f sin x − g cos x, for x > 0.
pub fn aux_fg(x: f64) -> (f64, f64) {
    if x >= ASYMPTOTIC {
        // next terms are below 4e-16 relative here
        let r = 1.0 / (x * x);
        let f = (1.0 - r * (2.0 - r * (24.0 - r * (720.0 - r * 40320.0)))) / x;
        let g = (1.0 - r * (6.0 - r * (120.0 - r * (5040.0 - r * 362880.0)))) * r;
        (f, g)
    } else if x >= SWITCH {
        let (re, im) = e1_scaled(x);
        (-im, re)
    } else {
        let (s, c) = si_ci_unchecked(x);
        let (sn, cs) = x.sin_cos();
        let rest = FRAC_PI_2 - s;
        (rest * cs + c * sn, rest * sn - c * cs)
    }
}

fn si_ci_unchecked(x: f64) -> (f64, f64) {
    let t = x.abs();
    let (si, ci) = if t == 0.0 {
        (0.0, f64::NEG_INFINITY)
    } else if t < SWITCH {
        let (s, c) = series(t);
        (s, c + t.ln() + EULER_GAMMA)
    } else {
        let (f, g) = aux_fg(t);
        let (sn, cs) = t.sin_cos();
        (FRAC_PI_2 - (f * cs + g * sn), f * sn - g * cs)
    };
    (si.copysign(x), ci)
}

/// (Si(x), Ci(x)); Ci needs x > 0.
pub fn si_ci(x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) {
        return Err(domain(format!("Ci({x}) needs a positive argument")));
    }
    Ok(si_ci_unchecked(x))
}

/// Si(x) for any real x.
pub fn si(x: f64) -> f64 {
    si_ci_unchecked(x).0
}

pub fn ci(x: f64) -> Result<f64> {
    si_ci(x).map(|p| p.1)
}

/// Cin(x) = ∫₀ˣ (1 − cos t)/t dt, for x >= 0.
pub fn one_minus_cos_integral(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(domain(format!("(1 - cos)/t integral needs x >= 0, got {x}")));
    }
    Ok(cin(x))
}

pub(crate) fn cin(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x < 1.0 {
        cin_series(x)
    } else {
        x.ln() + EULER_GAMMA - si_ci_unchecked(x).1
    }
}

pub(crate) fn cin_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = 1.0; // x^{2k} / (2k)!
    let mut sum = 0.0;
    for k in 1..60 {
        let n = 2 * k;
        term *= x2 / ((n - 1) * n) as f64;
        let add = term / n as f64;
        sum += if k % 2 == 1 { add } else { -add };
        if add < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// ∫₁^∞ cos(να)/α² dα = cos ν − |ν|(π/2 − Si|ν|).
/// ∫_a^∞ cos(νu)/u^p du for p ∈ {2, 4} and a > 0.
pub(crate) fn cos_power_tail(a: f64, nu: f64, p: u32) -> f64 {
    let j2 = cos_over_square_tail(nu * a) / a;
    if p == 2 {
        return j2;
    }
    debug_assert_eq!(p, 4);
    let (sn, cs) = (nu * a).sin_cos();
    let j3s = sn / (2.0 * a * a) + 0.5 * nu * j2;
    cs / (3.0 * a.powi(3)) - nu / 3.0 * j3s
}

pub(crate) fn cos_over_square_tail(nu: f64) -> f64 {
    let t = nu.abs();
    if t == 0.0 {
        return 1.0;
    }
    let (f, g) = aux_fg(t);
    let (sn, cs) = t.sin_cos();
    if t >= SWITCH {
        // cos t (1 − t f) − t g sin t; 1 − t f is O(t⁻²) but has no catastrophic loss
        cs * (1.0 - t * f) - t * g * sn
    } else {
        cs - t * (FRAC_PI_2 - si(t))
    }
}
