//! S₃ as a zero double sum against its closed form, and the closed forms of
//! the prime sums S₄ and S₅.

use std::f64::consts::PI;

use super::{check_h, MomentOptions, MomentReport, Term, PI2};
use crate::error::{domain, Result};
use crate::kernels::{cin, f_cot, k_hat, KHatTable};
use crate::paircorr::{scale, tail_integrals, PairSumConfig};
use crate::primes::{log2_constant, prime_power_cos_sum, r_osc_integral, LambdaTable, S4S5};
use crate::quad::GaussLegendre;
use crate::zerodata::ZeroSet;

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(domain(format!("beta must lie in (0, 1), got {beta}")));
    }
    Ok(())
}

/// ∫₀¹ (1 − cos(νs))/s · (1 − f(s))² ds with f(s) = (πs/2)cot(πs/2).
pub fn taper_integral(nu: f64) -> f64 {
    if nu == 0.0 {
        return 0.0;
    }
    let rule = GaussLegendre::cached(24);
    let panels = 8 + (nu.abs() / PI).ceil() as usize;
    rule.composite(0.0, 1.0, panels, |s| {
        let g = 1.0 - f_cot(s);
        crate::primes::one_minus_cos(nu * s) / s * g * g
    })
}

fn s3_sum(zs: &ZeroSet, beta: f64, h: f64, khat: impl Fn(f64) -> f64 + Sync) -> Result<f64> {
    check_beta(beta)?;
    check_h(h)?;
    let (big_l, _) = scale(zs)?;
    let ell = beta * big_l;
    if h == 0.0 {
        return Ok(0.0);
    }
    let (sum, _) = PairSumConfig::exact().sweep(zs).ordered_sum(|d| khat(d * ell) - khat((d - h) * ell));
    Ok(2.0 / (PI2 * ell) * sum)
}

/// (2/(π² log x)) Σ_{γ,γ'} [k̂((γ−γ')log x) − k̂((γ−γ'−h)log x)] at
/// x = (T/2π)^β, T the table height; every pair, k̂ from the shared table.
pub fn s3_direct(zs: &ZeroSet, beta: f64, h: f64) -> Result<f64> {
    let table = KHatTable::shared();
    s3_sum(zs, beta, h, |xi| table.eval(xi))
}

/// [`s3_direct`] with k̂ evaluated from scratch for every pair.
pub fn s3_direct_uncached(zs: &ZeroSet, beta: f64, h: f64) -> Result<f64> {
    s3_sum(zs, beta, h, k_hat)
}

/// The closed form of S₃ at the table height, term by term.
///
/// Terms: "taper" (the [1 − f]² integral over [0, β]), "log_rest" (∫_β^1),
/// "tail2", "sin", "const", "cos", "tail4". Only the pair configuration,
/// a_max and sub_block of `opts` are used.
pub fn s3_formula(zs: &ZeroSet, beta: f64, h: f64, opts: &MomentOptions) -> Result<MomentReport> {
    check_beta(beta)?;
    check_h(h)?;
    let (big_l, _) = scale(zs)?;
    let t = zs.t_max();
    let (s, l2) = (t / PI2, big_l * big_l);
    let hl = h * big_l;
    let mut meta = Vec::new();
    let (tail2, tail4) = if h == 0.0 {
        (0.0, 0.0)
    } else {
        let tails = tail_integrals(zs, &[h], &[2, 4], opts.a_max, opts.sub_block, &opts.pair)?;
        meta.push(("tail_window_bound", tails[0].truncation_bound));
        (s * tails[0].estimate(), -1.5 * s / l2 * tails[1].estimate())
    };
    let q = 4.0 + h * h;
    let c = s / l2;
    meta.push(("error_order", t / (beta * l2)));
    let terms = vec![
        Term { label: "taper", value: s * beta_taper(hl, beta) },
        Term { label: "log_rest", value: s * (cin(hl) - cin(hl * beta)) },
        Term { label: "tail2", value: tail2 },
        Term { label: "sin", value: t * h * hl.sin() / (PI2 * q * big_l) },
        Term { label: "const", value: 0.75 * c },
        Term { label: "cos", value: -c * (12.0 + h * h) * hl.cos() / (q * q) },
        Term { label: "tail4", value: tail4 },
    ];
    Ok(MomentReport::new(h, t, big_l, terms, meta))
}

/// ∫₀^β (1 − cos(hLα))/α [1 − f(α/β)]² dα.
fn beta_taper(hl: f64, beta: f64) -> f64 {
    taper_integral(hl * beta)
}

/// [`s3_formula`] with [`s3_direct`] as the left-hand side.
pub fn s3_report(zs: &ZeroSet, beta: f64, h: f64, opts: &MomentOptions) -> Result<MomentReport> {
    let mut r = s3_formula(zs, beta, h, opts)?;
    r.set_lhs(s3_direct(zs, beta, h)?);
    Ok(r)
}

/// The closed forms of S₄ and S₅ at height T and prime cut x (big-O terms
/// dropped), both including the factor T/π².
pub fn s4_s5_formula(t: f64, x: f64, h: f64, table: &LambdaTable) -> Result<S4S5> {
    check_h(h)?;
    if !(x >= 2.0) {
        return Err(domain(format!("x must be at least 2, got {x}")));
    }
    if !(t > 0.0) {
        return Err(domain(format!("T must be positive, got {t}")));
    }
    if h == 0.0 {
        return Ok(S4S5 { s4: 0.0, s5: 0.0 });
    }
    let s = t / PI2;
    let (ln2, hx) = (2f64.ln(), h * x.ln());
    let r = r_osc_integral(h, table.limit() as f64, table)?;
    let s4 = log2_constant() * (1.0 - (h * ln2).cos()) + cin(hx) - taper_integral(hx) - cin(h * ln2) - h * r.value;
    let s5 = prime_power_cos_sum(h, None)?.value;
    Ok(S4S5 { s4: s * s4, s5: s * s5 })
}
