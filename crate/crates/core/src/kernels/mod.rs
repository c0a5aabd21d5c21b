//! Kernels w, f, k and k″, the transform k̂, Si/Ci, and the
//! integration-by-parts identities that tie k″ back to k.

mod ibp;
mod khat;
mod special;

use std::f64::consts::PI;

use crate::error::{domain, Result};

pub use ibp::{ibp_identity_residual, ibp_sides, IbpLemma, IbpSides};
pub use khat::{k_hat, KHatTable};
pub use special::{aux_fg, ci, one_minus_cos_integral, si, si_ci, EULER_GAMMA};
pub(crate) use khat::uniform_lagrange6;
pub(crate) use special::{cin, cos_over_square_tail, cos_power_tail};

/// Edge of the inner branch of k: |u| = 1/(2π).
pub const K_EDGE: f64 = 0.5 / PI;

/// Below this |u| the cotangent differences in k, k′ and k″ switch to series.
const K_SERIES_BELOW: f64 = 1e-2;
/// Below this |u| f switches to its series.
const F_SERIES_BELOW: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// w(u) = 4/(4+u²)
    W,
    /// f(u) = (πu/2) cot(πu/2)
    FCot,
    /// Goldston's kernel k
    K,
    /// k″, pointwise (the left branch at |u| = 1/(2π))
    KDd,
}

pub fn kernel_eval(kind: KernelKind, u: f64) -> Result<f64> {
    match kind {
        KernelKind::W => Ok(w(u)),
        KernelKind::FCot => {
            if u.abs() >= 2.0 {
                Err(domain(format!("f(u) has a pole at |u| = 2; got u = {u}")))
            } else {
                Ok(f_cot(u))
            }
        }
        KernelKind::K => Ok(k(u)),
        KernelKind::KDd => Ok(k_dd(u)),
    }
}

#[inline]
pub fn w(u: f64) -> f64 {
    4.0 / (4.0 + u * u)
}

/// f(u) for |u| < 2.
#[inline]
pub fn f_cot(u: f64) -> f64 {
    let z = 0.5 * PI * u.abs();
    if u.abs() < F_SERIES_BELOW {
        1.0 - z * s0(z)
    } else {
        z / z.tan()
    }
}

// S(z) = 1/z − cot z and its first two derivatives.
const S_COEF: [f64; 6] = [
    1.0 / 3.0,
    1.0 / 45.0,
    2.0 / 945.0,
    1.0 / 4725.0,
    2.0 / 93555.0,
    1382.0 / 638_512_875.0,
];

fn s0(z: f64) -> f64 {
    let z2 = z * z;
    z * S_COEF.iter().rev().fold(0.0, |acc, c| acc * z2 + c)
}

fn s1(z: f64) -> f64 {
    let z2 = z * z;
    S_COEF
        .iter()
        .enumerate()
        .rev()
        .fold(0.0, |acc, (j, c)| acc * z2 + (2 * j + 1) as f64 * c)
}

fn s2(z: f64) -> f64 {
    let z2 = z * z;
    z * S_COEF
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (j, c)| acc * z2 + ((2 * j + 1) * 2 * j) as f64 * c)
}

/// (S, S′, S″) at z = π²u for 0 <= u <= 1/(2π).
fn s_triple(u: f64) -> (f64, f64, f64) {
    let z = PI * PI * u;
    if u < K_SERIES_BELOW {
        (s0(z), s1(z), s2(z))
    } else {
        let (sn, cs) = z.sin_cos();
        let cot = cs / sn;
        let csc2 = 1.0 / (sn * sn);
        (1.0 / z - cot, csc2 - 1.0 / (z * z), 2.0 / (z * z * z) - 2.0 * csc2 * cot)
    }
}

/// k(u): (1/(2u) − (π²/2)cot(π²u))² inside |u| <= 1/(2π), 1/(4u²) outside.
pub fn k(u: f64) -> f64 {
    let u = u.abs();
    if u <= K_EDGE {
        let g = 0.5 * PI * PI * s_triple(u).0;
        g * g
    } else {
        0.25 / (u * u)
    }
}

/// k′(u); the inner branch is used at |u| = 1/(2π) (left limit).
pub fn k_prime(u: f64) -> f64 {
    let a = u.abs();
    let d = if a <= K_EDGE {
        let (s, sp, _) = s_triple(a);
        // 2 g g′ with g = (π²/2)S, g′ = (π⁴/2)S′
        0.5 * PI.powi(6) * s * sp
    } else {
        -0.5 / (a * a * a)
    };
    if u < 0.0 { -d } else { d }
}

/// k″(u), pointwise; the inner branch is used at |u| = 1/(2π) (left limit).
pub fn k_dd(u: f64) -> f64 {
    let u = u.abs();
    if u <= K_EDGE {
        let (s, sp, spp) = s_triple(u);
        0.5 * PI.powi(8) * (sp * sp + s * spp)
    } else {
        1.5 / (u * u * u * u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchor_values() {
        assert_eq!(w(0.0), 1.0);
        assert_eq!(w(2.0), 0.5);
        assert_eq!(k(0.0), 0.0);
        assert!((k(K_EDGE) - PI * PI).abs() < 1e-12);
        assert_eq!(f_cot(0.0), 1.0);
        assert!(f_cot(1.0).abs() < 1e-15);
        assert!((k_dd(1.0) - 1.5).abs() < 1e-15);
        assert!(kernel_eval(KernelKind::FCot, 2.0).is_err());
        assert!((k_dd(0.0) - PI.powi(8) / 18.0).abs() < 1e-9);
    }

    #[test]
    fn branches_meet_at_the_edge() {
        let inside = k(K_EDGE * (1.0 - 1e-15));
        let outside = k(K_EDGE * (1.0 + 1e-15));
        assert!((inside - outside).abs() < 1e-10);
        assert!((k_prime(K_EDGE) - (PI.powi(5) - 4.0 * PI.powi(3))).abs() < 1e-9);
    }

    #[test]
    fn series_and_closed_forms_agree_at_the_switch() {
        let u = K_SERIES_BELOW;
        let z = PI * PI * u;
        let (sn, cs) = z.sin_cos();
        let direct = (1.0 / z - cs / sn, 1.0 / (sn * sn) - 1.0 / (z * z));
        assert!((s0(z) - direct.0).abs() < 1e-14);
        assert!((s1(z) - direct.1).abs() < 1e-13);
        let direct2 = 2.0 / (z * z * z) - 2.0 * cs / (sn * sn * sn);
        assert!((s2(z) - direct2).abs() < 1e-11);
        let zf = 0.5 * PI * F_SERIES_BELOW;
        assert!((1.0 - zf * s0(zf) - zf / zf.tan()).abs() < 1e-15);
    }

    #[test]
    fn derivatives_match_central_differences() {
        let grid = (1..400).map(|i| i as f64 * 0.005);
        for u in grid {
            if (u - K_EDGE).abs() < 2e-3 {
                continue;
            }
            let e = 1e-4 * u.max(0.01);
            let fd1 = (k(u + e) - k(u - e)) / (2.0 * e);
            let fd2 = (k(u + e) - 2.0 * k(u) + k(u - e)) / (e * e);
            let scale = k_dd(u).abs().max(1.0);
            assert!((k_prime(u) - fd1).abs() < 1e-6 * k_prime(u).abs().max(1.0), "k' at {u}: {} vs {fd1}", k_prime(u));
            assert!((k_dd(u) - fd2).abs() < 1e-5 * scale, "k'' at {u}: {} vs {fd2}", k_dd(u));
        }
    }
}
