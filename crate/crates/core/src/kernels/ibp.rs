//! Integration-by-parts identities for k″ and for powers of α.
//!
//! Each left side is integrated directly (k″ pointwise, the open endpoint
//! β⁻ being the left branch of k″); the right side is the closed form plus
//! its own quadrature of a smooth remainder.

use std::f64::consts::PI;
use std::str::FromStr;

use super::{k, k_dd};
use crate::error::{domain, usage, Error, Result};
use crate::quad::GaussLegendre;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IbpLemma {
    /// ∫₀^{β⁻} sin(hLα) k″(α/2πβ) dα
    L23,
    /// ∫₀^{β⁻} α cos(hLα) k″(α/2πβ) dα
    L24,
    /// ∫₀^{β⁻} α k″(α/2πβ) dα
    L25,
    /// ∫_β^1 cos(hLα)/α³ dα
    L26,
    /// ∫_β^1 sin(hLα)/α⁴ dα
    L27,
}

impl IbpLemma {
    pub const ALL: [IbpLemma; 5] = [Self::L23, Self::L24, Self::L25, Self::L26, Self::L27];

    pub fn label(self) -> &'static str {
        match self {
            Self::L23 => "2.3",
            Self::L24 => "2.4",
            Self::L25 => "2.5",
            Self::L26 => "2.6",
            Self::L27 => "2.7",
        }
    }
}

impl FromStr for IbpLemma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().trim_start_matches('L').replace('.', "").as_str() {
            "23" => Ok(Self::L23),
            "24" => Ok(Self::L24),
            "25" => Ok(Self::L25),
            "26" => Ok(Self::L26),
            "27" => Ok(Self::L27),
            _ => Err(usage(format!("unknown identity tag {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IbpSides {
    pub lhs: f64,
    pub rhs: f64,
}

impl IbpSides {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

fn integrate(a: f64, b: f64, freq: f64, f: impl FnMut(f64) -> f64) -> f64 {
    let rule = GaussLegendre::cached(24);
    let panels = 24 + (freq * (b - a)).ceil() as usize;
    rule.composite(a, b, panels, f)
}

/// Both sides of the identity at (h, L, β).
pub fn ibp_sides(lemma: IbpLemma, h: f64, big_l: f64, beta: f64) -> Result<IbpSides> {
    if !(beta > 0.0 && beta <= 1.0) || !(big_l > 0.0) || !(h >= 0.0) {
        return Err(domain(format!("identity needs 0 < β <= 1, L > 0, h >= 0; got β={beta}, L={big_l}, h={h}")));
    }
    let a = h * big_l;
    let c = 2.0 * PI * beta;
    let (p4, p6) = (PI.powi(4), PI.powi(6));
    let (sb, cb) = (a * beta).sin_cos();
    let int_sin_k = || integrate(0.0, beta, a, |x| (a * x).sin() * k(x / c));
    let sides = match lemma {
        IbpLemma::L23 => IbpSides {
            lhs: integrate(0.0, beta, a, |x| (a * x).sin() * k_dd(x / c)),
            rhs: 2.0 * (p6 - 4.0 * p4) * beta * sb - 4.0 * p4 * a * beta * beta * cb
                - (c * a).powi(2) * int_sin_k(),
        },
        IbpLemma::L24 => IbpSides {
            lhs: integrate(0.0, beta, a, |x| x * (a * x).cos() * k_dd(x / c)),
            rhs: 2.0 * (p6 - 6.0 * p4) * beta * beta * cb + 4.0 * p4 * a * beta.powi(3) * sb
                - 8.0 * PI * PI * a * beta * beta * int_sin_k()
                - (c * a).powi(2) * integrate(0.0, beta, a, |x| x * (a * x).cos() * k(x / c)),
        },
        IbpLemma::L25 => IbpSides {
            lhs: integrate(0.0, beta, 0.0, |x| x * k_dd(x / c)),
            rhs: 2.0 * (p6 - 6.0 * p4) * beta * beta,
        },
        IbpLemma::L26 => {
            let (s1, c1) = a.sin_cos();
            let log_part = integrate(beta, 1.0, a, |x| (a * x).cos() / x);
            IbpSides {
                lhs: integrate(beta, 1.0, a, |x| (a * x).cos() / (x * x * x)),
                rhs: cb / (2.0 * beta * beta) - c1 / 2.0 - a * sb / (2.0 * beta) + a * s1 / 2.0
                    - a * a / 2.0 * log_part,
            }
        }
        IbpLemma::L27 => {
            let (s1, c1) = a.sin_cos();
            let log_part = integrate(beta, 1.0, a, |x| (a * x).cos() / x);
            IbpSides {
                lhs: integrate(beta, 1.0, a, |x| (a * x).sin() / x.powi(4)),
                rhs: sb / (3.0 * beta.powi(3)) - s1 / 3.0 + a * cb / (6.0 * beta * beta) - a * c1 / 6.0
                    - a * a * sb / (6.0 * beta)
                    + a * a * s1 / 6.0
                    - a.powi(3) / 6.0 * log_part,
            }
        }
    };
    Ok(sides)
}

/// |lhs − rhs| for one identity.
pub fn ibp_identity_residual(lemma: IbpLemma, h: f64, big_l: f64, beta: f64) -> Result<f64> {
    ibp_sides(lemma, h, big_l, beta).map(|s| s.residual())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_identity_at_unit_beta() {
        let s = ibp_sides(IbpLemma::L25, 1.0, 10.0, 1.0).unwrap();
        assert!((s.rhs - 753.869).abs() < 1e-3);
        assert!(s.residual() < 1e-8);
    }

    #[test]
    fn zero_shift_makes_the_sine_identity_trivial() {
        let s = ibp_sides(IbpLemma::L23, 0.0, 7.0, 0.6).unwrap();
        assert_eq!(s.lhs, 0.0);
        assert!(s.residual() < 1e-12);
    }

    #[test]
    fn all_identities_hold_on_a_grid() {
        for lemma in IbpLemma::ALL {
            for h in [0.0, 0.5, 1.0, 2.0] {
                for big_l in [5.0, 10.0] {
                    for beta in [0.3, 0.5, 0.9] {
                        let r = ibp_identity_residual(lemma, h, big_l, beta).unwrap();
                        assert!(r < 1e-8, "{lemma:?} h={h} L={big_l} beta={beta}: {r:e}");
                    }
                }
            }
        }
    }

    #[test]
    fn tags_parse() {
        assert_eq!("2.4".parse::<IbpLemma>().unwrap(), IbpLemma::L24);
        assert_eq!("L27".parse::<IbpLemma>().unwrap(), IbpLemma::L27);
        assert!(matches!("2.8".parse::<IbpLemma>(), Err(Error::Usage(_))));
    }
}
