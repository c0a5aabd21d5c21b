// Randomized invariants over a generated zero table and the prime tables.

use std::f64::consts::PI;
use std::sync::OnceLock;

use proptest::prelude::*;
use zeta_shift::kernels::{k, k_dd, kernel_eval, KernelKind, K_EDGE};
use zeta_shift::moments::{theorem1_rhs, MomentOptions};
use zeta_shift::paircorr::{f_scaled, PairSumConfig};
use zeta_shift::primes::{build_lambda, prime_power_cos_sum, singular_series, LambdaTable};
use zeta_shift::sum::with_workers;
use zeta_shift::zerodata::{load_zeros, second_moment_diff, second_moment_diff_with, s_of_t, theta, zero_count, ZeroSet};

fn zeros() -> &'static ZeroSet {
    static Z: OnceLock<ZeroSet> = OnceLock::new();
    Z.get_or_init(|| load_zeros(zerogen::cached_table(2000).unwrap(), None).unwrap())
}

fn small() -> ZeroSet {
    zeros().first(300).unwrap()
}

fn lambda() -> &'static LambdaTable {
    static T: OnceLock<LambdaTable> = OnceLock::new();
    T.get_or_init(|| build_lambda(1_000_000).unwrap())
}

fn cheap() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn counting_round_trip(t in 10.0f64..2500.0) {
        let zs = zeros();
        let n = zero_count(zs, t).unwrap() as f64;
        let back = theta(t).unwrap() / PI + 1.0 + s_of_t(zs, t).unwrap();
        prop_assert!((n - back).abs() < 1e-9 * n.max(1.0), "{n} vs {back}");
    }

    #[test]
    fn moment_grows_with_height(h in 0.01f64..2.0, a in 50.0f64..1500.0, b in 50.0f64..1500.0) {
        let zs = zeros();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let m_lo = second_moment_diff(zs, h, lo, 10.0).unwrap().value;
        let m_hi = second_moment_diff(zs, h, hi, 10.0).unwrap().value;
        prop_assert!(m_lo <= m_hi + 1e-12 * m_hi);
    }

    #[test]
    fn singular_series_gains_an_odd_prime(half in 1i64..2000, qi in 0usize..8) {
        let q = [3i64, 5, 7, 11, 13, 17, 19, 23][qi];
        let d = 2 * half;
        prop_assume!(d % q != 0);
        let ratio = singular_series(q * d).unwrap() / singular_series(d).unwrap();
        let want = (q - 1) as f64 / (q - 2) as f64;
        prop_assert!((ratio - want).abs() < 1e-12 * want);
    }

    #[test]
    fn prime_power_sum_is_continuous(h in 0.0f64..5.0) {
        let a = prime_power_cos_sum(h, None).unwrap().value;
        let b = prime_power_cos_sum(h + 1e-6, None).unwrap().value;
        prop_assert!((a - b).abs() < 1e-4);
    }

    #[test]
    fn kernels_are_even(u in 0.0f64..1.0) {
        for kind in [KernelKind::W, KernelKind::FCot, KernelKind::K, KernelKind::KDd] {
            prop_assert_eq!(kernel_eval(kind, u).unwrap(), kernel_eval(kind, -u).unwrap());
        }
    }

    #[test]
    fn second_derivative_matches_differences(u in 0.02f64..2.0) {
        let step = 1e-4;
        prop_assume!((u - K_EDGE).abs() > 2.0 * step);
        let fd = (k(u + step) - 2.0 * k(u) + k(u - step)) / (step * step);
        let exact = k_dd(u);
        prop_assert!((fd - exact).abs() < 1e-6 * exact.abs().max(1.0), "{u}: {fd} vs {exact}");
    }

    #[test]
    fn shift_never_raises_f(alpha in 0.0f64..6.0, h in 0.01f64..3.0) {
        let zs = small();
        let cfg = PairSumConfig::exact();
        let f = f_scaled(&zs, alpha, 0.0, &cfg).unwrap().value;
        let fh = f_scaled(&zs, alpha, h, &cfg).unwrap().value;
        prop_assert!(f - fh >= -1e-9, "F = {f}, F_h = {fh}");
    }

    #[test]
    fn windowed_within_its_bound(alpha in 0.0f64..3.0, h in 0.0f64..2.0, window in 5.0f64..60.0) {
        let zs = small();
        let exact = f_scaled(&zs, alpha, h, &PairSumConfig::exact()).unwrap().value;
        let win = f_scaled(&zs, alpha, h, &PairSumConfig::windowed(window)).unwrap();
        prop_assert!((exact - win.value).abs() <= win.truncation_bound + 1e-12);
    }

    #[test]
    fn f_even_in_alpha(alpha in 0.0f64..4.0, h in 0.0f64..2.0) {
        let zs = small();
        let cfg = PairSumConfig::exact();
        prop_assert_eq!(f_scaled(&zs, alpha, h, &cfg).unwrap().value, f_scaled(&zs, -alpha, h, &cfg).unwrap().value);
    }

    #[test]
    fn worker_count_is_invisible(alpha in 0.0f64..3.0, h in 0.0f64..2.0, workers in 2usize..6) {
        let zs = zeros().first(1200).unwrap();
        let cfg = PairSumConfig::exact();
        let one = with_workers(1, || f_scaled(&zs, alpha, h, &cfg).unwrap().value);
        let many = with_workers(workers, || f_scaled(&zs, alpha, h, &cfg).unwrap().value);
        prop_assert!((one - many).abs() <= 1e-12 * one.abs().max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn rhs_is_the_sum_of_its_terms(h in 0.1f64..2.0) {
        let opts = MomentOptions { pair: PairSumConfig::windowed(30.0), ..Default::default() };
        let r = theorem1_rhs(zeros(), h, lambda(), &opts).unwrap();
        let total = r.terms.iter().fold(0.0, |acc, t| acc + t.value);
        prop_assert_eq!(total.to_bits(), r.rhs_total.to_bits());
    }

    #[test]
    fn rhs_has_no_jumps(h in 0.1f64..2.0) {
        let opts = MomentOptions { pair: PairSumConfig::windowed(30.0), t: Some(2400.0), ..Default::default() };
        let a = theorem1_rhs(zeros(), h, lambda(), &opts).unwrap();
        let b = theorem1_rhs(zeros(), h + 1e-4, lambda(), &opts).unwrap();
        let allowed = 1e-2 * a.t / (PI * PI) * (h * a.big_l).max(1.0);
        prop_assert!((a.rhs_total - b.rhs_total).abs() <= allowed, "{} vs {}", a.rhs_total, b.rhs_total);
    }
}

#[test]
fn doubling_gauss_order_is_invisible() {
    let zs = zeros();
    for h in [0.3, 1.0, 2.5] {
        let a = second_moment_diff_with(zs, h, 2400.0, 10.0, 8).unwrap().value;
        let b = second_moment_diff_with(zs, h, 2400.0, 10.0, 16).unwrap().value;
        assert!((a - b).abs() < 1e-8 * b, "h = {h}: {a} vs {b}");
    }
}

#[test]
fn pnt_sanity() {
    let t = lambda();
    let n = 1_000_000u64;
    let psi: f64 = (1..=n).map(|m| t.lambda(m)).sum();
    assert!((psi / n as f64 - 1.0).abs() < 0.02);
    assert!((1..=n).all(|m| t.lambda(m) >= 0.0));
}
