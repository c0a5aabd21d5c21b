//! Values frozen from an independent 30-digit evaluation (mpmath `siegelz`,
//! `siegeltheta`, `zetazero`).

use zerogen::{first_zeros, hardy_z, theta, z_euler_maclaurin, z_riemann_siegel};

const Z_REF: [(f64, f64); 8] = [
    (14.5, 0.297_350_945_067_239_4),
    (100.1, 2.692_983_112_654_681),
    (1000.3, 2.194_978_321_699_358),
    (2500.25, 1.102_499_929_818_834),
    (5000.7, 0.415_686_496_681_005_1),
    (12345.678, -0.878_561_599_346_814_8),
    (74920.0, -5.562_358_571_550_408),
    (74900.123, 1.266_745_809_420_981),
];

#[test]
fn hardy_z_matches_reference() {
    for (t, z) in Z_REF {
        let got = hardy_z(t);
        assert!((got - z).abs() < 1e-9, "Z({t}) = {got}, want {z}");
    }
}

#[test]
fn both_evaluators_agree_near_the_switch() {
    for t in [1500.5, 1999.0, 2400.3] {
        let em = z_euler_maclaurin(t);
        let rs = z_riemann_siegel(t);
        assert!((em - rs).abs() < 1e-9, "t={t}: {em} vs {rs}");
    }
}

#[test]
fn theta_matches_reference() {
    for (t, th) in [(20.0, 1.186_894_808_444_484), (1000.3, 2035.306_932_261_419_6)] {
        assert!((theta(t) - th).abs() < 1e-10);
    }
}

#[test]
fn first_thousand_zeros() {
    let zs = first_zeros(1000).unwrap();
    assert_eq!(zs.len(), 1000);
    assert!(zs.windows(2).all(|w| w[0] < w[1]));
    for (n, want) in [
        (1, 14.134_725_141_734_694),
        (2, 21.022_039_638_771_555),
        (3, 25.010_857_580_145_689),
        (10, 49.773_832_477_672_302),
        (100, 236.524_229_665_816_2),
        (1000, 1419.422_480_945_995_7),
    ] {
        assert!((zs[n - 1] - want).abs() < 1e-9, "zero {n}: {}", zs[n - 1]);
    }
}

#[test]
fn cached_hundred_thousand_table() {
    let path = zerogen::cached_table(100_000).unwrap();
    let text = std::fs::read_to_string(path).unwrap();
    let zs: Vec<f64> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.parse().unwrap())
        .collect();
    assert_eq!(zs.len(), 100_000);
    assert!(zs.windows(2).all(|w| w[0] < w[1]));
    for (n, want) in [
        (10_000, 9877.782_654_005_501),
        (50_000, 40433.687_385_462_16),
        (99_999, 74920.259_793_258_89),
        (100_000, 74920.827_498_994_19),
    ] {
        assert!((zs[n - 1] - want).abs() < 1e-8, "zero {n}: {}", zs[n - 1]);
    }
}
