//! Accuracy of the normalized Bessel evaluation against independent oracles:
//!
//! * the Maclaurin series summed in exact rational arithmetic (every `f64`
//!   input is a dyadic rational, so the truncated sum is exact and only the
//!   final conversion rounds);
//! * closed trigonometric forms at half-integer orders;
//! * reference values computed once with 40-digit working precision and
//!   frozen below.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use spheremean_core::bessel::{
    eval_j, eval_j_asymptotic, eval_j_half_integer, eval_j_series, gamma_nu_plus_one,
    BesselOrder,
};

fn ord(nu: f64) -> BesselOrder {
    BesselOrder::new(nu).unwrap()
}

/// Exact-rational truncated Maclaurin series for `j_nu(x)`; the term count
/// is chosen so the discarded tail is far below the 1e-12 target.
fn oracle_series(nu: f64, x: f64) -> f64 {
    let x_exact = BigRational::from_float(x).unwrap();
    let nu_exact = BigRational::from_float(nu).unwrap();
    let q = &x_exact * &x_exact / BigRational::from_integer(BigInt::from(4));
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let terms = 60 + (3.0 * x.abs()) as usize;
    for k in 0..terms {
        let kf = BigRational::from_integer(BigInt::from(k as i64 + 1));
        let shift = &nu_exact + BigRational::from_integer(BigInt::from(k as i64 + 1));
        term = -(term * &q) / (kf * shift);
        sum += &term;
    }
    assert!(
        (&term / &sum).abs() < BigRational::new(BigInt::one(), BigInt::from(10).pow(25)),
        "oracle truncated too early at nu={nu}, x={x}"
    );
    rational_to_f64(&sum)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let scaled = (r.numer() << 80u32) / r.denom();
    scaled.to_f64().unwrap() / 2f64.powi(80)
}

/// Decaying amplitude of the large-argument oscillation,
/// `Gamma(nu+1) 2^{nu+1/2} / (sqrt(pi) x^{nu+1/2})` — the right yardstick
/// for mixed absolute/relative comparisons near the oscillation's zeros.
fn envelope(nu: f64, x: f64) -> f64 {
    gamma_nu_plus_one(nu) * 2f64.powf(nu + 0.5) / (std::f64::consts::PI.sqrt() * x.powf(nu + 0.5))
}

#[test]
fn series_oracle_is_self_consistent() {
    // sanity of the oracle itself: sin(x)/x and cos(x) at rational x
    for x in [0.5f64, 1.25, 7.5, 12.0] {
        assert!((oracle_series(0.5, x) - x.sin() / x).abs() < 1e-15);
        assert!((oracle_series(-0.5, x) - x.cos()).abs() < 1e-15);
    }
}

#[test]
fn production_path_matches_oracle_in_series_range() {
    let orders = [-0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.5, 0.3, 4.7];
    for &nu in &orders {
        let mut x = 0.25;
        while x <= 15.0 {
            let got = eval_j(ord(nu), x);
            let want = oracle_series(nu, x);
            assert!(
                (got - want).abs() <= 1e-13 * (want.abs() + 1e-3),
                "nu={nu} x={x}: {got} vs oracle {want}"
            );
            x += 0.25;
        }
    }
}

#[test]
fn production_path_matches_oracle_beyond_series_range() {
    // the exact-rational oracle stays cheap up to moderate arguments
    let orders = [-0.5, 0.0, 0.5, 1.0, 2.0, 0.3];
    for &nu in &orders {
        for x in [16.0, 21.5, 30.0, 42.25, 60.0] {
            let got = eval_j(ord(nu), x);
            let want = oracle_series(nu, x);
            assert!(
                (got - want).abs() <= 1e-12 * (want.abs() + 1e-2 * envelope(nu, x)),
                "nu={nu} x={x}: {got} vs oracle {want}"
            );
        }
    }
}

/// Reference values frozen from a 40-digit evaluation of
/// `Gamma(nu+1) (2/x)^nu J_nu(x)`.
const REFERENCE: &[(f64, f64, f64)] = &[
    (0.0, 100.0, 0.019985850304223122),
    (0.0, 250.0, -0.026053373425204234),
    (0.0, 500.0, -0.034100556880731998),
    (0.0, 1000.0, 0.024786686152420175),
    (1.0, 100.0, -0.0015429070402822432),
    (1.0, 250.0, -0.000346152307282646),
    (1.0, 500.0, 4.1890453881489171e-5),
    (1.0, 1000.0, 9.4566238141790478e-6),
    (2.0, 100.0, -1.7223005875604292e-5),
    (2.0, 250.0, 3.2905243030939632e-6),
    (2.0, 500.0, 1.0925583147076316e-6),
    (2.0, 1000.0, -1.9821783622884796e-7),
    (3.0, 100.0, 3.6616416825759333e-6),
    (3.0, 250.0, 1.3418604732892414e-7),
    (3.0, 500.0, -3.9165979744110278e-9),
    (3.0, 1000.0, -2.317161996097895e-10),
    (0.3, 100.0, -0.0047808464135226564),
    (0.3, 250.0, -0.0090299419842468396),
    (0.3, 500.0, -0.0043868366890178496),
    (0.3, 1000.0, 0.0033699087307586946),
    (4.7, 100.0, -4.0217383978045362e-8),
    (4.7, 250.0, -5.1035811811565025e-10),
    (4.7, 500.0, -2.683584707425412e-12),
    (4.7, 1000.0, 2.3470991361335349e-13),
    (0.0, 1.0, 0.76519768655796655),
    (0.0, 5.0, -0.1775967713143383),
    (0.0, 13.7, 0.20322083263300711),
    (1.0, 9.25, 0.045220897398945106),
    (2.0, 14.5, -0.0023159074243853837),
    (0.3, 7.77, 0.16674749876690935),
    (4.7, 11.3, -0.0029910209891009852),
    (-0.5, 6.5, 0.9765876257280235),
    (1.5, 12.25, -0.019507238892464403),
    (2.5, 3.8, 0.30321169108032414),
    (0.0, 16.5, -0.19638069293686103),
    (0.0, 22.0, -0.12065147570486718),
    (1.0, 18.5, -0.018014447568650382),
    (2.0, 25.0, -0.0013605734815024807),
    (3.0, 28.0, -0.00025969751191805728),
    (0.3, 17.25, -0.086782495596754431),
    (-0.5, 20.0, 0.40808206181339199),
    (0.5, 24.0, -0.037732431750275994),
    (1.5, 29.5, 0.0010563166028039684),
    (2.5, 16.0, 0.0016995505452888105),
];

#[test]
fn production_path_matches_frozen_references() {
    for &(nu, x, want) in REFERENCE {
        let got = eval_j(ord(nu), x);
        assert!(
            ((got - want) / want).abs() <= 1e-12,
            "nu={nu} x={x}: {got} vs reference {want} (rel {:.3e})",
            ((got - want) / want).abs()
        );
    }
}

#[test]
fn half_integer_closed_forms_hold_at_large_arguments() {
    // j_{1/2} = sin x / x and j_{3/2} = 3 (sin x - x cos x) / x^3, where the
    // trig forms are well conditioned
    for x in [20.0f64, 77.0, 345.0, 999.0] {
        let sinc = eval_j(ord(0.5), x);
        assert!((sinc - x.sin() / x).abs() <= 1e-15);
        let j32 = eval_j(ord(1.5), x);
        let closed = 3.0 * (x.sin() - x * x.cos()) / (x * x * x);
        assert!((j32 - closed).abs() <= 1e-13 * envelope(1.5, x).max(closed.abs()));
        let j52 = eval_j(ord(2.5), x);
        let closed_52 =
            15.0 * ((3.0 - x * x) * x.sin() - 3.0 * x * x.cos()) / (x * x * x * x * x);
        assert!((j52 - closed_52).abs() <= 1e-12 * envelope(2.5, x).max(closed_52.abs()));
    }
}

#[test]
fn all_routes_agree_where_jointly_valid() {
    // series vs asymptotic vs closed form on the overlap band
    for m in 0..5i64 {
        let nu = m as f64 - 0.5;
        let mut x = 12.0;
        while x <= 18.0 {
            let series = eval_j_series(ord(nu), x);
            let asym = eval_j_asymptotic(ord(nu), x);
            let closed = eval_j_half_integer(ord(nu), x).unwrap();
            assert!((series - asym).abs() <= 1e-11 * (1.0 + series.abs()));
            assert!((series - closed).abs() <= 1e-12 * (1.0 + series.abs()));
            x += 0.5;
        }
    }
}

#[test]
fn near_zero_arguments_avoid_cancellation() {
    // j_{3/2} near 0 is 1 - x^2/10 + ...; the closed trig form cancels badly
    // there, the production path must not.
    for x in [1e-8, 1e-4, 0.01, 0.3] {
        let got = eval_j(ord(1.5), x);
        let want = oracle_series(1.5, x);
        assert!(((got - want) / want).abs() < 1e-14, "x={x}");
    }
}
