use altimpact_core::stats::{self, special, StatsError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use statrs::distribution::{ContinuousCDF, StudentsT};

/// r computed from exact integer sums; only the final square root is
/// rounded.
fn exact_pearson(x: &[i64], y: &[i64]) -> f64 {
    let n = BigInt::from(x.len());
    let sum = |v: &[i64]| v.iter().map(|&a| BigInt::from(a)).sum::<BigInt>();
    let dot = |a: &[i64], b: &[i64]| {
        a.iter()
            .zip(b)
            .map(|(&p, &q)| BigInt::from(p) * BigInt::from(q))
            .sum::<BigInt>()
    };
    let (sx, sy) = (sum(x), sum(y));
    let num = &n * dot(x, y) - &sx * &sy;
    let dx = &n * dot(x, x) - &sx * &sx;
    let dy = &n * dot(y, y) - &sy * &sy;
    let r2 = BigRational::new(&num * &num, dx * dy);
    let sign = if num < BigInt::from(0) { -1.0 } else { 1.0 };
    sign * r2.to_f64().unwrap().sqrt()
}

/// Hypergeometric series for the regularized incomplete beta, valid for
/// x < 1; reflected for x above 1/2 so it always converges quickly.
fn series_beta(x: f64, a: f64, b: f64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    if x > 0.5 {
        return 1.0 - series_beta(1.0 - x, b, a);
    }
    let ln_front =
        a * x.ln() + b * (1.0 - x).ln() - a.ln() - (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
    let mut term = 1.0;
    let mut total = 1.0;
    for n in 0..20_000 {
        let n = n as f64;
        term *= (a + b + n) / (a + 1.0 + n) * x;
        total += term;
        if term < 1e-18 * total {
            break;
        }
    }
    ln_front.exp() * total
}

#[test]
fn pearson_definition_example() {
    let r = stats::pearson(&[1.0, 2.0, 3.0, 4.0], &[2.0, 4.0, 6.0, 9.0]).unwrap();
    assert!((r.r - exact_pearson(&[1, 2, 3, 4], &[2, 4, 6, 9])).abs() < 1e-15);
}

#[test]
fn student_t_against_statrs() {
    for df in [1.0, 2.0, 3.0, 7.0, 10.0, 23.0, 37.0, 66.0, 210.0] {
        let dist = StudentsT::new(0.0, 1.0, df).unwrap();
        for t in [0.0, 0.1, 0.5, 1.0, 1.96, 2.5, 4.0, 8.0] {
            let expected = 2.0 * (1.0 - dist.cdf(t));
            let got = special::student_t_two_sided(t, df);
            assert!(
                (got - expected).abs() < 1e-9,
                "df={df} t={t}: {got} vs {expected}"
            );
            assert_eq!(got, special::student_t_two_sided(-t, df));
        }
    }
}

#[test]
fn incomplete_beta_against_statrs() {
    for (x, a, b) in [
        (0.2, 0.5, 0.5),
        (0.7, 5.0, 0.5),
        (0.99, 105.0, 0.5),
        (0.01, 1.0, 3.0),
    ] {
        let expected = statrs::function::beta::beta_reg(a, b, x);
        assert!((special::regularized_incomplete_beta(x, a, b) - expected).abs() < 1e-12);
    }
}

fn small_vec(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-60i64..60, len)
}

fn pair(max_len: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (3..=max_len).prop_flat_map(|n| (small_vec(n), small_vec(n)))
}

fn to_f64(v: &[i64]) -> Vec<f64> {
    v.iter().map(|&a| a as f64).collect()
}

fn floats(min_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e4f64..1e4, min_len..60)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn pearson_matches_exact_oracle((x, y) in pair(20)) {
        let (xf, yf) = (to_f64(&x), to_f64(&y));
        match stats::pearson(&xf, &yf) {
            Ok(res) => {
                prop_assert!((res.r - exact_pearson(&x, &y)).abs() < 1e-12);
                prop_assert!(res.r.abs() <= 1.0);
                prop_assert!((0.0..=1.0).contains(&res.p_value));
                let sym = stats::pearson(&yf, &xf).unwrap();
                prop_assert!((sym.r - res.r).abs() < 1e-15);
            }
            Err(e) => {
                prop_assert_eq!(e, StatsError::ConstantVector);
                prop_assert!(x.windows(2).all(|w| w[0] == w[1]) || y.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }

    #[test]
    fn pearson_affine_invariance((x, y) in pair(30), a in 0.01f64..100.0, b in -1e3f64..1e3) {
        let (xf, yf) = (to_f64(&x), to_f64(&y));
        if let Ok(base) = stats::pearson(&xf, &yf) {
            let moved: Vec<f64> = xf.iter().map(|v| a * v + b).collect();
            let r = stats::pearson(&moved, &yf).unwrap();
            prop_assert!((r.r - base.r).abs() < 1e-9);
        }
    }

    #[test]
    fn t_tail_matches_series(t in 0.0f64..30.0, df in 1u32..400) {
        let df = f64::from(df);
        let x = df / (df + t * t);
        let got = special::student_t_two_sided(t, df);
        prop_assert!((got - series_beta(x, df / 2.0, 0.5)).abs() < 1e-10);
    }

    #[test]
    fn zscores_are_standardised(raw in floats(2)) {
        if let Ok(z) = stats::zscores(&raw) {
            let m = stats::mean(&z.scores).unwrap();
            let s = stats::population_stddev(&z.scores).unwrap();
            prop_assert!(m.abs() < 1e-9);
            prop_assert!((s - 1.0).abs() < 1e-9);
            prop_assert_eq!(z.scores.len(), raw.len());
        }
    }

    #[test]
    fn zscores_affine_invariant(raw in prop::collection::vec(0u32..5000, 2..80), a in 0.001f64..1000.0, b in -1e4f64..1e4) {
        let raw: Vec<f64> = raw.into_iter().map(f64::from).collect();
        if let Ok(z) = stats::zscores(&raw) {
            let moved: Vec<f64> = raw.iter().map(|v| a * v + b).collect();
            let zm = stats::zscores(&moved).unwrap();
            for (p, q) in z.scores.iter().zip(&zm.scores) {
                prop_assert!((p - q).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn kde_integrates_to_one(raw in prop::collection::vec(-100.0f64..100.0, 2..40)) {
        if let Ok(h) = stats::silverman_bandwidth(&raw) {
            let grid = stats::kde_grid(&raw, h, 4001, 6.0).unwrap();
            let c = stats::kde(&raw, &grid, Some(h)).unwrap();
            prop_assert!((c.trapezoid_integral() - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn kde_permutation_and_shift(raw in prop::collection::vec(-50.0f64..50.0, 1..30), delta in -20.0f64..20.0, h in 0.1f64..5.0) {
        let points: Vec<f64> = (0..25).map(|k| -60.0 + 5.0 * k as f64).collect();
        let base = stats::kde(&raw, &points, Some(h)).unwrap();
        let mut rev = raw.clone();
        rev.reverse();
        let permuted = stats::kde(&rev, &points, Some(h)).unwrap();
        let shifted_raw: Vec<f64> = raw.iter().map(|v| v + delta).collect();
        let shifted_pts: Vec<f64> = points.iter().map(|v| v + delta).collect();
        let shifted = stats::kde(&shifted_raw, &shifted_pts, Some(h)).unwrap();
        for k in 0..points.len() {
            prop_assert!((base.densities[k] - permuted.densities[k]).abs() < 1e-12);
            prop_assert!((base.densities[k] - shifted.densities[k]).abs() < 1e-9);
        }
    }

    #[test]
    fn silverman_is_homogeneous(raw in prop::collection::vec(0u32..1000, 2..50), c in 0.01f64..100.0) {
        let raw: Vec<f64> = raw.into_iter().map(f64::from).collect();
        if let Ok(h) = stats::silverman_bandwidth(&raw) {
            let scaled: Vec<f64> = raw.iter().map(|v| v * c).collect();
            let hs = stats::silverman_bandwidth(&scaled).unwrap();
            prop_assert!((hs / h - c).abs() < 1e-9 * c);
        }
    }

    #[test]
    fn quantile_monotone_and_bounded(raw in floats(1), q1 in 0.001f64..0.999, q2 in 0.001f64..0.999) {
        let (lo, hi) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
        let a = stats::quantile_lower_bound(&raw, lo).unwrap();
        let b = stats::quantile_lower_bound(&raw, hi).unwrap();
        let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
        let max = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(a <= b);
        prop_assert!(min <= a && b <= max);
    }

    #[test]
    fn minmax_preserves_order(raw in floats(2)) {
        if let Ok(out) = stats::minmax_normalize(&raw) {
            for i in 0..raw.len() {
                prop_assert!((0.0..=1.0).contains(&out[i]));
                for j in 0..raw.len() {
                    if raw[i] < raw[j] {
                        prop_assert!(out[i] < out[j]);
                    }
                }
            }
        }
    }
}
