use approx::assert_abs_diff_eq;
use hypbill::growth::{
    growth_series, series_coefficients, smallest_positive_root, tiling_growth_rate, type_matrix,
    RationalSeries,
};
use hypbill::tiling::TilingParams;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn params(p: u32, q: u32) -> TilingParams {
    TilingParams::new(p, q).unwrap()
}

const EVEN_ROWS: [(u32, u32, f64); 15] = [
    (3, 8, 1.72208380573904),
    (4, 6, 2.61803398874989),
    (4, 8, 2.89005363826396),
    (5, 4, 2.61803398874989),
    (5, 6, 3.73205080756888),
    (5, 8, 3.93869094197994),
    (6, 4, 3.73205080756888),
    (6, 6, 4.79128784747792),
    (6, 8, 4.96069291859917),
    (7, 4, 4.79128784747792),
    (7, 6, 5.82842712474619),
    (7, 8, 5.97262435800721),
    (8, 4, 5.82842712474619),
    (8, 6, 6.85410196624968),
    (8, 8, 6.97983577921557),
];

const ODD_ALPHA: [(u32, u32, f64); 14] = [
    (3, 7, 1.55603019132268),
    (3, 9, 1.83107582510231),
    (4, 5, 2.29663026288654),
    (4, 7, 2.82320193241387),
    (4, 9, 2.94699466977899),
    (5, 5, 3.50606805595024),
    (5, 7, 3.89797986736932),
    (5, 9, 3.97594397745373),
    (6, 5, 4.61158178930871),
    (6, 7, 4.93282638839610),
    (6, 9, 4.98704581211217),
    (7, 3, 2.61803398874989),
    (7, 5, 5.67798309021366),
    (7, 7, 5.95225287964244),
];

fn hyperbolic_pairs(max: u32) -> Vec<TilingParams> {
    let mut out = Vec::new();
    for p in 3..=max {
        for q in 3..=max {
            if let Ok(t) = TilingParams::new(p, q) {
                out.push(t);
            }
        }
    }
    out
}

#[test]
fn printed_growth_rates() {
    for (p, q, want) in EVEN_ROWS.iter().chain(ODD_ALPHA.iter()) {
        let r = tiling_growth_rate(params(*p, *q), 1e-13).unwrap();
        assert!(r.precision <= 1e-13);
        assert_abs_diff_eq!(r.alpha, *want, epsilon = 1e-10);
    }
}

#[test]
fn coefficient_ratio_converges() {
    for t in hyperbolic_pairs(12) {
        let a = series_coefficients(&growth_series(t), 41);
        let ratio = BigRational::new(a[41].clone(), a[40].clone()).to_f64().unwrap();
        let alpha = tiling_growth_rate(t, 1e-13).unwrap().alpha;
        assert!((ratio - alpha).abs() < 1e-6, "{t}: ratio {ratio} alpha {alpha}");
    }
}

#[test]
fn characteristic_polynomial_is_the_denominator() {
    for t in hyperbolic_pairs(12) {
        let cp = type_matrix(t).characteristic_polynomial();
        let den: Vec<BigRational> = growth_series(t)
            .denominator
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        assert_eq!(cp, den, "{t}");
    }
}

#[test]
fn spectral_radius_is_alpha() {
    for t in hyperbolic_pairs(10).into_iter().filter(|t| t.p >= 4) {
        let rho = type_matrix(t).spectral_radius(1e-14).unwrap();
        let alpha = tiling_growth_rate(t, 1e-13).unwrap().alpha;
        assert!((rho - alpha).abs() < 1e-9, "{t}: {rho} vs {alpha}");
    }
}

#[test]
fn reciprocal_root() {
    for t in hyperbolic_pairs(10) {
        let alpha = tiling_growth_rate(t, 1e-13).unwrap().alpha;
        let r = smallest_positive_root(&growth_series(t).denominator, 1e-14).unwrap();
        assert!((alpha * r.midpoint() - 1.0).abs() < 1e-11, "{t}");
    }
}

#[test]
fn type_counts_sum_to_layer_sizes() {
    for t in hyperbolic_pairs(9) {
        let layers = type_matrix(t).iterate(10);
        let a = series_coefficients(&growth_series(t), 10);
        for (k, layer) in layers.iter().enumerate() {
            let total: BigRational = layer.iter().cloned().sum();
            assert_eq!(total, BigRational::from_integer(a[k + 1].clone()), "{t} layer {}", k + 1);
        }
    }
}

fn times(s: &RationalSeries, a: &[BigInt]) -> Vec<BigInt> {
    (0..a.len())
        .map(|k| {
            s.denominator
                .iter()
                .enumerate()
                .filter(|(j, _)| *j <= k)
                .map(|(j, d)| d * &a[k - j])
                .fold(BigInt::zero(), |x, y| x + y)
        })
        .collect()
}

proptest! {
    #[test]
    fn series_solves_its_defining_equation(p in 3u32..13, q in 3u32..13, n in 0usize..30) {
        prop_assume!(TilingParams::new(p, q).is_ok());
        let s = growth_series(params(p, q));
        let a = series_coefficients(&s, n);
        let prod = times(&s, &a);
        for (k, c) in prod.iter().enumerate() {
            let want = s.numerator.get(k).cloned().unwrap_or_else(BigInt::zero);
            prop_assert_eq!(c, &want);
        }
        prop_assert_eq!(&a[0], &BigInt::from(1));
        if n >= 1 {
            prop_assert_eq!(&a[1], &BigInt::from(p));
        }
        for w in a.windows(2).skip(1) {
            prop_assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn prefixes_are_stable(p in 3u32..10, q in 3u32..10, n in 0usize..20, extra in 1usize..10) {
        prop_assume!(TilingParams::new(p, q).is_ok());
        let s = growth_series(params(p, q));
        let short = series_coefficients(&s, n);
        let long = series_coefficients(&s, n + extra);
        prop_assert_eq!(&short[..], &long[..=n]);
    }
}
