//! Growth series of tiles by tiling distance and their growth rates.
//!
//! The series `f(x) = sum N_td(n) x^n` is rational with palindromic numerator
//! and denominator. For even `q` with `h = q/2`:
//!
//! ```text
//! f(x) = (1 + 2x + ... + 2x^(h-1) + x^h) / (1 - (p-2)x - ... - (p-2)x^(h-1) + x^h)
//! ```
//!
//! For odd `q` with `h = (q-1)/2` the numerator carries a 4 and the
//! denominator a `-(p-4)` at `x^h`, both of degree `q - 1`.

mod roots;
mod types;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use roots::{largest_real_root, smallest_positive_root, RootBracket};
pub use types::{simulate_type_counts, type_matrix, TypeMatrix};

use crate::error::{Error, Result};
use crate::tiling::TilingParams;

/// A power series given as numerator over denominator, ascending powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
}

impl RationalSeries {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> Result<Self> {
        if denominator.first() != Some(&BigInt::one()) {
            return Err(Error::Parameter(
                "denominator must have constant term 1".into(),
            ));
        }
        Ok(RationalSeries {
            numerator,
            denominator,
        })
    }

    /// The denominator with its coefficient order reversed.
    pub fn reversed_denominator(&self) -> Vec<BigInt> {
        let mut d = self.denominator.clone();
        d.reverse();
        d
    }
}

/// Exact growth series of the `(p, q)`-tiling.
pub fn growth_series(params: TilingParams) -> RationalSeries {
    let p = BigInt::from(params.p);
    let two = BigInt::from(2);
    let four = BigInt::from(4);
    let q = params.q as usize;
    let pm2 = -(&p - &two);
    let (num, den) = if q % 2 == 0 {
        let h = q / 2;
        let mut num = vec![BigInt::one()];
        let mut den = vec![BigInt::one()];
        for _ in 1..h {
            num.push(two.clone());
            den.push(pm2.clone());
        }
        num.push(BigInt::one());
        den.push(BigInt::one());
        (num, den)
    } else {
        let h = (q - 1) / 2;
        let mut num = vec![BigInt::zero(); q];
        let mut den = vec![BigInt::zero(); q];
        num[0] = BigInt::one();
        den[0] = BigInt::one();
        num[q - 1] = BigInt::one();
        den[q - 1] = BigInt::one();
        for i in 1..q - 1 {
            if i == h {
                num[i] = four.clone();
                den[i] = -(&p - &four);
            } else {
                num[i] = two.clone();
                den[i] = pm2.clone();
            }
        }
        (num, den)
    };
    RationalSeries {
        numerator: num,
        denominator: den,
    }
}

/// Coefficients `a_0..=a_n` of the power series, from the recurrence
/// `a_k = num_k - sum_{j>=1} den_j a_{k-j}`.
pub fn series_coefficients(s: &RationalSeries, n: usize) -> Vec<BigInt> {
    let mut a: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut v = s.numerator.get(k).cloned().unwrap_or_else(BigInt::zero);
        for (j, d) in s.denominator.iter().enumerate().skip(1) {
            if j > k {
                break;
            }
            if !d.is_zero() {
                v -= d * &a[k - j];
            }
        }
        a.push(v);
    }
    a
}

/// Exponential growth rate with its bracket half-width.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRate {
    pub alpha: f64,
    pub precision: f64,
}

/// Growth rate of tiles: the largest real root of the reversed denominator.
pub fn tiling_growth_rate(params: TilingParams, tol: f64) -> Result<GrowthRate> {
    let s = growth_series(params);
    let b = largest_real_root(&s.reversed_denominator(), tol)?;
    Ok(GrowthRate {
        alpha: b.midpoint(),
        precision: b.half_width(),
    })
}

/// Which polygon the closed surface is glued from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceKind {
    /// A `4n`-gon with opposite sides glued; its tiling is `(4n, 4n)`.
    Gon4n,
    /// A `(4n+2)`-gon with opposite sides glued; its tiling is `(4n+2, 2n+1)`.
    Gon4nPlus2,
}

/// Parameters of the tiling generated by a glued regular polygon.
pub fn surface_params(n: u32, kind: SurfaceKind) -> Result<TilingParams> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    match kind {
        SurfaceKind::Gon4n => TilingParams::new(4 * n, 4 * n),
        SurfaceKind::Gon4nPlus2 => TilingParams::new(4 * n + 2, 2 * n + 1),
    }
}

/// Growth series of the universal cover tiling of a glued polygon surface.
pub fn surface_growth_series(n: u32, kind: SurfaceKind) -> Result<RationalSeries> {
    surface_params(n, kind).map(growth_series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, q: u32) -> TilingParams {
        TilingParams::new(p, q).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn four_six_series() {
        let s = growth_series(params(4, 6));
        assert_eq!(s.numerator, ints(&[1, 2, 2, 1]));
        assert_eq!(s.denominator, ints(&[1, -2, -2, 1]));
        assert_eq!(series_coefficients(&s, 3), ints(&[1, 4, 12, 32]));
    }

    #[test]
    fn odd_middle_coefficients() {
        let s = growth_series(params(6, 5));
        assert_eq!(s.numerator, ints(&[1, 2, 4, 2, 1]));
        assert_eq!(s.denominator, ints(&[1, -4, -2, -4, 1]));
        let t = growth_series(params(7, 3));
        assert_eq!(t.numerator, ints(&[1, 4, 1]));
        assert_eq!(t.denominator, ints(&[1, -3, 1]));
    }

    #[test]
    fn first_two_terms() {
        for (p, q) in [(3, 7), (7, 3), (4, 5), (9, 10), (10, 3)] {
            let a = series_coefficients(&growth_series(params(p, q)), 1);
            assert_eq!(a, ints(&[1, p as i64]));
        }
    }

    #[test]
    fn surfaces() {
        assert_eq!(
            surface_growth_series(2, SurfaceKind::Gon4n).unwrap(),
            growth_series(params(8, 8))
        );
        assert!(surface_growth_series(1, SurfaceKind::Gon4n).is_err());
        assert!(surface_growth_series(1, SurfaceKind::Gon4nPlus2).is_err());
        assert_eq!(
            surface_growth_series(2, SurfaceKind::Gon4nPlus2).unwrap(),
            growth_series(params(10, 5))
        );
    }

    #[test]
    fn denominators_are_palindromic() {
        for p in 3..=10 {
            for q in 3..=10 {
                if let Ok(t) = TilingParams::new(p, q) {
                    let s = growth_series(t);
                    assert_eq!(s.denominator, s.reversed_denominator());
                    let mut n = s.numerator.clone();
                    n.reverse();
                    assert_eq!(n, s.numerator);
                }
            }
        }
    }
}
