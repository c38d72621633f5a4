//! Real-root isolation for integer polynomials with Sturm sequences over
//! exact rationals, refined by bisection on dyadic points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial with rational coefficients in ascending powers.
type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn is_zero(p: &Poly) -> bool {
    p.iter().all(Zero::is_zero)
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !is_zero(&r) {
        let dr = r.len() - 1;
        let factor = &r[dr] / &lead;
        for i in 0..=db {
            let t = &factor * &b[i];
            r[dr - db + i] -= t;
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Sturm chain of a polynomial.
pub(crate) struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    pub(crate) fn new(coeffs: &[BigInt]) -> Result<Self> {
        let p0 = trim(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        );
        if p0.len() < 2 {
            return Err(Error::Parameter("polynomial has no roots".into()));
        }
        let mut chain = vec![p0.clone(), derivative(&p0)];
        loop {
            let n = chain.len();
            let r = rem(&chain[n - 2], &chain[n - 1]);
            if is_zero(&r) {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        Ok(Sturm { chain })
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = eval(p, x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub(crate) fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    fn cauchy_bound(&self) -> BigRational {
        let p = &self.chain[0];
        let lead = p.last().unwrap().abs();
        let m = p
            .iter()
            .take(p.len() - 1)
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        m + BigRational::one()
    }
}

/// An isolating interval `(lo, hi]` of a real root.
#[derive(Clone, Debug)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootBracket {
    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn half_width(&self) -> f64 {
        ((&self.hi - &self.lo) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::INFINITY)
    }
}

#[derive(Clone, Copy)]
enum Pick {
    Largest,
    Smallest,
}

fn dyadic_tol(tol: f64) -> Result<BigRational> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    let mut t = BigRational::one();
    let mut k = 0;
    while t.to_f64().unwrap_or(0.0) > tol {
        t /= BigRational::from_integer(2.into());
        k += 1;
        if k > 400 {
            return Err(Error::Numeric("tolerance below representable range".into()));
        }
    }
    Ok(t)
}

fn bisect(s: &Sturm, lo: BigRational, hi: BigRational, tol: f64, pick: Pick) -> Result<RootBracket> {
    let tol = dyadic_tol(tol)?;
    let two = BigRational::from_integer(2.into());
    let (mut lo, mut hi) = (lo, hi);
    if s.count(&lo, &hi) == 0 {
        return Err(Error::Numeric("no real root in the search interval".into()));
    }
    let mut iterations = 0;
    while &hi - &lo > tol {
        iterations += 1;
        if iterations > 2000 {
            return Err(Error::Numeric("root bisection exceeded its iteration budget".into()));
        }
        let mid = (&lo + &hi) / &two;
        match pick {
            Pick::Largest => {
                if s.count(&mid, &hi) > 0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Pick::Smallest => {
                if s.count(&lo, &mid) > 0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
        }
    }
    Ok(RootBracket { lo, hi })
}

/// Brackets the largest real root of an integer polynomial to width `tol`.
pub fn largest_real_root(coeffs: &[BigInt], tol: f64) -> Result<RootBracket> {
    let s = Sturm::new(coeffs)?;
    let b = s.cauchy_bound();
    bisect(&s, -b.clone(), b, tol, Pick::Largest)
}

/// Brackets the smallest positive real root of an integer polynomial.
pub fn smallest_positive_root(coeffs: &[BigInt], tol: f64) -> Result<RootBracket> {
    let s = Sturm::new(coeffs)?;
    let b = s.cauchy_bound();
    bisect(&s, BigRational::zero(), b, tol, Pick::Smallest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn golden_ratio_square() {
        // x^2 - 3x + 1 has roots (3 ± sqrt 5)/2.
        let r = largest_real_root(&ints(&[1, -3, 1]), 1e-13).unwrap();
        assert!((r.midpoint() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        let s = smallest_positive_root(&ints(&[1, -3, 1]), 1e-13).unwrap();
        assert!((s.midpoint() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn repeated_roots_are_counted_once() {
        // (x - 2)^2 (x + 1) = x^3 - 3x^2 + 4
        let s = Sturm::new(&ints(&[4, 0, -3, 1])).unwrap();
        let a = BigRational::from_integer((-10).into());
        let b = BigRational::from_integer(10.into());
        assert_eq!(s.count(&a, &b), 2);
        let r = largest_real_root(&ints(&[4, 0, -3, 1]), 1e-12).unwrap();
        assert!((r.midpoint() - 2.0).abs() < 1e-11);
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(largest_real_root(&ints(&[1, -3, 1]), 0.0).is_err());
    }
}
