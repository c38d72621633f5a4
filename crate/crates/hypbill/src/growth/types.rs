//! The vertex-type transfer matrix behind the growth series.
//!
//! Tiles are counted as vertices of the dual construction. A dual vertex at
//! distance `n` has type `i` when `i` is the largest drop `n - m` to the
//! minimum distance `m` of a face containing it (for odd `q`, faces are first
//! paired across their shared equal-distance edge). Row `i` of the matrix
//! lists how many vertices of each type a type-`i` vertex spawns in the next
//! layer, with shared vertices counted as halves.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::tiling::{Centering, TilingGraph, TilingParams};

/// Square transfer matrix between vertex types, indexed `1..=size` in the
/// mathematical notation and `0..size` here.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeMatrix {
    pub params: TilingParams,
    pub entries: Vec<Vec<Rational64>>,
}

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Builds the type matrix for `(p, q)`.
///
/// For `p = 3` some entries equal `p - 4 = -1`; the matrix still generates
/// the correct totals but its rows no longer describe actual type counts.
pub fn type_matrix(params: TilingParams) -> TypeMatrix {
    let p = params.p as i64;
    let q = params.q as usize;
    let half = Rational64::new(1, 2);
    let entries = if q == 4 {
        vec![vec![r(p - 3), r(1)], vec![r(p - 4), r(1)]]
    } else if q == 3 {
        vec![vec![r(p - 5), r(1)], vec![r(p - 6), r(1)]]
    } else if q % 2 == 0 {
        let h = q / 2;
        let mut m = vec![vec![r(0); h]; h];
        m[0][0] = r(p - 3);
        m[0][1] += r(2);
        for i in 2..h {
            m[i - 1][0] = r(p - 3);
            m[i - 1][1] += r(1);
            m[i - 1][i] += if i == h - 1 { half } else { r(1) };
        }
        m[h - 1][0] = r(p - 4);
        m[h - 1][1] += r(2);
        m
    } else {
        let n = q - 1;
        let mid = (q - 1) / 2;
        let mut m = vec![vec![r(0); n]; n];
        m[0][0] = r(p - 3);
        m[0][1] += r(2);
        for i in 2..n {
            m[i - 1][0] = if i == mid { r(p - 4) } else { r(p - 3) };
            m[i - 1][1] += r(1);
            m[i - 1][i] += if i == n - 1 { half } else { r(1) };
        }
        m[n - 1][0] = r(p - 4);
        m[n - 1][1] += r(2);
        m
    };
    TypeMatrix { params, entries }
}

impl TypeMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Type counts of layer `1..=n`, starting from the `p` type-1 tiles of
    /// layer 1, in exact arithmetic.
    pub fn iterate(&self, n: usize) -> Vec<Vec<BigRational>> {
        let size = self.size();
        let big: Vec<Vec<BigRational>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| BigRational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom())))
                    .collect()
            })
            .collect();
        let mut layers = Vec::with_capacity(n);
        if n == 0 {
            return layers;
        }
        let mut v = vec![BigRational::zero(); size];
        v[0] = BigRational::from_integer(BigInt::from(self.params.p));
        layers.push(v.clone());
        for _ in 1..n {
            let mut next = vec![BigRational::zero(); size];
            for (i, vi) in v.iter().enumerate() {
                if vi.is_zero() {
                    continue;
                }
                for (j, e) in big[i].iter().enumerate() {
                    if !e.is_zero() {
                        next[j] += vi * e;
                    }
                }
            }
            v = next;
            layers.push(v.clone());
        }
        layers
    }

    /// Characteristic polynomial `det(xI - M)` in descending powers, with
    /// exact rational coefficients (Faddeev-LeVerrier).
    pub fn characteristic_polynomial(&self) -> Vec<BigRational> {
        let n = self.size();
        let m: Vec<Vec<BigRational>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| BigRational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom())))
                    .collect()
            })
            .collect();
        let mul = |a: &Vec<Vec<BigRational>>, b: &Vec<Vec<BigRational>>| {
            let mut c = vec![vec![BigRational::zero(); n]; n];
            for i in 0..n {
                for k in 0..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        c[i][j] += &a[i][k] * &b[k][j];
                    }
                }
            }
            c
        };
        let mut coeffs = vec![BigRational::from_integer(1.into())];
        let mut mk = vec![vec![BigRational::zero(); n]; n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k)/k
            let mut next = mul(&m, &mk);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &coeffs[k - 1];
            }
            mk = next;
            let am = mul(&m, &mk);
            let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
            coeffs.push(-tr / BigRational::from_integer(BigInt::from(k)));
        }
        coeffs
    }

    /// Dominant eigenvalue by power iteration on row vectors.
    pub fn spectral_radius(&self, tol: f64) -> Result<f64> {
        let n = self.size();
        let m: Vec<Vec<f64>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_f64().unwrap_or(0.0)).collect())
            .collect();
        let mut v = vec![1.0; n];
        let mut estimate = 0.0;
        for _ in 0..1_000_000 {
            let mut w = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    w[j] += v[i] * m[i][j];
                }
            }
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Ok(0.0);
            }
            let next = norm / vnorm;
            for x in &mut w {
                *x /= norm;
            }
            v = w;
            if (next - estimate).abs() < tol {
                return Ok(next);
            }
            estimate = next;
        }
        Err(Error::Numeric("power iteration did not converge".into()))
    }
}

/// Counts tiles of each type in layers `1..=n` directly on a tile-centered
/// graph, as an independent check of [`TypeMatrix::iterate`].
///
/// Types are read off the faces of the dual construction, i.e. the tiles
/// around each vertex; for odd `q` the two faces at the ends of an edge
/// whose tiles have equal distance are merged first.
pub fn simulate_type_counts(g: &TilingGraph, n: u32) -> Result<Vec<Vec<u64>>> {
    if g.centering != Centering::Tile {
        return Err(Error::Precondition("type simulation needs a tile-centered graph".into()));
    }
    let avail = g.trusted_radius().saturating_sub(1);
    if n > avail {
        return Err(Error::OutOfDepth {
            needed: n,
            available: avail,
        });
    }
    let q = g.q() as usize;
    let size = if q % 2 == 0 { q / 2 } else { q - 1 };
    let dist = |t: u32| g.tile_distance[t as usize].unwrap_or(u32::MAX);
    let vertex_min = |v: u32| {
        g.vertices[v as usize]
            .tiles
            .iter()
            .map(|t| t.map_or(u32::MAX, dist))
            .min()
            .unwrap_or(u32::MAX)
    };
    // minimum distance over the (possibly merged) face of each vertex
    let mut face_min: Vec<u32> = (0..g.vertices.len() as u32).map(vertex_min).collect();
    if q % 2 == 1 {
        let own = face_min.clone();
        for e in &g.edges {
            let ([Some(a), Some(b)], [Some(v), Some(w)]) = (e.tiles, e.ends) else {
                continue;
            };
            if dist(a) == dist(b) {
                let m = own[v as usize].min(own[w as usize]);
                face_min[v as usize] = m;
                face_min[w as usize] = m;
            }
        }
    }
    let mut layers = vec![vec![0u64; size]; n as usize];
    for t in 0..g.tiles.len() as u32 {
        let d = dist(t);
        if d == 0 || d > n {
            continue;
        }
        let drop = g.tiles[t as usize]
            .vertices
            .iter()
            .map(|v| d.saturating_sub(face_min[v.unwrap() as usize]))
            .max()
            .unwrap_or(0) as usize;
        let ty = if drop == 0 { size } else { drop };
        if ty > size {
            return Err(Error::Inconsistent(format!("tile {t} has type {ty}")));
        }
        layers[d as usize - 1][ty - 1] += 1;
    }
    Ok(layers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, q: u32) -> TilingParams {
        TilingParams::new(p, q).unwrap()
    }

    #[test]
    fn simulation_matches_iteration() {
        for (p, q) in [(4, 6), (5, 4), (4, 8), (6, 5), (4, 7), (8, 3)] {
            let t = params(p, q);
            let g = crate::tiling::build_tiling(t, 5 + t.margin()).unwrap();
            let sim = simulate_type_counts(&g, 4).unwrap();
            let it = type_matrix(t).iterate(4);
            for (k, (a, b)) in sim.iter().zip(&it).enumerate() {
                let b: Vec<u64> = b.iter().map(|x| x.to_integer().try_into().unwrap()).collect();
                assert_eq!(a, &b, "({p},{q}) layer {}", k + 1);
            }
        }
    }

    #[test]
    fn square_degenerate_form() {
        let m = type_matrix(params(5, 4));
        assert_eq!(m.entries, vec![vec![r(2), r(1)], vec![r(1), r(1)]]);
    }

    #[test]
    fn half_entry_in_even_case() {
        let m = type_matrix(params(4, 8));
        assert_eq!(m.size(), 4);
        assert_eq!(m.entries[2][3], Rational64::new(1, 2));
        assert_eq!(m.entries[3], vec![r(0), r(2), r(0), r(0)]);
    }

    #[test]
    fn odd_case_rows() {
        let m = type_matrix(params(6, 7));
        assert_eq!(m.size(), 6);
        // middle row starts with p - 4 and points to type (q + 1)/2
        assert_eq!(m.entries[2][0], r(2));
        assert_eq!(m.entries[2][3], r(1));
        assert_eq!(m.entries[4][5], Rational64::new(1, 2));
        assert_eq!(m.entries[5], vec![r(2), r(2), r(0), r(0), r(0), r(0)]);
    }
}
