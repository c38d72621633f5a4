//! Floating-point realization of a tiling in the hyperbolic plane.
//!
//! Each realized tile carries a Lorentz matrix taking the base tile onto
//! it, corner `j` to corner `j`. Predicates (which side of an edge a point
//! lies on, where a segment leaves a tile) are evaluated in the local frame
//! of the tile, where its geometry is the fixed base geometry; this keeps
//! the error of far tiles proportional to their distance from the origin
//! rather than its square.

mod appendix;
mod census;
pub mod hyperboloid;
mod svg;
mod trace;

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tiling::{label_edges, EdgeLabeling, Frame, TilingGraph, TilingParams};
use hyperboloid::*;

pub use appendix::{check_appendix_lemmas, AppendixReport, DisjointnessCheck, IntersectionCheck, MidpointCheck};
pub use census::{complexity_p_n, diagonal_census, DiagonalCensus};
pub use svg::{render_svg, SvgOptions};
pub use trace::{
    realize_word_class, trace_segment, trace_word, ClassRealization, Endpoint, GeodesicSegment,
    Nudge, Trace,
};

/// Incidence tolerance, as the sinh of a hyperbolic distance.
pub const EPS: f64 = 1e-9;

/// Realized tiles must stay within this `cosh` of the distance to the
/// origin; beyond it double precision no longer resolves `EPS`.
pub const MAX_COSH: f64 = 1e6;

/// The regular base polygon centered at the origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseTile {
    pub circumradius: f64,
    /// Corner `j` sits at angle `(2j + 1) pi / p`, between edges `j` and `j + 1`.
    pub corners: Vec<Vec3>,
    /// Unit normal of edge `j`, positive on the tile.
    pub normals: Vec<Vec3>,
    /// Boost taking corner `j` to the origin.
    pub corner_boosts: Vec<Mat3>,
}

impl BaseTile {
    pub fn new(params: TilingParams) -> Result<Self> {
        let p = params.p as usize;
        let target = TAU / params.q as f64;
        let corner = |r: f64, k: i64| polar(r, (2 * k + 1) as f64 * PI / p as f64);
        let angle = |r: f64| angle_at(&corner(r, 0), &corner(r, -1), &corner(r, 1));
        // the interior angle decreases from (p - 2) pi / p towards 0
        let (mut lo, mut hi) = (1e-6, 12.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if angle(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let r = 0.5 * (lo + hi);
        if (angle(r) - target).abs() > 1e-11 {
            return Err(Error::Numeric(format!("no circumradius gives interior angle {target}")));
        }
        let corners: Vec<Vec3> = (0..p as i64).map(|k| corner(r, k)).collect();
        let normals = (0..p)
            .map(|j| orient_towards(&line_through(&corners[(j + p - 1) % p], &corners[j]), &ORIGIN))
            .collect();
        let corner_boosts = corners.iter().map(boost_to_origin).collect();
        Ok(BaseTile {
            circumradius: r,
            corners,
            normals,
            corner_boosts,
        })
    }

    pub fn edge_length(&self) -> f64 {
        distance(&self.corners[0], &self.corners[1])
    }
}

/// A realized region of a tiling.
#[derive(Clone, Debug)]
pub struct DiskRealization {
    pub graph: TilingGraph,
    pub base: BaseTile,
    /// Isometry of each realized tile, taking the base tile onto it.
    pub isometries: Vec<Option<Mat3>>,
    /// Position of each realized vertex.
    pub vertices: Vec<Option<Vec3>>,
    /// Global edge labels when `q` is even.
    pub labels: Option<EdgeLabeling>,
    pub eps: f64,
}

/// Extremes found by [`DiskRealization::check_regularity`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub tiles: usize,
    pub max_angle_error: f64,
    pub max_length_error: f64,
}

/// Realizes every tile of `g` that has all of its edges.
pub fn realize(g: &TilingGraph) -> Result<DiskRealization> {
    realize_within(g, u32::MAX)
}

/// Realizes the tiles of `g` within tiling distance `radius` of the base tile.
pub fn realize_within(g: &TilingGraph, radius: u32) -> Result<DiskRealization> {
    let base = BaseTile::new(g.params)?;
    let p = g.p() as usize;
    // glue[j * p + i]: isometry of a neighbor across edge j that sees the
    // shared edge as its own edge i, relative to the current tile
    let glue: Vec<Mat3> = (0..p * p)
        .map(|k| {
            let (j, i) = (k / p, k % p);
            let flip = mirror(((j + i + p - 1) % p + 1) as f64 * PI / p as f64);
            mul(&reflection(&base.normals[j]), &flip)
        })
        .collect();
    let wanted = |t: u32| {
        g.tiles[t as usize].edges.len() == p
            && matches!(g.tile_distance[t as usize], Some(d) if d <= radius)
    };
    let mut isometries: Vec<Option<Mat3>> = vec![None; g.tiles.len()];
    if g.tiles.is_empty() || !wanted(g.base_tile) {
        return Err(Error::Precondition("the base tile is not generated".into()));
    }
    isometries[g.base_tile as usize] = Some(IDENTITY);
    let mut queue = VecDeque::from([g.base_tile]);
    while let Some(a) = queue.pop_front() {
        let ma = isometries[a as usize].unwrap();
        for (j, &e) in g.tiles[a as usize].edges.iter().enumerate() {
            let Some(b) = g.other_tile(e, a) else { continue };
            if isometries[b as usize].is_some() || !wanted(b) {
                continue;
            }
            let i = g.edge_index_in_tile(b, e).unwrap();
            let mb = mul(&ma, &glue[j * p + i]);
            if mb[0][0] > MAX_COSH {
                return Err(Error::Precision(format!(
                    "tile {b} lies too far from the origin for double precision; realize fewer layers"
                )));
            }
            isometries[b as usize] = Some(mb);
            queue.push_back(b);
        }
    }
    let mut vertices: Vec<Option<Vec3>> = vec![None; g.vertices.len()];
    for (t, m) in isometries.iter().enumerate() {
        let Some(m) = m else { continue };
        for (j, v) in g.tiles[t].vertices.iter().enumerate() {
            let Some(v) = *v else { continue };
            let x = apply(m, &base.corners[j]);
            match vertices[v as usize] {
                None => vertices[v as usize] = Some(x),
                Some(y) => {
                    let scale = x[0].max(y[0]);
                    let gap = (0..3).map(|i| (x[i] - y[i]).abs()).fold(0.0, f64::max);
                    if gap > 1e-6 * scale {
                        return Err(Error::Inconsistent(format!(
                            "vertex {v} is placed at two different points"
                        )));
                    }
                    if gap > 1e-10 * scale {
                        return Err(Error::Precision(format!(
                            "placements of vertex {v} differ by {gap:e}"
                        )));
                    }
                }
            }
        }
    }
    let labels = if g.params.q_even() {
        Some(label_edges(g, Frame::default())?)
    } else {
        None
    };
    let r = DiskRealization {
        graph: g.clone(),
        base,
        isometries,
        vertices,
        labels,
        eps: EPS,
    };
    r.check_distinct_centers()?;
    r.check_orientation()?;
    Ok(r)
}

impl DiskRealization {
    pub fn params(&self) -> TilingParams {
        self.graph.params
    }

    pub fn is_realized(&self, t: u32) -> bool {
        self.isometries.get(t as usize).is_some_and(Option::is_some)
    }

    pub fn realized_tiles(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.isometries.len() as u32).filter(|&t| self.is_realized(t))
    }

    pub(crate) fn isometry(&self, t: u32) -> Result<&Mat3> {
        self.isometries
            .get(t as usize)
            .and_then(Option::as_ref)
            .ok_or_else(|| Error::OutOfDepth {
                needed: self.graph.tile_distance.get(t as usize).copied().flatten().unwrap_or(u32::MAX),
                available: self.realized_radius(),
            })
    }

    /// Largest `n` such that every tile at distance `<= n` is realized.
    pub fn realized_radius(&self) -> u32 {
        let mut r = u32::MAX;
        for (t, d) in self.graph.tile_distance.iter().enumerate() {
            if let Some(d) = d {
                if !self.is_realized(t as u32) {
                    r = r.min(d.saturating_sub(1));
                }
            }
        }
        r.min(self.graph.tile_distance.iter().flatten().copied().max().unwrap_or(0))
    }

    pub fn center(&self, t: u32) -> Result<Vec3> {
        Ok(apply(self.isometry(t)?, &ORIGIN))
    }

    /// Corner `j` of tile `t`.
    pub fn corner(&self, t: u32, j: usize) -> Result<Vec3> {
        Ok(apply(self.isometry(t)?, &self.base.corners[j]))
    }

    pub fn corners(&self, t: u32) -> Result<Vec<Vec3>> {
        let m = self.isometry(t)?;
        Ok(self.base.corners.iter().map(|c| apply(m, c)).collect())
    }

    /// Unit normal of edge `j` of tile `t`, positive on the tile.
    pub fn edge_normal(&self, t: u32, j: usize) -> Result<Vec3> {
        Ok(apply(self.isometry(t)?, &self.base.normals[j]))
    }

    /// Coordinates of `x` in the frame where `t` is the base tile.
    pub fn to_local(&self, t: u32, x: &Vec3) -> Result<Vec3> {
        Ok(apply(&lorentz_inverse(self.isometry(t)?), x))
    }

    /// Signed sinh-distances of a local point to the edges of the base tile.
    pub(crate) fn edge_sides(&self, local: &Vec3) -> Vec<f64> {
        self.base.normals.iter().map(|n| form(local, n)).collect()
    }

    /// The realized tile containing `x` in its interior.
    pub fn locate(&self, x: &Vec3) -> Result<u32> {
        let reach = self.base.circumradius.cosh() * (1.0 + 1e-9);
        for t in self.realized_tiles() {
            let local = self.to_local(t, x)?;
            if local[0] > reach {
                continue;
            }
            let sides = self.edge_sides(&local);
            if sides.iter().all(|&s| s > self.eps) {
                return Ok(t);
            }
            if sides.iter().all(|&s| s > -self.eps) {
                return Err(Error::Precondition(
                    "point lies on an edge; move it into the interior of a tile".into(),
                ));
            }
        }
        Err(Error::OutOfDepth {
            needed: u32::MAX,
            available: self.realized_radius(),
        })
    }

    /// Isometry taking the origin to vertex `v`, with edge `i` of the
    /// vertex rotation leaving at angle `2 pi i / q` and corner tile `i`
    /// occupying the sector between edges `i` and `i + 1`.
    pub fn vertex_frame(&self, v: u32) -> Result<Mat3> {
        let vx = &self.graph.vertices[v as usize];
        for (k, t) in vx.tiles.iter().enumerate() {
            let Some(t) = *t else { continue };
            if !self.is_realized(t) {
                continue;
            }
            let angles = self.corner_edge_angles(t, v)?;
            let (j, ak) = (angles.corner, angles.of_edge(vx.edges[k]).unwrap());
            let step = TAU / self.graph.q() as f64;
            let a0 = ak - k as f64 * step;
            let inv_boost = lorentz_inverse(&self.base.corner_boosts[j]);
            return Ok(mul(&mul(self.isometry(t)?, &inv_boost), &rotation(a0)));
        }
        Err(Error::OutOfDepth {
            needed: self.graph.vertex_distance[v as usize].unwrap_or(u32::MAX),
            available: self.realized_radius(),
        })
    }

    /// Directions of the two edges of tile `t` at its corner `v`, seen
    /// from `v` in the boosted local frame of `t`.
    pub(crate) fn corner_edge_angles(&self, t: u32, v: u32) -> Result<CornerAngles> {
        let tile = &self.graph.tiles[t as usize];
        let p = tile.edges.len();
        let j = tile
            .vertices
            .iter()
            .position(|&x| x == Some(v))
            .ok_or_else(|| Error::Inconsistent(format!("vertex {v} is not a corner of tile {t}")))?;
        let l = &self.base.corner_boosts[j];
        let prev = polar_angle(&apply(l, &self.base.corners[(j + p - 1) % p]));
        let next = polar_angle(&apply(l, &self.base.corners[(j + 1) % p]));
        Ok(CornerAngles {
            corner: j,
            edges: [(tile.edges[j], prev), (tile.edges[(j + 1) % p], next)],
        })
    }

    fn check_distinct_centers(&self) -> Result<()> {
        let mut pts: Vec<([f64; 2], u32)> = self
            .realized_tiles()
            .map(|t| (to_disk(&self.center(t).unwrap()), t))
            .collect();
        pts.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]));
        // disk coordinates of distinct centers differ by far more than this
        let tol = 1e-12;
        for i in 0..pts.len() {
            for k in i + 1..pts.len() {
                if pts[k].0[0] - pts[i].0[0] > tol {
                    break;
                }
                if (pts[k].0[1] - pts[i].0[1]).abs() <= tol {
                    return Err(Error::Precision(format!(
                        "tiles {} and {} are realized at the same point",
                        pts[i].1, pts[k].1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The rotation at each vertex must turn counter-clockwise in the disk.
    fn check_orientation(&self) -> Result<()> {
        let Some(v) = (0..self.graph.vertices.len() as u32).find(|&v| {
            self.graph.vertex_complete(v)
                && self.graph.vertices[v as usize].tiles.iter().all(|t| self.is_realized(t.unwrap()))
        }) else {
            return Ok(());
        };
        let vx = &self.graph.vertices[v as usize];
        let t = vx.tiles[0].unwrap();
        let a = self.corner_edge_angles(t, v)?;
        let turn = wrap(a.of_edge(vx.edges[1]).unwrap() - a.of_edge(vx.edges[0]).unwrap());
        if (turn - TAU / self.graph.q() as f64).abs() > 1e-9 {
            return Err(Error::Inconsistent(
                "vertex rotations do not turn counter-clockwise".into(),
            ));
        }
        Ok(())
    }

    /// Interior angles and edge lengths of the realized tiles within
    /// `radius`, compared with their regular values.
    pub fn check_regularity(&self, radius: u32) -> Result<RegularityReport> {
        let target = TAU / self.graph.q() as f64;
        let len = self.base.edge_length();
        let p = self.graph.p() as usize;
        let mut report = RegularityReport {
            tiles: 0,
            max_angle_error: 0.0,
            max_length_error: 0.0,
        };
        for t in self.realized_tiles() {
            if !matches!(self.graph.tile_distance[t as usize], Some(d) if d <= radius) {
                continue;
            }
            let c = self.corners(t)?;
            for j in 0..p {
                let a = angle_at(&c[j], &c[(j + p - 1) % p], &c[(j + 1) % p]);
                report.max_angle_error = report.max_angle_error.max((a - target).abs());
                let l = distance(&c[j], &c[(j + 1) % p]);
                report.max_length_error = report.max_length_error.max((l - len).abs());
            }
            report.tiles += 1;
        }
        Ok(report)
    }

    /// Reflects `x` across the line containing edge `j` of tile `t`.
    pub fn reflect_across_edge(&self, t: u32, j: usize, x: &Vec3) -> Result<Vec3> {
        let n = self.edge_normal(t, j)?;
        Ok(apply(&reflection(&n), x))
    }

    /// Number of realized tiles at tiling distance `n`.
    pub fn realized_at_distance(&self, n: u32) -> usize {
        self.realized_tiles()
            .filter(|&t| self.graph.tile_distance[t as usize] == Some(n))
            .count()
    }
}

/// The two edges of a tile at one of its corners with their directions.
pub(crate) struct CornerAngles {
    pub corner: usize,
    pub edges: [(u32, f64); 2],
}

impl CornerAngles {
    pub fn of_edge(&self, e: u32) -> Option<f64> {
        self.edges.iter().find(|x| x.0 == e).map(|x| x.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::build_tiling;

    #[test]
    fn base_tile_is_regular() {
        for (p, q) in [(4, 8), (3, 7), (7, 3), (5, 4)] {
            let b = BaseTile::new(TilingParams::new(p, q).unwrap()).unwrap();
            let c = &b.corners;
            let n = c.len();
            for j in 0..n {
                let a = angle_at(&c[j], &c[(j + n - 1) % n], &c[(j + 1) % n]);
                assert!((a - TAU / q as f64).abs() < 1e-12);
            }
            // the closed form cosh R = cot(pi/p) cot(pi/q)
            let want = 1.0 / ((PI / p as f64).tan() * (PI / q as f64).tan());
            assert!((b.circumradius.cosh() - want).abs() < 1e-10);
        }
    }

    #[test]
    fn small_realizations_are_consistent() {
        for (p, q) in [(4, 6), (3, 7), (7, 3), (5, 4)] {
            let g = build_tiling(TilingParams::new(p, q).unwrap(), 4).unwrap();
            let r = realize(&g).unwrap();
            let rep = r.check_regularity(3).unwrap();
            assert!(rep.max_angle_error < 1e-9, "({p},{q}) {rep:?}");
            assert!(rep.max_length_error < 1e-9, "({p},{q}) {rep:?}");
        }
    }
}
