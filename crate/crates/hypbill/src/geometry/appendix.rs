//! Randomized numerical checks of three facts about tilings used by the
//! length comparisons: zigzag midpoints are collinear (odd `q`), a segment
//! meets a zigzag in consecutive edges (odd `q`), and an edge geodesic
//! through a corner of a tile misses the tile's far edges (even `q`).

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::hyperboloid::*;
use super::trace::{interior_point, trace_word, GeodesicSegment};
use super::DiskRealization;
use crate::error::{Error, Result};
use crate::tiling::{zigzag_classes, ZigzagClasses};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MidpointCheck {
    pub windows: u32,
    /// Largest sinh-distance of a midpoint from the line through the
    /// first and last midpoints of its window.
    pub max_deviation: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionCheck {
    pub segments: u32,
    /// Segments not used because they met a vertex or left the realized region.
    pub skipped: u32,
    /// Zigzags crossed at least twice by a used segment.
    pub multiple_hits: u32,
    /// Those whose crossed edges were not consecutive along the zigzag.
    pub misses: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisjointnessCheck {
    pub pairs: u32,
    /// Smallest `|B(n_e, n_g)|`; values of at least 1 mean the lines do not cross.
    pub min_separation: f64,
    pub violations: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AppendixReport {
    pub midpoints: Option<MidpointCheck>,
    pub intersections: Option<IntersectionCheck>,
    pub disjointness: Option<DisjointnessCheck>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.midpoints.map_or(true, |m| m.max_deviation < 1e-8)
            && self.intersections.map_or(true, |c| c.misses == 0)
            && self.disjointness.map_or(true, |d| d.violations == 0)
    }
}

/// Runs the checks that apply to the parity of `q`, sampling `samples`
/// windows or segments among tiles within `radius` of the base tile.
pub fn check_appendix_lemmas(
    r: &DiskRealization,
    radius: u32,
    samples: u32,
    seed: u64,
) -> Result<AppendixReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if r.params().q_even() {
        return Ok(AppendixReport {
            midpoints: None,
            intersections: None,
            disjointness: Some(disjointness(r, radius)?),
        });
    }
    let zz = zigzag_classes(&r.graph)?;
    Ok(AppendixReport {
        midpoints: Some(midpoints(r, &zz, radius, samples, &mut rng)?),
        intersections: Some(intersections(r, &zz, radius, samples, &mut rng)?),
        disjointness: None,
    })
}

fn midpoint(r: &DiskRealization, e: u32, radius: u32) -> Option<Vec3> {
    let g = &r.graph;
    let edge = &g.edges[e as usize];
    let near = edge
        .tiles
        .iter()
        .all(|t| t.is_some_and(|t| matches!(g.tile_distance[t as usize], Some(d) if d <= radius)));
    if !near {
        return None;
    }
    let a = r.vertices[edge.ends[0]? as usize]?;
    let b = r.vertices[edge.ends[1]? as usize]?;
    Some(normalize_point(&add(&a, &b)))
}

fn midpoints(
    r: &DiskRealization,
    zz: &ZigzagClasses,
    radius: u32,
    samples: u32,
    rng: &mut impl Rng,
) -> Result<MidpointCheck> {
    // runs of consecutive zigzag edges with known midpoints
    let mut runs: Vec<Vec<Vec3>> = Vec::new();
    for chain in &zz.zigzags {
        let mut cur = Vec::new();
        for &e in chain {
            match midpoint(r, e, radius) {
                Some(m) => cur.push(m),
                None => {
                    if cur.len() >= 3 {
                        runs.push(std::mem::take(&mut cur));
                    }
                    cur.clear();
                }
            }
        }
        if cur.len() >= 3 {
            runs.push(cur);
        }
    }
    if runs.is_empty() {
        return Err(Error::OutOfDepth {
            needed: radius + 1,
            available: r.realized_radius(),
        });
    }
    let mut report = MidpointCheck {
        windows: 0,
        max_deviation: 0.0,
    };
    for _ in 0..samples {
        let run = runs.choose(rng).unwrap();
        let len = rng.gen_range(3..=run.len().min(8));
        let start = rng.gen_range(0..=run.len() - len);
        let w = &run[start..start + len];
        let line = line_through(&w[0], &w[len - 1]);
        for m in &w[1..len - 1] {
            report.max_deviation = report.max_deviation.max(form(m, &line).abs());
        }
        report.windows += 1;
    }
    Ok(report)
}

fn intersections(
    r: &DiskRealization,
    zz: &ZigzagClasses,
    radius: u32,
    samples: u32,
    rng: &mut impl Rng,
) -> Result<IntersectionCheck> {
    let g = &r.graph;
    let mut position: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for (z, chain) in zz.zigzags.iter().enumerate() {
        for (i, &e) in chain.iter().enumerate() {
            position.insert((z as u32, e), i);
        }
    }
    let pool: Vec<u32> = r
        .realized_tiles()
        .filter(|&t| matches!(g.tile_distance[t as usize], Some(d) if d <= radius))
        .collect();
    let mut report = IntersectionCheck {
        segments: 0,
        skipped: 0,
        multiple_hits: 0,
        misses: 0,
    };
    for _ in 0..samples {
        let a = *pool.choose(rng).unwrap();
        let b = *pool.choose(rng).unwrap();
        let seg = GeodesicSegment::between_points(interior_point(r, a, rng)?, interior_point(r, b, rng)?);
        let trace = match trace_word(r, &seg) {
            Ok(t) if t.is_primitive() && t.near_misses == 0 => t,
            Ok(_) | Err(Error::OutOfDepth { .. }) => {
                report.skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        report.segments += 1;
        let mut hits: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for &e in &trace.path.edges {
            for z in zz.zigzags_of[e as usize] {
                if let Some(&i) = position.get(&(z, e)) {
                    hits.entry(z).or_default().push(i);
                }
            }
        }
        for mut idx in hits.into_values().filter(|v| v.len() > 1) {
            report.multiple_hits += 1;
            idx.sort_unstable();
            if idx.windows(2).any(|w| w[1] != w[0] + 1) {
                report.misses += 1;
            }
        }
    }
    Ok(report)
}

fn disjointness(r: &DiskRealization, radius: u32) -> Result<DisjointnessCheck> {
    let g = &r.graph;
    let p = g.p() as usize;
    let q = g.q() as usize;
    let mut report = DisjointnessCheck {
        pairs: 0,
        min_separation: f64::INFINITY,
        violations: 0,
    };
    for t in r.realized_tiles() {
        if !matches!(g.tile_distance[t as usize], Some(d) if d <= radius) {
            continue;
        }
        let m = *r.isometry(t)?;
        let corners = r.corners(t)?;
        for j in 0..p {
            let boost = &r.base.corner_boosts[j];
            let back = mul(&m, &lorentz_inverse(boost));
            let a0 = polar_angle(&apply(boost, &r.base.corners[(j + p - 1) % p]));
            for k in 0..q / 2 {
                let phi = a0 + k as f64 * TAU / q as f64;
                let line = apply(&back, &[0.0, -phi.sin(), phi.cos()]);
                for i in 0..p {
                    let ends = [&corners[(i + p - 1) % p], &corners[i]];
                    if ends.iter().any(|x| form(x, &line).abs() < r.eps * x[0]) {
                        continue;
                    }
                    let sep = form(&r.edge_normal(t, i)?, &line).abs();
                    report.pairs += 1;
                    report.min_separation = report.min_separation.min(sep);
                    if sep < 1.0 - 1e-9 {
                        report.violations += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}
