//! Tracing geodesic segments through a realized tiling.
//!
//! A trace walks tile by tile. Inside a tile the exit edge is the first
//! edge line the segment leaves the positive side of. When the exit point
//! is a vertex, the segment is nudged: it turns around the vertex from the
//! incoming direction to the outgoing one, crossing the edges in between.
//! Segments running along an edge are followed on one fixed side of it.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::hyperboloid::*;
use super::DiskRealization;
use crate::error::{Error, Result};
use crate::paths::TilingPath;
use crate::tiling::Frame;
use crate::words::{path_to_word, path_to_word_labeled, word_to_path, Violation, Word, WordClass};

/// Exit points closer than this (as a sinh-distance) to a corner count as near misses.
const NEAR_MISS: f64 = 1e-7;

/// Angular tolerance for deciding that a direction runs along an edge.
const ANGLE_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Endpoint {
    Vertex(u32),
    /// A point on the hyperboloid; it must lie in the interior of a tile.
    Point(Vec3),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSegment {
    pub from: Endpoint,
    pub to: Endpoint,
}

impl GeodesicSegment {
    pub fn new(from: Endpoint, to: Endpoint) -> Self {
        GeodesicSegment { from, to }
    }

    pub fn between_vertices(a: u32, b: u32) -> Self {
        Self::new(Endpoint::Vertex(a), Endpoint::Vertex(b))
    }

    pub fn between_points(a: Vec3, b: Vec3) -> Self {
        Self::new(Endpoint::Point(a), Endpoint::Point(b))
    }
}

/// Side on which a segment is pushed off the vertices it passes through.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Nudge {
    /// Pass each vertex on its right, turning counter-clockwise around it.
    #[default]
    CounterClockwise,
    Clockwise,
}

impl Nudge {
    fn sign(self) -> i64 {
        match self {
            Nudge::CounterClockwise => 1,
            Nudge::Clockwise => -1,
        }
    }
}

/// The tiling path of a traced segment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub path: TilingPath,
    /// Edges crossed, counting the edges crossed while turning around a vertex.
    pub crossings: u32,
    /// Combinatorial length: the number of tiles visited.
    pub cl: u32,
    /// Tiling distance between the first and the last tile.
    pub tl: u32,
    /// Vertices met in the interior of the segment.
    pub vertex_hits: Vec<u32>,
    /// Edges the segment runs along.
    pub along_edges: Vec<u32>,
    /// Exits that came within `1e-7` of a corner without being snapped to it.
    pub near_misses: u32,
    /// Global labels for even `q`; path-local labels from the first tile otherwise.
    pub word: Option<Word>,
}

impl Trace {
    /// True when the open segment meets no vertex.
    pub fn is_primitive(&self) -> bool {
        self.vertex_hits.is_empty()
    }
}

pub fn trace_word(r: &DiskRealization, seg: &GeodesicSegment) -> Result<Trace> {
    trace_segment(r, seg, Nudge::default())
}

pub fn trace_segment(r: &DiskRealization, seg: &GeodesicSegment, nudge: Nudge) -> Result<Trace> {
    Ok(trace_limited(r, seg, nudge, u32::MAX)?.expect("unbounded traces always finish"))
}

/// Traces `seg`, giving up with `None` once more than `limit` edges are crossed.
pub(crate) fn trace_limited(
    r: &DiskRealization,
    seg: &GeodesicSegment,
    nudge: Nudge,
    limit: u32,
) -> Result<Option<Trace>> {
    let mut t = Tracer::new(r, seg, nudge, limit)?;
    let mut state = t.start()?;
    let mut guard = 0usize;
    let end_tile = loop {
        guard += 1;
        if guard > 1_000_000 {
            return Err(Error::Inconsistent("trace does not terminate".into()));
        }
        state = match state {
            Step::Done(tile) => break tile,
            Step::Aborted => return Ok(None),
            Step::InTile { tile, exclude } => t.in_tile(tile, exclude)?,
            Step::Along { tile, edge, from } => t.along(tile, edge, from)?,
        };
    };
    debug_assert_eq!(Some(&end_tile), t.tiles.last());
    let g = &r.graph;
    let path = TilingPath {
        tiles: t.tiles,
        edges: t.edges,
    };
    let tl = g.tile_bfs(path.start())[path.end() as usize]
        .ok_or_else(|| Error::Inconsistent("traced tiles are disconnected".into()))?;
    let word = match &r.labels {
        Some(labels) => path_to_word_labeled(&path, g, labels).ok(),
        None => path_to_word(&path, g, Frame::default()).ok(),
    };
    Ok(Some(Trace {
        crossings: t.crossings,
        cl: t.crossings + 1,
        tl,
        vertex_hits: t.vertex_hits,
        along_edges: t.along,
        near_misses: t.near_misses,
        word,
        path,
    }))
}

enum Step {
    InTile { tile: u32, exclude: [Option<usize>; 2] },
    Along { tile: u32, edge: u32, from: u32 },
    Done(u32),
    Aborted,
}

struct Tracer<'a> {
    r: &'a DiskRealization,
    seg: GeodesicSegment,
    p_global: Vec3,
    q_global: Vec3,
    sign: i64,
    limit: u32,
    tiles: Vec<u32>,
    edges: Vec<u32>,
    crossings: u32,
    vertex_hits: Vec<u32>,
    along: Vec<u32>,
    near_misses: u32,
}

impl<'a> Tracer<'a> {
    fn new(r: &'a DiskRealization, seg: &GeodesicSegment, nudge: Nudge, limit: u32) -> Result<Self> {
        let point = |e: &Endpoint| -> Result<Vec3> {
            match *e {
                Endpoint::Vertex(v) => r
                    .vertices
                    .get(v as usize)
                    .copied()
                    .flatten()
                    .ok_or_else(|| Error::OutOfDepth {
                        needed: r.graph.vertex_distance.get(v as usize).copied().flatten().unwrap_or(u32::MAX),
                        available: r.realized_radius(),
                    }),
                Endpoint::Point(x) => {
                    if !(x[0] > 0.0 && -form(&x, &x) > 0.0) {
                        return Err(Error::Precondition("endpoint is not a point of the plane".into()));
                    }
                    Ok(normalize_point(&x))
                }
            }
        };
        let (p_global, q_global) = (point(&seg.from)?, point(&seg.to)?);
        if seg.from == seg.to || distance(&p_global, &q_global) < 1e-12 {
            return Err(Error::Precondition("segment endpoints coincide".into()));
        }
        if let Endpoint::Point(x) = seg.to {
            // rejects endpoints on edges and outside the realized region
            r.locate(&normalize_point(&x))?;
        }
        Ok(Tracer {
            r,
            seg: *seg,
            p_global,
            q_global,
            sign: nudge.sign(),
            limit,
            tiles: Vec::new(),
            edges: Vec::new(),
            crossings: 0,
            vertex_hits: Vec::new(),
            along: Vec::new(),
            near_misses: 0,
        })
    }

    /// Endpoints in the local frame of `tile`, using exact corners where possible.
    fn local(&self, tile: u32) -> Result<(Vec3, Vec3)> {
        let inv = lorentz_inverse(self.r.isometry(tile)?);
        let corners = &self.r.graph.tiles[tile as usize].vertices;
        let one = |e: &Endpoint, global: &Vec3| match *e {
            Endpoint::Vertex(v) => match corners.iter().position(|&c| c == Some(v)) {
                Some(j) => self.r.base.corners[j],
                None => apply(&inv, global),
            },
            Endpoint::Point(_) => apply(&inv, global),
        };
        Ok((one(&self.seg.from, &self.p_global), one(&self.seg.to, &self.q_global)))
    }

    fn ends_at_vertex(&self, v: u32) -> bool {
        self.seg.to == Endpoint::Vertex(v)
    }

    fn out_of_depth(&self) -> Error {
        Error::OutOfDepth {
            needed: self.crossings + 1,
            available: self.r.realized_radius(),
        }
    }

    /// Records a crossing of `edge` into `next`, or reports the limit.
    fn cross(&mut self, edge: u32, next: u32) -> Result<bool> {
        if self.crossings >= self.limit {
            return Ok(false);
        }
        if !self.r.is_realized(next) {
            return Err(self.out_of_depth());
        }
        self.crossings += 1;
        self.edges.push(edge);
        self.tiles.push(next);
        Ok(true)
    }

    fn start(&mut self) -> Result<Step> {
        match self.seg.from {
            Endpoint::Point(_) => {
                let t = self.r.locate(&self.p_global)?;
                self.tiles.push(t);
                Ok(Step::InTile {
                    tile: t,
                    exclude: [None, None],
                })
            }
            Endpoint::Vertex(v) => {
                let g = &self.r.graph;
                if !g.vertex_complete(v) {
                    return Err(self.out_of_depth());
                }
                let vx = &g.vertices[v as usize];
                let q = vx.edges.len();
                let fan = self.fan(v, 0)?;
                let phi = fan.forward;
                for i in 0..q {
                    let d = wrap(fan.edge_angle(i as i64) - phi);
                    if d < ANGLE_EPS || d > TAU - ANGLE_EPS {
                        let e = vx.edges[i];
                        let far = g.other_end(e, v);
                        if far.is_some_and(|w| self.ends_at_vertex(w)) {
                            return Err(Error::Precondition(
                                "segment is a single edge of the tiling".into(),
                            ));
                        }
                        let k = if self.sign > 0 { (i + q - 1) % q } else { i };
                        let tile = vx.tiles[k].unwrap();
                        self.require_realized(tile)?;
                        self.tiles.push(tile);
                        return Ok(Step::Along { tile, edge: e, from: v });
                    }
                }
                let step = TAU / q as f64;
                let i = (0..q)
                    .find(|&i| wrap(phi - fan.edge_angle(i as i64)) < step)
                    .ok_or_else(|| Error::Inconsistent("direction falls in no sector".into()))?;
                let tile = vx.tiles[i].unwrap();
                self.require_realized(tile)?;
                self.tiles.push(tile);
                Ok(Step::InTile {
                    tile,
                    exclude: self.edges_at(tile, v),
                })
            }
        }
    }

    fn require_realized(&self, tile: u32) -> Result<()> {
        if self.r.is_realized(tile) {
            Ok(())
        } else {
            Err(self.out_of_depth())
        }
    }

    /// Boundary indices of the two edges of `tile` at its corner `v`.
    fn edges_at(&self, tile: u32, v: u32) -> [Option<usize>; 2] {
        let t = &self.r.graph.tiles[tile as usize];
        let p = t.edges.len();
        match t.vertices.iter().position(|&c| c == Some(v)) {
            Some(j) => [Some(j), Some((j + 1) % p)],
            None => [None, None],
        }
    }

    fn in_tile(&mut self, tile: u32, exclude: [Option<usize>; 2]) -> Result<Step> {
        let g = &self.r.graph;
        let t = &g.tiles[tile as usize];
        if let Endpoint::Vertex(u) = self.seg.to {
            if t.vertices.contains(&Some(u)) {
                return Ok(Step::Done(tile));
            }
        }
        let (pl, ql) = self.local(tile)?;
        if matches!(self.seg.to, Endpoint::Point(_)) {
            let sides = self.r.edge_sides(&ql);
            if sides.iter().all(|&s| s > self.r.eps) {
                return Ok(Step::Done(tile));
            }
        }
        let normals = &self.r.base.normals;
        let p = normals.len();
        let mut exit: Option<(usize, f64)> = None;
        for (j, n) in normals.iter().enumerate() {
            if exclude.contains(&Some(j)) {
                continue;
            }
            let (a, b) = (form(&pl, n), form(&ql, n));
            if a > b {
                let s = a / (a - b);
                if exit.map_or(true, |(_, best)| s < best) {
                    exit = Some((j, s));
                }
            }
        }
        let (j, s) = exit.ok_or_else(|| Error::Inconsistent(format!("segment never leaves tile {tile}")))?;
        let x = normalize_point(&lerp(&pl, &ql, s));
        let d_prev = form(&x, &normals[(j + p - 1) % p]).abs();
        let d_next = form(&x, &normals[(j + 1) % p]).abs();
        if d_prev.min(d_next) < self.r.eps {
            let corner = if d_prev < d_next { (j + p - 1) % p } else { j };
            let w = t.vertices[corner].ok_or_else(|| self.out_of_depth())?;
            if self.ends_at_vertex(w) {
                return Ok(Step::Done(tile));
            }
            self.vertex_hits.push(w);
            return self.turn(w, tile);
        }
        if d_prev.min(d_next) < NEAR_MISS {
            self.near_misses += 1;
        }
        let e = t.edges[j];
        let next = g.other_tile(e, tile).ok_or_else(|| self.out_of_depth())?;
        if !self.cross(e, next)? {
            return Ok(Step::Aborted);
        }
        let back = g.edge_index_in_tile(next, e);
        Ok(Step::InTile {
            tile: next,
            exclude: [back, None],
        })
    }

    fn along(&mut self, tile: u32, edge: u32, from: u32) -> Result<Step> {
        let w = self.r.graph.other_end(edge, from).ok_or_else(|| self.out_of_depth())?;
        self.along.push(edge);
        if self.ends_at_vertex(w) {
            return Ok(Step::Done(tile));
        }
        self.vertex_hits.push(w);
        self.turn(w, tile)
    }

    /// Directions of the edges at `v`, anchored on its corner tile `k`.
    fn fan(&self, v: u32, k: usize) -> Result<Fan> {
        let g = &self.r.graph;
        let vx = &g.vertices[v as usize];
        let q = vx.edges.len();
        let tile = vx.tiles[k].ok_or_else(|| self.out_of_depth())?;
        let ca = self.r.corner_edge_angles(tile, v)?;
        let a0 = ca
            .of_edge(vx.edges[k])
            .ok_or_else(|| Error::Inconsistent("corner tile misses its edge".into()))?;
        let a1 = ca
            .of_edge(vx.edges[(k + 1) % q])
            .ok_or_else(|| Error::Inconsistent("corner tile misses its edge".into()))?;
        let step = TAU / q as f64;
        if (wrap(a1 - a0) - step).abs() > 1e-9 {
            return Err(Error::Inconsistent(format!(
                "rotation at vertex {v} is not counter-clockwise"
            )));
        }
        let (_, ql) = self.local(tile)?;
        let forward = polar_angle(&apply(&self.r.base.corner_boosts[ca.corner], &ql));
        Ok(Fan {
            anchor: k as i64,
            anchor_angle: a0,
            step,
            forward,
        })
    }

    /// Turns around vertex `w`, entered from its corner tile `tile`.
    fn turn(&mut self, w: u32, tile: u32) -> Result<Step> {
        let g = &self.r.graph;
        if !g.vertex_complete(w) {
            return Err(self.out_of_depth());
        }
        let vx = &g.vertices[w as usize];
        let q = vx.edges.len() as i64;
        let k = vx
            .tiles
            .iter()
            .position(|&t| t == Some(tile))
            .ok_or_else(|| Error::Inconsistent(format!("tile {tile} is not at vertex {w}")))?;
        let fan = self.fan(w, k)?;
        let back = fan.forward + PI;
        let idx = |i: i64| i.rem_euclid(q) as usize;
        let mut m = k as i64;
        for _ in 0..=q {
            let ne = if self.sign > 0 { m + 1 } else { m };
            let ang = wrap(self.sign as f64 * (fan.edge_angle(ne) - back));
            let cur = vx.tiles[idx(m)].unwrap();
            if (ang - PI).abs() < ANGLE_EPS {
                return Ok(Step::Along {
                    tile: cur,
                    edge: vx.edges[idx(ne)],
                    from: w,
                });
            }
            if ang > PI {
                return Ok(Step::InTile {
                    tile: cur,
                    exclude: self.edges_at(cur, w),
                });
            }
            let next = vx.tiles[idx(m + self.sign)].unwrap();
            if !self.cross(vx.edges[idx(ne)], next)? {
                return Ok(Step::Aborted);
            }
            m += self.sign;
        }
        Err(Error::Inconsistent(format!("turn around vertex {w} does not stop")))
    }
}

struct Fan {
    anchor: i64,
    anchor_angle: f64,
    step: f64,
    /// Direction of the far endpoint.
    forward: f64,
}

impl Fan {
    fn edge_angle(&self, i: i64) -> f64 {
        self.anchor_angle + (i - self.anchor) as f64 * self.step
    }
}

/// A random point strictly inside a realized tile.
pub(crate) fn interior_point(r: &DiskRealization, tile: u32, rng: &mut impl Rng) -> Result<Vec3> {
    let m = r.isometry(tile)?;
    let mut x = scale(&ORIGIN, 0.2 + rng.gen::<f64>());
    for c in &r.base.corners {
        x = add(&x, &scale(c, rng.gen::<f64>()));
    }
    Ok(apply(m, &normalize_point(&x)))
}

/// Outcome of searching for a segment that realizes a word class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ClassRealization {
    /// A traced segment from the base tile whose word lies in the class.
    Witness { segment: GeodesicSegment, trace: Box<Trace> },
    /// The class contains an inadmissible word, so no segment realizes it.
    Refuted { witness: Option<(Word, Violation)> },
    /// No attempt within the budget produced a word of the class.
    NotFound { attempts: u32 },
}

/// Looks for a segment from the base tile whose traced word lies in
/// `class`, trying the center-to-center segment first and then random
/// interior endpoints.
pub fn realize_word_class(
    r: &DiskRealization,
    class: &WordClass,
    budget: u32,
    seed: u64,
) -> Result<ClassRealization> {
    if !class.class_admissible {
        return Ok(ClassRealization::Refuted {
            witness: class.witness.clone(),
        });
    }
    let g = &r.graph;
    let start = g.base_tile;
    let target = word_to_path(&class.canonical, g, start, Frame::default())?.end();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..budget.max(1) {
        let (a, b) = if attempt == 0 {
            (r.center(start)?, r.center(target)?)
        } else {
            (interior_point(r, start, &mut rng)?, interior_point(r, target, &mut rng)?)
        };
        let segment = GeodesicSegment::between_points(a, b);
        let trace = match trace_word(r, &segment) {
            Ok(t) => t,
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        };
        if trace.path.end() == target && trace.word.as_ref().is_some_and(|w| class.contains(w)) {
            return Ok(ClassRealization::Witness {
                segment,
                trace: Box::new(trace),
            });
        }
    }
    Ok(ClassRealization::NotFound { attempts: budget.max(1) })
}
