use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::construction::Construction;
use super::params::TilingParams;
use crate::error::{Error, Result};

/// A vertex of the tiling with its incident edges in counter-clockwise
/// order. `tiles[i]` is the tile in the corner between `edges[i]` and
/// `edges[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub edges: Vec<u32>,
    pub tiles: Vec<Option<u32>>,
}

/// An edge. Walking from `ends[0]` to `ends[1]`, `tiles[0]` is on the left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub ends: [Option<u32>; 2],
    pub tiles: [Option<u32>; 2],
}

/// A tile with its boundary edges in counter-clockwise order. `vertices[j]`
/// is the corner between `edges[j]` and `edges[j + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tile {
    pub edges: Vec<u32>,
    pub vertices: Vec<Option<u32>>,
}

/// Which element the construction grew from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Centering {
    /// Grown from a base tile; layers are tiles by tiling distance.
    Tile,
    /// Grown from a base vertex; layers are vertices by graph distance.
    Vertex,
}

/// The combinatorial map of a `(p, q)`-tiling truncated at some depth.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingGraph {
    pub params: TilingParams,
    pub centering: Centering,
    /// Number of construction stages that were run.
    pub depth: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub tiles: Vec<Tile>,
    pub vertex_distance: Vec<Option<u32>>,
    pub tile_distance: Vec<Option<u32>>,
    pub base_tile: u32,
    pub base_vertex: Option<u32>,
    /// Degree at the end of the creating stage, for vertex-centered builds.
    pub stage_valence: Option<Vec<u32>>,
}

/// Builds the tiling grown from a base tile: the construction is run on the
/// dual parameters, so construction nodes are tiles and closed construction
/// faces are vertices. Tiles of distance `<= depth` all exist.
pub fn build_tiling(params: TilingParams, depth: u32) -> Result<TilingGraph> {
    let params = TilingParams::new(params.p, params.q)?;
    let c = Construction::run(params.q, params.p, depth)?;
    Ok(TilingGraph::from_dual_construction(params, &c))
}

/// Builds the tiling grown from a base vertex, running the construction on
/// `(p, q)` directly. Vertices of distance `<= depth` all exist.
pub fn build_vertex_centered(params: TilingParams, depth: u32) -> Result<TilingGraph> {
    let params = TilingParams::new(params.p, params.q)?;
    let c = Construction::run(params.p, params.q, depth)?;
    Ok(TilingGraph::from_primal_construction(params, &c))
}

fn edge_ids(c: &Construction) -> (HashMap<(u32, u32), u32>, Vec<(u32, u32)>) {
    let mut ids = HashMap::new();
    let mut pairs = Vec::new();
    for u in 0..c.node_count() as u32 {
        for &v in c.rotation(u) {
            if u < v {
                ids.insert((u, v), pairs.len() as u32);
                pairs.push((u, v));
            }
        }
    }
    (ids, pairs)
}

fn key(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl TilingGraph {
    fn from_dual_construction(params: TilingParams, c: &Construction) -> Self {
        let (ids, pairs) = edge_ids(c);
        let he = c.half_edge_faces();
        let tiles: Vec<Tile> = (0..c.node_count() as u32)
            .map(|a| {
                let rot = c.rotation(a);
                Tile {
                    edges: rot.iter().map(|&b| ids[&key(a, b)]).collect(),
                    vertices: rot.iter().map(|&b| he.get(&(a, b)).copied()).collect(),
                }
            })
            .collect();
        let vertices: Vec<Vertex> = c
            .faces()
            .iter()
            .map(|cyc| {
                let n = cyc.len();
                Vertex {
                    edges: (0..n).map(|i| ids[&key(cyc[i], cyc[(i + 1) % n])]).collect(),
                    tiles: (0..n).map(|i| Some(cyc[(i + 1) % n])).collect(),
                }
            })
            .collect();
        let edges: Vec<Edge> = pairs
            .iter()
            .map(|&(a, b)| Edge {
                ends: [he.get(&(b, a)).copied(), he.get(&(a, b)).copied()],
                tiles: [Some(a), Some(b)],
            })
            .collect();
        let tile_distance = (0..c.node_count() as u32)
            .map(|a| Some(c.distance(a)))
            .collect();
        let base_vertex = tiles[0].vertices.first().copied().flatten();
        let mut g = TilingGraph {
            params,
            centering: Centering::Tile,
            depth: c.stages(),
            vertex_distance: vec![None; vertices.len()],
            vertices,
            edges,
            tiles,
            tile_distance,
            base_tile: 0,
            base_vertex,
            stage_valence: None,
        };
        if let Some(v) = base_vertex {
            g.vertex_distance = g.vertex_bfs(v);
        }
        g
    }

    fn from_primal_construction(params: TilingParams, c: &Construction) -> Self {
        let (ids, pairs) = edge_ids(c);
        let he = c.half_edge_faces();
        let vertices: Vec<Vertex> = (0..c.node_count() as u32)
            .map(|v| {
                let rot = c.rotation(v);
                Vertex {
                    edges: rot.iter().map(|&w| ids[&key(v, w)]).collect(),
                    tiles: rot.iter().map(|&w| he.get(&(v, w)).copied()).collect(),
                }
            })
            .collect();
        let tiles: Vec<Tile> = c
            .faces()
            .iter()
            .map(|cyc| {
                let n = cyc.len();
                Tile {
                    edges: (0..n).map(|i| ids[&key(cyc[i], cyc[(i + 1) % n])]).collect(),
                    vertices: (0..n).map(|i| Some(cyc[(i + 1) % n])).collect(),
                }
            })
            .collect();
        let edges: Vec<Edge> = pairs
            .iter()
            .map(|&(a, b)| Edge {
                ends: [Some(a), Some(b)],
                tiles: [he.get(&(a, b)).copied(), he.get(&(b, a)).copied()],
            })
            .collect();
        let vertex_distance = (0..c.node_count() as u32)
            .map(|v| Some(c.distance(v)))
            .collect();
        let stage_valence = (0..c.node_count() as u32)
            .map(|v| c.stage_valence(v))
            .collect();
        let base_tile = vertices[0].tiles.first().copied().flatten().unwrap_or(0);
        let mut g = TilingGraph {
            params,
            centering: Centering::Vertex,
            depth: c.stages(),
            tile_distance: vec![None; tiles.len()],
            vertices,
            edges,
            tiles,
            vertex_distance,
            base_tile,
            base_vertex: Some(0),
            stage_valence: Some(stage_valence),
        };
        if !g.tiles.is_empty() {
            g.tile_distance = g.tile_bfs(base_tile);
        }
        g
    }

    /// Breadth-first tiling distances from `start` through shared edges.
    pub fn tile_bfs(&self, start: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.tiles.len()];
        let mut queue = VecDeque::new();
        dist[start as usize] = Some(0);
        queue.push_back(start);
        while let Some(t) = queue.pop_front() {
            let dt = dist[t as usize].unwrap();
            for &e in &self.tiles[t as usize].edges {
                if let Some(u) = self.other_tile(e, t) {
                    if dist[u as usize].is_none() {
                        dist[u as usize] = Some(dt + 1);
                        queue.push_back(u);
                    }
                }
            }
        }
        dist
    }

    /// Breadth-first graph distances between vertices from `start`.
    pub fn vertex_bfs(&self, start: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertices.len()];
        let mut queue = VecDeque::new();
        dist[start as usize] = Some(0);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v as usize].unwrap();
            for &e in &self.vertices[v as usize].edges {
                if let Some(w) = self.other_end(e, v) {
                    if dist[w as usize].is_none() {
                        dist[w as usize] = Some(dv + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn q(&self) -> u32 {
        self.params.q
    }

    /// The tile across edge `e` from `t`, if generated.
    pub fn other_tile(&self, e: u32, t: u32) -> Option<u32> {
        let ts = self.edges[e as usize].tiles;
        if ts[0] == Some(t) {
            ts[1]
        } else if ts[1] == Some(t) {
            ts[0]
        } else {
            None
        }
    }

    /// The other endpoint of edge `e`, if generated.
    pub fn other_end(&self, e: u32, v: u32) -> Option<u32> {
        let ends = self.edges[e as usize].ends;
        if ends[0] == Some(v) {
            ends[1]
        } else if ends[1] == Some(v) {
            ends[0]
        } else {
            None
        }
    }

    /// Position of edge `e` in the boundary of tile `t`.
    pub fn edge_index_in_tile(&self, t: u32, e: u32) -> Option<usize> {
        self.tiles[t as usize].edges.iter().position(|&x| x == e)
    }

    /// Position of edge `e` in the rotation at vertex `v`.
    pub fn edge_index_at_vertex(&self, v: u32, e: u32) -> Option<usize> {
        self.vertices[v as usize].edges.iter().position(|&x| x == e)
    }

    /// The neighbour of `t` across its `j`-th edge.
    pub fn neighbor(&self, t: u32, j: usize) -> Option<u32> {
        let e = *self.tiles[t as usize].edges.get(j)?;
        self.other_tile(e, t)
    }

    /// The edge shared by two tiles, if they are adjacent.
    pub fn shared_edge(&self, a: u32, b: u32) -> Option<u32> {
        self.tiles[a as usize]
            .edges
            .iter()
            .copied()
            .find(|&e| self.other_tile(e, a) == Some(b))
    }

    /// A tile with all `p` edges and all `p` corners generated.
    pub fn tile_complete(&self, t: u32) -> bool {
        let tile = &self.tiles[t as usize];
        tile.edges.len() == self.params.p as usize && tile.vertices.iter().all(Option::is_some)
    }

    /// A vertex with all `q` edges and all `q` surrounding tiles generated.
    pub fn vertex_complete(&self, v: u32) -> bool {
        let vx = &self.vertices[v as usize];
        vx.edges.len() == self.params.q as usize && vx.tiles.iter().all(Option::is_some)
    }

    /// Largest `n` for which the count of tiles at distance `n` is final.
    pub fn count_radius(&self) -> u32 {
        match self.centering {
            Centering::Tile => self.depth,
            Centering::Vertex => {
                let half = self.params.p / 2;
                ((self.depth.saturating_sub(1)) / half).saturating_sub(1)
            }
        }
    }

    /// Largest tiling distance from the base tile up to which tiles, their
    /// corners and the structure around those corners are complete and
    /// class queries are trustworthy.
    pub fn trusted_radius(&self) -> u32 {
        match self.centering {
            Centering::Tile => self.depth.saturating_sub(self.params.margin()),
            Centering::Vertex => self.count_radius().saturating_sub(self.params.margin()),
        }
    }

    /// `N_td(n)`: number of tiles at tiling distance `n` from the base tile.
    pub fn tiles_at_distance(&self, n: u32) -> Result<u64> {
        if n > self.count_radius() {
            return Err(Error::OutOfDepth {
                needed: n,
                available: self.count_radius(),
            });
        }
        Ok(self
            .tile_distance
            .iter()
            .filter(|d| **d == Some(n))
            .count() as u64)
    }

    /// Tiles whose distance from the base tile is at most `r`.
    pub fn tiles_within(&self, r: u32) -> Vec<u32> {
        (0..self.tiles.len() as u32)
            .filter(|&t| matches!(self.tile_distance[t as usize], Some(d) if d <= r))
            .collect()
    }

    /// Fails with an out-of-depth error unless `t` lies within radius `r`
    /// and `r` is within the trusted radius.
    pub fn require_within(&self, t: u32, r: u32) -> Result<()> {
        let avail = self.trusted_radius();
        let d = self
            .tile_distance
            .get(t as usize)
            .copied()
            .flatten()
            .ok_or(Error::OutOfDepth {
                needed: u32::MAX,
                available: avail,
            })?;
        if d > r.min(avail) {
            return Err(Error::OutOfDepth {
                needed: d,
                available: avail,
            });
        }
        Ok(())
    }

    /// Distances of the corners of `t` from the base vertex, in boundary order.
    pub fn corner_distances(&self, t: u32) -> Option<Vec<u32>> {
        self.tiles[t as usize]
            .vertices
            .iter()
            .map(|v| v.and_then(|v| self.vertex_distance[v as usize]))
            .collect()
    }

    /// Structural self-check: degrees, face sizes and incidence symmetry.
    pub fn validate(&self) -> Result<()> {
        let (p, q) = (self.params.p as usize, self.params.q as usize);
        for (vi, v) in self.vertices.iter().enumerate() {
            if v.edges.len() > q || v.edges.len() != v.tiles.len() {
                return Err(Error::Inconsistent(format!("vertex {vi} has bad degree")));
            }
            for (i, &e) in v.edges.iter().enumerate() {
                if !self.edges[e as usize].ends.contains(&Some(vi as u32)) {
                    return Err(Error::Inconsistent(format!("edge {e} misses vertex {vi}")));
                }
                if let Some(t) = v.tiles[i] {
                    let tile = &self.tiles[t as usize];
                    let e2 = v.edges[(i + 1) % v.edges.len()];
                    if !tile.edges.contains(&e) || !tile.edges.contains(&e2) {
                        return Err(Error::Inconsistent(format!(
                            "corner tile {t} at vertex {vi} misses an edge"
                        )));
                    }
                }
            }
        }
        for (ti, t) in self.tiles.iter().enumerate() {
            if t.edges.len() > p || t.edges.len() != t.vertices.len() {
                return Err(Error::Inconsistent(format!("tile {ti} has bad size")));
            }
            for (j, &e) in t.edges.iter().enumerate() {
                if !self.edges[e as usize].tiles.contains(&Some(ti as u32)) {
                    return Err(Error::Inconsistent(format!("edge {e} misses tile {ti}")));
                }
                if let Some(v) = t.vertices[j] {
                    let e2 = t.edges[(j + 1) % t.edges.len()];
                    let ends = |x: u32| self.edges[x as usize].ends.contains(&Some(v));
                    if !ends(e) || !ends(e2) {
                        return Err(Error::Inconsistent(format!(
                            "corner {v} of tile {ti} is not on its edges"
                        )));
                    }
                }
            }
        }
        for t in 0..self.tiles.len() as u32 {
            if self.tile_complete(t) {
                for v in self.tiles[t as usize].vertices.iter().flatten() {
                    let vx = &self.vertices[*v as usize];
                    if vx.edges.len() == q && !vx.tiles.contains(&Some(t)) {
                        return Err(Error::Inconsistent(format!(
                            "vertex {v} does not list tile {t}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, q: u32) -> TilingParams {
        TilingParams::new(p, q).unwrap()
    }

    #[test]
    fn small_counts_and_validation() {
        let g = build_tiling(params(4, 6), 4).unwrap();
        g.validate().unwrap();
        let counts: Vec<u64> = (0..=4).map(|n| g.tiles_at_distance(n).unwrap()).collect();
        assert_eq!(counts, vec![1, 4, 12, 32, 84]);
        assert!(g.tiles_at_distance(5).is_err());
    }

    #[test]
    fn interior_regularity() {
        for (p, q) in [(4, 6), (3, 7), (7, 3), (5, 4), (4, 5)] {
            let g = build_tiling(params(p, q), 6).unwrap();
            g.validate().unwrap();
            for t in g.tiles_within(g.trusted_radius()) {
                assert!(g.tile_complete(t), "({p},{q}) tile {t}");
                for v in g.tiles[t as usize].vertices.iter().flatten() {
                    assert!(g.vertex_complete(*v));
                }
            }
        }
    }

    #[test]
    fn vertex_centered_structure() {
        let g = build_vertex_centered(params(4, 6), 4).unwrap();
        g.validate().unwrap();
        assert_eq!(g.vertices[0].edges.len(), 6);
        for t in &g.tiles {
            assert_eq!(t.edges.len(), 4);
        }
    }

    #[test]
    fn rejects_non_hyperbolic() {
        assert!(build_tiling(TilingParams { p: 4, q: 4 }, 2).is_err());
    }
}
