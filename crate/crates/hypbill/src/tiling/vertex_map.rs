use serde::{Deserialize, Serialize};

use super::graph::TilingGraph;

/// Shape of the corner distances around a tile, measured from a base vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistancePattern {
    /// `p` even: `k, k+1, .., k+p/2, .., k+1`.
    Even,
    /// `p` odd: one corner at `k`, two at each of `k+1 ..= k+(p-1)/2`.
    OddSingleMin,
    /// `p` odd: two corners at each of `k ..= k+(p-3)/2`, one at `k+(p-1)/2`.
    OddPairedMin,
}

/// Classifies a cyclic sequence of corner distances, or returns `None` if it
/// has neither admissible shape.
pub fn classify_corner_pattern(d: &[u32]) -> Option<DistancePattern> {
    let p = d.len();
    let k = *d.iter().min()?;
    let expect_even = |h: usize| -> Vec<u32> {
        (0..p)
            .map(|i| k + if i <= h { i } else { p - i } as u32)
            .collect()
    };
    let matches = |target: &[u32]| (0..p).any(|s| (0..p).all(|i| d[(s + i) % p] == target[i]));
    if p % 2 == 0 {
        return matches(&expect_even(p / 2)).then_some(DistancePattern::Even);
    }
    let h = (p - 1) / 2;
    // single minimum: k, k+1, .., k+h, k+h, .., k+1
    let single: Vec<u32> = (0..p)
        .map(|i| k + if i <= h { i } else { p - i } as u32)
        .collect();
    // paired minimum: k, k+1, .., k+h, k+h-1, .., k
    let paired: Vec<u32> = (0..p)
        .map(|i| k + if i <= h { i } else { p - 1 - i } as u32)
        .collect();
    if matches(&single) {
        Some(DistancePattern::OddSingleMin)
    } else if matches(&paired) {
        Some(DistancePattern::OddPairedMin)
    } else {
        None
    }
}

/// Picks the unique minimum of a cyclic sequence, or the first of two
/// cyclically adjacent minima in counter-clockwise order.
fn first_min(vals: &[u32]) -> Option<usize> {
    let n = vals.len();
    let m = *vals.iter().min()?;
    let mins: Vec<usize> = (0..n).filter(|&i| vals[i] == m).collect();
    match mins.as_slice() {
        [i] => Some(*i),
        [i, j] if (i + 1) % n == *j => Some(*i),
        [i, j] if (j + 1) % n == *i => Some(*j),
        _ => None,
    }
}

/// The map from tiles to vertices: each complete tile goes to its unique
/// corner closest to the base vertex, or the first of two adjacent closest
/// corners counter-clockwise.
pub fn psi(g: &TilingGraph) -> Vec<Option<u32>> {
    (0..g.tiles.len() as u32)
        .map(|t| {
            if !g.tile_complete(t) {
                return None;
            }
            let d = g.corner_distances(t)?;
            let i = first_min(&d)?;
            g.tiles[t as usize].vertices[i]
        })
        .collect()
}

/// The dual map from vertices to tiles, choosing the surrounding tile
/// closest to the base tile by the same rule.
pub fn phi(g: &TilingGraph) -> Vec<Option<u32>> {
    (0..g.vertices.len() as u32)
        .map(|v| {
            if !g.vertex_complete(v) {
                return None;
            }
            let ts: Vec<u32> = g.vertices[v as usize].tiles.iter().map(|t| t.unwrap()).collect();
            let d: Option<Vec<u32>> = ts.iter().map(|&t| g.tile_distance[t as usize]).collect();
            let i = first_min(&d?)?;
            Some(ts[i])
        })
        .collect()
}

/// Both maps between tiles and vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexTileMap {
    /// Vertex to tile, indexed by vertex.
    pub phi: Vec<Option<u32>>,
    /// Tile to vertex, indexed by tile.
    pub psi: Vec<Option<u32>>,
}

pub fn vertex_tile_map(g: &TilingGraph) -> VertexTileMap {
    VertexTileMap {
        phi: phi(g),
        psi: psi(g),
    }
}
