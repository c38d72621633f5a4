use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::graph::TilingGraph;
use crate::error::{Error, Result};

/// A labeling of one tile's edges by `1..=p`: the edge at boundary index
/// `anchor` carries label 1 and labels increase in direction `orient`
/// (`+1` counter-clockwise, `-1` clockwise).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frame {
    pub anchor: u32,
    pub orient: i8,
}

impl Default for Frame {
    fn default() -> Self {
        Frame {
            anchor: 0,
            orient: 1,
        }
    }
}

impl Frame {
    /// Label of the edge at boundary index `j`.
    pub fn label(&self, j: usize, p: usize) -> u8 {
        let d = (j as i64 - self.anchor as i64) * self.orient as i64;
        (d.rem_euclid(p as i64) + 1) as u8
    }

    /// Boundary index of the edge carrying `label`.
    pub fn index_of(&self, label: u8, p: usize) -> usize {
        let j = self.anchor as i64 + self.orient as i64 * (label as i64 - 1);
        j.rem_euclid(p as i64) as usize
    }

    /// The frame of the neighbouring tile obtained by reflecting across the
    /// shared edge, which sits at index `ja` here and at `jb` over there.
    pub fn reflect(&self, ja: usize, jb: usize, p: usize) -> Frame {
        let k = self.label(ja, p) as i64;
        let orient = -self.orient;
        let anchor = (jb as i64 - orient as i64 * (k - 1)).rem_euclid(p as i64) as u32;
        Frame { anchor, orient }
    }
}

/// Reflection-consistent edge labels of an even-`q` tiling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabeling {
    pub labels: Vec<Option<u8>>,
    pub frames: Vec<Option<Frame>>,
}

impl EdgeLabeling {
    pub fn label(&self, e: u32) -> Option<u8> {
        self.labels[e as usize]
    }

    pub fn frame(&self, t: u32) -> Option<Frame> {
        self.frames[t as usize]
    }
}

/// Propagates `base` from the base tile by reflection across edges.
///
/// Only defined for even `q`: going around a vertex reflects a frame `q`
/// times, which returns it to itself exactly when `q` is even.
pub fn label_edges(g: &TilingGraph, base: Frame) -> Result<EdgeLabeling> {
    label_edges_in_order(g, base, false)
}

/// Same as [`label_edges`] but visiting neighbours in reverse boundary
/// order, so the propagation tree differs. Useful to check that the result
/// does not depend on construction order.
pub fn label_edges_reversed(g: &TilingGraph, base: Frame) -> Result<EdgeLabeling> {
    label_edges_in_order(g, base, true)
}

fn label_edges_in_order(g: &TilingGraph, base: Frame, reverse: bool) -> Result<EdgeLabeling> {
    if !g.params.q_even() {
        return Err(Error::Unsupported(
            "global edge labels exist only for even q; use path-local frames".into(),
        ));
    }
    let p = g.p() as usize;
    let mut labels = vec![None; g.edges.len()];
    let mut frames: Vec<Option<Frame>> = vec![None; g.tiles.len()];
    let root = g.base_tile;
    if !g.tile_complete(root) {
        return Err(Error::OutOfDepth {
            needed: 1,
            available: 0,
        });
    }
    frames[root as usize] = Some(base);
    let mut queue = VecDeque::from([root]);
    while let Some(a) = queue.pop_front() {
        let fa = frames[a as usize].unwrap();
        let tile = &g.tiles[a as usize];
        let order: Vec<usize> = if reverse {
            (0..p).rev().collect()
        } else {
            (0..p).collect()
        };
        for ja in order {
            let e = tile.edges[ja];
            let k = fa.label(ja, p);
            match labels[e as usize] {
                None => labels[e as usize] = Some(k),
                Some(old) if old != k => {
                    return Err(Error::Inconsistent(format!(
                        "edge {e} labeled {old} and {k} from different sides"
                    )))
                }
                _ => {}
            }
            let Some(b) = g.other_tile(e, a) else { continue };
            if !g.tile_complete(b) {
                continue;
            }
            let jb = g.edge_index_in_tile(b, e).unwrap();
            let fb = fa.reflect(ja, jb, p);
            match frames[b as usize] {
                None => {
                    frames[b as usize] = Some(fb);
                    queue.push_back(b);
                }
                Some(old) if old != fb => {
                    return Err(Error::Inconsistent(format!(
                        "tile {b} reached with two different frames"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(EdgeLabeling { labels, frames })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{build_tiling, TilingParams};

    #[test]
    fn frame_round_trip() {
        for p in 3..9usize {
            for anchor in 0..p as u32 {
                for orient in [-1i8, 1] {
                    let f = Frame { anchor, orient };
                    for k in 1..=p as u8 {
                        assert_eq!(f.label(f.index_of(k, p), p), k);
                    }
                    for ja in 0..p {
                        for jb in 0..p {
                            let r = f.reflect(ja, jb, p);
                            assert_eq!(r.label(jb, p), f.label(ja, p));
                            assert_eq!(r.reflect(jb, ja, p), f);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn odd_q_is_unsupported() {
        let g = build_tiling(TilingParams::new(4, 7).unwrap(), 3).unwrap();
        assert!(matches!(
            label_edges(&g, Frame::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn labels_alternate_around_vertices() {
        for (p, q) in [(4, 8), (5, 4), (3, 8), (6, 6), (4, 6)] {
            let g = build_tiling(TilingParams::new(p, q).unwrap(), 6).unwrap();
            let l = label_edges(&g, Frame::default()).unwrap();
            for v in 0..g.vertices.len() as u32 {
                if !g.vertex_complete(v) {
                    continue;
                }
                let ls: Vec<Option<u8>> =
                    g.vertices[v as usize].edges.iter().map(|&e| l.label(e)).collect();
                if ls.iter().any(Option::is_none) {
                    continue;
                }
                for i in 0..ls.len() {
                    assert_eq!(ls[i], ls[(i + 2) % ls.len()], "({p},{q}) vertex {v}");
                    assert_ne!(ls[i], ls[(i + 1) % ls.len()]);
                }
            }
        }
    }
}
