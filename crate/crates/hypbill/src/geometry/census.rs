//! Counting vertex-to-vertex segments by combinatorial length.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::hyperboloid::distance;
use super::trace::{trace_limited, GeodesicSegment, Nudge};
use super::DiskRealization;
use crate::error::{Error, Result};

/// Segments from one vertex to the vertices around it, bucketed by `cl`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalCensus {
    pub p: u32,
    pub q: u32,
    pub vertex: u32,
    pub kmax: u32,
    /// `n_cl[k]`: segments with combinatorial length `k`, for `k <= kmax`.
    pub n_cl: Vec<u64>,
    /// `n_prim[k]`: those among them meeting no other vertex.
    pub n_prim: Vec<u64>,
    /// Primitive segments that meet their middle edge at a right angle.
    /// As billiard paths they bounce straight back and are their own reverse.
    pub self_reverse: Vec<u64>,
    /// Generalized diagonals of the polygon: `gd[0] = p` and
    /// `gd[k] = p (n_prim[k] + self_reverse[k]) / 2q`.
    pub gd: Vec<u64>,
    /// Neighbors joined to the vertex by a single edge, which are skipped.
    pub edge_neighbors: u64,
    /// Segments left out of the counts because they passed within `1e-7`
    /// of a vertex without meeting it.
    pub excluded: u64,
}

/// Traces the segments from `v` to every vertex that can be reached with
/// combinatorial length at most `kmax`.
pub fn diagonal_census(r: &DiskRealization, v: u32, kmax: u32) -> Result<DiagonalCensus> {
    let g = &r.graph;
    let (p, q) = (g.p(), g.q());
    if kmax == 0 {
        return Err(Error::Precondition("kmax must be positive".into()));
    }
    let depth_error = || Error::OutOfDepth {
        needed: kmax,
        available: r.realized_radius(),
    };
    if (v as usize) >= g.vertices.len() || !g.vertex_complete(v) {
        return Err(depth_error());
    }
    // tiles within kmax - 1 steps of the star of v
    let star: Vec<u32> = g.vertices[v as usize].tiles.iter().map(|t| t.unwrap()).collect();
    let mut dist = vec![u32::MAX; g.tiles.len()];
    let mut queue = VecDeque::new();
    for &t in &star {
        dist[t as usize] = 0;
        queue.push_back(t);
    }
    let mut region = Vec::new();
    while let Some(t) = queue.pop_front() {
        if !r.is_realized(t) || !g.tile_complete(t) {
            return Err(depth_error());
        }
        region.push(t);
        let d = dist[t as usize];
        if d + 1 >= kmax {
            continue;
        }
        for &e in &g.tiles[t as usize].edges {
            let n = g.other_tile(e, t).ok_or_else(depth_error)?;
            if dist[n as usize] == u32::MAX {
                dist[n as usize] = d + 1;
                queue.push_back(n);
            }
        }
    }
    let neighbors: BTreeSet<u32> = g.vertices[v as usize]
        .edges
        .iter()
        .filter_map(|&e| g.other_end(e, v))
        .collect();
    let targets: BTreeSet<u32> = region
        .iter()
        .flat_map(|&t| g.tiles[t as usize].vertices.iter().flatten().copied())
        .filter(|&u| u != v && !neighbors.contains(&u))
        .collect();
    let k = kmax as usize;
    let mut census = DiagonalCensus {
        p,
        q,
        vertex: v,
        kmax,
        n_cl: vec![0; k + 1],
        n_prim: vec![0; k + 1],
        self_reverse: vec![0; k + 1],
        gd: vec![0; k + 1],
        edge_neighbors: neighbors.len() as u64,
        excluded: 0,
    };
    for u in targets {
        let seg = GeodesicSegment::between_vertices(v, u);
        let Some(t) = trace_limited(r, &seg, Nudge::default(), kmax - 1)? else {
            continue;
        };
        if t.near_misses > 0 {
            census.excluded += 1;
            continue;
        }
        let cl = t.cl as usize;
        census.n_cl[cl] += 1;
        if t.is_primitive() {
            census.n_prim[cl] += 1;
            if is_self_reverse(r, &t, v, u)? {
                census.self_reverse[cl] += 1;
            }
        }
    }
    census.gd[0] = u64::from(p);
    for j in 1..=k {
        // n_prim[j] / q oriented diagonals leave each corner; reversal pairs
        // them up except for the self-reverse ones
        if census.n_prim[j] % u64::from(q) != 0 || census.self_reverse[j] % u64::from(q) != 0 {
            return Err(Error::Inconsistent(format!(
                "segments of length {j} are not symmetric under rotation about the vertex"
            )));
        }
        let num = u64::from(p) * (census.n_prim[j] + census.self_reverse[j]);
        let den = 2 * u64::from(q);
        if num % den != 0 {
            return Err(Error::Inconsistent(format!(
                "{} primitive segments of length {j} do not spread evenly over tiles",
                census.n_prim[j]
            )));
        }
        census.gd[j] = num / den;
    }
    Ok(census)
}

/// True when the reflection across the middle crossed edge swaps the ends.
fn is_self_reverse(r: &DiskRealization, t: &super::Trace, v: u32, u: u32) -> Result<bool> {
    if t.cl % 2 != 0 {
        return Ok(false);
    }
    let mid = t.path.edges[t.path.edges.len() / 2];
    let tile = t.path.tiles[t.path.edges.len() / 2];
    let j = r.graph.edge_index_in_tile(tile, mid).unwrap();
    let (xv, xu) = (r.vertices[v as usize].unwrap(), r.vertices[u as usize].unwrap());
    let image = r.reflect_across_edge(tile, j, &xv)?;
    Ok(distance(&image, &xu) < 1e-7)
}

/// Segment complexity `p(n) = 2 p(1) + n (p(2) - p(1)) + sum_{k=3..n} sum_{j=3..k} gd(j)`.
pub fn complexity_p_n(census: &DiagonalCensus, p1: i128, p2: i128, n: u32) -> Result<i128> {
    if n > census.kmax {
        return Err(Error::OutOfDepth {
            needed: n,
            available: census.kmax,
        });
    }
    let mut total = 2 * p1 + i128::from(n) * (p2 - p1);
    let mut inner = 0i128;
    for k in 3..=n as usize {
        inner += i128::from(census.gd[k]);
        total += inner;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(gd: Vec<u64>) -> DiagonalCensus {
        DiagonalCensus {
            p: 4,
            q: 6,
            vertex: 0,
            kmax: gd.len() as u32 - 1,
            n_cl: vec![0; gd.len()],
            n_prim: vec![0; gd.len()],
            self_reverse: vec![0; gd.len()],
            gd,
            edge_neighbors: 0,
            excluded: 0,
        }
    }

    #[test]
    fn telescoping_differences() {
        let c = census(vec![4, 2, 8, 5, 7, 11]);
        let vals: Vec<i128> = (1..=5).map(|n| complexity_p_n(&c, 10, 30, n).unwrap()).collect();
        // the second difference of p(n) at n is gd(n) for n >= 3
        for n in 3..=5usize {
            let d2 = vals[n - 1] - 2 * vals[n - 2] + vals[n - 3];
            assert_eq!(d2, c.gd[n] as i128, "n={n}");
        }
        assert_eq!(vals[1] - vals[0], 20);
        assert!(matches!(complexity_p_n(&c, 1, 2, 6), Err(Error::OutOfDepth { .. })));
    }
}
