use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::graph::TilingGraph;
use crate::error::{Error, Result};

/// Edge geodesics of an even-`q` tiling: maximal chains of edges that pass
/// straight through each vertex (offset `q/2` in the rotation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeGeodesicClasses {
    pub class_of: Vec<u32>,
    /// Each class as an ordered edge chain.
    pub classes: Vec<Vec<u32>>,
}

/// Zigzags of an odd-`q` tiling: edge chains turning alternately to the
/// opposite-left and opposite-right edge at successive vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigzagClasses {
    /// The two zigzags through each edge, by alternation phase.
    pub zigzags_of: Vec<[u32; 2]>,
    /// Each zigzag as an ordered edge chain.
    pub zigzags: Vec<Vec<u32>>,
}

fn compact(uf: &UnionFind<usize>, n: usize) -> (Vec<u32>, usize) {
    let mut ids = HashMap::new();
    let mut out = Vec::with_capacity(n);
    for x in 0..n {
        let r = uf.find(x);
        let next = ids.len() as u32;
        out.push(*ids.entry(r).or_insert(next));
    }
    (out, ids.len())
}

/// Orders the members of each class along the chain given by `links`.
fn order_chains(members: Vec<Vec<usize>>, links: &HashMap<usize, Vec<usize>>) -> Vec<Vec<usize>> {
    members
        .into_iter()
        .map(|m| {
            if m.len() <= 1 {
                return m;
            }
            let start = m
                .iter()
                .copied()
                .find(|x| links.get(x).map_or(0, Vec::len) < 2)
                .unwrap_or(m[0]);
            let mut chain = vec![start];
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                let next = links
                    .get(&cur)
                    .and_then(|ns| ns.iter().copied().find(|&n| n != prev && n != cur));
                match next {
                    Some(n) if n != start && chain.len() < m.len() => {
                        chain.push(n);
                        prev = cur;
                        cur = n;
                    }
                    _ => break,
                }
            }
            chain
        })
        .collect()
}

pub fn edge_geodesic_classes(g: &TilingGraph) -> Result<EdgeGeodesicClasses> {
    if !g.params.q_even() {
        return Err(Error::Unsupported("edge geodesics need even q".into()));
    }
    let q = g.q() as usize;
    let h = q / 2;
    let n = g.edges.len();
    let mut uf = UnionFind::new(n);
    let mut links: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..g.vertices.len() as u32 {
        let es = &g.vertices[v as usize].edges;
        if es.len() != q {
            continue;
        }
        for i in 0..h {
            let (a, b) = (es[i] as usize, es[i + h] as usize);
            uf.union(a, b);
            links.entry(a).or_default().push(b);
            links.entry(b).or_default().push(a);
        }
    }
    let (class_of, count) = compact(&uf, n);
    let mut members = vec![Vec::new(); count];
    for (e, &c) in class_of.iter().enumerate() {
        members[c as usize].push(e);
    }
    let classes = order_chains(members, &links)
        .into_iter()
        .map(|c| c.into_iter().map(|e| e as u32).collect())
        .collect();
    Ok(EdgeGeodesicClasses { class_of, classes })
}

/// Rotation offsets of the two turns of a zigzag at a degree-`q` vertex.
pub fn zigzag_offsets(q: u32) -> [usize; 2] {
    [(q as usize - 1) / 2, (q as usize + 1) / 2]
}

pub fn zigzag_classes(g: &TilingGraph) -> Result<ZigzagClasses> {
    if g.params.q_even() {
        return Err(Error::Unsupported("zigzags need odd q".into()));
    }
    let q = g.q() as usize;
    let off = zigzag_offsets(g.q());
    let n = 2 * g.edges.len();
    let mut uf = UnionFind::new(n);
    let mut links: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..g.vertices.len() as u32 {
        let es = &g.vertices[v as usize].edges;
        if es.len() != q {
            continue;
        }
        for i in 0..q {
            let a = 2 * es[i] as usize;
            let b = 2 * es[(i + off[0]) % q] as usize + 1;
            uf.union(a, b);
            links.entry(a).or_default().push(b);
            links.entry(b).or_default().push(a);
        }
    }
    let (elem_class, count) = compact(&uf, n);
    let mut members = vec![Vec::new(); count];
    for (x, &c) in elem_class.iter().enumerate() {
        members[c as usize].push(x);
    }
    let zigzags_of = (0..g.edges.len())
        .map(|e| [elem_class[2 * e], elem_class[2 * e + 1]])
        .collect();
    let zigzags = order_chains(members, &links)
        .into_iter()
        .map(|c| c.into_iter().map(|x| (x / 2) as u32).collect())
        .collect();
    Ok(ZigzagClasses {
        zigzags_of,
        zigzags,
    })
}

/// The combinatorial reflection across the line through an edge,
/// restricted to complete tiles whose images are also complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub tiles: Vec<Option<u32>>,
    pub edges: Vec<Option<u32>>,
}

/// Reflects the generated region across the line containing edge `e`.
///
/// A tile `X` mapped to `Y` carries an orientation-reversing index map
/// `i -> c - i (mod p)`; the map is propagated through shared edges and any
/// disagreement is reported as an inconsistency.
pub fn edge_reflection(g: &TilingGraph, e: u32) -> Result<Reflection> {
    let p = g.p() as usize;
    let [Some(a), Some(b)] = g.edges[e as usize].tiles else {
        return Err(Error::Precondition(format!("edge {e} has only one tile")));
    };
    if !g.tile_complete(a) || !g.tile_complete(b) {
        return Err(Error::Precondition(format!("tiles at edge {e} are incomplete")));
    }
    let ja = g.edge_index_in_tile(a, e).unwrap();
    let jb = g.edge_index_in_tile(b, e).unwrap();
    let mut tiles: Vec<Option<u32>> = vec![None; g.tiles.len()];
    let mut shift: Vec<usize> = vec![0; g.tiles.len()];
    let mut edges: Vec<Option<u32>> = vec![None; g.edges.len()];
    let mut queue = std::collections::VecDeque::new();
    for (x, y) in [(a, b), (b, a)] {
        tiles[x as usize] = Some(y);
        shift[x as usize] = (ja + jb) % p;
        queue.push_back(x);
    }
    while let Some(x) = queue.pop_front() {
        let y = tiles[x as usize].unwrap();
        let c = shift[x as usize];
        for i in 0..p {
            let k = (c + p - i) % p;
            let ex = g.tiles[x as usize].edges[i];
            let ey = g.tiles[y as usize].edges[k];
            match edges[ex as usize] {
                None => edges[ex as usize] = Some(ey),
                Some(old) if old != ey => {
                    return Err(Error::Inconsistent(format!(
                        "edge {ex} reflected to both {old} and {ey}"
                    )))
                }
                _ => {}
            }
            let (Some(x2), Some(y2)) = (g.other_tile(ex, x), g.other_tile(ey, y)) else {
                continue;
            };
            if !g.tile_complete(x2) || !g.tile_complete(y2) {
                continue;
            }
            let c2 = (g.edge_index_in_tile(x2, ex).unwrap() + g.edge_index_in_tile(y2, ey).unwrap()) % p;
            match tiles[x2 as usize] {
                None => {
                    tiles[x2 as usize] = Some(y2);
                    shift[x2 as usize] = c2;
                    queue.push_back(x2);
                }
                Some(old) if old != y2 || shift[x2 as usize] != c2 => {
                    return Err(Error::Inconsistent(format!(
                        "tile {x2} reflected inconsistently"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(Reflection { tiles, edges })
}
