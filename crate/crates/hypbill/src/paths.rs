//! Tiling paths, crossing counts and minimality.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tiling::{edge_geodesic_classes, zigzag_classes, TilingGraph};

/// A sequence of edge-adjacent tiles with the edge crossed at each step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TilingPath {
    pub tiles: Vec<u32>,
    pub edges: Vec<u32>,
}

impl TilingPath {
    pub fn single(t: u32) -> Self {
        TilingPath {
            tiles: vec![t],
            edges: Vec::new(),
        }
    }

    /// Builds a path from its tiles, looking up the shared edges.
    pub fn from_tiles(g: &TilingGraph, tiles: Vec<u32>) -> Result<Self> {
        if tiles.is_empty() {
            return Err(Error::Parameter("a path needs at least one tile".into()));
        }
        let edges = tiles
            .windows(2)
            .map(|w| {
                g.shared_edge(w[0], w[1]).ok_or_else(|| {
                    Error::Parameter(format!("tiles {} and {} are not adjacent", w[0], w[1]))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(TilingPath { tiles, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> u32 {
        self.tiles[0]
    }

    pub fn end(&self) -> u32 {
        *self.tiles.last().unwrap()
    }

    pub fn has_backtracking(&self) -> bool {
        self.tiles.windows(3).any(|w| w[0] == w[2])
    }
}

/// Crossing classes of the tiling: edge geodesics (even `q`) or zigzags
/// (odd `q`), with the classes crossed when stepping over each edge.
#[derive(Clone, Debug)]
pub struct CrossingClasses {
    per_edge: Vec<Vec<u32>>,
}

impl CrossingClasses {
    pub fn new(g: &TilingGraph) -> Result<Self> {
        let per_edge = if g.params.q_even() {
            edge_geodesic_classes(g)?
                .class_of
                .into_iter()
                .map(|c| vec![c])
                .collect()
        } else {
            zigzag_classes(g)?
                .zigzags_of
                .into_iter()
                .map(|z| z.to_vec())
                .collect()
        };
        Ok(CrossingClasses { per_edge })
    }

    pub fn of_edge(&self, e: u32) -> &[u32] {
        &self.per_edge[e as usize]
    }
}

/// Number of crossings of each class along a path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingProfile {
    pub per_class: BTreeMap<u32, u32>,
}

impl CrossingProfile {
    pub fn total(&self) -> u32 {
        self.per_class.values().sum()
    }

    pub fn doubled(&self) -> Option<u32> {
        self.per_class.iter().find(|(_, &n)| n >= 2).map(|(&c, _)| c)
    }
}

pub fn crossing_profile(classes: &CrossingClasses, path: &TilingPath) -> CrossingProfile {
    let mut per_class = BTreeMap::new();
    for &e in &path.edges {
        for &c in classes.of_edge(e) {
            *per_class.entry(c).or_insert(0) += 1;
        }
    }
    CrossingProfile { per_class }
}

fn require_trusted(g: &TilingGraph, t: u32) -> Result<()> {
    g.require_within(t, g.trusted_radius())
}

/// Tiling distance by breadth-first search in the generated region.
pub fn tiling_distance(g: &TilingGraph, a: u32, b: u32) -> Result<u32> {
    require_trusted(g, a)?;
    require_trusted(g, b)?;
    g.tile_bfs(a)[b as usize].ok_or(Error::OutOfDepth {
        needed: u32::MAX,
        available: g.trusted_radius(),
    })
}

/// A minimal path from `a` to `b` found by breadth-first search.
pub fn shortest_path(g: &TilingGraph, a: u32, b: u32) -> Result<TilingPath> {
    require_trusted(g, a)?;
    require_trusted(g, b)?;
    let mut prev: Vec<Option<u32>> = vec![None; g.tiles.len()];
    let mut seen = vec![false; g.tiles.len()];
    seen[a as usize] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(t) = queue.pop_front() {
        if t == b {
            break;
        }
        for &e in &g.tiles[t as usize].edges {
            if let Some(u) = g.other_tile(e, t) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    prev[u as usize] = Some(t);
                    queue.push_back(u);
                }
            }
        }
    }
    let mut tiles = vec![b];
    let mut cur = b;
    while cur != a {
        cur = prev[cur as usize].ok_or(Error::OutOfDepth {
            needed: u32::MAX,
            available: g.trusted_radius(),
        })?;
        tiles.push(cur);
    }
    tiles.reverse();
    TilingPath::from_tiles(g, tiles)
}

/// Parity of class crossings from the base tile, along a breadth-first
/// tree. Crossing parity between two tiles is path independent, so the
/// separating classes of `a` and `b` are the symmetric difference of their
/// sets.
#[derive(Clone, Debug)]
pub struct SideTable {
    odd: Vec<Option<BTreeSet<u32>>>,
    radius: u32,
}

impl SideTable {
    pub fn new(g: &TilingGraph, classes: &CrossingClasses) -> Self {
        let mut odd: Vec<Option<BTreeSet<u32>>> = vec![None; g.tiles.len()];
        odd[g.base_tile as usize] = Some(BTreeSet::new());
        let mut queue = VecDeque::from([g.base_tile]);
        while let Some(t) = queue.pop_front() {
            for &e in &g.tiles[t as usize].edges {
                let Some(u) = g.other_tile(e, t) else { continue };
                if odd[u as usize].is_some() {
                    continue;
                }
                let mut s = odd[t as usize].clone().unwrap();
                for &c in classes.of_edge(e) {
                    if !s.remove(&c) {
                        s.insert(c);
                    }
                }
                odd[u as usize] = Some(s);
                queue.push_back(u);
            }
        }
        SideTable {
            odd,
            radius: g.trusted_radius(),
        }
    }

    pub fn separating(&self, g: &TilingGraph, a: u32, b: u32) -> Result<BTreeSet<u32>> {
        g.require_within(a, self.radius)?;
        g.require_within(b, self.radius)?;
        let sa = self.odd[a as usize].as_ref().unwrap();
        let sb = self.odd[b as usize].as_ref().unwrap();
        Ok(sa.symmetric_difference(sb).copied().collect())
    }
}

/// Classes separating two tiles: edge geodesics for even `q`, zigzags for
/// odd `q`.
pub fn separating_classes(g: &TilingGraph, a: u32, b: u32) -> Result<BTreeSet<u32>> {
    let classes = CrossingClasses::new(g)?;
    SideTable::new(g, &classes).separating(g, a, b)
}

/// Why a path is not minimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// A class crossed at steps `first` and `second` (0-based).
    DoubledClass { class: u32, first: usize, second: usize },
    /// The endpoints are closer than the path length.
    Shortcut { distance: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minimality {
    pub minimal: bool,
    pub length: usize,
    pub distance: u32,
    pub witness: Option<Witness>,
}

fn first_double(classes: &CrossingClasses, path: &TilingPath) -> Option<(u32, usize, usize)> {
    let mut first_step: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, &e) in path.edges.iter().enumerate() {
        for &c in classes.of_edge(e) {
            if let Some(&s) = first_step.get(&c) {
                return Some((c, s, i));
            }
            first_step.insert(c, i);
        }
    }
    None
}

/// Decides minimality by double crossings and cross-checks against the
/// breadth-first distance of the endpoints.
pub fn is_minimal(g: &TilingGraph, path: &TilingPath) -> Result<Minimality> {
    is_minimal_with(g, &CrossingClasses::new(g)?, path)
}

/// [`is_minimal`] with precomputed crossing classes.
pub fn is_minimal_with(g: &TilingGraph, classes: &CrossingClasses, path: &TilingPath) -> Result<Minimality> {
    let distance = tiling_distance(g, path.start(), path.end())?;
    let double = first_double(classes, path);
    let by_length = path.len() == distance as usize;
    if double.is_none() != by_length {
        return Err(Error::Inconsistent(format!(
            "crossing count and distance disagree on a path of length {}",
            path.len()
        )));
    }
    let witness = match double {
        Some((class, first, second)) => Some(Witness::DoubledClass {
            class,
            first,
            second,
        }),
        None if !by_length => Some(Witness::Shortcut { distance }),
        None => None,
    };
    Ok(Minimality {
        minimal: by_length,
        length: path.len(),
        distance,
        witness,
    })
}

/// Removes two crossings of `class` by reflecting the tiles between them
/// across the class (even `q`). The result is two steps shorter and has the
/// same endpoints.
pub fn shorten_by_reflection(g: &TilingGraph, path: &TilingPath, class: u32) -> Result<TilingPath> {
    if !g.params.q_even() {
        return Err(Error::Unsupported("reflection shortening needs even q".into()));
    }
    let classes = CrossingClasses::new(g)?;
    let steps: Vec<usize> = (0..path.len())
        .filter(|&i| classes.of_edge(path.edges[i]).contains(&class))
        .take(2)
        .collect();
    let [s, j] = steps[..] else {
        return Err(Error::Precondition(format!("class {class} is not crossed twice")));
    };
    let p = g.p() as usize;
    let idx = |t: u32, e: u32| g.edge_index_in_tile(t, e).unwrap();
    // x runs over the segment between the crossings, y over its mirror image
    let mut x = path.tiles[s + 1];
    let mut y = path.tiles[s];
    let mut c = (idx(x, path.edges[s]) + idx(y, path.edges[s])) % p;
    let mut mirrored = vec![y];
    for t in s + 1..j {
        let e = path.edges[t];
        if !g.tile_complete(y) {
            return Err(Error::OutOfDepth {
                needed: g.tile_distance[y as usize].unwrap_or(u32::MAX),
                available: g.trusted_radius(),
            });
        }
        let ey = g.tiles[y as usize].edges[(c + p - idx(x, e)) % p];
        let x2 = path.tiles[t + 1];
        let y2 = g.other_tile(ey, y).ok_or(Error::OutOfDepth {
            needed: g.tile_distance[y as usize].unwrap_or(0) + 1,
            available: g.trusted_radius(),
        })?;
        c = (idx(x2, e) + idx(y2, ey)) % p;
        x = x2;
        y = y2;
        mirrored.push(y);
    }
    if y != path.tiles[j + 1] {
        return Err(Error::Inconsistent("reflected segment does not close up".into()));
    }
    let mut tiles = path.tiles[..s].to_vec();
    tiles.extend(mirrored);
    tiles.extend_from_slice(&path.tiles[j + 2..]);
    TilingPath::from_tiles(g, tiles)
}

/// Repeats [`shorten_by_reflection`] until no class is crossed twice.
pub fn shorten_fully(g: &TilingGraph, path: &TilingPath) -> Result<(TilingPath, usize)> {
    let classes = CrossingClasses::new(g)?;
    let mut cur = path.clone();
    let mut rounds = 0;
    while let Some((class, _, _)) = first_double(&classes, &cur) {
        cur = shorten_by_reflection(g, &cur, class)?;
        rounds += 1;
    }
    Ok((cur, rounds))
}

/// True when the path never backtracks, never crosses the edge geodesic
/// `class`, and every tile has a corner on it.
pub fn is_fellow_traveling(g: &TilingGraph, path: &TilingPath, class: u32) -> Result<bool> {
    let classes = edge_geodesic_classes(g)?;
    if path.has_backtracking() {
        return Ok(false);
    }
    if path.edges.iter().any(|&e| classes.class_of[e as usize] == class) {
        return Ok(false);
    }
    let on_class: BTreeSet<u32> = classes
        .classes
        .get(class as usize)
        .ok_or_else(|| Error::Parameter(format!("no class {class}")))?
        .iter()
        .flat_map(|&e| g.edges[e as usize].ends.into_iter().flatten())
        .collect();
    Ok(path.tiles.iter().all(|&t| {
        g.tiles[t as usize]
            .vertices
            .iter()
            .flatten()
            .any(|v| on_class.contains(v))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{build_tiling, TilingParams};

    fn graph(p: u32, q: u32, depth: u32) -> TilingGraph {
        build_tiling(TilingParams::new(p, q).unwrap(), depth).unwrap()
    }

    #[test]
    fn trivial_distances() {
        let g = graph(4, 6, 7);
        assert_eq!(tiling_distance(&g, 0, 0).unwrap(), 0);
        let n = g.neighbor(0, 2).unwrap();
        assert_eq!(tiling_distance(&g, 0, n).unwrap(), 1);
        assert!(separating_classes(&g, 3, 3).unwrap().is_empty());
        assert_eq!(separating_classes(&g, 0, n).unwrap().len(), 1);
    }

    #[test]
    fn backtrack_is_not_minimal() {
        let g = graph(4, 8, 7);
        let b = g.neighbor(0, 0).unwrap();
        let path = TilingPath::from_tiles(&g, vec![0, b, 0]).unwrap();
        let m = is_minimal(&g, &path).unwrap();
        assert!(!m.minimal);
        assert!(matches!(m.witness, Some(Witness::DoubledClass { first: 0, second: 1, .. })));
        let class = match m.witness.unwrap() {
            Witness::DoubledClass { class, .. } => class,
            _ => unreachable!(),
        };
        let short = shorten_by_reflection(&g, &path, class).unwrap();
        assert_eq!(short, TilingPath::single(0));
        assert!(!is_fellow_traveling(&g, &path, class + 1).unwrap());
    }

    #[test]
    fn shortening_needs_a_double_crossing() {
        let g = graph(4, 8, 7);
        let b = g.neighbor(0, 0).unwrap();
        let path = TilingPath::from_tiles(&g, vec![0, b]).unwrap();
        let c = CrossingClasses::new(&g).unwrap().of_edge(path.edges[0])[0];
        assert!(matches!(
            shorten_by_reflection(&g, &path, c),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rejects_non_adjacent_tiles() {
        let g = graph(4, 6, 5);
        let far = g.tiles_within(2).into_iter().find(|&t| g.tile_distance[t as usize] == Some(2)).unwrap();
        assert!(TilingPath::from_tiles(&g, vec![0, far]).is_err());
    }
}
