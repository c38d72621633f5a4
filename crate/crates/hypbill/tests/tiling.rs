use std::collections::{HashMap, HashSet};

use hypbill::tiling::{
    build_tiling, build_vertex_centered, classify_corner_pattern, edge_geodesic_classes,
    edge_reflection, label_edges, label_edges_reversed, vertex_tile_map, zigzag_classes,
    DistancePattern, Frame, GraphDocument, TilingParams,
};
use proptest::prelude::*;

fn params(p: u32, q: u32) -> TilingParams {
    TilingParams::new(p, q).unwrap()
}

#[test]
fn stage_zero_is_the_base_vertex() {
    let g = build_vertex_centered(params(4, 6), 0).unwrap();
    assert_eq!(g.vertices.len(), 1);
    assert!(g.tiles.is_empty());
}

#[test]
fn new_vertices_have_small_valence() {
    let cases = [((4, 6), 2, [1, 2]), ((3, 8), 3, [3, 4]), ((5, 5), 4, [1, 2]), ((3, 7), 5, [3, 4])];
    for ((p, q), depth, allowed) in cases {
        let g = build_vertex_centered(params(p, q), depth).unwrap();
        let sv = g.stage_valence.as_ref().unwrap();
        for (v, d) in g.vertex_distance.iter().enumerate() {
            if d.unwrap() >= 1 {
                assert!(allowed.contains(&sv[v]), "({p},{q}) vertex {v} valence {}", sv[v]);
            }
        }
    }
}

#[test]
fn corner_distance_patterns() {
    for (p, q) in [(4, 6), (5, 4), (3, 7), (7, 3), (6, 4), (5, 5), (3, 8)] {
        let g = build_vertex_centered(params(p, q), 7).unwrap();
        let mut seen = HashSet::new();
        for t in 0..g.tiles.len() as u32 {
            let d = g.corner_distances(t).unwrap();
            let pat = classify_corner_pattern(&d)
                .unwrap_or_else(|| panic!("({p},{q}) tile {t} has distances {d:?}"));
            seen.insert(pat);
        }
        if p % 2 == 0 {
            assert_eq!(seen, HashSet::from([DistancePattern::Even]));
        } else {
            assert!(seen.contains(&DistancePattern::OddSingleMin), "({p},{q})");
            assert!(seen.contains(&DistancePattern::OddPairedMin), "({p},{q})");
        }
    }
}

fn is_dihedral_labeling(ls: &[u8]) -> bool {
    let p = ls.len();
    let up = (0..p).all(|i| ls[(i + 1) % p] == ls[i] % p as u8 + 1);
    let down = (0..p).all(|i| ls[i] == ls[(i + 1) % p] % p as u8 + 1);
    up || down
}

#[test]
fn labels_are_reflection_consistent() {
    for (p, q) in [(4, 8), (3, 8), (5, 4), (4, 6), (6, 6)] {
        let g = build_tiling(params(p, q), 5).unwrap();
        let a = label_edges(&g, Frame::default()).unwrap();
        let b = label_edges_reversed(&g, Frame::default()).unwrap();
        assert_eq!(a, b, "({p},{q}) labels depend on propagation order");
        for t in 0..g.tiles.len() as u32 {
            if !g.tile_complete(t) {
                continue;
            }
            let ls: Vec<u8> = g.tiles[t as usize].edges.iter().map(|&e| a.label(e).unwrap()).collect();
            assert!(is_dihedral_labeling(&ls), "({p},{q}) tile {t}: {ls:?}");
        }
        // base tile reads 1..p counter-clockwise
        let base: Vec<u8> = g.tiles[0].edges.iter().map(|&e| a.label(e).unwrap()).collect();
        assert_eq!(base, (1..=p as u8).collect::<Vec<_>>());
    }
}

#[test]
fn edge_geodesics_meet_at_most_once() {
    for (p, q) in [(4, 8), (5, 4), (3, 8), (4, 6)] {
        let g = build_tiling(params(p, q), 4).unwrap();
        let c = edge_geodesic_classes(&g).unwrap();
        let mut vertex_classes: HashMap<u32, HashSet<u32>> = HashMap::new();
        for (e, &cls) in c.class_of.iter().enumerate() {
            for v in g.edges[e].ends.iter().flatten() {
                vertex_classes.entry(*v).or_default().insert(cls);
            }
        }
        let mut shared: HashMap<(u32, u32), u32> = HashMap::new();
        for classes in vertex_classes.values() {
            let mut cs: Vec<u32> = classes.iter().copied().collect();
            cs.sort();
            for i in 0..cs.len() {
                for j in i + 1..cs.len() {
                    *shared.entry((cs[i], cs[j])).or_default() += 1;
                }
            }
        }
        assert!(shared.values().all(|&n| n == 1), "({p},{q})");
        // chains are really chains: consecutive edges share a vertex
        for chain in &c.classes {
            for w in chain.windows(2) {
                let a = g.edges[w[0] as usize].ends;
                let b = g.edges[w[1] as usize].ends;
                assert!(a.iter().flatten().any(|v| b.contains(&Some(*v))));
            }
        }
    }
}

#[test]
fn zigzags_pair_up_on_edges() {
    for (p, q) in [(3, 7), (4, 5), (7, 3), (5, 5)] {
        let g = build_tiling(params(p, q), 5).unwrap();
        let z = zigzag_classes(&g).unwrap();
        let inner: Vec<u32> = (0..g.edges.len() as u32)
            .filter(|&e| g.edges[e as usize].ends.iter().flatten().all(|&v| g.vertex_complete(v)))
            .collect();
        for &e in &inner {
            let [a, b] = z.zigzags_of[e as usize];
            assert_ne!(a, b, "({p},{q}) edge {e} on one zigzag twice");
        }
        let mut shared: HashMap<(u32, u32), u32> = HashMap::new();
        for &e in &inner {
            let [a, b] = z.zigzags_of[e as usize];
            *shared.entry((a.min(b), a.max(b))).or_default() += 1;
        }
        assert!(shared.values().all(|&n| n == 1), "({p},{q})");
    }
}

#[test]
fn reflection_across_edge_geodesics() {
    for (p, q) in [(4, 8), (5, 4), (4, 6)] {
        // images of tiles near the base stay within distance 4
        let g = build_tiling(params(p, q), 4 + params(p, q).margin()).unwrap();
        let labels = label_edges(&g, Frame::default()).unwrap();
        let classes = edge_geodesic_classes(&g).unwrap();
        for t in g.tiles_within(1) {
            for &e in &g.tiles[t as usize].edges {
                let r = edge_reflection(&g, e).unwrap();
                let class = classes.class_of[e as usize];
                for (x, y) in r.edges.iter().enumerate() {
                    let Some(y) = *y else { continue };
                    assert_eq!(labels.labels[x], labels.labels[y as usize]);
                    if classes.class_of[x] == class {
                        assert_eq!(y as usize, x, "({p},{q}) class edge moved");
                    }
                    assert_eq!(r.edges[y as usize], Some(x as u32));
                }
                for x in g.tiles_within(1) {
                    let y = r.tiles[x as usize].unwrap_or_else(|| panic!("({p},{q}) t {t} e {e} x {x} mapped {}", r.tiles.iter().flatten().count()));
                    assert_eq!(r.tiles[y as usize], Some(x));
                }
            }
        }
    }
}

#[test]
fn vertex_to_tile_maps() {
    for (p, q) in [(4, 6), (3, 7), (3, 8), (5, 4), (4, 5)] {
        let depth = 8;
        let g = build_vertex_centered(params(p, q), depth).unwrap();
        let m = vertex_tile_map(&g);
        let mut fibers: HashMap<u32, u32> = HashMap::new();
        for (t, v) in m.psi.iter().enumerate() {
            if let Some(v) = v {
                assert!(g.tiles[t].vertices.contains(&Some(*v)));
                *fibers.entry(*v).or_default() += 1;
            }
        }
        assert!(fibers.values().all(|&n| n <= q), "({p},{q}) psi fiber too large");
        let reach = depth.saturating_sub(p / 2 + 1);
        for (v, d) in g.vertex_distance.iter().enumerate() {
            if d.unwrap() <= reach {
                assert!(fibers.contains_key(&(v as u32)), "({p},{q}) vertex {v} missed by psi");
            }
        }
    }
    for (p, q) in [(4, 6), (5, 4), (4, 5), (6, 4)] {
        let g = build_tiling(params(p, q), 8).unwrap();
        let m = vertex_tile_map(&g);
        let mut fibers: HashMap<u32, u32> = HashMap::new();
        for (v, t) in m.phi.iter().enumerate() {
            if let Some(t) = t {
                assert!(g.vertices[v].tiles.contains(&Some(*t)));
                *fibers.entry(*t).or_default() += 1;
            }
        }
        assert!(fibers.values().all(|&n| n <= p), "({p},{q}) phi fiber too large");
        for t in g.tiles_within(8 - q / 2 - 1) {
            assert!(fibers.contains_key(&t), "({p},{q}) tile {t} missed by phi");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn builds_are_deterministic(p in 3u32..8, q in 3u32..8, depth in 0u32..4) {
        prop_assume!(TilingParams::new(p, q).is_ok());
        let a = build_tiling(params(p, q), depth).unwrap();
        let b = build_tiling(params(p, q), depth).unwrap();
        a.validate().unwrap();
        let ja = GraphDocument::from_graph(&a).and_then(|d| d.to_json());
        let jb = GraphDocument::from_graph(&b).and_then(|d| d.to_json());
        prop_assert_eq!(a, b);
        prop_assert_eq!(ja, jb);
    }

    #[test]
    fn interior_is_regular(p in 3u32..8, q in 3u32..8) {
        prop_assume!(TilingParams::new(p, q).is_ok());
        let g = build_tiling(params(p, q), 5).unwrap();
        for t in g.tiles_within(g.trusted_radius()) {
            prop_assert_eq!(g.tiles[t as usize].edges.len(), p as usize);
            for v in g.tiles[t as usize].vertices.iter() {
                let v = v.unwrap();
                prop_assert_eq!(g.vertices[v as usize].edges.len(), q as usize);
            }
        }
    }
}
