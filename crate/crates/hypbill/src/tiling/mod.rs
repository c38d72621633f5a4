//! Combinatorial generation of `(p, q)`-tilings.

mod classes;
mod construction;
mod document;
mod graph;
mod labels;
mod params;
mod vertex_map;

pub use classes::{
    edge_geodesic_classes, edge_reflection, zigzag_classes, zigzag_offsets, EdgeGeodesicClasses,
    Reflection, ZigzagClasses,
};
pub use construction::Construction;
pub use document::{GraphDocument, SCHEMA_VERSION};
pub use graph::{build_tiling, build_vertex_centered, Centering, Edge, Tile, TilingGraph, Vertex};
pub use labels::{label_edges, label_edges_reversed, EdgeLabeling, Frame};
pub use params::TilingParams;
pub use vertex_map::{
    classify_corner_pattern, phi, psi, vertex_tile_map, DistancePattern, VertexTileMap,
};
