use serde::{Deserialize, Serialize};

use super::classes::{edge_geodesic_classes, zigzag_classes};
use super::graph::TilingGraph;
use super::labels::{label_edges, Frame};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Versioned JSON form of a tiling with its derived labels and classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub schema: u32,
    pub graph: TilingGraph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Option<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_geodesic_class: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zigzags: Option<Vec<[u32; 2]>>,
}

impl GraphDocument {
    /// Bundles the graph with the labels and classes its parity supports.
    pub fn from_graph(g: &TilingGraph) -> Result<Self> {
        let mut doc = GraphDocument {
            schema: SCHEMA_VERSION,
            graph: g.clone(),
            labels: None,
            edge_geodesic_class: None,
            zigzags: None,
        };
        if g.params.q_even() {
            if g.tile_complete(g.base_tile) {
                doc.labels = Some(label_edges(g, Frame::default())?.labels);
            }
            doc.edge_geodesic_class = Some(edge_geodesic_classes(g)?.class_of);
        } else {
            doc.zigzags = Some(zigzag_classes(g)?.zigzags_of);
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Inconsistent(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: GraphDocument =
            serde_json::from_str(s).map_err(|e| Error::Parameter(format!("bad document: {e}")))?;
        if doc.schema != SCHEMA_VERSION {
            return Err(Error::Unsupported(format!(
                "document schema {} (expected {SCHEMA_VERSION})",
                doc.schema
            )));
        }
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{build_tiling, TilingParams};

    #[test]
    fn round_trip() {
        for (p, q) in [(4, 6), (3, 7)] {
            let g = build_tiling(TilingParams::new(p, q).unwrap(), 3).unwrap();
            let doc = GraphDocument::from_graph(&g).unwrap();
            let s = doc.to_json().unwrap();
            assert!(s.starts_with("{\"schema\":1"));
            assert_eq!(GraphDocument::from_json(&s).unwrap(), doc);
        }
    }

    #[test]
    fn rejects_other_schema() {
        let g = build_tiling(TilingParams::new(4, 6).unwrap(), 1).unwrap();
        let s = GraphDocument::from_graph(&g)
            .unwrap()
            .to_json()
            .unwrap()
            .replacen("\"schema\":1", "\"schema\":9", 1);
        assert!(matches!(GraphDocument::from_json(&s), Err(Error::Unsupported(_))));
    }
}
