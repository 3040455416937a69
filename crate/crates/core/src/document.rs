//! Canonical JSON documents for colored graphs.
//!
//! A document is one line of compact JSON plus a newline:
//!
//! ```text
//! {"colors":3,"vertices":["x0","x1"],"edges":[[0,1,0],[0,1,1],[0,1,2]]}
//! ```
//!
//! Edges are `[u, v, color]` with indices into `vertices`. The canonical
//! form has `u < v` and edges sorted ascending; `decode` accepts any order
//! and `encode` always writes the canonical one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, GraphBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub colors: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 3]>,
}

impl GraphDocument {
    pub fn from_graph(g: &ColoredGraph) -> Self {
        GraphDocument {
            colors: g.color_count(),
            vertices: g.names().to_vec(),
            edges: g.edges().into_iter().map(|(u, v, c)| [u, v, c]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<ColoredGraph> {
        let mut b = GraphBuilder::with_vertices(self.colors, self.vertices.iter().cloned())?;
        for &[u, v, c] in &self.edges {
            b.add_edge(u, v, c)?;
        }
        Ok(b.build())
    }
}

pub fn encode(g: &ColoredGraph) -> String {
    let mut text = serde_json::to_string(&GraphDocument::from_graph(g)).expect("documents always serialize");
    text.push('\n');
    text
}

pub fn decode(text: &str) -> Result<ColoredGraph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_graph()
}
