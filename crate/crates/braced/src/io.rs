//! JSON file formats.
//!
//! A braced triangulation is `{"n": 6, "rotation": [[...], ...], "braces": [[a, b], ...]}`;
//! a plain graph is `{"n": 6, "edges": [[a, b], ...]}`; a placement is
//! `{"coords": [[x, y, z(, w)], ...]}`.

use std::fs;
use std::path::{Path, PathBuf};

use braced_core::braced::{BracedError, ReductionStep, ReductionTrace};
use braced_core::enumerate::{Catalog, CatalogEntry};
use braced_core::surface::{edge, Vertex};
use braced_core::{BracedTriangulation, Graph, GraphError, Triangulation};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Unreadable or malformed input.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {reason}")]
    Shape { path: PathBuf, reason: String },
}

/// Well-formed input describing an invalid object.
#[derive(Debug, Error)]
pub enum BuildError {
    #[error("declared n = {declared} but the rotation lists {actual} vertices")]
    VertexCount { declared: usize, actual: usize },
    #[error(transparent)]
    Braced(#[from] BracedError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracedJson {
    pub n: usize,
    pub rotation: Vec<Vec<Vertex>>,
    #[serde(default)]
    pub braces: Vec<[Vertex; 2]>,
}

impl BracedJson {
    pub fn build(&self) -> Result<BracedTriangulation, BuildError> {
        if self.rotation.len() != self.n {
            return Err(BuildError::VertexCount { declared: self.n, actual: self.rotation.len() });
        }
        let t = Triangulation::new(self.rotation.clone()).map_err(BracedError::from)?;
        Ok(BracedTriangulation::new(t, self.braces.iter().map(|&[a, b]| edge(a, b)))?)
    }
}

impl From<&BracedTriangulation> for BracedJson {
    fn from(g: &BracedTriangulation) -> Self {
        BracedJson {
            n: g.n(),
            rotation: g.tri().rotation(),
            braces: g.braces().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

/// Either an explicit edge list or a braced triangulation, read as its graph `P ∪ B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphJson {
    Edges { n: usize, edges: Vec<[Vertex; 2]> },
    Braced(BracedJson),
}

impl GraphJson {
    pub fn build(&self) -> Result<Graph, BuildError> {
        match self {
            GraphJson::Edges { n, edges } => Ok(Graph::new(*n, edges.iter().map(|&[a, b]| (a, b)))?),
            GraphJson::Braced(b) => Ok(b.build()?.graph()),
        }
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson::Edges { n: g.n(), edges: g.edges().iter().map(|&(a, b)| [a, b]).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementJson {
    pub coords: Vec<Vec<f64>>,
}

impl PlacementJson {
    /// Coordinates as fixed-width points, or `None` if some point has another length.
    pub fn points<const D: usize>(&self) -> Option<Vec<[f64; D]>> {
        self.coords.iter().map(|c| <[f64; D]>::try_from(c.as_slice()).ok()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepJson {
    pub pre_n: usize,
    pub kept: Vertex,
    pub removed: Vertex,
    pub removed_rotation: Vec<Vertex>,
    pub removed_brace_ends: Vec<Vertex>,
    pub split_at: Vertex,
    pub arc_from: Vertex,
    pub arc_to: Vertex,
}

impl From<&ReductionStep> for StepJson {
    fn from(s: &ReductionStep) -> Self {
        StepJson {
            pre_n: s.pre_n,
            kept: s.kept,
            removed: s.removed,
            removed_rotation: s.removed_rotation.clone(),
            removed_brace_ends: s.removed_brace_ends.clone(),
            split_at: s.split_at,
            arc_from: s.arc_from,
            arc_to: s.arc_to,
        }
    }
}

impl From<&StepJson> for ReductionStep {
    fn from(s: &StepJson) -> Self {
        ReductionStep {
            pre_n: s.pre_n,
            kept: s.kept,
            removed: s.removed,
            removed_rotation: s.removed_rotation.clone(),
            removed_brace_ends: s.removed_brace_ends.clone(),
            split_at: s.split_at,
            arc_from: s.arc_from,
            arc_to: s.arc_to,
        }
    }
}

/// Output of a reduction: the irreducible reached and the contractions, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionJson {
    pub irreducible: BracedJson,
    pub catalog_name: Option<String>,
    pub steps: Vec<StepJson>,
}

impl ReductionJson {
    pub fn trace(&self) -> ReductionTrace {
        ReductionTrace { steps: self.steps.iter().map(ReductionStep::from).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntryJson {
    pub name: String,
    pub code: String,
    #[serde(flatten)]
    pub graph: BracedJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub b: usize,
    pub members: Vec<CatalogEntryJson>,
}

impl From<&CatalogEntry> for CatalogEntryJson {
    fn from(e: &CatalogEntry) -> Self {
        CatalogEntryJson { name: e.name.clone(), code: e.code.to_hex(), graph: BracedJson::from(&e.graph) }
    }
}

impl From<&Catalog> for CatalogJson {
    fn from(c: &Catalog) -> Self {
        CatalogJson { b: c.b, members: c.members.iter().map(CatalogEntryJson::from).collect() }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, ParseError> {
    let text = fs::read_to_string(path).map_err(|source| ParseError::Read { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| ParseError::Json { path: path.into(), source })
}

pub fn read_placement<const D: usize>(path: &Path) -> Result<Vec<[f64; D]>, ParseError> {
    let p: PlacementJson = read_json(path)?;
    p.points().ok_or_else(|| ParseError::Shape { path: path.into(), reason: format!("every point needs {D} coordinates") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braced_round_trip() {
        let t = Triangulation::octahedron();
        let braces = braced_core::enumerate::non_edges(&t);
        let g = BracedTriangulation::new(t, braces[..2].to_vec()).unwrap();
        let j = BracedJson::from(&g);
        let text = serde_json::to_string(&j).unwrap();
        let back: BracedJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap(), g);
    }

    #[test]
    fn graph_formats() {
        let e: GraphJson = serde_json::from_str(r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(e.build().unwrap().num_edges(), 2);
        let b: GraphJson =
            serde_json::from_str(r#"{"n": 4, "rotation": [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]}"#).unwrap();
        assert_eq!(b.build().unwrap().num_edges(), 6);
        let bad: GraphJson = serde_json::from_str(r#"{"n": 2, "edges": [[0, 0]]}"#).unwrap();
        assert!(bad.build().is_err());
    }

    #[test]
    fn placement_shapes() {
        let p: PlacementJson = serde_json::from_str(r#"{"coords": [[1, 0, 0, 2], [0, 1, 0, 0]]}"#).unwrap();
        assert_eq!(p.points::<4>().unwrap()[0], [1.0, 0.0, 0.0, 2.0]);
        assert!(p.points::<3>().is_none());
    }
}
