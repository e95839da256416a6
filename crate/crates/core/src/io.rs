//! JSON graph files.
//!
//! ```json
//! {"vertices": [{"id": "v1", "genus": 0, "m": 4, "area": "8/1"}],
//!  "edges": [{"u": "v1", "v": "v2", "sign": -1}]}
//! ```

use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ConfigGraph, Edge, Sign, Vertex};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed graph file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("vertex `{vertex}`: area `{value}` is not a rational `p/q`")]
    BadArea { vertex: String, value: String },
    #[error("edge {edge}: sign must be 1 or -1, got {value}")]
    BadSign { edge: usize, value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub id: String,
    pub genus: i64,
    pub m: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area: Option<String>,
}

fn plus() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: String,
    pub v: String,
    #[serde(default = "plus")]
    pub sign: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    #[serde(default)]
    pub edges: Vec<EdgeRecord>,
}

fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph files always serialize")
    }

    pub fn to_graph(&self) -> Result<ConfigGraph, FormatError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let area = v
                    .area
                    .as_ref()
                    .map(|a| {
                        BigRational::from_str(a.trim()).map_err(|_| FormatError::BadArea {
                            vertex: v.id.clone(),
                            value: a.clone(),
                        })
                    })
                    .transpose()?;
                Ok(Vertex {
                    id: v.id.clone(),
                    genus: v.genus,
                    m: v.m,
                    area,
                    auxiliary: false,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let sign = Sign::from_value(e.sign).ok_or(FormatError::BadSign { edge: k, value: e.sign })?;
                Ok(Edge {
                    u: e.u.clone(),
                    v: e.v.clone(),
                    sign,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(ConfigGraph::from_parts(vertices, edges))
    }

    pub fn from_graph(g: &ConfigGraph) -> Self {
        GraphFile {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexRecord {
                    id: v.id.clone(),
                    genus: v.genus,
                    m: v.m,
                    area: v.area.as_ref().map(format_rational),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    u: e.u.clone(),
                    v: e.v.clone(),
                    sign: e.sign.value(),
                })
                .collect(),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<ConfigGraph, FormatError> {
    GraphFile::parse(text)?.to_graph()
}

pub fn serialize_graph(g: &ConfigGraph) -> String {
    GraphFile::from_graph(g).to_json()
}

pub fn read_graph(path: &Path) -> Result<ConfigGraph, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_graph(&text)
}
