//! JSON documents and diagnostics.

use std::fmt;
use std::path::Path;

use eqtree::reduction::{Provenance, SimpleGraphImage};
use eqtree::{
    validate_automorphism, AutomorphismError, Color, ColoredTree, Edge, EquippedColoredTree, Mode,
    QuotientError, QuotientLoop, QuotientTree, SimpleGraph, TreeError, VertexPermutation,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Everything the CLI can fail with. `Input` maps to exit code 2, `Internal`
/// to exit code 3.
#[derive(Debug)]
pub enum CliError {
    Input {
        source: String,
        at: Option<String>,
        kind: &'static str,
        message: String,
    },
    Internal(String),
}

impl CliError {
    pub fn input(
        source: &str,
        at: Option<String>,
        kind: &'static str,
        message: impl Into<String>,
    ) -> Self {
        CliError::Input {
            source: source.to_string(),
            at,
            kind,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input {
                source,
                at: Some(at),
                kind,
                message,
            } => {
                write!(f, "error[{kind}]: {source}: {at}: {message}")
            }
            CliError::Input {
                source,
                at: None,
                kind,
                message,
            } => {
                write!(f, "error[{kind}]: {source}: {message}")
            }
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeDoc {
    Generic,
    MorseSmale,
}

impl From<ModeDoc> for Mode {
    fn from(m: ModeDoc) -> Mode {
        match m {
            ModeDoc::Generic => Mode::Generic,
            ModeDoc::MorseSmale => Mode::MorseSmale,
        }
    }
}

impl From<Mode> for ModeDoc {
    fn from(m: Mode) -> ModeDoc {
        match m {
            Mode::Generic => ModeDoc::Generic,
            Mode::MorseSmale => ModeDoc::MorseSmale,
        }
    }
}

/// Equipped tree on the wire. A missing `perm` means the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub n: usize,
    pub k: u32,
    pub mode: ModeDoc,
    pub edges: Vec<(usize, usize, Color)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopDoc {
    pub vertex: usize,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientDocument {
    pub m: usize,
    pub k: u32,
    pub weights: Vec<usize>,
    pub edges: Vec<(usize, usize, Color)>,
    #[serde(default, rename = "loop")]
    pub loop_: Option<LoopDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub nv: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Vec<ProvenanceDoc>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProvenanceDoc {
    Vertex { vertex: usize },
    Subdivision { edge: usize, position: usize },
    Cycle { vertex: usize, position: usize },
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(&name, None, "Io", e.to_string()))?;
    parse_json(&name, &text)
}

pub fn parse_json<T: DeserializeOwned>(name: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        let at = Some(format!("line {} column {}", e.line(), e.column()));
        let mut msg = e.to_string();
        // serde_json appends the position itself; keep it only once
        if let Some(cut) = msg.rfind(" at line ") {
            msg.truncate(cut);
        }
        CliError::input(name, at, "Parse", msg)
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("documents always serialize")
}

fn edge_at(i: usize) -> Option<String> {
    Some(format!("$.edges[{i}]"))
}

fn tree_error_at(e: &TreeError) -> Option<String> {
    Some(match e {
        TreeError::Empty | TreeError::TooManyVertices { .. } => "$.n".to_string(),
        TreeError::NoColors | TreeError::ModeColorCount(_) => "$.k".to_string(),
        TreeError::VertexOutOfRange { edge, .. }
        | TreeError::ColorOutOfRange { edge, .. }
        | TreeError::SelfLoop { edge, .. }
        | TreeError::DuplicateEdge { edge, .. } => return edge_at(*edge),
        TreeError::WrongEdgeCount { .. } | TreeError::Disconnected { .. } => "$.edges".to_string(),
    })
}

impl InstanceDocument {
    pub fn from_equipped(et: &EquippedColoredTree) -> Self {
        let t = et.tree();
        InstanceDocument {
            n: t.n(),
            k: t.k(),
            mode: t.mode().into(),
            edges: t.edges().iter().map(|e| (e.u, e.v, e.color)).collect(),
            perm: Some(et.perm().image().to_vec()),
        }
    }

    pub fn to_equipped(&self, source: &str) -> Result<EquippedColoredTree, CliError> {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v, c)| Edge::new(u, v, c))
            .collect();
        let tree = ColoredTree::new(self.n, self.k, self.mode.into(), edges)
            .map_err(|e| CliError::input(source, tree_error_at(&e), e.kind(), e.to_string()))?;
        let perm_error = |e: AutomorphismError| {
            CliError::input(source, Some("$.perm".to_string()), e.kind(), e.to_string())
        };
        let perm = match &self.perm {
            Some(image) => VertexPermutation::new(image.clone()).map_err(perm_error)?,
            None => VertexPermutation::identity(self.n),
        };
        if perm.len() != self.n {
            return Err(perm_error(AutomorphismError::WrongLength {
                got: perm.len(),
                n: self.n,
            }));
        }
        validate_automorphism(tree, perm).map_err(perm_error)
    }
}

impl QuotientDocument {
    pub fn from_quotient(q: &QuotientTree) -> Self {
        QuotientDocument {
            m: q.m(),
            k: q.k(),
            weights: q.weights().to_vec(),
            edges: q.qedges().to_vec(),
            loop_: q.loop_().map(|l| LoopDoc {
                vertex: l.vertex,
                color: l.color,
            }),
        }
    }

    pub fn to_quotient(&self, source: &str) -> Result<QuotientTree, CliError> {
        let lp = self.loop_.map(|l| QuotientLoop {
            vertex: l.vertex,
            color: l.color,
        });
        QuotientTree::new(self.m, self.k, self.weights.clone(), self.edges.clone(), lp)
            .map_err(|e| quotient_error(source, &e))
    }
}

/// Diagnostic for a quotient-level error; internal breaches become exit 3.
pub fn quotient_error(source: &str, e: &QuotientError) -> CliError {
    if e.is_internal() {
        return CliError::Internal(e.to_string());
    }
    let at = match e {
        QuotientError::Empty => Some("$.m".to_string()),
        QuotientError::WeightCount { .. }
        | QuotientError::CentralWeightNotOne { .. }
        | QuotientError::DivisibilityViolated { .. } => Some("$.weights".to_string()),
        QuotientError::ZeroWeight { vertex } => Some(format!("$.weights[{vertex}]")),
        QuotientError::VertexOutOfRange { edge, .. }
        | QuotientError::ColorOutOfRange { edge, .. } => edge_at(*edge),
        QuotientError::NotATree(_) => Some("$.edges".to_string()),
        QuotientError::BadLoop { .. } | QuotientError::LoopPresent => Some("$.loop".to_string()),
        QuotientError::WrongMode(_) => Some("$.mode".to_string()),
        _ => None,
    };
    CliError::input(source, at, e.kind(), e.to_string())
}

impl GraphDocument {
    pub fn from_image(img: &SimpleGraphImage) -> Self {
        let provenance = img
            .provenance
            .iter()
            .map(|p| match *p {
                Provenance::QuotientVertex(vertex) => ProvenanceDoc::Vertex { vertex },
                Provenance::Subdivision { qedge, position } => ProvenanceDoc::Subdivision {
                    edge: qedge,
                    position,
                },
                Provenance::Cycle { vertex, position } => ProvenanceDoc::Cycle { vertex, position },
            })
            .collect();
        GraphDocument {
            nv: img.graph.nv,
            edges: img.graph.edges.clone(),
            provenance: Some(provenance),
        }
    }

    pub fn to_graph(&self) -> SimpleGraph {
        SimpleGraph::new(self.nv, self.edges.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eqtree::samples;

    #[test]
    fn instance_round_trip() {
        let et = samples::path4_swap();
        let doc = InstanceDocument::from_equipped(&et);
        let text = to_json(&doc);
        let back: InstanceDocument = parse_json("t", &text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_equipped("t").unwrap(), et);
    }

    #[test]
    fn missing_perm_is_identity() {
        let doc: InstanceDocument =
            parse_json("t", r#"{"n":2,"k":1,"mode":"generic","edges":[[0,1,1]]}"#).unwrap();
        assert!(doc.to_equipped("t").unwrap().perm().is_identity());
    }

    #[test]
    fn unknown_field_rejected() {
        let err = parse_json::<InstanceDocument>(
            "t",
            r#"{"n":1,"k":1,"mode":"generic","edges":[],"colour":1}"#,
        )
        .unwrap_err();
        let text = err.to_string();
        assert!(text.contains("unknown field"), "{text}");
        assert!(text.contains("line 1 column"), "{text}");
    }

    #[test]
    fn positioned_semantic_error() {
        let doc: InstanceDocument = parse_json(
            "t",
            r#"{"n":3,"k":1,"mode":"generic","edges":[[0,1,1],[1,2,1],[2,0,1]]}"#,
        )
        .unwrap();
        let err = doc.to_equipped("t").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(
            err.to_string()
                .starts_with("error[WrongEdgeCount]: t: $.edges"),
            "{err}"
        );
    }

    #[test]
    fn quotient_and_graph_round_trip() {
        let q = samples::eight_vertex_quotient();
        let doc = QuotientDocument::from_quotient(&q);
        let back: QuotientDocument = parse_json("q", &to_json(&doc)).unwrap();
        assert_eq!(back.to_quotient("q").unwrap(), q);
        let img = eqtree::reduce_to_graph(&q).unwrap();
        let g = GraphDocument::from_image(&img);
        let gb: GraphDocument = parse_json("g", &to_json(&g)).unwrap();
        assert_eq!(gb, g);
        assert_eq!(gb.to_graph(), img.graph);
    }
}
