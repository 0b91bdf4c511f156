//! JSON file formats for graphs, schemes and tori.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::multigraph::{Dart, MultiGraph};
use crate::ribbon::EmbeddingScheme;
use crate::torus_lab::{Bump, FlatTorus};

/// Vertex and edge ids may be written as strings or integers.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
enum Id {
    Int(i64),
    Str(String),
}

impl Id {
    fn into_label(self) -> String {
        match self {
            Id::Int(i) => i.to_string(),
            Id::Str(s) => s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub ends: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
}

#[derive(Deserialize)]
struct RawEdge {
    id: Option<Id>,
    ends: [Id; 2],
    length: Option<f64>,
}

#[derive(Deserialize)]
struct RawGraph {
    vertices: Vec<Id>,
    edges: Vec<RawEdge>,
    rotation: Option<BTreeMap<String, Vec<String>>>,
    signature: Option<BTreeMap<String, u8>>,
}

/// A graph file, or a scheme file when `rotation` is present.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<BTreeMap<String, u8>>,
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphInput {
    pub graph: MultiGraph,
    pub scheme: Option<EmbeddingScheme>,
}

pub fn dart_name(g: &MultiGraph, d: Dart) -> String {
    format!(
        "{}{}",
        g.edge_label(d.edge()),
        if d.is_plus() { '+' } else { '-' }
    )
}

/// Accepts `e+`, `e-` and `e−` (U+2212).
pub fn parse_dart(g: &MultiGraph, name: &str) -> Result<Dart, CliError> {
    let bad = || CliError::Format(format!("unknown dart {name:?}"));
    let sign = name.chars().last().ok_or_else(bad)?;
    let minus = match sign {
        '+' => false,
        '-' | '\u{2212}' => true,
        _ => return Err(bad()),
    };
    let label = &name[..name.len() - sign.len_utf8()];
    let e = g.edge_by_label(label).ok_or_else(bad)?;
    Ok(Dart::new(e, minus))
}

pub fn parse_graph(text: &str) -> Result<GraphInput, CliError> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))?;
    let vertex_labels: Vec<String> = raw.vertices.into_iter().map(Id::into_label).collect();
    let index: BTreeMap<&str, usize> = vertex_labels
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let mut ends = Vec::with_capacity(raw.edges.len());
    let mut edge_labels = Vec::with_capacity(raw.edges.len());
    let mut lengths = Vec::new();
    for (k, e) in raw.edges.into_iter().enumerate() {
        let label = e.id.map_or_else(|| format!("e{k}"), Id::into_label);
        let [a, b] = e.ends.map(Id::into_label);
        let lookup = |v: &str| {
            index.get(v).copied().ok_or_else(|| {
                CliError::Format(format!("edge {label:?} names unknown vertex {v:?}"))
            })
        };
        ends.push((lookup(&a)?, lookup(&b)?));
        if let Some(l) = e.length {
            lengths.push(l);
        }
        edge_labels.push(label);
    }
    let m = ends.len();
    let mut graph =
        MultiGraph::new(vertex_labels.len(), ends)?.with_labels(vertex_labels, edge_labels)?;
    if !lengths.is_empty() {
        if lengths.len() != m {
            return Err(CliError::Format(format!(
                "{} of {m} edges have a length; give all or none",
                lengths.len()
            )));
        }
        graph = graph.with_lengths(lengths)?;
    }
    let scheme = match raw.rotation {
        None => {
            if raw.signature.is_some() {
                return Err(CliError::Format("a signature needs a rotation".into()));
            }
            None
        }
        Some(rot) => {
            let mut rotation = vec![None; graph.vertex_count()];
            for (v, darts) in rot {
                let vi = graph.vertex_by_label(&v).ok_or_else(|| {
                    CliError::Format(format!("rotation names unknown vertex {v:?}"))
                })?;
                let darts = darts
                    .iter()
                    .map(|d| parse_dart(&graph, d))
                    .collect::<Result<Vec<_>, _>>()?;
                rotation[vi] = Some(darts);
            }
            let rotation = rotation
                .into_iter()
                .enumerate()
                .map(|(v, r)| {
                    r.ok_or_else(|| {
                        CliError::Format(format!(
                            "rotation misses vertex {:?}",
                            graph.vertex_label(v)
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut signature = vec![false; m];
            for (e, bit) in raw.signature.unwrap_or_default() {
                let ei = graph.edge_by_label(&e).ok_or_else(|| {
                    CliError::Format(format!("signature names unknown edge {e:?}"))
                })?;
                signature[ei] = match bit {
                    0 => false,
                    1 => true,
                    _ => {
                        return Err(CliError::Format(format!(
                            "signature of {e:?} must be 0 or 1, got {bit}"
                        )))
                    }
                };
            }
            Some(EmbeddingScheme::new(graph.clone(), rotation, signature)?)
        }
    };
    Ok(GraphInput { graph, scheme })
}

pub fn graph_json(g: &MultiGraph) -> GraphJson {
    GraphJson {
        vertices: g.vertex_labels().to_vec(),
        edges: (0..g.edge_count())
            .map(|e| {
                let [a, b] = g.ends(e);
                EdgeJson {
                    id: g.edge_label(e).to_string(),
                    ends: [g.vertex_label(a).to_string(), g.vertex_label(b).to_string()],
                    length: g.lengths().map(|l| l[e]),
                }
            })
            .collect(),
        rotation: None,
        signature: None,
    }
}

pub fn scheme_json(s: &EmbeddingScheme) -> GraphJson {
    let g = s.graph();
    let mut out = graph_json(g);
    out.rotation = Some(
        (0..g.vertex_count())
            .map(|v| {
                let darts = s.rotation(v).iter().map(|&d| dart_name(g, d)).collect();
                (g.vertex_label(v).to_string(), darts)
            })
            .collect(),
    );
    out.signature = Some(
        (0..g.edge_count())
            .map(|e| (g.edge_label(e).to_string(), u8::from(s.signature(e))))
            .collect(),
    );
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusJson {
    pub basis: [[f64; 2]; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bump: Option<Bump>,
}

pub fn parse_torus(text: &str) -> Result<FlatTorus, CliError> {
    let raw: TorusJson = serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))?;
    let t = FlatTorus::new(raw.basis[0], raw.basis[1])?;
    Ok(match raw.bump {
        Some(b) => t.with_bump(b)?,
        None => t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::catalog;

    #[test]
    fn integer_ids_and_loops() {
        let text = r#"{"vertices":[0,1],"edges":[{"id":"a","ends":[0,0],"length":1},{"ends":[0,1],"length":2.5},{"id":7,"ends":[1,1],"length":1}]}"#;
        let g = parse_graph(text).unwrap().graph;
        assert_eq!(g.edge_labels(), ["a", "e1", "7"]);
        assert!(g.is_loop(0) && g.is_loop(2));
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.lengths(), Some(&[1.0, 2.5, 1.0][..]));
    }

    #[test]
    fn partial_lengths_are_rejected() {
        let text = r#"{"vertices":["u","v"],"edges":[{"id":"a","ends":["u","v"],"length":1},{"id":"b","ends":["u","v"]}]}"#;
        assert!(matches!(parse_graph(text), Err(CliError::Format(_))));
    }

    #[test]
    fn dart_names() {
        let g = catalog::rose(1);
        let e = g.edge_label(0).to_string();
        assert_eq!(parse_dart(&g, &format!("{e}+")).unwrap(), Dart::plus(0));
        assert_eq!(parse_dart(&g, &format!("{e}-")).unwrap(), Dart::minus(0));
        assert_eq!(
            parse_dart(&g, &format!("{e}\u{2212}")).unwrap(),
            Dart::minus(0)
        );
        assert!(parse_dart(&g, "zz+").is_err());
        assert!(parse_dart(&g, "").is_err());
    }

    #[test]
    fn bad_signature_bit() {
        let g = catalog::rose(1);
        let mut j = scheme_json(&EmbeddingScheme::default_for(g));
        let e = j.edges[0].id.clone();
        j.signature.as_mut().unwrap().insert(e, 2);
        let text = serde_json::to_string(&j).unwrap();
        assert!(matches!(parse_graph(&text), Err(CliError::Format(_))));
    }

    #[test]
    fn torus_file() {
        let t = parse_torus(
            r#"{"basis":[[1,0],[0,1]],"bump":{"center":[0.5,0.5],"radius":0.1,"height":0.5}}"#,
        )
        .unwrap();
        assert!(!t.is_flat());
        assert!(parse_torus(r#"{"basis":[[1,0],[2,0]]}"#).is_err());
    }
}
