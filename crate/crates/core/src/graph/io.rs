//! Graph input formats: a JSON document, or a plain edge list.

use serde::{Deserialize, Serialize};

use super::{Coloring, GraphError, VertexId, WitnessedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub id: String,
    pub ends: [String; 2],
}

/// `{"vertices": [...], "witnesses": [{"id": ..., "ends": [u, v]}, ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub witnesses: Vec<WitnessJson>,
}

impl TryFrom<&GraphJson> for WitnessedGraph {
    type Error = GraphError;

    fn try_from(doc: &GraphJson) -> Result<Self, Self::Error> {
        let mut g = WitnessedGraph::with_vertex_names(doc.vertices.iter().cloned())?;
        for w in &doc.witnesses {
            let [a, b] = &w.ends;
            let u = g.vertex_by_name(a).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let v = g.vertex_by_name(b).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            g.add_named_witness(w.id.clone(), u, v)?;
        }
        Ok(g)
    }
}

impl From<&WitnessedGraph> for GraphJson {
    fn from(g: &WitnessedGraph) -> Self {
        GraphJson {
            vertices: g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
            witnesses: g
                .witnesses()
                .map(|w| {
                    let (a, b) = g.ends(w);
                    WitnessJson {
                        id: g.witness_name(w).to_string(),
                        ends: [g.vertex_name(a).to_string(), g.vertex_name(b).to_string()],
                    }
                })
                .collect(),
        }
    }
}

impl WitnessedGraph {
    pub fn from_json_str(text: &str) -> Result<Self, GraphError> {
        let doc: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        WitnessedGraph::try_from(&doc)
    }

    /// One `u v` pair per line; vertices in order of first appearance,
    /// witnesses named `w0`, `w1`, ... in line order. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn from_edge_list_str(text: &str) -> Result<Self, GraphError> {
        let mut names: Vec<String> = Vec::new();
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = fields[..] else {
                return Err(GraphError::Parse(format!("line {}: expected two vertex ids", lineno + 1)));
            };
            let mut index = |name: &str| match names.iter().position(|n| n == name) {
                Some(i) => i,
                None => {
                    names.push(name.to_string());
                    names.len() - 1
                }
            };
            pairs.push((index(a), index(b)));
        }
        let mut g = WitnessedGraph::with_vertex_names(names)?;
        for (u, v) in pairs {
            g.add_witness(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// JSON when the text starts with `{`, an edge list otherwise.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        if text.trim_start().starts_with('{') {
            Self::from_json_str(text)
        } else {
            Self::from_edge_list_str(text)
        }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }

    /// Colouring keyed by vertex names.
    pub fn coloring_json(&self, col: &Coloring) -> serde_json::Map<String, serde_json::Value> {
        col.iter()
            .map(|(v, c)| (self.vertex_name(v).to_string(), serde_json::Value::from(c)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices":["a","b","c"],"witnesses":[{"id":"x","ends":["a","b"]},{"id":"y","ends":["b","a"]},{"id":"z","ends":["b","c"]}]}"#;
        let g = WitnessedGraph::from_json_str(text).unwrap();
        assert_eq!(g.witness_count(), 3);
        assert_eq!(g.witnesses_between(VertexId(0), VertexId(1)).count(), 2);
        let back = WitnessedGraph::try_from(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_names_witnesses_in_line_order() {
        let g = WitnessedGraph::parse("# triangle\nu v\nv w\n\nw u\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.witness_name(crate::graph::WitnessId(2)), "w2");
        assert_eq!(g.vertex_name(VertexId(2)), "w");
    }

    #[test]
    fn rejects_loops_and_garbage() {
        assert!(matches!(WitnessedGraph::parse("a a\n"), Err(GraphError::Loop(_))));
        assert!(matches!(WitnessedGraph::parse("a b c\n"), Err(GraphError::Parse(_))));
        assert!(matches!(WitnessedGraph::parse("{\"vertices\": ["), Err(GraphError::Parse(_))));
        let unknown = r#"{"vertices":["a"],"witnesses":[{"id":"x","ends":["a","q"]}]}"#;
        assert!(matches!(WitnessedGraph::parse(unknown), Err(GraphError::UnknownVertex(_))));
    }
}
