//! JSON, edge-list and DOT forms of a digraph.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Digraph;
use crate::error::DigraphError;

const JSON_VERSION: u32 = 1;

/// `{"version":1,"vertex_count":N,"arcs":[[u,v],...]}` with sorted arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphJson {
    pub version: u32,
    pub vertex_count: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl Digraph {
    pub fn to_json_value(&self) -> DigraphJson {
        DigraphJson {
            version: JSON_VERSION,
            vertex_count: self.n,
            arcs: self.arcs().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json_value(json: &DigraphJson) -> Result<Digraph, DigraphError> {
        if json.version != JSON_VERSION {
            return Err(DigraphError::Format(format!(
                "unsupported digraph version {}",
                json.version
            )));
        }
        Digraph::from_arcs(json.vertex_count, json.arcs.iter().map(|&[u, v]| (u, v)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("digraph serializes")
    }

    /// Parses either a bare digraph object or any object carrying one under
    /// a `"digraph"` key.
    pub fn from_json(text: &str) -> Result<Digraph, DigraphError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| DigraphError::Format(e.to_string()))?;
        let inner = value.get("digraph").cloned().unwrap_or(value);
        let json: DigraphJson =
            serde_json::from_value(inner).map_err(|e| DigraphError::Format(e.to_string()))?;
        Digraph::from_json_value(&json)
    }

    /// One `u v` line per arc, preceded by a `# vertex_count N` header so
    /// that isolated vertices survive a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# vertex_count {}\n", self.n);
        for (u, v) in self.arcs() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses an edge list. Without a header the vertex count is one more
    /// than the largest vertex mentioned.
    pub fn from_edge_list(text: &str) -> Result<Digraph, DigraphError> {
        let mut count: Option<usize> = None;
        let mut arcs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(n) = rest.trim().strip_prefix("vertex_count") {
                    count = Some(n.trim().parse().map_err(|_| {
                        DigraphError::Format(format!("line {}: bad vertex count", lineno + 1))
                    })?);
                }
                continue;
            }
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => arcs.push((u, v)),
                _ => {
                    return Err(DigraphError::Format(format!(
                        "line {}: expected `u v`",
                        lineno + 1
                    )))
                }
            }
        }
        let n = count.unwrap_or_else(|| {
            arcs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0)
        });
        Digraph::from_arcs(n, arcs)
    }

    /// DOT export. Digons are drawn once with `dir=both`.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("digraph G {\n");
        for v in 0..self.n {
            match labels {
                Some(l) => {
                    let _ = writeln!(out, "  {v} [label=\"{}\"];", l[v].replace('"', "\\\""));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in self.arcs() {
            if self.has_arc(v, u) {
                if u < v {
                    let _ = writeln!(out, "  {u} -> {v} [dir=both];");
                }
            } else {
                let _ = writeln!(out, "  {u} -> {v};");
            }
        }
        out.push_str("}\n");
        out
    }

    /// Reads the DOT dialect written by [`Digraph::to_dot`]: numeric node
    /// statements and `u -> v` edges, `dir=both` marking a digon.
    pub fn from_dot(text: &str) -> Result<Digraph, DigraphError> {
        let mut count = 0;
        let mut arcs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim().trim_end_matches(';');
            if line.is_empty() || line.starts_with("digraph") || line == "}" {
                continue;
            }
            let bad = || DigraphError::Format(format!("line {}: unsupported DOT statement", lineno + 1));
            let (stmt, attrs) = match line.find('[') {
                Some(k) => (line[..k].trim(), &line[k..]),
                None => (line, ""),
            };
            if let Some((u, v)) = stmt.split_once("->") {
                let u: usize = u.trim().parse().map_err(|_| bad())?;
                let v: usize = v.trim().parse().map_err(|_| bad())?;
                count = count.max(u + 1).max(v + 1);
                arcs.push((u, v));
                if attrs.contains("dir=both") {
                    arcs.push((v, u));
                }
            } else {
                let v: usize = stmt.parse().map_err(|_| bad())?;
                count = count.max(v + 1);
            }
        }
        Digraph::from_arcs(count, arcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn json_shape() {
        let d = Digraph::from_arcs(3, [(2, 0), (0, 1)]).unwrap();
        assert_eq!(d.to_json(), r#"{"version":1,"vertex_count":3,"arcs":[[0,1],[2,0]]}"#);
        let wrapped = format!(r#"{{"certificate":{{}},"digraph":{}}}"#, d.to_json());
        assert_eq!(Digraph::from_json(&wrapped).unwrap(), d);
    }

    #[test]
    fn dot_merges_digons() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        let dot = d.to_dot(None);
        assert!(dot.contains("0 -> 1 [dir=both];"));
        assert!(!dot.contains("1 -> 0"));
        assert!(dot.contains("1 -> 2;"));
    }

    #[test]
    fn edge_list_without_header() {
        let d = Digraph::from_edge_list("0 1\n\n1 2\n").unwrap();
        assert_eq!(d.vertex_count(), 3);
        assert!(Digraph::from_edge_list("0 1 2").is_err());
        assert!(Digraph::from_edge_list("1 1").is_err());
    }

    proptest! {
        #[test]
        fn text_forms_round_trip(n in 1usize..10, raw in proptest::collection::vec((0usize..10, 0usize..10), 0..40)) {
            let arcs = raw.into_iter().filter(|&(u, v)| u < n && v < n && u != v);
            let d = Digraph::from_arcs(n, arcs).unwrap();
            prop_assert_eq!(&Digraph::from_json(&d.to_json()).unwrap(), &d);
            prop_assert_eq!(&Digraph::from_edge_list(&d.to_edge_list()).unwrap(), &d);
            prop_assert_eq!(&Digraph::from_dot(&d.to_dot(None)).unwrap(), &d);
            let labels: Vec<String> = (0..n).map(|v| format!("x[{v}]_0")).collect();
            prop_assert_eq!(&Digraph::from_dot(&d.to_dot(Some(&labels))).unwrap(), &d);
        }
    }
}
