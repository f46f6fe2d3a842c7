//! Instance files: a human edge list and a canonical json form.
//!
//! Edge-list form has one edge per line, labels separated by whitespace.
//! `/` also separates edges, `#` starts a comment, and an optional first line
//! `@vertices a b c ..` fixes the vertex order and declares isolated
//! vertices. Without it vertices are numbered in order of first appearance.
//!
//! Json form is `{"vertices": [labels], "edges": [[indices]]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceFormat {
    Json,
    EdgeList,
}

impl InstanceFormat {
    /// Json if the first non-blank character is `{`.
    pub fn detect(text: &str) -> Self {
        if text.trim_start().starts_with('{') {
            Self::Json
        } else {
            Self::EdgeList
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonInstance {
    vertices: Vec<String>,
    edges: Vec<Vec<usize>>,
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        JsonInstance {
            vertices: self.labels().to_vec(),
            edges: self.edge_lists(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let inst = JsonInstance::deserialize(deserializer)?;
        Hypergraph::build(inst.vertices, inst.edges).map_err(serde::de::Error::custom)
    }
}

pub fn parse(text: &str) -> Result<Hypergraph> {
    parse_as(text, InstanceFormat::detect(text))
}

pub fn parse_as(text: &str, format: InstanceFormat) -> Result<Hypergraph> {
    match format {
        InstanceFormat::Json => parse_json(text),
        InstanceFormat::EdgeList => parse_edgelist(text),
    }
}

pub fn parse_json(text: &str) -> Result<Hypergraph> {
    let inst: JsonInstance = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Hypergraph::build(inst.vertices, inst.edges)
}

pub fn to_json(h: &Hypergraph) -> String {
    serde_json::to_string(h).expect("instances serialize")
}

struct Labels {
    names: Vec<String>,
    index: std::collections::HashMap<String, usize>,
    fixed: bool,
}

impl Labels {
    fn lookup(&mut self, name: &str, line: usize, column: usize) -> Result<usize> {
        if let Some(&v) = self.index.get(name) {
            return Ok(v);
        }
        if self.fixed {
            return Err(Error::Parse {
                line,
                column,
                message: format!("vertex `{name}` is not declared in @vertices"),
            });
        }
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), self.names.len() - 1);
        Ok(self.names.len() - 1)
    }
}

/// Tokens of a line with their 1-based character columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        let separator = ch == '/';
        if ch.is_whitespace() || separator {
            if let Some((c, b)) = start.take() {
                out.push((c, &line[b..byte]));
            }
            if separator {
                out.push((col + 1, "/"));
            }
        } else if start.is_none() {
            start = Some((col + 1, byte));
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &line[b..]));
    }
    out.into_iter()
}

pub fn parse_edgelist(text: &str) -> Result<Hypergraph> {
    let mut labels = Labels {
        names: Vec::new(),
        index: Default::default(),
        fixed: false,
    };
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut seen_content = false;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = tokens(line).peekable();
        if toks.peek().is_none() {
            continue;
        }
        if let Some(&(col, tok)) = toks.peek() {
            if let Some(directive) = tok.strip_prefix('@') {
                if directive != "vertices" {
                    return Err(Error::Parse {
                        line: line_no,
                        column: col,
                        message: format!("unknown directive `{tok}`"),
                    });
                }
                if seen_content {
                    return Err(Error::Parse {
                        line: line_no,
                        column: col,
                        message: "@vertices must come before any edge".into(),
                    });
                }
                toks.next();
                for (c, name) in toks {
                    if name == "/" {
                        return Err(Error::Parse {
                            line: line_no,
                            column: c,
                            message: "`/` is not allowed in @vertices".into(),
                        });
                    }
                    if labels.index.contains_key(name) {
                        return Err(Error::DuplicateLabel(name.to_string()));
                    }
                    labels.lookup(name, line_no, c)?;
                }
                labels.fixed = true;
                seen_content = true;
                continue;
            }
        }
        seen_content = true;
        let mut current = Vec::new();
        let mut pending_sep = None;
        for (col, tok) in toks {
            if tok == "/" {
                if current.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        column: col,
                        message: "empty edge".into(),
                    });
                }
                edges.push(std::mem::take(&mut current));
                pending_sep = Some(col);
            } else {
                current.push(labels.lookup(tok, line_no, col)?);
                pending_sep = None;
            }
        }
        if let Some(col) = pending_sep {
            return Err(Error::Parse {
                line: line_no,
                column: col,
                message: "empty edge after `/`".into(),
            });
        }
        if !current.is_empty() {
            edges.push(current);
        }
    }
    Hypergraph::build(labels.names, edges)
}

fn writable(label: &str) -> bool {
    !label.is_empty() && !label.starts_with('@') && !label.chars().any(|c| c.is_whitespace() || c == '/' || c == '#')
}

/// Edge-list form with an `@vertices` line, one edge per line.
pub fn to_edgelist(h: &Hypergraph) -> Result<String> {
    if let Some(bad) = h.labels().iter().find(|l| !writable(l)) {
        return Err(Error::UnrepresentableLabel(bad.clone()));
    }
    let mut out = format!("@vertices {}\n", h.labels().join(" "));
    for e in h.edge_lists() {
        let names: Vec<&str> = e.iter().map(|&v| h.labels()[v].as_str()).collect();
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn serialize(h: &Hypergraph, format: InstanceFormat) -> Result<String> {
    match format {
        InstanceFormat::Json => Ok(to_json(h)),
        InstanceFormat::EdgeList => to_edgelist(h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::{example_six, p3};

    #[test]
    fn edgelist_p3() {
        assert_eq!(parse("x y / y z").unwrap(), p3());
        assert_eq!(parse("# path\nx y\ny z   # second\n").unwrap(), p3());
    }

    #[test]
    fn json_example_six() {
        let text = r#"{"vertices":["x1","x2","x3","x4","x5","x6"],"edges":[[0,1,2],[1,2,3],[1,4,5]]}"#;
        let h = parse(text).unwrap();
        assert_eq!(h.edge_lists(), example_six().edge_lists());
        assert_eq!(to_json(&h), text);
    }

    #[test]
    fn declared_vertices() {
        let h = parse("@vertices a b c d\nb c\n").unwrap();
        assert_eq!((h.n(), h.m()), (4, 1));
        assert_eq!(parse(&to_edgelist(&h).unwrap()).unwrap(), h);
        assert!(matches!(
            parse("@vertices a b\na q"),
            Err(Error::Parse { line: 2, column: 3, .. })
        ));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("x y /"), Err(Error::Parse { line: 1, column: 5, .. })));
        assert!(matches!(parse("x y\n / y z"), Err(Error::Parse { line: 2, column: 2, .. })));
        assert!(matches!(parse("{\"vertices\": [1]}"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("@edges x"), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse("x\n"), Err(Error::EdgeTooSmall { .. })));
    }

    #[test]
    fn unwritable_labels() {
        let h = Hypergraph::build(vec!["a b".into(), "c".into()], vec![vec![0, 1]]).unwrap();
        assert!(to_edgelist(&h).is_err());
        assert_eq!(parse(&to_json(&h)).unwrap(), h);
    }
}
