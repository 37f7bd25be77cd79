//! Line-oriented text formats.
//!
//! ```text
//! graph <name>
//! vertices <N>
//! edge <id> <tail> <head> <length> <weight> <class>
//! ```
//!
//! and for digraphs `digraph <name>`, `vertices <N>`, `arc <tail> <head>`.
//! Vertices are 0-based. `#` starts a comment.

use std::fmt::Write as _;

use super::{Digraph, Edge, MetricGraph};
use crate::error::{Error, Result};

pub fn write_graph(g: &MetricGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {}", g.name);
    let _ = writeln!(out, "vertices {}", g.vertex_count);
    for e in &g.edges {
        let _ = writeln!(
            out,
            "edge {} {} {} {} {} {}",
            e.id,
            e.tail,
            e.head,
            e.length,
            e.weight,
            e.class.as_str()
        );
    }
    out
}

pub fn write_digraph(g: &Digraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {}", g.name);
    let _ = writeln!(out, "vertices {}", g.vertex_count);
    for (t, h) in &g.arcs {
        let _ = writeln!(out, "arc {t} {h}");
    }
    out
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn field<T: std::str::FromStr>(line: usize, tokens: &[&str], idx: usize, what: &str) -> Result<T> {
    tokens
        .get(idx)
        .ok_or_else(|| Error::Parse {
            line,
            msg: format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| Error::Parse {
            line,
            msg: format!("bad {what} `{}`", tokens[idx]),
        })
}

struct Header {
    name: Option<String>,
    vertices: Option<usize>,
}

impl Header {
    fn accept(&mut self, kind: &str, line: usize, tokens: &[&str]) -> Result<bool> {
        if tokens[0] == kind {
            if self.name.is_some() {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate `{kind}` record"),
                });
            }
            self.name = Some(tokens[1..].join(" "));
            return Ok(true);
        }
        if tokens[0] == "vertices" {
            if self.vertices.is_some() {
                return Err(Error::Parse {
                    line,
                    msg: "duplicate `vertices` record".into(),
                });
            }
            self.vertices = Some(field(line, tokens, 1, "vertex count")?);
            return Ok(true);
        }
        Ok(false)
    }

    fn vertices(&self, line: usize) -> Result<usize> {
        self.vertices.ok_or(Error::Parse {
            line,
            msg: "`vertices` must precede edges".into(),
        })
    }
}

pub fn parse_graph(text: &str) -> Result<MetricGraph> {
    let mut header = Header {
        name: None,
        vertices: None,
    };
    let mut edges = Vec::new();
    for (line, tokens) in records(text) {
        if header.accept("graph", line, &tokens)? {
            continue;
        }
        match tokens[0] {
            "edge" => {
                let n = header.vertices(line)?;
                if tokens.len() != 7 {
                    return Err(Error::Parse {
                        line,
                        msg: format!("edge record needs 6 fields, got {}", tokens.len() - 1),
                    });
                }
                let class = tokens[6].parse().map_err(|msg| Error::Parse { line, msg })?;
                let edge = Edge {
                    id: field(line, &tokens, 1, "edge id")?,
                    tail: field(line, &tokens, 2, "tail")?,
                    head: field(line, &tokens, 3, "head")?,
                    length: field(line, &tokens, 4, "length")?,
                    weight: field(line, &tokens, 5, "weight")?,
                    class,
                };
                if edge.tail >= n || edge.head >= n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("endpoint out of range 0..{n}"),
                    });
                }
                edges.push(edge);
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown record `{other}`"),
                })
            }
        }
    }
    let vertex_count = header.vertices.ok_or(Error::Parse {
        line: 0,
        msg: "missing `vertices` record".into(),
    })?;
    Ok(MetricGraph::new(header.name.unwrap_or_default(), vertex_count, edges))
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut header = Header {
        name: None,
        vertices: None,
    };
    let mut arcs = Vec::new();
    for (line, tokens) in records(text) {
        if header.accept("digraph", line, &tokens)? {
            continue;
        }
        match tokens[0] {
            "arc" => {
                let n = header.vertices(line)?;
                let t: usize = field(line, &tokens, 1, "tail")?;
                let h: usize = field(line, &tokens, 2, "head")?;
                if t >= n || h >= n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("endpoint out of range 0..{n}"),
                    });
                }
                arcs.push((t, h));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown record `{other}`"),
                })
            }
        }
    }
    let vertex_count = header.vertices.ok_or(Error::Parse {
        line: 0,
        msg: "missing `vertices` record".into(),
    })?;
    Ok(Digraph::new(header.name.unwrap_or_default(), vertex_count, arcs))
}
