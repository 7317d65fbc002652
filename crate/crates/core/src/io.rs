//! Text formats: graph6, a plain edge list, and DOT export.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, MAX_IO_ORDER};

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("empty graph6 input")]
    Empty,
    #[error("malformed graph6 header")]
    MalformedHeader,
    #[error("graph order {0} is outside the supported range 0..={MAX_IO_ORDER}")]
    OrderOutOfRange(usize),
    #[error("invalid graph6 byte {0:#04x}")]
    InvalidByte(u8),
    #[error("graph6 body has {found} bytes, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("graph6 padding bits are not zero")]
    NonzeroPadding,
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn graph6_body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 line (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let (&first, body) = bytes.split_first().ok_or(FormatError::Empty)?;
    if !(63..=126).contains(&first) {
        return Err(FormatError::MalformedHeader);
    }
    if first == 126 {
        // Multi-byte order prefix; only reachable for n >= 63.
        return Err(FormatError::OrderOutOfRange(63));
    }
    let n = (first - 63) as usize;
    if n > MAX_IO_ORDER {
        return Err(FormatError::OrderOutOfRange(n));
    }
    let expected = graph6_body_len(n);
    if body.len() != expected {
        return Err(FormatError::WrongLength { expected, found: body.len() });
    }
    let mut bits = Vec::with_capacity(expected * 6);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(FormatError::InvalidByte(b));
        }
        let v = b - 63;
        bits.extend((0..6).rev().map(|k| (v >> k) & 1 == 1));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if bits[pairs..].iter().any(|&b| b) {
        return Err(FormatError::NonzeroPadding);
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Standard graph6 encoding without header or newline.
pub fn format_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    if n > MAX_IO_ORDER {
        return Err(FormatError::OrderOutOfRange(n));
    }
    let mut out = String::with_capacity(1 + graph6_body_len(n));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Parses the edge-list format: a `n <count>` header followed by one `u v`
/// pair per line. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line, msg: &str| FormatError::EdgeList { line, msg: msg.to_string() };

    let (hline, header) = lines.next().ok_or_else(|| err(0, "missing `n <count>` header"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count
            .parse::<usize>()
            .map_err(|_| err(hline, "vertex count is not a number"))?,
        _ => return Err(err(hline, "expected `n <count>` header")),
    };
    let mut g = Graph::empty(n)?;
    for (line, l) in lines {
        let ids: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| err(line, "vertex id is not a number"))?;
        let [u, v] = ids[..] else {
            return Err(err(line, "expected exactly two vertex ids"));
        };
        let problem = if u == v {
            Some(GraphError::SelfLoop(u))
        } else if u.max(v) >= n {
            Some(GraphError::UnknownVertex { vertex: u.max(v), n })
        } else if g.has_edge(u, v) {
            Some(GraphError::DuplicateEdge(Edge::new(u, v)))
        } else {
            None
        };
        if let Some(e) = problem {
            return Err(err(line, &e.to_string()));
        }
        g.insert(u, v);
    }
    Ok(g)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.lo(), e.hi());
    }
    out
}

/// Undirected DOT; every vertex is declared and each edge appears once.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for e in g.edges() {
        let _ = writeln!(out, "  {} -- {};", e.lo(), e.hi());
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, square_of_cycle};

    #[test]
    fn k5_graph6() {
        let g = parse_graph6("D~{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 10);
        assert_eq!(format_graph6(&fixtures::k5()).unwrap(), "D~{");
    }

    #[test]
    fn known_strings() {
        // Matches the petgraph encoder for the same 5-vertex graph.
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(format_graph6(&g).unwrap(), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
        let single = parse_graph6("@").unwrap();
        assert_eq!((single.n(), single.edge_count()), (1, 0));
        assert_eq!(format_graph6(&Graph::empty(0).unwrap()).unwrap(), "?");
        assert_eq!(parse_graph6(">>graph6<<D~{\n").unwrap(), fixtures::k5());
    }

    #[test]
    fn graph6_errors() {
        assert_eq!(parse_graph6(""), Err(FormatError::Empty));
        assert_eq!(parse_graph6(" ~"), Err(FormatError::MalformedHeader));
        assert_eq!(parse_graph6("D~"), Err(FormatError::WrongLength { expected: 2, found: 1 }));
        // Last sextet of K5 carries 4 data bits; setting a padding bit is invalid.
        assert_eq!(parse_graph6("D~|"), Err(FormatError::NonzeroPadding));
        assert_eq!(parse_graph6("P"), Err(FormatError::OrderOutOfRange(17)));
        assert!(matches!(parse_graph6("D~\u{7f}"), Err(FormatError::InvalidByte(0x7f))));
        let big = Graph::empty(17).unwrap();
        assert_eq!(format_graph6(&big), Err(FormatError::OrderOutOfRange(17)));
    }

    #[test]
    fn edge_list_fixtures() {
        let mut text = String::from("n 5\n");
        for u in 0..5 {
            for v in u + 1..5 {
                text.push_str(&format!("{u} {v}\n"));
            }
        }
        assert_eq!(parse_edge_list(&text).unwrap(), fixtures::k5());

        let oct = "n 6\n# distance 1\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n\n0 2\n1 3\n2 4\n3 5\n4 0\n5 1\n";
        assert_eq!(parse_edge_list(oct).unwrap(), square_of_cycle(6).unwrap());
        let g = square_of_cycle(7).unwrap();
        assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        let e = parse_edge_list("n 4\n3 3\n").unwrap_err();
        assert!(matches!(e, FormatError::EdgeList { line: 2, ref msg } if msg.contains("self-loop")));
        let e = parse_edge_list("n 4\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(e, FormatError::EdgeList { line: 3, ref msg } if msg.contains("duplicate")));
        let e = parse_edge_list("n 4\n0 4\n").unwrap_err();
        assert!(matches!(e, FormatError::EdgeList { line: 2, .. }));
        assert!(parse_edge_list("0 1\n").is_err());
        assert!(parse_edge_list("n 3\n0 1 2\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn dot_lists_each_edge_once() {
        let dot = to_dot(&fixtures::k5());
        assert_eq!(dot.matches(" -- ").count(), 10);
        assert!(dot.contains("  0 -- 1;\n"));
        assert!(!dot.contains("  1 -- 0;"));
    }
}
