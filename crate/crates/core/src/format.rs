//! graph6 encoding, the JSON edge-list form, and short graph names.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{disjoint_union, Graph};

const HEADER: &str = ">>graph6<<";

fn g6_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and trailing
/// whitespace are accepted; errors name the offending byte offset.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r', ' ', '\t']);
    let (bytes, base) = match line.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (line.as_bytes(), 0),
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(base + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let (n, body_start) = match bytes.first() {
        None => return Err(g6_err(base, "missing size header")),
        Some(&126) => match bytes.get(1) {
            Some(&126) => {
                if bytes.len() < 8 {
                    return Err(g6_err(base + bytes.len(), "truncated 8-byte size header"));
                }
                let n = bytes[2..8]
                    .iter()
                    .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
                (n, 8)
            }
            _ => {
                if bytes.len() < 4 {
                    return Err(g6_err(base + bytes.len(), "truncated 4-byte size header"));
                }
                let n = bytes[1..4]
                    .iter()
                    .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
                (n, 4)
            }
        },
        Some(&b) => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < need {
        return Err(g6_err(
            base + bytes.len(),
            format!("body has {} bytes, expected {need}", body.len()),
        ));
    }
    if body.len() > need {
        return Err(g6_err(
            base + body_start + need,
            "trailing bytes after body",
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if k % 6 != 0 {
        let last = body[need - 1] - 63;
        if last & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(g6_err(base + body_start + need - 1, "nonzero padding bits"));
        }
    }
    Graph::new(n, edges)
}

/// Encodes a graph with at most 62 vertices as graph6 (no header, no newline).
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > 62 {
        return Err(Error::Graph6Unsupported(n));
    }
    let mut out = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// `{"n": int, "edges": [[u, v], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

/// Reads a graph from file contents: JSON if it starts with `{`, otherwise
/// the first non-empty graph6 line.
pub fn read_graph(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let j: GraphJson = serde_json::from_str(trimmed)?;
        return Graph::try_from(j);
    }
    let line = trimmed
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| g6_err(0, "empty input"))?;
    parse_graph6(line)
}

/// Reads every graph6 line of a corpus file, skipping blanks and `#` comments.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_graph6)
        .collect()
}

/// Short names: `K4`, `C6`, `P3`, `E2` (edgeless), `S3` (star with three
/// leaves), `Petersen`, and multiples such as `2K3`.
pub fn named_graph(name: &str) -> Result<Graph> {
    let unknown = || Error::UnknownName(name.to_string());
    if name.eq_ignore_ascii_case("petersen") {
        return Ok(Graph::petersen());
    }
    let split = name
        .find(|c: char| !c.is_ascii_digit())
        .ok_or_else(unknown)?;
    let (mult, rest) = name.split_at(split);
    let copies: usize = if mult.is_empty() {
        1
    } else {
        mult.parse().map_err(|_| unknown())?
    };
    let mut chars = rest.chars();
    let kind = chars.next().ok_or_else(unknown)?;
    let size: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let one = match kind {
        'K' => Graph::complete(size),
        'C' if size >= 3 => Graph::cycle(size),
        'P' => Graph::path(size),
        'E' => Graph::empty(size),
        'S' => Graph::star(size),
        _ => return Err(unknown()),
    };
    if copies == 1 {
        Ok(one)
    } else {
        Ok(disjoint_union(&vec![one; copies]).0)
    }
}

/// Accepts a graph name, a JSON object or a graph6 string.
pub fn parse_graph_arg(text: &str) -> Result<Graph> {
    let t = text.trim();
    if t.starts_with('{') || t.starts_with(HEADER) {
        return read_graph(t);
    }
    named_graph(t).or_else(|_| parse_graph6(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smallest_codes() {
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2));
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), Graph::complete(2));
    }

    #[test]
    fn emit_known_codes() {
        assert_eq!(emit_graph6(&Graph::complete(2)).unwrap(), "A_");
        assert_eq!(emit_graph6(&Graph::empty(1)).unwrap(), "@");
        // bits (0,1)(0,2)(1,2)(0,3)(1,3)(2,3) = 101101 = 45, 45 + 63 = 'l'
        assert_eq!(emit_graph6(&Graph::cycle(4)).unwrap(), "Cl");
        assert_eq!(emit_graph6(&Graph::empty(0)).unwrap(), "?");
        // 45 adjacency bits pack into one size byte plus 8 body bytes
        assert_eq!(emit_graph6(&Graph::petersen()).unwrap().len(), 9);
    }

    #[test]
    fn emit_rejects_large() {
        assert!(matches!(
            emit_graph6(&Graph::empty(63)),
            Err(Error::Graph6Unsupported(63))
        ));
    }

    #[test]
    fn parse_errors_name_offsets() {
        match parse_graph6("C~~") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match parse_graph6("D~") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match parse_graph6("A\u{7f}") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_graph6("").is_err());
        // K2 with a padding bit set
        assert!(parse_graph6("A`").is_err());
    }

    #[test]
    fn long_size_header() {
        // n = 63 uses the four-byte form
        let g = Graph::path(63);
        let bits: usize = 63 * 62 / 2;
        let mut body = vec![0u8; bits.div_ceil(6)];
        let mut k = 0;
        for j in 1..63 {
            for i in 0..j {
                if g.has_edge(i, j) {
                    body[k / 6] |= 1 << (5 - k % 6);
                }
                k += 1;
            }
        }
        let mut s = String::from("~??~");
        s.extend(body.iter().map(|&b| (b + 63) as char));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn json_form() {
        let text = r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#;
        assert_eq!(read_graph(text).unwrap(), Graph::path(3));
        let j = GraphJson::from(&Graph::cycle(3));
        assert_eq!(j.edges, vec![[0, 1], [0, 2], [1, 2]]);
    }

    #[test]
    fn names() {
        assert_eq!(named_graph("K4").unwrap(), Graph::complete(4));
        assert_eq!(named_graph("C6").unwrap(), Graph::cycle(6));
        let two = named_graph("2K3").unwrap();
        assert_eq!((two.n(), two.m()), (6, 6));
        assert!(named_graph("X3").is_err());
        assert_eq!(parse_graph_arg("A_").unwrap(), Graph::complete(2));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=10).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
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
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph()) {
            let code = emit_graph6(&g).unwrap();
            prop_assert_eq!(parse_graph6(&code).unwrap(), g);
            let again = emit_graph6(&parse_graph6(&code).unwrap()).unwrap();
            prop_assert_eq!(again, code);
        }
    }
}
