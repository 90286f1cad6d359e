//! Graph file formats: graph6, DIMACS edge format, and a plain arc-list
//! format for digraphs. Writers round-trip bit-exactly with the parsers.

use crate::digraph::Digraph;
use crate::error::FormatError;
use crate::graph::{Graph, Vertex};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Parse a graph6 string (optional `>>graph6<<` header allowed).
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let s = text.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::BadGraph6Byte { byte: b, pos });
        }
    }
    let (n, mut idx) = decode_graph6_order(bytes)?;
    let bit_count = n * n.saturating_sub(1) / 2;
    let need = bit_count.div_ceil(6);
    if bytes.len() - idx < need {
        return Err(FormatError::Graph6Truncated {
            need,
            got: bytes.len() - idx,
        });
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    // Upper triangle in column order: x(0,1), x(0,2), x(1,2), x(0,3), ...
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[idx + bit / 6] - 63;
            let mask = 1 << (5 - bit % 6);
            if byte & mask != 0 {
                edges.push((i, j));
            }
            bit += 1;
            if bit >= bit_count {
                break 'outer;
            }
        }
    }
    idx += need;
    if idx != bytes.len() {
        return Err(FormatError::BadHeader(format!(
            "{} trailing bytes after graph6 payload",
            bytes.len() - idx
        )));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

fn decode_graph6_order(bytes: &[u8]) -> Result<(usize, usize), FormatError> {
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, 1));
    }
    if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        return Ok((n, 4));
    }
    if bytes.len() >= 8 && bytes[1] == 126 {
        let n = bytes[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        return Ok((n, 8));
    }
    Err(FormatError::BadHeader("truncated graph6 order".into()))
}

/// Encode a graph as graph6 (no header).
pub fn write_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    } else {
        return Err(FormatError::TooLarge(n));
    }
    let bit_count = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u8; bit_count.div_ceil(6)];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                bits[bit / 6] |= 1 << (5 - bit % 6);
            }
            bit += 1;
        }
    }
    out.extend(bits.into_iter().map(|b| b + 63));
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ascii"))
}

/// Parse DIMACS edge format: `p edge <n> <m>` header, `e <u> <v>` lines
/// (1-based), `c` comment lines. In strict mode duplicate edges, self-loops
/// and an edge-count mismatch are errors; otherwise duplicates are merged.
pub fn parse_dimacs(text: &str, strict: bool) -> Result<Graph, FormatError> {
    let mut n: Option<usize> = None;
    let mut declared_m = 0usize;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_ascii_whitespace();
        match parts.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(FormatError::BadLine {
                        line: lineno,
                        msg: "duplicate problem line".into(),
                    });
                }
                let kind = parts.next().unwrap_or("");
                if kind != "edge" && kind != "col" {
                    return Err(FormatError::BadHeader(format!(
                        "unsupported problem type {kind:?}"
                    )));
                }
                let nv = parse_field(parts.next(), lineno, "vertex count")?;
                declared_m = parse_field(parts.next(), lineno, "edge count")?;
                n = Some(nv);
            }
            Some("e") => {
                let n = n.ok_or_else(|| FormatError::BadHeader("missing problem line".into()))?;
                let u: usize = parse_field(parts.next(), lineno, "endpoint")?;
                let v: usize = parse_field(parts.next(), lineno, "endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(FormatError::BadLine {
                        line: lineno,
                        msg: format!("endpoint out of range 1..={n}"),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(FormatError::BadLine {
                    line: lineno,
                    msg: format!("unknown record {other:?}"),
                });
            }
            None => unreachable!(),
        }
    }
    let n = n.ok_or_else(|| FormatError::BadHeader("missing problem line".into()))?;
    let g = if strict {
        if edges.len() != declared_m {
            return Err(FormatError::BadHeader(format!(
                "header declares {declared_m} edges, found {}",
                edges.len()
            )));
        }
        Graph::from_edges(n, &edges)?
    } else {
        Graph::from_edges_dedup(n, &edges)?
    };
    Ok(g)
}

/// Write DIMACS edge format, edges sorted with 1-based endpoints.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parse the arc-list digraph format: first non-comment line is the vertex
/// count, each following line one `u v` arc (0-based). `#` starts a comment.
pub fn parse_digraph_arcs(text: &str, strict: bool) -> Result<Digraph, FormatError> {
    let mut n: Option<usize> = None;
    let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if n.is_none() {
            let nv: usize = line.parse().map_err(|_| FormatError::BadLine {
                line: lineno,
                msg: format!("expected vertex count, got {line:?}"),
            })?;
            n = Some(nv);
            continue;
        }
        let mut parts = line.split_ascii_whitespace();
        let u: usize = parse_field(parts.next(), lineno, "arc tail")?;
        let v: usize = parse_field(parts.next(), lineno, "arc head")?;
        if parts.next().is_some() {
            return Err(FormatError::BadLine {
                line: lineno,
                msg: "trailing fields after arc".into(),
            });
        }
        arcs.push((u, v));
    }
    let n = n.ok_or(FormatError::Empty)?;
    let d = if strict {
        Digraph::from_arcs(n, &arcs)?
    } else {
        let mut set = std::collections::BTreeSet::new();
        for &(u, v) in &arcs {
            set.insert((u, v));
        }
        let deduped: Vec<_> = set.into_iter().collect();
        Digraph::from_arcs(n, &deduped)?
    };
    Ok(d)
}

/// Write the arc-list format: vertex count, then one sorted `u v` arc per line.
pub fn write_digraph_arcs(d: &Digraph) -> String {
    let mut out = format!("{}\n", d.n());
    for (u, v) in d.arcs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, FormatError> {
    field
        .ok_or_else(|| FormatError::BadLine {
            line,
            msg: format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| FormatError::BadLine {
            line,
            msg: format!("unparsable {what}"),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Independent graph6 bit decoder used as the round-trip oracle: expands
    /// every payload byte to its 6 bits, then reads the column-order triangle.
    fn reference_decode(s: &str) -> (usize, Vec<(usize, usize)>) {
        let bytes = s.as_bytes();
        let (n, start) = if bytes[0] == 126 {
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| acc * 64 + (b - 63) as usize);
            (n, 4)
        } else {
            ((bytes[0] - 63) as usize, 1)
        };
        let mut bits = Vec::new();
        for &b in &bytes[start..] {
            let x = b - 63;
            for k in (0..6).rev() {
                bits.push((x >> k) & 1 == 1);
            }
        }
        let mut edges = Vec::new();
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[idx] {
                    edges.push((i, j));
                }
                idx += 1;
            }
        }
        (n, edges)
    }

    #[test]
    fn graph6_k4() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 6);
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    assert!(g.has_edge(u, v));
                }
            }
        }
        assert_eq!(write_graph6(&g).unwrap(), "C~");
    }

    #[test]
    fn graph6_c5_reference() {
        let g = crate::generate::cycle(5).unwrap();
        let enc = write_graph6(&g).unwrap();
        assert_eq!(enc, "Dhc");
        let (n, edges) = reference_decode(&enc);
        assert_eq!(n, 5);
        let mut expect = g.edges();
        expect.sort_unstable();
        let mut got = edges;
        got.sort_unstable();
        assert_eq!(got, expect);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err()); // truncated payload
        assert!(parse_graph6("C~~").is_err()); // trailing bytes
        assert!(matches!(
            parse_graph6("C\u{7}"),
            Err(FormatError::BadGraph6Byte { .. })
        ));
    }

    #[test]
    fn dimacs_path_of_three() {
        let g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3\n", true).unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn dimacs_strictness() {
        let dup = "p edge 3 2\ne 1 2\ne 2 1\n";
        assert!(parse_dimacs(dup, true).is_err());
        let g = parse_dimacs(dup, false).unwrap();
        assert_eq!(g.edge_count(), 1);
        // Edge-count mismatch only matters in strict mode.
        let short = "p edge 3 5\ne 1 2\n";
        assert!(parse_dimacs(short, true).is_err());
        assert!(parse_dimacs(short, false).is_ok());
    }

    #[test]
    fn arc_list_directed_triangle() {
        let d = parse_digraph_arcs("3\n0 1\n1 2\n2 0\n", true).unwrap();
        assert_eq!(d.n(), 3);
        assert!(d.has_arc(0, 1) && d.has_arc(1, 2) && d.has_arc(2, 0));
        assert!(!d.has_arc(1, 0));
        assert_eq!(write_digraph_arcs(&d), "3\n0 1\n1 2\n2 0\n");
    }

    #[test]
    fn round_trip_100_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..100 {
            let n = rng.random_range(1..=24);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let enc = write_graph6(&g).unwrap();
            assert_eq!(parse_graph6(&enc).unwrap(), g);
            let dim = write_dimacs(&g);
            assert_eq!(parse_dimacs(&dim, true).unwrap(), g);
        }
    }

    #[test]
    fn round_trip_random_digraphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xd16);
        for _ in 0..100 {
            let n = rng.random_range(1..=16);
            let mut arcs = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.random_bool(0.25) {
                        arcs.push((u, v));
                    }
                }
            }
            let d = Digraph::from_arcs(n, &arcs).unwrap();
            let enc = write_digraph_arcs(&d);
            assert_eq!(parse_digraph_arcs(&enc, true).unwrap(), d);
        }
    }

    #[test]
    fn graph6_long_form_order() {
        // n = 63 forces the 4-byte order prefix.
        let edges: Vec<(usize, usize)> = (0..62).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(63, &edges).unwrap();
        let enc = write_graph6(&g).unwrap();
        assert!(enc.starts_with('~'));
        assert_eq!(parse_graph6(&enc).unwrap(), g);
    }
}
