//! Text formats: rotation-system embeddings, colorings, and move logs.
//!
//! All three formats are line-oriented UTF-8 with LF endings and are
//! round-trip safe: parsing a serialized value yields the value back, and
//! serializing is canonical (ascending ids), so equal values produce
//! byte-identical files.

use std::fmt;

use total9_core::coloring::{Color, TotalColoring};
use total9_core::extension::Move;
use total9_core::graph::GraphError;
use total9_core::{Element, PlanarEmbedding};

/// A rejected input file, with the 1-based line the problem was found on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// The line does not have the shape the format requires.
    Malformed(String),
    /// A numeric field failed to parse or is out of range.
    BadNumber(String),
    /// A vertex id declared twice, or outside `0..V`.
    BadVertexId(String),
    /// The header promised different counts than the body delivers.
    CountMismatch(String),
    /// The rotation table parsed but does not describe a plane embedding.
    Graph(GraphError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Malformed(what) => write!(f, "line {}: {}", self.line, what),
            ParseErrorKind::BadNumber(what) => write!(f, "line {}: {}", self.line, what),
            ParseErrorKind::BadVertexId(what) => write!(f, "line {}: {}", self.line, what),
            ParseErrorKind::CountMismatch(what) => write!(f, "line {}: {}", self.line, what),
            ParseErrorKind::Graph(e) => write!(f, "line {}: {}", self.line, e),
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, kind })
}

fn parse_usize(line: usize, word: &str, what: &str) -> Result<usize, ParseError> {
    word.parse().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::BadNumber(format!("{} `{}` is not a number", what, word)),
    })
}

/// Parse the embedding format:
///
/// ```text
/// V E
/// <id>: n1 n2 ... nd
/// ```
///
/// one rotation line per vertex (clockwise neighbour order), every id in
/// `0..V` exactly once. Blank lines and `#` comment lines are skipped.
pub fn parse_embedding(text: &str) -> Result<PlanarEmbedding, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((header_line, header)) = lines.next() else {
        return err(1, ParseErrorKind::Malformed("empty file, expected `V E` header".into()));
    };
    let counts: Vec<&str> = header.split_whitespace().collect();
    if counts.len() != 2 {
        return err(
            header_line,
            ParseErrorKind::Malformed(format!("expected `V E` header, found `{}`", header)),
        );
    }
    let n = parse_usize(header_line, counts[0], "vertex count")?;
    let e = parse_usize(header_line, counts[1], "edge count")?;

    let mut rotations: Vec<Option<Vec<usize>>> = vec![None; n];
    // Line each rotation was declared on, to place blame for asymmetry.
    let mut declared_on = vec![0usize; n];
    for _ in 0..n {
        let Some((line, body)) = lines.next() else {
            return err(
                header_line,
                ParseErrorKind::CountMismatch(format!(
                    "header promises {} rotation lines, file has fewer",
                    n
                )),
            );
        };
        let Some((id_part, rest)) = body.split_once(':') else {
            return err(
                line,
                ParseErrorKind::Malformed(format!("expected `<id>: neighbours`, found `{}`", body)),
            );
        };
        let id = parse_usize(line, id_part.trim(), "vertex id")?;
        if id >= n {
            return err(
                line,
                ParseErrorKind::BadVertexId(format!("vertex id {} is outside 0..{}", id, n)),
            );
        }
        if rotations[id].is_some() {
            return err(
                line,
                ParseErrorKind::BadVertexId(format!("vertex {} declared twice", id)),
            );
        }
        let mut rot = Vec::new();
        for word in rest.split_whitespace() {
            rot.push(parse_usize(line, word, "neighbour id")?);
        }
        rotations[id] = Some(rot);
        declared_on[id] = line;
    }
    if let Some((line, extra)) = lines.next() {
        return err(
            line,
            ParseErrorKind::CountMismatch(format!("unexpected extra line `{}`", extra)),
        );
    }

    let rotations: Vec<Vec<usize>> = rotations.into_iter().map(|r| r.unwrap()).collect();
    let g = PlanarEmbedding::build(rotations).map_err(|e| {
        // Blame the line that declared the offending rotation.
        let line = match e {
            GraphError::AsymmetricAdjacency { u, .. } => declared_on[u],
            GraphError::LoopOrMultiEdge { v } => declared_on[v],
            GraphError::UnknownVertex { .. } => header_line,
            _ => header_line,
        };
        ParseError { line, kind: ParseErrorKind::Graph(e) }
    })?;
    if g.num_edges() != e {
        return err(
            header_line,
            ParseErrorKind::CountMismatch(format!(
                "header promises {} edges, rotations describe {}",
                e,
                g.num_edges()
            )),
        );
    }
    Ok(g)
}

/// Canonical text for an embedding; `parse_embedding` inverts it.
pub fn serialize_embedding(g: &PlanarEmbedding) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.num_vertices(), g.num_edges()));
    for v in 0..g.num_vertices() {
        out.push_str(&format!("{}:", v));
        for &u in g.rotation(v) {
            out.push_str(&format!(" {}", u));
        }
        out.push('\n');
    }
    out
}

/// Parse the coloring format:
///
/// ```text
/// k
/// v <id> <color>
/// e <u> <v> <color>
/// ```
///
/// with `u < v` on edge lines. Partial colorings are legal: lines only for
/// the colored elements.
pub fn parse_coloring(text: &str) -> Result<TotalColoring, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((header_line, header)) = lines.next() else {
        return err(1, ParseErrorKind::Malformed("empty file, expected palette header".into()));
    };
    let k = parse_usize(header_line, header, "palette size")?;
    if k == 0 || k > 63 {
        return err(
            header_line,
            ParseErrorKind::BadNumber(format!("palette size {} is outside 1..=63", k)),
        );
    }
    let mut phi = TotalColoring::new(k as Color);

    for (line, body) in lines {
        let words: Vec<&str> = body.split_whitespace().collect();
        let (element, color_word) = match words.as_slice() {
            ["v", id, c] => (Element::Vertex(parse_usize(line, id, "vertex id")?), *c),
            ["e", u, v, c] => {
                let u = parse_usize(line, u, "endpoint")?;
                let v = parse_usize(line, v, "endpoint")?;
                if u >= v {
                    return err(
                        line,
                        ParseErrorKind::Malformed(format!(
                            "edge endpoints must satisfy u < v, found {} {}",
                            u, v
                        )),
                    );
                }
                (Element::Edge(u, v), *c)
            }
            _ => {
                return err(
                    line,
                    ParseErrorKind::Malformed(format!(
                        "expected `v <id> <color>` or `e <u> <v> <color>`, found `{}`",
                        body
                    )),
                )
            }
        };
        let c = parse_usize(line, color_word, "color")?;
        if c == 0 || c > k {
            return err(
                line,
                ParseErrorKind::BadNumber(format!("color {} is outside 1..={}", c, k)),
            );
        }
        if phi.get(element).is_some() {
            return err(
                line,
                ParseErrorKind::Malformed(format!("{} is colored twice", element)),
            );
        }
        phi.set(element, c as Color);
    }
    Ok(phi)
}

/// Canonical text for a coloring; `parse_coloring` inverts it. Vertices
/// come first in ascending id order, then edges in lexicographic order.
pub fn serialize_coloring(phi: &TotalColoring) -> String {
    let mut out = String::new();
    out.push_str(&format!("{}\n", phi.palette()));
    for (element, color) in phi.iter() {
        match element {
            Element::Vertex(v) => out.push_str(&format!("v {} {}\n", v, color)),
            Element::Edge(u, v) => out.push_str(&format!("e {} {} {}\n", u, v, color)),
        }
    }
    out
}

/// One move per line, in the same notation `Move` displays with:
///
/// ```text
/// assign e0-3 <- 5
/// uncolor v2
/// swap e1-2 e3-4
/// alternate v0 v1 v2
/// ```
///
/// `#` lines carry annotations (the script and branch that produced the
/// log) and are ignored by the parser.
pub fn serialize_move_log(moves: &[Move]) -> String {
    let mut out = String::new();
    for m in moves {
        out.push_str(&format!("{}\n", m));
    }
    out
}

fn parse_element(line: usize, word: &str) -> Result<Element, ParseError> {
    if let Some(id) = word.strip_prefix('v') {
        return Ok(Element::Vertex(parse_usize(line, id, "vertex id")?));
    }
    if let Some(pair) = word.strip_prefix('e') {
        if let Some((u, v)) = pair.split_once('-') {
            let u = parse_usize(line, u, "endpoint")?;
            let v = parse_usize(line, v, "endpoint")?;
            return Ok(Element::edge(u, v));
        }
    }
    err(line, ParseErrorKind::Malformed(format!("expected `v<id>` or `e<u>-<v>`, found `{}`", word)))
}

/// Inverse of [`serialize_move_log`].
pub fn parse_move_log(text: &str) -> Result<Vec<Move>, ParseError> {
    let mut moves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        let mv = match words.as_slice() {
            ["assign", e, "<-", c] => {
                let c = parse_usize(line, c, "color")?;
                Move::Assign(parse_element(line, e)?, c as Color)
            }
            ["uncolor", e] => Move::Uncolor(parse_element(line, e)?),
            ["swap", a, b] => Move::Swap(parse_element(line, a)?, parse_element(line, b)?),
            ["alternate", rest @ ..] if rest.len() >= 3 => {
                let mut path = Vec::new();
                for w in rest {
                    match parse_element(line, w)? {
                        Element::Vertex(v) => path.push(v),
                        e => {
                            return err(
                                line,
                                ParseErrorKind::Malformed(format!(
                                    "alternate paths are vertex lists, found `{}`",
                                    e
                                )),
                            )
                        }
                    }
                }
                Move::Alternate(path)
            }
            _ => {
                return err(
                    line,
                    ParseErrorKind::Malformed(format!("unrecognized move `{}`", body)),
                )
            }
        };
        moves.push(mv);
    }
    Ok(moves)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> PlanarEmbedding {
        PlanarEmbedding::build(vec![
            vec![1, 2, 3],
            vec![2, 0, 3],
            vec![0, 1, 3],
            vec![0, 2, 1],
        ])
        .unwrap()
    }

    #[test]
    fn embedding_round_trips() {
        let g = k4();
        let text = serialize_embedding(&g);
        let back = parse_embedding(&text).unwrap();
        assert_eq!(back.rotations(), g.rotations());
        assert_eq!(serialize_embedding(&back), text);
    }

    #[test]
    fn embedding_parser_reports_lines() {
        // Vertex 1 lists 2 as a neighbour but 2 does not list 1 back.
        let bad = "3 2\n0: 1\n1: 0 2\n2: 0\n";
        let e = parse_embedding(bad).unwrap_err();
        assert_eq!(e.line, 3, "blame the rotation that lists a non-neighbour: {}", e);
        assert!(matches!(e.kind, ParseErrorKind::Graph(GraphError::AsymmetricAdjacency { u: 1, v: 2 })));

        let dup = "2 1\n0: 1\n0: 1\n";
        let e = parse_embedding(dup).unwrap_err();
        assert_eq!((e.line, matches!(e.kind, ParseErrorKind::BadVertexId(_))), (3, true));

        let short = "3 3\n0: 1 2\n1: 2 0\n";
        let e = parse_embedding(short).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::CountMismatch(_)));

        let miscounted = "3 2\n0: 1 2\n1: 2 0\n2: 0 1\n";
        let e = parse_embedding(miscounted).unwrap_err();
        assert_eq!(e.line, 1);
        assert!(matches!(e.kind, ParseErrorKind::CountMismatch(_)));
    }

    #[test]
    fn coloring_round_trips() {
        let mut phi = TotalColoring::new(9);
        phi.set(Element::Vertex(0), 4);
        phi.set(Element::Vertex(2), 1);
        phi.set(Element::edge(2, 0), 7);
        phi.set(Element::edge(0, 1), 9);
        let text = serialize_coloring(&phi);
        assert_eq!(text, "9\nv 0 4\nv 2 1\ne 0 1 9\ne 0 2 7\n");
        assert_eq!(parse_coloring(&text).unwrap(), phi);
    }

    #[test]
    fn coloring_parser_rejects_bad_lines() {
        assert_eq!(parse_coloring("9\ne 3 1 5\n").unwrap_err().line, 2);
        assert_eq!(parse_coloring("9\nv 0 10\n").unwrap_err().line, 2);
        assert_eq!(parse_coloring("9\nv 0 4\nv 0 5\n").unwrap_err().line, 3);
        assert_eq!(parse_coloring("0\n").unwrap_err().line, 1);
    }

    #[test]
    fn move_log_round_trips() {
        let moves = vec![
            Move::Assign(Element::edge(0, 3), 5),
            Move::Uncolor(Element::Vertex(2)),
            Move::Swap(Element::edge(1, 2), Element::edge(3, 4)),
            Move::Alternate(vec![0, 1, 2]),
        ];
        let text = serialize_move_log(&moves);
        assert_eq!(parse_move_log(&text).unwrap(), moves);
        assert_eq!(parse_move_log("# produced by cfg:4a play 3\nuncolor v1\n").unwrap().len(), 1);
    }
}
