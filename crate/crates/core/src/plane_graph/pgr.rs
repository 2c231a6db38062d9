//! The PGR v1 text format.
//!
//! ```text
//! # comment
//! pgr 1 <n> <outer face walk>
//! <vertex>: <counter-clockwise neighbors>
//! ```
//!
//! Vertex ids are 0-based. The canonical form writes each rotation starting
//! at its smallest neighbor, the outer walk at its lexicographically smallest
//! rotation, and vertex lines in ascending order.

use std::fmt::Write as _;

use super::{OuterHint, PlaneError, PlaneGraph};

pub fn to_pgr(g: &PlaneGraph) -> String {
    let mut out = String::new();
    write!(out, "pgr 1 {}", g.vertex_count()).unwrap();
    for v in g.canonical_outer_boundary() {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    for (v, rot) in g.rotations().iter().enumerate() {
        write!(out, "{v}:").unwrap();
        for w in rot {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_pgr(text: &str) -> Result<PlaneGraph, PlaneError> {
    let err = |line: usize, msg: String| PlaneError::Parse { line, msg };
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| err(0, "missing header".into()))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("pgr") || tokens.next() != Some("1") {
        return Err(err(hline, "header must start with `pgr 1`".into()));
    }
    let n: usize = tokens
        .next()
        .ok_or_else(|| err(hline, "missing vertex count".into()))?
        .parse()
        .map_err(|e| err(hline, format!("bad vertex count: {e}")))?;
    let outer = tokens
        .map(|t| t.parse::<usize>().map_err(|e| err(hline, format!("bad outer vertex `{t}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if outer.is_empty() {
        return Err(err(hline, "missing outer face walk".into()));
    }

    let mut rotations: Vec<Option<Vec<usize>>> = vec![None; n];
    for (lno, line) in lines {
        let (head, rest) = line.split_once(':').ok_or_else(|| err(lno, "expected `<vertex>: <neighbors>`".into()))?;
        let v: usize = head.trim().parse().map_err(|e| err(lno, format!("bad vertex id: {e}")))?;
        if v >= n {
            return Err(err(lno, format!("vertex {v} out of range for n = {n}")));
        }
        if rotations[v].is_some() {
            return Err(err(lno, format!("vertex {v} listed twice")));
        }
        let rot = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| err(lno, format!("bad neighbor `{t}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rotations[v] = Some(rot);
    }
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| err(0, format!("vertex {v} has no rotation line"))))
        .collect::<Result<Vec<_>, _>>()?;
    PlaneGraph::from_rotations(rotations, OuterHint::Boundary(outer))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn k4_text() {
        let text = to_pgr(&k4());
        assert_eq!(text, "pgr 1 4 0 2 1\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n");
        assert_eq!(parse_pgr(&text).unwrap(), k4());
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# a triangle\n\npgr 1 3 0 2 1\n0: 1 2\n# middle\n1: 2 0\n2: 0 1\n";
        let g = parse_pgr(text).unwrap();
        assert_eq!(to_pgr(&g), "pgr 1 3 0 2 1\n0: 1 2\n1: 0 2\n2: 0 1\n");
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_pgr(""), Err(PlaneError::Parse { .. })));
        assert!(matches!(parse_pgr("pgr 2 3 0 1 2\n"), Err(PlaneError::Parse { .. })));
        assert!(matches!(parse_pgr("pgr 1 3 0 2 1\n0: 1 2\n1: 2 0\n"), Err(PlaneError::Parse { .. })));
        assert!(matches!(parse_pgr("pgr 1 3 0 2 1\n0: 1 2\n1: 2 0\n2: 0\n"), Err(PlaneError::Asymmetric(1, 2))));
        assert!(matches!(parse_pgr("pgr 1 3 0 1 2 0\n0: 1 2\n1: 2 0\n2: 0 1\n"), Err(PlaneError::OuterNotFound(_))));
    }
}
