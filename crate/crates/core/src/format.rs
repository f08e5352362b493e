//! Plain-text formats for mixed graphs and mixed adjacency matrices.
//!
//! Graph:
//! ```text
//! # comment
//! vertices 3
//! u 0 1
//! d 1 2
//! ```
//! `d i j` is a directed edge with head `j`. A family is a sequence of graph
//! blocks separated by blank lines.
//!
//! Matrix: `size r`, then `r` rows of `U`, a blank line, then `r` rows of `D`.

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, MixedGraph};
use crate::matrix::MixedAdjacencyMatrix;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A non-comment line with its 1-based number, or `None` for a blank one.
struct Line<'a> {
    number: usize,
    text: Option<&'a str>,
}

fn lines(input: &str) -> impl Iterator<Item = Line<'_>> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            // A line holding only a comment is ignored; a truly blank one separates blocks.
            if raw.trim().is_empty() {
                Some(Line { number: i + 1, text: None })
            } else {
                None
            }
        } else {
            Some(Line {
                number: i + 1,
                text: Some(body),
            })
        }
    })
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &text[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

fn parse_index(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, col, format!("expected {what}, found `{tok}`")))
}

fn expect_end(line: usize, toks: &[(usize, &str)], n: usize) -> Result<()> {
    match toks.get(n) {
        Some(&(col, tok)) => Err(parse_err(line, col, format!("unexpected token `{tok}`"))),
        None => Ok(()),
    }
}

fn graph_block(block: &[(usize, &str)]) -> Result<MixedGraph> {
    let (first_line, first) = block[0];
    let toks = tokens(first);
    if toks[0].1 != "vertices" {
        return Err(parse_err(first_line, toks[0].0, "expected `vertices <n>`"));
    }
    let Some(&count) = toks.get(1) else {
        return Err(parse_err(first_line, first.trim_end().len() + 1, "missing vertex count"));
    };
    let n = parse_index(first_line, count, "a vertex count")?;
    expect_end(first_line, &toks, 2)?;
    let mut g = MixedGraph::new(n);
    for &(line, text) in &block[1..] {
        let toks = tokens(text);
        let (kcol, kind) = toks[0];
        if kind != "u" && kind != "d" {
            return Err(parse_err(line, kcol, format!("expected `u` or `d`, found `{kind}`")));
        }
        if toks.len() < 3 {
            return Err(parse_err(line, text.trim_end().len() + 1, "expected two vertex indices"));
        }
        let a = parse_index(line, toks[1], "a vertex index")?;
        let b = parse_index(line, toks[2], "a vertex index")?;
        expect_end(line, &toks, 3)?;
        let added = if kind == "u" {
            g.add_undirected(a, b)
        } else {
            g.add_directed(a, b)
        };
        if let Err(e) = added {
            let msg = match e {
                Error::InvalidGraph(m) => m,
                other => other.to_string(),
            };
            return Err(parse_err(line, toks[1].0, msg));
        }
    }
    Ok(g)
}

fn blocks(input: &str) -> Vec<Vec<(usize, &str)>> {
    let mut out: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    for l in lines(input) {
        match l.text {
            Some(t) => out.last_mut().unwrap().push((l.number, t)),
            None => {
                if !out.last().unwrap().is_empty() {
                    out.push(Vec::new());
                }
            }
        }
    }
    out.retain(|b| !b.is_empty());
    out
}

/// Parses exactly one graph.
pub fn parse_graph(input: &str) -> Result<MixedGraph> {
    let mut family = parse_family(input)?;
    match family.len() {
        1 => Ok(family.pop().unwrap()),
        0 => Err(parse_err(1, 1, "no graph found")),
        _ => {
            let second = blocks(input)[1][0].0;
            Err(parse_err(second, 1, "expected a single graph, found several blocks"))
        }
    }
}

/// Parses one or more blank-line-separated graph blocks.
pub fn parse_family(input: &str) -> Result<Vec<MixedGraph>> {
    blocks(input).iter().map(|b| graph_block(b)).collect()
}

pub fn emit_graph(g: &MixedGraph) -> String {
    let mut s = format!("vertices {}\n", g.vertex_count());
    for (a, b, kind) in g.edges() {
        match kind {
            EdgeKind::Undirected => s.push_str(&format!("u {a} {b}\n")),
            EdgeKind::Directed { head } => {
                let tail = if head == b { a } else { b };
                s.push_str(&format!("d {tail} {head}\n"));
            }
        }
    }
    s
}

pub fn emit_family(family: &[MixedGraph]) -> String {
    family
        .iter()
        .map(emit_graph)
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses the matrix format. Validation errors from the matrix constructor
/// are reported at the `size` line.
pub fn parse_matrix(input: &str) -> Result<MixedAdjacencyMatrix> {
    let bs = blocks(input);
    let Some(first) = bs.first() else {
        return Err(parse_err(1, 1, "no matrix found"));
    };
    let (size_line, head) = first[0];
    let toks = tokens(head);
    if toks[0].1 != "size" || toks.len() < 2 {
        return Err(parse_err(size_line, toks[0].0, "expected `size <r>`"));
    }
    let r = parse_index(size_line, toks[1], "a matrix size")?;
    expect_end(size_line, &toks, 2)?;
    if r == 0 {
        return Err(parse_err(size_line, toks[1].0, "size must be positive"));
    }
    // Tolerate a blank line between `size` and U.
    let empty: &[(usize, &str)] = &[];
    let (u_rows, d_rows) = if first.len() > 1 {
        (&first[1..], bs.get(1).map_or(empty, |b| &b[..]))
    } else {
        (bs.get(1).map_or(empty, |b| &b[..]), bs.get(2).map_or(empty, |b| &b[..]))
    };
    let extra = if first.len() > 1 { bs.get(2) } else { bs.get(3) };
    if let Some(b) = extra {
        return Err(parse_err(b[0].0, 1, "unexpected trailing content"));
    }
    let rows = |block: &[(usize, &str)], name: &str, fallback_line: usize| -> Result<Vec<Vec<u8>>> {
        if block.len() != r {
            let line = block.get(r).map_or(fallback_line, |l| l.0);
            return Err(parse_err(line, 1, format!("expected {r} rows of {name}, found {}", block.len())));
        }
        block
            .iter()
            .map(|&(line, text)| {
                let toks = tokens(text);
                if toks.len() != r {
                    let col = toks.get(r).map_or(text.trim_end().len() + 1, |t| t.0);
                    return Err(parse_err(line, col, format!("expected {r} entries in {name} row")));
                }
                toks.iter()
                    .map(|&(col, t)| {
                        t.parse::<u8>()
                            .map_err(|_| parse_err(line, col, format!("bad {name} entry `{t}`")))
                    })
                    .collect()
            })
            .collect()
    };
    let last_line = input.lines().count().max(1);
    let u = rows(u_rows, "U", last_line)?;
    let d = rows(d_rows, "D", last_line)?;
    MixedAdjacencyMatrix::new(u, d).map_err(|e| parse_err(size_line, 1, e.to_string()))
}

pub fn emit_matrix(m: &MixedAdjacencyMatrix) -> String {
    m.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{all_graphs, bk_matrix};
    use crate::named::*;
    use proptest::prelude::*;

    #[test]
    fn parses_graph_with_comments() {
        let g = parse_graph("# arrow triangle\nvertices 3\nd 0 1 # base\nu 0 2\nu 2 1\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.undirected_count(), 2);
        assert_eq!(g.directed_edges(), vec![(0, 1)]);
        assert_eq!(g, arrow_clique(3));
    }

    #[test]
    fn duplicate_pair_is_a_parse_error() {
        let e = parse_graph("vertices 2\nu 0 1\nd 1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 3, .. }), "{e}");
    }

    #[test]
    fn reports_positions() {
        let e = parse_graph("vertices 2\nx 0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 1, .. }));
        let e = parse_graph("vertices 2\nu 0 q\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 5, .. }));
        let e = parse_graph("vertices 2\nu 0 5\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_graph("  vertex 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 3, .. }));
        assert!(parse_graph("vertices 2\n\nvertices 3\n").is_err());
        assert!(parse_graph("# nothing\n").is_err());
    }

    #[test]
    fn family_blocks() {
        let text = "vertices 2\nd 0 1\n\n# second\n\n\nvertices 3\nu 0 1\nu 1 2\nu 0 2\n";
        let fam = parse_family(text).unwrap();
        assert_eq!(fam, vec![directed_edge(), clique(3)]);
        assert_eq!(parse_family(&emit_family(&fam)).unwrap(), fam);
    }

    #[test]
    fn matrix_round_trip() {
        for m in [g1(), g2(), g4(), example_template(), bk_matrix(2), transitive_tournament(4)] {
            let text = emit_matrix(&m);
            assert_eq!(parse_matrix(&text).unwrap(), m, "{text}");
        }
        let with_comments = "# G_4\nsize 3\n0 0 1\n0 0 0 # row\n1 0 0\n\n0 2 0\n0 0 2\n0 0 0\n";
        assert_eq!(parse_matrix(with_comments).unwrap(), g4());
        let spaced = "size 1\n\n1\n\n0\n";
        assert_eq!(parse_matrix(spaced).unwrap(), MixedAdjacencyMatrix::clique_template());
    }

    #[test]
    fn matrix_errors() {
        assert!(matches!(
            parse_matrix("size 2\n0 0\n0 0\n\n0 2\n2 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix("size 2\n0 0\n0\n\n0 2\n0 0\n"),
            Err(Error::Parse { line: 3, column: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("size 2\n0 0\n0 x\n\n0 2\n0 0\n"),
            Err(Error::Parse { line: 3, column: 3, .. })
        ));
        assert!(parse_matrix("size 2\n0 0\n0 0\n").is_err());
        assert!(parse_matrix("size 0\n").is_err());
        assert!(parse_matrix("size 1\n0\n\n0\n\n1\n").is_err());
    }

    #[test]
    fn every_small_graph_round_trips() {
        for n in 0..=3 {
            for g in all_graphs(n) {
                assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
            }
        }
    }

    fn arb_graph() -> impl Strategy<Value = MixedGraph> {
        (1usize..8).prop_flat_map(|n| {
            proptest::collection::vec(0u8..4, n * (n - 1) / 2).prop_map(move |rels| {
                let mut g = MixedGraph::new(n);
                let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
                for ((a, b), r) in pairs.zip(rels) {
                    match r {
                        1 => g.add_undirected(a, b).unwrap(),
                        2 => g.add_directed(a, b).unwrap(),
                        3 => g.add_directed(b, a).unwrap(),
                        _ => {}
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn graph_round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
        }

        #[test]
        fn matrix_round_trip_random(r in 1usize..6, seed in proptest::collection::vec(0u8..8, 21)) {
            let mut m = MixedAdjacencyMatrix::zero(r);
            let mut it = seed.into_iter();
            for i in 0..r {
                m.set_clique_part(i, it.next().unwrap() % 2 == 1);
            }
            for i in 0..r {
                for j in i + 1..r {
                    let rel = match it.next().unwrap_or(0) % 4 {
                        1 => crate::graph::Relation::Undirected,
                        2 => crate::graph::Relation::Out,
                        3 => crate::graph::Relation::In,
                        _ => crate::graph::Relation::None,
                    };
                    m.set_relation(i, j, rel);
                }
            }
            prop_assert_eq!(parse_matrix(&emit_matrix(&m)).unwrap(), m);
        }
    }
}
