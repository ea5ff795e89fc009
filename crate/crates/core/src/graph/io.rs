//! Plain-text graph files.
//!
//! A file is a sequence of blocks separated by blank lines. Each block starts
//! with `n=<count>`, optionally followed by the word `loops` to permit loop
//! lines, and continues with one `u v` edge per line (0-based, `u = v` for a
//! loop). Text after `#` is ignored. The graph of a file is the disjoint
//! union of its blocks.

use super::{Graph, GraphError, GraphSum};

struct Block {
    graph: Graph,
    loops: bool,
}

pub fn parse_graph_file(text: &str) -> Result<Graph, GraphError> {
    let mut blocks: Vec<Block> = Vec::new();
    let mut open = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| GraphError::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            // Blank lines close a block, comment-only lines do not.
            if raw.trim().is_empty() {
                open = false;
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            let mut words = rest.split_whitespace();
            let n: usize = words
                .next()
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| err(format!("bad vertex count in {line:?}")))?;
            let loops = match words.next() {
                None => false,
                Some("loops") => true,
                Some(other) => return Err(err(format!("unexpected {other:?} after vertex count"))),
            };
            if let Some(extra) = words.next() {
                return Err(err(format!("unexpected {extra:?}")));
            }
            blocks.push(Block {
                graph: Graph::empty(n),
                loops,
            });
            open = true;
            continue;
        }
        let block = match blocks.last_mut() {
            Some(b) if open => b,
            _ => return Err(err("edge line outside a block; start blocks with n=<count>".to_string())),
        };
        let ends: Vec<usize> = line
            .split_whitespace()
            .map(|w| w.parse::<usize>().map_err(|_| err(format!("bad vertex {w:?}"))))
            .collect::<Result<_, _>>()?;
        let [u, v] = ends[..] else {
            return Err(err(format!("expected two vertices, found {}", ends.len())));
        };
        if u == v && !block.loops {
            return Err(err(format!("loop at {u} in a block without the loops flag")));
        }
        block.graph.add_edge(u, v).map_err(|e| err(e.to_string()))?;
    }
    Ok(blocks
        .iter()
        .fold(Graph::empty(0), |acc, b| acc.disjoint_union(&b.graph)))
}

/// One block for `g`, ending in a newline.
pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("n={}", g.vertex_count());
    if !g.is_simple() {
        out.push_str(" loops");
    }
    out.push('\n');
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// One block per component, repeated by multiplicity.
pub fn format_graph_sum(gs: &GraphSum) -> String {
    let mut blocks = Vec::new();
    for (g, k) in gs.entries() {
        for _ in 0..*k {
            blocks.push(format_graph(g));
        }
    }
    blocks.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blocks_and_comments() {
        let text = "# two edges and a looped vertex\nn=2\n0 1\n\nn=2\n0 1\n\nn=1 loops\n0 0\n";
        let g = parse_graph_file(text).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 3);
        let sum = GraphSum::from_graph(&g).unwrap();
        assert_eq!(sum.component_count(), 3);
    }

    #[test]
    fn single_edge_list_splits_into_components() {
        let g = parse_graph_file("n=5\n0 1\n2 3\n").unwrap();
        assert_eq!(GraphSum::from_graph(&g).unwrap().component_count(), 3);
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("0 1\n", 1),
            ("n=2\n0 0\n", 2),
            ("n=2\n0 5\n", 2),
            ("n=x\n", 1),
            ("n=2\n0 1 2\n", 2),
            ("n=2 sparse\n", 1),
        ];
        for (text, line) in cases {
            match parse_graph_file(text) {
                Err(GraphError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn format_round_trips() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(format_graph(&g), "n=3 loops\n0 1\n1 2\n2 2\n");
        let sum = GraphSum::from_components([(g, 2), (Graph::complete(3), 1)]).unwrap();
        let back = GraphSum::from_graph(&parse_graph_file(&format_graph_sum(&sum)).unwrap()).unwrap();
        assert_eq!(back, sum);
    }
}
