//! Deterministic text renderings of power graphs.

use std::fmt::Write;

use crate::oracle::PowerGraph;

/// Renders an undirected graph in DOT, vertices in index order with the
/// given labels, edges ascending.
pub fn render_dot(graph: &PowerGraph, labels: &[String], name: &str) -> String {
    assert_eq!(labels.len(), graph.vertex_count(), "one label per vertex");
    let mut out = String::new();
    writeln!(out, "graph \"{name}\" {{").unwrap();
    for (i, label) in labels.iter().enumerate() {
        writeln!(out, "    {i} [label=\"{label}\"];").unwrap();
    }
    for &(u, v) in graph.edges() {
        writeln!(out, "    {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Renders the edge list, one `u v` pair per line with `u < v`, ascending.
pub fn render_edge_list(graph: &PowerGraph) -> String {
    let mut out = String::new();
    for &(u, v) in graph.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{canonicalize, parse_group_spec};
    use crate::oracle::build_directed;

    #[test]
    fn dot_of_k4_lists_six_edges() {
        let (g, map) = canonicalize(&parse_group_spec("Z4").unwrap());
        let directed = build_directed(&g, 64).unwrap();
        let labels: Vec<String> = directed
            .vertices()
            .iter()
            .map(|e| map.unmap_element(e).unwrap()[0].to_string())
            .collect();
        let dot = render_dot(&directed.to_undirected(), &labels, &g.canonical_name());
        assert!(dot.starts_with("graph \"Z4\" {"));
        assert!(dot.ends_with("}\n"));
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.contains("0 [label=\"0\"];"));
    }

    #[test]
    fn edge_list_is_sorted_with_lower_index_first() {
        let (g, _) = canonicalize(&parse_group_spec("Z2xZ2").unwrap());
        let graph = build_directed(&g, 64).unwrap().to_undirected();
        assert_eq!(render_edge_list(&graph), "0 1\n0 2\n0 3\n");
    }
}
