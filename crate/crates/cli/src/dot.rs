//! Graphviz export. With a partition, vertices of `A` are black and the
//! decycling set `J` is white; edges inside `A` are solid, edges inside
//! `J` dashed, and edges between the sets dotted.

use decyc_core::decycling::DecyclingPartition;
use decyc_core::graph::Graph;
use std::fmt::Write;

pub fn export_dot(g: &Graph, partition: Option<&DecyclingPartition>) -> String {
    let mut out = String::from("graph g {\n  node [shape=circle, style=filled];\n");
    for v in g.vertices() {
        match partition {
            Some(p) if p.a.contains(v) => {
                let _ = writeln!(out, "  {} [fillcolor=black, fontcolor=white];", v.0);
            }
            Some(_) => {
                let _ = writeln!(out, "  {} [fillcolor=white];", v.0);
            }
            None => {
                let _ = writeln!(out, "  {} [fillcolor=lightgray];", v.0);
            }
        }
    }
    for e in g.edges() {
        let (u, v) = g.endpoints(e);
        let style = match partition {
            Some(p) => {
                if p.a.contains(u) && p.a.contains(v) {
                    "solid"
                } else if p.j.contains(u) && p.j.contains(v) {
                    "dashed"
                } else {
                    "dotted"
                }
            }
            None => "solid",
        };
        let _ = writeln!(out, "  {} -- {} [style={}];", u.0, v.0, style);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use decyc_core::decycling::classify_partition;
    use decyc_core::generators::{named, Named};
    use decyc_core::set::{Vertex, VertexSet};

    #[test]
    fn styled_cube_export() {
        let g = named(Named::Q3);
        let j: VertexSet = [0u32, 3, 7].into_iter().map(Vertex).collect();
        let a = g.all_vertices().difference(&j);
        let class = classify_partition(&g, &a, &j).unwrap();
        let p = DecyclingPartition { a, j, class };
        let dot = export_dot(&g, Some(&p));
        // The coherent cube partition: a 5-vertex tree (4 solid edges),
        // one edge inside J, and 3|J| - 2 e_J = 7 crossing edges.
        assert_eq!(dot.matches("style=solid").count(), 4);
        assert_eq!(dot.matches("style=dashed").count(), 1);
        assert_eq!(dot.matches("style=dotted").count(), 7);
    }

    #[test]
    fn plain_export() {
        let dot = export_dot(&named(Named::K4), None);
        assert_eq!(dot.matches(" -- ").count(), 6);
    }
}
