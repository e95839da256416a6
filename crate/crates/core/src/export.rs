//! DOT and surgery-diagram exports.

use std::fmt::Write as _;

use crate::error::Result;
use crate::graph::ConfigGraph;
use crate::open_book::{surgery_framings, SurgeryLine};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices labelled `(g,m)` or `(g,m,a)`; edges labelled by sign and drawn
/// without arrowheads.
pub fn to_dot(g: &ConfigGraph) -> String {
    let mut out = String::from("digraph plumbing {\n");
    for v in g.vertices() {
        let label = match &v.area {
            Some(a) => format!("{} ({},{},{})", v.id, v.genus, v.m, a),
            None => format!("{} ({},{})", v.id, v.genus, v.m),
        };
        let _ = writeln!(out, "  {} [label={}];", quote(&v.id), quote(&label));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\", dir=none];",
            quote(&e.u),
            quote(&e.v),
            e.sign
        );
    }
    out.push_str("}\n");
    out
}

/// One line per binding component: `vertex:slot framing`.
pub fn surgery_text(g: &ConfigGraph) -> Result<String> {
    Ok(surgery_framings(g)?
        .iter()
        .map(|l| format!("{}:{} {}\n", l.vertex, l.slot, l.framing))
        .collect())
}

pub fn surgery_json(g: &ConfigGraph) -> Result<String> {
    let lines: Vec<SurgeryLine> = surgery_framings(g)?;
    Ok(serde_json::to_string_pretty(&lines).expect("surgery lines always serialize"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surgery_lines() {
        assert_eq!(surgery_text(&ConfigGraph::new().vertex("v", 0, 0)).unwrap(), "v:0 pf\n");
        assert_eq!(
            surgery_text(&ConfigGraph::new().vertex("v", 0, -3)).unwrap(),
            "v:0 pf-1\nv:1 pf-1\nv:2 pf-1\n"
        );
    }

    #[test]
    fn dot_counts() {
        let g = ConfigGraph::new().vertex("a", 0, 1).vertex("b", 1, -2).edge("a", "b").edge("a", "b");
        let dot = to_dot(&g);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), 2);
        assert!(dot.contains("(1,-2)"));
    }
}
