use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Poset;

/// Covering relation of a poset, ready for DOT or JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseDiagram {
    pub size: usize,
    pub covers: Vec<[usize; 2]>,
}

impl HasseDiagram {
    pub fn new(poset: &Poset) -> Self {
        HasseDiagram {
            size: poset.size(),
            covers: poset.covers().into_iter().map(|(lo, hi)| [lo, hi]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// DOT with nodes labeled by index, bottom to top.
    pub fn to_dot(&self) -> String {
        self.to_dot_with(|i| i.to_string(), |_| false)
    }

    /// DOT with custom labels; `marked` nodes are drawn filled.
    pub fn to_dot_with(
        &self,
        label: impl Fn(usize) -> String,
        marked: impl Fn(usize) -> bool,
    ) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
        for i in 0..self.size {
            let style = if marked(i) {
                ", style=filled, fillcolor=lightgray, peripheries=2"
            } else {
                ""
            };
            let _ = writeln!(out, "  {i} [label=\"{}\"{style}];", escape(&label(i)));
        }
        for [lo, hi] in &self.covers {
            let _ = writeln!(out, "  {lo} -> {hi};");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
