//! Text and JSON output for diagrams.

use serde::{Deserialize, Serialize};

use super::LinkDiagram;

/// JSON interchange form of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub name: Option<String>,
    pub pd: String,
    pub crossings: Vec<CrossingJson>,
    pub components: Vec<Vec<usize>>,
    pub colors: Vec<u32>,
    pub linking_matrix: Vec<Vec<i64>>,
    pub writhe: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub arcs: [usize; 4],
    pub sign: i8,
    pub singular: bool,
}

impl LinkDiagram {
    /// PD text that parses back to an identical diagram. Arcs are edge
    /// ids plus one.
    pub fn render_pd(&self) -> String {
        // components whose direction the parser could not recover
        let anchored: Vec<bool> = self
            .components
            .iter()
            .map(|c| {
                c.edges.len() >= 3
                    || c.edges.iter().any(|&e| matches!(self.edges[e].head, Some(p) if p.slot == 0))
            })
            .collect();
        let mut toks = Vec::new();
        for (i, x) in self.crossings.iter().enumerate() {
            let (_, o) = self.strand_components(i);
            let base = if x.singular { "S" } else { "X" };
            let suffix = if anchored[o] {
                ""
            } else if x.sign > 0 {
                "p"
            } else {
                "m"
            };
            let a = x.slots.map(|e| e + 1);
            toks.push(format!("{}{}[{},{},{},{}]", base, suffix, a[0], a[1], a[2], a[3]));
        }
        for c in &self.components {
            if self.is_free_loop(c.edges[0]) {
                toks.push(format!("O[{}]", c.edges[0] + 1));
            }
        }
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("[{}]", c.edges.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let colors: Vec<String> = self.components.iter().map(|c| c.color.to_string()).collect();
        let mut out = String::new();
        if let Some(n) = &self.name {
            out.push_str(&format!("# {}\n", n));
        }
        out.push_str(&toks.join(" "));
        out.push_str(&format!("\ncomponents: [{}]\ncolors: [{}]\n", comps.join(","), colors.join(",")));
        out
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            name: self.name.clone(),
            pd: self.render_pd(),
            crossings: self
                .crossings
                .iter()
                .map(|x| CrossingJson { arcs: x.slots.map(|e| e + 1), sign: x.sign, singular: x.singular })
                .collect(),
            components: self.components.iter().map(|c| c.edges.iter().map(|e| e + 1).collect()).collect(),
            colors: self.coloring(),
            linking_matrix: self.linking_matrix(),
            writhe: self.writhe(),
        }
    }
}
