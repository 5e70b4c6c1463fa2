use std::fmt::Write;

use super::{escape, literal_set, quote};
use crate::gnba::Gnba;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotDocument(pub String);

impl DotDocument {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// One node per state (initial states filled yellow, label lists the set
/// and its acceptance indices), one edge per (source, target) pair labelled
/// with the source's literal pattern.
pub fn to_dot(g: &Gnba) -> DotDocument {
    let mut out = String::new();
    let title = format!("A({}, {})", g.formula(), g.value());
    writeln!(out, "digraph {} {{", quote(&title)).unwrap();
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=ellipse];\n");
    for (q, set) in g.states().iter().enumerate() {
        let accs: Vec<String> = g.acceptance_of(q).iter().map(usize::to_string).collect();
        let label = format!("\"{}\\nF: {}\"", escape(&set.display(g.closure()).to_string()), accs.join(","));
        let style = if g.initial().contains(&q) {
            ", style=filled, fillcolor=yellow"
        } else {
            ""
        };
        writeln!(out, "  q{q} [label={label}{style}];").unwrap();
    }
    for q in 0..g.state_count() {
        let guard = quote(&literal_set(g.guard(q), g.alphabet()));
        for t in g.successors(q) {
            writeln!(out, "  q{q} -> q{t} [label={guard}];").unwrap();
        }
    }
    out.push_str("}\n");
    DotDocument(out)
}
