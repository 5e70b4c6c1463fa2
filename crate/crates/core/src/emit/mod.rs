//! DOT and HOA serializations of a [`Gnba`](crate::gnba::Gnba).

mod dot;
mod hoa;

pub use dot::{to_dot, DotDocument};
pub use hoa::{parse_hoa, to_hoa, HoaAutomaton, HoaDocument, HoaError, HoaLabel};

use crate::letter::{Alphabet, Letter};
use crate::truth::TruthValue;

/// `{a, !b}` for a literal set, `∅` when empty.
fn literal_set(letter: Letter, alphabet: &Alphabet) -> String {
    let lits: Vec<String> = alphabet
        .atoms()
        .iter()
        .enumerate()
        .filter_map(|(i, atom)| match letter.value(i) {
            TruthValue::Top => Some(atom.clone()),
            TruthValue::Bot => Some(format!("!{atom}")),
            TruthValue::Undef => None,
        })
        .collect();
    if lits.is_empty() {
        "∅".to_string()
    } else {
        format!("{{{}}}", lits.join(", "))
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}
