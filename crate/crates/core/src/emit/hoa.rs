//! HOA v1 output and a reader for the emitted dialect.
//!
//! Each atom `q` becomes two propositions, `q` (index `2i`) and `q__neg`
//! (index `2i + 1`): `q` true encodes ⊤, `q__neg` true encodes ⊥, both false
//! encodes uu. Acceptance is state-based generalized Büchi.

use std::fmt::Write;

use thiserror::Error;

use super::quote;
use crate::gnba::Gnba;
use crate::letter::Letter;
use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoaDocument(pub String);

impl HoaDocument {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Conjunction of proposition literals `(index, positive)`; empty means `t`.
pub type HoaLabel = Vec<(usize, bool)>;

fn guard_label(g: &Gnba, q: usize) -> HoaLabel {
    let guard = g.guard(q);
    let mut label = Vec::new();
    for i in 0..g.alphabet().len() {
        if g.guard_mask() & (1u64 << i) == 0 {
            continue;
        }
        let v = guard.value(i);
        label.push((2 * i, v == TruthValue::Top));
        label.push((2 * i + 1, v == TruthValue::Bot));
    }
    label
}

fn label_text(label: &HoaLabel) -> String {
    if label.is_empty() {
        return "t".to_string();
    }
    label
        .iter()
        .map(|&(p, pos)| if pos { p.to_string() } else { format!("!{p}") })
        .collect::<Vec<_>>()
        .join("&")
}

pub fn to_hoa(g: &Gnba) -> HoaDocument {
    let k = g.acceptance().len();
    let mut out = String::new();
    out.push_str("HOA: v1\n");
    writeln!(out, "name: {}", quote(&format!("A({}, {})", g.formula(), g.value()))).unwrap();
    writeln!(out, "States: {}", g.state_count()).unwrap();
    for q in g.initial() {
        writeln!(out, "Start: {q}").unwrap();
    }
    write!(out, "AP: {}", 2 * g.alphabet().len()).unwrap();
    for atom in g.alphabet().atoms() {
        write!(out, " {} {}", quote(atom), quote(&format!("{atom}__neg"))).unwrap();
    }
    out.push('\n');
    writeln!(out, "acc-name: generalized-Buchi {k}").unwrap();
    let infs: Vec<String> = (0..k).map(|i| format!("Inf({i})")).collect();
    writeln!(out, "Acceptance: {k} {}", infs.join("&")).unwrap();
    out.push_str("properties: trans-labels explicit-labels state-acc\n");
    out.push_str("--BODY--\n");
    for (q, set) in g.states().iter().enumerate() {
        let accs: Vec<String> = g.acceptance_of(q).iter().map(usize::to_string).collect();
        writeln!(out, "State: {q} {} {{{}}}", quote(&set.display(g.closure()).to_string()), accs.join(" ")).unwrap();
        let label = label_text(&guard_label(g, q));
        for t in g.successors(q) {
            writeln!(out, "[{label}] {t}").unwrap();
        }
    }
    out.push_str("--END--\n");
    HoaDocument(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoaError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header item `{0}`")]
    Missing(&'static str),
}

/// Automaton as read back from HOA text.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HoaAutomaton {
    pub name: Option<String>,
    pub states: usize,
    pub start: Vec<usize>,
    pub aps: Vec<String>,
    pub acc_name: String,
    pub acceptance_sets: usize,
    pub state_names: Vec<Option<String>>,
    pub state_acc: Vec<Vec<usize>>,
    pub edges: Vec<Vec<(HoaLabel, usize)>>,
}

impl HoaAutomaton {
    /// The structure `to_hoa(g)` is expected to describe.
    pub fn from_gnba(g: &Gnba) -> Self {
        let n = g.state_count();
        HoaAutomaton {
            name: Some(format!("A({}, {})", g.formula(), g.value())),
            states: n,
            start: g.initial().to_vec(),
            aps: g.alphabet().atoms().iter().flat_map(|a| [a.clone(), format!("{a}__neg")]).collect(),
            acc_name: format!("generalized-Buchi {}", g.acceptance().len()),
            acceptance_sets: g.acceptance().len(),
            state_names: g.states().iter().map(|s| Some(s.display(g.closure()).to_string())).collect(),
            state_acc: (0..n).map(|q| g.acceptance_of(q)).collect(),
            edges: (0..n)
                .map(|q| {
                    let label = guard_label(g, q);
                    g.successors(q).iter().map(|&t| (label.clone(), t)).collect()
                })
                .collect(),
        }
    }

    /// Targets of `state` under a letter, using the two-propositions encoding.
    pub fn targets(&self, state: usize, letter: Letter) -> Vec<usize> {
        let holds = |p: usize| {
            let v = letter.value(p / 2);
            if p.is_multiple_of(2) {
                v == TruthValue::Top
            } else {
                v == TruthValue::Bot
            }
        };
        self.edges[state]
            .iter()
            .filter(|(label, _)| label.iter().all(|&(p, pos)| holds(p) == pos))
            .map(|&(_, t)| t)
            .collect()
    }
}

struct Cursor<'a> {
    rest: &'a str,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> HoaError {
        HoaError::Syntax { line: self.line, message: message.into() }
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.rest.is_empty()
    }

    fn int(&mut self) -> Result<usize, HoaError> {
        self.skip_ws();
        let end = self.rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest.len());
        if end == 0 {
            return Err(self.err(format!("expected integer at `{}`", self.rest)));
        }
        let (digits, rest) = self.rest.split_at(end);
        self.rest = rest;
        digits.parse().map_err(|_| self.err("integer out of range"))
    }

    fn string(&mut self) -> Result<String, HoaError> {
        self.skip_ws();
        let mut chars = self.rest.char_indices();
        if chars.next().map(|(_, c)| c) != Some('"') {
            return Err(self.err("expected string"));
        }
        let mut out = String::new();
        let mut escaped = false;
        for (i, c) in chars {
            if escaped {
                out.push(c);
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                self.rest = &self.rest[i + 1..];
                return Ok(out);
            } else {
                out.push(c);
            }
        }
        Err(self.err("unterminated string"))
    }

    fn eat(&mut self, prefix: &str) -> bool {
        self.skip_ws();
        if let Some(rest) = self.rest.strip_prefix(prefix) {
            self.rest = rest;
            true
        } else {
            false
        }
    }
}

fn parse_label(c: &mut Cursor<'_>) -> Result<HoaLabel, HoaError> {
    if c.eat("t") {
        return Ok(Vec::new());
    }
    let mut label = Vec::new();
    loop {
        let positive = !c.eat("!");
        label.push((c.int()?, positive));
        if !c.eat("&") {
            return Ok(label);
        }
    }
}

/// Reads HOA text of the dialect produced by [`to_hoa`].
pub fn parse_hoa(text: &str) -> Result<HoaAutomaton, HoaError> {
    let mut a = HoaAutomaton::default();
    let mut states = None;
    let mut in_body = false;
    let mut current: Option<usize> = None;
    let mut seen_version = false;
    let mut seen_acceptance = false;
    for (n, raw) in text.lines().enumerate() {
        let mut c = Cursor { rest: raw, line: n + 1 };
        if c.done() {
            continue;
        }
        if !in_body {
            if c.eat("--BODY--") {
                let count = states.ok_or(HoaError::Missing("States"))?;
                if !seen_version {
                    return Err(HoaError::Missing("HOA"));
                }
                if !seen_acceptance {
                    return Err(HoaError::Missing("Acceptance"));
                }
                a.states = count;
                a.state_names = vec![None; count];
                a.state_acc = vec![Vec::new(); count];
                a.edges = vec![Vec::new(); count];
                in_body = true;
                continue;
            }
            let Some((key, _)) = c.rest.split_once(':') else {
                return Err(c.err("expected header item"));
            };
            let key = key.trim().to_string();
            c.rest = &c.rest[c.rest.find(':').expect("split found colon") + 1..];
            match key.as_str() {
                "HOA" => {
                    if !c.eat("v1") {
                        return Err(c.err("unsupported HOA version"));
                    }
                    seen_version = true;
                }
                "name" => a.name = Some(c.string()?),
                "States" => states = Some(c.int()?),
                "Start" => a.start.push(c.int()?),
                "AP" => {
                    let count = c.int()?;
                    for _ in 0..count {
                        a.aps.push(c.string()?);
                    }
                }
                "acc-name" => {
                    a.acc_name = c.rest.trim().to_string();
                    c.rest = "";
                }
                "Acceptance" => {
                    a.acceptance_sets = c.int()?;
                    for i in 0..a.acceptance_sets {
                        if i > 0 && !c.eat("&") {
                            return Err(c.err("expected `&`"));
                        }
                        if !c.eat("Inf(") || c.int()? != i || !c.eat(")") {
                            return Err(c.err(format!("expected `Inf({i})`")));
                        }
                    }
                    if a.acceptance_sets == 0 && !c.eat("t") {
                        return Err(c.err("expected `t`"));
                    }
                    seen_acceptance = true;
                    c.rest = "";
                }
                "properties" => c.rest = "",
                other => return Err(c.err(format!("unsupported header item `{other}`"))),
            }
            if !c.done() {
                return Err(c.err(format!("trailing input `{}`", c.rest)));
            }
            continue;
        }
        if c.eat("--END--") {
            return Ok(a);
        }
        if c.eat("State:") {
            let q = c.int()?;
            if q >= a.states {
                return Err(c.err(format!("state {q} out of range")));
            }
            c.skip_ws();
            if c.rest.starts_with('"') {
                a.state_names[q] = Some(c.string()?);
            }
            if c.eat("{") {
                while !c.eat("}") {
                    let set = c.int()?;
                    if set >= a.acceptance_sets {
                        return Err(c.err(format!("acceptance set {set} out of range")));
                    }
                    a.state_acc[q].push(set);
                }
            }
            current = Some(q);
        } else if c.eat("[") {
            let q = current.ok_or_else(|| c.err("edge outside of a state"))?;
            let label = parse_label(&mut c)?;
            if label.iter().any(|&(p, _)| p >= a.aps.len()) {
                return Err(c.err("proposition index out of range"));
            }
            if !c.eat("]") {
                return Err(c.err("expected `]`"));
            }
            let t = c.int()?;
            if t >= a.states {
                return Err(c.err(format!("target {t} out of range")));
            }
            a.edges[q].push((label, t));
        } else {
            return Err(c.err("expected `State:` or an edge"));
        }
        if !c.done() {
            return Err(c.err(format!("trailing input `{}`", c.rest)));
        }
    }
    Err(HoaError::Missing("--END--"))
}
