//! Three-valued transition models and model checking against `A(psi, v)`.

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;

use crate::elementary::DEFAULT_STATE_CAP;
use crate::emptiness::{find_accepting_lasso, BuchiGraph, Lasso};
use crate::error::{BuildError, ModelError, WordError};
use crate::gnba::{degeneralize, Gnba, Nba};
use crate::letter::{Alphabet, Letter};
use crate::oracle::LassoWord;
use crate::syntax::{is_identifier, CoreFormula};
use crate::truth::TruthValue;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDocument {
    states: Vec<String>,
    initial: String,
    edges: Vec<(String, String)>,
    #[serde(default)]
    labels: BTreeMap<String, BTreeMap<String, String>>,
}

/// Serial Kripke structure with a three-valued labelling. Unlabelled
/// `(state, atom)` pairs are undefined.
#[derive(Debug, Clone)]
pub struct TransitionModel {
    states: Vec<String>,
    initial: usize,
    edges: Vec<Vec<usize>>,
    labels: Vec<HashMap<String, TruthValue>>,
}

impl TransitionModel {
    pub fn new(
        states: Vec<String>,
        initial: &str,
        edges: &[(String, String)],
        labels: &BTreeMap<String, BTreeMap<String, TruthValue>>,
    ) -> Result<Self, ModelError> {
        if states.is_empty() {
            return Err(ModelError::NoStates);
        }
        let mut index = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(ModelError::DuplicateState(s.clone()));
            }
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| ModelError::UnknownState(s.to_string()));
        let initial = lookup(initial)?;
        let mut adjacency = vec![Vec::new(); states.len()];
        for (from, to) in edges {
            adjacency[lookup(from)?].push(lookup(to)?);
        }
        for succ in &mut adjacency {
            succ.sort_unstable();
            succ.dedup();
        }
        if let Some(i) = adjacency.iter().position(Vec::is_empty) {
            return Err(ModelError::NotSerial(states[i].clone()));
        }
        let mut label_maps = vec![HashMap::new(); states.len()];
        for (state, atoms) in labels {
            let i = lookup(state)?;
            for (atom, value) in atoms {
                if !is_identifier(atom) {
                    return Err(ModelError::InvalidAtom(atom.clone()));
                }
                label_maps[i].insert(atom.clone(), *value);
            }
        }
        Ok(TransitionModel { states, initial, edges: adjacency, labels: label_maps })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn successors(&self, s: usize) -> &[usize] {
        &self.edges[s]
    }

    pub fn label(&self, s: usize, atom: &str) -> TruthValue {
        self.labels[s].get(atom).copied().unwrap_or(TruthValue::Undef)
    }

    /// Literals of `s` over `alphabet`: `q` if true, `!q` if false.
    pub fn letter_of(&self, s: usize, alphabet: &Alphabet) -> Letter {
        alphabet
            .atoms()
            .iter()
            .enumerate()
            .fold(Letter::empty(), |l, (i, atom)| l.with_value(i, self.label(s, atom)))
    }

    /// The word read along a lasso of model states.
    pub fn word_of(&self, path: &Lasso<usize>, alphabet: &Alphabet) -> Result<LassoWord, WordError> {
        let letters = |xs: &[usize]| xs.iter().map(|&s| self.letter_of(s, alphabet)).collect();
        LassoWord::new(letters(&path.stem), letters(&path.cycle))
    }

    /// Whether `path` starts at the initial state and follows edges.
    pub fn is_path(&self, path: &Lasso<usize>) -> bool {
        let seq: Vec<usize> = path.stem.iter().chain(&path.cycle).copied().collect();
        !path.cycle.is_empty()
            && seq[0] == self.initial
            && seq.windows(2).all(|w| self.edges[w[0]].contains(&w[1]))
            && self.edges[*path.cycle.last().expect("non-empty")].contains(&path.cycle[0])
    }
}

/// Free-function form of [`TransitionModel::letter_of`].
pub fn letter_of(m: &TransitionModel, s: usize, alphabet: &Alphabet) -> Letter {
    m.letter_of(s, alphabet)
}

fn parse_value(state: &str, atom: &str, value: &str) -> Result<TruthValue, ModelError> {
    match value {
        "t" => Ok(TruthValue::Top),
        "f" => Ok(TruthValue::Bot),
        "u" => Ok(TruthValue::Undef),
        _ => Err(ModelError::BadValue { state: state.into(), atom: atom.into(), value: value.into() }),
    }
}

/// Reads the JSON model format:
///
/// ```json
/// {"states": ["s0", "s1"], "initial": "s0",
///  "edges": [["s0", "s1"], ["s1", "s1"]],
///  "labels": {"s0": {"a": "t"}, "s1": {"a": "f"}}}
/// ```
pub fn parse_model(document: &str) -> Result<TransitionModel, ModelError> {
    let doc: ModelDocument = serde_json::from_str(document).map_err(|e| ModelError::Format(e.to_string()))?;
    let mut labels = BTreeMap::new();
    for (state, atoms) in &doc.labels {
        let mut parsed = BTreeMap::new();
        for (atom, value) in atoms {
            parsed.insert(atom.clone(), parse_value(state, atom, value)?);
        }
        labels.insert(state.clone(), parsed);
    }
    TransitionModel::new(doc.states, &doc.initial, &doc.edges, &labels)
}

struct Product<'a> {
    model: &'a TransitionModel,
    nba: &'a Nba,
    letters: Vec<Letter>,
}

impl BuchiGraph for Product<'_> {
    type Node = (usize, usize);

    fn initial(&self) -> Vec<(usize, usize)> {
        self.nba.initial().iter().map(|&q| (self.model.initial(), q)).collect()
    }

    fn successors(&self, (s, q): (usize, usize)) -> Vec<(usize, usize)> {
        let targets = self.nba.transitions(q, self.letters[s]);
        self.model
            .successors(s)
            .iter()
            .flat_map(|&t| targets.iter().map(move |&r| (t, r)))
            .collect()
    }

    fn is_accepting(&self, (_, q): (usize, usize)) -> bool {
        self.nba.is_accepting(q)
    }
}

/// A lasso of model states whose word the automaton accepts, if any.
pub fn product_non_empty(m: &TransitionModel, nba: &Nba) -> Option<Lasso<usize>> {
    let letters = (0..m.states().len()).map(|s| m.letter_of(s, nba.alphabet())).collect();
    find_accepting_lasso(&Product { model: m, nba, letters }).map(|l| l.map(|(s, _)| s).normalized())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub value: TruthValue,
    /// A path from the initial state with value `value`; absent for ⊤.
    pub witness: Option<Lasso<usize>>,
}

impl Verdict {
    pub fn witness_text(&self, m: &TransitionModel) -> Option<String> {
        self.witness.as_ref().map(|w| {
            let names = |xs: &[usize]| xs.iter().map(|&s| m.state_name(s)).collect::<Vec<_>>().join(" ");
            format!("{} ; {}", names(&w.stem), names(&w.cycle)).trim_start().to_string()
        })
    }
}

/// ⊥ if some path from the initial state is ⊥, else uu if some path is uu,
/// else ⊤.
pub fn verdict(m: &TransitionModel, psi: &CoreFormula, alphabet: &Alphabet) -> Result<Verdict, BuildError> {
    verdict_with_cap(m, psi, alphabet, DEFAULT_STATE_CAP)
}

pub fn verdict_with_cap(
    m: &TransitionModel,
    psi: &CoreFormula,
    alphabet: &Alphabet,
    cap: u64,
) -> Result<Verdict, BuildError> {
    let bot = Gnba::build_with_cap(psi, alphabet, TruthValue::Bot, cap)?;
    if let Some(w) = product_non_empty(m, &degeneralize(&bot)) {
        return Ok(Verdict { value: TruthValue::Bot, witness: Some(w) });
    }
    let undef = bot.with_value(TruthValue::Undef);
    if let Some(w) = product_non_empty(m, &degeneralize(&undef)) {
        return Ok(Verdict { value: TruthValue::Undef, witness: Some(w) });
    }
    Ok(Verdict { value: TruthValue::Top, witness: None })
}
