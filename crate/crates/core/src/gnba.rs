//! The automaton `A(psi, v)` and its counter degeneralization.

use std::collections::HashMap;

use crate::elementary::{enumerate_elementary, is_elementary, ElementarySet, DEFAULT_STATE_CAP};
use crate::error::BuildError;
use crate::letter::{Alphabet, Letter};
use crate::syntax::{closure_of, BaseKind, Closure, CoreFormula, Signed};
use crate::truth::TruthValue;

pub type StateId = usize;

const ABSENT: u8 = 0b001;
const POSITIVE: u8 = 0b010;
const NEGATIVE: u8 = 0b100;
const ANY: u8 = ABSENT | POSITIVE | NEGATIVE;

/// Generalized Büchi automaton over consistent literal sets.
///
/// Transitions are stored per state as the single literal pattern the
/// state accepts (restricted to atoms of the closure) and its successor list.
#[derive(Debug, Clone)]
pub struct Gnba {
    formula: CoreFormula,
    value: TruthValue,
    alphabet: Alphabet,
    closure: Closure,
    states: Vec<ElementarySet>,
    initial: Vec<StateId>,
    guard_mask: u64,
    guards: Vec<Letter>,
    successors: Vec<Vec<StateId>>,
    acceptance: Vec<Vec<StateId>>,
}

impl Gnba {
    pub fn build(psi: &CoreFormula, alphabet: &Alphabet, v: TruthValue) -> Result<Self, BuildError> {
        Self::build_with_cap(psi, alphabet, v, DEFAULT_STATE_CAP)
    }

    pub fn build_with_cap(
        psi: &CoreFormula,
        alphabet: &Alphabet,
        v: TruthValue,
        cap: u64,
    ) -> Result<Self, BuildError> {
        if let Some(missing) = psi.atoms().into_iter().find(|a| alphabet.index_of(a).is_none()) {
            return Err(BuildError::UnknownAtom(missing));
        }
        let closure = closure_of(psi);
        let states = enumerate_elementary(&closure, cap)?;
        let ids: HashMap<ElementarySet, StateId> =
            states.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let atom_bits = atom_bits(&closure, alphabet);
        let guard_mask = atom_bits.iter().fold(0, |m, (_, bit)| m | bit);
        let guards = states.iter().map(|b| guard_of(*b, &atom_bits)).collect();

        let successors = states
            .iter()
            .map(|b| {
                let mut succ: Vec<StateId> = match successor_constraints(*b, &closure) {
                    Some(allowed) => expand(&allowed, &closure)
                        .into_iter()
                        .filter_map(|cand| ids.get(&cand).copied())
                        .collect(),
                    None => Vec::new(),
                };
                succ.sort_unstable();
                succ
            })
            .collect();

        let acceptance = acceptance_sets(&states, &closure);
        let mut gnba = Gnba {
            formula: psi.clone(),
            value: v,
            alphabet: alphabet.clone(),
            closure,
            states,
            initial: Vec::new(),
            guard_mask,
            guards,
            successors,
            acceptance,
        };
        gnba.initial = gnba.initial_for(v);
        Ok(gnba)
    }

    /// Same automaton with the initial states chosen for another truth value.
    pub fn with_value(&self, v: TruthValue) -> Gnba {
        let mut g = self.clone();
        g.value = v;
        g.initial = self.initial_for(v);
        g
    }

    fn initial_for(&self, v: TruthValue) -> Vec<StateId> {
        let psi = self.closure.signed(&self.formula).expect("formula is in its own closure");
        self.states
            .iter()
            .enumerate()
            .filter(|(_, b)| match v {
                TruthValue::Top => b.holds(psi),
                TruthValue::Bot => b.holds(psi.negated()),
                TruthValue::Undef => b.sign(psi.base).is_none(),
            })
            .map(|(i, _)| i)
            .collect()
    }

    pub fn formula(&self) -> &CoreFormula {
        &self.formula
    }

    pub fn value(&self) -> TruthValue {
        self.value
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn closure(&self) -> &Closure {
        &self.closure
    }

    pub fn states(&self) -> &[ElementarySet] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    /// Alphabet positions of the atoms that guards constrain.
    pub fn guard_mask(&self) -> u64 {
        self.guard_mask
    }

    /// The literal pattern `B ∩ Lit` of a state, over alphabet positions.
    pub fn guard(&self, state: StateId) -> Letter {
        self.guards[state]
    }

    pub fn enabled(&self, state: StateId, letter: Letter) -> bool {
        letter.restrict(self.guard_mask) == self.guards[state]
    }

    /// Successors of `state` whenever its guard is matched.
    pub fn successors(&self, state: StateId) -> &[StateId] {
        &self.successors[state]
    }

    /// `π(state, letter)`.
    pub fn transitions(&self, state: StateId, letter: Letter) -> &[StateId] {
        if self.enabled(state, letter) {
            &self.successors[state]
        } else {
            &[]
        }
    }

    /// Acceptance sets: one per until of the closure in closure order, then `Q`.
    pub fn acceptance(&self) -> &[Vec<StateId>] {
        &self.acceptance
    }

    pub fn in_acceptance_set(&self, set: usize, state: StateId) -> bool {
        self.acceptance[set].binary_search(&state).is_ok()
    }

    /// Indices of the acceptance sets containing `state`.
    pub fn acceptance_of(&self, state: StateId) -> Vec<usize> {
        (0..self.acceptance.len()).filter(|&i| self.in_acceptance_set(i, state)).collect()
    }

    pub fn transition_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }
}

fn atom_bits(closure: &Closure, alphabet: &Alphabet) -> Vec<(usize, u64)> {
    closure
        .atoms()
        .filter_map(|(base, name)| alphabet.index_of(name).map(|i| (base, 1u64 << i)))
        .collect()
}

fn guard_of(b: ElementarySet, atom_bits: &[(usize, u64)]) -> Letter {
    let (mut pos, mut neg) = (0, 0);
    for &(base, bit) in atom_bits {
        match b.sign(base) {
            Some(true) => pos |= bit,
            Some(false) => neg |= bit,
            None => {}
        }
    }
    Letter::from_masks(pos, neg).expect("elementary sets are consistent")
}

/// Allowed signs of the successor per base, or `None` when no successor
/// can satisfy the next/until requirements of `b`.
fn successor_constraints(b: ElementarySet, c: &Closure) -> Option<Vec<u8>> {
    let mut allowed = vec![ANY; c.len()];
    // Restricts `allowed` so that `holds(B', target) == want`.
    fn require(allowed: &mut [u8], target: Signed, want: bool) {
        let hit = if target.positive { POSITIVE } else { NEGATIVE };
        allowed[target.base] &= if want { hit } else { ANY & !hit };
    }
    for (i, kind) in c.kinds().iter().enumerate() {
        let this = Signed { base: i, positive: true };
        match kind {
            BaseKind::Next(child) => {
                require(&mut allowed, *child, b.holds(this));
                require(&mut allowed, child.negated(), b.holds(this.negated()));
            }
            BaseKind::Until(l, r) => {
                let pos = b.holds(this);
                if b.holds(*r) {
                    if !pos {
                        return None;
                    }
                } else if b.holds(*l) {
                    require(&mut allowed, this, pos);
                } else if pos {
                    return None;
                }
                let neg = b.holds(this.negated());
                if !b.holds(r.negated()) {
                    if neg {
                        return None;
                    }
                } else if b.holds(l.negated()) {
                    if !neg {
                        return None;
                    }
                } else {
                    require(&mut allowed, this.negated(), neg);
                }
            }
            _ => {}
        }
    }
    allowed.iter().all(|&a| a != 0).then_some(allowed)
}

/// Candidate sets matching `allowed`; conjunctions and `true` take their
/// forced sign instead of being branched on.
fn expand(allowed: &[u8], c: &Closure) -> Vec<ElementarySet> {
    let mut out = Vec::new();
    expand_from(0, ElementarySet::empty(), allowed, c, &mut out);
    out
}

fn expand_from(i: usize, acc: ElementarySet, allowed: &[u8], c: &Closure, out: &mut Vec<ElementarySet>) {
    if i == c.len() {
        out.push(acc);
        return;
    }
    let set = |digit: u8| {
        let bit = 1u64 << i;
        match digit {
            POSITIVE => ElementarySet::from_masks(acc.pos_mask() | bit, acc.neg_mask()),
            NEGATIVE => ElementarySet::from_masks(acc.pos_mask(), acc.neg_mask() | bit),
            _ => Some(acc),
        }
        .expect("base not yet assigned")
    };
    let forced = match &c.kinds()[i] {
        BaseKind::True => Some(POSITIVE),
        BaseKind::And(l, r) => Some(if acc.holds(*l) && acc.holds(*r) {
            POSITIVE
        } else if acc.holds(l.negated()) || acc.holds(r.negated()) {
            NEGATIVE
        } else {
            ABSENT
        }),
        _ => None,
    };
    match forced {
        Some(digit) => {
            if allowed[i] & digit != 0 {
                expand_from(i + 1, set(digit), allowed, c, out);
            }
        }
        None => {
            for digit in [ABSENT, POSITIVE, NEGATIVE] {
                if allowed[i] & digit != 0 {
                    expand_from(i + 1, set(digit), allowed, c, out);
                }
            }
        }
    }
}

/// `π(B, A)` computed directly from the closure, without a built automaton.
pub fn successors(b: ElementarySet, letter: Letter, alphabet: &Alphabet, c: &Closure) -> Vec<ElementarySet> {
    let mut guard_ok = true;
    for (base, name) in c.atoms() {
        let in_letter = alphabet.index_of(name).map(|i| letter.value(i));
        let expected = match b.sign(base) {
            Some(true) => TruthValue::Top,
            Some(false) => TruthValue::Bot,
            None => TruthValue::Undef,
        };
        if in_letter.unwrap_or(TruthValue::Undef) != expected {
            guard_ok = false;
        }
    }
    if !guard_ok {
        return Vec::new();
    }
    match successor_constraints(b, c) {
        Some(allowed) => expand(&allowed, c).into_iter().filter(|s| is_elementary(*s, c)).collect(),
        None => Vec::new(),
    }
}

/// `F_u` for every until `u = l U r` of the closure, then the full state set.
pub fn acceptance_sets(states: &[ElementarySet], c: &Closure) -> Vec<Vec<StateId>> {
    let mut sets: Vec<Vec<StateId>> = c
        .kinds()
        .iter()
        .enumerate()
        .filter_map(|(i, kind)| match kind {
            BaseKind::Until(_, r) => Some((Signed { base: i, positive: true }, *r)),
            _ => None,
        })
        .map(|(u, r)| {
            states
                .iter()
                .enumerate()
                .filter(|(_, b)| (!b.holds(u) || b.holds(r)) && (!b.holds(r.negated()) || b.holds(u.negated())))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    sets.push((0..states.len()).collect());
    sets
}

/// Büchi automaton with a single acceptance set, states `(gnba state, counter)`.
#[derive(Debug, Clone)]
pub struct Nba {
    alphabet: Alphabet,
    guard_mask: u64,
    counters: usize,
    states: Vec<(StateId, usize)>,
    initial: Vec<usize>,
    guards: Vec<Letter>,
    successors: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

impl Nba {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of counter values `k`.
    pub fn counters(&self) -> usize {
        self.counters
    }

    /// `(gnba state, counter)` with counters numbered from 1.
    pub fn states(&self) -> &[(StateId, usize)] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn guard(&self, state: usize) -> Letter {
        self.guards[state]
    }

    pub fn enabled(&self, state: usize, letter: Letter) -> bool {
        letter.restrict(self.guard_mask) == self.guards[state]
    }

    pub fn successors(&self, state: usize) -> &[usize] {
        &self.successors[state]
    }

    pub fn transitions(&self, state: usize, letter: Letter) -> &[usize] {
        if self.enabled(state, letter) {
            &self.successors[state]
        } else {
            &[]
        }
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn id_of(&self, gnba_state: StateId, counter: usize) -> usize {
        gnba_state * self.counters + (counter - 1)
    }
}

/// Counter construction: the counter moves from `i` to `i mod k + 1` when
/// leaving a state of `F_i`; accepting states are `F_1 × {1}`.
pub fn degeneralize(g: &Gnba) -> Nba {
    let k = g.acceptance().len();
    let n = g.state_count();
    let id = |q: StateId, i: usize| q * k + (i - 1);
    let mut states = Vec::with_capacity(n * k);
    let mut guards = Vec::with_capacity(n * k);
    let mut successors = Vec::with_capacity(n * k);
    let mut accepting = Vec::with_capacity(n * k);
    for q in 0..n {
        for i in 1..=k {
            states.push((q, i));
            guards.push(g.guard(q));
            let in_f = g.in_acceptance_set(i - 1, q);
            let j = if in_f { i % k + 1 } else { i };
            successors.push(g.successors(q).iter().map(|&t| id(t, j)).collect());
            accepting.push(i == 1 && in_f);
        }
    }
    Nba {
        alphabet: g.alphabet().clone(),
        guard_mask: g.guard_mask(),
        counters: k,
        states,
        initial: g.initial().iter().map(|&q| id(q, 1)).collect(),
        guards,
        successors,
        accepting,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_core;

    fn setup(text: &str, atoms: &str) -> (CoreFormula, Alphabet) {
        (parse_core(text).unwrap(), Alphabet::parse_list(atoms).unwrap())
    }

    fn shown(c: &Closure, sets: &[ElementarySet]) -> Vec<String> {
        let mut v: Vec<String> = sets.iter().map(|b| b.display(c).to_string()).collect();
        v.sort();
        v
    }

    fn ids_shown(g: &Gnba, ids: &[StateId]) -> Vec<String> {
        let sets: Vec<ElementarySet> = ids.iter().map(|&i| g.states()[i]).collect();
        shown(g.closure(), &sets)
    }

    #[test]
    fn next_undef_example() {
        let (f, ab) = setup("X a", "a");
        let g = Gnba::build(&f, &ab, TruthValue::Undef).unwrap();
        assert_eq!(g.state_count(), 9);
        assert_eq!(ids_shown(&g, g.initial()), ["{!a}", "{a}", "∅"]);
        assert_eq!(g.acceptance().len(), 1);
        assert_eq!(g.acceptance()[0].len(), 9);
    }

    #[test]
    fn atom_top() {
        let (f, ab) = setup("a", "a");
        let g = Gnba::build(&f, &ab, TruthValue::Top).unwrap();
        assert_eq!(g.state_count(), 3);
        assert_eq!(ids_shown(&g, g.initial()), ["{a}"]);
    }

    #[test]
    fn until_bot_initial_states() {
        let (f, ab) = setup("a U b", "a,b");
        let g = Gnba::build(&f, &ab, TruthValue::Bot).unwrap();
        // Elementary sets with !(a U b): b must be negated, a is free.
        assert_eq!(ids_shown(&g, g.initial()), ["{!a, !b, !(a U b)}", "{!b, !(a U b)}", "{a, !b, !(a U b)}"]);
        assert_eq!(g.initial().len(), 3);
    }

    #[test]
    fn unknown_atom_is_rejected() {
        let (f, ab) = setup("X a", "b");
        assert_eq!(
            Gnba::build(&f, &ab, TruthValue::Undef).unwrap_err(),
            BuildError::UnknownAtom("a".into())
        );
    }

    #[test]
    fn successor_examples() {
        let (f, ab) = setup("X a", "a");
        let c = closure_of(&f);
        let b = ElementarySet::from_formulas(&c, &[parse_core("a").unwrap(), f.clone()]).unwrap();
        let letter_a = ab.parse_letter("a").unwrap();
        assert_eq!(shown(&c, &successors(b, letter_a, &ab, &c)), ["{a, !X a}", "{a, X a}", "{a}"]);
        assert!(successors(b, Letter::empty(), &ab, &c).is_empty());
        assert_eq!(
            shown(&c, &successors(ElementarySet::empty(), Letter::empty(), &ab, &c)),
            ["{!X a}", "{X a}", "∅"]
        );
    }

    #[test]
    fn built_successors_agree_with_direct_computation() {
        for text in ["a U b", "!(a U b)", "X (a U X b)", "G F a", "a R (b & X a)", "(a U b) U a"] {
            let (f, ab) = setup(text, "a,b");
            let g = Gnba::build(&f, &ab, TruthValue::Top).unwrap();
            for (q, b) in g.states().iter().enumerate() {
                for letter in ab.letters() {
                    let mut direct = successors(*b, letter, &ab, g.closure());
                    direct.sort();
                    let mut built: Vec<ElementarySet> =
                        g.transitions(q, letter).iter().map(|&t| g.states()[t]).collect();
                    built.sort();
                    assert_eq!(direct, built, "{text}: state {q}");
                }
            }
        }
    }

    #[test]
    fn brute_force_successors_agree() {
        // Independent check of the constraint solver: filter every state.
        let (f, ab) = setup("(a U X b) & X !a", "a,b");
        let g = Gnba::build(&f, &ab, TruthValue::Top).unwrap();
        let c = g.closure();
        for (q, b) in g.states().iter().enumerate() {
            let expected: Vec<StateId> = g
                .states()
                .iter()
                .enumerate()
                .filter(|(_, n)| {
                    c.kinds().iter().enumerate().all(|(i, k)| {
                        let this = Signed { base: i, positive: true };
                        match k {
                            BaseKind::Next(x) => {
                                b.holds(this) == n.holds(*x) && b.holds(this.negated()) == n.holds(x.negated())
                            }
                            BaseKind::Until(l, r) => {
                                b.holds(this) == (b.holds(*r) || (b.holds(*l) && n.holds(this)))
                                    && b.holds(this.negated())
                                        == (b.holds(r.negated())
                                            && (b.holds(l.negated()) || n.holds(this.negated())))
                            }
                            _ => true,
                        }
                    })
                })
                .map(|(i, _)| i)
                .collect();
            assert_eq!(g.successors(q), expected.as_slice());
        }
    }

    #[test]
    fn acceptance_membership() {
        let (f, ab) = setup("a U b", "a,b");
        let g = Gnba::build(&f, &ab, TruthValue::Top).unwrap();
        let c = g.closure();
        let ua = ElementarySet::from_formulas(c, &[f.clone(), parse_core("a").unwrap()]).unwrap();
        let qa = g.states().iter().position(|s| *s == ua).unwrap();
        let qe = g.states().iter().position(|s| s.is_empty()).unwrap();
        assert!(!g.in_acceptance_set(0, qa));
        assert!(g.in_acceptance_set(0, qe));
        assert!(g.in_acceptance_set(1, qa));
        assert_eq!(g.acceptance_of(qe), [0, 1]);
    }

    #[test]
    fn extra_alphabet_atoms_are_unconstrained() {
        let (f, ab) = setup("X a", "a,z");
        let g = Gnba::build(&f, &ab, TruthValue::Undef).unwrap();
        let q = g.states().iter().position(|s| s.is_empty()).unwrap();
        for letter in ["", "z", "!z"] {
            assert_eq!(g.transitions(q, ab.parse_letter(letter).unwrap()).len(), 3);
        }
        assert!(g.transitions(q, ab.parse_letter("a").unwrap()).is_empty());
    }

    #[test]
    fn degeneralize_sizes() {
        let (f, ab) = setup("X a", "a");
        let g = Gnba::build(&f, &ab, TruthValue::Undef).unwrap();
        let n = degeneralize(&g);
        assert_eq!(n.state_count(), 9);
        assert!((0..9).all(|q| n.is_accepting(q)));
        assert_eq!(n.initial(), g.initial());

        let (f, ab) = setup("a U b & F a", "a,b");
        let g = Gnba::build(&f, &ab, TruthValue::Top).unwrap();
        let n = degeneralize(&g);
        assert_eq!(n.counters(), 3);
        assert_eq!(n.state_count(), g.state_count() * 3);
        for (id, &(q, i)) in n.states().iter().enumerate() {
            assert_eq!(n.id_of(q, i), id);
            assert_eq!(n.is_accepting(id), i == 1 && g.in_acceptance_set(0, q));
        }
    }

    #[test]
    fn value_only_changes_initial_states() {
        let (f, ab) = setup("a U X b", "a,b");
        let top = Gnba::build(&f, &ab, TruthValue::Top).unwrap();
        let bot = top.with_value(TruthValue::Bot);
        let rebuilt = Gnba::build(&f, &ab, TruthValue::Bot).unwrap();
        assert_eq!(bot.initial(), rebuilt.initial());
        assert_eq!(bot.states(), rebuilt.states());
    }
}
