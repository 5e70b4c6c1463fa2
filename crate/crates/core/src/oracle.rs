//! Direct evaluation of formulas on ultimately periodic words, and
//! membership of such words in Büchi automata.
//!
//! A lasso `stem · loop^ω` is evaluated on its `n = |stem| + |loop|`
//! positions, with the successor of the last position wrapping back to the
//! first loop position. Until is a fixpoint over that finite graph: the ⊤
//! labelling is the least solution of `T(u,i) = T(r,i) ∨ (T(l,i) ∧ T(u,i+1))`
//! (a witness must be reached after finitely many steps), and the ⊥
//! labelling is the greatest solution of `F(u,i) = F(r,i) ∧ (F(l,i) ∨ F(u,i+1))`
//! (the right side may stay false forever). Both are monotone on a finite
//! lattice, so at most `n + 1` sweeps are needed.

use crate::emptiness::{find_accepting_lasso, BuchiGraph};
use crate::error::WordError;
use crate::gnba::Nba;
use crate::letter::{Alphabet, Letter};
use crate::syntax::{closure_of, BaseKind, CoreFormula, Signed};
use crate::truth::TruthValue;

/// The infinite word `stem · loop^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoWord {
    stem: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self, WordError> {
        if cycle.is_empty() {
            return Err(WordError::EmptyLoop);
        }
        Ok(LassoWord { stem, cycle })
    }

    /// Parses the textual form: letters separated by `;`, literals by `,`.
    pub fn parse(stem: &str, cycle: &str, alphabet: &Alphabet) -> Result<Self, WordError> {
        let seq = |text: &str| -> Result<Vec<Letter>, WordError> {
            if text.trim().is_empty() {
                return Ok(Vec::new());
            }
            text.split(';').map(|l| alphabet.parse_letter(l)).collect()
        };
        Self::new(seq(stem)?, seq(cycle)?)
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Number of distinct positions, `|stem| + |loop|`.
    pub fn len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter(&self, pos: usize) -> Letter {
        if pos < self.stem.len() {
            self.stem[pos]
        } else {
            self.cycle[pos - self.stem.len()]
        }
    }

    pub fn succ(&self, pos: usize) -> usize {
        if pos + 1 < self.len() {
            pos + 1
        } else {
            self.stem.len()
        }
    }

    /// The suffix starting at the second letter.
    pub fn shift(&self) -> LassoWord {
        if self.stem.is_empty() {
            let mut cycle = self.cycle.clone();
            cycle.rotate_left(1);
            LassoWord { stem: Vec::new(), cycle }
        } else {
            LassoWord { stem: self.stem[1..].to_vec(), cycle: self.cycle.clone() }
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> String {
        let seq = |ls: &[Letter]| ls.iter().map(|l| l.display(alphabet).to_string()).collect::<Vec<_>>().join(";");
        format!("{} ({})^w", seq(&self.stem), seq(&self.cycle)).trim_start().to_string()
    }
}

struct Labels {
    top: Vec<Vec<bool>>,
    bot: Vec<Vec<bool>>,
}

impl Labels {
    fn top(&self, s: Signed, i: usize) -> bool {
        if s.positive {
            self.top[s.base][i]
        } else {
            self.bot[s.base][i]
        }
    }

    fn bot(&self, s: Signed, i: usize) -> bool {
        self.top(s.negated(), i)
    }
}

fn label(psi: &CoreFormula, w: &LassoWord, alphabet: &Alphabet, two_valued: bool) -> Result<TruthValue, WordError> {
    let closure = closure_of(psi);
    let n = w.len();
    let mut labels = Labels { top: Vec::new(), bot: Vec::new() };
    for kind in closure.kinds() {
        let (top, bot): (Vec<bool>, Vec<bool>) = match kind {
            BaseKind::Atom(name) => {
                let idx = alphabet.index_of(name).ok_or_else(|| WordError::UnknownAtom(name.clone()))?;
                (0..n)
                    .map(|i| {
                        let v = w.letter(i).value(idx);
                        (v == TruthValue::Top, v == TruthValue::Bot)
                    })
                    .unzip()
            }
            BaseKind::True => (vec![true; n], vec![false; n]),
            BaseKind::And(l, r) => (0..n)
                .map(|i| {
                    (labels.top(*l, i) && labels.top(*r, i), labels.bot(*l, i) || labels.bot(*r, i))
                })
                .unzip(),
            BaseKind::Next(x) => (0..n).map(|i| (labels.top(*x, w.succ(i)), labels.bot(*x, w.succ(i)))).unzip(),
            BaseKind::Until(l, r) => {
                let top = fixpoint(w, false, |i, next| labels.top(*r, i) || (labels.top(*l, i) && next));
                let bot = if two_valued {
                    top.iter().map(|t| !t).collect()
                } else {
                    fixpoint(w, true, |i, next| labels.bot(*r, i) && (labels.bot(*l, i) || next))
                };
                (top, bot)
            }
        };
        debug_assert!(top.iter().zip(&bot).all(|(t, f)| !(*t && *f)), "three-valued labelling");
        debug_assert!(!two_valued || top.iter().zip(&bot).all(|(t, f)| t ^ f));
        labels.top.push(top);
        labels.bot.push(bot);
    }
    let root = closure.signed(psi).expect("formula is in its own closure");
    Ok(if labels.top(root, 0) {
        TruthValue::Top
    } else if labels.bot(root, 0) {
        TruthValue::Bot
    } else {
        TruthValue::Undef
    })
}

/// Iterates `step(i, value at succ(i))` from `start` until stable.
fn fixpoint<F: Fn(usize, bool) -> bool>(w: &LassoWord, start: bool, step: F) -> Vec<bool> {
    let n = w.len();
    let mut v = vec![start; n];
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut changed = false;
        for i in (0..n).rev() {
            let nv = step(i, v[w.succ(i)]);
            if nv != v[i] {
                v[i] = nv;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(sweeps <= n + 1, "fixpoint took {sweeps} sweeps on {n} positions");
    v
}

/// Three-valued value of `psi` on the lasso at its first position.
pub fn eval_lasso(psi: &CoreFormula, w: &LassoWord, alphabet: &Alphabet) -> Result<TruthValue, WordError> {
    label(psi, w, alphabet, false)
}

/// Classical satisfaction; every letter must assign every atom of the alphabet.
pub fn eval_lasso_two_valued(psi: &CoreFormula, w: &LassoWord, alphabet: &Alphabet) -> Result<bool, WordError> {
    if let Some(pos) = (0..w.len()).find(|&i| !w.letter(i).is_total(alphabet)) {
        return Err(WordError::NotTotal(pos));
    }
    Ok(label(psi, w, alphabet, true)? == TruthValue::Top)
}

struct RunGraph<'a> {
    nba: &'a Nba,
    word: &'a LassoWord,
}

impl BuchiGraph for RunGraph<'_> {
    type Node = (usize, usize);

    fn initial(&self) -> Vec<(usize, usize)> {
        self.nba.initial().iter().map(|&q| (q, 0)).collect()
    }

    fn successors(&self, (q, i): (usize, usize)) -> Vec<(usize, usize)> {
        let next = self.word.succ(i);
        self.nba.transitions(q, self.word.letter(i)).iter().map(|&t| (t, next)).collect()
    }

    fn is_accepting(&self, (q, _): (usize, usize)) -> bool {
        self.nba.is_accepting(q)
    }
}

/// Whether some run of `nba` on the lasso visits an accepting state infinitely often.
pub fn nba_accepts_lasso(nba: &Nba, w: &LassoWord) -> bool {
    find_accepting_lasso(&RunGraph { nba, word: w }).is_some()
}

/// All lassos with `|stem| <= max_stem` and `1 <= |loop| <= max_loop`,
/// ordered by stem length, loop length, then letter order.
pub fn enumerate_lassos(alphabet: &Alphabet, max_stem: usize, max_loop: usize) -> Vec<LassoWord> {
    let letters = alphabet.letters();
    let words = |len: usize| -> Vec<Vec<Letter>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    letters.iter().map(move |l| {
                        let mut p = prefix.clone();
                        p.push(*l);
                        p
                    })
                })
                .collect();
        }
        out
    };
    let mut out = Vec::new();
    for s in 0..=max_stem {
        let stems = words(s);
        for c in 1..=max_loop {
            let cycles = words(c);
            for stem in &stems {
                for cycle in &cycles {
                    out.push(LassoWord { stem: stem.clone(), cycle: cycle.clone() });
                }
            }
        }
    }
    out
}
