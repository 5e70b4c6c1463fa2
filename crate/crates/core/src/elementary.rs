//! Candidate automaton states: signed subsets of a closure.

use std::fmt;

use crate::error::BuildError;
use crate::syntax::{BaseKind, Closure, CoreFormula, Signed};

/// Default bound on the number of candidate assignments (`3^15`).
pub const DEFAULT_STATE_CAP: u64 = 14_348_907;

/// Signed subset of a closure. Bit `i` of `pos` means base `i` is in the
/// set, bit `i` of `neg` means its negation is; never both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementarySet {
    pos: u64,
    neg: u64,
}

impl ElementarySet {
    pub fn empty() -> Self {
        ElementarySet::default()
    }

    pub fn from_masks(pos: u64, neg: u64) -> Option<Self> {
        (pos & neg == 0).then_some(ElementarySet { pos, neg })
    }

    /// Builds a set from signed entries; `None` if some base occurs with both signs.
    pub fn from_signed<I: IntoIterator<Item = Signed>>(items: I) -> Option<Self> {
        let (mut pos, mut neg) = (0u64, 0u64);
        for s in items {
            if s.positive {
                pos |= 1 << s.base;
            } else {
                neg |= 1 << s.base;
            }
        }
        Self::from_masks(pos, neg)
    }

    /// Builds a set from formulas of the closure (negations allowed).
    pub fn from_formulas<'a, I>(closure: &Closure, items: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a CoreFormula>,
    {
        let signed: Option<Vec<Signed>> = items.into_iter().map(|f| closure.signed(f)).collect();
        Self::from_signed(signed?)
    }

    pub fn pos_mask(self) -> u64 {
        self.pos
    }

    pub fn neg_mask(self) -> u64 {
        self.neg
    }

    pub fn is_empty(self) -> bool {
        self.pos | self.neg == 0
    }

    pub fn len(self) -> usize {
        (self.pos.count_ones() + self.neg.count_ones()) as usize
    }

    /// `Some(true)` if the base is present positively, `Some(false)` if negated.
    pub fn sign(self, base: usize) -> Option<bool> {
        let bit = 1u64 << base;
        if self.pos & bit != 0 {
            Some(true)
        } else if self.neg & bit != 0 {
            Some(false)
        } else {
            None
        }
    }

    pub fn holds(self, s: Signed) -> bool {
        let bit = 1u64 << s.base;
        if s.positive {
            self.pos & bit != 0
        } else {
            self.neg & bit != 0
        }
    }

    /// Whether the set contains the formula (its base with matching polarity).
    pub fn contains(self, closure: &Closure, f: &CoreFormula) -> bool {
        closure.signed(f).is_some_and(|s| self.holds(s))
    }

    pub fn entries(self, n: usize) -> impl Iterator<Item = Signed> {
        (0..n).filter_map(move |base| self.sign(base).map(|positive| Signed { base, positive }))
    }

    pub fn display<'a>(&self, closure: &'a Closure) -> SetDisplay<'a> {
        SetDisplay { set: *self, closure }
    }
}

/// Renders `{a, !X a}` in closure order, `∅` when empty.
pub struct SetDisplay<'a> {
    set: ElementarySet,
    closure: &'a Closure,
}

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.set.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (i, s) in self.set.entries(self.closure.len()).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.closure.formula(s))?;
        }
        f.write_str("}")
    }
}

/// Propositional consistency: conjunctions agree with their conjuncts in
/// both polarities, and the constant `true` is present positively.
pub fn is_consistent(b: ElementarySet, c: &Closure) -> bool {
    c.kinds().iter().enumerate().all(|(i, kind)| {
        let this = Signed { base: i, positive: true };
        match kind {
            BaseKind::And(l, r) => {
                b.holds(this) == (b.holds(*l) && b.holds(*r))
                    && b.holds(this.negated()) == (b.holds(l.negated()) || b.holds(r.negated()))
            }
            BaseKind::True => b.holds(this),
            _ => true,
        }
    })
}

/// Local consistency with respect to every until in the closure.
pub fn is_locally_consistent(b: ElementarySet, c: &Closure) -> bool {
    c.kinds().iter().enumerate().all(|(i, kind)| {
        let BaseKind::Until(l, r) = kind else {
            return true;
        };
        let u = Signed { base: i, positive: true };
        (!b.holds(*r) || b.holds(u))
            && (!b.holds(u.negated()) || b.holds(r.negated()))
            && (!(b.holds(u) && !b.holds(*r)) || b.holds(*l))
            && (!(b.holds(l.negated()) && b.holds(r.negated())) || b.holds(u.negated()))
    })
}

pub fn is_elementary(b: ElementarySet, c: &Closure) -> bool {
    is_consistent(b, c) && is_locally_consistent(b, c)
}

/// `3^n`, or `None` on overflow.
pub fn candidate_count(bases: usize) -> Option<u64> {
    3u64.checked_pow(bases as u32)
}

/// All elementary sets of the closure, lexicographic over the assignment
/// vector (base 0 most significant, absent < positive < negative).
pub fn enumerate_elementary(c: &Closure, cap: u64) -> Result<Vec<ElementarySet>, BuildError> {
    let n = c.len();
    match candidate_count(n) {
        Some(count) if count <= cap && n <= 64 => {}
        _ => return Err(BuildError::StateSpaceLimit { bases: n, cap }),
    }
    let mut digits = vec![0u8; n];
    let mut current = ElementarySet::empty();
    let mut out = Vec::new();
    loop {
        if is_elementary(current, c) {
            out.push(current);
        }
        // Odometer step, last base least significant.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            let bit = 1u64 << i;
            digits[i] = (digits[i] + 1) % 3;
            match digits[i] {
                1 => {
                    current.pos |= bit;
                    break;
                }
                2 => {
                    current.pos &= !bit;
                    current.neg |= bit;
                    break;
                }
                _ => current.neg &= !bit,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{closure_of, parse_core};

    fn closure(text: &str) -> Closure {
        closure_of(&parse_core(text).unwrap())
    }

    fn set(c: &Closure, items: &[&str]) -> ElementarySet {
        let fs: Vec<CoreFormula> = items.iter().map(|t| parse_core(t).unwrap()).collect();
        ElementarySet::from_formulas(c, &fs).unwrap()
    }

    #[test]
    fn consistency_examples() {
        let c = closure("a & b");
        assert!(is_consistent(set(&c, &["a & b", "a", "b"]), &c));
        assert!(!is_consistent(set(&c, &["a", "b"]), &c));
        assert!(!is_consistent(set(&c, &["!(a & b)"]), &c));
        assert!(is_consistent(set(&c, &["!(a & b)", "!a"]), &c));
    }

    #[test]
    fn local_consistency_examples() {
        let c = closure("a U b");
        assert!(!is_locally_consistent(set(&c, &["b"]), &c));
        assert!(is_locally_consistent(set(&c, &["a U b", "a"]), &c));
        assert!(!is_locally_consistent(set(&c, &["!a", "!b"]), &c));
        assert!(!is_locally_consistent(set(&c, &["!(a U b)"]), &c));
        assert!(!is_locally_consistent(set(&c, &["a U b"]), &c));
    }

    #[test]
    fn constant_true_must_be_present() {
        let c = closure("F a");
        assert!(!is_consistent(ElementarySet::empty(), &c));
        assert!(is_consistent(set(&c, &["true"]), &c));
        assert!(!is_consistent(set(&c, &["!true"]), &c));
    }

    #[test]
    fn enumerate_next() {
        let c = closure("X a");
        let shown: Vec<String> = enumerate_elementary(&c, DEFAULT_STATE_CAP)
            .unwrap()
            .iter()
            .map(|b| b.display(&c).to_string())
            .collect();
        assert_eq!(
            shown,
            ["∅", "{X a}", "{!X a}", "{a}", "{a, X a}", "{a, !X a}", "{!a}", "{!a, X a}", "{!a, !X a}"]
        );
    }

    #[test]
    fn enumerate_atom_and_conjunction() {
        assert_eq!(enumerate_elementary(&closure("a"), DEFAULT_STATE_CAP).unwrap().len(), 3);
        // 9: both conjuncts free, the conjunction's sign is then forced.
        assert_eq!(enumerate_elementary(&closure("a & b"), DEFAULT_STATE_CAP).unwrap().len(), 9);
    }

    #[test]
    fn state_cap_is_enforced() {
        let c = closure("X X a");
        assert!(enumerate_elementary(&c, 27).is_ok());
        assert_eq!(
            enumerate_elementary(&c, 26),
            Err(BuildError::StateSpaceLimit { bases: 3, cap: 26 })
        );
    }
}
