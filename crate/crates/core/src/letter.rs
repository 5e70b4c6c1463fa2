//! Alphabets of atoms and letters over their literals.

use std::collections::HashMap;
use std::fmt;

use crate::error::{BuildError, WordError};
use crate::syntax::is_identifier;
use crate::truth::TruthValue;

/// Ordered list of atomic propositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub const MAX_ATOMS: usize = 64;

    pub fn new<I, S>(atoms: I) -> Result<Self, BuildError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for atom in atoms {
            let atom = atom.into();
            if !is_identifier(&atom) {
                return Err(BuildError::InvalidAtom(atom));
            }
            if index.insert(atom.clone(), list.len()).is_some() {
                return Err(BuildError::DuplicateAtom(atom));
            }
            list.push(atom);
        }
        if list.len() > Self::MAX_ATOMS {
            return Err(BuildError::AlphabetTooLarge(list.len()));
        }
        Ok(Alphabet { atoms: list, index })
    }

    /// Parses a comma-separated list such as `"a,b"`; blanks are ignored.
    pub fn parse_list(text: &str) -> Result<Self, BuildError> {
        Self::new(text.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.index.get(atom).copied()
    }

    /// Every consistent letter, ordered lexicographically over atoms with
    /// unassigned < positive < negative.
    pub fn letters(&self) -> Vec<Letter> {
        let n = self.atoms.len();
        let total = 3usize.pow(n as u32);
        let mut out = Vec::with_capacity(total);
        for code in 0..total {
            let mut rest = code;
            let mut letter = Letter::empty();
            for i in (0..n).rev() {
                match rest % 3 {
                    1 => letter.pos |= 1 << i,
                    2 => letter.neg |= 1 << i,
                    _ => {}
                }
                rest /= 3;
            }
            out.push(letter);
        }
        out
    }

    /// The `2^n` letters assigning every atom.
    pub fn total_letters(&self) -> Vec<Letter> {
        self.letters().into_iter().filter(|l| l.is_total(self)).collect()
    }

    /// Parses `"a,!b"`. The empty string and `{}` denote the empty letter.
    pub fn parse_letter(&self, text: &str) -> Result<Letter, WordError> {
        let text = text.trim();
        let mut letter = Letter::empty();
        if text.is_empty() || text == "{}" {
            return Ok(letter);
        }
        for lit in text.split(',') {
            let lit = lit.trim();
            let (name, positive) = match lit.strip_prefix('!') {
                Some(rest) => (rest.trim(), false),
                None => (lit, true),
            };
            if !is_identifier(name) {
                return Err(WordError::MalformedLiteral(lit.to_string()));
            }
            let i = self.index_of(name).ok_or_else(|| WordError::UnknownAtom(name.to_string()))?;
            let bit = 1u64 << i;
            if (positive && letter.neg & bit != 0) || (!positive && letter.pos & bit != 0) {
                return Err(WordError::Inconsistent(name.to_string()));
            }
            if positive {
                letter.pos |= bit;
            } else {
                letter.neg |= bit;
            }
        }
        Ok(letter)
    }
}

/// Consistent set of literals, as bitmasks over alphabet positions.
///
/// Bit `i` of `pos` means atom `i` is true, bit `i` of `neg` means it is
/// false; an atom in neither is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Letter {
    pos: u64,
    neg: u64,
}

impl Letter {
    pub fn empty() -> Self {
        Letter::default()
    }

    /// Fails if the masks overlap.
    pub fn from_masks(pos: u64, neg: u64) -> Option<Self> {
        (pos & neg == 0).then_some(Letter { pos, neg })
    }

    pub fn pos_mask(self) -> u64 {
        self.pos
    }

    pub fn neg_mask(self) -> u64 {
        self.neg
    }

    pub fn value(self, atom: usize) -> TruthValue {
        let bit = 1u64 << atom;
        if self.pos & bit != 0 {
            TruthValue::Top
        } else if self.neg & bit != 0 {
            TruthValue::Bot
        } else {
            TruthValue::Undef
        }
    }

    pub fn with_value(mut self, atom: usize, value: TruthValue) -> Self {
        let bit = 1u64 << atom;
        self.pos &= !bit;
        self.neg &= !bit;
        match value {
            TruthValue::Top => self.pos |= bit,
            TruthValue::Bot => self.neg |= bit,
            TruthValue::Undef => {}
        }
        self
    }

    pub fn is_total(self, alphabet: &Alphabet) -> bool {
        let all = if alphabet.len() == 64 { u64::MAX } else { (1u64 << alphabet.len()) - 1 };
        (self.pos | self.neg) & all == all
    }

    /// The letter with only the atoms selected by `mask` kept.
    pub fn restrict(self, mask: u64) -> Self {
        Letter { pos: self.pos & mask, neg: self.neg & mask }
    }

    pub fn display<'a>(&self, alphabet: &'a Alphabet) -> LetterDisplay<'a> {
        LetterDisplay { letter: *self, alphabet }
    }
}

/// Renders a letter as `a,!b` (the lasso syntax), `{}` when empty.
pub struct LetterDisplay<'a> {
    letter: Letter,
    alphabet: &'a Alphabet,
}

impl fmt::Display for LetterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, atom) in self.alphabet.atoms().iter().enumerate() {
            let lit = match self.letter.value(i) {
                TruthValue::Top => atom.clone(),
                TruthValue::Bot => format!("!{atom}"),
                TruthValue::Undef => continue,
            };
            if !first {
                f.write_str(",")?;
            }
            first = false;
            f.write_str(&lit)?;
        }
        if first {
            f.write_str("{}")?;
        }
        Ok(())
    }
}
