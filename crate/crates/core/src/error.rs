use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("empty formula")]
    Empty,
    #[error("unexpected character `{found}` at position {position}")]
    Lex { position: usize, found: char },
    #[error("unexpected {found} at position {position}, expected {expected}")]
    Unexpected {
        position: usize,
        found: String,
        expected: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("atom `{0}` does not occur in the alphabet")]
    UnknownAtom(String),
    #[error("state-space limit exceeded: 3^{bases} candidate sets, cap is {cap}")]
    StateSpaceLimit { bases: usize, cap: u64 },
    #[error("too many atoms in alphabet ({0}, at most 64 supported)")]
    AlphabetTooLarge(usize),
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("duplicate atom `{0}` in alphabet")]
    DuplicateAtom(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("loop of a lasso word must not be empty")]
    EmptyLoop,
    #[error("literal `{0}` is not over the alphabet")]
    UnknownAtom(String),
    #[error("letter assigns both `{0}` and `!{0}`")]
    Inconsistent(String),
    #[error("malformed literal `{0}`")]
    MalformedLiteral(String),
    #[error("letter at position {0} is not total")]
    NotTotal(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed model document: {0}")]
    Format(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state `{0}` has no outgoing edge (transition relation must be serial)")]
    NotSerial(String),
    #[error("malformed truth value `{value}` for atom `{atom}` in state `{state}` (expected \"t\", \"f\" or \"u\")")]
    BadValue {
        state: String,
        atom: String,
        value: String,
    },
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("model has no states")]
    NoStates,
}
