//! Surface syntax, core formulas and closures.
//!
//! Grammar, tightest binding first:
//!
//! ```text
//! unary   := ("!" | "X" | "F" | "G") unary | atom | "true" | "false" | "(" implies ")"
//! until   := unary (("U" | "R") until)?          right-associative
//! and     := until ("&" until)*
//! or      := and ("|" and)*
//! implies := or ("->" implies)?                  right-associative
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::SyntaxError;

/// Formula as written by the user, derived operators included.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SurfaceFormula {
    Atom(String),
    True,
    False,
    Not(Box<SurfaceFormula>),
    And(Box<SurfaceFormula>, Box<SurfaceFormula>),
    Or(Box<SurfaceFormula>, Box<SurfaceFormula>),
    Implies(Box<SurfaceFormula>, Box<SurfaceFormula>),
    Next(Box<SurfaceFormula>),
    Until(Box<SurfaceFormula>, Box<SurfaceFormula>),
    Release(Box<SurfaceFormula>, Box<SurfaceFormula>),
    Finally(Box<SurfaceFormula>),
    Globally(Box<SurfaceFormula>),
}

/// Formula over the core connectives `q | true | !f | f & f | X f | f U f`.
///
/// Build negations with [`CoreFormula::not`] (or [`negate`]) so that no
/// `Not(Not(_))` node ever exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoreFormula {
    Atom(String),
    True,
    Not(Box<CoreFormula>),
    And(Box<CoreFormula>, Box<CoreFormula>),
    Next(Box<CoreFormula>),
    Until(Box<CoreFormula>, Box<CoreFormula>),
}

impl CoreFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        CoreFormula::Atom(name.into())
    }

    /// `false`, represented as `!true`.
    pub fn falsity() -> Self {
        CoreFormula::Not(Box::new(CoreFormula::True))
    }

    /// Negation with double negations cancelled.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: CoreFormula) -> Self {
        match f {
            CoreFormula::Not(inner) => *inner,
            other => CoreFormula::Not(Box::new(other)),
        }
    }

    pub fn and(l: CoreFormula, r: CoreFormula) -> Self {
        CoreFormula::And(Box::new(l), Box::new(r))
    }

    pub fn next(f: CoreFormula) -> Self {
        CoreFormula::Next(Box::new(f))
    }

    pub fn until(l: CoreFormula, r: CoreFormula) -> Self {
        CoreFormula::Until(Box::new(l), Box::new(r))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            CoreFormula::Atom(_) | CoreFormula::True => 1,
            CoreFormula::Not(f) | CoreFormula::Next(f) => 1 + f.size(),
            CoreFormula::And(l, r) | CoreFormula::Until(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// True when no node is a double negation.
    pub fn is_canonical(&self) -> bool {
        match self {
            CoreFormula::Atom(_) | CoreFormula::True => true,
            CoreFormula::Not(f) => !matches!(**f, CoreFormula::Not(_)) && f.is_canonical(),
            CoreFormula::Next(f) => f.is_canonical(),
            CoreFormula::And(l, r) | CoreFormula::Until(l, r) => l.is_canonical() && r.is_canonical(),
        }
    }

    /// Atoms occurring in the formula, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            CoreFormula::Atom(a) => {
                out.insert(a.clone());
            }
            CoreFormula::True => {}
            CoreFormula::Not(f) | CoreFormula::Next(f) => f.collect_atoms(out),
            CoreFormula::And(l, r) | CoreFormula::Until(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Splits off a leading negation: `(base, positive)`.
    pub fn base(&self) -> (&CoreFormula, bool) {
        match self {
            CoreFormula::Not(inner) => (inner, false),
            other => (other, true),
        }
    }
}

/// Prints in surface syntax, fully parenthesised for binary operators, so the
/// output always parses back to the same core formula.
impl fmt::Display for CoreFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreFormula::Atom(a) => write!(f, "{a}"),
            CoreFormula::True => write!(f, "true"),
            CoreFormula::Not(inner) => write!(f, "!{inner}"),
            CoreFormula::And(l, r) => write!(f, "({l} & {r})"),
            CoreFormula::Next(inner) => write!(f, "X {inner}"),
            CoreFormula::Until(l, r) => write!(f, "({l} U {r})"),
        }
    }
}

impl fmt::Display for SurfaceFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SurfaceFormula::*;
        match self {
            Atom(a) => write!(f, "{a}"),
            True => write!(f, "true"),
            False => write!(f, "false"),
            Not(x) => write!(f, "!{x}"),
            Next(x) => write!(f, "X {x}"),
            Finally(x) => write!(f, "F {x}"),
            Globally(x) => write!(f, "G {x}"),
            And(l, r) => write!(f, "({l} & {r})"),
            Or(l, r) => write!(f, "({l} | {r})"),
            Implies(l, r) => write!(f, "({l} -> {r})"),
            Until(l, r) => write!(f, "({l} U {r})"),
            Release(l, r) => write!(f, "({l} R {r})"),
        }
    }
}

/// Returns `!f`, or the child of `f` when `f` is already a negation.
pub fn negate(f: &CoreFormula) -> CoreFormula {
    CoreFormula::not(f.clone())
}

/// Rewrites derived operators into the core connectives.
pub fn desugar(f: &SurfaceFormula) -> CoreFormula {
    use CoreFormula as C;
    match f {
        SurfaceFormula::Atom(a) => C::atom(a.clone()),
        SurfaceFormula::True => C::True,
        SurfaceFormula::False => C::falsity(),
        SurfaceFormula::Not(x) => C::not(desugar(x)),
        SurfaceFormula::And(l, r) => C::and(desugar(l), desugar(r)),
        SurfaceFormula::Or(l, r) => C::not(C::and(C::not(desugar(l)), C::not(desugar(r)))),
        SurfaceFormula::Implies(l, r) => C::not(C::and(desugar(l), C::not(desugar(r)))),
        SurfaceFormula::Next(x) => C::next(desugar(x)),
        SurfaceFormula::Until(l, r) => C::until(desugar(l), desugar(r)),
        SurfaceFormula::Release(l, r) => {
            C::not(C::until(C::not(desugar(l)), C::not(desugar(r))))
        }
        SurfaceFormula::Finally(x) => C::until(C::True, desugar(x)),
        SurfaceFormula::Globally(x) => C::not(C::until(C::True, C::not(desugar(x)))),
    }
}

/// Parses and desugars in one step.
pub fn parse_core(text: &str) -> Result<CoreFormula, SyntaxError> {
    parse(text).map(|f| desugar(&f))
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Finally,
    Globally,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Token::Ident(name) => return write!(f, "atom `{name}`"),
            Token::True => "true",
            Token::False => "false",
            Token::Not => "!",
            Token::And => "&",
            Token::Or => "|",
            Token::Implies => "->",
            Token::Next => "X",
            Token::Until => "U",
            Token::Release => "R",
            Token::Finally => "F",
            Token::Globally => "G",
            Token::LParen => "(",
            Token::RParen => ")",
        };
        write!(f, "`{s}`")
    }
}

/// Positions are character offsets into the input.
fn lex(text: &str) -> Result<Vec<(Token, usize)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    Token::Implies
                } else {
                    return Err(SyntaxError::Lex { position: start, found: c });
                }
            }
            'X' => Token::Next,
            'U' => Token::Until,
            'R' => Token::Release,
            'F' => Token::Finally,
            'G' => Token::Globally,
            c if c.is_ascii_lowercase() => {
                let mut end = i + 1;
                while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_') {
                    end += 1;
                }
                let word: String = chars[i..end].iter().collect();
                i = end - 1;
                match word.as_str() {
                    "true" => Token::True,
                    "false" => Token::False,
                    _ => Token::Ident(word),
                }
            }
            other => return Err(SyntaxError::Lex { position: start, found: other }),
        };
        tokens.push((tok, start));
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn unexpected(&self, expected: &'static str) -> SyntaxError {
        match self.tokens.get(self.pos) {
            Some((tok, p)) => SyntaxError::Unexpected { position: *p, found: tok.to_string(), expected },
            None => SyntaxError::Unexpected {
                position: self.end,
                found: "end of input".to_string(),
                expected,
            },
        }
    }

    fn implies(&mut self) -> Result<SurfaceFormula, SyntaxError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Token::Implies) {
            self.pos += 1;
            let rhs = self.implies()?;
            return Ok(SurfaceFormula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<SurfaceFormula, SyntaxError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            let rhs = self.and()?;
            lhs = SurfaceFormula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<SurfaceFormula, SyntaxError> {
        let mut lhs = self.until()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            let rhs = self.until()?;
            lhs = SurfaceFormula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<SurfaceFormula, SyntaxError> {
        let lhs = self.unary()?;
        match self.peek() {
            Some(Token::Until) => {
                self.pos += 1;
                let rhs = self.until()?;
                Ok(SurfaceFormula::Until(Box::new(lhs), Box::new(rhs)))
            }
            Some(Token::Release) => {
                self.pos += 1;
                let rhs = self.until()?;
                Ok(SurfaceFormula::Release(Box::new(lhs), Box::new(rhs)))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<SurfaceFormula, SyntaxError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.unexpected("a formula"));
        };
        self.pos += 1;
        let wrap = |f: fn(Box<SurfaceFormula>) -> SurfaceFormula, p: &mut Self| {
            p.unary().map(|x| f(Box::new(x)))
        };
        match tok {
            Token::Ident(name) => Ok(SurfaceFormula::Atom(name)),
            Token::True => Ok(SurfaceFormula::True),
            Token::False => Ok(SurfaceFormula::False),
            Token::Not => wrap(SurfaceFormula::Not, self),
            Token::Next => wrap(SurfaceFormula::Next, self),
            Token::Finally => wrap(SurfaceFormula::Finally, self),
            Token::Globally => wrap(SurfaceFormula::Globally, self),
            Token::LParen => {
                let inner = self.implies()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a formula"))
            }
        }
    }
}

/// Parses LTL text into a [`SurfaceFormula`].
pub fn parse(text: &str) -> Result<SurfaceFormula, SyntaxError> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(SyntaxError::Empty);
    }
    let mut parser = Parser { tokens, pos: 0, end: text.chars().count() };
    let f = parser.implies()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.unexpected("an operator or end of input"));
    }
    debug_assert_eq!(parser.position(), parser.end);
    Ok(f)
}

/// Reference to a closure entry together with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signed {
    pub base: usize,
    pub positive: bool,
}

impl Signed {
    pub fn negated(self) -> Signed {
        Signed { base: self.base, positive: !self.positive }
    }
}

/// Shape of a closure base with children resolved to signed references.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseKind {
    Atom(String),
    True,
    And(Signed, Signed),
    Next(Signed),
    Until(Signed, Signed),
}

/// All non-negated subformulas of a formula in a fixed order.
#[derive(Debug, Clone)]
pub struct Closure {
    bases: Vec<CoreFormula>,
    kinds: Vec<BaseKind>,
    index: HashMap<CoreFormula, usize>,
}

impl Closure {
    pub fn bases(&self) -> &[CoreFormula] {
        &self.bases
    }

    pub fn kinds(&self) -> &[BaseKind] {
        &self.kinds
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn index_of(&self, base: &CoreFormula) -> Option<usize> {
        self.index.get(base).copied()
    }

    /// Resolves any (possibly negated) subformula to its signed entry.
    pub fn signed(&self, f: &CoreFormula) -> Option<Signed> {
        let (base, positive) = f.base();
        self.index_of(base).map(|base| Signed { base, positive })
    }

    /// The formula denoted by a signed entry.
    pub fn formula(&self, s: Signed) -> CoreFormula {
        let base = self.bases[s.base].clone();
        if s.positive {
            base
        } else {
            CoreFormula::not(base)
        }
    }

    /// `(ordinal, name)` of every atom base.
    pub fn atoms(&self) -> impl Iterator<Item = (usize, &str)> + '_ {
        self.kinds.iter().enumerate().filter_map(|(i, k)| match k {
            BaseKind::Atom(name) => Some((i, name.as_str())),
            _ => None,
        })
    }

    pub fn true_base(&self) -> Option<usize> {
        self.kinds.iter().position(|k| *k == BaseKind::True)
    }
}

/// Computes the closure of `f`, ordered by (size, printed form).
pub fn closure_of(f: &CoreFormula) -> Closure {
    let mut found = BTreeSet::new();
    collect_bases(f, &mut found);
    let mut bases: Vec<CoreFormula> = found.into_iter().collect();
    let mut keyed: Vec<(usize, String, CoreFormula)> =
        bases.drain(..).map(|b| (b.size(), b.to_string(), b)).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let bases: Vec<CoreFormula> = keyed.into_iter().map(|(_, _, b)| b).collect();
    let index: HashMap<CoreFormula, usize> =
        bases.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    let signed = |g: &CoreFormula| {
        let (base, positive) = g.base();
        Signed { base: index[base], positive }
    };
    let kinds = bases
        .iter()
        .map(|b| match b {
            CoreFormula::Atom(name) => BaseKind::Atom(name.clone()),
            CoreFormula::True => BaseKind::True,
            CoreFormula::And(l, r) => BaseKind::And(signed(l), signed(r)),
            CoreFormula::Next(x) => BaseKind::Next(signed(x)),
            CoreFormula::Until(l, r) => BaseKind::Until(signed(l), signed(r)),
            CoreFormula::Not(_) => unreachable!("closure bases are never negations"),
        })
        .collect();
    Closure { bases, kinds, index }
}

fn collect_bases(f: &CoreFormula, out: &mut BTreeSet<CoreFormula>) {
    match f {
        CoreFormula::Not(inner) => collect_bases(inner, out),
        other => {
            if out.insert(other.clone()) {
                match other {
                    CoreFormula::Next(x) => collect_bases(x, out),
                    CoreFormula::And(l, r) | CoreFormula::Until(l, r) => {
                        collect_bases(l, out);
                        collect_bases(r, out);
                    }
                    _ => {}
                }
            }
        }
    }
}
