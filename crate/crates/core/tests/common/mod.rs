#![allow(dead_code)]

pub mod dot_syntax;

use kleene_ltl::SurfaceFormula;

/// Formulas over `a`, `b` with at most three temporal operators.
pub const CORPUS: &[&str] = &[
    "a",
    "!a",
    "a & b",
    "a | b",
    "a -> b",
    "true",
    "false",
    "X a",
    "!X a",
    "X X a",
    "X X X a",
    "a U b",
    "!(a U b)",
    "a U !b",
    "!a U b",
    "F a",
    "G a",
    "G !a",
    "a R b",
    "!(a R b)",
    "false R a",
    "F G a",
    "G F a",
    "F X a",
    "X G b",
    "X (a U b)",
    "X a U b",
    "a U X b",
    "a U (b U a)",
    "(a U b) U a",
    "a U (b & X a)",
    "a & X (b U a)",
    "X a & X !a",
    "G (a -> X b)",
    "G (a -> F b)",
    "F (a & X b)",
    "F a & G b",
    "(a U b) & !(b U a)",
    "X (a R b)",
    "a U false",
];

pub fn temporal_operators(f: &SurfaceFormula) -> usize {
    use SurfaceFormula::*;
    match f {
        Atom(_) | True | False => 0,
        Not(x) => temporal_operators(x),
        And(l, r) | Or(l, r) | Implies(l, r) => temporal_operators(l) + temporal_operators(r),
        Next(x) | Finally(x) | Globally(x) => 1 + temporal_operators(x),
        Until(l, r) | Release(l, r) => 1 + temporal_operators(l) + temporal_operators(r),
    }
}
