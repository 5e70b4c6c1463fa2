//! Translation of three-valued LTL into generalized Büchi automata.
//!
//! A formula `psi` and a truth value `v` (⊤, ⊥ or uu) yield an automaton
//! `A(psi, v)` whose language is exactly the set of words over consistent
//! literal sets on which `psi` evaluates to `v` under strong-Kleene
//! semantics. States are the (not necessarily maximal) elementary subsets of
//! the closure of `psi`.
//!
//! ```
//! use kleene_ltl::{parse_core, Alphabet, Gnba, TruthValue};
//!
//! let psi = parse_core("X a").unwrap();
//! let alphabet = Alphabet::parse_list("a").unwrap();
//! let g = Gnba::build(&psi, &alphabet, TruthValue::Undef).unwrap();
//! assert_eq!(g.state_count(), 9);
//! assert_eq!(g.initial().len(), 3);
//! ```

pub mod cli;
pub mod elementary;
pub mod emit;
pub mod emptiness;
pub mod error;
pub mod gnba;
pub mod letter;
pub mod model;
pub mod oracle;
pub mod syntax;
pub mod truth;

pub use elementary::{enumerate_elementary, is_consistent, is_locally_consistent, ElementarySet, DEFAULT_STATE_CAP};
pub use emit::{parse_hoa, to_dot, to_hoa, DotDocument, HoaAutomaton, HoaDocument};
pub use emptiness::{find_accepting_lasso, BuchiGraph, Lasso};
pub use error::{BuildError, ModelError, SyntaxError, WordError};
pub use gnba::{acceptance_sets, degeneralize, successors, Gnba, Nba, StateId};
pub use letter::{Alphabet, Letter};
pub use model::{letter_of, parse_model, product_non_empty, verdict, TransitionModel, Verdict};
pub use oracle::{enumerate_lassos, eval_lasso, eval_lasso_two_valued, nba_accepts_lasso, LassoWord};
pub use syntax::{closure_of, desugar, negate, parse, parse_core, Closure, CoreFormula, SurfaceFormula};
pub use truth::TruthValue;
