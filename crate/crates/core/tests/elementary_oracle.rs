//! Exhaustiveness of elementary-set enumeration against a naive filter over
//! every subset of the signed closure, checking the consistency and local
//! consistency rules literally on formulas.

mod common;

use std::collections::BTreeSet;

use common::CORPUS;
use kleene_ltl::{closure_of, enumerate_elementary, negate, parse_core, CoreFormula, DEFAULT_STATE_CAP};

fn naive_elementary(psi: &CoreFormula) -> BTreeSet<BTreeSet<CoreFormula>> {
    let bases = closure_of(psi).bases().to_vec();
    let cl: Vec<CoreFormula> = bases.iter().flat_map(|b| [b.clone(), negate(b)]).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << cl.len()) {
        let b: BTreeSet<CoreFormula> =
            cl.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, f)| f.clone()).collect();
        let has = |f: &CoreFormula| b.contains(f);
        let mut ok = b.iter().all(|f| !has(&negate(f)));
        for f in &cl {
            match f {
                CoreFormula::And(l, r) => {
                    ok &= has(f) == (has(l) && has(r));
                    ok &= has(&negate(f)) == (has(&negate(l)) || has(&negate(r)));
                }
                CoreFormula::Until(l, r) => {
                    let nf = negate(f);
                    ok &= !has(r) || has(f);
                    ok &= !has(&nf) || has(&negate(r));
                    ok &= !(has(f) && !has(r)) || has(l);
                    ok &= !(has(&negate(l)) && has(&negate(r))) || has(&nf);
                }
                CoreFormula::True => ok &= has(f),
                _ => {}
            }
        }
        if ok {
            out.insert(b);
        }
    }
    out
}

#[test]
fn enumeration_matches_powerset_filter() {
    let mut checked = 0;
    for text in CORPUS.iter().chain(&["a & b & X a", "X (a & !b)", "(a U b) & (b U a)"]) {
        let psi = parse_core(text).unwrap();
        let c = closure_of(&psi);
        if c.len() > 6 {
            continue;
        }
        let fast: BTreeSet<BTreeSet<CoreFormula>> = enumerate_elementary(&c, DEFAULT_STATE_CAP)
            .unwrap()
            .into_iter()
            .map(|s| s.entries(c.len()).map(|e| c.formula(e)).collect())
            .collect();
        assert_eq!(fast, naive_elementary(&psi), "{text}");
        checked += 1;
    }
    assert!(checked >= 30);
}

#[test]
fn empty_set_is_elementary_without_constants() {
    for text in CORPUS {
        let psi = parse_core(text).unwrap();
        let c = closure_of(&psi);
        let states = enumerate_elementary(&c, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(states.iter().any(|s| s.is_empty()), c.true_base().is_none(), "{text}");
        assert!(states.len() as u64 <= 3u64.pow(c.len() as u32));
    }
}

#[test]
fn conjunction_count_is_nine() {
    let c = closure_of(&parse_core("a & b").unwrap());
    assert_eq!(enumerate_elementary(&c, DEFAULT_STATE_CAP).unwrap().len(), 9);
    assert_eq!(naive_elementary(&parse_core("a & b").unwrap()).len(), 9);
}

#[test]
fn enumeration_is_sorted_and_stable() {
    let c = closure_of(&parse_core("G (a -> F b)").unwrap());
    let first = enumerate_elementary(&c, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(first, enumerate_elementary(&c, DEFAULT_STATE_CAP).unwrap());
    let key = |s: &kleene_ltl::ElementarySet| -> Vec<u8> {
        (0..c.len()).map(|i| match s.sign(i) { None => 0, Some(true) => 1, Some(false) => 2 }).collect()
    };
    assert!(first.windows(2).all(|w| key(&w[0]) < key(&w[1])));
}
