//! Accepting-cycle search (nested depth-first search) on implicit Büchi graphs.

use std::collections::HashSet;
use std::hash::Hash;

/// A finite graph with initial nodes and accepting nodes, explored lazily.
pub trait BuchiGraph {
    type Node: Copy + Eq + Hash;

    fn initial(&self) -> Vec<Self::Node>;
    /// Successors in the order the search should try them.
    fn successors(&self, node: Self::Node) -> Vec<Self::Node>;
    fn is_accepting(&self, node: Self::Node) -> bool;
}

/// Path `stem` from an initial node to `cycle[0]`, then `cycle` repeated forever.
///
/// `cycle[0]` is accepting and `cycle.last()` has `cycle[0]` as a successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso<N> {
    pub stem: Vec<N>,
    pub cycle: Vec<N>,
}

impl<N: Copy + Eq> Lasso<N> {
    /// Same infinite sequence with the shortest cycle and stem: the cycle
    /// is cut to its primitive period and stem elements that repeat the
    /// cycle are folded into it.
    pub fn normalized(&self) -> Lasso<N> {
        let n = self.cycle.len();
        let period = (1..=n)
            .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.cycle[i] == self.cycle[i - p]))
            .unwrap_or(n);
        let mut stem = self.stem.clone();
        let mut cycle = self.cycle[..period].to_vec();
        while let (Some(&s), Some(&c)) = (stem.last(), cycle.last()) {
            if s != c {
                break;
            }
            stem.pop();
            cycle.rotate_right(1);
        }
        Lasso { stem, cycle }
    }
}

impl<N: Copy> Lasso<N> {
    pub fn map<M, F: Fn(N) -> M>(&self, f: F) -> Lasso<M> {
        Lasso {
            stem: self.stem.iter().map(|&n| f(n)).collect(),
            cycle: self.cycle.iter().map(|&n| f(n)).collect(),
        }
    }
}

struct Frame<N> {
    node: N,
    succ: Vec<N>,
    next: usize,
}

/// Returns a reachable accepting cycle, or `None` if the language is empty.
///
/// Deterministic: initial nodes and successors are visited in the order the
/// graph yields them, so the first lasso found is always the same.
pub fn find_accepting_lasso<G: BuchiGraph>(g: &G) -> Option<Lasso<G::Node>> {
    let mut outer_seen: HashSet<G::Node> = HashSet::new();
    let mut inner_seen: HashSet<G::Node> = HashSet::new();
    for init in g.initial() {
        if !outer_seen.insert(init) {
            continue;
        }
        let mut stack = vec![Frame { node: init, succ: g.successors(init), next: 0 }];
        while let Some(top) = stack.last_mut() {
            if top.next < top.succ.len() {
                let n = top.succ[top.next];
                top.next += 1;
                if outer_seen.insert(n) {
                    stack.push(Frame { node: n, succ: g.successors(n), next: 0 });
                }
                continue;
            }
            let done = stack.pop().expect("non-empty stack");
            if g.is_accepting(done.node) {
                if let Some(cycle) = inner_search(g, done.node, &mut inner_seen) {
                    let stem = stack.iter().map(|f| f.node).collect();
                    return Some(Lasso { stem, cycle });
                }
            }
        }
    }
    None
}

/// Looks for a path from `seed` back to `seed`; returns the cycle starting at `seed`.
fn inner_search<G: BuchiGraph>(g: &G, seed: G::Node, seen: &mut HashSet<G::Node>) -> Option<Vec<G::Node>> {
    let mut stack = vec![Frame { node: seed, succ: g.successors(seed), next: 0 }];
    while let Some(top) = stack.last_mut() {
        if top.next < top.succ.len() {
            let n = top.succ[top.next];
            top.next += 1;
            if n == seed {
                return Some(stack.iter().map(|f| f.node).collect());
            }
            if seen.insert(n) {
                stack.push(Frame { node: n, succ: g.successors(n), next: 0 });
            }
            continue;
        }
        stack.pop();
    }
    None
}
