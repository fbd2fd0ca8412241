//! Reduced normal forms by rounds of per-node reductions, the word problem,
//! and shortlex normal forms over the generating alphabet.

use crate::amalgam;
use crate::dependence::{canonical_linearization, rewrite_word, DependenceGraph};
use crate::spec::{GraphProductSpec, NodeId};
use crate::word::{GWord, Letter};

/// How the per-node reduction decides the group equalities it needs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InnerWordProblem {
    /// Contract same-node Hasse arcs until none are left.
    #[default]
    Rewriting,
    /// Recursive amalgamated-product decomposition.
    Decomposition,
}

impl InnerWordProblem {
    fn is_trivial(self, spec: &GraphProductSpec, w: &GWord) -> bool {
        match self {
            InnerWordProblem::Rewriting => rewrite_word(spec, w).is_empty(),
            InnerWordProblem::Decomposition => amalgam::wp_via_decomposition(spec, w),
        }
    }
}

/// True iff there is no factor `b u b'` with `b, b'` on one node and every
/// letter of `u` independent from that node.
pub fn is_reduced(spec: &GraphProductSpec, w: &GWord) -> bool {
    let letters = w.letters();
    for (i, b) in letters.iter().enumerate() {
        for l in &letters[i + 1..] {
            if l.node == b.node {
                return false;
            }
            if spec.is_dependent(l.node, b.node) {
                break;
            }
        }
    }
    true
}

/// `w = u_0 a_1 u_1 ... a_n u_n` with every `a_i` on the chosen node and no
/// `u_i` touching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeFactorization {
    pub node: NodeId,
    pub letters: Vec<Letter>,
    /// `letters.len() + 1` gaps.
    pub gaps: Vec<GWord>,
}

impl NodeFactorization {
    pub fn new(w: &GWord, node: NodeId) -> Self {
        let mut letters = Vec::new();
        let mut gaps = vec![GWord::empty()];
        for l in w.letters() {
            if l.node == node {
                letters.push(l.clone());
                gaps.push(GWord::empty());
            } else {
                gaps.last_mut().expect("non-empty").0.push(l.clone());
            }
        }
        NodeFactorization { node, letters, gaps }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn word(&self) -> GWord {
        let mut out = self.gaps[0].clone();
        for (a, u) in self.letters.iter().zip(&self.gaps[1..]) {
            out.0.push(a.clone());
            out.0.extend(u.0.iter().cloned());
        }
        out
    }

    /// Does `a_i u_i ... a_m u_m` equal `a_i ... a_m u_i ... u_m`? Indices
    /// are 0-based into `letters`.
    fn block_commutes(&self, spec: &GraphProductSpec, i: usize, m: usize, inner: InnerWordProblem) -> bool {
        let mut interleaved = GWord::empty();
        let mut collected: Vec<Letter> = Vec::new();
        let mut gaps = GWord::empty();
        for k in i..=m {
            interleaved.0.push(self.letters[k].clone());
            interleaved.0.extend(self.gaps[k + 1].0.iter().cloned());
            collected.push(self.letters[k].clone());
            gaps.0.extend(self.gaps[k + 1].0.iter().cloned());
        }
        let mut separated = GWord(collected);
        separated.0.extend(gaps.0);
        inner.is_trivial(spec, &interleaved.concat(&separated.inverse(spec)))
    }
}

/// Minimizes the number of letters on `node`: scanning left to right, each
/// maximal block `a_i u_i ... a_m u_m` that equals `a_i ... a_m u_i ... u_m`
/// is replaced by `[a_i ... a_m] u_i ... u_m`.
pub fn alpha_reduce(spec: &GraphProductSpec, w: &GWord, node: NodeId) -> GWord {
    alpha_reduce_with(spec, w, node, InnerWordProblem::default())
}

pub fn alpha_reduce_with(spec: &GraphProductSpec, w: &GWord, node: NodeId, inner: InnerWordProblem) -> GWord {
    let f = NodeFactorization::new(w, node);
    let n = f.len();
    if n <= 1 {
        return w.clone();
    }
    let group = spec.group(node);
    let mut out = f.gaps[0].clone();
    let mut i = 0;
    while i < n {
        // The property is not monotone in m, so every candidate is tried.
        let m = (i + 1..n)
            .rev()
            .find(|&m| f.block_commutes(spec, i, m, inner))
            .unwrap_or(i);
        let product = f.letters[i..=m]
            .iter()
            .skip(1)
            .fold(f.letters[i].element.clone(), |acc, l| group.mul_unchecked(&acc, &l.element));
        if !group.is_identity(&product) {
            out.0.push(Letter { node, element: product });
        }
        for k in i..=m {
            out.0.extend(f.gaps[k + 1].0.iter().cloned());
        }
        i = m + 1;
    }
    out
}

/// Outcome of the reduction rounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundsReport {
    pub word: GWord,
    /// Verification passes that still changed some node count. Zero when
    /// one round per node was enough.
    pub extra_passes: usize,
}

/// One reduction round per node in node order, then verification passes
/// until no node count changes.
pub fn reduce_rounds(spec: &GraphProductSpec, w: &GWord, inner: InnerWordProblem) -> RoundsReport {
    let mut word = w.bracketed(spec);
    for node in spec.node_ids() {
        word = alpha_reduce_with(spec, &word, node, inner);
    }
    let mut extra_passes = 0;
    loop {
        let mut changed = false;
        for node in spec.node_ids() {
            let before = word.node_len(node);
            word = alpha_reduce_with(spec, &word, node, inner);
            changed |= word.node_len(node) != before;
        }
        if !changed {
            break;
        }
        extra_passes += 1;
    }
    RoundsReport { word, extra_passes }
}

/// A reduced word representing the same element as `w`.
pub fn reduced_word(spec: &GraphProductSpec, w: &GWord) -> GWord {
    reduce_rounds(spec, w, InnerWordProblem::default()).word
}

/// The reduced dependence graph of `w`, the normal form of its element.
pub fn normal_form(spec: &GraphProductSpec, w: &GWord) -> DependenceGraph {
    DependenceGraph::build(spec, &reduced_word(spec, w))
}

pub fn normal_form_with(spec: &GraphProductSpec, w: &GWord, inner: InnerWordProblem) -> DependenceGraph {
    DependenceGraph::build(spec, &reduce_rounds(spec, w, inner).word)
}

/// The canonical linearization of the normal form; used for printing.
pub fn normal_word(spec: &GraphProductSpec, w: &GWord) -> GWord {
    canonical_linearization(spec, &reduced_word(spec, w))
}

/// Does `w` represent the identity?
pub fn word_problem(spec: &GraphProductSpec, w: &GWord) -> bool {
    reduced_word(spec, w).is_empty()
}

/// Shortlex normal form as positions into `spec.sigma()`.
pub fn shortlex_nf(spec: &GraphProductSpec, w: &GWord) -> Vec<usize> {
    let mut out = Vec::new();
    for l in normal_word(spec, w).letters() {
        let local = spec
            .group(l.node)
            .shortlex(&l.element)
            .expect("letters of a reduced word are not the identity");
        out.extend(local.into_iter().map(|g| spec.sigma_index(l.node, g)));
    }
    out
}

/// Shortlex normal form as generator symbols.
pub fn shortlex_symbols(spec: &GraphProductSpec, w: &GWord) -> Vec<String> {
    shortlex_nf(spec, w)
        .into_iter()
        .map(|g| spec.sigma()[g].symbol.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::trace::trace_equal;

    fn w(spec: &GraphProductSpec, s: &str) -> GWord {
        GWord::parse(spec, s).unwrap()
    }

    #[test]
    fn reducedness_examples() {
        let g = corpus::fig2();
        assert!(is_reduced(&g, &w(&g, "b c b- a")));
        assert!(!is_reduced(&g, &w(&g, "a b a-")));
        assert!(is_reduced(&g, &w(&g, "a c a")));
    }

    #[test]
    fn factorization() {
        let g = corpus::fig2();
        let f = NodeFactorization::new(&w(&g, "a b a- c a b-"), NodeId(0));
        assert_eq!(f.len(), 3);
        let gaps: Vec<String> = f.gaps.iter().map(|u| u.display(&g).to_string()).collect();
        assert_eq!(gaps, ["", "b", "c", "b-"]);
        let none = NodeFactorization::new(&w(&g, "b c"), NodeId(0));
        assert_eq!((none.len(), none.gaps[0].len()), (0, 2));
        let cac = NodeFactorization::new(&w(&g, "c a c"), NodeId(2));
        let gaps: Vec<String> = cac.gaps.iter().map(|u| u.display(&g).to_string()).collect();
        assert_eq!(gaps, ["", "a", ""]);
        assert_eq!(cac.word(), w(&g, "c a c"));
    }

    #[test]
    fn alpha_reduction_examples() {
        let g = corpus::fig2();
        let r = alpha_reduce(&g, &w(&g, "a b a- c a b-"), NodeId(0));
        assert_eq!(r.display(&g).to_string(), "b c a b-");
        let one = w(&g, "b a c");
        assert_eq!(alpha_reduce(&g, &one, NodeId(0)), one);
        let r = alpha_reduce(&g, &w(&g, "a b a- b-"), NodeId(0));
        assert_eq!(r.display(&g).to_string(), "b b-");
        assert!(alpha_reduce(&g, &r, NodeId(1)).is_empty());
    }

    #[test]
    fn block_end_is_not_monotone() {
        // x y- x x y x = 1 in C2 * C3; the block from the first x fails at
        // the second x but holds at the fourth.
        let g = corpus::free_c2_c3();
        let x = w(&g, "x y- x x y x");
        assert_eq!(alpha_reduce(&g, &x, NodeId(0)).display(&g).to_string(), "y- y");
        let report = reduce_rounds(&g, &w(&g, "x x x y- y y- x y- y x y x"), InnerWordProblem::Rewriting);
        assert!(report.word.is_empty());
        assert_eq!(report.extra_passes, 0);
    }

    #[test]
    fn normal_forms() {
        let g = corpus::fig2();
        let nf = normal_form(&g, &w(&g, "a b a- c a b-"));
        assert!(nf.is_reduced());
        assert!(trace_equal(&g, &nf.word(), &w(&g, "b c b- a")));
        assert!(normal_form(&g, &w(&g, "a b a- b-")).is_empty());
        assert!(word_problem(&g, &w(&g, "a b a- b-")));
        assert!(!word_problem(&g, &w(&g, "a c a- c-")));
        assert!(word_problem(&g, &GWord::empty()));
    }

    #[test]
    fn decomposition_inner_agrees() {
        let g = corpus::fig2();
        for s in ["a b a- c a b-", "a b a- b-", "c a c- a- b a b-", "b c b- a a- c-"] {
            let x = normal_form_with(&g, &w(&g, s), InnerWordProblem::Rewriting);
            let y = normal_form_with(&g, &w(&g, s), InnerWordProblem::Decomposition);
            assert!(trace_equal(&g, &x.word(), &y.word()), "{s}");
        }
    }

    #[test]
    fn shortlex_examples() {
        let g = corpus::fig2();
        assert_eq!(shortlex_symbols(&g, &w(&g, "a b a- c a b-")), ["b", "c", "a", "b-"]);
        assert!(shortlex_symbols(&g, &w(&g, "a a-")).is_empty());
        assert_eq!(shortlex_symbols(&g, &w(&g, "alpha:2")), ["a", "a"]);
    }
}
