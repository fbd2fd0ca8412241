//! Dependence graphs of words, their Hasse diagrams, and the rewriting
//! procedure that merges Hasse-adjacent letters of the same node.

use std::fmt::Write as _;

use rand::Rng;

use crate::spec::GraphProductSpec;
use crate::word::{GWord, Letter};

/// Labeled acyclic graph of a word. Vertex `i` carries the `i`-th letter;
/// there is an arc `(i, j)` for every `i < j` with dependent nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceGraph {
    labels: Vec<Letter>,
    arcs: Vec<(usize, usize)>,
    hasse: Vec<(usize, usize)>,
}

impl DependenceGraph {
    pub fn build(spec: &GraphProductSpec, w: &GWord) -> Self {
        let labels = w.letters().to_vec();
        let n = labels.len();
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if spec.is_dependent(labels[i].node, labels[j].node) {
                    arcs.push((i, j));
                }
            }
        }
        let hasse = transitive_reduction(n, &arcs);
        DependenceGraph { labels, arcs, hasse }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Letter] {
        &self.labels
    }

    /// All arcs, 0-based, sorted.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Arcs of the Hasse diagram, 0-based, sorted.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// The word read off the vertices in index order.
    pub fn word(&self) -> GWord {
        GWord(self.labels.clone())
    }

    /// Vertices without incoming arcs.
    pub fn minimal_vertices(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.len()];
        for &(_, j) in &self.hasse {
            has_in[j] = true;
        }
        (0..self.len()).filter(|&v| !has_in[v]).collect()
    }

    /// Vertices without outgoing arcs.
    pub fn maximal_vertices(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.len()];
        for &(i, _) in &self.hasse {
            has_out[i] = true;
        }
        (0..self.len()).filter(|&v| !has_out[v]).collect()
    }

    /// True when no Hasse arc joins two letters of the same node.
    pub fn is_reduced(&self) -> bool {
        self.hasse
            .iter()
            .all(|&(i, j)| self.labels[i].node != self.labels[j].node)
    }

    /// The linearization used for printing: repeatedly take the minimal
    /// vertex whose node comes first in node order.
    pub fn canonical_word(&self, spec: &GraphProductSpec) -> GWord {
        canonical_linearization(spec, &self.word())
    }
}

/// Removes every arc implied by a longer path. Vertices are topologically
/// numbered, so reachability is filled in from the back.
fn transitive_reduction(n: usize, arcs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let words = n.div_ceil(64).max(1);
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in arcs {
        succ[i].push(j);
    }
    let mut reach = vec![vec![0u64; words]; n];
    for i in (0..n).rev() {
        let mut acc = vec![0u64; words];
        for &j in &succ[i] {
            acc[j / 64] |= 1 << (j % 64);
            for (a, b) in acc.iter_mut().zip(&reach[j]) {
                *a |= *b;
            }
        }
        reach[i] = acc;
    }
    let mut out = Vec::new();
    for (i, next) in succ.iter().enumerate() {
        for &k in next {
            let implied = next.iter().any(|&j| j != k && reach[j][k / 64] & (1 << (k % 64)) != 0);
            if !implied {
                out.push((i, k));
            }
        }
    }
    out.sort();
    out
}

/// Canonical linearization of the trace of `w`: among the current minimal
/// letters always emit the one on the least node.
pub fn canonical_linearization(spec: &GraphProductSpec, w: &GWord) -> GWord {
    let letters = w.letters();
    let mut taken = vec![false; letters.len()];
    let mut out = Vec::with_capacity(letters.len());
    for _ in 0..letters.len() {
        let mut best: Option<usize> = None;
        let mut blocked = vec![false; spec.len()];
        for (j, l) in letters.iter().enumerate() {
            if taken[j] {
                continue;
            }
            if !blocked[l.node.0] && best.is_none_or(|b| l.node < letters[b].node) {
                best = Some(j);
            }
            for x in spec.node_ids() {
                if spec.is_dependent(x, l.node) {
                    blocked[x.0] = true;
                }
            }
        }
        let j = best.expect("a non-empty trace has a minimal letter");
        taken[j] = true;
        out.push(letters[j].clone());
    }
    GWord(out)
}

/// Positions `(i, j)` of surviving letters on the same node with no surviving
/// letter in between on a node dependent on theirs; exactly the Hasse arcs
/// with both ends on one node.
fn same_node_hasse_arcs(spec: &GraphProductSpec, alive: &[Option<Letter>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..alive.len() {
        let Some(li) = &alive[i] else { continue };
        for (j, lj) in alive.iter().enumerate().skip(i + 1) {
            let Some(lj) = lj else { continue };
            if lj.node == li.node {
                out.push((i, j));
                break;
            }
            if spec.is_dependent(lj.node, li.node) {
                break;
            }
        }
    }
    out
}

fn rewrite(spec: &GraphProductSpec, w: &GWord, mut choose: impl FnMut(usize) -> usize) -> GWord {
    let mut alive: Vec<Option<Letter>> = w.letters().iter().cloned().map(Some).collect();
    loop {
        let candidates = same_node_hasse_arcs(spec, &alive);
        if candidates.is_empty() {
            break;
        }
        let (i, j) = candidates[choose(candidates.len())];
        let b = alive[i].take().expect("alive");
        let b2 = alive[j].take().expect("alive");
        let group = spec.group(b.node);
        let product = group.mul_unchecked(&b.element, &b2.element);
        if !group.is_identity(&product) {
            alive[i] = Some(Letter {
                node: b.node,
                element: product,
            });
        }
    }
    GWord(alive.into_iter().flatten().collect())
}

/// Runs the rewriting procedure to completion, always contracting the
/// leftmost available arc.
pub fn reduce_graph(spec: &GraphProductSpec, g: &DependenceGraph) -> DependenceGraph {
    DependenceGraph::build(spec, &rewrite(spec, &g.word(), |_| 0))
}

/// Runs the rewriting procedure, picking the arc to contract at random.
pub fn reduce_graph_randomized<R: Rng>(spec: &GraphProductSpec, g: &DependenceGraph, rng: &mut R) -> DependenceGraph {
    DependenceGraph::build(spec, &rewrite(spec, &g.word(), |n| rng.gen_range(0..n)))
}

/// The rewriting procedure on a word, returning the surviving letters in
/// their original order.
pub fn rewrite_word(spec: &GraphProductSpec, w: &GWord) -> GWord {
    rewrite(spec, w, |_| 0)
}

/// Renders the graph in DOT. Vertices are numbered from 1 and labeled
/// `node:shortlex`.
pub fn emit_dot(spec: &GraphProductSpec, g: &DependenceGraph, full: bool) -> String {
    let mut out = String::from("digraph {\n");
    for (i, l) in g.labels.iter().enumerate() {
        let word = spec
            .group(l.node)
            .shortlex_symbols(&l.element)
            .map(|s| s.join(" "))
            .unwrap_or_default();
        let _ = writeln!(out, "  {} [label=\"{}:{}\"];", i + 1, spec.node_name(l.node), word);
    }
    let arcs = if full { &g.arcs } else { &g.hasse };
    for &(i, j) in arcs {
        let _ = writeln!(out, "  {} -> {};", i + 1, j + 1);
    }
    out.push_str("}\n");
    out
}
