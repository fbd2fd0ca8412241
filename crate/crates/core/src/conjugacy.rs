//! Cyclic reduction and the conjugacy decision procedure.

use crate::dependence::{canonical_linearization, DependenceGraph};
use crate::error::{Error, Result};
use crate::normal_form::{is_reduced, reduced_word};
use crate::spec::{GraphProductSpec, NodeId};
use crate::trace::{factor_match, project};
use crate::word::{GWord, Letter};

/// True iff no minimal and maximal vertex of `D(w)` are distinct but carry
/// letters of the same node.
pub fn is_cyclically_reduced(spec: &GraphProductSpec, w: &GWord) -> Result<bool> {
    if !is_reduced(spec, w) {
        return Err(Error::NotReduced);
    }
    let d = DependenceGraph::build(spec, w);
    let labels = d.labels();
    let maximal = d.maximal_vertices();
    Ok(d.minimal_vertices()
        .into_iter()
        .all(|i| maximal.iter().all(|&j| i == j || labels[i].node != labels[j].node)))
}

/// `u ≡ p r m s p̄` for a reduced `u`, with `r` and `s` carrying at most one
/// letter per node and `core = m [sr]` cyclically reduced and conjugate to `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicForm {
    pub p: GWord,
    pub r: GWord,
    pub m: GWord,
    pub s: GWord,
    pub core: GWord,
}

impl CyclicForm {
    /// `p r m s p̄`, the reduced word this form was computed from.
    pub fn word(&self, spec: &GraphProductSpec) -> GWord {
        self.p
            .concat(&self.r)
            .concat(&self.m)
            .concat(&self.s)
            .concat(&self.p.inverse(spec))
    }
}

fn is_minimal(spec: &GraphProductSpec, w: &[Letter], i: usize) -> bool {
    w[..i].iter().all(|l| !spec.is_dependent(l.node, w[i].node))
}

fn is_maximal(spec: &GraphProductSpec, w: &[Letter], i: usize) -> bool {
    w[i + 1..].iter().all(|l| !spec.is_dependent(l.node, w[i].node))
}

/// First and last letter on `node`, when the first is minimal, the last is
/// maximal and they differ.
fn end_pair(spec: &GraphProductSpec, w: &[Letter], node: NodeId) -> Option<(usize, usize)> {
    let first = w.iter().position(|l| l.node == node)?;
    let last = w.iter().rposition(|l| l.node == node)?;
    (first != last && is_minimal(spec, w, first) && is_maximal(spec, w, last)).then_some((first, last))
}

/// Computes the decomposition `u ≡ p r m s p̄` of the reduced form of `u`.
///
/// `p` is peeled off one letter at a time: a minimal letter whose inverse
/// labels a maximal vertex. What remains has, per node, at most one such
/// minimal/maximal pair; those form `r` and `s`.
pub fn cyclic_form(spec: &GraphProductSpec, u: &GWord) -> CyclicForm {
    let mut cur: Vec<Letter> = canonical_linearization(spec, &reduced_word(spec, u)).0;
    let mut p = Vec::new();
    'peel: loop {
        for node in spec.node_ids() {
            if let Some((i, j)) = end_pair(spec, &cur, node) {
                if cur[j] == cur[i].inverse(spec) {
                    cur.remove(j);
                    p.push(cur.remove(i));
                    continue 'peel;
                }
            }
        }
        break;
    }
    let pairs: Vec<(usize, usize)> = spec.node_ids().filter_map(|a| end_pair(spec, &cur, a)).collect();
    let mut r = Vec::new();
    let mut s = Vec::new();
    let mut merged = Vec::new();
    for &(i, j) in &pairs {
        let (a, b) = (&cur[i], &cur[j]);
        r.push(a.clone());
        s.push(b.clone());
        merged.push(Letter {
            node: a.node,
            element: spec.group(a.node).mul_unchecked(&b.element, &a.element),
        });
    }
    let m: Vec<Letter> = cur
        .iter()
        .enumerate()
        .filter(|(k, _)| !pairs.iter().any(|&(i, j)| *k == i || *k == j))
        .map(|(_, l)| l.clone())
        .collect();
    let mut core = m.clone();
    core.extend(merged);
    CyclicForm {
        p: GWord(p),
        r: GWord(r),
        m: GWord(m),
        s: GWord(s),
        core: GWord(core),
    }
}

/// A cyclically reduced word conjugate to `u`.
pub fn cyclically_reduce(spec: &GraphProductSpec, u: &GWord) -> GWord {
    canonical_linearization(spec, &cyclic_form(spec, u).core)
}

/// Letter counts on one node that relate `u` to the reduced form of `uu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeArithmetic {
    pub node: NodeId,
    /// Letters of the reduced `u` on the node.
    pub n: usize,
    /// Letters of the reduced `uu` on the node.
    pub k: usize,
    pub p: usize,
    pub eps: usize,
    pub m: usize,
    /// The core has a vertex on this node that is both minimal and maximal,
    /// so copies of it merge across the seam of `uu`.
    pub seam: bool,
    /// Some such vertex squares to the identity, so the cancellation at the
    /// seam can spread into `p` on every node.
    pub seam_cancels: bool,
}

impl NodeArithmetic {
    /// `2n = 4p + 2m + 4eps` always. `2n - k = 2p + eps` exactly unless
    /// letters merge across the seam of `uu`: then `2n - k` is strictly larger
    /// on the merging node, and at least as large everywhere if the merge
    /// cancels.
    pub fn holds(&self) -> bool {
        if self.eps > 1 || 2 * self.n != 4 * self.p + 2 * self.m + 4 * self.eps {
            return false;
        }
        let lhs = 2 * self.n - self.k;
        let rhs = 2 * self.p + self.eps;
        if self.seam {
            lhs > rhs
        } else if self.seam_cancels {
            lhs >= rhs
        } else {
            lhs == rhs
        }
    }
}

/// Per-node counts of the cyclic form against the reduced square of `u`.
pub fn node_arithmetic(spec: &GraphProductSpec, u: &GWord, form: &CyclicForm) -> Vec<NodeArithmetic> {
    let red = form.word(spec);
    let square = reduced_word(spec, &u.concat(u));
    let core = &form.core.0;
    let isolated = |i: usize| is_minimal(spec, core, i) && is_maximal(spec, core, i);
    let seam_cancels = (0..core.len()).any(|i| {
        let g = spec.group(core[i].node);
        isolated(i) && g.is_identity(&g.mul_unchecked(&core[i].element, &core[i].element))
    });
    spec.node_ids()
        .map(|node| {
            let seam = core
                .iter()
                .enumerate()
                .any(|(i, l)| l.node == node && isolated(i));
            NodeArithmetic {
                node,
                n: red.node_len(node),
                k: square.node_len(node),
                p: form.p.node_len(node),
                eps: form.r.node_len(node),
                m: form.m.node_len(node),
                seam,
                seam_cancels,
            }
        })
        .collect()
}

/// Are the cyclically reduced words `u` and `v` related by a chain of
/// transpositions `rs -> sr`? Decided by equal node counts and
/// `u` occurring as a factor of `v^|L|`.
pub fn transposition_equiv(spec: &GraphProductSpec, u: &GWord, v: &GWord) -> Result<bool> {
    transposition_equiv_with_exponent(spec, u, v, spec.len())
}

/// As [`transposition_equiv`], with an explicit power of `v`.
pub fn transposition_equiv_with_exponent(spec: &GraphProductSpec, u: &GWord, v: &GWord, exponent: usize) -> Result<bool> {
    for w in [u, v] {
        if !matches!(is_cyclically_reduced(spec, w), Ok(true)) {
            return Err(Error::NotCyclicallyReduced);
        }
    }
    if u.node_counts(spec.len()) != v.node_counts(spec.len()) {
        return Ok(false);
    }
    Ok(factor_match(spec, u, &v.power(exponent.max(1))))
}

/// Decides whether `u` and `v` are conjugate.
pub fn conjugate(spec: &GraphProductSpec, u: &GWord, v: &GWord) -> bool {
    let x = cyclically_reduce(spec, u);
    let y = cyclically_reduce(spec, v);
    let alph = x.alph();
    if alph != y.alph() {
        return false;
    }
    spec.connected_components(&alph).into_iter().all(|c| {
        let xc = project(&x, &c);
        let yc = project(&y, &c);
        if c.len() == 1 {
            // A cyclically reduced word over one node is a single letter.
            let group = spec.group(c[0]);
            let eval = |w: &GWord| {
                w.letters()
                    .iter()
                    .fold(group.identity(), |acc, l| group.mul_unchecked(&acc, &l.element))
            };
            group.is_conjugate(&eval(&xc), &eval(&yc)).unwrap_or(false)
        } else {
            transposition_equiv(spec, &xc, &yc).unwrap_or(false)
        }
    })
}
