//! Trace equality, projections onto node subsets, and factor matching on
//! dependence graphs.

use crate::normal_form::word_problem;
use crate::spec::{GraphProductSpec, NodeId};
use crate::word::GWord;

/// Do `u` and `v` have isomorphic dependence graphs?
///
/// Decided by the projection criterion: equal letter counts per node, and
/// equal subsequences on `{a, b}` for every dependent pair of nodes.
pub fn trace_equal(spec: &GraphProductSpec, u: &GWord, v: &GWord) -> bool {
    if u.len() != v.len() || u.node_counts(spec.len()) != v.node_counts(spec.len()) {
        return false;
    }
    for a in spec.node_ids() {
        for b in spec.node_ids().filter(|&b| b >= a) {
            if !spec.is_dependent(a, b) {
                continue;
            }
            let pu = u.letters().iter().filter(|l| l.node == a || l.node == b);
            let pv = v.letters().iter().filter(|l| l.node == a || l.node == b);
            if !pu.eq(pv) {
                return false;
            }
        }
    }
    true
}

/// Keeps the letters whose node lies in `nodes`. This realizes the
/// canonical retraction onto the sub-product over `nodes`.
pub fn project(w: &GWord, nodes: &[NodeId]) -> GWord {
    GWord(
        w.letters()
            .iter()
            .filter(|l| nodes.contains(&l.node))
            .cloned()
            .collect(),
    )
}

/// Does `w` represent an element of the sub-product over `nodes`?
pub fn membership(spec: &GraphProductSpec, w: &GWord, nodes: &[NodeId]) -> bool {
    word_problem(spec, &w.concat(&project(w, nodes).inverse(spec)))
}

/// Is `p` a prefix of the trace `t`? Returns the matched positions of `t`.
fn trace_prefix(spec: &GraphProductSpec, p: &GWord, t: &GWord) -> Option<Vec<usize>> {
    let letters = t.letters();
    let mut used = vec![false; letters.len()];
    let mut matched = Vec::with_capacity(p.len());
    for a in p.letters() {
        // The only candidate is the first unused letter on a's node, and it
        // must not sit behind an unused dependent letter.
        let mut found = None;
        for (j, l) in letters.iter().enumerate() {
            if used[j] {
                continue;
            }
            if l.node == a.node {
                found = Some(j);
                break;
            }
            if spec.is_dependent(l.node, a.node) {
                return None;
            }
        }
        let j = found?;
        if letters[j] != *a {
            return None;
        }
        used[j] = true;
        matched.push(j);
    }
    Some(matched)
}

/// Do words `x`, `y` exist with `t ≡ x p y`?
///
/// Enumerates placements of the minimal vertices of `D(p)` among the equally
/// labeled vertices of `D(t)`, keeps only what is reachable from the
/// placement, and matches `p` as a prefix of what remains.
pub fn factor_match(spec: &GraphProductSpec, p: &GWord, t: &GWord) -> bool {
    if p.is_empty() {
        return true;
    }
    let pc = p.node_counts(spec.len());
    let tc = t.node_counts(spec.len());
    if pc.iter().zip(&tc).any(|(a, b)| a > b) {
        return false;
    }
    let pl = p.letters();
    let tl = t.letters();
    let minimal: Vec<usize> = (0..pl.len())
        .filter(|&j| pl[..j].iter().all(|l| !spec.is_dependent(l.node, pl[j].node)))
        .collect();
    let candidates: Vec<Vec<usize>> = minimal
        .iter()
        .map(|&j| (0..tl.len()).filter(|&k| tl[k] == pl[j]).collect())
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return false;
    }
    let mut choice = vec![0usize; minimal.len()];
    loop {
        let placed: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
        if placement_matches(spec, p, t, &placed) {
            return true;
        }
        // Next placement in odometer order.
        let mut k = 0;
        loop {
            if k == choice.len() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn placement_matches(spec: &GraphProductSpec, p: &GWord, t: &GWord, placed: &[usize]) -> bool {
    let tl = t.letters();
    let mut reachable = vec![false; tl.len()];
    for &m in placed {
        reachable[m] = true;
    }
    for j in 0..tl.len() {
        if reachable[j] {
            continue;
        }
        reachable[j] = (0..j).any(|i| reachable[i] && spec.is_dependent(tl[i].node, tl[j].node));
    }
    let rest = GWord(
        tl.iter()
            .zip(&reachable)
            .filter(|(_, &r)| r)
            .map(|(l, _)| l.clone())
            .collect(),
    );
    match trace_prefix(spec, p, &rest) {
        Some(mut matched) => {
            matched.sort_unstable();
            let image = GWord(matched.into_iter().map(|j| rest.letters()[j].clone()).collect());
            trace_equal(spec, &image, p)
        }
        None => false,
    }
}
