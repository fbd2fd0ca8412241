//! Brute-force reference implementations. None of them share reduction
//! code with the decision procedures; they only use node group arithmetic.

use std::collections::{HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::node_group::Element;
use crate::spec::GraphProductSpec;
use crate::word::{GWord, Letter};

/// Search limits for the oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_word_length: usize,
    pub max_conjugator_length: usize,
    pub max_states: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_word_length: 12,
            max_conjugator_length: 5,
            max_states: 100_000,
        }
    }
}

impl OracleBudget {
    pub fn new(max_word_length: usize, max_conjugator_length: usize, max_states: usize) -> Result<Self> {
        if max_word_length == 0 || max_conjugator_length == 0 || max_states == 0 {
            return Err(Error::InvalidWord("budget limits must be positive".into()));
        }
        Ok(OracleBudget {
            max_word_length,
            max_conjugator_length,
            max_states,
        })
    }
}

/// Multiplies two adjacent letters, `None` if they cancel.
fn merge(spec: &GraphProductSpec, a: &Letter, b: &Letter) -> Option<Letter> {
    let g = spec.group(a.node);
    let e = g.mul_unchecked(&a.element, &b.element);
    (!g.is_identity(&e)).then_some(Letter { node: a.node, element: e })
}

/// Applies the local rules until no multiplication is possible anywhere in
/// the commutation class. Each step explores the class of the current word
/// breadth first, in an order shuffled by `seed`, and takes the first
/// multiplication it meets.
pub fn naive_normal_form(spec: &GraphProductSpec, w: &GWord, seed: u64, budget: &OracleBudget) -> Result<GWord> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut current: Vec<Letter> = w.letters().to_vec();
    let mut states = 0usize;
    'outer: loop {
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        let mut queue = VecDeque::from([current.clone()]);
        seen.insert(current.clone());
        while let Some(x) = queue.pop_front() {
            states += 1;
            if states > budget.max_states {
                return Err(Error::BudgetExceeded);
            }
            let mut positions: Vec<usize> = (0..x.len().saturating_sub(1)).collect();
            positions.shuffle(&mut rng);
            // Multiplications shorten the word, so they go first.
            if let Some(&i) = positions.iter().find(|&&i| x[i].node == x[i + 1].node) {
                let mut next = x[..i].to_vec();
                next.extend(merge(spec, &x[i], &x[i + 1]));
                next.extend_from_slice(&x[i + 2..]);
                current = next;
                continue 'outer;
            }
            for i in positions {
                if spec.is_independent(x[i].node, x[i + 1].node) {
                    let mut y = x.clone();
                    y.swap(i, i + 1);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        return Ok(GWord(current));
    }
}

/// Appends `x` to a word kept free of mergeable letter pairs: `x` merges
/// into the last letter on its node if nothing after that letter depends on
/// it, and is pushed otherwise.
fn push_letter(spec: &GraphProductSpec, stack: &mut Vec<Letter>, x: Letter) {
    for i in (0..stack.len()).rev() {
        if stack[i].node == x.node {
            match merge(spec, &stack[i], &x) {
                Some(l) => stack[i] = l,
                None => {
                    stack.remove(i);
                }
            }
            return;
        }
        if spec.is_dependent(stack[i].node, x.node) {
            break;
        }
    }
    stack.push(x);
}

fn push_word(spec: &GraphProductSpec, stack: &mut Vec<Letter>, w: &[Letter]) {
    for l in w {
        push_letter(spec, stack, l.clone());
    }
}

fn inverse_letters(spec: &GraphProductSpec, w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse(spec)).collect()
}

/// Word problem by incremental cancellation.
pub fn naive_word_problem(spec: &GraphProductSpec, w: &GWord) -> bool {
    let mut stack = Vec::new();
    push_word(spec, &mut stack, w.letters());
    stack.is_empty()
}

fn generator_letter(spec: &GraphProductSpec, g: usize) -> Letter {
    let s = &spec.sigma()[g];
    Letter {
        node: s.node,
        element: spec.sigma_element(s).clone(),
    }
}

/// Per-node values of a word in a finite graph product, where all nodes
/// commute.
fn evaluate_direct(spec: &GraphProductSpec, w: &GWord) -> Vec<Element> {
    let mut out: Vec<Element> = spec.node_ids().map(|a| spec.group(a).identity()).collect();
    for l in w.letters() {
        out[l.node.0] = spec.group(l.node).mul_unchecked(&out[l.node.0], &l.element);
    }
    out
}

/// Searches for `z` with `z̄ u z = v`. On finite graph products every
/// element is tried, so both answers are exact; otherwise `z` ranges over
/// generator words of length at most `max_conjugator_length` and only
/// `true` is conclusive.
pub fn brute_conjugate(spec: &GraphProductSpec, u: &GWord, v: &GWord, budget: &OracleBudget) -> Result<bool> {
    if spec.is_finite() {
        let mut total = 1usize;
        let mut per_node = Vec::new();
        for a in spec.node_ids() {
            let elems = spec.group(a).elements().expect("finite node group");
            total = total.saturating_mul(elems.len());
            per_node.push(elems);
        }
        if total > budget.max_states {
            return Err(Error::BudgetExceeded);
        }
        let (x, y) = (evaluate_direct(spec, u), evaluate_direct(spec, v));
        // Conjugation acts node by node in a direct product.
        return Ok(spec.node_ids().all(|a| {
            let g = spec.group(a);
            per_node[a.0].iter().any(|z| {
                let c = g.mul_unchecked(&g.mul_unchecked(&g.invert(z), &x[a.0]), z);
                c == y[a.0]
            })
        }));
    }
    let mut base = Vec::new();
    push_word(spec, &mut base, u.letters());
    let v_inv = inverse_letters(spec, v.letters());
    let sigma = spec.sigma().len();
    let mut states = 0usize;
    // Depth-first over conjugators; `z` is the current conjugator word.
    let mut z: Vec<usize> = Vec::new();
    loop {
        states += 1;
        if states > budget.max_states {
            return Err(Error::BudgetExceeded);
        }
        let zl: Vec<Letter> = z.iter().map(|&g| generator_letter(spec, g)).collect();
        let mut stack = Vec::new();
        push_word(spec, &mut stack, &inverse_letters(spec, &zl));
        push_word(spec, &mut stack, &base);
        push_word(spec, &mut stack, &zl);
        push_word(spec, &mut stack, &v_inv);
        if stack.is_empty() {
            return Ok(true);
        }
        // Next word in length-then-lexicographic order.
        if !advance(&mut z, sigma, budget.max_conjugator_length) {
            return Ok(false);
        }
    }
}

/// Steps `z` to the next word over `0..sigma` in length-lexicographic
/// order; false once words longer than `max_len` would be needed.
fn advance(z: &mut Vec<usize>, sigma: usize, max_len: usize) -> bool {
    if sigma == 0 {
        return false;
    }
    for i in (0..z.len()).rev() {
        if z[i] + 1 < sigma {
            z[i] += 1;
            for x in &mut z[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    if z.len() >= max_len {
        return false;
    }
    *z = vec![0; z.len() + 1];
    true
}

/// Lexicographically least linearization of the trace of `w`, ordering
/// letters by node and then element.
fn trace_key(spec: &GraphProductSpec, w: &[Letter]) -> Vec<Letter> {
    let mut rest: Vec<Letter> = w.to_vec();
    let mut out = Vec::with_capacity(w.len());
    while !rest.is_empty() {
        let best = (0..rest.len())
            .filter(|&i| rest[..i].iter().all(|l| !spec.is_dependent(l.node, rest[i].node)))
            .min_by(|&i, &j| rest[i].cmp(&rest[j]))
            .expect("non-empty trace has a minimal letter");
        out.push(rest.remove(best));
    }
    out
}

/// Breadth-first search over the transposition class of `u`: every split
/// `x ≡ r s` along a downward closed vertex set `r` yields `s r`.
pub fn transposition_bfs(spec: &GraphProductSpec, u: &GWord, v: &GWord, budget: &OracleBudget) -> Result<bool> {
    let target = trace_key(spec, v.letters());
    let start = trace_key(spec, u.letters());
    if start == target {
        return Ok(true);
    }
    let n = start.len();
    if n > 20 {
        return Err(Error::BudgetExceeded);
    }
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        // preds[j]: vertices before j that j depends on.
        let preds: Vec<u32> = (0..n)
            .map(|j| {
                (0..j)
                    .filter(|&i| spec.is_dependent(x[i].node, x[j].node))
                    .fold(0u32, |acc, i| acc | 1 << i)
            })
            .collect();
        for mask in 1u32..(1u32 << n) - 1 {
            let closed = (0..n).all(|j| mask & (1 << j) == 0 || preds[j] & !mask == 0);
            if !closed {
                continue;
            }
            let (r, s): (Vec<_>, Vec<_>) = (0..n).partition(|&j| mask & (1 << j) != 0);
            let y: Vec<Letter> = s.iter().chain(&r).map(|&j| x[j].clone()).collect();
            let key = trace_key(spec, &y);
            if key == target {
                return Ok(true);
            }
            if seen.insert(key.clone()) {
                if seen.len() > budget.max_states {
                    return Err(Error::BudgetExceeded);
                }
                queue.push_back(key);
            }
        }
    }
    Ok(false)
}

/// All shortest generator words equal to `w`, as positions into
/// `spec.sigma()`, in lexicographic order.
pub fn enumerate_geodesics(spec: &GraphProductSpec, w: &GWord, budget: &OracleBudget) -> Result<Vec<Vec<usize>>> {
    let mut target = Vec::new();
    push_word(spec, &mut target, &inverse_letters(spec, w.letters()));
    let sigma = spec.sigma().len();
    let mut states = 0usize;
    for len in 0..=budget.max_word_length {
        let mut found = Vec::new();
        let mut prefix = Vec::with_capacity(len);
        search(spec, &target, sigma, len, &mut prefix, &mut found, &mut states, budget)?;
        if !found.is_empty() {
            return Ok(found);
        }
    }
    Err(Error::BudgetExceeded)
}

/// Extends `prefix` to every word of length `len`; `stack` is `w̄ · prefix`
/// with mergeable pairs removed.
#[allow(clippy::too_many_arguments)]
fn search(
    spec: &GraphProductSpec,
    stack: &[Letter],
    sigma: usize,
    len: usize,
    prefix: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
    states: &mut usize,
    budget: &OracleBudget,
) -> Result<()> {
    *states += 1;
    if *states > budget.max_states {
        return Err(Error::BudgetExceeded);
    }
    if prefix.len() == len {
        if stack.is_empty() {
            found.push(prefix.clone());
        }
        return Ok(());
    }
    // Each letter changes the length of the stack by at most one.
    if stack.len() > len - prefix.len() {
        return Ok(());
    }
    for g in 0..sigma {
        let mut next = stack.to_vec();
        push_letter(spec, &mut next, generator_letter(spec, g));
        prefix.push(g);
        search(spec, &next, sigma, len, prefix, found, states, budget)?;
        prefix.pop();
    }
    Ok(())
}
